use serde_json::Value;
use swtorus_web::{alexander_json, distinguish_json, sw_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn alexander_of_trefoil_braid() {
    let v = parse(alexander_json("1 1 1").unwrap());
    assert_eq!(v["knot"]["symmetric"], "t^-1 - 1 + t");
    assert_eq!(v["axis"], "1 + x*t^3");
}

#[test]
fn alexander_of_link_has_only_axis_polynomial() {
    let v = parse(alexander_json("1 1").unwrap());
    assert!(v.get("knot").is_none());
    assert_eq!(v["components"], serde_json::json!(["s", "t"]));
}

#[test]
fn bad_input_is_an_error() {
    assert!(alexander_json("1 x").is_err());
    assert!(sw_json("1 1", 1, 1).is_err());
    assert!(sw_json("trefoil", 0, 1).is_err());
    assert!(distinguish_json("trefoil", 0).is_err());
}

#[test]
fn sw_classes_for_catalog_name_and_braid_agree() {
    let a = parse(sw_json("figure-eight", 2, 3).unwrap());
    let b = parse(sw_json("1 -2 1 -2", 2, 3).unwrap());
    assert_eq!(a, b);
    assert_eq!(a["max_divisibility"], 4);
    let classes = a["classes"].as_array().unwrap();
    assert!(classes.iter().all(|c| c.as_array().unwrap().len() == 4));
}

#[test]
fn distinguish_verdicts() {
    let v = parse(distinguish_json("T25", 3).unwrap());
    assert_eq!(v["verdict"], "pairwise distinct");
    assert_eq!(v["n"], 5);
    let v = parse(distinguish_json("unknot", 3).unwrap());
    assert_eq!(v["verdict"], "not distinguished");
}
