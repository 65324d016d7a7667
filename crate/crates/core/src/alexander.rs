//! Alexander polynomials of braid closures.
//!
//! Two independent routes compute the knot polynomial of a closed braid:
//! a minor of `I − J`, where `J` is the Fox Jacobian of the Artin action,
//! and the reduced Burau formula in [`crate::burau`]. Every knot polynomial
//! is cross-checked between the two before it is returned.
//!
//! For the link formed by the closure together with its braid axis the
//! presentation `⟨x_1..x_n, a | a⁻¹x_i a = β(x_i)⟩` gives, after deleting the
//! column of `a`, the matrix `x⁻¹I − J` with `J` colored by closure
//! components. Its determinant divided by `x − 1` is the multivariable
//! polynomial.

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::braid::{artin_action, closure_info, component_variable_names, BraidWord};
use crate::burau::burau_alexander;
use crate::det::{self, Matrix};
use crate::fox::{fox_jacobian, AbelianizationMap};
use crate::laurent::{LaurentError, LaurentPoly, Substitution, VariableSet};

/// Name of the braid-axis variable in closure-plus-axis polynomials.
pub const AXIS_VARIABLE: &str = "x";
/// Name of the variable of single-variable knot polynomials.
pub const KNOT_VARIABLE: &str = "t";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("braid closure has {0} components; a knot has exactly one")]
    MultiComponentClosure(usize),
    #[error("Fox and Burau routes disagree: {fox} vs {burau}")]
    MethodDisagreement { fox: String, burau: String },
    #[error("Δ(1) = {0}, but a knot polynomial has Δ(1) = ±1")]
    BadValueAtOne(String),
    #[error("supplied Alexander polynomial must be in the single variable `t`, got [{0}]")]
    NotKnotVariable(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

pub fn knot_variables() -> VariableSet {
    VariableSet::new([KNOT_VARIABLE]).expect("valid")
}

/// A knot given by a braid, optionally with a user-supplied Alexander
/// polynomial that replaces the computed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotSpec {
    pub name: Option<String>,
    braid: BraidWord,
    user_alex: Option<LaurentPoly>,
}

impl KnotSpec {
    pub fn from_braid(name: Option<String>, braid: BraidWord) -> Result<Self, AlexanderError> {
        let info = closure_info(&braid);
        if !info.is_knot() {
            return Err(AlexanderError::MultiComponentClosure(
                info.component_count(),
            ));
        }
        Ok(KnotSpec {
            name,
            braid,
            user_alex: None,
        })
    }

    /// A knot known only through its Alexander polynomial in `t`.
    pub fn from_polynomial(
        name: Option<String>,
        alex: LaurentPoly,
    ) -> Result<Self, AlexanderError> {
        if alex.vars() != &knot_variables() {
            return Err(AlexanderError::NotKnotVariable(
                alex.vars().names().join(","),
            ));
        }
        Ok(KnotSpec {
            name,
            braid: BraidWord::unknot(),
            user_alex: Some(alex),
        })
    }

    pub fn unknot() -> Self {
        KnotSpec {
            name: Some("unknot".into()),
            braid: BraidWord::unknot(),
            user_alex: None,
        }
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn user_alex(&self) -> Option<&LaurentPoly> {
        self.user_alex.as_ref()
    }

    pub fn label(&self) -> String {
        match (&self.name, &self.user_alex) {
            (Some(n), _) => n.clone(),
            (None, Some(p)) => format!("Δ = {p}"),
            (None, None) => format!("closure of [{}]", self.braid),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexResult {
    pub raw: LaurentPoly,
    pub symmetric: LaurentPoly,
    pub span: u32,
    pub genus_if_fibred: u32,
    pub monic: bool,
}

impl AlexResult {
    fn from_raw(raw: LaurentPoly) -> Result<Self, AlexanderError> {
        let symmetric = raw.symmetrize()?;
        let (span, monic) = match (symmetric.terms().next(), symmetric.terms().next_back()) {
            (Some((lo, lc)), Some((hi, hc))) => (
                (hi.exponents()[0] - lo.exponents()[0]) as u32,
                lc.abs().is_one() && hc.abs().is_one(),
            ),
            _ => (0, false),
        };
        Ok(AlexResult {
            raw,
            symmetric,
            span,
            genus_if_fibred: span / 2,
            monic,
        })
    }
}

/// `Δ_K(t)` from the Fox Jacobian: the minor of `I − J` with the last row and
/// column deleted, where every strand generator maps to `t`.
pub fn knot_polynomial_fox(b: &BraidWord) -> LaurentPoly {
    let vars = knot_variables();
    let n = b.strands();
    let phi = AbelianizationMap::uniform(vars.clone(), n, 0);
    let j = fox_jacobian(&artin_action(b), &phi).expect("images match strand count");
    let id = det::identity(n, &vars);
    let m: Matrix = id
        .iter()
        .zip(&j.matrix)
        .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
        .collect();
    det::determinant(&det::delete_row_col(&m, n - 1, n - 1), &vars).expect("exact elimination")
}

/// `Δ_K(t)` from the reduced Burau representation.
pub fn knot_polynomial_burau(b: &BraidWord) -> LaurentPoly {
    burau_alexander(b, &knot_variables())
}

pub fn alexander_knot(k: &KnotSpec) -> Result<AlexResult, AlexanderError> {
    if let Some(p) = &k.user_alex {
        return AlexResult::from_raw(p.canonical_form());
    }
    let info = closure_info(&k.braid);
    if !info.is_knot() {
        return Err(AlexanderError::MultiComponentClosure(
            info.component_count(),
        ));
    }
    let fox = knot_polynomial_fox(&k.braid);
    let burau = knot_polynomial_burau(&k.braid);
    if fox.equals_up_to_unit(&burau).is_none() {
        return Err(AlexanderError::MethodDisagreement {
            fox: fox.to_string(),
            burau: burau.to_string(),
        });
    }
    let at_one = fox.value_at_one();
    if !at_one.abs().is_one() {
        return Err(AlexanderError::BadValueAtOne(at_one.to_string()));
    }
    AlexResult::from_raw(fox.canonical_form())
}

/// Variables of the closure-plus-axis polynomial: the axis first, then one
/// per closure component.
pub fn axis_variables(b: &BraidWord) -> VariableSet {
    let components = closure_info(b).component_count();
    VariableSet::new(
        std::iter::once(AXIS_VARIABLE.to_string()).chain(component_variable_names(components)),
    )
    .expect("distinct names")
}

/// Multivariable Alexander polynomial of the closure of `b` together with
/// its axis, canonicalized.
pub fn alexander_closure_with_axis(b: &BraidWord) -> LaurentPoly {
    let info = closure_info(b);
    let vars = axis_variables(b);
    let n = b.strands();
    let phi = AbelianizationMap::for_closure(vars.clone(), &info, 1);
    let j = fox_jacobian(&artin_action(b), &phi).expect("images match strand count");
    let x = LaurentPoly::var(&vars, AXIS_VARIABLE).expect("axis variable");
    let x_inv = x.invert_variables();
    let zero = LaurentPoly::zero(&vars);
    let d: Matrix = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (if r == c { &x_inv } else { &zero }) - &j.matrix[r][c])
                .collect()
        })
        .collect();
    let det = det::determinant(&d, &vars).expect("exact elimination");
    det.exact_divide(&(&x - &LaurentPoly::one(&vars)))
        .expect("axis column factor divides the determinant")
        .canonical_form()
}

/// Sets every component variable of an axis polynomial equal to `t`.
pub fn merge_components(p: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
    let target = VariableSet::new([AXIS_VARIABLE, KNOT_VARIABLE]).expect("valid");
    let mut sub = Substitution::new(target);
    for (i, name) in p.vars().names().iter().enumerate() {
        let image = if i == 0 { vec![1, 0] } else { vec![0, 1] };
        sub = sub.map(name, &image)?;
    }
    p.substitute(&sub)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrednessReport {
    pub monic: bool,
    /// `span / 2`; equals the genus only if the knot is fibred.
    pub genus_if_fibred: u32,
    pub nontrivial: bool,
}

pub fn fibredness_report(a: &AlexResult) -> FibrednessReport {
    FibrednessReport {
        monic: a.monic,
        genus_if_fibred: a.genus_if_fibred,
        nontrivial: a.span > 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LaurentPoly {
        LaurentPoly::parse(&knot_variables(), s).unwrap()
    }

    fn knot(text: &str) -> KnotSpec {
        KnotSpec::from_braid(None, BraidWord::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn catalog_knots() {
        let r = alexander_knot(&knot("1 1 1")).unwrap();
        assert_eq!(r.symmetric, t("t^-1 - 1 + t"));
        assert_eq!((r.span, r.genus_if_fibred, r.monic), (2, 1, true));

        let r = alexander_knot(&KnotSpec::unknot()).unwrap();
        assert_eq!(
            (r.symmetric.clone(), r.span, r.genus_if_fibred),
            (t("1"), 0, 0)
        );

        let r = alexander_knot(&knot("1 -2 1 -2")).unwrap();
        assert_eq!(r.symmetric, t("-t^-1 + 3 - t"));
        assert_eq!((r.span, r.genus_if_fibred, r.monic), (2, 1, true));

        let r = alexander_knot(&knot("1 1 1 1 1")).unwrap();
        assert_eq!(r.symmetric, t("t^-2 - t^-1 + 1 - t + t^2"));
        assert_eq!((r.span, r.genus_if_fibred), (4, 2));
    }

    #[test]
    fn multi_component_closure_is_rejected() {
        assert_eq!(
            KnotSpec::from_braid(None, BraidWord::parse("1 1").unwrap()),
            Err(AlexanderError::MultiComponentClosure(2))
        );
    }

    #[test]
    fn unknot_on_several_strands() {
        for text in ["1 2", "-1 2 3", "1 1 1 -1 -1"] {
            let r = alexander_knot(&knot(text)).unwrap();
            assert!(r.symmetric.is_one(), "{text}");
        }
    }

    #[test]
    fn user_polynomial_bypass() {
        let k = KnotSpec::from_polynomial(None, t("2*t^-1 - 3 + 2*t")).unwrap();
        let r = alexander_knot(&k).unwrap();
        assert_eq!(r.symmetric, t("2*t^-1 - 3 + 2*t"));
        assert_eq!(
            fibredness_report(&r),
            FibrednessReport {
                monic: false,
                genus_if_fibred: 1,
                nontrivial: true
            }
        );
        let other = LaurentPoly::parse(&VariableSet::new(["u"]).unwrap(), "u").unwrap();
        assert!(KnotSpec::from_polynomial(None, other).is_err());
    }

    #[test]
    fn fibredness_examples() {
        let trefoil = fibredness_report(&alexander_knot(&knot("1 1 1")).unwrap());
        assert_eq!(
            trefoil,
            FibrednessReport {
                monic: true,
                genus_if_fibred: 1,
                nontrivial: true
            }
        );
        let unknot = fibredness_report(&alexander_knot(&KnotSpec::unknot()).unwrap());
        assert_eq!(
            unknot,
            FibrednessReport {
                monic: true,
                genus_if_fibred: 0,
                nontrivial: false
            }
        );
    }

    #[test]
    fn axis_polynomial_of_sigma1_powers() {
        for q in 1..=4 {
            let b = BraidWord::sigma1_power(2 * q);
            let vars = axis_variables(&b);
            let expected = LaurentPoly::parse(&vars, &format!("1 - x*s^{q}*t^{q}")).unwrap();
            let got = alexander_closure_with_axis(&b);
            assert!(got.equals_up_to_unit(&expected).is_some(), "q={q}: {got}");
        }
    }

    #[test]
    fn axis_polynomial_of_trivial_braid_is_hopf_link() {
        let got = alexander_closure_with_axis(&BraidWord::unknot());
        assert!(got.is_one());
    }

    #[test]
    fn axis_polynomial_torres_condition_for_knots() {
        // Δ_{K∪A}(1, t) ≐ Δ_K(t)·(tⁿ − 1)/(t − 1), n = lk(K, A) = strand count
        for text in [
            "1 1 1",
            "1 -2 1 -2",
            "1 1 1 1 1",
            "1 2 1 2",
            "1 -2 3",
            "1 1 1 2 -1 2",
        ] {
            let b = BraidWord::parse(text).unwrap();
            assert!(closure_info(&b).is_knot(), "{text}");
            let axis = alexander_closure_with_axis(&b);
            let kv = knot_variables();
            let at_x1 = axis
                .substitute(
                    &Substitution::new(kv.clone())
                        .map("x", &[0])
                        .unwrap()
                        .map("t", &[1])
                        .unwrap(),
                )
                .unwrap();
            let n = b.strands() as u32;
            let tt = t("t");
            let one = t("1");
            let expected = (&knot_polynomial_burau(&b) * &(&tt.pow(n) - &one))
                .exact_divide(&(&tt - &one))
                .unwrap();
            assert!(at_x1.equals_up_to_unit(&expected).is_some(), "{text}");
        }
    }
}
