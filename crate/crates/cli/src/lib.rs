//! Command implementations for the `swtorus` binary.
//!
//! Every command produces a [`Report`] that renders either as text or as
//! JSON. Rendering is deterministic: the same inputs give byte-identical
//! output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use swtorus::alexander::{alexander_closure_with_axis, alexander_knot, fibredness_report};
use swtorus::braid::closure_info;
use swtorus::catalog::Catalog;
use swtorus::surgery::{
    assemble_general, basic_classes, checked_invariant, closed_form_sw, distinguish, knot_warnings,
    max_divisibility, FamilyParams, GluingData, SWInvariant, VerdictKind,
};
use swtorus::{BraidWord, KnotSpec, LaurentFraction, LaurentPoly};

/// Environment variable naming a default user catalog file.
pub const CATALOG_ENV: &str = "SWTORUS_CATALOG";

#[derive(Parser, Debug)]
#[command(
    name = "swtorus",
    version,
    about = "Alexander polynomials of braid closures and Seiberg-Witten invariants of link surgery manifolds"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Extra catalog file merged into the built-in knots.
    #[arg(long, env = CATALOG_ENV, global = true)]
    pub catalog: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Alexander polynomial of a knot, or of a braid closure plus its axis.
    Alex {
        #[command(flatten)]
        knot: KnotArgs,
        /// Multivariable polynomial of the closure together with the braid axis.
        #[arg(long)]
        axis: bool,
    },
    /// Seiberg-Witten invariant of L_q for the given knot.
    Sw {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        q: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Print the factors in the global classes before cancellation.
        #[arg(long)]
        pieces_only: bool,
    },
    /// Compare highest basic-class divisibilities across a range of q.
    Distinguish {
        #[command(flatten)]
        knot: KnotArgs,
        /// `a..b` (inclusive), a comma list, or a single value.
        #[arg(long)]
        q: String,
        /// Fiber-sum parameter; defaults to 2g + 1.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: Option<u32>,
    },
    /// Assemble the invariant with a user-supplied fiber-complement piece.
    Assemble {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        q: u32,
        /// Piece invariant as LaurentPoly JSON in one variable, or `@path`.
        #[arg(long)]
        piece: String,
    },
    /// Knot catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// List built-in knots and any merged catalog entries.
    List {
        /// Catalog file to merge (in addition to --catalog).
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct KnotArgs {
    /// Catalog knot name.
    #[arg(long)]
    pub knot: Option<String>,
    /// Braid word, e.g. "1 -2 1 -2" or "strands=3 1 2".
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// Alexander polynomial as LaurentPoly JSON in `t`, or `@path`.
    #[arg(long)]
    pub alex_json: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str, inputs: Value, result: Value, text: String) -> Self {
        Report {
            command: command.into(),
            inputs,
            result,
            warnings: Vec::new(),
            text,
            exit_code: 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                for w in &self.warnings {
                    let _ = writeln!(s, "warning: {w}");
                }
                s
            }
        }
    }
}

fn read_inline_or_file(value: &str) -> Result<String> {
    match value.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(value.to_string()),
    }
}

pub fn load_catalog(default: Option<&Path>, extra: Option<&Path>) -> Result<Catalog> {
    let mut catalog = Catalog::builtin();
    for path in [default, extra].into_iter().flatten() {
        catalog.merge_file(path)?;
    }
    Ok(catalog)
}

enum Selected {
    Knot(KnotSpec),
    Braid(BraidWord),
}

fn select(args: &KnotArgs, catalog: &Catalog) -> Result<Selected> {
    if let Some(name) = &args.knot {
        return Ok(Selected::Knot(catalog.knot(name)?));
    }
    if let Some(text) = &args.braid {
        let braid = BraidWord::parse(text).with_context(|| format!("parsing braid `{text}`"))?;
        return Ok(Selected::Braid(braid));
    }
    if let Some(value) = &args.alex_json {
        let poly: LaurentPoly = serde_json::from_str(&read_inline_or_file(value)?)
            .context("parsing Alexander polynomial JSON")?;
        return Ok(Selected::Knot(KnotSpec::from_polynomial(None, poly)?));
    }
    bail!("one of --knot, --braid or --alex-json is required")
}

fn knot_of(args: &KnotArgs, catalog: &Catalog) -> Result<KnotSpec> {
    match select(args, catalog)? {
        Selected::Knot(k) => Ok(k),
        Selected::Braid(b) => Ok(KnotSpec::from_braid(None, b)?),
    }
}

fn knot_inputs(args: &KnotArgs) -> Value {
    json!({
        "knot": args.knot,
        "braid": args.braid,
        "alex_json": args.alex_json,
    })
}

pub fn cmd_alex(args: &KnotArgs, axis: bool, catalog: &Catalog) -> Result<Report> {
    let selected = select(args, catalog)?;
    let mut inputs = knot_inputs(args);
    inputs["axis"] = json!(axis);
    if axis {
        let braid = match &selected {
            Selected::Braid(b) => b.clone(),
            Selected::Knot(k) if k.user_alex().is_none() => k.braid().clone(),
            Selected::Knot(_) => bail!("--axis needs a braid, not a bare polynomial"),
        };
        let info = closure_info(&braid);
        let poly = alexander_closure_with_axis(&braid);
        let mut text = String::new();
        let _ = writeln!(text, "braid: {braid}");
        let _ = writeln!(
            text,
            "components: {} ({}), axis: x",
            info.component_count(),
            info.component_names.join(", ")
        );
        let _ = writeln!(text, "axis polynomial: {poly}");
        let result = json!({
            "components": info.component_names,
            "polynomial": poly,
            "text": poly.to_string(),
        });
        return Ok(Report::new("alex", inputs, result, text));
    }
    let knot = match selected {
        Selected::Knot(k) => k,
        Selected::Braid(b) => {
            KnotSpec::from_braid(None, b).context("closure is not a knot; use --axis for links")?
        }
    };
    let alex = alexander_knot(&knot)?;
    let fib = fibredness_report(&alex);
    let mut text = String::new();
    let _ = writeln!(text, "knot: {}", knot.label());
    if knot.user_alex().is_none() {
        let _ = writeln!(text, "braid: {}", knot.braid());
    }
    let _ = writeln!(text, "raw: {}", alex.raw);
    let _ = writeln!(text, "symmetric: {}", alex.symmetric);
    let _ = writeln!(text, "span: {}", alex.span);
    let _ = writeln!(text, "genus if fibred: {}", alex.genus_if_fibred);
    let _ = writeln!(text, "monic: {}", alex.monic);
    let result = json!({
        "raw": alex.raw,
        "symmetric": alex.symmetric,
        "symmetric_text": alex.symmetric.to_string(),
        "span": alex.span,
        "genus_if_fibred": alex.genus_if_fibred,
        "monic": fib.monic,
        "nontrivial": fib.nontrivial,
    });
    let mut report = Report::new("alex", inputs, result, text);
    if !alex.monic {
        report
            .warnings
            .push(swtorus::surgery::WARN_NOT_MONIC.into());
    }
    Ok(report)
}

fn invariant_text(sw: &SWInvariant, text: &mut String) -> Result<Value> {
    let classes = basic_classes(sw);
    let max = max_divisibility(sw).ok();
    let _ = writeln!(text, "basic classes ({}):", classes.len());
    for c in &classes {
        let div = c
            .divisibility
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        let _ = writeln!(
            text,
            "  ({}, {})  coefficient {}  divisibility {}",
            c.exponents.0, c.exponents.1, c.coefficient, div
        );
    }
    match max {
        Some(d) => {
            let _ = writeln!(text, "max divisibility: {d}");
        }
        None => {
            let _ = writeln!(text, "max divisibility: none (only the zero class)");
        }
    }
    Ok(json!({
        "invariant": sw,
        "basic_classes": classes,
        "max_divisibility": max,
    }))
}

pub fn cmd_sw(
    args: &KnotArgs,
    q: u32,
    n: u32,
    pieces_only: bool,
    catalog: &Catalog,
) -> Result<Report> {
    let knot = knot_of(args, catalog)?;
    let params = FamilyParams::new(knot.clone(), q, n)?;
    let mut inputs = knot_inputs(args);
    inputs["q"] = json!(q);
    inputs["n"] = json!(n);
    let alex = alexander_knot(&knot)?;
    let mut text = String::new();
    let _ = writeln!(text, "knot: {}  q: {q}  n: {n}", knot.label());
    if pieces_only {
        let data = GluingData::for_family(&params)?;
        let factors = data.global_factors()?;
        let mut listed = Vec::new();
        for (label, f) in &factors {
            let _ = writeln!(text, "{label}: {f}");
            listed.push(json!({
                "label": label,
                "numerator": f.numerator(),
                "denominator": f.denominator(),
            }));
        }
        inputs["pieces_only"] = json!(true);
        let mut report = Report::new("sw", inputs, json!({ "factors": listed }), text);
        report.warnings = knot_warnings(&alex);
        return Ok(report);
    }
    checked_invariant(&params).map_err(|e| {
        let factors = GluingData::for_family(&params)
            .and_then(|d| d.global_factors())
            .map(|fs| {
                fs.iter()
                    .map(|(l, f)| format!("  {l}: {f}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
            .unwrap_or_default();
        anyhow::anyhow!("{e}\nfactors:\n{factors}")
    })?;
    let closed = closed_form_sw(&params)?;
    let _ = writeln!(text, "invariant: {}", closed.poly);
    let _ = writeln!(
        text,
        "pipeline agrees with closed form: yes (up to global sign)"
    );
    let result = invariant_text(&closed, &mut text)?;
    let mut report = Report::new("sw", inputs, result, text);
    report.warnings = knot_warnings(&alex);
    Ok(report)
}

/// Parses `a..b`, `a,b,c` or `a`.
pub fn parse_q_range(text: &str) -> Result<Vec<u32>> {
    let values: Vec<u32> = if let Some((a, b)) = text.split_once("..") {
        let a: u32 = a
            .trim()
            .parse()
            .with_context(|| format!("bad range start in `{text}`"))?;
        let b: u32 = b
            .trim()
            .parse()
            .with_context(|| format!("bad range end in `{text}`"))?;
        if a > b {
            bail!("empty range `{text}`");
        }
        (a..=b).collect()
    } else {
        text.split(',')
            .map(|s| s.trim().parse().with_context(|| format!("bad value `{s}`")))
            .collect::<Result<_>>()?
    };
    if values.contains(&0) {
        bail!("q must be >= 1");
    }
    Ok(values)
}

pub fn cmd_distinguish(
    args: &KnotArgs,
    q: &str,
    n: Option<u32>,
    catalog: &Catalog,
) -> Result<Report> {
    let knot = knot_of(args, catalog)?;
    let qs = parse_q_range(q)?;
    let verdict = distinguish(&knot, &qs, n)?;
    let mut inputs = knot_inputs(args);
    inputs["q"] = json!(qs);
    inputs["n"] = json!(n);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "knot: {}  genus if fibred: {}  n: {}",
        verdict.knot, verdict.genus_if_fibred, verdict.n
    );
    let _ = writeln!(text, "q\tmax divisibility\tclasses");
    for row in &verdict.rows {
        let d = row
            .max_divisibility
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        let _ = writeln!(text, "{}\t{}\t{}", row.q, d, row.classes);
    }
    let _ = writeln!(text, "verdict: {}", verdict.verdict.as_str());
    let mut report = Report::new(
        "distinguish",
        inputs,
        json!({
            "rows": verdict.rows,
            "verdict": verdict.verdict,
            "genus_if_fibred": verdict.genus_if_fibred,
            "n": verdict.n,
        }),
        text,
    );
    report.warnings = verdict.warnings;
    report.exit_code = match verdict.verdict {
        VerdictKind::PairwiseDistinct => 0,
        VerdictKind::NotDistinguished => 2,
    };
    Ok(report)
}

pub fn cmd_assemble(args: &KnotArgs, q: u32, piece: &str, catalog: &Catalog) -> Result<Report> {
    let knot = knot_of(args, catalog)?;
    let poly: LaurentPoly =
        serde_json::from_str(&read_inline_or_file(piece)?).context("parsing piece JSON")?;
    let params = FamilyParams::new(knot.clone(), q, 1)?;
    let data = GluingData::with_fiber_piece(
        &params,
        "X \\ nu F".into(),
        LaurentFraction::from_poly(poly.clone()),
    )?;
    let sw = assemble_general(&data)?;
    let mut inputs = knot_inputs(args);
    inputs["q"] = json!(q);
    inputs["piece"] = json!(poly);
    let mut text = String::new();
    let _ = writeln!(text, "knot: {}  q: {q}", knot.label());
    let _ = writeln!(text, "piece: {poly}");
    let _ = writeln!(text, "invariant: {}", sw.poly);
    let result = invariant_text(&sw, &mut text)?;
    Ok(Report::new("assemble", inputs, result, text))
}

pub fn cmd_catalog_list(catalog: &Catalog) -> Report {
    let mut text = String::new();
    for e in catalog.entries() {
        let _ = writeln!(text, "{}\t{}\t{}", e.name, e.braid, e.notes);
    }
    Report::new(
        "catalog list",
        json!({}),
        json!({ "entries": catalog.entries() }),
        text,
    )
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Report> {
    let extra = match &cli.command {
        Command::Catalog {
            action: CatalogAction::List { file },
        } => file.as_deref(),
        _ => None,
    };
    let catalog = load_catalog(cli.catalog.as_deref(), extra)?;
    match &cli.command {
        Command::Alex { knot, axis } => cmd_alex(knot, *axis, &catalog),
        Command::Sw {
            knot,
            q,
            n,
            pieces_only,
        } => cmd_sw(knot, *q, *n, *pieces_only, &catalog),
        Command::Distinguish { knot, q, n } => cmd_distinguish(knot, q, *n, &catalog),
        Command::Assemble { knot, q, piece } => cmd_assemble(knot, *q, piece, &catalog),
        Command::Catalog { .. } => Ok(cmd_catalog_list(&catalog)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use swtorus::alexander::knot_variables;

    fn knot(name: &str) -> KnotArgs {
        KnotArgs {
            knot: Some(name.into()),
            braid: None,
            alex_json: None,
        }
    }

    #[test]
    fn q_ranges() {
        assert_eq!(parse_q_range("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(parse_q_range("2, 4").unwrap(), vec![2, 4]);
        assert_eq!(parse_q_range("3").unwrap(), vec![3]);
        assert!(parse_q_range("0..2").is_err());
        assert!(parse_q_range("5..1").is_err());
        assert!(parse_q_range("a").is_err());
    }

    #[test]
    fn alex_trefoil_text() {
        let r = cmd_alex(&knot("trefoil"), false, &Catalog::builtin()).unwrap();
        assert!(r.text.contains("symmetric: t^-1 - 1 + t\n"), "{}", r.text);
    }

    #[test]
    fn knot_variable_is_t() {
        assert_eq!(knot_variables().names(), ["t"]);
    }
}
