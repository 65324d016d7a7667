//! Seiberg-Witten invariants of the link surgery manifolds `L_q`.
//!
//! The manifold is glued from three pieces along the complement of a
//! three-component link `A ∪ B ∪ C`: `E(1) ∖ νF`, `E(n) ∖ νF` and
//! `(S¹ × M_K) ∖ νT_m`. Its invariant is the product of the piece invariants
//! and the symmetrized link polynomial, after identifying every local
//! homology class with a monomial in the global classes `ξ` and `τ`:
//!
//! | local | global |
//! |-------|--------|
//! | `F` (fiber) | `ξ` |
//! | `T` (the torus `T_m`) | `ξ τ^q` |
//! | `x` (axis `A`) | `ξ²` |
//! | `s` (component `B`) | `1` |
//! | `t` (component `C`) | `τ²` |
//!
//! The knot piece is a formal fraction whose denominator cancels only
//! against the link factor, so fractions are multiplied formally and
//! divided exactly once at the end.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::alexander::{
    alexander_closure_with_axis, alexander_knot, knot_variables, AlexResult, AlexanderError,
    KnotSpec, AXIS_VARIABLE,
};
use crate::braid::BraidWord;
use crate::laurent::{
    serialize_bigint, LaurentError, LaurentFraction, LaurentPoly, Monomial, Substitution, Unit,
    VariableSet,
};

pub const XI: &str = "xi";
pub const TAU: &str = "tau";
/// Local variable of the fiber-complement pieces.
pub const FIBER_VARIABLE: &str = "F";
/// Local variable of the knot piece.
pub const TORUS_VARIABLE: &str = "T";

pub fn global_variables() -> VariableSet {
    VariableSet::new([XI, TAU]).expect("valid")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("denominators do not cancel: numerator {numerator}, denominator {denominator}")]
    CancellationFailed {
        numerator: String,
        denominator: String,
    },
    #[error("local variable `{0}` has no identification")]
    UnidentifiedVariable(String),
    #[error("local variable `{0}` has more than one identification")]
    DuplicateIdentification(String),
    #[error("invariant has no nonzero basic class")]
    NoNonzeroClass,
    #[error("pipeline {pipeline} and closed form {closed_form} differ beyond a global sign")]
    PipelineMismatch {
        pipeline: String,
        closed_form: String,
    },
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

fn lift(e: LaurentError) -> SurgeryError {
    match e {
        LaurentError::UnmappedVariable(v) => SurgeryError::UnidentifiedVariable(v),
        other => SurgeryError::Laurent(other),
    }
}

/// One member of the family: knot `K`, winding `q ≥ 1`, fiber-sum summand `E(n)`, `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub knot: KnotSpec,
    pub q: u32,
    pub n: u32,
}

impl FamilyParams {
    pub fn new(knot: KnotSpec, q: u32, n: u32) -> Result<Self, SurgeryError> {
        if q < 1 {
            return Err(SurgeryError::InvalidParameter(format!(
                "q must be >= 1, got {q}"
            )));
        }
        if n < 1 {
            return Err(SurgeryError::InvalidParameter(format!(
                "n must be >= 1, got {n}"
            )));
        }
        Ok(FamilyParams { knot, q, n })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub label: String,
    #[serde(serialize_with = "serialize_fraction")]
    pub relative_sw: LaurentFraction,
}

fn serialize_fraction<S: Serializer>(
    f: &LaurentFraction,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Frac<'a> {
        numerator: &'a LaurentPoly,
        denominator: &'a LaurentPoly,
    }
    Frac {
        numerator: f.numerator(),
        denominator: f.denominator(),
    }
    .serialize(serializer)
}

/// Pieces, identification rules and link polynomial of a gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingData {
    pub global: VariableSet,
    pub pieces: Vec<Piece>,
    /// Local variable name ↦ exponent vector over `global`.
    pub identifications: Vec<(String, Monomial)>,
    pub link_poly: LaurentPoly,
}

fn single_var(name: &str) -> VariableSet {
    VariableSet::new([name]).expect("valid")
}

/// `(F⁻¹ − F)^{n−1}` over the local variable `F`.
pub fn sw_en_complement(n: u32) -> Result<LaurentFraction, SurgeryError> {
    if n < 1 {
        return Err(SurgeryError::InvalidParameter(format!(
            "n must be >= 1, got {n}"
        )));
    }
    let v = single_var(FIBER_VARIABLE);
    let base = LaurentPoly::parse(&v, "F^-1 - F")?;
    Ok(LaurentFraction::from_poly(base.pow(n - 1)))
}

/// `Δ_K^sym(T²) / (T⁻¹ − T)` over the local variable `T`.
pub fn sw_knot_piece(k: &KnotSpec) -> Result<LaurentFraction, SurgeryError> {
    let alex = alexander_knot(k)?;
    knot_piece_from(&alex)
}

fn knot_piece_from(alex: &AlexResult) -> Result<LaurentFraction, SurgeryError> {
    let v = single_var(TORUS_VARIABLE);
    let squared = Substitution::new(v.clone()).map("t", &[2])?;
    let numerator = alex.symmetric.substitute(&squared)?;
    let denominator = LaurentPoly::parse(&v, "T^-1 - T")?;
    Ok(LaurentFraction::new(numerator, denominator)?)
}

/// The symmetrized link polynomial of `L_q` in the global classes.
pub fn link_factor(q: u32) -> Result<LaurentPoly, SurgeryError> {
    if q < 1 {
        return Err(SurgeryError::InvalidParameter(format!(
            "q must be >= 1, got {q}"
        )));
    }
    let link = alexander_closure_with_axis(&family_braid(q));
    let sub = Substitution::new(global_variables())
        .map(AXIS_VARIABLE, &[2, 0])?
        .map("s", &[0, 0])?
        .map("t", &[0, 2])?;
    Ok(link.substitute(&sub)?.symmetrize()?)
}

/// `σ_1^{2q}`: the components `B ∪ C` of `L_q` as a 2-strand closure whose axis is `A`.
pub fn family_braid(q: u32) -> BraidWord {
    BraidWord::sigma1_power(2 * q as i32)
}

impl GluingData {
    /// Gluing data of `L_q` for the given family member.
    pub fn for_family(p: &FamilyParams) -> Result<Self, SurgeryError> {
        let en = sw_en_complement(p.n)?;
        Self::with_fiber_piece(p, format!("E({}) \\ nu F", p.n), en)
    }

    /// Family gluing with the `E(n) ∖ νF` piece replaced by an arbitrary
    /// fiber-complement invariant in one variable, identified with `ξ`.
    pub fn with_fiber_piece(
        p: &FamilyParams,
        label: String,
        fiber_piece: LaurentFraction,
    ) -> Result<Self, SurgeryError> {
        if fiber_piece.vars().len() != 1 {
            return Err(SurgeryError::InvalidParameter(
                "fiber piece must be in exactly one variable".into(),
            ));
        }
        let rename = Substitution::new(single_var(FIBER_VARIABLE))
            .map(&fiber_piece.vars().names()[0], &[1])?;
        let fiber_piece = fiber_piece.substitute(&rename)?;
        let q = p.q as i32;
        Ok(GluingData {
            global: global_variables(),
            pieces: vec![
                Piece {
                    label: "E(1) \\ nu F".into(),
                    relative_sw: LaurentFraction::from_poly(LaurentPoly::one(&single_var(
                        FIBER_VARIABLE,
                    ))),
                },
                Piece {
                    label,
                    relative_sw: fiber_piece,
                },
                Piece {
                    label: "(S^1 x M_K) \\ nu T_m".into(),
                    relative_sw: sw_knot_piece(&p.knot)?,
                },
            ],
            identifications: vec![
                (FIBER_VARIABLE.into(), Monomial::new(vec![1, 0])),
                (TORUS_VARIABLE.into(), Monomial::new(vec![1, q])),
                (AXIS_VARIABLE.into(), Monomial::new(vec![2, 0])),
                ("s".into(), Monomial::new(vec![0, 0])),
                ("t".into(), Monomial::new(vec![0, 2])),
            ],
            link_poly: alexander_closure_with_axis(&family_braid(p.q)),
        })
    }

    fn substitution(&self) -> Result<Substitution, SurgeryError> {
        let mut seen = BTreeSet::new();
        let mut sub = Substitution::new(self.global.clone());
        for (name, image) in &self.identifications {
            if !seen.insert(name.as_str()) {
                return Err(SurgeryError::DuplicateIdentification(name.clone()));
            }
            sub.insert(name, image.clone())?;
        }
        Ok(sub)
    }

    /// Every factor expressed in the global classes, before cancellation.
    /// The link factor comes last.
    pub fn global_factors(&self) -> Result<Vec<(String, LaurentFraction)>, SurgeryError> {
        let sub = self.substitution()?;
        let mut out = Vec::with_capacity(self.pieces.len() + 1);
        for piece in &self.pieces {
            out.push((
                piece.label.clone(),
                piece.relative_sw.substitute(&sub).map_err(lift)?,
            ));
        }
        let link = self
            .link_poly
            .substitute(&sub)
            .map_err(lift)?
            .symmetrize()?;
        out.push(("link L_q".into(), LaurentFraction::from_poly(link)));
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Pipeline,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWInvariant {
    pub poly: LaurentPoly,
    pub provenance: Provenance,
    /// Unit multiplied into the raw result to obtain `poly`.
    pub canonical_unit: Unit,
}

impl SWInvariant {
    /// Equality up to a global sign.
    pub fn agrees_with(&self, other: &SWInvariant) -> bool {
        self.poly == other.poly || self.poly == -&other.poly
    }

    /// `poly(ξ⁻¹, τ⁻¹) = ±poly(ξ, τ)`.
    pub fn is_symmetric(&self) -> bool {
        let bar = self.poly.invert_variables();
        bar == self.poly || bar == -&self.poly
    }

    /// Largest exponent of `τ` among the terms.
    pub fn max_tau_exponent(&self) -> Option<i32> {
        self.poly.terms().map(|(m, _)| m.exponents()[1]).max()
    }
}

impl Serialize for SWInvariant {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            poly: &'a LaurentPoly,
            text: String,
            provenance: Provenance,
            canonical_unit: String,
        }
        Repr {
            poly: &self.poly,
            text: self.poly.to_string(),
            provenance: self.provenance,
            canonical_unit: self.canonical_unit.display_with(self.poly.vars()),
        }
        .serialize(serializer)
    }
}

/// Multiplies the pieces and link factor in the global ring and cancels the
/// denominators exactly. The result is signed so its lex-leading coefficient
/// is positive.
pub fn assemble_general(g: &GluingData) -> Result<SWInvariant, SurgeryError> {
    let factors = g.global_factors()?;
    let mut numerator = LaurentPoly::one(&g.global);
    let mut denominator = LaurentPoly::one(&g.global);
    for (_, f) in &factors {
        numerator = &numerator * f.numerator();
        denominator = &denominator * f.denominator();
    }
    let raw =
        numerator
            .exact_divide(&denominator)
            .map_err(|_| SurgeryError::CancellationFailed {
                numerator: numerator.to_string(),
                denominator: denominator.to_string(),
            })?;
    let (poly, sign) = raw.sign_normalized();
    Ok(SWInvariant {
        poly,
        provenance: Provenance::Pipeline,
        canonical_unit: Unit {
            sign,
            monomial: Monomial::one(2),
        },
    })
}

pub fn assemble_sw(p: &FamilyParams) -> Result<SWInvariant, SurgeryError> {
    assemble_general(&GluingData::for_family(p)?)
}

/// `(ξ⁻¹ − ξ)^{n−1} · Δ_K^sym(ξ² τ^{2q})`, evaluated directly and left unnormalized.
pub fn closed_form_sw(p: &FamilyParams) -> Result<SWInvariant, SurgeryError> {
    let alex = alexander_knot(&p.knot)?;
    closed_form_from(&alex, p.q, p.n)
}

fn closed_form_from(alex: &AlexResult, q: u32, n: u32) -> Result<SWInvariant, SurgeryError> {
    let global = global_variables();
    let fiber = LaurentPoly::parse(&global, "xi^-1 - xi")?.pow(n.saturating_sub(1));
    let sub = Substitution::new(global.clone()).map("t", &[2, 2 * q as i32])?;
    debug_assert_eq!(alex.symmetric.vars(), &knot_variables());
    let knot = alex.symmetric.substitute(&sub)?;
    Ok(SWInvariant {
        poly: &fiber * &knot,
        provenance: Provenance::ClosedForm,
        canonical_unit: Unit::one(2),
    })
}

/// A class `ξ^a τ^b` with nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicClass {
    pub exponents: (i32, i32),
    #[serde(serialize_with = "serialize_bigint")]
    pub coefficient: BigInt,
    /// `gcd(|a|, |b|)`; `None` for the zero class, which is exempt.
    pub divisibility: Option<u32>,
}

pub fn basic_classes(sw: &SWInvariant) -> Vec<BasicClass> {
    sw.poly
        .terms()
        .map(|(m, c)| {
            let (a, b) = (m.exponents()[0], m.exponents()[1]);
            let divisibility = ((a, b) != (0, 0)).then(|| a.unsigned_abs().gcd(&b.unsigned_abs()));
            BasicClass {
                exponents: (a, b),
                coefficient: c.clone(),
                divisibility,
            }
        })
        .collect()
}

/// Highest divisibility among the nonzero basic classes.
pub fn max_divisibility(sw: &SWInvariant) -> Result<u32, SurgeryError> {
    basic_classes(sw)
        .iter()
        .filter_map(|c| c.divisibility)
        .max()
        .ok_or(SurgeryError::NoNonzeroClass)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    PairwiseDistinct,
    NotDistinguished,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::PairwiseDistinct => "pairwise distinct",
            VerdictKind::NotDistinguished => "not distinguished",
        }
    }
}

impl Serialize for VerdictKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRow {
    pub q: u32,
    pub n: u32,
    /// `None` when only the zero class survives.
    pub max_divisibility: Option<u32>,
    /// Number of basic classes, the zero class included.
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub knot: String,
    pub genus_if_fibred: u32,
    pub monic: bool,
    pub n: u32,
    pub rows: Vec<VerdictRow>,
    pub verdict: VerdictKind,
    pub warnings: Vec<String>,
}

pub const WARN_NOT_MONIC: &str = "Alexander polynomial is not monic: E(1)_K carries no symplectic structure, so the tori are distinguished only as smooth tori";
pub const WARN_CONSTANT: &str = "family not distinguished: the symmetrized Alexander polynomial is constant and the tori may all be isotopic";

/// Warnings that apply to every member of the family of a knot.
pub fn knot_warnings(alex: &AlexResult) -> Vec<String> {
    let mut w = Vec::new();
    if alex.span == 0 {
        w.push(WARN_CONSTANT.to_string());
    }
    if !alex.monic {
        w.push(WARN_NOT_MONIC.to_string());
    }
    w
}

/// Computes the pipeline invariant and checks it against the closed form.
pub fn checked_invariant(p: &FamilyParams) -> Result<SWInvariant, SurgeryError> {
    let pipeline = assemble_sw(p)?;
    let closed = closed_form_sw(p)?;
    if !pipeline.agrees_with(&closed) {
        return Err(SurgeryError::PipelineMismatch {
            pipeline: pipeline.poly.to_string(),
            closed_form: closed.poly.to_string(),
        });
    }
    Ok(pipeline)
}

/// Sweeps `q` with `n = 2g + 1` (or the override) and compares the highest
/// basic-class divisibilities.
pub fn distinguish(
    knot: &KnotSpec,
    qs: &[u32],
    n_override: Option<u32>,
) -> Result<Verdict, SurgeryError> {
    if qs.is_empty() {
        return Err(SurgeryError::InvalidParameter(
            "no values of q given".into(),
        ));
    }
    if qs.iter().collect::<BTreeSet<_>>().len() != qs.len() {
        return Err(SurgeryError::InvalidParameter(
            "values of q must be distinct".into(),
        ));
    }
    let alex = alexander_knot(knot)?;
    let n = n_override.unwrap_or(2 * alex.genus_if_fibred + 1);
    let mut warnings = knot_warnings(&alex);
    let mut rows = Vec::with_capacity(qs.len());
    for &q in qs {
        let p = FamilyParams::new(knot.clone(), q, n)?;
        let sw = checked_invariant(&p)?;
        let max = max_divisibility(&sw).ok();
        if let Some(d) = max {
            if d > alex.span * q {
                warnings.push(format!(
                    "q={q}: highest divisibility {d} exceeds span*q = {}",
                    alex.span * q
                ));
            }
        }
        rows.push(VerdictRow {
            q,
            n,
            max_divisibility: max,
            classes: basic_classes(&sw).len(),
        });
    }
    let divisibilities: Option<BTreeSet<u32>> = rows.iter().map(|r| r.max_divisibility).collect();
    let distinct = alex.span > 0 && divisibilities.is_some_and(|d| d.len() == rows.len());
    Ok(Verdict {
        knot: knot.label(),
        genus_if_fibred: alex.genus_if_fibred,
        monic: alex.monic,
        n,
        rows,
        verdict: if distinct {
            VerdictKind::PairwiseDistinct
        } else {
            VerdictKind::NotDistinguished
        },
        warnings,
    })
}

/// Groups the classes by `τ`-exponent, for display.
pub fn classes_by_tau(classes: &[BasicClass]) -> BTreeMap<i32, Vec<&BasicClass>> {
    let mut out: BTreeMap<i32, Vec<&BasicClass>> = BTreeMap::new();
    for c in classes {
        out.entry(c.exponents.1).or_default().push(c);
    }
    out
}
