//! Sparse multivariate Laurent polynomials with integer coefficients.
//!
//! A [`LaurentPoly`] is a finitely supported map from exponent vectors to
//! nonzero [`BigInt`] coefficients, stored in a `BTreeMap` so that iteration
//! (and therefore printing and serialization) follows lexicographic order on
//! exponent vectors. Exponents are `i32` and every exponent addition is
//! overflow-checked.
//!
//! Alexander polynomials and Seiberg-Witten invariants are only defined up
//! to multiplication by a unit `±m` (`m` a monomial). [`LaurentPoly::canonicalize`]
//! is the one normalization used for that everywhere in the crate: shift so the
//! minimal exponent of every variable is zero, then make the lex-leading
//! (largest) coefficient positive.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable set mismatch: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("invalid variable set: {0}")]
    InvalidVariables(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable `{0}` is not mapped by the substitution")]
    UnmappedVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("{0} is not unit-equivalent to its variable inversion")]
    NotSymmetrizable(String),
    #[error("centering monomial of {0} is not even")]
    OddCenter(String),
    #[error("fraction denominator is zero")]
    ZeroDenominator,
    #[error("cannot parse polynomial at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Ordered list of distinct variable names. The order fixes the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet(Arc<[String]>);

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(LaurentError::InvalidVariables("empty variable name".into()));
            }
            if names[..i].contains(name) {
                return Err(LaurentError::InvalidVariables(format!(
                    "duplicate variable `{name}`"
                )));
            }
        }
        Ok(VariableSet(names.into()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn describe(&self) -> String {
        self.0.join(",")
    }
}

/// Exponent vector of a Laurent monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(exponents: Vec<i32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// The monomial `v_index` in a ring with `arity` variables.
    pub fn variable(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 0)
    }

    /// Product of monomials (exponent sum).
    ///
    /// Panics on exponent overflow or arity mismatch.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "monomial arity mismatch");
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn inv(&self) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|e| e.checked_neg().expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Exact half of an even monomial.
    pub fn half(&self) -> Option<Monomial> {
        self.is_even()
            .then(|| Monomial(self.0.iter().map(|e| e / 2).collect()))
    }

    /// Renders the monomial with the given names, `1` for the empty product.
    pub fn display_with(&self, vars: &VariableSet) -> String {
        let factors: Vec<String> = vars
            .names()
            .iter()
            .zip(&self.0)
            .filter(|(_, &e)| e != 0)
            .map(|(name, &e)| {
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// A unit `sign · monomial` of the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    pub sign: i8,
    pub monomial: Monomial,
}

impl Unit {
    pub fn one(arity: usize) -> Self {
        Unit {
            sign: 1,
            monomial: Monomial::one(arity),
        }
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.monomial.is_one()
    }

    pub fn compose(&self, other: &Unit) -> Unit {
        Unit {
            sign: self.sign * other.sign,
            monomial: self.monomial.mul(&other.monomial),
        }
    }

    pub fn display_with(&self, vars: &VariableSet) -> String {
        let m = self.monomial.display_with(vars);
        match (self.sign, m.as_str()) {
            (1, _) => m,
            (_, "1") => "-1".to_string(),
            _ => format!("-{m}"),
        }
    }
}

/// A variable-to-monomial substitution into a target ring.
///
/// Mapping a variable to the empty monomial sets it to 1.
#[derive(Clone, Debug)]
pub struct Substitution {
    target: VariableSet,
    images: BTreeMap<String, Monomial>,
}

impl Substitution {
    pub fn new(target: VariableSet) -> Self {
        Substitution {
            target,
            images: BTreeMap::new(),
        }
    }

    pub fn map(mut self, name: &str, exponents: &[i32]) -> Result<Self, LaurentError> {
        self.insert(name, Monomial::new(exponents.to_vec()))?;
        Ok(self)
    }

    pub fn insert(&mut self, name: &str, image: Monomial) -> Result<(), LaurentError> {
        if image.arity() != self.target.len() {
            return Err(LaurentError::ArityMismatch {
                expected: self.target.len(),
                got: image.arity(),
            });
        }
        self.images.insert(name.to_string(), image);
        Ok(())
    }

    pub fn target(&self) -> &VariableSet {
        &self.target
    }

    pub fn image(&self, name: &str) -> Option<&Monomial> {
        self.images.get(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: VariableSet,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: &VariableSet) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VariableSet) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &VariableSet, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn monomial(vars: &VariableSet, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(m.arity(), vars.len(), "monomial arity mismatch");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &VariableSet, name: &str) -> Result<Self, LaurentError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(vars, Monomial::variable(vars.len(), i), 1))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zero coefficients.
    pub fn from_terms<I, C>(vars: &VariableSet, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(LaurentError::ArityMismatch {
                    expected: vars.len(),
                    got: e.len(),
                });
            }
            p.add_term(Monomial(e), c.into());
        }
        Ok(p)
    }

    /// Parses text such as `t^-1 - 1 + t` or `2*xi^-2*tau^-2 - 3`.
    pub fn parse(vars: &VariableSet, text: &str) -> Result<Self, LaurentError> {
        Parser::new(vars, text).parse()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lex order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The lex-largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Sum of all coefficients, i.e. the value with every variable set to 1.
    pub fn value_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Minimal exponent of each variable (all zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Monomial {
        self.fold_exponents(i32::min)
    }

    /// Maximal exponent of each variable (all zeros for the zero polynomial).
    pub fn max_exponents(&self) -> Monomial {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: fn(i32, i32) -> i32) -> Monomial {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Monomial::one(self.vars.len());
        };
        let mut acc = first.0.clone();
        for m in iter {
            for (a, e) in acc.iter_mut().zip(&m.0) {
                *a = f(*a, *e);
            }
        }
        Monomial(acc)
    }

    fn check_same(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(LaurentError::VariableMismatch {
                left: self.vars.describe(),
                right: other.vars.describe(),
            })
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_same(other)?;
        let mut out = LaurentPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul_unit(&self, u: &Unit) -> LaurentPoly {
        let p = self.mul_monomial(&u.monomial);
        if u.sign < 0 {
            -&p
        } else {
            p
        }
    }

    /// The image under `v ↦ v⁻¹` for every variable.
    pub fn invert_variables(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.inv(), c.clone()))
                .collect(),
        }
    }

    /// Applies a monomial substitution; a ring homomorphism into the target ring.
    pub fn substitute(&self, sub: &Substitution) -> Result<LaurentPoly, LaurentError> {
        let images: Vec<&Monomial> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                sub.image(n)
                    .ok_or_else(|| LaurentError::UnmappedVariable(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = LaurentPoly::zero(&sub.target);
        for (m, c) in &self.terms {
            let mut image = Monomial::one(sub.target.len());
            for (img, &e) in images.iter().zip(&m.0) {
                if e != 0 {
                    image = image.mul(&img.pow(e));
                }
            }
            out.add_term(image, c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a larger or reordered variable set
    /// containing all of its variables.
    pub fn embed(&self, target: &VariableSet) -> Result<LaurentPoly, LaurentError> {
        let mut sub = Substitution::new(target.clone());
        for name in self.vars.names() {
            let i = target
                .index_of(name)
                .ok_or_else(|| LaurentError::UnknownVariable(name.clone()))?;
            sub.insert(name, Monomial::variable(target.len(), i))?;
        }
        self.substitute(&sub)
    }

    /// Returns `u` with `self = u · other` if such a unit exists.
    pub fn equals_up_to_unit(&self, other: &LaurentPoly) -> Option<Unit> {
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return None;
        }
        let (Some((ma, ca)), Some((mb, cb))) = (self.leading_term(), other.leading_term()) else {
            return Some(Unit::one(self.vars.len()));
        };
        let sign = if ca == cb {
            1
        } else if *ca == -cb {
            -1
        } else {
            return None;
        };
        let unit = Unit {
            sign,
            monomial: ma.div(mb),
        };
        (other.mul_unit(&unit) == *self).then_some(unit)
    }

    /// Canonical representative of the unit class together with the unit applied.
    ///
    /// The returned polynomial is `unit · self`, has every minimal exponent zero
    /// and a positive lex-leading coefficient.
    pub fn canonicalize(&self) -> (LaurentPoly, Unit) {
        if self.is_zero() {
            return (self.clone(), Unit::one(self.vars.len()));
        }
        let shift = self.min_exponents().inv();
        let sign = if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            -1
        } else {
            1
        };
        let unit = Unit {
            sign,
            monomial: shift,
        };
        (self.mul_unit(&unit), unit)
    }

    pub fn canonical_form(&self) -> LaurentPoly {
        self.canonicalize().0
    }

    /// Flips the global sign so that the lex-leading coefficient is positive.
    pub fn sign_normalized(&self) -> (LaurentPoly, i8) {
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            (-self, -1)
        } else {
            (self.clone(), 1)
        }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Both operands are shifted to ordinary polynomials not divisible by any
    /// variable, then divided by lex-ordered long division. Any nonzero
    /// remainder is reported as [`LaurentError::NotDivisible`].
    pub fn exact_divide(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let not_divisible = || LaurentError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let shift_a = self.min_exponents();
        let shift_b = divisor.min_exponents();
        let a = self.mul_monomial(&shift_a.inv());
        let b = divisor.mul_monomial(&shift_b.inv());
        // per-variable degree bound for the quotient
        let bound: Vec<i32> = a
            .max_exponents()
            .0
            .iter()
            .zip(&b.max_exponents().0)
            .map(|(da, db)| da - db)
            .collect();
        if bound.iter().any(|&d| d < 0) {
            return Err(not_divisible());
        }
        let (lead_b, lead_c) = {
            let (m, c) = b.leading_term().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut remainder = a;
        let mut quotient = LaurentPoly::zero(&self.vars);
        while let Some((lead_r, c_r)) = remainder.leading_term() {
            let qm = lead_r.div(&lead_b);
            if qm.0.iter().zip(&bound).any(|(&e, &d)| e < 0 || e > d) {
                return Err(not_divisible());
            }
            let (qc, rem) = c_r.div_rem(&lead_c);
            if !rem.is_zero() {
                return Err(not_divisible());
            }
            for (m, c) in &b.terms {
                remainder.add_term(m.mul(&qm), -(c * &qc));
            }
            quotient.add_term(qm, qc);
        }
        Ok(quotient.mul_monomial(&shift_a.div(&shift_b)))
    }

    /// Symmetric representative of a polynomial that is unit-equivalent to its
    /// variable inversion.
    ///
    /// The result `S` satisfies `S̄ = ±S`. A single-variable polynomial whose
    /// value at 1 is `±1` is signed so that the value is `+1`; otherwise the
    /// lex-leading coefficient is made positive.
    pub fn symmetrize(&self) -> Result<LaurentPoly, LaurentError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let unit = self
            .equals_up_to_unit(&self.invert_variables())
            .ok_or_else(|| LaurentError::NotSymmetrizable(self.to_string()))?;
        let center = unit
            .monomial
            .half()
            .ok_or_else(|| LaurentError::OddCenter(self.to_string()))?;
        let centered = self.mul_monomial(&center.inv());
        let value = centered.value_at_one();
        if self.vars.len() == 1 && value.abs().is_one() {
            return Ok(if value.is_negative() {
                -&centered
            } else {
                centered
            });
        }
        Ok(centered.sign_normalized().0)
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&m.display_with(&self.vars))?;
            } else {
                write!(f, "{abs}*{}", m.display_with(&self.vars))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics if the variable sets differ; use the `try_` form to handle that.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Formal quotient of two Laurent polynomials over the same variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentFraction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl LaurentFraction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self, LaurentError> {
        numerator.check_same(&denominator)?;
        if denominator.is_zero() {
            return Err(LaurentError::ZeroDenominator);
        }
        Ok(LaurentFraction {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let denominator = LaurentPoly::one(p.vars());
        LaurentFraction {
            numerator: p,
            denominator,
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn vars(&self) -> &VariableSet {
        self.numerator.vars()
    }

    pub fn try_mul(&self, other: &LaurentFraction) -> Result<LaurentFraction, LaurentError> {
        Ok(LaurentFraction {
            numerator: self.numerator.try_mul(&other.numerator)?,
            denominator: self.denominator.try_mul(&other.denominator)?,
        })
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<LaurentFraction, LaurentError> {
        LaurentFraction::new(
            self.numerator.substitute(sub)?,
            self.denominator.substitute(sub)?,
        )
    }

    /// Cancels the denominator exactly.
    pub fn to_poly(&self) -> Result<LaurentPoly, LaurentError> {
        self.numerator.exact_divide(&self.denominator)
    }
}

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

// JSON: {"vars":["xi","tau"],"terms":[{"e":[-2,0],"c":1}, ...]}, terms lex ascending.

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<i32>,
    c: CoeffJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Small(i64),
    Unsigned(u64),
    Big(String),
}

impl From<&BigInt> for CoeffJson {
    fn from(c: &BigInt) -> Self {
        match c.to_i64() {
            Some(v) => CoeffJson::Small(v),
            None => CoeffJson::Big(c.to_string()),
        }
    }
}

/// Serializes a big integer as a JSON number when it fits in `i64`, else as a string.
pub(crate) fn serialize_bigint<S: Serializer>(
    c: &BigInt,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    CoeffJson::from(c).serialize(serializer)
}

impl TryFrom<CoeffJson> for BigInt {
    type Error = String;
    fn try_from(c: CoeffJson) -> Result<Self, String> {
        match c {
            CoeffJson::Small(v) => Ok(v.into()),
            CoeffJson::Unsigned(v) => Ok(v.into()),
            CoeffJson::Big(s) => s.parse().map_err(|_| format!("invalid coefficient `{s}`")),
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    e: m.0.clone(),
                    c: c.into(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolyJson::deserialize(deserializer)?;
        let vars = VariableSet::new(raw.vars).map_err(D::Error::custom)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| Ok((t.e, BigInt::try_from(t.c)?)))
            .collect::<Result<Vec<_>, String>>()
            .map_err(D::Error::custom)?;
        LaurentPoly::from_terms(&vars, terms).map_err(D::Error::custom)
    }
}

struct Parser<'a> {
    vars: &'a VariableSet,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(vars: &'a VariableSet, text: &'a str) -> Self {
        Parser {
            vars,
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> LaurentError {
        LaurentError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            std::str::from_utf8(&self.src[start..self.pos])
                .expect("ascii digits")
                .parse()
                .expect("digits parse")
        })
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut p = LaurentPoly::zero(self.vars);
        let mut first = true;
        loop {
            let mut sign = BigInt::one();
            match self.peek() {
                None if first => return Err(self.err("empty input")),
                None => break,
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            first = false;
            let (m, c) = self.term()?;
            p.add_term(m, c * sign);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), LaurentError> {
        let mut coeff = BigInt::one();
        let mut m = Monomial::one(self.vars.len());
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => coeff *= self.integer().expect("digit present"),
                Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric()
                            || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let i = self
                        .vars
                        .index_of(name)
                        .ok_or_else(|| LaurentError::Parse {
                            position: start,
                            message: format!("unknown variable `{name}`"),
                        })?;
                    let mut e = 1i32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let neg = self.peek() == Some(b'-');
                        if neg {
                            self.pos += 1;
                        }
                        self.skip_ws();
                        let v = self
                            .integer()
                            .and_then(|v| v.to_i32())
                            .ok_or_else(|| self.err("expected exponent"))?;
                        e = if neg { -v } else { v };
                    }
                    let mut exps = vec![0; self.vars.len()];
                    exps[i] = e;
                    m = m.mul(&Monomial(exps));
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((m, coeff));
            }
        }
    }
}
