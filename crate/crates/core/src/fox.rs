//! Fox free-differential calculus with values in the group ring of an
//! abelianization.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::braid::{ClosureInfo, FreeWord};
use crate::laurent::{LaurentPoly, Monomial, VariableSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoxError {
    #[error("abelianization assigns {got} monomials for a ring with {arity} variables")]
    ArityMismatch { arity: usize, got: usize },
    #[error("expected {expected} words, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("word uses generator x{generator} but the map covers only {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },
}

/// A total map from free generators `x_1..x_n` to monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    vars: VariableSet,
    assignment: Vec<Monomial>,
}

impl AbelianizationMap {
    pub fn new(vars: VariableSet, assignment: Vec<Monomial>) -> Result<Self, FoxError> {
        if let Some(bad) = assignment.iter().find(|m| m.arity() != vars.len()) {
            return Err(FoxError::ArityMismatch {
                arity: vars.len(),
                got: bad.arity(),
            });
        }
        Ok(AbelianizationMap { vars, assignment })
    }

    /// Every generator sent to the single variable of `vars` at `index`.
    pub fn uniform(vars: VariableSet, rank: usize, index: usize) -> Self {
        let m = Monomial::variable(vars.len(), index);
        AbelianizationMap {
            vars,
            assignment: vec![m; rank],
        }
    }

    /// Strand generators sent to their closure-component variable. The
    /// component variables sit at `offset..offset + components` in `vars`.
    pub fn for_closure(vars: VariableSet, info: &ClosureInfo, offset: usize) -> Self {
        let arity = vars.len();
        let assignment = info
            .strand_components()
            .into_iter()
            .map(|c| Monomial::variable(arity, offset + c))
            .collect();
        AbelianizationMap { vars, assignment }
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.assignment.len()
    }

    pub fn image(&self, generator: usize) -> &Monomial {
        &self.assignment[generator]
    }

    pub fn apply(&self, w: &FreeWord) -> Result<Monomial, FoxError> {
        let mut acc = Monomial::one(self.vars.len());
        for &l in w.letters() {
            let g = self.index(l)?;
            acc = if l > 0 {
                acc.mul(&self.assignment[g])
            } else {
                acc.div(&self.assignment[g])
            };
        }
        Ok(acc)
    }

    fn index(&self, letter: i32) -> Result<usize, FoxError> {
        let g = letter.unsigned_abs() as usize;
        if g == 0 || g > self.assignment.len() {
            Err(FoxError::GeneratorOutOfRange {
                generator: g,
                rank: self.assignment.len(),
            })
        } else {
            Ok(g - 1)
        }
    }

    /// `φ ∘ f` for the endomorphism `f` given by its generator images.
    pub fn twisted(&self, images: &[FreeWord]) -> Result<Self, FoxError> {
        Ok(AbelianizationMap {
            vars: self.vars.clone(),
            assignment: images
                .iter()
                .map(|w| self.apply(w))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// `φ(∂w/∂x_j)` for a 0-based generator index `j`, in a single pass that
/// carries the abelianized prefix of `w`.
pub fn fox_derivative(
    w: &FreeWord,
    j: usize,
    phi: &AbelianizationMap,
) -> Result<LaurentPoly, FoxError> {
    let mut prefix = Monomial::one(phi.vars.len());
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for &l in w.letters() {
        let g = phi.index(l)?;
        if l > 0 {
            if g == j {
                *acc.entry(prefix.clone()).or_default() += 1;
            }
            prefix = prefix.mul(&phi.assignment[g]);
        } else {
            prefix = prefix.div(&phi.assignment[g]);
            if g == j {
                *acc.entry(prefix.clone()).or_default() -= 1;
            }
        }
    }
    Ok(LaurentPoly::from_terms(
        &phi.vars,
        acc.into_iter().map(|(m, c)| (m.exponents().to_vec(), c)),
    )
    .expect("prefix monomials have the ring's arity"))
}

/// Square matrix `(φ(∂w_i/∂x_j))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxJacobian {
    pub matrix: Vec<Vec<LaurentPoly>>,
}

impl FoxJacobian {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.matrix[i][j]
    }
}

pub fn fox_jacobian(images: &[FreeWord], phi: &AbelianizationMap) -> Result<FoxJacobian, FoxError> {
    let n = phi.rank();
    if images.len() != n {
        return Err(FoxError::DimensionMismatch {
            expected: n,
            got: images.len(),
        });
    }
    let matrix = images
        .iter()
        .map(|w| (0..n).map(|j| fox_derivative(w, j, phi)).collect())
        .collect::<Result<_, _>>()?;
    Ok(FoxJacobian { matrix })
}

/// Product of square Laurent matrices.
pub fn matmul(
    a: &[Vec<LaurentPoly>],
    b: &[Vec<LaurentPoly>],
    vars: &VariableSet,
) -> Vec<Vec<LaurentPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(LaurentPoly::zero(vars), |acc, k| {
                        &acc + &(&a[i][k] * &b[k][j])
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{artin_action, BraidWord};
    use proptest::prelude::*;

    fn vars(n: usize) -> VariableSet {
        VariableSet::new((1..=n).map(|i| format!("t{i}"))).unwrap()
    }

    fn distinct(n: usize) -> AbelianizationMap {
        let v = vars(n);
        AbelianizationMap::new(v, (0..n).map(|i| Monomial::variable(n, i)).collect()).unwrap()
    }

    fn p(v: &VariableSet, s: &str) -> LaurentPoly {
        LaurentPoly::parse(v, s).unwrap()
    }

    fn w(letters: &[i32]) -> FreeWord {
        FreeWord::from_letters(letters.iter().copied())
    }

    #[test]
    fn derivative_examples() {
        let phi = distinct(2);
        let v = phi.vars().clone();
        assert_eq!(
            fox_derivative(&w(&[1, 2, -1]), 0, &phi).unwrap(),
            p(&v, "1 - t2")
        );
        assert_eq!(fox_derivative(&w(&[1, 2]), 1, &phi).unwrap(), p(&v, "t1"));
        assert_eq!(fox_derivative(&w(&[-1]), 0, &phi).unwrap(), p(&v, "-t1^-1"));
        assert!(fox_derivative(&w(&[3]), 0, &phi).is_err());
    }

    #[test]
    fn jacobian_of_sigma1() {
        let v = VariableSet::new(["s", "t"]).unwrap();
        let phi = AbelianizationMap::new(
            v.clone(),
            vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])],
        )
        .unwrap();
        let j = fox_jacobian(&artin_action(&BraidWord::parse("1").unwrap()), &phi).unwrap();
        assert_eq!(
            j.matrix,
            vec![
                vec![p(&v, "1 - t"), p(&v, "s")],
                vec![p(&v, "1"), p(&v, "0")]
            ]
        );
        let id = fox_jacobian(&[FreeWord::generator(1), FreeWord::generator(2)], &phi).unwrap();
        assert_eq!(
            id.matrix,
            vec![vec![p(&v, "1"), p(&v, "0")], vec![p(&v, "0"), p(&v, "1")]]
        );
        assert_eq!(
            fox_jacobian(&[FreeWord::generator(1)], &phi),
            Err(FoxError::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    fn arb_word(rank: i32) -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((1..=rank, any::<bool>()), 0..16).prop_map(|ls| {
            FreeWord::from_letters(ls.into_iter().map(|(g, s)| if s { g } else { -g }))
        })
    }

    fn arb_braid(n: usize) -> impl Strategy<Value = BraidWord> {
        let m = (n - 1) as i32;
        prop::collection::vec((1..=m, any::<bool>()), 0..8).prop_map(move |ls| {
            BraidWord::new(
                n,
                ls.into_iter()
                    .map(|(l, s)| if s { l } else { -l })
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn fundamental_identity(word in arb_word(4)) {
            let phi = distinct(4);
            let v = phi.vars().clone();
            let lhs = &LaurentPoly::monomial(&v, phi.apply(&word).unwrap(), 1) - &LaurentPoly::one(&v);
            let mut rhs = LaurentPoly::zero(&v);
            for j in 0..4 {
                let xj = &LaurentPoly::monomial(&v, phi.image(j).clone(), 1) - &LaurentPoly::one(&v);
                rhs = &rhs + &(&fox_derivative(&word, j, &phi).unwrap() * &xj);
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_rule(u in arb_word(3), v in arb_word(3)) {
            let phi = distinct(3);
            let vars = phi.vars().clone();
            let pu = LaurentPoly::monomial(&vars, phi.apply(&u).unwrap(), 1);
            for j in 0..3 {
                let lhs = fox_derivative(&u.concat(&v), j, &phi).unwrap();
                let rhs = &fox_derivative(&u, j, &phi).unwrap()
                    + &(&pu * &fox_derivative(&v, j, &phi).unwrap());
                prop_assert_eq!(lhs, rhs);
                prop_assert!(fox_derivative(&u.concat(&u.inverse()), j, &phi).unwrap().is_zero());
            }
        }

        #[test]
        fn chain_rule(outer in arb_braid(3), inner in arb_braid(3)) {
            // (β γ)_* = β_* ∘ γ_*, so J(βγ) = J^{φ∘β_*}(γ) · J(β).
            let phi = distinct(3);
            let f = artin_action(&outer);
            let g = artin_action(&inner);
            let composite = fox_jacobian(&artin_action(&outer.concat(&inner)), &phi).unwrap();
            let twisted = phi.twisted(&f).unwrap();
            let jg = fox_jacobian(&g, &twisted).unwrap();
            let jf = fox_jacobian(&f, &phi).unwrap();
            prop_assert_eq!(composite.matrix, matmul(&jg.matrix, &jf.matrix, phi.vars()));
        }
    }
}
