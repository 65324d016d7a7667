//! Reduced Burau representation, used as an Alexander-polynomial route that
//! shares nothing with the Fox-calculus code path.

use crate::braid::BraidWord;
use crate::det::{self, Matrix};
use crate::fox::matmul;
use crate::laurent::{LaurentPoly, VariableSet};

/// Reduced Burau matrix of a single letter on `n` strands, `(n-1)×(n-1)`.
fn letter_matrix(letter: i32, n: usize, vars: &VariableSet) -> Matrix {
    let p = |s: &str| LaurentPoly::parse(vars, s).expect("fixed literal");
    let mut m = det::identity(n - 1, vars);
    let i = letter.unsigned_abs() as usize - 1;
    let positive = letter > 0;
    // block entries relative to row/column i: diagonal, above-left and below-right
    m[i][i] = if positive { p("-t") } else { p("-t^-1") };
    if i > 0 {
        m[i - 1][i] = if positive { p("t") } else { p("1") };
    }
    if i + 1 < n - 1 {
        m[i + 1][i] = if positive { p("1") } else { p("t^-1") };
    }
    m
}

/// Product of reduced Burau matrices along the word.
pub fn reduced_burau(b: &BraidWord, vars: &VariableSet) -> Matrix {
    let n = b.strands();
    b.letters()
        .iter()
        .fold(det::identity(n - 1, vars), |acc, &l| {
            matmul(&acc, &letter_matrix(l, n, vars), vars)
        })
}

/// `Δ(t) ≐ det(I − B(β)) · (1 − t) / (1 − tⁿ)` for the closure of `β`.
///
/// `vars` must contain the single variable `t`.
pub fn burau_alexander(b: &BraidWord, vars: &VariableSet) -> LaurentPoly {
    let n = b.strands();
    let burau = reduced_burau(b, vars);
    let id = det::identity(n - 1, vars);
    let diff: Matrix = id
        .iter()
        .zip(&burau)
        .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
        .collect();
    let d = det::determinant(&diff, vars).expect("exact elimination");
    let t = LaurentPoly::var(vars, "t").expect("variable t");
    let one = LaurentPoly::one(vars);
    (&d * &(&one - &t))
        .exact_divide(&(&one - &t.pow(n as u32)))
        .expect("closure polynomial identity is exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> VariableSet {
        VariableSet::new(["t"]).unwrap()
    }

    #[test]
    fn letter_times_inverse_is_identity() {
        let vars = t();
        for n in 2..=5 {
            for i in 1..n as i32 {
                let m = matmul(
                    &letter_matrix(i, n, &vars),
                    &letter_matrix(-i, n, &vars),
                    &vars,
                );
                assert_eq!(m, det::identity(n - 1, &vars), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn braid_relation() {
        let vars = t();
        let a = BraidWord::new(4, vec![2, 3, 2]).unwrap();
        let b = BraidWord::new(4, vec![3, 2, 3]).unwrap();
        assert_eq!(reduced_burau(&a, &vars), reduced_burau(&b, &vars));
        let a = BraidWord::new(4, vec![1, 2, 1]).unwrap();
        let b = BraidWord::new(4, vec![2, 1, 2]).unwrap();
        assert_eq!(reduced_burau(&a, &vars), reduced_burau(&b, &vars));
    }

    #[test]
    fn trefoil() {
        let vars = t();
        let d = burau_alexander(&BraidWord::parse("1 1 1").unwrap(), &vars);
        assert_eq!(d, LaurentPoly::parse(&vars, "1 - t + t^2").unwrap());
        assert!(burau_alexander(&BraidWord::unknot(), &vars).is_one());
    }
}
