//! Exact determinants over the Laurent ring.
//!
//! Small matrices use Laplace expansion memoized over column subsets; larger
//! ones use Bareiss fraction-free elimination, whose divisions are exact.

use std::collections::HashMap;

use crate::laurent::{LaurentError, LaurentPoly, VariableSet};

pub type Matrix = Vec<Vec<LaurentPoly>>;

/// Largest size handled by cofactor expansion in [`determinant`].
pub const COFACTOR_LIMIT: usize = 8;

pub fn determinant(
    m: &[Vec<LaurentPoly>],
    vars: &VariableSet,
) -> Result<LaurentPoly, LaurentError> {
    if m.len() <= COFACTOR_LIMIT {
        Ok(det_cofactor(m, vars))
    } else {
        det_bareiss(m, vars)
    }
}

pub fn det_cofactor(m: &[Vec<LaurentPoly>], vars: &VariableSet) -> LaurentPoly {
    let n = m.len();
    assert!(n < 32, "cofactor expansion is limited to small matrices");
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut memo: HashMap<u32, LaurentPoly> = HashMap::new();
    minor(m, 0, (1u32 << n) - 1, vars, &mut memo)
}

// determinant of rows row.. restricted to the columns in `cols`
fn minor(
    m: &[Vec<LaurentPoly>],
    row: usize,
    cols: u32,
    vars: &VariableSet,
    memo: &mut HashMap<u32, LaurentPoly>,
) -> LaurentPoly {
    if cols == 0 {
        return LaurentPoly::one(vars);
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = LaurentPoly::zero(vars);
    let mut sign_positive = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        if !m[row][c].is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << c), vars, memo);
            let term = &m[row][c] * &sub;
            acc = if sign_positive {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

pub fn det_bareiss(
    m: &[Vec<LaurentPoly>],
    vars: &VariableSet,
) -> Result<LaurentPoly, LaurentError> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return Ok(LaurentPoly::one(vars));
    }
    let mut a: Matrix = m.to_vec();
    let mut negate = false;
    let mut prev = LaurentPoly::one(vars);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(LaurentPoly::zero(vars));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_divide(&prev)?;
            }
            a[i][k] = LaurentPoly::zero(vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// `m` with row `r` and column `c` removed.
pub fn delete_row_col(m: &[Vec<LaurentPoly>], r: usize, c: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize, vars: &VariableSet) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one(vars)
                    } else {
                        LaurentPoly::zero(vars)
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v() -> VariableSet {
        VariableSet::new(["x", "t"]).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(&v(), s).unwrap()
    }

    #[test]
    fn small_cases() {
        let vars = v();
        assert_eq!(det_cofactor(&[], &vars), p("1"));
        assert_eq!(det_bareiss(&[], &vars).unwrap(), p("1"));
        let m = vec![vec![p("1 - t"), p("x")], vec![p("1"), p("0")]];
        assert_eq!(det_cofactor(&m, &vars), p("-x"));
        assert_eq!(det_bareiss(&m, &vars).unwrap(), p("-x"));
    }

    #[test]
    fn zero_pivot_needs_a_swap() {
        let vars = v();
        let m = vec![
            vec![p("0"), p("1"), p("t")],
            vec![p("x"), p("0"), p("1")],
            vec![p("1"), p("t^-1"), p("0")],
        ];
        assert_eq!(det_bareiss(&m, &vars).unwrap(), det_cofactor(&m, &vars));
    }

    #[test]
    fn singular_matrix() {
        let vars = v();
        let m = vec![vec![p("x"), p("t")], vec![p("x^2"), p("x*t")]];
        assert!(det_cofactor(&m, &vars).is_zero());
        assert!(det_bareiss(&m, &vars).unwrap().is_zero());
    }

    fn arb_entry() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-2i32..=2, 2), -3i64..=3), 0..3)
            .prop_map(|ts| LaurentPoly::from_terms(&v(), ts).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bareiss_matches_cofactor(
            n in 1usize..=5,
            entries in prop::collection::vec(arb_entry(), 25),
        ) {
            let m: Matrix = (0..n).map(|i| entries[i * 5..i * 5 + n].to_vec()).collect();
            prop_assert_eq!(det_bareiss(&m, &v()).unwrap(), det_cofactor(&m, &v()));
        }
    }
}
