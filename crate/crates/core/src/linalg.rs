//! Dense exact linear algebra over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Determinant by Gaussian elimination.
pub fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut acc = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            acc = -acc;
        }
        let p = a[col][col].clone();
        acc *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    acc
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::SingularSystem(format!("no pivot in column {col}")))?;
        a.swap(piv, col);
        b.swap(piv, col);
        let p = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
            let t = &f * &b[col];
            b[r] -= t;
        }
    }
    Ok(b.into_iter()
        .zip(a.iter().enumerate())
        .map(|(v, (i, row))| v / &row[i])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn small_determinants() {
        assert_eq!(det(vec![]), int(1));
        assert_eq!(det(vec![vec![int(0), int(1)], vec![int(1), int(0)]]), int(-1));
        let m = vec![
            vec![int(2), int(0), int(1)],
            vec![int(1), int(3), int(2)],
            vec![int(1), int(1), int(1)],
        ];
        // 2(3-2) - 0 + 1(1-3)
        assert_eq!(det(m), int(0));
    }

    #[test]
    fn solve_roundtrip() {
        let a = vec![
            vec![int(0), int(2), int(1)],
            vec![rat(1, 2), int(1), int(0)],
            vec![int(1), int(0), int(3)],
        ];
        let x = vec![rat(1, 3), int(-2), rat(5, 7)];
        let b: Vec<BigRational> = a
            .iter()
            .map(|row| row.iter().zip(&x).map(|(r, v)| r * v).sum())
            .collect();
        assert_eq!(solve(a, b).unwrap(), x);
        let sing = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(matches!(
            solve(sing, vec![int(0), int(0)]),
            Err(Error::SingularSystem(_))
        ));
    }
}
