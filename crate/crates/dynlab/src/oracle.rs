//! Independent reference computations used to cross-check the library.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Res(a, b) as the fraction-free (Bareiss) determinant of the Sylvester
/// matrix: deg b rows of a's coefficients on top, highest degree first.
/// Coefficients are given lowest degree first.
pub fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss(mat)
}

pub fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// 2^(2^n) + 1
pub fn fermat(n: u32) -> BigInt {
    (BigInt::one() << (1usize << n)) + 1
}

/// E_0 = 2, E_n = 1 + E_0 E_1 ... E_(n-1).
pub fn euclid(n: usize) -> BigInt {
    let mut prod = BigInt::one();
    let mut e = BigInt::from(2);
    for _ in 0..n {
        prod *= &e;
        e = &prod + 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            sylvester_resultant(&v(&[-1, 1]), &v(&[-2, 1])),
            BigInt::from(-1)
        );
        assert_eq!(
            sylvester_resultant(&v(&[-1, 0, 1]), &v(&[1, 1])),
            BigInt::zero()
        );
        assert_eq!(fermat(2), BigInt::from(17));
        assert_eq!(euclid(3), BigInt::from(43));
    }
}
