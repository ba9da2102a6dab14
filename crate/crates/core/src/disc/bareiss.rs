//! Fraction-free Bareiss elimination for exact determinants of integer
//! matrices. Intermediate entries are k×k minors of the input, so every
//! division is exact. Row updates are independent within an elimination
//! step and run in parallel when the `parallel` feature is enabled; the
//! arithmetic is identical either way.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of a square BigInt matrix. Consumes the buffer.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        // Pivot: first row with a nonzero entry in column k.
        let Some(pivot_row) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot_row != k {
            m.swap(k, pivot_row);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k].clone();
        let update = |row: &mut Vec<BigInt>| {
            let lead = std::mem::replace(&mut row[k], BigInt::zero());
            for j in k + 1..n {
                let v = &row[j] * &pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            rest.par_iter_mut().for_each(update);
        }
        #[cfg(not(feature = "parallel"))]
        {
            rest.iter_mut().for_each(update);
        }
        prev = pivot;
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det_i64(rows: &[Vec<i64>]) -> BigInt {
        determinant(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Cofactor expansion, the independent slow oracle.
    fn det_naive(rows: &[Vec<i64>]) -> i128 {
        let n = rows.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return rows[0][0] as i128;
        }
        let mut acc = 0i128;
        for (j, &c) in rows[0].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter_map(|(jj, &x)| (jj != j).then_some(x))
                        .collect()
                })
                .collect();
            let term = c as i128 * det_naive(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_i64(&[]), BigInt::one());
        assert_eq!(det_i64(&[vec![7]]), BigInt::from(7));
        assert_eq!(det_i64(&[vec![1, 2], vec![3, 4]]), BigInt::from(-2));
        assert_eq!(
            det_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]),
            BigInt::one()
        );
        assert_eq!(
            det_i64(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]),
            BigInt::from(30)
        );
        assert_eq!(det_i64(&[vec![1, 1], vec![1, 1]]), BigInt::zero());
    }

    proptest! {
        #[test]
        fn agrees_with_cofactor_expansion(
            rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 5), 5)
        ) {
            prop_assert_eq!(det_i64(&rows).to_string(), det_naive(&rows).to_string());
        }
    }
}
