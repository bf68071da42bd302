//! Exact integer linear algebra: rank, determinant, unimodular inverse.
//!
//! Everything is fraction-free (Bareiss) over the integers, so ranks and
//! determinants are the true values over the rationals.  The fast path runs
//! in `i128`; on the (never observed at desk scale) chance of overflow it
//! restarts with arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank over the rationals of an integer matrix (rows of equal length).
pub fn rank(rows: &[Vec<i128>]) -> usize {
    match rank_i128(rows) {
        Some(r) => r,
        None => rank_bigint(rows),
    }
}

/// Fraction-free Gaussian elimination; `None` on i128 overflow.
fn rank_i128(rows: &[Vec<i128>]) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                // Bareiss step: (pivot*m[r][c] - m[r][col]*m[rank][c]) / prev_pivot
                let t = m[rank][col]
                    .checked_mul(m[r][c])?
                    .checked_sub(m[r][col].checked_mul(m[rank][c])?)?;
                m[r][c] = t / prev_pivot;
            }
            m[r][col] = 0;
        }
        prev_pivot = m[rank][col];
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    Some(rank)
}

fn rank_bigint(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut prev_pivot = BigInt::from(1);
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let t = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = t / &prev_pivot;
            }
            m[r][col] = BigInt::zero();
        }
        prev_pivot = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Determinant of a square integer matrix (Bareiss, exact).
pub fn det(mat: &[Vec<i128>]) -> i128 {
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<i128>> = mat.to_vec();
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(pr) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, pr);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                m[r][c] = (m[k][k] * m[r][c] - m[r][k] * m[k][c]) / prev;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Inverse of a unimodular integer matrix, or `None` if |det| != 1.
///
/// The inverse of a matrix with determinant ±1 is again integral; it is
/// computed as the adjugate divided by the determinant.
pub fn inverse_unimodular(mat: &[Vec<i128>]) -> Option<Vec<Vec<i128>>> {
    let n = mat.len();
    let d = det(mat);
    if d != 1 && d != -1 {
        return None;
    }
    let mut inv = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            // cofactor C_{j,i} for the (i,j) entry of the adjugate
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| mat[r][c])
                        .collect::<Vec<_>>()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = sign * det(&minor) / d;
        }
    }
    Some(inv)
}

/// Matrix-vector product.
pub fn mat_vec(mat: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
    mat.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
