//! Exact dense linear algebra over the Gaussian rationals.
//!
//! Small helper routines used for chain validation, basis changes and rank
//! cross-checks. Everything is plain Gaussian elimination; the matrices here
//! are at most a few dozen rows.

use crate::scalar::GaussScalar;

/// Rank by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<GaussScalar>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in col..ncols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let sub = &factor * &rows[rank][c];
                    rows[r][c] -= &sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Solves `A^T c = b` for `c` given the rows of `A` (i.e. expresses `b` as a
/// linear combination of the rows). Returns `None` when `b` is outside the
/// row span.
pub fn express_in_rows(rows: &[Vec<GaussScalar>], b: &[GaussScalar]) -> Option<Vec<GaussScalar>> {
    let m = rows.len();
    let n = b.len();
    // augmented system: columns are the rows of A, right-hand side b
    let mut aug: Vec<Vec<GaussScalar>> = (0..n)
        .map(|i| {
            let mut row: Vec<GaussScalar> = rows.iter().map(|r| r[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..n).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let inv = aug[rank][col].inv().expect("nonzero pivot");
        for c in col..=m {
            aug[rank][c] = &aug[rank][c] * &inv;
        }
        for r in 0..n {
            if r != rank && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=m {
                    let sub = &factor * &aug[rank][c];
                    aug[r][c] -= &sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    // inconsistent rows: 0 = nonzero rhs
    for r in rank..n {
        if !aug[r][m].is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![GaussScalar::zero(); m];
    for (r, &col) in pivot_cols.iter().enumerate() {
        coeffs[col] = aug[r][m].clone();
    }
    Some(coeffs)
}

/// Exact inverse of a square matrix; `None` when singular.
pub fn invert(mat: &[Vec<GaussScalar>]) -> Option<Vec<Vec<GaussScalar>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<GaussScalar>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "invert: matrix must be square");
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    GaussScalar::one()
                } else {
                    GaussScalar::zero()
                });
            }
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].inv().expect("nonzero pivot");
        for c in 0..2 * n {
            aug[col][c] = &aug[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..2 * n {
                    let sub = &factor * &aug[col][c];
                    aug[r][c] -= &sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
