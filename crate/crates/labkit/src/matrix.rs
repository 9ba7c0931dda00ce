//! Characteristic polynomials of polynomial matrices.
//!
//! Entries are exact polynomials, so the computation must stay inside the
//! ring: the Berkowitz algorithm produces the characteristic polynomial with
//! additions and multiplications only, no division.

use crate::error::Error;
use crate::poly::Poly;
use crate::scalar::GaussScalar;

fn check_square(mat: &[Vec<Poly>]) -> Result<usize, Error> {
    let n = mat.len();
    for (row, r) in mat.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NonSquare {
                rows: n,
                row,
                cols: r.len(),
            });
        }
    }
    Ok(n)
}

/// Coefficients of `det(mat - T*Id)` by increasing power of `T`.
///
/// The returned vector has length `n + 1`; its leading entry (power `n`) is
/// the constant `(-1)^n`, so for even `n` the polynomial is monic, matching
/// the `T^6 + C2 T^4 + C4 T^2 + C6` normalization of the symplectic Casimir
/// construction.
pub fn char_poly_det(mat: &[Vec<Poly>]) -> Result<Vec<Poly>, Error> {
    let n = check_square(mat)?;
    let n_vars = mat
        .first()
        .and_then(|r| r.first())
        .map_or(0, |p| p.n_vars());

    // Berkowitz iteration: v holds the coefficients of det(T*Id - A_r) for
    // the leading r x r principal submatrix, highest power first.
    let mut v: Vec<Poly> = vec![Poly::one(n_vars)];
    for r in 0..n {
        // Subdiagonal entries of the Toeplitz factor: d[0] = 1, d[1] = -a_rr,
        // d[k] = -(R . A^{k-2} . S) for the leading r x r block A.
        let mut d: Vec<Poly> = Vec::with_capacity(r + 2);
        d.push(Poly::one(n_vars));
        d.push(-&mat[r][r]);
        if r > 0 {
            // s_vec runs through S, A.S, A^2.S, ...
            let mut s_vec: Vec<Poly> = (0..r).map(|i| mat[i][r].clone()).collect();
            for _ in 0..r - 1 {
                let mut dot = Poly::zero(n_vars);
                for j in 0..r {
                    dot.add_mul(&mat[r][j], &s_vec[j]);
                }
                d.push(-&dot);
                let next: Vec<Poly> = (0..r)
                    .map(|i| {
                        let mut acc = Poly::zero(n_vars);
                        for j in 0..r {
                            acc.add_mul(&mat[i][j], &s_vec[j]);
                        }
                        acc
                    })
                    .collect();
                s_vec = next;
            }
            let mut dot = Poly::zero(n_vars);
            for j in 0..r {
                dot.add_mul(&mat[r][j], &s_vec[j]);
            }
            d.push(-&dot);
        }

        // rectangular Toeplitz product: next[m] = sum_k d[k] * v[m-k]
        let mut next = vec![Poly::zero(n_vars); r + 2];
        for (k, dk) in d.iter().enumerate() {
            if dk.is_zero() {
                continue;
            }
            for (m, vm) in v.iter().enumerate() {
                if k + m < next.len() {
                    next[k + m].add_mul(dk, vm);
                }
            }
        }
        v = next;
    }

    // v[m] is the coefficient of T^{n-m} in det(T*Id - M); flip the ordering
    // and multiply by (-1)^n to obtain det(M - T*Id).
    let sign = if n % 2 == 0 {
        GaussScalar::one()
    } else {
        GaussScalar::from_int(-1)
    };
    let mut out: Vec<Poly> = Vec::with_capacity(n + 1);
    for power in 0..=n {
        out.push(v[n - power].scale(&sign));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rng::SplitMix64;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    /// Independent oracle: cofactor (Laplace) expansion of det(M - T*Id)
    /// with `T` adjoined as an extra variable.
    fn char_poly_by_cofactor(mat: &[Vec<Poly>]) -> Vec<Poly> {
        let n = mat.len();
        let n_vars = mat
            .first()
            .and_then(|r| r.first())
            .map_or(0, |p| p.n_vars());
        let wide = n_vars + 1; // last slot is T
        let widen =
            |p: &Poly| Poly::from_terms(wide, p.terms().map(|(m, c)| (m.clone(), c.clone())));
        let mut shifted: Vec<Vec<Poly>> = mat
            .iter()
            .map(|row| row.iter().map(widen).collect())
            .collect();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = &row[i] - &x(wide, n_vars);
        }

        fn det(m: &[Vec<Poly>], wide: usize) -> Poly {
            let n = m.len();
            if n == 0 {
                return Poly::one(wide);
            }
            let mut acc = Poly::zero(wide);
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = (1..n)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != col)
                            .map(|c| m[r][c].clone())
                            .collect()
                    })
                    .collect();
                let sub = det(&minor, wide);
                let term = &m[0][col] * &sub;
                if col % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }

        let full = det(&shifted, wide);
        // collect by power of T (variable index n_vars)
        let mut out = vec![Poly::zero(n_vars); n + 1];
        for (m, c) in full.terms() {
            let e = m.exp(n_vars) as usize;
            let rest = Monomial::from_exps(m.iter().filter(|&(v, _)| v != n_vars));
            out[e].add_term(rest, c.clone());
        }
        out
    }

    #[test]
    fn one_by_one() {
        let mat = vec![vec![x(1, 0)]];
        let cs = char_poly_det(&mat).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], x(1, 0));
        assert_eq!(cs[1], Poly::constant(1, GaussScalar::from_int(-1)));
    }

    #[test]
    fn two_by_two_zero_matrix() {
        let mat = vec![vec![Poly::zero(1); 2], vec![Poly::zero(1); 2]];
        let cs = char_poly_det(&mat).unwrap();
        assert!(cs[0].is_zero());
        assert!(cs[1].is_zero());
        assert_eq!(cs[2], Poly::one(1));
    }

    #[test]
    fn two_by_two_generic() {
        // det([[x0,x1],[x2,x3]] - T) = T^2 - (x0+x3) T + (x0 x3 - x1 x2)
        let mat = vec![vec![x(4, 0), x(4, 1)], vec![x(4, 2), x(4, 3)]];
        let cs = char_poly_det(&mat).unwrap();
        assert_eq!(cs[2], Poly::one(4));
        assert_eq!(cs[1], -&(&x(4, 0) + &x(4, 3)));
        assert_eq!(cs[0], &(&x(4, 0) * &x(4, 3)) - &(&x(4, 1) * &x(4, 2)));
    }

    #[test]
    fn non_square_rejected() {
        let mat = vec![vec![x(1, 0), x(1, 0)], vec![x(1, 0)]];
        assert!(matches!(
            char_poly_det(&mat),
            Err(Error::NonSquare {
                row: 1,
                cols: 1,
                ..
            })
        ));
    }

    #[test]
    fn agrees_with_cofactor_oracle_on_random_constant_matrices() {
        let mut rng = SplitMix64::new(0xbeef);
        for _ in 0..10 {
            let mat: Vec<Vec<Poly>> = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            Poly::constant(
                                0,
                                GaussScalar::from_ratio(
                                    rng.nonzero_int(9),
                                    rng.below(4) as i64 + 1,
                                ),
                            )
                        })
                        .collect()
                })
                .collect();
            assert_eq!(char_poly_det(&mat).unwrap(), char_poly_by_cofactor(&mat));
        }
    }

    #[test]
    fn agrees_with_cofactor_oracle_on_symbolic_matrix() {
        // fully symbolic 3x3 in 9 variables
        let mat: Vec<Vec<Poly>> = (0..3)
            .map(|r| (0..3).map(|c| x(9, 3 * r + c)).collect())
            .collect();
        assert_eq!(char_poly_det(&mat).unwrap(), char_poly_by_cofactor(&mat));
    }
}
