//! Prime-field evaluation and generic rank of polynomial matrices.
//!
//! Generic (symbolic) rank is estimated Schwartz-Zippel style: evaluate the
//! matrix at independently sampled random points over a prime field larger
//! than 2^30 and take the maximum rank over several samples, cross-checked
//! by one exact rational evaluation. The prime is chosen congruent to 1
//! mod 4 so that Gaussian-rational coefficients embed via a square root
//! of -1.

use crate::linalg;
use crate::poly::Poly;
use crate::rng::SplitMix64;
use crate::scalar::GaussScalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Largest prime below 2^31 that is congruent to 1 mod 4.
pub const PRIME: u64 = 2_147_483_629;

pub fn addm(a: u64, b: u64) -> u64 {
    (a + b) % PRIME
}

pub fn subm(a: u64, b: u64) -> u64 {
    (a + PRIME - b) % PRIME
}

pub fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

pub fn powm(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulm(acc, base);
        }
        base = mulm(base, base);
        exp >>= 1;
    }
    acc
}

pub fn invm(a: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(PRIME));
    powm(a, PRIME - 2)
}

/// A fixed square root of -1 mod [`PRIME`].
pub fn sqrt_minus_one() -> u64 {
    static CACHED: OnceLock<u64> = OnceLock::new();
    *CACHED.get_or_init(|| {
        // q^((p-1)/4) for the first quadratic non-residue q
        let mut q = 2u64;
        loop {
            if powm(q, (PRIME - 1) / 2) == PRIME - 1 {
                break;
            }
            q += 1;
        }
        let r = powm(q, (PRIME - 1) / 4);
        debug_assert_eq!(mulm(r, r), PRIME - 1);
        r
    })
}

fn bigint_mod(n: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let mut r = n.mod_floor(&p);
    if r.is_negative() {
        r += &p;
    }
    r.to_u64().expect("reduced residue fits u64")
}

/// Image of an exact scalar in the prime field; `None` when a denominator is
/// divisible by the prime.
pub fn scalar_mod(c: &GaussScalar) -> Option<u64> {
    let part = |q: &num_rational::BigRational| -> Option<u64> {
        let den = bigint_mod(q.denom());
        if den == 0 {
            return None;
        }
        Some(mulm(bigint_mod(q.numer()), invm(den)))
    };
    let re = part(c.re())?;
    if c.im().is_zero() {
        return Some(re);
    }
    let im = part(c.im())?;
    Some(addm(re, mulm(im, sqrt_minus_one())))
}

/// Evaluates a polynomial at a point with coordinates in the prime field.
pub fn poly_eval_mod(p: &Poly, point: &[u64]) -> Option<u64> {
    debug_assert!(point.len() >= p.n_vars());
    let mut acc = 0u64;
    for (m, c) in p.terms() {
        let mut t = scalar_mod(c)?;
        for (v, e) in m.iter() {
            t = mulm(t, powm(point[v], e as u64));
        }
        acc = addm(acc, t);
    }
    Some(acc)
}

/// Rank of a matrix over the prime field by Gaussian elimination.
pub fn rank_mod(mut rows: Vec<Vec<u64>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&r| !rows[r][col].is_multiple_of(PRIME));
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = invm(rows[rank][col]);
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0 {
                let factor = mulm(rows[r][col], inv);
                for c in col..ncols {
                    let sub = mulm(factor, rows[rank][c]);
                    rows[r][c] = subm(rows[r][c], sub);
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

/// Generic rank of a polynomial matrix: maximum rank over `samples` prime
/// field evaluations at seeded random points, cross-checked against one
/// exact rational evaluation.
pub fn generic_rank(mat: &[Vec<Poly>], n_vars: usize, seed: u64, samples: usize) -> usize {
    let mut best = 0;
    let mut rng = SplitMix64::new(seed ^ 0x5eed_0f1e_1d00);
    let mut done = 0;
    while done < samples.max(1) {
        let point: Vec<u64> = (0..n_vars).map(|_| rng.below(PRIME)).collect();
        let mut rows = Vec::with_capacity(mat.len());
        let mut ok = true;
        'rows: for row in mat {
            let mut out = Vec::with_capacity(row.len());
            for p in row {
                match poly_eval_mod(p, &point) {
                    Some(v) => out.push(v),
                    None => {
                        ok = false;
                        break 'rows;
                    }
                }
            }
            rows.push(out);
        }
        if !ok {
            continue; // denominator hit the prime: resample
        }
        best = best.max(rank_mod(rows));
        done += 1;
    }

    // exact rational cross-check at one small random point
    let point: Vec<GaussScalar> = (0..n_vars)
        .map(|_| GaussScalar::from_int(rng.nonzero_int(1_000_003)))
        .collect();
    let rows: Vec<Vec<GaussScalar>> = mat
        .iter()
        .map(|row| row.iter().map(|p| eval_exact(p, &point)).collect())
        .collect();
    best.max(linalg::rank(rows))
}

/// Exact evaluation at a scalar point.
pub fn eval_exact(p: &Poly, point: &[GaussScalar]) -> GaussScalar {
    let mut acc = GaussScalar::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, e) in m.iter() {
            for _ in 0..e {
                t *= &point[v];
            }
        }
        acc += &t;
    }
    acc
}
