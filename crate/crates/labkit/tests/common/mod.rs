//! Shared helpers for the integration suites: seeded random polynomials.

use labkit::rng::SplitMix64;
use labkit::{GaussScalar, Monomial, Poly};

/// Random monomial of exact degree `deg` over `n_vars` variables.
pub fn random_monomial(rng: &mut SplitMix64, n_vars: usize, deg: u32) -> Monomial {
    Monomial::from_exps((0..deg).map(|_| (rng.below(n_vars as u64) as usize, 1)))
}

/// Random nonzero homogeneous polynomial of exact degree `deg` with small
/// rational coefficients.
pub fn random_homogeneous(rng: &mut SplitMix64, n_vars: usize, deg: u32) -> Poly {
    loop {
        let mut p = Poly::zero(n_vars);
        let n_terms = rng.below(3) + 1;
        for _ in 0..n_terms {
            let m = random_monomial(rng, n_vars, deg);
            let c = GaussScalar::from_ratio(rng.nonzero_int(5), 1 + rng.below(3) as i64);
            p.add_term(m, c);
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// All monomials of exact degree `deg` over `n_vars` variables, as
/// coefficient-one polynomials.
pub fn monomial_grid(n_vars: usize, deg: u32) -> Vec<Poly> {
    fn rec(
        n_vars: usize,
        deg: u32,
        start: usize,
        acc: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if deg == 0 {
            out.push(Monomial::from_exps(acc.iter().copied()));
            return;
        }
        for v in start..n_vars {
            acc.push((v, 1));
            rec(n_vars, deg - 1, v, acc, out);
            acc.pop();
        }
    }
    let mut monos = Vec::new();
    rec(n_vars, deg, 0, &mut Vec::new(), &mut monos);
    monos
        .into_iter()
        .map(|m| Poly::from_terms(n_vars, [(m, GaussScalar::one())]))
        .collect()
}
