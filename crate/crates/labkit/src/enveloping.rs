//! The universal enveloping algebra as noncommutative polynomials.
//!
//! Elements of U(g) are sparse sums of words in the generators. Normal
//! ordering rewrites `X_j X_i -> X_i X_j + [X_j, X_i]` at the leftmost
//! adjacent descent until every word is non-decreasing; by the PBW theorem
//! the result is a canonical form, so equality of normalized elements is
//! coefficient-wise. The filtration degree of a normalized element is the
//! length of its longest word.

use crate::algebra::LieAlgebra;
use crate::error::Error;
use crate::poly::{Monomial, Poly};
use crate::scalar::GaussScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A word in the generators; empty means the identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// PBW-normal means non-decreasing letters.
    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Commutative image: the exponent multiset of the letters.
    pub fn to_monomial(&self) -> Monomial {
        Monomial::from_exps(self.0.iter().map(|&k| (k as usize, 1)))
    }
}

/// Graded order: length first, then lexicographic on the letters.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", crate::text::format_word(self))
    }
}

/// A sparse noncommutative polynomial over `dim` generators.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    dim: usize,
    terms: BTreeMap<Word, GaussScalar>,
    normalized: bool,
}

impl NCPoly {
    pub fn zero(dim: usize) -> Self {
        NCPoly {
            dim,
            terms: BTreeMap::new(),
            normalized: true,
        }
    }

    pub fn one(dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::one(), GaussScalar::one());
        NCPoly {
            dim,
            terms,
            normalized: true,
        }
    }

    pub fn generator(dim: usize, k: usize) -> Result<Self, Error> {
        if k >= dim {
            return Err(Error::GenOutOfRange { index: k, dim });
        }
        let mut terms = BTreeMap::new();
        terms.insert(Word::new(vec![k as u32]), GaussScalar::one());
        Ok(NCPoly {
            dim,
            terms,
            normalized: true,
        })
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, GaussScalar)>>(dim: usize, iter: I) -> Self {
        let mut terms: BTreeMap<Word, GaussScalar> = BTreeMap::new();
        for (w, c) in iter {
            debug_assert!(w.letters().iter().all(|&k| (k as usize) < dim));
            if c.is_zero() {
                continue;
            }
            match terms.entry(w) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        let normalized = terms.keys().all(Word::is_normal);
        NCPoly {
            dim,
            terms,
            normalized,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> GaussScalar {
        self.terms.get(w).cloned().unwrap_or_else(GaussScalar::zero)
    }

    fn add_term(&mut self, w: Word, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        if !w.is_normal() {
            self.normalized = false;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussScalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(self.dim);
        }
        NCPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
            normalized: self.normalized,
        }
    }

    pub fn add(&self, rhs: &NCPoly) -> NCPoly {
        assert_eq!(self.dim, rhs.dim, "mismatched algebras");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &NCPoly) -> NCPoly {
        assert_eq!(self.dim, rhs.dim, "mismatched algebras");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    /// Filtration degree: the longest word length present, `None` for zero.
    /// Requires a normalized element (the reading is only unique in the PBW
    /// basis).
    pub fn filtration_degree(&self) -> Option<usize> {
        assert!(
            self.normalized,
            "filtration degree requires a PBW-normalized element"
        );
        self.terms.keys().map(Word::len).max()
    }

    /// Commutative image of the length-`d` words only; zero when `d` exceeds
    /// the filtration degree.
    pub fn leading_symbol(&self, d: usize) -> Poly {
        assert!(
            self.normalized,
            "leading symbol requires a PBW-normalized element"
        );
        let mut out = Poly::zero(self.dim);
        for (w, c) in &self.terms {
            if w.len() == d {
                out.add_term(w.to_monomial(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_ncpoly(self))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{}]({})", self.dim, self)
    }
}

/// Shared rewrite engine: memoizes the PBW normal form of whole words.
struct Normalizer<'a> {
    alg: &'a LieAlgebra,
    memo: HashMap<Vec<u32>, BTreeMap<Vec<u32>, GaussScalar>>,
}

impl<'a> Normalizer<'a> {
    fn new(alg: &'a LieAlgebra) -> Self {
        Normalizer {
            alg,
            memo: HashMap::new(),
        }
    }

    fn normalize_word(&mut self, w: &[u32]) -> BTreeMap<Vec<u32>, GaussScalar> {
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        // leftmost adjacent descent
        let descent = w.windows(2).position(|p| p[0] > p[1]);
        let result = match descent {
            None => {
                let mut out = BTreeMap::new();
                out.insert(w.to_vec(), GaussScalar::one());
                out
            }
            Some(t) => {
                let mut out: BTreeMap<Vec<u32>, GaussScalar> = BTreeMap::new();
                let mut swapped = w.to_vec();
                swapped.swap(t, t + 1);
                for (word, c) in self.normalize_word(&swapped) {
                    merge(&mut out, word, c);
                }
                // X_j X_i = X_i X_j + [X_j, X_i]
                for (k, c) in self.alg.bracket(w[t] as usize, w[t + 1] as usize) {
                    let mut contracted = Vec::with_capacity(w.len() - 1);
                    contracted.extend_from_slice(&w[..t]);
                    contracted.push(k as u32);
                    contracted.extend_from_slice(&w[t + 2..]);
                    for (word, c2) in self.normalize_word(&contracted) {
                        merge(&mut out, word, &c * &c2);
                    }
                }
                out
            }
        };
        self.memo.insert(w.to_vec(), result.clone());
        result
    }

    fn normalize(&mut self, p: &NCPoly) -> NCPoly {
        if p.normalized {
            return p.clone();
        }
        let mut terms: BTreeMap<Word, GaussScalar> = BTreeMap::new();
        for (w, c) in &p.terms {
            for (word, c2) in self.normalize_word(w.letters()) {
                let entry = terms
                    .entry(Word::new(word))
                    .or_insert_with(GaussScalar::zero);
                *entry += &(c * &c2);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        NCPoly {
            dim: p.dim,
            terms,
            normalized: true,
        }
    }
}

fn merge(map: &mut BTreeMap<Vec<u32>, GaussScalar>, key: Vec<u32>, val: GaussScalar) {
    if val.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(val);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &val;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Rewrites `p` into the PBW basis of `U(g)`.
pub fn normal_order(alg: &LieAlgebra, p: &NCPoly) -> NCPoly {
    assert_eq!(p.dim, alg.dim(), "element belongs to a different algebra");
    Normalizer::new(alg).normalize(p)
}

/// Product in `U(g)`: concatenate words, then normalize.
pub fn nc_mul(alg: &LieAlgebra, a: &NCPoly, b: &NCPoly) -> NCPoly {
    assert_eq!(a.dim, alg.dim(), "element belongs to a different algebra");
    assert_eq!(b.dim, alg.dim(), "element belongs to a different algebra");
    let mut norm = Normalizer::new(alg);
    let mut terms: BTreeMap<Word, GaussScalar> = BTreeMap::new();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            let mut cat = Vec::with_capacity(wa.len() + wb.len());
            cat.extend_from_slice(wa.letters());
            cat.extend_from_slice(wb.letters());
            let c = ca * cb;
            for (word, c2) in norm.normalize_word(&cat) {
                let entry = terms
                    .entry(Word::new(word))
                    .or_insert_with(GaussScalar::zero);
                *entry += &(&c * &c2);
            }
        }
    }
    terms.retain(|_, c| !c.is_zero());
    NCPoly {
        dim: alg.dim(),
        terms,
        normalized: true,
    }
}

/// Commutator `[a, b] = ab - ba`, normalized.
pub fn nc_commutator(alg: &LieAlgebra, a: &NCPoly, b: &NCPoly) -> NCPoly {
    nc_mul(alg, a, b).sub(&nc_mul(alg, b, a))
}

/// The symmetrization map: each degree-p monomial goes to the average of its
/// letter permutations, returned in PBW-normal form. Distinct permutations
/// are enumerated once with multinomial weights rather than summing all p!
/// terms.
pub fn symmetrize(alg: &LieAlgebra, f: &Poly) -> NCPoly {
    assert_eq!(
        f.n_vars(),
        alg.dim(),
        "polynomial lives on a different dual space"
    );
    let mut norm = Normalizer::new(alg);
    let mut terms: BTreeMap<Word, GaussScalar> = BTreeMap::new();
    for (m, c) in f.terms() {
        let letters: Vec<u32> = m
            .iter()
            .flat_map(|(v, e)| std::iter::repeat_n(v as u32, e as usize))
            .collect();
        // weight = (prod of multiplicities!) / p!
        let mut weight = BigRational::one();
        let mut p_fact = BigInt::one();
        for n in 1..=letters.len() {
            p_fact *= BigInt::from(n);
        }
        for (_, e) in m.iter() {
            let mut f = BigInt::one();
            for n in 1..=e as usize {
                f *= BigInt::from(n);
            }
            weight *= BigRational::from_integer(f);
        }
        weight /= BigRational::from_integer(p_fact);
        let coeff = c * &GaussScalar::from_rational(weight);

        for arrangement in distinct_permutations(&letters) {
            for (word, c2) in norm.normalize_word(&arrangement) {
                let entry = terms
                    .entry(Word::new(word))
                    .or_insert_with(GaussScalar::zero);
                *entry += &(&coeff * &c2);
            }
        }
    }
    terms.retain(|_, c| !c.is_zero());
    NCPoly {
        dim: alg.dim(),
        terms,
        normalized: true,
    }
}

/// All distinct arrangements of a letter multiset (letters given sorted or
/// not; output order is deterministic).
fn distinct_permutations(letters: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &l in letters {
        *counts.entry(l).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(letters.len());
    fn rec(
        counts: &mut BTreeMap<u32, usize>,
        current: &mut Vec<u32>,
        total: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if current.len() == total {
            out.push(current.clone());
            return;
        }
        let keys: Vec<u32> = counts
            .iter()
            .filter(|&(_, &n)| n > 0)
            .map(|(&k, _)| k)
            .collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            current.push(k);
            rec(counts, current, total, out);
            current.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    rec(&mut counts, &mut current, letters.len(), &mut out);
    out
}

/// The projection `pi: U(g) -> S(g)` replacing each generator by its dual
/// variable; coefficients of words with the same letter multiset add up.
pub fn project(p: &NCPoly) -> Poly {
    let mut out = Poly::zero(p.dim);
    for (w, c) in &p.terms {
        out.add_term(w.to_monomial(), c.clone());
    }
    out
}

/// Outcome of the conservative factorizability certificate.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status")]
pub enum Factorizability {
    /// No monomial pair of the two polynomials admits a shared-prefix
    /// decomposition with commuting residuals; sufficient for the
    /// non-factorizability hypothesis of the commutation criterion.
    NonFactorizable,
    /// A candidate decomposition exists; the first witness found.
    PossiblyFactorizable(FactorizationWitness),
}

impl Factorizability {
    pub fn is_nonfactorizable(&self) -> bool {
        matches!(self, Factorizability::NonFactorizable)
    }
}

/// A witness monomial pair: the shared multiset `S` (with multiplicities)
/// pulled out of both monomials, and the residual factors, all in polynomial
/// text form.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationWitness {
    pub monomial_f: String,
    pub monomial_g: String,
    pub shared: Vec<(usize, u32)>,
    pub residual_f: String,
    pub residual_g: String,
}

/// Conservative certifier over all monomial pairs of `f` and `g`.
///
/// A pair is flagged when there is a nonempty variable set S whose members
/// occur with equal multiplicities in both monomials, such that every
/// generator of S commutes with every generator of both residual factors and
/// the residuals commute generator-wise. Pairs with equal monomials are
/// skipped (equal projections are excluded from the factorizable-pair
/// notion). Both inputs must be nonzero.
pub fn certify_nonfactorizable(alg: &LieAlgebra, f: &Poly, g: &Poly) -> Factorizability {
    assert!(!f.is_zero() && !g.is_zero(), "inputs must be nonzero");
    assert_eq!(f.n_vars(), alg.dim());
    assert_eq!(g.n_vars(), alg.dim());
    let dim = alg.dim();
    let mut commute = vec![vec![false; dim]; dim];
    for (i, row) in commute.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = alg.commutes(i, j);
        }
    }

    for (mf, _) in f.terms() {
        for (mg, _) in g.terms() {
            if mf == mg {
                continue;
            }
            if let Some(w) = factorizable_pair(&commute, mf, mg) {
                return Factorizability::PossiblyFactorizable(w);
            }
        }
    }
    Factorizability::NonFactorizable
}

fn factorizable_pair(
    commute: &[Vec<bool>],
    mf: &Monomial,
    mg: &Monomial,
) -> Option<FactorizationWitness> {
    let sup_f: Vec<(usize, u32)> = mf.iter().collect();
    let sup_g: Vec<(usize, u32)> = mg.iter().collect();
    // candidate prefix variables: equal multiplicity in both monomials
    let common: Vec<(usize, u32)> = sup_f
        .iter()
        .filter(|&&(v, ef)| mg.exp(v) == ef)
        .copied()
        .collect();
    if common.is_empty() {
        return None;
    }
    let n = common.len();
    for mask in 1u32..(1 << n) {
        let chosen: Vec<(usize, u32)> = (0..n)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| common[b])
            .collect();
        let residual_support = |sup: &[(usize, u32)]| -> Vec<usize> {
            sup.iter()
                .filter(|&&(v, _)| chosen.iter().all(|&(cv, _)| cv != v))
                .map(|&(v, _)| v)
                .collect()
        };
        let res_f = residual_support(&sup_f);
        let res_g = residual_support(&sup_g);
        // (a) every chosen generator commutes with every residual generator
        let prefix_ok = chosen.iter().all(|&(v, _)| {
            res_f.iter().all(|&u| commute[v][u]) && res_g.iter().all(|&u| commute[v][u])
        });
        if !prefix_ok {
            continue;
        }
        // (b) residuals commute generator-wise
        let residuals_ok = res_f.iter().all(|&a| res_g.iter().all(|&b| commute[a][b]));
        if !residuals_ok {
            continue;
        }
        let strip = |m: &Monomial| -> Monomial {
            Monomial::from_exps(
                m.iter()
                    .filter(|&(v, _)| chosen.iter().all(|&(cv, _)| cv != v)),
            )
        };
        let residual_f = monomial_or_one(&strip(mf));
        let residual_g = monomial_or_one(&strip(mg));
        return Some(FactorizationWitness {
            monomial_f: crate::text::format_monomial(mf),
            monomial_g: crate::text::format_monomial(mg),
            shared: chosen,
            residual_f,
            residual_g,
        });
    }
    None
}

fn monomial_or_one(m: &Monomial) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        crate::text::format_monomial(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::samples::*;
    use crate::rng::SplitMix64;
    use crate::text::parse_ncpoly;

    fn c(n: i64) -> GaussScalar {
        GaussScalar::from_int(n)
    }

    fn word(letters: &[u32]) -> Word {
        Word::new(letters.to_vec())
    }

    fn nc(dim: usize, items: &[(&[u32], i64)]) -> NCPoly {
        NCPoly::from_terms(dim, items.iter().map(|&(w, n)| (word(w), c(n))))
    }

    #[test]
    fn single_rewrite_so3() {
        // X2 X1 = X1 X2 + [X2, X1] = X1 X2 - X3 (0-based: word [1,0])
        let alg = so3();
        let p = nc(3, &[(&[1, 0], 1)]);
        let n = normal_order(&alg, &p);
        assert!(n.is_normalized());
        assert_eq!(n, nc(3, &[(&[0, 1], 1), (&[2], -1)]));
    }

    #[test]
    fn already_normal_is_fixed() {
        let alg = so3();
        let p = nc(3, &[(&[0, 1, 2], 5), (&[1], 2)]);
        assert_eq!(normal_order(&alg, &p), p);
    }

    #[test]
    fn heisenberg_two_rewrites() {
        // X2 X1 X2 = X1 X2^2 - X2 X3 (0-based word [1,0,1])
        let alg = heisenberg();
        let p = nc(3, &[(&[1, 0, 1], 1)]);
        let n = normal_order(&alg, &p);
        assert_eq!(n, nc(3, &[(&[0, 1, 1], 1), (&[1, 2], -1)]));
    }

    #[test]
    fn commutator_reproduces_structure_constants() {
        let alg = so3();
        let x1 = NCPoly::generator(3, 0).unwrap();
        let x2 = NCPoly::generator(3, 1).unwrap();
        assert_eq!(nc_commutator(&alg, &x1, &x2), nc(3, &[(&[2], 1)]));
        let a = nc(3, &[(&[0, 1], 2), (&[2, 2], -3)]);
        let a_norm = normal_order(&alg, &a);
        assert!(nc_commutator(&alg, &a_norm, &a_norm).is_zero());
    }

    #[test]
    fn commutator_of_symmetrized_squares() {
        // [Lambda(x1^2), Lambda(x2^2)] has degree-3 symbol 4 x1 x2 x3
        let alg = so3();
        let f = Poly::var(3, 0).pow(2);
        let g = Poly::var(3, 1).pow(2);
        let comm = nc_commutator(&alg, &symmetrize(&alg, &f), &symmetrize(&alg, &g));
        let sym = comm.leading_symbol(3);
        assert_eq!(sym, alg.berezin_bracket(&f, &g));
        assert_eq!(
            sym,
            (&(&Poly::var(3, 0) * &Poly::var(3, 1)) * &Poly::var(3, 2)).scale(&c(4))
        );
    }

    #[test]
    fn symmetrize_examples() {
        let alg = so3();
        // degree 1 is the identity embedding
        assert_eq!(
            symmetrize(&alg, &Poly::var(3, 0)),
            NCPoly::generator(3, 0).unwrap()
        );
        // Lambda(x1 x2) = X1 X2 - (1/2) X3 in PBW form
        let f = &Poly::var(3, 0) * &Poly::var(3, 1);
        let got = symmetrize(&alg, &f);
        let expect = NCPoly::from_terms(
            3,
            [
                (word(&[0, 1]), c(1)),
                (word(&[2]), GaussScalar::from_ratio(-1, 2)),
            ],
        );
        assert_eq!(got, expect);
        // repeated letters are already symmetric
        assert_eq!(
            symmetrize(&alg, &Poly::var(3, 0).pow(2)),
            nc(3, &[(&[0, 0], 1)])
        );
    }

    #[test]
    fn project_examples() {
        let p = nc(3, &[(&[0, 1], 1), (&[2], -1)]);
        let expect = &(&Poly::var(3, 0) * &Poly::var(3, 1)) - &Poly::var(3, 2);
        assert_eq!(project(&p), expect);
        // coefficients of same-multiset words merge
        let q = nc(3, &[(&[0, 1], 1), (&[1, 0], 1)]);
        assert_eq!(
            project(&q),
            (&Poly::var(3, 0) * &Poly::var(3, 1)).scale(&c(2))
        );
        // pi(Lambda(x1 x2)) = x1 x2 - (1/2) x3 on so(3)
        let alg = so3();
        let f = &Poly::var(3, 0) * &Poly::var(3, 1);
        let proj = project(&symmetrize(&alg, &f));
        let expect = &f - &Poly::var(3, 2).scale(&GaussScalar::from_ratio(1, 2));
        assert_eq!(proj, expect);
    }

    #[test]
    fn filtration_and_leading_symbol() {
        let p = nc(3, &[(&[0, 1], 1), (&[2], -1)]);
        assert_eq!(p.filtration_degree(), Some(2));
        assert_eq!(p.leading_symbol(2), &Poly::var(3, 0) * &Poly::var(3, 1));
        assert!(p.leading_symbol(5).is_zero());
        let zero = NCPoly::zero(3);
        assert_eq!(zero.filtration_degree(), None);
        assert!(zero.leading_symbol(0).is_zero());
    }

    #[test]
    fn pbw_products_associate() {
        let alg = so3();
        let mut rng = SplitMix64::new(17);
        for _ in 0..8 {
            let rand_nc = |rng: &mut SplitMix64| {
                let n_terms = rng.below(3) + 1;
                NCPoly::from_terms(
                    3,
                    (0..n_terms).map(|_| {
                        let len = rng.below(3) as usize + 1;
                        let w: Vec<u32> = (0..len).map(|_| rng.below(3) as u32).collect();
                        (Word::new(w), c(rng.nonzero_int(4)))
                    }),
                )
            };
            let (a, b, d) = (rand_nc(&mut rng), rand_nc(&mut rng), rand_nc(&mut rng));
            let left = nc_mul(&alg, &nc_mul(&alg, &a, &b), &d);
            let right = nc_mul(&alg, &a, &nc_mul(&alg, &b, &d));
            assert_eq!(left, right);
        }
    }

    /// Confluence: an independent rightmost-descent rewriter gives the same
    /// normal form.
    #[test]
    fn rewrite_order_does_not_matter() {
        fn rightmost_normalize(alg: &LieAlgebra, p: &NCPoly) -> NCPoly {
            let mut acc: BTreeMap<Word, GaussScalar> = BTreeMap::new();
            let mut work: Vec<(Vec<u32>, GaussScalar)> = p
                .terms()
                .map(|(w, c)| (w.letters().to_vec(), c.clone()))
                .collect();
            while let Some((w, coeff)) = work.pop() {
                let descent = w.windows(2).rposition(|pair| pair[0] > pair[1]);
                match descent {
                    None => {
                        let entry = acc.entry(Word::new(w)).or_insert_with(GaussScalar::zero);
                        *entry += &coeff;
                    }
                    Some(t) => {
                        let mut swapped = w.clone();
                        swapped.swap(t, t + 1);
                        work.push((swapped, coeff.clone()));
                        for (k, c2) in alg.bracket(w[t] as usize, w[t + 1] as usize) {
                            let mut contracted = Vec::with_capacity(w.len() - 1);
                            contracted.extend_from_slice(&w[..t]);
                            contracted.push(k as u32);
                            contracted.extend_from_slice(&w[t + 2..]);
                            work.push((contracted, &coeff * &c2));
                        }
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            NCPoly {
                dim: p.dim(),
                terms: acc,
                normalized: true,
            }
        }

        let mut rng = SplitMix64::new(23);
        for alg in [so3(), heisenberg()] {
            for _ in 0..10 {
                let len = rng.below(5) as usize + 2;
                let w: Vec<u32> = (0..len).map(|_| rng.below(3) as u32).collect();
                let p = NCPoly::from_terms(3, [(Word::new(w), c(1))]);
                assert_eq!(normal_order(&alg, &p), rightmost_normalize(&alg, &p));
            }
        }
    }

    /// The top-degree part of a commutator of symmetrizations projects onto
    /// the Berezin bracket, for random homogeneous pairs on both sample
    /// algebras.
    #[test]
    fn commutator_leading_symbol_is_the_bracket() {
        let mut rng = SplitMix64::new(0x01d5);
        for alg in [so3(), heisenberg()] {
            for _ in 0..12 {
                let p = rng.below(3) as u32 + 1;
                let q = rng.below(3) as u32 + 1;
                let rand_hom = |rng: &mut SplitMix64, deg: u32| loop {
                    let mut f = Poly::zero(3);
                    for _ in 0..2 {
                        let m = Monomial::from_exps((0..deg).map(|_| (rng.below(3) as usize, 1)));
                        f.add_term(m, c(rng.nonzero_int(4)));
                    }
                    if !f.is_zero() {
                        return f;
                    }
                };
                let f = rand_hom(&mut rng, p);
                let g = rand_hom(&mut rng, q);
                let comm = nc_commutator(&alg, &symmetrize(&alg, &f), &symmetrize(&alg, &g));
                assert_eq!(
                    comm.leading_symbol((p + q - 1) as usize),
                    alg.berezin_bracket(&f, &g),
                    "f = {f}, g = {g} on {}",
                    alg.name()
                );
            }
        }
    }

    /// Top symbol of the symmetrization recovers the input exactly.
    #[test]
    fn projection_after_symmetrize_keeps_top_symbol() {
        let mut rng = SplitMix64::new(31);
        for alg in [so3(), heisenberg()] {
            for deg in 1..=4u32 {
                let mut f = Poly::zero(3);
                for _ in 0..3 {
                    let m = Monomial::from_exps((0..deg).map(|_| (rng.below(3) as usize, 1)));
                    f.add_term(m, c(rng.nonzero_int(5)));
                }
                if f.is_zero() {
                    continue;
                }
                let sym = symmetrize(&alg, &f);
                assert_eq!(sym.leading_symbol(deg as usize), f);
            }
        }
    }

    #[test]
    fn certifier_examples() {
        let alg = so3();
        let f = Poly::var(3, 0).pow(2);
        let g = Poly::var(3, 1).pow(2);
        assert!(certify_nonfactorizable(&alg, &f, &g).is_nonfactorizable());

        let ext = so3_plus_center();
        // f = x4 x1, g = x4 x1^2: shared central x4 with commuting residuals
        let f = &Poly::var(4, 3) * &Poly::var(4, 0);
        let g = &Poly::var(4, 3) * &Poly::var(4, 0).pow(2);
        match certify_nonfactorizable(&ext, &f, &g) {
            Factorizability::PossiblyFactorizable(w) => {
                assert_eq!(w.shared, vec![(3, 1)]);
                assert_eq!(w.residual_f, "x0");
                assert_eq!(w.residual_g, "x0^2");
            }
            other => panic!("expected witness, got {other:?}"),
        }
        // residuals X1 vs X2 do not commute
        let g2 = &Poly::var(4, 3) * &Poly::var(4, 1);
        assert!(certify_nonfactorizable(&ext, &f, &g2).is_nonfactorizable());
    }

    #[test]
    fn ncpoly_text_round_trip() {
        let alg = so3();
        let p = normal_order(&alg, &nc(3, &[(&[1, 0], 1), (&[2, 2], -2)]));
        let s = crate::text::format_ncpoly(&p);
        let back = parse_ncpoly(&s, 3).unwrap();
        assert_eq!(back, p);
    }
}
