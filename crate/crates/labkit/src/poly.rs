//! Sparse commutative multivariate polynomials over [`GaussScalar`].
//!
//! Polynomials live on the dual space of a Lie algebra: variables are plain
//! 0-based indices `x0..x{n-1}`, names belong to the algebra descriptor, not
//! to the polynomial. Terms are kept in a `BTreeMap` under the graded
//! lexicographic order, so iteration, formatting and serialization are
//! deterministic. No zero coefficient and no zero exponent is ever stored.

use crate::error::Error;
use crate::scalar::GaussScalar;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A monomial as a sparse exponent map, sorted by variable index.
///
/// The total degree is cached. Monomials are totally ordered by graded lex:
/// first by degree, ties broken lexicographically with `x0 > x1 > ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
    degree: u32,
}

impl Monomial {
    /// The empty monomial (constant 1).
    pub fn one() -> Self {
        Monomial {
            exps: Vec::new(),
            degree: 0,
        }
    }

    pub fn var(index: usize) -> Self {
        Monomial {
            exps: vec![(index as u32, 1)],
            degree: 1,
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_exps<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v as u32).or_insert(0) += e;
            }
        }
        let exps: Vec<(u32, u32)> = map.into_iter().collect();
        let degree = exps.iter().map(|&(_, e)| e).sum();
        Monomial { exps, degree }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps
            .binary_search_by_key(&(var as u32), |&(v, _)| v)
            .map(|pos| self.exps[pos].1)
            .unwrap_or(0)
    }

    /// Iterates `(var, exp)` pairs in ascending variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    /// Largest variable index present, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        exps.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        exps.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        exps.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    exps.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    exps.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * n)).collect(),
            degree: self.degree * n,
        }
    }

    /// Formal derivative with respect to `var`: returns the dropped exponent
    /// as a multiplier together with the reduced monomial, or `None` when the
    /// variable is absent.
    pub fn derivative(&self, var: usize) -> Option<(u32, Monomial)> {
        let pos = self
            .exps
            .binary_search_by_key(&(var as u32), |&(v, _)| v)
            .ok()?;
        let e = self.exps[pos].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(pos);
        } else {
            exps[pos].1 = e - 1;
        }
        Some((
            e,
            Monomial {
                exps,
                degree: self.degree - 1,
            },
        ))
    }

    /// Total degree counting only the variables in `vars`.
    pub fn degree_in(&self, vars: &BTreeSet<usize>) -> u32 {
        self.exps
            .iter()
            .filter(|&&(v, _)| vars.contains(&(v as usize)))
            .map(|&(_, e)| e)
            .sum()
    }

    /// Splits into (part over `vars`, part over the rest).
    pub fn split_on(&self, vars: &BTreeSet<usize>) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) = self
            .exps
            .iter()
            .partition(|&&(v, _)| vars.contains(&(v as usize)));
        let mk = |exps: Vec<(u32, u32)>| {
            let degree = exps.iter().map(|&(_, e)| e).sum();
            Monomial { exps, degree }
        };
        (mk(inside), mk(outside))
    }
}

/// Graded lexicographic order: degree first, then lex with `x0 > x1 > ...`
/// (at the first variable where the exponents differ, the larger exponent
/// wins).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                        if va < vb {
                            return Ordering::Greater;
                        }
                        if va > vb {
                            return Ordering::Less;
                        }
                        match ea.cmp(&eb) {
                            Ordering::Equal => {
                                a.next();
                                b.next();
                            }
                            ord => return ord,
                        }
                    }
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (None, None) => return Ordering::Equal,
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let body: Vec<String> = self
            .exps
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    format!("x{v}")
                } else {
                    format!("x{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", body.join("*"))
    }
}

/// A sparse multivariate polynomial over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n_vars: usize,
    terms: BTreeMap<Monomial, GaussScalar>,
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        Poly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Poly::constant(n_vars, GaussScalar::one())
    }

    pub fn constant(n_vars: usize, c: GaussScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { n_vars, terms }
    }

    /// The coordinate function `x{index}`. Panics when the index is out of
    /// the variable universe; use [`Poly::try_var`] for a checked version.
    pub fn var(n_vars: usize, index: usize) -> Self {
        Self::try_var(n_vars, index).expect("variable index out of range")
    }

    pub fn try_var(n_vars: usize, index: usize) -> Result<Self, Error> {
        if index >= n_vars {
            return Err(Error::VarOutOfRange { index, n_vars });
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(index), GaussScalar::one());
        Ok(Poly { n_vars, terms })
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussScalar)>>(
        n_vars: usize,
        iter: I,
    ) -> Self {
        let mut p = Poly::zero(n_vars);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussScalar {
        self.terms.get(m).cloned().unwrap_or_else(GaussScalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has total degree `d`. The zero polynomial
    /// reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = match it.next() {
            None => return Some(0),
            Some(d) => d,
        };
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Set of variable indices with nonzero occurrence.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.iter().map(|(v, _)| v));
        }
        out
    }

    /// Adds `c * m` in place, removing the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn scale(&self, c: &GaussScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `self += c * p`.
    pub fn add_scaled(&mut self, p: &Poly, c: &GaussScalar) {
        assert_eq!(self.n_vars, p.n_vars, "mismatched variable universes");
        if c.is_zero() {
            return;
        }
        for (m, a) in &p.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    /// `self += p * q`, accumulating without an intermediate polynomial.
    pub fn add_mul(&mut self, p: &Poly, q: &Poly) {
        assert_eq!(self.n_vars, p.n_vars, "mismatched variable universes");
        assert_eq!(self.n_vars, q.n_vars, "mismatched variable universes");
        for (mp, cp) in &p.terms {
            for (mq, cq) in &q.terms {
                self.add_term(mp.mul(mq), cp * cq);
            }
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.n_vars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Poly, Error> {
        if var >= self.n_vars {
            return Err(Error::VarOutOfRange {
                index: var,
                n_vars: self.n_vars,
            });
        }
        let mut out = Poly::zero(self.n_vars);
        for (m, c) in &self.terms {
            if let Some((e, reduced)) = m.derivative(var) {
                out.add_term(reduced, c * &GaussScalar::from_int(e as i64));
            }
        }
        Ok(out)
    }

    /// Substitutes each mapped variable by a polynomial of total degree <= 1;
    /// unmapped variables pass through unchanged. Images must live in the
    /// same variable universe.
    pub fn substitute_linear(&self, images: &BTreeMap<usize, Poly>) -> Result<Poly, Error> {
        for (&v, img) in images {
            if v >= self.n_vars {
                return Err(Error::VarOutOfRange {
                    index: v,
                    n_vars: self.n_vars,
                });
            }
            if img.n_vars != self.n_vars {
                return Err(Error::MismatchedVariables {
                    left: self.n_vars,
                    right: img.n_vars,
                });
            }
            if let Some(d) = img.degree() {
                if d > 1 {
                    return Err(Error::SubstitutionDegree {
                        index: v,
                        degree: d,
                    });
                }
            }
        }
        let substituted: BTreeSet<usize> = images.keys().copied().collect();
        let mut out = Poly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let (inside, outside) = m.split_on(&substituted);
            let mut factor = Poly::constant(self.n_vars, c.clone());
            for (v, e) in inside.iter() {
                factor = &factor * &images[&v].pow(e);
            }
            for (m2, c2) in factor.terms {
                out.add_term(m2.mul(&outside), c2);
            }
        }
        Ok(out)
    }

    /// Buckets terms by their total degree in `vars`. Components sum back to
    /// the input exactly; for homogeneous input of degree `d` the component
    /// at key `k` has bidegree `(k, d - k)`.
    pub fn split_by_degree_in(&self, vars: &BTreeSet<usize>) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.degree_in(vars);
            out.entry(k)
                .or_insert_with(|| Poly::zero(self.n_vars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(GaussScalar::is_rational)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n_vars, rhs.n_vars, "mismatched variable universes");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n_vars, rhs.n_vars, "mismatched variable universes");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.n_vars);
        out.add_mul(self, rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.n_vars, self)
    }
}
