//! Lie algebras given by structure constants.
//!
//! A [`LieAlgebra`] stores the brackets `[X_i, X_j] = sum_k C_ij^k X_k` for
//! `i < j` only; antisymmetry is structural and diagonal brackets vanish.
//! On the dual space the generators act as the first-order operators
//! `Xhat_i = C_ij^k x_k d/dx_j`, and polynomials carry the Lie-Poisson
//! (Berezin) bracket determined by the same constants.
//!
//! Sign convention: this crate fixes `pb(x_i, x_j) = +C_ij^k x_k`, so that
//! `pb(x_l, h) = Xhat_l(h)` exactly. Vanishing statements (invariance,
//! involution) do not depend on this choice.

use crate::error::Error;
use crate::ffield;
use crate::linalg;
use crate::poly::Poly;
use crate::scalar::GaussScalar;
use crate::text;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A finite-dimensional Lie algebra over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    names: Vec<String>,
    /// `(i, j) -> [(k, C_ij^k)]` with `i < j`, targets sorted by `k`.
    brackets: BTreeMap<(usize, usize), Vec<(usize, GaussScalar)>>,
}

impl LieAlgebra {
    /// Builds an algebra from `i < j` bracket data. Entries are merged,
    /// zero coefficients dropped and indices validated; the Jacobi identity
    /// is *not* checked here (see [`LieAlgebra::validate`]).
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<(usize, GaussScalar)>)>,
    ) -> Result<Self, Error> {
        let dim = names.len();
        let mut table: BTreeMap<(usize, usize), BTreeMap<usize, GaussScalar>> = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::GenOutOfRange {
                    index: i.max(j),
                    dim,
                });
            }
            if i >= j {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket ({i},{j}) must satisfy i < j (antisymmetry is structural)"
                )));
            }
            let slot = table.entry((i, j)).or_default();
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::GenOutOfRange { index: k, dim });
                }
                let entry = slot.entry(k).or_insert_with(GaussScalar::zero);
                *entry += &c;
            }
        }
        let brackets = table
            .into_iter()
            .filter_map(|(key, slot)| {
                let terms: Vec<(usize, GaussScalar)> =
                    slot.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if terms.is_empty() {
                    None
                } else {
                    Some((key, terms))
                }
            })
            .collect();
        Ok(LieAlgebra {
            name: name.into(),
            dim,
            names,
            brackets,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    /// Stored brackets, `i < j` only.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, GaussScalar)>)> {
        self.brackets.iter()
    }

    /// `[X_i, X_j]` as a list of `(k, coefficient)`, for any index pair.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, GaussScalar)> {
        if i == j {
            return Vec::new();
        }
        let (key, flip) = if i < j {
            ((i, j), false)
        } else {
            ((j, i), true)
        };
        match self.brackets.get(&key) {
            None => Vec::new(),
            Some(terms) => terms
                .iter()
                .map(|(k, c)| (*k, if flip { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// True when `[X_i, X_j] = 0`.
    pub fn commutes(&self, i: usize, j: usize) -> bool {
        i == j || !self.brackets.contains_key(&(i.min(j), i.max(j)))
    }

    /// `[X_i, v]` for a coefficient vector `v`.
    fn ad(&self, i: usize, v: &[GaussScalar]) -> Vec<GaussScalar> {
        let mut out = vec![GaussScalar::zero(); self.dim];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, s) in self.bracket(i, j) {
                out[k] += &(&s * c);
            }
        }
        out
    }

    /// Bracket of two coefficient vectors.
    pub fn bracket_vectors(&self, a: &[GaussScalar], b: &[GaussScalar]) -> Vec<GaussScalar> {
        let mut out = vec![GaussScalar::zero(); self.dim];
        for ((i, j), terms) in &self.brackets {
            // a_i b_j - a_j b_i
            let w = &(&a[*i] * &b[*j]) - &(&a[*j] * &b[*i]);
            if w.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] += &(c * &w);
            }
        }
        out
    }

    /// Checks the Jacobi identity on every generator triple, reporting each
    /// failing triple with its residual vector.
    pub fn validate(&self) -> JacobiReport {
        let mut failures = Vec::new();
        let unit = |i: usize| {
            let mut v = vec![GaussScalar::zero(); self.dim];
            v[i] = GaussScalar::one();
            v
        };
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    // [X_i,[X_j,X_k]] + [X_j,[X_k,X_i]] + [X_k,[X_i,X_j]]
                    let mut residual = self.ad(i, &self.ad(j, &unit(k)));
                    for (idx, v) in self.ad(j, &self.ad(k, &unit(i))).into_iter().enumerate() {
                        residual[idx] += &v;
                    }
                    for (idx, v) in self.ad(k, &self.ad(i, &unit(j))).into_iter().enumerate() {
                        residual[idx] += &v;
                    }
                    if residual.iter().any(|c| !c.is_zero()) {
                        failures.push(JacobiFailure {
                            triple: (i, j, k),
                            residual: residual
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .collect(),
                        });
                    }
                }
            }
        }
        JacobiReport { failures }
    }

    /// The commutator-table matrix `A(g)_{ij} = C_ij^k x_k` of degree-1
    /// polynomials; antisymmetric by construction.
    pub fn adjoint_matrix(&self) -> Vec<Vec<Poly>> {
        let mut mat = vec![vec![Poly::zero(self.dim); self.dim]; self.dim];
        for ((i, j), terms) in &self.brackets {
            let mut p = Poly::zero(self.dim);
            for (k, c) in terms {
                p.add_scaled(&Poly::var(self.dim, *k), c);
            }
            mat[*i][*j] = p.clone();
            mat[*j][*i] = -&p;
        }
        mat
    }

    /// Generic rank of the adjoint matrix (seeded random evaluation over a
    /// large prime field, three samples plus one exact rational sample).
    pub fn generic_adjoint_rank(&self, seed: u64) -> usize {
        ffield::generic_rank(&self.adjoint_matrix(), self.dim, seed, 3)
    }

    /// Number of functionally independent polynomial invariants,
    /// `N(g) = dim g - rank(C_ij^k x_k)`.
    pub fn invariant_count(&self, seed: u64) -> usize {
        self.dim - self.generic_adjoint_rank(seed)
    }

    /// Applies the first-order operator `sum_i coeffs[i] * Xhat_i` to `f`,
    /// where `Xhat_i = C_ij^k x_k d/dx_j`.
    pub fn diffop_apply(&self, coeffs: &[GaussScalar], f: &Poly) -> Result<Poly, Error> {
        if coeffs.len() != self.dim {
            return Err(Error::LengthMismatch {
                got: coeffs.len(),
                dim: self.dim,
            });
        }
        if f.n_vars() != self.dim {
            return Err(Error::MismatchedVariables {
                left: self.dim,
                right: f.n_vars(),
            });
        }
        let mut partials: HashMap<usize, Poly> = HashMap::new();
        let mut partial = |v: usize, f: &Poly| -> Poly {
            partials
                .entry(v)
                .or_insert_with(|| f.partial_derivative(v).expect("validated index"))
                .clone()
        };
        let mut out = Poly::zero(self.dim);
        for ((i, j), terms) in &self.brackets {
            // contribution a_i Xhat_i + a_j Xhat_j restricted to this bracket:
            // C_ij^k x_k (a_i d/dx_j - a_j d/dx_i)
            let mut dir = Poly::zero(self.dim);
            if !coeffs[*i].is_zero() {
                dir.add_scaled(&partial(*j, f), &coeffs[*i]);
            }
            if !coeffs[*j].is_zero() {
                let d = partial(*i, f);
                dir.add_scaled(&d, &-&coeffs[*j]);
            }
            if dir.is_zero() {
                continue;
            }
            let mut lin = Poly::zero(self.dim);
            for (k, c) in terms {
                lin.add_scaled(&Poly::var(self.dim, *k), c);
            }
            out.add_mul(&lin, &dir);
        }
        Ok(out)
    }

    /// `Xhat_l(f)` for a single generator.
    pub fn apply_generator(&self, l: usize, f: &Poly) -> Result<Poly, Error> {
        if l >= self.dim {
            return Err(Error::GenOutOfRange {
                index: l,
                dim: self.dim,
            });
        }
        let mut coeffs = vec![GaussScalar::zero(); self.dim];
        coeffs[l] = GaussScalar::one();
        self.diffop_apply(&coeffs, f)
    }

    /// True when `Xhat_i f = 0` for every generator.
    pub fn is_invariant(&self, f: &Poly) -> bool {
        (0..self.dim).all(|l| {
            self.apply_generator(l, f)
                .map(|p| p.is_zero())
                .unwrap_or(false)
        })
    }

    /// The Lie-Poisson (Berezin) bracket
    /// `pb(f, g) = sum_{i<j} C_ij^k x_k (df/dx_i dg/dx_j - df/dx_j dg/dx_i)`,
    /// iterating over the nonzero structure constants only.
    pub fn berezin_bracket(&self, f: &Poly, g: &Poly) -> Poly {
        assert_eq!(f.n_vars(), self.dim, "f lives on the wrong dual space");
        assert_eq!(g.n_vars(), self.dim, "g lives on the wrong dual space");
        let mut df: HashMap<usize, Poly> = HashMap::new();
        let mut dg: HashMap<usize, Poly> = HashMap::new();
        let mut out = Poly::zero(self.dim);
        for ((i, j), terms) in &self.brackets {
            let dfi = df
                .entry(*i)
                .or_insert_with(|| f.partial_derivative(*i).expect("index"))
                .clone();
            let dgj = dg
                .entry(*j)
                .or_insert_with(|| g.partial_derivative(*j).expect("index"))
                .clone();
            let dfj = df
                .entry(*j)
                .or_insert_with(|| f.partial_derivative(*j).expect("index"))
                .clone();
            let dgi = dg
                .entry(*i)
                .or_insert_with(|| g.partial_derivative(*i).expect("index"))
                .clone();
            let mut cross = Poly::zero(self.dim);
            cross.add_mul(&dfi, &dgj);
            if !dfj.is_zero() && !dgi.is_zero() {
                cross = &cross - &(&dfj * &dgi);
            }
            if cross.is_zero() {
                continue;
            }
            let mut lin = Poly::zero(self.dim);
            for (k, c) in terms {
                lin.add_scaled(&Poly::var(self.dim, *k), c);
            }
            out.add_mul(&lin, &cross);
        }
        out
    }

    /// Rewrites the algebra in the basis `Y_a = sum_i p[a][i] X_i`.
    /// `p` must be square and invertible.
    pub fn change_basis(
        &self,
        p: &[Vec<GaussScalar>],
        name: impl Into<String>,
        names: Vec<String>,
    ) -> Result<LieAlgebra, Error> {
        if p.len() != self.dim || p.iter().any(|r| r.len() != self.dim) {
            return Err(Error::InvalidAlgebra(format!(
                "basis change matrix must be {0}x{0}",
                self.dim
            )));
        }
        if names.len() != self.dim {
            return Err(Error::InvalidAlgebra(
                "basis change needs one name per generator".into(),
            ));
        }
        let q = linalg::invert(p)
            .ok_or_else(|| Error::InvalidAlgebra("basis change matrix is singular".into()))?;
        let mut brackets = Vec::new();
        for a in 0..self.dim {
            for b in (a + 1)..self.dim {
                // [Y_a, Y_b] in the X basis, then re-expressed through Y
                let w = self.bracket_vectors(&p[a], &p[b]);
                let mut terms: BTreeMap<usize, GaussScalar> = BTreeMap::new();
                for (k, c) in w.into_iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (cc, qk) in q[k].iter().enumerate() {
                        if !qk.is_zero() {
                            let entry = terms.entry(cc).or_insert_with(GaussScalar::zero);
                            *entry += &(&c * qk);
                        }
                    }
                }
                let terms: Vec<(usize, GaussScalar)> =
                    terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if !terms.is_empty() {
                    brackets.push(((a, b), terms));
                }
            }
        }
        LieAlgebra::new(name, names, brackets)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&AlgebraJson::from(self)).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let wire: AlgebraJson = serde_json::from_str(s)?;
        wire.try_into()
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.name, self.dim)
    }
}

/// One Jacobi violation: the triple and the nonzero residual coefficients of
/// `[X_i,[X_j,X_k]] + [X_j,[X_k,X_i]] + [X_k,[X_i,X_j]]`.
#[derive(Clone, Debug, Serialize)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub residual: Vec<(usize, GaussScalar)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub failures: Vec<JacobiFailure>,
}

impl JacobiReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "jacobi: ok");
        }
        writeln!(f, "jacobi: {} failing triple(s)", self.failures.len())?;
        for fail in &self.failures {
            let body: Vec<String> = fail
                .residual
                .iter()
                .map(|(k, c)| format!("{c}*X{k}"))
                .collect();
            writeln!(
                f,
                "  triple {:?}: residual {}",
                fail.triple,
                body.join(" + ")
            )?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    name: String,
    dim: usize,
    generators: Vec<String>,
    brackets: Vec<BracketJson>,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    k: usize,
    c: String,
}

impl From<&LieAlgebra> for AlgebraJson {
    fn from(alg: &LieAlgebra) -> Self {
        AlgebraJson {
            name: alg.name.clone(),
            dim: alg.dim,
            generators: alg.names.clone(),
            brackets: alg
                .brackets
                .iter()
                .map(|(&(i, j), terms)| BracketJson {
                    i,
                    j,
                    terms: terms
                        .iter()
                        .map(|(k, c)| TermJson {
                            k: *k,
                            c: c.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<AlgebraJson> for LieAlgebra {
    type Error = Error;

    fn try_from(wire: AlgebraJson) -> Result<Self, Error> {
        if wire.generators.len() != wire.dim {
            return Err(Error::InvalidAlgebra(format!(
                "dim is {} but {} generator names given",
                wire.dim,
                wire.generators.len()
            )));
        }
        let mut brackets = Vec::new();
        for b in wire.brackets {
            let mut terms = Vec::new();
            for t in b.terms {
                terms.push((t.k, text::parse_scalar(&t.c)?));
            }
            brackets.push(((b.i, b.j), terms));
        }
        LieAlgebra::new(wire.name, wire.generators, brackets)
    }
}

// ---------------------------------------------------------------------------
// Stock algebras used in tests, docs and the CLI examples
// ---------------------------------------------------------------------------

pub mod samples {
    use super::*;

    fn c(n: i64) -> GaussScalar {
        GaussScalar::from_int(n)
    }

    /// so(3): `[X1,X2] = X3, [X2,X3] = X1, [X3,X1] = X2` (0-based indices).
    pub fn so3() -> LieAlgebra {
        LieAlgebra::new(
            "so3",
            vec!["X1".into(), "X2".into(), "X3".into()],
            vec![
                ((0, 1), vec![(2, c(1))]),
                ((1, 2), vec![(0, c(1))]),
                ((0, 2), vec![(1, c(-1))]),
            ],
        )
        .expect("static table")
    }

    /// Heisenberg algebra: `[X1,X2] = X3`, X3 central.
    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::new(
            "heisenberg",
            vec!["X1".into(), "X2".into(), "X3".into()],
            vec![((0, 1), vec![(2, c(1))])],
        )
        .expect("static table")
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra::new(
            "abelian",
            (0..dim).map(|i| format!("X{}", i + 1)).collect(),
            Vec::new(),
        )
        .expect("static table")
    }

    /// so(3) plus a central generator X4.
    pub fn so3_plus_center() -> LieAlgebra {
        LieAlgebra::new(
            "so3+u1",
            vec!["X1".into(), "X2".into(), "X3".into(), "X4".into()],
            vec![
                ((0, 1), vec![(2, c(1))]),
                ((1, 2), vec![(0, c(1))]),
                ((0, 2), vec![(1, c(-1))]),
            ],
        )
        .expect("static table")
    }

    /// sl(3, R) on the basis E12,E13,E21,E23,E31,E32,H1=E11-E22,H2=E22-E33,
    /// with brackets derived from 3x3 matrix units.
    pub fn sl3() -> LieAlgebra {
        // basis as matrices
        let unit = |r: usize, cidx: usize| -> Vec<Vec<i64>> {
            let mut m = vec![vec![0i64; 3]; 3];
            m[r][cidx] = 1;
            m
        };
        let sub = |a: Vec<Vec<i64>>, b: Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..3)
                .map(|r| (0..3).map(|c| a[r][c] - b[r][c]).collect())
                .collect()
        };
        let basis: Vec<(String, Vec<Vec<i64>>)> = vec![
            ("E12".into(), unit(0, 1)),
            ("E13".into(), unit(0, 2)),
            ("E21".into(), unit(1, 0)),
            ("E23".into(), unit(1, 2)),
            ("E31".into(), unit(2, 0)),
            ("E32".into(), unit(2, 1)),
            ("H1".into(), sub(unit(0, 0), unit(1, 1))),
            ("H2".into(), sub(unit(1, 1), unit(2, 2))),
        ];
        let flat = |m: &Vec<Vec<i64>>| -> Vec<GaussScalar> {
            (0..3)
                .flat_map(|r| (0..3).map(move |cc| (r, cc)))
                .map(|(r, cc)| c(m[r][cc]))
                .collect()
        };
        let rows: Vec<Vec<GaussScalar>> = basis.iter().map(|(_, m)| flat(m)).collect();
        let mut brackets = Vec::new();
        for a in 0..basis.len() {
            for b in (a + 1)..basis.len() {
                // commutator of the two matrices
                let (ma, mb) = (&basis[a].1, &basis[b].1);
                let mut comm = vec![vec![0i64; 3]; 3];
                for r in 0..3 {
                    for cc in 0..3 {
                        for k in 0..3 {
                            comm[r][cc] += ma[r][k] * mb[k][cc] - mb[r][k] * ma[k][cc];
                        }
                    }
                }
                let target = flat(&comm);
                if target.iter().all(GaussScalar::is_zero) {
                    continue;
                }
                let coeffs =
                    linalg::express_in_rows(&rows, &target).expect("sl3 closes under commutators");
                let terms: Vec<(usize, GaussScalar)> = coeffs
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                brackets.push(((a, b), terms));
            }
        }
        LieAlgebra::new("sl3", basis.into_iter().map(|(n, _)| n).collect(), brackets)
            .expect("static table")
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::rng::SplitMix64;

    fn c(n: i64) -> GaussScalar {
        GaussScalar::from_int(n)
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn so3_casimir() -> Poly {
        let s = |i: usize| x(3, i).pow(2);
        &(&s(0) + &s(1)) + &s(2)
    }

    #[test]
    fn so3_and_heisenberg_pass_jacobi() {
        assert!(so3().validate().is_ok());
        assert!(heisenberg().validate().is_ok());
        assert!(sl3().validate().is_ok());
    }

    #[test]
    fn rescaled_so3_still_satisfies_jacobi() {
        // scaling a single bracket keeps Jacobi in dimension 3: every cyclic
        // term pairs a generator with a multiple of itself
        let scaled = LieAlgebra::new(
            "so3-rescaled",
            vec!["X1".into(), "X2".into(), "X3".into()],
            vec![
                ((0, 1), vec![(2, c(1))]),
                ((1, 2), vec![(0, c(2))]),
                ((0, 2), vec![(1, c(-1))]),
            ],
        )
        .unwrap();
        assert!(scaled.validate().is_ok());
    }

    #[test]
    fn tampered_so3_fails_jacobi_with_triple() {
        let bad = LieAlgebra::new(
            "so3-tampered",
            vec!["X1".into(), "X2".into(), "X3".into()],
            vec![
                ((0, 1), vec![(2, c(1))]),
                ((1, 2), vec![(0, c(1)), (1, c(1))]), // tampered: [X2,X3] = X1 + X2
                ((0, 2), vec![(1, c(-1))]),
            ],
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.is_ok());
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].triple, (0, 1, 2));
    }

    #[test]
    fn adjoint_matrix_examples() {
        // Heisenberg: [[0, x3, 0], [-x3, 0, 0], [0, 0, 0]]
        let m = heisenberg().adjoint_matrix();
        assert_eq!(m[0][1], x(3, 2));
        assert_eq!(m[1][0], -&x(3, 2));
        for (i, j) in [(0, 0), (0, 2), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)] {
            assert!(m[i][j].is_zero(), "({i},{j})");
        }
        // so(3): [[0, x3, -x2], [-x3, 0, x1], [x2, -x1, 0]]
        let m = so3().adjoint_matrix();
        assert_eq!(m[0][1], x(3, 2));
        assert_eq!(m[0][2], -&x(3, 1));
        assert_eq!(m[1][2], x(3, 0));
        for i in 0..3 {
            assert!(m[i][i].is_zero());
            for j in 0..3 {
                assert_eq!(m[i][j], -&m[j][i].clone());
            }
        }
        // abelian: zero matrix
        let m = abelian(4).adjoint_matrix();
        assert!(m.iter().flatten().all(Poly::is_zero));
    }

    #[test]
    fn invariant_counts() {
        for seed in [1u64, 42, 1234] {
            assert_eq!(heisenberg().invariant_count(seed), 1);
            assert_eq!(so3().invariant_count(seed), 1);
            assert_eq!(abelian(4).invariant_count(seed), 4);
            assert_eq!(sl3().invariant_count(seed), 2);
        }
    }

    #[test]
    fn degenerate_dimensions_are_legal() {
        // dim 0 and dim 1 (abelian) algebras: N(g) = dim g
        for dim in [0usize, 1] {
            let alg = abelian(dim);
            assert!(alg.validate().is_ok());
            assert_eq!(alg.invariant_count(5), dim);
        }
    }

    #[test]
    fn diffop_examples() {
        let alg = so3();
        // Xhat_1 annihilates the Casimir symbol
        let e1 = [c(1), c(0), c(0)];
        assert!(alg.diffop_apply(&e1, &so3_casimir()).unwrap().is_zero());
        // Xhat_1 = x3 d2 - x2 d3 sends x2 to x3
        assert_eq!(alg.diffop_apply(&e1, &x(3, 1)).unwrap(), x(3, 2));
        // constants die
        let one = Poly::one(3);
        assert!(alg.diffop_apply(&e1, &one).unwrap().is_zero());
        // length mismatch is an error
        assert!(matches!(
            alg.diffop_apply(&[c(1)], &one),
            Err(Error::LengthMismatch { got: 1, dim: 3 })
        ));
    }

    #[test]
    fn invariance_examples() {
        assert!(so3().is_invariant(&so3_casimir()));
        assert!(heisenberg().is_invariant(&x(3, 2)));
        assert!(!so3().is_invariant(&x(3, 0)));
    }

    #[test]
    fn berezin_reproduces_linear_brackets() {
        let alg = so3();
        assert_eq!(alg.berezin_bracket(&x(3, 0), &x(3, 1)), x(3, 2));
        assert_eq!(alg.berezin_bracket(&x(3, 1), &x(3, 2)), x(3, 0));
        assert_eq!(alg.berezin_bracket(&x(3, 2), &x(3, 0)), x(3, 1));
    }

    #[test]
    fn berezin_casimir_is_central() {
        let alg = so3();
        let cas = so3_casimir();
        let mut rng = SplitMix64::new(5);
        for _ in 0..8 {
            let g = random_poly(&mut rng, 3, 3);
            assert!(alg.berezin_bracket(&cas, &g).is_zero());
        }
    }

    #[test]
    fn berezin_square_example() {
        // pb(x1^2, x2^2) = 4 x1 x2 x3
        let alg = so3();
        let got = alg.berezin_bracket(&x(3, 0).pow(2), &x(3, 1).pow(2));
        let expect = (&(&x(3, 0) * &x(3, 1)) * &x(3, 2)).scale(&c(4));
        assert_eq!(got, expect);
    }

    fn random_poly(rng: &mut SplitMix64, n_vars: usize, max_deg: u32) -> Poly {
        let mut p = Poly::zero(n_vars);
        let n_terms = rng.below(4) + 1;
        for _ in 0..n_terms {
            let deg = rng.below(max_deg as u64 + 1) as u32;
            let m = crate::poly::Monomial::from_exps(
                (0..deg).map(|_| (rng.below(n_vars as u64) as usize, 1)),
            );
            p.add_term(
                m,
                GaussScalar::from_ratio(rng.nonzero_int(5), 1 + rng.below(3) as i64),
            );
        }
        p
    }

    #[test]
    fn berezin_is_a_poisson_bracket() {
        for alg in [so3(), heisenberg()] {
            let mut rng = SplitMix64::new(99);
            for _ in 0..6 {
                let f = random_poly(&mut rng, 3, 3);
                let g = random_poly(&mut rng, 3, 3);
                let h = random_poly(&mut rng, 3, 3);
                // antisymmetry
                let fg = alg.berezin_bracket(&f, &g);
                assert_eq!(fg, -&alg.berezin_bracket(&g, &f));
                // Leibniz: pb(fg, h) = f pb(g,h) + pb(f,h) g
                let lhs = alg.berezin_bracket(&(&f * &g), &h);
                let rhs =
                    &(&f * &alg.berezin_bracket(&g, &h)) + &(&alg.berezin_bracket(&f, &h) * &g);
                assert_eq!(lhs, rhs);
                // Jacobi
                let mut jac = alg.berezin_bracket(&f, &alg.berezin_bracket(&g, &h));
                jac = &jac + &alg.berezin_bracket(&g, &alg.berezin_bracket(&h, &f));
                jac = &jac + &alg.berezin_bracket(&h, &alg.berezin_bracket(&f, &g));
                assert!(jac.is_zero());
            }
        }
    }

    #[test]
    fn berezin_on_linear_matches_diffop() {
        // pb(x_l, h) = Xhat_l(h) under the implemented sign convention
        for alg in [so3(), heisenberg()] {
            let mut rng = SplitMix64::new(7);
            for _ in 0..6 {
                let h = random_poly(&mut rng, 3, 3);
                for l in 0..3 {
                    let lhs = alg.berezin_bracket(&x(3, l), &h);
                    let rhs = alg.apply_generator(l, &h).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn invariants_are_poisson_central() {
        let alg = heisenberg();
        let mut rng = SplitMix64::new(3);
        for _ in 0..6 {
            let g = random_poly(&mut rng, 3, 3);
            // x3 is invariant, so pb(x3, g) = 0
            assert!(alg.berezin_bracket(&x(3, 2), &g).is_zero());
        }
    }

    #[test]
    fn invariant_count_stable_under_basis_change() {
        let mut rng = SplitMix64::new(2024);
        for alg in [so3(), heisenberg(), sl3()] {
            let n = alg.dim();
            // random invertible rational matrix (retry until invertible)
            let p = loop {
                let cand: Vec<Vec<GaussScalar>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| GaussScalar::from_int(rng.below(7) as i64 - 3))
                            .collect()
                    })
                    .collect();
                if linalg::invert(&cand).is_some() {
                    break cand;
                }
            };
            let names = (0..n).map(|i| format!("Y{i}")).collect();
            let changed = alg.change_basis(&p, "changed", names).unwrap();
            assert!(changed.validate().is_ok());
            assert_eq!(changed.invariant_count(11), alg.invariant_count(11));
        }
    }

    #[test]
    fn json_round_trip() {
        for alg in [so3(), heisenberg(), sl3()] {
            let s = alg.to_json_string();
            let back = LieAlgebra::from_json_str(&s).unwrap();
            assert_eq!(back, alg);
        }
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad = r#"{"name":"x","dim":2,"generators":["A","B"],
                      "brackets":[{"i":1,"j":0,"terms":[{"k":0,"c":"1"}]}]}"#;
        assert!(LieAlgebra::from_json_str(bad).is_err());
        let oob = r#"{"name":"x","dim":2,"generators":["A","B"],
                      "brackets":[{"i":0,"j":1,"terms":[{"k":5,"c":"1"}]}]}"#;
        assert!(matches!(
            LieAlgebra::from_json_str(oob),
            Err(Error::GenOutOfRange { index: 5, dim: 2 })
        ));
    }
}
