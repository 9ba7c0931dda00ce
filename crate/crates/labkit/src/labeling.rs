//! Reduction chains and the missing label problem.
//!
//! A [`ReductionChain`] embeds a subalgebra into an ambient algebra as a list
//! of coefficient rows. Validation checks linear independence and closure
//! under the ambient bracket and derives the subalgebra's own structure
//! constants. On top of that sit the label counting formulas, subgroup-scalar
//! tests, the contraction grading split, functional independence, and the
//! commutativity certificate that replaces an enveloping-algebra commutator
//! by a Berezin bracket evaluation for non-factorizable pairs.

use crate::algebra::LieAlgebra;
use crate::enveloping::{self, Factorizability};
use crate::error::Error;
use crate::ffield;
use crate::linalg;
use crate::poly::Poly;
use crate::scalar::GaussScalar;
use crate::text;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

/// An ambient algebra with an embedded subalgebra.
///
/// Each row of `sub_rows` expresses one subalgebra generator as a linear
/// combination of ambient generators. `l_prime` is the externally supplied
/// number of ambient invariants that depend on subalgebra variables only
/// (the chain data does not determine it; default 0). `complement_vars`,
/// when present, lists the ambient variable slots used for the contraction
/// grading; it must be disjoint from the support of every row.
#[derive(Clone)]
pub struct ReductionChain {
    ambient: LieAlgebra,
    sub_rows: Vec<Vec<GaussScalar>>,
    l_prime: usize,
    complement_vars: Option<BTreeSet<usize>>,
}

impl ReductionChain {
    pub fn new(
        ambient: LieAlgebra,
        sub_rows: Vec<Vec<GaussScalar>>,
        l_prime: usize,
        complement_vars: Option<BTreeSet<usize>>,
    ) -> Result<Self, Error> {
        let dim = ambient.dim();
        for (idx, row) in sub_rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidChain(format!(
                    "row {idx} has length {}, ambient dimension is {dim}",
                    row.len()
                )));
            }
        }
        if let Some(vars) = &complement_vars {
            if let Some(&bad) = vars.iter().find(|&&v| v >= dim) {
                return Err(Error::VarOutOfRange {
                    index: bad,
                    n_vars: dim,
                });
            }
            for (idx, row) in sub_rows.iter().enumerate() {
                if let Some(v) = vars.iter().find(|&&v| !row[v].is_zero()) {
                    return Err(Error::InvalidChain(format!(
                        "grading variable x{v} appears in subalgebra row {idx}; \
                         the grading requires a sub-basis embedding (apply a basis \
                         change / substitute_linear first)"
                    )));
                }
            }
        }
        Ok(ReductionChain {
            ambient,
            sub_rows,
            l_prime,
            complement_vars,
        })
    }

    pub fn ambient(&self) -> &LieAlgebra {
        &self.ambient
    }

    pub fn sub_rows(&self) -> &[Vec<GaussScalar>] {
        &self.sub_rows
    }

    pub fn l_prime(&self) -> usize {
        self.l_prime
    }

    pub fn complement_vars(&self) -> Option<&BTreeSet<usize>> {
        self.complement_vars.as_ref()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&ChainJson::from(self)).expect("serializable")
    }

    /// Parses the chain JSON format. The `algebra` field may be an inline
    /// algebra object or a string path, resolved relative to `base_dir`.
    pub fn from_json_str(s: &str, base_dir: Option<&Path>) -> Result<Self, Error> {
        let wire: ChainJson = serde_json::from_str(s)?;
        wire.into_chain(base_dir)
    }
}

impl fmt::Debug for ReductionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ReductionChain({} > {} rows, l'={})",
            self.ambient.name(),
            self.sub_rows.len(),
            self.l_prime
        )
    }
}

/// Checks row independence and bracket closure; returns the derived
/// subalgebra (structure constants solved exactly from the embedding).
pub fn validate_chain(chain: &ReductionChain) -> Result<LieAlgebra, Error> {
    let rows = &chain.sub_rows;
    let m = rows.len();
    if linalg::rank(rows.clone()) != m {
        return Err(Error::InvalidChain(
            "subalgebra rows are linearly dependent".into(),
        ));
    }
    let mut brackets = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            let w = chain.ambient.bracket_vectors(&rows[a], &rows[b]);
            if w.iter().all(GaussScalar::is_zero) {
                continue;
            }
            let coeffs = linalg::express_in_rows(rows, &w).ok_or_else(|| {
                Error::InvalidChain(format!(
                    "bracket of rows {a} and {b} leaves the span: not a subalgebra"
                ))
            })?;
            let terms: Vec<(usize, GaussScalar)> = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            brackets.push(((a, b), terms));
        }
    }
    LieAlgebra::new(
        format!("{}.sub", chain.ambient.name()),
        (0..m).map(|i| format!("S{i}")).collect(),
        brackets,
    )
}

/// Label counting summary for a reduction chain.
///
/// Invariants: `m_available = 2 * n_missing` and
/// `n_subgroup_scalars = dim_g - dim_h - l_prime`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MlpReport {
    pub dim_g: usize,
    pub dim_h: usize,
    pub n_g: usize,
    pub n_h: usize,
    pub l_prime: usize,
    pub n_missing: i64,
    pub m_available: i64,
    pub n_subgroup_scalars: i64,
}

impl MlpReport {
    /// The two published expressions for the number of subgroup scalars:
    /// `dim g - dim h - l'` and `m + N(g) + N(h) - l'`. They coincide for
    /// every chain with `l' = 0`.
    pub fn ml2_expressions(&self) -> (i64, i64) {
        (
            self.dim_g as i64 - self.dim_h as i64 - self.l_prime as i64,
            self.m_available + self.n_g as i64 + self.n_h as i64 - self.l_prime as i64,
        )
    }

    pub fn ml2_consistent(&self) -> bool {
        let (a, b) = self.ml2_expressions();
        a == b
    }
}

impl fmt::Display for MlpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dim g = {}, N(g) = {}; dim h = {}, N(h) = {}; l' = {}",
            self.dim_g, self.n_g, self.dim_h, self.n_h, self.l_prime
        )?;
        write!(
            f,
            "missing labels n = {}, available operators m = {}, subgroup scalars = {}",
            self.n_missing, self.m_available, self.n_subgroup_scalars
        )
    }
}

/// Counts missing labels for a validated chain:
/// `n = (dim g - N(g) - dim h - N(h))/2 + l'`, `m = 2n`, and the number of
/// subgroup scalars `dim g - dim h - l'`. Errors when `n` would be a half
/// integer (an inconsistent `l'` or invalid chain).
pub fn mlp_count(chain: &ReductionChain, seed: u64) -> Result<MlpReport, Error> {
    let sub = validate_chain(chain)?;
    let dim_g = chain.ambient.dim();
    let dim_h = sub.dim();
    let n_g = chain.ambient.invariant_count(seed);
    let n_h = sub.invariant_count(seed.wrapping_add(1));
    let diff = dim_g as i64 - n_g as i64 - dim_h as i64 - n_h as i64;
    if diff % 2 != 0 {
        return Err(Error::HalfIntegerLabels(format!(
            "dim g - N(g) - dim h - N(h) = {diff} is odd"
        )));
    }
    let n_missing = diff / 2 + chain.l_prime as i64;
    Ok(MlpReport {
        dim_g,
        dim_h,
        n_g,
        n_h,
        l_prime: chain.l_prime,
        n_missing,
        m_available: 2 * n_missing,
        n_subgroup_scalars: dim_g as i64 - dim_h as i64 - chain.l_prime as i64,
    })
}

/// True when `f` is annihilated by the differential operator of every
/// subalgebra row.
pub fn is_subgroup_scalar(chain: &ReductionChain, f: &Poly) -> Result<bool, Error> {
    for row in &chain.sub_rows {
        if !chain.ambient.diffop_apply(row, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Buckets `f` by total degree in the grading variables. Components sum back
/// to `f` exactly; for homogeneous `f` of degree `d` the component at key `k`
/// is bihomogeneous of bidegree `(k, d - k)`.
pub fn grading_split(f: &Poly, complement_vars: &BTreeSet<usize>) -> BTreeMap<u32, Poly> {
    f.split_by_degree_in(complement_vars)
}

/// Rank of the Jacobian `(df_i/dx_j)` at seeded random points over a large
/// prime field (three samples plus an exact rational cross-check).
/// The polynomials are functionally independent iff the rank equals their
/// number.
pub fn functional_independence(polys: &[Poly], n_vars: usize, seed: u64) -> Result<usize, Error> {
    let mut jac = Vec::with_capacity(polys.len());
    for p in polys {
        if p.n_vars() != n_vars {
            return Err(Error::MismatchedVariables {
                left: n_vars,
                right: p.n_vars(),
            });
        }
        let row: Result<Vec<Poly>, Error> = (0..n_vars).map(|v| p.partial_derivative(v)).collect();
        jac.push(row?);
    }
    Ok(ffield::generic_rank(&jac, n_vars, seed, 3))
}

/// Degree and dimension caps for the enveloping-algebra commutator fallback.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    /// Maximum total degree `deg f + deg g` for the fallback.
    pub max_total_degree: u32,
    /// Maximum ambient dimension for the fallback.
    pub max_dim: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_total_degree: 8,
            max_dim: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CertifiedCommuting,
    CertifiedNonCommuting,
    Inconclusive,
}

/// Outcome of a commutativity check for a pair of symmetrized operators.
#[derive(Clone, Debug, Serialize)]
pub struct CommutativityCertificate {
    pub pair: (String, String),
    pub nonfactorizable: Factorizability,
    pub bracket_vanishes: bool,
    pub verdict: Verdict,
    pub oracle_used: bool,
}

/// Decides whether `[Lambda(f), Lambda(g)] = 0` in the enveloping algebra.
///
/// For a certified non-factorizable pair the commutator vanishes iff the
/// Berezin bracket does; otherwise, when the pair fits `budget`, the
/// enveloping-algebra commutator is computed directly, and failing that the
/// verdict is `Inconclusive`. Both inputs must be nonzero homogeneous
/// polynomials (the criterion needs homogeneity).
pub fn certify_commuting(
    alg: &LieAlgebra,
    f: &Poly,
    g: &Poly,
    budget: &OracleBudget,
    pair: (String, String),
) -> Result<CommutativityCertificate, Error> {
    let deg = |p: &Poly, name: &str| -> Result<u32, Error> {
        if p.is_zero() {
            return Err(Error::NonHomogeneous {
                context: format!("certify_commuting: {name} is zero"),
            });
        }
        p.homogeneous_degree().ok_or_else(|| Error::NonHomogeneous {
            context: format!("certify_commuting: {name}"),
        })
    };
    let df = deg(f, "f")?;
    let dg = deg(g, "g")?;

    let nonfactorizable = enveloping::certify_nonfactorizable(alg, f, g);
    let bracket_vanishes = alg.berezin_bracket(f, g).is_zero();

    let (verdict, oracle_used) = match &nonfactorizable {
        Factorizability::NonFactorizable => {
            if bracket_vanishes {
                (Verdict::CertifiedCommuting, false)
            } else {
                (Verdict::CertifiedNonCommuting, false)
            }
        }
        Factorizability::PossiblyFactorizable(_) => {
            if df + dg <= budget.max_total_degree && alg.dim() <= budget.max_dim {
                let lf = enveloping::symmetrize(alg, f);
                let lg = enveloping::symmetrize(alg, g);
                let comm = enveloping::nc_commutator(alg, &lf, &lg);
                if comm.is_zero() {
                    (Verdict::CertifiedCommuting, true)
                } else {
                    (Verdict::CertifiedNonCommuting, true)
                }
            } else {
                (Verdict::Inconclusive, false)
            }
        }
    };
    Ok(CommutativityCertificate {
        pair,
        nonfactorizable,
        bracket_vanishes,
        verdict,
        oracle_used,
    })
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ChainJson {
    algebra: serde_json::Value,
    sub_rows: Vec<Vec<String>>,
    #[serde(default)]
    l_prime: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complement_vars: Option<Vec<usize>>,
}

impl From<&ReductionChain> for ChainJson {
    fn from(chain: &ReductionChain) -> Self {
        ChainJson {
            algebra: serde_json::from_str(&chain.ambient.to_json_string())
                .expect("valid algebra json"),
            sub_rows: chain
                .sub_rows
                .iter()
                .map(|row| row.iter().map(GaussScalar::to_string).collect())
                .collect(),
            l_prime: chain.l_prime,
            complement_vars: chain
                .complement_vars
                .as_ref()
                .map(|s| s.iter().copied().collect()),
        }
    }
}

impl ChainJson {
    fn into_chain(self, base_dir: Option<&Path>) -> Result<ReductionChain, Error> {
        let algebra = match &self.algebra {
            serde_json::Value::String(path) => {
                let resolved = match base_dir {
                    Some(dir) => dir.join(path),
                    None => Path::new(path).to_path_buf(),
                };
                let body = fs::read_to_string(&resolved).map_err(|e| {
                    Error::InvalidChain(format!(
                        "cannot read referenced algebra {}: {e}",
                        resolved.display()
                    ))
                })?;
                LieAlgebra::from_json_str(&body)?
            }
            inline => LieAlgebra::from_json_str(&inline.to_string())?,
        };
        let mut rows = Vec::with_capacity(self.sub_rows.len());
        for row in &self.sub_rows {
            let mut out = Vec::with_capacity(row.len());
            for s in row {
                out.push(text::parse_scalar(s)?);
            }
            rows.push(out);
        }
        ReductionChain::new(
            algebra,
            rows,
            self.l_prime,
            self.complement_vars.map(|v| v.into_iter().collect()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::samples::*;
    use crate::rng::SplitMix64;

    fn c(n: i64) -> GaussScalar {
        GaussScalar::from_int(n)
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn unit_row(dim: usize, i: usize) -> Vec<GaussScalar> {
        let mut v = vec![GaussScalar::zero(); dim];
        v[i] = GaussScalar::one();
        v
    }

    fn so3_x3_chain() -> ReductionChain {
        ReductionChain::new(so3(), vec![unit_row(3, 2)], 0, None).unwrap()
    }

    #[test]
    fn chain_so3_x3_is_abelian_dim_1() {
        let sub = validate_chain(&so3_x3_chain()).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(sub.brackets().count(), 0);
    }

    #[test]
    fn chain_so3_x1_x2_fails_closure() {
        let chain =
            ReductionChain::new(so3(), vec![unit_row(3, 0), unit_row(3, 1)], 0, None).unwrap();
        let err = validate_chain(&chain).unwrap_err();
        assert!(matches!(err, Error::InvalidChain(msg) if msg.contains("rows 0 and 1")));
    }

    #[test]
    fn dependent_rows_rejected() {
        let mut row2 = unit_row(3, 2);
        row2[2] = c(5);
        let chain = ReductionChain::new(so3(), vec![unit_row(3, 2), row2], 0, None).unwrap();
        assert!(matches!(
            validate_chain(&chain),
            Err(Error::InvalidChain(msg)) if msg.contains("dependent")
        ));
    }

    #[test]
    fn elliott_type_chain_counts() {
        // sl(3) > so(3): n = (8 - 2 - 3 - 1)/2 = 1 missing label
        let alg = sl3();
        // so(3) spanned by E12-E21, E13-E31, E23-E32
        let dim = alg.dim();
        let mut rows = Vec::new();
        for (a, b) in [(0usize, 2usize), (1, 4), (3, 5)] {
            let mut row = vec![GaussScalar::zero(); dim];
            row[a] = c(1);
            row[b] = c(-1);
            rows.push(row);
        }
        let chain = ReductionChain::new(alg, rows, 0, None).unwrap();
        let sub = validate_chain(&chain).unwrap();
        assert!(sub.validate().is_ok());
        assert_eq!(sub.invariant_count(5), 1);
        let report = mlp_count(&chain, 5).unwrap();
        assert_eq!(report.n_missing, 1);
        assert_eq!(report.m_available, 2);
        assert!(report.ml2_consistent());
        assert_eq!(report.n_subgroup_scalars, 5);
    }

    #[test]
    fn trivial_chain_identities() {
        // g > g with l' = N(g): the two report identities hold
        let alg = so3();
        let rows = (0..3).map(|i| unit_row(3, i)).collect();
        let l_prime = alg.invariant_count(3);
        let chain = ReductionChain::new(alg, rows, l_prime, None).unwrap();
        let report = mlp_count(&chain, 3).unwrap();
        assert_eq!(report.m_available, 2 * report.n_missing);
        assert_eq!(
            report.n_subgroup_scalars,
            report.dim_g as i64 - report.dim_h as i64 - report.l_prime as i64
        );
        assert_eq!(report.n_missing, 0);
    }

    #[test]
    fn subgroup_scalar_examples() {
        let chain = so3_x3_chain();
        // the Casimir symbol is a fortiori a subgroup scalar
        let cas = &(&x(3, 0).pow(2) + &x(3, 1).pow(2)) + &x(3, 2).pow(2);
        assert!(is_subgroup_scalar(&chain, &cas).unwrap());
        // x1^2 + x2^2 is rotated into itself
        let f = &x(3, 0).pow(2) + &x(3, 1).pow(2);
        assert!(is_subgroup_scalar(&chain, &f).unwrap());
        // x1 is not
        assert!(!is_subgroup_scalar(&chain, &x(3, 0)).unwrap());
    }

    #[test]
    fn subgroup_scalars_close_under_bracket() {
        // pb of two subgroup scalars is again a subgroup scalar
        let chain = so3_x3_chain();
        let r2 = &x(3, 0).pow(2) + &x(3, 1).pow(2);
        let z = x(3, 2);
        let mut rng = SplitMix64::new(40);
        for _ in 0..6 {
            let combine = |rng: &mut SplitMix64| {
                let a = c(rng.nonzero_int(3));
                let b = c(rng.nonzero_int(3));
                let e1 = rng.below(2) as u32 + 1;
                let e2 = rng.below(2) as u32;
                &r2.pow(e1).scale(&a) + &z.pow(e2).scale(&b)
            };
            let f = combine(&mut rng);
            let g = combine(&mut rng);
            let pb = chain.ambient().berezin_bracket(&f, &g);
            assert!(is_subgroup_scalar(&chain, &pb).unwrap());
        }
    }

    #[test]
    fn grading_split_examples() {
        let f = &(&x(5, 0).pow(2) * &x(5, 4)) + &(&x(5, 0) * &x(5, 1));
        let comp: BTreeSet<usize> = [4].into_iter().collect();
        let parts = grading_split(&f, &comp);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], &x(5, 0).pow(2) * &x(5, 4));
        assert_eq!(parts[&0], &x(5, 0) * &x(5, 1));
        // empty complement: everything in degree 0
        let parts = grading_split(&f, &BTreeSet::new());
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&0], f);
    }

    #[test]
    fn independence_examples() {
        let polys = vec![x(2, 0), x(2, 1)];
        assert_eq!(functional_independence(&polys, 2, 9).unwrap(), 2);
        let dependent = vec![x(2, 0), x(2, 0).pow(2)];
        assert_eq!(functional_independence(&dependent, 2, 9).unwrap(), 1);
    }

    #[test]
    fn certify_casimir_pair_commutes() {
        let alg = so3();
        let cas = &(&x(3, 0).pow(2) + &x(3, 1).pow(2)) + &x(3, 2).pow(2);
        let cert = certify_commuting(
            &alg,
            &cas,
            &x(3, 2),
            &OracleBudget::default(),
            ("casimir".into(), "x3".into()),
        )
        .unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedCommuting);
        assert!(cert.bracket_vanishes);
        assert!(!cert.oracle_used);
    }

    #[test]
    fn certify_squares_do_not_commute() {
        let alg = so3();
        let cert = certify_commuting(
            &alg,
            &x(3, 0).pow(2),
            &x(3, 1).pow(2),
            &OracleBudget::default(),
            ("x1^2".into(), "x2^2".into()),
        )
        .unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedNonCommuting);
        assert!(!cert.bracket_vanishes);
    }

    #[test]
    fn certify_rejects_inhomogeneous_input() {
        let alg = so3();
        let bad = &x(3, 0) + &x(3, 1).pow(2);
        assert!(matches!(
            certify_commuting(
                &alg,
                &bad,
                &x(3, 2),
                &OracleBudget::default(),
                ("f".into(), "g".into())
            ),
            Err(Error::NonHomogeneous { .. })
        ));
    }

    #[test]
    fn certify_uses_oracle_for_factorizable_pairs() {
        let alg = so3_plus_center();
        // x4 x1 and x4 x1^2: possibly factorizable, oracle decides (commuting)
        let f = &x(4, 3) * &x(4, 0);
        let g = &x(4, 3) * &x(4, 0).pow(2);
        let cert = certify_commuting(
            &alg,
            &f,
            &g,
            &OracleBudget::default(),
            ("f".into(), "g".into()),
        )
        .unwrap();
        assert!(cert.oracle_used);
        assert_eq!(cert.verdict, Verdict::CertifiedCommuting);
        // same pair but with a zero-degree budget: inconclusive
        let tight = OracleBudget {
            max_total_degree: 2,
            max_dim: 6,
        };
        let cert = certify_commuting(&alg, &f, &g, &tight, ("f".into(), "g".into())).unwrap();
        assert!(!cert.oracle_used);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }

    /// Verdicts never contradict the direct enveloping-algebra commutator on
    /// small cases: every monomial pair of degree <= 3 over so(3) and the
    /// Heisenberg algebra.
    #[test]
    fn certify_agrees_with_oracle_on_small_cases() {
        fn monomials(n_vars: usize, deg: u32) -> Vec<Poly> {
            fn rec(
                n_vars: usize,
                deg: u32,
                start: usize,
                acc: &mut Vec<(usize, u32)>,
                out: &mut Vec<crate::poly::Monomial>,
            ) {
                if deg == 0 {
                    out.push(crate::poly::Monomial::from_exps(acc.iter().copied()));
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

        let budget = OracleBudget::default();
        for alg in [so3(), heisenberg()] {
            let grid: Vec<Poly> = (1..=3).flat_map(|d| monomials(3, d)).collect();
            for f in &grid {
                for g in &grid {
                    let cert =
                        certify_commuting(&alg, f, g, &budget, (f.to_string(), g.to_string()))
                            .unwrap();
                    let comm = crate::enveloping::nc_commutator(
                        &alg,
                        &crate::enveloping::symmetrize(&alg, f),
                        &crate::enveloping::symmetrize(&alg, g),
                    );
                    match cert.verdict {
                        Verdict::CertifiedCommuting => {
                            assert!(comm.is_zero(), "{f} vs {g} on {}", alg.name())
                        }
                        Verdict::CertifiedNonCommuting => {
                            assert!(!comm.is_zero(), "{f} vs {g} on {}", alg.name())
                        }
                        Verdict::Inconclusive => {
                            panic!("small cases are always within the oracle budget")
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chain_json_round_trip() {
        let chain = so3_x3_chain();
        let s = chain.to_json_string();
        let back = ReductionChain::from_json_str(&s, None).unwrap();
        assert_eq!(back.ambient(), chain.ambient());
        assert_eq!(back.sub_rows(), chain.sub_rows());
        assert_eq!(back.l_prime(), chain.l_prime());
    }

    #[test]
    fn chain_rejects_grading_overlap() {
        let err = ReductionChain::new(
            so3(),
            vec![unit_row(3, 2)],
            0,
            Some([2].into_iter().collect()),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidChain(msg) if msg.contains("sub-basis")));
    }
}
