//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a mathematical verification fails
//! (Jacobi violations, a false invariance/scalar check, a dependent family,
//! a non-commuting certificate), 2 on input errors (bad JSON, grammar
//! errors, missing files).

use clap::{Parser, Subcommand, ValueEnum};
use labkit::labeling::{self, OracleBudget, ReductionChain};
use labkit::sp6;
use labkit::{enveloping, text, Error, LieAlgebra, Poly, Verdict};
use serde_json::json;
use std::collections::BTreeSet;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "labkit",
    version,
    about = "Exact Lie algebra invariants, Berezin brackets and missing-label analysis"
)]
struct Cli {
    /// Seed for all randomized rank/independence procedures.
    #[arg(long, global = true, env = "LABKIT_SEED", default_value_t = 0)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,

    /// Total-degree cap for the enveloping-algebra commutator fallback in
    /// `certify`.
    #[arg(long, global = true, default_value_t = 8)]
    oracle_budget: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity for every generator triple.
    Validate {
        #[arg(long)]
        algebra: String,
    },
    /// Generic rank of the commutator-table matrix C_ij^k x_k.
    Rank {
        #[arg(long)]
        algebra: String,
    },
    /// Number of independent polynomial invariants N(g).
    InvariantCount {
        #[arg(long)]
        algebra: String,
    },
    /// Apply sum_i a_i Xhat_i to a polynomial.
    ApplyOp {
        #[arg(long)]
        algebra: String,
        /// Comma-separated scalar coefficients, one per generator.
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        f: String,
    },
    /// Is the polynomial annihilated by every generator operator?
    IsInvariant {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        f: String,
    },
    /// Berezin (Lie-Poisson) bracket of two polynomials.
    Berezin {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Symmetrization map into the enveloping algebra (PBW form).
    Symmetrize {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        f: String,
    },
    /// Rewrite a noncommutative polynomial into the PBW basis.
    NormalOrder {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        f: String,
    },
    /// Commutator [f, g] in the enveloping algebra (PBW form).
    Commutator {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Commutative image of a noncommutative polynomial.
    Project {
        #[arg(long)]
        f: String,
        /// Fixes the variable universe; inferred from the letters otherwise.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Missing-label counting for a reduction chain.
    MlpCount {
        #[arg(long)]
        chain: String,
    },
    /// Is the polynomial annihilated by every subalgebra operator?
    ScalarCheck {
        #[arg(long)]
        chain: String,
        #[arg(long)]
        f: String,
    },
    /// Split a polynomial by total degree in the grading variables.
    Split {
        #[arg(long)]
        f: String,
        /// Comma-separated variable indices; defaults to the chain's grading
        /// variables when --chain is given.
        #[arg(long)]
        complement: Option<String>,
        #[arg(long)]
        chain: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Jacobian rank of a family of polynomials (repeat --f).
    Independence {
        #[arg(long)]
        algebra: String,
        #[arg(long = "f", required = true)]
        polys: Vec<String>,
    },
    /// Commutativity certificate for a pair of symmetrized operators.
    Certify {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        chain: Option<String>,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// The sp(6) > su(3) x u(1) pipeline.
    Sp6 {
        #[command(subcommand)]
        cmd: Sp6Command,
    },
}

#[derive(Subcommand)]
enum Sp6Command {
    /// Build everything and verify all claims; exit 1 on any failed check.
    Verify,
    /// Write all intermediate artifacts (algebras, chains, polynomials).
    Export {
        #[arg(long)]
        dir: PathBuf,
    },
}

enum CliError {
    /// Malformed input: exit 2.
    Input(String),
    /// A mathematical check failed: exit 1 (diagnostics already printed).
    Failed,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_stdin() -> Result<String, CliError> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf)?;
    Ok(buf)
}

/// `-` reads stdin, anything else is a file path.
fn read_source(spec: &str) -> Result<String, CliError> {
    if spec == "-" {
        read_stdin()
    } else {
        std::fs::read_to_string(spec)
            .map_err(|e| CliError::Input(format!("cannot read {spec}: {e}")))
    }
}

/// Polynomial argument: `@path` reads a file, `-` reads stdin, anything else
/// is inline text.
fn poly_text(arg: &str) -> Result<String, CliError> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
    } else if arg == "-" {
        read_stdin()
    } else {
        Ok(arg.to_string())
    }
}

fn load_algebra(spec: &str) -> Result<LieAlgebra, CliError> {
    Ok(LieAlgebra::from_json_str(&read_source(spec)?)?)
}

fn load_chain(spec: &str) -> Result<ReductionChain, CliError> {
    let body = read_source(spec)?;
    let base = if spec == "-" {
        None
    } else {
        Path::new(spec).parent().map(Path::to_path_buf)
    };
    Ok(ReductionChain::from_json_str(&body, base.as_deref())?)
}

fn parse_poly_for(alg: &LieAlgebra, arg: &str) -> Result<Poly, CliError> {
    Ok(text::parse_poly(poly_text(arg)?.trim(), alg.dim())?)
}

fn parse_index_list(arg: &str) -> Result<BTreeSet<usize>, CliError> {
    arg.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad variable index '{s}'")))
        })
        .collect()
}

fn emit(cli: &Cli, json: serde_json::Value, text: String) {
    match cli.output {
        OutputMode::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json).expect("serializable")
        ),
        OutputMode::Text => println!("{text}"),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Validate { algebra } => {
            let alg = load_algebra(algebra)?;
            let report = alg.validate();
            emit(
                cli,
                json!({
                    "command": "validate",
                    "algebra": alg.name(),
                    "pass": report.is_ok(),
                    "failures": serde_json::to_value(&report.failures)?,
                }),
                format!("{report}"),
            );
            if report.is_ok() {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Command::Rank { algebra } => {
            let alg = load_algebra(algebra)?;
            let rank = alg.generic_adjoint_rank(cli.seed);
            emit(
                cli,
                json!({"command": "rank", "algebra": alg.name(), "rank": rank, "seed": cli.seed}),
                format!("{rank}"),
            );
            Ok(())
        }
        Command::InvariantCount { algebra } => {
            let alg = load_algebra(algebra)?;
            let n = alg.invariant_count(cli.seed);
            emit(
                cli,
                json!({"command": "invariant-count", "algebra": alg.name(),
                       "invariant_count": n, "seed": cli.seed}),
                format!("{n}"),
            );
            Ok(())
        }
        Command::ApplyOp { algebra, coeffs, f } => {
            let alg = load_algebra(algebra)?;
            let coeffs: Vec<_> = coeffs
                .split(',')
                .map(|s| text::parse_scalar(s.trim()))
                .collect::<Result<_, _>>()?;
            let f = parse_poly_for(&alg, f)?;
            let out = alg.diffop_apply(&coeffs, &f)?;
            emit(
                cli,
                json!({"command": "apply-op", "result": out.to_string()}),
                out.to_string(),
            );
            Ok(())
        }
        Command::IsInvariant { algebra, f } => {
            let alg = load_algebra(algebra)?;
            let f = parse_poly_for(&alg, f)?;
            let inv = alg.is_invariant(&f);
            emit(
                cli,
                json!({"command": "is-invariant", "invariant": inv}),
                format!("{inv}"),
            );
            if inv {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Command::Berezin { algebra, f, g } => {
            let alg = load_algebra(algebra)?;
            let f = parse_poly_for(&alg, f)?;
            let g = parse_poly_for(&alg, g)?;
            let pb = alg.berezin_bracket(&f, &g);
            emit(
                cli,
                json!({"command": "berezin", "result": pb.to_string(),
                       "term_count": pb.term_count()}),
                pb.to_string(),
            );
            Ok(())
        }
        Command::Symmetrize { algebra, f } => {
            let alg = load_algebra(algebra)?;
            let f = parse_poly_for(&alg, f)?;
            let out = enveloping::symmetrize(&alg, &f);
            emit(
                cli,
                json!({"command": "symmetrize", "result": out.to_string()}),
                out.to_string(),
            );
            Ok(())
        }
        Command::NormalOrder { algebra, f } => {
            let alg = load_algebra(algebra)?;
            let p = text::parse_ncpoly(poly_text(f)?.trim(), alg.dim())?;
            let out = enveloping::normal_order(&alg, &p);
            emit(
                cli,
                json!({"command": "normal-order", "result": out.to_string()}),
                out.to_string(),
            );
            Ok(())
        }
        Command::Commutator { algebra, f, g } => {
            let alg = load_algebra(algebra)?;
            let a = text::parse_ncpoly(poly_text(f)?.trim(), alg.dim())?;
            let b = text::parse_ncpoly(poly_text(g)?.trim(), alg.dim())?;
            let out = enveloping::nc_commutator(&alg, &a, &b);
            emit(
                cli,
                json!({"command": "commutator", "result": out.to_string()}),
                out.to_string(),
            );
            Ok(())
        }
        Command::Project { f, algebra } => {
            let body = poly_text(f)?;
            let p = match algebra {
                Some(spec) => {
                    let alg = load_algebra(spec)?;
                    text::parse_ncpoly(body.trim(), alg.dim())?
                }
                None => text::parse_ncpoly(body.trim(), u32::MAX as usize)?,
            };
            let out = enveloping::project(&p);
            emit(
                cli,
                json!({"command": "project", "result": out.to_string()}),
                out.to_string(),
            );
            Ok(())
        }
        Command::MlpCount { chain } => {
            let chain = load_chain(chain)?;
            match labeling::mlp_count(&chain, cli.seed) {
                Ok(report) => {
                    let (a, b) = report.ml2_expressions();
                    emit(
                        cli,
                        json!({"command": "mlp-count",
                               "report": serde_json::to_value(&report)?,
                               "ml2_expressions": [a, b]}),
                        format!("{report}"),
                    );
                    Ok(())
                }
                Err(e @ (Error::HalfIntegerLabels(_) | Error::InvalidChain(_))) => {
                    eprintln!("check failed: {e}");
                    Err(CliError::Failed)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::ScalarCheck { chain, f } => {
            let chain = load_chain(chain)?;
            let f = text::parse_poly(poly_text(f)?.trim(), chain.ambient().dim())?;
            let ok = labeling::is_subgroup_scalar(&chain, &f)?;
            emit(
                cli,
                json!({"command": "scalar-check", "subgroup_scalar": ok}),
                format!("{ok}"),
            );
            if ok {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Command::Split {
            f,
            complement,
            chain,
            algebra,
        } => {
            let (vars, poly) = match (complement, chain) {
                (Some(list), _) => {
                    let vars = parse_index_list(list)?;
                    let poly = match algebra {
                        Some(spec) => {
                            let alg = load_algebra(spec)?;
                            text::parse_poly(poly_text(f)?.trim(), alg.dim())?
                        }
                        None => text::parse_poly_infer(poly_text(f)?.trim())?,
                    };
                    (vars, poly)
                }
                (None, Some(spec)) => {
                    let chain = load_chain(spec)?;
                    let vars = chain
                        .complement_vars()
                        .cloned()
                        .ok_or_else(|| CliError::Input("chain has no grading variables".into()))?;
                    let poly = text::parse_poly(poly_text(f)?.trim(), chain.ambient().dim())?;
                    (vars, poly)
                }
                (None, None) => {
                    return Err(CliError::Input(
                        "split needs --complement or a --chain with grading variables".into(),
                    ))
                }
            };
            let parts = labeling::grading_split(&poly, &vars);
            let mut obj = serde_json::Map::new();
            let mut lines = Vec::new();
            for (k, p) in &parts {
                obj.insert(k.to_string(), json!(p.to_string()));
                lines.push(format!("{k}: {p}"));
            }
            emit(
                cli,
                json!({"command": "split", "components": obj}),
                lines.join("\n"),
            );
            Ok(())
        }
        Command::Independence { algebra, polys } => {
            let alg = load_algebra(algebra)?;
            let parsed: Vec<Poly> = polys
                .iter()
                .map(|p| parse_poly_for(&alg, p))
                .collect::<Result<_, _>>()?;
            let rank = labeling::functional_independence(&parsed, alg.dim(), cli.seed)?;
            let independent = rank == parsed.len();
            emit(
                cli,
                json!({"command": "independence", "rank": rank,
                       "count": parsed.len(), "independent": independent,
                       "seed": cli.seed}),
                format!("rank {rank} of {} polynomials", parsed.len()),
            );
            if independent {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Command::Certify {
            algebra,
            chain,
            f,
            g,
        } => {
            let alg = match (algebra, chain) {
                (Some(spec), _) => load_algebra(spec)?,
                (None, Some(spec)) => load_chain(spec)?.ambient().clone(),
                (None, None) => {
                    return Err(CliError::Input("certify needs --algebra or --chain".into()))
                }
            };
            let fp = parse_poly_for(&alg, f)?;
            let gp = parse_poly_for(&alg, g)?;
            let budget = OracleBudget {
                max_total_degree: cli.oracle_budget,
                ..OracleBudget::default()
            };
            let cert =
                labeling::certify_commuting(&alg, &fp, &gp, &budget, ("f".into(), "g".into()))?;
            emit(
                cli,
                serde_json::to_value(&cert)?,
                format!(
                    "verdict: {:?} (bracket vanishes: {}, oracle used: {})",
                    cert.verdict, cert.bracket_vanishes, cert.oracle_used
                ),
            );
            if cert.verdict == Verdict::CertifiedCommuting {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Command::Sp6 { cmd } => match cmd {
            Sp6Command::Verify => {
                let report = sp6::verify_all(cli.seed)?;
                emit(cli, serde_json::to_value(&report)?, format!("{report}"));
                if report.pass {
                    Ok(())
                } else {
                    Err(CliError::Failed)
                }
            }
            Sp6Command::Export { dir } => {
                let written = export_sp6(dir)?;
                emit(
                    cli,
                    json!({"command": "sp6 export", "written": written}),
                    written.join("\n"),
                );
                Ok(())
            }
        },
    }
}

fn export_sp6(dir: &Path) -> Result<Vec<String>, CliError> {
    let art = sp6::build_artifacts()?;
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut save = |name: &str, body: String| -> Result<(), CliError> {
        let path = dir.join(name);
        std::fs::write(&path, body + "\n")?;
        written.push(path.display().to_string());
        Ok(())
    };
    save("sp6.json", art.algebra.to_json_string())?;
    save("sp6_h.json", art.h_algebra.to_json_string())?;
    save("chain.json", art.chain.to_json_string())?;
    save("chain_h.json", art.h_chain.to_json_string())?;
    for (name, poly) in [
        ("c2.txt", &art.casimirs[0]),
        ("c4.txt", &art.casimirs[1]),
        ("c6.txt", &art.casimirs[2]),
        ("c2_h.txt", &art.h_basis_casimirs[0]),
        ("c4_h.txt", &art.h_basis_casimirs[1]),
        ("c6_h.txt", &art.h_basis_casimirs[2]),
        ("label_2_2.txt", &art.labels[0]),
        ("label_4_2.txt", &art.labels[1]),
        ("label_2_4.txt", &art.labels[2]),
        ("sub_c2.txt", &art.sub_casimirs[0]),
        ("sub_c3.txt", &art.sub_casimirs[1]),
        ("sub_h3.txt", &art.sub_casimirs[2]),
    ] {
        save(name, poly.to_string())?;
    }
    Ok(written)
}
