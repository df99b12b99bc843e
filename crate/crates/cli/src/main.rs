//! Command-line front end: matrix I/O plus analysis subcommands mapping
//! one-to-one onto the library operations. Every invocation prints a JSON
//! report on standard output. Exit codes: 0 success, 2 infeasible request,
//! 1 input or numeric error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use spectral_range::camion_hoffman;
use spectral_range::cycles::{self, Level};
use spectral_range::eigen_set;
use spectral_range::error::{Error, ErrorKind};
use spectral_range::graph::{ClassAccess, ClassKind};
use spectral_range::io;
use spectral_range::matrix::{NonnegMatrix, RowUniformMatrix};
use spectral_range::oracle::{self, OracleBudget};
use spectral_range::perron_range;
use spectral_range::scaling;
use spectral_range::sunflower;

#[derive(Parser)]
#[command(
    name = "spectral-range",
    about = "Perron roots and eigenvalue sets of matrices with prescribed graph and row sums",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Auxiliary matrix of a real or complex matrix
    Aux { matrix: PathBuf },
    /// Frobenius normal form with class metadata
    Fnf { matrix: PathBuf },
    /// Maximal and minimal geometric cycle means
    Means { matrix: PathBuf },
    /// Strict visualizing (default) or antivisualizing vector
    Visualize {
        matrix: PathBuf,
        /// Tight exactly on the critical edges (the default)
        #[arg(long, conflicts_with = "anti")]
        strict: bool,
        /// Tight exactly on the anticritical edges
        #[arg(long)]
        anti: bool,
    },
    /// Scaling with all entries at most the level and row sums at least it
    #[command(name = "sum-visualize")]
    SumVisualize {
        matrix: PathBuf,
        #[arg(long)]
        level: f64,
    },
    /// Sunflower subgraph through the given cycle(s)
    Sunflower {
        rumatrix: PathBuf,
        /// 1-based cycle, comma-separated (repeat for one cycle per
        /// nontrivial final class)
        #[arg(long = "cycle", required = true)]
        cycles: Vec<String>,
    },
    /// Achievable Perron roots
    Eta {
        #[command(subcommand)]
        action: EtaAction,
    },
    /// Achievable complex eigenvalues
    Sigma {
        #[command(subcommand)]
        action: SigmaAction,
    },
    /// Regularity of the fixed-modulus class, with certificate or witness
    #[command(name = "camion-hoffman")]
    CamionHoffman { matrix: PathBuf },
    /// Brute-force cross-checks
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
}

#[derive(Subcommand)]
enum EtaAction {
    /// The range with endpoint attainment flags
    Describe { rumatrix: PathBuf },
    /// A matrix realizing the target Perron root
    Realize {
        rumatrix: PathBuf,
        #[arg(long)]
        target: f64,
    },
}

#[derive(Subcommand)]
enum SigmaAction {
    /// The full modulus-set description
    Describe { rumatrix: PathBuf },
    /// Membership of 0 with a singular witness when possible
    Zero { rumatrix: PathBuf },
    /// A matrix and eigenpair realizing the target eigenvalue
    Realize {
        rumatrix: PathBuf,
        /// target eigenvalue as re,im
        #[arg(long, value_parser = parse_complex)]
        lambda: Complex64,
    },
}

#[derive(Subcommand)]
enum OracleCheck {
    /// Exhaustive simple-cycle enumeration vs the production cycle means
    #[command(name = "cycle-means")]
    CycleMeans { matrix: PathBuf },
    /// All permutation products vs the matching-based classification
    #[command(name = "diagonal-products")]
    DiagonalProducts { rumatrix: PathBuf },
    /// All sunflower subgraphs vs the extremal parameters
    Sunflowers { rumatrix: PathBuf },
    /// Random preimages of the auxiliary map, checked to round-trip
    Preimage {
        rumatrix: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// LU determinant of a (complex) matrix
    Determinant { matrix: PathBuf },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected re,im".into());
    }
    let re: f64 = parts[0].trim().parse().map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = parts[1].trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

fn parse_cycle(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse { message: format!("bad cycle node {tok:?}: {e}") })
                .and_then(|v| {
                    if v == 0 {
                        Err(Error::Parse { message: "cycle nodes are 1-based".into() })
                    } else {
                        Ok(v - 1)
                    }
                })
        })
        .collect()
}

fn load_nonneg(path: &PathBuf) -> Result<NonnegMatrix, Error> {
    io::read_matrix_file(path)?.into_nonneg()
}

fn load_row_uniform(path: &PathBuf) -> Result<RowUniformMatrix, Error> {
    io::read_matrix_file(path)?.into_row_uniform()
}

fn fnf_to_json(fnf: &spectral_range::graph::FrobeniusForm) -> Value {
    json!({
        "permutation": fnf.permutation.iter().map(|&v| v + 1).collect::<Vec<_>>(),
        "classes": fnf.classes.iter()
            .map(|c| c.iter().map(|&v| v + 1).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "kind": fnf.class_kind.iter()
            .map(|&k| if k == ClassKind::Trivial { "trivial" } else { "nontrivial" })
            .collect::<Vec<_>>(),
        "access": fnf.class_access.iter()
            .map(|&a| if a == ClassAccess::Final { "final" } else { "transient" })
            .collect::<Vec<_>>(),
    })
}

fn range_to_json(r: &perron_range::PerronRange) -> Value {
    json!({
        "lower": r.lower,
        "upper": r.upper,
        "lower_attained": r.lower_attained,
        "upper_attained": r.upper_attained,
        "degenerate": r.degenerate,
        "interval": r.describe(),
    })
}

fn witness_to_json(w: &eigen_set::EigenWitness) -> Value {
    json!({
        "matrix": io::complex_to_value(&w.matrix),
        "eigenvalue": [w.eigenvalue.re, w.eigenvalue.im],
        "eigenvector": w.eigenvector.as_ref().map(|v| {
            v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()
        }),
    })
}

fn seed_from_env() -> u64 {
    std::env::var("SPECTRAL_RANGE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| OracleBudget::default().rng_seed)
}

struct Report {
    command: &'static str,
    inputs: Value,
    result: Value,
    diagnostics: Value,
}

fn run(cli: Cli) -> Result<Report, (Error, &'static str)> {
    match cli.command {
        Command::Aux { matrix } => {
            let input = io::read_matrix_file(&matrix).map_err(|e| (e, "aux"))?;
            let b = match input {
                io::MatrixInput::Complex(c) => c.aux(),
                io::MatrixInput::Real(a) => a.aux(),
                io::MatrixInput::RowUniform(b) => b.as_matrix().aux(),
            };
            Ok(Report {
                command: "aux",
                inputs: json!({ "matrix": matrix }),
                result: io::row_uniform_to_value(&b),
                diagnostics: Value::Null,
            })
        }
        Command::Fnf { matrix } => {
            let a = load_nonneg(&matrix).map_err(|e| (e, "fnf"))?;
            Ok(Report {
                command: "fnf",
                inputs: json!({ "matrix": matrix }),
                result: fnf_to_json(&a.frobenius_form()),
                diagnostics: Value::Null,
            })
        }
        Command::Means { matrix } => {
            let a = load_nonneg(&matrix).map_err(|e| (e, "means"))?;
            let r = cycles::cycle_means(&a);
            Ok(Report {
                command: "means",
                inputs: json!({ "matrix": matrix }),
                result: json!({ "mu": r.mu, "nu": r.nu, "has_cycle": r.has_cycle }),
                diagnostics: Value::Null,
            })
        }
        Command::Visualize { matrix, strict: _, anti } => {
            let a = load_nonneg(&matrix).map_err(|e| (e, "visualize"))?;
            let level = if anti { Level::Min } else { Level::Max };
            let x = (if anti {
                scaling::strict_antivisualizing_vector(&a)
            } else {
                scaling::strict_visualizing_vector(&a)
            })
            .map_err(|e| (e, "visualize"))?;
            let r = cycles::cycle_means(&a);
            let mean = if anti { r.nu } else { r.mu };
            let crit = cycles::critical_graph(&a, level).map_err(|e| (e, "visualize"))?;
            Ok(Report {
                command: "visualize",
                inputs: json!({ "matrix": matrix, "mode": if anti { "anti" } else { "strict" } }),
                result: json!({
                    "vector": x.values(),
                    "cycle_mean": mean,
                    "tight_edges": crit.edges.iter()
                        .map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
                    "strict_nodes": crit.strict_nodes.iter()
                        .map(|&v| v + 1).collect::<Vec<_>>(),
                }),
                diagnostics: Value::Null,
            })
        }
        Command::SumVisualize { matrix, level } => {
            let a = load_nonneg(&matrix).map_err(|e| (e, "sum-visualize"))?;
            let x = scaling::sum_visualize(&a, level).map_err(|e| (e, "sum-visualize"))?;
            let scaled = x.conjugate(&a);
            Ok(Report {
                command: "sum-visualize",
                inputs: json!({ "matrix": matrix, "level": level }),
                result: json!({
                    "vector": x.values(),
                    "scaled": io::nonneg_to_value(&scaled),
                }),
                diagnostics: json!({
                    "max_entry": scaled.rows().iter().flatten().cloned().fold(0.0, f64::max),
                    "min_row_sum": (0..scaled.n()).map(|i| scaled.row_sum(i))
                        .fold(f64::INFINITY, f64::min),
                }),
            })
        }
        Command::Sunflower { rumatrix, cycles: raw } => {
            let b = load_row_uniform(&rumatrix).map_err(|e| (e, "sunflower"))?;
            let chosen: Vec<Vec<usize>> = raw
                .iter()
                .map(|s| parse_cycle(s))
                .collect::<Result<_, _>>()
                .map_err(|e| (e, "sunflower"))?;
            let s = if chosen.len() == 1 && b.is_irreducible() {
                sunflower::simple_sunflower(&b.as_matrix(), &chosen[0])
            } else {
                sunflower::thin_sunflower(&b, &chosen)
            }
            .map_err(|e| (e, "sunflower"))?;
            let params = sunflower::extremal_params(&b);
            Ok(Report {
                command: "sunflower",
                inputs: json!({ "rumatrix": rumatrix, "cycles": raw }),
                result: json!({
                    "out_edges": s.out_edges().iter()
                        .map(|o| o.map(|v| v + 1)).collect::<Vec<_>>(),
                    "matrix": io::nonneg_to_value(&s.to_matrix()),
                    "max_cycle_mean": s.max_cycle_mean(),
                }),
                diagnostics: json!({ "upper": params.upper, "lower": params.lower }),
            })
        }
        Command::Eta { action } => match action {
            EtaAction::Describe { rumatrix } => {
                let b = load_row_uniform(&rumatrix).map_err(|e| (e, "eta describe"))?;
                let r = perron_range::perron_root_range(&b);
                Ok(Report {
                    command: "eta describe",
                    inputs: json!({ "rumatrix": rumatrix }),
                    result: range_to_json(&r),
                    diagnostics: Value::Null,
                })
            }
            EtaAction::Realize { rumatrix, target } => {
                let b = load_row_uniform(&rumatrix).map_err(|e| (e, "eta realize"))?;
                let real = perron_range::realize_perron_root(&b, target)
                    .map_err(|e| (e, "eta realize"))?;
                let path = match &real.path {
                    perron_range::RealizationPath::UniformSplit => json!({ "kind": "uniform" }),
                    perron_range::RealizationPath::EndpointBlend { epsilon } => {
                        json!({ "kind": "endpoint-blend", "epsilon": epsilon })
                    }
                    perron_range::RealizationPath::ClosedForm {
                        free_row,
                        free_weight,
                        eigenvector,
                        epsilon,
                    } => json!({
                        "kind": "closed-form",
                        "free_row": free_row + 1,
                        "free_weight": free_weight,
                        "eigenvector": eigenvector,
                        "epsilon": epsilon,
                    }),
                    perron_range::RealizationPath::Bisection { lambda, epsilon, steps } => json!({
                        "kind": "bisection",
                        "lambda": lambda,
                        "epsilon": epsilon,
                        "steps": steps,
                    }),
                };
                Ok(Report {
                    command: "eta realize",
                    inputs: json!({ "rumatrix": rumatrix, "target": target }),
                    result: json!({
                        "matrix": io::nonneg_to_value(&real.matrix),
                        "perron_root": real.perron_root,
                    }),
                    diagnostics: json!({ "path": path }),
                })
            }
        },
        Command::Sigma { action } => match action {
            SigmaAction::Describe { rumatrix } => {
                let b = load_row_uniform(&rumatrix).map_err(|e| (e, "sigma describe"))?;
                let s = eigen_set::sigma_describe(&b);
                Ok(Report {
                    command: "sigma describe",
                    inputs: json!({ "rumatrix": rumatrix }),
                    result: s.to_json(),
                    diagnostics: json!({ "pretty": s.describe() }),
                })
            }
            SigmaAction::Zero { rumatrix } => {
                let b = load_row_uniform(&rumatrix).map_err(|e| (e, "sigma zero"))?;
                let z = eigen_set::zero_in_sigma(&b);
                Ok(Report {
                    command: "sigma zero",
                    inputs: json!({ "rumatrix": rumatrix }),
                    result: json!({
                        "member": z.member,
                        "witness": z.witness.as_ref().map(witness_to_json),
                    }),
                    diagnostics: Value::Null,
                })
            }
            SigmaAction::Realize { rumatrix, lambda } => {
                let b = load_row_uniform(&rumatrix).map_err(|e| (e, "sigma realize"))?;
                let w = eigen_set::realize_eigenvalue_any(&b, lambda)
                    .map_err(|e| (e, "sigma realize"))?;
                Ok(Report {
                    command: "sigma realize",
                    inputs: json!({ "rumatrix": rumatrix, "lambda": [lambda.re, lambda.im] }),
                    result: witness_to_json(&w),
                    diagnostics: Value::Null,
                })
            }
        },
        Command::CamionHoffman { matrix } => {
            let a = load_nonneg(&matrix).map_err(|e| (e, "camion-hoffman"))?;
            let v = camion_hoffman::decide(&a);
            let m_matrix = camion_hoffman::m_matrix_check(&a);
            Ok(Report {
                command: "camion-hoffman",
                inputs: json!({ "matrix": matrix }),
                result: camion_hoffman::verdict_to_json(&v),
                diagnostics: json!({ "m_matrix_check": m_matrix }),
            })
        }
        Command::Oracle { check } => run_oracle(check),
    }
}

fn run_oracle(check: OracleCheck) -> Result<Report, (Error, &'static str)> {
    let budget = OracleBudget { rng_seed: seed_from_env(), ..OracleBudget::default() };
    match check {
        OracleCheck::CycleMeans { matrix } => {
            let a = load_nonneg(&matrix).map_err(|e| (e, "oracle cycle-means"))?;
            let e = oracle::enumerate_cycle_means(&a, &budget)
                .map_err(|e| (e, "oracle cycle-means"))?;
            let prod = cycles::cycle_means(&a);
            let agree = (e.mu - prod.mu).abs() <= 1e-10 * prod.mu.max(1.0)
                && (e.nu - prod.nu).abs() <= 1e-10 * prod.nu.max(1.0);
            Ok(Report {
                command: "oracle cycle-means",
                inputs: json!({ "matrix": matrix }),
                result: json!({
                    "mu": e.mu,
                    "nu": e.nu,
                    "cycles": e.cycles.iter().map(|(nodes, mean)| json!({
                        "nodes": nodes.iter().map(|&v| v + 1).collect::<Vec<_>>(),
                        "mean": mean,
                    })).collect::<Vec<_>>(),
                    "agrees_with_production": agree,
                }),
                diagnostics: json!({ "production_mu": prod.mu, "production_nu": prod.nu }),
            })
        }
        OracleCheck::DiagonalProducts { rumatrix } => {
            let b = load_row_uniform(&rumatrix).map_err(|e| (e, "oracle diagonal-products"))?;
            let products = oracle::enumerate_diagonal_products(&b, &budget)
                .map_err(|e| (e, "oracle diagonal-products"))?;
            let classified = eigen_set::diagonal_product_count(&b);
            let expected = match products.len() {
                0 => eigen_set::DiagonalProductCount::Zero,
                1 => eigen_set::DiagonalProductCount::One,
                _ => eigen_set::DiagonalProductCount::Many,
            };
            Ok(Report {
                command: "oracle diagonal-products",
                inputs: json!({ "rumatrix": rumatrix }),
                result: json!({
                    "count": products.len(),
                    "products": products.iter().take(100).map(|(p, v)| json!({
                        "permutation": p.iter().map(|&c| c + 1).collect::<Vec<_>>(),
                        "product": v,
                    })).collect::<Vec<_>>(),
                    "agrees_with_production": classified == expected,
                }),
                diagnostics: Value::Null,
            })
        }
        OracleCheck::Sunflowers { rumatrix } => {
            let b = load_row_uniform(&rumatrix).map_err(|e| (e, "oracle sunflowers"))?;
            let all =
                oracle::enumerate_sunflowers(&b, &budget).map_err(|e| (e, "oracle sunflowers"))?;
            let hi = all.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
            let lo = all.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
            let params = sunflower::extremal_params(&b);
            let agree = (hi - params.upper).abs() <= 1e-10 * params.upper.max(1.0)
                && (lo - params.lower).abs() <= 1e-10 * params.lower.max(1.0);
            Ok(Report {
                command: "oracle sunflowers",
                inputs: json!({ "rumatrix": rumatrix }),
                result: json!({
                    "count": all.len(),
                    "max_of_means": hi,
                    "min_of_means": lo,
                    "agrees_with_production": agree,
                }),
                diagnostics: json!({ "upper": params.upper, "lower": params.lower }),
            })
        }
        OracleCheck::Preimage { rumatrix, samples } => {
            let b = load_row_uniform(&rumatrix).map_err(|e| (e, "oracle preimage"))?;
            let range = perron_range::perron_root_range(&b);
            let mut roots = Vec::new();
            let mut all_round_trip = true;
            for k in 0..samples {
                let a = oracle::random_aux_preimage(&b, budget.rng_seed.wrapping_add(k as u64));
                all_round_trip &= a.aux().approx_eq(&b);
                roots.push(cycles::perron_root(&a));
            }
            let inside = roots.iter().all(|&r| {
                r >= range.lower - 1e-9 * range.lower.max(1.0)
                    && r <= range.upper + 1e-9 * range.upper.max(1.0)
            });
            Ok(Report {
                command: "oracle preimage",
                inputs: json!({ "rumatrix": rumatrix, "samples": samples, "seed": budget.rng_seed }),
                result: json!({
                    "perron_roots": roots,
                    "all_round_trip": all_round_trip,
                    "all_inside_range": inside,
                }),
                diagnostics: range_to_json(&range),
            })
        }
        OracleCheck::Determinant { matrix } => {
            let c = io::read_matrix_file(&matrix)
                .and_then(io::MatrixInput::into_complex)
                .map_err(|e| (e, "oracle determinant"))?;
            let det =
                oracle::small_determinant(&c, &budget).map_err(|e| (e, "oracle determinant"))?;
            Ok(Report {
                command: "oracle determinant",
                inputs: json!({ "matrix": matrix }),
                result: json!({ "determinant": [det.re, det.im] }),
                diagnostics: Value::Null,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            let out = json!({
                "command": report.command,
                "inputs": report.inputs,
                "result": report.result,
                "diagnostics": report.diagnostics,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable report"));
            ExitCode::SUCCESS
        }
        Err((err, command)) => {
            let out = json!({
                "command": command,
                "error": err.to_string(),
                "kind": match err.kind() {
                    ErrorKind::Infeasible => "infeasible",
                    ErrorKind::InvalidInput => "invalid-input",
                    ErrorKind::Numeric => "numeric",
                    ErrorKind::Budget => "budget",
                },
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable report"));
            eprintln!("error: {err}");
            if err.kind() == ErrorKind::Infeasible {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
