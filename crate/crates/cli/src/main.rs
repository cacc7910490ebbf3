//! Command-line front end: named experiments, figure-curve CSV/JSON data
//! and the acceptance suites.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::process::ExitCode;
use uqm_core::acceptance;
use uqm_core::channels;
use uqm_core::figures::{figure, FigureParams, FigureTable, FIGURE_IDS};
use uqm_core::linalg::{c, cr, CVector};
use uqm_core::meas;
use uqm_core::oracle::Accumulator;
use uqm_core::rng::haar_unitary;
use uqm_core::usd;
use uqm_core::RandomStream;

/// Unambiguous-measurement constructions: discrimination, comparison and
/// identification of states, channels and measurements.
#[derive(Parser)]
#[command(name = "uqm", version, about)]
struct Cli {
    /// Seed for every randomized quantity.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Output format (figures default to csv, scalar commands to json).
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the curve data of a named figure as CSV (or JSON).
    Figure(FigureArgs),
    /// Unambiguous state discrimination.
    #[command(subcommand)]
    Usd(UsdCommand),
    /// Channel discrimination and comparison.
    #[command(subcommand)]
    Channels(ChannelsCommand),
    /// Comparison of sharp observables.
    #[command(subcommand)]
    Meas(MeasCommand),
    /// Run an acceptance suite; nonzero exit on any failing criterion.
    Acceptance {
        /// all, usd, comparison, coherent, ui, channels, meas or properties.
        suite: String,
    },
}

#[derive(Args)]
struct FigureArgs {
    /// Figure identifier: 4.3, 4.4, 4.8, 4.15, 4.16, 4.17, 4.18, C.2, C.4
    /// or C.5.
    id: String,
    /// Grid as start:end:step for the x axis.
    #[arg(long)]
    range: Option<String>,
    /// Comma-separated round counts (figures 4.15 and 4.16).
    #[arg(long)]
    rounds: Option<String>,
    /// Technical-noise dispersion (figures 4.17 and 4.18).
    #[arg(long)]
    sigma: Option<f64>,
    /// Detector efficiency (appendix figures).
    #[arg(long)]
    efficiency: Option<f64>,
    /// Mean photon number per pulse (appendix figures).
    #[arg(long)]
    intensity: Option<f64>,
}

#[derive(Subcommand)]
enum UsdCommand {
    /// Optimal two-pure-state discrimination at overlap λ and prior η₁.
    Idp {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        eta1: f64,
    },
}

#[derive(Subcommand)]
enum ChannelsCommand {
    /// Completely bounded process fidelity and optimal unambiguous
    /// discrimination of two unitary channels.
    Fidelity {
        /// Dimension of the seeded Haar pair.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Use diag(e^{iθ}) against the identity instead of a Haar pair
        /// (comma-separated phases in radians).
        #[arg(long)]
        phases: Option<String>,
        /// Prior of the first channel.
        #[arg(long, default_value_t = 0.5)]
        eta_u: f64,
    },
    /// Optimal unambiguous comparison of two unknown unitary channels.
    Compare {
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Monte Carlo sample count for the average-success estimate.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum MeasCommand {
    /// Single-shot comparison of labeled sharp observables.
    CompareLabeled {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
    },
    /// Two-shot comparison of unlabeled qubit observables at Bloch angle θ.
    CompareUnlabeled {
        /// Angle between the measured bases in radians.
        #[arg(long)]
        theta: f64,
    },
    /// Numeric audit of the four-qubit subspace facts.
    AuditSubspaces,
}

fn tolerance() -> f64 {
    std::env::var("UQM_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(uqm_core::DEFAULT_TOL)
}

fn parse_range(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range must be start:end:step, got {s}"));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    let nums = nums.map_err(|e| format!("bad range {s}: {e}"))?;
    Ok((nums[0], nums[1], nums[2]))
}

fn parse_rounds(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad rounds list: {e}"))
        })
        .collect()
}

struct Output {
    path: Option<std::path::PathBuf>,
}

impl Output {
    fn write(&self, content: &str) -> std::io::Result<()> {
        match &self.path {
            Some(p) => std::fs::write(p, content),
            None => {
                std::io::stdout().write_all(content.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn meta(seed: u64) -> Value {
    json!({
        "seed": seed,
        "tolerance": tolerance(),
        "version": env!("CARGO_PKG_VERSION"),
    })
}

/// Scalar results as a flat object plus meta, or a one-row CSV.
fn emit_scalars(
    out: &Output,
    format: &str,
    seed: u64,
    fields: &[(&str, Value)],
) -> std::io::Result<()> {
    if format == "json" {
        let mut map = Map::new();
        for (k, v) in fields {
            map.insert((*k).to_string(), v.clone());
        }
        map.insert("meta".into(), meta(seed));
        out.write(&format!(
            "{}\n",
            serde_json::to_string_pretty(&Value::Object(map)).unwrap()
        ))
    } else {
        let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
        let row: Vec<String> = fields
            .iter()
            .map(|(_, v)| match v {
                Value::Number(n) if n.is_f64() => format!("{:.11e}", n.as_f64().unwrap()),
                other => other.to_string().trim_matches('"').to_string(),
            })
            .collect();
        out.write(&format!("{}\n{}\n", header.join(","), row.join(",")))
    }
}

fn emit_table(out: &Output, format: &str, seed: u64, table: &FigureTable) -> std::io::Result<()> {
    if format == "json" {
        let value = json!({
            "columns": table.columns,
            "rows": table.rows,
            "meta": meta(seed),
        });
        out.write(&format!(
            "{}\n",
            serde_json::to_string_pretty(&value).unwrap()
        ))
    } else {
        out.write(&table.to_csv())
    }
}

fn numeric_failure(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("numeric failure: {e}");
    ExitCode::from(3)
}

fn usage_failure(msg: &str) -> ExitCode {
    eprintln!("usage error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output {
        path: cli.out.clone(),
    };
    let seed = cli.seed;
    let format = cli
        .format
        .clone()
        .unwrap_or_else(|| match &cli.command {
            Command::Figure(_) => "csv".to_string(),
            _ => "json".to_string(),
        });

    match cli.command {
        Command::Figure(args) => {
            if !FIGURE_IDS.contains(&args.id.as_str()) {
                return usage_failure(&format!(
                    "unknown figure id {}; available: {}",
                    args.id,
                    FIGURE_IDS.join(", ")
                ));
            }
            let mut params = FigureParams::default();
            if let Some(r) = &args.range {
                match parse_range(r) {
                    Ok(range) => params.range = Some(range),
                    Err(e) => return usage_failure(&e),
                }
            }
            if let Some(r) = &args.rounds {
                match parse_rounds(r) {
                    Ok(rounds) => params.rounds = Some(rounds),
                    Err(e) => return usage_failure(&e),
                }
            }
            params.sigma = args.sigma;
            params.efficiency = args.efficiency;
            params.intensity = args.intensity;
            let table = match figure(&args.id, &params) {
                Ok(t) => t,
                Err(e) => return numeric_failure(e),
            };
            if emit_table(&out, &format, seed, &table).is_err() {
                return numeric_failure("could not write output");
            }
        }

        Command::Usd(UsdCommand::Idp { lambda, eta1 }) => {
            if !(0.0..=1.0).contains(&lambda) {
                return usage_failure("lambda must lie in [0, 1]");
            }
            let psi1 = CVector::from_vec(vec![cr(1.0), cr(0.0)]);
            let psi2 = CVector::from_vec(vec![cr(lambda), cr((1.0 - lambda * lambda).sqrt())]);
            let sol = match usd::idp_optimal(&psi1, &psi2, eta1) {
                Ok(s) => s,
                Err(e) => return numeric_failure(e),
            };
            // validity judged at the (possibly UQM_TOL-overridden) tolerance
            let tol = tolerance();
            let report = uqm_core::operator::validate_povm(&sol.povm);
            let povm_valid = report.min_eigenvalues.iter().all(|&m| m >= -tol)
                && report.sum_deviation <= tol * sol.povm.dim as f64 * 10.0;
            let fields = [
                ("P_D", json!(sol.p_discrimination)),
                ("regime", json!(sol.regime.as_str())),
                ("lambda", json!(lambda)),
                ("eta1", json!(eta1)),
                ("povm_valid", json!(povm_valid)),
            ];
            if emit_scalars(&out, &format, seed, &fields).is_err() {
                return numeric_failure("could not write output");
            }
        }

        Command::Channels(ChannelsCommand::Fidelity { d, phases, eta_u }) => {
            let (u, v) = if let Some(ph) = &phases {
                let parsed: Result<Vec<f64>, _> =
                    ph.split(',').map(|p| p.trim().parse::<f64>()).collect();
                let parsed = match parsed {
                    Ok(p) => p,
                    Err(e) => return usage_failure(&format!("bad phases: {e}")),
                };
                let dim = parsed.len();
                let v = uqm_core::CMatrix::from_diagonal(&CVector::from_iterator(
                    dim,
                    parsed.iter().map(|&t| c(t.cos(), t.sin())),
                ));
                (uqm_core::linalg::identity(dim), v)
            } else {
                let mut rs = RandomStream::new(seed);
                (haar_unitary(d, &mut rs), haar_unitary(d, &mut rs))
            };
            let sol = match channels::unitary_usd(&u, &v, eta_u, 1.0 - eta_u) {
                Ok(s) => s,
                Err(e) => return numeric_failure(e),
            };
            let ppovm_valid = sol
                .ppovm()
                .map(|p| channels::validate_ppovm(&p).is_valid())
                .unwrap_or(false);
            let fields = [
                ("fidelity", json!(sol.fidelity)),
                ("P_success", json!(sol.p_success)),
                ("eta_u", json!(eta_u)),
                ("ppovm_valid", json!(ppovm_valid)),
            ];
            if emit_scalars(&out, &format, seed, &fields).is_err() {
                return numeric_failure("could not write output");
            }
        }

        Command::Channels(ChannelsCommand::Compare { d, samples }) => {
            let rho = match meas::antisymmetric_test_state(d) {
                Ok(r) => r,
                Err(e) => return numeric_failure(e),
            };
            let mut rs = RandomStream::new(seed);
            let mut acc = Accumulator::new();
            for _ in 0..samples {
                let u = haar_unitary(d, &mut rs);
                let v = haar_unitary(d, &mut rs);
                match channels::comparator_conditional(&u, &v, &rho) {
                    Ok(p) => acc.push(p),
                    Err(e) => return numeric_failure(e),
                }
            }
            let fields = [
                (
                    "average_success",
                    json!(channels::comparator_average_success(d)),
                ),
                ("mc_estimate", json!(acc.mean())),
                ("mc_standard_error", json!(acc.se())),
                ("samples", json!(samples)),
                ("d", json!(d)),
            ];
            if emit_scalars(&out, &format, seed, &fields).is_err() {
                return numeric_failure("could not write output");
            }
        }

        Command::Meas(MeasCommand::CompareLabeled { d, samples }) => {
            let rho = match meas::antisymmetric_test_state(d) {
                Ok(r) => r,
                Err(e) => return numeric_failure(e),
            };
            let cmp = match meas::labeled_compare(d, &rho) {
                Ok(c) => c,
                Err(e) => return numeric_failure(e),
            };
            let mut rs = RandomStream::new(seed);
            let mut acc = Accumulator::new();
            for _ in 0..samples {
                let a = meas::SharpObservable::from_unitary(&haar_unitary(d, &mut rs)).unwrap();
                let b = meas::SharpObservable::from_unitary(&haar_unitary(d, &mut rs)).unwrap();
                acc.push(cmp.q_same(&a, &b));
            }
            let fields = [
                ("average_success", json!(cmp.average_success)),
                ("mc_estimate", json!(acc.mean())),
                ("mc_standard_error", json!(acc.se())),
                ("samples", json!(samples)),
                ("d", json!(d)),
            ];
            if emit_scalars(&out, &format, seed, &fields).is_err() {
                return numeric_failure("could not write output");
            }
        }

        Command::Meas(MeasCommand::CompareUnlabeled { theta }) => {
            let psi = CVector::from_vec(vec![cr(1.0), cr(0.0)]);
            let phi = CVector::from_vec(vec![cr(theta.cos()), cr(theta.sin())]);
            let phi_perp = CVector::from_vec(vec![cr(-theta.sin()), cr(theta.cos())]);
            let a = meas::SharpObservable::from_unitary(&uqm_core::linalg::identity(2)).unwrap();
            let b = match meas::SharpObservable::from_basis(vec![phi, phi_perp]) {
                Ok(b) => b,
                Err(e) => return numeric_failure(e),
            };
            let closed = meas::unlabeled_success(&psi, &b.basis[0]);
            let dense = meas::unlabeled_success_matrix(&a, &b);
            let fields = [
                ("p_success", json!(closed)),
                ("p_success_dense", json!(dense)),
                ("haar_average", json!(4.0 / 9.0)),
                ("theta", json!(theta)),
            ];
            if emit_scalars(&out, &format, seed, &fields).is_err() {
                return numeric_failure("could not write output");
            }
        }

        Command::Meas(MeasCommand::AuditSubspaces) => {
            let audit = match meas::four_qubit_subspace_audit() {
                Ok(a) => a,
                Err(e) => return numeric_failure(e),
            };
            let fields = [
                ("passes", json!(audit.passes())),
                ("dim_totally_symmetric", json!(audit.dim_totally_symmetric)),
                ("dim_kappa_span", json!(audit.dim_kappa_span)),
                ("dim_q12_plus", json!(audit.dim_q12_plus)),
                (
                    "omega_cross_deviation",
                    json!(audit.omega_cross_deviation),
                ),
                (
                    "joint_subspace_deviation",
                    json!(audit.joint_subspace_deviation),
                ),
            ];
            if emit_scalars(&out, &format, seed, &fields).is_err() {
                return numeric_failure("could not write output");
            }
            if !audit.passes() {
                return ExitCode::from(1);
            }
        }

        Command::Acceptance { suite } => {
            let results = match acceptance::run_suite(&suite, seed) {
                Ok(r) => r,
                Err(e) => return usage_failure(&e.to_string()),
            };
            let mut all = true;
            let mut lines = String::new();
            for r in &results {
                lines.push_str(&r.line());
                lines.push('\n');
                all &= r.passed;
            }
            if out.write(&lines).is_err() {
                return numeric_failure("could not write output");
            }
            if !all {
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}
