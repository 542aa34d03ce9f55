mod config;

use clap::{Args, CommandFactory, Parser, Subcommand};
use jch::eigen::SolverConfig;
use jch::hamiltonian::ModelParams;
use jch::perturbative::{compare_to_exact, degenerate_block};
use jch::sweep::{Axis, Format, Observable, SweepSpec};
use jch::{analysis, DimerState, Sector};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "jch",
    version,
    about = "Exact diagonalization of coupled Jaynes-Cummings cavities"
)]
#[command(args_override_self = true)]
struct Cli {
    /// Flat key=value file merged with the flags; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the basis states of a sector as JSON.
    Basis {
        #[arg(long, default_value_t = 2)]
        sites: usize,
        #[arg(long, default_value_t = 2)]
        excitations: u32,
    },
    /// Ground state, variances, decomposition and label at one point.
    Point {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
    },
    /// Polariton-product decomposition of the ground state.
    Decompose {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Full dense spectrum of a sector.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 2)]
        sites: usize,
        #[arg(long, default_value_t = 2)]
        excitations: u32,
        /// Also write the Hamiltonian (upper triangle) as `row col value` lines.
        #[arg(long, value_name = "FILE")]
        coo: Option<PathBuf>,
    },
    /// Evaluate a (Δ/g, A/g) grid and write CSV or JSON lines.
    Sweep(SweepArgs),
    /// Degenerate-line (A = −Δ) closed form compared with the exact ground state.
    DegenerateLimit {
        /// Hopping A in units of g; Δ is set to −A.
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        hop: f64,
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        #[arg(long, default_value_t = 1e-4)]
        g_over_omega_a: f64,
        /// Cavity frequency in units of g; overrides --g-over-omega-a.
        #[arg(long, allow_hyphen_values = true)]
        omega_c: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Detuning Δ = ω_a − ω_c in units of g.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    delta: f64,
    /// Hopping A in units of g.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    hop: f64,
    /// Atom-field coupling, sets the energy unit.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    #[arg(long, default_value_t = 1e-4)]
    g_over_omega_a: f64,
    /// Cavity frequency in units of g; overrides --g-over-omega-a.
    #[arg(long, allow_hyphen_values = true)]
    omega_c: Option<f64>,
}

impl ModelArgs {
    fn params(&self) -> ModelParams<f64> {
        model_params(
            self.delta,
            self.hop,
            self.g,
            self.g_over_omega_a,
            self.omega_c,
        )
    }
}

fn model_params(
    delta: f64,
    hop: f64,
    g: f64,
    ratio: f64,
    omega_c: Option<f64>,
) -> ModelParams<f64> {
    match omega_c {
        Some(wc) => ModelParams::new(wc * g, delta * g, g, hop * g),
        None => ModelParams::with_coupling_ratio(ratio, delta * g, g, hop * g),
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Largest dimension solved densely; larger sectors use Lanczos.
    #[arg(long, default_value_t = jch::DEFAULT_DENSE_LIMIT)]
    dense_limit: usize,
    /// Relative residual tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Lanczos iteration cap (default 10·dim).
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig<f64> {
        SolverConfig {
            dense_limit: self.dense_limit,
            tol: self.tol,
            max_iter: self.max_iter,
            seed: self.seed,
            ..SolverConfig::default()
        }
    }
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, default_value_t = 0.05)]
    eps_mobility: f64,
    #[arg(long, default_value_t = 0.05)]
    eps_particle: f64,
}

impl ThresholdArgs {
    fn thresholds(&self) -> jch::Thresholds {
        jch::Thresholds {
            eps_mobility: self.eps_mobility,
            eps_particle: self.eps_particle,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = -20.0, allow_hyphen_values = true)]
    delta_min: f64,
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    delta_max: f64,
    #[arg(long, default_value_t = 101)]
    delta_steps: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    hop_min: f64,
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    hop_max: f64,
    #[arg(long, default_value_t = 101)]
    hop_steps: usize,
    #[arg(long, default_value_t = 1e-4)]
    g_over_omega_a: f64,
    /// Comma-separated subset of energy,dn1,dna1,product,photon_var,mean_na1,label.
    #[arg(long, value_delimiter = ',')]
    observables: Option<Vec<String>>,
    /// csv or json (one object per line).
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, env = "JCH_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Report E/g instead of (E − 2ω_c)/g.
    #[arg(long)]
    absolute_energy: bool,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    thresholds: ThresholdArgs,
}

impl SweepArgs {
    fn spec(&self) -> jch::Result<SweepSpec> {
        let observables = match &self.observables {
            Some(list) => list
                .iter()
                .map(|s| s.parse())
                .collect::<jch::Result<Vec<Observable>>>()?,
            None => Observable::ALL.to_vec(),
        };
        Ok(SweepSpec {
            delta_over_g: Axis::new(self.delta_min, self.delta_max, self.delta_steps),
            hop_over_g: Axis::new(self.hop_min, self.hop_max, self.hop_steps),
            g_over_omega_a: self.g_over_omega_a,
            observables,
            format: self.format.parse::<Format>()?,
            workers: self.workers,
            absolute_energy: self.absolute_energy,
            solver: self.solver.config(),
            thresholds: self.thresholds.thresholds(),
        })
    }
}

fn print_json(v: &serde_json::Value) -> jch::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn run(cmd: Cmd) -> jch::Result<()> {
    match cmd {
        Cmd::Basis { sites, excitations } => {
            let sector = Sector::new(sites, excitations)?;
            print_json(&sector.to_json())
        }
        Cmd::Point {
            model,
            solver,
            thresholds,
        } => {
            let report = analysis::analyze_point(
                &model.params(),
                &solver.config(),
                thresholds.thresholds(),
            )?;
            print_json(&report.to_json())
        }
        Cmd::Decompose { model, solver } => {
            let params = model.params();
            let sector = Sector::dimer();
            let gs = analysis::solve_dimer(&sector, &params, &solver.config())?;
            let dec = jch::decompose(&gs.vector, &sector, params.delta, params.g)?;
            let mut v = dec.to_json();
            v["params"] = analysis::params_json(&params);
            v["degenerate"] = json!(gs.degenerate);
            print_json(&v)
        }
        Cmd::Spectrum {
            model,
            solver,
            sites,
            excitations,
            coo,
        } => {
            let params = model.params();
            let sector = Sector::new(sites, excitations)?;
            let h = jch::build_hamiltonian(&sector, &params)?;
            if let Some(path) = coo {
                h.write_coo(std::io::BufWriter::new(std::fs::File::create(path)?))?;
            }
            let spec = jch::dense_eigh(&h, solver.dense_limit)?;
            print_json(&json!({
                "params": analysis::params_json(&params),
                "sites": sites,
                "excitations": excitations,
                "dim": sector.dim(),
                "eigenvalues": spec.eigenvalues,
            }))
        }
        Cmd::Sweep(args) => {
            let spec = args.spec()?;
            match &args.output {
                Some(path) => {
                    jch::sweep::run_sweep_to_path(&spec, path)?;
                }
                None => {
                    let rows = jch::sweep::run_sweep(&spec)?;
                    jch::sweep::write_rows(&rows, &spec, std::io::stdout().lock())?;
                }
            }
            Ok(())
        }
        Cmd::DegenerateLimit {
            hop,
            g,
            g_over_omega_a,
            omega_c,
            solver,
        } => {
            let params = model_params(-hop, hop, g, g_over_omega_a, omega_c);
            let block = degenerate_block(&params)?;
            let cmp = compare_to_exact(&params, &solver.config())?;
            let ground_vector: serde_json::Map<String, serde_json::Value> = DimerState::ALL
                .iter()
                .map(|s| {
                    (
                        s.name().to_string(),
                        json!(block.ground_vector_sector[s.index()]),
                    )
                })
                .collect();
            print_json(&json!({
                "params": analysis::params_json(&params),
                "block_basis": ["c1'", "a", "i1'", "i2'"],
                "block": block.block,
                "ground_energy": block.ground_energy,
                "ground_energy_over_g": block.ground_energy / params.g,
                "ground_block_vector": block.ground_block_vector,
                "ground_vector": ground_vector,
                "comparison": cmp,
            }))
        }
    }
}

fn main() -> ExitCode {
    let args = match config::merge_config(&Cli::command(), std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::try_parse_from(args).unwrap_or_else(|e| e.exit());
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
