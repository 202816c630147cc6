//! `pabeam`: Monte Carlo sweeps, solve-time benchmark and single-instance
//! solving for per-antenna-constrained energy beamforming.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pabeam::beamformers::{Method, PowerBudget, SolverOptions};
use pabeam::channel::{read_matrix, read_powers};
use pabeam::sim::{
    parse_config, run_experiment_detailed, run_timing, write_csv, ExperimentConfig, ResultRow,
};
use pabeam::Error;

#[derive(Parser)]
#[command(
    name = "pabeam",
    version,
    about = "Energy beamforming under per-antenna power constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo sweep over antenna counts; writes a results CSV.
    Run(SweepArgs),
    /// Median solve time of pac_newton, sub1 and sub2 per antenna count.
    Bench(SweepArgs),
    /// Solve one instance read from files.
    Solve {
        /// Channel matrix file (`K N` header, then K rows of 2N re/im values).
        #[arg(long)]
        matrix: PathBuf,
        /// Whitespace-separated per-antenna power budgets in watts.
        #[arg(long)]
        powers: PathBuf,
        #[arg(long, default_value = "pac_newton")]
        method: String,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Antenna counts, e.g. `1,5,10` or `1-25`.
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated method names.
    #[arg(long)]
    methods: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave the timing column empty so the CSV is reproducible.
    #[arg(long)]
    no_timing: bool,
}

impl SweepArgs {
    fn overrides(&self) -> Vec<(String, String)> {
        let mut o = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                o.push((k.to_string(), v));
            }
        };
        push("n_list", self.n_list.clone());
        push("trials", self.trials.map(|t| t.to_string()));
        push("seed", self.seed.map(|s| s.to_string()));
        push("methods", self.methods.clone());
        push("output", self.out.as_ref().map(|p| p.display().to_string()));
        if self.no_timing {
            push("timing", Some("false".into()));
        }
        o
    }
}

fn print_rows(rows: &[ResultRow]) {
    println!(
        "{:<14} {:>4} {:>12} {:>10} {:>12} {:>9}",
        "method", "N", "mean_mW", "stderr", "time_ms", "certified"
    );
    for r in rows {
        let t = r
            .mean_solve_time_ms
            .map_or("-".to_string(), |t| format!("{t:.4}"));
        println!(
            "{:<14} {:>4} {:>12.4} {:>10.4} {:>12} {:>9.3}",
            r.method.name(),
            r.n,
            r.mean_mw,
            r.stderr_mw,
            t,
            r.certified_fraction
        );
    }
}

fn exit_code(e: &Error) -> ExitCode {
    match e {
        Error::NoConvergence { .. } | Error::EigNoConvergence { .. } => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(&args),
        Command::Bench(args) => bench(&args),
        Command::Solve {
            matrix,
            powers,
            method,
        } => solve(&matrix, &powers, &method),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn run(args: &SweepArgs) -> Result<(), Error> {
    let cfg = parse_config(
        args.config.as_deref(),
        &args.overrides(),
        ExperimentConfig::default(),
    )?;
    let out = run_experiment_detailed(&cfg)?;
    print_rows(&out.rows);
    let uncertified = out
        .trials
        .iter()
        .filter(|t| t.certified == Some(false))
        .count();
    eprintln!(
        "{} trials, {} ordering violations, {} uncertified pac_newton solves",
        out.trials.len(),
        out.ordering_violations,
        uncertified
    );
    write_csv(&out.rows, &cfg.output_path)?;
    eprintln!("wrote {}", cfg.output_path.display());
    Ok(())
}

fn bench(args: &SweepArgs) -> Result<(), Error> {
    let cfg = parse_config(
        args.config.as_deref(),
        &args.overrides(),
        ExperimentConfig::bench_default(),
    )?;
    let rows = run_timing(&cfg)?;
    print_rows(&rows);
    write_csv(&rows, &cfg.output_path)?;
    eprintln!("wrote {}", cfg.output_path.display());
    Ok(())
}

fn solve(matrix: &std::path::Path, powers: &std::path::Path, method: &str) -> Result<(), Error> {
    let method = Method::parse(method).ok_or_else(|| Error::Parse {
        key: "method".into(),
        line: 0,
        message: format!("unknown method `{method}`"),
    })?;
    let h = read_matrix(matrix)?;
    let p = PowerBudget::new(read_powers(powers)?)?;
    let opts = SolverOptions::default();
    let mut rng = pabeam::rng::rng_stream(opts.seed, 0);
    let rep = match method {
        Method::Spc => pabeam::beamformers::solve_spc(&h, p.total())?,
        Method::PacNewton => pabeam::beamformers::solve_pac(&h, &p, &opts)?,
        Method::PacClosedN2 => pabeam::beamformers::solve_closed_n2(&h, &p)?,
        Method::PacClosedK1 => pabeam::beamformers::solve_closed_k1(&h, &p)?,
        Method::Sub1 => pabeam::beamformers::suboptimal_1(&h, &p)?,
        Method::Sub2 => pabeam::beamformers::suboptimal_2(&h, &p)?,
        Method::Independent => pabeam::beamformers::independent_baseline(&h, &p)?,
        Method::RandomPhase => pabeam::beamformers::random_phase_baseline(&h, &p, &mut rng)?,
        Method::GridOracle => pabeam::oracle::grid_search(
            &h,
            &p,
            pabeam::oracle::GRID_COARSE_STEP,
            pabeam::oracle::GRID_REFINE_ROUNDS,
        )?,
    };
    println!("method: {}", rep.method);
    if let Some(theta) = &rep.theta {
        let t: Vec<String> = theta
            .as_slice()
            .iter()
            .map(|t| format!("{t:.12}"))
            .collect();
        println!("theta_rad: {}", t.join(" "));
    }
    println!("objective_mw: {:.10}", rep.objective_mw());
    if method == Method::PacNewton {
        println!("residual: {:.3e}", rep.residual);
        println!("iterations: {}", rep.iterations);
    }
    if rep.certificate.is_some() {
        println!("certified: {}", rep.certified);
    }
    if rep.zero_alpha {
        println!("note: some Gram entries vanish; magnitude lemma not forced");
    }
    Ok(())
}
