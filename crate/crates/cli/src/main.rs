//! `jpl` — command-line front end for the verification suites in `jpl-core`.
//!
//! Every subcommand maps to one core operation and emits a flat table as
//! JSON or RFC-4180 CSV. All computation is deterministic: two runs with the
//! same flags produce byte-identical payloads (fixed column order, floats at
//! 17 significant digits).
//!
//! Exit codes: 0 all contracted checks pass; 1 a check failed (the report is
//! still written); 2 usage or domain error; 3 output I/O failure.

mod commands;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jpl_core::report::Table;

#[derive(Parser)]
#[command(name = "jpl", version, about = "Numerical verification lab for Xi functions, \
Jensen positivity functionals, and ultraspherical surrogate bounds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (overridden by the JPL_WORKERS environment variable).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Xi function: point evaluation and real-zero search.
    Xi {
        #[command(subcommand)]
        cmd: XiCmd,
    },
    /// Kernel Phi: point evaluation and positivity scans.
    Phi {
        #[command(subcommand)]
        cmd: PhiCmd,
    },
    /// Real primitive Dirichlet characters and their theta series.
    Char {
        #[command(subcommand)]
        cmd: CharCmd,
    },
    /// Jensen positivity functionals f_n and the surrogate g_N machinery.
    Jensen {
        #[command(subcommand)]
        cmd: JensenCmd,
    },
    /// Asymptotic limit and bound checks for the polynomial estimates.
    Asymp {
        #[command(subcommand)]
        cmd: AsympCmd,
    },
    /// Aggregate verification across every module.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum XiCmd {
    /// Evaluate Xi(z) (the cosine transform of the kernel) at one point.
    Eval {
        /// Evaluation point on the real line.
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        /// Fundamental discriminant selecting a character kernel
        /// (omit for the Riemann kernel).
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
    /// Scan [0, z-max] for sign changes and bisect each bracket.
    Zeros {
        #[arg(long = "z-max")]
        z_max: f64,
        /// Scan step (must not exceed 0.25).
        #[arg(long, default_value_t = 0.25)]
        step: f64,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
}

#[derive(Subcommand)]
enum PhiCmd {
    /// Evaluate the kernel at one point.
    Eval {
        #[arg(long, value_enum, default_value_t = Kind::Riemann)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Grid scan on [0, t-max]: minimum, argmin, sign changes.
    Scan {
        #[arg(long, value_enum, default_value_t = Kind::Riemann)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        /// Scan every fundamental discriminant with |d| up to this bound
        /// (character kind only); rows are flushed as they are produced.
        #[arg(long = "d-bound")]
        d_bound: Option<u64>,
        #[arg(long = "t-max")]
        t_max: f64,
        #[arg(long)]
        step: f64,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Riemann,
    Character,
}

#[derive(Subcommand)]
enum CharCmd {
    /// Enumerate fundamental discriminants |d| <= bound.
    List {
        #[arg(long)]
        bound: u64,
    },
    /// Theta functional-equation residuals for one discriminant.
    ThetaCheck {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
}

#[derive(Subcommand)]
enum JensenCmd {
    /// f_n(x) by every applicable route over an x grid.
    Fn {
        #[arg(long)]
        n: u32,
        /// Grid as start:stop:step (inclusive endpoints within rounding).
        #[arg(long = "x-grid")]
        x_grid: String,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
    /// Surrogate ladder g_N = I1 + I2 diagnostics at fixed (x, n, beta).
    Surrogate {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Comma-separated ladder of N values (polynomial degree 4N).
        #[arg(long = "N-ladder", alias = "n-ladder")]
        n_ladder: String,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        n: u32,
        /// Evaluate the scaled variant (argument ux/4N with its Gamma
        /// prefactor), which converges to f_n(x)/2 along the ladder.
        #[arg(long)]
        scaled: bool,
    },
}

#[derive(Subcommand)]
enum AsympCmd {
    /// Scaled polynomial-to-cosine limits along a degree ladder.
    Limits {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Comma-separated degree ladder.
        #[arg(long, default_value = "64,128,256,512")]
        ladder: String,
    },
    /// Empirical-constant stability for the inequality estimates.
    Bounds {
        #[arg(long, value_enum)]
        which: Bound,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Bound {
    /// |J_alpha(z)| <= I_alpha(|z|), strict, constant 1.
    BesselBound,
    /// Gegenbauer sup-norm growth rates on and off the axis.
    Growth,
    /// Termwise coefficient domination behind the limit interchange.
    Coefficient,
    /// Scaled Jacobi polynomials against the modified-Bessel envelope.
    Envelope,
    /// Every bound above in one report.
    All,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run the condensed check suite of every module.
    All,
}

/// What a subcommand produced: the report plus whether any contracted check
/// failed (reports without contracts always pass).
pub struct Outcome {
    pub table: Table,
    pub all_pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let workers = std::env::var("JPL_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(cli.workers);
    if let Some(n) = workers {
        if n == 0 {
            eprintln!("jpl: worker count must be positive");
            return ExitCode::from(2);
        }
        // Ignore the error if a pool was already installed (tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    let result = match &cli.command {
        // The discriminant sweep re-writes the partial report after every
        // row, so interrupted long runs still leave usable output behind
        // (only meaningful with --out; stdout gets the final table once).
        Command::Phi {
            cmd: PhiCmd::Scan { kind: Kind::Character, d: None, d_bound: Some(bound), t_max, step },
        } => commands::phi_scan_sweep_stream(*bound, *t_max, *step, |partial| match &cli.out {
            Some(path) => {
                let payload = match cli.format {
                    Format::Json => partial.to_json(),
                    Format::Csv => partial.to_csv(),
                };
                std::fs::write(path, payload)
            }
            None => Ok(()),
        }),
        other => run(other),
    };
    let outcome = match result {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("jpl: {err}");
            return ExitCode::from(2);
        }
    };

    let payload = match cli.format {
        Format::Json => outcome.table.to_json(),
        Format::Csv => outcome.table.to_csv(),
    };
    if let Err(err) = write_payload(&cli.out, &payload) {
        eprintln!("jpl: {err}");
        return ExitCode::from(3);
    }
    if outcome.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> jpl_core::Result<Outcome> {
    match command {
        Command::Xi { cmd } => match cmd {
            XiCmd::Eval { z, d } => commands::xi_eval(*z, *d),
            XiCmd::Zeros { z_max, step, d } => commands::xi_zeros(*z_max, *step, *d),
        },
        Command::Phi { cmd } => match cmd {
            PhiCmd::Eval { kind, d, t } => commands::phi_eval(descriptor(*kind, *d)?, *t),
            PhiCmd::Scan { kind, d, d_bound, t_max, step } => {
                if d_bound.is_some() {
                    return Err(jpl_core::Error::domain(
                        "--d-bound requires --kind character without --d",
                    ));
                }
                commands::phi_scan(descriptor(*kind, *d)?, *t_max, *step)
            }
        },
        Command::Char { cmd } => match cmd {
            CharCmd::List { bound } => commands::char_list(*bound),
            CharCmd::ThetaCheck { d } => commands::char_theta_check(*d),
        },
        Command::Jensen { cmd } => match cmd {
            JensenCmd::Fn { n, x_grid, d } => {
                commands::jensen_fn(*n, &parse_grid(x_grid)?, *d)
            }
            JensenCmd::Surrogate { beta, n_ladder, x, n, scaled } => {
                let ladder = parse_ladder(n_ladder)?;
                if *scaled {
                    commands::jensen_surrogate_scaled(*beta, &ladder, *x, *n)
                } else {
                    commands::jensen_surrogate(*beta, &ladder, *x, *n)
                }
            }
        },
        Command::Asymp { cmd } => match cmd {
            AsympCmd::Limits { beta, ladder } => {
                commands::asymp_limits(*beta, &parse_ladder(ladder)?)
            }
            AsympCmd::Bounds { which } => commands::asymp_bounds(*which),
        },
        Command::Verify { cmd } => match cmd {
            VerifyCmd::All => verify::all(),
        },
    }
}

fn descriptor(kind: Kind, d: Option<i64>) -> jpl_core::Result<jpl_core::kernels::KernelDescriptor> {
    use jpl_core::kernels::KernelDescriptor;
    match (kind, d) {
        (Kind::Riemann, None) => Ok(KernelDescriptor::riemann()),
        (Kind::Riemann, Some(_)) => Err(jpl_core::Error::domain(
            "--d only applies to the character kernel",
        )),
        (Kind::Character, Some(d)) => KernelDescriptor::for_discriminant(d),
        (Kind::Character, None) => Err(jpl_core::Error::domain(
            "character kernel requires --d (a fundamental discriminant)",
        )),
    }
}

/// Parse "start:stop:step" into an inclusive grid.
fn parse_grid(s: &str) -> jpl_core::Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let err = || jpl_core::Error::domain(format!("grid must be start:stop:step, got {s:?}"));
    if parts.len() != 3 {
        return Err(err());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| err()))
        .collect::<jpl_core::Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || stop < start {
        return Err(err());
    }
    let mut grid = Vec::new();
    let mut i = 0u64;
    loop {
        let x = start + i as f64 * step;
        if x > stop + 1e-12 {
            break;
        }
        grid.push(x);
        i += 1;
    }
    Ok(grid)
}

/// Parse "16,32,64" into a ladder.
fn parse_ladder(s: &str) -> jpl_core::Result<Vec<u32>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| jpl_core::Error::domain(format!("bad ladder entry {p:?} in {s:?}")))
        })
        .collect()
}

fn write_payload(out: &Option<PathBuf>, payload: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(payload.as_bytes())?;
            lock.flush()
        }
    }
}
