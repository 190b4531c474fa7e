//! `dunkl`: build root systems, apply Dunkl operators, evaluate kernels and
//! run the verification suites.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{parse_f64, parse_list, Setup};
use dunkl::DunklError;
use output::{error_json, Format, Output};

#[derive(Parser)]
#[command(name = "dunkl", version, about = "Rational Dunkl operators, kernels and heat semigroups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Root system in rank notation: A1, A2, B2, I2(5), ...
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Root system type letter (A, B, I2), used with --dim.
    #[arg(long = "type", global = true)]
    pub r#type: Option<String>,
    /// Ambient dimension for --type A/B, or the order n for I2.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Multiplicities as rationals, one per root orbit or one shared: "1/2" or "1/2,1".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: usize,
    /// Series truncation M for the kernel.
    #[arg(long, global = true, default_value_t = dunkl::kernel::DEFAULT_TRUNCATION)]
    pub truncation: usize,
    /// Quadrature nodes (per half line for rank-one Lebesgue rules).
    #[arg(long, global = true, default_value_t = dunkl::transform_heat::DEFAULT_NODES)]
    pub nodes: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    /// e^{−|x|²/2}w_k(x)dx
    Gaussian,
    /// w_k(x)dx on [−radius, radius] (rank one)
    Lebesgue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AsymptMode {
    Ray,
    Halfplane,
    Heat,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the root system, reflection group and multiplicity.
    Group,
    /// Apply an operator expression such as "T(e1)*T(e2)" or "Delta" to a polynomial.
    Apply {
        #[arg(long)]
        op: String,
        #[arg(long)]
        poly: String,
    },
    /// Exact pairing [p, q]_k = (p(T)q)(0).
    Pair {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Apply the intertwining operator V_k.
    Intertwine {
        #[arg(long)]
        poly: String,
    },
    /// Print a quadrature rule, or integrate a polynomial against it.
    Integrate {
        #[arg(long, value_enum, default_value_t = MeasureArg::Gaussian)]
        measure: MeasureArg,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Evaluate E_k(x, y), E_k(x, iy) or J_k.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Use the imaginary second argument iy.
        #[arg(long)]
        imag: bool,
        /// Evaluate the group average J_k instead of E_k.
        #[arg(long)]
        bessel: bool,
    },
    /// Generalized Hermite polynomial for a multi-index, e.g. --nu 2,1.
    Hermite {
        #[arg(long)]
        nu: String,
    },
    /// Rank-one Dunkl transform of a test function.
    Transform {
        /// "gaussian" or "battery:N".
        #[arg(long, default_value = "gaussian")]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, default_value_t = dunkl::transform_heat::DEFAULT_RADIUS)]
        radius: f64,
    },
    /// Rank-one heat kernel value, or its mass with --mass.
    Heat {
        #[arg(long)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<f64>,
        #[arg(long)]
        mass: bool,
    },
    /// Rank-one asymptotic probes as CSV (t, value, target, error).
    Asympt {
        #[arg(long, value_enum, default_value_t = AsymptMode::Ray)]
        mode: AsymptMode,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        y: f64,
        /// Ray parameters, arc radii or heat times.
        #[arg(long, default_value = "50,100,200,400")]
        t: String,
    },
    /// Run a verification suite: operators, intertwiner, kernel, macdonald,
    /// hermite, transform, heat, asymptotics or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

fn run(cli: &Cli) -> dunkl::Result<Output> {
    let g = &cli.global;
    let setup = Setup::from_global(g)?;
    let floats = |s: &str| parse_list(s, parse_f64);
    match &cli.command {
        Command::Group => commands::group(&setup),
        Command::Apply { op, poly } => commands::apply(&setup, op, poly),
        Command::Pair { p, q } => commands::pair(&setup, p, q),
        Command::Intertwine { poly } => commands::intertwine(&setup, poly),
        Command::Integrate { measure, radius, poly } => commands::integrate(&setup, *measure, *radius, g.nodes, poly.as_deref()),
        Command::Kernel { x, y, imag, bessel } => commands::kernel(&setup, g.truncation, &floats(x)?, &floats(y)?, *imag, *bessel),
        Command::Hermite { nu } => {
            let nu = parse_list(nu, |s| s.parse::<u16>().map_err(|_| DunklError::Parse(format!("bad index {s:?}"))))?;
            commands::hermite(&setup, &nu)
        }
        Command::Transform { f, xi, radius } => commands::transform(&setup, g.nodes, *radius, f, &floats(xi)?),
        Command::Heat { t, x, y, mass } => commands::heat(&setup, g.nodes, *t, *x, *y, *mass),
        Command::Asympt { mode, x, y, t } => commands::asympt(&setup, *mode, *x, *y, &floats(t)?),
        Command::Verify { suite } => commands::verify(&setup, g, suite),
    }
}

fn is_config_error(e: &DunklError) -> bool {
    e.is_config()
        || matches!(
            e,
            DunklError::Unsupported(_) | DunklError::DimensionMismatch { .. } | DunklError::NonInvariantMultiplicity { .. }
        )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.global.format));
            if out.pass == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let body = serde_json::to_string(&error_json(&e)).expect("serializable");
            if cli.global.format == Format::Json {
                println!("{body}");
            }
            eprintln!("{body}");
            ExitCode::from(if is_config_error(&e) { 2 } else { 1 })
        }
    }
}
