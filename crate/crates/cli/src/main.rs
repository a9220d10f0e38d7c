use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use hurwitz::criterion::{CriterionConfig, Registry};
use hurwitz::oracle::{all_roots_with, OracleConfig};
use hurwitz::report::{ShaftReport, TableReport};
use hurwitz::shaft::{
    characteristic_polynomial, shaft_conditions, simulate_closed_loop, sweep_grid, AxisRange,
    ShaftParams, SweepConfig,
};
use hurwitz::{
    build_table, hurwitz_verdict_with, oracle_verdict, parse_coefficient_list, parse_complex_in,
    parse_real, ComplexPolynomial, Error, HalfPlaneBound, Mode, Scalar, Tolerance,
};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_SOFTWARE: u8 = 70;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Hurwitz stability of complex-coefficient polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether all roots lie in the open left half-plane.
    Check {
        #[command(flatten)]
        poly: PolyArgs,
        /// Stability test to run (generalized, classical, quartic, oracle).
        #[arg(long, default_value = "generalized")]
        method: String,
    },
    /// Print the full generalized Routh-Hurwitz table.
    Table {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Stability conditions for the PI-controlled rotating shaft.
    Shaft {
        #[command(flatten)]
        shaft: ShaftArgs,
        #[arg(long, allow_hyphen_values = true)]
        kp: String,
        #[arg(long, allow_hyphen_values = true)]
        ki: String,
        /// Also report the root-finder verdict.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sweep the (k_I, k_p) gain plane into a stability map.
    Sweep {
        #[command(flatten)]
        shaft: ShaftArgs,
        #[arg(long, default_value = "-5:0", allow_hyphen_values = true)]
        ki_range: String,
        #[arg(long, default_value = "-20:5", allow_hyphen_values = true)]
        kp_range: String,
        /// Samples as `NxM` (k_I by k_p).
        #[arg(long, default_value = "200x200")]
        res: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        margin: f64,
    },
    /// Integrate the closed loop with RK4 and write the trajectory.
    Simulate {
        #[command(flatten)]
        shaft: ShaftArgs,
        #[arg(long, allow_hyphen_values = true)]
        kp: String,
        #[arg(long, allow_hyphen_values = true)]
        ki: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        x_ref: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x0: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        v0: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        l0: String,
        #[arg(long, default_value_t = 60.0)]
        horizon: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        /// Write every n-th step.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Args)]
struct PolyArgs {
    /// Comma-separated coefficients in descending powers, leading term omitted.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Leading coefficient; the others are divided by it.
    #[arg(long, allow_hyphen_values = true)]
    leading: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Test the half-plane Re(s) < xi instead.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
}

#[derive(Args)]
struct ShaftArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    k: String,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    omega: String,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    big_omega: String,
}

fn tolerance(tol: f64) -> Result<Tolerance, Error> {
    Tolerance::new(tol).ok_or_else(|| Error::InvalidArgument(format!("tolerance must be positive, got {tol}")))
}

fn polynomial(args: &PolyArgs) -> Result<(ComplexPolynomial, Option<Scalar>), Error> {
    let mode = args.mode.map(Mode::from);
    let rest = parse_coefficient_list(&args.coeffs, mode)?;
    let mut p = match &args.leading {
        Some(l) => ComplexPolynomial::monicize(&parse_complex_in(l, mode)?, &rest)?,
        None => ComplexPolynomial::from_monic(rest)?,
    };
    let xi = args.xi.as_deref().map(|x| parse_real(x, mode)).transpose()?;
    if let Some(xi) = &xi {
        p = p.shift_argument(&HalfPlaneBound::new(xi.clone()));
    }
    if let Some(m) = mode {
        p = p.to_mode(m)?;
    }
    Ok((p, xi))
}

fn shaft_params(shaft: &ShaftArgs, kp: &str, ki: &str) -> Result<ShaftParams, Error> {
    Ok(ShaftParams::new(
        parse_real(&shaft.k, None)?,
        parse_real(&shaft.omega, None)?,
        parse_real(&shaft.big_omega, None)?,
        parse_real(kp, None)?,
        parse_real(ki, None)?,
    ))
}

fn range(text: &str) -> Result<AxisRange, Error> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("range `{text}` must look like a:b")))?;
    AxisRange::new(parse_real(a, None)?, parse_real(b, None)?)
}

fn resolution(text: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::InvalidArgument(format!("resolution `{text}` must look like NxM"));
    let (n, m) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    if n < 2 || m < 2 {
        return Err(Error::InvalidArgument(format!("resolution must be at least 2x2, got {text}")));
    }
    Ok((n, m))
}

fn complex(text: &str) -> Result<Complex64, Error> {
    Ok(parse_complex_in(text, None)?.to_complex64())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    let file = File::create(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Ok(BufWriter::new(file))
}

#[derive(Serialize)]
struct SimulationSummary {
    samples: usize,
    t_end: f64,
    final_state: [[f64; 2]; 3],
    regulation_error: f64,
    max_norm: f64,
    step_ratio: f64,
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Check { poly, method } => {
            let tol = tolerance(poly.tol)?;
            let (p, xi) = polynomial(&poly)?;
            let registry = Registry::with_builtins(CriterionConfig {
                tolerance: tol,
                oracle: OracleConfig::default(),
            });
            let verdict = registry.get(&method)?.verdict(&p)?;
            print_json(&TableReport::summary(&build_table(&p), &method, verdict).with_xi(xi))?;
            Ok(verdict.exit_code() as u8)
        }
        Command::Table { poly } => {
            let tol = tolerance(poly.tol)?;
            let (p, xi) = polynomial(&poly)?;
            let report = TableReport::full(&build_table(&p), tol).with_xi(xi);
            print_json(&report)?;
            Ok(build_table(&p).verdict(tol).exit_code() as u8)
        }
        Command::Shaft {
            shaft,
            kp,
            ki,
            oracle,
            tol,
        } => {
            let tol = tolerance(tol)?;
            let params = shaft_params(&shaft, &kp, &ki)?;
            let poly = characteristic_polynomial(&params);
            let table = build_table(&poly);
            let verdict = hurwitz_verdict_with(&poly, tol);
            let config = OracleConfig::default();
            let abscissa = all_roots_with(&poly, &config).abscissa();
            let mut report =
                ShaftReport::new(&params, &poly, shaft_conditions(&params), &table, verdict, abscissa);
            if oracle {
                report.oracle_verdict = Some(oracle_verdict(&poly, config.margin).stability);
            }
            print_json(&report)?;
            Ok(verdict.exit_code() as u8)
        }
        Command::Sweep {
            shaft,
            ki_range,
            kp_range,
            res,
            out,
            svg,
            margin,
        } => {
            let base = shaft_params(&shaft, "0", "0")?;
            let mut config = SweepConfig::default_window(base);
            config.ki_range = range(&ki_range)?;
            config.kp_range = range(&kp_range)?;
            config.resolution = resolution(&res)?;
            if !(margin >= 0.0 && margin.is_finite()) {
                return Err(Error::InvalidArgument(format!("margin must be nonnegative, got {margin}")));
            }
            config.margin = margin;
            let grid = sweep_grid(&config)?;
            let mut w = create(&out)?;
            grid.write_csv(&mut w)?;
            w.flush()?;
            if let Some(path) = svg {
                let mut w = create(&path)?;
                grid.write_svg(&mut w)?;
                w.flush()?;
            }
            print_json(&grid.summary())?;
            Ok(0)
        }
        Command::Simulate {
            shaft,
            kp,
            ki,
            x_ref,
            x0,
            v0,
            l0,
            horizon,
            dt,
            stride,
            out,
        } => {
            let params = shaft_params(&shaft, &kp, &ki)?.with_x_ref(parse_complex_in(&x_ref, None)?);
            let target = params.x_ref.to_complex64();
            let trajectory = simulate_closed_loop(&params, complex(&x0)?, complex(&v0)?, complex(&l0)?, horizon, dt)?;
            let mut w = create(&out)?;
            trajectory.write_csv(&mut w, stride)?;
            w.flush()?;
            let last = trajectory.final_state();
            print_json(&SimulationSummary {
                samples: trajectory.samples.len(),
                t_end: last.t,
                final_state: last.state.map(|z| [z.re, z.im]),
                regulation_error: (last.state[0] - target).norm(),
                max_norm: trajectory.max_norm(),
                step_ratio: trajectory.step_ratio,
            })?;
            Ok(0)
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::UnknownTest { .. } => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        Error::NoConvergence | Error::Divergence { .. } => EXIT_SOFTWARE,
        _ => EXIT_DATA,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
