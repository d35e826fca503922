use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rankin_cohen::bracket::{bracket_jacobi, bracket_rank_over_x, default_samples};
use rankin_cohen::forms::{jacobi_theta, siegel_theta, Lattice, LatticeVector};
use rankin_cohen::io::{export_jacobi, export_siegel, import_jacobi, import_siegel};
use rankin_cohen::rational::{parse_exact, Rational};
use rankin_cohen::series::SupportKind;
use rankin_cohen::siegel::{bracket_siegel_direct, bracket_siegel_via_jacobi, check_siegel_consistency};
use rankin_cohen::verify::{run_suite, Context, Suite};
use rankin_cohen::JacobiSeries;

#[derive(Parser)]
#[command(name = "rcforms", version, about = "Exact Rankin-Cohen brackets on truncated Fourier expansions")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi theta series of a lattice vector.
    ThetaJacobi {
        #[arg(long)]
        lattice: Lattice,
        /// Index m = v·v/2 of the vector.
        #[arg(long)]
        half_norm_index: u32,
        #[arg(long)]
        trunc: u32,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated coordinates, e.g. "1,-1,0,0,0,0,0,0" or "1/2,...".
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Degree-2 Siegel theta series of a lattice.
    ThetaSiegel {
        #[arg(long)]
        lattice: Lattice,
        #[arg(long)]
        trunc: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Bracket of two Jacobi coefficient files.
    BracketJacobi {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Exact fraction, e.g. "-1/2".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        v: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Bracket of two Siegel coefficient files.
    BracketSiegel {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value_t = Mode::Direct)]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank of the family X ↦ [f, g]_(X,v) over generic samples.
    RankX {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        v: u32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Direct,
    Jacobi,
}

enum Failure {
    /// Exit code 1.
    Violation(String),
    /// Exit code 2.
    Input(String),
}

fn input<E: Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_jacobi(path: &Path) -> Result<JacobiSeries, Failure> {
    import_jacobi(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_vector(lattice: Lattice, text: &str) -> Result<LatticeVector, Failure> {
    let coords = text
        .split(',')
        .map(|t| parse_exact(t.trim()))
        .collect::<Result<Vec<Rational>, _>>()
        .map_err(input)?;
    if coords.len() != lattice.rank() {
        return Err(Failure::Input(format!(
            "vector has {} coordinates, {} needs {}",
            coords.len(),
            lattice.name(),
            lattice.rank()
        )));
    }
    LatticeVector::from_rationals(&coords)
        .filter(|v| lattice.contains(v))
        .ok_or_else(|| Failure::Input(format!("vector {text} is not in {}", lattice.name())))
}

/// Holomorphic support, disc-class invariance and parity of a Jacobi output.
fn check_jacobi(f: &JacobiSeries) -> Result<(), Failure> {
    if let Some((n, r)) = f.support_violation(SupportKind::Holomorphic) {
        return Err(Failure::Violation(format!(
            "support: c({n},{r}) = {} with 4nm - r^2 < 0",
            f.coeff(n, r)
        )));
    }
    if f.index() > 0 {
        if let Some(w) = f.check_disc_class_invariance().map_err(input)? {
            return Err(Failure::Violation(format!("disc-class: {w}")));
        }
    }
    if let Some((n, r)) = f.parity_violation() {
        return Err(Failure::Violation(format!(
            "parity: c({n},{r}) = {}, c({n},{}) = {}",
            f.coeff(n, r),
            -r,
            f.coeff(n, -r)
        )));
    }
    Ok(())
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::ThetaJacobi {
            lattice,
            half_norm_index,
            trunc,
            out,
            vector,
        } => {
            let v = match vector {
                Some(text) => parse_vector(lattice, &text)?,
                None => lattice.default_vector(i64::from(half_norm_index)).ok_or_else(|| {
                    Failure::Input(format!("{} has no vector with x·x/2 = {half_norm_index}", lattice.name()))
                })?,
            };
            if v.half_norm() != i64::from(half_norm_index) {
                return Err(Failure::Input(format!(
                    "vector {v} has x·x/2 = {}, not {half_norm_index}",
                    v.half_norm()
                )));
            }
            let f = jacobi_theta(lattice, &v, trunc).map_err(input)?;
            check_jacobi(&f)?;
            write(&out, &export_jacobi(&f))
        }
        Command::ThetaSiegel { lattice, trunc, out } => {
            let f = siegel_theta(lattice, trunc);
            write(&out, &export_siegel(&f))
        }
        Command::BracketJacobi {
            left,
            right,
            x,
            v,
            out,
        } => {
            let x = parse_exact(&x).map_err(input)?;
            let (f, g) = (load_jacobi(&left)?, load_jacobi(&right)?);
            let h = bracket_jacobi(&f, &g, &x, v);
            check_jacobi(&h)?;
            write(&out, &export_jacobi(&h))
        }
        Command::BracketSiegel {
            left,
            right,
            l,
            mode,
            out,
        } => {
            let load = |p: &Path| import_siegel(&read(p)?).map_err(|e| Failure::Input(format!("{}: {e}", p.display())));
            let (f, g) = (load(&left)?, load(&right)?);
            let h = match mode {
                Mode::Direct => bracket_siegel_direct(&f, &g, l),
                Mode::Jacobi => bracket_siegel_via_jacobi(&f, &g, l),
            };
            let report = check_siegel_consistency(&h);
            if !report.passed() {
                return Err(Failure::Violation(report.to_string()));
            }
            write(&out, &export_siegel(&h))
        }
        Command::RankX { left, right, v } => {
            let (f, g) = (load_jacobi(&left)?, load_jacobi(&right)?);
            let rank = bracket_rank_over_x(&f, &g, v, &default_samples(v)).map_err(input)?;
            let bound = v as usize / 2 + 1;
            println!("rank {rank} bound {bound}");
            if rank > bound {
                return Err(Failure::Violation(format!("rank {rank} exceeds floor(v/2)+1 = {bound}")));
            }
            Ok(())
        }
        Command::Verify { suite } => {
            let ctx = Context::new();
            let mut failed = 0;
            for report in run_suite(suite, &ctx) {
                print!("{report}");
                failed += usize::from(!report.passed);
            }
            if failed > 0 {
                return Err(Failure::Violation(format!("{failed} criteria failed")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
