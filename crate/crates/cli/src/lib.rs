//! Command line front end: classify maps, scan parameter regions into plot
//! data, estimate Pauli region volumes, emit the Schwarz boundary surface,
//! and run oracle-vs-analytic verification sweeps.
//!
//! Exit codes: 0 success / verified, 1 verification disagreement, 2 usage
//! error. All output is UTF-8; reports are JSON on stdout, region scans and
//! surface meshes are CSV files.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use qmap_core::classify::classify;
use qmap_core::map::{named_channel, MapParams};
use qmap_core::oracle::{agreement_sweep, SweepKind};
use qmap_core::pauli::{self, PauliEigenvalues, PauliParams};
use qmap_core::C64;

pub mod scan;

const DEFAULT_SEED: u64 = 0;
const DEFAULT_BUDGET: usize = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "qmap",
    about = "Classify and verify qubit maps with diagonal unitary/orthogonal symmetry",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a map: positivity, (generalized) Schwarz, complete positivity.
    Classify(ClassifyArgs),
    /// Scan a (|λ|, |μ|) or Pauli (p0, p1) rectangle into a CSV of region codes.
    Scan(ScanArgs),
    /// Monte Carlo volumes of the positive / Schwarz / CP Pauli regions.
    Volume(VolumeArgs),
    /// Run an analytic-vs-oracle agreement sweep.
    Verify(VerifyArgs),
    /// Emit the Schwarz boundary surface λ₃ = λ₁λ₂ ± √((1-λ₁²)(1-λ₂²)).
    Surface(SurfaceArgs),
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Unital shorthand: a-matrix [[a, 1-a], [1-b, b]].
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// General a-matrix entries (all four required together).
    #[arg(long)]
    a11: Option<f64>,
    #[arg(long)]
    a12: Option<f64>,
    #[arg(long)]
    a21: Option<f64>,
    #[arg(long)]
    a22: Option<f64>,
    /// λ as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex)]
    lambda: Option<C64>,
    /// μ as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex)]
    mu: Option<C64>,
    /// Named channel (amplitude_damping, generalized_amplitude_damping,
    /// pauli, bit_flip, phase_flip, bit_phase_flip, choi_map, transposition,
    /// reduction).
    #[arg(long)]
    channel: Option<String>,
    /// Channel parameter; repeat for channels with several.
    #[arg(long = "param")]
    params: Vec<f64>,
    /// Pauli coefficients p0,p1,p2,p3 (may be negative).
    #[arg(long, value_parser = parse_f64_list::<4>, allow_hyphen_values = true)]
    pauli: Option<[f64; 4]>,
    /// Pauli eigenvalues λ1,λ2,λ3.
    #[arg(long = "pauli-eigs", value_parser = parse_f64_list::<3>, allow_hyphen_values = true)]
    pauli_eigs: Option<[f64; 3]>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Pauli mode: scan the (p0, p1) plane at fixed a = p0 + p3.
    #[arg(long, default_value_t = false)]
    pauli: bool,
    #[arg(long, required_unless_present = "pauli")]
    a: Option<f64>,
    #[arg(long, required_unless_present = "pauli")]
    b: Option<f64>,
    /// Fixed a for the Pauli plane.
    #[arg(long = "fix-a")]
    fix_a: Option<f64>,
    /// Grid resolution per axis (at least 2).
    #[arg(long)]
    grid: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long = "lambda-max", default_value_t = 1.0)]
    lambda_max: f64,
    #[arg(long = "mu-max", default_value_t = 1.0)]
    mu_max: f64,
}

#[derive(Args, Debug)]
struct VolumeArgs {
    #[arg(long)]
    samples: u64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    sweep: SweepArg,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SweepArg {
    Unital,
    Nonunital,
    Pauli,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    #[arg(long)]
    grid: usize,
    #[arg(long)]
    out: PathBuf,
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let err = |_| format!("`{s}` is not a complex number (expected `re` or `re,im`)");
    match parts.as_slice() {
        [re] => Ok(C64::new(re.trim().parse::<f64>().map_err(err)?, 0.0)),
        [re, im] => Ok(C64::new(
            re.trim().parse::<f64>().map_err(err)?,
            im.trim().parse::<f64>().map_err(err)?,
        )),
        _ => Err(format!("`{s}` has too many components")),
    }
}

fn parse_f64_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated values, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("`{part}` is not a number"))?;
    }
    Ok(out)
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn seed_from(cli_seed: Option<u64>) -> Result<u64, UsageError> {
    if let Some(s) = cli_seed {
        return Ok(s);
    }
    match std::env::var("QMAP_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| UsageError(format!("QMAP_SEED=`{v}` is not a valid seed"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn map_from_classify_args(args: &ClassifyArgs) -> Result<MapParams, UsageError> {
    let lambda = args.lambda.unwrap_or(C64::ZERO);
    let mu = args.mu.unwrap_or(C64::ZERO);
    let modes = [
        args.a.is_some() || args.b.is_some(),
        args.a11.is_some() || args.a12.is_some() || args.a21.is_some() || args.a22.is_some(),
        args.channel.is_some(),
        args.pauli.is_some(),
        args.pauli_eigs.is_some(),
    ];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(UsageError(
            "specify exactly one of --a/--b, --a11..--a22, --channel, --pauli, --pauli-eigs"
                .to_string(),
        ));
    }
    if let (Some(a), Some(b)) = (args.a, args.b) {
        return Ok(MapParams::unital(a, b, lambda, mu));
    }
    if args.a.is_some() || args.b.is_some() {
        return Err(UsageError("--a and --b must be given together".to_string()));
    }
    if let (Some(a11), Some(a12), Some(a21), Some(a22)) = (args.a11, args.a12, args.a21, args.a22) {
        return Ok(MapParams::new([[a11, a12], [a21, a22]], lambda, mu));
    }
    if args.a11.is_some() || args.a12.is_some() || args.a21.is_some() || args.a22.is_some() {
        return Err(UsageError(
            "--a11, --a12, --a21, --a22 must all be given".to_string(),
        ));
    }
    if let Some(name) = &args.channel {
        return Ok(named_channel(name, &args.params)?);
    }
    if let Some(p) = args.pauli {
        return Ok(pauli::to_map_params(&PauliParams(p)));
    }
    if let Some(l) = args.pauli_eigs {
        let params = pauli::from_eigenvalues(&PauliEigenvalues(l));
        return Ok(pauli::to_map_params(&params));
    }
    unreachable!("mode count already validated")
}

fn cmd_classify<W: Write>(args: &ClassifyArgs, out: &mut W) -> Result<i32, UsageError> {
    let verdict = if let Some(l) = args.pauli_eigs {
        pauli::classify_pauli(&PauliEigenvalues(l))
    } else {
        classify(&map_from_classify_args(args)?)
    };
    writeln!(out, "{}", serde_json::to_string(&verdict)?)?;
    Ok(0)
}

fn cmd_scan(args: &ScanArgs) -> Result<i32, UsageError> {
    if args.grid < 2 {
        return Err(UsageError("--grid must be at least 2".to_string()));
    }
    let file = std::fs::File::create(&args.out)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", args.out.display())))?;
    let mut writer = std::io::BufWriter::new(file);
    if args.pauli {
        let a = args
            .fix_a
            .ok_or_else(|| UsageError("--pauli requires --fix-a".to_string()))?;
        if !(a > 0.0 && a < 1.0) {
            return Err(UsageError(format!(
                "--fix-a {a} must lie strictly in (0, 1)"
            )));
        }
        scan::write_pauli_plane(&mut writer, a, args.grid)?;
    } else {
        let (a, b) = (args.a.unwrap(), args.b.unwrap());
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            return Err(UsageError(format!(
                "--a {a} and --b {b} must lie in [0, 1]"
            )));
        }
        scan::write_coupling_plane(&mut writer, a, b, args.grid, args.lambda_max, args.mu_max)?;
    }
    writer.flush()?;
    Ok(0)
}

fn cmd_volume<W: Write>(args: &VolumeArgs, out: &mut W) -> Result<i32, UsageError> {
    if args.samples < 10_000 {
        return Err(UsageError(format!(
            "--samples {} is too small (minimum 10000)",
            args.samples
        )));
    }
    let seed = seed_from(args.seed)?;
    let report = pauli::estimate_volumes(args.samples, seed);
    writeln!(out, "{}", serde_json::to_string(&report)?)?;
    Ok(0)
}

fn cmd_verify<W: Write>(args: &VerifyArgs, out: &mut W) -> Result<i32, UsageError> {
    let kind = match args.sweep {
        SweepArg::Unital => SweepKind::Unital,
        SweepArg::Nonunital => SweepKind::NonUnital,
        SweepArg::Pauli => SweepKind::Pauli,
    };
    let seed = seed_from(args.seed)?;
    let report = agreement_sweep(kind, args.n, seed, args.budget.unwrap_or(DEFAULT_BUDGET));
    writeln!(out, "{}", serde_json::to_string(&report)?)?;
    Ok(if report.disagreements.is_empty() {
        0
    } else {
        1
    })
}

fn cmd_surface(args: &SurfaceArgs) -> Result<i32, UsageError> {
    if args.grid < 2 {
        return Err(UsageError("--grid must be at least 2".to_string()));
    }
    let mesh = std::fs::File::create(&args.out)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", args.out.display())))?;
    let mut writer = std::io::BufWriter::new(mesh);
    scan::write_surface_mesh(&mut writer, args.grid)?;
    writer.flush()?;

    let vertices_path = sibling_with_suffix(&args.out, "_vertices");
    let vertices = std::fs::File::create(&vertices_path)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", vertices_path.display())))?;
    let mut writer = std::io::BufWriter::new(vertices);
    scan::write_tetrahedron_vertices(&mut writer)?;
    writer.flush()?;
    Ok(0)
}

/// `mesh.csv` → `mesh_vertices.csv`.
fn sibling_with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut name = format!("{stem}{suffix}");
    if let Some(ext) = path.extension() {
        name.push('.');
        name.push_str(&ext.to_string_lossy());
    }
    path.with_file_name(name)
}

/// Run the CLI on explicit arguments, writing reports to `out`. Returns the
/// process exit code (0 ok, 1 verification disagreement, 2 usage error).
pub fn run<I, S, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = write!(out, "{e}");
                return 0;
            }
            _ => {
                eprintln!("error: {}", one_line(&e.to_string()));
                return 2;
            }
        },
    };
    let result = match &cli.command {
        Command::Classify(args) => cmd_classify(args, out),
        Command::Scan(args) => cmd_scan(args),
        Command::Volume(args) => cmd_volume(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Surface(args) => cmd_surface(args),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {}", one_line(&msg));
            2
        }
    }
}

fn one_line(msg: &str) -> String {
    msg.lines().next().unwrap_or("invalid usage").to_string()
}

/// Entry point for the binary: process arguments, stdout output.
pub fn run_from_env() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = run(std::env::args_os(), &mut lock);
    let _ = lock.flush();
    code
}
