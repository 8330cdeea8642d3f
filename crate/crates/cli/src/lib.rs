//! Command-line front end: `check`, `roots`, `samelson` and `verify`.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check or a failed
//! construction, 2 on usage and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use samelson_core::checks::{check_compact_type, check_jacobi};
use samelson_core::roots::{DecomposeOptions, DEFAULT_TOL};
use samelson_core::samelson::{
    build_classic_samelson, lift_complex_structure, tower_complex_structure, ComplexStructure,
};
use samelson_core::tangent::{tangent_algebra, tower, DEFAULT_DIMENSION_CAP};
use samelson_core::verify::{case_suite, verify_integrability, verify_j_squared};
use samelson_core::{decompose, Element, LieAlgebra};

pub mod input;
pub mod report;

use input::{parse_algebra, parse_matrix, parse_rational_list, parse_torus_arg, LoadedAlgebra};
use report::{Outcome, Placed};

/// Environment variable overriding the torus-search seed.
pub const SEED_VAR: &str = "SAMELSON_SEED";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input file or flag value; exit code 2.
    #[error("{0}")]
    Parse(String),
    /// Unusable flag combination; exit code 2.
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "samelson", version, about = "Exact complex structures on tangent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi identity and compact-type certificate.
    Check(Common),
    /// Maximal torus, roots, positive system and root vectors.
    Roots {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        roots: RootArgs,
    },
    /// Build a complex structure and verify it.
    Samelson {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        roots: RootArgs,
        /// Tower level (tangent and lift modes).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, default_value_t = Mode::Tangent)]
        mode: Mode,
    },
    /// Verify a user-supplied J on the algebra or one of its tangent levels.
    Verify {
        #[command(flatten)]
        common: Common,
        /// JSON matrix: an array of rows, or an object with a `j_matrix` key.
        #[arg(long = "j", value_name = "MATRIX_FILE")]
        j: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Algebra file (JSON).
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct RootArgs {
    /// Torus generators: indices `1,2,3` or JSON `[[1,0,0],[0,1,0]]`.
    #[arg(long, allow_hyphen_values = true)]
    torus: Option<String>,
    /// Regular element: coordinates, or coefficients in the torus basis.
    #[arg(long, allow_hyphen_values = true)]
    regular: Option<String>,
    /// Tolerance of the floating-point eigen search.
    #[arg(long, default_value_t = DEFAULT_TOL, allow_hyphen_values = true)]
    tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Tangent,
    Classic,
    Lift,
}

/// Seed from [`SEED_VAR`], default 0.
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(0),
    }
}

/// Runs one command with the seed taken from the environment.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match seed_from_env() {
        Ok(seed) => run_with_seed(args, seed, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run_with_seed<I, T>(args: I, seed: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    let format = match &cli.command {
        Command::Check(c) | Command::Roots { common: c, .. } | Command::Samelson { common: c, .. } => c.format,
        Command::Verify { common, .. } => common.format,
    };
    match execute(cli.command, seed) {
        Ok(outcome) => {
            let text = match format {
                Format::Text => report::to_text(&outcome),
                Format::Json => report::to_json(&outcome),
            };
            let _ = out.write_all(text.as_bytes());
            if let Some(e) = &outcome.error {
                let _ = writeln!(err, "error: {e}");
            }
            i32::from(!outcome.passed())
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(command: Command, seed: u64) -> Result<Outcome, CliError> {
    match command {
        Command::Check(c) => {
            let loaded = parse_algebra(&c.file)?;
            let mut o = Outcome::new("check", loaded.algebra.clone());
            o.report.push(check_jacobi(&loaded.algebra));
            o.report.push(check_compact_type(&loaded.algebra));
            Ok(o)
        }
        Command::Roots { common, roots } => {
            let loaded = parse_algebra(&common.file)?;
            let opts = decompose_options(&loaded, &roots, seed)?;
            let mut o = Outcome::new("roots", loaded.algebra.clone());
            structural_checks(&mut o, &opts);
            Ok(o)
        }
        Command::Samelson {
            common,
            roots,
            k,
            mode,
        } => {
            let k = k as usize;
            if mode == Mode::Classic && k != 1 {
                return Err(CliError::Usage("--k applies to the tangent and lift modes only".into()));
            }
            let loaded = parse_algebra(&common.file)?;
            let opts = decompose_options(&loaded, &roots, seed)?;
            let mut o = Outcome::new("samelson", loaded.algebra.clone());
            if structural_checks(&mut o, &opts) {
                let datum = o.datum.clone().expect("checks passed");
                let g = &loaded.algebra;
                let built = match mode {
                    Mode::Tangent => tower_complex_structure(g, &datum, k).map(|j| (k, j)),
                    Mode::Classic => build_classic_samelson(g, &datum).map(|j| (0, j)),
                    Mode::Lift => build_classic_samelson(g, &datum).and_then(|j| {
                        let t = tower(g, k)?;
                        t.levels()
                            .iter()
                            .try_fold(j, |j, level| lift_complex_structure(level, &j))
                            .map(|j| (k, j))
                    }),
                };
                match built {
                    Ok((level, j)) => {
                        o.report.push(verify_j_squared(&j));
                        o.report.push(verify_integrability(&j));
                        if mode == Mode::Tangent && level == 1 {
                            let tg = tangent_algebra(g).expect("Jacobi verified");
                            let cases = case_suite(&tg, &datum, &j).expect("structure built from this datum");
                            o.report.extend(cases);
                        }
                        o.structure = Some(Placed { level, j });
                    }
                    Err(e) => o.error = Some(e.to_string()),
                }
            }
            Ok(o)
        }
        Command::Verify { common, j } => {
            let loaded = parse_algebra(&common.file)?;
            let m = parse_matrix(&j)?;
            let g = loaded.algebra;
            let level = tower_level(g.dim(), m.rows()).ok_or_else(|| {
                CliError::Parse(format!(
                    "{}: a {}x{} matrix does not act on {} (dim {}) or any tangent level up to dim {DEFAULT_DIMENSION_CAP}",
                    j.display(),
                    m.rows(),
                    m.cols(),
                    g.name(),
                    g.dim()
                ))
            })?;
            let mut o = Outcome::new("verify", g.clone());
            let jac = check_jacobi(&g);
            let ok = jac.passed;
            o.report.push(jac);
            if !ok {
                return Ok(o);
            }
            let target = if level == 0 {
                g
            } else {
                tower(&g, level).map_err(|e| CliError::Parse(e.to_string()))?.top().total().clone()
            };
            let structure = ComplexStructure::from_matrix(target, m).map_err(|e| CliError::Parse(e.to_string()))?;
            o.report.push(verify_j_squared(&structure));
            o.report.push(verify_integrability(&structure));
            o.structure = Some(Placed { level, j: structure });
            Ok(o)
        }
    }
}

/// Level `l` with `2^l · n == size`, if any within the dimension cap.
fn tower_level(n: usize, size: usize) -> Option<usize> {
    (0..).map(|l| (l, n << l)).take_while(|&(_, d)| d <= DEFAULT_DIMENSION_CAP.max(n)).find(|&(_, d)| d == size).map(|(l, _)| l)
}

fn decompose_options(loaded: &LoadedAlgebra, args: &RootArgs, seed: u64) -> Result<DecomposeOptions, CliError> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let n = loaded.algebra.dim();
    let torus = match &args.torus {
        Some(s) => Some(parse_torus_arg(s, n)?),
        None => loaded.torus.clone(),
    };
    let regular = match &args.regular {
        None => loaded.regular.clone(),
        Some(s) => {
            let v = parse_rational_list(s, "--regular")?;
            if v.len() == n {
                Some(Element::new(v))
            } else {
                let t = torus.as_ref().ok_or_else(|| {
                    CliError::Usage(format!(
                        "--regular has {} entries; torus coefficients need --torus, coordinates need {n}",
                        v.len()
                    ))
                })?;
                if t.len() != v.len() {
                    return Err(CliError::Usage(format!(
                        "--regular has {} entries; expected {n} coordinates or {} torus coefficients",
                        v.len(),
                        t.len()
                    )));
                }
                Some(
                    t.iter()
                        .zip(&v)
                        .fold(Element::zero(n), |acc, (h, p)| acc + h.scale_rational(p)),
                )
            }
        }
    };
    Ok(DecomposeOptions {
        seed,
        torus,
        regular,
        tol: args.tol,
        ..DecomposeOptions::default()
    })
}

/// Jacobi, compact type and the root decomposition. Returns whether a
/// verified datum was stored in `o`.
fn structural_checks(o: &mut Outcome, opts: &DecomposeOptions) -> bool {
    let g: LieAlgebra = o.algebra.clone();
    let jac = check_jacobi(&g);
    let ct = if jac.passed { Some(check_compact_type(&g)) } else { None };
    let ok = jac.passed && ct.as_ref().is_some_and(|c| c.passed);
    o.report.push(jac);
    o.report.extend(ct);
    if !ok {
        return false;
    }
    match decompose(&g, opts) {
        Ok(d) => {
            let item = d.verify_exact();
            let passed = item.passed;
            o.report.push(item);
            o.datum = Some(d);
            passed
        }
        Err(e) => {
            o.error = Some(e.to_string());
            false
        }
    }
}
