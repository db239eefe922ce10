//! The `qmp` command-line tool.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 dimension mismatch, 3 invalid
//! operation (including usage errors), 4 size cap exceeded, 5 failed check.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::Error;
use crate::lsq_cramer::{solve_cramer, solve_matrix_method, Side};
use crate::pinv::{
    mp_inverse_cdet, mp_inverse_rdet, mp_inverse_verified, projection_p, projection_q, rank_of,
    verify_penrose,
};
use crate::qmat::{parse_qmat, write_qmat, write_qmat_with_decimals};
use crate::quaternion_scalar::{format_decimal, format_quaternion};
use crate::rowcol_det::{char_poly, col_det, double_det, row_det};
use crate::{QMatrix, Quaternion, Rational};

const PRECISION: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "qmp",
    version,
    about = "Exact determinantal pseudoinverses of quaternion matrices"
)]
struct Cli {
    /// Append decimal approximations as comments.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Row or column determinant of a square matrix.
    Det {
        #[arg(long, value_enum)]
        mode: DetMode,
        #[arg(long)]
        index: usize,
        file: PathBuf,
    },
    /// Double determinant det(A*A).
    Ddet {
        file: PathBuf,
    },
    /// Rank as the order of the largest nonvanishing principal minor of A*A.
    Rank {
        file: PathBuf,
    },
    /// Moore-Penrose inverse.
    Pinv {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: PinvChoice,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Orthogonal projection P = A+A or Q = AA+.
    Proj {
        #[arg(value_enum)]
        which: Projection,
        file: PathBuf,
    },
    /// Minimum-norm least-squares solution.
    Solve {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum, default_value = "cramer")]
        method: SolveChoice,
        a: PathBuf,
        y: PathBuf,
    },
    /// Check the four Penrose equations for a candidate X.
    Verify {
        a: PathBuf,
        x: PathBuf,
    },
    /// Characteristic polynomial of a Hermitian matrix.
    Charpoly {
        file: PathBuf,
    },
    /// Run the built-in 3×4 worked example and check every intermediate value.
    Example,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DetMode {
    Rdet,
    Cdet,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PinvChoice {
    Auto,
    Cdet,
    Rdet,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Projection {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Q", alias = "q")]
    Q,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolveChoice {
    Cramer,
    Matrix,
    Both,
}

enum Failure {
    Lib(Error),
    Io(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 1,
        Error::DimensionMismatch(_) => 2,
        Error::SizeCap { .. } => 4,
        Error::Inconsistent(_) | Error::MaxIterations { .. } => 5,
        _ => 3,
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    float: bool,
}

impl Ctx<'_> {
    fn scalar(&mut self, r: &Rational) -> std::io::Result<()> {
        let q = Quaternion::real(r.clone());
        writeln!(self.out, "{}", format_quaternion(&q))?;
        if self.float {
            writeln!(self.out, "# ~ {}", format_decimal(&q, PRECISION))?;
        }
        Ok(())
    }

    fn quaternion(&mut self, q: &Quaternion) -> std::io::Result<()> {
        writeln!(self.out, "{}", format_quaternion(q))?;
        if self.float {
            writeln!(self.out, "# ~ {}", format_decimal(q, PRECISION))?;
        }
        Ok(())
    }

    fn render(&self, m: &QMatrix) -> String {
        if self.float {
            write_qmat_with_decimals(m, PRECISION)
        } else {
            write_qmat(m)
        }
    }

    fn matrix(&mut self, m: &QMatrix) -> std::io::Result<()> {
        let text = self.render(m);
        self.out.write_all(text.as_bytes())
    }
}

fn load(path: &Path) -> Result<QMatrix, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_qmat(&text).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Failure::Io(format!(
            "{}: parse error at line {line}, column {column}: {message}",
            path.display()
        )),
        other => Failure::Lib(other),
    })
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        out,
        float: cli.float,
    };
    match execute(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(Failure::Check(message)) => {
            let _ = writeln!(err, "error: {message}");
            5
        }
    }
}

fn execute(command: Command, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    match command {
        Command::Det { mode, index, file } => {
            let a = load(&file)?;
            let value = match mode {
                DetMode::Rdet => row_det(&a, index)?,
                DetMode::Cdet => col_det(&a, index)?,
            };
            ctx.quaternion(&value)?;
        }
        Command::Ddet { file } => ctx.scalar(&double_det(&load(&file)?)?)?,
        Command::Rank { file } => writeln!(ctx.out, "{}", rank_of(&load(&file)?)?)?,
        Command::Pinv {
            file,
            method,
            output,
        } => {
            let a = load(&file)?;
            let result = match method {
                PinvChoice::Auto => mp_inverse_verified(&a)?,
                PinvChoice::Cdet => mp_inverse_cdet(&a)?,
                PinvChoice::Rdet => mp_inverse_rdet(&a)?,
            };
            match output {
                Some(path) => fs::write(&path, ctx.render(&result.pinv))
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => ctx.matrix(&result.pinv)?,
            }
        }
        Command::Proj { which, file } => {
            let a = load(&file)?;
            let m = match which {
                Projection::P => projection_p(&a)?,
                Projection::Q => projection_q(&a)?,
            };
            ctx.matrix(&m)?;
        }
        Command::Solve { side, method, a, y } => {
            let a = load(&a)?;
            let y = load(&y)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let solution = match method {
                SolveChoice::Cramer => solve_cramer(&a, &y, side)?,
                SolveChoice::Matrix => solve_matrix_method(&a, &y, side)?,
                SolveChoice::Both => {
                    let cramer = solve_cramer(&a, &y, side)?;
                    let matrix = solve_matrix_method(&a, &y, side)?;
                    if cramer.solution != matrix.solution {
                        return Err(Failure::Check(
                            "Cramer and matrix-method solutions differ".into(),
                        ));
                    }
                    cramer
                }
            };
            ctx.matrix(&solution.solution)?;
            if let Some((denominator, scaled)) = common_denominator(&solution.solution) {
                writeln!(ctx.out, "# = (1/{denominator}) * {}", row_text(&scaled))?;
            }
            let residual = format_quaternion(&Quaternion::real(solution.residual_norm_sq.clone()));
            writeln!(
                ctx.out,
                "# method {}, residual norm squared {residual}",
                solution.method.name()
            )?;
        }
        Command::Verify { a, x } => {
            let a = load(&a)?;
            let x = load(&x)?;
            let report = verify_penrose(&a, &x)?;
            for (n, (label, holds)) in report.checks().into_iter().enumerate() {
                writeln!(
                    ctx.out,
                    "{} {}) {label}",
                    if holds { "OK  " } else { "FAIL" },
                    n + 1
                )?;
            }
            if !report.all() {
                return Err(Failure::Check(
                    "X is not the Moore-Penrose inverse of A".into(),
                ));
            }
        }
        Command::Charpoly { file } => writeln!(ctx.out, "{}", char_poly(&load(&file)?)?)?,
        Command::Example => example(ctx)?,
    }
    Ok(())
}

const EXAMPLE_A: &str = "3 4\ni -k j 1\n2i j 1 k\n-1 j k i\n";
const EXAMPLE_Y: &str = "1 4\ni j k 1\n";
const EXAMPLE_GRAM: &str = "3 3\n4 2-i+j-k -4i\n2+i-j+k 7 1-2i-j-k\n4i 1+2i+j+k 4\n";
const EXAMPLE_SCALED_PINV: &str = "4 3\n\
    -2-3i-2j-2k 2-12i+2j+2k -3+2i+2j-2k\n\
    1+i+2j+6k -2+2i-6j-4k 1-i-6j+2k\n\
    -2-i-6j-k 6-2i+4j+2k -1+2i+j-6k\n\
    6+i+j+2k -4+2i-2j-6k 1-6i-2j+k\n";
const EXAMPLE_Z: &str = "1 3\n2+2i 3 2-2i\n";
const EXAMPLE_SCALED_X: &str = "1 3\n8+11i+3j-3k 12-4i-8j 11-8i+3j+3k\n";

/// Least common denominator of all components and `m` scaled by it, when it exceeds 1.
fn common_denominator(m: &QMatrix) -> Option<(BigInt, QMatrix)> {
    let lcd = m
        .entries()
        .iter()
        .flat_map(|q| q.components().map(|c| c.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    if lcd.is_one() {
        return None;
    }
    let scaled = m.scale(&Rational::from_integer(lcd.clone()));
    Some((lcd, scaled))
}

fn row_text(m: &QMatrix) -> String {
    m.entries()
        .iter()
        .map(format_quaternion)
        .collect::<Vec<_>>()
        .join(" ")
}

fn example(ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    use crate::lsq_cramer::lsq_left;
    use crate::ratio;
    use crate::rowcol_det::principal_minor_sum;

    let fixture = |text: &str| parse_qmat(text).expect("built-in fixture parses");
    let a = fixture(EXAMPLE_A);
    let y = fixture(EXAMPLE_Y);
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
        if ok {
            "ok"
        } else {
            "MISMATCH"
        }
    };
    let out = &mut *ctx.out;

    writeln!(out, "A =")?;
    out.write_all(write_qmat(&a).as_bytes())?;
    writeln!(out, "A* =")?;
    out.write_all(write_qmat(&a.adjoint()).as_bytes())?;
    let gram = &a * &a.adjoint();
    let flag = check(gram == fixture(EXAMPLE_GRAM), "AA*");
    writeln!(out, "AA* = [{flag}]")?;
    out.write_all(write_qmat(&gram).as_bytes())?;
    let rank = rank_of(&a)?;
    writeln!(out, "rank = {rank} [{}]", check(rank == 2, "rank"))?;
    let d = principal_minor_sum(&gram, rank)?;
    writeln!(
        out,
        "d2(AA*) = {d} [{}]",
        check(d == ratio(42, 1), "minor sum")
    )?;
    let z = &y * &a.adjoint();
    writeln!(
        out,
        "z = {} [{}]",
        row_text(&z),
        check(z == fixture(EXAMPLE_Z), "z")
    )?;
    let scaled = mp_inverse_rdet(&a)?.pinv.scale(&ratio(42, 1));
    let flag = check(scaled == fixture(EXAMPLE_SCALED_PINV), "pseudoinverse");
    writeln!(out, "42 * A+ = [{flag}]")?;
    out.write_all(write_qmat(&scaled).as_bytes())?;
    let x = lsq_left(&a, &y)?.solution;
    let scaled_x = x.scale(&ratio(42, 1));
    let flag = check(scaled_x == fixture(EXAMPLE_SCALED_X), "x0");
    writeln!(out, "42 * x0 = {} [{flag}]", row_text(&scaled_x))?;
    writeln!(out, "x0 = {}", row_text(&x))?;
    let matrix = solve_matrix_method(&a, &y, Side::Left)?.solution;
    writeln!(out, "x0 = yA+ [{}]", check(matrix == x, "matrix method"))?;

    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "worked example mismatch: {}",
            failures.join(", ")
        )))
    }
}
