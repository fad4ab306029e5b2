//! `tropcram`: batch front end for the tropical Cramer toolkit.
//!
//! Exit status 0 on success, 2 when the mathematics has no answer (the
//! status is still printed), 1 on usage, parse or internal errors.

mod load;
mod report;

use std::fmt::Display;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropcram::geometry::{hyperplane_through, meet_hyperplanes, Hyperplane};
use tropcram::linalg::{adjugate, butkovic_normal_form, kleene_star, permanent, BRUTE_FORCE_BOUND};
use tropcram::matrix::format_matrix;
use tropcram::semiring::axioms::{check_axioms, Mode, ENUMERATION_LIMIT};
use tropcram::semiring::descriptor::by_name;
use tropcram::semiring::{Bool4, PhaseCone, Super, Torus, N2};
use tropcram::solvers::{
    cramer_permanents_jacobi, cramer_permanents_rectangular, cramer_solve, det_auto,
    gauss_seidel_solve, homogeneous_solve, jacobi_solve, ChoicePolicy, DiagonalSign, SolveOptions,
    SolveReport,
};
use tropcram::transport::{
    cramer_permanents_transport, cross_check_permanents, solve_transport, PivotOrder,
    TransportProblem,
};
use tropcram::{Error, Ext, Matrix, MaxPlus, SMax, Symmetric};

use load::{check_rhs, job_semiring, Source};
use report::{field, join, solve_report};

const BRUTE_BOUND_VAR: &str = "TROPCRAM_BRUTE_BOUND";

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError { code: 1, message }
    }

    fn from_math(e: Error) -> Self {
        let code = match e {
            Error::StructurallySingular
            | Error::Infeasible(_)
            | Error::NotGeneralPosition(_)
            | Error::NotStationary(_)
            | Error::DivergentStar(_)
            | Error::Precondition(_) => 2,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::from_math(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a job prints and its exit status.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

#[derive(Parser)]
#[command(
    name = "tropcram",
    version,
    about = "Linear systems over tropical extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    PreferPositive,
    PreferNegative,
    Seeded,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Jacobi,
    Transport,
    Brute,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// Read every input as this semiring instead of the declared one.
    #[arg(long)]
    semiring: Option<String>,
    #[arg(long, value_enum, default_value = "prefer-positive")]
    policy: PolicyArg,
    /// Sign of the thin part split off a non-thin diagonal entry.
    #[arg(long, value_enum, default_value = "positive")]
    diagonal_sign: SignArg,
    #[arg(long)]
    seed: Option<u64>,
    /// Print every iterate.
    #[arg(long)]
    trace: bool,
    /// Extra sweeps allowed where same-modulus thin elements may be comparable.
    #[arg(long, default_value_t = 8)]
    slack: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant.
    Det {
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Permanent.
    Per {
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Adjugate matrix.
    Adj {
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Kleene star of a max-plus matrix.
    Star {
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Optimal-assignment scaling and normal form of a max-plus matrix.
    Scale {
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Cramer solve with existence fallbacks.
    Solve {
        matrix: String,
        rhs: String,
        #[command(flatten)]
        common: Common,
    },
    /// Jacobi iteration.
    Jacobi {
        matrix: String,
        rhs: String,
        #[command(flatten)]
        common: Common,
    },
    /// Gauss-Seidel iteration.
    GaussSeidel {
        matrix: String,
        rhs: String,
        #[command(flatten)]
        common: Common,
    },
    /// Thin nonzero solution of A x ∇ 0.
    Homogeneous {
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// All Cramer permanents, of A and b or of an (n-1) x n matrix.
    CramerAll {
        matrix: String,
        rhs: Option<String>,
        #[arg(long, value_enum, default_value = "jacobi")]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Transportation problem of an (n-1) x n max-plus matrix.
    Transport {
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Hyperplane through the columns of an n x (n-1) matrix.
    HyperplaneThrough {
        points: String,
        #[command(flatten)]
        common: Common,
    },
    /// Meet of the hyperplanes given as rows of an (n-1) x n smax matrix.
    Meet {
        hyperplanes: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check the axioms of a named semiring.
    CheckAxioms {
        semiring: String,
        #[arg(long, value_enum, default_value = "sampled")]
        mode: ModeArg,
        #[arg(long, default_value_t = ENUMERATION_LIMIT)]
        budget: usize,
    },
    /// Compare the three permanent routes on a file or on `random` instances.
    CrossCheck {
        matrix: String,
        /// Number of columns of the random instances.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Random entries are integers in [-magnitude, magnitude].
        #[arg(long, default_value_t = 10)]
        magnitude: i64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn brute_bound() -> CliResult<usize> {
    match std::env::var(BRUTE_BOUND_VAR) {
        Err(_) => Ok(BRUTE_FORCE_BOUND),
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::usage(format!("{BRUTE_BOUND_VAR} must be a count, got `{v}`"))),
    }
}

fn options(c: &Common) -> CliResult<SolveOptions> {
    let policy = match c.policy {
        PolicyArg::PreferPositive => ChoicePolicy::PreferPositive,
        PolicyArg::PreferNegative => ChoicePolicy::PreferNegative,
        PolicyArg::Seeded => ChoicePolicy::Seeded(
            c.seed
                .ok_or_else(|| CliError::usage("--policy seeded needs --seed".into()))?,
        ),
    };
    let diagonal_sign = match c.diagonal_sign {
        SignArg::Positive => DiagonalSign::Positive,
        SignArg::Negative => DiagonalSign::Negative,
    };
    Ok(SolveOptions {
        policy,
        diagonal_sign,
        slack: c.slack,
        brute_bound: brute_bound()?,
    })
}

trait Element: Symmetric + FromStr<Err = String> + Display {}

impl<T: Symmetric + FromStr<Err = String> + Display> Element for T {}

/// Calls `$f::<T>(args)` with `T` the semiring named `$name`.
macro_rules! with_semiring {
    ($name:expr, $f:ident($($arg:expr),*)) => {
        match $name {
            "bool4" => $f::<Bool4>($($arg),*),
            "n2" => $f::<N2>($($arg),*),
            "phi" => $f::<PhaseCone>($($arg),*),
            "torus2" => $f::<Torus<2>>($($arg),*),
            "torus4" => $f::<Torus<4>>($($arg),*),
            "super1" => $f::<Super<1>>($($arg),*),
            "super2" => $f::<Super<2>>($($arg),*),
            "smax" => $f::<Ext<Bool4>>($($arg),*),
            "t2" => $f::<Ext<N2>>($($arg),*),
            "phase" => $f::<Ext<PhaseCone>>($($arg),*),
            "torus4-ext" => $f::<Ext<Torus<4>>>($($arg),*),
            "super2-ext" => $f::<Ext<Super<2>>>($($arg),*),
            other => Err(CliError::usage(format!("unknown semiring `{other}`"))),
        }
    };
}

fn det_job<T: Element>(name: &str, a: &Source, opts: &SolveOptions) -> CliResult<Output> {
    let m = a.matrix::<T>(name)?;
    Ok(Output::ok(format!("{}\n", det_auto(&m, opts.brute_bound)?)))
}

fn per_job<T: Element>(name: &str, a: &Source, opts: &SolveOptions) -> CliResult<Output> {
    let m = a.matrix::<T>(name)?;
    Ok(Output::ok(format!(
        "{}\n",
        permanent(&m, opts.brute_bound)?
    )))
}

fn adj_job<T: Element>(name: &str, a: &Source, opts: &SolveOptions) -> CliResult<Output> {
    let m = a.matrix::<T>(name)?;
    Ok(Output::ok(format_matrix(
        name,
        &adjugate(&m, opts.brute_bound)?,
    )))
}

/// Exit status 2 when no solution came out.
fn report_output<T: Display>(r: &SolveReport<T>, trace: bool) -> Output {
    Output {
        text: solve_report(r, trace),
        code: if r.solution.is_none() { 2 } else { 0 },
    }
}

#[derive(Clone, Copy)]
enum Solver {
    Cramer,
    Jacobi,
    GaussSeidel,
}

fn solve_job<T: Element>(
    name: &str,
    a: &Source,
    b: &Source,
    solver: Solver,
    common: &Common,
) -> CliResult<Output> {
    let opts = options(common)?;
    let m = a.matrix::<T>(name)?;
    let rhs = b.vector::<T>(name)?;
    check_rhs(&m, &rhs, &a.path, &b.path)?;
    let report = match solver {
        Solver::Cramer => cramer_solve(&m, &rhs, &opts)?,
        Solver::Jacobi => jacobi_solve(&m, &rhs, &opts)?,
        Solver::GaussSeidel => gauss_seidel_solve(&m, &rhs, &opts)?,
    };
    Ok(report_output(&report, common.trace))
}

fn homogeneous_job<T: Element>(name: &str, a: &Source, common: &Common) -> CliResult<Output> {
    let opts = options(common)?;
    let m = a.matrix::<T>(name)?;
    Ok(report_output(&homogeneous_solve(&m, &opts)?, common.trace))
}

fn through_job<T: Element>(name: &str, v: &Source, common: &Common) -> CliResult<Output> {
    let opts = options(common)?;
    let m = v.matrix::<T>(name)?;
    let through = hyperplane_through(&m, &opts)?;
    let mut out = String::new();
    field(&mut out, "params", join(through.hyperplane.params()));
    field(&mut out, "unique", through.unique);
    Ok(Output::ok(out))
}

fn require(name: &str, wanted: &str, command: &str) -> CliResult<()> {
    if name == wanted {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "{command} works over {wanted}, not {name}"
        )))
    }
}

fn max_plus_matrix(src: &Source, name: &str, command: &str) -> CliResult<Matrix<MaxPlus>> {
    require(name, "rmax", command)?;
    src.matrix::<MaxPlus>(name)
}

fn symmetric_job(
    command: &str,
    name: &str,
    src: &Source,
    opts: &SolveOptions,
) -> CliResult<Output> {
    match command {
        "det" => with_semiring!(name, det_job(name, src, opts)),
        "adj" => with_semiring!(name, adj_job(name, src, opts)),
        _ => with_semiring!(name, per_job(name, src, opts)),
    }
}

fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Det { matrix, common } => {
            let a = Source::read(&matrix)?;
            let name = job_semiring(&[&a], common.semiring.as_deref())?;
            if name == "rmax" {
                return Err(CliError::usage(
                    "det needs a semiring with a symmetry; use per for rmax".into(),
                ));
            }
            symmetric_job("det", &name, &a, &options(&common)?)
        }
        Command::Per { matrix, common } => {
            let a = Source::read(&matrix)?;
            let name = job_semiring(&[&a], common.semiring.as_deref())?;
            if name == "rmax" {
                let m = a.matrix::<MaxPlus>(&name)?;
                return Ok(Output::ok(format!("{}\n", permanent(&m, brute_bound()?)?)));
            }
            symmetric_job("per", &name, &a, &options(&common)?)
        }
        Command::Adj { matrix, common } => {
            let a = Source::read(&matrix)?;
            let name = job_semiring(&[&a], common.semiring.as_deref())?;
            if name == "rmax" {
                let m = a.matrix::<MaxPlus>(&name)?;
                let bound = brute_bound()?;
                let n = m.rows();
                let mut adj = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        adj.set(i, j, permanent(&m.minor(j, i), bound)?);
                    }
                }
                return Ok(Output::ok(format_matrix(&name, &adj)));
            }
            symmetric_job("adj", &name, &a, &options(&common)?)
        }
        Command::Star { matrix, common } => {
            let a = Source::read(&matrix)?;
            let name = job_semiring(&[&a], common.semiring.as_deref())?;
            let m = max_plus_matrix(&a, &name, "star")?;
            Ok(Output::ok(format_matrix(&name, &kleene_star(&m)?)))
        }
        Command::Scale { matrix, common } => {
            let a = Source::read(&matrix)?;
            let name = job_semiring(&[&a], common.semiring.as_deref())?;
            let m = max_plus_matrix(&a, &name, "scale")?;
            let nf = butkovic_normal_form(&m)?;
            let fmt = |v: &[tropcram::Rational]| {
                join(&v.iter().cloned().map(MaxPlus::finite).collect::<Vec<_>>())
            };
            let mut out = String::new();
            field(&mut out, "row-order", join(&nf.source));
            field(&mut out, "u", fmt(&nf.scaling.row));
            field(&mut out, "v", fmt(&nf.scaling.col));
            field(&mut out, "per", MaxPlus::finite(nf.scaling.value()));
            out.push_str(&format_matrix(&name, &nf.normalized));
            Ok(Output::ok(out))
        }
        Command::Solve {
            matrix,
            rhs,
            common,
        } => system(&matrix, &rhs, Solver::Cramer, &common),
        Command::Jacobi {
            matrix,
            rhs,
            common,
        } => system(&matrix, &rhs, Solver::Jacobi, &common),
        Command::GaussSeidel {
            matrix,
            rhs,
            common,
        } => system(&matrix, &rhs, Solver::GaussSeidel, &common),
        Command::Homogeneous { matrix, common } => {
            let a = Source::read(&matrix)?;
            let name = job_semiring(&[&a], common.semiring.as_deref())?;
            with_semiring!(name.as_str(), homogeneous_job(&name, &a, &common))
        }
        Command::CramerAll {
            matrix,
            rhs,
            method,
            common,
        } => cramer_all(&matrix, rhs.as_deref(), method, &common),
        Command::Transport { matrix, common } => {
            let a = Source::read(&matrix)?;
            let name = job_semiring(&[&a], common.semiring.as_deref())?;
            let m = max_plus_matrix(&a, &name, "transport")?;
            let p = TransportProblem::new(m).map_err(|e| a.wrap(e))?;
            let s = solve_transport(&p, PivotOrder::RowMajor)?;
            let dual = s.dual.normalized();
            let as_max = |v: &[tropcram::Rational]| {
                join(&v.iter().cloned().map(MaxPlus::finite).collect::<Vec<_>>())
            };
            let mut out = String::new();
            field(&mut out, "value", MaxPlus::finite(s.value.clone()));
            field(&mut out, "u", as_max(&dual.u));
            field(&mut out, "v", as_max(&dual.v));
            field(&mut out, "permanents", as_max(&dual.permanents()));
            field(&mut out, "pivots", s.pivots);
            out.push_str("flow:\n");
            out.push_str(&s.flow.to_string());
            Ok(Output::ok(out))
        }
        Command::HyperplaneThrough { points, common } => {
            let v = Source::read(&points)?;
            let name = job_semiring(&[&v], common.semiring.as_deref())?;
            with_semiring!(name.as_str(), through_job(&name, &v, &common))
        }
        Command::Meet {
            hyperplanes,
            common,
        } => {
            let src = Source::read(&hyperplanes)?;
            let name = job_semiring(&[&src], common.semiring.as_deref())?;
            require(&name, "smax", "meet")?;
            let opts = options(&common)?;
            let p = src.matrix::<SMax>(&name)?;
            let hs = (0..p.rows())
                .map(|i| Hyperplane::new(p.row(i).to_vec()))
                .collect::<tropcram::Result<Vec<_>>>()
                .map_err(|e| src.wrap(e))?;
            let meet = meet_hyperplanes(&hs, &opts)?;
            let mut out = String::new();
            field(&mut out, "pattern", &meet.pattern);
            field(&mut out, "point", join(&meet.point));
            field(&mut out, "solution", join(&meet.solution));
            field(&mut out, "unique", meet.unique);
            Ok(Output::ok(out))
        }
        Command::CheckAxioms {
            semiring,
            mode,
            budget,
        } => {
            let d = by_name(&semiring)
                .ok_or_else(|| CliError::usage(format!("unknown semiring `{semiring}`")))?;
            let mode = match mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Sampled => Mode::Sampled,
            };
            let report =
                check_axioms(&d, mode, budget).map_err(|e| CliError::usage(e.to_string()))?;
            Ok(Output::ok(report.to_string()))
        }
        Command::CrossCheck {
            matrix,
            n,
            cases,
            magnitude,
            seed,
        } => cross_check(&matrix, n, cases, magnitude, seed),
    }
}

fn system(matrix: &str, rhs: &str, solver: Solver, common: &Common) -> CliResult<Output> {
    let a = Source::read(matrix)?;
    let b = Source::read(rhs)?;
    let name = job_semiring(&[&a, &b], common.semiring.as_deref())?;
    with_semiring!(name.as_str(), solve_job(&name, &a, &b, solver, common))
}

fn cramer_all(
    matrix: &str,
    rhs: Option<&str>,
    method: MethodArg,
    common: &Common,
) -> CliResult<Output> {
    let a = Source::read(matrix)?;
    let b = rhs.map(Source::read).transpose()?;
    let mut sources = vec![&a];
    sources.extend(b.as_ref());
    let name = job_semiring(&sources, common.semiring.as_deref())?;
    let m = max_plus_matrix(&a, &name, "cramer-all")?;
    let bound = brute_bound()?;
    let values = match b {
        Some(b) => {
            let v = b.vector::<MaxPlus>(&name)?;
            check_rhs(&m, &v, &a.path, &b.path)?;
            match method {
                MethodArg::Jacobi => cramer_permanents_jacobi(&m, &v)?,
                MethodArg::Brute => (0..v.len())
                    .map(|k| permanent(&m.with_column(k, &v), bound))
                    .collect::<tropcram::Result<Vec<_>>>()?,
                MethodArg::Transport => {
                    return Err(CliError::usage(
                        "the transport method takes a single (n-1) x n matrix".into(),
                    ))
                }
            }
        }
        None => match method {
            MethodArg::Jacobi => cramer_permanents_rectangular(&m).map_err(|e| a.wrap(e))?,
            MethodArg::Transport => cramer_permanents_transport(&m)?,
            MethodArg::Brute => (0..m.cols())
                .map(|k| permanent(&m.without_column(k), bound))
                .collect::<tropcram::Result<Vec<_>>>()?,
        },
    };
    Ok(Output::ok(format!("{}\n", join(&values))))
}

fn random_instance(rng: &mut ChaCha8Rng, n: usize, magnitude: i64) -> Matrix<MaxPlus> {
    Matrix::from_fn(n - 1, n, |_, _| {
        MaxPlus::int(rng.gen_range(-magnitude..=magnitude))
    })
}

fn cross_check(
    matrix: &str,
    n: usize,
    cases: usize,
    magnitude: i64,
    seed: Option<u64>,
) -> CliResult<Output> {
    if matrix != "random" {
        let a = Source::read(matrix)?;
        let name = job_semiring(&[&a], None)?;
        let m = max_plus_matrix(&a, &name, "cross-check")?;
        let report = cross_check_permanents(&m).map_err(|e| CliError::usage(e.to_string()))?;
        let mut out = String::new();
        if let Some(b) = &report.brute_force {
            field(&mut out, "brute-force", join(b));
        }
        field(&mut out, "jacobi", join(&report.jacobi));
        match &report.transport {
            Some(t) => field(&mut out, "transport", join(t)),
            None => field(&mut out, "transport", "infeasible"),
        }
        let [brute, jac, tr] = report.timings;
        eprintln!("timings: brute-force {brute:?}, jacobi {jac:?}, transport {tr:?}");
        field(&mut out, "agree", true);
        return Ok(Output::ok(out));
    }
    let seed = seed.ok_or_else(|| CliError::usage("random instances need --seed".into()))?;
    if n < 2 {
        return Err(CliError::usage(
            "random instances need --n at least 2".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let m = random_instance(&mut rng, n, magnitude);
        if let Err(e) = cross_check_permanents(&m) {
            return Ok(Output {
                text: format!("FAIL case {case}: {e}\n{}", format_matrix("rmax", &m)),
                code: 1,
            });
        }
    }
    Ok(Output::ok(format!("OK {cases}/{cases}\n")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("tropcram: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
