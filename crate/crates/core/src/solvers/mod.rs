//! Cramer, Jacobi, Gauss-Seidel and homogeneous solvers for `Ax ∇ b`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{det, BRUTE_FORCE_BOUND};
use crate::matrix::{is_thin_vector, modulus_vector, Matrix};
use crate::scalar::MaxPlus;
use crate::semiring::Symmetric;

mod homogeneous;
mod jacobi;
mod permanents;

pub use homogeneous::{homogeneous_hat, homogeneous_solve, HatSolution};
pub use jacobi::{gauss_seidel_solve, jacobi_decompose, jacobi_solve, JacobiDecomposition};
pub use permanents::{cramer_permanents_jacobi, cramer_permanents_rectangular};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Unique,
    ExistsNonUnique,
    BalancedDeterminant,
    StructurallySingular,
    NoThinCertificate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Unique => "unique",
            Status::ExistsNonUnique => "exists_non_unique",
            Status::BalancedDeterminant => "balanced_determinant",
            Status::StructurallySingular => "structurally_singular",
            Status::NoThinCertificate => "no_thin_certificate",
        })
    }
}

/// How a thin witness is picked when several are admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChoicePolicy {
    /// The canonical candidate: positive sign, base unit direction.
    #[default]
    PreferPositive,
    /// The negation of the canonical candidate when it is admissible.
    PreferNegative,
    /// Uniformly among the admissible candidates.
    Seeded(u64),
}

/// Sign of the thin part `D_ii` split off a balanced diagonal entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DiagonalSign {
    #[default]
    Positive,
    Negative,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub policy: ChoicePolicy,
    pub diagonal_sign: DiagonalSign,
    /// Extra sweeps allowed beyond `n` when same-modulus thin elements may
    /// be comparable.
    pub slack: usize,
    pub brute_bound: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            policy: ChoicePolicy::PreferPositive,
            diagonal_sign: DiagonalSign::Positive,
            slack: 8,
            brute_bound: BRUTE_FORCE_BOUND,
        }
    }
}

pub(crate) struct Chooser {
    policy: ChoicePolicy,
    rng: Option<ChaCha8Rng>,
}

impl Chooser {
    pub(crate) fn new(policy: ChoicePolicy) -> Self {
        let rng = match policy {
            ChoicePolicy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Chooser { policy, rng }
    }

    pub(crate) fn pick<T: Symmetric>(&mut self, mut admissible: Vec<T>) -> Option<T> {
        match self.policy {
            ChoicePolicy::PreferPositive => admissible.into_iter().next(),
            ChoicePolicy::PreferNegative => {
                let first = admissible.first()?.clone();
                let neg = first.negate();
                Some(if admissible.contains(&neg) {
                    neg
                } else {
                    first
                })
            }
            ChoicePolicy::Seeded(_) => {
                let rng = self.rng.as_mut().expect("seeded policy owns a generator");
                admissible.shuffle(rng);
                admissible.into_iter().next()
            }
        }
    }
}

/// Outcome of a solver run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport<T> {
    /// Set by the Cramer and homogeneous solvers; iterative runs leave it
    /// empty since they do not compute the determinant.
    pub status: Option<Status>,
    pub solution: Option<Vec<T>>,
    /// `|det A|⁻¹ |A^adj b|`, the modulus shared by the constructed solutions.
    pub all_solutions_modulus: Option<Vec<MaxPlus>>,
    pub det: Option<T>,
    /// `A^adj b`.
    pub cramer: Option<Vec<T>>,
    /// Iterates `x⁰, x¹, …` up to the limit.
    pub trace: Vec<Vec<T>>,
    /// Row `r` of the normalized system is row `row_permutation[r]` of the
    /// input.
    pub row_permutation: Vec<usize>,
}

impl<T> SolveReport<T> {
    pub(crate) fn empty(n: usize) -> Self {
        SolveReport {
            status: None,
            solution: None,
            all_solutions_modulus: None,
            det: None,
            cramer: None,
            trace: Vec::new(),
            row_permutation: (0..n).collect(),
        }
    }

    /// Sweeps until the iterates became stationary.
    pub fn iterations(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }
}

pub(crate) fn check_system<T: Clone>(a: &Matrix<T>, b: &[T]) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "matrix has {} rows but the right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    Ok(a.rows())
}

/// Determinant by the polynomial path when the semiring has one, else by
/// permutation expansion up to `bound`.
pub fn det_auto<T: Symmetric>(a: &Matrix<T>, bound: usize) -> Result<T> {
    if let Some(r) = T::fast_det(a) {
        match r {
            Err(Error::CycleCap { .. }) if a.rows() <= bound => {}
            r => return r,
        }
    }
    det(a, bound)
}

/// `A^adj b`, entry `k` being the determinant of `A` with column `k`
/// replaced by `b`.
pub fn cramer_vector<T: Symmetric>(a: &Matrix<T>, b: &[T], bound: usize) -> Result<Vec<T>> {
    let n = check_system(a, b)?;
    (0..n)
        .map(|k| det_auto(&a.with_column(k, b), bound))
        .collect()
}

fn scale_modulus(factor: &MaxPlus, v: &[MaxPlus]) -> Vec<MaxPlus> {
    v.iter()
        .map(|x| crate::semiring::Semiring::mul(factor, x))
        .collect()
}

/// Cramer's rule with existence fallbacks.
///
/// A thin invertible determinant and a thin `A^adj b` give the unique thin
/// solution `(det A)⁻¹ A^adj b`. Otherwise a solution of the common
/// modulus is built by the Jacobi iteration whenever `|det A|` is
/// invertible. A zero determinant is reported structurally singular; for
/// `b = 0` the homogeneous solver supplies a nonzero solution.
pub fn cramer_solve<T: Symmetric>(
    a: &Matrix<T>,
    b: &[T],
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    let n = check_system(a, b)?;
    if !T::CLASS.strong_elimination {
        return Err(Error::Unsupported(format!(
            "{} does not allow strong balance elimination",
            T::NAME
        )));
    }
    let d = det_auto(a, opts.brute_bound)?;
    let cramer = cramer_vector(a, b, opts.brute_bound)?;
    let mut report = SolveReport::empty(n);
    report.det = Some(d.clone());
    report.cramer = Some(cramer.clone());

    if d.is_zero() {
        report.status = Some(Status::StructurallySingular);
        if b.iter().all(|x| x.is_zero()) && T::CLASS.homogeneous {
            report.solution = homogeneous_solve(a, opts)?.solution;
        }
        return Ok(report);
    }
    if let Some(inv) = d.modulus().inverse() {
        report.all_solutions_modulus = Some(scale_modulus(&inv, &modulus_vector(&cramer)));
    }
    if d.is_thin() && is_thin_vector(&cramer) {
        if let Some(inv) = d.inverse() {
            report.status = Some(Status::Unique);
            report.solution = Some(
                cramer
                    .iter()
                    .map(|c| crate::semiring::Semiring::mul(&inv, c))
                    .collect(),
            );
            return Ok(report);
        }
    }
    report.status = Some(if d.is_balanced() {
        Status::BalancedDeterminant
    } else {
        Status::ExistsNonUnique
    });
    if d.modulus().inverse().is_some() {
        let iter = jacobi_solve(a, b, opts)?;
        report.solution = iter.solution;
        report.trace = iter.trace;
        report.row_permutation = iter.row_permutation;
    }
    Ok(report)
}
