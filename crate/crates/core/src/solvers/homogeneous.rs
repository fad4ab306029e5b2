use std::ops::ControlFlow;

use num_traits::Zero;

use crate::assignment::{for_each_cycle, strong_components, CYCLE_CAP};
use crate::error::{Error, Result};
use crate::linalg::{butkovic_normal_form, frobenius_konig};
use crate::matrix::Matrix;
use crate::scalar::{MaxPlus, Rational};
use crate::semiring::{sign_power, Semiring, Symmetric};

use super::{det_auto, jacobi_solve, SolveOptions, SolveReport, Status};

/// `x̂` of an `n × (n+1)` system together with a thin solution of the same
/// modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatSolution<T> {
    /// `x̂_k = (⊖1)^{n-k} det A_{|k)}`, columns counted from zero.
    pub hat: Vec<T>,
    /// Thin, with `A x ∇ 0` and `|x| = |x̂|`.
    pub solution: Vec<T>,
    /// A thin nonzero `x̂` makes every thin solution a thin multiple of it.
    pub hat_is_thin: bool,
}

fn embed<T: Symmetric>(m: &MaxPlus) -> Result<T> {
    T::embed(m).ok_or_else(|| {
        Error::Unsupported(format!("{} has no thin element of modulus {m}", T::NAME))
    })
}

fn check_homogeneous<T: Symmetric>() -> Result<()> {
    if T::CLASS.homogeneous && T::CLASS.weak_elimination {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} lacks the properties behind homogeneous balances \
             (invertible elements thin, balanced products split, balanced sums absorb)",
            T::NAME
        )))
    }
}

/// Thin `y` with `M y ∇ rhs`, empty for an empty block.
fn solve_block<T: Symmetric>(m: &Matrix<T>, rhs: &[T], opts: &SolveOptions) -> Result<Vec<T>> {
    if rhs.is_empty() {
        return Ok(Vec::new());
    }
    let report = jacobi_solve(m, rhs, opts)?;
    Ok(report.solution.expect("a finished iteration has a limit"))
}

pub fn homogeneous_hat<T: Symmetric>(a: &Matrix<T>, opts: &SolveOptions) -> Result<HatSolution<T>> {
    let n = a.rows();
    if a.cols() != n + 1 {
        return Err(Error::Dimension(format!(
            "expected an n x (n+1) matrix, got {}x{}",
            n,
            a.cols()
        )));
    }
    if n == 0 {
        return Ok(HatSolution {
            hat: vec![T::one()],
            solution: vec![T::one()],
            hat_is_thin: true,
        });
    }
    let hat = (0..=n)
        .map(|k| Ok(sign_power::<T>(n - k).mul(&det_auto(&a.without_column(k), opts.brute_bound)?)))
        .collect::<Result<Vec<T>>>()?;
    let hat_is_thin = hat.iter().all(T::is_thin);
    if hat.iter().all(T::is_zero) {
        return Ok(HatSolution {
            solution: hat.clone(),
            hat,
            hat_is_thin,
        });
    }
    let k = (0..=n)
        .rev()
        .find(|&k| !hat[k].is_zero() && hat[k].modulus().inverse().is_some())
        .ok_or_else(|| Error::Precondition("no entry of |x̂| is invertible".into()))?;
    let column: Vec<T> = a.column(k).iter().map(T::negate).collect();
    let y = solve_block(&a.without_column(k), &column, opts)?;
    let xk = embed::<T>(&hat[k].modulus())?;
    let mut solution = Vec::with_capacity(n + 1);
    let mut rest = y.iter();
    for j in 0..=n {
        if j == k {
            solution.push(xk.clone());
        } else {
            solution.push(xk.mul(rest.next().expect("one unknown per other column")));
        }
    }
    Ok(HatSolution {
        hat,
        solution,
        hat_is_thin,
    })
}

/// A thin nonzero `x` with `A x ∇ 0` whenever `det A ∇ 0`.
///
/// Returns `no_thin_certificate` when `det A` is not balanced, in which
/// case no thin nonzero solution exists.
pub fn homogeneous_solve<T: Symmetric>(
    a: &Matrix<T>,
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    check_homogeneous::<T>()?;
    let n = super::check_system(a, &vec![T::zero(); a.rows()])?;
    let det = det_auto(a, opts.brute_bound)?;
    let mut report = SolveReport::empty(n);
    report.det = Some(det.clone());
    if !det.is_balanced() {
        report.status = Some(Status::NoThinCertificate);
        return Ok(report);
    }
    report.status = Some(if det.is_zero() {
        Status::StructurallySingular
    } else {
        Status::BalancedDeterminant
    });
    report.solution = Some(kernel(a, opts)?);
    Ok(report)
}

fn kernel<T: Symmetric>(a: &Matrix<T>, opts: &SolveOptions) -> Result<Vec<T>> {
    match frobenius_konig(&a.modulus()) {
        Some(block) => singular_kernel(a, &block.rows, &block.cols, opts),
        None => regular_kernel(a, opts),
    }
}

/// Zero on the columns outside the block; the block columns solve the
/// `(q-1) × q` system left after dropping the block rows.
fn singular_kernel<T: Symmetric>(
    a: &Matrix<T>,
    block_rows: &[usize],
    block_cols: &[usize],
    opts: &SolveOptions,
) -> Result<Vec<T>> {
    let n = a.rows();
    let q = block_cols.len();
    let dropped = &block_rows[..n + 1 - q];
    let kept: Vec<usize> = (0..n).filter(|r| !dropped.contains(r)).collect();
    let y = rectangular_kernel(&a.select(&kept, block_cols), opts)?;
    let mut x = vec![T::zero(); n];
    for (&j, value) in block_cols.iter().zip(y) {
        x[j] = value;
    }
    Ok(x)
}

fn rectangular_kernel<T: Symmetric>(c: &Matrix<T>, opts: &SolveOptions) -> Result<Vec<T>> {
    let hat = homogeneous_hat(c, opts)?;
    if hat.hat.iter().any(|x| !x.is_zero()) {
        return Ok(hat.solution);
    }
    // Every maximal minor vanishes, so fixing the first unknown to zero
    // leaves a square system of zero determinant.
    let mut x = vec![T::zero()];
    x.extend(kernel(&c.without_column(0), opts)?);
    Ok(x)
}

/// Nonzero determinant: normalize so that `|B_ii| = 0 ≥ |B_ij|`, then use a
/// balanced tight entry or a tight cycle of opposite parity.
fn regular_kernel<T: Symmetric>(a: &Matrix<T>, opts: &SolveOptions) -> Result<Vec<T>> {
    let n = a.rows();
    let modulus = a.modulus();
    let nf = butkovic_normal_form(&modulus)?;
    let src = &nf.source;
    let trivial = modulus
        .entries()
        .iter()
        .all(|m| m.is_bottom() || *m == MaxPlus::one());
    let (u, v) = if trivial {
        (vec![Rational::zero(); n], vec![Rational::zero(); n])
    } else {
        (nf.scaling.row.clone(), nf.scaling.col.clone())
    };
    let mut b = Matrix::zeros(n, n);
    for r in 0..n {
        for (j, vj) in v.iter().enumerate() {
            let entry = a.get(src[r], j);
            if !entry.is_zero() {
                let factor = embed::<T>(&MaxPlus::finite(-&u[src[r]] - vj))?;
                b.set(r, j, entry.mul(&factor));
            }
        }
    }
    let tight = |r: usize, j: usize| b.get(r, j).modulus() == MaxPlus::one();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|r| (0..n).filter(|&j| tight(r, j)).collect())
        .collect();
    let comp = strong_components(&succ);

    let normalized = match balanced_tight_entry(&b, &succ, &comp) {
        Some((r, j)) => through_balanced_entry(&b, r, j, opts)?,
        None => through_cycle(&b, &succ, opts)?,
    };
    (0..n)
        .map(|j| Ok(embed::<T>(&MaxPlus::finite(-&v[j]))?.mul(&normalized[j])))
        .collect()
}

fn balanced_tight_entry<T: Symmetric>(
    b: &Matrix<T>,
    succ: &[Vec<usize>],
    comp: &[usize],
) -> Option<(usize, usize)> {
    (0..b.rows()).find_map(|r| {
        succ[r]
            .iter()
            .find(|&&j| (r == j || comp[r] == comp[j]) && b.get(r, j).is_balanced())
            .map(|&j| (r, j))
    })
}

/// `x_j = 1` and the remaining unknowns solve the system without row `r`.
fn through_balanced_entry<T: Symmetric>(
    b: &Matrix<T>,
    r: usize,
    j: usize,
    opts: &SolveOptions,
) -> Result<Vec<T>> {
    let n = b.rows();
    let rows: Vec<usize> = (0..n).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    let rhs: Vec<T> = rows.iter().map(|&i| b.get(i, j).negate()).collect();
    let y = solve_block(&b.select(&rows, &cols), &rhs, opts)?;
    let mut x = vec![T::zero(); n];
    x[j] = T::one();
    for (&c, value) in cols.iter().zip(y) {
        x[c] = value;
    }
    Ok(x)
}

/// With a unit diagonal, a tight cycle `c` with `1 ⊕ (⊖1)^{p-1} Π B_{c_k c_{k+1}}`
/// balanced fixes `z` on the cycle; the other unknowns solve `F y ∇ ⊖V z`.
fn through_cycle<T: Symmetric>(
    b: &Matrix<T>,
    succ: &[Vec<usize>],
    opts: &SolveOptions,
) -> Result<Vec<T>> {
    let n = b.rows();
    let mut unit = b.clone();
    for r in 0..n {
        let inv = b.get(r, r).inverse().ok_or_else(|| {
            Error::Precondition(format!("normalized diagonal entry {r} is not invertible"))
        })?;
        for j in 0..n {
            unit.set(r, j, inv.mul(b.get(r, j)));
        }
    }
    let mut found = None;
    let flow = for_each_cycle(succ, CYCLE_CAP, |c| {
        let p = c.len();
        let product = (0..p).fold(T::one(), |acc, k| acc.mul(unit.get(c[k], c[(k + 1) % p])));
        if T::one()
            .add(&sign_power::<T>(p - 1).mul(&product))
            .is_balanced()
        {
            found = Some(c.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    let cycle = match (flow, found) {
        (ControlFlow::Break(()), Some(cycle)) => cycle,
        _ => {
            return Err(Error::Precondition(
                "balanced determinant without a balanced tight cycle".into(),
            ))
        }
    };
    let p = cycle.len();
    let mut x = vec![T::zero(); n];
    x[cycle[p - 1]] = T::one();
    for k in (0..p - 1).rev() {
        x[cycle[k]] = unit
            .get(cycle[k], cycle[k + 1])
            .mul(&x[cycle[k + 1]])
            .negate();
    }
    let others: Vec<usize> = (0..n).filter(|i| !cycle.contains(i)).collect();
    let rhs: Vec<T> = others
        .iter()
        .map(|&r| {
            cycle
                .iter()
                .fold(T::zero(), |acc, &c| acc.add(&unit.get(r, c).mul(&x[c])))
                .negate()
        })
        .collect();
    let y = solve_block(&unit.select(&others, &others), &rhs, opts)?;
    for (&i, value) in others.iter().zip(y) {
        x[i] = value;
    }
    Ok(x)
}
