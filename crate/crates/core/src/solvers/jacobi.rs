use crate::error::{Error, Result};
use crate::linalg::{hungarian_scaling, invert};
use crate::matrix::Matrix;
use crate::semiring::{thin_witnesses, Symmetric};

use super::{check_system, Chooser, DiagonalSign, SolveOptions, SolveReport};

/// `Σ A = D ⊕ N` with `D` thin diagonal and `|det A| = |D_11 ⋯ D_nn|`.
///
/// `Σ` reorders rows so that an optimal assignment of `|A|` sits on the
/// diagonal. Gauss-Seidel further splits `N` into its strictly lower part
/// `L` and the rest `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDecomposition<T> {
    /// Row `r` of the decomposed matrix is row `source[r]` of the input.
    pub source: Vec<usize>,
    pub d: Vec<T>,
    pub d_inv: Vec<T>,
    pub n: Matrix<T>,
}

impl<T: Symmetric> JacobiDecomposition<T> {
    pub fn size(&self) -> usize {
        self.d.len()
    }

    pub fn diagonal(&self) -> Matrix<T> {
        Matrix::diagonal(&self.d)
    }

    pub fn lower(&self) -> Matrix<T> {
        Matrix::from_fn(self.size(), self.size(), |i, j| {
            if j < i {
                self.n.get(i, j).clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn upper(&self) -> Matrix<T> {
        Matrix::from_fn(self.size(), self.size(), |i, j| {
            if j >= i {
                self.n.get(i, j).clone()
            } else {
                T::zero()
            }
        })
    }

    /// `D ⊕ N`, the row-permuted input.
    pub fn recompose(&self) -> Matrix<T> {
        self.diagonal().add(&self.n).expect("same shape")
    }
}

/// Splits `A` after moving an optimal assignment of `|A|` onto the diagonal.
///
/// A thin `A_ii` goes to `D` whole. A balanced or otherwise non-thin `A_ii`
/// contributes a thin witness `δ ∇| A_ii` to `D`, signed by
/// `opts.diagonal_sign`, and keeps in `N` the `δ′` with `δ ⊕ δ′ = A_ii`.
pub fn jacobi_decompose<T: Symmetric>(
    a: &Matrix<T>,
    opts: &SolveOptions,
) -> Result<JacobiDecomposition<T>> {
    let n = check_system(a, &vec![T::zero(); a.rows()])?;
    let scaling = hungarian_scaling(&a.modulus())?;
    let source = invert(&scaling.assignment);
    let permuted = a.rows_from(&source);
    let mut d = Vec::with_capacity(n);
    let mut rest = permuted.clone();
    for i in 0..n {
        let aii = permuted.get(i, i);
        if aii.is_thin() {
            d.push(aii.clone());
            rest.set(i, i, T::zero());
            continue;
        }
        let witnesses = thin_witnesses(&T::zero(), aii);
        let first = witnesses.first().cloned().ok_or_else(|| {
            Error::Precondition(format!("diagonal entry {i} has no thin witness"))
        })?;
        let delta = match opts.diagonal_sign {
            DiagonalSign::Positive => first,
            DiagonalSign::Negative if witnesses.contains(&first.negate()) => first.negate(),
            DiagonalSign::Negative => first,
        };
        let complement = if delta.add(&delta.negate()) == *aii {
            delta.negate()
        } else {
            aii.clone()
        };
        rest.set(i, i, complement);
        d.push(delta);
    }
    let d_inv = d
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.inverse().ok_or_else(|| {
                Error::Precondition(format!("diagonal entry {i} of D is not invertible"))
            })
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(JacobiDecomposition {
        source,
        d,
        d_inv,
        n: rest,
    })
}

fn iterate<T: Symmetric>(
    a: &Matrix<T>,
    b: &[T],
    opts: &SolveOptions,
    in_place: bool,
) -> Result<SolveReport<T>> {
    let n = check_system(a, b)?;
    let dec = jacobi_decompose(a, opts)?;
    let rhs: Vec<T> = dec.source.iter().map(|&r| b[r].clone()).collect();
    let cap = if T::CLASS.order_equal {
        n + 1
    } else {
        n + opts.slack + 1
    };
    let mut chooser = Chooser::new(opts.policy);
    let mut x = vec![T::zero(); n];
    let mut trace = vec![x.clone()];
    for _ in 0..cap {
        let mut next = x.clone();
        for i in 0..n {
            let source = if in_place { &next } else { &x };
            let nx = crate::semiring::dot(dec.n.row(i), source);
            let target = dec.d_inv[i].mul(&nx.negate().add(&rhs[i]));
            let admissible = thin_witnesses(&x[i], &target);
            next[i] = chooser.pick(admissible).ok_or_else(|| {
                Error::Precondition(format!(
                    "no thin witness above {:?} for {:?} in row {i}",
                    x[i], target
                ))
            })?;
        }
        if next == x {
            let mut report = SolveReport::empty(n);
            report.solution = Some(x);
            report.trace = trace;
            report.row_permutation = dec.source;
            return Ok(report);
        }
        trace.push(next.clone());
        x = next;
    }
    Err(Error::NotStationary(cap))
}

/// Jacobi iteration `D x^{k+1} ∇| ⊖N x^k ⊕ b` from `x⁰ = 0`, each step
/// the chosen thin witness above the previous iterate.
pub fn jacobi_solve<T: Symmetric>(
    a: &Matrix<T>,
    b: &[T],
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    iterate(a, b, opts, false)
}

/// Gauss-Seidel iteration `D x^{k+1} ∇| ⊖L x^{k+1} ⊖ U x^k ⊕ b`, updating
/// coordinates in order within each sweep.
pub fn gauss_seidel_solve<T: Symmetric>(
    a: &Matrix<T>,
    b: &[T],
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    iterate(a, b, opts, true)
}
