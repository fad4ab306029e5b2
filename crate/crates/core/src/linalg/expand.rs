use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{sign_power, Semiring, Symmetric};

/// Largest size accepted by the permutation expansion unless overridden.
pub const BRUTE_FORCE_BOUND: usize = 9;

fn check_square<T: Clone>(a: &Matrix<T>, bound: usize) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n > bound || n > 31 {
        return Err(Error::BruteForceBound { n, bound });
    }
    Ok(n)
}

struct Expansion<'a, T> {
    a: &'a Matrix<T>,
    flip: fn(&T) -> T,
    total: T,
}

impl<T: Semiring> Expansion<'_, T> {
    fn walk(&mut self, row: usize, used: u32, acc: T, odd: bool) {
        let n = self.a.rows();
        if row == n {
            let term = if odd { (self.flip)(&acc) } else { acc };
            self.total = self.total.add(&term);
            return;
        }
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let entry = self.a.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let inversions = (used >> (c + 1)).count_ones();
            let next = acc.mul(entry);
            if next.is_zero() {
                continue;
            }
            self.walk(row + 1, used | (1 << c), next, odd ^ (inversions % 2 == 1));
        }
    }
}

fn expand<T: Semiring>(a: &Matrix<T>, bound: usize, flip: fn(&T) -> T) -> Result<T> {
    check_square(a, bound)?;
    let mut e = Expansion {
        a,
        flip,
        total: T::zero(),
    };
    e.walk(0, 0, T::one(), false);
    Ok(e.total)
}

/// Signed sum over all permutations; the empty matrix has determinant one.
pub fn det<T: Symmetric>(a: &Matrix<T>, bound: usize) -> Result<T> {
    expand(a, bound, T::negate)
}

/// Unsigned sum over all permutations.
pub fn permanent<T: Semiring>(a: &Matrix<T>, bound: usize) -> Result<T> {
    expand(a, bound, T::clone)
}

/// Matrix of signed cofactors: entry `(i, j)` is `(⊖1)^{i+j} det A(j, i)`.
pub fn adjugate<T: Symmetric>(a: &Matrix<T>, bound: usize) -> Result<Matrix<T>> {
    let n = check_square(a, bound.saturating_add(1))?;
    let mut cof = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let d = det(&a.minor(j, i), bound)?;
            cof.push(sign_power::<T>(i + j).mul(&d));
        }
    }
    Matrix::new(n, n, cof)
}
