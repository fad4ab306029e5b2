use num_traits::Zero;

use super::invert;
use super::matching::{lexicographic_matching, max_matching};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{MaxPlus, Rational};

/// Dual certificate of an optimal assignment: `C_ij ≤ u_i + v_j` on every
/// finite entry, with equality along `assignment`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scaling {
    pub row: Vec<Rational>,
    pub col: Vec<Rational>,
    /// `assignment[i]` is the column of row `i`; the lexicographically
    /// smallest optimal permutation.
    pub assignment: Vec<usize>,
}

impl Scaling {
    /// `Σu + Σv`, the optimal assignment value.
    pub fn value(&self) -> Rational {
        self.row
            .iter()
            .chain(&self.col)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn is_tight(&self, c: &Matrix<MaxPlus>, i: usize, j: usize) -> bool {
        c.get(i, j)
            .value()
            .is_some_and(|x| *x == &self.row[i] + &self.col[j])
    }

    pub fn is_feasible(&self, c: &Matrix<MaxPlus>) -> bool {
        (0..c.rows()).all(|i| {
            (0..c.cols()).all(|j| {
                c.get(i, j)
                    .value()
                    .is_none_or(|x| *x <= &self.row[i] + &self.col[j])
            })
        })
    }
}

fn square(c: &Matrix<MaxPlus>) -> Result<usize> {
    if !c.is_square() {
        return Err(Error::Dimension(format!(
            "assignment needs a square matrix, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    Ok(c.rows())
}

fn has_finite_permutation(c: &Matrix<MaxPlus>) -> bool {
    let n = c.rows();
    let finite = |i: usize, j: usize| !c.get(i, j).is_bottom();
    max_matching(n, n, &finite).iter().flatten().count() == n
}

/// Optimal dual scaling by the O(n³) shortest augmenting path method.
pub fn hungarian_scaling(c: &Matrix<MaxPlus>) -> Result<Scaling> {
    let n = square(c)?;
    if !has_finite_permutation(c) {
        return Err(Error::StructurallySingular);
    }
    // Minimise the negated weights; `None` marks a forbidden entry.
    let cost = |i: usize, j: usize| c.get(i - 1, j - 1).value().map(|x| -x);
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                if let Some(w) = cost(i0, j) {
                    let cur = w - &u[i0] - &v[j];
                    if minv[j].as_ref().is_none_or(|m| cur < *m) {
                        minv[j] = Some(cur);
                        way[j] = j0;
                    }
                }
                if let Some(m) = &minv[j] {
                    if delta.as_ref().is_none_or(|d| m < d) {
                        delta = Some(m.clone());
                        j1 = j;
                    }
                }
            }
            let delta = delta.ok_or(Error::StructurallySingular)?;
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut scaling = Scaling {
        row: u[1..].iter().map(|x| -x).collect(),
        col: v[1..].iter().map(|x| -x).collect(),
        assignment: Vec::new(),
    };
    let tight = |i: usize, j: usize| scaling.is_tight(c, i, j);
    let assignment = lexicographic_matching(n, &tight)
        .expect("tight arcs of an optimal dual carry a perfect matching");
    scaling.assignment = assignment;
    debug_assert!(scaling.is_feasible(c));
    Ok(scaling)
}

/// Permanent of a max-plus matrix, bottom when no permutation is finite.
pub fn optimal_value(c: &Matrix<MaxPlus>) -> Result<MaxPlus> {
    match hungarian_scaling(c) {
        Ok(s) => Ok(MaxPlus::finite(s.value())),
        Err(Error::StructurallySingular) => Ok(MaxPlus::bottom()),
        Err(e) => Err(e),
    }
}

/// `B = Σ D C D′` with unit diagonal and entries at most the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub scaling: Scaling,
    /// Row `r` of `B` comes from row `source[r]` of `C`.
    pub source: Vec<usize>,
    pub normalized: Matrix<MaxPlus>,
}

impl NormalForm {
    /// `D`, indexed by the rows of `C`.
    pub fn row_scale(&self) -> Matrix<MaxPlus> {
        let d: Vec<MaxPlus> = self
            .scaling
            .row
            .iter()
            .map(|u| MaxPlus::finite(-u))
            .collect();
        Matrix::diagonal(&d)
    }

    /// `D′`.
    pub fn col_scale(&self) -> Matrix<MaxPlus> {
        let d: Vec<MaxPlus> = self
            .scaling
            .col
            .iter()
            .map(|v| MaxPlus::finite(-v))
            .collect();
        Matrix::diagonal(&d)
    }

    /// `Σ`.
    pub fn permutation(&self) -> Matrix<MaxPlus> {
        Matrix::permutation(&self.source)
    }
}

pub fn butkovic_normal_form(c: &Matrix<MaxPlus>) -> Result<NormalForm> {
    let scaling = hungarian_scaling(c)?;
    let source = invert(&scaling.assignment);
    let normalized = Matrix::from_fn(c.rows(), c.cols(), |r, j| {
        let i = source[r];
        match c.get(i, j).value() {
            None => MaxPlus::bottom(),
            Some(x) => MaxPlus::finite(x - &scaling.row[i] - &scaling.col[j]),
        }
    });
    Ok(NormalForm {
        scaling,
        source,
        normalized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Semiring;

    fn ints(rows: &[&[i64]]) -> Matrix<MaxPlus> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| MaxPlus::int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn scaling_invariants_on_small_cases() {
        let c = ints(&[&[1, 0], &[0, 1]]);
        let s = hungarian_scaling(&c).unwrap();
        assert!(s.is_feasible(&c));
        assert_eq!(MaxPlus::finite(s.value()), MaxPlus::int(2));
        assert_eq!(s.assignment, vec![0, 1]);
        let i = Matrix::<MaxPlus>::identity(2);
        let s = hungarian_scaling(&i).unwrap();
        assert_eq!(s.value(), Rational::zero());
        assert_eq!(s.assignment, vec![0, 1]);
    }

    #[test]
    fn singular_is_reported() {
        let c = Matrix::<MaxPlus>::zeros(2, 2);
        assert_eq!(hungarian_scaling(&c), Err(Error::StructurallySingular));
        assert_eq!(optimal_value(&c).unwrap(), MaxPlus::bottom());
    }

    #[test]
    fn normal_form_reconstructs() {
        let c = ints(&[&[5, 0, 3], &[1, 3, 1], &[3, 2, 1]]);
        let nf = butkovic_normal_form(&c).unwrap();
        let rebuilt = nf
            .permutation()
            .mul(&nf.row_scale())
            .unwrap()
            .mul(&c)
            .unwrap()
            .mul(&nf.col_scale())
            .unwrap();
        assert_eq!(rebuilt, nf.normalized);
        for i in 0..3 {
            assert_eq!(*nf.normalized.get(i, i), MaxPlus::one());
            for j in 0..3 {
                assert!(*nf.normalized.get(i, j) <= MaxPlus::one());
            }
        }
    }
}
