use crate::matrix::Matrix;
use crate::scalar::MaxPlus;

fn augment(
    row: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
    cols: usize,
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for c in 0..cols {
        if seen[c] || !allowed(row, c) {
            continue;
        }
        seen[c] = true;
        if owner[c].is_none_or(|r| augment(r, allowed, cols, seen, owner)) {
            owner[c] = Some(row);
            return true;
        }
    }
    false
}

/// Maximum bipartite matching; returns the row matched to each column.
pub fn max_matching(
    rows: usize,
    cols: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
) -> Vec<Option<usize>> {
    let mut owner = vec![None; cols];
    for r in 0..rows {
        let mut seen = vec![false; cols];
        augment(r, allowed, cols, &mut seen, &mut owner);
    }
    owner
}

fn perfect_on(rows: &[usize], cols: &[usize], allowed: &dyn Fn(usize, usize) -> bool) -> bool {
    let sub = |i: usize, j: usize| allowed(rows[i], cols[j]);
    let owner = max_matching(rows.len(), cols.len(), &sub);
    owner.iter().flatten().count() == rows.len()
}

/// Lexicographically smallest perfect matching of an `n x n` bipartite
/// graph, as `perm[i] = column of row i`.
pub fn lexicographic_matching(
    n: usize,
    allowed: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let all: Vec<usize> = (0..n).collect();
    if !perfect_on(&all, &all, allowed) {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut free: Vec<usize> = all.clone();
    for i in 0..n {
        let rest: Vec<usize> = (i + 1..n).collect();
        let pick = free.iter().copied().find(|&j| {
            if !allowed(i, j) {
                return false;
            }
            let cols: Vec<usize> = free.iter().copied().filter(|&c| c != j).collect();
            perfect_on(&rest, &cols, allowed)
        })?;
        perm.push(pick);
        free.retain(|&c| c != pick);
    }
    Some(perm)
}

/// An all-bottom submatrix certifying that the permanent is -inf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroBlock {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// The König block of a square max-plus matrix with no finite permutation.
///
/// The block has `rows + cols = 2n - ν` where `ν` is the maximum matching
/// size of the finite entries, so it is always at least `n + 1`.
pub fn frobenius_konig(c: &Matrix<MaxPlus>) -> Option<ZeroBlock> {
    let n = c.rows();
    let finite = |i: usize, j: usize| !c.get(i, j).is_bottom();
    let owner = max_matching(n, c.cols(), &finite);
    if owner.iter().flatten().count() == n {
        return None;
    }
    let mut matched_row = vec![false; n];
    for r in owner.iter().flatten() {
        matched_row[*r] = true;
    }
    let mut row_seen = vec![false; n];
    let mut col_seen = vec![false; c.cols()];
    let mut stack: Vec<usize> = (0..n).filter(|&r| !matched_row[r]).collect();
    for &r in &stack {
        row_seen[r] = true;
    }
    while let Some(r) = stack.pop() {
        for j in 0..c.cols() {
            if finite(r, j) && !col_seen[j] {
                col_seen[j] = true;
                if let Some(next) = owner[j] {
                    if !row_seen[next] {
                        row_seen[next] = true;
                        stack.push(next);
                    }
                }
            }
        }
    }
    Some(ZeroBlock {
        rows: (0..n).filter(|&r| row_seen[r]).collect(),
        cols: (0..c.cols()).filter(|&j| !col_seen[j]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(rows: Vec<Vec<Option<i64>>>) -> Matrix<MaxPlus> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|x| x.map_or(MaxPlus::bottom(), MaxPlus::int))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn konig_blocks() {
        let all_bottom = Matrix::<MaxPlus>::zeros(2, 2);
        assert_eq!(
            frobenius_konig(&all_bottom),
            Some(ZeroBlock {
                rows: vec![0, 1],
                cols: vec![0, 1]
            })
        );
        assert_eq!(frobenius_konig(&Matrix::<MaxPlus>::identity(3)), None);
        let empty_col = mp(vec![vec![Some(0), None], vec![Some(0), None]]);
        assert_eq!(
            frobenius_konig(&empty_col),
            Some(ZeroBlock {
                rows: vec![0, 1],
                cols: vec![1]
            })
        );
    }

    #[test]
    fn lexicographic_choice() {
        let full = |_: usize, _: usize| true;
        assert_eq!(lexicographic_matching(3, &full), Some(vec![0, 1, 2]));
        let anti = |i: usize, j: usize| i + j == 2;
        assert_eq!(lexicographic_matching(3, &anti), Some(vec![2, 1, 0]));
        let none = |i: usize, _: usize| i != 1;
        assert_eq!(lexicographic_matching(2, &none), None);
    }
}
