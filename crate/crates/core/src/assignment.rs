//! Tight graphs of optimal assignments and polynomial determinants over
//! the bi-valued and symmetrized max-plus semirings.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::extension::{SMax, T2};
use crate::linalg::{hungarian_scaling, invert, is_odd, Scaling};
use crate::matrix::Matrix;
use crate::scalar::{MaxPlus, Rational};
use crate::semiring::{Bool4, Semiring, Symmetric, N2};

/// Default node cap for elementary-cycle enumeration.
pub const CYCLE_CAP: usize = 20;

/// Arcs `(r, j)` with `C_{source[r], j} = u + v` after permuting rows so
/// that the identity is an optimal assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightGraph {
    pub n: usize,
    /// Out-neighbours of each node, loops included.
    pub succ: Vec<Vec<usize>>,
    /// Normalized row `r` is row `source[r]` of the input.
    pub source: Vec<usize>,
    pub scaling: Scaling,
}

pub fn tight_graph(c: &Matrix<MaxPlus>) -> Result<TightGraph> {
    let scaling = hungarian_scaling(c)?;
    let n = c.rows();
    let source = invert(&scaling.assignment);
    let succ = (0..n)
        .map(|r| {
            (0..n)
                .filter(|&j| scaling.is_tight(c, source[r], j))
                .collect()
        })
        .collect();
    Ok(TightGraph {
        n,
        succ,
        source,
        scaling,
    })
}

impl TightGraph {
    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.succ[i].contains(&j)
    }

    /// The optimal assignment value.
    pub fn value(&self) -> Rational {
        self.scaling.value()
    }

    /// Strongly connected component index of every node.
    pub fn components(&self) -> Vec<usize> {
        strong_components(&self.succ)
    }

    /// Whether `(i, j)` lies on some cycle of length at least one.
    pub fn on_cycle(&self, i: usize, j: usize, comp: &[usize]) -> bool {
        self.has_arc(i, j) && comp[i] == comp[j]
    }
}

/// Kosaraju's algorithm, iterative.
pub fn strong_components(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((v, k)) = stack.pop() {
            if let Some(&w) = succ[v].get(k) {
                stack.push((v, k + 1));
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut pred = vec![Vec::new(); n];
    for (v, out) in succ.iter().enumerate() {
        for &w in out {
            pred[w].push(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &pred[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// True iff the graph has a cycle through two distinct nodes, that is iff
/// the optimal assignment is not unique.
pub fn has_multiple_optima(g: &TightGraph) -> bool {
    let comp = g.components();
    (0..g.n).any(|i| g.succ[i].iter().any(|&j| j != i && comp[i] == comp[j]))
}

struct Johnson<'a, F> {
    succ: &'a [Vec<usize>],
    blocked: Vec<bool>,
    waiting: Vec<Vec<usize>>,
    stack: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Johnson<'_, F> {
    fn unblock(&mut self, v: usize) {
        self.blocked[v] = false;
        while let Some(w) = self.waiting[v].pop() {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: usize, start: usize) -> ControlFlow<(), bool> {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for k in 0..self.succ[v].len() {
            let w = self.succ[v][k];
            if w < start || w == v {
                continue;
            }
            if w == start {
                (self.visit)(&self.stack)?;
                found = true;
            } else if !self.blocked[w] && self.circuit(w, start)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for k in 0..self.succ[v].len() {
                let w = self.succ[v][k];
                if w >= start && w != v && !self.waiting[w].contains(&v) {
                    self.waiting[w].push(v);
                }
            }
        }
        self.stack.pop();
        ControlFlow::Continue(found)
    }
}

/// Visits every elementary cycle of length at least two, as the node
/// sequence `c_0 → c_1 → … → c_0`, until `visit` breaks.
///
/// Exponential in the worst case; refuses components larger than `cap`.
pub fn for_each_cycle(
    succ: &[Vec<usize>],
    cap: usize,
    visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let n = succ.len();
    let comp = strong_components(succ);
    let mut sizes = vec![0usize; n];
    for &c in &comp {
        sizes[c] += 1;
    }
    if let Some(&big) = sizes.iter().filter(|&&s| s > cap).max() {
        return Err(Error::CycleCap { nodes: big, cap });
    }
    // Arcs across components lie on no cycle.
    let inner: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            succ[v]
                .iter()
                .copied()
                .filter(|&w| comp[w] == comp[v])
                .collect()
        })
        .collect();
    let mut j = Johnson {
        succ: &inner,
        blocked: vec![false; n],
        waiting: vec![Vec::new(); n],
        stack: Vec::new(),
        visit,
    };
    for s in 0..n {
        if sizes[comp[s]] < 2 {
            continue;
        }
        for v in s..n {
            j.blocked[v] = false;
            j.waiting[v].clear();
        }
        if j.circuit(s, s).is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// True iff the graph has a cycle of even length, that is iff two optimal
/// assignments of opposite parity exist.
pub fn has_odd_optimum_pair(g: &TightGraph) -> Result<bool> {
    has_even_cycle(&g.succ, CYCLE_CAP)
}

pub fn has_even_cycle(succ: &[Vec<usize>], cap: usize) -> Result<bool> {
    for (i, out) in succ.iter().enumerate() {
        if out.iter().any(|&j| j != i && succ[j].contains(&i)) {
            return Ok(true);
        }
    }
    let flow = for_each_cycle(succ, cap, |c| {
        if c.len() % 2 == 0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(flow.is_break())
}

/// Determinant over the bi-valued semiring in polynomial time.
pub fn det_t2(a: &Matrix<T2>) -> Result<T2> {
    if !a.is_square() {
        return Err(Error::Dimension(
            "determinant of a non-square matrix".into(),
        ));
    }
    let g = match tight_graph(&a.modulus()) {
        Ok(g) => g,
        Err(Error::StructurallySingular) => return Ok(T2::Zero),
        Err(e) => return Err(e),
    };
    let doubled = (0..g.n).any(|r| a.get(g.source[r], r).gamma() == N2::Two);
    let coeff = if doubled || has_multiple_optima(&g) {
        N2::Two
    } else {
        N2::One
    };
    Ok(T2::new(coeff, g.value()))
}

/// Determinant of a matrix whose entries are zero or positive, in the
/// symmetrized max-plus semiring.
pub fn det_sign_rmax(a: &Matrix<SMax>) -> Result<SMax> {
    det_sign_rmax_capped(a, CYCLE_CAP)
}

pub fn det_sign_rmax_capped(a: &Matrix<SMax>, cap: usize) -> Result<SMax> {
    if !a.is_square() {
        return Err(Error::Dimension(
            "determinant of a non-square matrix".into(),
        ));
    }
    if let Some(bad) = a
        .entries()
        .iter()
        .find(|x| !x.is_zero() && x.gamma() != Bool4::Plus)
    {
        return Err(Error::Precondition(format!("entry {bad} is not positive")));
    }
    let g = match tight_graph(&a.modulus()) {
        Ok(g) => g,
        Err(Error::StructurallySingular) => return Ok(SMax::Zero),
        Err(e) => return Err(e),
    };
    let coeff = if has_even_cycle(&g.succ, cap)? {
        Bool4::Balanced
    } else if is_odd(&g.scaling.assignment) {
        Bool4::Minus
    } else {
        Bool4::Plus
    };
    Ok(SMax::new(coeff, g.value()))
}

/// Determinant over the symmetrized max-plus semiring in polynomial time
/// (for bounded cycle structure).
pub fn det_smax(a: &Matrix<SMax>) -> Result<SMax> {
    det_smax_capped(a, CYCLE_CAP)
}

pub fn det_smax_capped(a: &Matrix<SMax>, cap: usize) -> Result<SMax> {
    if !a.is_square() {
        return Err(Error::Dimension(
            "determinant of a non-square matrix".into(),
        ));
    }
    let n = a.rows();
    let g = match tight_graph(&a.modulus()) {
        Ok(g) => g,
        Err(Error::StructurallySingular) => return Ok(SMax::Zero),
        Err(e) => return Err(e),
    };
    let comp = g.components();
    let per = g.value();
    for r in 0..n {
        for &j in &g.succ[r] {
            if a.get(g.source[r], j).is_balanced() && g.on_cycle(r, j, &comp) {
                return Ok(SMax::new(Bool4::Balanced, per));
            }
        }
    }
    // Balanced entries left over lie on no optimal permutation.
    let part = |sign: Bool4| {
        a.map(|x| match x.gamma() {
            c if c == sign => SMax::new(Bool4::Plus, x.magnitude().cloned().unwrap_or_default()),
            _ => SMax::Zero,
        })
    };
    let (pos, neg) = (part(Bool4::Plus), part(Bool4::Minus));
    let block = Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => pos.get(i, j).clone(),
        (true, false) => neg.get(i, j - n).clone(),
        _ if i - n == j % n => SMax::one(),
        _ => SMax::Zero,
    });
    det_sign_rmax_capped(&block, cap)
}
