//! All maximal-minor permanents of an `(n-1) × n` max-plus matrix from the
//! optimal dual of one transportation problem.
//!
//! Rows supply `n` units, columns demand `n - 1`, and cell `(i, j)` earns
//! `C_ij`; bottom cells are excluded arcs. For an optimal dual `(u, v)`,
//! `per C_{|k)} = Σ u_i + Σ_{j≠k} v_j`.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::permanent;
use crate::matrix::Matrix;
use crate::scalar::{MaxPlus, Rational};
use crate::solvers::cramer_permanents_rectangular;

/// Largest `n` for which the cross-check also expands permanents.
pub const CROSS_CHECK_BRUTE_BOUND: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportProblem {
    costs: Matrix<MaxPlus>,
}

impl TransportProblem {
    pub fn new(costs: Matrix<MaxPlus>) -> Result<Self> {
        if costs.cols() < 2 || costs.rows() + 1 != costs.cols() {
            return Err(Error::Dimension(format!(
                "transportation needs an (n-1) x n matrix with n >= 2, got {}x{}",
                costs.rows(),
                costs.cols()
            )));
        }
        Ok(TransportProblem { costs })
    }

    pub fn costs(&self) -> &Matrix<MaxPlus> {
        &self.costs
    }

    /// The number of columns.
    pub fn order(&self) -> usize {
        self.costs.cols()
    }

    pub fn supply(&self) -> u64 {
        self.order() as u64
    }

    pub fn demand(&self) -> u64 {
        self.order() as u64 - 1
    }

    fn cost(&self, i: usize, j: usize) -> Option<&Rational> {
        self.costs.get(i, j).value()
    }

    fn allowed(&self, i: usize, j: usize) -> bool {
        self.cost(i, j).is_some()
    }
}

/// Optimal dual `C_ij ≤ u_i + v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportDual {
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
}

impl TransportDual {
    /// `(u + t, v - t)`, which leaves every permanent unchanged.
    pub fn shifted(&self, t: &Rational) -> Self {
        TransportDual {
            u: self.u.iter().map(|x| x + t).collect(),
            v: self.v.iter().map(|x| x - t).collect(),
        }
    }

    /// The representative with `u_0 = 0`.
    pub fn normalized(&self) -> Self {
        let t = -self.u.first().cloned().unwrap_or_else(Rational::zero);
        self.shifted(&t)
    }

    /// `per C_{|k)} = Σ u + Σ_{j≠k} v_j` for every `k`.
    pub fn permanents(&self) -> Vec<Rational> {
        let total = self
            .u
            .iter()
            .chain(&self.v)
            .fold(Rational::zero(), |acc, x| acc + x);
        self.v.iter().map(|vk| &total - vk).collect()
    }

    pub fn is_feasible(&self, p: &TransportProblem) -> bool {
        (0..self.u.len()).all(|i| {
            (0..self.v.len()).all(|j| p.cost(i, j).is_none_or(|c| *c <= &self.u[i] + &self.v[j]))
        })
    }
}

/// Entering and leaving cells are the first admissible ones in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    RowMajor,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportSolution {
    pub flow: Matrix<u64>,
    /// Basic cells, a spanning tree of rows and columns.
    pub basis: Vec<(usize, usize)>,
    pub dual: TransportDual,
    pub value: Rational,
    pub pivots: usize,
}

impl TransportSolution {
    /// Cells carrying positive flow.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for i in 0..self.flow.rows() {
            for j in 0..self.flow.cols() {
                if *self.flow.get(i, j) > 0 {
                    cells.push((i, j));
                }
            }
        }
        cells
    }

    /// Whether the support is a spanning tree rather than a forest.
    pub fn support_connected(&self) -> bool {
        let (m, n) = (self.flow.rows(), self.flow.cols());
        let mut sets = DisjointSets::new(m + n);
        let mut joins = 0;
        for (i, j) in self.support() {
            if sets.union(i, m + j) {
                joins += 1;
            }
        }
        joins + 1 == m + n
    }

    pub fn support_is_acyclic(&self) -> bool {
        let m = self.flow.rows();
        let mut sets = DisjointSets::new(m + self.flow.cols());
        self.support()
            .into_iter()
            .all(|(i, j)| sets.union(i, m + j))
    }

    /// `y_ij (u_i + v_j - C_ij) = 0` on every cell.
    pub fn complementary_slackness(&self, p: &TransportProblem) -> bool {
        self.support().into_iter().all(|(i, j)| {
            p.cost(i, j)
                .is_some_and(|c| *c == &self.dual.u[i] + &self.dual.v[j])
        })
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn infeasible() -> Error {
    Error::Infeasible("some maximal minor is -inf".into())
}

/// A feasible integral flow by augmenting paths, or `None`.
fn initial_flow(p: &TransportProblem) -> Option<Vec<Vec<u64>>> {
    let (m, n) = (p.costs.rows(), p.costs.cols());
    let mut flow = vec![vec![0u64; n]; m];
    let mut row_left = vec![p.supply(); m];
    let mut col_left = vec![p.demand(); n];
    // Residual search from rows with supply left to columns with demand
    // left, through allowed cells forward and positive cells backward.
    loop {
        let Some(start) = (0..m).find(|&i| row_left[i] > 0) else {
            return Some(flow);
        };
        let mut col_from: Vec<Option<usize>> = vec![None; n];
        let mut row_seen = vec![false; m];
        let mut row_from: Vec<Option<usize>> = vec![None; m];
        row_seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut end = None;
        'search: while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if col_from[j].is_some() || !p.allowed(i, j) {
                    continue;
                }
                col_from[j] = Some(i);
                if col_left[j] > 0 {
                    end = Some(j);
                    break 'search;
                }
                for r in 0..m {
                    if !row_seen[r] && flow[r][j] > 0 {
                        row_seen[r] = true;
                        row_from[r] = Some(j);
                        queue.push_back(r);
                    }
                }
            }
        }
        let mut j = end?;
        let mut path = Vec::new();
        loop {
            let i = col_from[j].expect("reached columns have a parent");
            path.push((i, j, true));
            match row_from[i] {
                None => break,
                Some(prev) => {
                    path.push((i, prev, false));
                    j = prev;
                }
            }
        }
        let mut amount = row_left[start].min(col_left[end.expect("path found")]);
        for &(i, j, forward) in &path {
            if !forward {
                amount = amount.min(flow[i][j]);
            }
        }
        for &(i, j, forward) in &path {
            if forward {
                flow[i][j] += amount;
            } else {
                flow[i][j] -= amount;
            }
        }
        row_left[start] -= amount;
        col_left[end.expect("path found")] -= amount;
    }
}

/// Path between two nodes of a forest given as adjacency lists, as the
/// sequence of nodes.
fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut y = to;
            while y != from {
                y = parent[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[x] {
            if parent[w] == usize::MAX {
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    None
}

fn cell(m: usize, a: usize, b: usize) -> (usize, usize) {
    if a < m {
        (a, b - m)
    } else {
        (b, a - m)
    }
}

/// Cancels support cycles until the support is a forest.
fn break_cycles(flow: &mut [Vec<u64>], m: usize, n: usize) {
    loop {
        let mut adj = vec![Vec::new(); m + n];
        let mut cycle = None;
        'cells: for i in 0..m {
            for j in 0..n {
                if flow[i][j] == 0 {
                    continue;
                }
                if let Some(path) = tree_path(&adj, m + j, i) {
                    cycle = Some((i, j, path));
                    break 'cells;
                }
                adj[i].push(m + j);
                adj[m + j].push(i);
            }
        }
        let Some((i, j, path)) = cycle else {
            return;
        };
        // Around the cycle (i, j) then the path col j → … → row i,
        // alternate cells lose and gain.
        let cells: Vec<(usize, usize)> = path.windows(2).map(|w| cell(m, w[0], w[1])).collect();
        let losing: Vec<(usize, usize)> = std::iter::once((i, j))
            .chain(cells.iter().skip(1).step_by(2).copied())
            .collect();
        let gaining: Vec<(usize, usize)> = cells.iter().step_by(2).copied().collect();
        let amount = losing
            .iter()
            .map(|&(a, b)| flow[a][b])
            .min()
            .expect("nonempty cycle");
        for (a, b) in losing {
            flow[a][b] -= amount;
        }
        for (a, b) in gaining {
            flow[a][b] += amount;
        }
    }
}

struct Simplex<'a> {
    problem: &'a TransportProblem,
    m: usize,
    n: usize,
    flow: Vec<Vec<u64>>,
    basic: Vec<Vec<bool>>,
}

impl Simplex<'_> {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.m + self.n];
        for i in 0..self.m {
            for j in 0..self.n {
                if self.basic[i][j] {
                    adj[i].push(self.m + j);
                    adj[self.m + j].push(i);
                }
            }
        }
        adj
    }

    fn dual(&self) -> TransportDual {
        let (m, n) = (self.m, self.n);
        let adj = self.adjacency();
        let mut potential: Vec<Option<Rational>> = vec![None; m + n];
        potential[0] = Some(Rational::zero());
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            let px = potential[x].clone().expect("queued nodes are labelled");
            for &y in &adj[x] {
                if potential[y].is_none() {
                    let (i, j) = cell(m, x, y);
                    let c = self.problem.cost(i, j).expect("basic cells are allowed");
                    potential[y] = Some(c - &px);
                    queue.push_back(y);
                }
            }
        }
        let label = |p: Option<Rational>| p.expect("the basis spans every node");
        let mut labels = potential.into_iter().map(label);
        TransportDual {
            u: labels.by_ref().take(m).collect(),
            v: labels.collect(),
        }
    }

    fn cells(&self, order: PivotOrder) -> Vec<(usize, usize)> {
        let mut cells: Vec<(usize, usize)> = (0..self.m)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .collect();
        if order == PivotOrder::Reversed {
            cells.reverse();
        }
        cells
    }

    fn extend_basis(&mut self) {
        let mut sets = DisjointSets::new(self.m + self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                if self.flow[i][j] > 0 {
                    sets.union(i, self.m + j);
                    self.basic[i][j] = true;
                }
            }
        }
        for (i, j) in self.cells(PivotOrder::RowMajor) {
            if self.problem.allowed(i, j) && !self.basic[i][j] && sets.union(i, self.m + j) {
                self.basic[i][j] = true;
            }
        }
    }

    /// One pivot; false once every reduced cost is nonpositive.
    fn pivot(&mut self, order: PivotOrder) -> bool {
        let dual = self.dual();
        let position: Vec<(usize, usize)> = self.cells(order);
        let entering = position.iter().copied().find(|&(i, j)| {
            !self.basic[i][j]
                && self
                    .problem
                    .cost(i, j)
                    .is_some_and(|c| (c - &dual.u[i] - &dual.v[j]).is_positive())
        });
        let Some((i, j)) = entering else {
            return false;
        };
        let path =
            tree_path(&self.adjacency(), self.m + j, i).expect("the basis is a spanning tree");
        let cells: Vec<(usize, usize)> =
            path.windows(2).map(|w| cell(self.m, w[0], w[1])).collect();
        let losing: Vec<(usize, usize)> = cells.iter().step_by(2).copied().collect();
        let gaining: Vec<(usize, usize)> = cells.iter().skip(1).step_by(2).copied().collect();
        let amount = losing
            .iter()
            .map(|&(a, b)| self.flow[a][b])
            .min()
            .expect("nonempty cycle");
        let rank = |c: &(usize, usize)| position.iter().position(|p| p == c).expect("cell listed");
        let leaving = losing
            .iter()
            .filter(|&&(a, b)| self.flow[a][b] == amount)
            .min_by_key(|c| rank(c))
            .copied()
            .expect("some losing cell attains the minimum");
        for &(a, b) in &losing {
            self.flow[a][b] -= amount;
        }
        for &(a, b) in &gaining {
            self.flow[a][b] += amount;
        }
        self.flow[i][j] += amount;
        self.basic[i][j] = true;
        self.basic[leaving.0][leaving.1] = false;
        true
    }
}

/// Primal network simplex over exact rationals with Bland's rule in the
/// given cell order.
pub fn solve_transport(p: &TransportProblem, order: PivotOrder) -> Result<TransportSolution> {
    let (m, n) = (p.costs.rows(), p.costs.cols());
    let mut flow = initial_flow(p).ok_or_else(infeasible)?;
    break_cycles(&mut flow, m, n);
    let mut simplex = Simplex {
        problem: p,
        m,
        n,
        flow,
        basic: vec![vec![false; n]; m],
    };
    simplex.extend_basis();
    let mut pivots = 0;
    while simplex.pivot(order) {
        pivots += 1;
    }
    let dual = simplex.dual();
    let mut value = Rational::zero();
    for i in 0..m {
        for j in 0..n {
            if simplex.flow[i][j] > 0 {
                let c = p.cost(i, j).expect("flow only on allowed cells");
                value += c * Rational::from_integer(simplex.flow[i][j].into());
            }
        }
    }
    let basis = simplex
        .cells(PivotOrder::RowMajor)
        .into_iter()
        .filter(|&(i, j)| simplex.basic[i][j])
        .collect();
    let flow = Matrix::from_rows(simplex.flow).expect("rectangular flow");
    Ok(TransportSolution {
        flow,
        basis,
        dual,
        value,
        pivots,
    })
}

/// `per C_{|k)}` for every column `k`, from the dual normalized by `u_0 = 0`.
pub fn cramer_permanents_transport(c: &Matrix<MaxPlus>) -> Result<Vec<MaxPlus>> {
    let p = TransportProblem::new(c.clone())?;
    let solution = solve_transport(&p, PivotOrder::RowMajor)?;
    Ok(solution
        .dual
        .normalized()
        .permanents()
        .into_iter()
        .map(MaxPlus::finite)
        .collect())
}

/// Results of the three permanent routes on one matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    /// Absent above [`CROSS_CHECK_BRUTE_BOUND`].
    pub brute_force: Option<Vec<MaxPlus>>,
    pub jacobi: Vec<MaxPlus>,
    /// Absent when some permanent is `-inf`.
    pub transport: Option<Vec<MaxPlus>>,
    pub timings: [Duration; 3],
}

/// Runs permutation expansion, the assignment and shortest-path route and
/// the transportation route, and fails on any disagreement.
pub fn cross_check_permanents(c: &Matrix<MaxPlus>) -> Result<CrossCheck> {
    TransportProblem::new(c.clone())?;
    let n = c.cols();
    let clock = Instant::now();
    let brute_force = if n <= CROSS_CHECK_BRUTE_BOUND {
        Some(
            (0..n)
                .map(|k| permanent(&c.without_column(k), CROSS_CHECK_BRUTE_BOUND))
                .collect::<Result<Vec<MaxPlus>>>()?,
        )
    } else {
        None
    };
    let brute_time = clock.elapsed();

    let clock = Instant::now();
    let jacobi = cramer_permanents_rectangular(c)?;
    let jacobi_time = clock.elapsed();

    let clock = Instant::now();
    let transport = match cramer_permanents_transport(c) {
        Ok(values) => Some(values),
        Err(Error::Infeasible(_)) => None,
        Err(e) => return Err(e),
    };
    let transport_time = clock.elapsed();

    let disagree = |what: &str| {
        Err(Error::Disagreement(format!(
            "{what} on matrix {:?}",
            c.map(ToString::to_string)
        )))
    };
    if let Some(brute) = &brute_force {
        if *brute != jacobi {
            return disagree("brute force and the assignment route differ");
        }
    }
    match &transport {
        Some(values) if *values != jacobi => {
            return disagree("the transportation route differs");
        }
        None if jacobi.iter().all(|x| !x.is_bottom()) => {
            return disagree("transportation infeasible with all permanents finite");
        }
        _ => {}
    }
    Ok(CrossCheck {
        brute_force,
        jacobi,
        transport,
        timings: [brute_time, jacobi_time, transport_time],
    })
}
