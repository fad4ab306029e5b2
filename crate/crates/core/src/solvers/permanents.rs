use crate::error::{Error, Result};
use crate::linalg::{hungarian_scaling, invert, optimal_value};
use crate::matrix::Matrix;
use crate::scalar::{MaxPlus, Rational};
use crate::semiring::Semiring;

/// `|A^adj b|`, the permanents of `A` with column `k` replaced by `b`, by
/// one optimal assignment and one shortest-path pass.
///
/// Rows are reordered so that the optimal assignment is the identity and
/// divided by their diagonal entry. The normalized matrix `Q` has no
/// positive circuit, so `Q* b''` is reached by `n` relaxation rounds of
/// `y ← b'' ⊕ Q y`, and `A^adj b = per A · Q* b''`.
pub fn cramer_permanents_jacobi(a: &Matrix<MaxPlus>, b: &[MaxPlus]) -> Result<Vec<MaxPlus>> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return Err(Error::Dimension(format!(
            "expected a square matrix and a matching vector, got {}x{} and {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let scaling = hungarian_scaling(a)?;
    let source = invert(&scaling.assignment);
    let per = scaling.value();
    let diag: Vec<Rational> = (0..n)
        .map(|r| {
            a.get(source[r], r)
                .value()
                .expect("assignment uses finite entries")
                .clone()
        })
        .collect();
    let q = Matrix::from_fn(n, n, |r, j| match a.get(source[r], j).value() {
        Some(x) if r != j => MaxPlus::finite(x - &diag[r]),
        _ => MaxPlus::bottom(),
    });
    let rhs: Vec<MaxPlus> = (0..n)
        .map(|r| match b[source[r]].value() {
            Some(x) => MaxPlus::finite(x - &diag[r]),
            None => MaxPlus::bottom(),
        })
        .collect();
    let mut y = rhs.clone();
    for _ in 0..n {
        let qy = q.mul_vec(&y)?;
        let next: Vec<MaxPlus> = rhs.iter().zip(&qy).map(|(c, d)| c.add(d)).collect();
        if next == y {
            break;
        }
        y = next;
    }
    let scale = MaxPlus::finite(per);
    Ok(y.iter().map(|x| scale.mul(x)).collect())
}

/// The `n` maximal-minor permanents `per C_{|k)}` of an `(n-1) × n` matrix,
/// reduced to one square call of [`cramer_permanents_jacobi`].
///
/// With `k₀` the first column whose deletion leaves a finite permanent,
/// `A = C_{|k₀)}` and `b = C_{·k₀}` give `per C_{|k)}` as the Cramer
/// permanent of the column of `A` standing for `k`.
pub fn cramer_permanents_rectangular(c: &Matrix<MaxPlus>) -> Result<Vec<MaxPlus>> {
    let m = c.rows();
    let n = c.cols();
    if n != m + 1 {
        return Err(Error::Dimension(format!(
            "expected an (n-1) x n matrix, got {m}x{n}"
        )));
    }
    let mut k0 = None;
    for k in 0..n {
        let per = optimal_value(&c.without_column(k))?;
        if !per.is_bottom() {
            k0 = Some((k, per));
            break;
        }
    }
    let Some((k0, per0)) = k0 else {
        return Ok(vec![MaxPlus::bottom(); n]);
    };
    let square = c.without_column(k0);
    let adj = cramer_permanents_jacobi(&square, &c.column(k0))?;
    Ok((0..n)
        .map(|k| match k.cmp(&k0) {
            std::cmp::Ordering::Equal => per0.clone(),
            std::cmp::Ordering::Less => adj[k].clone(),
            std::cmp::Ordering::Greater => adj[k - 1].clone(),
        })
        .collect())
}
