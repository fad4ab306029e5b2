use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::MaxPlus;
use crate::semiring::Semiring;

use super::optimal_value;

/// `I ⊕ A ⊕ … ⊕ A^{n-1}` by Floyd–Warshall closure.
pub fn kleene_star(a: &Matrix<MaxPlus>) -> Result<Matrix<MaxPlus>> {
    if !a.is_square() {
        return Err(Error::Dimension("star of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut d = a.clone();
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k).clone();
            if dik.is_bottom() {
                continue;
            }
            for j in 0..n {
                let through = dik.mul(d.get(k, j));
                if through > *d.get(i, j) {
                    d.set(i, j, through);
                }
            }
        }
    }
    if let Some(i) = (0..n).find(|&i| *d.get(i, i) > MaxPlus::one()) {
        return Err(Error::DivergentStar(i));
    }
    for i in 0..n {
        d.set(i, i, MaxPlus::one());
    }
    Ok(d)
}

/// The adjugate of a matrix with unit diagonal and unit permanent, computed
/// as its Kleene star.
pub fn yoeli_adjugate(a: &Matrix<MaxPlus>) -> Result<Matrix<MaxPlus>> {
    if !a.is_square() {
        return Err(Error::Dimension("adjugate of a non-square matrix".into()));
    }
    if let Some(i) = (0..a.rows()).find(|&i| *a.get(i, i) != MaxPlus::one()) {
        return Err(Error::Precondition(format!(
            "diagonal entry {i} is {}, not the unit",
            a.get(i, i)
        )));
    }
    let per = optimal_value(a)?;
    if per != MaxPlus::one() {
        return Err(Error::Precondition(format!(
            "permanent is {per}, not the unit"
        )));
    }
    kleene_star(a)
}
