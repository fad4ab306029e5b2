//! Determinants, adjugates, Kleene stars and optimal-assignment scalings.

mod expand;
mod hungarian;
mod matching;
mod star;

pub use expand::{adjugate, det, permanent, BRUTE_FORCE_BOUND};
pub use hungarian::{butkovic_normal_form, hungarian_scaling, optimal_value, NormalForm, Scaling};
pub use matching::{frobenius_konig, lexicographic_matching, max_matching, ZeroBlock};
pub use star::{kleene_star, yoeli_adjugate};

/// Whether a permutation given as `perm[i] = σ(i)` is odd.
pub fn is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}

/// Inverse of a permutation.
pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}
