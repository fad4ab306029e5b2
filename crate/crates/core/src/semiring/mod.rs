//! Semirings with a symmetry, a thin set and a modulus.
//!
//! [`Semiring`] carries the bare laws. [`Symmetric`] adds the symmetry
//! `negate`, the balanced and thin predicates and the modulus into
//! max-plus. Base semirings map every nonzero element to the max-plus unit,
//! which is the boolean modulus embedded in max-plus.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::MaxPlus;

mod bool4;
mod group;
mod n2;
mod phase;

pub mod axioms;
pub mod descriptor;

pub use bool4::Bool4;
pub use group::{GroupElem, Super, Torus};
pub use n2::N2;
pub use phase::{PhaseCone, Turn};

pub trait Semiring: Clone + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    /// Natural preorder: `self ⪯ other` iff `other = self ⊕ c` for some `c`.
    fn natural_le(&self, other: &Self) -> bool;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// Which elimination and iteration results a semiring supports.
///
/// For a base semiring the flags describe its star extension over max-plus,
/// which inherits every elimination property of the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Classification {
    pub weak_elimination: bool,
    pub strong_elimination: bool,
    pub monotone_construction: bool,
    pub monotone_convergence: bool,
    /// Same-modulus thin elements comparable in the natural order are equal.
    pub order_equal: bool,
    /// Invertible elements are the nonzero thin ones, and balanced sums
    /// always have a balanced term or pair at full modulus.
    pub homogeneous: bool,
}

pub trait Symmetric: Semiring {
    const NAME: &'static str;
    const CLASS: Classification;

    fn negate(&self) -> Self;
    fn is_balanced(&self) -> bool;
    fn is_thin(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    fn modulus(&self) -> MaxPlus;

    /// Thin elements `z` with `z ∇| target` and `z ⪯ target`, canonical
    /// (positive) choice first. May be a superset; callers filter.
    fn thin_candidates(target: &Self) -> Vec<Self>;

    /// `self ∇ other`.
    fn balance(&self, other: &Self) -> bool {
        self.add(&other.negate()).is_balanced()
    }

    /// `self ∇| other`: balance together with equal moduli.
    fn bala(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.balance(other)
    }

    fn minus_one() -> Self {
        Self::one().negate()
    }

    /// The canonical thin element of modulus `m`, when there is one.
    fn embed(m: &MaxPlus) -> Option<Self> {
        if m.is_bottom() {
            Some(Self::zero())
        } else if *m == MaxPlus::one() {
            Some(Self::one())
        } else {
            None
        }
    }

    /// A polynomial-time determinant, when one is known.
    fn fast_det(_m: &Matrix<Self>) -> Option<Result<Self>> {
        None
    }
}

pub fn sum<'a, T: Semiring>(items: impl IntoIterator<Item = &'a T>) -> T {
    items.into_iter().fold(T::zero(), |acc, x| acc.add(x))
}

pub fn dot<T: Semiring>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// `negate` applied `k` times to one.
pub fn sign_power<T: Symmetric>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        T::minus_one()
    }
}

/// Thin elements `z` with `lower ⪯ z ⪯ target` and `z ∇| target`, in the
/// order of [`Symmetric::thin_candidates`] with `lower` tried as well.
pub fn thin_witnesses<T: Symmetric>(lower: &T, target: &T) -> Vec<T> {
    let mut candidates = T::thin_candidates(target);
    if !candidates.contains(lower) {
        candidates.push(lower.clone());
    }
    candidates
        .retain(|z| z.is_thin() && lower.natural_le(z) && z.natural_le(target) && z.bala(target));
    candidates
}

/// Exhaustive natural-preorder test over a finite carrier.
pub fn natural_le_by_search<T: Semiring>(a: &T, b: &T, carrier: &[T]) -> bool {
    carrier.iter().any(|c| a.add(c) == *b)
}
