//! Extensions `G ∪ {0, 1°}` of the cyclic group of order `N`.
//!
//! [`Torus`] is the idempotent version: equal elements add to themselves,
//! distinct ones to `1°`, and the symmetry multiplies by the involution
//! `e = N/2`. [`Super`] is the supertropical version: any two nonzero
//! elements add to `1°` and the symmetry is the identity.

use std::fmt;
use std::str::FromStr;

use super::{Classification, Semiring, Symmetric};
use crate::scalar::MaxPlus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Zero,
    /// `g^k` for a fixed generator `g`.
    Member(u32),
    Top,
}

impl GroupElem {
    fn mul(self, rhs: Self, order: u32) -> Self {
        match (self, rhs) {
            (GroupElem::Zero, _) | (_, GroupElem::Zero) => GroupElem::Zero,
            (GroupElem::Member(a), GroupElem::Member(b)) => GroupElem::Member((a + b) % order),
            _ => GroupElem::Top,
        }
    }

    fn inverse(self, order: u32) -> Option<Self> {
        match self {
            GroupElem::Member(a) => Some(GroupElem::Member((order - a) % order)),
            _ => None,
        }
    }

    fn all(order: u32) -> Vec<Self> {
        let mut v = vec![GroupElem::Zero];
        v.extend((0..order).map(GroupElem::Member));
        v.push(GroupElem::Top);
        v
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Zero => f.write_str("z"),
            GroupElem::Member(k) => write!(f, "g{k}"),
            GroupElem::Top => f.write_str("top"),
        }
    }
}

fn parse_elem(s: &str, order: u32) -> Result<GroupElem, String> {
    match s {
        "z" => Ok(GroupElem::Zero),
        "top" => Ok(GroupElem::Top),
        _ => s
            .strip_prefix('g')
            .and_then(|k| k.parse::<u32>().ok())
            .filter(|k| *k < order)
            .map(GroupElem::Member)
            .ok_or_else(|| format!("expected z, top or g<k> with k < {order}, found `{s}`")),
    }
}

/// Idempotent extension of `Z_N`; `N` must be even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Torus<const N: u32>(pub GroupElem);

impl<const N: u32> Torus<N> {
    const EVEN_ORDER: () = assert!(N >= 2 && N.is_multiple_of(2), "torus order must be even");

    pub fn member(k: u32) -> Self {
        Torus(GroupElem::Member(k % N))
    }

    pub fn elements() -> Vec<Self> {
        GroupElem::all(N).into_iter().map(Torus).collect()
    }
}

impl<const N: u32> Semiring for Torus<N> {
    fn zero() -> Self {
        Torus(GroupElem::Zero)
    }

    fn one() -> Self {
        Torus(GroupElem::Member(0))
    }

    fn add(&self, rhs: &Self) -> Self {
        match (self.0, rhs.0) {
            (GroupElem::Zero, x) | (x, GroupElem::Zero) => Torus(x),
            (a, b) if a == b => Torus(a),
            _ => Torus(GroupElem::Top),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Torus(self.0.mul(rhs.0, N))
    }

    fn natural_le(&self, other: &Self) -> bool {
        self.add(other) == *other
    }
}

impl<const N: u32> Symmetric for Torus<N> {
    const NAME: &'static str = "torus";
    // Beyond order two, g ∇ eg' ∇ g'' does not give g ∇ g''.
    const CLASS: Classification = Classification {
        weak_elimination: N == 2,
        strong_elimination: N == 2,
        monotone_construction: true,
        monotone_convergence: true,
        order_equal: true,
        homogeneous: true,
    };

    fn negate(&self) -> Self {
        let () = Self::EVEN_ORDER;
        Torus(self.0.mul(GroupElem::Member(N / 2), N))
    }

    fn is_balanced(&self) -> bool {
        matches!(self.0, GroupElem::Zero | GroupElem::Top)
    }

    fn is_thin(&self) -> bool {
        self.0 != GroupElem::Top
    }

    fn inverse(&self) -> Option<Self> {
        self.0.inverse(N).map(Torus)
    }

    fn modulus(&self) -> MaxPlus {
        if self.0 == GroupElem::Zero {
            MaxPlus::zero()
        } else {
            MaxPlus::one()
        }
    }

    fn thin_candidates(target: &Self) -> Vec<Self> {
        match target.0 {
            GroupElem::Top => (0..N).map(Torus::member).collect(),
            x => vec![Torus(x)],
        }
    }
}

impl<const N: u32> fmt::Display for Torus<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<const N: u32> FromStr for Torus<N> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_elem(s, N).map(Torus)
    }
}

/// Supertropical extension of `Z_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Super<const N: u32>(pub GroupElem);

impl<const N: u32> Super<N> {
    pub fn member(k: u32) -> Self {
        Super(GroupElem::Member(k % N))
    }

    pub fn elements() -> Vec<Self> {
        GroupElem::all(N).into_iter().map(Super).collect()
    }
}

impl<const N: u32> Semiring for Super<N> {
    fn zero() -> Self {
        Super(GroupElem::Zero)
    }

    fn one() -> Self {
        Super(GroupElem::Member(0))
    }

    fn add(&self, rhs: &Self) -> Self {
        match (self.0, rhs.0) {
            (GroupElem::Zero, x) | (x, GroupElem::Zero) => Super(x),
            _ => Super(GroupElem::Top),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Super(self.0.mul(rhs.0, N))
    }

    fn natural_le(&self, other: &Self) -> bool {
        self.0 == GroupElem::Zero || self == other || other.0 == GroupElem::Top
    }
}

impl<const N: u32> Symmetric for Super<N> {
    const NAME: &'static str = "super";
    const CLASS: Classification = Classification {
        weak_elimination: true,
        strong_elimination: N == 1,
        monotone_construction: true,
        monotone_convergence: true,
        order_equal: true,
        homogeneous: true,
    };

    fn negate(&self) -> Self {
        *self
    }

    fn is_balanced(&self) -> bool {
        matches!(self.0, GroupElem::Zero | GroupElem::Top)
    }

    fn is_thin(&self) -> bool {
        self.0 != GroupElem::Top
    }

    fn inverse(&self) -> Option<Self> {
        self.0.inverse(N).map(Super)
    }

    fn modulus(&self) -> MaxPlus {
        if self.0 == GroupElem::Zero {
            MaxPlus::zero()
        } else {
            MaxPlus::one()
        }
    }

    fn thin_candidates(target: &Self) -> Vec<Self> {
        match target.0 {
            GroupElem::Top => (0..N).map(Super::member).collect(),
            x => vec![Super(x)],
        }
    }
}

impl<const N: u32> fmt::Display for Super<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<const N: u32> FromStr for Super<N> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_elem(s, N).map(Super)
    }
}
