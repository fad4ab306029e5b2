use std::fmt;
use std::str::FromStr;

use super::{Classification, Semiring, Symmetric};
use crate::scalar::MaxPlus;

/// Natural numbers with every value from 2 on identified: `Two` is `1°`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum N2 {
    Zero,
    One,
    Two,
}

impl N2 {
    pub const ALL: [N2; 3] = [N2::Zero, N2::One, N2::Two];

    fn count(self) -> u8 {
        self as u8
    }

    fn from_count(c: u8) -> Self {
        match c {
            0 => N2::Zero,
            1 => N2::One,
            _ => N2::Two,
        }
    }
}

impl Semiring for N2 {
    fn zero() -> Self {
        N2::Zero
    }

    fn one() -> Self {
        N2::One
    }

    fn add(&self, rhs: &Self) -> Self {
        N2::from_count(self.count() + rhs.count())
    }

    fn mul(&self, rhs: &Self) -> Self {
        N2::from_count(self.count() * rhs.count())
    }

    fn natural_le(&self, other: &Self) -> bool {
        self <= other
    }
}

impl Symmetric for N2 {
    const NAME: &'static str = "n2";
    const CLASS: Classification = Classification {
        weak_elimination: true,
        strong_elimination: true,
        monotone_construction: true,
        monotone_convergence: true,
        order_equal: true,
        homogeneous: true,
    };

    fn negate(&self) -> Self {
        *self
    }

    fn is_balanced(&self) -> bool {
        *self != N2::One
    }

    fn is_thin(&self) -> bool {
        *self != N2::Two
    }

    fn inverse(&self) -> Option<Self> {
        (*self == N2::One).then_some(N2::One)
    }

    fn modulus(&self) -> MaxPlus {
        if *self == N2::Zero {
            MaxPlus::zero()
        } else {
            MaxPlus::one()
        }
    }

    fn thin_candidates(target: &Self) -> Vec<Self> {
        match target {
            N2::Zero => vec![N2::Zero],
            _ => vec![N2::One],
        }
    }
}

impl fmt::Display for N2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.count())
    }
}

impl FromStr for N2 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => Ok(N2::Zero),
            "1" => Ok(N2::One),
            "2" => Ok(N2::Two),
            _ => Err(format!("expected one of 0, 1, 2, found `{s}`")),
        }
    }
}
