use std::fmt;
use std::str::FromStr;

use super::{Classification, Semiring, Symmetric};
use crate::scalar::MaxPlus;

/// The symmetrized boolean semiring: zero, `1`, `⊖1` and the balanced `1°`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bool4 {
    Zero,
    Plus,
    Minus,
    Balanced,
}

impl Bool4 {
    pub const ALL: [Bool4; 4] = [Bool4::Zero, Bool4::Plus, Bool4::Minus, Bool4::Balanced];
}

impl Semiring for Bool4 {
    fn zero() -> Self {
        Bool4::Zero
    }

    fn one() -> Self {
        Bool4::Plus
    }

    fn add(&self, rhs: &Self) -> Self {
        use Bool4::*;
        match (*self, *rhs) {
            (Zero, x) | (x, Zero) => x,
            (a, b) if a == b => a,
            _ => Balanced,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        use Bool4::*;
        match (*self, *rhs) {
            (Zero, _) | (_, Zero) => Zero,
            (Balanced, _) | (_, Balanced) => Balanced,
            (a, b) if a == b => Plus,
            _ => Minus,
        }
    }

    fn natural_le(&self, other: &Self) -> bool {
        self.add(other) == *other
    }
}

impl Symmetric for Bool4 {
    const NAME: &'static str = "bool4";
    const CLASS: Classification = Classification {
        weak_elimination: true,
        strong_elimination: true,
        monotone_construction: true,
        monotone_convergence: true,
        order_equal: true,
        homogeneous: true,
    };

    fn negate(&self) -> Self {
        match self {
            Bool4::Plus => Bool4::Minus,
            Bool4::Minus => Bool4::Plus,
            x => *x,
        }
    }

    fn is_balanced(&self) -> bool {
        matches!(self, Bool4::Zero | Bool4::Balanced)
    }

    fn is_thin(&self) -> bool {
        !matches!(self, Bool4::Balanced)
    }

    fn inverse(&self) -> Option<Self> {
        match self {
            Bool4::Plus | Bool4::Minus => Some(*self),
            _ => None,
        }
    }

    fn modulus(&self) -> MaxPlus {
        if *self == Bool4::Zero {
            MaxPlus::zero()
        } else {
            MaxPlus::one()
        }
    }

    fn thin_candidates(target: &Self) -> Vec<Self> {
        match target {
            Bool4::Balanced => vec![Bool4::Plus, Bool4::Minus],
            x => vec![*x],
        }
    }
}

impl fmt::Display for Bool4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bool4::Zero => "z",
            Bool4::Plus => "p",
            Bool4::Minus => "n",
            Bool4::Balanced => "b",
        })
    }
}

impl FromStr for Bool4 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "z" => Ok(Bool4::Zero),
            "p" => Ok(Bool4::Plus),
            "n" => Ok(Bool4::Minus),
            "b" => Ok(Bool4::Balanced),
            _ => Err(format!("expected one of z, p, n, b, found `{s}`")),
        }
    }
}
