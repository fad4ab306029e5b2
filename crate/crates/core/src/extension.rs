//! The star extension of a base semiring by max-plus magnitudes.
//!
//! An element is zero or a pair `(coeff, mag)` with a nonzero coefficient.
//! Sums compare magnitudes first and only add coefficients on ties.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::{format_rational, parse_rational, MaxPlus, Rational};
use crate::semiring::{Bool4, Classification, PhaseCone, Semiring, Super, Symmetric, Torus, N2};

/// A base semiring usable as the coefficient part of an extension: zero-sum
/// free and without zero divisors.
pub trait Base: Symmetric + fmt::Display + FromStr<Err = String> {
    const EXT_NAME: &'static str;

    fn write_term(&self, mag: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{mag}")
    }

    /// Parses a nonzero term; `z` is handled by the extension.
    fn parse_term(s: &str) -> std::result::Result<(Self, Rational), String> {
        let (c, m) = s
            .rsplit_once('@')
            .ok_or_else(|| format!("expected <coefficient>@<magnitude>, found `{s}`"))?;
        let coeff: Self = c.parse()?;
        let mag = parse_rational(m).ok_or_else(|| format!("bad magnitude in `{s}`"))?;
        if coeff.is_zero() {
            return Err(format!("zero coefficient in `{s}`; write z"));
        }
        Ok((coeff, mag))
    }

    /// A polynomial-time determinant for matrices over the extension.
    fn extension_det(_m: &Matrix<Ext<Self>>) -> Option<Result<Ext<Self>>> {
        None
    }
}

fn parse_call(s: &str, name: &str) -> Option<std::result::Result<Rational, String>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(parse_rational(inner).ok_or_else(|| format!("bad magnitude in `{s}`")))
}

impl Base for Bool4 {
    const EXT_NAME: &'static str = "smax";

    fn write_term(&self, mag: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}({mag})")
    }

    fn parse_term(s: &str) -> std::result::Result<(Self, Rational), String> {
        for (name, c) in [
            ("p", Bool4::Plus),
            ("n", Bool4::Minus),
            ("b", Bool4::Balanced),
        ] {
            if let Some(m) = parse_call(s, name) {
                return m.map(|m| (c, m));
            }
        }
        Err(format!("expected p(q), n(q), b(q) or z, found `{s}`"))
    }

    fn extension_det(m: &Matrix<SMax>) -> Option<Result<SMax>> {
        Some(crate::assignment::det_smax(m))
    }
}

impl Base for N2 {
    const EXT_NAME: &'static str = "t2";

    fn write_term(&self, mag: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{self}({mag})")
    }

    fn parse_term(s: &str) -> std::result::Result<(Self, Rational), String> {
        for (name, c) in [("t1", N2::One), ("t2", N2::Two)] {
            if let Some(m) = parse_call(s, name) {
                return m.map(|m| (c, m));
            }
        }
        Err(format!("expected t1(q), t2(q) or z, found `{s}`"))
    }

    fn extension_det(m: &Matrix<T2>) -> Option<Result<T2>> {
        Some(crate::assignment::det_t2(m))
    }
}

impl Base for PhaseCone {
    const EXT_NAME: &'static str = "phase";
}

impl<const N: u32> Base for Torus<N> {
    const EXT_NAME: &'static str = "torus";
}

impl<const N: u32> Base for Super<N> {
    const EXT_NAME: &'static str = "super";
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ext<B> {
    Zero,
    Term { coeff: B, mag: Rational },
}

/// Symmetrized max-plus semiring.
pub type SMax = Ext<Bool4>;
/// Bi-valued tropical semiring.
pub type T2 = Ext<N2>;
/// Phase extension of max-plus.
pub type PhaseExt = Ext<PhaseCone>;

impl<B: Base> Ext<B> {
    pub fn new(coeff: B, mag: Rational) -> Self {
        if coeff.is_zero() {
            Ext::Zero
        } else {
            Ext::Term { coeff, mag }
        }
    }

    pub fn int(coeff: B, mag: i64) -> Self {
        Self::new(coeff, crate::scalar::rational(mag))
    }

    /// Embedding of a max-plus scalar with coefficient one.
    pub fn iota(m: &MaxPlus) -> Self {
        match m.value() {
            None => Ext::Zero,
            Some(q) => Ext::new(B::one(), q.clone()),
        }
    }

    /// The coefficient, zero for the zero element.
    pub fn gamma(&self) -> B {
        match self {
            Ext::Zero => B::zero(),
            Ext::Term { coeff, .. } => coeff.clone(),
        }
    }

    /// Embedding of a base element at magnitude zero.
    pub fn jmath(a: B) -> Self {
        Ext::new(a, Rational::zero())
    }

    pub fn magnitude(&self) -> Option<&Rational> {
        match self {
            Ext::Zero => None,
            Ext::Term { mag, .. } => Some(mag),
        }
    }
}

impl SMax {
    pub fn plus(mag: i64) -> Self {
        Self::int(Bool4::Plus, mag)
    }

    pub fn minus(mag: i64) -> Self {
        Self::int(Bool4::Minus, mag)
    }

    pub fn balanced(mag: i64) -> Self {
        Self::int(Bool4::Balanced, mag)
    }
}

impl T2 {
    pub fn single(mag: i64) -> Self {
        Self::int(N2::One, mag)
    }

    pub fn double(mag: i64) -> Self {
        Self::int(N2::Two, mag)
    }
}

impl<B: Base> Semiring for Ext<B> {
    fn zero() -> Self {
        Ext::Zero
    }

    fn one() -> Self {
        Ext::new(B::one(), Rational::zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Ext::Zero, x) | (x, Ext::Zero) => x.clone(),
            (Ext::Term { coeff: a, mag: m }, Ext::Term { coeff: b, mag: n }) => match m.cmp(n) {
                std::cmp::Ordering::Greater => self.clone(),
                std::cmp::Ordering::Less => rhs.clone(),
                std::cmp::Ordering::Equal => Ext::new(a.add(b), m.clone()),
            },
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Ext::Term { coeff: a, mag: m }, Ext::Term { coeff: b, mag: n }) => {
                Ext::new(a.mul(b), m + n)
            }
            _ => Ext::Zero,
        }
    }

    fn natural_le(&self, other: &Self) -> bool {
        match (self, other) {
            (Ext::Zero, _) => true,
            (_, Ext::Zero) => false,
            (Ext::Term { coeff: a, mag: m }, Ext::Term { coeff: b, mag: n }) => {
                m < n || (m == n && a.natural_le(b))
            }
        }
    }
}

impl<B: Base> Symmetric for Ext<B> {
    const NAME: &'static str = B::EXT_NAME;
    const CLASS: Classification = B::CLASS;

    fn negate(&self) -> Self {
        match self {
            Ext::Zero => Ext::Zero,
            Ext::Term { coeff, mag } => Ext::new(coeff.negate(), mag.clone()),
        }
    }

    fn is_balanced(&self) -> bool {
        self.gamma().is_balanced()
    }

    fn is_thin(&self) -> bool {
        self.gamma().is_thin()
    }

    fn inverse(&self) -> Option<Self> {
        match self {
            Ext::Zero => None,
            Ext::Term { coeff, mag } => coeff.inverse().map(|c| Ext::new(c, -mag)),
        }
    }

    fn modulus(&self) -> MaxPlus {
        match self {
            Ext::Zero => MaxPlus::bottom(),
            Ext::Term { mag, .. } => MaxPlus::finite(mag.clone()),
        }
    }

    fn thin_candidates(target: &Self) -> Vec<Self> {
        match target {
            Ext::Zero => vec![Ext::Zero],
            Ext::Term { coeff, mag } => B::thin_candidates(coeff)
                .into_iter()
                .filter(|c| !c.is_zero())
                .map(|c| Ext::new(c, mag.clone()))
                .collect(),
        }
    }

    fn embed(m: &MaxPlus) -> Option<Self> {
        Some(Ext::iota(m))
    }

    fn fast_det(m: &Matrix<Self>) -> Option<Result<Self>> {
        B::extension_det(m)
    }
}

impl<B: Base> fmt::Display for Ext<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Zero => f.write_str("z"),
            Ext::Term { coeff, mag } => coeff.write_term(&format_rational(mag), f),
        }
    }
}

impl<B: Base> FromStr for Ext<B> {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "z" {
            return Ok(Ext::Zero);
        }
        B::parse_term(s).map(|(c, m)| Ext::new(c, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smax_examples() {
        assert_eq!(SMax::plus(5).add(&SMax::minus(3)), SMax::plus(5));
        assert_eq!(SMax::plus(3).add(&SMax::minus(3)), SMax::balanced(3));
        assert_eq!(SMax::plus(2).mul(&SMax::minus(3)), SMax::minus(5));
        assert_eq!(SMax::plus(2).mul(&SMax::Zero), SMax::Zero);
        assert_eq!(SMax::iota(&MaxPlus::int(7)), SMax::plus(7));
        assert_eq!(SMax::iota(&MaxPlus::bottom()), SMax::Zero);
        assert_eq!(SMax::minus(3).gamma(), Bool4::Minus);
    }

    #[test]
    fn t2_tie_doubles() {
        assert_eq!(T2::single(4).add(&T2::single(4)), T2::double(4));
    }

    #[test]
    fn phase_angles_add() {
        let a: PhaseExt = "hl:0/1@2".parse().unwrap();
        let b: PhaseExt = "hl:1/2@3".parse().unwrap();
        assert_eq!(a.mul(&b).to_string(), "hl:1/2@5");
    }

    #[test]
    fn refined_balance() {
        assert!(SMax::plus(3).bala(&SMax::balanced(3)));
        assert!(!SMax::plus(5).bala(&SMax::minus(3)));
        assert!(SMax::balanced(2).bala(&SMax::balanced(2)));
    }

    #[test]
    fn tokens_round_trip() {
        for s in ["p(-4)", "n(5/2)", "b(0)", "z"] {
            assert_eq!(s.parse::<SMax>().unwrap().to_string(), s);
        }
        assert_eq!("p(2.5)".parse::<SMax>().unwrap().to_string(), "p(5/2)");
        for s in ["t1(3)", "t2(-1/3)", "z"] {
            assert_eq!(s.parse::<T2>().unwrap().to_string(), s);
        }
        assert!("q(1)".parse::<SMax>().is_err());
    }
}
