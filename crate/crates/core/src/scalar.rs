//! Exact max-plus scalars over arbitrary-precision rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::semiring::Semiring;

/// Exact rational used for every magnitude.
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `-3`, `2.5` or `-7/4`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).ok()?;
        let den = BigInt::from_str(den.trim()).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.trim_start().starts_with('-');
        let int_part = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => BigInt::from_str(int).ok()?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).ok()?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Some(Rational::new(num, scale));
    }
    BigInt::from_str(s).ok().map(Rational::from_integer)
}

/// Canonical text: an integer, or `num/den` in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Element of the max-plus semiring: `None` is the bottom element -inf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaxPlus(Option<Rational>);

impl MaxPlus {
    pub fn bottom() -> Self {
        MaxPlus(None)
    }

    pub fn finite(q: Rational) -> Self {
        MaxPlus(Some(q))
    }

    pub fn int(n: i64) -> Self {
        MaxPlus(Some(rational(n)))
    }

    pub fn is_bottom(&self) -> bool {
        self.0.is_none()
    }

    pub fn value(&self) -> Option<&Rational> {
        self.0.as_ref()
    }

    pub fn into_value(self) -> Option<Rational> {
        self.0
    }

    /// Multiplicative inverse, i.e. the negated rational.
    pub fn inverse(&self) -> Option<Self> {
        self.0.as_ref().map(|q| MaxPlus(Some(-q)))
    }
}

impl Semiring for MaxPlus {
    fn zero() -> Self {
        MaxPlus(None)
    }

    fn one() -> Self {
        MaxPlus(Some(Rational::zero()))
    }

    fn add(&self, rhs: &Self) -> Self {
        if self >= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Some(a), Some(b)) => MaxPlus(Some(a + b)),
            _ => MaxPlus(None),
        }
    }

    fn natural_le(&self, other: &Self) -> bool {
        self <= other
    }
}

impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("-inf"),
            Some(q) => f.write_str(&format_rational(q)),
        }
    }
}

impl FromStr for MaxPlus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "-inf" | "z" => Ok(MaxPlus(None)),
            _ => parse_rational(s)
                .map(|q| MaxPlus(Some(q)))
                .ok_or_else(|| format!("expected a rational or -inf, found `{s}`")),
        }
    }
}

impl From<Rational> for MaxPlus {
    fn from(q: Rational) -> Self {
        MaxPlus(Some(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_grammar() {
        assert_eq!(parse_rational("-4"), Some(rational(-4)));
        assert_eq!(
            parse_rational("2.5"),
            Some(Rational::new(5.into(), 2.into()))
        );
        assert_eq!(
            parse_rational("-0.25"),
            Some(Rational::new((-1).into(), 4.into()))
        );
        assert_eq!(
            parse_rational("6/4"),
            Some(Rational::new(3.into(), 2.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(
            format_rational(&Rational::new((-6).into(), 4.into())),
            "-3/2"
        );
    }

    #[test]
    fn max_plus_laws() {
        let a = MaxPlus::int(3);
        let b = MaxPlus::int(-1);
        assert_eq!(a.add(&b), a);
        assert_eq!(a.mul(&b), MaxPlus::int(2));
        assert_eq!(a.mul(&MaxPlus::bottom()), MaxPlus::bottom());
        assert_eq!("-inf".parse::<MaxPlus>().unwrap(), MaxPlus::bottom());
    }
}
