//! Closed convex cones of the complex plane.
//!
//! Angles are exact rational multiples of π, kept in `[0, 2)`. A cone is
//! stored in a canonical form so that structural equality is set equality.
//! Sectors have a span in `(0, 1)`. A closed half-plane is identified with
//! the plane: anything added to or multiplied with a half-plane is a
//! half-plane or the plane, so the identification is a congruence.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{Classification, Semiring, Symmetric};
use crate::scalar::MaxPlus;

/// An angle measured in units of π.
pub type Turn = Ratio<i64>;

fn wrap2(a: Turn) -> Turn {
    let two = Turn::from_integer(2);
    let k = (a / two).floor();
    a - two * k
}

fn wrap1(a: Turn) -> Turn {
    a - a.floor()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PhaseCone {
    Trivial,
    Ray(Turn),
    Sector { start: Turn, span: Turn },
    Line(Turn),
    Plane,
}

impl PhaseCone {
    pub fn ray(theta: Turn) -> Self {
        PhaseCone::Ray(wrap2(theta))
    }

    pub fn line(theta: Turn) -> Self {
        PhaseCone::Line(wrap1(theta))
    }

    /// The cone swept counterclockwise from `start` to `end`, if its span
    /// does not exceed π.
    pub fn sector(start: Turn, end: Turn) -> Option<Self> {
        let span = wrap2(end - start);
        if span > Turn::one() {
            return None;
        }
        if span == Turn::one() {
            return Some(PhaseCone::Plane);
        }
        Some(Self::hull(vec![start, end]))
    }

    /// Rays whose convex hull is the cone.
    fn generators(&self) -> Vec<Turn> {
        match self {
            PhaseCone::Trivial => vec![],
            PhaseCone::Ray(t) => vec![*t],
            PhaseCone::Sector { start, span } => vec![*start, *start + *span],
            PhaseCone::Line(t) => vec![*t, *t + Turn::one()],
            PhaseCone::Plane => vec![Turn::zero(), Turn::new(2, 3), Turn::new(4, 3)],
        }
    }

    /// Closed convex hull of a finite set of rays.
    pub fn hull(angles: Vec<Turn>) -> Self {
        let mut a: Vec<Turn> = angles.into_iter().map(wrap2).collect();
        a.sort();
        a.dedup();
        match a.len() {
            0 => return PhaseCone::Trivial,
            1 => return PhaseCone::Ray(a[0]),
            _ => {}
        }
        let k = a.len();
        let two = Turn::from_integer(2);
        let gap = |i: usize| {
            if i + 1 < k {
                a[i + 1] - a[i]
            } else {
                a[0] + two - a[k - 1]
            }
        };
        let (widest, g) = (0..k)
            .map(|i| (i, gap(i)))
            .max_by(|x, y| x.1.cmp(&y.1))
            .expect("at least two rays");
        let start = a[(widest + 1) % k];
        if g > Turn::one() {
            PhaseCone::Sector {
                start,
                span: two - g,
            }
        } else if g == Turn::one() && k == 2 {
            PhaseCone::line(a[0])
        } else {
            PhaseCone::Plane
        }
    }

    /// A deterministic grid of cones with angles in multiples of π/4.
    pub fn grid() -> Vec<Self> {
        let step = Turn::new(1, 4);
        let mut out = vec![PhaseCone::Trivial, PhaseCone::Plane];
        for i in 0..8 {
            let t = step * Turn::from_integer(i);
            out.push(PhaseCone::ray(t));
            if i < 4 {
                out.push(PhaseCone::line(t));
            }
            for s in 1..=3 {
                let end = t + step * Turn::from_integer(s);
                out.push(PhaseCone::sector(t, end).expect("span at most π"));
            }
        }
        out
    }
}

impl Semiring for PhaseCone {
    fn zero() -> Self {
        PhaseCone::Trivial
    }

    fn one() -> Self {
        PhaseCone::Ray(Turn::zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut g = self.generators();
        g.extend(rhs.generators());
        Self::hull(g)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (self.generators(), rhs.generators());
        Self::hull(
            a.iter()
                .flat_map(|x| b.iter().map(move |y| *x + *y))
                .collect(),
        )
    }

    fn natural_le(&self, other: &Self) -> bool {
        self.add(other) == *other
    }
}

impl Symmetric for PhaseCone {
    const NAME: &'static str = "phi";
    const CLASS: Classification = Classification {
        weak_elimination: true,
        strong_elimination: true,
        monotone_construction: true,
        monotone_convergence: true,
        order_equal: true,
        homogeneous: false,
    };

    fn negate(&self) -> Self {
        self.mul(&PhaseCone::Ray(Turn::one()))
    }

    fn is_balanced(&self) -> bool {
        matches!(
            self,
            PhaseCone::Trivial | PhaseCone::Line(_) | PhaseCone::Plane
        )
    }

    fn is_thin(&self) -> bool {
        matches!(self, PhaseCone::Trivial | PhaseCone::Ray(_))
    }

    fn inverse(&self) -> Option<Self> {
        match self {
            PhaseCone::Ray(t) => Some(PhaseCone::ray(-*t)),
            _ => None,
        }
    }

    fn modulus(&self) -> MaxPlus {
        if *self == PhaseCone::Trivial {
            MaxPlus::zero()
        } else {
            MaxPlus::one()
        }
    }

    fn thin_candidates(target: &Self) -> Vec<Self> {
        match target {
            PhaseCone::Trivial => vec![PhaseCone::Trivial],
            PhaseCone::Ray(t) => vec![PhaseCone::Ray(*t)],
            PhaseCone::Sector { start, span } => {
                vec![PhaseCone::ray(*start + *span / Turn::from_integer(2))]
            }
            PhaseCone::Line(t) => vec![PhaseCone::ray(*t), PhaseCone::ray(*t + Turn::one())],
            PhaseCone::Plane => vec![PhaseCone::ray(Turn::zero()), PhaseCone::ray(Turn::one())],
        }
    }
}

fn fmt_turn(t: &Turn) -> String {
    format!("{}/{}", t.numer(), t.denom())
}

fn parse_turn(s: &str) -> Result<Turn, String> {
    let bad = || format!("expected an angle num/den, found `{s}`");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Turn::new(n, d))
        }
        None => s
            .trim()
            .parse::<i64>()
            .map(Turn::from_integer)
            .map_err(|_| bad()),
    }
}

impl fmt::Display for PhaseCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseCone::Trivial => f.write_str("triv"),
            PhaseCone::Ray(t) => write!(f, "hl:{}", fmt_turn(t)),
            PhaseCone::Sector { start, span } => {
                write!(
                    f,
                    "sec:{},{}",
                    fmt_turn(start),
                    fmt_turn(&wrap2(*start + *span))
                )
            }
            PhaseCone::Line(t) => write!(f, "line:{}", fmt_turn(t)),
            PhaseCone::Plane => f.write_str("plane"),
        }
    }
}

impl FromStr for PhaseCone {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "triv" => return Ok(PhaseCone::Trivial),
            "plane" => return Ok(PhaseCone::Plane),
            _ => {}
        }
        if let Some(t) = s.strip_prefix("hl:") {
            return parse_turn(t).map(PhaseCone::ray);
        }
        if let Some(t) = s.strip_prefix("line:") {
            return parse_turn(t).map(PhaseCone::line);
        }
        if let Some(rest) = s.strip_prefix("sec:") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| format!("expected sec:<start>,<end>, found `{s}`"))?;
            let (a, b) = (parse_turn(a)?, parse_turn(b)?);
            return PhaseCone::sector(a, b)
                .ok_or_else(|| format!("sector `{s}` spans more than π"));
        }
        Err(format!(
            "expected triv, hl:, sec:, line: or plane, found `{s}`"
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64, d: i64) -> Turn {
        Turn::new(n, d)
    }

    #[test]
    fn opposite_rays_span_a_line() {
        let s = PhaseCone::ray(t(1, 4)).add(&PhaseCone::ray(t(5, 4)));
        assert_eq!(s, PhaseCone::line(t(1, 4)));
        assert!(s.is_balanced());
    }

    #[test]
    fn half_planes_are_the_plane() {
        let q = PhaseCone::sector(t(0, 1), t(1, 2)).unwrap();
        assert_eq!(q.mul(&q), PhaseCone::Plane);
        assert_eq!(PhaseCone::sector(t(1, 3), t(4, 3)), Some(PhaseCone::Plane));
        let h = PhaseCone::line(t(0, 1)).add(&PhaseCone::ray(t(1, 2)));
        assert_eq!(h, PhaseCone::Plane);
        assert_eq!(PhaseCone::one().mul(&h), h);
    }

    #[test]
    fn three_spread_rays_fill_the_plane() {
        let s = PhaseCone::ray(t(0, 1))
            .add(&PhaseCone::ray(t(1, 2)))
            .add(&PhaseCone::ray(t(5, 4)));
        assert_eq!(s, PhaseCone::Plane);
    }

    #[test]
    fn tokens_round_trip() {
        for c in PhaseCone::grid() {
            let back: PhaseCone = c.to_string().parse().unwrap();
            assert_eq!(back, c);
        }
        assert!("sec:0/1,3/2".parse::<PhaseCone>().is_err());
    }
}
