//! Tropical and signed tropical hyperplanes.
//!
//! A hyperplane with thin parameters `a` is the set of thin `x` with
//! `⊕ a_i x_i ∇ 0`. Over the bi-valued semiring this says the maximum of
//! `a_i + x_i` is attained twice; over the symmetrized semiring, that the
//! maximum over positive terms equals the maximum over negative ones.

use std::fmt;

use crate::error::{Error, Result};
use crate::extension::SMax;
use crate::matrix::Matrix;
use crate::scalar::MaxPlus;
use crate::semiring::{dot, Bool4, Semiring, Symmetric};
use crate::solvers::{det_auto, homogeneous_hat, SolveOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane<T> {
    params: Vec<T>,
}

impl<T: Symmetric> Hyperplane<T> {
    pub fn new(params: Vec<T>) -> Result<Self> {
        if params.iter().all(T::is_zero) {
            return Err(Error::Precondition(
                "hyperplane parameters are all zero".into(),
            ));
        }
        if let Some(i) = params.iter().position(|a| !a.is_thin()) {
            return Err(Error::Precondition(format!("parameter {i} is not thin")));
        }
        Ok(Hyperplane { params })
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    pub fn dimension(&self) -> usize {
        self.params.len()
    }

    pub fn contains(&self, x: &[T]) -> Result<bool> {
        if x.len() != self.params.len() {
            return Err(Error::Dimension(format!(
                "point of length {} against a hyperplane in dimension {}",
                x.len(),
                self.params.len()
            )));
        }
        Ok(dot(&self.params, x).is_balanced())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn unit(self) -> SMax {
        match self {
            Sign::Plus => SMax::plus(0),
            Sign::Minus => SMax::minus(0),
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `ε ∈ {+1, -1}ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern(pub Vec<Sign>);

impl SignPattern {
    /// Signs of a thin vector, zero entries counted positive.
    pub fn of(x: &[SMax]) -> Self {
        SignPattern(
            x.iter()
                .map(|v| {
                    if v.gamma() == Bool4::Minus {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect(),
        )
    }

    /// All `2ⁿ` patterns, in binary order with `+` first.
    pub fn all(n: usize) -> Vec<SignPattern> {
        (0..1u32 << n)
            .map(|bits| {
                SignPattern(
                    (0..n)
                        .map(|i| {
                            if bits >> (n - 1 - i) & 1 == 1 {
                                Sign::Minus
                            } else {
                                Sign::Plus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn negated(&self) -> Self {
        SignPattern(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Sign::Plus => "+1",
                Sign::Minus => "-1",
            })
            .collect();
        f.write_str(&text.join(" "))
    }
}

/// Indices `i` whose maximal minor (row `i` deleted) of the `n × (n-1)`
/// matrix is zero or not thin.
pub fn degenerate_minors<T: Symmetric>(v: &Matrix<T>, bound: usize) -> Result<Vec<usize>> {
    let n = v.rows();
    if v.cols() + 1 != n {
        return Err(Error::Dimension(format!(
            "expected an n x (n-1) matrix, got {}x{}",
            n,
            v.cols()
        )));
    }
    let cols: Vec<usize> = (0..n - 1).collect();
    let mut bad = Vec::new();
    for i in 0..n {
        let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
        let minor = det_auto(&v.select(&rows, &cols), bound)?;
        if minor.is_zero() || !minor.is_thin() {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// Every maximal minor thin and nonzero.
pub fn general_position<T: Symmetric>(v: &Matrix<T>, bound: usize) -> Result<bool> {
    Ok(degenerate_minors(v, bound)?.is_empty())
}

/// The hyperplane through `n - 1` points together with its uniqueness
/// certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Through<T> {
    pub hyperplane: Hyperplane<T>,
    /// `x̂` thin: every hyperplane through the points is a thin multiple.
    pub unique: bool,
}

/// The hyperplane through the columns of an `n × (n-1)` matrix in general
/// position. Parameters are `x̂` of the transposed system `Vᵀ a ∇ 0`.
pub fn hyperplane_through<T: Symmetric>(v: &Matrix<T>, opts: &SolveOptions) -> Result<Through<T>> {
    if let Some(i) = v.entries().iter().position(|x| !x.is_thin()) {
        return Err(Error::Precondition(format!(
            "entry {i} of the points is not thin"
        )));
    }
    let bad = degenerate_minors(v, opts.brute_bound)?;
    if !bad.is_empty() {
        return Err(Error::NotGeneralPosition(bad));
    }
    let hat = homogeneous_hat(&v.transpose(), opts)?;
    Ok(Through {
        hyperplane: Hyperplane::new(hat.hat)?,
        unique: hat.hat_is_thin,
    })
}

/// `H(ε)`: parameter `i` multiplied by `ε_i`.
pub fn sign_transform(h: &Hyperplane<SMax>, eps: &SignPattern) -> Result<Hyperplane<SMax>> {
    if eps.len() != h.dimension() {
        return Err(Error::Dimension(format!(
            "sign pattern of length {} in dimension {}",
            eps.len(),
            h.dimension()
        )));
    }
    Hyperplane::new(
        h.params
            .iter()
            .zip(&eps.0)
            .map(|(a, s)| a.mul(&s.unit()))
            .collect(),
    )
}

/// Shifts a max-plus point so that its first finite coordinate is zero.
pub fn normalize_point(x: &[MaxPlus]) -> Vec<MaxPlus> {
    match x.iter().find_map(MaxPlus::value) {
        None => x.to_vec(),
        Some(first) => {
            let shift = MaxPlus::finite(-first.clone());
            x.iter().map(|c| c.mul(&shift)).collect()
        }
    }
}

/// Where `n - 1` signed hyperplanes in dimension `n` meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meet {
    /// The pattern whose transformed hyperplanes share a nonnegative point,
    /// fixed up to global sign by a positive first nonzero coordinate.
    pub pattern: SignPattern,
    /// That point, normalized by [`normalize_point`].
    pub point: Vec<MaxPlus>,
    /// The thin solution of `P x ∇ 0` it comes from.
    pub solution: Vec<SMax>,
    pub unique: bool,
}

pub fn meet_hyperplanes(hs: &[Hyperplane<SMax>], opts: &SolveOptions) -> Result<Meet> {
    let n = hs.len() + 1;
    if hs.is_empty() {
        return Err(Error::Dimension("at least one hyperplane is needed".into()));
    }
    if let Some(h) = hs.iter().find(|h| h.dimension() != n) {
        return Err(Error::Dimension(format!(
            "{} hyperplanes need dimension {n}, got {}",
            hs.len(),
            h.dimension()
        )));
    }
    let p = Matrix::from_rows(hs.iter().map(|h| h.params.clone()).collect())?;
    let bad = degenerate_minors(&p.transpose(), opts.brute_bound)?;
    if !bad.is_empty() {
        return Err(Error::NotGeneralPosition(bad));
    }
    let hat = homogeneous_hat(&p, opts)?;
    let mut x = hat.hat;
    if x.iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.gamma() == Bool4::Minus)
    {
        x = x.iter().map(SMax::negate).collect();
    }
    let point: Vec<MaxPlus> = x.iter().map(SMax::modulus).collect();
    Ok(Meet {
        pattern: SignPattern::of(&x),
        point: normalize_point(&point),
        solution: x,
        unique: hat.hat_is_thin,
    })
}
