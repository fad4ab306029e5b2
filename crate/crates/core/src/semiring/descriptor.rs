//! Runtime semiring descriptors.
//!
//! A [`SemiringDescriptor`] bundles the laws of a semiring as plain function
//! pointers over a tagged [`Value`], so that algorithms can be driven by a
//! name chosen at runtime. Every descriptor is generated from a typed
//! implementation, which keeps the two paths in agreement.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::{Bool4, Classification, GroupElem, PhaseCone, Super, Symmetric, Torus, Turn, N2};
use crate::extension::{Base, Ext};
use crate::scalar::{MaxPlus, Rational};

/// An element of some semiring, tagged by carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Bool4(Bool4),
    N2(N2),
    Phase(PhaseCone),
    Group(GroupElem),
    Zero,
    Term(Box<Value>, Rational),
}

/// Conversion between a typed semiring and [`Value`], plus the element
/// pools used by the axiom checker.
pub trait Dynamic: Symmetric + fmt::Display + FromStr<Err = String> {
    fn to_value(&self) -> Value;
    fn from_value(v: &Value) -> Option<Self>;

    /// The whole carrier, when finite.
    fn elements() -> Option<Vec<Self>>;

    /// A finite pool of representative elements.
    fn sample_pool() -> Vec<Self>;

    /// Coefficients paired with magnitudes in extension pools.
    fn extension_coefficients() -> Vec<Self> {
        Self::sample_pool()
    }
}

impl Dynamic for Bool4 {
    fn to_value(&self) -> Value {
        Value::Bool4(*self)
    }
    fn from_value(v: &Value) -> Option<Self> {
        match v {
            Value::Bool4(b) => Some(*b),
            _ => None,
        }
    }
    fn elements() -> Option<Vec<Self>> {
        Some(Bool4::ALL.to_vec())
    }
    fn sample_pool() -> Vec<Self> {
        Bool4::ALL.to_vec()
    }
}

impl Dynamic for N2 {
    fn to_value(&self) -> Value {
        Value::N2(*self)
    }
    fn from_value(v: &Value) -> Option<Self> {
        match v {
            Value::N2(b) => Some(*b),
            _ => None,
        }
    }
    fn elements() -> Option<Vec<Self>> {
        Some(N2::ALL.to_vec())
    }
    fn sample_pool() -> Vec<Self> {
        N2::ALL.to_vec()
    }
}

impl Dynamic for PhaseCone {
    fn to_value(&self) -> Value {
        Value::Phase(self.clone())
    }
    fn from_value(v: &Value) -> Option<Self> {
        match v {
            Value::Phase(c) => Some(c.clone()),
            _ => None,
        }
    }
    fn elements() -> Option<Vec<Self>> {
        None
    }
    fn sample_pool() -> Vec<Self> {
        PhaseCone::grid()
    }
    fn extension_coefficients() -> Vec<Self> {
        let (quarter, half) = (Turn::new(1, 4), Turn::new(1, 2));
        let mut out = vec![
            PhaseCone::Plane,
            PhaseCone::line(Turn::zero()),
            PhaseCone::line(half),
        ];
        for i in 0..8 {
            out.push(PhaseCone::ray(quarter * Turn::from_integer(i)));
        }
        for i in 0..4 {
            let t = half * Turn::from_integer(i);
            out.extend(PhaseCone::sector(t, t + half));
            out.extend(PhaseCone::sector(t, t + quarter * Turn::from_integer(3)));
        }
        out
    }
}

impl<const N: u32> Dynamic for Torus<N> {
    fn to_value(&self) -> Value {
        Value::Group(self.0)
    }
    fn from_value(v: &Value) -> Option<Self> {
        match v {
            Value::Group(g) => Some(Torus(*g)),
            _ => None,
        }
    }
    fn elements() -> Option<Vec<Self>> {
        Some(Self::elements())
    }
    fn sample_pool() -> Vec<Self> {
        Self::elements()
    }
}

impl<const N: u32> Dynamic for Super<N> {
    fn to_value(&self) -> Value {
        Value::Group(self.0)
    }
    fn from_value(v: &Value) -> Option<Self> {
        match v {
            Value::Group(g) => Some(Super(*g)),
            _ => None,
        }
    }
    fn elements() -> Option<Vec<Self>> {
        Some(Self::elements())
    }
    fn sample_pool() -> Vec<Self> {
        Self::elements()
    }
}

/// Magnitudes combined with every base element in extension pools.
pub fn sample_magnitudes() -> Vec<Rational> {
    [(-1, 1), (0, 1), (1, 2), (1, 1), (3, 1)]
        .into_iter()
        .map(|(n, d)| Rational::new(n.into(), d.into()))
        .collect()
}

impl<B: Base + Dynamic> Dynamic for Ext<B> {
    fn to_value(&self) -> Value {
        match self {
            Ext::Zero => Value::Zero,
            Ext::Term { coeff, mag } => Value::Term(Box::new(coeff.to_value()), mag.clone()),
        }
    }
    fn from_value(v: &Value) -> Option<Self> {
        match v {
            Value::Zero => Some(Ext::Zero),
            Value::Term(c, m) => {
                let c = B::from_value(c)?;
                (!c.is_zero()).then(|| Ext::new(c, m.clone()))
            }
            _ => None,
        }
    }
    fn elements() -> Option<Vec<Self>> {
        None
    }
    fn sample_pool() -> Vec<Self> {
        let mut out = vec![Ext::Zero];
        let mags = sample_magnitudes();
        for c in B::extension_coefficients()
            .into_iter()
            .filter(|c| !c.is_zero())
        {
            for m in &mags {
                out.push(Ext::new(c.clone(), m.clone()));
            }
        }
        out
    }
}

/// Runtime bundle of a semiring's laws.
#[derive(Clone, Copy)]
pub struct SemiringDescriptor {
    pub name: &'static str,
    pub class: Classification,
    pub zero: fn() -> Value,
    pub one: fn() -> Value,
    pub add: fn(&Value, &Value) -> Value,
    pub mul: fn(&Value, &Value) -> Value,
    pub negate: fn(&Value) -> Value,
    pub modulus: fn(&Value) -> MaxPlus,
    pub is_thin: fn(&Value) -> bool,
    pub is_balanced: fn(&Value) -> bool,
    pub natural_le: fn(&Value, &Value) -> bool,
    pub inverse: fn(&Value) -> Option<Value>,
    pub thin_candidates: fn(&Value) -> Vec<Value>,
    pub elements: fn() -> Option<Vec<Value>>,
    pub sample_pool: fn() -> Vec<Value>,
    pub parse: fn(&str) -> Result<Value, String>,
    pub format: fn(&Value) -> String,
}

impl fmt::Debug for SemiringDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemiringDescriptor")
            .field("name", &self.name)
            .field("class", &self.class)
            .finish_non_exhaustive()
    }
}

fn typed<T: Dynamic>(v: &Value) -> T {
    T::from_value(v).unwrap_or_else(|| panic!("{v:?} is not an element of {}", T::NAME))
}

impl SemiringDescriptor {
    /// The descriptor of a typed semiring, registered under `name`.
    pub fn of<T: Dynamic>(name: &'static str) -> Self {
        SemiringDescriptor {
            name,
            class: T::CLASS,
            zero: || T::zero().to_value(),
            one: || T::one().to_value(),
            add: |a, b| typed::<T>(a).add(&typed::<T>(b)).to_value(),
            mul: |a, b| typed::<T>(a).mul(&typed::<T>(b)).to_value(),
            negate: |a| typed::<T>(a).negate().to_value(),
            modulus: |a| typed::<T>(a).modulus(),
            is_thin: |a| typed::<T>(a).is_thin(),
            is_balanced: |a| typed::<T>(a).is_balanced(),
            natural_le: |a, b| typed::<T>(a).natural_le(&typed::<T>(b)),
            inverse: |a| typed::<T>(a).inverse().map(|x| x.to_value()),
            thin_candidates: |a| {
                T::thin_candidates(&typed::<T>(a))
                    .iter()
                    .map(Dynamic::to_value)
                    .collect()
            },
            elements: || T::elements().map(|v| v.iter().map(Dynamic::to_value).collect()),
            sample_pool: || T::sample_pool().iter().map(Dynamic::to_value).collect(),
            parse: |s| s.parse::<T>().map(|x| x.to_value()),
            format: |a| typed::<T>(a).to_string(),
        }
    }

    pub fn balance(&self, a: &Value, b: &Value) -> bool {
        (self.is_balanced)(&(self.add)(a, &(self.negate)(b)))
    }

    pub fn bala(&self, a: &Value, b: &Value) -> bool {
        (self.modulus)(a) == (self.modulus)(b) && self.balance(a, b)
    }

    pub fn is_zero(&self, a: &Value) -> bool {
        *a == (self.zero)()
    }

    /// Whether the carrier is finite and enumerable.
    pub fn is_finite(&self) -> bool {
        (self.elements)().is_some()
    }
}

/// Every registered semiring, in a stable order.
pub fn registry() -> Vec<SemiringDescriptor> {
    vec![
        SemiringDescriptor::of::<Bool4>("bool4"),
        SemiringDescriptor::of::<N2>("n2"),
        SemiringDescriptor::of::<PhaseCone>("phi"),
        SemiringDescriptor::of::<Torus<2>>("torus2"),
        SemiringDescriptor::of::<Torus<4>>("torus4"),
        SemiringDescriptor::of::<Super<1>>("super1"),
        SemiringDescriptor::of::<Super<2>>("super2"),
        SemiringDescriptor::of::<Ext<Bool4>>("smax"),
        SemiringDescriptor::of::<Ext<N2>>("t2"),
        SemiringDescriptor::of::<Ext<PhaseCone>>("phase"),
        SemiringDescriptor::of::<Ext<Torus<4>>>("torus4-ext"),
        SemiringDescriptor::of::<Ext<Super<2>>>("super2-ext"),
    ]
}

pub fn by_name(name: &str) -> Option<SemiringDescriptor> {
    registry().into_iter().find(|d| d.name == name)
}
