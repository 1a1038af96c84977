//! Ring abstractions and the concrete computable rings.
//!
//! Rings are context objects: elements are plain values and every
//! operation goes through the ring that owns them. This lets the same
//! polynomial, matrix and algebra code run over the shipped base rings
//! ([`RingSpec`]), over finite algebras, universal decomposition algebras
//! and Henselization towers.

mod element;
mod spec;

pub use element::{
    normalize_json_text, parse_json, parse_value, value_from_json, value_to_json, ArithOp,
    RingElement,
};
pub use spec::{Capabilities, RingKind, RingSpec, Value};

use std::fmt::Debug;

use crate::error::Result;

/// Outcome of the unit-or-radical decision in a local ring.
#[derive(Debug, Clone, PartialEq)]
pub enum Split<E> {
    Unit(E),
    Radical,
}

impl<E> Split<E> {
    pub fn is_unit(&self) -> bool {
        matches!(self, Split::Unit(_))
    }
}

/// A commutative ring with decidable zero test.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse of `a` if it is a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn is_field(&self) -> bool {
        false
    }

    fn is_domain(&self) -> bool {
        self.is_field()
    }

    /// Exact quotient `a / b` when it exists in the ring.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inverse(b).map(|inv| self.mul(a, &inv))
    }

    /// Upper bound on the nilpotency index of nilpotent elements, if known.
    fn nilpotency_bound(&self) -> Option<u64> {
        None
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(&self.from_int(n), a)
    }
}

/// A residually discrete local ring: every element is decidably a unit or
/// in the maximal ideal, and the residue field is one of the shipped fields.
pub trait LocalRing: Ring {
    fn local_split(&self, a: &Self::Elem) -> Result<Split<Self::Elem>>;
    fn residue_field(&self) -> Result<RingSpec>;
    fn residue(&self, a: &Self::Elem) -> Result<Value>;
    /// A fixed section of the residue map.
    fn lift_residue(&self, r: &Value) -> Result<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> Result<bool> {
        Ok(self.local_split(a)?.is_unit())
    }

    fn in_radical(&self, a: &Self::Elem) -> Result<bool> {
        Ok(!self.is_unit(a)?)
    }
}

/// A local ring on which Hensel roots are computable by Newton iteration:
/// the maximal ideal is nilpotent of index at most [`Self::newton_precision`]
/// (or zero, for fields).
pub trait HenselOracle: LocalRing {
    /// Smallest `N` such that the `N`-th power of the maximal ideal vanishes.
    fn newton_precision(&self) -> Result<u64>;
}

/// A local ring whose elements factor as a unit times a power of a fixed
/// uniformizer, making Smith-form elimination available.
pub trait ValuationRing: LocalRing {
    /// `None` encodes the zero element of a domain (infinite valuation).
    fn valuation(&self, a: &Self::Elem) -> Result<Option<u64>>;
}
