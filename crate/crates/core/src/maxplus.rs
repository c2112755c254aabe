//! The idempotent semiring `Z^A_pos ∪ {-∞}` and its unit group `Z^A_0`.
//!
//! Elements are integer vectors indexed by an ordered label set `A` (the rays
//! of a fan, in fan order) with nonnegative entry sum, together with one bottom
//! element `-∞`. Addition is the entrywise maximum, multiplication the entrywise
//! sum. A vector with a `-∞` entry has degree `-∞ < 0`, so apart from bottom
//! every element is all-finite.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// An integer or `-∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(BigInt),
}

impl ExtInt {
    pub fn is_neg_inf(&self) -> bool {
        matches!(self, ExtInt::NegInf)
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            ExtInt::NegInf => None,
            ExtInt::Fin(v) => Some(v),
        }
    }

    /// Tropical sum: `max`, with `-∞` as identity.
    pub fn oplus(&self, other: &ExtInt) -> ExtInt {
        std::cmp::max(self, other).clone()
    }

    /// Tropical product: `+`, with `-∞` absorbing.
    pub fn odot(&self, other: &ExtInt) -> ExtInt {
        match (self, other) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            _ => ExtInt::NegInf,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(BigInt::from(v))
    }
}

impl From<BigInt> for ExtInt {
    fn from(v: BigInt) -> Self {
        ExtInt::Fin(v)
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtInt::NegInf, ExtInt::NegInf) => Ordering::Equal,
            (ExtInt::NegInf, _) => Ordering::Less,
            (_, ExtInt::NegInf) => Ordering::Greater,
            (ExtInt::Fin(a), ExtInt::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// An element of `Z^A_pos ∪ {-∞}`.
///
/// Labels are implicit: entry `i` belongs to the `i`-th label of the ambient
/// ordered label set. Two finite vectors are compatible iff they have the same
/// length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropVector {
    Bottom,
    Finite(Vec<BigInt>),
}

impl TropVector {
    /// Builds a finite element, checking `|A| ≥ 1` and `deg ≥ 0`.
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyLabels);
        }
        let deg: BigInt = entries.iter().sum();
        if deg.is_negative() {
            return Err(Error::NegativeDegree(deg.to_string()));
        }
        Ok(TropVector::Finite(entries))
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// The multiplicative identity on `len` labels.
    pub fn one(len: usize) -> Result<Self> {
        Self::new(vec![BigInt::zero(); len])
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, TropVector::Bottom)
    }

    pub fn entries(&self) -> Option<&[BigInt]> {
        match self {
            TropVector::Bottom => None,
            TropVector::Finite(v) => Some(v),
        }
    }

    pub fn degree(&self) -> ExtInt {
        match self {
            TropVector::Bottom => ExtInt::NegInf,
            TropVector::Finite(v) => ExtInt::Fin(v.iter().sum()),
        }
    }

    /// `F ⊕ G`, the entrywise maximum.
    pub fn add(&self, other: &TropVector) -> Result<TropVector> {
        match (self, other) {
            (TropVector::Bottom, x) | (x, TropVector::Bottom) => Ok(x.clone()),
            (TropVector::Finite(a), TropVector::Finite(b)) => {
                check_labels(a.len(), b.len())?;
                Ok(TropVector::Finite(a.iter().zip(b).map(|(x, y)| std::cmp::max(x, y).clone()).collect()))
            }
        }
    }

    /// `F ⊙ G`, the entrywise sum.
    pub fn mul(&self, other: &TropVector) -> Result<TropVector> {
        match (self, other) {
            (TropVector::Bottom, _) | (_, TropVector::Bottom) => Ok(TropVector::Bottom),
            (TropVector::Finite(a), TropVector::Finite(b)) => {
                check_labels(a.len(), b.len())?;
                Ok(TropVector::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
        }
    }

    /// Views a degree-0 element as a unit.
    pub fn to_unit(&self) -> Result<UnitVector> {
        UnitVector::try_from(self.clone())
    }

    /// Writes `F = F₁ ⊕ F₂` with `F₁, F₂` units.
    ///
    /// `F₁` lowers the entry at `a1` by `deg F`, `F₂` does the same at `a2`.
    pub fn decompose_into_units(&self, a1: usize, a2: usize) -> Result<(UnitVector, UnitVector)> {
        let entries = self.entries().ok_or(Error::BottomInput)?;
        let len = entries.len();
        if len < 2 {
            return Err(Error::Unsupported("decomposition into units needs at least two labels".into()));
        }
        if a1 == a2 || a1 >= len || a2 >= len {
            return Err(Error::Input(format!("labels {a1} and {a2} must be distinct and below {len}")));
        }
        let deg: BigInt = entries.iter().sum();
        let mut f1 = entries.to_vec();
        f1[a1] -= &deg;
        let mut f2 = entries.to_vec();
        f2[a2] -= &deg;
        Ok((UnitVector(f1), UnitVector(f2)))
    }
}

impl fmt::Display for TropVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropVector::Bottom => write!(f, "-inf"),
            TropVector::Finite(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn check_labels(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LabelMismatch { left, right });
    }
    Ok(())
}

/// A degree-0 element of `Z^A_pos`, i.e. an element of the unit group `Z^A_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitVector(Vec<BigInt>);

impl UnitVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyLabels);
        }
        let deg: BigInt = entries.iter().sum();
        if !deg.is_zero() {
            return Err(Error::NotAUnit(deg.to_string()));
        }
        Ok(UnitVector(entries))
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn invert(&self) -> UnitVector {
        UnitVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &UnitVector) -> Result<UnitVector> {
        check_labels(self.len(), other.len())?;
        Ok(UnitVector(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect()))
    }

    pub fn to_trop(&self) -> TropVector {
        TropVector::Finite(self.0.clone())
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }
}

impl TryFrom<TropVector> for UnitVector {
    type Error = Error;

    fn try_from(v: TropVector) -> Result<Self> {
        match v {
            TropVector::Bottom => Err(Error::NotAUnit("-inf".into())),
            TropVector::Finite(e) => UnitVector::new(e),
        }
    }
}

impl From<UnitVector> for TropVector {
    fn from(u: UnitVector) -> Self {
        TropVector::Finite(u.0)
    }
}

/// Inverse of a unit given as a general element; fails unless `deg F = 0`.
pub fn invert(f: &TropVector) -> Result<UnitVector> {
    Ok(f.to_unit()?.invert())
}
