//! Boolean Laurent polynomials viewed as functions `x ↦ max_i ⟨u_i, x⟩`.
//!
//! A [`TropPoly`] is a finite set of integer exponent vectors. Two of them
//! define the same function on `R^n` iff their exponent sets have the same
//! convex hull, so the canonical form [`TropPolyFn`] keeps only the vertices.
//! Vertex tests are exact rational feasibility problems.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::maxplus::{TropVector, UnitVector};
use crate::simplex::{feasible_point, int, Rational};

mod parse;

pub use parse::parse_poly;

pub type Exponent = Vec<BigInt>;

/// A Boolean Laurent polynomial in `n` variables, as a set of exponents.
///
/// The empty set is the zero polynomial, the function `-∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropPoly {
    dim: usize,
    monomials: BTreeSet<Exponent>,
}

impl TropPoly {
    pub fn new(dim: usize, monomials: impl IntoIterator<Item = Exponent>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("polynomials need at least one variable".into()));
        }
        let monomials: BTreeSet<Exponent> = monomials.into_iter().collect();
        if let Some(bad) = monomials.iter().find(|u| u.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
        }
        Ok(TropPoly { dim, monomials })
    }

    pub fn from_i64s(dim: usize, monomials: &[&[i64]]) -> Result<Self> {
        Self::new(dim, monomials.iter().map(|u| u.iter().map(|&e| BigInt::from(e)).collect()))
    }

    /// The function `-∞`.
    pub fn zero(dim: usize) -> Self {
        TropPoly { dim, monomials: BTreeSet::new() }
    }

    /// The constant function `0`, i.e. the single zero exponent.
    pub fn one(dim: usize) -> Self {
        TropPoly { dim, monomials: BTreeSet::from([vec![BigInt::zero(); dim]]) }
    }

    /// The coordinate function `x_i` (0-based `i`).
    pub fn variable(dim: usize, i: usize) -> Self {
        let mut u = vec![BigInt::zero(); dim];
        u[i] = BigInt::one();
        TropPoly { dim, monomials: BTreeSet::from([u]) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Exponents in lexicographic order.
    pub fn monomials(&self) -> impl Iterator<Item = &Exponent> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, u: &[BigInt]) -> bool {
        self.monomials.contains(u)
    }

    /// `f ⊕ g`: union of exponent sets.
    pub fn add(&self, other: &TropPoly) -> Result<TropPoly> {
        check_dim(self.dim, other.dim)?;
        Ok(TropPoly { dim: self.dim, monomials: self.monomials.union(&other.monomials).cloned().collect() })
    }

    /// `f ⊙ g`: Minkowski sum of exponent sets.
    pub fn mul(&self, other: &TropPoly) -> Result<TropPoly> {
        check_dim(self.dim, other.dim)?;
        let mut out = BTreeSet::new();
        for u in &self.monomials {
            for v in &other.monomials {
                out.insert(u.iter().zip(v).map(|(a, b)| a + b).collect());
            }
        }
        Ok(TropPoly { dim: self.dim, monomials: out })
    }

    /// `max_i ⟨u_i, p⟩`, or `None` for the zero polynomial.
    fn max_dot<T, F>(&self, dot: F) -> Option<T>
    where
        T: Ord,
        F: Fn(&Exponent) -> T,
    {
        self.monomials.iter().map(dot).max()
    }

    /// Value of the function at a rational point.
    pub fn eval(&self, p: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, p.len())?;
        self.max_dot(|u| u.iter().zip(p).map(|(e, x)| int(e) * x).sum::<Rational>()).ok_or(Error::ZeroPolynomial)
    }

    /// Value of the function at an integer point.
    pub fn eval_int(&self, p: &[BigInt]) -> Result<BigInt> {
        check_dim(self.dim, p.len())?;
        self.max_dot(|u| dot(u, p)).ok_or(Error::ZeroPolynomial)
    }

    /// Keeps exactly the exponents that are vertices of the convex hull.
    pub fn canonicalize(&self) -> TropPolyFn {
        let all: Vec<&Exponent> = self.monomials.iter().collect();
        let vertices = all
            .iter()
            .enumerate()
            .filter(|(i, u)| {
                let others: Vec<&Exponent> = all.iter().enumerate().filter(|(j, _)| j != i).map(|(_, v)| *v).collect();
                !in_convex_hull(u, &others)
            })
            .map(|(_, u)| (*u).clone())
            .collect();
        TropPolyFn(TropPoly { dim: self.dim, monomials: vertices })
    }
}

impl fmt::Display for TropPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "-inf");
        }
        for (k, u) in self.monomials.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = u
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| if e.is_one() { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if factors.is_empty() {
                write!(f, "0")?;
            } else {
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A polynomial in canonical form: no exponent lies in the convex hull of
/// the others. Equal functions on `R^n` have identical canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropPolyFn(TropPoly);

impl TropPolyFn {
    pub fn as_poly(&self) -> &TropPoly {
        &self.0
    }

    pub fn into_poly(self) -> TropPoly {
        self.0
    }
}

pub(crate) fn dot(u: &[BigInt], v: &[BigInt]) -> BigInt {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Is `u` a convex combination of `others`?
fn in_convex_hull(u: &[BigInt], others: &[&Exponent]) -> bool {
    if others.is_empty() {
        return false;
    }
    // rows: one per coordinate, plus Σλ = 1
    let mut a: Vec<Vec<Rational>> = (0..u.len()).map(|k| others.iter().map(|v| int(&v[k])).collect()).collect();
    a.push(vec![Rational::one(); others.len()]);
    let mut b: Vec<Rational> = u.iter().map(int).collect();
    b.push(Rational::one());
    feasible_point(&a, &b).is_some()
}

/// A direction `p` with `⟨w, p⟩ ≥ ⟨u, p⟩ + 1` for every `u` in `set`, when
/// `w` lies outside the convex hull of `set`.
fn separating_direction(w: &[BigInt], set: &TropPoly) -> Option<Vec<Rational>> {
    let n = w.len();
    let rows: Vec<&Exponent> = set.monomials().collect();
    // variables: p⁺ (n), p⁻ (n), one slack per row
    let width = 2 * n + rows.len();
    let mut a = Vec::with_capacity(rows.len());
    for (r, u) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        for k in 0..n {
            let diff = int(&(&w[k] - &u[k]));
            row[n + k] = -diff.clone();
            row[k] = diff;
        }
        row[2 * n + r] = -Rational::one();
        a.push(row);
    }
    let b = vec![Rational::one(); rows.len()];
    let x = feasible_point(&a, &b)?;
    Some((0..n).map(|k| &x[k] - &x[n + k]).collect())
}

/// Compares the functions of `f` and `g` on all of `R^n`.
///
/// Returns `None` when they are equal and otherwise a rational point where
/// the two values differ.
pub fn compare_on_space(f: &TropPoly, g: &TropPoly) -> Result<Option<Vec<Rational>>> {
    check_dim(f.dim, g.dim)?;
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Ok(None),
        (true, false) | (false, true) => return Ok(Some(vec![Rational::zero(); f.dim])),
        _ => {}
    }
    let cf = f.canonicalize().into_poly();
    let cg = g.canonicalize().into_poly();
    if cf == cg {
        return Ok(None);
    }
    // A vertex of one hull outside the other hull exists whenever the hulls differ.
    let candidates = cf
        .monomials()
        .filter(|v| !cg.contains(v))
        .map(|v| (v, &cg))
        .chain(cg.monomials().filter(|w| !cf.contains(w)).map(|w| (w, &cf)));
    for (v, other) in candidates {
        if let Some(p) = separating_direction(v, other) {
            debug_assert_ne!(f.eval(&p)?, g.eval(&p)?);
            return Ok(Some(p));
        }
    }
    unreachable!("distinct vertex sets always have a separable vertex")
}

/// Equality of the induced functions on `R^n`.
pub fn fn_eq_on_space(f: &TropPoly, g: &TropPoly) -> Result<bool> {
    Ok(compare_on_space(f, g)?.is_none())
}

/// Index of the first direction where `f` and `g` take different values.
pub fn first_ray_difference(f: &TropPoly, g: &TropPoly, dirs: &[Vec<BigInt>]) -> Result<Option<usize>> {
    check_dim(f.dim, g.dim)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for (i, d) in dirs.iter().enumerate() {
        check_dim(f.dim, d.len())?;
        if d.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        if f.eval_int(d)? != g.eval_int(d)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Equality on the union of the rays spanned by `dirs` (and the origin).
///
/// Both functions are positively homogeneous, so one evaluation per ray
/// decides equality on the whole ray.
pub fn fn_eq_on_rays(f: &TropPoly, g: &TropPoly, dirs: &[Vec<BigInt>]) -> Result<bool> {
    Ok(first_ray_difference(f, g, dirs)?.is_none())
}

/// Substitutes units `F₁, …, F_n` for the variables of `f`, label by label.
pub fn substitute_units(f: &TropPoly, units: &[UnitVector]) -> Result<TropVector> {
    check_dim(f.dim, units.len())?;
    if f.is_zero() {
        return Ok(TropVector::Bottom);
    }
    let labels = units[0].len();
    if let Some(u) = units.iter().find(|u| u.len() != labels) {
        return Err(Error::LabelMismatch { left: labels, right: u.len() });
    }
    let values = (0..labels)
        .map(|a| {
            let column: Vec<BigInt> = units.iter().map(|u| u.entries()[a].clone()).collect();
            f.eval_int(&column)
        })
        .collect::<Result<Vec<_>>>()?;
    // The substitution result may have negative degree for arbitrary columns;
    // membership in Z^A_pos is a property of the caller's columns.
    Ok(TropVector::Finite(values))
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_of_rational(p: &[Rational]) -> Result<Vec<BigInt>> {
    use num_integer::Integer;
    if p.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = p.iter().map(|x| (x * int(&lcm)).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(scaled.into_iter().map(|x| x / &g).collect())
}

/// Is `t·d = q` for some `t ≥ 0`? Exact, by cross-multiplication.
pub fn on_ray(q: &[Rational], d: &[BigInt]) -> bool {
    if q.iter().all(Zero::is_zero) {
        return true;
    }
    let n = q.len();
    for i in 0..n {
        for j in i + 1..n {
            if &q[i] * int(&d[j]) != &q[j] * int(&d[i]) {
                return false;
            }
        }
    }
    let ip: Rational = q.iter().zip(d).map(|(x, e)| x * int(e)).sum();
    ip.is_positive()
}
