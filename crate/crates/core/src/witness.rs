//! Polynomial pairs that agree on a finite union of rays but differ at a
//! given point outside it.
//!
//! For a point `p` off the rays, let `d₁` be the primitive integer vector on
//! the ray of `p` and `e_2, …, e_n` an integer basis of the hyperplane
//! `d₁^⊥`. With
//!
//! ```text
//! f = 0 ⊕ x^{±K e_2} ⊕ ⋯ ⊕ x^{±K e_n},    g = x^{d₁} ⊕ f
//! ```
//!
//! `f(p) = 0 < d₁·p = g(p)`, while on a ray `d` with `d₁·d > 0` the term
//! `K·max_i |e_i·d|` of `f` dominates `d₁·d` once `K` is large enough.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{left_kernel, IntMatrix};
use crate::simplex::Rational;
use crate::tropoly::{dot, on_ray, primitive_of_rational, TropPoly};

/// A certificate that `point` lies outside the ray union it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub f: TropPoly,
    pub g: TropPoly,
    pub point: Vec<Rational>,
    pub d1: Vec<BigInt>,
    pub basis: Vec<Vec<BigInt>>,
    pub k: BigInt,
}

impl WitnessPair {
    /// The pair for the given data; `f` and `g` are determined by `d1`,
    /// `basis` and `k`.
    pub fn assemble(point: Vec<Rational>, d1: Vec<BigInt>, basis: Vec<Vec<BigInt>>, k: BigInt) -> Result<Self> {
        let n = d1.len();
        let mut monomials = vec![vec![BigInt::zero(); n]];
        for e in &basis {
            let scaled: Vec<BigInt> = e.iter().map(|x| x * &k).collect();
            monomials.push(scaled.iter().map(|x| -x).collect());
            monomials.push(scaled);
        }
        let f = TropPoly::new(n, monomials)?;
        let g = f.add(&TropPoly::new(n, [d1.clone()])?)?;
        Ok(WitnessPair { f, g, point, d1, basis, k })
    }

    /// Witness JSON: exponent lists of `f` and `g`, the point as `p/q`
    /// strings and `K`.
    pub fn to_value(&self) -> Value {
        let monos = |p: &TropPoly| Value::Array(p.monomials().map(|u| json::int_array(u)).collect());
        json!({
            "f": monos(&self.f),
            "g": monos(&self.g),
            "point": self.point.iter().map(json::rational_string).collect::<Vec<_>>(),
            "K": json::int_value(&self.k),
        })
    }
}

/// Integer vectors spanning the hyperplane orthogonal to `p`.
pub fn orth_basis(p: &[Rational]) -> Result<Vec<Vec<BigInt>>> {
    let d1 = primitive_of_rational(p)?;
    let column = IntMatrix::from_rows(d1.into_iter().map(|x| vec![x]).collect(), 1)?;
    Ok(left_kernel(&column).to_rows())
}

fn check_dirs(n: usize, z_dirs: &[Vec<BigInt>]) -> Result<()> {
    for d in z_dirs {
        if d.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: d.len() });
        }
        if d.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
    }
    Ok(())
}

/// Builds a [`WitnessPair`] separating `p` from the rays `z_dirs`.
pub fn separating_pair(z_dirs: &[Vec<BigInt>], p: &[Rational]) -> Result<WitnessPair> {
    check_dirs(p.len(), z_dirs)?;
    if p.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    if let Some(ray) = z_dirs.iter().position(|d| on_ray(p, d)) {
        return Err(Error::PointInSupport { ray });
    }
    let d1 = primitive_of_rational(p)?;
    let basis = orth_basis(p)?;
    let mut k = BigInt::zero();
    for d in z_dirs {
        let ip = dot(&d1, d);
        if !ip.is_positive() {
            continue;
        }
        let spread = basis.iter().map(|e| dot(e, d).abs()).max().unwrap_or_default();
        debug_assert!(spread.is_positive(), "d is not parallel to p");
        k = k.max(Integer::div_ceil(&ip, &spread));
    }
    WitnessPair::assemble(p.to_vec(), d1, basis, k + BigInt::one())
}

/// Do `f` and `g` agree on every direction and differ at the point?
pub fn verify_witness(w: &WitnessPair, z_dirs: &[Vec<BigInt>]) -> bool {
    let n = w.point.len();
    if w.f.dim() != n || w.g.dim() != n || z_dirs.iter().any(|d| d.len() != n) {
        return false;
    }
    let agree = z_dirs.iter().all(|d| matches!((w.f.eval_int(d), w.g.eval_int(d)), (Ok(a), Ok(b)) if a == b));
    agree && matches!((w.f.eval(&w.point), w.g.eval(&w.point)), (Ok(a), Ok(b)) if a != b)
}

/// Membership of a point in the congruence variety of a ray union, which is
/// the ray union itself together with the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside(WitnessPair),
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside)
    }
}

pub fn in_congruence_variety(q: &[Rational], z_dirs: &[Vec<BigInt>]) -> Result<Membership> {
    check_dirs(q.len(), z_dirs)?;
    if q.iter().all(Zero::is_zero) || z_dirs.iter().any(|d| on_ray(q, d)) {
        return Ok(Membership::Inside);
    }
    let w = separating_pair(z_dirs, q)?;
    debug_assert!(verify_witness(&w, z_dirs));
    Ok(Membership::Outside(w))
}
