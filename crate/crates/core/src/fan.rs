//! One-dimensional fans, the balancing condition and weighted evaluation maps.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::lattice::IntMatrix;
use crate::maxplus::{TropVector, UnitVector};
use crate::tropoly::{fn_eq_on_rays, TropPoly};

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(d: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = d.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(d.iter().map(|x| x / &g).collect())
}

/// A weighted rational ray with primitive direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    direction: Vec<BigInt>,
    weight: BigInt,
}

impl Ray {
    /// Normalizes `direction` to its primitive vector.
    pub fn new(direction: &[BigInt], weight: BigInt) -> Result<Self> {
        if !weight.is_positive() {
            return Err(Error::NonPositiveWeight { index: 0, weight: weight.to_string() });
        }
        Ok(Ray { direction: primitive(direction)?, weight })
    }

    pub fn from_i64s(direction: &[i64], weight: i64) -> Result<Self> {
        let d: Vec<BigInt> = direction.iter().map(|&x| BigInt::from(x)).collect();
        Self::new(&d, BigInt::from(weight))
    }

    pub fn direction(&self) -> &[BigInt] {
        &self.direction
    }

    pub fn weight(&self) -> &BigInt {
        &self.weight
    }
}

/// A 1-dimensional fan `{{0}, ρ₁, …, ρ_r}` in `R^n`.
///
/// The rays are labelled `0..r` in the order given; the empty ray list is the
/// degenerate fan `{{0}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan1D {
    ambient_dim: usize,
    rays: Vec<Ray>,
}

impl Fan1D {
    pub fn new(ambient_dim: usize, rays: Vec<Ray>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::Input("ambient dimension must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.direction.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: r.direction.len() });
            }
            if let Some(j) = rays[..i].iter().position(|s| s.direction == r.direction) {
                return Err(Error::DuplicateDirection { first: j, second: i });
            }
        }
        Ok(Fan1D { ambient_dim, rays })
    }

    /// Shorthand for tests and fixtures: `(direction, weight)` pairs.
    pub fn from_i64s(ambient_dim: usize, rays: &[(&[i64], i64)]) -> Result<Self> {
        let rays = rays.iter().map(|(d, w)| Ray::from_i64s(d, *w)).collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, rays)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn directions(&self) -> Vec<Vec<BigInt>> {
        self.rays.iter().map(|r| r.direction.clone()).collect()
    }

    /// `Σ_ρ w_ρ·d_ρ`.
    pub fn balancing_sum(&self) -> Vec<BigInt> {
        let mut sum = vec![BigInt::zero(); self.ambient_dim];
        for r in &self.rays {
            for (s, x) in sum.iter_mut().zip(&r.direction) {
                *s += &r.weight * x;
            }
        }
        sum
    }

    pub fn is_balanced(&self) -> bool {
        self.balancing_sum().iter().all(Zero::is_zero)
    }

    /// The matrix whose row `i` is `φ_X(x_i) = (w_ρ·d_ρ[i])_ρ`.
    pub fn weighted_eval_map(&self) -> GenMatrix {
        let mut m = IntMatrix::zeros(self.ambient_dim, self.rays.len());
        for (a, r) in self.rays.iter().enumerate() {
            for i in 0..self.ambient_dim {
                m[(i, a)] = &r.weight * &r.direction[i];
            }
        }
        GenMatrix(m)
    }

    /// `φ_X(f)`: the vector `ρ ↦ w_ρ·f(d_ρ)`.
    pub fn apply_phi(&self, f: &TropPoly) -> Result<TropVector> {
        if f.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: f.dim() });
        }
        if f.is_zero() {
            return Ok(TropVector::Bottom);
        }
        let values = self.rays.iter().map(|r| Ok(&r.weight * f.eval_int(&r.direction)?)).collect::<Result<Vec<_>>>()?;
        Ok(TropVector::Finite(values))
    }

    /// Do `f` and `g` agree on the support `|X|`?
    pub fn kernel_eq(&self, f: &TropPoly, g: &TropPoly) -> Result<bool> {
        if f.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: f.dim() });
        }
        fn_eq_on_rays(f, g, &self.directions())
    }

    /// Reads the fan file format. Directions are normalized to primitive
    /// vectors; duplicate primitive directions and nonpositive weights fail.
    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(&json::parse(text)?)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let dim = v
            .get("ambient_dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Input("fan: missing or invalid \"ambient_dim\"".into()))?;
        let dim = usize::try_from(dim).map_err(|_| Error::Input("fan: ambient_dim too large".into()))?;
        let rays =
            v.get("rays").and_then(Value::as_array).ok_or_else(|| Error::Input("fan: missing \"rays\" list".into()))?;
        let mut out = Vec::with_capacity(rays.len());
        for (index, r) in rays.iter().enumerate() {
            let d = json::as_int_array(
                r.get("direction").ok_or_else(|| Error::Input(format!("ray {index}: missing direction")))?,
                "direction",
            )?;
            let w = json::as_int(
                r.get("weight").ok_or_else(|| Error::Input(format!("ray {index}: missing weight")))?,
                "weight",
            )?;
            if d.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: d.len() });
            }
            let ray = Ray::new(&d, w).map_err(|e| match e {
                Error::NonPositiveWeight { weight, .. } => Error::NonPositiveWeight { index, weight },
                other => other,
            })?;
            out.push(ray);
        }
        Self::new(dim, out)
    }

    /// Canonical JSON: rays sorted lexicographically by direction.
    pub fn to_value(&self) -> Value {
        let mut rays: Vec<&Ray> = self.rays.iter().collect();
        rays.sort_by(|a, b| a.direction.cmp(&b.direction));
        json!({
            "ambient_dim": self.ambient_dim,
            "rays": rays.iter().map(|r| json!({
                "direction": json::int_array(&r.direction),
                "weight": json::int_value(&r.weight),
            })).collect::<Vec<_>>(),
        })
    }
}

/// An `n×|A|` integer matrix whose rows `F_1, …, F_n` Laurent-generate a
/// subsemiring of `Z^A_pos ∪ {-∞}`; column `a` is the vector `d_a`.
///
/// Rows are units exactly when every row sums to zero, which for a weighted
/// evaluation map is the balancing condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenMatrix(IntMatrix);

impl GenMatrix {
    pub fn new(m: IntMatrix) -> Self {
        GenMatrix(m)
    }

    pub fn from_units(units: &[UnitVector]) -> Result<Self> {
        let cols = units.first().map_or(0, UnitVector::len);
        let rows = units.iter().map(|u| u.entries().to_vec()).collect();
        Ok(GenMatrix(IntMatrix::from_rows(rows, cols)?))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn labels(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_degree_zero(&self) -> bool {
        self.0.row_iter().all(|r| r.iter().sum::<BigInt>().is_zero())
    }

    /// The rows as units; fails if some row has nonzero sum.
    pub fn units(&self) -> Result<Vec<UnitVector>> {
        self.0.row_iter().map(|r| UnitVector::new(r.to_vec())).collect()
    }

    /// The fan spanned by the nonzero columns, with unit weights.
    ///
    /// Parallel columns give one ray; zero columns give none. Weights are not
    /// recoverable from the matrix.
    pub fn fan_from_generators(&self) -> Result<Fan1D> {
        let mut seen = BTreeSet::new();
        let mut rays = Vec::new();
        for a in 0..self.labels() {
            let col = self.0.column(a);
            if col.iter().all(Zero::is_zero) {
                continue;
            }
            let d = primitive(&col)?;
            if seen.insert(d.clone()) {
                rays.push(Ray { direction: d, weight: BigInt::one() });
            }
        }
        Fan1D::new(self.n(), rays)
    }
}

impl From<IntMatrix> for GenMatrix {
    fn from(m: IntMatrix) -> Self {
        GenMatrix(m)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The 5-ray fan in R³ with weights (1,1,1,1,4).
    pub fn fan_x() -> Fan1D {
        Fan1D::from_i64s(3, &[(&[1, 0, 1], 1), (&[-1, 0, 1], 1), (&[0, 1, 1], 1), (&[0, -1, 1], 1), (&[0, 0, -1], 4)])
            .unwrap()
    }

    /// The 3-ray fan in R² with weights (1,2,1).
    pub fn fan_y() -> Fan1D {
        Fan1D::from_i64s(2, &[(&[1, 1], 1), (&[-1, 1], 2), (&[1, -3], 1)]).unwrap()
    }

    pub fn line() -> Fan1D {
        Fan1D::from_i64s(1, &[(&[1], 1), (&[-1], 1)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::tropoly::parse_poly;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&ints(&[2, 0, 2])).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(primitive(&ints(&[0, 0, -4])).unwrap(), ints(&[0, 0, -1]));
        assert_eq!(primitive(&ints(&[3, -6, 9])).unwrap(), ints(&[1, -2, 3]));
        assert_eq!(primitive(&ints(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn balancing_examples() {
        assert!(fan_x().is_balanced());
        assert!(fan_y().is_balanced());
        assert!(!Fan1D::from_i64s(2, &[(&[1, 0], 1)]).unwrap().is_balanced());
        assert!(line().is_balanced());
    }

    #[test]
    fn fan_validation() {
        assert_eq!(
            Fan1D::from_i64s(2, &[(&[1, 0], 1), (&[2, 0], 3)]),
            Err(Error::DuplicateDirection { first: 0, second: 1 })
        );
        assert!(matches!(Ray::from_i64s(&[1, 0], 0), Err(Error::NonPositiveWeight { .. })));
        assert!(Fan1D::from_i64s(2, &[(&[1, 0, 0], 1)]).is_err());
    }

    #[test]
    fn eval_map_examples() {
        assert_eq!(
            fan_x().weighted_eval_map().matrix(),
            &IntMatrix::from_i64_rows(&[&[1, -1, 0, 0, 0], &[0, 0, 1, -1, 0], &[1, 1, 1, 1, -4]])
        );
        assert_eq!(fan_y().weighted_eval_map().matrix(), &IntMatrix::from_i64_rows(&[&[1, -2, 1], &[1, 2, -3]]));
        assert_eq!(line().weighted_eval_map().matrix(), &IntMatrix::from_i64_rows(&[&[1, -1]]));
        assert!(fan_x().weighted_eval_map().units().is_ok());
    }

    #[test]
    fn phi_examples() {
        let x = fan_x();
        assert_eq!(
            x.apply_phi(&parse_poly("x1", 3).unwrap()).unwrap(),
            TropVector::from_i64s(&[1, -1, 0, 0, 0]).unwrap()
        );
        assert_eq!(
            x.apply_phi(&parse_poly("x1 + x2", 3).unwrap()).unwrap(),
            TropVector::from_i64s(&[1, 0, 1, 0, 0]).unwrap()
        );
        assert_eq!(x.apply_phi(&parse_poly("0", 3).unwrap()).unwrap(), TropVector::from_i64s(&[0; 5]).unwrap());
        assert_eq!(x.apply_phi(&TropPoly::zero(3)).unwrap(), TropVector::Bottom);
        assert!(x.apply_phi(&parse_poly("x1", 2).unwrap()).is_err());
    }

    #[test]
    fn fan_from_generators_examples() {
        let f = fan_x().weighted_eval_map().fan_from_generators().unwrap();
        let dirs: Vec<Vec<BigInt>> = f.directions();
        assert_eq!(
            dirs,
            vec![ints(&[1, 0, 1]), ints(&[-1, 0, 1]), ints(&[0, 1, 1]), ints(&[0, -1, 1]), ints(&[0, 0, -1])]
        );
        assert!(f.rays().iter().all(|r| r.weight().is_one()));

        let m = GenMatrix::new(IntMatrix::from_i64_rows(&[&[1, 0, -1, -2], &[2, 0, -2, -4]]));
        let f = m.fan_from_generators().unwrap();
        assert_eq!(f.directions(), vec![ints(&[1, 2]), ints(&[-1, -2])]);

        let f = GenMatrix::new(IntMatrix::zeros(2, 3)).fan_from_generators().unwrap();
        assert!(f.rays().is_empty());
    }

    #[test]
    fn kernel_examples() {
        let fan = Fan1D::from_i64s(2, &[(&[1, 0], 1), (&[1, 1], 1)]).unwrap();
        let f = parse_poly("x1 + x2", 2).unwrap();
        let g = parse_poly("x1", 2).unwrap();
        assert!(fan.kernel_eq(&f, &g).unwrap());
        let fan2 = Fan1D::from_i64s(2, &[(&[0, 1], 1)]).unwrap();
        assert!(!fan2.kernel_eq(&f, &g).unwrap());
        assert!(fan2.kernel_eq(&f, &f).unwrap());
    }

    #[test]
    fn json_round_trip_normalizes() {
        let text = r#"{"ambient_dim": 3, "rays": [
            {"direction": [2, 0, 2], "weight": 1}, {"direction": [-1, 0, 1], "weight": 1},
            {"direction": [0, 1, 1], "weight": 1}, {"direction": [0, -1, 1], "weight": 1},
            {"direction": [0, 0, -4], "weight": 4}]}"#;
        let fan = Fan1D::from_json(text).unwrap();
        assert_eq!(fan, fan_x());
        let again = Fan1D::from_value(&fan.to_value()).unwrap();
        assert_eq!(again.directions().into_iter().collect::<BTreeSet<_>>(), fan.directions().into_iter().collect());
        assert!(matches!(
            Fan1D::from_json(r#"{"ambient_dim": 1, "rays": [{"direction": [1], "weight": -2}]}"#),
            Err(Error::NonPositiveWeight { index: 0, .. })
        ));
        assert!(matches!(
            Fan1D::from_json(
                r#"{"ambient_dim": 1, "rays": [{"direction": [1], "weight": 1}, {"direction": [3], "weight": 1}]}"#
            ),
            Err(Error::DuplicateDirection { .. })
        ));
    }

    fn random_poly(dim: usize) -> impl Strategy<Value = TropPoly> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, dim), 1..5)
            .prop_map(move |ms| TropPoly::new(dim, ms.into_iter().map(|u| ints(&u))).unwrap())
    }

    /// Random balanced fan in R²: random rays plus one closing ray.
    fn balanced_fan() -> impl Strategy<Value = Fan1D> {
        proptest::collection::vec((proptest::collection::vec(-4i64..=4, 2), 1i64..4), 1..4).prop_filter_map(
            "degenerate",
            |rays| {
                let mut out: Vec<Ray> = Vec::new();
                for (d, w) in rays {
                    let Ok(r) = Ray::from_i64s(&d, w) else { continue };
                    if out.iter().all(|s| s.direction() != r.direction()) {
                        out.push(r);
                    }
                }
                let partial = Fan1D::new(2, out.clone()).ok()?;
                let sum = partial.balancing_sum();
                if sum.iter().all(Zero::is_zero) {
                    return Some(partial);
                }
                let neg: Vec<BigInt> = sum.iter().map(|x| -x).collect();
                let d = primitive(&neg).ok()?;
                let g = neg.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                if out.iter().any(|s| s.direction() == &d[..]) {
                    return None;
                }
                out.push(Ray::new(&d, g).ok()?);
                Fan1D::new(2, out).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn phi_is_a_semiring_map(x in balanced_fan(), f in random_poly(2), g in random_poly(2)) {
            let (pf, pg) = (x.apply_phi(&f).unwrap(), x.apply_phi(&g).unwrap());
            prop_assert_eq!(x.apply_phi(&f.add(&g).unwrap()).unwrap(), pf.add(&pg).unwrap());
            prop_assert_eq!(x.apply_phi(&f.mul(&g).unwrap()).unwrap(), pf.mul(&pg).unwrap());
        }

        #[test]
        fn balanced_images_have_nonnegative_degree(x in balanced_fan(), f in random_poly(2)) {
            prop_assert!(x.is_balanced());
            let deg = x.apply_phi(&f).unwrap().degree();
            prop_assert!(deg >= crate::maxplus::ExtInt::from(0));
        }

        #[test]
        fn kernel_matches_phi(x in balanced_fan(), f in random_poly(2), g in random_poly(2)) {
            let same = x.apply_phi(&f).unwrap() == x.apply_phi(&g).unwrap();
            prop_assert_eq!(x.kernel_eq(&f, &g).unwrap(), same);
        }

        #[test]
        fn generators_recover_unit_weight_fans(x in balanced_fan()) {
            let unit = Fan1D::new(2, x.rays().iter().map(|r| Ray::new(r.direction(), BigInt::one()).unwrap()).collect()).unwrap();
            let back = unit.weighted_eval_map().fan_from_generators().unwrap();
            prop_assert_eq!(back.directions(), unit.directions());
        }
    }
}
