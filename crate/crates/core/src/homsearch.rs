//! Semiring homomorphisms between Laurent-generated subsemirings, and
//! morphisms between 1-dimensional tropical fans.
//!
//! Let `R` be Laurent-generated by the rows `F_1, …, F_n` of a generator
//! matrix `M_F` (columns indexed by `A`). Homomorphisms `R → Z^B_pos ∪ {-∞}`
//! correspond bijectively to `n×|B|` integer matrices `M` (the images
//! `ν(F_i)` as rows) such that
//!
//! 1. every row of `M` sums to zero, and
//! 2. every column of `M` is a nonnegative rational multiple of a column of
//!    `M_F`.
//!
//! For a target subsemiring `R'` add: every row of `M` lies in the unit
//! lattice of `R'`.
//!
//! The enumerator fixes which (deduplicated) column of `M_F` each column of
//! `M` is parallel to, solves the resulting cone of scalings exactly and
//! reports each one-dimensional cone as a family `{s·M₀ : s ∈ e·Z_{>0}}`.
//! Every nonzero matrix belongs to exactly one assignment, since its nonzero
//! columns determine their primitive directions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cone::extreme_rays;
use crate::error::{Error, Result};
use crate::fan::{primitive, Fan1D, GenMatrix};
use crate::lattice::{scalar_modulus, solve_int, IntMatrix, Lattice};
use crate::maxplus::{TropVector, UnitVector};
use crate::simplex::Rational;
use crate::tropoly::{substitute_units, TropPoly};

/// Where a target column points: at a source label, or nowhere (zero column).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Zero,
    Source(usize),
}

/// One [`Slot`] per target label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnAssignment(pub Vec<Slot>);

impl ColumnAssignment {
    pub fn slots(&self) -> &[Slot] {
        &self.0
    }
}

impl fmt::Display for ColumnAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| match s {
                Slot::Zero => "0".to_string(),
                Slot::Source(a) => format!("{}", a + 1),
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The matrices `{s·M₀ : s ∈ e·Z_{>0}}`.
///
/// `M₀` has content 1 and zero row sums; its column `b` is a positive
/// multiple of source column `assignment[b]` (zero where the slot is `Zero`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomFamily {
    pub assignment: ColumnAssignment,
    pub base: IntMatrix,
    pub modulus: BigInt,
}

impl HomFamily {
    /// The `k`-th member `k·e·M₀`, `k ≥ 1`.
    pub fn member(&self, k: u64) -> IntMatrix {
        self.base.scale(&(&self.modulus * BigInt::from(k)))
    }

    /// The smallest member `e·M₀`.
    pub fn minimal(&self) -> IntMatrix {
        self.member(1)
    }

    /// All members with every entry in `[-max_entry, max_entry]`.
    pub fn members_within(&self, max_entry: &BigInt) -> Vec<IntMatrix> {
        let step = self.base.max_abs() * &self.modulus;
        if step.is_zero() {
            return Vec::new();
        }
        let count = (max_entry / &step).to_u64().unwrap_or(u64::MAX);
        (1..=count).map(|k| self.member(k)).collect()
    }
}

/// A solution cone of dimension at least two.
///
/// `rays` are its extreme rays as matrices. The integer points of such a cone
/// need not be generated by the rays, so without a bound the record is only
/// a description; with a bound, `members` lists every valid matrix of this
/// assignment with entries in `[-bound, bound]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeRecord {
    pub assignment: ColumnAssignment,
    pub rays: Vec<IntMatrix>,
    pub members: Option<Vec<IntMatrix>>,
}

/// Options for [`enumerate_homs`].
#[derive(Debug, Clone, Default)]
pub struct EnumOptions {
    /// Entry bound for brute-force completion of cone records.
    pub bound: Option<BigInt>,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub jobs: usize,
}

/// All homomorphisms, as the zero matrix plus families plus cone records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomEnumeration {
    pub n: usize,
    pub targets: usize,
    pub families: Vec<HomFamily>,
    pub cones: Vec<ConeRecord>,
    pub bound: Option<BigInt>,
}

impl HomEnumeration {
    /// False iff some cone record was left without a bounded completion.
    pub fn is_exhaustive(&self) -> bool {
        self.cones.iter().all(|c| c.members.is_some())
    }

    /// Every described matrix with entries in `[-max_entry, max_entry]`,
    /// the zero matrix included.
    ///
    /// Cone records are only usable up to the completion bound.
    pub fn expand(&self, max_entry: &BigInt) -> Result<BTreeSet<IntMatrix>> {
        let mut out = BTreeSet::from([IntMatrix::zeros(self.n, self.targets)]);
        for f in &self.families {
            out.extend(f.members_within(max_entry));
        }
        for c in &self.cones {
            match (&c.members, &self.bound) {
                (Some(ms), Some(b)) if b >= max_entry => {
                    out.extend(ms.iter().filter(|m| &m.max_abs() <= max_entry).cloned());
                }
                _ => {
                    return Err(Error::Input(format!(
                        "cone record for assignment {} is not completed up to {max_entry}",
                        c.assignment
                    )))
                }
            }
        }
        Ok(out)
    }
}

/// The images `ν(F_1), …, ν(F_n)` of a homomorphism, as rows over `B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomImages(Vec<TropVector>);

impl HomImages {
    pub fn new(images: Vec<TropVector>) -> Self {
        HomImages(images)
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        HomImages(m.row_iter().map(|r| TropVector::Finite(r.to_vec())).collect())
    }

    pub fn rows(&self) -> &[TropVector] {
        &self.0
    }

    /// The images as an `n×|B|` matrix; fails on bottom or ragged rows.
    pub fn matrix(&self) -> Result<IntMatrix> {
        let rows = self
            .0
            .iter()
            .map(|v| v.entries().map(<[BigInt]>::to_vec).ok_or(Error::BottomInput))
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows(rows, cols)
    }

    pub fn units(&self) -> Result<Vec<UnitVector>> {
        self.0.iter().map(TropVector::to_unit).collect()
    }
}

/// How one target column matches the source: a source label and `t ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnWitness {
    Zero,
    Source { label: usize, t: Rational },
}

/// Per target label, the first failing label or the matches.
fn match_columns(images: &IntMatrix, mf: &IntMatrix) -> std::result::Result<Vec<ColumnWitness>, usize> {
    (0..images.ncols())
        .map(|b| {
            let col = images.column(b);
            if col.iter().all(Zero::is_zero) {
                return Ok(ColumnWitness::Zero);
            }
            (0..mf.ncols())
                .find_map(|a| positive_ratio(&col, &mf.column(a)).map(|t| ColumnWitness::Source { label: a, t }))
                .ok_or(b)
        })
        .collect()
}

/// `t > 0` with `v = t·w`, if any.
fn positive_ratio(v: &[BigInt], w: &[BigInt]) -> Option<Rational> {
    let k = w.iter().position(|x| !x.is_zero())?;
    let t = Rational::new(v[k].clone(), w[k].clone());
    if !t.is_positive() {
        return None;
    }
    v.iter()
        .zip(w)
        .all(|(x, y)| Rational::from_integer(x.clone()) == &t * Rational::from_integer(y.clone()))
        .then_some(t)
}

fn check_rows(images: &IntMatrix, mf: &GenMatrix) -> Result<()> {
    if images.nrows() != mf.n() {
        return Err(Error::Shape(format!("{} images for {} generators", images.nrows(), mf.n())));
    }
    Ok(())
}

/// Is every image column a nonnegative rational multiple of a column of `M_F`?
///
/// Returns the match for every target label (lowest source label first), or
/// `None` when some column has no match.
pub fn geometric_check(images: &HomImages, mf: &GenMatrix) -> Result<Option<Vec<ColumnWitness>>> {
    let m = images.matrix()?;
    check_rows(&m, mf)?;
    Ok(match_columns(&m, mf.matrix()).ok())
}

/// A semiring homomorphism `R → Z^B_pos ∪ {-∞}` fixed by the generator images.
#[derive(Debug, Clone)]
pub struct Hom {
    images: Vec<UnitVector>,
    witnesses: Vec<ColumnWitness>,
}

impl Hom {
    /// Image of the element `f(F_1, …, F_n)` of `R`.
    pub fn apply(&self, f: &TropPoly) -> Result<TropVector> {
        substitute_units(f, &self.images)
    }

    pub fn images(&self) -> &[UnitVector] {
        &self.images
    }

    pub fn witnesses(&self) -> &[ColumnWitness] {
        &self.witnesses
    }
}

/// The unique homomorphism with `ν(F_i) = images[i]`.
///
/// Exists iff the images are units and pass [`geometric_check`].
pub fn hom_from_images(images: &HomImages, mf: &GenMatrix) -> Result<Hom> {
    let m = images.matrix()?;
    check_rows(&m, mf)?;
    let units = images.units()?;
    let witnesses = match_columns(&m, mf.matrix()).map_err(|label| Error::NotGeometric { label })?;
    let hom = Hom { images: units, witnesses };
    debug_assert!(geometric_check(&HomImages::from_matrix(&m), mf)?.is_some());
    Ok(hom)
}

/// The integer matrix `T` with `T·M_G = images`.
///
/// Fails if some image row is outside the lattice spanned by the rows of `M_G`.
pub fn recover_t(images: &HomImages, mg: &GenMatrix) -> Result<IntMatrix> {
    solve_int(mg.matrix(), &images.matrix()?)
}

/// The images `T·M_G` of the homomorphism induced by the linear map `T`.
pub fn apply_functor(t: &IntMatrix, mg: &GenMatrix) -> Result<HomImages> {
    Ok(HomImages::from_matrix(&t.mul(mg.matrix())?))
}

/// Distinct primitive directions of the nonzero columns, each with its lowest label.
fn assignment_targets(mf: &IntMatrix) -> Result<Vec<(usize, Vec<BigInt>)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..mf.ncols() {
        let col = mf.column(a);
        if col.iter().all(Zero::is_zero) {
            continue;
        }
        let d = primitive(&col)?;
        if seen.insert(d.clone()) {
            out.push((a, d));
        }
    }
    Ok(out)
}

/// All assignments `B → {Zero} ∪ targets` in lexicographic order.
fn assignments(targets: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut digits = vec![0usize; s];
    loop {
        out.push(digits.clone());
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if digits[i] < targets {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}

enum Outcome {
    Family(HomFamily),
    Cone(ConeRecord),
}

struct Search<'a> {
    n: usize,
    s: usize,
    targets: &'a [(usize, Vec<BigInt>)],
    lattice: Option<&'a Lattice>,
    bound: Option<&'a BigInt>,
}

impl Search<'_> {
    /// Matrix with column `b` equal to `t[k]·direction` for the `k`-th active label.
    fn matrix_for(&self, active: &[(usize, &Vec<BigInt>)], t: &[BigInt]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.s);
        for ((b, d), tb) in active.iter().zip(t) {
            for i in 0..self.n {
                m[(i, *b)] = tb * &d[i];
            }
        }
        m
    }

    fn rows_in_lattice(&self, m: &IntMatrix) -> Result<bool> {
        match self.lattice {
            None => Ok(true),
            Some(l) => {
                for r in m.row_iter() {
                    if !l.contains(r)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    fn process(&self, digits: &[usize]) -> Result<Option<Outcome>> {
        let slots: Vec<Slot> =
            digits.iter().map(|&d| if d == 0 { Slot::Zero } else { Slot::Source(self.targets[d - 1].0) }).collect();
        let active: Vec<(usize, &Vec<BigInt>)> =
            digits.iter().enumerate().filter(|(_, &d)| d != 0).map(|(b, &d)| (b, &self.targets[d - 1].1)).collect();
        if active.is_empty() {
            return Ok(None);
        }
        let equations: Vec<Vec<BigInt>> =
            (0..self.n).map(|i| active.iter().map(|(_, d)| d[i].clone()).collect()).collect();
        let rays = extreme_rays(&equations, active.len());
        // Points with some active scaling 0 belong to a smaller assignment.
        let full_support = (0..active.len()).all(|k| rays.iter().any(|r| r[k].is_positive()));
        if rays.is_empty() || !full_support {
            return Ok(None);
        }
        let assignment = ColumnAssignment(slots);
        if let [ray] = &rays[..] {
            let base = self.matrix_for(&active, ray);
            let modulus = match self.lattice {
                None => BigInt::one(),
                Some(l) => match scalar_modulus(&base, l) {
                    Ok(e) => e,
                    // no multiple of the base lies in the lattice
                    Err(Error::OutsideSpan { .. }) => return Ok(None),
                    Err(e) => return Err(e),
                },
            };
            return Ok(Some(Outcome::Family(HomFamily { assignment, base, modulus })));
        }
        let ray_matrices = rays.iter().map(|r| self.matrix_for(&active, r)).collect();
        let members = match self.bound {
            None => None,
            Some(bound) => Some(self.complete(&active, &equations, bound)?),
        };
        Ok(Some(Outcome::Cone(ConeRecord { assignment, rays: ray_matrices, members })))
    }

    /// Every valid matrix of this assignment with entries bounded by `bound`.
    fn complete(
        &self,
        active: &[(usize, &Vec<BigInt>)],
        equations: &[Vec<BigInt>],
        bound: &BigInt,
    ) -> Result<Vec<IntMatrix>> {
        let limits: Vec<BigInt> =
            active.iter().map(|(_, d)| bound / d.iter().map(|x| x.abs()).max().expect("nonzero direction")).collect();
        let mut out = Vec::new();
        if limits.iter().any(|l| l < &BigInt::one()) {
            return Ok(out);
        }
        let mut t = vec![BigInt::one(); active.len()];
        loop {
            let balanced = equations.iter().all(|e| e.iter().zip(&t).map(|(a, x)| a * x).sum::<BigInt>().is_zero());
            if balanced {
                let m = self.matrix_for(active, &t);
                if self.rows_in_lattice(&m)? {
                    out.push(m);
                }
            }
            let mut k = t.len();
            loop {
                if k == 0 {
                    out.sort();
                    return Ok(out);
                }
                k -= 1;
                if t[k] < limits[k] {
                    t[k] += 1;
                    break;
                }
                t[k] = BigInt::one();
            }
        }
    }
}

/// Enumerates every homomorphism from the subsemiring Laurent-generated by
/// the rows of `mf` into `Z^B_pos ∪ {-∞}` with `|B| = s`, or into the
/// subsemiring whose unit lattice is `target` when given.
///
/// The zero matrix is always a solution and is implicit in the result.
pub fn enumerate_homs(
    mf: &GenMatrix,
    s: usize,
    target: Option<&Lattice>,
    options: &EnumOptions,
) -> Result<HomEnumeration> {
    if s == 0 {
        return Err(Error::Input("the target label set must be nonempty".into()));
    }
    if let Some(row) = mf.matrix().row_iter().find(|r| !r.iter().sum::<BigInt>().is_zero()) {
        return Err(Error::NotAUnit(row.iter().sum::<BigInt>().to_string()));
    }
    if let Some(l) = target {
        if l.ambient() != s {
            return Err(Error::DimensionMismatch { expected: s, found: l.ambient() });
        }
    }
    let targets = assignment_targets(mf.matrix())?;
    let search = Search { n: mf.n(), s, targets: &targets, lattice: target, bound: options.bound.as_ref() };
    let all = assignments(targets.len(), s);
    let outcomes: Vec<Option<Outcome>> = if options.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
        pool.install(|| all.par_iter().map(|d| search.process(d)).collect::<Result<Vec<_>>>())?
    } else {
        all.iter().map(|d| search.process(d)).collect::<Result<Vec<_>>>()?
    };

    let mut families = Vec::new();
    let mut cones = Vec::new();
    for o in outcomes.into_iter().flatten() {
        match o {
            Outcome::Family(f) => families.push(f),
            Outcome::Cone(c) => cones.push(c),
        }
    }
    families.sort();
    families.dedup_by(|a, b| a.base == b.base);
    cones.sort();
    Ok(HomEnumeration { n: mf.n(), targets: s, families, cones, bound: options.bound.clone() })
}

/// A family of morphisms `{k·T₀ : k ∈ Z_{>0}}` together with the homomorphism
/// family it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismFamily {
    pub homs: HomFamily,
    pub base_t: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismEnumeration {
    /// Ambient dimensions `(m, n)` of source and target fan; `T` is `n×m`.
    pub dims: (usize, usize),
    pub families: Vec<MorphismFamily>,
    pub homs: HomEnumeration,
    pub target_generators: GenMatrix,
    pub warnings: Vec<String>,
}

impl MorphismEnumeration {
    pub fn is_exhaustive(&self) -> bool {
        self.homs.is_exhaustive()
    }

    /// `T` for a homomorphism matrix of this enumeration.
    pub fn t_for(&self, m: &IntMatrix) -> Result<IntMatrix> {
        recover_t(&HomImages::from_matrix(m), &self.target_generators)
    }
}

/// All morphisms from the fan `y` (in `R^m`) to the fan `x` (in `R^n`), as
/// integer `n×m` matrices.
///
/// The source generator matrix must consist of units, which for `x` is its
/// balancing condition; an unbalanced `y` only produces a warning.
pub fn enumerate_morphisms(y: &Fan1D, x: &Fan1D, options: &EnumOptions) -> Result<MorphismEnumeration> {
    let mut warnings = Vec::new();
    if !y.is_balanced() {
        warnings.push("source fan is not balanced".to_string());
    }
    if !x.is_balanced() {
        warnings.push("target fan is not balanced".to_string());
    }
    let mf = x.weighted_eval_map();
    let mg = y.weighted_eval_map();
    let lattice = Lattice::from_generators(mg.matrix().clone());
    let homs = enumerate_homs(&mf, y.rays().len(), Some(&lattice), options)?;
    let families = homs
        .families
        .iter()
        .map(|f| {
            let base_t = recover_t(&HomImages::from_matrix(&f.minimal()), &mg)?;
            Ok(MorphismFamily { homs: f.clone(), base_t })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MorphismEnumeration {
        dims: (y.ambient_dim(), x.ambient_dim()),
        families,
        homs,
        target_generators: mg,
        warnings,
    })
}

/// Reduces a nonzero matrix to content 1.
pub fn primitive_matrix(m: &IntMatrix) -> IntMatrix {
    let g = m.content();
    if g.is_zero() || g.is_one() {
        return m.clone();
    }
    let rows = m.row_iter().map(|r| r.iter().map(|x| x.div_floor(&g)).collect()).collect();
    IntMatrix::from_rows(rows, m.ncols()).expect("same shape")
}
