//! Extreme rays of cones `{t ≥ 0 : E·t = 0}` by exact double description.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::fan::primitive;
use crate::tropoly::dot;

#[derive(Debug, Clone)]
struct Generator {
    ray: Vec<BigInt>,
    zeros: BTreeSet<usize>,
}

impl Generator {
    fn new(ray: Vec<BigInt>) -> Self {
        let zeros = ray.iter().enumerate().filter(|(_, x)| x.is_zero()).map(|(i, _)| i).collect();
        Generator { ray, zeros }
    }
}

/// Primitive integer generators of the extreme rays of
/// `{t ∈ R^k : t ≥ 0, E·t = 0}`, sorted lexicographically.
///
/// Each row of `equations` has length `k`. The result is empty iff the cone
/// is `{0}`.
pub fn extreme_rays(equations: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
    let mut gens: Vec<Generator> = (0..k)
        .map(|b| {
            let mut e = vec![BigInt::zero(); k];
            e[b] = BigInt::from(1);
            Generator::new(e)
        })
        .collect();

    for eq in equations {
        debug_assert_eq!(eq.len(), k);
        let values: Vec<BigInt> = gens.iter().map(|g| dot(eq, &g.ray)).collect();
        let mut next: Vec<Generator> =
            gens.iter().zip(&values).filter(|(_, v)| v.is_zero()).map(|(g, _)| g.clone()).collect();
        for (i, (p, vp)) in gens.iter().zip(&values).enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (j, (q, vq)) in gens.iter().zip(&values).enumerate() {
                if !vq.is_negative() || !adjacent(&gens, i, j) {
                    continue;
                }
                let combined: Vec<BigInt> = p.ray.iter().zip(&q.ray).map(|(x, y)| vp * y - vq * x).collect();
                let ray = primitive(&combined).expect("positive combination of nonnegative rays");
                next.push(Generator::new(ray));
            }
        }
        let mut seen = BTreeSet::new();
        next.retain(|g| seen.insert(g.ray.clone()));
        gens = next;
    }

    let mut rays: Vec<Vec<BigInt>> = gens.into_iter().map(|g| g.ray).collect();
    rays.sort();
    rays
}

/// Combinatorial adjacency: no third generator is tight on every
/// nonnegativity constraint tight at both `i` and `j`.
fn adjacent(gens: &[Generator], i: usize, j: usize) -> bool {
    let common: BTreeSet<usize> = gens[i].zeros.intersection(&gens[j].zeros).copied().collect();
    !gens.iter().enumerate().any(|(l, g)| l != i && l != j && common.is_subset(&g.zeros))
}

/// Rank of a set of integer vectors over Q.
pub fn rank(vectors: &[Vec<BigInt>]) -> usize {
    use crate::simplex::{int, Rational};
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.iter().map(int).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{int, Rational};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Independent route: an extreme ray is a nonnegative solution whose
    /// support carries a one-dimensional kernel.
    fn minimal_support_rays(eqs: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << k) {
            let support: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).collect();
            // restricted system, solved by rational elimination
            let mut rows: Vec<Vec<Rational>> =
                eqs.iter().map(|e| support.iter().map(|&b| int(&e[b])).collect()).collect();
            let s = support.len();
            let mut pivots = Vec::new();
            let mut r = 0;
            for c in 0..s {
                let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
                rows.swap(r, p);
                let pv = rows[r][c].clone();
                for x in rows[r].iter_mut() {
                    *x /= &pv;
                }
                for i in 0..rows.len() {
                    if i != r && !rows[i][c].is_zero() {
                        let f = rows[i][c].clone();
                        let pr = rows[r].clone();
                        for (x, y) in rows[i].iter_mut().zip(&pr) {
                            *x -= &f * y;
                        }
                    }
                }
                pivots.push(c);
                r += 1;
            }
            if s - pivots.len() != 1 {
                continue;
            }
            let free = (0..s).find(|c| !pivots.contains(c)).unwrap();
            let mut sol = vec![Rational::zero(); s];
            sol[free] = Rational::from_integer(1.into());
            for (i, &pc) in pivots.iter().enumerate() {
                sol[pc] = -rows[i][free].clone();
            }
            let sign_pos = sol.iter().all(|x| x.is_positive());
            let sign_neg = sol.iter().all(|x| x.is_negative());
            if !(sign_pos || sign_neg) {
                continue;
            }
            let lcm = sol.iter().fold(BigInt::from(1), |a, x| num_integer::Integer::lcm(&a, x.denom()));
            let mut full = vec![BigInt::zero(); k];
            for (idx, &b) in support.iter().enumerate() {
                let v = (&sol[idx] * int(&lcm)).to_integer();
                full[b] = if sign_neg { -v } else { v };
            }
            out.insert(primitive(&full).unwrap());
        }
        out.into_iter().collect()
    }

    #[test]
    fn one_dimensional_cone() {
        // columns (1,0,1), (-1,0,1), (0,0,-4): t1 = t2, t1 + t2 = 4 t3
        let eqs = vec![ints(&[1, -1, 0]), ints(&[0, 0, 0]), ints(&[1, 1, -4])];
        assert_eq!(extreme_rays(&eqs, 3), vec![ints(&[2, 2, 1])]);
    }

    #[test]
    fn two_dimensional_cone() {
        // t1 + t2 = t3
        let eqs = vec![ints(&[1, 1, -1])];
        assert_eq!(extreme_rays(&eqs, 3), vec![ints(&[0, 1, 1]), ints(&[1, 0, 1])]);
        assert_eq!(rank(&extreme_rays(&eqs, 3)), 2);
    }

    #[test]
    fn trivial_cones() {
        assert!(extreme_rays(&[ints(&[1, 1])], 2).is_empty());
        assert_eq!(extreme_rays(&[], 2), vec![ints(&[0, 1]), ints(&[1, 0])]);
        assert_eq!(extreme_rays(&[ints(&[0])], 1), vec![ints(&[1])]);
    }

    proptest! {
        #[test]
        fn agrees_with_minimal_supports(
            k in 1usize..5,
            eqs in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..4),
        ) {
            let eqs: Vec<Vec<BigInt>> = eqs.iter().map(|e| ints(&e[..k])).collect();
            prop_assert_eq!(extreme_rays(&eqs, k), minimal_support_rays(&eqs, k));
        }
    }
}
