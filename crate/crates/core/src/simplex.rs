//! Exact rational feasibility for systems `A x = b, x ≥ 0`.
//!
//! Phase-one simplex on a dense tableau over `BigRational`, with Bland's rule
//! for both the entering and the leaving variable so the method terminates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Returns some `x ≥ 0` with `A x = b`, or `None` if no such point exists.
///
/// `a` is given row by row; every row must have the same length.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per row");
    let rows = a.len();
    let vars = a.first().map_or(0, Vec::len);
    if rows == 0 {
        return Some(vec![Rational::zero(); vars]);
    }
    assert!(a.iter().all(|r| r.len() == vars), "ragged constraint matrix");

    // columns: original variables, then one artificial per row, then rhs
    let width = vars + rows + 1;
    let rhs = width - 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v } else { v.clone() };
        }
        t[vars + i] = Rational::one();
        t[rhs] = if flip { -bi } else { bi.clone() };
        tab.push(t);
    }
    let mut basis: Vec<usize> = (vars..vars + rows).collect();

    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost = vec![Rational::zero(); width];
    for t in &tab {
        for j in 0..vars {
            cost[j] -= &t[j];
        }
        cost[rhs] -= &t[rhs];
    }

    while let Some(enter) = (0..vars + rows).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, t) in tab.iter().enumerate() {
            if !t[enter].is_positive() {
                continue;
            }
            let ratio = &t[rhs] / &t[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always blocks.
        let (pr, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, pr, enter);
        basis[pr] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); vars];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < vars {
            x[bv] = tab[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], pr: usize, pc: usize) {
    let p = tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v /= &p;
    }
    let prow = tab[pr].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            *v -= &f * pv;
        }
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            *v -= &f * pv;
        }
    }
}

pub fn int(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    fn check(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            let lhs: Rational = row.iter().zip(x).map(|(c, v)| c * v).sum();
            assert_eq!(&lhs, bi);
        }
    }

    #[test]
    fn convex_combination_found() {
        // (1,1) = ½(2,0) + ½(0,2)
        let a = vec![vec![q(2), q(0)], vec![q(0), q(2)], vec![q(1), q(1)]];
        let b = vec![q(1), q(1), q(1)];
        let x = feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
        assert_eq!(x, vec![Rational::new(1.into(), 2.into()); 2]);
    }

    #[test]
    fn infeasible_detected() {
        // x + y = -1 with x, y ≥ 0
        let a = vec![vec![q(1), q(1)]];
        assert!(feasible_point(&a, &[q(-1)]).is_none());
        // x - y = 1 and y - x = 1
        let a = vec![vec![q(1), q(-1)], vec![q(-1), q(1)]];
        assert!(feasible_point(&a, &[q(1), q(1)]).is_none());
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        let a = vec![vec![q(-1), q(0), q(1)], vec![q(-2), q(0), q(2)], vec![q(0), q(1), q(1)]];
        let b = vec![q(-3), q(-6), q(4)];
        let x = feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn degenerate_cycling_prone_system() {
        // Beale-style degenerate system; Bland's rule must terminate.
        let a = vec![
            vec![
                Rational::new(1.into(), 4.into()),
                q(-60),
                Rational::new((-1).into(), 25.into()),
                q(9),
                q(1),
                q(0),
                q(0),
            ],
            vec![
                Rational::new(1.into(), 2.into()),
                q(-90),
                Rational::new((-1).into(), 50.into()),
                q(3),
                q(0),
                q(1),
                q(0),
            ],
            vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)],
        ];
        let b = vec![q(0), q(0), q(1)];
        let x = feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
    }
}
