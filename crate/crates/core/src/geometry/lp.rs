//! Exact rational linear programming and Fourier–Motzkin elimination.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// `coeffs · z  rel  rhs`.
#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<Q>,
    pub rel: Rel,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, point: Vec<Q> },
}

/// Maximizes `c · z` over `z ≥ 0` subject to `rows`, by the two-phase
/// simplex method with Bland's rule.
pub fn maximize(c: &[Q], rows: &[Row]) -> LpOutcome {
    let nv = c.len();
    let m = rows.len();
    // normalize to rhs ≥ 0
    let rows: Vec<(Vec<Q>, Rel, Q)> = rows
        .iter()
        .map(|r| {
            if r.rhs.is_negative() {
                let rel = match r.rel {
                    Rel::Le => Rel::Ge,
                    Rel::Ge => Rel::Le,
                    Rel::Eq => Rel::Eq,
                };
                (r.coeffs.iter().map(|v| -v).collect(), rel, -r.rhs.clone())
            } else {
                (r.coeffs.clone(), r.rel, r.rhs.clone())
            }
        })
        .collect();
    // column layout: originals, one slack or surplus per inequality, artificials
    let n_slack = rows.iter().filter(|r| r.1 != Rel::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Rel::Le).count();
    let width = nv + n_slack + n_art;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    let mut artificial = vec![false; width];
    let (mut s, mut a) = (nv, nv + n_slack);
    for (i, (coeffs, rel, rhs)) in rows.into_iter().enumerate() {
        let mut row = vec![Q::zero(); width + 1];
        for (j, v) in coeffs.into_iter().enumerate() {
            row[j] = v;
        }
        row[width] = rhs;
        match rel {
            Rel::Le => {
                row[s] = Q::one();
                basis[i] = s;
                s += 1;
            }
            Rel::Ge => {
                row[s] = -Q::one();
                s += 1;
                row[a] = Q::one();
                artificial[a] = true;
                basis[i] = a;
                a += 1;
            }
            Rel::Eq => {
                row[a] = Q::one();
                artificial[a] = true;
                basis[i] = a;
                a += 1;
            }
        }
        t.push(row);
    }

    // phase 1: maximize -Σ artificials
    let phase1: Vec<Q> = (0..width)
        .map(|j| if artificial[j] { -Q::one() } else { Q::zero() })
        .collect();
    let allowed = vec![true; width];
    if !run_simplex(&mut t, &mut basis, &phase1, &allowed) {
        unreachable!("phase 1 is bounded");
    }
    if objective(&t, &basis, &phase1).is_negative() {
        return LpOutcome::Infeasible;
    }
    // drive zero-level artificials out of the basis
    let mut i = 0;
    while i < t.len() {
        if artificial[basis[i]] {
            match (0..width).find(|&j| !artificial[j] && !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = vec![Q::zero(); width];
    cost[..nv].clone_from_slice(c);
    let allowed: Vec<bool> = artificial.iter().map(|a| !a).collect();
    if !run_simplex(&mut t, &mut basis, &cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Q::zero(); nv];
    for (i, &b) in basis.iter().enumerate() {
        if b < nv {
            point[b] = t[i][width].clone();
        }
    }
    LpOutcome::Optimal {
        value: objective(&t, &basis, &cost),
        point,
    }
}

fn objective(t: &[Vec<Q>], basis: &[usize], cost: &[Q]) -> Q {
    let w = cost.len();
    basis
        .iter()
        .zip(t)
        .fold(Q::zero(), |acc, (&b, row)| acc + &cost[b] * &row[w])
}

fn pivot(t: &mut [Vec<Q>], basis: &mut [usize], r: usize, col: usize) {
    let p = t[r][col].clone();
    for v in t[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[col].is_zero() {
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
    }
    basis[r] = col;
}

// Returns false when unbounded.
fn run_simplex(t: &mut [Vec<Q>], basis: &mut [usize], cost: &[Q], allowed: &[bool]) -> bool {
    let w = cost.len();
    loop {
        // reduced cost c_j - c_B·column_j; enter the first positive one (Bland)
        let entering = (0..w).filter(|&j| allowed[j] && !basis.contains(&j)).find(|&j| {
            let cb = basis
                .iter()
                .zip(t.iter())
                .fold(Q::zero(), |acc, (&b, row)| acc + &cost[b] * &row[j]);
            (&cost[j] - cb).is_positive()
        });
        let Some(j) = entering else { return true };
        let mut best: Option<(usize, Q)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = &row[w] / &row[j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = best else { return false };
        pivot(t, basis, r, j);
    }
}

/// Homogeneous system `g · μ > 0` (strict) or `g · μ ≥ 0`, with `μ > 0`
/// implied. Nonempty exactly when the corresponding relatively open slice of
/// the simplex `Σ μ = 1` is nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomIneq {
    pub coeffs: Vec<Q>,
    pub strict: bool,
}

/// Decides the homogeneous system by the max-min-slack LP: maximize `t ≤ 1`
/// with `μ_j ≥ t`, strict rows `≥ t`, weak rows `≥ 0`, `Σ μ = 1`.
/// Returns the optimal slack and point when it is positive.
pub fn lp_strictly_feasible(ineqs: &[HomIneq], dim: usize) -> Option<(Q, Vec<Q>)> {
    max_min_slack(ineqs, &vec![Q::one(); dim])
}

/// As [`lp_strictly_feasible`], with the positivity rows weighted:
/// `μ_j ≥ weights[j] · t`.
pub fn max_min_slack(ineqs: &[HomIneq], weights: &[Q]) -> Option<(Q, Vec<Q>)> {
    let dim = weights.len();
    let nv = dim + 1; // μ then t
    let mut rows = Vec::new();
    let unit = |j: usize| {
        let mut v = vec![Q::zero(); nv];
        v[j] = Q::one();
        v
    };
    for (j, w) in weights.iter().enumerate() {
        let mut v = unit(j);
        v[dim] = -w.clone();
        rows.push(Row {
            coeffs: v,
            rel: Rel::Ge,
            rhs: Q::zero(),
        });
    }
    let mut sum = vec![Q::one(); nv];
    sum[dim] = Q::zero();
    rows.push(Row {
        coeffs: sum,
        rel: Rel::Eq,
        rhs: Q::one(),
    });
    rows.push(Row {
        coeffs: unit(dim),
        rel: Rel::Le,
        rhs: Q::one(),
    });
    for h in ineqs {
        let mut v = h.coeffs.clone();
        v.push(if h.strict { -Q::one() } else { Q::zero() });
        rows.push(Row {
            coeffs: v,
            rel: Rel::Ge,
            rhs: Q::zero(),
        });
    }
    match maximize(&unit(dim), &rows) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(dim);
            Some((value, point))
        }
        _ => None,
    }
}

/// Decides the homogeneous system by Fourier–Motzkin elimination with
/// strictness tracking. `μ_j > 0` is added explicitly.
pub fn fm_strictly_feasible(ineqs: &[HomIneq], dim: usize) -> bool {
    let mut sys: Vec<HomIneq> = ineqs.to_vec();
    for j in 0..dim {
        let mut v = vec![Q::zero(); dim];
        v[j] = Q::one();
        sys.push(HomIneq {
            coeffs: v,
            strict: true,
        });
    }
    for var in 0..dim {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for h in sys {
            if h.coeffs[var].is_positive() {
                pos.push(h);
            } else if h.coeffs[var].is_negative() {
                neg.push(h);
            } else {
                rest.push(h);
            }
        }
        for p in &pos {
            for q in &neg {
                // eliminate: (-q_var)·p + p_var·q
                let (a, b) = (-q.coeffs[var].clone(), p.coeffs[var].clone());
                let coeffs: Vec<Q> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| x * &a + y * &b)
                    .collect();
                rest.push(HomIneq {
                    coeffs: normalize(coeffs),
                    strict: p.strict || q.strict,
                });
            }
        }
        dedup(&mut rest);
        sys = rest;
    }
    // only constant rows remain: 0 > 0 is the sole contradiction
    !sys.iter().any(|h| h.strict && h.coeffs.iter().all(Zero::is_zero))
}

// scale by the first nonzero magnitude so duplicates coincide
fn normalize(mut v: Vec<Q>) -> Vec<Q> {
    if let Some(s) = v.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        for x in &mut v {
            *x /= &s;
        }
    }
    v
}

fn dedup(sys: &mut Vec<HomIneq>) {
    let mut out: Vec<HomIneq> = Vec::with_capacity(sys.len());
    for h in sys.drain(..) {
        if let Some(o) = out.iter_mut().find(|o| o.coeffs == h.coeffs) {
            o.strict |= h.strict;
        } else {
            out.push(h);
        }
    }
    *sys = out;
}

/// Solves the square system `m · x = b` exactly; `None` if singular.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let pv = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &pv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(
        a.into_iter()
            .map(|mut r| r.pop().expect("augmented column"))
            .collect(),
    )
}

/// Some solution of the underdetermined system `rows · x = b` (full row
/// rank assumed); free variables are set to zero.
pub fn solve_any(rows: &[Vec<Q>], b: &[Q], dim: usize) -> Option<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = rows
        .iter()
        .zip(b)
        .map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v /= &pv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[dim].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); dim];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = a[i][dim].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&n| q(n)).collect()
    }

    #[test]
    fn textbook_lp() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let rows = [
            Row {
                coeffs: qs(&[1, 0]),
                rel: Rel::Le,
                rhs: q(4),
            },
            Row {
                coeffs: qs(&[0, 2]),
                rel: Rel::Le,
                rhs: q(12),
            },
            Row {
                coeffs: qs(&[3, 2]),
                rel: Rel::Le,
                rhs: q(18),
            },
        ];
        assert_eq!(
            maximize(&qs(&[3, 5]), &rows),
            LpOutcome::Optimal {
                value: q(36),
                point: qs(&[2, 6])
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = [
            Row {
                coeffs: qs(&[1]),
                rel: Rel::Ge,
                rhs: q(2),
            },
            Row {
                coeffs: qs(&[1]),
                rel: Rel::Le,
                rhs: q(1),
            },
        ];
        assert_eq!(maximize(&qs(&[1]), &rows), LpOutcome::Infeasible);
        let rows = [Row {
            coeffs: qs(&[1, -1]),
            rel: Rel::Eq,
            rhs: q(-3),
        }];
        assert_eq!(maximize(&qs(&[1, 0]), &rows), LpOutcome::Unbounded);
    }

    #[test]
    fn strict_feasibility_agrees() {
        // μ0 - μ1 > 0 and μ1 - μ0 ≥ 0 is empty; weak both ways is a line
        let a = HomIneq {
            coeffs: qs(&[1, -1]),
            strict: true,
        };
        let b = HomIneq {
            coeffs: qs(&[-1, 1]),
            strict: false,
        };
        assert!(!fm_strictly_feasible(&[a.clone(), b.clone()], 2));
        assert!(lp_strictly_feasible(&[a.clone(), b.clone()], 2).is_none());
        let weak = HomIneq { strict: false, ..a };
        assert!(fm_strictly_feasible(&[weak.clone(), b.clone()], 2));
        assert!(lp_strictly_feasible(&[weak, b], 2).is_some());
    }

    #[test]
    fn linear_solves() {
        let m = vec![qs(&[2, 1]), qs(&[1, 3])];
        assert_eq!(
            solve(&m, &qs(&[3, 5])),
            Some(vec![
                Q::new(BigInt::from(4), BigInt::from(5)),
                Q::new(BigInt::from(7), BigInt::from(5))
            ])
        );
        assert_eq!(solve(&[qs(&[1, 1]), qs(&[2, 2])], &qs(&[1, 2])), None);
        assert_eq!(solve_any(&[qs(&[0, 1, 0])], &qs(&[1]), 3), Some(qs(&[0, 1, 0])));
    }
}
