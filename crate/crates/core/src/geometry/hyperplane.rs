//! Exact hyperplane realizations of inductively pierced codes.
//!
//! Each step lifts the current realization into one more dimension: the new
//! bound is the cone over the old simplex with apex above a point `p'` near
//! `p ∈ ⋂_{i∈λ} H_i`, and the new half-space cuts a small cap off that cone.
//! Everything is exact rational arithmetic.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::lp::{fm_strictly_feasible, lp_strictly_feasible, max_min_slack, solve, solve_any, HomIneq, Q};
use crate::code::{Codeword, NeuralCode};
use crate::piercing::{PiercingError, PiercingSequence, PiercingStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `normal · x > offset`
    Above,
    /// `normal · x < offset`
    Below,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: Vec<Q>,
    pub offset: Q,
    pub side: Side,
}

impl Halfspace {
    /// Positive exactly on the open half-space.
    pub fn slack(&self, x: &[Q]) -> Q {
        let v = dot(&self.normal, x) - &self.offset;
        match self.side {
            Side::Above => v,
            Side::Below => -v,
        }
    }

    pub fn flipped(&self) -> Self {
        let side = match self.side {
            Side::Above => Side::Below,
            Side::Below => Side::Above,
        };
        Halfspace { side, ..self.clone() }
    }
}

/// One construction step, in the coordinates of the new ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct StepTrace {
    pub p: Vec<Q>,
    pub p_prime: Vec<Q>,
    pub apex: Vec<Q>,
    pub a: Q,
    /// Height of the new cutting hyperplane, `1 - a`.
    pub height: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneRealization {
    pub dim: usize,
    /// `halfspaces[i]` is the receptive field of neuron `i + 1`.
    pub halfspaces: Vec<Halfspace>,
    /// Vertices of the bounding simplex.
    pub bound: Vec<Vec<Q>>,
    pub witnesses: BTreeMap<Codeword, Vec<Q>>,
    pub trace: Vec<StepTrace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    Piercing(PiercingError),
    /// No interior point exists where one must; the sequence is invalid or
    /// the construction has a bug.
    Infeasible {
        step: usize,
    },
    /// A search for a small enough parameter ran out of halvings.
    NoConvergence {
        step: usize,
    },
    /// The code has no `∅`, which ball realizations cannot represent.
    MissingEmptyWord,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::Piercing(e) => write!(f, "{e}"),
            GeometryError::Infeasible { step } => write!(f, "no admissible point at step {step}"),
            GeometryError::NoConvergence { step } => write!(f, "parameter search failed at step {step}"),
            GeometryError::MissingEmptyWord => f.write_str("realizations by balls need ∅ in the code"),
        }
    }
}

impl core::error::Error for GeometryError {}

impl From<PiercingError> for GeometryError {
    fn from(e: PiercingError) -> Self {
        GeometryError::Piercing(e)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HyperplaneOptions {
    /// Extra halvings of the scale factor `a` at the final step, beyond the
    /// largest admissible value. Earlier steps are unchanged, so two builds
    /// differ only in the last cap.
    pub extra_halvings: u32,
}

const MAX_HALVINGS: u32 = 256;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn half_pow(t: u32) -> Q {
    Q::new(BigInt::one(), BigInt::one() << t as usize)
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

fn norm2(a: &[Q]) -> Q {
    dot(a, a)
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn axpy(x: &[Q], s: &Q, d: &[Q]) -> Vec<Q> {
    x.iter().zip(d).map(|(a, b)| a + s * b).collect()
}

fn l1(a: &[Q]) -> Q {
    a.iter().fold(Q::zero(), |acc, x| acc + x.abs())
}

/// Barycentric coordinate functionals of a simplex: `μ_k(x) = rows[k]·x + consts[k]`.
#[derive(Clone, Debug)]
pub struct Barycentric {
    rows: Vec<Vec<Q>>,
    consts: Vec<Q>,
}

impl Barycentric {
    /// `None` when the vertices are affinely dependent.
    pub fn of(vertices: &[Vec<Q>]) -> Option<Self> {
        let d = vertices.len().checked_sub(1)?;
        // M has columns (v_k, 1); its inverse's rows are the functionals
        let m: Vec<Vec<Q>> = (0..=d)
            .map(|r| {
                vertices
                    .iter()
                    .map(|v| if r < d { v[r].clone() } else { Q::one() })
                    .collect()
            })
            .collect();
        let mut inv_cols = Vec::with_capacity(d + 1);
        for c in 0..=d {
            let e: Vec<Q> = (0..=d)
                .map(|i| if i == c { Q::one() } else { Q::zero() })
                .collect();
            inv_cols.push(solve(&m, &e)?);
        }
        let rows = (0..=d)
            .map(|k| (0..d).map(|c| inv_cols[c][k].clone()).collect())
            .collect();
        let consts = (0..=d).map(|k| inv_cols[d][k].clone()).collect();
        Some(Barycentric { rows, consts })
    }

    pub fn coords(&self, x: &[Q]) -> Vec<Q> {
        self.rows
            .iter()
            .zip(&self.consts)
            .map(|(r, c)| dot(r, x) + c)
            .collect()
    }

    pub fn strictly_inside(&self, x: &[Q]) -> bool {
        self.coords(x).iter().all(Signed::is_positive)
    }

    /// Squared distance from `x` to the nearest facet hyperplane.
    pub fn facet_distance2(&self, x: &[Q]) -> Q {
        self.coords(x)
            .iter()
            .zip(&self.rows)
            .map(|(mu, r)| mu * mu / norm2(r))
            .min()
            .expect("a simplex has facets")
    }

    /// Facet slacks normalized by the L1 norm of the functional.
    fn normalized_slacks<'a>(&'a self, x: &'a [Q]) -> impl Iterator<Item = Q> + 'a {
        self.coords(x)
            .into_iter()
            .zip(&self.rows)
            .map(|(mu, r)| mu / l1(r))
    }
}

/// Slack coefficients of `h` on the simplex vertices; on `Σ μ = 1` the slack
/// at `Σ μ_k v_k` is `Σ μ_k g_k`.
fn vertex_slacks(h: &Halfspace, vertices: &[Vec<Q>]) -> Vec<Q> {
    vertices.iter().map(|v| h.slack(v)).collect()
}

fn base_realization(base: &NeuralCode) -> HyperplaneRealization {
    let with_empty = base.contains(Codeword::EMPTY);
    let threshold = if with_empty { q(1) } else { q(-1) };
    let mut witnesses = BTreeMap::new();
    if with_empty {
        witnesses.insert(Codeword::EMPTY, vec![Q::new(BigInt::one(), BigInt::from(2))]);
    }
    witnesses.insert(
        Codeword::singleton(1),
        vec![Q::new(BigInt::from(3), BigInt::from(2))],
    );
    HyperplaneRealization {
        dim: 1,
        halfspaces: vec![Halfspace {
            normal: vec![q(1)],
            offset: threshold,
            side: Side::Above,
        }],
        bound: vec![vec![q(0)], vec![q(2)]],
        witnesses,
        trace: Vec::new(),
    }
}

pub fn build_hyperplane_realization(seq: &PiercingSequence) -> Result<HyperplaneRealization, GeometryError> {
    build_hyperplane_realization_with(seq, HyperplaneOptions::default())
}

pub fn build_hyperplane_realization_with(
    seq: &PiercingSequence,
    opts: HyperplaneOptions,
) -> Result<HyperplaneRealization, GeometryError> {
    // validates the sequence
    seq.replay()?;
    let mut r = base_realization(&seq.base);
    let last = seq.steps.len().saturating_sub(1);
    for (k, step) in seq.steps.iter().enumerate() {
        let extra = if k == last { opts.extra_halvings } else { 0 };
        r = lift(r, step, extra, k)?;
    }
    centre_witnesses(&mut r).ok_or(GeometryError::Infeasible {
        step: seq.steps.len(),
    })?;
    Ok(r)
}

/// Moves every witness to the point of its cell with the largest smallest
/// normalized slack, so the margin reflects the arrangement rather than
/// where the construction happened to put a witness.
fn centre_witnesses(r: &mut HyperplaneRealization) -> Option<()> {
    let bary = Barycentric::of(&r.bound)?;
    let weights: Vec<Q> = bary.rows.iter().map(|row| l1(row)).collect();
    for (c, w) in r.witnesses.iter_mut() {
        let ineqs: Vec<HomIneq> = r
            .halfspaces
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let scale = l1(&h.normal);
                let sign = if c.contains(i + 1) { Q::one() } else { -Q::one() };
                HomIneq {
                    coeffs: vertex_slacks(h, &r.bound)
                        .iter()
                        .map(|g| g * &sign / &scale)
                        .collect(),
                    strict: true,
                }
            })
            .collect();
        let (_, mu) = max_min_slack(&ineqs, &weights)?;
        let mut x = vec![Q::zero(); r.dim];
        for (m, v) in mu.iter().zip(&r.bound) {
            x = axpy(&x, m, v);
        }
        *w = x;
    }
    Some(())
}

fn lift(
    r: HyperplaneRealization,
    step: &PiercingStep,
    extra_halvings: u32,
    k: usize,
) -> Result<HyperplaneRealization, GeometryError> {
    let m = r.dim;
    let bary = Barycentric::of(&r.bound).ok_or(GeometryError::Infeasible { step: k })?;
    let hs = &r.halfspaces;
    let on = |i: usize| &hs[i - 1];

    // p: max-min-slack point on the λ hyperplanes inside the (σ, τ) region
    let mut ineqs = Vec::new();
    for i in step.lambda.neurons() {
        let g = vertex_slacks(on(i), &r.bound);
        ineqs.push(HomIneq {
            coeffs: g.iter().map(|x| -x).collect(),
            strict: false,
        });
        ineqs.push(HomIneq {
            coeffs: g,
            strict: false,
        });
    }
    for i in step.sigma.neurons() {
        ineqs.push(HomIneq {
            coeffs: vertex_slacks(on(i), &r.bound),
            strict: true,
        });
    }
    for j in step.tau.neurons() {
        ineqs.push(HomIneq {
            coeffs: vertex_slacks(on(j), &r.bound).iter().map(|x| -x).collect(),
            strict: true,
        });
    }
    let (_, mu) = lp_strictly_feasible(&ineqs, m + 1).ok_or(GeometryError::Infeasible { step: k })?;
    let mut p = vec![Q::zero(); m];
    for (w, v) in mu.iter().zip(&r.bound) {
        p = axpy(&p, w, v);
    }

    // r²: squared distance from p to every hyperplane off λ
    let off_lambda: Vec<&Halfspace> = (1..=m).filter(|&i| !step.lambda.contains(i)).map(&on).collect();
    let r2: Option<Q> = off_lambda
        .iter()
        .map(|h| {
            let s = h.slack(&p);
            &s * &s / norm2(&h.normal)
        })
        .min();
    // a: the copy of X scaled by a about p fits in B_{r/2}(p)
    let spread2 = r
        .bound
        .iter()
        .map(|v| norm2(&sub(v, &p)))
        .max()
        .expect("nonempty bound");
    let mut t = 1;
    if let Some(r2) = &r2 {
        while half_pow(2 * t) * &spread2 * q(4) >= *r2 {
            t += 1;
            if t > MAX_HALVINGS {
                return Err(GeometryError::NoConvergence { step: k });
            }
        }
    }
    let a = half_pow(t + extra_halvings);
    let r_prime2 = &a * &a * bary.facet_distance2(&p);

    // p' = p + εu with a_i·u = 1 on λ, so p' avoids every hyperplane
    let lam: Vec<usize> = step.lambda.neurons().collect();
    let u = solve_any(
        &lam.iter().map(|&i| on(i).normal.clone()).collect::<Vec<_>>(),
        &vec![Q::one(); lam.len()],
        m,
    )
    .ok_or(GeometryError::Infeasible { step: k })?;
    let u2 = norm2(&u);
    let mut s = 0;
    let p_prime = loop {
        let eps = half_pow(s);
        let cand = axpy(&p, &eps, &u);
        let close = &eps * &eps * &u2 < r_prime2;
        let contained = match &r2 {
            None => true,
            Some(r2) => r.bound.iter().all(|v| {
                let img = axpy(&cand, &a, &sub(v, &cand));
                norm2(&sub(&img, &p)) < *r2
            }),
        };
        if close && contained {
            break cand;
        }
        s += 1;
        if s > MAX_HALVINGS {
            return Err(GeometryError::NoConvergence { step: k });
        }
    };

    // lift into dimension m + 1
    let lift_pt = |x: &[Q], h: Q| {
        let mut y = x.to_vec();
        y.push(h);
        y
    };
    let mut halfspaces: Vec<Halfspace> = r
        .halfspaces
        .iter()
        .map(|h| Halfspace {
            normal: lift_pt(&h.normal, Q::zero()),
            offset: h.offset.clone(),
            side: h.side,
        })
        .collect();
    let height = Q::one() - &a;
    let mut e = vec![Q::zero(); m + 1];
    e[m] = Q::one();
    halfspaces.push(Halfspace {
        normal: e,
        offset: height.clone(),
        side: Side::Above,
    });
    let apex = lift_pt(&p_prime, Q::one());
    let mut bound: Vec<Vec<Q>> = r.bound.iter().map(|v| lift_pt(v, Q::zero())).collect();
    bound.push(apex.clone());
    let new_bary = Barycentric::of(&bound).ok_or(GeometryError::Infeasible { step: k })?;
    let n_new = m + 1;
    let certifies = |x: &[Q], c: Codeword| {
        new_bary.strictly_inside(x)
            && halfspaces
                .iter()
                .enumerate()
                .all(|(i, h)| h.slack(x).is_positive() == c.contains(i + 1))
            && halfspaces.iter().all(|h| !h.slack(x).is_zero())
    };

    let mut witnesses = BTreeMap::new();
    for (c, w) in &r.witnesses {
        let mut t = 1;
        let lifted = loop {
            let cand = lift_pt(w, half_pow(t));
            if certifies(&cand, *c) {
                break cand;
            }
            t += 1;
            if t > MAX_HALVINGS {
                return Err(GeometryError::NoConvergence { step: k });
            }
        };
        witnesses.insert(*c, lifted);
    }
    for nu in step.lambda.subsets() {
        let target: Vec<Q> = lam
            .iter()
            .map(|&i| if nu.contains(i) { q(1) } else { q(-1) })
            .collect();
        let d = solve_any(
            &lam.iter().map(|&i| on(i).normal.clone()).collect::<Vec<_>>(),
            &target,
            m,
        )
        .ok_or(GeometryError::Infeasible { step: k })?;
        let word = step.sigma.union(nu).with(n_new);
        let mut t = 1;
        let w = loop {
            let base = axpy(&p, &half_pow(t), &d);
            let cand = lift_pt(&base, &height + &a * half_pow(t));
            if certifies(&cand, word) {
                break cand;
            }
            t += 1;
            if t > MAX_HALVINGS {
                return Err(GeometryError::NoConvergence { step: k });
            }
        };
        witnesses.insert(word, w);
    }

    let mut trace = r.trace;
    trace.push(StepTrace {
        p: lift_pt(&p, Q::zero()),
        p_prime: lift_pt(&p_prime, Q::zero()),
        apex,
        a,
        height,
    });
    Ok(HyperplaneRealization {
        dim: n_new,
        halfspaces,
        bound,
        witnesses,
        trace,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FeasibilityMethod {
    Simplex,
    FourierMotzkin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    /// The bound is not a simplex of the ambient dimension.
    BadBound,
    /// An expected codeword has no open cell.
    Missing(Codeword),
    /// A sign vector outside the code is realized somewhere in the bound.
    Extra(Codeword),
    /// A stored witness does not certify its codeword.
    BadWitness(Codeword),
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::BadBound => f.write_str("the bound is not a full-dimensional simplex"),
            Discrepancy::Missing(c) => write!(f, "codeword {c} is not realized"),
            Discrepancy::Extra(c) => write!(f, "sign vector {c} is realized but not in the code"),
            Discrepancy::BadWitness(c) => write!(f, "the witness for {c} is misplaced"),
        }
    }
}

impl HyperplaneRealization {
    pub fn n(&self) -> usize {
        self.halfspaces.len()
    }

    /// Codeword of `x`; `None` when `x` is outside the open bound.
    pub fn classify(&self, x: &[Q]) -> Option<Codeword> {
        let bary = Barycentric::of(&self.bound)?;
        bary.strictly_inside(x).then(|| {
            Codeword::from_neurons(
                self.halfspaces
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| h.slack(x).is_positive())
                    .map(|(i, _)| i + 1),
            )
        })
    }

    /// Whether the sign pattern `c` occurs in the interior of the bound. With
    /// `open`, every half-space inequality is strict; otherwise only the
    /// on-constraints are, so cells of lower dimension are found too.
    pub fn realizes(&self, c: Codeword, open: bool, method: FeasibilityMethod) -> bool {
        let ineqs: Vec<HomIneq> = self
            .halfspaces
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let g = vertex_slacks(h, &self.bound);
                if c.contains(i + 1) {
                    HomIneq {
                        coeffs: g,
                        strict: true,
                    }
                } else {
                    HomIneq {
                        coeffs: g.iter().map(|x| -x).collect(),
                        strict: open,
                    }
                }
            })
            .collect();
        match method {
            FeasibilityMethod::Simplex => lp_strictly_feasible(&ineqs, self.bound.len()).is_some(),
            FeasibilityMethod::FourierMotzkin => fm_strictly_feasible(&ineqs, self.bound.len()),
        }
    }
}

/// Exact check that the arrangement's code is `expected`: every expected
/// codeword has an open cell, no other sign vector occurs anywhere in the
/// open bound, and every witness certifies its codeword.
pub fn verify_hyperplane_realization(
    r: &HyperplaneRealization,
    expected: &NeuralCode,
    method: FeasibilityMethod,
) -> Result<(), Discrepancy> {
    if r.bound.len() != r.dim + 1
        || r.bound.iter().any(|v| v.len() != r.dim)
        || Barycentric::of(&r.bound).is_none()
    {
        return Err(Discrepancy::BadBound);
    }
    for (c, w) in &r.witnesses {
        if r.classify(w) != Some(*c) || r.halfspaces.iter().any(|h| h.slack(w).is_zero()) {
            return Err(Discrepancy::BadWitness(*c));
        }
    }
    for c in Codeword::full(r.n()).subsets() {
        if expected.contains(c) {
            if !r.realizes(c, true, method) {
                return Err(Discrepancy::Missing(c));
            }
        } else if r.realizes(c, false, method) {
            return Err(Discrepancy::Extra(c));
        }
    }
    Ok(())
}

/// Smallest slack over all witnesses and all constraints (half-spaces and
/// facets of the bound), each normalized by the L1 norm of its functional.
/// Zero if there are no witnesses or one sits on a boundary.
pub fn nondegeneracy_margin(r: &HyperplaneRealization) -> Q {
    let Some(bary) = Barycentric::of(&r.bound) else {
        return Q::zero();
    };
    let mut best: Option<Q> = None;
    for w in r.witnesses.values() {
        let hs = r.halfspaces.iter().map(|h| h.slack(w).abs() / l1(&h.normal));
        for s in hs.chain(bary.normalized_slacks(w)) {
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.map(|b| if b.is_negative() { Q::zero() } else { b })
        .unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piercing::recover_piercing_sequence;
    use crate::piercing::Detection;

    fn seq_of(ws: &[&str], n: usize) -> (NeuralCode, PiercingSequence) {
        let code = NeuralCode::from_digit_strings(n, ws).unwrap();
        match recover_piercing_sequence(&code, n, false) {
            Detection::Pierced { sequence, .. } => (code, sequence),
            Detection::NotPierced => panic!("{code} should be pierced"),
        }
    }

    #[test]
    fn base_segment() {
        let seq = PiercingSequence::default();
        let r = build_hyperplane_realization(&seq).unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(r.bound.len(), 2);
        assert_eq!(
            verify_hyperplane_realization(&r, &NeuralCode::base(), FeasibilityMethod::Simplex),
            Ok(())
        );
        assert!(nondegeneracy_margin(&r).is_positive());
    }

    #[test]
    fn two_neuron_codes() {
        for ws in [&["", "1", "12", "2"][..], &["", "1", "12"][..]] {
            let (code, seq) = seq_of(ws, 2);
            let r = build_hyperplane_realization(&seq).unwrap();
            assert_eq!(r.dim, 2);
            assert_eq!(r.bound.len(), 3);
            for m in [FeasibilityMethod::Simplex, FeasibilityMethod::FourierMotzkin] {
                assert_eq!(verify_hyperplane_realization(&r, &code, m), Ok(()));
            }
            // the new cut is horizontal and the apex sits at height 1
            assert_eq!(r.trace[0].apex[1], q(1));
            assert_eq!(r.halfspaces[1].normal, vec![q(0), q(1)]);
        }
        // {∅,1,12}: the apex lies above the atom of 1
        let (_, seq) = seq_of(&["", "1", "12"], 2);
        let r = build_hyperplane_realization(&seq).unwrap();
        assert!(r.halfspaces[0].slack(&r.trace[0].apex[..1]).is_positive());
    }

    #[test]
    fn empty_arrangement() {
        let r = HyperplaneRealization {
            dim: 1,
            halfspaces: vec![],
            bound: vec![vec![q(0)], vec![q(1)]],
            witnesses: BTreeMap::new(),
            trace: vec![],
        };
        let code = NeuralCode::new(0, [Codeword::EMPTY]).unwrap();
        assert_eq!(
            verify_hyperplane_realization(&r, &code, FeasibilityMethod::Simplex),
            Ok(())
        );
    }

    #[test]
    fn flipped_halfspace_is_caught() {
        let (code, seq) = seq_of(&["", "1", "12", "2", "123", "13"], 3);
        let mut r = build_hyperplane_realization(&seq).unwrap();
        assert_eq!(
            verify_hyperplane_realization(&r, &code, FeasibilityMethod::Simplex),
            Ok(())
        );
        r.halfspaces[2] = r.halfspaces[2].flipped();
        assert!(verify_hyperplane_realization(&r, &code, FeasibilityMethod::Simplex).is_err());
    }
}
