//! Realizations by open balls in dimension `k + 1`, in floating point.
//!
//! Each step places the new ball around a point `p` on the intersection of
//! the spheres `∂U_i`, `i ∈ λ`, inside the region where `σ` is on and `τ`
//! off. The ball is small enough to miss every other sphere and every
//! existing witness, so no old atom disappears.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hyperplane::GeometryError;
use crate::code::{Codeword, NeuralCode};
use crate::piercing::{PiercingSequence, PiercingStep};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    /// `|x - c| - r`: negative inside.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        libm::sqrt(dist2(x, &self.center)) - self.radius
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BallRealization {
    pub dim: usize,
    /// `balls[i]` is the receptive field of neuron `i + 1`.
    pub balls: Vec<Ball>,
    pub witnesses: BTreeMap<Codeword, Vec<f64>>,
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallOptions {
    pub seed: u64,
    /// Candidate points tried per step (doubled on each retry).
    pub candidates: usize,
    pub retries: u32,
    pub tolerance: f64,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            seed: 0,
            candidates: 512,
            retries: 4,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn axpy(x: &[f64], s: f64, d: &[f64]) -> Vec<f64> {
    x.iter().zip(d).map(|(a, b)| a + s * b).collect()
}

/// Gaussian elimination with partial pivoting; `None` if numerically singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| libm::fabs(a[i][col]).total_cmp(&libm::fabs(a[j][col])))?;
        if libm::fabs(a[p][col]) < 1e-300 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        let pivot = a[col].clone();
        for r in col + 1..n {
            let f = a[r][col] / pivot[col];
            for (x, p) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// `Nᵀ (N Nᵀ)⁻¹ s`: the least-norm `d` with `N d = s`.
fn least_norm(rows: &[Vec<f64>], s: &[f64]) -> Option<Vec<f64>> {
    let gram: Vec<Vec<f64>> = rows
        .iter()
        .map(|a| rows.iter().map(|b| dot(a, b)).collect())
        .collect();
    let y = solve(gram, s.to_vec())?;
    let dim = rows.first().map_or(0, Vec::len);
    let mut d = vec![0.0; dim];
    for (row, yi) in rows.iter().zip(&y) {
        d = axpy(&d, *yi, row);
    }
    Some(d)
}

fn gram_det(rows: &[Vec<f64>]) -> f64 {
    let mut g: Vec<Vec<f64>> = rows
        .iter()
        .map(|a| rows.iter().map(|b| dot(a, b)).collect())
        .collect();
    let n = g.len();
    let mut det = 1.0;
    for col in 0..n {
        let p = (col..n)
            .max_by(|&i, &j| libm::fabs(g[i][col]).total_cmp(&libm::fabs(g[j][col])))
            .unwrap_or(col);
        if g[p][col] == 0.0 {
            return 0.0;
        }
        if p != col {
            g.swap(col, p);
            det = -det;
        }
        det *= g[col][col];
        let pivot = g[col].clone();
        for row in &mut g[col + 1..] {
            let f = row[col] / pivot[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Intersection of the spheres `∂B_i` as `(center, radius, basis)`: the
/// sphere of radius `radius` about `center` in the affine span of `basis`.
///
/// Subtracting the first sphere's equation from the others gives the radical
/// hyperplanes `2(c_1 - c_i)·x = |c_1|² - |c_i|² - r_1² + r_i²`; the
/// intersection sphere is centred at the projection of `c_1` onto them.
pub fn sphere_intersection(balls: &[&Ball]) -> Option<(Vec<f64>, f64, Vec<Vec<f64>>)> {
    let first = balls.first()?;
    let dim = first.center.len();
    let c1 = &first.center;
    let rows: Vec<Vec<f64>> = balls[1..]
        .iter()
        .map(|b| c1.iter().zip(&b.center).map(|(x, y)| 2.0 * (x - y)).collect())
        .collect();
    let rhs: Vec<f64> = balls[1..]
        .iter()
        .map(|b| dot(c1, c1) - dot(&b.center, &b.center) - first.radius * first.radius + b.radius * b.radius)
        .collect();
    let center = if rows.is_empty() {
        c1.clone()
    } else {
        let resid: Vec<f64> = rows.iter().zip(&rhs).map(|(a, r)| r - dot(a, c1)).collect();
        axpy(c1, 1.0, &least_norm(&rows, &resid)?)
    };
    let rho2 = first.radius * first.radius - dist2(&center, c1);
    if rho2 <= 0.0 {
        return None;
    }
    // orthonormal basis of the directions orthogonal to the radical normals
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    let mut basis = Vec::new();
    let candidates = rows
        .iter()
        .cloned()
        .chain((0..dim).map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect()));
    for (k, v) in candidates.enumerate() {
        let mut v: Vec<f64> = v;
        for o in &ortho {
            let f = dot(&v, o);
            v = axpy(&v, -f, o);
        }
        let nv = libm::sqrt(dot(&v, &v));
        if nv > 1e-9 {
            let v: Vec<f64> = v.iter().map(|x| x / nv).collect();
            if k >= rows.len() {
                basis.push(v.clone());
            }
            ortho.push(v);
        }
    }
    Some((center, libm::sqrt(rho2), basis))
}

fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = libm::sqrt(dot(&v, &v));
        if n > 1e-3 && n <= 1.0 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

pub fn build_ball_realization(seq: &PiercingSequence) -> Result<BallRealization, GeometryError> {
    build_ball_realization_with(seq, BallOptions::default())
}

pub fn build_ball_realization_with(
    seq: &PiercingSequence,
    opts: BallOptions,
) -> Result<BallRealization, GeometryError> {
    seq.replay()?;
    if !seq.base.contains(Codeword::EMPTY) {
        return Err(GeometryError::MissingEmptyWord);
    }
    let dim = seq.max_degree() + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let origin = vec![0.0; dim];
    let mut outside = origin.clone();
    outside[0] = 2.0;
    let mut r = BallRealization {
        dim,
        balls: vec![Ball {
            center: origin.clone(),
            radius: 1.0,
        }],
        witnesses: BTreeMap::from([(Codeword::EMPTY, outside), (Codeword::singleton(1), origin)]),
        tolerance: opts.tolerance,
    };
    for (k, step) in seq.steps.iter().enumerate() {
        add_ball(&mut r, step, &mut rng, opts, k)?;
    }
    Ok(r)
}

struct Candidate {
    p: Vec<f64>,
    /// Distance to the nearest sphere off λ and to the nearest witness.
    clearance: f64,
    score: f64,
}

fn evaluate(r: &BallRealization, step: &PiercingStep, p: Vec<f64>) -> Option<Candidate> {
    let mut clearance = f64::INFINITY;
    for (i, b) in r.balls.iter().enumerate() {
        let n = i + 1;
        if step.lambda.contains(n) {
            continue;
        }
        let s = b.signed_distance(&p);
        let correct = if step.sigma.contains(n) { s < 0.0 } else { s > 0.0 };
        if !correct {
            return None;
        }
        clearance = clearance.min(libm::fabs(s));
    }
    for w in r.witnesses.values() {
        clearance = clearance.min(libm::sqrt(dist2(w, &p)));
    }
    // how transversally the λ spheres cross at p
    let normals: Vec<Vec<f64>> = step
        .lambda
        .neurons()
        .map(|i| {
            r.balls[i - 1]
                .center
                .iter()
                .zip(&p)
                .map(|(c, x)| (x - c) / r.balls[i - 1].radius)
                .collect()
        })
        .collect();
    let spread = libm::sqrt(gram_det(&normals).max(0.0));
    Some(Candidate {
        p,
        clearance,
        score: clearance * spread,
    })
}

fn add_ball(
    r: &mut BallRealization,
    step: &PiercingStep,
    rng: &mut ChaCha8Rng,
    opts: BallOptions,
    k: usize,
) -> Result<(), GeometryError> {
    let lambda: Vec<&Ball> = step.lambda.neurons().map(|i| &r.balls[i - 1]).collect();
    let meeting = if lambda.is_empty() {
        None
    } else {
        Some(sphere_intersection(&lambda).ok_or(GeometryError::NoConvergence { step: k })?)
    };
    let anchor = r
        .witnesses
        .get(&step.sigma)
        .cloned()
        .ok_or(GeometryError::Infeasible { step: k })?;
    // distance from the σ witness to the nearest sphere off λ
    let room = r
        .balls
        .iter()
        .enumerate()
        .filter(|(i, _)| !step.lambda.contains(i + 1))
        .map(|(_, b)| libm::fabs(b.signed_distance(&anchor)))
        .fold(1.0, f64::min);

    let mut best: Option<Candidate> = None;
    let mut tries = opts.candidates;
    for _ in 0..=opts.retries {
        for t in 0..tries {
            let u = unit_vector(rng, r.dim);
            let near = axpy(&anchor, room * rng.gen_range(0.0..1.0), &u);
            let p = match &meeting {
                // alternate uniform points on the sphere with projections of
                // points near the witness, which finds small target regions
                Some((center, radius, basis)) => {
                    let coeffs = if t % 2 == 0 {
                        unit_vector(rng, basis.len())
                    } else {
                        let off: Vec<f64> = near.iter().zip(center).map(|(x, c)| x - c).collect();
                        let c: Vec<f64> = basis.iter().map(|b| dot(b, &off)).collect();
                        let norm = libm::sqrt(dot(&c, &c));
                        if norm < 1e-12 {
                            continue;
                        }
                        c.iter().map(|x| x / norm).collect()
                    };
                    basis
                        .iter()
                        .zip(&coeffs)
                        .fold(center.clone(), |acc, (b, c)| axpy(&acc, radius * c, b))
                }
                None => near,
            };
            if let Some(c) = evaluate(r, step, p) {
                if c.score > best.as_ref().map_or(0.0, |b| b.score) {
                    best = Some(c);
                }
            }
        }
        if best.is_some() {
            break;
        }
        tries *= 2;
    }
    let best = best.ok_or(GeometryError::NoConvergence { step: k })?;
    let p = best.p;
    for b in &lambda {
        if libm::fabs(b.signed_distance(&p)) > r.tolerance {
            return Err(GeometryError::NoConvergence { step: k });
        }
    }

    let min_radius = r.balls.iter().map(|b| b.radius).fold(f64::INFINITY, f64::min);
    let radius = 0.5 * best.clearance.min(min_radius);
    let n_new = r.balls.len() + 1;
    let normals: Vec<Vec<f64>> = lambda
        .iter()
        .map(|b| b.center.iter().zip(&p).map(|(c, x)| (x - c) / b.radius).collect())
        .collect();
    r.balls.push(Ball {
        center: p.clone(),
        radius,
    });
    for nu in step.lambda.subsets() {
        let signs: Vec<f64> = step
            .lambda
            .neurons()
            .map(|i| if nu.contains(i) { -1.0 } else { 1.0 })
            .collect();
        let d = if normals.is_empty() {
            vec![0.0; r.dim]
        } else {
            least_norm(&normals, &signs).ok_or(GeometryError::NoConvergence { step: k })?
        };
        let word = step.sigma.union(nu).with(n_new);
        let dn = libm::sqrt(dot(&d, &d)).max(1.0);
        let mut delta = 0.5 * radius / dn;
        let w = loop {
            let cand = axpy(&p, delta, &d);
            if witness_margin(r, &cand, word) > r.tolerance {
                break cand;
            }
            delta *= 0.5;
            if delta < r.tolerance {
                return Err(GeometryError::NoConvergence { step: k });
            }
        };
        r.witnesses.insert(word, w);
    }
    Ok(())
}

/// Smallest distance from `x` to a sphere, negative if `x` is on the wrong
/// side of some sphere for `word`.
fn witness_margin(r: &BallRealization, x: &[f64], word: Codeword) -> f64 {
    r.balls
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let s = b.signed_distance(x);
            if word.contains(i + 1) {
                -s
            } else {
                s
            }
        })
        .fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BallVerdict {
    /// Every expected codeword has a witness classified with margin above
    /// the tolerance, and no witness belongs to an unexpected codeword.
    pub witnesses_ok: bool,
    pub witness_margin: f64,
    pub first_bad_witness: Option<Codeword>,
    /// Quasi-random samples drawn from the bounding box.
    pub samples: usize,
    /// First sampled sign pattern outside the code. Absence is probabilistic
    /// evidence only.
    pub extra: Option<Codeword>,
    /// Distinct codewords seen among the samples.
    pub sampled_words: usize,
}

impl BallVerdict {
    pub fn passed(&self) -> bool {
        self.witnesses_ok && self.extra.is_none()
    }
}

impl BallRealization {
    pub fn classify(&self, x: &[f64]) -> Codeword {
        Codeword::from_neurons(
            self.balls
                .iter()
                .enumerate()
                .filter(|(_, b)| b.signed_distance(x) < 0.0)
                .map(|(i, _)| i + 1),
        )
    }

    /// Axis-aligned box around all balls, enlarged by `pad` of its size.
    pub fn bounding_box(&self, pad: f64) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for b in &self.balls {
            for d in 0..self.dim {
                lo[d] = lo[d].min(b.center[d] - b.radius);
                hi[d] = hi[d].max(b.center[d] + b.radius);
            }
        }
        for d in 0..self.dim {
            let w = (hi[d] - lo[d]) * pad;
            lo[d] -= w;
            hi[d] += w;
        }
        (lo, hi)
    }
}

const PRIMES: [u8; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// (a) checks every expected codeword's witness; (b) classifies `samples`
/// Halton points from the padded bounding box, starting at index `skip`.
pub fn verify_ball_realization(
    r: &BallRealization,
    expected: &NeuralCode,
    samples: usize,
    skip: usize,
) -> BallVerdict {
    let mut margin = f64::INFINITY;
    let mut first_bad = None;
    for c in expected.iter() {
        let m = r
            .witnesses
            .get(&c)
            .map_or(f64::NEG_INFINITY, |w| witness_margin(r, w, c));
        margin = margin.min(m);
        if m <= r.tolerance && first_bad.is_none() {
            first_bad = Some(c);
        }
    }
    if first_bad.is_none() {
        first_bad = r.witnesses.keys().find(|c| !expected.contains(**c)).copied();
    }

    let (lo, hi) = r.bounding_box(0.1);
    let mut seqs: Vec<halton::Sequence> = PRIMES[..r.dim.min(PRIMES.len())]
        .iter()
        .map(|&b| {
            let mut s = halton::Sequence::new(b);
            if skip > 0 {
                s.nth(skip - 1);
            }
            s
        })
        .collect();
    let mut seen = alloc::collections::BTreeSet::new();
    let mut extra = None;
    let mut x = vec![0.0; r.dim];
    for _ in 0..samples {
        for (d, s) in seqs.iter_mut().enumerate() {
            let u = s.next().unwrap_or(0.5);
            x[d] = lo[d] + u * (hi[d] - lo[d]);
        }
        let c = r.classify(&x);
        if !expected.contains(c) && extra.is_none() {
            extra = Some(c);
        }
        seen.insert(c);
    }
    BallVerdict {
        witnesses_ok: first_bad.is_none(),
        witness_margin: margin,
        first_bad_witness: first_bad,
        samples,
        extra,
        sampled_words: seen.len(),
    }
}
