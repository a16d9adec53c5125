//! The piercing operation and inductively pierced codes.
//!
//! A piercing step `(λ, σ, τ)` partitions the neurons of a code `C` on `n`
//! neurons. It is admissible when `σ ∪ ν ∈ C` for every `ν ⊆ λ`, and then adds
//! neuron `n + 1` together with the codewords `σ ∪ ν ∪ {n + 1}`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::code::{restrict, CodeError, Codeword, NeuralCode};

/// One inductive step: the pierced set `lambda` and the background motif
/// `sigma` (on) / `tau` (off).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiercingStep {
    pub lambda: Codeword,
    pub sigma: Codeword,
    pub tau: Codeword,
}

impl PiercingStep {
    pub fn new(lambda: Codeword, sigma: Codeword, tau: Codeword) -> Self {
        PiercingStep { lambda, sigma, tau }
    }

    /// Piercing degree `|λ|`.
    pub fn degree(&self) -> usize {
        self.lambda.len()
    }

    /// Checks the step partitions `1..=n`.
    pub fn check_partition(&self, n: usize) -> Result<(), PiercingError> {
        let (l, s, t) = (self.lambda, self.sigma, self.tau);
        let disjoint = l.is_disjoint(s) && l.is_disjoint(t) && s.is_disjoint(t);
        if disjoint && l.union(s).union(t) == Codeword::full(n) {
            Ok(())
        } else {
            Err(PiercingError::MalformedPartition { step: *self, n })
        }
    }
}

impl fmt::Display for PiercingStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(λ={}, σ={}, τ={})", self.lambda, self.sigma, self.tau)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiercingError {
    MalformedPartition { step: PiercingStep, n: usize },
    NotPierceable { step: PiercingStep, missing: Codeword },
    Code(CodeError),
    ResourceLimit { codes: usize },
    BadBase,
}

impl fmt::Display for PiercingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiercingError::MalformedPartition { step, n } => {
                write!(f, "step {step} does not partition the {n} neurons")
            }
            PiercingError::NotPierceable { step, missing } => {
                write!(f, "step {step} is not admissible: codeword {missing} is missing")
            }
            PiercingError::Code(e) => write!(f, "{e}"),
            PiercingError::ResourceLimit { codes } => {
                write!(f, "enumeration stopped after {codes} codes")
            }
            PiercingError::BadBase => f.write_str("base code must be a 1-neuron code containing {1}"),
        }
    }
}

impl core::error::Error for PiercingError {}

impl From<CodeError> for PiercingError {
    fn from(e: CodeError) -> Self {
        PiercingError::Code(e)
    }
}

/// Whether `code` admits `step`.
pub fn is_pierceable(code: &NeuralCode, step: &PiercingStep) -> Result<bool, PiercingError> {
    step.check_partition(code.n())?;
    Ok(first_missing(code, step).is_none())
}

fn first_missing(code: &NeuralCode, step: &PiercingStep) -> Option<Codeword> {
    step.lambda
        .subsets()
        .map(|nu| step.sigma.union(nu))
        .find(|c| !code.contains(*c))
}

/// Applies `step`, producing a code on `n + 1` neurons.
pub fn pierce(code: &NeuralCode, step: &PiercingStep) -> Result<NeuralCode, PiercingError> {
    step.check_partition(code.n())?;
    if let Some(missing) = first_missing(code, step) {
        return Err(PiercingError::NotPierceable { step: *step, missing });
    }
    let new = code.n() + 1;
    if new > crate::code::MAX_NEURON {
        return Err(CodeError::TooManyNeurons(new).into());
    }
    let mut out = code.clone();
    out.set_n(new);
    for nu in step.lambda.subsets() {
        out.insert_raw(step.sigma.union(nu).with(new));
    }
    Ok(out)
}

/// An inductive construction: a one-neuron base code and one step per
/// further neuron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiercingSequence {
    pub base: NeuralCode,
    pub steps: Vec<PiercingStep>,
}

impl Default for PiercingSequence {
    fn default() -> Self {
        PiercingSequence {
            base: NeuralCode::base(),
            steps: Vec::new(),
        }
    }
}

impl PiercingSequence {
    pub fn new(steps: Vec<PiercingStep>) -> Self {
        PiercingSequence {
            base: NeuralCode::base(),
            steps,
        }
    }

    /// Largest piercing degree among the steps, 0 for the base code alone.
    pub fn max_degree(&self) -> usize {
        self.steps.iter().map(PiercingStep::degree).max().unwrap_or(0)
    }

    /// Number of neurons of the constructed code.
    pub fn n(&self) -> usize {
        1 + self.steps.len()
    }

    /// The codes `C_1, ..., C_n` along the construction.
    pub fn replay_chain(&self) -> Result<Vec<NeuralCode>, PiercingError> {
        check_base(&self.base)?;
        let mut chain = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.base.clone();
        cur.labeled_by_construction = true;
        chain.push(cur.clone());
        for step in &self.steps {
            cur = pierce(&cur, step)?;
            cur.labeled_by_construction = true;
            chain.push(cur.clone());
        }
        Ok(chain)
    }

    /// The constructed code.
    pub fn replay(&self) -> Result<NeuralCode, PiercingError> {
        Ok(self.replay_chain()?.pop().expect("chain holds the base code"))
    }
}

fn check_base(base: &NeuralCode) -> Result<(), PiercingError> {
    if base.n() == 1 && base.contains(Codeword::singleton(1)) {
        Ok(())
    } else {
        Err(PiercingError::BadBase)
    }
}

/// Result of [`recover_piercing_sequence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detection {
    Pierced {
        sequence: PiercingSequence,
        /// `relabeling[i - 1]` is the original neuron that becomes neuron `i`.
        /// `None` when the code is pierced in its own labeling.
        relabeling: Option<Vec<usize>>,
    },
    NotPierced,
}

impl Detection {
    pub fn is_pierced(&self) -> bool {
        matches!(self, Detection::Pierced { .. })
    }
}

// The unique step that could have added neuron `j` last, with τ taken
// relative to `active ∖ {j}`.
fn peel(code: &NeuralCode, active: Codeword, j: usize, max_k: usize) -> Option<PiercingStep> {
    let shadow: BTreeSet<Codeword> = code
        .iter()
        .filter(|c| c.contains(j))
        .map(|c| c.without(j))
        .collect();
    let first = *shadow.iter().next()?;
    let sigma = shadow.iter().fold(first, |acc, c| acc.intersection(*c));
    let union = shadow.iter().fold(Codeword::EMPTY, |acc, c| acc.union(*c));
    let lambda = union.difference(sigma);
    if lambda.len() > max_k || shadow.len() != 1usize << lambda.len() {
        return None;
    }
    // |S| = 2^|λ| with σ ⊆ s ⊆ σ ∪ λ for every s forces S = {σ ∪ ν}
    if shadow.iter().any(|s| !code.contains(*s)) {
        return None;
    }
    let rest = active.without(j);
    Some(PiercingStep {
        lambda,
        sigma,
        tau: rest.difference(union),
    })
}

/// Recovers a piercing sequence for `code` with degrees at most `max_k`.
///
/// With `relabel = false` neuron `n` must be the last one added at every
/// stage. With `relabel = true` any neuron may be last; the returned
/// sequence is for the relabeled code.
pub fn recover_piercing_sequence(code: &NeuralCode, max_k: usize, relabel: bool) -> Detection {
    if code.is_empty() || code.n() == 0 {
        return Detection::NotPierced;
    }
    if !relabel {
        let mut steps = Vec::new();
        let mut cur = code.clone();
        while cur.n() > 1 {
            let n = cur.n();
            let Some(step) = peel(&cur, cur.neurons(), n, max_k) else {
                return Detection::NotPierced;
            };
            steps.push(step);
            cur = match restrict(&cur, n) {
                Ok(c) => c,
                Err(_) => return Detection::NotPierced,
            };
        }
        if check_base(&cur).is_err() {
            return Detection::NotPierced;
        }
        steps.reverse();
        return Detection::Pierced {
            sequence: PiercingSequence { base: cur, steps },
            relabeling: None,
        };
    }

    let mut failed = BTreeSet::new();
    let mut order = Vec::new();
    let mut raw_steps = Vec::new();
    if !search(
        code,
        code.neurons(),
        max_k,
        &mut failed,
        &mut order,
        &mut raw_steps,
    ) {
        return Detection::NotPierced;
    }
    // `order` lists neurons from last-added to first.
    order.reverse();
    raw_steps.reverse();
    let mut new_label = BTreeMap::new();
    for (k, &orig) in order.iter().enumerate() {
        new_label.insert(orig, k + 1);
    }
    let relabel_set = |c: Codeword| Codeword::from_neurons(c.neurons().map(|i| new_label[&i]));
    let base_orig = order[0];
    let base_words = code
        .iter()
        .filter(|c| c.is_subset(Codeword::singleton(base_orig)))
        .map(relabel_set);
    let base = NeuralCode::new(1, base_words).expect("relabeled base is on one neuron");
    let steps = raw_steps
        .into_iter()
        .map(|s: PiercingStep| PiercingStep {
            lambda: relabel_set(s.lambda),
            sigma: relabel_set(s.sigma),
            tau: relabel_set(s.tau),
        })
        .collect();
    let identity = order.iter().enumerate().all(|(k, &o)| o == k + 1);
    Detection::Pierced {
        sequence: PiercingSequence { base, steps },
        relabeling: if identity { None } else { Some(order) },
    }
}

// Depth-first search over which active neuron was added last. `failed`
// memoizes active sets known not to be pierced.
fn search(
    code: &NeuralCode,
    active: Codeword,
    max_k: usize,
    failed: &mut BTreeSet<u64>,
    order: &mut Vec<usize>,
    steps: &mut Vec<PiercingStep>,
) -> bool {
    let sub = NeuralCode::new(code.n(), code.iter().filter(|c| c.is_subset(active))).expect("valid");
    if active.len() == 1 {
        let only = active.neurons().next().expect("one neuron");
        if sub.contains(Codeword::singleton(only)) {
            order.push(only);
            return true;
        }
        return false;
    }
    if failed.contains(&active.bits()) {
        return false;
    }
    let candidates: Vec<usize> = active.neurons().collect();
    for &j in candidates.iter().rev() {
        if let Some(step) = peel(&sub, active, j, max_k) {
            order.push(j);
            steps.push(step);
            if search(code, active.without(j), max_k, failed, order, steps) {
                return true;
            }
            order.pop();
            steps.pop();
        }
    }
    failed.insert(active.bits());
    false
}

/// Breadth-first closure of `{∅, 1}` under all admissible piercings of
/// degree at most `max_k`, up to `max_n` neurons. Each distinct code is
/// reported once with the first sequence that reached it.
pub struct PiercedCodes {
    queue: VecDeque<(NeuralCode, PiercingSequence)>,
    seen: BTreeSet<(usize, Vec<u64>)>,
    max_n: usize,
    max_k: usize,
    cap: usize,
    emitted: usize,
    failed: bool,
}

impl Iterator for PiercedCodes {
    type Item = Result<(NeuralCode, PiercingSequence), PiercingError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let (code, seq) = self.queue.pop_front()?;
        if self.emitted >= self.cap {
            self.failed = true;
            return Some(Err(PiercingError::ResourceLimit { codes: self.emitted }));
        }
        self.emitted += 1;
        if code.n() < self.max_n {
            for step in all_steps(code.n(), self.max_k) {
                if first_missing(&code, &step).is_some() {
                    continue;
                }
                let mut child = pierce(&code, &step).expect("admissible step");
                child.labeled_by_construction = true;
                let key = (child.n(), child.iter().map(Codeword::bits).collect());
                if self.seen.insert(key) {
                    let mut s = seq.clone();
                    s.steps.push(step);
                    self.queue.push_back((child, s));
                }
            }
        }
        Some(Ok((code, seq)))
    }
}

/// Every partition `(λ, σ, τ)` of `1..=n` with `|λ| ≤ max_k`, in a fixed order.
pub fn all_steps(n: usize, max_k: usize) -> impl Iterator<Item = PiercingStep> {
    let full = Codeword::full(n);
    full.subsets()
        .filter(move |l| l.len() <= max_k)
        .flat_map(move |lambda| {
            let rest = full.difference(lambda);
            rest.subsets().map(move |sigma| PiercingStep {
                lambda,
                sigma,
                tau: rest.difference(sigma),
            })
        })
}

/// Default cap on the number of codes produced by [`enumerate_pierced_codes`].
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

pub fn enumerate_pierced_codes(max_n: usize, max_k: usize) -> PiercedCodes {
    enumerate_pierced_codes_capped(max_n, max_k, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_pierced_codes_capped(max_n: usize, max_k: usize, cap: usize) -> PiercedCodes {
    let base = NeuralCode::base();
    let mut seen = BTreeSet::new();
    seen.insert((1, base.iter().map(Codeword::bits).collect()));
    let mut queue = VecDeque::new();
    if max_n >= 1 {
        queue.push_back((base, PiercingSequence::default()));
    }
    PiercedCodes {
        queue,
        seen,
        max_n,
        max_k,
        cap,
        emitted: 0,
        failed: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> Codeword {
        Codeword::parse_digits(s).unwrap()
    }

    fn code(n: usize, ws: &[&str]) -> NeuralCode {
        NeuralCode::from_digit_strings(n, ws).unwrap()
    }

    fn step(l: &str, s: &str, t: &str) -> PiercingStep {
        PiercingStep::new(w(l), w(s), w(t))
    }

    #[test]
    fn pierceability_examples() {
        assert!(is_pierceable(&code(2, &["", "1", "12", "2"]), &step("12", "", "")).unwrap());
        assert!(!is_pierceable(&code(2, &["", "1", "2"]), &step("12", "", "")).unwrap());
        assert!(!is_pierceable(&code(2, &["", "1", "12"]), &step("12", "", "")).unwrap());
        assert!(is_pierceable(&code(2, &["", "1"]), &step("1", "", "")).is_err());
    }

    #[test]
    fn pierce_examples() {
        let base = code(1, &["", "1"]);
        let c2 = pierce(&base, &step("1", "", "")).unwrap();
        assert_eq!(c2, code(2, &["", "1", "12", "2"]));
        assert_eq!(
            pierce(&c2, &step("2", "1", "")).unwrap(),
            code(3, &["", "1", "12", "2", "123", "13"])
        );
        assert_eq!(
            pierce(&c2, &step("2", "", "1")).unwrap(),
            code(3, &["", "1", "12", "2", "23", "3"])
        );
        assert_eq!(
            pierce(&c2, &step("12", "", "")).unwrap(),
            code(3, &["", "1", "12", "2", "123", "13", "23", "3"])
        );
        assert!(matches!(
            pierce(&code(2, &["", "1", "2"]), &step("12", "", "")),
            Err(PiercingError::NotPierceable { .. })
        ));
    }

    #[test]
    fn recover_fig1a() {
        let c = code(3, &["", "1", "12", "2", "123", "13"]);
        match recover_piercing_sequence(&c, 3, false) {
            Detection::Pierced { sequence, relabeling } => {
                assert_eq!(sequence.steps, vec![step("1", "", ""), step("2", "1", "")]);
                assert!(relabeling.is_none());
                assert_eq!(sequence.replay().unwrap(), c);
            }
            Detection::NotPierced => panic!("expected pierced"),
        }
    }

    #[test]
    fn recover_base_and_failure() {
        match recover_piercing_sequence(&code(1, &["", "1"]), 2, false) {
            Detection::Pierced { sequence, .. } => assert!(sequence.steps.is_empty()),
            _ => panic!(),
        }
        // {∅, 1, 2} is a 0-piercing of {∅, 1}; it just cannot be 2-pierced further
        match recover_piercing_sequence(&code(2, &["", "1", "2"]), 2, false) {
            Detection::Pierced { sequence, .. } => assert_eq!(sequence.steps, vec![step("", "", "1")]),
            _ => panic!(),
        }
        let cubic = code(3, &["", "1", "2", "3", "123"]);
        assert_eq!(recover_piercing_sequence(&cubic, 2, false), Detection::NotPierced);
        assert_eq!(recover_piercing_sequence(&cubic, 3, true), Detection::NotPierced);
        assert_eq!(
            recover_piercing_sequence(&code(2, &["", "12"]), 2, true),
            Detection::NotPierced
        );
        // a 2-piercing is rejected when only 1-piercings are allowed
        let c = code(3, &["", "1", "12", "2", "123", "13", "23", "3"]);
        assert!(!recover_piercing_sequence(&c, 1, false).is_pierced());
        assert!(recover_piercing_sequence(&c, 2, false).is_pierced());
    }

    #[test]
    fn recover_with_relabeling() {
        // {∅, 1, 12} with the neurons swapped: neuron 1 must be added after 2
        let c = code(2, &["", "2", "12"]);
        assert!(!recover_piercing_sequence(&c, 2, false).is_pierced());
        match recover_piercing_sequence(&c, 2, true) {
            Detection::Pierced { sequence, relabeling } => {
                assert_eq!(relabeling, Some(vec![2, 1]));
                assert_eq!(sequence.replay().unwrap(), code(2, &["", "1", "12"]));
            }
            _ => panic!("expected pierced under relabeling"),
        }
    }

    #[test]
    fn enumeration_small_cases() {
        let one: Vec<_> = enumerate_pierced_codes(1, 2).map(Result::unwrap).collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].0, code(1, &["", "1"]));
        assert!(one[0].1.steps.is_empty());

        let two: Vec<NeuralCode> = enumerate_pierced_codes(2, 1).map(|r| r.unwrap().0).collect();
        // base plus the piercings of {∅, 1} by (λ,σ,τ) ∈ {(1,∅,∅), (∅,1,∅), (∅,∅,1)}
        assert_eq!(two.len(), 4);
        assert!(two.contains(&code(2, &["", "1", "12", "2"])));
        assert!(two.contains(&code(2, &["", "1", "12"])));
        assert!(two.contains(&code(2, &["", "1", "2"])));

        let three: Vec<NeuralCode> = enumerate_pierced_codes(3, 2).map(|r| r.unwrap().0).collect();
        assert!(three.contains(&code(3, &["", "1", "12", "2", "123", "13", "23", "3"])));
    }

    #[test]
    fn enumeration_cap_is_reported() {
        let mut it = enumerate_pierced_codes_capped(4, 2, 3);
        let results: Vec<_> = it.by_ref().collect();
        assert_eq!(results.len(), 4);
        assert!(matches!(
            results[3],
            Err(PiercingError::ResourceLimit { codes: 3 })
        ));
    }

    #[test]
    fn all_steps_counts() {
        // partitions of [n] into three labelled blocks: 3^n
        assert_eq!(all_steps(3, 3).count(), 27);
        // |λ| ≤ 1 on 3 neurons: 2^3 + 3 * 2^2
        assert_eq!(all_steps(3, 1).count(), 8 + 12);
    }
}
