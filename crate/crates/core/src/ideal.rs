//! Pseudo-monomials and the canonical form of a neural ideal.
//!
//! A pseudo-monomial `∏_{i∈σ} x_i ∏_{j∈τ} (1 - x_j)` over `F₂` is stored as
//! the disjoint pair `(σ, τ)`. It lies in the neural ideal `J_C` exactly when
//! it vanishes on the indicator vector of every codeword, and the canonical
//! form is the set of divisibility-minimal such pseudo-monomials.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::code::{Codeword, NeuralCode};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PseudoMonomial {
    pub on: Codeword,
    pub off: Codeword,
}

/// Receptive-field relationship types of canonical-form elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationType {
    /// `∏ x_i`: the fields in `σ` have empty intersection.
    Type1,
    /// Mixed: `⋂_σ U_i ⊆ ⋃_τ U_j`.
    Type2,
    /// `∏ (1 - x_j)`: the fields in `τ` cover the stimulus space.
    Type3,
}

impl PseudoMonomial {
    pub fn new(on: Codeword, off: Codeword) -> Option<Self> {
        on.is_disjoint(off).then_some(PseudoMonomial { on, off })
    }

    pub fn degree(&self) -> usize {
        self.on.len() + self.off.len()
    }

    pub fn kind(&self) -> RelationType {
        if self.off.is_empty() {
            RelationType::Type1
        } else if self.on.is_empty() {
            RelationType::Type3
        } else {
            RelationType::Type2
        }
    }

    /// Value at the indicator vector of `c`.
    pub fn evaluate(&self, c: Codeword) -> bool {
        self.on.is_subset(c) && self.off.is_disjoint(c)
    }

    /// `self` divides `other`.
    pub fn divides(&self, other: &PseudoMonomial) -> bool {
        self.on.is_subset(other.on) && self.off.is_subset(other.off)
    }

    /// Degree first, then on-set and off-set in codeword order.
    pub fn cmp_canonical(&self, other: &Self) -> core::cmp::Ordering {
        (self.degree(), self.on, self.off).cmp(&(other.degree(), other.on, other.off))
    }
}

impl fmt::Display for PseudoMonomial {
    /// `x1*x2*(1-x3)`; the constant is printed as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.on.neurons().map(|i| alloc::format!("x{i}")).collect();
        parts.extend(self.off.neurons().map(|j| alloc::format!("(1-x{j})")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

pub fn vanishes_on(pm: &PseudoMonomial, code: &NeuralCode) -> bool {
    !code.iter().any(|c| pm.evaluate(c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealError {
    EmptyCode,
    /// The direct intersection check and the canonical-form criterion
    /// disagree; this indicates a bug.
    Inconsistent {
        direct: bool,
        via_cf: bool,
    },
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::EmptyCode => f.write_str("the neural ideal of the empty code is the unit ideal"),
            IdealError::Inconsistent { direct, via_cf } => write!(
                f,
                "intersection-completeness checks disagree (direct: {direct}, canonical form: {via_cf})"
            ),
        }
    }
}

impl core::error::Error for IdealError {}

/// Canonical form `CF(J_C)`, ordered by degree, then on-set, then off-set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CanonicalForm {
    pub elements: Vec<PseudoMonomial>,
}

impl CanonicalForm {
    pub fn max_degree(&self) -> usize {
        self.elements
            .iter()
            .map(PseudoMonomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PseudoMonomial> {
        self.elements.iter()
    }
}

/// Every disjoint pair `(σ, τ)` over neurons `1..=n`, constant excluded.
pub fn all_pseudo_monomials(n: usize) -> impl Iterator<Item = PseudoMonomial> {
    let full = Codeword::full(n);
    full.subsets().flat_map(move |on| {
        full.difference(on)
            .subsets()
            .map(move |off| PseudoMonomial { on, off })
            .filter(|pm| pm.degree() > 0)
    })
}

/// Computes `CF(J_C)` by enumerating all `3^n` pseudo-monomials.
///
/// The vanishing pseudo-monomials are closed under multiplication, so a
/// vanishing `pm` is minimal iff dropping any single factor leaves one that
/// does not vanish (or the constant).
pub fn canonical_form(code: &NeuralCode) -> Result<CanonicalForm, IdealError> {
    if code.is_empty() {
        return Err(IdealError::EmptyCode);
    }
    let mut elements: Vec<PseudoMonomial> = all_pseudo_monomials(code.n())
        .filter(|pm| vanishes_on(pm, code))
        .filter(|pm| {
            let drop_on = pm.on.neurons().map(|i| PseudoMonomial {
                on: pm.on.without(i),
                off: pm.off,
            });
            let drop_off = pm.off.neurons().map(|j| PseudoMonomial {
                on: pm.on,
                off: pm.off.without(j),
            });
            drop_on
                .chain(drop_off)
                .all(|q| q.degree() == 0 || !vanishes_on(&q, code))
        })
        .collect();
    elements.sort_by(PseudoMonomial::cmp_canonical);
    Ok(CanonicalForm { elements })
}

pub fn cf_max_degree(code: &NeuralCode) -> Result<usize, IdealError> {
    Ok(canonical_form(code)?.max_degree())
}

/// Closure of the codewords under pairwise intersection.
pub fn is_intersection_closed(code: &NeuralCode) -> bool {
    let words: Vec<Codeword> = code.iter().collect();
    words
        .iter()
        .enumerate()
        .all(|(a, &c)| words[a + 1..].iter().all(|&d| code.contains(c.intersection(d))))
}

/// Intersection-completeness, computed directly and through the canonical
/// form; the two must agree.
///
/// The canonical-form criterion: every element with a nonempty off-set has
/// exactly one off-factor. For codes containing `∅` only Type 2 elements
/// have off-factors, since Type 3 elements cannot vanish at `∅`.
pub fn is_intersection_complete(code: &NeuralCode) -> Result<bool, IdealError> {
    let direct = is_intersection_closed(code);
    let cf = canonical_form(code)?;
    let via_cf = cf.iter().all(|pm| pm.off.len() <= 1);
    if direct == via_cf {
        Ok(direct)
    } else {
        Err(IdealError::Inconsistent { direct, via_cf })
    }
}
