//! Toric ideals of neural codes and binomial Gröbner bases.
//!
//! The codeword ring has one variable `y_c` per nonempty codeword (the
//! codeword `{0}` of a homogenized code counts as nonempty). The toric ideal
//! `T_C` is the kernel of `y_c ↦ ∏_{i∈c} x_i`. Every ideal handled here is
//! generated by pure differences of monomials, so a binomial is just a pair of
//! exponent vectors and Buchberger never needs coefficients.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::fmt;

use crate::code::{Codeword, NeuralCode};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn one(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn var(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / d`; `d` must divide `self`.
    pub fn div(&self, d: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&d.0).map(|(a, b)| a - b).collect())
    }

    // self := self / lead * trail
    fn rewrite(&mut self, lead: &Self, trail: &Self) {
        for ((e, l), t) in self.0.iter_mut().zip(&lead.0).zip(&trail.0) {
            *e = *e - l + t;
        }
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `lead - trail` with `lead ≻ trail` under the order it was built with.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Binomial {
    pub lead: ExponentVector,
    pub trail: ExponentVector,
}

impl Binomial {
    /// Orients `a - b` under `order`; `None` when the difference is zero.
    pub fn new(a: ExponentVector, b: ExponentVector, order: &MonomialOrder) -> Option<Self> {
        match order.cmp(&a, &b) {
            Ordering::Greater => Some(Binomial { lead: a, trail: b }),
            Ordering::Less => Some(Binomial { lead: b, trail: a }),
            Ordering::Equal => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.lead.degree().max(self.trail.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lead.degree() == self.trail.degree()
    }

    /// Renders `y_{12}*y_{3}^2 - y_{123}` with variables named by `name`.
    pub fn display<'a, F: Fn(usize) -> String + 'a>(&'a self, name: F) -> impl fmt::Display + 'a {
        BinomialDisplay { b: self, name }
    }
}

struct BinomialDisplay<'a, F> {
    b: &'a Binomial,
    name: F,
}

fn write_monomial<F: Fn(usize) -> String>(
    f: &mut fmt::Formatter<'_>,
    m: &ExponentVector,
    name: &F,
) -> fmt::Result {
    if m.is_one() {
        return f.write_str("1");
    }
    let mut first = true;
    for (i, &e) in m.as_slice().iter().enumerate().filter(|(_, &e)| e > 0) {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl<F: Fn(usize) -> String> fmt::Display for BinomialDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, &self.b.lead, &self.name)?;
        f.write_str(" - ")?;
        write_monomial(f, &self.b.trail, &self.name)
    }
}

/// `y_{012}` style variable name.
pub fn variable_name(c: Codeword) -> String {
    alloc::format!("y_{{{}}}", c.to_digits())
}

/// Bit-string name with neurons `1..=n` first and the dummy neuron 0 last,
/// e.g. `{0,4}` on four neurons is `00011`.
pub fn bit_string_name(c: Codeword, n: usize) -> String {
    (1..=n)
        .chain(core::iter::once(0))
        .map(|i| if c.contains(i) { '1' } else { '0' })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic; `significance[0]` is compared first.
    Lex { significance: Vec<usize> },
    /// `w·a` first, then total degree, then reverse lex: variables are
    /// inspected in `revlex` order and a smaller exponent wins.
    WeightedGrevlex { weights: Vec<u64>, revlex: Vec<usize> },
    /// The first `block` variables dominate, compared by grevlex; ties are
    /// broken by `inner` on the remaining variables.
    Elimination { block: usize, inner: Box<MonomialOrder> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToricError {
    /// Buchberger exceeded the S-pair or degree cap.
    ResourceLimit {
        pairs: usize,
        degree: u32,
    },
    /// A monomial or weight list does not match the ring.
    BadLength {
        expected: usize,
        got: usize,
    },
    /// An order was asked to rank a variable it does not know about.
    UnknownVariable(Codeword),
    NotASubcode,
}

impl fmt::Display for ToricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToricError::ResourceLimit { pairs, degree } => {
                write!(
                    f,
                    "Gröbner basis computation hit its cap ({pairs} S-pairs, degree {degree})"
                )
            }
            ToricError::BadLength { expected, got } => {
                write!(f, "expected {expected} variables, got {got}")
            }
            ToricError::UnknownVariable(c) => write!(f, "no variable for codeword {c}"),
            ToricError::NotASubcode => f.write_str("the first code is not contained in the second"),
        }
    }
}

impl core::error::Error for ToricError {}

/// The weight vector `(0,0,0,1,1,1,0)` on `y1,y2,y3,y12,y13,y23,y123`.
pub const WGREVLEX_N3_WEIGHTS: [u64; 7] = [0, 0, 0, 1, 1, 1, 0];

/// Nonempty subsets of `1..=n` by size, then lexicographically.
pub fn size_lex_codewords(n: usize) -> Vec<Codeword> {
    let mut all: Vec<Codeword> = Codeword::full(n).subsets().filter(|c| !c.is_empty()).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.neurons().cmp(b.neurons())));
    all
}

impl MonomialOrder {
    /// Lex where a larger `rank` is more significant.
    pub fn lex_by_rank(rank: &[usize]) -> Self {
        let mut significance: Vec<usize> = (0..rank.len()).collect();
        significance.sort_by_key(|&i| Reverse(rank[i]));
        MonomialOrder::Lex { significance }
    }

    /// The order `≺`: `y_c ≺ y_d` iff `c < d` in codeword order.
    pub fn lex_by_codeword_order(vars: &[Codeword]) -> Self {
        let mut significance: Vec<usize> = (0..vars.len()).collect();
        significance.sort_by(|&i, &j| vars[j].cmp(&vars[i]));
        MonomialOrder::Lex { significance }
    }

    /// Lex where codewords later in `list` are larger variables.
    pub fn lex_by_list(vars: &[Codeword], list: &[Codeword]) -> Result<Self, ToricError> {
        let rank = vars
            .iter()
            .map(|c| {
                list.iter()
                    .position(|d| d == c)
                    .ok_or(ToricError::UnknownVariable(*c))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::lex_by_rank(&rank))
    }

    /// Weighted grevlex with weights listed over [`size_lex_codewords`]`(n)`;
    /// that list is also the variable order for the reverse-lex tie-break.
    pub fn weighted_grevlex(vars: &[Codeword], n: usize, weights: &[u64]) -> Result<Self, ToricError> {
        let list = size_lex_codewords(n);
        if weights.len() != list.len() {
            return Err(ToricError::BadLength {
                expected: list.len(),
                got: weights.len(),
            });
        }
        let pos = vars
            .iter()
            .map(|c| {
                list.iter()
                    .position(|d| d == c)
                    .ok_or(ToricError::UnknownVariable(*c))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut revlex: Vec<usize> = (0..vars.len()).collect();
        revlex.sort_by_key(|&i| Reverse(pos[i]));
        Ok(MonomialOrder::WeightedGrevlex {
            weights: pos.iter().map(|&p| weights[p]).collect(),
            revlex,
        })
    }

    /// Number of variables the order is defined on.
    pub fn arity(&self) -> usize {
        match self {
            MonomialOrder::Lex { significance } => significance.len(),
            MonomialOrder::WeightedGrevlex { revlex, .. } => revlex.len(),
            MonomialOrder::Elimination { block, inner } => block + inner.arity(),
        }
    }

    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        self.cmp_slices(a.as_slice(), b.as_slice())
    }

    fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex { significance } => {
                for &i in significance {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::WeightedGrevlex { weights, revlex } => {
                let w = |m: &[u32]| m.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum::<u64>();
                w(a).cmp(&w(b))
                    .then_with(|| grevlex(a, b, revlex.iter().copied()))
            }
            MonomialOrder::Elimination { block, inner } => {
                let (ax, ay) = a.split_at(*block);
                let (bx, by) = b.split_at(*block);
                grevlex(ax, bx, (0..*block).rev()).then_with(|| inner.cmp_slices(ay, by))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32], revlex: impl Iterator<Item = usize>) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in revlex {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Caps on a single Buchberger run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_pairs: 1_000_000,
            max_degree: 32,
        }
    }
}

/// Reduces the monomial `m` to normal form in place. The normal form of a
/// monomial modulo a binomial basis is again a monomial.
fn reduce_monomial(m: &mut ExponentVector, basis: &[Binomial]) {
    'outer: loop {
        for g in basis {
            if g.lead.divides(m) {
                m.rewrite(&g.lead, &g.trail);
                continue 'outer;
            }
        }
        return;
    }
}

fn s_monomials(f: &Binomial, g: &Binomial) -> (ExponentVector, ExponentVector) {
    let l = f.lead.lcm(&g.lead);
    let mut a = l.clone();
    a.rewrite(&f.lead, &f.trail);
    let mut b = l;
    b.rewrite(&g.lead, &g.trail);
    (a, b)
}

/// Buchberger's algorithm followed by inter-reduction. The output is the
/// reduced Gröbner basis, sorted by leading term.
pub fn buchberger(
    generators: impl IntoIterator<Item = (ExponentVector, ExponentVector)>,
    order: &MonomialOrder,
    limits: GbLimits,
) -> Result<Vec<Binomial>, ToricError> {
    let mut basis: Vec<Binomial> = Vec::new();
    let mut queue: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut pairs = 0usize;

    let insert = |basis: &mut Vec<Binomial>,
                  queue: &mut BinaryHeap<Reverse<(u32, usize, usize)>>,
                  pending: &mut BTreeSet<(usize, usize)>,
                  mut a: ExponentVector,
                  mut b: ExponentVector|
     -> Result<(), ToricError> {
        reduce_monomial(&mut a, basis);
        reduce_monomial(&mut b, basis);
        let Some(g) = Binomial::new(a, b, order) else {
            return Ok(());
        };
        if g.degree() > limits.max_degree {
            return Err(ToricError::ResourceLimit {
                pairs: 0,
                degree: g.degree(),
            });
        }
        let j = basis.len();
        for (i, f) in basis.iter().enumerate() {
            queue.push(Reverse((f.lead.lcm(&g.lead).degree(), i, j)));
            pending.insert((i, j));
        }
        basis.push(g);
        Ok(())
    };

    for (a, b) in generators {
        insert(&mut basis, &mut queue, &mut pending, a, b)?;
    }
    while let Some(Reverse((_, i, j))) = queue.pop() {
        pending.remove(&(i, j));
        let (f, g) = (&basis[i], &basis[j]);
        if f.lead.is_coprime(&g.lead) {
            continue;
        }
        let l = f.lead.lcm(&g.lead);
        // chain criterion
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        if (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        }) {
            continue;
        }
        pairs += 1;
        if pairs > limits.max_pairs {
            return Err(ToricError::ResourceLimit {
                pairs,
                degree: l.degree(),
            });
        }
        let (a, b) = s_monomials(f, g);
        insert(&mut basis, &mut queue, &mut pending, a, b).map_err(|e| match e {
            ToricError::ResourceLimit { degree, .. } => ToricError::ResourceLimit { pairs, degree },
            e => e,
        })?;
    }
    Ok(interreduce(basis, order))
}

fn interreduce(basis: Vec<Binomial>, order: &MonomialOrder) -> Vec<Binomial> {
    let mut minimal: Vec<Binomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && h.lead.divides(&g.lead) && (h.lead != g.lead || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let snapshot = minimal.clone();
    for g in &mut minimal {
        reduce_monomial(&mut g.trail, &snapshot);
    }
    minimal.sort_by(|a, b| order.cmp(&a.lead, &b.lead));
    minimal
}

/// A reduced Gröbner basis together with its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub elements: Vec<Binomial>,
}

impl GroebnerBasis {
    pub fn normal_form(&self, m: &ExponentVector) -> ExponentVector {
        let mut m = m.clone();
        reduce_monomial(&mut m, &self.elements);
        m
    }

    /// `a - b` lies in the ideal.
    pub fn contains(&self, a: &ExponentVector, b: &ExponentVector) -> bool {
        self.normal_form(a) == self.normal_form(b)
    }

    pub fn max_degree(&self) -> u32 {
        self.elements.iter().map(Binomial::degree).max().unwrap_or(0)
    }

    /// Buchberger's criterion: every S-binomial reduces to zero. Returns the
    /// first failing pair.
    pub fn certify(&self) -> Result<(), (usize, usize)> {
        for (i, f) in self.elements.iter().enumerate() {
            for (j, g) in self.elements.iter().enumerate().skip(i + 1) {
                let (a, b) = s_monomials(f, g);
                if !self.contains(&a, &b) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }
}

/// Adds the dummy neuron 0 to every codeword.
pub fn homogenize_with_dummy(code: &NeuralCode) -> NeuralCode {
    NeuralCode::from_homogenized(code.n(), code.iter().map(|c| c.with(0)))
}

/// Which monomial order to use on a code's ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    /// `≺`, lex induced by codeword order.
    CodewordLex,
    /// Lex with later codewords in the list as larger variables.
    ListLex(Vec<Codeword>),
    /// Weighted grevlex, weights listed over [`size_lex_codewords`].
    WeightedGrevlex(Vec<u64>),
}

impl OrderSpec {
    pub fn build(&self, vars: &[Codeword], n: usize) -> Result<MonomialOrder, ToricError> {
        match self {
            OrderSpec::CodewordLex => Ok(MonomialOrder::lex_by_codeword_order(vars)),
            OrderSpec::ListLex(list) => MonomialOrder::lex_by_list(vars, list),
            OrderSpec::WeightedGrevlex(w) => MonomialOrder::weighted_grevlex(vars, n, w),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ToricIdeal {
    pub code: NeuralCode,
    /// Ring variables, one per nonempty codeword, in codeword order.
    pub vars: Vec<Codeword>,
    /// Generators of the kernel; the reduced Gröbner basis under `≺`.
    pub generators: Vec<Binomial>,
}

impl ToricIdeal {
    /// Computes generators by elimination: a Gröbner basis of
    /// `⟨y_c - x^c⟩` under a block order with the `x` variables on top,
    /// intersected with the codeword ring.
    pub fn new(code: &NeuralCode, limits: GbLimits) -> Result<Self, ToricError> {
        let vars: Vec<Codeword> = code.iter().filter(|c| !c.is_empty()).collect();
        let support = code.iter().fold(Codeword::EMPTY, Codeword::union);
        let neurons: Vec<usize> = support.neurons().collect();
        let (nx, ny) = (neurons.len(), vars.len());
        let inner = MonomialOrder::lex_by_codeword_order(&vars);
        let order = MonomialOrder::Elimination {
            block: nx,
            inner: Box::new(inner),
        };
        let gens = vars.iter().enumerate().map(|(k, c)| {
            let mut x = vec![0; nx + ny];
            for (slot, i) in neurons.iter().enumerate() {
                if c.contains(*i) {
                    x[slot] = 1;
                }
            }
            (ExponentVector::var(nx + ny, nx + k), ExponentVector(x))
        });
        let gb = buchberger(gens, &order, limits)?;
        let generators = gb
            .into_iter()
            .filter(|b| b.lead.0[..nx].iter().chain(&b.trail.0[..nx]).all(|&e| e == 0))
            .map(|b| Binomial {
                lead: ExponentVector(b.lead.0[nx..].to_vec()),
                trail: ExponentVector(b.trail.0[nx..].to_vec()),
            })
            .collect();
        Ok(ToricIdeal {
            code: code.clone(),
            vars,
            generators,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn var_index(&self, c: Codeword) -> Option<usize> {
        self.vars.iter().position(|&d| d == c)
    }

    pub fn order(&self, spec: &OrderSpec) -> Result<MonomialOrder, ToricError> {
        spec.build(&self.vars, self.code.n())
    }

    /// Image under `y_c ↦ ∏ x_i`, as exponents of `x_0..=x_n`.
    pub fn monomial_map_image(&self, m: &ExponentVector) -> Result<ExponentVector, ToricError> {
        if m.len() != self.vars.len() {
            return Err(ToricError::BadLength {
                expected: self.vars.len(),
                got: m.len(),
            });
        }
        let mut x = vec![0u32; self.code.n() + 1];
        for (c, &e) in self.vars.iter().zip(m.as_slice()) {
            for i in c.neurons() {
                x[i] += e;
            }
        }
        Ok(ExponentVector(x))
    }

    pub fn in_kernel(&self, a: &ExponentVector, b: &ExponentVector) -> Result<bool, ToricError> {
        Ok(self.monomial_map_image(a)? == self.monomial_map_image(b)?)
    }

    pub fn reduced_groebner_basis(
        &self,
        order: &MonomialOrder,
        limits: GbLimits,
    ) -> Result<GroebnerBasis, ToricError> {
        if order.arity() != self.vars.len() {
            return Err(ToricError::BadLength {
                expected: self.vars.len(),
                got: order.arity(),
            });
        }
        let gens = self.generators.iter().map(|b| (b.lead.clone(), b.trail.clone()));
        Ok(GroebnerBasis {
            order: order.clone(),
            elements: buchberger(gens, order, limits)?,
        })
    }

    pub fn gb_max_degree(&self, order: &MonomialOrder, limits: GbLimits) -> Result<u32, ToricError> {
        Ok(self.reduced_groebner_basis(order, limits)?.max_degree())
    }

    /// Builds a monomial from `(codeword, exponent)` pairs.
    pub fn monomial(&self, factors: &[(Codeword, u32)]) -> Result<ExponentVector, ToricError> {
        let mut e = vec![0; self.vars.len()];
        for &(c, k) in factors {
            e[self.var_index(c).ok_or(ToricError::UnknownVariable(c))?] += k;
        }
        Ok(ExponentVector(e))
    }

    /// Moves a monomial of this ring into the ring of `other` by codeword.
    pub fn transport(&self, m: &ExponentVector, other: &ToricIdeal) -> Result<ExponentVector, ToricError> {
        let mut e = vec![0; other.vars.len()];
        for (c, &k) in self.vars.iter().zip(m.as_slice()) {
            if k > 0 {
                e[other.var_index(*c).ok_or(ToricError::UnknownVariable(*c))?] += k;
            }
        }
        Ok(ExponentVector(e))
    }

    pub fn format_binomial(&self, b: &Binomial) -> String {
        alloc::format!("{}", b.display(|i| variable_name(self.vars[i])))
    }
}

/// Normal-form membership of `a - b`.
pub fn ideal_contains(gb: &GroebnerBasis, a: &ExponentVector, b: &ExponentVector) -> bool {
    gb.contains(a, b)
}

/// `T_sub ⊆ T_sup`, checked by reducing every generator of `T_sub` modulo the
/// `≺` basis of `T_sup`.
pub fn check_nesting(sub: &NeuralCode, sup: &NeuralCode, limits: GbLimits) -> Result<bool, ToricError> {
    if !sub.is_subcode_of(sup) {
        return Err(ToricError::NotASubcode);
    }
    let small = ToricIdeal::new(sub, limits)?;
    let big = ToricIdeal::new(sup, limits)?;
    let gb = big.reduced_groebner_basis(&big.order(&OrderSpec::CodewordLex)?, limits)?;
    for g in &small.generators {
        if !gb.contains(
            &small.transport(&g.lead, &big)?,
            &small.transport(&g.trail, &big)?,
        ) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every monomial of total degree `≤ max_degree` in `nvars` variables.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<ExponentVector> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if i == cur.len() {
            out.push(ExponentVector(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, max_degree, &mut vec![0; nvars], &mut out);
    out
}

/// Checks a Gröbner basis against brute force: monomials of degree
/// `≤ max_degree` with equal image must share a normal form, and every basis
/// element of degree `≤ max_degree` must lie in the kernel. Returns the number
/// of kernel classes checked.
pub fn kernel_oracle_check(ideal: &ToricIdeal, gb: &GroebnerBasis, max_degree: u32) -> Result<usize, String> {
    let mut classes: BTreeMap<ExponentVector, ExponentVector> = BTreeMap::new();
    for m in monomials_up_to(ideal.vars.len(), max_degree) {
        let img = ideal.monomial_map_image(&m).map_err(|e| alloc::format!("{e}"))?;
        let nf = gb.normal_form(&m);
        match classes.get(&img) {
            Some(prev) if *prev != nf => {
                return Err(alloc::format!(
                    "kernel binomial {:?} - ... does not reduce to zero",
                    m
                ));
            }
            Some(_) => {}
            None => {
                classes.insert(img, nf);
            }
        }
    }
    for g in gb.elements.iter().filter(|g| g.degree() <= max_degree) {
        if !ideal.in_kernel(&g.lead, &g.trail).unwrap_or(false) {
            return Err(alloc::format!(
                "basis element {} is not in the kernel",
                ideal.format_binomial(g)
            ));
        }
    }
    Ok(classes.len())
}
