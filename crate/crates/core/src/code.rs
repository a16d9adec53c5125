//! Codewords, neural codes and the codeword order.
//!
//! A [`Codeword`] is a subset of the neurons `{0, 1, ..., 63}` stored as a
//! bitset. Neuron `0` is reserved for the homogenizing dummy neuron; ordinary
//! codes use neurons `1..=n`.
//!
//! The [`Ord`] instance on [`Codeword`] is the order in which codewords are
//! added by inductive piercing: `c < d` if `max(c) < max(d)`, otherwise the
//! heavier codeword comes first, otherwise lexicographic order. With
//! `max(∅) = 0` the empty codeword precedes every nonempty codeword on
//! neurons `1..=n`. The same order drives both the shelling of the polar
//! complex and the lexicographic term order on codeword variables.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Largest neuron label a [`Codeword`] can hold.
pub const MAX_NEURON: usize = 63;

/// A subset of neurons, stored as a bitset (bit `i` is neuron `i`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Codeword(u64);

impl Codeword {
    pub const EMPTY: Codeword = Codeword(0);

    pub const fn from_bits(bits: u64) -> Self {
        Codeword(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a codeword from neuron labels.
    ///
    /// Panics if a label exceeds [`MAX_NEURON`]; use [`Codeword::try_from_neurons`]
    /// for untrusted input.
    pub fn from_neurons<I: IntoIterator<Item = usize>>(neurons: I) -> Self {
        Self::try_from_neurons(neurons).expect("neuron label out of range")
    }

    pub fn try_from_neurons<I: IntoIterator<Item = usize>>(neurons: I) -> Result<Self, CodeError> {
        let mut bits = 0u64;
        for i in neurons {
            if i > MAX_NEURON {
                return Err(CodeError::NeuronOutOfRange {
                    neuron: i,
                    n: MAX_NEURON,
                });
            }
            bits |= 1 << i;
        }
        Ok(Codeword(bits))
    }

    /// Parses the compact digit form, e.g. `"123"`. `""` and `"∅"` are the
    /// empty codeword. Only single-digit neurons can be written this way.
    pub fn parse_digits(s: &str) -> Result<Self, CodeError> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Codeword::EMPTY);
        }
        let mut bits = 0u64;
        for ch in s.chars() {
            let d = ch.to_digit(10).ok_or(CodeError::BadCodewordText)? as usize;
            bits |= 1 << d;
        }
        Ok(Codeword(bits))
    }

    pub const fn singleton(i: usize) -> Self {
        Codeword(1 << i)
    }

    /// The neurons `1..=n`.
    pub const fn full(n: usize) -> Self {
        if n == 0 {
            Codeword(0)
        } else if n >= MAX_NEURON {
            Codeword(!1)
        } else {
            Codeword(((1u64 << n) - 1) << 1)
        }
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn contains(self, i: usize) -> bool {
        i <= MAX_NEURON && self.0 >> i & 1 == 1
    }

    /// Largest neuron, with `max(∅) = 0`.
    pub const fn max_neuron(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            63 - self.0.leading_zeros() as usize
        }
    }

    pub const fn union(self, other: Self) -> Self {
        Codeword(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        Codeword(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        Codeword(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn with(self, i: usize) -> Self {
        Codeword(self.0 | 1 << i)
    }

    pub const fn without(self, i: usize) -> Self {
        Codeword(self.0 & !(1 << i))
    }

    /// Neuron labels in increasing order.
    pub fn neurons(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, starting with `∅` and ending with `self`.
    pub fn subsets(self) -> impl Iterator<Item = Codeword> {
        let full = self.0;
        let mut cur = 0u64;
        let mut done = false;
        core::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Codeword(cur);
            if cur == full {
                done = true;
            } else {
                // next subset of `full` in increasing integer order
                cur = (cur.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }

    /// Digit string such as `"123"`; neurons above 9 fall back to a
    /// comma-separated list in braces.
    pub fn to_digits(self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        if self.neurons().all(|i| i <= 9) {
            for i in self.neurons() {
                let _ = write!(s, "{i}");
            }
        } else {
            s.push('{');
            for (k, i) in self.neurons().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{i}");
            }
            s.push('}');
        }
        s
    }
}

/// Compares two codewords in the codeword order.
pub fn compare(c: Codeword, d: Codeword) -> Ordering {
    c.max_neuron()
        .cmp(&d.max_neuron())
        .then_with(|| d.len().cmp(&c.len()))
        .then_with(|| lex_cmp(c, d))
}

// Lexicographic comparison of the increasing neuron lists; a proper prefix
// comes first.
fn lex_cmp(c: Codeword, d: Codeword) -> Ordering {
    let mut a = c.neurons();
    let mut b = d.neurons();
    loop {
        match (a.next(), b.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}

impl Ord for Codeword {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(*self, *other)
    }
}

impl PartialOrd for Codeword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&self.to_digits())
        }
    }
}

/// Errors raised when constructing or manipulating codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    NeuronOutOfRange { neuron: usize, n: usize },
    TooManyNeurons(usize),
    EmptyCode,
    BadCodewordText,
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::NeuronOutOfRange { neuron, n } => {
                write!(f, "neuron {neuron} is outside 1..={n}")
            }
            CodeError::TooManyNeurons(n) => write!(f, "{n} neurons exceeds the limit of {MAX_NEURON}"),
            CodeError::EmptyCode => f.write_str("code has no codewords"),
            CodeError::BadCodewordText => f.write_str("codeword text must be a digit string"),
        }
    }
}

impl core::error::Error for CodeError {}

/// A neural code on neurons `1..=n` (plus neuron `0` after homogenization).
///
/// Codewords are kept in the codeword order. Equality compares `n` and the
/// codeword set only.
#[derive(Clone)]
pub struct NeuralCode {
    n: usize,
    words: BTreeSet<Codeword>,
    /// Neuron `i` was added at piercing step `i`.
    pub labeled_by_construction: bool,
}

impl PartialEq for NeuralCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}

impl Eq for NeuralCode {}

impl fmt::Debug for NeuralCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NeuralCode(n={}, ", self.n)?;
        f.debug_set().entries(self.words.iter()).finish()?;
        f.write_str(")")
    }
}

impl fmt::Display for NeuralCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.words.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl NeuralCode {
    /// Builds a code on `n` neurons, checking every codeword lies in `1..=n`.
    pub fn new<I: IntoIterator<Item = Codeword>>(n: usize, words: I) -> Result<Self, CodeError> {
        Self::with_dummy(n, words, false)
    }

    // `allow_zero` admits the dummy neuron 0.
    fn with_dummy<I: IntoIterator<Item = Codeword>>(
        n: usize,
        words: I,
        allow_zero: bool,
    ) -> Result<Self, CodeError> {
        if n > MAX_NEURON {
            return Err(CodeError::TooManyNeurons(n));
        }
        let mut set = BTreeSet::new();
        let allowed = Codeword::full(n).union(if allow_zero {
            Codeword::singleton(0)
        } else {
            Codeword::EMPTY
        });
        for w in words {
            if !w.is_subset(allowed) {
                let bad = w.difference(allowed).neurons().next().unwrap_or(0);
                return Err(CodeError::NeuronOutOfRange { neuron: bad, n });
            }
            set.insert(w);
        }
        Ok(NeuralCode {
            n,
            words: set,
            labeled_by_construction: false,
        })
    }

    /// Parses codewords written as digit strings: `["", "1", "12"]`.
    pub fn from_digit_strings(n: usize, words: &[&str]) -> Result<Self, CodeError> {
        let ws = words
            .iter()
            .map(|s| Codeword::parse_digits(s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, ws)
    }

    /// The code on the smallest `n` covering all codewords.
    pub fn from_words<I: IntoIterator<Item = Codeword>>(words: I) -> Result<Self, CodeError> {
        let ws: Vec<Codeword> = words.into_iter().collect();
        let n = ws.iter().map(|c| c.max_neuron()).max().unwrap_or(0);
        Self::new(n, ws)
    }

    /// The full code `2^[n]`.
    pub fn full(n: usize) -> Self {
        NeuralCode::new(n, Codeword::full(n).subsets()).expect("full code is valid")
    }

    /// The base code `{∅, 1}`.
    pub fn base() -> Self {
        let mut c = NeuralCode::new(1, [Codeword::EMPTY, Codeword::singleton(1)]).expect("valid");
        c.labeled_by_construction = true;
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, c: Codeword) -> bool {
        self.words.contains(&c)
    }

    /// Codewords in the codeword order.
    pub fn iter(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.words.iter().copied()
    }

    pub fn words(&self) -> &BTreeSet<Codeword> {
        &self.words
    }

    /// Nonempty codewords, in the codeword order.
    pub fn nonempty(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.words.iter().copied().filter(|c| !c.is_empty())
    }

    pub fn neurons(&self) -> Codeword {
        Codeword::full(self.n)
    }

    /// True when some codeword uses the dummy neuron 0.
    pub fn has_dummy(&self) -> bool {
        self.words.iter().any(|c| c.contains(0))
    }

    pub fn is_subcode_of(&self, other: &NeuralCode) -> bool {
        self.words.is_subset(&other.words)
    }

    pub(crate) fn insert_raw(&mut self, c: Codeword) {
        self.words.insert(c);
    }

    pub(crate) fn set_n(&mut self, n: usize) {
        self.n = n;
    }

    /// Copy that keeps the same codewords but admits the dummy neuron.
    pub(crate) fn from_homogenized(n: usize, words: impl IntoIterator<Item = Codeword>) -> Self {
        Self::with_dummy(n, words, true).expect("homogenized codewords stay in range")
    }
}

/// Codewords of `code` in increasing codeword order.
pub fn sort_codewords(code: &NeuralCode) -> Vec<Codeword> {
    code.iter().collect()
}

/// Sorts an arbitrary list of codewords in the codeword order.
pub fn sort_words(words: &mut [Codeword]) {
    words.sort_by(|a, b| compare(*a, *b));
}

/// Removes every codeword containing neuron `j`. Labels are kept; `n` drops
/// by one only when `j = n`.
pub fn restrict(code: &NeuralCode, j: usize) -> Result<NeuralCode, CodeError> {
    if j == 0 || j > code.n {
        return Err(CodeError::NeuronOutOfRange { neuron: j, n: code.n });
    }
    let n = if j == code.n { code.n - 1 } else { code.n };
    let mut out = NeuralCode::new(n, code.iter().filter(|c| !c.contains(j)))?;
    out.labeled_by_construction = code.labeled_by_construction && j == code.n;
    Ok(out)
}
