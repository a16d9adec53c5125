//! Conjecture scan: the Gröbner degree of every enumerated pierced code.

use std::collections::BTreeMap;
use std::time::Instant;

use pierced_core::toric::{size_lex_codewords, GbLimits, OrderSpec, ToricError, ToricIdeal};
use pierced_core::{enumerate_pierced_codes, recover_piercing_sequence, Codeword, NeuralCode, PiercingError};
use rayon::prelude::*;
use serde::Serialize;

use crate::json::{code_json, CodeJson};

/// The order used on every code of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    CodewordLex,
    /// Weights over the nonempty subsets of `1..=n` in size-then-lex order.
    /// Codes on fewer neurons use the weights of their own codewords.
    WeightedGrevlex {
        n: usize,
        weights: Vec<u64>,
    },
}

impl ScanOrder {
    pub fn describe(&self) -> String {
        match self {
            ScanOrder::CodewordLex => "lex".into(),
            ScanOrder::WeightedGrevlex { weights, .. } => format!("wgrevlex {weights:?}"),
        }
    }

    fn spec_for(&self, n: usize) -> Result<OrderSpec, ToricError> {
        match self {
            ScanOrder::CodewordLex => Ok(OrderSpec::CodewordLex),
            ScanOrder::WeightedGrevlex { n: wn, weights } => {
                let list = size_lex_codewords(*wn);
                if weights.len() != list.len() {
                    return Err(ToricError::BadLength {
                        expected: list.len(),
                        got: weights.len(),
                    });
                }
                let lookup: BTreeMap<Codeword, u64> = list.into_iter().zip(weights.iter().copied()).collect();
                size_lex_codewords(n)
                    .iter()
                    .map(|c| lookup.get(c).copied().ok_or(ToricError::UnknownVariable(*c)))
                    .collect::<Result<Vec<_>, _>>()
                    .map(OrderSpec::WeightedGrevlex)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Ok,
    /// Reduced basis of degree above 2.
    Violation,
    /// A resource cap was hit; the code is undecided.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub code: CodeJson,
    pub n: usize,
    pub k: usize,
    pub gb_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
    pub status: ScanStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub max_n: usize,
    pub max_k: usize,
    pub order: String,
    pub total: usize,
    pub violations: usize,
    pub skipped: usize,
    pub max_degree: u32,
    pub degree_histogram: BTreeMap<u32, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_ms: Option<f64>,
    pub entries: Vec<ScanEntry>,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub max_n: usize,
    pub max_k: usize,
    pub order: ScanOrder,
    pub limits: GbLimits,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    /// Record wall-clock times. Off by default so reports are reproducible.
    pub timings: bool,
}

impl ScanConfig {
    pub fn new(max_n: usize, max_k: usize) -> Self {
        ScanConfig {
            max_n,
            max_k,
            order: ScanOrder::CodewordLex,
            limits: GbLimits::default(),
            jobs: None,
            timings: false,
        }
    }
}

fn gb_degree(code: &NeuralCode, order: &ScanOrder, limits: GbLimits) -> Result<u32, ToricError> {
    let t = ToricIdeal::new(code, limits)?;
    let spec = order.spec_for(code.n())?;
    t.gb_max_degree(&t.order(&spec)?, limits)
}

fn scan_one(code: &NeuralCode, k: usize, cfg: &ScanConfig) -> ScanEntry {
    let start = Instant::now();
    let result = gb_degree(code, &cfg.order, cfg.limits);
    let time_ms = cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    let (gb_degree, status, note) = match result {
        Ok(d) => (
            Some(d),
            if d > 2 {
                ScanStatus::Violation
            } else {
                ScanStatus::Ok
            },
            None,
        ),
        Err(e @ ToricError::ResourceLimit { .. }) => (None, ScanStatus::Skipped, Some(e.to_string())),
        Err(e) => (None, ScanStatus::Skipped, Some(format!("unexpected: {e}"))),
    };
    ScanEntry {
        code: code_json(code),
        n: code.n(),
        k,
        gb_degree,
        time_ms,
        status,
        note,
    }
}

fn run_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

fn summarize(cfg: &ScanConfig, entries: Vec<ScanEntry>, start: Instant) -> ScanReport {
    let mut histogram = BTreeMap::new();
    for d in entries.iter().filter_map(|e| e.gb_degree) {
        *histogram.entry(d).or_insert(0) += 1;
    }
    ScanReport {
        max_n: cfg.max_n,
        max_k: cfg.max_k,
        order: cfg.order.describe(),
        total: entries.len(),
        violations: entries
            .iter()
            .filter(|e| e.status == ScanStatus::Violation)
            .count(),
        skipped: entries.iter().filter(|e| e.status == ScanStatus::Skipped).count(),
        max_degree: histogram.keys().last().copied().unwrap_or(0),
        degree_histogram: histogram,
        total_ms: cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
        entries,
    }
}

/// Scans every code from [`enumerate_pierced_codes`]; entries keep the
/// enumeration order whatever the thread count.
pub fn conjecture_scan(cfg: &ScanConfig) -> Result<ScanReport, PiercingError> {
    let start = Instant::now();
    let codes = enumerate_pierced_codes(cfg.max_n, cfg.max_k)
        .map(|r| r.map(|(c, s)| (c, s.max_degree())))
        .collect::<Result<Vec<_>, _>>()?;
    let entries = run_pool(cfg.jobs, || {
        codes.par_iter().map(|(c, k)| scan_one(c, *k, cfg)).collect()
    });
    Ok(summarize(cfg, entries, start))
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ClassificationTable {
    pub quadratic_pierced: usize,
    pub quadratic_not_pierced: usize,
    pub higher_pierced: usize,
    pub higher_not_pierced: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: usize,
    pub max_k: usize,
    pub order: String,
    /// The comparison is exploratory: no implication is asserted.
    pub kind: &'static str,
    pub table: ClassificationTable,
    pub entries: Vec<ScanEntry>,
}

/// Every code on `n` neurons containing `∅`, split by whether its basis
/// is quadratic and whether it is inductively `max_k`-pierced (up to
/// relabeling).
pub fn classify_all_codes(n: usize, cfg: &ScanConfig) -> Classification {
    let words: Vec<Codeword> = Codeword::full(n).subsets().filter(|c| !c.is_empty()).collect();
    let codes: Vec<NeuralCode> = (0u64..1 << words.len())
        .map(|mask| {
            let chosen = words
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, w)| *w);
            NeuralCode::new(n, std::iter::once(Codeword::EMPTY).chain(chosen)).expect("subsets of 1..=n")
        })
        .collect();
    let rows: Vec<(ScanEntry, bool)> = run_pool(cfg.jobs, || {
        codes
            .par_iter()
            .map(|c| {
                let det = recover_piercing_sequence(c, cfg.max_k, true);
                let k = match &det {
                    pierced_core::Detection::Pierced { sequence, .. } => sequence.max_degree(),
                    pierced_core::Detection::NotPierced => 0,
                };
                (scan_one(c, k, cfg), det.is_pierced())
            })
            .collect()
    });
    let mut table = ClassificationTable::default();
    for (e, pierced) in &rows {
        match (e.gb_degree, pierced) {
            (None, _) => table.skipped += 1,
            (Some(d), true) if d <= 2 => table.quadratic_pierced += 1,
            (Some(d), false) if d <= 2 => table.quadratic_not_pierced += 1,
            (Some(_), true) => table.higher_pierced += 1,
            (Some(_), false) => table.higher_not_pierced += 1,
        }
    }
    Classification {
        n,
        max_k: cfg.max_k,
        order: cfg.order.describe(),
        kind: "exploratory",
        table,
        entries: rows.into_iter().map(|(e, _)| e).collect(),
    }
}
