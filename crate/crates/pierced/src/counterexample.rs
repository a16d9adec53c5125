//! A pierced code whose toric ideal has a cubic reduced basis under the
//! lex order read off its shelling order.

use std::collections::BTreeSet;

use pierced_core::toric::{
    bit_string_name, homogenize_with_dummy, ExponentVector, GbLimits, GroebnerBasis, MonomialOrder,
    ToricError, ToricIdeal,
};
use pierced_core::{Codeword, NeuralCode};
use serde::Serialize;

use crate::json::{code_json, CodeJson};

/// Codewords in the order that shells the polar complex.
pub const SHELLED_CODE: [&str; 11] = ["134", "13", "3", "", "1", "12", "34", "234", "1234", "123", "4"];

/// Expected reduced basis, variables named by bit strings (neurons 1..4,
/// then the dummy neuron).
pub const REFERENCE_BASIS: [&str; 17] = [
    "y_{00011} y_{11101} - y_{00111} y_{11001}",
    "y_{00011} y_{00101} - y_{00111} y_{00001}",
    "y_{00011} y_{10101} - y_{00001} y_{10111}",
    "y_{11101} y_{00111} - y_{01111} y_{10101}",
    "y_{11101} y_{10001} - y_{11001} y_{10101}",
    "y_{11101} y_{00001} - y_{11001} y_{00101}",
    "y_{11101} y_{10111} - y_{11111} y_{10101}",
    "y_{11111} y_{00111} - y_{01111} y_{10111}",
    "y_{11111} y_{10001} - y_{11001} y_{10111}",
    "y_{11111} y_{00001} - y_{00111} y_{11001}",
    "y_{11111} y_{00101} - y_{01111} y_{10101}",
    "y_{01111} y_{10001} - y_{00111} y_{11001}",
    "y_{01111} y_{00001} y_{10101} - y_{00111} y_{11001} y_{00101}",
    "y_{01111} y_{00001} y_{10111} - y_{00111}^{2} y_{11001}",
    "y_{00111} y_{10001} - y_{00001} y_{10111}",
    "y_{00111} y_{10101} - y_{00101} y_{10111}",
    "y_{10001} y_{00101} - y_{00001} y_{10101}",
];

/// Parses `y_{bits}^{e}` factors separated by spaces or `*`.
pub fn parse_monomial(s: &str, vars: &[Codeword], n: usize) -> Option<ExponentVector> {
    let mut exps = vec![0u32; vars.len()];
    for factor in s
        .split(|c: char| c == '*' || c.is_whitespace())
        .filter(|f| !f.is_empty())
    {
        let (name, e) = match factor.split_once('^') {
            Some((v, e)) => (v, e.trim_matches(|c| c == '{' || c == '}').parse().ok()?),
            None => (factor, 1),
        };
        let bits = name.strip_prefix("y_{")?.strip_suffix('}')?;
        let i = vars.iter().position(|v| bit_string_name(*v, n) == bits)?;
        exps[i] += e;
    }
    Some(ExponentVector::new(exps))
}

type Pair = (ExponentVector, ExponentVector);

fn unordered(a: ExponentVector, b: ExponentVector) -> Pair {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub code: CodeJson,
    pub homogenized: CodeJson,
    /// Variables from smallest to largest in the lex order.
    pub order: Vec<String>,
    pub basis: Vec<String>,
    pub max_degree: u32,
    pub cubic_count: usize,
    pub certified: bool,
    /// The basis equals [`REFERENCE_BASIS`] as a set of unordered binomials.
    pub matches_reference: bool,
}

pub struct Counterexample {
    pub ideal: ToricIdeal,
    pub basis: GroebnerBasis,
    pub report: CounterexampleReport,
}

pub fn run(limits: GbLimits) -> Result<Counterexample, ToricError> {
    let list: Vec<Codeword> = SHELLED_CODE
        .iter()
        .map(|s| Codeword::parse_digits(s).expect("digit strings"))
        .collect();
    let code = NeuralCode::new(4, list.iter().copied()).expect("codewords on 4 neurons");
    let h = homogenize_with_dummy(&code);
    let ideal = ToricIdeal::new(&h, limits)?;
    let ranked: Vec<Codeword> = list.iter().map(|c| c.with(0)).collect();
    let order = MonomialOrder::lex_by_list(&ideal.vars, &ranked)?;
    let basis = ideal.reduced_groebner_basis(&order, limits)?;
    let name = |i: usize| format!("y_{{{}}}", bit_string_name(ideal.vars[i], 4));
    let ours: BTreeSet<Pair> = basis
        .elements
        .iter()
        .map(|b| unordered(b.lead.clone(), b.trail.clone()))
        .collect();
    let reference: Option<BTreeSet<Pair>> = REFERENCE_BASIS
        .iter()
        .map(|s| {
            let (a, b) = s.split_once(" - ")?;
            Some(unordered(
                parse_monomial(a, &ideal.vars, 4)?,
                parse_monomial(b, &ideal.vars, 4)?,
            ))
        })
        .collect();
    let report = CounterexampleReport {
        code: code_json(&code),
        homogenized: code_json(&h),
        order: ranked
            .iter()
            .map(|c| format!("y_{{{}}}", bit_string_name(*c, 4)))
            .collect(),
        basis: basis
            .elements
            .iter()
            .map(|b| b.display(name).to_string())
            .collect(),
        max_degree: basis.max_degree(),
        cubic_count: basis.elements.iter().filter(|b| b.degree() == 3).count(),
        certified: basis.certify().is_ok(),
        matches_reference: reference.as_ref() == Some(&ours),
    };
    Ok(Counterexample { ideal, basis, report })
}
