use std::collections::BTreeSet;

use pierced_core::toric::*;
use pierced_core::{enumerate_pierced_codes, Codeword, NeuralCode};
use proptest::prelude::*;

fn code(n: usize, ws: &[&str]) -> NeuralCode {
    NeuralCode::from_digit_strings(n, ws).unwrap()
}

fn w(s: &str) -> Codeword {
    Codeword::parse_digits(s).unwrap()
}

const LIMITS: GbLimits = GbLimits {
    max_pairs: 1_000_000,
    max_degree: 32,
};

// Homogenized 4-neuron code in shelling order, and its reduced basis under
// the lex order ranking variables by list position.
const SHELLED: [&str; 11] = ["134", "13", "3", "", "1", "12", "34", "234", "1234", "123", "4"];
const SHELLED_BASIS: [&str; 17] = [
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

/// Reads `y_{bits}^{e} ...` against bit-string names (neurons 1..4, then 0).
fn parse_monomial(t: &ToricIdeal, s: &str) -> ExponentVector {
    let mut exps = vec![0u32; t.vars.len()];
    for factor in s.split_whitespace() {
        let (name, e) = match factor.split_once('^') {
            Some((v, e)) => (v, e.trim_matches(|c| c == '{' || c == '}').parse().unwrap()),
            None => (factor, 1),
        };
        let bits = name.trim_start_matches("y_{").trim_end_matches('}');
        let i = (0..t.vars.len())
            .find(|&i| bit_string_name(t.vars[i], 4) == bits)
            .unwrap();
        exps[i] += e;
    }
    ExponentVector::new(exps)
}

fn unordered(a: ExponentVector, b: ExponentVector) -> (ExponentVector, ExponentVector) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn shelled_setup() -> (ToricIdeal, Vec<Codeword>) {
    let list: Vec<Codeword> = SHELLED.iter().map(|s| w(s)).collect();
    let h = homogenize_with_dummy(&NeuralCode::new(4, list.iter().copied()).unwrap());
    let t = ToricIdeal::new(&h, LIMITS).unwrap();
    (t, list.iter().map(|c| c.with(0)).collect())
}

#[test]
fn shelling_lex_counterexample_basis() {
    let (t, list) = shelled_setup();
    let order = MonomialOrder::lex_by_list(&t.vars, &list).unwrap();
    let gb = t.reduced_groebner_basis(&order, LIMITS).unwrap();
    assert_eq!(gb.max_degree(), 3);
    assert_eq!(gb.elements.iter().filter(|b| b.degree() == 3).count(), 2);
    assert!(gb.certify().is_ok());
    let ours: BTreeSet<_> = gb
        .elements
        .iter()
        .map(|b| unordered(b.lead.clone(), b.trail.clone()))
        .collect();
    let expected: BTreeSet<_> = SHELLED_BASIS
        .iter()
        .map(|s| {
            let (a, b) = s.split_once(" - ").unwrap();
            unordered(parse_monomial(&t, a), parse_monomial(&t, b))
        })
        .collect();
    assert_eq!(ours, expected);
}

#[test]
fn reversed_shelling_lex_differs() {
    let (t, mut list) = shelled_setup();
    list.reverse();
    let order = MonomialOrder::lex_by_list(&t.vars, &list).unwrap();
    let gb = t.reduced_groebner_basis(&order, LIMITS).unwrap();
    assert!(gb.certify().is_ok());
    // the opposite direction is quadratic, so the direction matters
    assert_eq!((gb.elements.len(), gb.max_degree()), (15, 2));
    let forward =
        MonomialOrder::lex_by_list(&t.vars, &list.iter().rev().copied().collect::<Vec<_>>()).unwrap();
    assert_ne!(
        gb.elements,
        t.reduced_groebner_basis(&forward, LIMITS).unwrap().elements
    );
}

#[test]
fn small_toric_ideals() {
    let t = ToricIdeal::new(&code(2, &["", "1", "2", "12"]), LIMITS).unwrap();
    assert_eq!(t.generators.len(), 1);
    let y12 = t.monomial(&[(w("12"), 1)]).unwrap();
    let y1y2 = t.monomial(&[(w("1"), 1), (w("2"), 1)]).unwrap();
    assert!(t.in_kernel(&y12, &y1y2).unwrap());

    let cubic = ToricIdeal::new(&code(3, &["", "1", "2", "3", "123"]), LIMITS).unwrap();
    let lex = cubic.order(&OrderSpec::CodewordLex).unwrap();
    assert_eq!(cubic.gb_max_degree(&lex, LIMITS).unwrap(), 3);
    let wg = cubic
        .order(&OrderSpec::WeightedGrevlex(WGREVLEX_N3_WEIGHTS.to_vec()))
        .unwrap();
    assert_eq!(cubic.gb_max_degree(&wg, LIMITS).unwrap(), 3);
}

#[test]
fn full_three_neuron_code_is_quadratic() {
    let t = ToricIdeal::new(&NeuralCode::full(3), LIMITS).unwrap();
    let lex = t.order(&OrderSpec::CodewordLex).unwrap();
    let gb = t.reduced_groebner_basis(&lex, LIMITS).unwrap();
    assert_eq!(gb.max_degree(), 2);
    // y12 - y1 y2, y13 - y1 y3, y23 - y2 y3, y123 - y12 y3
    let gens = [
        ("12", "1", "2"),
        ("13", "1", "3"),
        ("23", "2", "3"),
        ("123", "12", "3"),
    ];
    for (a, b, c) in gens {
        assert!(gb.contains(
            &t.monomial(&[(w(a), 1)]).unwrap(),
            &t.monomial(&[(w(b), 1), (w(c), 1)]).unwrap()
        ));
    }
    // and conversely the basis lies in the ideal those four generate
    let small: Vec<_> = gens
        .iter()
        .map(|(a, b, c)| {
            (
                t.monomial(&[(w(a), 1)]).unwrap(),
                t.monomial(&[(w(b), 1), (w(c), 1)]).unwrap(),
            )
        })
        .collect();
    let other = GroebnerBasis {
        order: lex.clone(),
        elements: buchberger(small, &lex, LIMITS).unwrap(),
    };
    for g in &gb.elements {
        assert!(other.contains(&g.lead, &g.trail));
    }
}

#[test]
fn kernel_oracle_and_certificates_on_pierced_codes() {
    for item in enumerate_pierced_codes(4, 3) {
        let (c, _) = item.unwrap();
        let t = ToricIdeal::new(&c, LIMITS).unwrap();
        for spec in [
            OrderSpec::CodewordLex,
            OrderSpec::WeightedGrevlex(vec![1; (1 << c.n()) - 1]),
        ] {
            let gb = t
                .reduced_groebner_basis(&t.order(&spec).unwrap(), LIMITS)
                .unwrap();
            assert_eq!(gb.certify(), Ok(()), "{c}");
            kernel_oracle_check(&t, &gb, 4).unwrap_or_else(|e| panic!("{c}: {e}"));
        }
    }
}

#[test]
fn nesting_along_sequences() {
    for item in enumerate_pierced_codes(4, 3) {
        let (_, seq) = item.unwrap();
        let chain = seq.replay_chain().unwrap();
        for pair in chain.windows(2) {
            assert_eq!(
                check_nesting(&pair[0], &pair[1], LIMITS),
                Ok(true),
                "{} in {}",
                pair[0],
                pair[1]
            );
        }
    }
}

#[test]
fn caps_are_reported() {
    let t = ToricIdeal::new(&NeuralCode::full(3), LIMITS).unwrap();
    let lex = t.order(&OrderSpec::CodewordLex).unwrap();
    let tiny = GbLimits {
        max_pairs: 1,
        max_degree: 32,
    };
    assert!(matches!(
        t.reduced_groebner_basis(&lex, tiny),
        Err(ToricError::ResourceLimit { .. })
    ));
}

fn exponent(len: usize) -> impl Strategy<Value = ExponentVector> {
    proptest::collection::vec(0u32..4, len).prop_map(ExponentVector::new)
}

fn orders() -> Vec<MonomialOrder> {
    let vars: Vec<Codeword> = NeuralCode::full(3).nonempty().collect();
    let list = size_lex_codewords(3);
    vec![
        MonomialOrder::lex_by_codeword_order(&vars),
        MonomialOrder::lex_by_list(&vars, &list).unwrap(),
        MonomialOrder::weighted_grevlex(&vars, 3, &WGREVLEX_N3_WEIGHTS).unwrap(),
        MonomialOrder::Elimination {
            block: 3,
            inner: Box::new(MonomialOrder::lex_by_rank(&[0, 1, 2, 3, 4, 5, 6])),
        },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    // 10 exponents: the elimination order uses 3 + 7 variables, the others the last 7
    #[test]
    fn monomial_order_axioms(a in exponent(10), b in exponent(10), c in exponent(10)) {
        let tail = |v: &ExponentVector| ExponentVector::new(v.as_slice()[3..].to_vec());
        for o in orders() {
            if let MonomialOrder::Elimination { .. } = o {
                check_axioms(&o, &a, &b, &c)?;
            } else {
                check_axioms(&o, &tail(&a), &tail(&b), &tail(&c))?;
            }
        }
    }
}

fn check_axioms(
    o: &MonomialOrder,
    a: &ExponentVector,
    b: &ExponentVector,
    c: &ExponentVector,
) -> Result<(), TestCaseError> {
    use std::cmp::Ordering::*;
    let one = ExponentVector::one(a.len());
    // total, antisymmetric
    prop_assert_eq!(o.cmp(a, b), o.cmp(b, a).reverse());
    prop_assert_eq!(o.cmp(a, b) == Equal, a == b);
    // well-ordering: 1 is least
    prop_assert_ne!(o.cmp(&one, a), Greater);
    // transitive
    if o.cmp(a, b) != Greater && o.cmp(b, c) != Greater {
        prop_assert_ne!(o.cmp(a, c), Greater);
    }
    // multiplicative
    prop_assert_eq!(o.cmp(&a.mul(c), &b.mul(c)), o.cmp(a, b));
    Ok(())
}
