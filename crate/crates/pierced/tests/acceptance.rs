//! Acceptance run: one PASS/FAIL line per criterion, with timing against
//! its budget. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use pierced::counterexample;
use pierced::scan::{conjecture_scan, ScanConfig};
use pierced_core::complex::*;
use pierced_core::geometry::lp::solve;
use pierced_core::geometry::*;
use pierced_core::ideal::*;
use pierced_core::toric::*;
use pierced_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, u64, fn() -> Outcome);

fn code(n: usize, ws: &[&str]) -> NeuralCode {
    NeuralCode::from_digit_strings(n, ws).expect("valid code")
}

fn w(s: &str) -> Codeword {
    Codeword::parse_digits(s).expect("digits")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pierced(max_n: usize, max_k: usize) -> Result<Vec<(NeuralCode, PiercingSequence)>, String> {
    enumerate_pierced_codes(max_n, max_k)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())
}

const LIMITS: GbLimits = GbLimits {
    max_pairs: 1_000_000,
    max_degree: 32,
};

fn piercing_examples() -> Outcome {
    let step = |l: &str, s: &str, t: &str| PiercingStep::new(w(l), w(s), w(t));
    let base = NeuralCode::base();
    let two = code(2, &["", "1", "12", "2"]);
    let cases = [
        (&base, step("1", "", ""), two.clone()),
        (
            &two,
            step("12", "", ""),
            code(3, &["", "1", "12", "2", "123", "13", "23", "3"]),
        ),
        (
            &two,
            step("2", "1", ""),
            code(3, &["", "1", "12", "2", "123", "13"]),
        ),
        (
            &two,
            step("2", "", "1"),
            code(3, &["", "1", "12", "2", "23", "3"]),
        ),
    ];
    for (c, s, expected) in &cases {
        let got = pierce(c, s).map_err(|e| e.to_string())?;
        ensure(got == *expected, || {
            format!("pierce({c}, {s}) = {got}, expected {expected}")
        })?;
    }
    // two-step build of {∅,1,12,2,123,13}
    let target = code(3, &["", "1", "12", "2", "123", "13"]);
    let seq = PiercingSequence::new(vec![step("1", "", ""), step("2", "1", "")]);
    ensure(seq.replay().map_err(|e| e.to_string())? == target, || {
        "two-step build differs".into()
    })?;
    match recover_piercing_sequence(&target, 3, false) {
        Detection::Pierced { sequence, .. } => {
            ensure(sequence == seq, || format!("recovered {:?}", sequence.steps))?
        }
        Detection::NotPierced => return Err("two-step code not recovered".into()),
    }
    // admissibility failures
    ensure(
        !is_pierceable(&code(2, &["", "1", "2"]), &step("12", "", "")).unwrap_or(true),
        || "{∅,1,2} should not be 2-pierceable".into(),
    )?;
    ensure(
        !is_pierceable(&code(2, &["", "1", "12"]), &step("12", "", "")).unwrap_or(true),
        || "{∅,1,12} should not be 2-pierceable".into(),
    )?;
    Ok("4 piercings and the two-step build match; 2 inadmissible steps rejected".into())
}

fn order_and_shelling() -> Outcome {
    let c = code(3, &["", "1", "12", "2", "123", "23"]);
    let sorted = sort_codewords(&c);
    let expected: Vec<Codeword> = ["", "1", "12", "2", "123", "23"].iter().map(|s| w(s)).collect();
    ensure(sorted == expected, || format!("sorted order {sorted:?}"))?;
    let listed: Vec<Face> = ["---", "+--", "++-", "-+-", "+++", "-++"]
        .iter()
        .map(|s| parse_signed(s).expect("signed"))
        .collect();
    ensure(shelling_order(&c) == listed, || {
        "polar order differs from F1..F6".into()
    })?;
    let gamma = polar_complex_of(&c);
    ensure(
        verify_shelling(&gamma.complex, &listed)
            .map_err(|e| e.to_string())?
            .is_shelling(),
        || "listed order is not a shelling".into(),
    )?;
    let codes = pierced(5, 2)?;
    let failures: Vec<String> = codes
        .par_iter()
        .filter(|(c, _)| {
            !verify_shelling(&polar_complex_of(c).complex, &shelling_order(c))
                .map(|v| v.is_shelling())
                .unwrap_or(false)
        })
        .map(|(c, _)| c.to_string())
        .collect();
    ensure(failures.is_empty(), || {
        format!("{} codes fail, e.g. {}", failures.len(), failures[0])
    })?;
    Ok(format!(
        "order ∅<1<12<2<123<23; {} codes (n<=5, k<=2) shelled in codeword order",
        codes.len()
    ))
}

fn consequences() -> Outcome {
    let codes = pierced(5, 2)?;
    let rows: Vec<Result<bool, String>> = codes
        .par_iter()
        .map(|(c, _)| {
            let d = cf_max_degree(c).map_err(|e| e.to_string())?;
            ensure(d <= 2, || format!("{c}: CF degree {d}"))?;
            ensure(is_intersection_complete(c) == Ok(true), || {
                format!("{c}: not intersection complete")
            })?;
            let delta = simplicial_complex_of(c);
            ensure(delta.is_clique_complex(), || format!("{c}: not a clique complex"))?;
            let comps = delta.connected_components();
            ensure(
                comps.iter().all(SimplicialComplex::is_vertex_decomposable),
                || format!("{c}: not VD"),
            )?;
            Ok(comps
                .iter()
                .all(|k| k.is_vertex_decomposable_with(VdRule::Shedding)))
        })
        .collect();
    let mut shedding_failures = 0;
    for r in rows {
        if !r? {
            shedding_failures += 1;
        }
    }
    Ok(format!(
        "{} codes: CF degree <= 2, intersection complete, clique, VD components (shedding-vertex rule: {} codes fail, informational)",
        codes.len(),
        shedding_failures
    ))
}

fn toric_exactness() -> Outcome {
    let err = |e: ToricError| e.to_string();
    let t = ToricIdeal::new(&code(2, &["", "1", "2", "12"]), LIMITS).map_err(err)?;
    let y12 = t.monomial(&[(w("12"), 1)]).map_err(err)?;
    let y1y2 = t.monomial(&[(w("1"), 1), (w("2"), 1)]).map_err(err)?;
    let single = t.generators.len() == 1 && {
        let g = &t.generators[0];
        (g.lead == y1y2 && g.trail == y12) || (g.lead == y12 && g.trail == y1y2)
    };
    ensure(single, || "T{∅,1,2,12} is not <y1y2 - y12>".into())?;

    let full = ToricIdeal::new(&NeuralCode::full(3), LIMITS).map_err(err)?;
    let lex = full.order(&OrderSpec::CodewordLex).map_err(err)?;
    let gb = full.reduced_groebner_basis(&lex, LIMITS).map_err(err)?;
    let quad: Vec<(ExponentVector, ExponentVector)> = [
        ("12", "1", "2"),
        ("13", "1", "3"),
        ("23", "2", "3"),
        ("123", "12", "3"),
    ]
    .iter()
    .map(|(a, b, c)| {
        Ok((
            full.monomial(&[(w(a), 1)])?,
            full.monomial(&[(w(b), 1), (w(c), 1)])?,
        ))
    })
    .collect::<Result<_, ToricError>>()
    .map_err(err)?;
    let other = GroebnerBasis {
        order: lex.clone(),
        elements: buchberger(quad.clone(), &lex, LIMITS).map_err(err)?,
    };
    ensure(quad.iter().all(|(a, b)| gb.contains(a, b)), || {
        "quadrics not in T".into()
    })?;
    ensure(
        gb.elements.iter().all(|g| other.contains(&g.lead, &g.trail)),
        || "T not in quadric ideal".into(),
    )?;

    let cubic = ToricIdeal::new(&code(3, &["", "1", "2", "3", "123"]), LIMITS).map_err(err)?;
    let d_lex = cubic
        .gb_max_degree(&cubic.order(&OrderSpec::CodewordLex).map_err(err)?, LIMITS)
        .map_err(err)?;
    let wg = cubic
        .order(&OrderSpec::WeightedGrevlex(WGREVLEX_N3_WEIGHTS.to_vec()))
        .map_err(err)?;
    let d_wg = cubic.gb_max_degree(&wg, LIMITS).map_err(err)?;
    ensure(d_lex == 3 && d_wg == 3, || {
        format!("cubic code degrees {d_lex} (lex), {d_wg} (wgrevlex)")
    })?;
    Ok("<y1y2 - y12>; full 3-neuron ideal = 4 quadrics (both inclusions); cubic code degree 3 under both orders".into())
}

fn conjecture_evidence() -> Outcome {
    let r = conjecture_scan(&ScanConfig::new(4, 2)).map_err(|e| e.to_string())?;
    ensure(r.violations == 0 && r.skipped == 0, || {
        format!("{} violations, {} skipped", r.violations, r.skipped)
    })?;
    let start = Instant::now();
    let stretch = conjecture_scan(&ScanConfig::new(5, 2)).map_err(|e| e.to_string())?;
    Ok(format!(
        "{} codes (n<=4, k<=2), max degree {}, 0 violations, 0 skipped; n<=5 stretch: {} codes, {} violations, {} skipped in {:.1} s",
        r.total,
        r.max_degree,
        stretch.total,
        stretch.violations,
        stretch.skipped,
        start.elapsed().as_secs_f64()
    ))
}

fn shelling_counterexample() -> Outcome {
    let c = counterexample::run(LIMITS).map_err(|e| e.to_string())?;
    let r = &c.report;
    ensure(r.max_degree == 3 && r.cubic_count == 2, || {
        format!("degree {} with {} cubics", r.max_degree, r.cubic_count)
    })?;
    ensure(r.certified, || "basis fails its S-pair certificate".into())?;
    ensure(c.basis.elements.iter().all(Binomial::is_homogeneous), || {
        "inhomogeneous element".into()
    })?;
    ensure(r.matches_reference, || {
        "basis differs from the 17-element reference".into()
    })?;
    Ok(format!(
        "{} elements, max degree 3, 2 cubics; stretch: equals the 17-element reference set",
        r.basis.len()
    ))
}

fn nesting() -> Outcome {
    let seqs = pierced(4, 4)?;
    let pairs: usize = seqs
        .par_iter()
        .map(|(_, seq)| {
            let chain = seq.replay_chain().map_err(|e| e.to_string())?;
            for p in chain.windows(2) {
                let ok = check_nesting(&p[0], &p[1], LIMITS).map_err(|e| e.to_string())?;
                ensure(ok, || format!("T{} not in T{}", p[0], p[1]))?;
            }
            Ok(chain.len() - 1)
        })
        .collect::<Result<Vec<_>, String>>()?
        .iter()
        .sum();
    Ok(format!(
        "{} sequences, {pairs} consecutive pairs nested",
        seqs.len()
    ))
}

fn is_simplex(vertices: &[Vec<BigRational>], dim: usize) -> bool {
    if vertices.len() != dim + 1 {
        return false;
    }
    let rows: Vec<Vec<BigRational>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
        .collect();
    solve(&rows, &vec![BigRational::zero(); dim]).is_some()
}

fn hyperplane_geometry() -> Outcome {
    let seqs = pierced(4, 4)?;
    let margins: Vec<BigRational> = seqs
        .par_iter()
        .map(|(c, seq)| {
            let r = build_hyperplane_realization(seq).map_err(|e| format!("{c}: {e}"))?;
            ensure(r.dim == c.n(), || format!("{c}: dimension {}", r.dim))?;
            ensure(is_simplex(&r.bound, r.dim), || {
                format!("{c}: bound is not a simplex")
            })?;
            verify_hyperplane_realization(&r, c, FeasibilityMethod::Simplex)
                .map_err(|d| format!("{c}: {d}"))?;
            let m = nondegeneracy_margin(&r);
            ensure(m > BigRational::zero(), || format!("{c}: margin {m}"))?;
            Ok(m)
        })
        .collect::<Result<_, String>>()?;
    let least = margins.iter().min().cloned().unwrap_or_else(BigRational::zero);
    Ok(format!(
        "{} codes (n<=4, all k) realized exactly in dimension n; smallest margin {} (~{:.2e})",
        seqs.len(),
        least,
        num_traits::ToPrimitive::to_f64(&least).unwrap_or(0.0)
    ))
}

fn ball_geometry() -> Outcome {
    let seqs = pierced(4, 2)?;
    let margins: Vec<f64> = seqs
        .par_iter()
        .map(|(c, seq)| {
            let r = build_ball_realization(seq).map_err(|e| format!("{c}: {e}"))?;
            ensure(r.dim == seq.max_degree() + 1, || {
                format!("{c}: dimension {}", r.dim)
            })?;
            let v = verify_ball_realization(&r, c, 1_000_000, 0);
            ensure(v.witnesses_ok && v.witness_margin > 1e-9, || {
                format!("{c}: witnesses {v:?}")
            })?;
            ensure(v.extra.is_none(), || {
                format!("{c}: sampled extra codeword {:?}", v.extra)
            })?;
            Ok(v.witness_margin)
        })
        .collect::<Result<_, String>>()?;
    let least = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(format!(
        "{} codes (n<=4, k<=2) in dimension k+1; witness margin >= {least:.3e}; 10^6 Halton samples each found no extra codeword (probabilistic)",
        seqs.len()
    ))
}

fn random_monomial(rng: &mut ChaCha8Rng, len: usize) -> ExponentVector {
    ExponentVector::new((0..len).map(|_| rng.gen_range(0..4)).collect())
}

fn order_axioms() -> Result<usize, String> {
    let vars: Vec<Codeword> = NeuralCode::full(3).nonempty().collect();
    let orders = [
        ("lex", MonomialOrder::lex_by_codeword_order(&vars)),
        (
            "list lex",
            MonomialOrder::lex_by_list(&vars, &size_lex_codewords(3)).map_err(|e| e.to_string())?,
        ),
        (
            "wgrevlex",
            MonomialOrder::weighted_grevlex(&vars, 3, &WGREVLEX_N3_WEIGHTS).map_err(|e| e.to_string())?,
        ),
        (
            "elimination",
            MonomialOrder::Elimination {
                block: 3,
                inner: Box::new(MonomialOrder::lex_by_codeword_order(&vars)),
            },
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (name, o) in &orders {
        let len = o.arity();
        let one = ExponentVector::one(len);
        for _ in 0..1000 {
            let (a, b, c) = (
                random_monomial(&mut rng, len),
                random_monomial(&mut rng, len),
                random_monomial(&mut rng, len),
            );
            ensure(o.cmp(&a.mul(&c), &b.mul(&c)) == o.cmp(&a, &b), || {
                format!("{name}: not multiplicative")
            })?;
            ensure(o.cmp(&one, &a).is_le(), || format!("{name}: 1 is not least"))?;
            ensure(o.cmp(&a, &b) == o.cmp(&b, &a).reverse(), || {
                format!("{name}: not antisymmetric")
            })?;
        }
    }
    Ok(orders.len())
}

fn all_codes(n: usize) -> impl Iterator<Item = NeuralCode> {
    let words: Vec<Codeword> = Codeword::full(n).subsets().collect();
    (1u32..1 << words.len()).map(move |mask| {
        NeuralCode::new(
            n,
            words
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, w)| *w),
        )
        .expect("subsets of 1..=n")
    })
}

fn property_suites() -> Outcome {
    let orders = order_axioms()?;

    let codes = pierced(4, 4)?;
    let (bases, classes) = codes
        .par_iter()
        .map(|(c, _)| {
            let t = ToricIdeal::new(c, LIMITS).map_err(|e| e.to_string())?;
            let mut classes = 0;
            for spec in [
                OrderSpec::CodewordLex,
                OrderSpec::WeightedGrevlex(vec![1; (1 << c.n()) - 1]),
            ] {
                let o = t.order(&spec).map_err(|e| e.to_string())?;
                let gb = t.reduced_groebner_basis(&o, LIMITS).map_err(|e| e.to_string())?;
                gb.certify()
                    .map_err(|(i, j)| format!("{c}: S-pair ({i}, {j}) does not reduce"))?;
                classes += kernel_oracle_check(&t, &gb, 4).map_err(|e| format!("{c}: {e}"))?;
            }
            Ok((2usize, classes))
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .fold((0, 0), |(a, b), (x, y)| (a + x, b + y));

    let mut cf_codes = 0;
    for n in 1..=4 {
        let checked: Vec<Result<(), String>> = all_codes(n)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|c| {
                let cf = canonical_form(c).map_err(|e| e.to_string())?;
                for p in all_pseudo_monomials(n) {
                    let covered = cf.iter().any(|q| q.divides(&p));
                    ensure(vanishes_on(&p, c) == covered, || format!("{c}: {p}"))?;
                }
                let minimal = cf.iter().all(|a| cf.iter().all(|b| a == b || !b.divides(a)));
                ensure(minimal, || format!("{c}: not minimal"))
            })
            .collect();
        cf_codes += checked.len();
        checked.into_iter().collect::<Result<Vec<_>, _>>()?;
    }
    Ok(format!(
        "order axioms: {orders} orders x 1000 triples; {bases} bases S-pair certified; kernel oracle (degree <= 4): {classes} fibres on {} codes; CF oracle: {cf_codes} codes (n <= 4)",
        codes.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "piercing examples", 1, piercing_examples),
        (2, "order and shelling", 120, order_and_shelling),
        (3, "consequences of piercing", 300, consequences),
        (4, "toric exactness", 10, toric_exactness),
        (5, "conjecture evidence", 900, conjecture_evidence),
        (6, "shelling-order counterexample", 30, shelling_counterexample),
        (7, "nesting", 300, nesting),
        (8, "geometry, exact", 600, hyperplane_geometry),
        (9, "geometry, numeric", 600, ball_geometry),
        (10, "property suites", 600, property_suites),
    ];
    let mut timings = BTreeMap::new();
    let mut failed = 0;
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let (verdict, detail) = match &outcome {
            Ok(d) if in_time => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("over budget; {d}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {verdict} {name} [{:.2} s / {budget} s]: {detail}",
            elapsed.as_secs_f64()
        );
        timings.insert(id, elapsed);
    }
    let total: Duration = timings.values().sum();
    println!(
        "acceptance: {} of 10 passed in {:.1} s",
        10 - failed,
        total.as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
