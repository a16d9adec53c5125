use pierced_core::ideal::*;
use pierced_core::{Codeword, NeuralCode};

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
        .unwrap()
    })
}

// Every vanishing pseudo-monomial is a multiple of a canonical-form element,
// and canonical-form elements vanish and do not divide one another.
#[test]
fn canonical_form_is_complete_and_minimal() {
    for n in 1..=4 {
        for code in all_codes(n) {
            let cf = canonical_form(&code).unwrap();
            for p in all_pseudo_monomials(n) {
                let covered = cf.iter().any(|q| q.divides(&p));
                assert_eq!(vanishes_on(&p, &code), covered, "{code}: {p}");
            }
            for (i, a) in cf.iter().enumerate() {
                assert!(vanishes_on(a, &code));
                assert!(
                    cf.iter().enumerate().all(|(j, b)| i == j || !b.divides(a)),
                    "{code}"
                );
            }
        }
    }
}

#[test]
fn intersection_completeness_routes_agree() {
    for n in 1..=4 {
        for code in all_codes(n) {
            assert!(is_intersection_complete(&code).is_ok(), "{code}");
        }
    }
}
