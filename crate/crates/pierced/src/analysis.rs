//! The `analyze` report: canonical form, complexes, shelling and piercing.

use pierced_core::complex::{
    polar_complex_of, shelling_order, simplicial_complex_of, verify_shelling, ShellingVerdict, VdRule,
};
use pierced_core::ideal::{canonical_form, is_intersection_complete, IdealError};
use pierced_core::{recover_piercing_sequence, Detection, NeuralCode};
use serde_json::{json, Value};

use crate::json::*;

pub struct Analysis {
    pub report: Value,
    /// The codeword order is a shelling of the polar complex.
    pub shelling_ok: bool,
}

pub fn analyze(code: &NeuralCode) -> Result<Analysis, IdealError> {
    let n = code.n();
    let cf = canonical_form(code)?;
    let delta = simplicial_complex_of(code);
    let components: Vec<Value> = delta
        .connected_components()
        .iter()
        .map(|k| {
            let cert = k.vertex_decomposition(VdRule::Plain);
            json!({
                "facets": complex_json(k)["facets"],
                "vertex_decomposable": cert.is_some(),
                "certificate": cert.as_ref().map(certificate_json),
                "shedding_vertex_decomposable": k.is_vertex_decomposable_with(VdRule::Shedding),
            })
        })
        .collect();
    let gamma = polar_complex_of(code);
    let order = shelling_order(code);
    // Γ(C) is pure by construction, so this cannot fail
    let verdict = verify_shelling(&gamma.complex, &order).unwrap_or(ShellingVerdict::Shelling);
    let failure = match verdict {
        ShellingVerdict::Shelling => Value::Null,
        ShellingVerdict::Fails(f) => json!({
            "position": f.position,
            "earlier": f.earlier,
            "intersection": polar_facets_json(&[f.intersection], n),
        }),
    };
    let piercing = match recover_piercing_sequence(code, n, true) {
        Detection::Pierced { sequence, relabeling } => json!({
            "status": "pierced",
            "max_degree": sequence.max_degree(),
            "sequence": sequence_json(&sequence),
            "relabeling": relabeling,
        }),
        Detection::NotPierced => json!({"status": "not_pierced"}),
    };
    let report = json!({
        "code": code_json(code),
        "canonical_form": canonical_form_json(&cf),
        "cf_max_degree": cf.max_degree(),
        "intersection_complete": is_intersection_complete(code)?,
        "simplicial_complex": complex_json(&delta),
        "clique_complex": delta.is_clique_complex(),
        "components": components,
        "polar_complex": polar_facets_json(gamma.facets(), n),
        "shelling": {
            "order": polar_facets_json(&order, n),
            "verified": verdict.is_shelling(),
            "failure": failure,
        },
        "piercing": piercing,
    });
    Ok(Analysis {
        report,
        shelling_ok: verdict.is_shelling(),
    })
}
