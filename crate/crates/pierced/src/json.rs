//! JSON interchange forms.
//!
//! Codes are `{"neurons": n, "codewords": [[...], ...]}` with `∅` as `[]`;
//! a bare array of codewords is also accepted on input. Rationals are
//! strings such as `"3/7"`.

use std::fmt::Display;

use pierced_core::complex::{signed_string, Face, SimplicialComplex, VdCertificate};
use pierced_core::geometry::{BallRealization, BallVerdict, HyperplaneRealization, Side};
use pierced_core::ideal::{CanonicalForm, PseudoMonomial, RelationType};
use pierced_core::{CodeError, Codeword, NeuralCode, PiercingSequence, PiercingStep};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug)]
pub enum InputError {
    Json(serde_json::Error),
    Code(CodeError),
    Invalid(String),
}

impl Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Json(e) => write!(f, "malformed JSON: {e}"),
            InputError::Code(e) => write!(f, "invalid code: {e}"),
            InputError::Invalid(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for InputError {}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Json(e)
    }
}

impl From<CodeError> for InputError {
    fn from(e: CodeError) -> Self {
        InputError::Code(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub neurons: usize,
    pub codewords: Vec<Vec<usize>>,
}

pub fn word_json(c: Codeword) -> Vec<usize> {
    c.neurons().collect()
}

pub fn code_json(code: &NeuralCode) -> CodeJson {
    CodeJson {
        neurons: code.n(),
        codewords: code.iter().map(word_json).collect(),
    }
}

fn word_from(ns: &[usize]) -> Result<Codeword, InputError> {
    if ns.contains(&0) {
        return Err(InputError::Invalid(
            "neuron 0 is reserved for homogenization".into(),
        ));
    }
    Ok(Codeword::try_from_neurons(ns.iter().copied())?)
}

/// A parsed code together with the order its codewords were listed in.
#[derive(Clone, Debug)]
pub struct ListedCode {
    pub code: NeuralCode,
    pub listed: Vec<Codeword>,
}

pub fn parse_code(text: &str) -> Result<ListedCode, InputError> {
    let value: Value = serde_json::from_str(text)?;
    let (n, words): (Option<usize>, Vec<Vec<usize>>) = match value {
        Value::Array(_) => (None, serde_json::from_value(value)?),
        _ => {
            let c: CodeJson = serde_json::from_value(value)?;
            (Some(c.neurons), c.codewords)
        }
    };
    let listed = words
        .iter()
        .map(|w| word_from(w))
        .collect::<Result<Vec<_>, _>>()?;
    let n = n.unwrap_or_else(|| listed.iter().map(|c| c.max_neuron()).max().unwrap_or(0).max(1));
    Ok(ListedCode {
        code: NeuralCode::new(n, listed.iter().copied())?,
        listed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub lambda: Vec<usize>,
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub steps: Vec<StepJson>,
}

pub fn step_json(s: &PiercingStep) -> StepJson {
    StepJson {
        lambda: word_json(s.lambda),
        sigma: word_json(s.sigma),
        tau: word_json(s.tau),
    }
}

pub fn sequence_json(seq: &PiercingSequence) -> SequenceJson {
    SequenceJson {
        steps: seq.steps.iter().map(step_json).collect(),
    }
}

pub fn parse_step(s: &StepJson) -> Result<PiercingStep, InputError> {
    Ok(PiercingStep::new(
        word_from(&s.lambda)?,
        word_from(&s.sigma)?,
        word_from(&s.tau)?,
    ))
}

pub fn parse_sequence(text: &str) -> Result<PiercingSequence, InputError> {
    let s: SequenceJson = serde_json::from_str(text)?;
    Ok(PiercingSequence::new(
        s.steps.iter().map(parse_step).collect::<Result<_, _>>()?,
    ))
}

pub fn pseudo_monomial_json(pm: &PseudoMonomial) -> Value {
    let kind = match pm.kind() {
        RelationType::Type1 => 1,
        RelationType::Type2 => 2,
        RelationType::Type3 => 3,
    };
    json!({"on": word_json(pm.on), "off": word_json(pm.off), "text": pm.to_string(), "type": kind})
}

pub fn canonical_form_json(cf: &CanonicalForm) -> Value {
    Value::Array(cf.iter().map(pseudo_monomial_json).collect())
}

pub fn face_json(f: Face) -> Vec<usize> {
    f.vertices().collect()
}

pub fn complex_json(k: &SimplicialComplex) -> Value {
    json!({"facets": k.facets().iter().map(|f| face_json(*f)).collect::<Vec<_>>()})
}

pub fn polar_facets_json(facets: &[Face], n: usize) -> Vec<String> {
    facets.iter().map(|f| signed_string(*f, n)).collect()
}

pub fn certificate_json(c: &VdCertificate) -> Value {
    match c {
        VdCertificate::Simplex(f) => json!({"simplex": f.map(face_json)}),
        VdCertificate::Shed {
            vertex,
            link,
            deletion,
        } => {
            json!({"vertex": vertex, "link": certificate_json(link), "deletion": certificate_json(deletion)})
        }
    }
}

fn rationals<T: Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn hyperplane_json(r: &HyperplaneRealization) -> Value {
    let halfspaces: Vec<Value> = r
        .halfspaces
        .iter()
        .enumerate()
        .map(|(i, h)| {
            json!({
                "neuron": i + 1,
                "normal": rationals(&h.normal),
                "offset": h.offset.to_string(),
                "side": match h.side { Side::Above => ">", Side::Below => "<" },
            })
        })
        .collect();
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|(c, p)| json!({"codeword": word_json(*c), "point": rationals(p)}))
        .collect();
    let trace: Vec<Value> = r
        .trace
        .iter()
        .map(|t| {
            json!({
                "p": rationals(&t.p),
                "p_prime": rationals(&t.p_prime),
                "apex": rationals(&t.apex),
                "a": t.a.to_string(),
                "height": t.height.to_string(),
            })
        })
        .collect();
    json!({
        "dim": r.dim,
        "halfspaces": halfspaces,
        "bound": r.bound.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
        "witnesses": witnesses,
        "trace": trace,
    })
}

pub fn ball_json(r: &BallRealization) -> Value {
    let balls: Vec<Value> = r
        .balls
        .iter()
        .enumerate()
        .map(|(i, b)| json!({"neuron": i + 1, "center": b.center, "radius": b.radius}))
        .collect();
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|(c, p)| json!({"codeword": word_json(*c), "point": p}))
        .collect();
    json!({"dim": r.dim, "tolerance": r.tolerance, "balls": balls, "witnesses": witnesses})
}

pub fn ball_verdict_json(v: &BallVerdict) -> Value {
    json!({
        "witnesses": {
            "passed": v.witnesses_ok,
            "margin": v.witness_margin,
            "first_failure": v.first_bad_witness.map(word_json),
        },
        "sampling": {
            "kind": "probabilistic (Halton quasi-random points in the padded bounding box)",
            "samples": v.samples,
            "extra_codeword": v.extra.map(word_json),
            "distinct_codewords_seen": v.sampled_words,
        },
        "passed": v.passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_round_trip() {
        let l = parse_code(r#"{"neurons": 3, "codewords": [[], [1], [1,2], [2], [1,2,3], [1,3]]}"#).unwrap();
        assert_eq!(l.code.len(), 6);
        let back = serde_json::to_string(&code_json(&l.code)).unwrap();
        assert_eq!(
            back,
            r#"{"neurons":3,"codewords":[[],[1],[1,2],[2],[1,2,3],[1,3]]}"#
        );
        let bare = parse_code("[[1,2],[],[1]]").unwrap();
        assert_eq!(bare.code.n(), 2);
        assert_eq!(bare.listed[0], Codeword::from_neurons([1, 2]));
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(parse_code("[[1,"), Err(InputError::Json(_))));
        assert!(matches!(parse_code("[[0,1]]"), Err(InputError::Invalid(_))));
        assert!(matches!(
            parse_code(r#"{"neurons": 1, "codewords": [[2]]}"#),
            Err(InputError::Code(_))
        ));
    }

    #[test]
    fn sequence_round_trip() {
        let text = r#"{"steps":[{"lambda":[1],"sigma":[],"tau":[]},{"lambda":[1,2],"sigma":[],"tau":[]}]}"#;
        let seq = parse_sequence(text).unwrap();
        assert_eq!(seq.replay().unwrap().len(), 8);
        assert_eq!(serde_json::to_string(&sequence_json(&seq)).unwrap(), text);
    }
}
