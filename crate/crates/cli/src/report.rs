//! JSON rendering of exact values. Everything is ordered, so identical inputs
//! give byte-identical output.

use serde_json::{json, Map, Value};
use superlie_core::algebra::AlgebraElement;
use superlie_core::invariants::VerificationReport;
use superlie_core::rational;
use superlie_core::uea::word_text;
use superlie_core::{LoopGenerator, Matrix, Rational, SuperAlgebra, UeaElement, Weight};

pub fn q(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn weight(w: &Weight) -> Value {
    vector(&w.0)
}

/// Sparse `[row, col, "c"]` triplets plus the shape.
pub fn matrix(m: &Matrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.triplets().iter().map(|(r, c, x)| json!([r, c, q(x)])).collect::<Vec<_>>(),
    })
}

pub fn element(alg: &SuperAlgebra, x: &AlgebraElement) -> Value {
    Value::String(alg.element_to_string(x))
}

pub fn uea(alg: &SuperAlgebra, u: &UeaElement) -> Value {
    let terms: Vec<Value> = u
        .terms()
        .map(|(w, c)| {
            json!({
                "word": w.iter().map(|g| g.label(alg)).collect::<Vec<_>>(),
                "text": if w.is_empty() { "1".to_string() } else { word_text(alg, w) },
                "coeff": q(c),
            })
        })
        .collect();
    json!({ "text": u.display(alg), "terms": terms })
}

fn residual_list(alg: &SuperAlgebra, list: &[(LoopGenerator, UeaElement)]) -> Value {
    Value::Array(
        list.iter()
            .map(|(g, r)| {
                json!({
                    "generator": g.label(alg),
                    "zero": r.is_zero(),
                    "residual": uea(alg, r),
                })
            })
            .collect(),
    )
}

pub fn verification(alg: &SuperAlgebra, rep: &VerificationReport) -> Value {
    json!({
        "pass": rep.pass(),
        "checked_against": rep.checked_against.iter().map(|g| g.label(alg)).collect::<Vec<_>>(),
        "residuals": residual_list(alg, &rep.residuals),
        "informational": residual_list(alg, &rep.informational),
    })
}

/// Labels `v1⊗v3` etc. for the tensor basis.
pub fn tensor_labels(dims: &[usize]) -> Vec<String> {
    let total: usize = dims.iter().product();
    (0..total)
        .map(|mut f| {
            let mut parts = vec![String::new(); dims.len()];
            for k in (0..dims.len()).rev() {
                parts[k] = format!("v{}", f % dims[k] + 1);
                f /= dims[k];
            }
            parts.join("⊗")
        })
        .collect()
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
