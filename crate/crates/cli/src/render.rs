use std::fmt::Write;

use num_bigint::BigInt;
use serde_json::{json, Value};

use snc_core::complex::DeltaComplex;
use snc_core::linalg::{IntMatrix, NormalForm};

pub fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn group(nf: &NormalForm) -> Value {
    serde_json::to_value(nf).expect("normal forms serialize")
}

/// Columns of the matrix, i.e. images of the generators.
pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(
        m.columns()
            .iter()
            .map(|c| Value::Array(c.iter().map(int).collect()))
            .collect(),
    )
}

pub fn complex(c: &DeltaComplex) -> Value {
    let dims: Vec<Value> = c
        .counts()
        .iter()
        .enumerate()
        .map(|(a, _)| {
            Value::Array(
                c.simplices(a)
                    .iter()
                    .map(|s| {
                        json!({
                            "id": s.id,
                            "vertices": s.vertices.iter().map(|&v| c.simplex(0, v).id.clone()).collect::<Vec<_>>(),
                            "facets": if a == 0 {
                                Vec::new()
                            } else {
                                s.facets.iter().map(|&f| c.simplex(a - 1, f).id.clone()).collect::<Vec<_>>()
                            },
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "counts": c.counts(),
        "euler_characteristic": c.euler_characteristic(),
        "simplices": dims,
    })
}

pub fn complex_text(c: &DeltaComplex) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "simplex counts {:?}, euler characteristic {}", c.counts(), c.euler_characteristic());
    for (a, _) in c.counts().iter().enumerate() {
        for simplex in c.simplices(a) {
            let verts: Vec<&str> = simplex.vertices.iter().map(|&v| c.simplex(0, v).id.as_str()).collect();
            if a == 0 {
                let _ = writeln!(s, "  [0] {}", simplex.id);
            } else {
                let facets: Vec<&str> = simplex.facets.iter().map(|&f| c.simplex(a - 1, f).id.as_str()).collect();
                let _ = writeln!(s, "  [{a}] {} on ({}) facets ({})", simplex.id, verts.join(", "), facets.join(", "));
            }
        }
    }
    s
}

pub fn matrix_text(m: &IntMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "    [{}]", row.join(" "));
    }
    s
}
