//! Exact JSON rendering: integers stay JSON numbers, proper fractions become
//! "p/q" strings, diagrams are sorted vertex lists, and motivic expressions
//! are maps symbol -> {num, den} with L-polynomials as coefficient arrays.

use num::{BigInt, BigRational};
use serde_json::{json, Map, Value};

use nashseq_core::motivic::{LPoly, MotivicExpr};
use nashseq_core::nash::NashReport;
use nashseq_core::staircase::{Dimension, HilbertData, Staircase};

pub fn rational(r: &BigRational) -> Value {
    if r.is_integer() {
        bigint(&r.to_integer())
    } else {
        Value::String(r.to_string())
    }
}

pub fn bigint(n: &BigInt) -> Value {
    match i64::try_from(n.clone()) {
        Ok(v) => json!(v),
        Err(_) => Value::String(n.to_string()),
    }
}

pub fn staircase(s: &Staircase) -> Value {
    Value::Array(
        s.vertices()
            .iter()
            .map(|v| Value::Array(v.0.iter().map(|&e| json!(e)).collect()))
            .collect(),
    )
}

pub fn hilbert(h: &HilbertData) -> Value {
    json!({
        "values": h.values,
        "poly": h.polynomial.iter().map(rational).collect::<Vec<_>>(),
        "dim": match h.dimension {
            Dimension::MinusInfinity => Value::Null,
            Dimension::Finite(d) => json!(d),
        },
        "mult": h.multiplicity,
    })
}

pub fn nash_report(r: &NashReport, bound_d: Value, bound_status: &str) -> Value {
    json!({
        "steps": r.steps.iter().map(|s| json!({
            "m": s.multiplicity,
            "hilbert": hilbert(&s.hilbert),
            "diagram": staircase(&s.diagram),
            "smooth": s.smooth,
        })).collect::<Vec<_>>(),
        "m_sequence": r.multiplicities(),
        "stabilized_at": r.stabilized_at,
        "smooth_from": r.smooth_from,
        "bound_D": bound_d,
        "bound_D_status": bound_status,
    })
}

fn lpoly(p: &LPoly) -> Value {
    let deg = match p.degree() {
        None => return json!([]),
        Some(d) => d,
    };
    let mut coeffs = vec![json!(0); deg as usize + 1];
    for (e, c) in p.terms() {
        coeffs[e as usize] = bigint(c);
    }
    Value::Array(coeffs)
}

pub fn motivic_expr(e: &MotivicExpr) -> Value {
    let mut map = Map::new();
    for (sym, rf) in e.terms() {
        let name = if sym.is_unit() {
            "1".to_string()
        } else {
            sym.factors()
                .iter()
                .map(|&(p, k, e)| {
                    if e == 1 {
                        format!("V({p},{k})")
                    } else {
                        format!("V({p},{k})^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        map.insert(
            name,
            json!({
                "num": lpoly(rf.num()),
                "den": lpoly(rf.den()),
            }),
        );
    }
    Value::Object(map)
}
