//! JSON payloads. Every number is written as a decimal string; object keys
//! come out sorted because `serde_json` maps are ordered.

use serde_json::{json, Value};

use crate::bass::{IsotypicBlock, R2Class};
use crate::exactnum::format_rational;
use crate::global::{At2, GenusSymbol, SigmaReport};
use crate::localclass::LocalClassLabel;
use crate::padic::LMat;
use crate::symbols::Sign;

pub fn num(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn sign(s: Sign) -> Value {
    num(s.value())
}

pub fn label_json(l: &LocalClassLabel) -> Value {
    json!({ "label": l.kind.name(), "rank": num(l.rank) })
}

pub fn r2_json(c: &R2Class) -> Value {
    json!({ "class": c.to_string(), "r": num(c.r), "s": num(c.s), "odd_diag": c.odd_diag })
}

pub fn symbol_json(s: &GenusSymbol) -> Value {
    let at_2 = match &s.at_2 {
        At2::Local(l) => label_json(l),
        At2::R2(c) => r2_json(c),
    };
    json!({
        "p": num(s.p),
        "n": num(s.n),
        "ring": s.ring.name(),
        "det": s.det.to_string(),
        "at_p": label_json(&s.at_p),
        "at_2": at_2,
        "norm": s.norm.to_string(),
    })
}

pub fn sigma_json(r: &SigmaReport) -> Value {
    json!({
        "p": num(r.p),
        "n": num(r.n),
        "nonempty": r.nonempty,
        "forced_det": r.forced_det.as_ref().map(|d| d.to_string()),
        "sigma1": num(r.sigma1_count),
        "sigma2": r.sigma2_count.map(num),
        "total": num(r.total),
    })
}

pub fn lmat_json(m: &LMat) -> Value {
    Value::Array(
        m.iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|e| {
                            let k = e.to_kelem();
                            json!([format_rational(&k.a), format_rational(&k.b)])
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn block_json(b: &IsotypicBlock) -> Value {
    json!({
        "order_index": num(b.order_index),
        "rank": num(b.gram.len()),
        "gram": lmat_json(&b.gram),
        "pieces": b.pieces.iter().map(num).collect::<Vec<_>>(),
    })
}

/// Human-readable rendering of an `[a, b]` matrix.
pub fn matrix_table(m: &[Vec<(String, String)>]) -> String {
    let cells: Vec<Vec<String>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|(a, b)| match (a.as_str(), b.as_str()) {
                    (a, "0") => a.to_string(),
                    ("0", b) => format!("{b}·√-p"),
                    (a, b) if b.starts_with('-') => format!("{a}{b}·√-p"),
                    (a, b) => format!("{a}+{b}·√-p"),
                })
                .collect()
        })
        .collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [ {} ]", padded.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
