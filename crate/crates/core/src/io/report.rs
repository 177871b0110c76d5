//! JSON rendering of check results. Object keys come out sorted, so the
//! output is byte-stable.

use serde_json::{json, Value};

use crate::algebra::RationalFunction;
use crate::criteria::{ResidualEntry, ResidualReport, Residuals, Verdict};
use crate::decomposition::{CubicDecomposition, StructureDiagnostic};

fn s(f: &RationalFunction) -> Value {
    Value::String(f.to_string())
}

pub fn decomposition_json(d: &CubicDecomposition) -> Value {
    let r = 1..=d.m();
    json!({
        "G": r.clone().map(|j| s(d.g(j))).collect::<Vec<_>>(),
        "H": r.clone().map(|j| r.clone().map(|l| s(d.h(j, l))).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "L": r.clone().map(|j| r.clone().map(|a| r.clone().map(|b| s(d.l(j, a, b))).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "M": r.clone().map(|a| r.clone().map(|b| s(d.mm(a, b))).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn entries_json(entries: &[ResidualEntry], keys: &[&str]) -> Value {
    entries
        .iter()
        .map(|e| {
            let mut obj = serde_json::Map::new();
            for (k, i) in keys.iter().zip(&e.index) {
                obj.insert(k.to_string(), json!(i));
            }
            obj.insert("value".into(), s(&e.value));
            Value::Object(obj)
        })
        .collect()
}

pub fn residuals_json(r: &Residuals) -> Value {
    match r {
        Residuals::Lie { lie1, lie2 } => json!({ "lie1": s(lie1), "lie2": s(lie2) }),
        Residuals::Families { i, ii, iii, iv } => json!({
            "I": entries_json(i, &["j", "l1", "l2"]),
            "II": entries_json(ii, &["j", "l1", "l2"]),
            "III": entries_json(iii, &["j", "l1", "l2", "l3"]),
            "IV": entries_json(iv, &["l1", "l2", "l3"]),
        }),
    }
}

fn label(family: &str, index: &[usize]) -> String {
    if index.is_empty() {
        family.to_string()
    } else {
        let idx: Vec<String> = index.iter().map(|i| i.to_string()).collect();
        format!("{family}({})", idx.join(","))
    }
}

/// One-line summary of a successful check: what failed, and where the
/// coefficient tensors are singular.
pub fn diagnostic_line(r: &ResidualReport) -> String {
    let mut out = match r.nonzero() {
        [] => "all residuals vanish identically".to_string(),
        nz => format!("{} nonzero residual(s), first {}", nz.len(), label(nz[0].0, &nz[0].1)),
    };
    let singular = r.singular_factors();
    if !singular.is_empty() {
        let loci: Vec<String> = singular.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("; generic result, coefficients singular where {} = 0", loci.join(" * ")));
    }
    out
}

pub fn report_json(m: usize, outcome: &Result<ResidualReport, StructureDiagnostic>) -> Value {
    match outcome {
        Ok(r) => json!({
            "m": m,
            "mode": r.mode(),
            "structure_ok": true,
            "decomposition": decomposition_json(&r.decomposition),
            "residuals": residuals_json(&r.residuals),
            "verdict": r.verdict().as_str(),
            "diagnostic": diagnostic_line(r),
        }),
        Err(diag) => json!({
            "m": m,
            "mode": "structure-reject",
            "structure_ok": false,
            "decomposition": Value::Null,
            "residuals": Value::Null,
            "verdict": Verdict::NotCubicStructured.as_str(),
            "diagnostic": diag.to_string(),
        }),
    }
}

/// Pretty-printed JSON report, newline-terminated.
pub fn emit_report(m: usize, outcome: &Result<ResidualReport, StructureDiagnostic>) -> String {
    let mut out = serde_json::to_string_pretty(&report_json(m, outcome)).expect("serializable");
    out.push('\n');
    out
}

/// Human-readable report: nonzero residuals only, then the verdict.
pub fn human_report(outcome: &Result<ResidualReport, StructureDiagnostic>) -> String {
    match outcome {
        Ok(r) => {
            let mut out = String::new();
            let entries = r.entries();
            for (family, index) in r.nonzero() {
                let e = entries
                    .iter()
                    .find(|(f, e)| f == family && &e.index == index)
                    .expect("listed residual exists");
                out.push_str(&format!("{} = {}\n", label(family, index), e.1.value));
            }
            out.push_str(&format!("verdict: {} ({})\n", r.verdict().as_str(), r.mode()));
            out.push_str(&format!("diagnostic: {}\n", diagnostic_line(r)));
            out
        }
        Err(diag) => format!(
            "verdict: {}\ndiagnostic: {}\n",
            Verdict::NotCubicStructured.as_str(),
            diag
        ),
    }
}
