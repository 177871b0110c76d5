//! Command-line front end. [`run`] is pure: it maps a configuration and the
//! input text to an exit code and the complete output.
//!
//! Exit codes: 0 success, 1 a `check` that is not linearizable, 2 invalid
//! input. Only `check` ever exits with 1.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::criteria::{check_with, fels_tensors, linear_check, CheckOptions, LinearSystemData};
use crate::decomposition::extract_decomposition;
use crate::error::{Error, Result};
use crate::io::{
    decomposition_json, emit_report, file_kind, human_report, parse_system, parse_transform, parse_vector_field,
    system_to_string, FileKind,
};
use crate::jets::{decomposition_from_transform, induced_system, prolong2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Check,
    Induce,
    Decompose,
    Fels,
    Prolong,
    Linear,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Check,
        Subcommand::Induce,
        Subcommand::Decompose,
        Subcommand::Fels,
        Subcommand::Prolong,
        Subcommand::Linear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Check => "check",
            Subcommand::Induce => "induce",
            Subcommand::Decompose => "decompose",
            Subcommand::Fels => "fels",
            Subcommand::Prolong => "prolong",
            Subcommand::Linear => "linear",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub subcommand: Subcommand,
    /// A file path, or `-` for standard input.
    pub input_path: String,
    pub json: bool,
    pub probe_trials: usize,
    pub seed: u64,
}

impl CliConfig {
    pub fn new(subcommand: Subcommand, input_path: impl Into<String>) -> CliConfig {
        CliConfig {
            subcommand,
            input_path: input_path.into(),
            json: false,
            probe_trials: 8,
            seed: 0,
        }
    }

    fn options(&self) -> CheckOptions {
        CheckOptions {
            probe_trials: self.probe_trials,
            seed: self.seed,
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serializable");
    out.push('\n');
    out
}

/// Runs one subcommand on the given file contents.
pub fn run(config: &CliConfig, contents: &str) -> (i32, String) {
    let result = match config.subcommand {
        Subcommand::Check => run_check(config, contents),
        Subcommand::Induce => run_induce(config, contents).map(|s| (0, s)),
        Subcommand::Decompose => run_decompose(config, contents).map(|s| (0, s)),
        Subcommand::Fels => run_fels(config, contents).map(|s| (0, s)),
        Subcommand::Prolong => run_prolong(config, contents).map(|s| (0, s)),
        Subcommand::Linear => run_linear(config, contents).map(|s| (0, s)),
    };
    match result {
        Ok(r) => r,
        Err(e) if config.json => (2, pretty(&json!({ "error": e.to_string() }))),
        Err(e) => (2, format!("error: {e}\n")),
    }
}

fn run_check(config: &CliConfig, contents: &str) -> Result<(i32, String)> {
    let sys = parse_system(contents)?;
    let outcome = check_with(&sys, &config.options());
    let code = match &outcome {
        Ok(r) if r.linearizable() => 0,
        _ => 1,
    };
    let out = if config.json {
        emit_report(sys.m(), &outcome)
    } else {
        human_report(&outcome)
    };
    Ok((code, out))
}

fn run_induce(config: &CliConfig, contents: &str) -> Result<String> {
    let t = parse_transform(contents)?;
    let sys = induced_system(&t)?;
    if config.json {
        let f: Vec<String> = sys.rhs().iter().map(|f| f.to_string()).collect();
        return Ok(pretty(&json!({ "m": sys.m(), "F": f })));
    }
    Ok(system_to_string(&sys))
}

/// Accepts a system file, or a transform file whose induced decomposition
/// is read off the square functions.
fn run_decompose(config: &CliConfig, contents: &str) -> Result<String> {
    let outcome = match file_kind(contents) {
        Some(FileKind::Transform) => Ok(decomposition_from_transform(&parse_transform(contents)?)?),
        _ => extract_decomposition(&parse_system(contents)?),
    };
    if config.json {
        let v = match &outcome {
            Ok(d) => json!({
                "m": d.m(),
                "structure_ok": true,
                "decomposition": decomposition_json(d),
                "diagnostic": "",
            }),
            Err(diag) => json!({
                "structure_ok": false,
                "decomposition": Value::Null,
                "diagnostic": diag.to_string(),
            }),
        };
        return Ok(pretty(&v));
    }
    let d = match outcome {
        Ok(d) => d,
        Err(diag) => return Ok(format!("not-cubic-structured: {diag}\n")),
    };
    let m = d.m();
    let mut out = String::new();
    for j in 1..=m {
        let _ = writeln!(out, "G({j}) = {}", d.g(j));
    }
    for j in 1..=m {
        for l in 1..=m {
            let _ = writeln!(out, "H({j},{l}) = {}", d.h(j, l));
        }
    }
    for j in 1..=m {
        for a in 1..=m {
            for b in a..=m {
                let _ = writeln!(out, "L({j},{a},{b}) = {}", d.l(j, a, b));
            }
        }
    }
    for a in 1..=m {
        for b in a..=m {
            let _ = writeln!(out, "M({a},{b}) = {}", d.mm(a, b));
        }
    }
    Ok(out)
}

fn run_fels(config: &CliConfig, contents: &str) -> Result<String> {
    let sys = parse_system(contents)?;
    let t = fels_tensors(&sys)?;
    let m = t.m();
    let mut s_entries = Vec::new();
    for j in 1..=m {
        for i in 1..=m {
            for k in 1..=m {
                for l in 1..=m {
                    s_entries.push(([j, i, k, l], t.s(j, i, k, l)));
                }
            }
        }
    }
    let mut p_entries = Vec::new();
    for j in 1..=m {
        for i in 1..=m {
            p_entries.push(([j, i], t.p(j, i)));
        }
    }
    if config.json {
        let s: Vec<Value> = s_entries
            .iter()
            .map(|([j, i, k, l], v)| json!({ "j": j, "i": i, "k": k, "l": l, "value": v.to_string() }))
            .collect();
        let p: Vec<Value> = p_entries
            .iter()
            .map(|([j, i], v)| json!({ "j": j, "i": i, "value": v.to_string() }))
            .collect();
        return Ok(pretty(&json!({
            "m": m,
            "S": s,
            "P": p,
            "S_vanishes": t.s_vanishes(),
            "P_vanishes": t.p_vanishes(),
        })));
    }
    let mut out = String::new();
    for ([j, i, k, l], v) in &s_entries {
        if !v.is_zero() {
            let _ = writeln!(out, "S({j},{i},{k},{l}) = {v}");
        }
    }
    for ([j, i], v) in &p_entries {
        if !v.is_zero() {
            let _ = writeln!(out, "P({j},{i}) = {v}");
        }
    }
    let _ = writeln!(out, "S vanishes: {}", t.s_vanishes());
    let _ = writeln!(out, "P vanishes: {}", t.p_vanishes());
    Ok(out)
}

fn run_prolong(config: &CliConfig, contents: &str) -> Result<String> {
    let v = parse_vector_field(contents)?;
    let p = prolong2(&v);
    if config.json {
        let r1: Vec<String> = p.r1.iter().map(|f| f.to_string()).collect();
        let r2: Vec<String> = p.r2.iter().map(|f| f.to_string()).collect();
        return Ok(pretty(&json!({ "m": v.m(), "R1": r1, "R2": r2 })));
    }
    let mut out = String::new();
    for (j, f) in p.r1.iter().enumerate() {
        let _ = writeln!(out, "R1({}) = {f}", j + 1);
    }
    for (j, f) in p.r2.iter().enumerate() {
        let _ = writeln!(out, "R2({}) = {f}", j + 1);
    }
    Ok(out)
}

fn run_linear(config: &CliConfig, contents: &str) -> Result<String> {
    let sys = parse_system(contents)?;
    let data = LinearSystemData::from_system(&sys).ok_or_else(|| {
        Error::InvalidInput("not a linear system: every F must be affine in y and y_x with coefficients in x".into())
    })?;
    let v = linear_check(&data)?;
    let verdict = if v.linearizable { "linearizable" } else { "obstructed" };
    if config.json {
        let candidates: Vec<String> = v.candidates.iter().map(|c| c.to_string()).collect();
        return Ok(pretty(&json!({
            "m": data.m(),
            "verdict": verdict,
            "B": v.b.as_ref().map(|b| b.to_string()),
            "candidates": candidates,
        })));
    }
    let mut out = format!("verdict: {verdict}\n");
    match &v.b {
        Some(b) => {
            let _ = writeln!(out, "B = {b}");
        }
        None => {
            for (l, c) in v.candidates.iter().enumerate() {
                let _ = writeln!(out, "B({}) = {c}", l + 1);
            }
        }
    }
    Ok(out)
}
