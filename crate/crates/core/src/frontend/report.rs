//! Structured reports: exact coefficient strings and monomial tuples.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, PbwMonomial};
use crate::hopf::Residues;
use crate::scalar::GaussianRational;
use crate::series::{Coefficient, DeformationSeries};
use crate::solver::{AnsatzConstraints, OrderResult, SolveOutcome, SystemShape};
use crate::tensor::TensorElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Solution,
    Obstruction,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Solution => 0,
            Status::Fail | Status::Obstruction => 2,
        }
    }

    pub fn from_pass(passed: bool) -> Status {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Solution => "solution",
            Status::Obstruction => "obstruction",
        };
        write!(f, "{s}")
    }
}

/// One command result. `lines` is the human rendering and is not part of
/// the structured document.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub model: String,
    pub order: usize,
    pub constraints: Option<Vec<ConstraintsAt>>,
    pub status: Status,
    pub payload: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintsAt {
    pub order: usize,
    #[serde(flatten)]
    pub constraints: AnsatzConstraints,
}

impl Report {
    pub fn new(command: &str, model: &str, order: usize) -> Self {
        Report {
            command: command.to_string(),
            model: model.to_string(),
            order,
            constraints: None,
            status: Status::Pass,
            payload: json!({}),
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} order {}: {}\n", self.command, self.model, self.order, self.status);
        if let Some(cs) = &self.constraints {
            for c in cs {
                let k = &c.constraints;
                out.push_str(&format!(
                    "  ansatz at order {}: momentum degree {}, lorentz <= {}, word length <= {}, o3 {}\n",
                    c.order,
                    k.momentum_degree,
                    k.lorentz_degree_max,
                    k.max_word_length,
                    if k.o3_invariant { "on" } else { "off" }
                ));
            }
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

pub fn coefficient(c: &GaussianRational) -> Value {
    Value::String(c.to_exact_string())
}

fn monomial(pres: &crate::algebra::LiePresentation, m: &PbwMonomial) -> Value {
    Value::Array(m.factors().iter().map(|&g| Value::String(pres.generator(g).name.clone())).collect())
}

/// `[{coefficient, monomials: [[leg factors], …]}]` in canonical order.
pub fn tensor(t: &TensorElement) -> Value {
    let pres = t.presentation();
    Value::Array(
        t.terms()
            .iter()
            .map(|(k, c)| {
                json!({
                    "coefficient": coefficient(c),
                    "monomials": k.iter().map(|m| monomial(pres, m)).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn algebra(a: &AlgebraElement) -> Value {
    tensor(&TensorElement::from_algebra(a))
}

/// Types whose values have a structured form.
pub trait Encode {
    fn encode(&self) -> Value;
}

impl Encode for TensorElement {
    fn encode(&self) -> Value {
        tensor(self)
    }
}

impl Encode for AlgebraElement {
    fn encode(&self) -> Value {
        algebra(self)
    }
}

/// `{truncation, orders: [{order, terms}]}`, nonzero orders only.
pub fn series<C: Coefficient + Encode>(s: &DeformationSeries<C>) -> Value {
    let orders: Vec<Value> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| json!({ "order": n, "terms": c.encode() }))
        .collect();
    json!({ "truncation": s.truncation(), "orders": orders, "text": s.to_string() })
}

pub fn residues(r: &Residues) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| json!({ "label": e.label, "order": e.order, "residue": tensor(&e.residue), "text": e.residue.to_string() }))
        .collect();
    json!({ "check": r.check, "truncation": r.truncation, "passed": r.passed(), "residues": entries })
}

/// Human lines for a residue set.
pub fn residue_lines(r: &Residues) -> Vec<String> {
    let mut out =
        vec![format!("  {}: {} through order {}", r.check, if r.passed() { "pass" } else { "FAIL" }, r.truncation)];
    for e in &r.entries {
        out.push(format!("    {} @ order {}: {}", e.label, e.order, e.residue));
    }
    out
}

/// The structured form of one solved order.
pub fn order_result(res: &OrderResult) -> Value {
    let shape = SystemShape::from(&res.system);
    let mut v = json!({
        "order": res.equation.order,
        "constraints": res.constraints,
        "shape": shape,
        "verified": res.verification.passed,
        "verification_failures": res.verification.failures,
    });
    match &res.outcome {
        SolveOutcome::Solution { kernel_basis, .. } => {
            let p = res.particular().expect("solution");
            v["status"] = json!(Status::Solution);
            v["particular"] = tensor(p);
            v["particular_text"] = json!(p.to_string());
            v["kernel"] = Value::Array(kernel_basis.iter().map(tensor).collect());
            v["kernel_text"] = json!(kernel_basis.iter().map(|k| k.to_string()).collect::<Vec<_>>());
        }
        SolveOutcome::Obstruction { certificate, pairing, blocked } => {
            v["status"] = json!(Status::Obstruction);
            v["certificate"] = json!({
                "pairing": coefficient(pairing),
                "rows": certificate
                    .iter()
                    .zip(blocked)
                    .map(|((r, c), label)| json!({ "row": r, "label": label, "coefficient": coefficient(c) }))
                    .collect::<Vec<_>>(),
            });
        }
    }
    if let Some((_, outcome, verification)) = &res.antisymmetric {
        v["antisymmetric_particular"] = json!(outcome.is_solution());
        v["antisymmetric_verified"] = json!(verification.passed);
    }
    v
}

/// Human lines for one solved order.
pub fn order_lines(res: &OrderResult, symbol: &str) -> Vec<String> {
    let n = res.equation.order;
    let shape = SystemShape::from(&res.system);
    let mut out =
        vec![format!("  order {n}: {} unknowns, {} equations, {}", shape.unknowns, shape.rows, res.verification)];
    match &res.outcome {
        SolveOutcome::Solution { kernel_basis, .. } => {
            out.push(format!("    {symbol}{n} = {}", res.particular().expect("solution")));
            out.push(format!("    kernel dimension {}", kernel_basis.len()));
            for (j, k) in kernel_basis.iter().enumerate() {
                out.push(format!("      k{j} = {k}"));
            }
        }
        SolveOutcome::Obstruction { certificate, pairing, blocked } => {
            out.push(format!("    obstruction: certificate pairs to {pairing} with the right-hand side"));
            for ((_, c), label) in certificate.iter().zip(blocked) {
                out.push(format!("      {c} x [{label}]"));
            }
        }
    }
    out
}
