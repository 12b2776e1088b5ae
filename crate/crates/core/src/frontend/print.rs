//! Canonical text forms. Everything printed here parses back to the same
//! value with [`parse_expression`](super::parser::parse_expression).

use std::fmt;

use crate::scalar::GaussianRational;
use crate::series::Coefficient;

fn term_string(c: &GaussianRational, legs: &[String]) -> String {
    let body = legs.join(" # ");
    let scalar_only = legs.len() == 1 && legs[0] == "1";
    if scalar_only {
        return c.to_string();
    }
    if c.is_one() {
        body
    } else if (-c).is_one() {
        format!("-{body}")
    } else {
        format!("{c}*{body}")
    }
}

/// Writes `Σ c·(leg₁ # leg₂ # …)` in term-map order, or `0`.
pub fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a GaussianRational, Vec<String>)>,
) -> fmt::Result {
    let mut first = true;
    for (c, legs) in terms {
        let s = term_string(c, &legs);
        if first {
            write!(f, "{s}")?;
            first = false;
        } else if let Some(rest) = s.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {s}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `c₀ + L*(c₁) + L^2*(c₂) + O(L^{N+1})`.
pub fn write_series<C: Coefficient>(f: &mut fmt::Formatter<'_>, coeffs: &[C]) -> fmt::Result {
    let mut parts = Vec::new();
    for (n, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        parts.push(match n {
            0 => c.to_string(),
            1 => format!("L*({c})"),
            _ => format!("L^{n}*({c})"),
        });
    }
    if parts.is_empty() {
        parts.push("0".to_string());
    }
    let marker = coeffs.len();
    write!(f, "{} + O(L^{marker})", parts.join(" + "))
}

/// Canonical model file for a presentation, its coproduct images and an
/// optional twist; [`load_model`](super::parser::load_model) reads it back.
pub fn model_file_text(
    pres: &crate::algebra::LiePresentation,
    coproducts: Option<&crate::hopf::CoproductMap>,
    twist: Option<&crate::hopf::TwistSeries>,
) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    let _ = writeln!(out, "algebra \"{}\" {{", pres.name());
    let gens = pres.generators();
    let mut i = 0;
    while i < gens.len() {
        let grade = gens[i].grade;
        let mut names = vec![gens[i].name.as_str()];
        while i + names.len() < gens.len() && gens[i + names.len()].grade == grade {
            names.push(gens[i + names.len()].name.as_str());
        }
        i += names.len();
        let _ = writeln!(out, "    generator {} : {};", names.join(", "), grade.keyword());
    }
    for ((a, b), terms) in pres.bracket_table() {
        let body: Vec<_> = terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        let _ = writeln!(out, "    bracket [{}, {}] = {};", gens[a].name, gens[b].name, Linear(pres, &body));
    }
    if let Some(delta) = coproducts {
        for (g, img) in delta.images().iter().enumerate() {
            let _ = writeln!(out, "    coproduct {} = {};", gens[g].name, img);
        }
    }
    if let Some(f) = twist {
        match f.log() {
            Some(log) => {
                let _ = writeln!(out, "    twist = exp({log});");
            }
            None => {
                let _ = writeln!(out, "    twist = {};", f.series());
            }
        }
    }
    out.push_str("}\n");
    out
}

struct Linear<'a>(&'a crate::algebra::LiePresentation, &'a [(crate::algebra::PbwMonomial, GaussianRational)]);

impl fmt::Display for Linear<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.1.iter().map(|(m, c)| (c, vec![m.display(self.0).to_string()])))
    }
}
