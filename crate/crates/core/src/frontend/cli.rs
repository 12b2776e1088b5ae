//! The `kappa` command line: one subcommand per computation.
//!
//! Exit status 0 on pass or solution, 2 on obstruction or failed check,
//! 1 on usage, parse or input errors.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{validate_presentation, LiePresentation};
use crate::frontend::parser::{load_model, parse_expression_with_legs, parse_twist, ModelFile};
use crate::frontend::report::{self, ConstraintsAt, Report, Status};
use crate::hopf::{
    check_coassociativity, check_homomorphism, check_intertwiner, check_modified_ybe, check_quasi_coassoc,
    check_quasitriangularity, coassociator, conjugate_by_twist, twisted_rmatrix, CoproductMap, Residues, TwistSeries,
};
use crate::models::{
    bicross_verify, casimir_centrality, deformed_casimir, inverse_map_check, quantum_map, KappaModel, ModelId,
    D2_R2_CANDIDATES,
};
use crate::series::{series_exp, series_truncate, DeformationSeries, TensorSeries};
use crate::solver::{log_series, solve_rmatrix_through, solve_twist_through, AnsatzConstraints, OrderResult};
use crate::tensor::TensorElement;

#[derive(Parser, Debug)]
#[command(
    name = "kappa",
    version,
    about = "Exact 1/kappa expansions of deformed Poincare coproducts, twists and R-matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Built-in model: d2-classical or d4-classical.
    #[arg(long, conflicts_with = "file")]
    pub model: Option<String>,
    /// Model file in the `algebra "name" { ... }` format.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Truncation order in 1/kappa.
    #[arg(long)]
    pub order: Option<usize>,
    /// Emit the structured report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct AnsatzArgs {
    /// Maximum number of rotation and boost factors per tensor term.
    #[arg(long)]
    pub lorentz_max: Option<usize>,
    /// Maximum word length per tensor leg.
    #[arg(long)]
    pub word_max: Option<usize>,
    /// Restrict the ansatz to rotation-invariant tensors.
    #[arg(long)]
    pub o3_invariant: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Pi0,
    Coproducts,
    Opposite,
    QuantumMap,
    Casimir,
    ModelFile,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hom,
    Coassoc,
    Intertwiner,
    Ybe,
    Bicross,
    QuantumMap,
    Casimir,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Jacobi identity of the bracket table.
    Validate {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Print series expansions.
    Expand {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Solve order by order for a twist reproducing the coproducts.
    SolveTwist {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        ansatz: AnsatzArgs,
    },
    /// Solve order by order for the logarithm of an R-matrix.
    SolveRmatrix {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        ansatz: AnsatzArgs,
    },
    /// Run an identity check suite.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Twist expression, e.g. `exp(L*(P0 # P1))`.
        #[arg(long)]
        twist: Option<String>,
        #[command(flatten)]
        ansatz: AnsatzArgs,
    },
    /// Coassociator of a twist over the primitive coproduct.
    Coassociator {
        #[command(flatten)]
        model: ModelArgs,
        /// Twist expression, e.g. `exp(L*(P0 # P1))`.
        #[arg(long)]
        twist: Option<String>,
    },
}

impl Command {
    fn model_args(&self) -> &ModelArgs {
        match self {
            Command::Validate { model }
            | Command::Expand { model, .. }
            | Command::SolveTwist { model, .. }
            | Command::SolveRmatrix { model, .. }
            | Command::Check { model, .. }
            | Command::Coassociator { model, .. } => model,
        }
    }
}

/// A usage or input problem; exit status 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Report, UsageError>;

enum Source {
    Builtin(KappaModel),
    File(ModelFile),
}

struct Loaded {
    source: Source,
    order: usize,
}

impl Loaded {
    fn name(&self) -> String {
        match &self.source {
            Source::Builtin(m) => m.id.name().to_string(),
            Source::File(f) => f.ast.name.clone(),
        }
    }

    fn presentation(&self) -> &Arc<LiePresentation> {
        match &self.source {
            Source::Builtin(m) => &m.presentation,
            Source::File(f) => &f.presentation,
        }
    }

    fn coproducts(&self) -> Result<CoproductMap, UsageError> {
        Ok(match &self.source {
            Source::Builtin(m) => m.target_coproducts.clone(),
            Source::File(f) => f.coproducts.truncated(self.order)?,
        })
    }

    fn builtin(&self, what: &str) -> Result<&KappaModel, UsageError> {
        match &self.source {
            Source::Builtin(m) => Ok(m),
            Source::File(_) => Err(UsageError(format!("{what} needs a built-in model (--model)"))),
        }
    }

    fn twist(&self, expr: Option<&str>) -> Result<Option<TwistSeries>, UsageError> {
        if let Some(text) = expr {
            let f = parse_twist(text, self.presentation(), self.order)?;
            if f.truncation() < self.order {
                return Err(UsageError(format!(
                    "twist known through order {} but order {} requested",
                    f.truncation(),
                    self.order
                )));
            }
            return Ok(Some(f));
        }
        match &self.source {
            Source::File(m) => m.twist.as_ref().map(|f| truncate_twist(f, self.order)).transpose(),
            Source::Builtin(_) => Ok(None),
        }
    }
}

fn truncate_twist(f: &TwistSeries, n: usize) -> Result<TwistSeries, UsageError> {
    Ok(match f.log() {
        Some(log) => TwistSeries::exponential(series_truncate(log, n)?)?,
        None => TwistSeries::from_series(series_truncate(f.series(), n)?)?,
    })
}

fn load(args: &ModelArgs) -> Result<Loaded, UsageError> {
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let file = load_model(&text).map_err(|e| UsageError(format!("{}:{e}", path.display())))?;
        let order = args.order.unwrap_or(file.truncation);
        if order > file.truncation {
            return Err(UsageError(format!(
                "order {order} requested but {} is known through order {}",
                path.display(),
                file.truncation
            )));
        }
        return Ok(Loaded { source: Source::File(file), order });
    }
    let id = ModelId::parse(args.model.as_deref().unwrap_or("d2-classical"))?;
    let order = args.order.unwrap_or(id.default_order());
    Ok(Loaded { source: Source::Builtin(id.build(order)), order })
}

fn constraints_fn(a: &AnsatzArgs) -> impl Fn(usize) -> AnsatzConstraints + '_ {
    move |k| AnsatzConstraints::for_order(k).with_bounds(a.lorentz_max, a.word_max).o3(a.o3_invariant)
}

fn add_series_lines(rep: &mut Report, label: &str, s: &impl std::fmt::Display) {
    rep.line(format!("  {label} = {s}"));
}

fn residues_report(rep: &mut Report, parts: Vec<Residues>) {
    let mut passed = true;
    let mut payload = Vec::new();
    for r in &parts {
        passed &= r.passed();
        rep.lines.extend(report::residue_lines(r));
        payload.push(report::residues(r));
    }
    rep.status = Status::from_pass(passed);
    rep.payload = json!({ "checks": payload });
}

fn validate(l: &Loaded) -> CmdResult {
    let mut rep = Report::new("validate", &l.name(), l.order);
    let pres = l.presentation();
    let v = validate_presentation(pres);
    let gens: Vec<Value> =
        pres.generators().iter().map(|g| json!({ "name": g.name, "grade": g.grade.keyword() })).collect();
    let failures: Vec<Value> = v
        .failures
        .iter()
        .map(|f| {
            let (a, b, c) = f.triple;
            json!({
                "triple": [&pres.generator(a).name, &pres.generator(b).name, &pres.generator(c).name],
                "residue": report::algebra(&f.residue),
            })
        })
        .collect();
    rep.line(format!("  {} generators, {} nonzero brackets", pres.len(), pres.bracket_table().count()));
    for f in &v.failures {
        let (a, b, c) = f.triple;
        rep.line(format!(
            "  Jacobi fails on ({}, {}, {}): {}",
            pres.generator(a).name,
            pres.generator(b).name,
            pres.generator(c).name,
            f.residue
        ));
    }
    rep.status = Status::from_pass(v.passed());
    rep.payload = json!({ "generators": gens, "jacobi_failures": failures });
    Ok(rep)
}

fn expand(l: &Loaded, what: What) -> CmdResult {
    let mut rep = Report::new("expand", &l.name(), l.order);
    let pres = l.presentation();
    let name = |g: usize| pres.generator(g).name.clone();
    let mut payload = serde_json::Map::new();
    match what {
        What::Pi0 => {
            let m = l.builtin("expand --what pi0")?;
            add_series_lines(&mut rep, "Pi0", &m.pi0);
            add_series_lines(&mut rep, "Pi0^-1", &m.pi0_inv);
            payload.insert("pi0".into(), report::series(&m.pi0));
            payload.insert("pi0_inverse".into(), report::series(&m.pi0_inv));
        }
        What::Coproducts | What::Opposite => {
            let delta = l.coproducts()?;
            let delta = if what == What::Opposite { delta.opposite() } else { delta };
            let key = if what == What::Opposite { "opposite" } else { "coproducts" };
            let mut images = serde_json::Map::new();
            for (g, img) in delta.images().iter().enumerate() {
                add_series_lines(&mut rep, &format!("D({})", name(g)), img);
                images.insert(name(g), report::series(img));
            }
            payload.insert(key.into(), Value::Object(images));
        }
        What::QuantumMap => {
            let m = l.builtin("expand --what quantum-map")?;
            let qm = quantum_map(m)?;
            add_series_lines(&mut rep, "log Pi0", &qm.log_pi0);
            add_series_lines(&mut rep, "cP0", &qm.curly_p0);
            payload.insert("log_pi0".into(), report::series(&qm.log_pi0));
            payload.insert("curly_p0".into(), report::series(&qm.curly_p0));
            let mut spatial = serde_json::Map::new();
            for (&k, s) in m.spatial.iter().zip(&qm.curly_p) {
                add_series_lines(&mut rep, &format!("c{}", name(k)), s);
                spatial.insert(name(k), report::series(s));
            }
            payload.insert("curly_p".into(), Value::Object(spatial));
        }
        What::Casimir => {
            let m = l.builtin("expand --what casimir")?;
            let c = deformed_casimir(m)?;
            add_series_lines(&mut rep, "C", &c);
            payload.insert("casimir".into(), report::series(&c));
        }
        What::ModelFile => {
            let delta = l.coproducts()?;
            let twist = l.twist(None)?;
            let text = crate::frontend::print::model_file_text(pres, Some(&delta), twist.as_ref());
            rep.lines.extend(text.lines().map(str::to_string));
            payload.insert("model_file".into(), json!(text));
        }
    }
    rep.payload = Value::Object(payload);
    Ok(rep)
}

fn require_positive(order: usize) -> Result<(), UsageError> {
    if order == 0 {
        return Err(UsageError("order must be at least 1".into()));
    }
    Ok(())
}

fn particulars(results: &[OrderResult]) -> Vec<TensorElement> {
    results.iter().map_while(|r| r.particular().cloned()).collect()
}

fn solve_status(results: &[OrderResult], target: usize) -> Status {
    if results.iter().any(|r| !r.verification.passed) {
        Status::Fail
    } else if results.len() == target && results.iter().all(|r| r.outcome.is_solution()) {
        Status::Solution
    } else {
        Status::Obstruction
    }
}

fn solve_twist(l: &Loaded, a: &AnsatzArgs) -> CmdResult {
    require_positive(l.order)?;
    let mut rep = Report::new("solve-twist", &l.name(), l.order);
    let target = l.coproducts()?;
    let results = solve_twist_through(&target, l.order, constraints_fn(a))?;
    rep.constraints =
        Some(results.iter().map(|r| ConstraintsAt { order: r.equation.order, constraints: r.constraints }).collect());
    for r in &results {
        rep.lines.extend(report::order_lines(r, "f"));
    }
    rep.status = solve_status(&results, l.order);
    let logs = particulars(&results);
    let mut payload = json!({ "orders": results.iter().map(report::order_result).collect::<Vec<_>>() });
    if !logs.is_empty() {
        let k = logs.len();
        let pres = l.presentation();
        let f = TwistSeries::exponential(log_series(pres, &logs, k))?;
        let twisted = conjugate_by_twist(&f, &CoproductMap::primitive(pres, k), k)?;
        let reproduces = twisted == target.truncated(k)?;
        rep.line(format!(
            "  exp(sum L^k f_k) conjugating the primitive coproduct {} the target through order {k}",
            if reproduces { "reproduces" } else { "does NOT reproduce" }
        ));
        payload["reproduces_target"] = json!({ "through": k, "passed": reproduces });
        if !reproduces {
            rep.status = Status::Fail;
        }
    }
    if let Some(r) = results.last().filter(|r| !r.outcome.is_solution()) {
        rep.line(format!("  no twist at order {} within the ansatz bounds", r.equation.order));
    }
    rep.payload = payload;
    Ok(rep)
}

fn rmatrix_series(pres: &Arc<LiePresentation>, logs: &[TensorElement]) -> Result<TensorSeries, UsageError> {
    Ok(series_exp(&log_series(pres, logs, logs.len()))?)
}

fn solve_rmatrix(l: &Loaded, a: &AnsatzArgs) -> CmdResult {
    require_positive(l.order)?;
    let mut rep = Report::new("solve-rmatrix", &l.name(), l.order);
    let delta = l.coproducts()?;
    let pres = l.presentation();
    let results = solve_rmatrix_through(&delta, l.order, constraints_fn(a))?;
    rep.constraints =
        Some(results.iter().map(|r| ConstraintsAt { order: r.equation.order, constraints: r.constraints }).collect());
    for r in &results {
        rep.lines.extend(report::order_lines(r, "r"));
    }
    rep.status = solve_status(&results, l.order);
    let mut payload = json!({ "orders": results.iter().map(report::order_result).collect::<Vec<_>>() });
    let logs = particulars(&results);
    if !logs.is_empty() {
        let k = logs.len();
        let r = rmatrix_series(pres, &logs)?;
        let check = check_intertwiner(&r, &delta.truncated(k)?)?;
        rep.lines.extend(report::residue_lines(&check));
        payload["intertwiner"] = report::residues(&check);
        if !check.passed() {
            rep.status = Status::Fail;
        }
    }
    let is_d2 = matches!(&l.source, Source::Builtin(m) if m.id == ModelId::D2Classical);
    if let (true, Some(second)) = (is_d2, results.get(1)) {
        let mut forms = Vec::new();
        for (label, text) in D2_R2_CANDIDATES {
            let candidate = match parse_expression_with_legs(text, pres, 2)? {
                crate::frontend::ParsedValue::Tensor(t) => t,
                other => return Err(UsageError(format!("candidate is not a tensor: {other}"))),
            };
            let solves = second.equation.is_solved_by(&candidate);
            let antisymmetric_match = second.particular() == Some(&candidate);
            rep.line(format!(
                "  candidate {label} form r2 = {text}: {}{}",
                if solves { "solves the order-2 equation" } else { "does not solve the order-2 equation" },
                if antisymmetric_match { " (equals the antisymmetric particular solution)" } else { "" }
            ));
            forms.push(json!({
                "form": label,
                "expression": text,
                "solves": solves,
                "equals_particular": antisymmetric_match,
            }));
        }
        payload["candidate_r2_forms"] = Value::Array(forms);
    }
    rep.payload = payload;
    Ok(rep)
}

fn trivial_phi(pres: &Arc<LiePresentation>, n: usize) -> TensorSeries {
    DeformationSeries::one(&TensorElement::unit(pres, 3), n)
}

/// R from the solver through `order`, or an error naming the obstruction.
fn solved_rmatrix(l: &Loaded, a: &AnsatzArgs, delta: &CoproductMap) -> Result<Option<TensorSeries>, UsageError> {
    let results = solve_rmatrix_through(delta, l.order, constraints_fn(a))?;
    let logs = particulars(&results);
    if logs.len() < l.order {
        return Ok(None);
    }
    Ok(Some(rmatrix_series(l.presentation(), &logs)?))
}

fn check(l: &Loaded, suite: Suite, twist: Option<&str>, a: &AnsatzArgs) -> CmdResult {
    let mut rep = Report::new("check", &l.name(), l.order);
    let n = l.order;
    let pres = l.presentation();
    let twist = l.twist(twist)?;
    let parts = match suite {
        Suite::Hom => vec![check_homomorphism(&l.coproducts()?)?],
        Suite::Coassoc => vec![check_coassociativity(&l.coproducts()?)?],
        Suite::Intertwiner | Suite::Ybe => {
            let (r, delta, phi) = match &twist {
                Some(f) => {
                    let delta = conjugate_by_twist(f, &CoproductMap::primitive(pres, n), n)?;
                    let phi = coassociator(f, &CoproductMap::primitive(pres, n))?;
                    (twisted_rmatrix(f), delta, phi)
                }
                None => {
                    require_positive(n)?;
                    let delta = l.coproducts()?;
                    let Some(r) = solved_rmatrix(l, a, &delta)? else {
                        rep.status = Status::Fail;
                        rep.line("  no R-matrix through the requested order within the ansatz bounds");
                        rep.payload = json!({ "checks": [] });
                        return Ok(rep);
                    };
                    (r, delta, trivial_phi(pres, n))
                }
            };
            if suite == Suite::Intertwiner {
                vec![check_intertwiner(&r, &delta)?]
            } else {
                vec![
                    check_quasi_coassoc(&delta, &phi)?,
                    check_quasitriangularity(&r, &phi, &delta)?,
                    check_modified_ybe(&r, &phi)?,
                ]
            }
        }
        Suite::Bicross => vec![bicross_verify(l.builtin("check --suite bicross")?)?],
        Suite::QuantumMap => vec![inverse_map_check(l.builtin("check --suite quantum-map")?)?],
        Suite::Casimir => vec![casimir_centrality(l.builtin("check --suite casimir")?)?],
    };
    residues_report(&mut rep, parts);
    rep.payload["suite"] = json!(format!("{suite:?}").to_lowercase());
    Ok(rep)
}

fn coassociator_cmd(l: &Loaded, twist: Option<&str>) -> CmdResult {
    let mut rep = Report::new("coassociator", &l.name(), l.order);
    let Some(f) = l.twist(twist)? else {
        return Err(UsageError("coassociator needs --twist or a model file declaring a twist".into()));
    };
    let pres = l.presentation();
    let n = l.order;
    let base = CoproductMap::primitive(pres, n);
    let phi = coassociator(&f, &base)?;
    let trivial = phi == trivial_phi(pres, n);
    let delta = conjugate_by_twist(&f, &base, n)?;
    let quasi = check_quasi_coassoc(&delta, &phi)?;
    add_series_lines(&mut rep, "phi", &phi);
    rep.line(format!("  coassociator {}", if trivial { "trivial: the twist is a cocycle" } else { "nontrivial" }));
    rep.lines.extend(report::residue_lines(&quasi));
    rep.status = Status::from_pass(quasi.passed());
    rep.payload = json!({
        "twist": report::series(f.series()),
        "phi": report::series(&phi),
        "trivial": trivial,
        "quasi_coassociativity": report::residues(&quasi),
    });
    Ok(rep)
}

/// Parses `args` (without the program name) and runs the command.
pub fn execute(cli: &Cli) -> CmdResult {
    let l = load(cli.command.model_args())?;
    match &cli.command {
        Command::Validate { .. } => validate(&l),
        Command::Expand { what, .. } => expand(&l, *what),
        Command::SolveTwist { ansatz, .. } => solve_twist(&l, ansatz),
        Command::SolveRmatrix { ansatz, .. } => solve_rmatrix(&l, ansatz),
        Command::Check { suite, twist, ansatz, .. } => check(&l, *suite, twist.as_deref(), ansatz),
        Command::Coassociator { twist, .. } => coassociator_cmd(&l, twist.as_deref()),
    }
}

/// Runs the command line `argv` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = cli.command.model_args().json;
    match execute(&cli) {
        Ok(rep) => {
            let text = if json { rep.to_json() + "\n" } else { rep.to_text() };
            let _ = out.write_all(text.as_bytes());
            rep.status.exit_code()
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
