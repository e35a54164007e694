use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use solvcoh::catalog::{self, Built};
use solvcoh::cohomology::cohomology as compute_cohomology;
use solvcoh::corpus::{run_corpus, symmetry_trials, Status};
use solvcoh::deformations::{
    cartan_complement, check_prop62, deform as deform_at, nilshadow as compute_nilshadow, verify_th_invariance,
    DeformationDirection, ExtensionData, WedgeMap,
};
use solvcoh::filiform::{filiform_cohomology_diagram, gamma_s_n};
use solvcoh::gamma::total_cohomology;
use solvcoh::rootsys::{chi_polytope, verify_kostant, RootSystem, RootType};
use solvcoh::weights::chi;
use solvcoh::{Character, Error, LieAlgebra, LieModule, RatMatrix, Rational};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
}

type CliResult<T> = Result<T, CliError>;

/// A rendered report in all three formats; `failed` marks a completed run
/// whose checks did not all pass.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub csv: String,
    pub failed: bool,
}

pub fn core_exit_code(e: &Error) -> u8 {
    match e {
        Error::TheoremCheck(_) | Error::Internal(_) => 3,
        _ => 2,
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Resolves a catalog name or a JSON file path.
pub fn load(spec: &str) -> CliResult<Built> {
    let path = PathBuf::from(spec);
    if path.is_file() || spec.ends_with(".json") {
        let algebra = LieAlgebra::from_json(&read(&path)?)?;
        return Ok(Built { name: spec.to_string(), algebra, toral_rank: None });
    }
    Ok(catalog::build(spec)?)
}

fn parse_rational(s: &str) -> CliResult<Rational> {
    Rational::from_str(s.trim()).map_err(|_| CliError::Core(Error::Parse { line: 0, reason: format!("bad rational {s:?}") }))
}

fn value_rational(v: &Value) -> CliResult<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(CliError::Core(Error::Parse { line: 0, reason: format!("expected a rational, found {v}") })),
    }
}

fn value_vector(v: &Value) -> CliResult<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| CliError::Core(Error::Parse { line: 0, reason: "expected an array".into() }))?
        .iter()
        .map(value_rational)
        .collect()
}

fn value_matrix(v: &Value) -> CliResult<RatMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::Core(Error::Parse { line: 0, reason: "expected a matrix".into() }))?
        .iter()
        .map(value_vector)
        .collect::<CliResult<Vec<_>>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::DimensionMismatch("matrix is not square".into()).into());
    }
    Ok(RatMatrix::from_rows(rows))
}

fn parse_json(text: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), reason: e.to_string() }.into())
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn catalog() -> CliResult<Output> {
    let entries = catalog::entries();
    let mut text = String::new();
    let mut csv = String::from("name,params,note\n");
    for e in &entries {
        let _ = writeln!(text, "{:<20} {:<42} {}", e.name, e.params, e.note);
        let _ = writeln!(csv, "{},\"{}\",{}", e.name, e.params, e.note);
    }
    Ok(Output { text, json: envelope("catalog", json!({ "entries": entries })), csv, failed: false })
}

pub fn analyze(spec: &str) -> CliResult<Output> {
    let b = load(spec)?;
    let s = &b.algebra;
    let derived: Vec<usize> = s.derived_series().iter().map(|x| x.dim()).collect();
    let lower: Vec<usize> = s.lower_central_series().iter().map(|x| x.dim()).collect();
    let solvable = s.is_solvable();
    let nil = if solvable { Some(s.nilradical()?) } else { None };
    let cartan = s.cartan_subalgebra().ok();
    let weights = if solvable { chi(s, &LieModule::adjoint(s)).ok() } else { None };
    let mut text = String::new();
    let _ = writeln!(text, "algebra      {}", b.name);
    let _ = writeln!(text, "dim          {}", s.dim());
    let _ = writeln!(text, "basis        {}", s.labels().join(" "));
    let _ = writeln!(text, "solvable     {solvable}");
    let _ = writeln!(text, "nilpotent    {}", s.is_nilpotent());
    let _ = writeln!(text, "derived      {}", joined(&derived));
    let _ = writeln!(text, "lower        {}", joined(&lower));
    if let Some(n) = &nil {
        let _ = writeln!(text, "nilradical   dim {}", n.dim());
    }
    if let Some(c) = &cartan {
        let _ = writeln!(text, "cartan       dim {}", c.dim());
    }
    match &weights {
        Some(w) => {
            for (c, m) in w.iter() {
                let _ = writeln!(text, "weight       {c} x{m}");
            }
        }
        None => text.push_str("weight       not split over Q\n"),
    }
    let mut csv = String::from("key,value\n");
    let _ = writeln!(csv, "dim,{}", s.dim());
    let _ = writeln!(csv, "solvable,{solvable}");
    let _ = writeln!(csv, "nilpotent,{}", s.is_nilpotent());
    let _ = writeln!(csv, "derived,{}", joined(&derived));
    let _ = writeln!(csv, "lower,{}", joined(&lower));
    if let Some(n) = &nil {
        let _ = writeln!(csv, "nilradical,{}", n.dim());
    }
    let json = envelope(
        "analyze",
        json!({
            "algebra": b.name,
            "structure": s,
            "solvable": solvable,
            "nilpotent": s.is_nilpotent(),
            "derived_series": derived,
            "lower_central_series": lower,
            "nilradical": nil.as_ref().map(|n| n.basis().to_vec()),
            "cartan": cartan.as_ref().map(|c| c.basis().to_vec()),
            "adjoint_weights": weights,
        }),
    );
    Ok(Output { text, json, csv, failed: false })
}

fn read_module(l: &LieAlgebra, path: &Path) -> CliResult<LieModule> {
    let v = parse_json(&read(path)?)?;
    let dim = v["dim"].as_u64().ok_or_else(|| CliError::Core(Error::Parse { line: 0, reason: "missing \"dim\"".into() }))?
        as usize;
    let rho = v["rho"]
        .as_array()
        .ok_or_else(|| CliError::Core(Error::Parse { line: 0, reason: "missing \"rho\"".into() }))?
        .iter()
        .map(value_matrix)
        .collect::<CliResult<Vec<_>>>()?;
    Ok(LieModule::new(l, dim, rho)?)
}

fn cochain_label(s: &LieAlgebra, mask: u32, a: usize, m: usize) -> String {
    let parts: Vec<String> = (0..s.dim()).filter(|i| mask >> i & 1 == 1).map(|i| format!("{}*", s.labels()[i])).collect();
    let form = if parts.is_empty() { "1".to_string() } else { parts.join("^") };
    if m > 1 { format!("{form}(x)v{}", a + 1) } else { form }
}

pub fn cohomology(
    spec: &str,
    character: Option<&str>,
    module: Option<&Path>,
    degree: Option<usize>,
    dims_only: bool,
) -> CliResult<Output> {
    let b = load(spec)?;
    let s = &b.algebra;
    let v = match (character, module) {
        (Some(c), _) => {
            let values = c.split(',').map(parse_rational).collect::<CliResult<Vec<_>>>()?;
            LieModule::from_character(&Character::new(s, values)?)
        }
        (None, Some(p)) => read_module(s, p)?,
        (None, None) => LieModule::trivial(s),
    };
    let coh = compute_cohomology(s, &v)?;
    let dims = coh.dims();
    if let Some(p) = degree {
        if p >= dims.len() {
            return Err(CliError::Usage(format!("degree {p} exceeds dimension {}", s.dim())));
        }
    }
    let degrees: Vec<usize> = match degree {
        Some(p) => vec![p],
        None => (0..dims.len()).collect(),
    };
    let m = v.dim();
    let mut text = String::new();
    let mut csv = String::from("degree,dim\n");
    let mut spaces = Vec::new();
    for &p in &degrees {
        let _ = writeln!(text, "H^{p} = {}", dims[p]);
        let _ = writeln!(csv, "{p},{}", dims[p]);
        if !dims_only {
            let subsets = coh.complex.exterior().subsets(p);
            for rep in coh.spaces[p].representatives_dense() {
                let terms: Vec<String> = rep
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| format!("{x} {}", cochain_label(s, subsets[i / m], i % m, m)))
                    .collect();
                let _ = writeln!(text, "    {}", terms.join(" + "));
            }
            spaces.push(&coh.spaces[p]);
        }
    }
    let picked: Vec<usize> = degrees.iter().map(|&p| dims[p]).collect();
    let mut body = json!({ "algebra": b.name, "degrees": degrees, "dims": picked });
    if !dims_only {
        body["representatives"] = json!(spaces);
    }
    Ok(Output { text, json: envelope("cohomology", body), csv, failed: false })
}

pub fn gamma(spec: &str, degree: Option<usize>) -> CliResult<Output> {
    let b = load(spec)?;
    let r = total_cohomology(&b.algebra)?;
    let failed = r.check_inclusion().is_err();
    let mut text = String::new();
    for d in r.degrees.iter().filter(|d| degree.is_none_or(|p| p == d.degree)) {
        let _ = writeln!(text, "p = {}  TH = {}", d.degree, d.total);
        for (c, m) in &d.survivors {
            let _ = writeln!(text, "    {c}  dim {m}");
        }
    }
    for v in &r.violations {
        let _ = writeln!(text, "violation: degree {} character {} dim {}", v.degree, v.character, v.dim);
    }
    let csv = r.to_csv();
    let json = envelope("gamma", json!({ "algebra": b.name, "total": r.total_dims(), "report": r }));
    Ok(Output { text, json, csv, failed })
}

pub fn nilshadow(spec: &str) -> CliResult<Output> {
    let b = load(spec)?;
    let ns = compute_nilshadow(&b.algebra)?;
    let th = verify_th_invariance(&b.algebra)?;
    let mut text = String::new();
    let _ = writeln!(text, "nilradical dim {}, complement dim {}", ns.nilradical.dim(), ns.complement.len());
    text.push_str("changed constants (1-based):\n");
    for c in &ns.change_log {
        let _ = writeln!(text, "    [{}, {}] -> e{}: {} => {}", c.i, c.j, c.k, c.old, c.new);
    }
    text.push_str("nilshadow brackets:\n");
    for (i, j, k, c) in ns.shadow.structure_constants() {
        let l = ns.shadow.labels();
        let _ = writeln!(text, "    [{}, {}] = {} {}", l[i], l[j], c, l[k]);
    }
    let _ = writeln!(text, "TH      {}", joined(&th.total));
    let _ = writeln!(text, "Betti   {}", joined(&th.shadow_betti));
    let _ = writeln!(text, "presentations checked: {}", th.presentations.len());
    let mut csv = String::from("i,j,k,old,new\n");
    for c in &ns.change_log {
        let _ = writeln!(csv, "{},{},{},{},{}", c.i, c.j, c.k, c.old, c.new);
    }
    let json = envelope("nilshadow", json!({ "algebra": b.name, "nilshadow": ns, "certificate": th }));
    Ok(Output { text, json, csv, failed: false })
}

fn parse_grid(spec: &str) -> CliResult<Vec<Rational>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("grid {spec:?} is not start:end:step")));
    }
    let (start, end, step) = (parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?);
    if !step.is_positive() {
        return Err(CliError::Usage("grid step must be positive".into()));
    }
    let mut out = Vec::new();
    let mut t = start;
    while t <= end && out.len() < 1000 {
        out.push(t.clone());
        t = &t + &step;
    }
    Ok(out)
}

fn read_direction(e: &ExtensionData, path: Option<&Path>) -> CliResult<DeformationDirection> {
    let Some(path) = path else {
        // default: the semisimple parts of α, an elementary direction
        let beta = e.alpha.iter().map(solvcoh::linalg::semisimple_part).collect::<Result<Vec<_>, _>>()?;
        return Ok(DeformationDirection::with_zero_tau(e, beta)?);
    };
    let v = parse_json(&read(path)?)?;
    let beta = v["beta"]
        .as_array()
        .ok_or_else(|| CliError::Core(Error::Parse { line: 0, reason: "missing \"beta\"".into() }))?
        .iter()
        .map(value_matrix)
        .collect::<CliResult<Vec<_>>>()?;
    let mut entries = Vec::new();
    if let Some(tau) = v["tau"].as_array() {
        for t in tau {
            let i = t[0].as_u64().unwrap_or(0) as usize;
            let j = t[1].as_u64().unwrap_or(0) as usize;
            if i == 0 || j == 0 {
                return Err(Error::Parse { line: 0, reason: "tau indices are 1-based".into() }.into());
            }
            entries.push((i - 1, j - 1, value_vector(&t[2])?));
        }
    }
    let tau = WedgeMap::from_entries(e.a.dim(), e.h.dim(), entries)?;
    Ok(DeformationDirection::new(e, beta, tau)?)
}

pub fn deform(spec: &str, direction: Option<&Path>, t: &str, grid: Option<&str>) -> CliResult<Output> {
    let b = load(spec)?;
    let s = &b.algebra;
    let nil = s.nilradical()?;
    let a = cartan_complement(s, &nil)?;
    let e = ExtensionData::from_split(s, &nil, &a)?;
    let d = read_direction(&e, direction)?;
    let prop = check_prop62(&e, &d)?;
    let ts = match grid {
        Some(g) => parse_grid(g)?,
        None => vec![parse_rational(t)?],
    };
    let mut text = String::new();
    let _ = writeln!(text, "conditions {:?}  consistent {}", prop.conditions, prop.consistent());
    let mut csv = String::from("t,total\n");
    let mut samples = Vec::new();
    for t in &ts {
        let g = deform_at(&e, &d, t)?;
        let total = total_cohomology(&g)?.total_dims();
        let _ = writeln!(text, "t = {t}  TH = {}", joined(&total));
        let _ = writeln!(csv, "{t},{}", joined(&total));
        samples.push(json!({ "t": t, "algebra": g, "total": total }));
    }
    let json = envelope("deform", json!({ "algebra": b.name, "prop62": prop, "samples": samples }));
    Ok(Output { text, json, csv, failed: !prop.consistent() })
}

pub fn borel(kind: &str, polytope: bool, with_cartan: bool, grid: bool) -> CliResult<Output> {
    let r = RootSystem::new(RootType::from_str(kind)?);
    let rep = verify_kostant(&r)?;
    let poly = chi_polytope(&r, with_cartan);
    let gamma = rep.gamma_union();
    let mut text = String::new();
    let _ = writeln!(text, "type {}  |W| = {}  lengths {}", r.kind, rep.weyl_order, joined(&rep.length_profile));
    let _ = writeln!(text, "Betti(n) {}", joined(&rep.nilradical_betti));
    for (p, g) in rep.gamma.iter().enumerate() {
        let pts: Vec<String> = g.iter().map(|w| format!("({},{})", w.0, w.1)).collect();
        let _ = writeln!(text, "Γ∘^{p} = {{{}}}", pts.join(", "));
    }
    if polytope || grid {
        text.push_str(&poly.text_grid());
    }
    let csv = poly.to_csv(&gamma);
    let json = envelope("borel", json!({ "kostant": rep, "polytope": poly }));
    Ok(Output { text, json, csv, failed: false })
}

pub fn filiform(n: usize, grid: bool, gamma: bool) -> CliResult<Output> {
    let d = filiform_cohomology_diagram(n)?;
    let mut text = String::new();
    let _ = writeln!(text, "Betti(f_{n}) {}", joined(&d.betti));
    if grid {
        text.push_str(&d.text_grid());
    } else {
        for p in &d.points {
            let _ = writeln!(text, "p = {}  ({}, {})  x{}  {:?}", p.degree, p.weight.0, p.weight.1, p.multiplicity, p.marker);
        }
    }
    let mut body = json!({ "diagram": d });
    if gamma {
        let g = gamma_s_n(n)?;
        let _ = writeln!(text, "TH(s_{n}) {}", joined(&g.report.total_dims()));
        let _ = writeln!(text, "P_{n} vertices in Γ∘: {}", g.vertices.len());
        body["gamma"] = json!({
            "total": g.report.total_dims(),
            "vertices": g.vertices,
            "union": g.gamma_union(),
        });
    }
    Ok(Output { text, json: envelope("filiform", body), csv: d.to_csv(), failed: false })
}

pub fn corpus(names: Option<&str>, inputs: &[PathBuf], with_global: bool, width: usize, seed: u64) -> CliResult<Output> {
    let mut members = match names {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(catalog::build)
            .collect::<Result<Vec<_>, _>>()?,
        None => catalog::corpus()?,
    };
    let mut load_failures = Vec::new();
    for p in inputs {
        match read(p).map(|t| LieAlgebra::from_json(&t)) {
            Ok(Ok(algebra)) => members.push(Built { name: p.display().to_string(), algebra, toral_rank: None }),
            Ok(Err(e)) => load_failures.push((p.display().to_string(), e.to_string())),
            Err(e) => return Err(e),
        }
    }
    let mut summary = run_corpus(&members, width, with_global)?;
    if with_global {
        let trials = symmetry_trials(100, seed)?;
        if let Some(c) = summary.global.iter_mut().find(|c| c.check == "cocycle_symmetry") {
            c.status = if trials.failures.is_empty() { Status::Pass } else { Status::Fail };
            c.detail = format!("{} trials, {} cocycles, seed {seed}", trials.trials, trials.cocycles);
        }
    }
    let failed = !summary.members.iter().all(|m| m.passed())
        || summary.global.iter().any(|c| c.status == Status::Fail)
        || !load_failures.is_empty();
    let mut text = String::new();
    let mut csv = String::from("member,check,status,detail\n");
    for (name, err) in &load_failures {
        let _ = writeln!(text, "FAIL {name}: {err}");
        let _ = writeln!(csv, "{name},load,fail,\"{err}\"");
    }
    for m in &summary.members {
        let _ = writeln!(text, "{} {} (dim {}) TH {}", if m.passed() { "ok  " } else { "FAIL" }, m.name, m.dim, joined(&m.total));
        for c in &m.checks {
            if c.status == Status::Fail {
                let _ = writeln!(text, "    {}: {}", c.check, c.detail);
            }
            let _ = writeln!(csv, "{},{},{:?},\"{}\"", m.name, c.check, c.status, c.detail.replace('"', "'"));
        }
    }
    for c in &summary.global {
        let _ = writeln!(text, "{} {}: {}", if c.status == Status::Fail { "FAIL" } else { "ok  " }, c.check, c.detail);
        let _ = writeln!(csv, "global,{},{:?},\"{}\"", c.check, c.status, c.detail.replace('"', "'"));
    }
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    summary.passed = !failed;
    let _ = writeln!(text, "{}", if failed { "corpus: FAIL" } else { "corpus: pass" });
    let json = envelope(
        "corpus",
        json!({ "summary": summary, "load_failures": load_failures.iter().map(|(n, e)| json!({"input": n, "error": e})).collect::<Vec<_>>() }),
    );
    Ok(Output { text, json, csv, failed })
}
