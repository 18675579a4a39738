use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use cellrep_core::builders::{
    build_bipartite_rep, build_ca_table, build_cell_rep, build_da_extension_rep, build_da_table,
    build_signature_extension, CartanData, SignatureInput,
};
use cellrep_core::cells::{CellKind, CellStructure, Cells};
use cellrep_core::cone::{search_goodness, verify_goodness, CellAlgebra, GoodnessWitness, SearchOptions};
use cellrep_core::findim::{identity_bimodule_stable_end, verify_quotient_module, zigzag_algebra, FinDimAlgebra};
use cellrep_core::multitable::MultiTable;
use cellrep_core::report::{CheckResult, Report};
use cellrep_core::tworep::{apex as rep_apex, dext_filters, principal_rep, ses_split, RepMatrices};
use cellrep_core::{data, io, suite};
use serde_json::{json, Value};

use crate::{Build, Kind};

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub struct Output {
    pub report: Report,
    pub text: String,
    pub dot: Option<String>,
}

impl Output {
    fn new(report: Report) -> Self {
        Output {
            report,
            text: String::new(),
            dot: None,
        }
    }
}

/// A file on disk, or else a bundled data file of that name.
fn load(name: &str, report: &mut Report) -> Result<String, CliError> {
    let text = match std::fs::read_to_string(name) {
        Ok(t) => t,
        Err(e) => data::text(name)
            .map(str::to_string)
            .ok_or_else(|| CliError::Input(format!("cannot read {name}: {e}")))?,
    };
    report.add_input(name, text.as_bytes());
    Ok(text)
}

fn parsed<T>(name: &str, r: Result<T, io::ParseError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input(format!("{name}: {e}")))
}

fn load_table(name: &str, report: &mut Report) -> Result<Arc<MultiTable>, CliError> {
    let text = load(name, report)?;
    parsed(name, io::parse_table(&text)).map(Arc::new)
}

fn load_rep(name: &str, report: &mut Report) -> Result<RepMatrices, CliError> {
    let text = load(name, report)?;
    let dir = Path::new(name).parent().map(Path::to_path_buf).unwrap_or_default();
    let tables = std::cell::RefCell::new(Vec::new());
    let rep = io::parse_rep_with(&text, |t| {
        let path = dir.join(t);
        let text = std::fs::read_to_string(&path)
            .ok()
            .or_else(|| data::text(t).map(str::to_string))
            .ok_or_else(|| format!("cannot find table {t}"))?;
        tables.borrow_mut().push((t.to_string(), text.clone()));
        io::parse_table(&text).map(Arc::new).map_err(|e| format!("{t}: {e}"))
    });
    for (t, text) in tables.into_inner() {
        report.add_input(&t, text.as_bytes());
    }
    parsed(name, rep)
}

fn load_dims(name: &str, report: &mut Report) -> Result<CartanData, CliError> {
    let text = load(name, report)?;
    parsed(name, io::parse_dims(&text))
}

fn names(t: &MultiTable, gens: &[usize]) -> Vec<String> {
    gens.iter().map(|g| t.name(*g).to_string()).collect()
}

fn braces(v: &[String]) -> String {
    format!("{{{}}}", v.join(","))
}

pub fn validate(file: &str) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("validate {file}"));
    let text = load(file, &mut report)?;
    let ext = Path::new(file).extension().and_then(|e| e.to_str()).unwrap_or("");
    let problems: Vec<String> = match ext {
        "tbl" => parsed(file, io::parse_table(&text))?.validate().iter().map(ToString::to_string).collect(),
        "rep" => load_rep(file, &mut Report::new(""))?.validate().iter().map(ToString::to_string).collect(),
        "alg" => parsed(file, io::parse_algebra(&text))?.validate(),
        "dims" => {
            parsed(file, io::parse_dims(&text))?;
            Vec::new()
        }
        "graph" => {
            let g = parsed(file, io::parse_graph(&text))?;
            let n = g.edges.iter().map(|e| e.eta).max().unwrap_or(1);
            g.validate(n).err().map(|e| e.to_string()).into_iter().collect()
        }
        _ => return Err(CliError::Input(format!("{file}: unknown file type `{ext}`"))),
    };
    let passed = problems.is_empty();
    let detail = if passed { "no violations".to_string() } else { problems.join("; ") };
    report.push(CheckResult::new("validate", passed, detail).with_witness(json!(problems)));
    Ok(Output::new(report))
}

fn structure_text(t: &MultiTable, cs: &CellStructure) -> String {
    let mut out = format!("{} cells:\n", cs.kind);
    for c in &cs.cells {
        let _ = writeln!(out, "  {}", braces(&names(t, c)));
    }
    out
}

fn structure_json(t: &MultiTable, cs: &CellStructure) -> Value {
    let cells: Vec<Vec<String>> = cs.cells.iter().map(|c| names(t, c)).collect();
    let hasse: Vec<(usize, usize)> = cs.hasse.clone();
    json!({ "cells": cells, "hasse": hasse })
}

pub fn cells(table: &str) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("cells {table}"));
    let t = load_table(table, &mut report)?;
    let cs = Cells::compute(&t);
    let mut out = Output::new(report);
    for s in [&cs.left, &cs.right, &cs.two_sided] {
        out.text.push_str(&structure_text(&t, s));
        out.report.push(
            CheckResult::pass(&format!("{}-cells", s.kind), format!("{} cells", s.len()))
                .with_witness(structure_json(&t, s)),
        );
    }
    out.dot = Some(io::cells_dot(&t, &cs.two_sided));
    Ok(out)
}

pub fn hasse(table: &str, kind: Kind) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("hasse {table}"));
    let t = load_table(table, &mut report)?;
    let kind = match kind {
        Kind::Left => CellKind::Left,
        Kind::Right => CellKind::Right,
        Kind::TwoSided => CellKind::TwoSided,
    };
    let cs = Cells::compute(&t);
    let s = cs.get(kind);
    let mut out = Output::new(report);
    out.text.push_str(&structure_text(&t, s));
    out.text.push_str("cover relations:\n");
    for (a, b) in &s.hasse {
        let _ = writeln!(out.text, "  {} < {}", braces(&names(&t, &s.cells[*a])), braces(&names(&t, &s.cells[*b])));
    }
    out.report.push(
        CheckResult::pass(&format!("{kind}-hasse"), format!("{} cells, {} cover relations", s.len(), s.hasse.len()))
            .with_witness(structure_json(&t, s)),
    );
    out.dot = Some(io::cells_dot(&t, s));
    Ok(out)
}

pub fn goodness(table: &str, cell: &str, witness: Option<&str>, search: bool) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("goodness {table} --cell {cell}"));
    let t = load_table(table, &mut report)?;
    let cs = Cells::compute(&t);
    let alg = CellAlgebra::containing(&t, &cs, cell).map_err(input)?;
    let w = match (witness, search) {
        (Some(file), _) => {
            let text = load(file, &mut report)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{file}: {e}")))?;
            Some(GoodnessWitness::from_json(&alg, &v).map_err(|e| CliError::Input(format!("{file}: {e}")))?)
        }
        (None, true) => search_goodness(&alg, &SearchOptions::default()),
        (None, false) => return Err(CliError::Input("give --witness <file> or --search".into())),
    };
    let mut out = Output::new(report);
    let cell_text = braces(alg.names());
    match w {
        None => out
            .report
            .push(CheckResult::fail("goodness", format!("no witness found on {cell_text}"))),
        Some(w) => {
            let check = verify_goodness(&alg, &w).map_err(input)?;
            let residual: Vec<String> = check.residual.iter().map(ToString::to_string).collect();
            let _ = writeln!(out.text, "cell {cell_text}\nx = {}", alg.format(&w.x.coeffs));
            out.report.push(
                CheckResult::new(
                    "goodness",
                    check.holds,
                    if check.holds {
                        format!("identity holds exactly on {cell_text}")
                    } else {
                        format!("nonzero residual on {cell_text}")
                    },
                )
                .with_witness(json!({ "witness": w.to_json(&alg), "residual": residual })),
            );
        }
    }
    Ok(out)
}

pub fn diagram(file: &str, principal: bool, object: Option<&str>, decorated: bool) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("diagram {file}"));
    let r = if principal {
        let t = load_table(file, &mut report)?;
        let o = match object {
            Some(name) => t
                .objects()
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| CliError::Input(format!("unknown object {name}")))?,
            None => 0,
        };
        principal_rep(t, o)
    } else {
        load_rep(file, &mut report)?
    };
    let d = r.diagram();
    let t = r.table();
    let mut out = Output::new(report);
    let class = |c: usize| -> Vec<String> { d.classes[c].iter().map(|i| r.label(*i).to_string()).collect() };
    let mut edges = Vec::new();
    for c in 0..d.classes.len() {
        let _ = writeln!(out.text, "class {}", braces(&class(c)));
    }
    let mut hasse = d.hasse.clone();
    hasse.sort_unstable();
    for (a, b) in hasse {
        let deco = names(t, &d.decorations[&(a, b)]);
        let _ = writeln!(out.text, "edge {} -> {} by {}", braces(&class(a)), braces(&class(b)), braces(&deco));
        edges.push(json!({ "from": class(a), "to": class(b), "decoration": deco }));
    }
    let classes: Vec<Vec<String>> = (0..d.classes.len()).map(class).collect();
    out.report.push(
        CheckResult::pass("diagram", format!("{} classes, {} edges", d.classes.len(), edges.len()))
            .with_witness(json!({ "classes": classes, "edges": edges })),
    );
    out.dot = Some(io::diagram_dot(&r, &d, decorated));
    Ok(out)
}

pub fn apex(rep: &str) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("apex {rep}"));
    let r = load_rep(rep, &mut report)?;
    let t = r.table().clone();
    let cs = Cells::compute(&t);
    let mut out = Output::new(report);
    match rep_apex(&r, &cs) {
        Ok(a) => {
            let cell = cs.two_sided.cell_names(&t, a.cell);
            let (f, g, h) = a.witness;
            out.report.push(
                CheckResult::pass("apex", format!("apex {}", braces(&cell))).with_witness(json!({
                    "cell": cell,
                    "idempotency": [t.name(f), t.name(g), t.name(h)],
                    "annihilated": a.annihilated.iter().map(|c| cs.two_sided.cell_names(&t, *c)).collect::<Vec<_>>(),
                })),
            );
        }
        Err(e) => out.report.push(CheckResult::fail("apex", e.to_string())),
    }
    Ok(out)
}

fn sub_indices(r: &RepMatrices, sub: &[String]) -> Result<Vec<usize>, CliError> {
    sub.iter().map(|s| r.label_index(s.trim()).map_err(input)).collect()
}

pub fn ses(rep: &str, sub: &[String]) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("ses {rep} --sub {}", sub.join(",")));
    let r = load_rep(rep, &mut report)?;
    let idx = sub_indices(&r, sub)?;
    let mut out = Output::new(report);
    match ses_split(&r, &idx) {
        Ok(s) => {
            let theta = s.theta_names();
            let blocks: serde_json::Map<String, Value> = s
                .theta
                .iter()
                .map(|g| (r.table().name(*g).to_string(), json!(s.gluing_block(*g))))
                .collect();
            let _ = writeln!(out.text, "theta {}", braces(&theta));
            out.report.push(
                CheckResult::pass("ses", format!("gluing set {}", braces(&theta)))
                    .with_witness(json!({ "theta": theta, "blocks": blocks })),
            );
        }
        Err(e) => out.report.push(CheckResult::fail("ses", e.to_string())),
    }
    Ok(out)
}

pub fn dext(rep: &str, sub: &[String]) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("dext {rep} --sub {}", sub.join(",")));
    let r = load_rep(rep, &mut report)?;
    let idx = sub_indices(&r, sub)?;
    let cs = Cells::compute(r.table());
    let mut out = Output::new(report);
    let res = ses_split(&r, &idx).and_then(|s| dext_filters(&cs, &s.k, &s.n, &s.theta));
    match res {
        Ok(d) => {
            for o in &d.outcomes {
                let id = match &o.gen {
                    Some(g) => format!("{}:{g}", o.check),
                    None => o.check.to_string(),
                };
                out.report.push(CheckResult::new(&id, o.passed, o.detail.clone()));
            }
        }
        Err(e) => out.report.push(CheckResult::fail("dext", e.to_string())),
    }
    Ok(out)
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<u64>>, CliError> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|e| CliError::Input(format!("bad entry `{x}`: {e}"))))
                .collect()
        })
        .collect()
}

fn built_rep(out: &mut Output, id: &str, r: &RepMatrices, table_ref: &str) {
    let problems: Vec<String> = r.validate().iter().map(ToString::to_string).collect();
    out.text.push_str(&io::print_table(r.table()));
    out.text.push_str("---\n");
    out.text.push_str(&io::print_rep(r, table_ref));
    out.report.push(CheckResult::new(
        id,
        problems.is_empty(),
        if problems.is_empty() { "functorial".to_string() } else { problems.join("; ") },
    ));
    out.dot = Some(io::diagram_dot(r, &r.diagram(), true));
}

pub fn build(b: &Build) -> Result<Output, CliError> {
    match b {
        Build::Ca { dims, cell_rep } => {
            let mut report = Report::new(&format!("build ca --dims {dims}"));
            let c = load_dims(dims, &mut report)?;
            let mut out = Output::new(report);
            if *cell_rep {
                built_rep(&mut out, "cell-rep", &build_cell_rep(&c), "ca.tbl");
            } else {
                let t = build_ca_table(&c);
                let cs = Cells::compute(&t);
                let ok = t.validate().is_empty() && cs.left.len() == c.n() + 1 && cs.two_sided.len() == 2;
                out.text.push_str(&io::print_table(&t));
                out.report.push(CheckResult::new(
                    "ca-table",
                    ok,
                    format!("{} left cells, {} two-sided cells", cs.left.len(), cs.two_sided.len()),
                ));
                out.dot = Some(io::cells_dot(&t, &cs.two_sided));
            }
            Ok(out)
        }
        Build::Sig { dims, dimvec } => {
            let v: Vec<String> = dimvec.iter().map(u64::to_string).collect();
            let mut report = Report::new(&format!("build sig --dims {dims} --dimvec {}", v.join(",")));
            let c = load_dims(dims, &mut report)?;
            let s = SignatureInput::new(c, dimvec.clone(), "M").map_err(input)?;
            let (r, ses) = build_signature_extension(&s).map_err(input)?;
            let mut out = Output::new(report);
            built_rep(&mut out, "signature-extension", &r, "ca.tbl");
            let theta = ses.theta_names();
            out.report.push(
                CheckResult::pass("theta", format!("gluing set {}", braces(&theta))).with_witness(json!(theta)),
            );
            Ok(out)
        }
        Build::Bipartite { dims, graph } => {
            let mut report = Report::new(&format!("build bipartite --dims {dims} --graph {graph}"));
            let c = load_dims(dims, &mut report)?;
            let text = load(graph, &mut report)?;
            let g = parsed(graph, io::parse_graph(&text))?;
            let r = build_bipartite_rep(&c, &g).map_err(input)?;
            let mut out = Output::new(report);
            built_rep(&mut out, "bipartite", &r, "ca.tbl");
            let same = suite::named_diagram(&r) == suite::bipartite_diagram(&c, &g);
            out.report.push(CheckResult::new(
                "diagram-is-graph",
                same,
                if same { "diagram equals the graph" } else { "diagram differs from the graph" },
            ));
            Ok(out)
        }
        Build::Da { dims, module } => {
            let mut report = Report::new(&format!("build da --dims {dims}"));
            let c = load_dims(dims, &mut report)?;
            let mut out = Output::new(report);
            match module {
                None => {
                    let t = build_da_table(&c);
                    let cs = Cells::compute(&t);
                    let ok = t.validate().is_empty() && cs.two_sided.len() == 4;
                    out.text.push_str(&io::print_table(&t));
                    out.report.push(CheckResult::new(
                        "da-table",
                        ok,
                        format!("{} two-sided cells, {} cover relations", cs.two_sided.len(), cs.two_sided.hasse.len()),
                    ));
                    out.dot = Some(io::cells_dot(&t, &cs.two_sided));
                }
                Some(m) => {
                    let d = parse_matrix(m)?;
                    let (r, ses) = build_da_extension_rep(&c, &d).map_err(input)?;
                    built_rep(&mut out, "da-extension", &r, "da.tbl");
                    let theta = ses.theta_names();
                    out.report.push(
                        CheckResult::pass("theta", format!("gluing set {}", braces(&theta))).with_witness(json!(theta)),
                    );
                }
            }
            Ok(out)
        }
    }
}

pub fn verify_a2(a: &str, b: &str) -> Result<Output, CliError> {
    let mut report = Report::new(&format!("verify-a2 --a {a} --b {b}"));
    let c = data::coinvariant();
    report.add_input("coinvariant-a2.alg", data::text("coinvariant-a2.alg").unwrap_or("").as_bytes());
    let f = c.field().clone();
    let a = f.parse(a).map_err(input)?;
    let b = f.parse(b).map_err(input)?;
    let r = verify_quotient_module(&c, &a, &b).map_err(input)?;
    let mut out = Output::new(report);
    let _ = writeln!(
        out.text,
        "determinant {}\ndim M {}\nradical layers {:?}\nstable End dimension {}",
        r.determinant, r.dim_m, r.radical_layers, r.stable_end_dim
    );
    let witness = serde_json::to_value(&r).expect("serializable");
    if !r.precondition {
        out.report.push(
            CheckResult::fail("precondition", format!("a² - ab + b² = {} must vanish with a, b nonzero", r.determinant))
                .with_witness(witness),
        );
        return Ok(out);
    }
    out.report.push(CheckResult::new("quotient-module", r.passed(), format!(
        "dim {}, uniserial {}, free over invariants {}/{}, stable End dimension {}",
        r.dim_m, r.uniserial, r.free_over_s_invariants, r.free_over_t_invariants, r.stable_end_dim
    )).with_witness(witness));
    Ok(out)
}

pub fn verify_zigzag(n: usize, alg: Option<&str>) -> Result<Output, CliError> {
    let mut report = Report::new(&match alg {
        Some(a) => format!("verify-zigzag --alg {a}"),
        None => format!("verify-zigzag --n {n}"),
    });
    let a: FinDimAlgebra = match alg {
        Some(file) => {
            let text = load(file, &mut report)?;
            parsed(file, io::parse_algebra(&text))?
        }
        None if (2..=3).contains(&n) => zigzag_algebra(n),
        None => return Err(CliError::Input(format!("--n must be 2 or 3, got {n}"))),
    };
    let r = identity_bimodule_stable_end(&a);
    let mut out = Output::new(report);
    let _ = writeln!(
        out.text,
        "dim A {}\ndim A⊗A^op {}\ndim End {}\nfactoring through projectives {}\nstable End dimension {}",
        r.algebra_dim, r.enveloping_dim, r.end_dim, r.factoring_dim, r.stable_end_dim
    );
    out.report.push(
        CheckResult::new(
            "stable-end",
            r.stable_end_dim == 1,
            format!("stable End of the identity bimodule has dimension {}", r.stable_end_dim),
        )
        .with_witness(json!({
            "end_dim": r.end_dim,
            "factoring_dim": r.factoring_dim,
            "stable_end_dim": r.stable_end_dim,
        })),
    );
    Ok(out)
}

pub fn run_suite(name: &str, seed: u64) -> Result<Output, CliError> {
    let report = suite::run_suite(name, seed).ok_or_else(|| {
        CliError::Input(format!("unknown suite `{name}`; expected one of {}", suite::SUITES.join(", ")))
    })?;
    Ok(Output::new(report))
}
