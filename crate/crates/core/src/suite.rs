//! Named batches of end-to-end checks over the bundled data.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::builders::{
    build_bipartite_rep, build_ca_table, build_cell_rep, build_signature_extension, signature_theta,
    BipartiteEdge, BipartiteSpec, CartanData, SignatureInput,
};
use crate::cells::{is_idempotent_cell, Cells};
use crate::cone::{verify_goodness, CellAlgebra, ConeElement, GoodnessWitness};
use crate::data;
use crate::findim::{
    cyclic_quotient_determinant, identity_bimodule_stable_end, quotients_isomorphic, verify_quotient_module,
    FinDimAlgebra,
};
use crate::multitable::MultiTable;
use crate::report::{CheckResult, Report};
use crate::scalar::{Field, Scalar};
use crate::tworep::{
    cell_rep, principal_rep, recheck_certificate, semisimplicity_bruteforce, semisimplicity_certificate,
    dext_empty_certificate, RepMatrices,
};

/// Everything a suite reads. Replace a field to run the checks on other data.
#[derive(Debug, Clone)]
pub struct SuiteInputs {
    pub a2: Arc<MultiTable>,
    pub b2: Arc<MultiTable>,
    pub i2_5: Arc<MultiTable>,
    pub coinvariant: Arc<FinDimAlgebra>,
    pub kx2: Arc<FinDimAlgebra>,
    pub zigzag2: Arc<FinDimAlgebra>,
    pub kx2_dims: CartanData,
    pub zigzag2_dims: CartanData,
    pub bipartite5: BipartiteSpec,
}

impl SuiteInputs {
    pub fn bundled() -> Self {
        SuiteInputs {
            a2: data::a2_table(),
            b2: data::b2_table(),
            i2_5: data::i2_5_table(),
            coinvariant: data::coinvariant(),
            kx2: data::algebra("kx2.alg"),
            zigzag2: data::algebra("zigzag2.alg"),
            kx2_dims: data::dims("kx2.dims"),
            zigzag2_dims: data::dims("zigzag2.dims"),
            bipartite5: data::bipartite5(),
        }
    }

    fn digests(&self) -> Vec<(&'static str, String)> {
        use crate::io::{print_algebra, print_table};
        vec![
            ("a2-soergel.tbl", print_table(&self.a2)),
            ("b2-soergel.tbl", print_table(&self.b2)),
            ("i2-5-soergel.tbl", print_table(&self.i2_5)),
            ("coinvariant-a2.alg", print_algebra(&self.coinvariant)),
            ("kx2.alg", print_algebra(&self.kx2)),
            ("zigzag2.alg", print_algebra(&self.zigzag2)),
        ]
    }
}

/// Result of one check, with any certificates it issued.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: CheckResult,
    pub certificates: Vec<Value>,
}

impl From<CheckResult> for Outcome {
    fn from(result: CheckResult) -> Self {
        Outcome {
            result,
            certificates: Vec::new(),
        }
    }
}

type CheckFn = fn(&SuiteInputs, u64) -> Outcome;

const CHECKS: &[(&str, CheckFn)] = &[
    ("b2-goodness", b2_goodness),
    ("i2-5-goodness", i2_5_goodness),
    ("cell-recovery", cell_recovery),
    ("diagrams", diagrams),
    ("quotient-module", quotient_module),
    ("quotient-isomorphy", quotient_isomorphy),
    ("signature-extensions", signature_extensions),
    ("emptiness-certificates", emptiness_certificates),
    ("bruteforce", bruteforce),
    ("identity-bimodule", identity_bimodule),
    ("randomized-builders", randomized_builders),
];

const SMOKE: &[&str] = &["b2-goodness", "i2-5-goodness", "cell-recovery", "signature-extensions"];

pub const SUITES: &[&str] = &["full", "smoke"];

pub fn check_ids(suite: &str) -> Option<Vec<&'static str>> {
    match suite {
        "full" => Some(CHECKS.iter().map(|(id, _)| *id).collect()),
        "smoke" => Some(SMOKE.to_vec()),
        _ => None,
    }
}

/// Runs a single check by id.
pub fn run_check(id: &str, inputs: &SuiteInputs, seed: u64) -> Option<Outcome> {
    CHECKS.iter().find(|(c, _)| *c == id).map(|(_, f)| f(inputs, seed))
}

/// Runs a named suite on the bundled data. `None` for an unknown suite name.
pub fn run_suite(name: &str, seed: u64) -> Option<Report> {
    run_suite_with(name, seed, &SuiteInputs::bundled())
}

/// Checks run in parallel; the report keeps the catalogue order.
pub fn run_suite_with(name: &str, seed: u64, inputs: &SuiteInputs) -> Option<Report> {
    let ids = check_ids(name)?;
    let outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = ids
            .iter()
            .map(|id| scope.spawn(move || run_check(id, inputs, seed).expect("catalogued check")))
            .collect();
        handles
            .into_iter()
            .zip(&ids)
            .map(|(h, id)| {
                h.join()
                    .unwrap_or_else(|_| CheckResult::fail(id, "check panicked").into())
            })
            .collect()
    });
    let mut report = Report::new(&format!("run-suite {name} --seed {seed}"));
    for (file, text) in inputs.digests() {
        report.add_input(file, text.as_bytes());
    }
    for o in outcomes {
        report.push(o.result);
        report.certificates.extend(o.certificates);
    }
    Some(report)
}

/// A diagram with classes and edges given by basis and generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedDiagram {
    pub classes: BTreeSet<BTreeSet<String>>,
    pub edges: BTreeMap<(BTreeSet<String>, BTreeSet<String>), BTreeSet<String>>,
}

pub fn named_diagram(r: &RepMatrices) -> NamedDiagram {
    let d = r.diagram();
    let t = r.table();
    let class = |c: usize| -> BTreeSet<String> { d.classes[c].iter().map(|i| r.label(*i).to_string()).collect() };
    NamedDiagram {
        classes: (0..d.classes.len()).map(class).collect(),
        edges: d
            .hasse
            .iter()
            .map(|&(a, b)| {
                let deco = d.decorations[&(a, b)].iter().map(|g| t.name(*g).to_string()).collect();
                ((class(a), class(b)), deco)
            })
            .collect(),
    }
}

fn set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn strings(names: impl IntoIterator<Item = String>) -> BTreeSet<String> {
    names.into_iter().collect()
}

fn goodness(id: &str, t: &MultiTable, field: &Field, member: &str, x: &[(&str, &str)], a: &[(u32, &str)], n: u32, k: u32) -> Outcome {
    let run = || -> Result<(bool, Vec<Scalar>, String), String> {
        let cells = Cells::compute(t);
        let alg = CellAlgebra::containing(t, &cells, member).map_err(|e| e.to_string())?;
        let x = ConeElement::from_named(&alg, field, x).map_err(|e| e.to_string())?;
        let a = a
            .iter()
            .map(|(j, c)| field.parse(c).map(|c| (*j, c)))
            .collect::<Result<BTreeMap<_, _>, _>>()
            .map_err(|e| e.to_string())?;
        let w = GoodnessWitness { x, n, k, l: 1, a };
        let check = verify_goodness(&alg, &w).map_err(|e| e.to_string())?;
        Ok((check.holds, check.residual, alg.names().join(",")))
    };
    match run() {
        Ok((holds, residual, cell)) => {
            let res: Vec<String> = residual.iter().map(Scalar::to_string).collect();
            let detail = if holds {
                format!("identity holds exactly on the cell {{{cell}}}")
            } else {
                format!("nonzero residual on the cell {{{cell}}}")
            };
            CheckResult::new(id, holds, detail).with_witness(json!({ "residual": res })).into()
        }
        Err(e) => CheckResult::fail(id, e).into(),
    }
}

fn b2_goodness(inp: &SuiteInputs, _: u64) -> Outcome {
    let f = Field::sqrt(2).expect("2 is not a square");
    goodness(
        "b2-goodness",
        &inp.b2,
        &f,
        "sts",
        &[("s", "1"), ("t", "1"), ("sts", "1"), ("tst", "1"), ("st", "T"), ("ts", "T")],
        &[(1, "8+4*T")],
        2,
        1,
    )
}

fn i2_5_goodness(inp: &SuiteInputs, _: u64) -> Outcome {
    let f = Field::rationals();
    goodness(
        "i2-5-goodness",
        &inp.i2_5,
        &f,
        "sts",
        &[
            ("s", "1/2"),
            ("t", "1/2"),
            ("st", "1"),
            ("ts", "1"),
            ("sts", "1"),
            ("tst", "1"),
            ("stst", "1/2"),
            ("tsts", "1/2"),
        ],
        &[(1, "5"), (2, "15")],
        3,
        2,
    )
}

fn two_sided_names(t: &MultiTable, cells: &Cells) -> BTreeSet<BTreeSet<String>> {
    (0..cells.two_sided.len())
        .map(|c| strings(cells.two_sided.cell_names(t, c)))
        .collect()
}

fn left_names(t: &MultiTable, cells: &Cells) -> BTreeSet<BTreeSet<String>> {
    (0..cells.left.len()).map(|c| strings(cells.left.cell_names(t, c))).collect()
}

fn all_idempotent(t: &MultiTable, cells: &Cells) -> bool {
    cells
        .two_sided
        .cells
        .iter()
        .all(|c| matches!(is_idempotent_cell(t, cells, c), Ok(Some(_))))
}

fn ca_cells_ok(c: &CartanData) -> Result<(), String> {
    let t = build_ca_table(c);
    let cells = Cells::compute(&t);
    let n = c.n();
    if cells.left.len() != n + 1 || cells.two_sided.len() != 2 {
        return Err(format!(
            "C_A with n = {n}: {} left and {} two-sided cells",
            cells.left.len(),
            cells.two_sided.len()
        ));
    }
    Ok(())
}

fn cell_recovery(inp: &SuiteInputs, _: u64) -> Outcome {
    let mut problems = Vec::new();
    let a2 = Cells::compute(&inp.a2);
    let want: BTreeSet<_> = [set(&["e"]), set(&["s", "ts"]), set(&["t", "st"]), set(&["sts"])].into();
    if left_names(&inp.a2, &a2) != want {
        problems.push(format!("A2 left cells {:?}", left_names(&inp.a2, &a2)));
    }
    for (name, t) in [("B2", &inp.b2), ("I2(5)", &inp.i2_5)] {
        let cells = Cells::compute(t);
        if cells.two_sided.len() != 3 || !all_idempotent(t, &cells) {
            problems.push(format!("{name} two-sided cells {:?}", two_sided_names(t, &cells)));
        }
    }
    for c in [&inp.kx2_dims, &inp.zigzag2_dims] {
        if let Err(e) = ca_cells_ok(c) {
            problems.push(e);
        }
    }
    let passed = problems.is_empty();
    let detail = if passed {
        "A2 left cells, B2 and I2(5) two-sided cells and C_A cell counts all match".to_string()
    } else {
        problems.join("; ")
    };
    CheckResult::new("cell-recovery", passed, detail).into()
}

/// Expected labelled diagram of the principal representation of `C_A`.
pub fn ca_star_diagram(n: usize) -> NamedDiagram {
    let id = set(&["id"]);
    let mut classes: BTreeSet<_> = [id.clone()].into();
    let mut edges = BTreeMap::new();
    for t in 0..n {
        let l: BTreeSet<String> = (0..n).map(|s| crate::builders::ca_gen_name(n, s, t)).collect();
        classes.insert(l.clone());
        edges.insert((id.clone(), l.clone()), l);
    }
    NamedDiagram { classes, edges }
}

/// Expected decorated diamond for the principal representation of the `A2` table.
pub fn a2_diamond() -> NamedDiagram {
    let (e, s, t, w) = (set(&["e"]), set(&["s", "ts"]), set(&["t", "st"]), set(&["sts"]));
    NamedDiagram {
        classes: [e.clone(), s.clone(), t.clone(), w.clone()].into(),
        edges: [
            ((e.clone(), s.clone()), set(&["s", "ts"])),
            ((e, t.clone()), set(&["t", "st"])),
            ((s, w.clone()), set(&["s", "st", "ts", "sts"])),
            ((t, w), set(&["t", "st", "ts", "sts"])),
        ]
        .into(),
    }
}

fn diagrams(inp: &SuiteInputs, _: u64) -> Outcome {
    let mut problems = Vec::new();
    let got = named_diagram(&principal_rep(inp.a2.clone(), 0));
    if got != a2_diamond() {
        problems.push(format!("A2 principal diagram {got:?}"));
    }
    for c in [&inp.kx2_dims, &inp.zigzag2_dims] {
        let t = Arc::new(build_ca_table(c));
        let got = named_diagram(&principal_rep(t, 0));
        if got != ca_star_diagram(c.n()) {
            problems.push(format!("C_A principal diagram {got:?}"));
        }
    }
    match build_bipartite_rep(&inp.zigzag2_dims, &inp.bipartite5) {
        Ok(r) => {
            if named_diagram(&r) != bipartite_diagram(&inp.zigzag2_dims, &inp.bipartite5) {
                problems.push("bipartite diagram differs from the graph".into());
            }
        }
        Err(e) => problems.push(e.to_string()),
    }
    let passed = problems.is_empty();
    let detail = if passed {
        "A2 diamond with its decorations, C_A stars and the bipartite graph all match".to_string()
    } else {
        problems.join("; ")
    };
    CheckResult::new("diagrams", passed, detail).into()
}

/// Expected labelled diagram of [`build_bipartite_rep`]: the graph itself, each
/// edge decorated by the left cell of its eta value.
pub fn bipartite_diagram(c: &CartanData, g: &BipartiteSpec) -> NamedDiagram {
    let n = c.n();
    let src = |v: usize| set(&[&format!("M_{}", g.sources[v])]);
    let sink = |w: usize| strings((1..=n).map(|j| format!("X{j}_{}", g.sinks[w])));
    let mut classes: BTreeSet<_> = (0..g.sources.len()).map(src).collect();
    classes.extend((0..g.sinks.len()).map(sink));
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let l = strings((0..n).map(|s| crate::builders::ca_gen_name(n, s, e.eta - 1)));
            ((src(e.source), sink(e.sink)), l)
        })
        .collect();
    NamedDiagram { classes, edges }
}

fn quotient_module(inp: &SuiteInputs, _: u64) -> Outcome {
    let f = inp.coinvariant.field().clone();
    let run = || -> Result<(bool, Value), String> {
        let w = f.theta().map_err(|e| e.to_string())?;
        let mut ok = true;
        let mut reports = Vec::new();
        for (a, b) in [(f.one(), w.clone()), (f.one(), f.one() - w.clone())] {
            let r = verify_quotient_module(&inp.coinvariant, &a, &b).map_err(|e| e.to_string())?;
            let det_formula = &(&a * &a - &a * &b) + &(&b * &b);
            ok &= r.passed() && r.radical_layers == [3, 2, 1, 0] && cyclic_quotient_determinant(&a, &b) == det_formula;
            reports.push(serde_json::to_value(&r).map_err(|e| e.to_string())?);
        }
        ok &= cyclic_quotient_determinant(&f.one(), &f.one()) == f.one();
        Ok((ok, Value::Array(reports)))
    };
    match run() {
        Ok((ok, w)) => CheckResult::new(
            "quotient-module",
            ok,
            if ok {
                "both quotients are 3-dimensional, uniserial, free over both invariant subalgebras, stable End of dimension 1"
            } else {
                "a quotient module property failed"
            },
        )
        .with_witness(w)
        .into(),
        Err(e) => CheckResult::fail("quotient-module", e).into(),
    }
}

fn quotient_isomorphy(inp: &SuiteInputs, _: u64) -> Outcome {
    let f = inp.coinvariant.field().clone();
    let run = || -> Result<(bool, bool), String> {
        let w = f.theta().map_err(|e| e.to_string())?;
        let one = f.one();
        let other = &one - &w;
        let two = f.int(2);
        let two_w = &two * &w;
        let distinct = quotients_isomorphic(&inp.coinvariant, (&one, &w), (&one, &other)).map_err(|e| e.to_string())?;
        let same = quotients_isomorphic(&inp.coinvariant, (&one, &w), (&two, &two_w)).map_err(|e| e.to_string())?;
        Ok((distinct, same))
    };
    match run() {
        Ok((distinct, same)) => CheckResult::new(
            "quotient-isomorphy",
            !distinct && same,
            format!("(1,ω) vs (1,1-ω) isomorphic: {distinct}; (1,ω) vs (2,2ω) isomorphic: {same}"),
        )
        .into(),
        Err(e) => CheckResult::fail("quotient-isomorphy", e).into(),
    }
}

fn signature_extensions(inp: &SuiteInputs, _: u64) -> Outcome {
    let run = || -> Result<Vec<String>, String> {
        let mut problems = Vec::new();
        let cases: [(&CartanData, Vec<u64>, Vec<&str>); 3] = [
            (&inp.zigzag2_dims, vec![1, 0], vec!["F11", "F21"]),
            (&inp.zigzag2_dims, vec![1, 1], vec!["F11", "F12", "F21", "F22"]),
            (&inp.kx2_dims, vec![1], vec!["F11"]),
        ];
        for (c, dimvec, want) in cases {
            let s = SignatureInput::new(c.clone(), dimvec.clone(), "M").map_err(|e| e.to_string())?;
            let (_, ses) = build_signature_extension(&s).map_err(|e| e.to_string())?;
            let mut got = ses.theta_names();
            got.sort();
            if got != want || ses.theta != signature_theta(&s) {
                problems.push(format!("dimvec {dimvec:?}: theta {got:?}"));
            }
        }
        Ok(problems)
    };
    match run() {
        Ok(p) if p.is_empty() => CheckResult::pass(
            "signature-extensions",
            "theta is L_1 for dimvec (1,0) and the whole cell for positive dimvec",
        )
        .into(),
        Ok(p) => CheckResult::fail("signature-extensions", p.join("; ")).into(),
        Err(e) => CheckResult::fail("signature-extensions", e).into(),
    }
}

/// `x = Σ F_st` with `x² = (Σ dims) x` on the cell `J` of `C_A`.
pub fn ca_witness(c: &CartanData, alg: &CellAlgebra) -> GoodnessWitness {
    let f = Field::rationals();
    let total: u64 = c.dims.iter().flatten().sum();
    GoodnessWitness {
        x: ConeElement::all_ones(alg, &f),
        n: 2,
        k: 1,
        l: 1,
        a: [(1, f.int(total as i64))].into(),
    }
}

/// `x = id` with `x² = x` on the identity cell.
pub fn identity_witness(alg: &CellAlgebra) -> GoodnessWitness {
    let f = Field::rationals();
    GoodnessWitness {
        x: ConeElement::all_ones(alg, &f),
        n: 2,
        k: 1,
        l: 1,
        a: [(1, f.one())].into(),
    }
}

/// The certificates for one set of Cartan data: `Dext(C_{L_1}, C_{L_0})` and `Dext(N, N)`.
pub fn ca_certificates(c: &CartanData) -> Result<Vec<Value>, String> {
    let t = Arc::new(build_ca_table(c));
    let cells = Cells::compute(&t);
    let left_of = |name: &str| -> Result<usize, String> {
        let g = t.gen_index(name).map_err(|e| e.to_string())?;
        Ok(cells.left.cell_of[g])
    };
    let k = cell_rep(t.clone(), &cells, left_of("id")?);
    let n = cell_rep(t.clone(), &cells, left_of(&crate::builders::ca_gen_name(c.n(), 0, 0))?);
    let alg_id = CellAlgebra::containing(&t, &cells, "id").map_err(|e| e.to_string())?;
    let dext = dext_empty_certificate(&k, &n, &cells, &alg_id, &identity_witness(&alg_id)).map_err(|e| e.to_string())?;

    let nrep = build_cell_rep(c);
    let ncells = Cells::compute(nrep.table());
    let alg_j = CellAlgebra::containing(nrep.table(), &ncells, "F11").map_err(|e| e.to_string())?;
    let semi = semisimplicity_certificate(&nrep, &ncells, &alg_j, &ca_witness(c, &alg_j)).map_err(|e| e.to_string())?;

    let certs = vec![dext.to_json(), semi.to_json()];
    for v in &certs {
        if !recheck_certificate(v).map_err(|e| e.to_string())? {
            return Err(format!("certificate of kind {} does not re-verify", v["kind"]));
        }
    }
    Ok(certs)
}

fn emptiness_certificates(inp: &SuiteInputs, _: u64) -> Outcome {
    let mut certs = Vec::new();
    for c in [&inp.kx2_dims, &inp.zigzag2_dims] {
        match ca_certificates(c) {
            Ok(v) => certs.extend(v),
            Err(e) => return CheckResult::fail("emptiness-certificates", e).into(),
        }
    }
    Outcome {
        result: CheckResult::pass(
            "emptiness-certificates",
            format!("{} certificates issued and re-verified from their payloads", certs.len()),
        ),
        certificates: certs,
    }
}

fn bruteforce(inp: &SuiteInputs, _: u64) -> Outcome {
    let mut problems = Vec::new();
    let mut witness = Vec::new();
    for c in [&inp.kx2_dims, &inp.zigzag2_dims] {
        let nrep = build_cell_rep(c);
        let cells = Cells::compute(nrep.table());
        let res = CellAlgebra::containing(nrep.table(), &cells, "F11")
            .map_err(|e| e.to_string())
            .and_then(|alg| {
                semisimplicity_bruteforce(&nrep, &cells, &alg, &ca_witness(c, &alg), 2).map_err(|e| e.to_string())
            });
        match res {
            Ok(r) => {
                let only_zero = r.solutions.len() == 1 && r.counterexamples().is_empty();
                if !only_zero {
                    problems.push(format!("n = {}: solutions {:?}", c.n(), r.solutions));
                }
                witness.push(json!({ "n": c.n(), "candidates": r.candidates, "solutions": r.solutions }));
            }
            Err(e) => problems.push(e),
        }
    }
    let passed = problems.is_empty();
    CheckResult::new(
        "bruteforce",
        passed,
        if passed {
            "only X = 0 satisfies the identity for bound 2 on the n = 1 and n = 2 cell representations".to_string()
        } else {
            problems.join("; ")
        },
    )
    .with_witness(Value::Array(witness))
    .into()
}

fn identity_bimodule(inp: &SuiteInputs, _: u64) -> Outcome {
    let mut problems = Vec::new();
    let mut witness = Vec::new();
    for (name, a) in [("kx2", &inp.kx2), ("zigzag2", &inp.zigzag2)] {
        let r = identity_bimodule_stable_end(a);
        if r.stable_end_dim != 1 {
            problems.push(format!("{name}: stable End has dimension {}", r.stable_end_dim));
        }
        witness.push(json!({
            "algebra": name,
            "end_dim": r.end_dim,
            "factoring_dim": r.factoring_dim,
            "stable_end_dim": r.stable_end_dim,
        }));
    }
    // 1 ↦ 2x on k[x]/(x²) factors through a projective bimodule
    if let Ok(x) = inp.kx2.index("x") {
        let f = inp.kx2.field().clone();
        let two_x: Vec<Scalar> = (0..inp.kx2.dim()).map(|i| if i == x { f.int(2) } else { f.zero() }).collect();
        let map = inp.kx2.left_mult(&two_x);
        if !identity_bimodule_stable_end(&inp.kx2).factors(&map) {
            problems.push("kx2: the map 1 ↦ 2x does not factor through a projective".into());
        }
    } else {
        problems.push("kx2: no basis element named x".into());
    }
    let passed = problems.is_empty();
    CheckResult::new(
        "identity-bimodule",
        passed,
        if passed {
            "stable End of the identity bimodule is 1-dimensional for kx2 and zigzag2".to_string()
        } else {
            problems.join("; ")
        },
    )
    .with_witness(Value::Array(witness))
    .into()
}

/// Random Cartan data with `n ≤ max_n`, entries in `0..=3` and positive diagonal.
pub fn random_cartan(rng: &mut impl Rng, max_n: usize) -> CartanData {
    let n = rng.gen_range(1..=max_n);
    let dims = (0..n)
        .map(|i| (0..n).map(|j| if i == j { rng.gen_range(1..=3) } else { rng.gen_range(0..=3) }).collect())
        .collect();
    CartanData::new(dims, rng.gen_bool(0.5)).expect("positive diagonal")
}

/// Random bipartite graph with at most `max_side` vertices per part and a consistent eta.
pub fn random_bipartite(rng: &mut impl Rng, n: usize, max_side: usize) -> BipartiteSpec {
    let nv = rng.gen_range(0..=max_side);
    let nw = rng.gen_range(0..=max_side);
    let eta: Vec<usize> = (0..nw).map(|_| rng.gen_range(1..=n)).collect();
    let mut edges = Vec::new();
    for v in 0..nv {
        for (w, e) in eta.iter().enumerate() {
            if rng.gen_bool(0.4) {
                edges.push(BipartiteEdge { source: v, sink: w, eta: *e });
            }
        }
    }
    BipartiteSpec {
        sources: (1..=nv).map(|i| format!("v{i}")).collect(),
        sinks: (1..=nw).map(|i| format!("w{i}")).collect(),
        edges,
    }
}

pub const RANDOM_CASES: usize = 64;

fn randomized_builders(_: &SuiteInputs, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut problems = Vec::new();
    for case in 0..RANDOM_CASES {
        let c = random_cartan(&mut rng, 3);
        let g = random_bipartite(&mut rng, c.n(), 3);
        let t = build_ca_table(&c);
        if !t.validate().is_empty() {
            problems.push(format!("case {case}: C_A table invalid for {:?}", c.dims));
        }
        if let Err(e) = ca_cells_ok(&c) {
            problems.push(format!("case {case}: {e}"));
        }
        if !build_cell_rep(&c).validate().is_empty() {
            problems.push(format!("case {case}: cell representation not functorial"));
        }
        match build_bipartite_rep(&c, &g) {
            Ok(r) => {
                if !r.validate().is_empty() || named_diagram(&r) != bipartite_diagram(&c, &g) {
                    problems.push(format!("case {case}: bipartite representation for {:?}", c.dims));
                }
            }
            Err(e) => problems.push(format!("case {case}: {e}")),
        }
    }
    let passed = problems.is_empty();
    CheckResult::new(
        "randomized-builders",
        passed,
        if passed {
            format!("{RANDOM_CASES} random C_A and bipartite constructions validated (seed {seed})")
        } else {
            problems.join("; ")
        },
    )
    .into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0).is_none());
    }

    #[test]
    fn smoke_passes() {
        let r = run_suite("smoke", 1).unwrap();
        assert_eq!(r.results.len(), SMOKE.len());
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn corrupted_b2_reports_residual() {
        let mut inputs = SuiteInputs::bundled();
        let mut t = (*inputs.b2).clone();
        let s = t.gen_index("s").unwrap();
        let mut v = t.product(s, s).clone();
        *v.get_mut(&s).unwrap() = 3;
        t.replace_product(s, s, v);
        inputs.b2 = Arc::new(t);
        let o = run_check("b2-goodness", &inputs, 0).unwrap();
        assert!(!o.result.passed);
        let res = o.result.witness.unwrap();
        assert!(res["residual"].as_array().unwrap().iter().any(|x| x != "0"));
    }
}
