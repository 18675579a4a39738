//! Emptiness certificates for gluing sets, and a brute-force cross-check.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use super::{apex, BasisLabel, IMatrix, RepError, RepMatrices};
use crate::cells::{self, Cells};
use crate::cone::{verify_goodness, CellAlgebra, ConeError, GoodnessWitness};
use crate::io;
use crate::linalg::Matrix;
use crate::multitable::MultiTable;
use crate::scalar::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("hypothesis ({clause}) failed: {reason}")]
    HypothesisFailed { clause: &'static str, reason: String },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub id: &'static str,
    pub description: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: &'static str,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: String,
    /// Everything needed to re-run the check: table text, matrices, witness.
    pub payload: Value,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "kind": self.kind,
            "hypotheses": self.hypotheses,
            "conclusion": self.conclusion,
            "payload": self.payload,
        })
    }
}

fn fail(clause: &'static str, reason: impl Into<String>) -> CertificateError {
    CertificateError::HypothesisFailed {
        clause,
        reason: reason.into(),
    }
}

/// `Σ c_F [F]` over the members of the witness cell.
fn weighted_sum(r: &RepMatrices, alg: &CellAlgebra, w: &GoodnessWitness) -> Matrix {
    let field = w.field();
    let mut x = Matrix::zeros(field, r.dim(), r.dim());
    for (g, c) in alg.gens().iter().zip(&w.x.coeffs) {
        x = x.add(&r.mat(*g).to_scalar(field).scale(c));
    }
    x
}

/// Left side minus right side of the witness identity evaluated at a matrix.
pub(crate) fn matrix_residual(x: &Matrix, w: &GoodnessWitness) -> Matrix {
    let mut powers = vec![x.clone()];
    for _ in 1..w.n {
        let next = powers.last().expect("nonempty").mul(x);
        powers.push(next);
    }
    let mut res = powers[w.n as usize - 1].clone();
    for j in w.l..w.n {
        let c = w.coefficient(j);
        if c.is_zero() {
            continue;
        }
        let c = if j > w.k { c } else { -c };
        res = res.add(&powers[j as usize - 1].scale(&c));
    }
    res
}

fn check_apex_matches(r: &RepMatrices, cells: &Cells, alg: &CellAlgebra, clause: &'static str) -> Result<usize, CertificateError> {
    let a = apex(r, cells)?;
    let t = &**r.table();
    if cells.two_sided.cells[a.cell] != alg.gens() {
        return Err(fail(
            clause,
            format!(
                "apex is {:?} but the witness lives on {:?}",
                cells.two_sided.cell_names(t, a.cell),
                alg.names()
            ),
        ));
    }
    Ok(a.cell)
}

fn goodness_hypothesis(alg: &CellAlgebra, w: &GoodnessWitness, clause: &'static str) -> Result<Hypothesis, CertificateError> {
    let check = verify_goodness(alg, w).map_err(|e| fail(clause, e.to_string()))?;
    if !check.holds {
        return Err(fail(clause, format!("witness identity fails, residual {}", alg.format(&check.residual))));
    }
    Ok(Hypothesis {
        id: clause,
        description: format!("the cell {:?} is good: the witness identity holds exactly", alg.names()),
        holds: true,
    })
}

/// Certifies that every two-layer representation with both layers equal to `n`
/// has a semisimple diagram.
pub fn semisimplicity_certificate(
    n: &RepMatrices,
    cells: &Cells,
    alg: &CellAlgebra,
    w: &GoodnessWitness,
) -> Result<Certificate, CertificateError> {
    let t = &**n.table();
    check_apex_matches(n, cells, alg, "apex")?;
    let mut hyps = vec![goodness_hypothesis(alg, w, "a")?];

    for c in &cells.two_sided.cells {
        if cells::is_idempotent_cell(t, cells, c).expect("cell").is_none() {
            let names: Vec<&str> = c.iter().map(|g| t.name(*g)).collect();
            return Err(fail("b", format!("cell {names:?} is not idempotent")));
        }
    }
    hyps.push(Hypothesis {
        id: "b",
        description: "every two-sided cell is idempotent".into(),
        holds: true,
    });

    let x = weighted_sum(n, alg, w);
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            if x.get(i, j).sign().map_err(ConeError::from)? != Sign::Positive {
                return Err(fail("c", format!("entry ({i}, {j}) of the weighted sum is {}", x.get(i, j))));
            }
        }
    }
    hyps.push(Hypothesis {
        id: "c",
        description: "the weighted sum of the cell matrices has only positive entries".into(),
        holds: true,
    });

    let res = matrix_residual(&x, w);
    if !res.is_zero() {
        return Err(fail("d", format!("the identity fails on the matrices: residual {res:?}")));
    }
    hyps.push(Hypothesis {
        id: "d",
        description: "the witness identity holds for the weighted sum of matrices".into(),
        holds: true,
    });

    Ok(Certificate {
        kind: "semisimple-self-extensions",
        hypotheses: hyps,
        conclusion: "Dext(N, N) is empty: no gluing of N with itself exists; this certifies emptiness only".into(),
        payload: json!({
            "table": io::table::print_table(t),
            "N": rep_to_json(n),
            "cell": alg.names(),
            "witness": w.to_json(alg),
        }),
    })
}

/// Certifies that no two-layer representation has sub `k` and quotient `n` with a
/// nonempty gluing set.
pub fn dext_empty_certificate(
    k: &RepMatrices,
    n: &RepMatrices,
    cells: &Cells,
    alg_k: &CellAlgebra,
    wk: &GoodnessWitness,
) -> Result<Certificate, CertificateError> {
    let t = &**k.table();
    if k.table() != n.table() {
        return Err(RepError::TableMismatch.into());
    }
    if t.star().is_none() {
        return Err(fail("star", "the table carries no star involution"));
    }
    let jk = check_apex_matches(k, cells, alg_k, "a")?;
    let jn = apex(n, cells)?.cell;
    let mut hyps = vec![goodness_hypothesis(alg_k, wk, "a")?];

    let js = &cells.two_sided;
    if !js.cell_le(jk, jn) {
        return Err(fail(
            "b",
            format!(
                "apex of K {:?} is not below apex of N {:?}",
                js.cell_names(t, jk),
                js.cell_names(t, jn)
            ),
        ));
    }
    hyps.push(Hypothesis {
        id: "b",
        description: format!("apex {:?} lies below apex {:?}", js.cell_names(t, jk), js.cell_names(t, jn)),
        holds: true,
    });

    let lefts_k = cells.left_cells_in(jk);
    for l in cells.left_cells_in(jn) {
        if !lefts_k.iter().any(|&lp| cells.left.cell_le(lp, l)) {
            return Err(fail(
                "c",
                format!("no left cell of K's apex lies below {:?}", cells.left.cell_names(t, l)),
            ));
        }
    }
    hyps.push(Hypothesis {
        id: "c",
        description: "every left cell of N's apex has a left cell of K's apex below it".into(),
        holds: true,
    });

    Ok(Certificate {
        kind: "dext-empty",
        hypotheses: hyps,
        conclusion: "Dext(N, K) is empty; this certifies emptiness only".into(),
        payload: json!({
            "table": io::table::print_table(t),
            "K": rep_to_json(k),
            "N": rep_to_json(n),
            "cell": alg_k.names(),
            "witness": wk.to_json(alg_k),
        }),
    })
}

pub fn rep_to_json(r: &RepMatrices) -> Value {
    let t = r.table();
    let basis: Vec<Value> = r
        .basis()
        .iter()
        .map(|b| json!({"label": b.name, "object": t.objects()[b.object]}))
        .collect();
    let mats: serde_json::Map<String, Value> = (0..t.len())
        .map(|g| (t.name(g).to_string(), json!(r.mat(g).rows())))
        .collect();
    json!({"basis": basis, "mats": mats})
}

pub fn rep_from_json(table: Arc<MultiTable>, v: &Value) -> Result<RepMatrices, CertificateError> {
    let bad = |m: &str| CertificateError::Malformed(m.to_string());
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("rep without basis"))?
        .iter()
        .map(|b| {
            let name = b.get("label").and_then(Value::as_str).ok_or_else(|| bad("basis label"))?;
            let obj = b.get("object").and_then(Value::as_str).ok_or_else(|| bad("basis object"))?;
            let object = table
                .objects()
                .iter()
                .position(|o| o == obj)
                .ok_or_else(|| bad("unknown object"))?;
            Ok(BasisLabel {
                name: name.to_string(),
                object,
            })
        })
        .collect::<Result<Vec<_>, CertificateError>>()?;
    let mut rep = RepMatrices::new(table.clone(), basis);
    let mats = v.get("mats").and_then(Value::as_object).ok_or_else(|| bad("rep without mats"))?;
    for (name, m) in mats {
        let g = table.gen_index(name).map_err(|e| CertificateError::Malformed(e.to_string()))?;
        let rows: Vec<Vec<u64>> = serde_json::from_value(m.clone()).map_err(|e| CertificateError::Malformed(e.to_string()))?;
        if rows.len() != rep.dim() || rows.iter().any(|r| r.len() != rep.dim()) {
            return Err(bad("matrix of the wrong shape"));
        }
        rep.set_mat(g, IMatrix::from_rows(&rows))?;
    }
    Ok(rep)
}

/// Re-runs a certificate from its embedded data; true iff it is reproduced.
pub fn recheck_certificate(v: &Value) -> Result<bool, CertificateError> {
    let bad = |m: &str| CertificateError::Malformed(m.to_string());
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("missing kind"))?;
    let p = v.get("payload").ok_or_else(|| bad("missing payload"))?;
    let text = p.get("table").and_then(Value::as_str).ok_or_else(|| bad("missing table"))?;
    let table = Arc::new(io::table::parse_table(text).map_err(|e| CertificateError::Malformed(e.to_string()))?);
    let cells = Cells::compute(&table);
    let cell: Vec<String> = serde_json::from_value(p.get("cell").cloned().unwrap_or(Value::Null))
        .map_err(|_| bad("missing cell"))?;
    let members = cell
        .iter()
        .map(|c| table.gen_index(c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CertificateError::Malformed(e.to_string()))?;
    let alg = CellAlgebra::for_cell(&table, &cells, &members).map_err(|e| CertificateError::Malformed(e.to_string()))?;
    let w = GoodnessWitness::from_json(&alg, p.get("witness").ok_or_else(|| bad("missing witness"))?)?;
    let n = rep_from_json(table.clone(), p.get("N").ok_or_else(|| bad("missing N"))?)?;
    let redo = match kind {
        "semisimple-self-extensions" => semisimplicity_certificate(&n, &cells, &alg, &w)?,
        "dext-empty" => {
            let k = rep_from_json(table.clone(), p.get("K").ok_or_else(|| bad("missing K"))?)?;
            dext_empty_certificate(&k, &n, &cells, &alg, &w)?
        }
        other => return Err(CertificateError::Malformed(format!("unknown kind `{other}`"))),
    };
    Ok(redo.to_json() == *v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceReport {
    pub bound: u64,
    pub candidates: u64,
    /// Gluing blocks satisfying the identity, in lexicographic order.
    pub solutions: Vec<Vec<Vec<u64>>>,
}

impl BruteForceReport {
    /// Nonzero solutions; any entry here contradicts semisimplicity.
    pub fn counterexamples(&self) -> Vec<&Vec<Vec<u64>>> {
        self.solutions
            .iter()
            .filter(|x| x.iter().flatten().any(|v| *v > 0))
            .collect()
    }
}

/// Tries every block `X` with entries in `0..=bound` in `[[x_N, X], [0, x_N]]` and
/// records those satisfying the witness identity.
pub fn semisimplicity_bruteforce(
    n: &RepMatrices,
    cells: &Cells,
    alg: &CellAlgebra,
    w: &GoodnessWitness,
    bound: u64,
) -> Result<BruteForceReport, CertificateError> {
    check_apex_matches(n, cells, alg, "apex")?;
    w.check_well_formed()?;
    let field = w.field();
    let xn = weighted_sum(n, alg, w);
    let m = n.dim();
    let cells_count = m * m;
    let mut digits = vec![0u64; cells_count];
    let mut solutions = Vec::new();
    let mut candidates = 0u64;
    loop {
        candidates += 1;
        let mut xm = Matrix::zeros(field, 2 * m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                xm.set(i, j, xn.get(i, j).clone());
                xm.set(m + i, m + j, xn.get(i, j).clone());
                xm.set(i, m + j, field.int(digits[i * m + j] as i64));
            }
        }
        if matrix_residual(&xm, w).is_zero() {
            solutions.push(digits.chunks(m.max(1)).map(<[u64]>::to_vec).collect());
        }
        // odometer, last entry fastest
        let mut pos = cells_count;
        loop {
            if pos == 0 {
                return Ok(BruteForceReport {
                    bound,
                    candidates,
                    solutions,
                });
            }
            pos -= 1;
            if digits[pos] < bound {
                digits[pos] += 1;
                for d in digits.iter_mut().skip(pos + 1) {
                    *d = 0;
                }
                break;
            }
        }
    }
}
