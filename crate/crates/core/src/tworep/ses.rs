use serde::Serialize;

use super::{apex, IMatrix, RepError, RepMatrices};
use crate::cells::{self, Cells};

/// A representation split along an action-closed sub-basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SesDecomposition {
    pub rep: RepMatrices,
    pub sub: Vec<usize>,
    pub complement: Vec<usize>,
    pub k: RepMatrices,
    pub n: RepMatrices,
    /// Generators with a nonzero block from the complement into the sub-basis.
    pub theta: Vec<usize>,
}

impl SesDecomposition {
    /// The representation with basis reordered sub-first.
    pub fn reordered(&self) -> RepMatrices {
        let order: Vec<usize> = self.sub.iter().chain(&self.complement).copied().collect();
        self.rep.permuted(&order)
    }

    /// Off-diagonal block of generator `g`: rows in the sub-basis, columns in the complement.
    pub fn gluing_block(&self, g: usize) -> Vec<Vec<u64>> {
        let m: &IMatrix = self.rep.mat(g);
        self.sub
            .iter()
            .map(|&y| self.complement.iter().map(|&x| m.get(y, x)).collect())
            .collect()
    }

    pub fn theta_names(&self) -> Vec<String> {
        self.theta.iter().map(|g| self.rep.table().name(*g).to_string()).collect()
    }
}

pub fn ses_split(r: &RepMatrices, sub: &[usize]) -> Result<SesDecomposition, RepError> {
    let mut sub = sub.to_vec();
    sub.sort_unstable();
    sub.dedup();
    let in_sub: Vec<bool> = (0..r.dim()).map(|i| sub.contains(&i)).collect();
    let t = r.table().clone();
    for g in 0..t.len() {
        for &x in &sub {
            for y in 0..r.dim() {
                if !in_sub[y] && r.mat(g).get(y, x) > 0 {
                    return Err(RepError::NotActionClosed {
                        f: t.name(g).to_string(),
                        x: r.label(x).to_string(),
                        y: r.label(y).to_string(),
                    });
                }
            }
        }
    }
    let complement: Vec<usize> = (0..r.dim()).filter(|i| !in_sub[*i]).collect();
    let theta = (0..t.len())
        .filter(|&g| sub.iter().any(|&y| complement.iter().any(|&x| r.mat(g).get(y, x) > 0)))
        .collect();
    Ok(SesDecomposition {
        k: r.restrict(&sub),
        n: r.restrict(&complement),
        rep: r.clone(),
        sub,
        complement,
        theta,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterOutcome {
    pub check: &'static str,
    pub gen: Option<String>,
    pub passed: bool,
    pub detail: String,
}

/// Necessary conditions on a candidate gluing set. A failed condition shows that
/// no two-layer representation with these layers realises the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DextReport {
    pub apex_k: Vec<String>,
    pub apex_n: Vec<String>,
    pub theta: Vec<String>,
    pub outcomes: Vec<FilterOutcome>,
}

impl DextReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FilterOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

pub fn dext_filters(
    cells: &Cells,
    k: &RepMatrices,
    n: &RepMatrices,
    theta: &[usize],
) -> Result<DextReport, RepError> {
    let t = &**k.table();
    if k.table() != n.table() {
        return Err(RepError::TableMismatch);
    }
    let jk = apex(k, cells)?.cell;
    let jn = apex(n, cells)?.cell;
    let js = &cells.two_sided;
    let below = |g: usize, j: usize| js.cell_le(js.cell_of[g], j);
    let mut outcomes = Vec::new();
    for &g in theta {
        let name = t.name(g).to_string();
        let is_id = t.is_identity(g);
        outcomes.push(FilterOutcome {
            check: "no-identity",
            gen: Some(name.clone()),
            passed: !is_id,
            detail: if is_id {
                format!("{name} is an identity and cannot glue")
            } else {
                format!("{name} is not an identity")
            },
        });
        let cell = &js.cells[js.cell_of[g]];
        let idempotent = cells::is_idempotent_cell(t, cells, cell)
            .expect("cell of the table")
            .is_some();
        if idempotent {
            let ok = below(g, jk) || below(g, jn);
            outcomes.push(FilterOutcome {
                check: "idempotent-cell-below-an-apex",
                gen: Some(name.clone()),
                passed: ok,
                detail: if ok {
                    format!("{name} lies below the apex of the sub or of the quotient")
                } else {
                    format!("{name} lies in an idempotent cell above both apexes")
                },
            });
        }
        if t.star().is_some() {
            let ok = below(g, jk);
            outcomes.push(FilterOutcome {
                check: "below-sub-apex",
                gen: Some(name.clone()),
                passed: ok,
                detail: if ok {
                    format!("{name} lies below the apex of the sub")
                } else {
                    format!("{name} does not lie below the apex of the sub")
                },
            });
        }
    }
    if let Some(star) = t.star() {
        let bad: Vec<usize> = (0..t.len()).filter(|&g| js.cell_of[g] != js.cell_of[star[g]]).collect();
        outcomes.push(FilterOutcome {
            check: "star-preserves-cells",
            gen: None,
            passed: bad.is_empty(),
            detail: if bad.is_empty() {
                "every F shares its two-sided cell with F*".into()
            } else {
                format!("F and F* lie in different cells for {}", t.name(bad[0]))
            },
        });
        if !theta.is_empty() {
            let meets = theta.iter().any(|&g| js.cell_of[g] == jk);
            outcomes.push(FilterOutcome {
                check: "meets-sub-apex",
                gen: None,
                passed: meets,
                detail: if meets {
                    "the set meets the apex of the sub".into()
                } else {
                    "the set does not meet the apex of the sub".into()
                },
            });
        }
    }
    Ok(DextReport {
        apex_k: js.cell_names(t, jk),
        apex_n: js.cell_names(t, jn),
        theta: theta.iter().map(|g| t.name(*g).to_string()).collect(),
        outcomes,
    })
}
