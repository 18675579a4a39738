//! Left, right and two-sided preorders on generators, their cells, the
//! induced partial orders and Hasse diagrams.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::multitable::MultiTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellKind::Left => "left",
            CellKind::Right => "right",
            CellKind::TwoSided => "two-sided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("the given generators do not form a two-sided cell")]
    NotACell,
}

/// A reflexive transitive relation on `0..n`, stored as `reach[a][b]` meaning `a → b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reach {
    reach: Vec<Vec<bool>>,
}

impl Reach {
    /// Reflexive-transitive closure of the edges `succ[a]`.
    pub fn closure(succ: &[Vec<usize>]) -> Self {
        let n = succ.len();
        let mut reach = vec![vec![false; n]; n];
        for (start, row) in reach.iter_mut().enumerate() {
            let mut queue = VecDeque::from([start]);
            row[start] = true;
            while let Some(a) = queue.pop_front() {
                for &b in &succ[a] {
                    if !row[b] {
                        row[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        Reach { reach }
    }

    pub fn len(&self) -> usize {
        self.reach.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reach.is_empty()
    }

    pub fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }

    /// Classes of mutual reachability, ordered by smallest member.
    pub fn classes(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let members: Vec<usize> = (a..n)
                .filter(|&b| self.reach[a][b] && self.reach[b][a])
                .collect();
            for &b in &members {
                class_of[b] = idx;
            }
            classes.push(members);
        }
        (classes, class_of)
    }
}

/// Cover relation of a partial order given as `le[i][j]` (i ≤ j).
pub fn transitive_reduction(le: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = le.len();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !le[i][j] {
                continue;
            }
            let between = (0..n).any(|k| k != i && k != j && le[i][k] && le[k][j]);
            if !between {
                covers.push((i, j));
            }
        }
    }
    covers
}

fn one_step_successors(t: &MultiTable, kind: CellKind) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut succ = vec![Vec::new(); n];
    for f in 0..n {
        for h in 0..n {
            if matches!(kind, CellKind::Left | CellKind::TwoSided) && t.composable(h, f) {
                succ[f].extend(t.product(h, f).keys().copied());
            }
            if matches!(kind, CellKind::Right | CellKind::TwoSided) && t.composable(f, h) {
                succ[f].extend(t.product(f, h).keys().copied());
            }
        }
        succ[f].sort_unstable();
        succ[f].dedup();
    }
    succ
}

/// The preorder of the given kind: `reaches(F, G)` iff `F ≤ G`, i.e. `G` occurs in
/// an iterated composite built from `F`.
pub fn preorder(t: &MultiTable, kind: CellKind) -> Reach {
    Reach::closure(&one_step_successors(t, kind))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellStructure {
    pub kind: CellKind,
    pub cells: Vec<Vec<usize>>,
    pub cell_of: Vec<usize>,
    /// `order[i][j]` iff cell i ≤ cell j.
    pub order: Vec<Vec<bool>>,
    pub hasse: Vec<(usize, usize)>,
    pre: Reach,
}

impl CellStructure {
    pub fn compute(t: &MultiTable, kind: CellKind) -> Self {
        let pre = preorder(t, kind);
        let (cells, cell_of) = pre.classes();
        let order: Vec<Vec<bool>> = cells
            .iter()
            .map(|a| cells.iter().map(|b| pre.reaches(a[0], b[0])).collect())
            .collect();
        let hasse = transitive_reduction(&order);
        CellStructure {
            kind,
            cells,
            cell_of,
            order,
            hasse,
            pre,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `F ≤ G` in this preorder.
    pub fn gen_le(&self, f: usize, g: usize) -> bool {
        self.pre.reaches(f, g)
    }

    pub fn cell_le(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    /// Index of the cell whose member set equals `gens` (in any order).
    pub fn find_cell(&self, gens: &[usize]) -> Option<usize> {
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.cells.iter().position(|c| *c == sorted)
    }

    pub fn cell_names(&self, t: &MultiTable, c: usize) -> Vec<String> {
        self.cells[c].iter().map(|g| t.name(*g).to_string()).collect()
    }

    /// Index of the source object shared by all members of a left cell.
    pub fn source_object(&self, t: &MultiTable, c: usize) -> usize {
        t.gens()[self.cells[c][0]].source
    }

    /// Cells that are maximal in the order.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| b == a || !self.order[a][b]))
            .collect()
    }
}

/// All three cell structures of a table.
#[derive(Debug, Clone)]
pub struct Cells {
    pub left: CellStructure,
    pub right: CellStructure,
    pub two_sided: CellStructure,
}

impl Cells {
    pub fn compute(t: &MultiTable) -> Self {
        Cells {
            left: CellStructure::compute(t, CellKind::Left),
            right: CellStructure::compute(t, CellKind::Right),
            two_sided: CellStructure::compute(t, CellKind::TwoSided),
        }
    }

    pub fn get(&self, kind: CellKind) -> &CellStructure {
        match kind {
            CellKind::Left => &self.left,
            CellKind::Right => &self.right,
            CellKind::TwoSided => &self.two_sided,
        }
    }

    /// Index of the two-sided cell containing `g`.
    pub fn j_cell(&self, g: usize) -> usize {
        self.two_sided.cell_of[g]
    }

    fn check_cell(&self, gens: &[usize]) -> Result<usize, CellError> {
        self.two_sided.find_cell(gens).ok_or(CellError::NotACell)
    }

    /// Left cells contained in two-sided cell `j`.
    pub fn left_cells_in(&self, j: usize) -> Vec<usize> {
        (0..self.left.len())
            .filter(|&l| self.two_sided.cell_of[self.left.cells[l][0]] == j)
            .collect()
    }

    pub fn right_cells_in(&self, j: usize) -> Vec<usize> {
        (0..self.right.len())
            .filter(|&r| self.two_sided.cell_of[self.right.cells[r][0]] == j)
            .collect()
    }
}

/// Witness `(F, G, H)` with `H` a summand of `F ∘ G`, all in the cell.
pub fn is_idempotent_cell(
    t: &MultiTable,
    cells: &Cells,
    j: &[usize],
) -> Result<Option<(usize, usize, usize)>, CellError> {
    let idx = cells.check_cell(j)?;
    let members = &cells.two_sided.cells[idx];
    for &f in members {
        for &g in members {
            if !t.composable(f, g) {
                continue;
            }
            if let Some(h) = t.product(f, g).keys().find(|h| members.contains(h)) {
                return Ok(Some((f, g, *h)));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegularityFailure {
    ComparableLeftCells { a: Vec<String>, b: Vec<String> },
    ComparableRightCells { a: Vec<String>, b: Vec<String> },
    Intersection { left: Vec<String>, right: Vec<String>, size: usize },
}

pub fn is_strongly_regular(
    t: &MultiTable,
    cells: &Cells,
    j: &[usize],
) -> Result<Option<RegularityFailure>, CellError> {
    let idx = cells.check_cell(j)?;
    let lefts = cells.left_cells_in(idx);
    let rights = cells.right_cells_in(idx);
    for &a in &lefts {
        for &b in &lefts {
            if a != b && cells.left.cell_le(a, b) {
                return Ok(Some(RegularityFailure::ComparableLeftCells {
                    a: cells.left.cell_names(t, a),
                    b: cells.left.cell_names(t, b),
                }));
            }
        }
    }
    for &a in &rights {
        for &b in &rights {
            if a != b && cells.right.cell_le(a, b) {
                return Ok(Some(RegularityFailure::ComparableRightCells {
                    a: cells.right.cell_names(t, a),
                    b: cells.right.cell_names(t, b),
                }));
            }
        }
    }
    for &l in &lefts {
        for &r in &rights {
            let size = cells.left.cells[l]
                .iter()
                .filter(|g| cells.right.cell_of[**g] == r)
                .count();
            if size != 1 {
                return Ok(Some(RegularityFailure::Intersection {
                    left: cells.left.cell_names(t, l),
                    right: cells.right.cell_names(t, r),
                    size,
                }));
            }
        }
    }
    Ok(None)
}

/// Generators `F` whose two-sided cell differs from that of `F*`.
pub fn star_cell_compat(
    t: &MultiTable,
    cells: &Cells,
) -> Result<Vec<(String, String)>, crate::multitable::TableError> {
    let star = t.star().ok_or(crate::multitable::TableError::NoStar)?;
    Ok((0..t.len())
        .filter(|&g| cells.j_cell(g) != cells.j_cell(star[g]))
        .map(|g| (t.name(g).to_string(), t.name(star[g]).to_string()))
        .collect())
}
