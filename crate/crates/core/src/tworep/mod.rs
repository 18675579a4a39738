//! Representations at the level of non-negative integer matrices: one
//! matrix per generator acting on a basis of indecomposable objects.

mod certificate;
mod ses;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cells::{self, Cells, Reach};
use crate::linalg::Matrix;
use crate::multitable::MultiTable;
use crate::scalar::Field;

pub use certificate::{
    dext_empty_certificate, recheck_certificate, semisimplicity_bruteforce, semisimplicity_certificate,
    BruteForceReport, Certificate, CertificateError,
};
pub use ses::{dext_filters, ses_split, DextReport, FilterOutcome, SesDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representation is not transitive ({0} classes)")]
    NotTransitive(usize),
    #[error("no unique maximal non-annihilated two-sided cell (candidates: {0:?})")]
    NonUniqueMaximal(Vec<Vec<String>>),
    #[error("every generator acts by zero")]
    ZeroRepresentation,
    #[error("apex {0:?} is not idempotent")]
    ApexNotIdempotent(Vec<String>),
    #[error("annihilated cells do not form an upper set: {0:?} is annihilated but {1:?} above it is not")]
    AnnihilatorNotUpperSet(Vec<String>, Vec<String>),
    #[error("apex is {found:?}, expected {expected:?}")]
    ApexMismatch { expected: Vec<String>, found: Vec<String> },
    #[error("sub-basis is not closed under the action: {f} sends {x} to {y}")]
    NotActionClosed { f: String, x: String, y: String },
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("representations are over different tables")]
    TableMismatch,
    #[error("matrix for `{gen}` has shape {rows}x{cols}, expected {dim}x{dim}")]
    Shape { gen: String, rows: usize, cols: usize, dim: usize },
}

/// Square matrix of non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMatrix {
    n: usize,
    data: Vec<u64>,
}

impl fmt::Debug for IMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl IMatrix {
    pub fn zeros(n: usize) -> Self {
        IMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, *x);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.n + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[u64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IMatrix) -> IMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &IMatrix, c: u64) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    /// Principal submatrix on the given indices, in that order.
    pub fn restrict(&self, idx: &[usize]) -> IMatrix {
        let mut out = IMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    pub fn to_scalar(&self, field: &Field) -> Matrix {
        let rows: Vec<Vec<i64>> = self.rows().iter().map(|r| r.iter().map(|x| *x as i64).collect()).collect();
        if self.n == 0 {
            return Matrix::zeros(field, 0, 0);
        }
        Matrix::from_ints(field, &rows)
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLabel {
    pub name: String,
    pub object: usize,
}

/// One matrix per generator of the table, over a common ordered basis.
/// Column `X`, row `Y` of `mats[F]` is the multiplicity of `Y` in `F X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMatrices {
    table: Arc<MultiTable>,
    basis: Vec<BasisLabel>,
    mats: Vec<IMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepViolation {
    Functoriality { f: String, g: String },
    Identity { identity: String },
    Typing { gen: String, from: String, to: String },
}

impl fmt::Display for RepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepViolation::Functoriality { f: a, g } => {
                write!(f, "[{a}][{g}] differs from the matrix of {a} * {g}")
            }
            RepViolation::Identity { identity } => write!(f, "[{identity}] is not the identity"),
            RepViolation::Typing { gen, from, to } => {
                write!(f, "[{gen}] maps {from} to {to} across the wrong objects")
            }
        }
    }
}

/// Classes of the action preorder with the cover relation between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepDiagram {
    pub classes: Vec<Vec<usize>>,
    /// Cover edges `(ρ, τ)`: some generator sends an object of ρ to one of τ.
    pub hasse: Vec<(usize, usize)>,
    /// Generators realising each cover edge.
    pub decorations: BTreeMap<(usize, usize), Vec<usize>>,
}

impl RepDiagram {
    pub fn is_semisimple(&self) -> bool {
        self.hasse.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Apex {
    /// Index of the two-sided cell.
    pub cell: usize,
    /// Witness of idempotency.
    pub witness: (usize, usize, usize),
    /// Two-sided cells annihilated by the representation.
    pub annihilated: Vec<usize>,
}

impl RepMatrices {
    /// All matrices zero except the identities.
    pub fn new(table: Arc<MultiTable>, basis: Vec<BasisLabel>) -> Self {
        let n = basis.len();
        let mut mats = vec![IMatrix::zeros(n); table.len()];
        for (o, _) in table.objects().iter().enumerate() {
            if let Some(id) = table.identity_of(o) {
                for (i, b) in basis.iter().enumerate() {
                    if b.object == o {
                        mats[id].set(i, i, 1);
                    }
                }
            }
        }
        RepMatrices { table, basis, mats }
    }

    pub fn table(&self) -> &Arc<MultiTable> {
        &self.table
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn label_index(&self, name: &str) -> Result<usize, RepError> {
        self.basis
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| RepError::UnknownLabel(name.to_string()))
    }

    pub fn mat(&self, g: usize) -> &IMatrix {
        &self.mats[g]
    }

    pub fn set_mat(&mut self, g: usize, m: IMatrix) -> Result<(), RepError> {
        if m.dim() != self.dim() {
            return Err(RepError::Shape {
                gen: self.table.name(g).to_string(),
                rows: m.dim(),
                cols: m.dim(),
                dim: self.dim(),
            });
        }
        self.mats[g] = m;
        Ok(())
    }

    pub fn mat_mut(&mut self, g: usize) -> &mut IMatrix {
        &mut self.mats[g]
    }

    /// Every violated functoriality, identity or typing condition.
    pub fn validate(&self) -> Vec<RepViolation> {
        let t = &*self.table;
        let mut out = Vec::new();
        let n = self.dim();
        for g in 0..t.len() {
            let gen = &t.gens()[g];
            for x in 0..n {
                for y in 0..n {
                    if self.mats[g].get(y, x) > 0
                        && (self.basis[x].object != gen.source || self.basis[y].object != gen.target)
                    {
                        out.push(RepViolation::Typing {
                            gen: gen.name.clone(),
                            from: self.basis[x].name.clone(),
                            to: self.basis[y].name.clone(),
                        });
                    }
                }
            }
        }
        for (o, _) in t.objects().iter().enumerate() {
            let Some(id) = t.identity_of(o) else { continue };
            let mut expected = IMatrix::zeros(n);
            for (i, b) in self.basis.iter().enumerate() {
                if b.object == o {
                    expected.set(i, i, 1);
                }
            }
            if self.mats[id] != expected {
                out.push(RepViolation::Identity {
                    identity: t.name(id).to_string(),
                });
            }
        }
        for f in 0..t.len() {
            for g in 0..t.len() {
                if !t.composable(f, g) {
                    continue;
                }
                let lhs = self.mats[f].mul(&self.mats[g]);
                let mut rhs = IMatrix::zeros(n);
                for (h, m) in t.product(f, g) {
                    rhs.add_scaled(&self.mats[*h], *m);
                }
                if lhs != rhs {
                    out.push(RepViolation::Functoriality {
                        f: t.name(f).to_string(),
                        g: t.name(g).to_string(),
                    });
                }
            }
        }
        out
    }

    /// `X → Y` iff some generator has `Y` as a summand of `F X`, closed up.
    pub fn action_preorder(&self) -> Reach {
        let n = self.dim();
        let mut succ = vec![Vec::new(); n];
        for m in &self.mats {
            for (x, s) in succ.iter_mut().enumerate() {
                for y in 0..n {
                    if m.get(y, x) > 0 && !s.contains(&y) {
                        s.push(y);
                    }
                }
            }
        }
        Reach::closure(&succ)
    }

    pub fn diagram(&self) -> RepDiagram {
        let reach = self.action_preorder();
        let (classes, class_of) = reach.classes();
        let le: Vec<Vec<bool>> = classes
            .iter()
            .map(|a| classes.iter().map(|b| reach.reaches(a[0], b[0])).collect())
            .collect();
        let hasse = cells::transitive_reduction(&le);
        let mut decorations = BTreeMap::new();
        for &(rho, tau) in &hasse {
            let gens: Vec<usize> = (0..self.mats.len())
                .filter(|&g| {
                    classes[rho].iter().any(|&x| {
                        classes[tau]
                            .iter()
                            .any(|&y| self.mats[g].get(y, x) > 0 && class_of[y] == tau)
                    })
                })
                .collect();
            decorations.insert((rho, tau), gens);
        }
        RepDiagram {
            classes,
            hasse,
            decorations,
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.action_preorder().classes().0.len() <= 1
    }

    /// Generators acting by the zero matrix.
    pub fn annihilates(&self, g: usize) -> bool {
        self.mats[g].is_zero()
    }

    /// Restriction to a subset of basis labels (principal submatrices).
    pub fn restrict(&self, idx: &[usize]) -> RepMatrices {
        RepMatrices {
            table: self.table.clone(),
            basis: idx.iter().map(|i| self.basis[*i].clone()).collect(),
            mats: self.mats.iter().map(|m| m.restrict(idx)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &RepMatrices) -> Result<RepMatrices, RepError> {
        if self.table != other.table {
            return Err(RepError::TableMismatch);
        }
        let (a, b) = (self.dim(), other.dim());
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| {
                let mut m = IMatrix::zeros(a + b);
                for i in 0..a {
                    for j in 0..a {
                        m.set(i, j, x.get(i, j));
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m.set(a + i, a + j, y.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(RepMatrices {
            table: self.table.clone(),
            basis,
            mats,
        })
    }

    /// Reorders the basis: new position `i` holds old label `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> RepMatrices {
        self.restrict(perm)
    }
}

/// Principal representation at `object`: basis is the generators with that source,
/// and `F` acts by left composition.
pub fn principal_rep(table: Arc<MultiTable>, object: usize) -> RepMatrices {
    let members: Vec<usize> = (0..table.len()).filter(|&g| table.gens()[g].source == object).collect();
    transitive_action_on(table, &members)
}

/// Cell representation of a left cell: the left action restricted to the cell,
/// discarding summands outside it.
pub fn cell_rep(table: Arc<MultiTable>, cells: &Cells, left_cell: usize) -> RepMatrices {
    let members = cells.left.cells[left_cell].clone();
    transitive_action_on(table, &members)
}

fn transitive_action_on(table: Arc<MultiTable>, members: &[usize]) -> RepMatrices {
    let basis = members
        .iter()
        .map(|&g| BasisLabel {
            name: table.name(g).to_string(),
            object: table.gens()[g].target,
        })
        .collect();
    let mut rep = RepMatrices::new(table.clone(), basis);
    for f in 0..table.len() {
        let mut m = IMatrix::zeros(members.len());
        for (x, &gx) in members.iter().enumerate() {
            if !table.composable(f, gx) {
                continue;
            }
            for (y, &gy) in members.iter().enumerate() {
                if let Some(c) = table.product(f, gx).get(&gy) {
                    m.set(y, x, *c);
                }
            }
        }
        rep.mats[f] = m;
    }
    rep
}

/// The unique maximal two-sided cell not annihilated by a transitive representation.
pub fn apex(r: &RepMatrices, cells: &Cells) -> Result<Apex, RepError> {
    let classes = r.action_preorder().classes().0.len();
    if classes > 1 {
        return Err(RepError::NotTransitive(classes));
    }
    let t = &**r.table();
    let js = &cells.two_sided;
    let alive: Vec<bool> = js.cells.iter().map(|c| c.iter().any(|g| !r.annihilates(*g))).collect();
    let names = |c: usize| js.cell_names(t, c);
    let candidates: Vec<usize> = (0..js.len())
        .filter(|&a| alive[a] && (0..js.len()).all(|b| b == a || !alive[b] || !js.cell_le(a, b)))
        .collect();
    let cell = match candidates.as_slice() {
        [] => return Err(RepError::ZeroRepresentation),
        [c] => *c,
        many => return Err(RepError::NonUniqueMaximal(many.iter().map(|c| names(*c)).collect())),
    };
    let witness = cells::is_idempotent_cell(t, cells, &js.cells[cell])
        .expect("cell of the table")
        .ok_or_else(|| RepError::ApexNotIdempotent(names(cell)))?;
    for a in (0..js.len()).filter(|a| !alive[*a]) {
        if let Some(b) = (0..js.len()).find(|&b| alive[b] && js.cell_le(a, b)) {
            return Err(RepError::AnnihilatorNotUpperSet(names(a), names(b)));
        }
    }
    Ok(Apex {
        cell,
        witness,
        annihilated: (0..js.len()).filter(|a| !alive[*a]).collect(),
    })
}

/// True iff the sum of the matrices of the cell has only positive entries.
pub fn check_positivity(r: &RepMatrices, cells: &Cells, j: usize) -> Result<bool, RepError> {
    let a = apex(r, cells)?;
    if a.cell != j {
        let t = &**r.table();
        return Err(RepError::ApexMismatch {
            expected: cells.two_sided.cell_names(t, j),
            found: cells.two_sided.cell_names(t, a.cell),
        });
    }
    let mut sum = IMatrix::zeros(r.dim());
    for g in &cells.two_sided.cells[j] {
        sum.add_scaled(r.mat(*g), 1);
    }
    Ok(sum.data.iter().all(|x| *x > 0))
}

/// A basis permutation `p` with `b.mats[F][p[y]][p[x]] = a.mats[F][y][x]` for all `F`.
pub fn permutation_equivalent(a: &RepMatrices, b: &RepMatrices) -> Option<Vec<usize>> {
    if a.table != b.table || a.dim() != b.dim() {
        return None;
    }
    let n = a.dim();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(a: &RepMatrices, b: &RepMatrices, perm: &[usize], upto: usize) -> bool {
        let i = upto;
        for j in 0..=upto {
            for g in 0..a.mats.len() {
                if a.mats[g].get(i, j) != b.mats[g].get(perm[i], perm[j])
                    || a.mats[g].get(j, i) != b.mats[g].get(perm[j], perm[i])
                {
                    return false;
                }
            }
        }
        true
    }
    fn go(a: &RepMatrices, b: &RepMatrices, perm: &mut Vec<usize>, used: &mut Vec<bool>, i: usize) -> bool {
        if i == perm.len() {
            return true;
        }
        for c in 0..perm.len() {
            if used[c] || a.basis[i].object != b.basis[c].object {
                continue;
            }
            perm[i] = c;
            used[c] = true;
            if consistent(a, b, perm, i) && go(a, b, perm, used, i + 1) {
                return true;
            }
            used[c] = false;
        }
        perm[i] = usize::MAX;
        false
    }
    go(a, b, &mut perm, &mut used, 0).then_some(perm)
}
