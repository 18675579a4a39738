//! Exact linear algebra over a [`Field`]: dense matrices and an incremental
//! sparse row-echelon form used for large homogeneous systems.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: Field,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.set(i, j, field.int(x));
                }
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn pow(&self, n: u32) -> Matrix {
        let mut out = Matrix::identity(&self.field, self.rows);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Flattens row-major into one vector.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = SparseEchelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            ech.insert_dense(&self.row(i));
        }
        ech.rank()
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut ech = SparseEchelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            ech.insert_dense(&self.row(i));
        }
        ech.kernel()
    }

    pub fn determinant(&self) -> Result<Scalar, ScalarError> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                for j in 0..n {
                    let tmp = m.get(p, j).clone();
                    m.set(p, j, m.get(c, j).clone());
                    m.set(c, j, tmp);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inverse()?;
            for r in c + 1..n {
                let f = m.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(r, j) - &(&f * m.get(c, j));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }
}

pub type SparseRow = Vec<(usize, Scalar)>;

/// Incremental row-echelon form. Each stored row is monic at its pivot and
/// has no entries left of it.
#[derive(Clone)]
pub struct SparseEchelon {
    field: Field,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
    pivots: HashMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new(field: &Field, ncols: usize) -> Self {
        SparseEchelon {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, coef)) = next else { break };
            let prow = &self.rows[self.pivots[&c]];
            for (pc, pv) in prow {
                let delta = &coef * pv;
                let entry = row.entry(*pc).or_insert_with(|| self.field.zero());
                *entry = &*entry - &delta;
                if entry.is_zero() {
                    row.remove(pc);
                }
            }
            cursor = c + 1;
        }
        row
    }

    /// Adds a row; returns true when it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let map: BTreeMap<usize, Scalar> = row.into_iter().filter(|(_, v)| !v.is_zero()).fold(
            BTreeMap::new(),
            |mut acc, (c, v)| {
                assert!(c < self.ncols, "column index out of range");
                let e = acc.entry(c).or_insert_with(|| self.field.zero());
                *e = &*e + &v;
                acc
            },
        );
        let map: BTreeMap<usize, Scalar> = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let reduced = self.reduce(map);
        let Some((&lead, lv)) = reduced.iter().next() else {
            return false;
        };
        let inv = lv.inverse().expect("nonzero leading entry");
        let normalized = reduced.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(normalized);
        true
    }

    pub fn insert_dense(&mut self, row: &[Scalar]) -> bool {
        self.insert(
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        )
    }

    /// True when `row` lies in the span of the inserted rows.
    pub fn contains_dense(&self, row: &[Scalar]) -> bool {
        let map = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        self.reduce(map).is_empty()
    }

    fn reduced_rows(&self) -> Vec<(usize, BTreeMap<usize, Scalar>)> {
        let mut order: Vec<usize> = self.pivots.keys().copied().collect();
        order.sort_unstable();
        let mut rows: Vec<(usize, BTreeMap<usize, Scalar>)> = order
            .iter()
            .map(|c| (*c, self.rows[self.pivots[c]].clone()))
            .collect();
        // back substitution, last pivot first
        for i in (0..rows.len()).rev() {
            let (pc, prow) = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                let Some(coef) = row.1.get(&pc).cloned() else { continue };
                for (c, v) in &prow {
                    let delta = &coef * v;
                    let e = row.1.entry(*c).or_insert_with(|| self.field.zero());
                    *e = &*e - &delta;
                    if e.is_zero() {
                        row.1.remove(c);
                    }
                }
            }
        }
        rows
    }

    /// Reduced row-echelon basis of the row space, as dense vectors.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.reduced_rows()
            .into_iter()
            .map(|(_, row)| {
                let mut v = vec![self.field.zero(); self.ncols];
                for (c, x) in row {
                    v[c] = x;
                }
                v
            })
            .collect()
    }

    /// Basis of the right null space of the inserted rows.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let rows = self.reduced_rows();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![self.field.zero(); self.ncols];
            v[free] = self.field.one();
            for (pc, row) in &rows {
                if let Some(x) = row.get(&free) {
                    v[*pc] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Basis of the span of `vectors`, in reduced echelon form.
pub fn span_basis(field: &Field, dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut ech = SparseEchelon::new(field, dim);
    for v in vectors {
        ech.insert_dense(v);
    }
    ech.basis()
}

pub fn span_rank(field: &Field, dim: usize, vectors: &[Vec<Scalar>]) -> usize {
    let mut ech = SparseEchelon::new(field, dim);
    for v in vectors {
        ech.insert_dense(v);
    }
    ech.rank()
}

/// Solves `m · x = b`, returning one solution if any exists.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = m.cols();
    let field = m.field();
    let mut aug = SparseEchelon::new(field, n + 1);
    for i in 0..m.rows() {
        let mut row = m.row(i);
        row.push(b[i].clone());
        aug.insert_dense(&row);
    }
    if aug.pivots.contains_key(&n) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    for (pc, row) in aug.reduced_rows() {
        if let Some(v) = row.get(&n) {
            x[pc] = v.clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = q();
        let m = Matrix::from_ints(&f, &[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn determinant_matches_expansion() {
        let f = q();
        let m = Matrix::from_ints(&f, &[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        // 2(12-1) - 1(4-0) = 18
        assert_eq!(m.determinant().unwrap(), f.int(18));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = q();
        let m = Matrix::from_ints(&f, &[vec![1, 1], vec![1, -1]]);
        let x = solve(&m, &[f.int(3), f.int(1)]).unwrap();
        assert_eq!(x, vec![f.int(2), f.int(1)]);
        let s = Matrix::from_ints(&f, &[vec![1, 1], vec![2, 2]]);
        assert!(solve(&s, &[f.int(1), f.int(3)]).is_none());
    }

    #[test]
    fn echelon_membership() {
        let f = Field::sqrt(2).unwrap();
        let r = f.theta().unwrap();
        let mut e = SparseEchelon::new(&f, 2);
        assert!(e.insert_dense(&[f.one(), r.clone()]));
        assert!(!e.insert_dense(&[r.clone(), f.int(2)]));
        assert!(e.contains_dense(&[f.int(3), &r * &f.int(3)]));
        assert!(!e.contains_dense(&[f.one(), f.one()]));
    }
}
