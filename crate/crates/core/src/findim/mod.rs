//! Finite-dimensional algebras given by structure constants, their modules,
//! Hom spaces, radicals and stable endomorphism dimensions.

mod bimodule;
mod examples;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::linalg::{span_basis, Matrix, SparseEchelon, SparseRow};
use crate::scalar::{Field, Scalar, ScalarError};

pub use bimodule::{tensor_over_dim, Bimodule};
pub use examples::{
    coinvariant_from_reduction, cyclic_quotient_determinant, identity_bimodule, identity_bimodule_stable_end,
    quotients_isomorphic, reduction_identities, verify_quotient_module, zigzag_algebra, IdentityBimoduleReport,
    QuotientModuleReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FindimError {
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("subset is not a unital subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("subalgebra is not local (semisimple quotient has dimension {0})")]
    NotLocal(usize),
    #[error("vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sparse structure-constant algebra: `b_i · b_j = Σ_k c[i][j][k] b_k`.
#[derive(Debug, Clone)]
pub struct FinDimAlgebra {
    field: Field,
    names: Vec<String>,
    mult: Vec<Vec<SparseRow>>,
    unit: Vec<Scalar>,
    idempotents: Vec<Vec<Scalar>>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for FinDimAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.names == other.names
            && self.mult == other.mult
            && self.unit == other.unit
            && self.idempotents == other.idempotents
    }
}

impl Eq for FinDimAlgebra {}

impl FinDimAlgebra {
    /// `products[i][j]` lists the coordinates of `b_i · b_j`; zeros are dropped and
    /// indices sorted.
    pub fn new(field: &Field, names: Vec<String>, products: Vec<Vec<SparseRow>>, unit: Vec<Scalar>) -> Self {
        let d = names.len();
        assert_eq!(products.len(), d);
        assert_eq!(unit.len(), d);
        let mult = products
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e: SparseRow| {
                        let mut e: SparseRow = e.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                        e.sort_by_key(|(i, _)| *i);
                        e
                    })
                    .collect()
            })
            .collect();
        FinDimAlgebra {
            field: field.clone(),
            names,
            mult,
            unit,
            idempotents: Vec::new(),
            generators: OnceLock::new(),
        }
    }

    pub fn with_idempotents(mut self, idempotents: Vec<Vec<Scalar>>) -> Self {
        self.idempotents = idempotents;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Result<usize, FindimError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| FindimError::UnknownBasis(name.to_string()))
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &SparseRow {
        &self.mult[i][j]
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.mult[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ a · v`.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(&self.field, d, d);
        for j in 0..d {
            let col = self.mul(a, &self.basis_vector(j));
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Matrix of `v ↦ v · a`.
    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(&self.field, d, d);
        for j in 0..d {
            let col = self.mul(&self.basis_vector(j), a);
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Associativity, unit and idempotent violations, as text.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let d = self.dim();
        for i in 0..d {
            let bi = self.basis_vector(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                out.push(format!("unit law fails for {}", self.names[i]));
            }
            for j in 0..d {
                let bij = self.mul(&bi, &self.basis_vector(j));
                for k in 0..d {
                    let bk = self.basis_vector(k);
                    let left = self.mul(&bij, &bk);
                    let right = self.mul(&bi, &self.mul(&self.basis_vector(j), &bk));
                    if left != right {
                        out.push(format!(
                            "associativity fails for ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        if !self.idempotents.is_empty() {
            let mut sum = vec![self.field.zero(); d];
            for (a, e) in self.idempotents.iter().enumerate() {
                for (b, f) in self.idempotents.iter().enumerate() {
                    let p = self.mul(e, f);
                    let expected = if a == b { e.clone() } else { vec![self.field.zero(); d] };
                    if p != expected {
                        out.push(format!("idempotents {a} and {b} are not orthogonal idempotents"));
                    }
                }
                sum = sum.iter().zip(e).map(|(x, y)| x + y).collect();
            }
            if sum != self.unit {
                out.push("idempotents do not sum to the unit".into());
            }
        }
        out
    }

    fn span_closure(&self, start: Vec<Vec<Scalar>>, gens: &[Vec<Scalar>]) -> SparseEchelon {
        let mut ech = SparseEchelon::new(&self.field, self.dim());
        let mut queue = Vec::new();
        for v in start {
            if ech.insert_dense(&v) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for g in gens {
                let w = self.mul(g, &v);
                if ech.insert_dense(&w) {
                    queue.push(w);
                }
            }
        }
        ech
    }

    /// Basis elements generating the algebra together with the unit, chosen greedily.
    pub fn generating_set(&self) -> Vec<usize> {
        self.generators.get_or_init(|| self.compute_generating_set()).clone()
    }

    fn compute_generating_set(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        let mut span = self.span_closure(vec![self.unit.clone()], &gens);
        for i in 0..self.dim() {
            if span.rank() == self.dim() {
                break;
            }
            let b = self.basis_vector(i);
            if span.contains_dense(&b) {
                continue;
            }
            chosen.push(i);
            gens.push(b);
            span = self.span_closure(vec![self.unit.clone()], &gens);
        }
        chosen
    }

    /// Jacobson radical via the trace form `(x, y) ↦ tr(L_{xy})`.
    pub fn radical(&self) -> Vec<Vec<Scalar>> {
        let d = self.dim();
        let traces: Vec<Scalar> = (0..d)
            .map(|k| {
                let mut t = self.field.zero();
                for m in 0..d {
                    if let Some((_, c)) = self.mult[k][m].iter().find(|(i, _)| *i == m) {
                        t = &t + c;
                    }
                }
                t
            })
            .collect();
        let mut ech = SparseEchelon::new(&self.field, d);
        for j in 0..d {
            let row: SparseRow = (0..d)
                .filter_map(|i| {
                    let mut s = self.field.zero();
                    for (k, c) in &self.mult[i][j] {
                        s = &s + &(c * &traces[*k]);
                    }
                    (!s.is_zero()).then_some((i, s))
                })
                .collect();
            ech.insert(row);
        }
        ech.kernel()
    }

    pub fn opposite(&self) -> FinDimAlgebra {
        let d = self.dim();
        let products = (0..d)
            .map(|i| (0..d).map(|j| self.mult[j][i].clone()).collect())
            .collect();
        FinDimAlgebra::new(&self.field, self.names.clone(), products, self.unit.clone())
    }

    /// `self ⊗ other` with basis `b_i ⊗ c_j` at index `i * dim(other) + j`.
    pub fn tensor(&self, other: &FinDimAlgebra) -> FinDimAlgebra {
        let (p, q) = (self.dim(), other.dim());
        let names = (0..p)
            .flat_map(|i| (0..q).map(move |j| (i, j)))
            .map(|(i, j)| format!("{}.{}", self.names[i], other.names[j]))
            .collect();
        let mut products = vec![vec![Vec::new(); p * q]; p * q];
        for i in 0..p {
            for j in 0..q {
                for i2 in 0..p {
                    for j2 in 0..q {
                        let mut entry: SparseRow = Vec::new();
                        for (a, c) in &self.mult[i][i2] {
                            for (b, e) in &other.mult[j][j2] {
                                entry.push((a * q + b, c * e));
                            }
                        }
                        products[i * q + j][i2 * q + j2] = entry;
                    }
                }
            }
        }
        let mut unit = vec![self.field.zero(); p * q];
        for i in 0..p {
            for j in 0..q {
                unit[i * q + j] = &self.unit[i] * &other.unit[j];
            }
        }
        FinDimAlgebra::new(&self.field, names, products, unit)
    }

    /// The subalgebra spanned by `basis` as an algebra in its own right.
    pub fn subalgebra(&self, basis: &[Vec<Scalar>]) -> Result<FinDimAlgebra, FindimError> {
        let d = self.dim();
        let rref = span_basis(&self.field, d, basis);
        let pivots: Vec<usize> = rref
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        let coords = |v: &[Scalar]| -> Option<Vec<Scalar>> {
            let c: Vec<Scalar> = pivots.iter().map(|p| v[*p].clone()).collect();
            let mut back = vec![self.field.zero(); d];
            for (ci, row) in c.iter().zip(&rref) {
                for (b, x) in back.iter_mut().zip(row) {
                    *b = &*b + &(ci * x);
                }
            }
            (back == v).then_some(c)
        };
        let unit = coords(&self.unit).ok_or_else(|| FindimError::NotSubalgebra("unit is missing".into()))?;
        let s = rref.len();
        let mut products = vec![vec![Vec::new(); s]; s];
        for i in 0..s {
            for j in 0..s {
                let p = self.mul(&rref[i], &rref[j]);
                let c = coords(&p).ok_or_else(|| {
                    FindimError::NotSubalgebra(format!("product of basis vectors {i} and {j} leaves the span"))
                })?;
                products[i][j] = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            }
        }
        let names = (0..s).map(|i| format!("s{i}")).collect();
        Ok(FinDimAlgebra::new(&self.field, names, products, unit))
    }
}

/// Left module given by one action matrix per algebra basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FDModule {
    algebra: Arc<FinDimAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl FDModule {
    pub fn new(algebra: Arc<FinDimAlgebra>, dim: usize, action: Vec<Matrix>) -> Self {
        assert_eq!(action.len(), algebra.dim());
        FDModule { algebra, dim, action }
    }

    pub fn regular(algebra: Arc<FinDimAlgebra>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_mult(&algebra.basis_vector(i)))
            .collect();
        let dim = algebra.dim();
        FDModule { algebra, dim, action }
    }

    pub fn algebra(&self) -> &Arc<FinDimAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    fn field(&self) -> &Field {
        self.algebra.field()
    }

    /// Matrix of the action of an arbitrary algebra element.
    pub fn act_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[i].scale(c));
            }
        }
        m
    }

    pub fn act(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.dim];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.action[i].mul_vec(v)) {
                *o = &*o + &(c * &x);
            }
        }
        out
    }

    pub fn validate(&self) -> Vec<String> {
        let alg = &self.algebra;
        let mut out = Vec::new();
        if self.act_matrix(alg.unit()) != Matrix::identity(self.field(), self.dim) {
            out.push("unit does not act as the identity".into());
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let prod = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j));
                if lhs != self.act_matrix(&prod) {
                    out.push(format!("action fails on {} * {}", alg.names()[i], alg.names()[j]));
                }
            }
        }
        out
    }

    /// Submodule generated by `vectors`, as a reduced echelon basis.
    pub fn generated_submodule(&self, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let alg = &self.algebra;
        let gens: Vec<usize> = alg.generating_set();
        let mut ech = SparseEchelon::new(self.field(), self.dim);
        let mut queue = Vec::new();
        for v in vectors {
            if ech.insert_dense(v) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for &g in &gens {
                let w = self.action[g].mul_vec(&v);
                if ech.insert_dense(&w) {
                    queue.push(w);
                }
            }
        }
        ech.basis()
    }

    /// Splits along an invariant subspace with reduced echelon basis `sub`.
    fn split(&self, sub: &[Vec<Scalar>]) -> (FDModule, FDModule) {
        let field = self.field().clone();
        let pivots: Vec<usize> = sub
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let reduce = |w: &[Scalar]| -> Vec<Scalar> {
            let mut w = w.to_vec();
            for (p, row) in pivots.iter().zip(sub) {
                let c = w[*p].clone();
                if c.is_zero() {
                    continue;
                }
                for (x, r) in w.iter_mut().zip(row) {
                    *x = &*x - &(&c * r);
                }
            }
            w
        };
        let k = sub.len();
        let q = free.len();
        let mut kact = Vec::new();
        let mut qact = Vec::new();
        for m in &self.action {
            let mut km = Matrix::zeros(&field, k, k);
            for (j, v) in sub.iter().enumerate() {
                let w = m.mul_vec(v);
                for (i, p) in pivots.iter().enumerate() {
                    km.set(i, j, w[*p].clone());
                }
            }
            kact.push(km);
            let mut qm = Matrix::zeros(&field, q, q);
            for (j, f) in free.iter().enumerate() {
                let mut e = vec![field.zero(); self.dim];
                e[*f] = field.one();
                let w = reduce(&m.mul_vec(&e));
                for (i, g) in free.iter().enumerate() {
                    qm.set(i, j, w[*g].clone());
                }
            }
            qact.push(qm);
        }
        (
            FDModule::new(self.algebra.clone(), k, kact),
            FDModule::new(self.algebra.clone(), q, qact),
        )
    }

    /// `K = A·v` and `M / K`.
    pub fn quotient_by_cyclic(&self, v: &[Scalar]) -> Result<(FDModule, FDModule), FindimError> {
        if v.len() != self.dim {
            return Err(FindimError::Dimension {
                expected: self.dim,
                got: v.len(),
            });
        }
        let sub = self.generated_submodule(&[v.to_vec()]);
        Ok(self.split(&sub))
    }

    pub fn quotient_by(&self, vectors: &[Vec<Scalar>]) -> (FDModule, FDModule) {
        let sub = self.generated_submodule(vectors);
        self.split(&sub)
    }

    /// `rad(A) · M`.
    pub fn radical_submodule(&self) -> Vec<Vec<Scalar>> {
        let rad = self.algebra.radical();
        let mut images = Vec::new();
        for r in &rad {
            let m = self.act_matrix(r);
            for j in 0..self.dim {
                images.push(m.col(j));
            }
        }
        span_basis(self.field(), self.dim, &images)
    }

    /// Dimensions of `M ⊇ rad M ⊇ rad² M ⊇ ... ⊇ 0`.
    pub fn radical_layers(&self) -> Vec<usize> {
        let rad = self.algebra.radical();
        let rad_mats: Vec<Matrix> = rad.iter().map(|r| self.act_matrix(r)).collect();
        let mut current: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|i| {
                let mut e = vec![self.field().zero(); self.dim];
                e[i] = self.field().one();
                e
            })
            .collect();
        let mut dims = vec![current.len()];
        while !current.is_empty() {
            let images: Vec<Vec<Scalar>> = rad_mats
                .iter()
                .flat_map(|m| current.iter().map(move |v| m.mul_vec(v)))
                .collect();
            let next = span_basis(self.field(), self.dim, &images);
            if next.len() == current.len() {
                break;
            }
            current = next;
            dims.push(current.len());
        }
        dims
    }

    /// Radical filtration has one-dimensional layers.
    pub fn is_uniserial_by_layers(&self) -> bool {
        let d = self.radical_layers();
        d.last() == Some(&0) && d.windows(2).all(|w| w[0] - w[1] == 1)
    }
}

/// Basis of `Hom_A(M, N)`; each map is an `N.dim × M.dim` matrix.
pub fn hom_space(m: &FDModule, n: &FDModule) -> Result<Vec<Matrix>, FindimError> {
    if m.algebra != n.algebra {
        return Err(FindimError::AlgebraMismatch);
    }
    let field = m.field().clone();
    let (p, q) = (n.dim, m.dim);
    let unknowns = p * q;
    let mut ech = SparseEchelon::new(&field, unknowns);
    for g in m.algebra.generating_set() {
        let (rn, rm) = (&n.action[g], &m.action[g]);
        for a in 0..p {
            for b in 0..q {
                // (ρ_N(g) φ - φ ρ_M(g))[a][b]
                let mut row: SparseRow = Vec::new();
                for r in 0..p {
                    let c = rn.get(a, r);
                    if !c.is_zero() {
                        row.push((r * q + b, c.clone()));
                    }
                }
                for r in 0..q {
                    let c = rm.get(r, b);
                    if !c.is_zero() {
                        row.push((a * q + r, -c));
                    }
                }
                ech.insert(row);
            }
        }
    }
    Ok(ech
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_vec(&field, p, q, v))
        .collect())
}

/// Span of endomorphisms of `M` factoring through the regular module, as a basis.
pub fn projective_factoring_maps(m: &FDModule) -> Vec<Matrix> {
    let alg = m.algebra.clone();
    let field = alg.field().clone();
    let reg = FDModule::regular(alg.clone());
    let to_reg = hom_space(m, &reg).expect("same algebra");
    let mut composites = Vec::new();
    for f in &to_reg {
        for t in 0..m.dim {
            let mut target = vec![field.zero(); m.dim];
            target[t] = field.one();
            // g(a) = a · target
            let mut c = Matrix::zeros(&field, m.dim, m.dim);
            for q in 0..m.dim {
                let a = f.col(q);
                for (i, x) in m.act(&a, &target).into_iter().enumerate() {
                    c.set(i, q, x);
                }
            }
            composites.push(c.to_vec());
        }
    }
    span_basis(&field, m.dim * m.dim, &composites)
        .into_iter()
        .map(|v| Matrix::from_vec(&field, m.dim, m.dim, v))
        .collect()
}

/// `dim End(M) - dim(maps factoring through a projective)`.
pub fn stable_end_dim(m: &FDModule) -> usize {
    let end = hom_space(m, m).expect("same module").len();
    end - projective_factoring_maps(m).len()
}

/// Freeness of `M` over a local unital subalgebra spanned by `s_basis`.
pub fn free_over_local_subalgebra(m: &FDModule, s_basis: &[Vec<Scalar>]) -> Result<bool, FindimError> {
    let alg = m.algebra();
    let sub = alg.subalgebra(s_basis)?;
    let rref = span_basis(alg.field(), alg.dim(), s_basis);
    let rad_coords = sub.radical();
    let top = sub.dim() - rad_coords.len();
    if top != 1 {
        return Err(FindimError::NotLocal(top));
    }
    let rad: Vec<Vec<Scalar>> = rad_coords
        .iter()
        .map(|c| {
            let mut v = vec![alg.field().zero(); alg.dim()];
            for (ci, row) in c.iter().zip(&rref) {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x + &(ci * r);
                }
            }
            v
        })
        .collect();
    let mut images = Vec::new();
    for r in &rad {
        let a = m.act_matrix(r);
        for j in 0..m.dim() {
            images.push(a.col(j));
        }
    }
    let rad_m = span_basis(alg.field(), m.dim(), &images).len();
    let s = sub.dim();
    Ok(m.dim() % s == 0 && m.dim() - rad_m == m.dim() / s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers() -> Arc<FinDimAlgebra> {
        let f = Field::rationals();
        let products = vec![
            vec![vec![(0, f.one())], vec![(1, f.one())]],
            vec![vec![(1, f.one())], vec![]],
        ];
        Arc::new(FinDimAlgebra::new(
            &f,
            vec!["one".into(), "x".into()],
            products,
            vec![f.one(), f.zero()],
        ))
    }

    #[test]
    fn dual_numbers_basics() {
        let a = dual_numbers();
        assert!(a.validate().is_empty());
        let rad = a.radical();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0][0], a.field().zero());
        assert_eq!(a.generating_set(), vec![1]);
    }

    #[test]
    fn regular_module_end_and_stable_end() {
        let a = dual_numbers();
        let reg = FDModule::regular(a.clone());
        assert!(reg.validate().is_empty());
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 2);
        assert_eq!(stable_end_dim(&reg), 0);
    }

    #[test]
    fn simple_module_is_not_free() {
        let a = dual_numbers();
        let f = a.field().clone();
        let reg = FDModule::regular(a.clone());
        let (_, simple) = reg.quotient_by_cyclic(&[f.zero(), f.one()]).unwrap();
        assert_eq!(simple.dim(), 1);
        let whole = vec![a.basis_vector(0), a.basis_vector(1)];
        assert!(!free_over_local_subalgebra(&simple, &whole).unwrap());
        assert!(free_over_local_subalgebra(&reg, &whole).unwrap());
        assert_eq!(stable_end_dim(&simple), 1);
    }

    #[test]
    fn quotient_by_zero_vector() {
        let a = dual_numbers();
        let f = a.field().clone();
        let reg = FDModule::regular(a);
        let (k, q) = reg.quotient_by_cyclic(&[f.zero(), f.zero()]).unwrap();
        assert_eq!(k.dim(), 0);
        assert_eq!(q.dim(), 2);
        assert_eq!(q, reg);
    }

    #[test]
    fn tensor_and_opposite_are_associative() {
        let a = dual_numbers();
        let e = a.tensor(&a.opposite());
        assert_eq!(e.dim(), 4);
        assert!(e.validate().is_empty());
        assert_eq!(e.radical().len(), 3);
    }
}
