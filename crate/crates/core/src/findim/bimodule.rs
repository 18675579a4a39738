use std::sync::Arc;

use super::{FinDimAlgebra, FindimError};
use crate::linalg::{span_basis, Matrix, SparseEchelon, SparseRow};
use crate::scalar::Scalar;

/// Bimodule with a left action by `left_alg` and a right action by `right_alg`.
/// `right[i]` is the matrix of `m ↦ m · b_i`.
#[derive(Debug, Clone)]
pub struct Bimodule {
    pub left_alg: Arc<FinDimAlgebra>,
    pub right_alg: Arc<FinDimAlgebra>,
    pub dim: usize,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field().clone();
    let mut m = Matrix::zeros(&field, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        m.set(i * b.rows() + k, j * b.cols() + l, x * y);
                    }
                }
            }
        }
    }
    m
}

/// Subspace with a reduced echelon basis; coordinates are read off at pivots.
struct Subspace {
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(alg: &FinDimAlgebra, vectors: &[Vec<Scalar>]) -> Self {
        let basis = span_basis(alg.field(), alg.dim(), vectors);
        let pivots = basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        Subspace { basis, pivots }
    }

    fn matrix_of(&self, alg: &FinDimAlgebra, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Matrix {
        let n = self.basis.len();
        let mut m = Matrix::zeros(alg.field(), n, n);
        for (j, v) in self.basis.iter().enumerate() {
            let w = f(v);
            for (i, p) in self.pivots.iter().enumerate() {
                m.set(i, j, w[*p].clone());
            }
        }
        m
    }
}

impl Bimodule {
    /// `A` as an `A`-`A` bimodule.
    pub fn regular(alg: Arc<FinDimAlgebra>) -> Self {
        let d = alg.dim();
        let left = (0..d).map(|i| alg.left_mult(&alg.basis_vector(i))).collect();
        let right = (0..d).map(|i| alg.right_mult(&alg.basis_vector(i))).collect();
        Bimodule {
            left_alg: alg.clone(),
            right_alg: alg,
            dim: d,
            left,
            right,
        }
    }

    /// `A e ⊗ f A` for idempotents `e`, `f`.
    pub fn projective(alg: Arc<FinDimAlgebra>, e: &[Scalar], f: &[Scalar]) -> Self {
        let d = alg.dim();
        let ae: Vec<Vec<Scalar>> = (0..d).map(|i| alg.mul(&alg.basis_vector(i), e)).collect();
        let fa: Vec<Vec<Scalar>> = (0..d).map(|i| alg.mul(f, &alg.basis_vector(i))).collect();
        let ae = Subspace::new(&alg, &ae);
        let fa = Subspace::new(&alg, &fa);
        let id_l = Matrix::identity(alg.field(), ae.basis.len());
        let id_r = Matrix::identity(alg.field(), fa.basis.len());
        let left = (0..d)
            .map(|i| {
                let b = alg.basis_vector(i);
                kron(&ae.matrix_of(&alg, |v| alg.mul(&b, v)), &id_r)
            })
            .collect();
        let right = (0..d)
            .map(|i| {
                let b = alg.basis_vector(i);
                kron(&id_l, &fa.matrix_of(&alg, |v| alg.mul(v, &b)))
            })
            .collect();
        Bimodule {
            left_alg: alg.clone(),
            right_alg: alg,
            dim: ae.basis.len() * fa.basis.len(),
            left,
            right,
        }
    }

    /// Outer tensor product, a bimodule over the tensor algebras.
    pub fn boxtimes(&self, other: &Bimodule) -> Bimodule {
        let left_alg = Arc::new(self.left_alg.tensor(&other.left_alg));
        let right_alg = Arc::new(self.right_alg.tensor(&other.right_alg));
        let left = self
            .left
            .iter()
            .flat_map(|a| other.left.iter().map(move |b| kron(a, b)))
            .collect();
        let right = self
            .right
            .iter()
            .flat_map(|a| other.right.iter().map(move |b| kron(a, b)))
            .collect();
        Bimodule {
            left_alg,
            right_alg,
            dim: self.dim * other.dim,
            left,
            right,
        }
    }
}

/// `dim (M ⊗_R N)` for an `L`-`R` bimodule `M` and an `R`-`S` bimodule `N`.
pub fn tensor_over_dim(m: &Bimodule, n: &Bimodule) -> Result<usize, FindimError> {
    if m.right_alg != n.left_alg {
        return Err(FindimError::AlgebraMismatch);
    }
    let field = m.right_alg.field().clone();
    let (p, q) = (m.dim, n.dim);
    let mut ech = SparseEchelon::new(&field, p * q);
    for g in m.right_alg.generating_set() {
        let (rm, ln) = (&m.right[g], &n.left[g]);
        for i in 0..p {
            for j in 0..q {
                // (m_i · g) ⊗ n_j - m_i ⊗ (g · n_j)
                let mut row: SparseRow = Vec::new();
                for a in 0..p {
                    let c = rm.get(a, i);
                    if !c.is_zero() {
                        row.push((a * q + j, c.clone()));
                    }
                }
                for b in 0..q {
                    let c = ln.get(b, j);
                    if !c.is_zero() {
                        row.push((i * q + b, -c));
                    }
                }
                ech.insert(row);
            }
        }
    }
    Ok(p * q - ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

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
    fn regular_is_a_tensor_unit() {
        let a = dual_numbers();
        let reg = Bimodule::regular(a.clone());
        let free = Bimodule::projective(a.clone(), a.unit(), a.unit());
        assert_eq!(free.dim, 4);
        assert_eq!(tensor_over_dim(&reg, &reg).unwrap(), 2);
        assert_eq!(tensor_over_dim(&reg, &free).unwrap(), 4);
        assert_eq!(tensor_over_dim(&free, &reg).unwrap(), 4);
        // A⊗A ⊗_A A⊗A ≅ (A⊗A)^{⊕ dim A}
        assert_eq!(tensor_over_dim(&free, &free).unwrap(), 8);
    }
}
