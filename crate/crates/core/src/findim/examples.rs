use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{free_over_local_subalgebra, hom_space, projective_factoring_maps, FDModule, FinDimAlgebra, FindimError};
use crate::linalg::{span_basis, Matrix, SparseEchelon};
use crate::scalar::{Field, Scalar};

const COINVARIANT_BASIS: [(&str, (u32, u32)); 6] = [
    ("one", (0, 0)),
    ("x", (1, 0)),
    ("y", (0, 1)),
    ("xx", (2, 0)),
    ("xy", (1, 1)),
    ("xxy", (2, 1)),
];

type Poly = BTreeMap<(u32, u32), Scalar>;

fn add_term(p: &mut Poly, mono: (u32, u32), c: Scalar) {
    let e = p.entry(mono).or_insert_with(|| c.field().zero());
    *e = &*e + &c;
    if e.is_zero() {
        p.remove(&mono);
    }
}

/// Rewrites with `y² → -x² - xy` and `x³ → 0` until only basis monomials remain.
fn reduce(mut p: Poly) -> Poly {
    loop {
        let Some((&(a, b), c)) = p.iter().find(|((a, b), _)| *b >= 2 || *a >= 3) else {
            return p;
        };
        let c = c.clone();
        p.remove(&(a, b));
        if b >= 2 {
            add_term(&mut p, (a + 2, b - 2), -&c);
            add_term(&mut p, (a + 1, b - 1), -&c);
        }
    }
}

/// The coinvariant algebra rebuilt from monomial rewriting rather than a stored table.
pub fn coinvariant_from_reduction(field: &Field) -> FinDimAlgebra {
    let index: BTreeMap<(u32, u32), usize> = COINVARIANT_BASIS.iter().enumerate().map(|(i, (_, m))| (*m, i)).collect();
    let mut products = vec![vec![Vec::new(); 6]; 6];
    for (i, (_, (a1, b1))) in COINVARIANT_BASIS.iter().enumerate() {
        for (j, (_, (a2, b2))) in COINVARIANT_BASIS.iter().enumerate() {
            let mut p = Poly::new();
            p.insert((a1 + a2, b1 + b2), field.one());
            products[i][j] = reduce(p).into_iter().map(|(m, c)| (index[&m], c)).collect();
        }
    }
    let mut unit = vec![field.zero(); 6];
    unit[0] = field.one();
    let names = COINVARIANT_BASIS.iter().map(|(n, _)| n.to_string()).collect();
    FinDimAlgebra::new(field, names, products, unit)
}

/// Images of degree ≤ 3 monomials in `x, y, z` (with `z = -x - y`), as
/// `((i, j, k), [(basis name, coefficient)])` for `x^i y^j z^k`.
pub fn reduction_identities() -> Vec<((u32, u32, u32), Vec<(&'static str, i64)>)> {
    vec![
        ((0, 0, 1), vec![("x", -1), ("y", -1)]),
        ((0, 2, 0), vec![("xx", -1), ("xy", -1)]),
        ((0, 0, 2), vec![("xy", 1)]),
        ((1, 0, 1), vec![("xx", -1), ("xy", -1)]),
        ((0, 1, 1), vec![("xx", 1)]),
        ((3, 0, 0), vec![]),
        ((0, 3, 0), vec![]),
        ((0, 0, 3), vec![]),
        ((2, 0, 1), vec![("xxy", -1)]),
        ((1, 2, 0), vec![("xxy", -1)]),
        ((1, 0, 2), vec![("xxy", 1)]),
        ((0, 2, 1), vec![("xxy", 1)]),
        ((0, 1, 2), vec![("xxy", -1)]),
    ]
}

fn element(c: &FinDimAlgebra, terms: &[(&str, Scalar)]) -> Result<Vec<Scalar>, FindimError> {
    let mut v = vec![c.field().zero(); c.dim()];
    for (name, x) in terms {
        let i = c.index(name)?;
        v[i] = &v[i] + x;
    }
    Ok(v)
}

/// `det [[a, -b], [b, a - b]] = a² - ab + b²`.
pub fn cyclic_quotient_determinant(a: &Scalar, b: &Scalar) -> Scalar {
    let field = a.field().clone();
    let m = Matrix::from_rows(&field, &[vec![a.clone(), -b], vec![b.clone(), a - b]]);
    m.determinant().expect("2x2 determinant over a field")
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientModuleReport {
    pub a: String,
    pub b: String,
    pub determinant: String,
    pub precondition: bool,
    pub dim_k: usize,
    pub dim_m: usize,
    pub radical_layers: Vec<usize>,
    pub uniserial: bool,
    pub free_over_s_invariants: bool,
    pub free_over_t_invariants: bool,
    pub end_dim: usize,
    pub stable_end_dim: usize,
}

impl QuotientModuleReport {
    pub fn passed(&self) -> bool {
        self.precondition
            && self.dim_m == 3
            && self.uniserial
            && self.free_over_s_invariants
            && self.free_over_t_invariants
            && self.stable_end_dim == 1
    }
}

fn cyclic_pieces(c: &Arc<FinDimAlgebra>, a: &Scalar, b: &Scalar) -> Result<(FDModule, FDModule, Vec<Vec<Scalar>>), FindimError> {
    let a = a.coerce(c.field())?;
    let b = b.coerce(c.field())?;
    let v = element(c, &[("x", a), ("y", b)])?;
    let reg = FDModule::regular(c.clone());
    let sub = reg.generated_submodule(&[v.clone()]);
    let (k, q) = reg.quotient_by_cyclic(&v)?;
    Ok((k, q, sub))
}

/// Checks the quotient `C / C(ax + by)` of the coinvariant algebra: dimension three,
/// uniserial, free over both invariant subalgebras, stable End one-dimensional.
pub fn verify_quotient_module(c: &Arc<FinDimAlgebra>, a: &Scalar, b: &Scalar) -> Result<QuotientModuleReport, FindimError> {
    let f = c.field().clone();
    let (ac, bc) = (a.coerce(&f)?, b.coerce(&f)?);
    let det = cyclic_quotient_determinant(&ac, &bc);
    let precondition = det.is_zero() && !ac.is_zero() && !bc.is_zero();
    let (k, m, _) = cyclic_pieces(c, &ac, &bc)?;
    let s_inv = vec![
        element(c, &[("one", f.one())])?,
        element(c, &[("x", f.one()), ("y", f.one())])?,
        element(c, &[("xy", f.one())])?,
    ];
    let t_inv = vec![
        element(c, &[("one", f.one())])?,
        element(c, &[("x", f.one())])?,
        element(c, &[("xx", f.one())])?,
    ];
    Ok(QuotientModuleReport {
        a: ac.to_string(),
        b: bc.to_string(),
        determinant: det.to_string(),
        precondition,
        dim_k: k.dim(),
        dim_m: m.dim(),
        radical_layers: m.radical_layers(),
        uniserial: m.is_uniserial_by_layers(),
        free_over_s_invariants: free_over_local_subalgebra(&m, &s_inv)?,
        free_over_t_invariants: free_over_local_subalgebra(&m, &t_inv)?,
        end_dim: hom_space(&m, &m)?.len(),
        stable_end_dim: super::stable_end_dim(&m),
    })
}

/// Isomorphism of two such quotients, decided both by proportionality of the
/// pairs and by equality of the generated submodules; the two must agree.
pub fn quotients_isomorphic(
    c: &Arc<FinDimAlgebra>,
    (a, b): (&Scalar, &Scalar),
    (a2, b2): (&Scalar, &Scalar),
) -> Result<bool, FindimError> {
    let f = c.field().clone();
    let (a, b, a2, b2) = (a.coerce(&f)?, b.coerce(&f)?, a2.coerce(&f)?, b2.coerce(&f)?);
    for (x, y) in [(&a, &b), (&a2, &b2)] {
        if x.is_zero() || y.is_zero() || !cyclic_quotient_determinant(x, y).is_zero() {
            return Err(FindimError::Precondition(format!(
                "({x}, {y}) must be nonzero with a² - ab + b² = 0"
            )));
        }
    }
    let proportional = (&a * &b2 - &a2 * &b).is_zero();
    let (_, _, k1) = cyclic_pieces(c, &a, &b)?;
    let (_, _, k2) = cyclic_pieces(c, &a2, &b2)?;
    let same = k1 == k2;
    if same != proportional {
        return Err(FindimError::Inconsistent(format!(
            "proportional = {proportional} but equal submodules = {same}"
        )));
    }
    Ok(same)
}

/// Zigzag algebra on `n ≥ 2` vertices with basis idempotents, arrows, loops.
pub fn zigzag_algebra(n: usize) -> FinDimAlgebra {
    assert!(n >= 2);
    let field = Field::rationals();
    let mut names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    // (name, source, target, length)
    let mut paths: Vec<(usize, usize, usize)> = (0..n).map(|i| (i, i, 0)).collect();
    for i in 0..n - 1 {
        names.push(format!("a{}{}", i + 1, i + 2));
        paths.push((i, i + 1, 1));
        names.push(format!("a{}{}", i + 2, i + 1));
        paths.push((i + 1, i, 1));
    }
    for i in 0..n {
        names.push(format!("l{}", i + 1));
        paths.push((i, i, 2));
    }
    let d = names.len();
    let loop_at = |v: usize| d - n + v;
    let mut products = vec![vec![Vec::new(); d]; d];
    for (q, &(qs, qt, ql)) in paths.iter().enumerate() {
        for (p, &(ps, pt, pl)) in paths.iter().enumerate() {
            // q * p: first p, then q
            if pt != qs {
                continue;
            }
            let r = match (pl, ql) {
                (0, _) => Some(q),
                (_, 0) => Some(p),
                (1, 1) if ps == qt => Some(loop_at(ps)),
                _ => None,
            };
            if let Some(r) = r {
                products[q][p] = vec![(r, field.one())];
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    let mut idem = Vec::new();
    for i in 0..n {
        unit[i] = field.one();
        let mut e = vec![field.zero(); d];
        e[i] = field.one();
        idem.push(e);
    }
    FinDimAlgebra::new(&field, names, products, unit).with_idempotents(idem)
}

/// `A` as a left module over `A ⊗ A^op` via `(a ⊗ b) · m = a m b`.
pub fn identity_bimodule(a: &FinDimAlgebra) -> FDModule {
    let e = Arc::new(a.tensor(&a.opposite()));
    let d = a.dim();
    let lefts: Vec<Matrix> = (0..d).map(|i| a.left_mult(&a.basis_vector(i))).collect();
    let rights: Vec<Matrix> = (0..d).map(|j| a.right_mult(&a.basis_vector(j))).collect();
    let mut action = Vec::with_capacity(d * d);
    for l in &lefts {
        for r in &rights {
            action.push(l.mul(r));
        }
    }
    FDModule::new(e, d, action)
}

#[derive(Debug, Clone)]
pub struct IdentityBimoduleReport {
    pub algebra_dim: usize,
    pub enveloping_dim: usize,
    pub end_dim: usize,
    pub factoring_dim: usize,
    pub stable_end_dim: usize,
    /// Basis of the endomorphisms factoring through a projective.
    pub factoring_maps: Vec<Matrix>,
    /// Endomorphisms of `A` not factoring through a projective, as a complement basis.
    pub stable_representatives: Vec<Matrix>,
}

impl IdentityBimoduleReport {
    /// True when `map` factors through a projective bimodule.
    pub fn factors(&self, map: &Matrix) -> bool {
        let field = map.field().clone();
        let n = map.rows() * map.cols();
        let mut ech = SparseEchelon::new(&field, n);
        for f in &self.factoring_maps {
            ech.insert_dense(&f.to_vec());
        }
        ech.contains_dense(&map.to_vec())
    }
}

pub fn identity_bimodule_stable_end(a: &FinDimAlgebra) -> IdentityBimoduleReport {
    let m = identity_bimodule(a);
    let field = a.field().clone();
    let end = hom_space(&m, &m).expect("same algebra");
    let factoring = projective_factoring_maps(&m);
    let n = a.dim() * a.dim();
    let mut ech = SparseEchelon::new(&field, n);
    for f in &factoring {
        ech.insert_dense(&f.to_vec());
    }
    let stable_representatives = end.iter().filter(|g| ech.insert_dense(&g.to_vec())).cloned().collect();
    let end_basis = span_basis(&field, n, &end.iter().map(Matrix::to_vec).collect::<Vec<_>>());
    IdentityBimoduleReport {
        algebra_dim: a.dim(),
        enveloping_dim: m.algebra().dim(),
        end_dim: end_basis.len(),
        factoring_dim: factoring.len(),
        stable_end_dim: end_basis.len() - factoring.len(),
        factoring_maps: factoring,
        stable_representatives,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_values() {
        let f = Field::eisenstein();
        let w = f.theta().unwrap();
        assert!(cyclic_quotient_determinant(&f.one(), &w).is_zero());
        assert!(cyclic_quotient_determinant(&f.one(), &(f.one() - w)).is_zero());
        assert_eq!(cyclic_quotient_determinant(&f.one(), &f.one()), f.one());
        assert!(cyclic_quotient_determinant(&f.zero(), &f.zero()).is_zero());
    }

    #[test]
    fn reduction_algebra_is_associative_and_commutative() {
        let c = coinvariant_from_reduction(&Field::eisenstein());
        assert!(c.validate().is_empty());
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(c.product_of_basis(i, j), c.product_of_basis(j, i));
            }
        }
        assert_eq!(c.radical().len(), 5);
    }

    #[test]
    fn zigzag_two_vertices() {
        let z = zigzag_algebra(2);
        assert_eq!(z.dim(), 6);
        assert!(z.validate().is_empty());
        assert_eq!(z.radical().len(), 4);
    }

    #[test]
    fn dual_numbers_identity_bimodule() {
        let f = Field::rationals();
        let products = vec![
            vec![vec![(0, f.one())], vec![(1, f.one())]],
            vec![vec![(1, f.one())], vec![]],
        ];
        let a = FinDimAlgebra::new(&f, vec!["one".into(), "x".into()], products, vec![f.one(), f.zero()]);
        let r = identity_bimodule_stable_end(&a);
        assert_eq!(r.end_dim, 2);
        assert_eq!(r.stable_end_dim, 1);
        let two_x = a.left_mult(&[f.zero(), f.int(2)]);
        assert!(r.factors(&two_x));
        assert!(!r.factors(&Matrix::identity(&f, 2)));
    }
}
