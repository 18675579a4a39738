mod common;

use std::sync::Arc;

use proptest::prelude::*;

use cellrep_core::data;
use cellrep_core::findim::{hom_space, FDModule, FinDimAlgebra};
use cellrep_core::linalg::{span_rank, Matrix};
use cellrep_core::Scalar;
use common::config;

fn algebras() -> Vec<Arc<FinDimAlgebra>> {
    vec![data::coinvariant(), data::algebra("zigzag2.alg"), data::algebra("zigzag3.alg")]
}

fn vector(a: &FinDimAlgebra, coeffs: &[i64]) -> Vec<Scalar> {
    (0..a.dim()).map(|i| a.field().int(coeffs[i % coeffs.len()])).collect()
}

fn combination(a: &FinDimAlgebra, basis: &[Vec<Scalar>], coeffs: &[i64]) -> Vec<Scalar> {
    let f = a.field();
    let mut out = vec![f.zero(); a.dim()];
    for (b, c) in basis.iter().zip(coeffs.iter().cycle()) {
        let c = f.int(*c);
        for (o, x) in out.iter_mut().zip(b) {
            *o = &*o + &(&c * x);
        }
    }
    out
}

/// `I + N` with `N` strictly upper triangular, and its inverse.
fn unitriangular(a: &FinDimAlgebra, n: usize, entries: &[i64]) -> (Matrix, Matrix) {
    let f = a.field();
    let mut nil = Matrix::zeros(f, n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            nil.set(i, j, f.int(entries[k % entries.len()]));
            k += 1;
        }
    }
    let id = Matrix::identity(f, n);
    let p = id.add(&nil);
    let neg = nil.scale(&f.int(-1));
    let mut inv = id.clone();
    let mut term = id;
    for _ in 1..n {
        term = term.mul(&neg);
        inv = inv.add(&term);
    }
    (p, inv)
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn radical_is_a_nilpotent_ideal(which in 0..3usize, x in proptest::collection::vec(-3i64..4, 1..12), y in proptest::collection::vec(-3i64..4, 1..12)) {
        let a = &algebras()[which];
        let f = a.field();
        let rad = a.radical();
        let r = combination(a, &rad, &y);
        let u = vector(a, &x);
        let base = span_rank(f, a.dim(), &rad);
        for p in [a.mul(&u, &r), a.mul(&r, &u)] {
            let mut ext = rad.clone();
            ext.push(p);
            prop_assert_eq!(span_rank(f, a.dim(), &ext), base);
        }
        let mut power = r.clone();
        for _ in 0..a.dim() {
            power = a.mul(&power, &r);
        }
        prop_assert!(power.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn hom_dimension_ignores_the_basis(which in 0..3usize, v in proptest::collection::vec(-2i64..3, 1..8), entries in proptest::collection::vec(-2i64..3, 1..20)) {
        let a = algebras()[which].clone();
        let reg = FDModule::regular(a.clone());
        // generated inside the radical, so the quotient is nonzero
        let (_, q) = reg.quotient_by_cyclic(&combination(&a, &a.radical(), &v)).unwrap();
        let n = q.dim();
        let (p, inv) = unitriangular(&a, n, &entries);
        let moved = FDModule::new(a.clone(), n, (0..a.dim()).map(|i| p.mul(q.action(i)).mul(&inv)).collect());
        prop_assert!(moved.validate().is_empty());
        prop_assert_eq!(hom_space(&q, &q).unwrap().len(), hom_space(&moved, &moved).unwrap().len());
        prop_assert_eq!(hom_space(&reg, &q).unwrap().len(), hom_space(&reg, &moved).unwrap().len());
        prop_assert_eq!(hom_space(&q, &reg).unwrap().len(), hom_space(&moved, &reg).unwrap().len());
    }
}

#[test]
fn hom_from_the_regular_module_is_the_module() {
    for a in algebras() {
        let reg = FDModule::regular(a.clone());
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), a.dim());
    }
}
