//! The coinvariant algebra: stored table, rewriting, and the monomial list.

use std::sync::Arc;

use cellrep_core::data;
use cellrep_core::findim::{
    coinvariant_from_reduction, reduction_identities, verify_quotient_module, FDModule, FinDimAlgebra,
};
use cellrep_core::{Field, Scalar};

fn vector(c: &FinDimAlgebra, terms: &[(&str, i64)]) -> Vec<Scalar> {
    let f = c.field();
    let mut v = vec![f.zero(); c.dim()];
    for (name, x) in terms {
        let i = c.index(name).unwrap();
        v[i] = &v[i] + &f.int(*x);
    }
    v
}

fn basis(c: &FinDimAlgebra, name: &str) -> Vec<Scalar> {
    vector(c, &[(name, 1)])
}

/// Products written out by hand.
const BY_HAND: &[(&str, &str, &[(&str, i64)])] = &[
    ("x", "x", &[("xx", 1)]),
    ("x", "y", &[("xy", 1)]),
    ("x", "xx", &[]),
    ("x", "xy", &[("xxy", 1)]),
    ("x", "xxy", &[]),
    ("y", "x", &[("xy", 1)]),
    ("y", "y", &[("xy", -1), ("xx", -1)]),
    ("y", "xx", &[("xxy", 1)]),
    ("y", "xy", &[("xxy", -1)]),
    ("y", "xxy", &[]),
    ("xx", "x", &[]),
    ("xx", "y", &[("xxy", 1)]),
    ("xx", "xx", &[]),
    ("xx", "xy", &[]),
    ("xy", "x", &[("xxy", 1)]),
    ("xy", "y", &[("xxy", -1)]),
    ("xy", "xx", &[]),
    ("xy", "xy", &[]),
    ("xxy", "x", &[]),
    ("xxy", "xxy", &[]),
];

#[test]
fn bundled_table_matches_the_hand_products() {
    let c = data::coinvariant();
    for (a, b, want) in BY_HAND {
        assert_eq!(c.mul(&basis(&c, a), &basis(&c, b)), vector(&c, want), "{a} * {b}");
    }
    let one = basis(&c, "one");
    for name in c.names() {
        assert_eq!(c.mul(&one, &basis(&c, name)), basis(&c, name));
    }
}

#[test]
fn bundled_table_equals_the_rewriting_construction() {
    let c = data::coinvariant();
    let r = coinvariant_from_reduction(c.field());
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(c.product_of_basis(i, j), r.product_of_basis(i, j));
        }
    }
}

/// Evaluates `x^i y^j z^k` with `z = -x - y` inside the stored algebra.
fn monomial(c: &FinDimAlgebra, (i, j, k): (u32, u32, u32)) -> Vec<Scalar> {
    let x = basis(c, "x");
    let y = basis(c, "y");
    let z = vector(c, &[("x", -1), ("y", -1)]);
    let mut out = basis(c, "one");
    for (g, e) in [(&x, i), (&y, j), (&z, k)] {
        for _ in 0..e {
            out = c.mul(&out, g);
        }
    }
    out
}

#[test]
fn monomial_images_agree_with_the_table() {
    let c = data::coinvariant();
    for (mono, image) in reduction_identities() {
        assert_eq!(monomial(&c, mono), vector(&c, &image), "{mono:?}");
    }
}

#[test]
fn symmetric_generators_vanish() {
    let c = data::coinvariant();
    let zero = vec![c.field().zero(); 6];
    let e1 = {
        let mut v = monomial(&c, (1, 0, 0));
        for m in [(0, 1, 0), (0, 0, 1)] {
            v = v.iter().zip(monomial(&c, m)).map(|(a, b)| a + &b).collect();
        }
        v
    };
    assert_eq!(e1, zero);
    let mut e2 = zero.clone();
    for m in [(1, 1, 0), (1, 0, 1), (0, 1, 1)] {
        e2 = e2.iter().zip(monomial(&c, m)).map(|(a, b)| a + &b).collect();
    }
    assert_eq!(e2, zero);
    assert_eq!(monomial(&c, (1, 1, 1)), zero);
}

#[test]
fn quotient_by_a_non_root_has_no_third_layer() {
    let c = data::coinvariant();
    let f = c.field().clone();
    let r = verify_quotient_module(&c, &f.one(), &f.one()).unwrap();
    assert!(!r.precondition);
    assert_eq!(r.determinant, "1");
    assert!(!r.passed());
}

/// `C[x,y]/(x³, y², xy)` modulo `y - x²`: uniserial of length three.
#[test]
fn truncated_polynomial_quotient_is_uniserial() {
    let f = Field::rationals();
    let names = ["one", "x", "xx", "y"];
    let mut products = vec![vec![Vec::new(); 4]; 4];
    for i in 0..4 {
        products[0][i] = vec![(i, f.one())];
        products[i][0] = vec![(i, f.one())];
    }
    products[1][1] = vec![(2, f.one())];
    let a = Arc::new(FinDimAlgebra::new(
        &f,
        names.iter().map(|s| s.to_string()).collect(),
        products,
        vec![f.one(), f.zero(), f.zero(), f.zero()],
    ));
    assert!(a.validate().is_empty());
    let v = vec![f.zero(), f.zero(), f.int(-1), f.one()];
    let (_, m) = FDModule::regular(a).quotient_by_cyclic(&v).unwrap();
    assert_eq!(m.dim(), 3);
    assert_eq!(m.radical_layers(), vec![3, 2, 1, 0]);
    assert!(m.is_uniserial_by_layers());
}
