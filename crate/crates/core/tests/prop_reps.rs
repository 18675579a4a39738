mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use cellrep_core::builders::{
    build_bipartite_rep, build_ca_table, build_cell_rep, build_da_extension_rep, build_signature_extension,
    signature_theta, CartanData, SignatureInput,
};
use cellrep_core::cells::Cells;
use cellrep_core::data;
use cellrep_core::suite::{bipartite_diagram, named_diagram};
use cellrep_core::tworep::{apex, cell_rep, dext_filters, principal_rep, ses_split, RepMatrices, SesDecomposition};
use common::{cartan, cartan_and_graph, config};

fn dimvec(c: CartanData) -> impl Strategy<Value = (CartanData, Vec<u64>)> {
    let n = c.n();
    proptest::collection::vec(0u64..4, n)
        .prop_filter("nonzero", |v| v.iter().any(|x| *x > 0))
        .prop_map(move |v| (c.clone(), v))
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn det(m: &[Vec<u64>]) -> i64 {
    match m.len() {
        1 => m[0][0] as i64,
        _ => (m[0][0] * m[1][1]) as i64 - (m[0][1] * m[1][0]) as i64,
    }
}

/// Every gluing generator lies at or below the apex of the sub-representation.
fn theta_below_apex(ses: &SesDecomposition) -> Result<(), TestCaseError> {
    let cells = Cells::compute(ses.rep.table());
    let js = &cells.two_sided;
    let jk = apex(&ses.k, &cells).unwrap().cell;
    for &g in &ses.theta {
        prop_assert!(js.cell_le(js.cell_of[g], jk), "{} is not below the apex of K", ses.rep.table().name(g));
    }
    Ok(())
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn cell_reps_are_functorial_and_transitive(c in cartan(3)) {
        let r = build_cell_rep(&c);
        prop_assert!(r.validate().is_empty());
        prop_assert!(r.is_transitive());
        let cells = Cells::compute(r.table());
        let a = apex(&r, &cells).unwrap();
        prop_assert_eq!(cells.two_sided.cells[a.cell].len(), c.n() * c.n());
    }

    #[test]
    fn signature_extensions_glue_along_the_signature(input in cartan(3).prop_flat_map(dimvec)) {
        let (c, v) = input;
        let s = SignatureInput::new(c, v, "M").unwrap();
        let (r, ses) = build_signature_extension(&s).unwrap();
        prop_assert!(r.validate().is_empty());
        prop_assert_eq!(&ses.theta, &signature_theta(&s));
        theta_below_apex(&ses)?;
        let cells = Cells::compute(r.table());
        prop_assert!(dext_filters(&cells, &ses.k, &ses.n, &ses.theta).unwrap().all_passed());
    }

    #[test]
    fn bipartite_reps_draw_their_graph(input in cartan_and_graph(3, 3)) {
        let (c, g) = input;
        let r = build_bipartite_rep(&c, &g).unwrap();
        prop_assert!(r.validate().is_empty());
        prop_assert_eq!(named_diagram(&r), bipartite_diagram(&c, &g));
    }

    #[test]
    fn diagrams_of_direct_sums_are_disjoint_unions(input in cartan_and_graph(2, 2), other in cartan(2)) {
        let (c, g) = input;
        let a = build_bipartite_rep(&c, &g).unwrap();
        let b = build_cell_rep(&c);
        let sum = a.direct_sum(&b).unwrap();
        let (da, db, ds) = (named_diagram(&a), named_diagram(&b), named_diagram(&sum));
        let mut classes = da.classes.clone();
        classes.extend(db.classes.iter().cloned());
        prop_assert_eq!(&ds.classes, &classes);
        let mut edges = da.edges.clone();
        edges.extend(db.edges.clone());
        prop_assert_eq!(ds.edges, edges);
        // tables must agree
        let foreign = build_cell_rep(&other);
        if foreign.table() != a.table() {
            prop_assert!(a.direct_sum(&foreign).is_err());
        }
    }

    #[test]
    fn hasse_edges_carry_decorations(input in cartan_and_graph(3, 3)) {
        let (c, g) = input;
        let r = build_bipartite_rep(&c, &g).unwrap();
        let d = r.diagram();
        for e in &d.hasse {
            prop_assert!(!d.decorations[e].is_empty());
        }
    }

    #[test]
    fn apex_is_invariant_under_relabelling(c in cartan(3), seed in any::<u64>()) {
        let r = build_cell_rep(&c);
        let mut perm: Vec<usize> = (0..r.dim()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let cells = Cells::compute(r.table());
        prop_assert_eq!(apex(&r, &cells).unwrap(), apex(&r.permuted(&perm), &cells).unwrap());
    }

    #[test]
    fn da_extensions_are_functorial(c in cartan(2), p in proptest::collection::vec(0u64..3, 4)) {
        let n = c.n();
        let p: Vec<Vec<u64>> = (0..n).map(|i| p[i * n..(i + 1) * n].to_vec()).collect();
        prop_assume!(p.iter().flatten().any(|x| *x > 0));
        prop_assume!(det(&c.dims) != 0);
        // D = dims · P · dims is free on both sides
        let d = matmul(&matmul(&c.dims, &p), &c.dims);
        let (r, ses) = build_da_extension_rep(&c, &d).unwrap();
        prop_assert!(r.validate().is_empty());
        prop_assert!(!ses.theta.is_empty());
        theta_below_apex(&ses)?;
    }
}

fn classes_of(r: &RepMatrices) -> Vec<Vec<usize>> {
    r.diagram().classes
}

#[test]
fn bundled_splits_respect_the_apex_of_the_sub() {
    let r = data::a2_hidden_rep();
    let d = r.diagram();
    // a class with no incoming edge from outside is closed under the action
    let sinks: BTreeSet<usize> = (0..d.classes.len()).filter(|c| d.hasse.iter().all(|(a, _)| a != c)).collect();
    for c in sinks {
        let ses = ses_split(&r, &d.classes[c]).unwrap();
        theta_below_apex(&ses).unwrap();
    }
    let t = data::a2_table();
    let p = principal_rep(t, 0);
    let d = p.diagram();
    for (rho, tau) in &d.hasse {
        assert!(!d.decorations[&(*rho, *tau)].is_empty());
    }
}

#[test]
fn class_restrictions_have_an_apex() {
    for t in [data::a2_table(), data::b2_table(), data::i2_5_table()] {
        let cells = Cells::compute(&t);
        let p = principal_rep(t.clone(), 0);
        for class in classes_of(&p) {
            let sub = p.restrict(&class);
            assert!(sub.is_transitive());
            let a = apex(&sub, &cells).unwrap();
            // the same classes come from the cell representations of the left cells
            let lc = cells.left.cell_of[t.gen_index(&sub.basis()[0].name).unwrap()];
            assert_eq!(apex(&cell_rep(t.clone(), &cells, lc), &cells).unwrap().cell, a.cell);
        }
    }
}

#[test]
fn ca_tables_of_different_data_differ() {
    let kx = data::dims("kx2.dims");
    let zz = data::dims("zigzag2.dims");
    assert_ne!(Arc::new(build_ca_table(&kx)), Arc::new(build_ca_table(&zz)));
}
