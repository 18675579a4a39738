mod common;

use std::sync::Arc;

use proptest::prelude::*;

use cellrep_core::builders::{build_bipartite_rep, build_ca_table, build_cell_rep, build_da_table};
use cellrep_core::data;
use cellrep_core::findim::{zigzag_algebra, FinDimAlgebra};
use cellrep_core::io;
use cellrep_core::Field;
use common::{cartan, cartan_and_graph, config, fields};

/// `k[x]/(x^n)` over one of the test fields.
fn truncated(f: &Field, n: usize) -> FinDimAlgebra {
    let names = (0..n).map(|i| format!("x{i}")).collect();
    let products = (0..n)
        .map(|i| (0..n).map(|j| if i + j < n { vec![(i + j, f.one())] } else { Vec::new() }).collect())
        .collect();
    let mut unit = vec![f.zero(); n];
    unit[0] = f.one();
    FinDimAlgebra::new(f, names, products, unit)
}

/// Repeats the `k`-th product line.
fn duplicate_product(text: &str, k: usize) -> String {
    let products: Vec<&str> = text.lines().filter(|l| l.contains(" * ")).collect();
    let line = products[k % products.len()];
    format!("{text}{line}\n")
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn tables_round_trip(c in cartan(3), da in any::<bool>()) {
        let t = if da && c.n() <= 2 { build_da_table(&c) } else { build_ca_table(&c) };
        let text = io::print_table(&t);
        let back = io::parse_table(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(io::print_table(&back), text);
    }

    #[test]
    fn reps_graphs_and_dims_round_trip(input in cartan_and_graph(3, 3)) {
        let (c, g) = input;
        let dims = io::print_dims(&c);
        prop_assert_eq!(io::parse_dims(&dims).unwrap(), c.clone());
        let graph = io::print_graph(&g);
        prop_assert_eq!(io::parse_graph(&graph).unwrap(), g.clone());
        for r in [build_bipartite_rep(&c, &g).unwrap(), build_cell_rep(&c)] {
            let text = io::print_rep(&r, "ca.tbl");
            let back = io::parse_rep(&text, r.table().clone()).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert_eq!(io::print_rep(&back, "ca.tbl"), text);
        }
    }

    #[test]
    fn algebras_round_trip(which in 0..4usize, n in 1..6usize, m in 1..4usize, zz in 2..4usize) {
        let f = &fields()[which];
        let a = truncated(f, n);
        let text = io::print_algebra(&a);
        prop_assert_eq!(io::parse_algebra(&text).unwrap(), a.clone());
        let t = a.tensor(&truncated(f, m));
        let text = io::print_algebra(&t);
        prop_assert_eq!(io::print_algebra(&io::parse_algebra(&text).unwrap()), text);
        let t = zigzag_algebra(zz).tensor(&truncated(&Field::rationals(), m));
        let text = io::print_algebra(&t);
        prop_assert_eq!(io::print_algebra(&io::parse_algebra(&text).unwrap()), text);
    }

    #[test]
    fn duplicate_product_lines_are_rejected(c in cartan(3), k in any::<usize>()) {
        let text = io::print_table(&build_ca_table(&c));
        prop_assume!(text.contains(" * "));
        prop_assert!(io::parse_table(&duplicate_product(&text, k)).is_err());
    }
}

#[test]
fn duplicated_lines_in_bundled_files_are_rejected() {
    for t in [data::a2_table(), data::b2_table(), data::i2_5_table()] {
        let text = io::print_table(&t);
        for k in 0..5 {
            assert!(io::parse_table(&duplicate_product(&text, k)).is_err());
        }
    }
    for name in ["coinvariant-a2.alg", "zigzag2.alg", "kx2.alg"] {
        let text = io::print_algebra(&data::algebra(name));
        let err = io::parse_algebra(&duplicate_product(&text, 1)).unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }
}

#[test]
fn bundled_rep_round_trips() {
    let r = data::a2_hidden_rep();
    let text = io::print_rep(&r, "a2-soergel.tbl");
    assert_eq!(io::parse_rep(&text, Arc::clone(r.table())).unwrap(), r);
}
