mod common;

use std::sync::Arc;

use proptest::prelude::*;

use cellrep_core::builders::{build_ca_table, build_da_table};
use cellrep_core::cells::{is_idempotent_cell, CellKind, Cells};
use cellrep_core::cone::{search_goodness, verify_goodness, CellAlgebra, ConeElement, GoodnessWitness, SearchOptions};
use cellrep_core::data;
use cellrep_core::multitable::MultiTable;
use cellrep_core::Field;
use common::{cartan, config};

fn bundled() -> Vec<Arc<MultiTable>> {
    vec![data::a2_table(), data::b2_table(), data::i2_5_table()]
}

fn refines(t: &MultiTable, c: &Cells) -> Result<(), TestCaseError> {
    for kind in [CellKind::Left, CellKind::Right] {
        let s = c.get(kind);
        for cell in &s.cells {
            let j = c.two_sided.cell_of[cell[0]];
            prop_assert!(cell.iter().all(|g| c.two_sided.cell_of[*g] == j), "{kind} cell straddles two-sided cells");
        }
        for f in 0..t.len() {
            for g in 0..t.len() {
                if s.gen_le(f, g) {
                    prop_assert!(c.two_sided.gen_le(f, g), "{kind} order not contained in the two-sided order");
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn ca_tables_are_associative_with_expected_cells(c in cartan(3)) {
        let t = build_ca_table(&c);
        prop_assert!(t.validate().is_empty());
        let cells = Cells::compute(&t);
        prop_assert_eq!(cells.left.len(), c.n() + 1);
        prop_assert_eq!(cells.two_sided.len(), 2);
        refines(&t, &cells)?;
        for j in &cells.two_sided.cells {
            prop_assert!(is_idempotent_cell(&t, &cells, j).unwrap().is_some());
        }
    }

    #[test]
    fn da_tables_are_associative_with_a_diamond(c in cartan(2)) {
        let t = build_da_table(&c);
        prop_assert!(t.validate().is_empty());
        let cells = Cells::compute(&t);
        prop_assert_eq!(cells.two_sided.len(), 4);
        prop_assert_eq!(cells.two_sided.hasse.len(), 4);
        refines(&t, &cells)?;
    }

    /// The cell algebra multiplies like the table, truncated to the cell.
    #[test]
    fn truncation_is_sound(which in 0..3usize, coeffs in proptest::collection::vec((0i64..5, 0i64..5), 8)) {
        let t = &bundled()[which];
        let cells = Cells::compute(t);
        let f = Field::rationals();
        for j in 0..cells.two_sided.len() {
            let alg = CellAlgebra::new(t, &cells, j);
            let d = alg.dim();
            let u: Vec<_> = (0..d).map(|i| f.int(coeffs[i % 8].0)).collect();
            let v: Vec<_> = (0..d).map(|i| f.int(coeffs[(i + 3) % 8].1)).collect();
            let prod = alg.mul(&u, &v);
            for (h, &gh) in alg.gens().iter().enumerate() {
                let mut want = 0i64;
                for (a, &ga) in alg.gens().iter().enumerate() {
                    for (b, &gb) in alg.gens().iter().enumerate() {
                        let m = t.product(ga, gb).get(&gh).copied().unwrap_or(0) as i64;
                        want += coeffs[a % 8].0 * coeffs[(b + 3) % 8].1 * m;
                    }
                }
                prop_assert_eq!(&prod[h], &f.int(want));
            }
        }
    }

    #[test]
    fn goodness_is_scaling_covariant(p in 1i64..20, q in 1i64..20, r in 0i64..6) {
        let f = Field::sqrt(2).unwrap();
        let t = data::b2_table();
        let cells = Cells::compute(&t);
        let alg = CellAlgebra::containing(&t, &cells, "sts").unwrap();
        let x = ConeElement::from_named(&alg, &f, &[
            ("s", "1"), ("t", "1"), ("sts", "1"), ("tst", "1"), ("st", "T"), ("ts", "T"),
        ]).unwrap();
        let w = GoodnessWitness { x, n: 2, k: 1, l: 1, a: [(1, f.parse("8+4*T").unwrap())].into() };
        prop_assert!(verify_goodness(&alg, &w).unwrap().holds);
        let lambda = &f.frac(p, q) + &f.int(r).checked_mul(&f.theta().unwrap()).unwrap();
        prop_assert!(verify_goodness(&alg, &w.rescaled(&lambda)).unwrap().holds);
    }

    #[test]
    fn search_results_verify(c in cartan(3)) {
        let t = build_ca_table(&c);
        let cells = Cells::compute(&t);
        for j in 0..cells.two_sided.len() {
            let alg = CellAlgebra::new(&t, &cells, j);
            let opts = SearchOptions { perron: false, ..SearchOptions::default() };
            if let Some(w) = search_goodness(&alg, &opts) {
                prop_assert!(verify_goodness(&alg, &w).unwrap().holds);
            }
        }
    }
}

#[test]
fn bundled_tables_validate_and_refine() {
    for t in bundled() {
        assert!(t.validate().is_empty());
        let cells = Cells::compute(&t);
        refines(&t, &cells).unwrap();
        for j in &cells.two_sided.cells {
            assert!(is_idempotent_cell(&t, &cells, j).unwrap().is_some());
        }
    }
}
