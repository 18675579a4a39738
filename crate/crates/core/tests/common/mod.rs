#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use cellrep_core::builders::{BipartiteEdge, BipartiteSpec, CartanData};
use cellrep_core::{Field, Scalar};

pub const SEED: u64 = 0x00c0_ffee;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn fields() -> Vec<Field> {
    vec![
        Field::rationals(),
        Field::sqrt(2).unwrap(),
        Field::sqrt(5).unwrap(),
        Field::eisenstein(),
    ]
}

/// A field index into [`fields`].
pub fn field_index() -> impl Strategy<Value = usize> {
    0..4usize
}

pub fn scalar(f: Field) -> impl Strategy<Value = Scalar> {
    (-30i64..30, 1i64..12, -30i64..30, 1i64..12).prop_map(move |(a, b, c, d)| {
        let x = f.frac(a, b);
        match f.theta() {
            Ok(t) => &x + &(&f.frac(c, d) * &t),
            Err(_) => x,
        }
    })
}

pub fn cartan(max_n: usize) -> impl Strategy<Value = CartanData> {
    (1..=max_n)
        .prop_flat_map(|n| (proptest::collection::vec(proptest::collection::vec(0u64..4, n), n), any::<bool>()))
        .prop_map(|(mut dims, si)| {
            for (i, row) in dims.iter_mut().enumerate() {
                row[i] = row[i].max(1);
            }
            CartanData::new(dims, si).unwrap()
        })
}

pub fn symmetric_cartan(max_n: usize) -> impl Strategy<Value = CartanData> {
    cartan(max_n).prop_map(|c| {
        let n = c.n();
        let dims = (0..n).map(|i| (0..n).map(|j| c.dims[i.min(j)][i.max(j)]).collect()).collect();
        CartanData::new(dims, true).unwrap()
    })
}

/// A Cartan matrix and a bipartite graph with at most `max_side` vertices per part.
pub fn cartan_and_graph(max_n: usize, max_side: usize) -> impl Strategy<Value = (CartanData, BipartiteSpec)> {
    cartan(max_n).prop_flat_map(move |c| {
        let n = c.n();
        (0..=max_side, 0..=max_side).prop_flat_map(move |(nv, nw)| {
            let c = c.clone();
            (
                proptest::collection::vec(1..=n, nw),
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), nw), nv),
            )
                .prop_map(move |(eta, adj)| {
                    let mut edges = Vec::new();
                    for (v, row) in adj.iter().enumerate() {
                        for (w, on) in row.iter().enumerate() {
                            if *on {
                                edges.push(BipartiteEdge { source: v, sink: w, eta: eta[w] });
                            }
                        }
                    }
                    let g = BipartiteSpec {
                        sources: (1..=nv).map(|i| format!("v{i}")).collect(),
                        sinks: (1..=nw).map(|i| format!("w{i}")).collect(),
                        edges,
                    };
                    (c.clone(), g)
                })
        })
    })
}
