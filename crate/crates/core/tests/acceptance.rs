//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::TestRunner;

use cellrep_core::builders::{
    build_bipartite_rep, build_ca_table, build_cell_rep, build_da_table, build_signature_extension, SignatureInput,
};
use cellrep_core::cells::Cells;
use cellrep_core::cone::{CellAlgebra, ConeElement};
use cellrep_core::data;
use cellrep_core::suite::{bipartite_diagram, named_diagram, run_check, SuiteInputs};
use cellrep_core::tworep::{apex, dext_filters, recheck_certificate};
use cellrep_core::Field;
use common::{cartan, cartan_and_graph, config, SEED};

struct Line {
    number: usize,
    name: &'static str,
    passed: bool,
    elapsed: Duration,
    detail: String,
}

fn suite_check(inputs: &SuiteInputs, id: &str, limit: Option<Duration>) -> (bool, String, Vec<serde_json::Value>) {
    let start = Instant::now();
    let out = run_check(id, inputs, SEED).expect("catalogued check");
    let elapsed = start.elapsed();
    let mut ok = out.result.passed;
    let mut detail = out.result.detail.clone();
    if let Some(limit) = limit {
        if elapsed >= limit {
            ok = false;
            detail = format!("{detail}; took {elapsed:?}, limit {limit:?}");
        }
    }
    (ok, detail, out.certificates)
}

/// `x² = (8+4√2) x` computed directly in the cell algebra.
fn b2_identity() -> bool {
    let f = Field::sqrt(2).unwrap();
    let t = data::b2_table();
    let alg = CellAlgebra::containing(&t, &Cells::compute(&t), "sts").unwrap();
    let x = ConeElement::from_named(&alg, &f, &[
        ("s", "1"), ("t", "1"), ("sts", "1"), ("tst", "1"), ("st", "T"), ("ts", "T"),
    ])
    .unwrap();
    let a = f.parse("8+4*T").unwrap();
    let sq = alg.mul(&x.coeffs, &x.coeffs);
    sq.iter().zip(&x.coeffs).all(|(l, r)| *l == &a * r)
}

/// `y³ = 15 y² + 5 y` computed directly in the cell algebra.
fn i2_5_identity() -> bool {
    let f = Field::sqrt(5).unwrap();
    let t = data::i2_5_table();
    let alg = CellAlgebra::containing(&t, &Cells::compute(&t), "st").unwrap();
    let y = ConeElement::from_named(&alg, &f, &[
        ("s", "1/2"), ("t", "1/2"), ("st", "1"), ("ts", "1"), ("sts", "1"), ("tst", "1"), ("stst", "1/2"), ("tsts", "1/2"),
    ])
    .unwrap();
    let y2 = alg.mul(&y.coeffs, &y.coeffs);
    let y3 = alg.mul(&y2, &y.coeffs);
    let (c15, c5) = (f.int(15), f.int(5));
    (0..alg.dim()).all(|i| y3[i] == &(&c15 * &y2[i]) + &(&c5 * &y.coeffs[i]))
}

fn run<T: std::fmt::Debug>(name: &str, r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Result<(), String> {
    let mut runner = TestRunner::new(config(1000));
    run("associativity", runner.run(&(cartan(3), any::<bool>()), |(c, da)| {
        let t = if da && c.n() <= 2 { build_da_table(&c) } else { build_ca_table(&c) };
        prop_assert!(t.validate().is_empty());
        Ok(())
    }))?;
    let mut runner = TestRunner::new(config(1000));
    run("functoriality", runner.run(&(cartan_and_graph(3, 3), proptest::collection::vec(0u64..3, 3)), |((c, g), v)| {
        prop_assert!(build_cell_rep(&c).validate().is_empty());
        prop_assert!(build_bipartite_rep(&c, &g).unwrap().validate().is_empty());
        let v = v[..c.n()].to_vec();
        if v.iter().any(|x| *x > 0) {
            let (r, _) = build_signature_extension(&SignatureInput::new(c, v, "M").unwrap()).unwrap();
            prop_assert!(r.validate().is_empty());
        }
        Ok(())
    }))?;
    let mut runner = TestRunner::new(config(1000));
    run("decorations", runner.run(&cartan_and_graph(3, 3), |(c, g)| {
        let r = build_bipartite_rep(&c, &g).unwrap();
        let d = r.diagram();
        prop_assert!(d.hasse.iter().all(|e| !d.decorations[e].is_empty()));
        prop_assert_eq!(named_diagram(&r), bipartite_diagram(&c, &g));
        Ok(())
    }))?;
    let mut runner = TestRunner::new(config(1000));
    run("gluing filter", runner.run(&(cartan(3), proptest::collection::vec(0u64..3, 3)), |(c, v)| {
        let v = v[..c.n()].to_vec();
        prop_assume!(v.iter().any(|x| *x > 0));
        let (r, ses) = build_signature_extension(&SignatureInput::new(c, v, "M").unwrap()).unwrap();
        let cells = Cells::compute(r.table());
        let js = &cells.two_sided;
        let jk = apex(&ses.k, &cells).unwrap().cell;
        prop_assert!(ses.theta.iter().all(|g| js.cell_le(js.cell_of[*g], jk)));
        prop_assert!(dext_filters(&cells, &ses.k, &ses.n, &ses.theta).unwrap().all_passed());
        Ok(())
    }))?;
    let mut runner = TestRunner::new(config(1000));
    run("direct sums", runner.run(&cartan_and_graph(3, 2), |(c, g)| {
        let a = build_bipartite_rep(&c, &g).unwrap();
        let b = build_cell_rep(&c);
        let (da, db, ds) = (named_diagram(&a), named_diagram(&b), named_diagram(&a.direct_sum(&b).unwrap()));
        let mut classes = da.classes;
        classes.extend(db.classes);
        let mut edges = da.edges;
        edges.extend(db.edges);
        prop_assert_eq!(ds.classes, classes);
        prop_assert_eq!(ds.edges, edges);
        Ok(())
    }))?;
    Ok(())
}

fn main() -> ExitCode {
    let inputs = SuiteInputs::bundled();
    let ms = Duration::from_millis;
    let mut lines = Vec::new();
    let mut push = |number, name, f: &mut dyn FnMut() -> (bool, String)| {
        let start = Instant::now();
        let (passed, detail) = f();
        lines.push(Line {
            number,
            name,
            passed,
            elapsed: start.elapsed(),
            detail,
        });
    };

    push(1, "B2 goodness identity", &mut || {
        let (ok, d, _) = suite_check(&inputs, "b2-goodness", Some(ms(100)));
        (ok && b2_identity(), d)
    });
    push(2, "I2(5) goodness identity", &mut || {
        let (ok, d, _) = suite_check(&inputs, "i2-5-goodness", Some(ms(100)));
        (ok && i2_5_identity(), d)
    });
    push(3, "cell recovery", &mut || {
        let (ok, d, _) = suite_check(&inputs, "cell-recovery", None);
        (ok, d)
    });
    push(4, "diagrams", &mut || {
        let (ok, d, _) = suite_check(&inputs, "diagrams", None);
        (ok, d)
    });
    push(5, "quotient modules", &mut || {
        let (ok, d, _) = suite_check(&inputs, "quotient-module", Some(ms(1000)));
        (ok, d)
    });
    push(6, "quotient isomorphy", &mut || {
        let (ok, d, _) = suite_check(&inputs, "quotient-isomorphy", None);
        (ok, d)
    });
    push(7, "signature extensions", &mut || {
        let (ok, d, _) = suite_check(&inputs, "signature-extensions", None);
        (ok, d)
    });
    push(8, "emptiness certificates", &mut || {
        let (ok, d, certs) = suite_check(&inputs, "emptiness-certificates", None);
        let rechecked = certs.len() >= 2 && certs.iter().all(|c| recheck_certificate(c) == Ok(true));
        (ok && rechecked, format!("{d}; {} certificates re-verified: {rechecked}", certs.len()))
    });
    push(9, "brute-force oracle", &mut || {
        let (ok, d, _) = suite_check(&inputs, "bruteforce", Some(ms(5000)));
        (ok, d)
    });
    push(10, "identity bimodule", &mut || {
        let (ok, d, _) = suite_check(&inputs, "identity-bimodule", Some(ms(5000)));
        (ok, d)
    });
    push(11, "property suites", &mut || match properties() {
        Ok(()) => (true, format!("5 properties x 1000 cases, seed {SEED:#x}")),
        Err(e) => (false, e),
    });

    for l in &lines {
        println!(
            "criterion {:>2} {}: {} ({:.3}s) {}",
            l.number,
            if l.passed { "PASS" } else { "FAIL" },
            l.name,
            l.elapsed.as_secs_f64(),
            l.detail
        );
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    println!("acceptance: {} passed, {failed} failed", lines.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
