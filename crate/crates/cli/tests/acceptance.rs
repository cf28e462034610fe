//! End-to-end acceptance checks, run sequentially by a custom harness so
//! each criterion gets one pass/fail line and an honest wall-clock reading.
//! Each criterion asserts its runtime budget on top of the mathematical
//! property.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use carleman::coinvariant::{artin_basis, cramer_decompose, delta_divisibility_check};
use carleman::equivariant::{
    decompose_equivariant, equivariant_module_generators, hf_cross_check, EquivariantMap,
    RepresentationPair,
};
use carleman::invariant::{
    invariant_generators, reynolds, rewrite_invariant, weyl_section_check, FiniteMatrixGroup,
};
use carleman::poly::Polynomial;
use carleman::sample::{random_polynomial, rng};
use carleman::symmetric::{bronshtein_check, necessity_report};
use carleman::weights::{classify, loss_condition, VerdictStatus, WeightSequence};

fn main() {
    let criteria: &[(&str, fn())] = &[
        ("classification table", criterion_1_classification_table),
        ("gevrey loss grid", criterion_2_gevrey_loss_grid),
        ("invariant rewrite round trips", criterion_3_invariant_rewrite_round_trips),
        ("weyl section identity", criterion_4_weyl_section_identity),
        ("coinvariant decomposition", criterion_5_coinvariant_decomposition),
        ("bronshtein partials", criterion_6_bronshtein_partials),
        ("necessity series", criterion_7_necessity_series),
        ("equivariant reconstruction", criterion_8_equivariant_reconstruction),
        ("cli byte determinism", criterion_9_cli_byte_determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0usize;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}  {name:<32} PASS  ({secs:.2}s)", i + 1),
            Err(payload) => {
                failures += 1;
                println!(
                    "criterion {}  {name:<32} FAIL  ({secs:.2}s): {}",
                    i + 1,
                    panic_text(payload.as_ref())
                );
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

fn panic_text(payload: &(dyn std::any::Any + Send)) -> &str {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s
    } else {
        "panic"
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn group_list() -> Vec<(&'static str, FiniteMatrixGroup)> {
    let s2 = FiniteMatrixGroup::symmetric(2);
    vec![
        ("sign", FiniteMatrixGroup::sign_group()),
        ("s2", s2.clone()),
        ("s3", FiniteMatrixGroup::symmetric(3)),
        ("c4", FiniteMatrixGroup::cyclic4()),
        ("s2xs2", FiniteMatrixGroup::product(&s2, &s2)),
    ]
}

fn status(spec: &str, condition: &str) -> VerdictStatus {
    let seq = WeightSequence::parse_spec(spec).unwrap();
    let report = classify(&seq, 200).unwrap();
    report
        .conditions
        .iter()
        .find(|c| c.condition == condition)
        .unwrap_or_else(|| panic!("{spec} has no condition {condition}"))
        .status
}

fn criterion_1_classification_table() {
    let t = Instant::now();
    use VerdictStatus::{Fails, Holds};

    assert_eq!(status("constant", "quasianalytic"), Holds);
    for spec in ["gevrey:1/2", "gevrey:1", "gevrey:2"] {
        assert_eq!(status(spec, "strongly_regular"), Holds, "{spec}");
    }
    for spec in ["logpow:1/2", "logpow:1"] {
        assert_eq!(status(spec, "quasianalytic"), Holds, "{spec}");
    }
    assert_eq!(status("logpow:2", "quasianalytic"), Fails);
    assert_eq!(status("logpow:2", "strongly_nonquasianalytic"), Fails);
    assert_eq!(status("qgevrey:2", "strongly_nonquasianalytic"), Holds);
    assert_eq!(status("qgevrey:2", "moderate_growth"), Fails);

    assert!(t.elapsed() < Duration::from_secs(5), "{:?}", t.elapsed());
}

fn criterion_2_gevrey_loss_grid() {
    let t = Instant::now();
    for delta in [ratio(1, 2), ratio(1, 1)] {
        let m = WeightSequence::gevrey(delta.clone()).unwrap();
        for stretch in [1u64, 2, 3] {
            let dm = &delta * BigRational::from_integer(BigInt::from(stretch));
            for offset in [ratio(-1, 4), ratio(-1, 8), ratio(0, 1), ratio(1, 8), ratio(1, 4)] {
                let target_index = &dm + &offset;
                if target_index <= ratio(0, 1) {
                    continue;
                }
                let n = WeightSequence::gevrey(target_index.clone()).unwrap();
                let v = loss_condition(&m, &n, stretch, 200).unwrap();
                let expected = if offset >= ratio(0, 1) {
                    VerdictStatus::Holds
                } else {
                    VerdictStatus::Fails
                };
                assert_eq!(
                    v.status, expected,
                    "gevrey:{delta} stretched {stretch}-fold into gevrey:{target_index}"
                );
            }
        }
    }
    assert!(t.elapsed() < Duration::from_secs(10), "{:?}", t.elapsed());
}

fn criterion_3_invariant_rewrite_round_trips() {
    let t = Instant::now();
    for (name, g) in group_list() {
        let sigma = invariant_generators(&g).unwrap();
        let mut r = rng(101);
        for _ in 0..50 {
            let raw = random_polynomial(&mut r, g.dim(), 8, 5);
            let f = reynolds(&raw, &g).unwrap();
            let h = rewrite_invariant(&f, &sigma).unwrap();
            assert_eq!(h.compose(sigma.generators()).unwrap(), f, "{name}");
        }
    }
    assert!(t.elapsed() < Duration::from_secs(120), "{:?}", t.elapsed());
}

fn criterion_4_weyl_section_identity() {
    let t = Instant::now();
    for (name, g) in group_list() {
        let check = weyl_section_check(&g, 6).unwrap();
        assert!(check.pass(), "{name}: {} failures", check.failures);
        assert!(check.checked > 0, "{name}");
    }
    assert!(t.elapsed() < Duration::from_secs(60), "{:?}", t.elapsed());
}

fn criterion_5_coinvariant_decomposition() {
    let t = Instant::now();
    for blocks in [vec![2usize], vec![3], vec![2, 2]] {
        let b = artin_basis(&blocks).unwrap();
        let report = delta_divisibility_check(&b);
        assert!(report.pass, "{blocks:?}: cofactor {}", report.cofactor);

        let mut r = rng(202);
        for _ in 0..30 {
            let f = random_polynomial(&mut r, b.nvars(), 6, 5);
            let coeffs = cramer_decompose(&f, &b).unwrap();
            let mut back = Polynomial::zero(b.nvars());
            for (h, c) in b.basis().iter().zip(&coeffs) {
                assert!(b.is_w_invariant(c), "{blocks:?}");
                back = back.add(&h.mul(c));
            }
            assert_eq!(back, f, "{blocks:?}");
        }
    }
    assert!(t.elapsed() < Duration::from_secs(120), "{:?}", t.elapsed());
}

fn criterion_6_bronshtein_partials() {
    let t = Instant::now();
    for n in [2usize, 3] {
        let check = bronshtein_check(n, 6).unwrap();
        assert!(check.pass(), "n = {n}: {:?}", check.mismatches);
        assert!(check.cases > 0, "n = {n}");
    }
    assert!(t.elapsed() < Duration::from_secs(120), "{:?}", t.elapsed());
}

fn criterion_7_necessity_series() {
    let t = Instant::now();
    let m = WeightSequence::parse_spec("gevrey:1").unwrap();
    let report = necessity_report(&m, 3, 5, 40).unwrap();
    assert_eq!(report.rows.len(), 5);
    assert!(report.all_certified(), "{}", report.to_text());
    assert!(t.elapsed() < Duration::from_secs(5), "{:?}", t.elapsed());
}

fn criterion_8_equivariant_reconstruction() {
    let t = Instant::now();
    for g in [FiniteMatrixGroup::sign_group(), FiniteMatrixGroup::symmetric(2)] {
        let pair = RepresentationPair::diagonal(&g);
        let sigma = invariant_generators(pair.source_group()).unwrap();
        let gens = equivariant_module_generators(&pair).unwrap();
        let mut r = rng(303);
        for _ in 0..30 {
            let mut components = vec![Polynomial::zero(pair.source_dim()); pair.target_dim()];
            for gen in &gens {
                let l = random_polynomial(&mut r, sigma.len(), 2, 3);
                let in_x = l.compose(sigma.generators()).unwrap();
                for (t, c) in gen.components().iter().enumerate() {
                    components[t] = components[t].add(&c.mul(&in_x));
                }
            }
            let f = EquivariantMap::new(&pair, components).unwrap();

            let coeffs = decompose_equivariant(&f, &sigma, &gens).unwrap();
            let mut back = vec![Polynomial::zero(pair.source_dim()); pair.target_dim()];
            for (l, gen) in coeffs.iter().zip(&gens) {
                let in_x = l.compose(sigma.generators()).unwrap();
                for (t, c) in gen.components().iter().enumerate() {
                    back[t] = back[t].add(&c.mul(&in_x));
                }
            }
            assert_eq!(back.as_slice(), f.components());

            let hf = hf_cross_check(&f).unwrap();
            assert_eq!(
                hf.reconstruct(pair.source_dim(), pair.target_dim()).as_slice(),
                f.components()
            );
        }
    }
    assert!(t.elapsed() < Duration::from_secs(60), "{:?}", t.elapsed());
}

fn criterion_9_cli_byte_determinism() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["seq", "classify", "--spec", "gevrey:1"],
        vec!["seq", "compare", "--from", "gevrey:1", "--to", "gevrey:2"],
        vec!["seq", "loss", "--from", "gevrey:1", "--to", "gevrey:2", "--stretch", "2"],
        vec!["inv", "generators", "--group", "s3"],
        vec!["inv", "rewrite", "--group", "s3", "--poly", "x1*x2*x3"],
        vec!["inv", "reynolds", "--group", "c4", "--poly", "x1^4"],
        vec!["inv", "weyl-check", "--group", "c4", "--max-degree", "3"],
        vec!["coinv", "basis", "--blocks", "2,2"],
        vec!["coinv", "decompose", "--blocks", "3", "--poly", "x1^2"],
        vec!["coinv", "delta-check", "--blocks", "2,2"],
        vec!["sym", "rewrite", "--poly", "x1^2 + x2^2", "--nvars", "2"],
        vec!["sym", "bronshtein-check", "--nvars", "2", "--max-degree", "3"],
        vec!["sym", "necessity", "--m-max", "3", "--truncation", "20"],
        vec!["equiv", "generators", "--group", "s2"],
        vec!["equiv", "decompose", "--group", "s2", "--map", "x1^2; x2^2", "--cross-check"],
        vec!["demo", "gevrey-loss", "--k-max", "100"],
    ];
    for args in &commands {
        let mut once = Command::new(env!("CARGO_BIN_EXE_carleman"));
        once.arg("--format").arg("json").args(args);
        let a = once.output().expect("binary runs");
        let mut again = Command::new(env!("CARGO_BIN_EXE_carleman"));
        again.arg("--format").arg("json").args(args);
        let b = again.output().expect("binary runs");
        assert!(
            a.status.code() == Some(0) || a.status.code() == Some(1),
            "{args:?}: {:?}",
            a.status
        );
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
