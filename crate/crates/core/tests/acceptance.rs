//! Acceptance gate: ten criteria, each printing a single pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use homlab_core::fpmodule::FPModule;
use homlab_core::homology::{
    depth, ext_module, gorenstein_test, has_free_summand, hom_module, is_isomorphic_up_to_shift,
    module_type, tensor_module, Iso,
};
use homlab_core::ring::{PolyRing, QuotientRing};
use homlab_core::suites::{
    oracle_check, suite_dualfree, suite_fitting, suite_m_free, suite_minsyz, suite_nu,
    SuiteOptions,
};
use homlab_core::theorems::{check_dualfree, nodal_instance, Conclusion};
use std::sync::Arc;
use std::time::Instant;

struct Gate {
    number: usize,
    name: &'static str,
    start: Instant,
    limit_secs: u64,
}

impl Gate {
    fn open(number: usize, name: &'static str, limit_secs: u64) -> Self {
        Gate {
            number,
            name,
            start: Instant::now(),
            limit_secs,
        }
    }

    fn pass(self) {
        let secs = self.start.elapsed().as_secs_f64();
        println!(
            "acceptance criterion {:2} ({}): PASS in {:.1}s (limit {}s)",
            self.number, self.name, secs, self.limit_secs
        );
        assert!(
            secs < self.limit_secs as f64,
            "criterion {} exceeded its runtime target: {:.1}s > {}s",
            self.number,
            secs,
            self.limit_secs
        );
    }

    fn fail(self, detail: &str) -> ! {
        println!(
            "acceptance criterion {:2} ({}): FAIL — {}",
            self.number, self.name, detail
        );
        panic!("criterion {} failed: {}", self.number, detail);
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get().min(8))
}

fn cusp_ring() -> Arc<QuotientRing> {
    let poly = Arc::new(PolyRing::new(5, &["x", "y"], &[2, 3]));
    QuotientRing::new(poly.clone(), vec![poly.parse("y^2 - x^3").unwrap()])
}

#[test]
fn criterion_01_cross_engine_ext_agreement() {
    let gate = Gate::open(1, "cross-engine Ext agreement", 300);
    let report = oracle_check(200, 42, jobs());
    if !report.all_equal {
        let bad: Vec<String> = report
            .rows
            .iter()
            .flat_map(|r| r.disagreements.iter().cloned())
            .collect();
        gate.fail(&format!("engine disagreement: {}", bad.join(" | ")));
    }
    for row in &report.rows {
        assert_eq!(row.pairs, 200);
        assert_eq!(row.agreements, row.comparisons);
    }
    gate.pass();
}

#[test]
fn criterion_02_nodal_ext_regression() {
    let gate = Gate::open(2, "nodal Ext regression", 5);
    let (_, m, _) = nodal_instance();
    let e0 = ext_module(&m, &m, 0);
    let (iso, _) = is_isomorphic_up_to_shift(&e0, &m, 42, 200);
    if iso != Iso::True {
        gate.fail("Ext^0(M,M) is not isomorphic to M");
    }
    if !ext_module(&m, &m, 1).is_zero_module() {
        gate.fail("Ext^1(M,M) should vanish");
    }
    let e2 = ext_module(&m, &m, 2);
    if e2.length() != 1 {
        gate.fail(&format!("Ext^2(M,M) should be k, found length {}", e2.length()));
    }
    if has_free_summand(&m).is_some() {
        gate.fail("M = R/(x) must not have a free summand");
    }
    gate.pass();
}

#[test]
fn criterion_03_syzygy_four_way_equivalence() {
    let gate = Gate::open(3, "first-syzygy four-way equivalence", 600);
    let opts = SuiteOptions {
        samples: 500,
        seed: 42,
        budget: 400,
        jobs: jobs(),
        exhaustive: true,
        max_dim: 3,
    };
    let s = suite_minsyz(&opts);
    if s.fails > 0 {
        gate.fail(&format!("{} disagreement(s): {}", s.fails, s.notes.join(" | ")));
    }
    if s.inconclusive > 0 {
        gate.fail(&format!(
            "four-way equivalence must be decisive; {} inconclusive",
            s.inconclusive
        ));
    }
    assert!(s.instances > 500, "exhaustive portion missing");
    gate.pass();
}

#[test]
fn criterion_04_fitting_biconditional() {
    let gate = Gate::open(4, "fitting-ideal biconditional", 900);
    let opts = SuiteOptions {
        samples: 500,
        seed: 42,
        budget: 400,
        jobs: jobs(),
        exhaustive: true,
        max_dim: 3,
    };
    let s = suite_fitting(&opts);
    if s.fails > 0 {
        gate.fail(&format!("{} verified fail(s): {}", s.fails, s.notes.join(" | ")));
    }
    let rate = s.inconclusive as f64 / s.instances as f64;
    if rate >= 0.05 {
        gate.fail(&format!(
            "inconclusive rate {:.1}% exceeds 5% ({} of {})",
            rate * 100.0,
            s.inconclusive,
            s.instances
        ));
    }
    // every inconclusive instance is logged with a reason
    let logged = s
        .notes
        .iter()
        .filter(|n| n.starts_with("inconclusive"))
        .count();
    assert_eq!(logged, s.inconclusive, "inconclusive instances must be logged");
    gate.pass();
}

#[test]
fn criterion_05_socle_count_multiplicativity() {
    let gate = Gate::open(5, "socle-count multiplicativity", 300);
    let opts = SuiteOptions {
        samples: 500,
        seed: 42,
        budget: 400,
        jobs: jobs(),
        exhaustive: false,
        max_dim: 3,
    };
    let s = suite_nu(&opts);
    if s.fails > 0 {
        gate.fail(&format!("{} fail(s): {}", s.fails, s.notes.join(" | ")));
    }
    if s.inconclusive > 0 {
        gate.fail("multiplicativity must be exact on every instance");
    }
    assert!(s.instances > 500, "depth-one portion missing");
    gate.pass();
}

#[test]
fn criterion_06_freeness_from_hom_hypotheses() {
    let gate = Gate::open(6, "freeness from Hom hypotheses", 600);
    let opts = SuiteOptions {
        samples: 500,
        seed: 42,
        budget: 400,
        jobs: jobs(),
        exhaustive: false,
        max_dim: 3,
    };
    let s = suite_m_free(&opts);
    if s.fails > 0 {
        gate.fail(&format!("{} fail(s): {}", s.fails, s.notes.join(" | ")));
    }
    assert!(
        s.holds > 0,
        "campaign must include instances whose hypotheses hold"
    );
    gate.pass();
}

#[test]
fn criterion_07_dual_freeness_descent() {
    let gate = Gate::open(7, "dual freeness descent", 300);
    let opts = SuiteOptions {
        samples: 500,
        seed: 42,
        budget: 400,
        jobs: jobs(),
        exhaustive: false,
        max_dim: 3,
    };
    let s = suite_dualfree(&opts);
    if s.fails > 0 {
        gate.fail(&format!("{} fail(s): {}", s.fails, s.notes.join(" | ")));
    }
    // the classical R ⊕ k caution lands in inconclusive-hypothesis, never fail
    let (ring, _, _) = nodal_instance();
    let free = FPModule::free(ring.clone(), vec![0]);
    let k = FPModule::residue_field(&ring);
    let m = FPModule::direct_sum(&[&free, &k]);
    let v = check_dualfree(&m, 42);
    if v.conclusion != Conclusion::Inconclusive {
        gate.fail(&format!(
            "R + k must be inconclusive (failing Ext hypothesis), got {:?}",
            v.conclusion
        ));
    }
    gate.pass();
}

#[test]
fn criterion_08_gorenstein_type() {
    let gate = Gate::open(8, "Gorenstein type", 120);
    let fat = {
        let poly = Arc::new(PolyRing::new(2, &["x", "y"], &[1, 1]));
        let gens = ["x^2", "x*y", "y^2"]
            .iter()
            .map(|s| poly.parse(s).unwrap())
            .collect();
        QuotientRing::new(poly, gens)
    };
    let trunc = {
        let poly = Arc::new(PolyRing::new(3, &["x"], &[1]));
        QuotientRing::new(poly.clone(), vec![poly.parse("x^3").unwrap()])
    };
    let cusp = cusp_ring();
    for (ring, expected) in [(&fat, 2usize), (&trunc, 1), (&cusp, 1)] {
        let free = FPModule::free(ring.clone(), vec![0]);
        let t = module_type(&free);
        if t != expected {
            gate.fail(&format!("type mismatch: expected {}, computed {}", expected, t));
        }
        match gorenstein_test(ring) {
            Ok(g) => {
                if g != (expected == 1) {
                    gate.fail("gorenstein_test disagrees with computed type");
                }
            }
            Err(e) => gate.fail(&format!("gorenstein_test error: {}", e)),
        }
    }
    gate.pass();
}

#[test]
fn criterion_09_ext_vanishing_forces_cm_tensor() {
    let gate = Gate::open(9, "Ext vanishing forces CM tensor", 120);
    let (ring, mx, my) = nodal_instance();
    let free = FPModule::free(ring.clone(), vec![0]);
    let omega = homlab_core::homology::canonical_module(&ring).unwrap();
    let mods = [&free, &mx, &my];
    let mut checked = 0;
    for m in mods {
        for n in mods {
            if !ext_module(m, n, 1).is_zero_module() {
                continue;
            }
            let ndual = hom_module(n, &omega);
            let t = tensor_module(m, &ndual);
            if t.minimized().is_zero_module() {
                continue;
            }
            let d = depth(&t);
            if d != 1 {
                gate.fail(&format!("depth(M (x) N^v) = {} but 1 expected", d));
            }
            checked += 1;
        }
    }
    assert!(checked >= 3, "expected several vanishing-Ext pairs");
    gate.pass();
}

#[test]
fn criterion_10_verify_determinism() {
    let gate = Gate::open(10, "verify determinism", 120);
    let opts = SuiteOptions {
        samples: 60,
        seed: 42,
        budget: 400,
        jobs: 1,
        exhaustive: false,
        max_dim: 2,
    };
    let mut opts_par = opts.clone();
    opts_par.jobs = 4;
    for suite in ["minsyz", "fittingM", "dualfree", "nu"] {
        let a = homlab_core::suites::run_suite(suite, &opts).unwrap();
        let b = homlab_core::suites::run_suite(suite, &opts).unwrap();
        let c = homlab_core::suites::run_suite(suite, &opts_par).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        if ja != serde_json::to_string(&b).unwrap() {
            gate.fail(&format!("suite {} rerun differs", suite));
        }
        if ja != serde_json::to_string(&c).unwrap() {
            gate.fail(&format!("suite {} differs under --jobs", suite));
        }
    }
    gate.pass();
}
