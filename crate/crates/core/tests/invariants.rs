//! Property-based invariants on randomly generated finite-length modules.

use homlab_core::fpmodule::{random_artinian_module, FPModule};
use homlab_core::homology::{annihilator, fitting_ideal, matlis_dual, socle_dim, transpose};
use homlab_core::modvec::ModPoly;
use homlab_core::oracle::realize;
use homlab_core::ring::QuotientRing;
use homlab_core::theorems::{reshuffle_presentation, standard_artinian_rings};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn module_from_seed(ring_idx: u8, seed: u64) -> (Arc<QuotientRing>, FPModule) {
    let rings = standard_artinian_rings();
    let ring = rings[ring_idx as usize % rings.len()].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_artinian_module(&ring, 2, 3, &mut rng);
    (ring, m)
}

fn random_vector(m: &FPModule, seed: u64) -> ModPoly {
    let ring = m.ring().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = ModPoly::zero(m.ambient_rank());
    for i in 0..m.ambient_rank() {
        let d = (seed >> (i % 8)) as i64 % 3;
        let f = homlab_core::fpmodule::random_ring_element(&ring, d.abs(), &mut rng);
        v.comps[i] = f;
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent(ring_idx in 0u8..4, seed in any::<u64>(), vseed in any::<u64>()) {
        let (_, m) = module_from_seed(ring_idx, seed);
        let v = random_vector(&m, vseed);
        let nf = m.nf(&v);
        prop_assert_eq!(m.nf(&nf), nf);
    }

    #[test]
    fn minimization_is_idempotent_and_hilbert_preserving(ring_idx in 0u8..4, seed in any::<u64>()) {
        let (_, m) = module_from_seed(ring_idx, seed);
        let m1 = m.minimized();
        let m2 = m1.minimized();
        prop_assert_eq!(m1.mu(), m2.mu());
        for d in 0..5 {
            prop_assert_eq!(m.hilbert_function(d), m1.hilbert_function(d));
            prop_assert_eq!(m1.hilbert_function(d), m2.hilbert_function(d));
        }
    }

    #[test]
    fn betti_numbers_are_presentation_independent(ring_idx in 0u8..4, seed in any::<u64>(), shuffle in any::<u64>()) {
        let (_, m) = module_from_seed(ring_idx, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle);
        let m2 = reshuffle_presentation(&m, &mut rng);
        let r1 = homlab_core::fpmodule::resolution(&m, 3);
        let r2 = homlab_core::fpmodule::resolution(&m2, 3);
        for i in 0..=3 {
            prop_assert_eq!(r1.betti(i), r2.betti(i));
        }
    }

    #[test]
    fn fitting_ideals_form_a_chain(ring_idx in 0u8..4, seed in any::<u64>()) {
        let (ring, m) = module_from_seed(ring_idx, seed);
        let m = m.minimized();
        prop_assume!(!m.is_zero_module());
        let n = m.mu();
        let ann = annihilator(&m);
        for j in 1..=n.min(3) {
            let lower = fitting_ideal(&m, j - 1);
            let upper = fitting_ideal(&m, j);
            // ascending chain
            for g in &lower.gens {
                prop_assert!(upper.contains(g), "I_{} not inside I_{}", j - 1, j);
            }
            // Ann * I_j inside I_{j-1}
            for a in ann.gb() {
                for g in &upper.gens {
                    let prod = a.mul(&ring.poly, g);
                    prop_assert!(lower.contains(&prod), "Ann * I_{} escapes I_{}", j, j - 1);
                }
            }
        }
        // I_0 inside Ann inside I_{mu-1}... check the outer bounds
        let i0 = fitting_ideal(&m, 0);
        for g in &i0.gens {
            prop_assert!(ann.contains(g), "I_0 must annihilate the module");
        }
    }

    #[test]
    fn matlis_duality_preserves_length_and_swaps_invariants(ring_idx in 0u8..4, seed in any::<u64>()) {
        let (_, m) = module_from_seed(ring_idx, seed);
        let m = m.minimized();
        prop_assume!(!m.is_zero_module());
        let d = matlis_dual(&m);
        prop_assert_eq!(d.length(), m.length());
        prop_assert_eq!(d.mu(), socle_dim(&m));
        prop_assert_eq!(socle_dim(&d), m.mu());
        let dd = matlis_dual(&d);
        prop_assert_eq!(dd.length(), m.length());
        prop_assert_eq!(dd.mu(), m.mu());
    }

    #[test]
    fn double_transpose_preserves_stable_modules(ring_idx in 0u8..4, seed in any::<u64>()) {
        let (_, m) = module_from_seed(ring_idx, seed);
        let m = m.minimized();
        prop_assume!(!m.is_zero_module());
        prop_assume!(homlab_core::homology::has_free_summand(&m).is_none());
        let tt = transpose(&transpose(&m)).minimized();
        prop_assert_eq!(tt.length(), m.length());
        prop_assert_eq!(tt.mu(), m.mu());
        prop_assert_eq!(socle_dim(&tt), socle_dim(&m));
    }

    #[test]
    fn oracle_realization_matches_presentation(ring_idx in 0u8..4, seed in any::<u64>()) {
        let (_, m) = module_from_seed(ring_idx, seed);
        let l = realize(&m);
        prop_assert_eq!(l.dim(), m.length());
        prop_assert_eq!(l.mu(), m.minimized().mu());
        prop_assert_eq!(l.socle_dim(), socle_dim(&m));
        for d in 0..5 {
            prop_assert_eq!(l.hilbert_function(d), m.hilbert_function(d));
        }
    }
}
