use nalgebra::{Matrix3, Vector3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinsq::criteria::{self, InequalityId, DETECTION_TOL};
use spinsq::io::{self, fmt_num};
use spinsq::linalg::{self, Bipartition};
use spinsq::spin::{self, Axis};
use spinsq::{random, separability, CollectiveMoments};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_states_never_violate(seed in any::<u64>(), n in 2usize..=6, k in 1usize..=10) {
        let rho = random::product_mixture(n, k, &mut rng(seed));
        let report = criteria::eval_full(&spin::moments_from_state(&rho)).unwrap();
        prop_assert!(report.max_margin <= DETECTION_TOL, "{:?}", report.argmax_id);
        prop_assert!(!separability::ppt_all(&rho).unwrap().is_npt());
    }

    #[test]
    fn eq2a_holds_for_all_states(seed in any::<u64>(), n in 2usize..=5, rank in 1usize..=8) {
        let rho = random::density_matrix_with_rank(n, rank, &mut rng(seed));
        let report = criteria::eval_observation1(&spin::moments_from_state(&rho)).unwrap();
        prop_assert!(report.margin(InequalityId::Eq2a).unwrap() <= DETECTION_TOL);
    }

    #[test]
    fn partial_transpose_preserves_trace_and_squares_to_identity(seed in any::<u64>(), n in 2usize..=4, mask in 1usize..8) {
        let rho = random::density_matrix(n, &mut rng(seed));
        let side: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
        prop_assume!(!side.is_empty() && side.len() < n);
        let part = Bipartition::new(n, &side).unwrap();
        let pt = linalg::partial_transpose(&rho, &part).unwrap();
        prop_assert!((pt.trace() - rho.trace()).norm() < 1e-12);
        prop_assert_eq!(&linalg::partial_transpose(&pt, &part).unwrap(), rho.matrix());
    }

    #[test]
    fn rotations_keep_rotation_invariant_margins(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let m = spin::moments_from_state(&random::density_matrix_with_rank(n, 2, &mut r));
        let rotated = criteria::rotate_moments(&m, &random::rotation(&mut r)).unwrap();
        let a = criteria::eval_observation1(&m).unwrap();
        let b = criteria::eval_observation1(&rotated).unwrap();
        for id in [InequalityId::Eq2a, InequalityId::Eq2b] {
            prop_assert!((a.margin(id).unwrap() - b.margin(id).unwrap()).abs() < 1e-10);
        }
        // the closed-form optimum bounds every frame
        let opt = criteria::optimal_directions(&m).unwrap();
        for axis in Axis::ALL {
            prop_assert!(b.margin(InequalityId::Eq2c(axis)).unwrap() <= opt.eq2c_best_margin + 1e-10);
            prop_assert!(b.margin(InequalityId::Eq2d(axis)).unwrap() <= opt.eq2d_best_margin + 1e-10);
        }
    }

    #[test]
    fn moments_file_round_trip(
        n in 1usize..=20,
        j in prop::array::uniform3(-10.0f64..10.0),
        c in prop::array::uniform6(-50.0f64..50.0),
    ) {
        let corr = Matrix3::new(c[0], c[3], c[4], c[3], c[1], c[5], c[4], c[5], c[2]);
        let m = CollectiveMoments::new(n, Vector3::from(j), corr).unwrap();
        prop_assert_eq!(io::parse_moments(&io::write_moments(&m)).unwrap(), m);
    }

    #[test]
    fn formatted_numbers_keep_six_digits(x in -1e9f64..1e9) {
        let s = fmt_num(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-6 * x.abs() + 1e-300, "{} -> {}", x, s);
    }
}

#[test]
fn state_file_round_trip_preserves_moments() {
    for seed in 0..5 {
        let rho = random::density_matrix(3, &mut rng(seed));
        let back = io::parse_state(&io::write_state(rho.matrix())).unwrap();
        let (a, b) = (spin::moments_from_state(&rho), spin::moments_from_state(&back));
        assert!((a.corr - b.corr).amax() < 1e-12 && (a.j_vec - b.j_vec).amax() < 1e-12);
    }
}
