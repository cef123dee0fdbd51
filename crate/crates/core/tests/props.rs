//! Property tests: structural laws that must hold for every input, sampled
//! through seeded generators so failures reproduce from the printed seed.

use proptest::prelude::*;
use twistlab_core::geom;
use twistlab_core::lie;
use twistlab_core::rmatrix;
use twistlab_core::sampling;
use twistlab_core::serial;
use twistlab_core::twist::{gauge_twist, normalize_invariant_twist, reconstruct};
use twistlab_core::uea::{Ctx, Elem};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hopf_axioms_hold(seed in any::<u64>()) {
        let ctx = Ctx::new(lie::heisenberg(2), 1);
        let mut rng = sampling::rng_from_seed(seed);
        let a = sampling::random_elem(&ctx, &mut rng, 1, 3, 3);
        let b = sampling::random_elem(&ctx, &mut rng, 1, 3, 3);
        let c = sampling::random_elem(&ctx, &mut rng, 1, 2, 2);
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        let da = a.coproduct_at(0);
        let db = b.coproduct_at(0);
        prop_assert_eq!(a.mul(&b).coproduct_at(0), da.mul(&db));
        prop_assert_eq!(da.coproduct_at(0), da.coproduct_at(1));
        prop_assert_eq!(da.counit_at(0), a.clone());
        prop_assert_eq!(da.counit_at(1), a.clone());
        let convolved = rmatrix::multiply_slots(&da.antipode_at(0));
        prop_assert_eq!(convolved, Elem::scalar(&ctx, 1, a.counit()));
    }

    #[test]
    fn exp_and_log_invert(seed in any::<u64>()) {
        let ctx = Ctx::new(lie::heisenberg(1), 3);
        let mut rng = sampling::rng_from_seed(seed);
        let x = sampling::random_elem(&ctx, &mut rng, 1, 2, 2).shift_h(1);
        let e = x.exp().unwrap();
        prop_assert_eq!(&e.log().unwrap(), &x);
        prop_assert!(e.mul(&x.neg().exp().unwrap()).is_unit_elem());
    }

    #[test]
    fn gauging_is_a_group_action(seed in any::<u64>()) {
        let ctx = Ctx::new(lie::heisenberg(1), 3);
        let mut rng = sampling::rng_from_seed(seed);
        let f = sampling::random_twist(&ctx, &mut rng).unwrap();
        let a = sampling::random_gauge(&ctx, &mut rng).unwrap();
        let b = sampling::random_gauge(&ctx, &mut rng).unwrap();
        let two_steps = gauge_twist(&b, &gauge_twist(&a, &f).unwrap()).unwrap();
        prop_assert_eq!(two_steps, gauge_twist(&b.mul(&a), &f).unwrap());
        prop_assert_eq!(gauge_twist(&Elem::unit(&ctx, 1), &f).unwrap(), f);
    }

    #[test]
    fn central_witness_is_bilinear_and_antisymmetric(seed in any::<u64>()) {
        let ctx = Ctx::new(lie::heisenberg(2), 2);
        let mut rng = sampling::rng_from_seed(seed);
        let x = sampling::random_invariant_skew(&ctx, &mut rng);
        let x2 = sampling::random_invariant_skew(&ctx, &mut rng);
        let y = sampling::random_invariant_skew(&ctx, &mut rng);
        let axy = geom::three_vector(&x, &y).unwrap().a;
        prop_assert_eq!(geom::three_vector(&y, &x).unwrap().a, axy.neg());
        let sum = geom::three_vector(&x.add(&x2), &y).unwrap().a;
        prop_assert_eq!(sum, axy.add(&geom::three_vector(&x2, &y).unwrap().a));
    }

    #[test]
    fn invariant_skews_solve_the_classical_equation(seed in any::<u64>()) {
        for alg in [lie::heisenberg(2), lie::abelian(3), lie::two_step_rank_one()] {
            let ctx = Ctx::new(alg, 2);
            let mut rng = sampling::rng_from_seed(seed);
            let r = sampling::random_invariant_skew(&ctx, &mut rng);
            prop_assert!(rmatrix::cybe_holds(&r));
        }
    }

    #[test]
    fn tensors_round_trip_through_json(seed in any::<u64>()) {
        let ctx = Ctx::new(lie::heisenberg(1), 3);
        let mut rng = sampling::rng_from_seed(seed);
        let f = sampling::random_twist(&ctx, &mut rng).unwrap();
        let j = serial::elem_to_json(&f);
        prop_assert_eq!(&serial::elem_from_json(&ctx, &j).unwrap(), &f);
        let text = serde_json::to_string(&j).unwrap();
        let back: serial::TensorJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&serial::elem_from_json(&ctx, &back).unwrap(), &f);
    }

    #[test]
    fn normalization_inverts_reconstruction(seed in any::<u64>()) {
        let ctx = Ctx::new(lie::heisenberg(1), 3);
        let mut rng = sampling::rng_from_seed(seed);
        let xs: Vec<Elem> = (1..=3)
            .map(|_| sampling::random_invariant_skew(&ctx, &mut rng))
            .collect();
        let f = reconstruct(&ctx, &xs).unwrap();
        let nf = normalize_invariant_twist(&f).unwrap();
        prop_assert_eq!(nf.xs, xs);
        prop_assert!(nf.gauge.is_unit_elem());
    }
}
