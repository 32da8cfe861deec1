//! Randomized algebra laws for the form layer, all checked exactly.

use proptest::prelude::*;

use welding_core::scalar::frac;
use welding_core::simplex_forms::form::Form;

const VARS: usize = 3;

fn arb_term() -> impl Strategy<Value = (Vec<u8>, Vec<u32>, i64, i64)> {
    (
        proptest::sample::subsequence(vec![0u8, 1, 2], 0..=VARS),
        proptest::collection::vec(0u32..3, VARS),
        -4i64..=4,
        1i64..=3,
    )
}

fn arb_form() -> impl Strategy<Value = Form> {
    proptest::collection::vec(arb_term(), 0..5).prop_map(|terms| {
        let mut f = Form::zero(VARS);
        for (wedge, mono, num, den) in terms {
            f.add_term(wedge, mono, frac(num, den));
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_is_zero(a in arb_form()) {
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative(a in arb_form(), b in arb_form()) {
        for p in 0..=VARS {
            for q in 0..=VARS {
                let ap = a.component(p);
                let bq = b.component(q);
                let lhs = ap.wedge(&bq);
                let mut rhs = bq.wedge(&ap);
                if p * q % 2 == 1 {
                    rhs = rhs.neg();
                }
                prop_assert!(lhs.sub(&rhs).is_zero(), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn d_satisfies_leibniz(a in arb_form(), b in arb_form()) {
        for p in 0..=VARS {
            let ap = a.component(p);
            let lhs = ap.wedge(&b).d();
            let mut second = ap.wedge(&b.d());
            if p % 2 == 1 {
                second = second.neg();
            }
            let rhs = ap.d().wedge(&b).add(&second);
            prop_assert!(lhs.sub(&rhs).is_zero(), "p={p}");
        }
    }

    #[test]
    fn pullback_is_a_ring_map(a in arb_form(), b in arb_form()) {
        use welding_core::simplex_forms::poly::Poly;
        // substitute x1 ↦ x1 + x2, x2 ↦ x1·x3, x3 ↦ 1 − x2
        let images = vec![
            Poly::var(VARS, 0).add(&Poly::var(VARS, 1)),
            Poly::var(VARS, 0).mul(&Poly::var(VARS, 2)),
            Poly::one(VARS).sub(&Poly::var(VARS, 1)),
        ];
        let lhs = a.wedge(&b).pullback(&images);
        let rhs = a.pullback(&images).wedge(&b.pullback(&images));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn addition_is_associative_and_cancels(a in arb_form(), b in arb_form()) {
        let sum = a.add(&b);
        prop_assert!(sum.sub(&b).sub(&a).is_zero());
        prop_assert_eq!(a.add(&b), b.add(&a));
    }
}
