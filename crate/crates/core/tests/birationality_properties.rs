use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qfano::birationality::{
    aggregate_bounds, assumption_thresholds, birational_bound, certifies, epsilon, m1_not_pencil,
    np_table, refine_zeta, theorem8_table, GenusClass, GeometricCase, NonPencilReason, Theorem,
};
use qfano::sample::{sample_baskets, SampleSpec};
use qfano::series::feasibility;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn genus() -> impl Strategy<Value = GenusClass> {
    prop_oneof![
        Just(GenusClass::Zero),
        Just(GenusClass::Positive),
        Just(GenusClass::Unknown)
    ]
}

#[test]
fn aggregation_reproduces_table() {
    for r in 2..=60 {
        assert_eq!(
            aggregate_bounds(r).unwrap(),
            theorem8_table(r).unwrap(),
            "r = {r}"
        );
    }
}

#[test]
fn curve_image_uses_table_m1() {
    for r in 2..=24u32 {
        for mhat0 in 1..=8u32 {
            let b =
                birational_bound(&GeometricCase::new(mhat0, 1, r, GenusClass::Unknown).unwrap())
                    .unwrap();
            assert_eq!(b.theorem, Theorem::Cor11);
            assert_eq!(b.m_min, mhat0 + np_table(r).unwrap() + 2 * r);
        }
    }
}

#[test]
fn fixed_point_of_refinement() {
    for mhat0 in 1..=8 {
        let mut c = GeometricCase::new(mhat0, 2, 1_000_000, GenusClass::Positive).unwrap();
        c.zeta_floor = rat(1, 1_000_000);
        assert_eq!(refine_zeta(&c).unwrap(), rat(1, 2 * i64::from(mhat0)));
    }
}

proptest! {
    #[test]
    fn bound_is_monotone_in_mhat0(mhat0 in 1u32..20, dim in 1u8..=3, r in 2u32..40, g in genus()) {
        let lo = birational_bound(&GeometricCase::new(mhat0, dim, r, g).unwrap()).unwrap();
        let hi = birational_bound(&GeometricCase::new(mhat0 + 1, dim, r, g).unwrap()).unwrap();
        prop_assert!(lo.m_min <= hi.m_min);
    }

    #[test]
    fn bound_is_monotone_in_r(mhat0 in 1u32..20, dim in 1u8..=3, r in 2u32..40, g in genus()) {
        let lo = birational_bound(&GeometricCase::new(mhat0, dim, r, g).unwrap()).unwrap();
        let hi = birational_bound(&GeometricCase::new(mhat0, dim, r + 1, g).unwrap()).unwrap();
        prop_assert!(lo.m_min <= hi.m_min);
    }

    #[test]
    fn unknown_genus_covers_both(mhat0 in 1u32..20, dim in 1u8..=3, r in 2u32..40) {
        let m = |g| birational_bound(&GeometricCase::new(mhat0, dim, r, g).unwrap()).unwrap().m_min;
        prop_assert_eq!(m(GenusClass::Unknown), m(GenusClass::Zero).max(m(GenusClass::Positive)));
    }

    #[test]
    fn bound_clears_thresholds_and_criterion(mhat0 in 1u32..20, dim in 1u8..=3, r in 2u32..40, g in genus()) {
        let c = GeometricCase::new(mhat0, dim, r, g).unwrap();
        let b = birational_bound(&c).unwrap();
        let c = if dim == 1 { c.with_m1(np_table(r).unwrap()) } else { c };
        prop_assert!(b.m_min >= assumption_thresholds(&c).unwrap());
        prop_assert!(certifies(&c, b.m_min).unwrap());
        prop_assert_eq!(b.reider, Some(mhat0 + 3 * r - 1));
    }

    #[test]
    fn epsilon_is_affine_in_m(mhat0 in 1u32..10, r in 2u32..30, m in 1u64..100) {
        let c = GeometricCase::new(mhat0, 2, r, GenusClass::Zero).unwrap();
        let z = rat(1, i64::from(r));
        let step = epsilon(&c, m + 1, &z).0 - epsilon(&c, m, &z).0;
        prop_assert_eq!(step, z);
    }
}

#[test]
fn non_pencil_degree_on_feasible_baskets() {
    for b in sample_baskets(21, 300, &SampleSpec::default().bounded()) {
        if !feasibility(&b).is_feasible() || b.cartier_index() == 1 {
            continue;
        }
        let np = m1_not_pencil(&b).unwrap().unwrap();
        let table = np_table(b.cartier_index() as u32).unwrap();
        assert!(np.m1 <= table);
        if np.reason == NonPencilReason::Criterion {
            let m = u64::from(np.m1);
            let rhs =
                BigRational::from_integer((m * b.cartier_index()).into()) * b.anti_k3() + rat(1, 1);
            assert!(b.anti_plurigenus_exact(m) > rhs);
        } else {
            assert_eq!(np.m1, table);
        }
    }
}

#[test]
fn gorenstein_non_pencil_search_is_bounded() {
    let b = qfano::FormalBasket::parse("", 3).unwrap();
    // -K^3 = 0: P[-m] = 2m + 1 > 1 from m = 1
    assert_eq!(m1_not_pencil(&b).unwrap().unwrap().m1, 1);
    let b = qfano::FormalBasket::parse("", 35).unwrap();
    assert_eq!(m1_not_pencil(&b).unwrap().unwrap().m1, 2);
}
