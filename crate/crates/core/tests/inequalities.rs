use proptest::prelude::*;
use weierstrass::expr::DomainKind;
use weierstrass::inequalities::*;

fn unit() -> impl Strategy<Value = f64> {
    (1u64..=1 << 52).prop_map(|k| k as f64 / (1u64 << 52) as f64)
}

fn ray() -> impl Strategy<Value = f64> {
    unit().prop_map(|u| 1.0 / u)
}

proptest! {
    #[test]
    fn classical_holds(a in prop::collection::vec(0.0001_f64..0.9999, 2..=8)) {
        prop_assert!(check_classical(&a).unwrap().holds);
    }

    #[test]
    fn product_form_holds_on_each_side(x in prop::collection::vec(unit(), 2..=8), y in prop::collection::vec(ray(), 2..=8)) {
        prop_assert!(check_product_form(&x).unwrap().holds);
        prop_assert!(check_product_form(&y).unwrap().holds);
    }

    #[test]
    fn log_product_holds(x in prop::collection::vec(unit(), 2..=8), y in prop::collection::vec(ray(), 2..=8)) {
        prop_assert!(check_log_product(&x, DomainKind::UnitInterval).unwrap().holds);
        prop_assert!(check_log_product(&y, DomainKind::RayFromOne).unwrap().holds);
    }

    #[test]
    fn expanded_three_term_form_has_the_same_slack(a in unit(), b in unit(), c in unit()) {
        let r = check_log_product(&[a, b, c], DomainKind::UnitInterval).unwrap();
        let (l, rr) = expanded_three(a, b, c);
        prop_assert!(((rr - l) - r.slack).abs() <= 1e-12);
    }

    #[test]
    fn straddling_inputs_are_rejected(a in 0.01_f64..0.99, b in 1.01_f64..5.0) {
        prop_assert_eq!(check_product_form(&[a, b]), Err(IneqError::MixedDomain));
        prop_assert_eq!(check_log_product(&[b, a], DomainKind::RayFromOne), Err(IneqError::MixedDomain));
    }

    #[test]
    fn gamma_holds_below_x1(a in 0.01_f64..0.46, x in unit(), y in unit()) {
        prop_assert!(check_gamma_ineq(a, x, y).unwrap().holds);
        prop_assert!(check_gamma_uv(a, a * x, a * y).unwrap().holds);
    }

    #[test]
    fn gamma_forms_agree_under_substitution(a in 0.01_f64..0.46, x in unit(), y in unit()) {
        let r = check_gamma_ineq(a, x, y).unwrap();
        let s = check_gamma_uv(a, a * x, a * y).unwrap();
        prop_assert!((r.slack - s.slack).abs() <= 1e-9 * (1.0 + r.lhs.abs()));
    }

    #[test]
    fn all_ones_is_equality(n in 2usize..=8) {
        let ones = vec![1.0; n];
        prop_assert_eq!(check_product_form(&ones).unwrap().slack, 0.0);
        prop_assert_eq!(check_log_product(&ones, DomainKind::UnitInterval).unwrap().slack, 0.0);
        prop_assert_eq!(check_log_product(&ones, DomainKind::RayFromOne).unwrap().slack, 0.0);
    }
}
