//! The expression language for candidate functions `f`.

mod ast;
mod domain;
mod eval;
mod parser;

pub use ast::{BinaryOp, Expression, NamedConst, UnaryOp};
pub use domain::{DomainError as DomainSpecError, DomainKind, DomainSpec};
pub use eval::{eval_interval, eval_jet2, eval_jet2_interval, eval_point, evaluate, DomainError};
pub use parser::{parse, ParseError};

#[cfg(test)]
mod props {
    use super::*;
    use crate::algebra::Func;
    use crate::interval::Interval;
    use proptest::prelude::*;

    fn arb_expr() -> impl Strategy<Value = Expression> {
        let leaf = prop_oneof![
            Just(Expression::Variable),
            (0u32..1000).prop_map(|n| Expression::Constant(f64::from(n) / 8.0)),
            prop_oneof![
                Just(NamedConst::Pi),
                Just(NamedConst::E),
                Just(NamedConst::EulerGamma)
            ]
            .prop_map(Expression::Named),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner
                    .clone()
                    .prop_map(|c| Expression::unary(UnaryOp::Neg, c)),
                (prop::sample::select(Func::ALL.to_vec()), inner.clone())
                    .prop_map(|(f, c)| Expression::func(f, c)),
                (
                    prop::sample::select(vec![
                        BinaryOp::Add,
                        BinaryOp::Sub,
                        BinaryOp::Mul,
                        BinaryOp::Div,
                        BinaryOp::Pow
                    ]),
                    inner.clone(),
                    inner
                )
                    .prop_map(|(op, l, r)| Expression::binary(op, l, r)),
            ]
        })
    }

    /// Expressions that are defined on all of `(0.05, 3)`: positive-argument
    /// functions are fed `x + 1` style arguments.
    fn arb_smooth() -> impl Strategy<Value = Expression> {
        let leaf = prop_oneof![
            Just(Expression::Variable),
            (1u32..40).prop_map(|n| Expression::Constant(f64::from(n) / 10.0)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            let pos = |e: Expression| {
                Expression::binary(
                    BinaryOp::Add,
                    Expression::Constant(1.0),
                    Expression::binary(BinaryOp::Mul, e.clone(), e),
                )
            };
            prop_oneof![
                inner
                    .clone()
                    .prop_map(|c| Expression::unary(UnaryOp::Neg, c)),
                inner.clone().prop_map(|c| Expression::func(Func::Sin, c)),
                inner.clone().prop_map(|c| Expression::func(Func::Cos, c)),
                inner
                    .clone()
                    .prop_map(|c| Expression::func(Func::Arctan, c)),
                inner
                    .clone()
                    .prop_map(move |c| Expression::func(Func::Ln, pos(c))),
                inner
                    .clone()
                    .prop_map(move |c| Expression::func(Func::Lngamma, pos(c))),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Expression::binary(
                    BinaryOp::Add,
                    l,
                    r
                )),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Expression::binary(
                    BinaryOp::Mul,
                    l,
                    r
                )),
                (inner.clone(), inner).prop_map(move |(l, r)| Expression::binary(
                    BinaryOp::Div,
                    l,
                    pos(r)
                )),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let reparsed = parse(&printed).unwrap();
            prop_assert_eq!(&reparsed, &e, "printed as {}", printed);
            prop_assert_eq!(parse(&reparsed.to_string()).unwrap(), reparsed);
        }

        #[test]
        fn constant_expressions_have_flat_jets(e in arb_expr(), x in 0.1_f64..2.0) {
            prop_assume!(!e.depends_on_x());
            if let Ok(j) = eval_jet2(&e, x) {
                prop_assert_eq!(j.d1, 0.0);
                prop_assert_eq!(j.d2, 0.0);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn interval_enclosure_sound(
            e in arb_smooth(),
            lo in 0.05_f64..3.0,
            w in 0.0_f64..0.5,
            t in 0.0_f64..=1.0,
        ) {
            let hi = lo + w;
            let x = lo + t * w;
            let iv = Interval::new(lo, hi).unwrap();
            if let (Ok(v), Ok(enc)) = (eval_point(&e, x), eval_interval(&e, iv)) {
                prop_assert!(enc.contains(v), "{} at {}: {} not in {:?}", e, x, v, enc);
            }
            if let (Ok(j), Ok(enc)) = (eval_jet2(&e, x), eval_jet2_interval(&e, iv)) {
                prop_assert!(enc.v.contains(j.v));
                prop_assert!(enc.d1.contains(j.d1));
                prop_assert!(enc.d2.contains(j.d2));
            }
        }

        #[test]
        fn inclusion_isotone(
            e in arb_smooth(),
            lo in 0.05_f64..3.0,
            w in 0.0_f64..0.5,
            a in 0.0_f64..=1.0,
            b in 0.0_f64..=1.0,
        ) {
            let outer = Interval::new(lo, lo + w).unwrap();
            let (s, t) = (lo + a.min(b) * w, lo + a.max(b) * w);
            let inner = Interval::new(s, t).unwrap();
            if let (Ok(vi), Ok(vo)) = (eval_interval(&e, inner), eval_interval(&e, outer)) {
                // Widening is applied per operation, so allow the inner result to
                // exceed the outer one by rounding slack only.
                let tol = 1e-9 * (1.0 + vo.mag());
                prop_assert!(vi.lo() >= vo.lo() - tol && vi.hi() <= vo.hi() + tol);
            }
        }

        #[test]
        fn jet_matches_finite_differences(e in arb_smooth(), x in 0.2_f64..2.0) {
            let h = 1e-5;
            let (Ok(j), Ok(fp), Ok(f0), Ok(fm)) = (
                eval_jet2(&e, x),
                eval_point(&e, x + h),
                eval_point(&e, x),
                eval_point(&e, x - h),
            ) else {
                return Ok(());
            };
            let fd1 = (fp - fm) / (2.0 * h);
            let fd2 = (fp - 2.0 * f0 + fm) / (h * h);
            // Central differences carry O(h^2 f''') truncation and O(eps f / h^2) rounding.
            let scale = 1.0 + f0.abs() + j.d1.abs() + j.d2.abs();
            prop_assert!((j.d1 - fd1).abs() <= (1e-6_f64).max(1e-4 * j.d1.abs()) * scale,
                "{}: d1 {} vs {}", e, j.d1, fd1);
            prop_assert!((j.d2 - fd2).abs() <= 1e-3 * scale,
                "{}: d2 {} vs {}", e, j.d2, fd2);
        }
    }
}
