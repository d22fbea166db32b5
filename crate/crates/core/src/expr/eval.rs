use thiserror::Error;

use super::ast::{BinaryOp, Expression, UnaryOp};
use crate::algebra::{Algebra, Func, JetBase};
use crate::interval::Interval;
use crate::jet::Jet2;
use crate::real::Real;

/// Evaluation left the natural domain of a node (or overflowed).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error in `{node}`: {reason} (argument {argument})")]
pub struct DomainError {
    /// Printed sub-expression where evaluation failed.
    pub node: String,
    /// Value of the offending argument in the active number system.
    pub argument: String,
    pub reason: String,
}

impl DomainError {
    fn at<A: Algebra>(node: &Expression, arg: &A, reason: impl Into<String>) -> Self {
        DomainError {
            node: node.to_string(),
            argument: arg.describe(),
            reason: reason.into(),
        }
    }
}

const MAX_INT_EXPONENT: f64 = 4096.0;

impl Expression {
    /// Value of an `x`-free subtree in `f64`, if it evaluates.
    pub fn const_value(&self) -> Option<f64> {
        if self.depends_on_x() {
            return None;
        }
        evaluate::<f64>(self, &0.0).ok()
    }
}

fn exact_literal(c: f64) -> bool {
    c.fract() == 0.0 && c.abs() < 9.007_199_254_740_992e15
}

/// Evaluates `f` at `x` in any [`Algebra`].
pub fn evaluate<A: Algebra>(f: &Expression, x: &A) -> Result<A, DomainError> {
    let out = match f {
        Expression::Constant(c) => A::constant(A::Scalar::lit(*c), exact_literal(*c)),
        Expression::Named(n) => A::constant(A::Scalar::lit(n.value()), false),
        Expression::Variable => x.clone(),
        Expression::Unary(UnaryOp::Neg, c) => evaluate(c, x)?.neg(),
        Expression::Unary(UnaryOp::Func(func), c) => {
            let arg = evaluate(c, x)?;
            arg.func(*func).ok_or_else(|| {
                DomainError::at(f, &arg, format!("outside the domain of {}", func.name()))
            })?
        }
        Expression::Binary(op, l, r) => {
            let lhs = evaluate(l, x)?;
            match op {
                BinaryOp::Add => lhs.add(&evaluate(r, x)?),
                BinaryOp::Sub => lhs.sub(&evaluate(r, x)?),
                BinaryOp::Mul => lhs.mul(&evaluate(r, x)?),
                BinaryOp::Div => {
                    let rhs = evaluate(r, x)?;
                    lhs.div(&rhs)
                        .ok_or_else(|| DomainError::at(f, &rhs, "divisor may vanish"))?
                }
                BinaryOp::Pow => power(f, lhs, r, x)?,
            }
        }
    };
    if out.is_finite() {
        Ok(out)
    } else {
        Err(DomainError {
            node: f.to_string(),
            argument: out.describe(),
            reason: "result is not finite".into(),
        })
    }
}

/// Constant integer exponents use `powi`; anything else is `exp(e ln b)` on `b > 0`.
fn power<A: Algebra>(
    node: &Expression,
    base: A,
    exponent: &Expression,
    x: &A,
) -> Result<A, DomainError> {
    if let Some(n) = exponent.const_value() {
        if n.fract() == 0.0 && n.abs() <= MAX_INT_EXPONENT {
            return base
                .powi(n as i32)
                .ok_or_else(|| DomainError::at(node, &base, "zero base with negative exponent"));
        }
    }
    let e = evaluate(exponent, x)?;
    let ln_base = base
        .func(Func::Ln)
        .ok_or_else(|| DomainError::at(node, &base, "non-integer power needs a positive base"))?;
    e.mul(&ln_base)
        .func(Func::Exp)
        .ok_or_else(|| DomainError::at(node, &base, "power overflow"))
}

pub fn eval_point<T: Real + Algebra<Scalar = T>>(f: &Expression, x: T) -> Result<T, DomainError> {
    evaluate(f, &x)
}

pub fn eval_jet2<T: Real + JetBase<Scalar = T>>(
    f: &Expression,
    x: T,
) -> Result<Jet2<T>, DomainError> {
    evaluate(f, &Jet2::variable(x))
}

pub fn eval_interval<T: Real>(f: &Expression, x: Interval<T>) -> Result<Interval<T>, DomainError> {
    evaluate(f, &x)
}

pub fn eval_jet2_interval<T: Real>(
    f: &Expression,
    x: Interval<T>,
) -> Result<Jet2<Interval<T>>, DomainError> {
    evaluate(f, &Jet2::variable(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expression {
        parse(s).unwrap()
    }

    #[test]
    fn point_examples() {
        assert_eq!(eval_point(&p("log2(1+x)"), 1.0_f64).unwrap(), 1.0_f64);
        assert!((eval_point(&p("(4/pi)*arctan(x)"), 1.0_f64).unwrap() - 1.0).abs() < 1e-15);
        let v = eval_point(&p("cos(x)/cos(1)"), 0.5_f64).unwrap();
        assert!((v - 1.624_243_599_109_395_5).abs() < 1e-12);
    }

    #[test]
    fn jet_examples() {
        let j = eval_jet2(&p("x"), 0.7_f64).unwrap();
        assert_eq!((j.v, j.d1, j.d2), (0.7, 1.0, 0.0));
        let j = eval_jet2(&p("x^2"), 3.0_f64).unwrap();
        assert_eq!((j.v, j.d1, j.d2), (9.0, 6.0, 2.0));
        let ln2 = std::f64::consts::LN_2;
        let j = eval_jet2(&p("log2(1+x)"), 1.0_f64).unwrap();
        assert!((j.v - 1.0).abs() < 1e-15);
        assert!((j.d1 - 1.0 / (2.0 * ln2)).abs() < 1e-14);
        assert!((j.d2 + 1.0 / (4.0 * ln2)).abs() < 1e-14);
        // Central differences, h = 1e-5.
        let h = 1e-5;
        let f = |x: f64| (1.0 + x).log2();
        assert!((j.d1 - (f(1.0 + h) - f(1.0 - h)) / (2.0 * h)).abs() < 1e-8);
        assert!((j.d2 - (f(1.0 + h) - 2.0 * f(1.0) + f(1.0 - h)) / (h * h)).abs() < 1e-4);
    }

    #[test]
    fn constant_function_jet_is_exact() {
        let j = eval_jet2(&p("gamma(2.5) * cos(1) + pi"), 0.3_f64).unwrap();
        assert_eq!((j.d1, j.d2), (0.0, 0.0));
        let ij = eval_jet2_interval(&p("3 * 2 - 1"), Interval::new(0.1, 0.2).unwrap()).unwrap();
        assert!(ij.d1.is_exact_zero() && ij.d2.is_exact_zero());
    }

    #[test]
    fn interval_examples() {
        let x = Interval::new(0.2, 0.4).unwrap();
        let v = eval_interval(&p("x"), x).unwrap();
        assert_eq!(v, x);
        let v = eval_interval(&p("x*x - x"), Interval::new(0.0, 1.0).unwrap()).unwrap();
        assert!(v.lo() <= -0.25 && v.hi() >= 0.0);
        let v = eval_interval(&p("gamma(x)"), Interval::new(1.4, 1.5).unwrap()).unwrap();
        assert!(v.contains(0.885_603_194_410_888_7));
    }

    #[test]
    fn domain_errors_name_the_node() {
        let err = eval_point(&p("1 + ln(x - 1)"), 0.5_f64).unwrap_err();
        assert_eq!(err.node, "ln(x - 1.0)");
        assert!(eval_point(&p("1/(x-1)"), 1.0_f64).is_err());
        assert!(eval_point(&p("gamma(x)"), 0.0_f64).is_err());
        assert!(eval_point(&p("x^0.5"), -1.0).is_err());
        assert!(eval_point(&p("x^-1"), 0.0_f64).is_err());
        assert!(eval_point(&p("arcsin(x)"), 1.5_f64).is_err());
        assert!(eval_point(&p("exp(x)"), 1000.0_f64).is_err());
        assert!(eval_interval(&p("ln(x)"), Interval::new(0.0, 1.0).unwrap()).is_err());
        assert!(eval_interval(&p("tan(x)"), Interval::new(1.0, 2.0).unwrap()).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(eval_point(&p("x^3"), -2.0).unwrap(), -8.0);
        assert!((eval_point(&p("x^1.5"), 4.0_f64).unwrap() - 8.0).abs() < 1e-13);
        assert!((eval_point(&p("2^x"), 3.0_f64).unwrap() - 8.0).abs() < 1e-13);
        let j = eval_jet2(&p("x^1.5"), 4.0_f64).unwrap();
        assert!((j.d1 - 3.0).abs() < 1e-13);
        assert!((j.d2 - 0.375).abs() < 1e-13);
        let v = eval_interval(&p("x^2"), Interval::new(-1.0, 1.0).unwrap()).unwrap();
        assert_eq!(v.lo(), 0.0_f64);
    }
}
