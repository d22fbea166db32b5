use std::fmt;

use serde::Serialize;

use crate::algebra::Func;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedConst {
    Pi,
    E,
    EulerGamma,
}

impl NamedConst {
    pub fn name(self) -> &'static str {
        match self {
            NamedConst::Pi => "pi",
            NamedConst::E => "e",
            NamedConst::EulerGamma => "euler_gamma",
        }
    }

    pub fn value(self) -> f64 {
        match self {
            NamedConst::Pi => std::f64::consts::PI,
            NamedConst::E => std::f64::consts::E,
            NamedConst::EulerGamma => crate::special::EULER_GAMMA,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnaryOp {
    Neg,
    Func(Func),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }
}

/// A one-variable real function. The only free symbol is `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Expression {
    Constant(f64),
    Named(NamedConst),
    Variable,
    Unary(UnaryOp, Box<Expression>),
    Binary(BinaryOp, Box<Expression>, Box<Expression>),
}

const NEG_PRECEDENCE: u8 = 3;
const ATOM_PRECEDENCE: u8 = 5;

impl Expression {
    pub fn constant(c: f64) -> Self {
        Expression::Constant(c)
    }

    pub fn unary(op: UnaryOp, child: Expression) -> Self {
        Expression::Unary(op, Box::new(child))
    }

    pub fn func(f: Func, child: Expression) -> Self {
        Expression::Unary(UnaryOp::Func(f), Box::new(child))
    }

    pub fn binary(op: BinaryOp, lhs: Expression, rhs: Expression) -> Self {
        Expression::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    /// Whether `x` occurs anywhere in the tree.
    pub fn depends_on_x(&self) -> bool {
        match self {
            Expression::Variable => true,
            Expression::Constant(_) | Expression::Named(_) => false,
            Expression::Unary(_, c) => c.depends_on_x(),
            Expression::Binary(_, l, r) => l.depends_on_x() || r.depends_on_x(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Expression::Constant(_) | Expression::Named(_) | Expression::Variable => 1,
            Expression::Unary(_, c) => 1 + c.node_count(),
            Expression::Binary(_, l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Replaces every occurrence of `x` by `inner`, giving `self ∘ inner`.
    pub fn compose(&self, inner: &Expression) -> Expression {
        match self {
            Expression::Variable => inner.clone(),
            Expression::Constant(_) | Expression::Named(_) => self.clone(),
            Expression::Unary(op, c) => Expression::unary(*op, c.compose(inner)),
            Expression::Binary(op, l, r) => {
                Expression::binary(*op, l.compose(inner), r.compose(inner))
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expression::Binary(op, ..) => op.precedence(),
            Expression::Unary(UnaryOp::Neg, _) => NEG_PRECEDENCE,
            Expression::Constant(c) if *c < 0.0 || c.is_sign_negative() => NEG_PRECEDENCE,
            _ => ATOM_PRECEDENCE,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Prints with the minimum parentheses needed to re-parse to the same tree.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Constant(c) => {
                if c.is_sign_negative() {
                    write!(f, "-{:?}", -c)
                } else {
                    write!(f, "{c:?}")
                }
            }
            Expression::Named(n) => f.write_str(n.name()),
            Expression::Variable => f.write_str("x"),
            Expression::Unary(UnaryOp::Neg, c) => {
                f.write_str("-")?;
                c.fmt_child(f, c.precedence() < NEG_PRECEDENCE)
            }
            Expression::Unary(UnaryOp::Func(func), c) => write!(f, "{}({c})", func.name()),
            Expression::Binary(op, l, r) => {
                let p = op.precedence();
                if *op == BinaryOp::Pow {
                    // Right-associative; the exponent may be a signed unary.
                    l.fmt_child(f, l.precedence() <= p)?;
                    f.write_str("^")?;
                    r.fmt_child(f, r.precedence() < NEG_PRECEDENCE)
                } else {
                    l.fmt_child(f, l.precedence() < p)?;
                    write!(f, " {} ", op.symbol())?;
                    r.fmt_child(f, r.precedence() <= p)
                }
            }
        }
    }
}
