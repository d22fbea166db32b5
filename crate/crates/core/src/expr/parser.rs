//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr    = term , { ("+" | "-") , term } ;
//! term    = unary , { ("*" | "/") , unary } ;
//! unary   = ("-" | "+") , unary | power ;
//! power   = primary , [ "^" , unary ] ;          (* right-associative *)
//! primary = number | "x" | "pi" | "e" | "euler_gamma"
//!         | func , "(" , expr , ")" | "(" , expr , ")" ;
//! ```

use thiserror::Error;

use super::ast::{BinaryOp, Expression, NamedConst, UnaryOp};
use crate::algebra::Func;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        /// Byte offset into the input.
        position: usize,
        /// 1-based column.
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown identifier `{name}` at column {column}")]
    UnknownIdentifier {
        name: String,
        position: usize,
        column: usize,
    },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::UnknownIdentifier { column, .. } => {
                *column
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token and its starting offset.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                self.pos += 1;
                Tok::Op(c as char)
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' | b'.' => self.number(start)?,
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
            }
            other => {
                return Err(syntax(
                    start,
                    &["number", "identifier", "operator", "parenthesis"],
                    format!("character `{}`", other as char),
                ))
            }
        };
        Ok((tok, start))
    }

    fn number(&mut self, start: usize) -> Result<Tok, ParseError> {
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.src.get(lx.pos).is_some_and(u8::is_ascii_digit) {
                lx.pos += 1;
            }
            lx.pos - s
        };
        let mut n = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(syntax(start, &["digit"], "`.`".into()));
        }
        // Exponent only when followed by digits, so `2e` is not swallowed.
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Tok::Num(v)),
            _ => Err(syntax(start, &["finite number"], format!("`{text}`"))),
        }
    }
}

fn syntax(position: usize, expected: &[&str], found: String) -> ParseError {
    ParseError::Syntax {
        position,
        column: position + 1,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        syntax(self.at, expected, self.tok.describe())
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.tok {
            self.bump()?;
            let rhs = self.term()?;
            let op = if c == '+' {
                BinaryOp::Add
            } else {
                BinaryOp::Sub
            };
            lhs = Expression::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = self.tok {
            self.bump()?;
            let rhs = self.unary()?;
            let op = if c == '*' {
                BinaryOp::Mul
            } else {
                BinaryOp::Div
            };
            lhs = Expression::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expression, ParseError> {
        match self.tok {
            Tok::Op('-') => {
                self.bump()?;
                Ok(Expression::unary(UnaryOp::Neg, self.unary()?))
            }
            Tok::Op('+') => {
                self.bump()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expression, ParseError> {
        let base = self.primary()?;
        if self.tok == Tok::Op('^') {
            self.bump()?;
            let exponent = self.unary()?;
            return Ok(Expression::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if self.tok != Tok::RParen {
            return Err(self.unexpected(&["`)`", "operator"]));
        }
        self.bump()
    }

    fn primary(&mut self) -> Result<Expression, ParseError> {
        match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expression::Constant(v))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                if let Some(func) = Func::from_name(&name) {
                    if self.tok != Tok::LParen {
                        return Err(self.unexpected(&["`(`"]));
                    }
                    self.bump()?;
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Expression::func(func, arg));
                }
                let leaf = match name.as_str() {
                    "x" => Expression::Variable,
                    "pi" => Expression::Named(NamedConst::Pi),
                    "e" => Expression::Named(NamedConst::E),
                    "euler_gamma" => Expression::Named(NamedConst::EulerGamma),
                    _ => {
                        return Err(ParseError::UnknownIdentifier {
                            name,
                            position: at,
                            column: at + 1,
                        })
                    }
                };
                Ok(leaf)
            }
            other => {
                self.tok = other;
                Err(self.unexpected(&["number", "identifier", "`(`"]))
            }
        }
    }
}

/// Parses one expression in `x`. Whitespace is insignificant.
pub fn parse(text: &str) -> Result<Expression, ParseError> {
    if !text.is_ascii() {
        let at = text.find(|c: char| !c.is_ascii()).unwrap_or(0);
        return Err(syntax(at, &["ASCII input"], "non-ASCII character".into()));
    }
    let mut p = Parser {
        lexer: Lexer {
            src: text.as_bytes(),
            pos: 0,
        },
        tok: Tok::End,
        at: 0,
    };
    p.bump()?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.unexpected(&["operator", "end of input"]));
    }
    Ok(e)
}
