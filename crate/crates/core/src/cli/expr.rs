//! Expression grammar shared by the CLI and the file formats.
//!
//! ```text
//! expr    := sum [ "/" sum ]            -- at most one division, top level only
//! sum     := product (("+" | "-") product)*
//! product := unary ("*" unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" exponent)*
//! atom    := integer | integer "/" integer | ident | "(" sum ")"
//! ```
//!
//! Exponents are non-negative integer literals, optionally parenthesized.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::corealg::{fmt_rational, Point, Poly, RadicalRing, RatFun, Rational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Div(Box<Expr>, Box<Expr>),
}

/// A parsed expression together with the radical ring its generator lives in,
/// if one was declared.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedExpr {
    pub expr: Expr,
    pub radical: Option<Arc<RadicalRing>>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            })
        };
        match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                column += i - start;
                push(&mut out, Tok::Int(s.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                column += i - start;
                push(&mut out, Tok::Ident(s));
            }
            '+' => push(&mut out, Tok::Plus),
            '-' | '\u{2212}' => push(&mut out, Tok::Minus),
            '*' => push(&mut out, Tok::Star),
            '/' => push(&mut out, Tok::Slash),
            '^' => push(&mut out, Tok::Caret),
            '(' => push(&mut out, Tok::LParen),
            ')' => push(&mut out, Tok::RParen),
            other => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
        column += 1;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

const BP_DIV: u8 = 1;
const BP_SUM: u8 = 10;
const BP_PRODUCT: u8 = 20;
const BP_UNARY: u8 = 30;
const BP_POWER: u8 = 40;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
    divided: bool,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, t: &Token, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr> {
        let mut lhs = self.prefix()?;
        loop {
            let t = self.peek().clone();
            let (lbp, rbp) = match t.tok {
                Tok::Slash => (BP_DIV, BP_DIV + 1),
                Tok::Plus | Tok::Minus => (BP_SUM, BP_SUM + 1),
                Tok::Star => (BP_PRODUCT, BP_PRODUCT + 1),
                Tok::Caret => (BP_POWER, BP_POWER + 1),
                Tok::End | Tok::RParen => break,
                _ => return Err(self.error(&t, "expected an operator")),
            };
            if lbp < min_bp {
                break;
            }
            self.next();
            lhs = match t.tok {
                Tok::Caret => Expr::Pow(Box::new(lhs), self.exponent()?),
                Tok::Slash => {
                    if self.depth > 0 {
                        return Err(self.error(&t, "division is only allowed at the top level"));
                    }
                    if self.divided {
                        return Err(self.error(&t, "at most one top-level division is allowed"));
                    }
                    self.divided = true;
                    Expr::Div(Box::new(lhs), Box::new(self.expr(rbp)?))
                }
                Tok::Plus => Expr::Add(Box::new(lhs), Box::new(self.expr(rbp)?)),
                Tok::Minus => Expr::Sub(Box::new(lhs), Box::new(self.expr(rbp)?)),
                Tok::Star => Expr::Mul(Box::new(lhs), Box::new(self.expr(rbp)?)),
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => {
                if *self.peek_at(0) == Tok::Slash {
                    if let Tok::Int(d) = self.peek_at(1).clone() {
                        let slash = self.next();
                        self.next();
                        if d == BigInt::from(0) {
                            return Err(self.error(&slash, "zero denominator in literal"));
                        }
                        return Ok(Expr::Num(Rational::new(n, d)));
                    }
                }
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Tok::Ident(name) => Ok(Expr::Var(name)),
            Tok::Minus => Ok(Expr::Neg(Box::new(self.expr(BP_UNARY)?))),
            Tok::LParen => {
                self.depth += 1;
                let inner = self.expr(0)?;
                self.depth -= 1;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(self.error(&close, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(self.error(&t, "unexpected end of input")),
            _ => Err(self.error(&t, "expected a number, variable or `(`")),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let t = self.next();
        let unsupported = Error::UnsupportedExponent {
            line: t.line,
            column: t.column,
        };
        let n = match t.tok.clone() {
            Tok::Int(n) => n,
            Tok::LParen => {
                let Tok::Int(n) = self.next().tok else {
                    return Err(unsupported);
                };
                if self.next().tok != Tok::RParen {
                    return Err(unsupported);
                }
                n
            }
            _ => return Err(unsupported),
        };
        u32::try_from(n).map_err(|_| self.error(&t, "exponent too large"))
    }
}

/// `parse_expression`.
pub fn parse_expression(text: &str) -> Result<ParsedExpr> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        depth: 0,
        divided: false,
    };
    let expr = parser.expr(0)?;
    let t = parser.peek().clone();
    if t.tok != Tok::End {
        return Err(parser.error(&t, "unexpected `)`"));
    }
    Ok(ParsedExpr { expr, radical: None })
}

impl Expr {
    /// Evaluates a division-free expression as a polynomial.
    pub fn to_poly(&self) -> Result<Poly> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(c.clone()),
            Expr::Var(v) => Poly::var(v),
            Expr::Neg(a) => -a.to_poly()?,
            Expr::Add(a, b) => a.to_poly()? + b.to_poly()?,
            Expr::Sub(a, b) => a.to_poly()? - b.to_poly()?,
            Expr::Mul(a, b) => a.to_poly()? * b.to_poly()?,
            Expr::Pow(a, e) => a.to_poly()?.pow(*e),
            Expr::Div(a, b) => {
                let f = RatFun::new(a.to_poly()?, b.to_poly()?)?;
                f.as_poly().ok_or_else(|| Error::Syntax {
                    line: 1,
                    column: 1,
                    message: format!("expected a polynomial, got {f}"),
                })?
            }
        })
    }

    pub fn to_ratfun(&self) -> Result<RatFun> {
        match self {
            Expr::Div(a, b) => RatFun::new(a.to_poly()?, b.to_poly()?),
            e => Ok(RatFun::from_poly(e.to_poly()?)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Num(c) if !c.is_integer() => BP_POWER + 5,
            Expr::Num(_) | Expr::Var(_) => BP_POWER + 10,
            Expr::Neg(_) => BP_UNARY,
            Expr::Add(..) | Expr::Sub(..) => BP_SUM,
            Expr::Mul(..) => BP_PRODUCT,
            Expr::Pow(..) => BP_POWER,
            Expr::Div(..) => BP_DIV,
        }
    }
}

fn wrap(e: &Expr, parens: bool) -> String {
    if parens {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    /// Prints with the fewest parentheses that still reparse to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            write!(
                f,
                "{} {op} {}",
                wrap(a, a.precedence() < p),
                wrap(b, b.precedence() <= p)
            )
        };
        match self {
            Expr::Num(c) => f.write_str(&fmt_rational(c)),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => write!(f, "-{}", wrap(a, a.precedence() < BP_UNARY)),
            Expr::Add(a, b) => binary(f, a, "+", b, BP_SUM),
            Expr::Sub(a, b) => binary(f, a, "-", b, BP_SUM),
            Expr::Mul(a, b) => binary(f, a, "*", b, BP_PRODUCT),
            Expr::Pow(a, e) => write!(f, "{}^{e}", wrap(a, a.precedence() <= BP_POWER + 5)),
            Expr::Div(a, b) => write!(f, "({a}) / ({b})"),
        }
    }
}

pub fn parse_poly(text: &str) -> Result<Poly> {
    parse_expression(text)?.expr.to_poly()
}

pub fn parse_ratfun(text: &str) -> Result<RatFun> {
    parse_expression(text)?.expr.to_ratfun()
}

/// Parses a radical declaration such as `u^3 = 1 + z^2`.
pub fn parse_radical(text: &str) -> Result<Arc<RadicalRing>> {
    let bad = |message: &str| Error::Syntax {
        line: 1,
        column: 1,
        message: message.to_string(),
    };
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| bad("radical declaration must look like `u^3 = 1 + z^2`"))?;
    let Expr::Pow(base, k) = parse_expression(lhs)?.expr else {
        return Err(bad("left side of a radical declaration must be `u^k`"));
    };
    let Expr::Var(generator) = *base else {
        return Err(bad("left side of a radical declaration must be `u^k`"));
    };
    RadicalRing::new(&generator, k, parse_poly(rhs)?)
}

/// Parses `x=1, y=-2/3` into a point.
pub fn parse_point(text: &str) -> Result<Point> {
    let mut point = Point::new();
    for (k, part) in text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
    {
        let bad = || Error::Syntax {
            line: 1,
            column: k + 1,
            message: format!("expected `var=value`, got `{part}`"),
        };
        let (v, c) = part.split_once('=').ok_or_else(bad)?;
        let value = parse_poly(c)?.as_constant().ok_or_else(bad)?;
        point.insert(Var::new(v.trim()), value);
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn num(n: i64) -> Expr {
        Expr::Num(Rational::from_integer(n.into()))
    }

    fn v(s: &str) -> Expr {
        Expr::Var(s.into())
    }

    #[test]
    fn parses_defining_polynomial() {
        let e = parse_expression("x^3 - (1+z^2)*y^3").unwrap().expr;
        let expected = Expr::Sub(
            Box::new(Expr::Pow(Box::new(v("x")), 3)),
            Box::new(Expr::Mul(
                Box::new(Expr::Add(Box::new(num(1)), Box::new(Expr::Pow(Box::new(v("z")), 2)))),
                Box::new(Expr::Pow(Box::new(v("y")), 3)),
            )),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn top_level_division() {
        let e = parse_expression("x^2/(x^2+y^2)").unwrap().expr;
        assert!(matches!(e, Expr::Div(..)));
        let f = e.to_ratfun().unwrap();
        assert_eq!(f.num(), &parse_poly("x^2").unwrap());
        assert_eq!(f.den(), &parse_poly("x^2 + y^2").unwrap());
        // the split happens at the top-level slash
        assert_eq!(
            parse_ratfun("x + 1 / y").unwrap(),
            RatFun::new(parse_poly("x + 1").unwrap(), parse_poly("y").unwrap()).unwrap()
        );
    }

    #[test]
    fn rejected_inputs() {
        assert!(matches!(
            parse_expression("x^(1/2)"),
            Err(Error::UnsupportedExponent { line: 1, column: 3 })
        ));
        assert!(matches!(
            parse_expression("x^-1"),
            Err(Error::UnsupportedExponent { .. })
        ));
        assert!(matches!(
            parse_expression("x^y"),
            Err(Error::UnsupportedExponent { .. })
        ));
        assert!(matches!(parse_expression("(x/y)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("x/y/z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("x +"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_expression("x + $"),
            Err(Error::Syntax { line: 1, column: 5, .. })
        ));
        assert!(matches!(
            parse_expression("x +\n (y"),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_poly("-x^2").unwrap(), -parse_poly("x^2").unwrap());
        assert_eq!(parse_poly("2*-x").unwrap(), parse_poly("-2*x").unwrap());
        assert_eq!(parse_poly("1/2*x").unwrap(), parse_poly("x*1/2").unwrap());
        assert_eq!(parse_poly("x - y - z").unwrap(), parse_poly("x - (y + z)").unwrap());
        assert_eq!(parse_poly("x^(2)^3").unwrap(), parse_poly("x^6").unwrap());
    }

    #[test]
    fn radical_and_point() {
        let ring = parse_radical("u^3 = 1 + z^2").unwrap();
        assert_eq!(ring.degree(), 3);
        assert_eq!(ring.modulus(), &parse_poly("z^2 + 1").unwrap());
        assert!(parse_radical("u = 1").is_err());
        let pt = parse_point("x=1, y=-2/3").unwrap();
        assert_eq!(pt[&Var::new("y")], Rational::new((-2).into(), 3.into()));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..20).prop_map(num),
            (1i64..9, 2i64..9).prop_map(|(a, b)| Expr::Num(Rational::new(a.into(), b.into()))),
            prop::sample::select(vec!["x", "y", "z1"]).prop_map(v),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner, 0u32..4).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(e in arb_expr(), d in prop::option::of(arb_expr())) {
            let e = match d {
                Some(d) => Expr::Div(Box::new(e), Box::new(d)),
                None => e,
            };
            let printed = e.to_string();
            let back = parse_expression(&printed).unwrap().expr;
            prop_assert_eq!(back, e, "printed as {}", printed);
        }
    }
}
