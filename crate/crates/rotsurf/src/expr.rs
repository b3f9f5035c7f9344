//! A small expression language for curve components and reparametrisations.
//!
//! Grammar, whitespace insensitive:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | power
//! power  := atom ("^" factor)?
//! atom   := number | name | name "(" expr ")" | "(" expr ")"
//! ```
//!
//! A bare `name` is either the parameter (one configurable letter: `s` for
//! profile curves, `t` for reparametrisations) or the shape constant `c`;
//! called names are the functions `sin`, `cos`, `sinh`, `cosh`, `exp`.
//! An exponent must fold to a numeric constant, so `s^2` and `2^(1+1)` parse
//! while `2^s` does not; general `u^v` is deliberately out of scope.

use crate::jet::Jet2;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at byte {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("expression ended early: expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("unexpected {found:?} at byte {at}: expected {expected}")]
    UnexpectedToken {
        found: String,
        at: usize,
        expected: &'static str,
    },
    #[error("unknown name {name:?} at byte {at}: the parameter here is {var:?}, the shape constant is \"c\", and functions are sin, cos, sinh, cosh, exp")]
    UnknownName { name: String, at: usize, var: char },
    #[error("exponent at byte {at} must fold to a numeric constant")]
    NonConstantExponent { at: usize },
    #[error("malformed number {text:?} at byte {at}")]
    BadNumber { text: String, at: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
}

impl Func {
    fn apply(self, u: Jet2) -> Jet2 {
        match self {
            Func::Sin => u.sin(),
            Func::Cos => u.cos(),
            Func::Sinh => u.sinh(),
            Func::Cosh => u.cosh(),
            Func::Exp => u.exp(),
        }
    }
}

/// Parsed expression tree over one parameter and the shape constant.
#[derive(Clone, Debug)]
pub enum Expr {
    Const(f64),
    /// The curve parameter.
    Var,
    /// The shape constant `c`, bound at evaluation time.
    Param,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Parse `source` with the given one-letter parameter name.
    pub fn parse(source: &str, var: char) -> Result<Expr, ParseError> {
        let tokens = lex(source)?;
        let mut p = Parser {
            tokens: &tokens,
            pos: 0,
            var,
        };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some(t) => Err(ParseError::UnexpectedToken {
                found: t.text(),
                at: t.at,
                expected: "end of expression",
            }),
        }
    }

    /// Evaluate with jets in the parameter and a bound shape constant.
    pub fn eval(&self, x: Jet2, c: f64) -> Jet2 {
        match self {
            Expr::Const(v) => Jet2::constant(*v),
            Expr::Var => x,
            Expr::Param => Jet2::constant(c),
            Expr::Neg(e) => -e.eval(x, c),
            Expr::Add(a, b) => a.eval(x, c) + b.eval(x, c),
            Expr::Sub(a, b) => a.eval(x, c) - b.eval(x, c),
            Expr::Mul(a, b) => a.eval(x, c) * b.eval(x, c),
            Expr::Div(a, b) => a.eval(x, c) / b.eval(x, c),
            Expr::Pow(b, k) => b.eval(x, c).powf(*k),
            Expr::Call(f, a) => f.apply(a.eval(x, c)),
        }
    }

    /// Whether any quotient appears; quotients force an explicit domain on
    /// curves since they can hit poles.
    pub fn has_division(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var | Expr::Param => false,
            Expr::Div(_, _) => true,
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Call(_, e) => e.has_division(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.has_division() || b.has_division()
            }
        }
    }

    /// Whether the shape constant `c` is referenced.
    pub fn has_param(&self) -> bool {
        match self {
            Expr::Param => true,
            Expr::Const(_) | Expr::Var => false,
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Call(_, e) => e.has_param(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.has_param() || b.has_param()
            }
        }
    }

    /// Fold to a constant if no parameter or shape constant occurs.
    fn const_fold(&self) -> Option<f64> {
        match self {
            Expr::Const(v) => Some(*v),
            Expr::Var | Expr::Param => None,
            Expr::Neg(e) => e.const_fold().map(|v| -v),
            Expr::Add(a, b) => Some(a.const_fold()? + b.const_fold()?),
            Expr::Sub(a, b) => Some(a.const_fold()? - b.const_fold()?),
            Expr::Mul(a, b) => Some(a.const_fold()? * b.const_fold()?),
            Expr::Div(a, b) => Some(a.const_fold()? / b.const_fold()?),
            Expr::Pow(b, k) => Some(b.const_fold()?.powf(*k)),
            Expr::Call(f, a) => Some(f.apply(Jet2::constant(a.const_fold()?)).value),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum TokenKind {
    Num(f64),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokenKind,
    at: usize,
}

impl Token {
    fn text(&self) -> String {
        match &self.kind {
            TokenKind::Num(v) => v.to_string(),
            TokenKind::Name(n) => n.clone(),
            TokenKind::Plus => "+".into(),
            TokenKind::Minus => "-".into(),
            TokenKind::Star => "*".into(),
            TokenKind::Slash => "/".into(),
            TokenKind::Caret => "^".into(),
            TokenKind::LParen => "(".into(),
            TokenKind::RParen => ")".into(),
        }
    }
}

fn lex(source: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = source.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        let kind = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'/' => TokenKind::Slash,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent part: e or E, optional sign, digits
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &source[start..i];
                let v: f64 = text.parse().map_err(|_| ParseError::BadNumber {
                    text: text.to_string(),
                    at: start,
                })?;
                out.push(Token {
                    kind: TokenKind::Num(v),
                    at: start,
                });
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    kind: TokenKind::Name(source[start..i].to_string()),
                    at: start,
                });
                continue;
            }
            _ => {
                return Err(ParseError::UnexpectedChar {
                    ch: source[i..].chars().next().unwrap_or('?'),
                    at: i,
                })
            }
        };
        out.push(Token { kind, at: i });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    var: char,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: &TokenKind, expected: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.kind == *kind => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::UnexpectedToken {
                found: t.text(),
                at: t.at,
                expected,
            }),
            None => Err(ParseError::UnexpectedEnd { expected }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t.kind {
                TokenKind::Plus => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                TokenKind::Minus => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t.kind {
                TokenKind::Star => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                TokenKind::Slash => {
                    self.pos += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Minus {
                self.pos += 1;
                return Ok(Expr::Neg(Box::new(self.factor()?)));
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Caret {
                let caret_at = t.at;
                self.pos += 1;
                let exponent = self.factor()?;
                let k = exponent
                    .const_fold()
                    .ok_or(ParseError::NonConstantExponent { at: caret_at })?;
                return Ok(Expr::Pow(Box::new(base), k));
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let var = self.var;
        let t = match self.bump() {
            Some(t) => t.clone(),
            None => {
                return Err(ParseError::UnexpectedEnd {
                    expected: "a value",
                })
            }
        };
        match t.kind {
            TokenKind::Num(v) => Ok(Expr::Const(v)),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect(&TokenKind::RParen, "a closing parenthesis")?;
                Ok(e)
            }
            TokenKind::Name(name) => {
                let func = match name.as_str() {
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "sinh" => Some(Func::Sinh),
                    "cosh" => Some(Func::Cosh),
                    "exp" => Some(Func::Exp),
                    _ => None,
                };
                if let Some(f) = func {
                    self.expect(
                        &TokenKind::LParen,
                        "an opening parenthesis after a function name",
                    )?;
                    let arg = self.expr()?;
                    self.expect(&TokenKind::RParen, "a closing parenthesis")?;
                    return Ok(Expr::Call(f, Box::new(arg)));
                }
                if name.len() == 1 && name.starts_with(var) {
                    Ok(Expr::Var)
                } else if name == "c" {
                    Ok(Expr::Param)
                } else {
                    Err(ParseError::UnknownName {
                        name,
                        at: t.at,
                        var,
                    })
                }
            }
            _ => Err(ParseError::UnexpectedToken {
                found: t.text(),
                at: t.at,
                expected: "a number, name, or parenthesised expression",
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_at(src: &str, s: f64) -> f64 {
        Expr::parse(src, 's')
            .unwrap()
            .eval(Jet2::variable(s), 1.0)
            .value
    }

    #[test]
    fn precedence_and_parens() {
        assert_eq!(eval_at("1 + 2 * 3 ^ 2", 0.0), 19.0);
        assert_eq!(eval_at("(1 + 2) * 3", 0.0), 9.0);
        assert_eq!(eval_at("-s^2", 2.0), -4.0);
        assert_eq!(eval_at("(-s)^2", 2.0), 4.0);
        assert_eq!(eval_at("2 - 3 - 4", 0.0), -5.0);
        assert_eq!(eval_at("24 / 4 / 2", 0.0), 3.0);
    }

    #[test]
    fn numbers() {
        assert_eq!(eval_at("2e-3", 0.0), 0.002);
        assert_eq!(eval_at("2.5E2", 0.0), 250.0);
        assert_eq!(eval_at(".5", 0.0), 0.5);
        assert!(matches!(
            Expr::parse("1.2.3", 's'),
            Err(ParseError::BadNumber { .. })
        ));
    }

    #[test]
    fn functions_and_params() {
        let e = Expr::parse("c * sin(s) + cosh(s)", 's').unwrap();
        assert!(e.has_param());
        assert!(!e.has_division());
        let j = e.eval(Jet2::variable(0.3), 2.0);
        assert!((j.value - (2.0 * 0.3f64.sin() + 0.3f64.cosh())).abs() < 1e-15);
        assert!((j.d1 - (2.0 * 0.3f64.cos() + 0.3f64.sinh())).abs() < 1e-15);
    }

    #[test]
    fn division_is_detected() {
        assert!(Expr::parse("1 / (1 + s^2)", 's').unwrap().has_division());
        assert!(!Expr::parse("s * 0.5", 's').unwrap().has_division());
    }

    #[test]
    fn exponent_must_be_constant() {
        assert!(matches!(
            Expr::parse("2 ^ s", 's'),
            Err(ParseError::NonConstantExponent { .. })
        ));
        // constant subexpressions fold
        assert_eq!(eval_at("s ^ (1 + 1)", 3.0), 9.0);
        assert_eq!(eval_at("s ^ -2", 2.0), 0.25);
    }

    #[test]
    fn the_parameter_letter_is_configurable() {
        let e = Expr::parse("t + t^2", 't').unwrap();
        assert_eq!(e.eval(Jet2::variable(2.0), 1.0).value, 6.0);
        assert!(matches!(
            Expr::parse("t + s", 't'),
            Err(ParseError::UnknownName { .. })
        ));
    }

    #[test]
    fn error_positions() {
        match Expr::parse("s + q", 's') {
            Err(ParseError::UnknownName { name, at, var }) => {
                assert_eq!(name, "q");
                assert_eq!(at, 4);
                assert_eq!(var, 's');
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Expr::parse("s +", 's'),
            Err(ParseError::UnexpectedEnd { .. })
        ));
        assert!(matches!(
            Expr::parse("s s", 's'),
            Err(ParseError::UnexpectedToken { .. })
        ));
        assert!(matches!(
            Expr::parse("s @ 2", 's'),
            Err(ParseError::UnexpectedChar { ch: '@', .. })
        ));
        assert!(matches!(
            Expr::parse("sin s", 's'),
            Err(ParseError::UnexpectedToken { .. })
        ));
    }

    #[test]
    fn jets_propagate_through_whole_expressions() {
        // f(s) = s * cosh(s): f' = cosh + s sinh, f'' = 2 sinh + s cosh
        let e = Expr::parse("s * cosh(s)", 's').unwrap();
        let j = e.eval(Jet2::variable(0.9), 1.0);
        let (sh, ch) = (0.9f64.sinh(), 0.9f64.cosh());
        assert!((j.d1 - (ch + 0.9 * sh)).abs() < 1e-14);
        assert!((j.d2 - (2.0 * sh + 0.9 * ch)).abs() < 1e-14);
    }
}
