//! Recursive descent parser for the element language.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := unary (('*' | '/')? unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := uint | name | 'l(' int ')' | 'c' | 'v' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies. The generator `v` must be the last factor of
//! its product.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

/// Byte offset into the source text.
pub type Pos = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {}", .pos + 1)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }

    /// The source line with a caret under the offending column.
    pub fn excerpt(&self, src: &str) -> String {
        format!("  {src}\n  {}^", " ".repeat(src[..self.pos.min(src.len())].chars().count()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Param(String),
    /// The mode generator `l_i`.
    Mode(i64),
    Central,
    Generator,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl Expr {
    fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }

    /// True when `v` occurs anywhere below this node.
    pub fn has_generator(&self) -> bool {
        use ExprKind::*;
        match &self.kind {
            Generator => true,
            Int(_) | Param(_) | Mode(_) | Central => false,
            Neg(a) | Pow(a, _) => a.has_generator(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.has_generator() || b.has_generator(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
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

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(src[start..i].parse().expect("ascii digits"))
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            }
            _ => {
                i += 1;
                match ch {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => {
                        let c = src[start..].chars().next().unwrap_or('?');
                        return Err(ParseError::new(start, format!("unexpected character `{c}`")));
                    }
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(ParseError::new(self.pos(), format!("expected {want}, found {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                let p = self.bump().1;
                let t = self.term()?;
                Expr::new(ExprKind::Neg(Box::new(t)), p)
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let op = match self.peek() {
                Tok::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            let p = self.bump().1;
            let rhs = self.term()?;
            lhs = Expr::new(op(Box::new(lhs), Box::new(rhs)), p);
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let (divide, p) = match self.peek() {
                Tok::Star => (false, self.bump().1),
                Tok::Slash => (true, self.bump().1),
                _ if self.starts_factor() => (false, self.pos()),
                _ => return Ok(lhs),
            };
            if lhs.has_generator() {
                return Err(ParseError::new(p, "`v` must be the rightmost factor of a product"));
            }
            let rhs = self.unary()?;
            lhs = if divide {
                if rhs.has_generator() {
                    return Err(ParseError::new(rhs.pos, "cannot divide by an expression containing `v`"));
                }
                Expr::new(ExprKind::Div(Box::new(lhs), Box::new(rhs)), p)
            } else {
                Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), p)
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let p = self.bump().1;
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), p));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let p = self.bump().1;
        let (tok, ep) = self.bump();
        let Tok::Int(n) = tok else {
            return Err(ParseError::new(ep, format!("expected a non-negative integer exponent, found {tok}")));
        };
        let n: u32 = n
            .try_into()
            .map_err(|_| ParseError::new(ep, "exponent is too large"))?;
        if base.has_generator() {
            return Err(ParseError::new(p, "`v` cannot be raised to a power"));
        }
        Ok(Expr::new(ExprKind::Pow(Box::new(base), n), p))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, p) = self.bump();
        let kind = match tok {
            Tok::Int(n) => ExprKind::Int(n),
            Tok::Ident(name) => match name.as_str() {
                "l" if *self.peek() == Tok::LParen => {
                    self.bump();
                    let negative = *self.peek() == Tok::Minus;
                    if negative {
                        self.bump();
                    }
                    let (t, ip) = self.bump();
                    let Tok::Int(n) = t else {
                        return Err(ParseError::new(ip, format!("expected a mode index, found {t}")));
                    };
                    let n = if negative { -n } else { n };
                    let i: i64 = n.try_into().map_err(|_| ParseError::new(ip, "mode index out of range"))?;
                    self.expect(Tok::RParen)?;
                    ExprKind::Mode(i)
                }
                "c" => ExprKind::Central,
                "v" => ExprKind::Generator,
                _ => ExprKind::Param(name),
            },
            Tok::LParen => {
                let mut inner = self.expr()?;
                self.expect(Tok::RParen)?;
                inner.pos = p;
                return Ok(inner);
            }
            t => return Err(ParseError::new(p, format!("expected an operand, found {t}"))),
        };
        Ok(Expr::new(kind, p))
    }
}

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen => Err(ParseError::new(p.pos(), "unbalanced `)`")),
        t => Err(ParseError::new(p.pos(), format!("unexpected {t}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(e: &Expr) -> String {
        use ExprKind::*;
        match &e.kind {
            Int(n) => n.to_string(),
            Param(s) => s.clone(),
            Mode(i) => format!("l{i}"),
            Central => "c".into(),
            Generator => "v".into(),
            Neg(a) => format!("(-{})", shape(a)),
            Add(a, b) => format!("({} + {})", shape(a), shape(b)),
            Sub(a, b) => format!("({} - {})", shape(a), shape(b)),
            Mul(a, b) => format!("({} {})", shape(a), shape(b)),
            Div(a, b) => format!("({} / {})", shape(a), shape(b)),
            Pow(a, n) => format!("{}^{n}", shape(a)),
        }
    }

    fn p(s: &str) -> String {
        shape(&parse(s).unwrap())
    }

    #[test]
    fn products_and_powers() {
        assert_eq!(p("l(-2)^2 * l(1) * v"), "((l-2^2 l1) v)");
        assert_eq!(p("(1/2) l(2) - z l(1)"), "(((1 / 2) l2) - (z l1))");
        assert_eq!(p("-z^2*c"), "(-(z^2 c))");
        assert_eq!(p("2*-3"), "(2 (-3))");
    }

    #[test]
    fn division_binds_left() {
        assert_eq!(p("1/2*c"), "((1 / 2) c)");
        assert_eq!(p("(z)/(z - 1)*l(1)"), "((z / (z - 1)) l1)");
    }

    #[test]
    fn generator_must_be_rightmost() {
        let e = parse("v * l(1)").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.message.contains("rightmost"));
        assert!(parse("(l(1)*v) l(2)").is_err());
        assert!(parse("v^2").is_err());
        assert!(parse("1/v").is_err());
        assert!(parse("l(1)*(z*v + l(0)*v)").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("l(2) + ").unwrap_err().pos, 7);
        assert_eq!(parse("l(x)").unwrap_err().pos, 2);
        assert_eq!(parse("2 $ 3").unwrap_err().pos, 2);
        assert_eq!(parse("(l(1)").unwrap_err().pos, 5);
        assert_eq!(parse("l(1))").unwrap_err().pos, 4);
        let e = parse("z^y").unwrap_err();
        assert_eq!(e.excerpt("z^y"), "  z^y\n    ^");
    }
}
