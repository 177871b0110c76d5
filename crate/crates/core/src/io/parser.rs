//! Expression grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)*
//! atom  := integer | 'x' | 'y'k | 'yx'k | '(' expr ')'
//! ```
//!
//! Fractions `p/q` are ordinary divisions of integer literals. Unary minus
//! binds looser than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use crate::algebra::{AlgebraError, RationalFunction, VariableId, Q};
use crate::error::{Error, Result};

/// Largest literal exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;
/// Largest total degree of any intermediate numerator or denominator factor.
pub const MAX_DEGREE: u32 = 256;
const MAX_DEPTH: usize = 200;

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

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((start, t));
        }
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((start, Tok::Int(n)));
        }
        if b.is_ascii_alphabetic() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.src[start..self.pos].to_string())));
        }
        let ch = self.src[start..].chars().next().expect("nonempty");
        Err(Error::SyntaxError {
            pos: start,
            msg: format!("unexpected character {ch:?}"),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: usize,
    m: usize,
    allow_jet1: bool,
    depth: usize,
}

/// A product `Π base^exp`, kept unexpanded until a sum forces it. Dividing by
/// a parenthesized product then yields the same factored denominator the
/// canonical printer wrote, so printing and reparsing is the identity.
type Product = Vec<(RationalFunction, i32)>;

fn degree_bound(f: &RationalFunction) -> u32 {
    let den = f
        .denominator_factors()
        .iter()
        .map(|(p, e)| p.total_degree().saturating_mul(*e))
        .max()
        .unwrap_or(0);
    f.numerator().total_degree().max(den)
}

fn product_degree(p: &Product) -> u32 {
    p.iter()
        .map(|(b, e)| degree_bound(b).saturating_mul(e.unsigned_abs()))
        .fold(0, u32::saturating_add)
}

fn expand(p: Product) -> Result<RationalFunction> {
    let mut acc = RationalFunction::one();
    for (base, e) in p {
        acc = &acc * &base.pow(e)?;
    }
    Ok(acc)
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (pos, tok) = self.lexer.next()?;
        self.pos = pos;
        self.tok = tok;
        Ok(())
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn guard(&self, p: Product) -> Result<Product> {
        if product_degree(&p) > MAX_DEGREE {
            return self.error(format!("degree exceeds {MAX_DEGREE}"));
        }
        Ok(p)
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.error("nesting too deep");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Product> {
        self.enter()?;
        let first = self.term()?;
        if !matches!(self.tok, Tok::Plus | Tok::Minus) {
            self.depth -= 1;
            return Ok(first);
        }
        let mut acc = expand(first)?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &expand(self.term()?)?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &expand(self.term()?)?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(vec![(acc, 1)])
    }

    fn term(&mut self) -> Result<Product> {
        let mut acc = self.unary()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    let rhs = self.unary()?;
                    acc.extend(rhs);
                    acc = self.guard(acc)?;
                }
                Tok::Slash => {
                    self.bump()?;
                    for (base, e) in self.unary()? {
                        if e != 0 && base.is_zero() {
                            return Err(AlgebraError::DivisionByZero.into());
                        }
                        acc.push((base, -e));
                    }
                    acc = self.guard(acc)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Product> {
        match self.tok {
            Tok::Minus | Tok::Plus => {
                let negate = self.tok == Tok::Minus;
                self.enter()?;
                self.bump()?;
                let mut v = self.unary()?;
                self.depth -= 1;
                if negate {
                    v.insert(0, (RationalFunction::int(-1), 1));
                }
                Ok(v)
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Product> {
        let mut base = self.atom()?;
        while self.tok == Tok::Caret {
            self.bump()?;
            let e = match &self.tok {
                Tok::Int(n) => match u32::try_from(n) {
                    Ok(e) if e <= MAX_EXPONENT => e as i32,
                    _ => return self.error(format!("exponent exceeds {MAX_EXPONENT}")),
                },
                _ => return self.error("expected a nonnegative integer exponent"),
            };
            base = base
                .into_iter()
                .filter(|_| e != 0)
                .map(|(b, k)| (b, k * e))
                .collect();
            base = self.guard(base)?;
            self.bump()?;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Product> {
        match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Int(n) => {
                self.bump()?;
                Ok(vec![(RationalFunction::constant(Q::from_bigint(n)), 1)])
            }
            Tok::Ident(name) => {
                let v = self.variable(&name)?;
                self.bump()?;
                Ok(vec![(RationalFunction::var(v), 1)])
            }
            Tok::LParen => {
                self.bump()?;
                let v = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump()?;
                Ok(v)
            }
            Tok::End => self.error("unexpected end of expression"),
            other => {
                self.tok = other;
                self.error("expected a number, a variable or `(`")
            }
        }
    }

    fn variable(&self, name: &str) -> Result<VariableId> {
        if name == "x" {
            return Ok(VariableId::Base);
        }
        let (jet, digits) = if let Some(d) = name.strip_prefix("yx") {
            (true, d)
        } else if let Some(d) = name.strip_prefix('y') {
            (false, d)
        } else {
            return Err(Error::UnknownVariable(name.to_string()));
        };
        let index = match digits.parse::<usize>() {
            Ok(k) if (1..=self.m).contains(&k) && !digits.starts_with('0') => k as u8,
            _ => return Err(Error::UnknownVariable(name.to_string())),
        };
        if jet {
            if !self.allow_jet1 {
                return Err(Error::JetNotAllowed(name.to_string()));
            }
            Ok(VariableId::Jet1(index))
        } else {
            Ok(VariableId::Dep(index))
        }
    }
}

/// Parses one expression over `x, y1..ym` (and `yx1..yxm` when `allow_jet1`).
pub fn parse_expression(text: &str, m: usize, allow_jet1: bool) -> Result<RationalFunction> {
    parse_at(text, 0, m, allow_jet1)
}

/// As [`parse_expression`], reporting error positions shifted by `offset`.
pub(crate) fn parse_at(text: &str, offset: usize, m: usize, allow_jet1: bool) -> Result<RationalFunction> {
    let mut p = Parser {
        lexer: Lexer { src: text, pos: 0 },
        tok: Tok::End,
        pos: 0,
        m,
        allow_jet1,
        depth: 0,
    };
    let result = (|| {
        p.bump()?;
        let v = p.expr()?;
        if p.tok != Tok::End {
            return p.error("unexpected trailing input");
        }
        expand(v)
    })();
    result.map_err(|e| match e {
        Error::SyntaxError { pos, msg } => Error::SyntaxError {
            pos: pos + offset,
            msg,
        },
        other => other,
    })
}
