//! Expression parser shared by polynomial, field and element inputs.
//!
//! Grammar: sums and differences of products, `/` for division, `^` with an
//! integer exponent, parentheses, integer literals, a single variable symbol,
//! and implicit multiplication such as `15x` or `2(x+1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPoly, QPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
    text: String,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(text.parse().expect("digits")),
                pos: start + 1,
                text,
            });
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(text.clone()),
                pos: start + 1,
                text,
            });
        } else if "+-*/^()[],".contains(c) || c == '\u{2212}' {
            let op = if c == '\u{2212}' { '-' } else { c };
            out.push(Token {
                tok: Tok::Op(op),
                pos: start + 1,
                text: c.to_string(),
            });
            i += 1;
        } else {
            return Err(Error::Parse {
                position: start + 1,
                token: c.to_string(),
                message: "unexpected character".into(),
            });
        }
    }
    Ok(out)
}

/// Target of expression evaluation.
pub trait Algebra {
    type Elem: Clone;
    fn constant(&self, c: BigRational) -> Self::Elem;
    fn variable(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> std::result::Result<Self::Elem, String>;
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.constant(BigRational::zero()), a)
    }
    fn pow(&self, a: &Self::Elem, k: i64) -> std::result::Result<Self::Elem, String> {
        let mut acc = self.constant(BigRational::one());
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, a);
        }
        if k < 0 {
            self.div(&self.constant(BigRational::one()), &acc)
        } else {
            Ok(acc)
        }
    }
}

struct Parser<'a, A: Algebra> {
    toks: Vec<Token>,
    at: usize,
    var: &'a str,
    alg: &'a A,
    end_pos: usize,
}

impl<'a, A: Algebra> Parser<'a, A> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at)
    }

    fn err_here(&self, message: &str) -> Error {
        match self.peek() {
            Some(t) => Error::Parse {
                position: t.pos,
                token: t.text.clone(),
                message: message.into(),
            },
            None => Error::Parse {
                position: self.end_pos,
                token: "<end>".into(),
                message: message.into(),
            },
        }
    }

    fn is_op(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Op(o), .. }) if *o == c)
    }

    fn expr(&mut self) -> Result<A::Elem> {
        let mut acc = self.term()?;
        loop {
            if self.is_op('+') {
                self.at += 1;
                let t = self.term()?;
                acc = self.alg.add(&acc, &t);
            } else if self.is_op('-') {
                self.at += 1;
                let t = self.term()?;
                acc = self.alg.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A::Elem> {
        let mut acc = self.unary()?;
        loop {
            if self.is_op('*') {
                self.at += 1;
                let f = self.unary()?;
                acc = self.alg.mul(&acc, &f);
            } else if self.is_op('/') {
                let at = self.peek().cloned().expect("operator present");
                self.at += 1;
                let f = self.unary()?;
                acc = self.alg.div(&acc, &f).map_err(|message| Error::Parse {
                    position: at.pos,
                    token: at.text,
                    message,
                })?;
            } else if matches!(
                self.peek(),
                Some(Token {
                    tok: Tok::Ident(_) | Tok::Op('('),
                    ..
                })
            ) {
                let f = self.power()?;
                acc = self.alg.mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<A::Elem> {
        if self.is_op('-') {
            self.at += 1;
            let u = self.unary()?;
            return Ok(self.alg.neg(&u));
        }
        if self.is_op('+') {
            self.at += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<A::Elem> {
        let base = self.atom()?;
        if !self.is_op('^') {
            return Ok(base);
        }
        let caret = self.peek().cloned().expect("operator present");
        self.at += 1;
        let neg = if self.is_op('-') {
            self.at += 1;
            true
        } else {
            false
        };
        let k = match self.peek() {
            Some(Token {
                tok: Tok::Num(n), ..
            }) => i64::try_from(n).map_err(|_| self.err_here("exponent too large"))?,
            _ => return Err(self.err_here("expected an integer exponent")),
        };
        self.at += 1;
        let k = if neg { -k } else { k };
        self.alg.pow(&base, k).map_err(|message| Error::Parse {
            position: caret.pos,
            token: caret.text,
            message,
        })
    }

    fn atom(&mut self) -> Result<A::Elem> {
        let Some(t) = self.peek().cloned() else {
            return Err(self.err_here("unexpected end of input"));
        };
        match &t.tok {
            Tok::Num(n) => {
                self.at += 1;
                Ok(self.alg.constant(BigRational::from_integer(n.clone())))
            }
            Tok::Ident(name) if name == self.var => {
                self.at += 1;
                Ok(self.alg.variable())
            }
            Tok::Ident(_) if self.var.is_empty() => Err(self.err_here("unexpected symbol in a constant")),
            Tok::Ident(_) => Err(self.err_here(&format!("unknown symbol; expected `{}`", self.var))),
            Tok::Op('(') => {
                self.at += 1;
                let e = self.expr()?;
                if !self.is_op(')') {
                    return Err(self.err_here("expected `)`"));
                }
                self.at += 1;
                Ok(e)
            }
            Tok::Op(_) => Err(self.err_here("unexpected operator")),
        }
    }
}

/// Evaluate an expression in the variable `var` inside `alg`.
pub fn evaluate<A: Algebra>(input: &str, var: &str, alg: &A) -> Result<A::Elem> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks,
        at: 0,
        var,
        alg,
        end_pos: input.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(p.err_here("unexpected trailing input"));
    }
    Ok(e)
}

struct Rationals;

impl Algebra for Rationals {
    type Elem = BigRational;
    fn constant(&self, c: BigRational) -> BigRational {
        c
    }
    fn variable(&self) -> BigRational {
        unreachable!("no variable in constant expressions")
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> std::result::Result<BigRational, String> {
        if b.is_zero() {
            Err("division by zero".into())
        } else {
            Ok(a / b)
        }
    }
}

/// Rational constant such as `-4/5`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    evaluate(s, "", &Rationals)
}

struct RationalPolys;

impl Algebra for RationalPolys {
    type Elem = QPoly;
    fn constant(&self, c: BigRational) -> QPoly {
        QPoly::constant(c)
    }
    fn variable(&self) -> QPoly {
        QPoly::x()
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a + b
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a - b
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a * b
    }
    fn div(&self, a: &QPoly, b: &QPoly) -> std::result::Result<QPoly, String> {
        if b.is_zero() {
            return Err("division by zero".into());
        }
        if b.degree() > 0 {
            return Err("division by a non-constant polynomial".into());
        }
        Ok(a.scale(&b.coeff(0).recip()))
    }
    fn pow(&self, a: &QPoly, k: i64) -> std::result::Result<QPoly, String> {
        if k < 0 {
            if a.degree() == 0 && !a.is_zero() {
                let c = a.coeff(0).recip();
                return Ok(QPoly::constant(num_traits::Pow::pow(c, k.unsigned_abs())));
            }
            return Err("negative exponent of a non-constant polynomial".into());
        }
        Ok(a.pow(k as u32))
    }
}

/// Parse `5*x^2-4*x+1` or an ascending coefficient list `[1,-4,5]` (entries may be rationals).
pub fn parse_rational_poly(s: &str) -> Result<QPoly> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('[') {
        let offset = s.len() - t.len() + 1;
        let Some(body) = inner.strip_suffix(']') else {
            return Err(Error::Parse {
                position: s.chars().count() + 1,
                token: "<end>".into(),
                message: "expected `]`".into(),
            });
        };
        let mut coeffs = Vec::new();
        let mut pos = offset;
        for part in body.split(',') {
            let c = parse_rational(part).map_err(|e| match e {
                Error::Parse {
                    position,
                    token,
                    message,
                } => Error::Parse {
                    position: position + pos,
                    token,
                    message,
                },
                other => other,
            })?;
            coeffs.push(c);
            pos += part.chars().count() + 1;
        }
        return Ok(QPoly::new(coeffs));
    }
    evaluate(t, "x", &RationalPolys)
}

/// Parse a polynomial that must have integer coefficients.
pub fn parse_int_poly(s: &str) -> Result<IntPoly> {
    let q = parse_rational_poly(s)?;
    if q.coeffs().iter().any(|c| !c.is_integer()) {
        return Err(Error::invalid(format!("`{s}` has non-integer coefficients")));
    }
    Ok(IntPoly::new(q.coeffs().iter().map(|c| c.to_integer()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn both_notations_agree() {
        let a = parse_int_poly("5*x^2-4*x+1").unwrap();
        let b = parse_int_poly("[1,-4,5]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, IntPoly::from_i64(&[1, -4, 5]));
    }

    #[test]
    fn rational_coefficients_and_implicit_products() {
        let q = parse_rational_poly("x^2 - (4/5)x + 1/5").unwrap();
        assert_eq!(q.coeffs(), &[rat(1, 5), rat(-4, 5), rat(1, 1)]);
        let l = parse_rational_poly("[1/5, -4/5, 1]").unwrap();
        assert_eq!(q, l);
        assert_eq!(parse_int_poly("2(x+1)^2").unwrap(), IntPoly::from_i64(&[2, 4, 2]));
    }

    #[test]
    fn errors_name_token_and_position() {
        match parse_int_poly("5*x^2-4*y+1") {
            Err(Error::Parse { position, token, .. }) => {
                assert_eq!(position, 9);
                assert_eq!(token, "y");
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_int_poly("x^2+") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "<end>"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_rational_poly("1/(x+1)") {
            Err(Error::Parse { position, token, .. }) => {
                assert_eq!((position, token.as_str()), (2, "/"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_int_poly("x/2").is_err());
    }
}
