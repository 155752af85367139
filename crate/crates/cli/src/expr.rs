//! Polynomial expressions: integers, rationals p/q, named variables,
//! + − * ^ and parentheses. Precedence ^ > unary − > * > binary ±.

use std::collections::HashMap;
use std::fmt;

use hypinfl::field::Field;
use hypinfl::poly::DensePoly;
use hypinfl::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Num(BigRational),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(err(i, "floating-point literals are not allowed"));
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()/".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else if c == '.' {
            return Err(err(i, "floating-point literals are not allowed"));
        } else {
            return Err(err(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<PolyExpr, Error> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<PolyExpr, Error> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PolyExpr, Error> {
        if self.eat('-') {
            return Ok(PolyExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyExpr, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            return match self.toks.get(self.at).cloned() {
                Some((_, Tok::Int(n))) => {
                    self.at += 1;
                    let e = u32::try_from(&n).map_err(|_| err(pos, "exponent too large"))?;
                    Ok(PolyExpr::Pow(Box::new(base), e))
                }
                _ => Err(err(pos, "expected a nonnegative integer exponent")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyExpr, Error> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Int(n))) => {
                self.at += 1;
                if self.eat('/') {
                    let dpos = self.pos();
                    match self.toks.get(self.at).cloned() {
                        Some((_, Tok::Int(d))) if !d.is_zero() => {
                            self.at += 1;
                            Ok(PolyExpr::Num(BigRational::new(n, d)))
                        }
                        _ => Err(err(dpos, "expected a nonzero integer denominator")),
                    }
                } else {
                    Ok(PolyExpr::Num(BigRational::from_integer(n)))
                }
            }
            Some((_, Tok::Ident(name))) => {
                if !self.vars.contains(&name.as_str()) {
                    return Err(err(pos, format!("unknown variable {name:?}")));
                }
                self.at += 1;
                Ok(PolyExpr::Var(name))
            }
            Some((_, Tok::Op('('))) => {
                self.at += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(err(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            Some((_, Tok::Op(c))) => Err(err(pos, format!("unexpected {c:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` allowing only the variables in `vars`.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<PolyExpr, Error> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
        vars,
    };
    let e = p.sum()?;
    if p.at != p.toks.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(e)
}

impl PolyExpr {
    fn prec(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
            PolyExpr::Mul(..) => 2,
            PolyExpr::Neg(_) => 3,
            PolyExpr::Pow(..) => 4,
            PolyExpr::Num(q) if !q.denom().is_one() || q.is_negative() => 2,
            PolyExpr::Num(_) | PolyExpr::Var(_) => 5,
        }
    }

    /// Value in F[x], with `x` the polynomial variable and `consts` giving
    /// field elements for the remaining names.
    pub fn to_poly<F: Field>(
        &self,
        field: &F,
        x: &str,
        consts: &HashMap<String, F::Elem>,
    ) -> Result<DensePoly<F>, Error> {
        Ok(match self {
            PolyExpr::Num(q) => {
                let c = field
                    .from_rational(q)
                    .ok_or_else(|| Error::Precondition(format!("{q} is undefined in {}", field.describe())))?;
                DensePoly::constant(field, c)
            }
            PolyExpr::Var(v) if v == x => DensePoly::x(field),
            PolyExpr::Var(v) => DensePoly::constant(
                field,
                consts
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::Precondition(format!("no value for {v}")))?,
            ),
            PolyExpr::Neg(e) => -e.to_poly(field, x, consts)?,
            PolyExpr::Add(a, b) => a.to_poly(field, x, consts)? + b.to_poly(field, x, consts)?,
            PolyExpr::Sub(a, b) => a.to_poly(field, x, consts)? - b.to_poly(field, x, consts)?,
            PolyExpr::Mul(a, b) => a.to_poly(field, x, consts)? * b.to_poly(field, x, consts)?,
            PolyExpr::Pow(a, e) => a.to_poly(field, x, consts)?.pow(*e),
        })
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Left operands need strictly lower precedence to be wrapped; right
        // operands of − and * also when equal.
        let wrap = |f: &mut fmt::Formatter<'_>, e: &PolyExpr, min: u8| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            PolyExpr::Num(q) => {
                if q.denom().is_one() {
                    if q.is_negative() {
                        write!(f, "-{}", q.numer().abs())
                    } else {
                        write!(f, "{}", q.numer())
                    }
                } else if q.is_negative() {
                    write!(f, "-{}/{}", q.numer().abs(), q.denom())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Neg(e) => {
                write!(f, "-")?;
                wrap(f, e, 3)
            }
            PolyExpr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            PolyExpr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            PolyExpr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            PolyExpr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypinfl::field::Rationals;

    fn q(text: &str) -> DensePoly<Rationals> {
        parse_poly(text, &["x"]).unwrap().to_poly(&Rationals, "x", &HashMap::new()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(q("x^3 - x"), DensePoly::from_i64s(&Rationals, &[0, -1, 0, 1]));
        assert_eq!(q("x^5 + 2*x + 1"), DensePoly::from_i64s(&Rationals, &[1, 2, 0, 0, 0, 1]));
        assert_eq!(
            parse_poly("x^2.5", &["x"]),
            Err(Error::Parse { pos: 3, msg: "floating-point literals are not allowed".into() })
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(q("-x^2"), DensePoly::from_i64s(&Rationals, &[0, 0, -1]));
        assert_eq!(q("2*-x + 1/2"), q("1/2 - 2*x"));
        assert_eq!(q("(x+1)^2"), DensePoly::from_i64s(&Rationals, &[1, 2, 1]));
        assert_eq!(q("x - 1 - x"), DensePoly::from_i64s(&Rationals, &[-1]));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_poly("x + y", &["x"]), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("x^", &["x"]), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("(x", &["x"]), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("x/2", &["x"]), Err(Error::Parse { pos: 1, .. })));
    }
}
