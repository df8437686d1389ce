//! Factor expressions over position-indexed generators.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr := term ('+' term)*
//! term := pow ('*' pow)*
//! pow  := atom ('^' uint)?
//! atom := gen pos | '(' expr ')' | '1'
//! gen  := [a-z]+ ('.' uint)?
//! pos  := '_'? uint          ('_' is required after a dotted name)
//! ```
//!
//! `a3` is generator `a` in tensor slot 3; `x.2_1` is the generator of the
//! second product factor in slot 1. `alpha` is accepted for `x`, and `c`/`d`
//! for `a`/`b`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Element, Presentation};
use crate::error::{Error, Result};
use crate::tensor::{inject, TensorElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactorExpr {
    Unit,
    Gen { name: String, position: usize },
    Sum(Vec<FactorExpr>),
    Prod(Vec<FactorExpr>),
    Pow(Box<FactorExpr>, u32),
}

impl FactorExpr {
    pub fn gen(name: impl Into<String>, position: usize) -> Self {
        FactorExpr::Gen {
            name: name.into(),
            position,
        }
    }

    /// `g_i + g_j`.
    pub fn pair_sum(name: &str, i: usize, j: usize) -> Self {
        FactorExpr::Sum(vec![Self::gen(name, i), Self::gen(name, j)])
    }

    /// Syntax-only parse.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Checks positions and generator names against a presentation and
    /// rewrites aliases to canonical names.
    pub fn resolve(&self, arity: usize, pres: &Presentation) -> Result<FactorExpr> {
        Ok(match self {
            FactorExpr::Unit => FactorExpr::Unit,
            FactorExpr::Gen { name, position } => {
                if *position == 0 || *position > arity {
                    return Err(Error::PositionOutOfRange {
                        position: *position,
                        arity,
                    });
                }
                let canonical = canonical_name(name, pres)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                FactorExpr::gen(canonical, *position)
            }
            FactorExpr::Sum(xs) => {
                FactorExpr::Sum(xs.iter().map(|x| x.resolve(arity, pres)).collect::<Result<_>>()?)
            }
            FactorExpr::Prod(xs) => {
                FactorExpr::Prod(xs.iter().map(|x| x.resolve(arity, pres)).collect::<Result<_>>()?)
            }
            FactorExpr::Pow(b, e) => FactorExpr::Pow(Box::new(b.resolve(arity, pres)?), *e),
        })
    }

    /// Evaluates the expression in the `arity`-fold tensor power.
    pub fn evaluate(&self, base: &Arc<Presentation>, arity: usize) -> Result<TensorElement> {
        match self {
            FactorExpr::Unit => TensorElement::unit(base, arity),
            FactorExpr::Gen { name, position } => {
                let canonical =
                    canonical_name(name, base).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                inject(base, arity, *position, &Element::generator(base, &canonical)?)
            }
            FactorExpr::Sum(xs) => xs.iter().try_fold(TensorElement::zero(base, arity)?, |acc, x| {
                acc.add(&x.evaluate(base, arity)?)
            }),
            FactorExpr::Prod(xs) => xs.iter().try_fold(TensorElement::unit(base, arity)?, |acc, x| {
                acc.multiply(&x.evaluate(base, arity)?)
            }),
            FactorExpr::Pow(b, e) => Ok(b.evaluate(base, arity)?.power(*e)),
        }
    }

    /// Applies `f` to every generator name.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> FactorExpr {
        match self {
            FactorExpr::Unit => FactorExpr::Unit,
            FactorExpr::Gen { name, position } => FactorExpr::gen(f(name), *position),
            FactorExpr::Sum(xs) => FactorExpr::Sum(xs.iter().map(|x| x.rename(f)).collect()),
            FactorExpr::Prod(xs) => FactorExpr::Prod(xs.iter().map(|x| x.rename(f)).collect()),
            FactorExpr::Pow(b, e) => FactorExpr::Pow(Box::new(b.rename(f)), *e),
        }
    }
}

/// Parses `text` and validates it against `pres` and `arity`.
pub fn parse_factor_expr(text: &str, arity: usize, pres: &Presentation) -> Result<FactorExpr> {
    FactorExpr::parse(text)?.resolve(arity, pres)
}

fn canonical_name(name: &str, pres: &Presentation) -> Option<String> {
    if pres.generator_index(name).is_some() {
        return Some(name.to_string());
    }
    let (head, tail) = match name.split_once('.') {
        Some((h, t)) => (h, Some(t)),
        None => (name, None),
    };
    let head = match head {
        "alpha" => "x",
        "c" => "a",
        "d" => "b",
        _ => return None,
    };
    let candidate = match tail {
        Some(t) => format!("{head}.{t}"),
        None => head.to_string(),
    };
    pres.generator_index(&candidate).map(|_| candidate)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Syntax {
                offset: start,
                message: "integer too large".into(),
            })
    }

    fn expr(&mut self) -> Result<FactorExpr> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            FactorExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<FactorExpr> {
        let mut factors = vec![self.pow()?];
        while self.eat(b'*') {
            factors.push(self.pow()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            FactorExpr::Prod(factors)
        })
    }

    fn pow(&mut self) -> Result<FactorExpr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            Ok(FactorExpr::Pow(Box::new(base), e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<FactorExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(b'1') => {
                let start = self.pos;
                let v = self.uint()?;
                if v != 1 {
                    self.pos = start;
                    return Err(self.error("only the constant 1 is allowed"));
                }
                Ok(FactorExpr::Unit)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_lowercase() {
                    self.pos += 1;
                }
                let mut dotted = false;
                if self.src.get(self.pos) == Some(&b'.') {
                    self.pos += 1;
                    let digits = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if digits == self.pos {
                        return Err(self.error("expected a factor index after `.`"));
                    }
                    dotted = true;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
                let underscore = self.src.get(self.pos) == Some(&b'_');
                if underscore {
                    self.pos += 1;
                } else if dotted {
                    return Err(self.error("expected `_` before the position of a dotted generator"));
                }
                if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error("expected a tensor position after the generator name"));
                }
                let position = self.uint()?;
                Ok(FactorExpr::Gen {
                    name,
                    position: position as usize,
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl fmt::Display for FactorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorExpr::Unit => f.write_str("1"),
            FactorExpr::Gen { name, position } => {
                if name.contains('.') {
                    write!(f, "{name}_{position}")
                } else {
                    write!(f, "{name}{position}")
                }
            }
            FactorExpr::Sum(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    if matches!(x, FactorExpr::Sum(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            FactorExpr::Prod(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    if matches!(x, FactorExpr::Sum(_) | FactorExpr::Prod(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            FactorExpr::Pow(b, e) => {
                if matches!(**b, FactorExpr::Gen { .. } | FactorExpr::Unit) {
                    write!(f, "{b}^{e}")
                } else {
                    write!(f, "({b})^{e}")
                }
            }
        }
    }
}
