//! Recursive-descent parser for free-algebra polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | var | '(' expr ')' | '[' expr (',' expr)+ ']'
//! var    := ('y'|'z') int
//! ```
//!
//! Commutator brackets are left-normed.

use num_bigint::BigInt;

use super::{FreePoly, GradedVariable};
use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(GradedVariable),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let d = digits(&mut i);
            out.push(Tok::Num(d.parse().expect("digits")));
        } else if c == 'y' || c == 'z' {
            i += 1;
            let d = digits(&mut i);
            let v: GradedVariable = format!("{c}{d}").parse()?;
            out.push(Tok::Var(v));
        } else if "+-*/^()[],".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::PolyParse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    field: FieldSpec,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::PolyParse(format!("{msg} at token {}", self.pos))
    }

    fn expr(&mut self) -> Result<FreePoly> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('['))
        )
    }

    fn term(&mut self) -> Result<FreePoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') || self.starts_factor() {
                acc = acc.try_mul(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<FreePoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
                    return base.pow(e);
                }
                _ => return Err(self.error("expected exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FreePoly> {
        match self.peek().cloned() {
            Some(Tok::Num(a)) => {
                self.pos += 1;
                let mut c = self.field.from_bigint(&a);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(b)) => {
                            self.pos += 1;
                            c = c.try_div(&self.field.from_bigint(&b))?;
                        }
                        _ => return Err(self.error("expected denominator")),
                    }
                }
                Ok(FreePoly::constant(self.field, c))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(FreePoly::var(self.field, v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let mut items = vec![self.expr()?];
                while self.eat(',') {
                    items.push(self.expr()?);
                }
                self.expect(']')?;
                if items.len() < 2 {
                    return Err(self.error("commutator needs at least two entries"));
                }
                FreePoly::commutator_chain(&items)
            }
            _ => Err(self.error("expected a number, variable, '(' or '['")),
        }
    }
}

pub(super) fn parse(field: FieldSpec, s: &str) -> Result<FreePoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::PolyParse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0, field };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let q = FieldSpec::RATIONALS;
        let f = parse(q, "2*y1 z1 - 1/2[z1,z2]").unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(parse(q, "(y1+z1)^2").unwrap(), parse(q, "y1y1 + y1z1 + z1y1 + z1z1").unwrap());
        assert_eq!(parse(q, "-z1 + z1").unwrap(), FreePoly::zero(q));
        assert_eq!(parse(q, "y12").unwrap(), FreePoly::var(q, GradedVariable::y(12)));
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(parse(f5, "1/2 z1").unwrap(), parse(f5, "3z1").unwrap());
        for bad in ["", "y", "x1", "[y1]", "y1 +", "(y1", "1/0 y1", "y0"] {
            assert!(parse(q, bad).is_err(), "{bad}");
        }
    }
}
