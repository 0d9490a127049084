use num_rational::Rational64;
use num_traits::One;

use super::monomial::{Monomial, Var};
use super::term::{Factor, Term};
use super::Expr;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

pub(crate) fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser {
        src,
        bytes: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = Expr::zero();
        let mut sign = Rational64::one();
        if self.eat(b'-') {
            sign = -sign;
        } else {
            self.eat(b'+');
        }
        loop {
            let mut t = self.term()?;
            t.coeff *= sign;
            e.add_term(t);
            if self.eat(b'+') {
                sign = Rational64::one();
            } else if self.eat(b'-') {
                sign = -Rational64::one();
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = Term::one();
        loop {
            self.item(&mut t)?;
            if !self.eat(b'*') {
                return Ok(t);
            }
        }
    }

    fn uint(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn sint(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'.')
        {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn power(&mut self) -> Result<i64> {
        if self.eat(b'^') {
            self.sint()
        } else {
            Ok(1)
        }
    }

    fn item(&mut self, t: &mut Term) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let a = self.uint()?;
                let r = if self.eat(b'/') {
                    let b = self.uint()?;
                    if b == 0 {
                        return Err(self.error("zero denominator"));
                    }
                    Rational64::new(a, b)
                } else {
                    Rational64::from_integer(a)
                };
                t.coeff *= r;
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                match name.as_str() {
                    "d" => {
                        self.expect(b'(')?;
                        let a = self.monomial()?;
                        self.expect(b',')?;
                        let b = self.monomial()?;
                        self.expect(b')')?;
                        let k = self.power()?;
                        if k < 1 {
                            return Err(self.error("delta powers must be positive"));
                        }
                        for _ in 0..k {
                            t.push(Factor::Delta {
                                arg1: a.clone(),
                                arg2: b.clone(),
                            });
                        }
                        Ok(())
                    }
                    "theta" => {
                        self.expect(b'(')?;
                        let a = self.monomial()?;
                        self.expect(b')')?;
                        let p = self.power()?;
                        t.push(Factor::Theta {
                            pow: p as i32,
                            arg: a,
                        });
                        Ok(())
                    }
                    "thp" => {
                        let p = self.power()?;
                        t.push(Factor::ThetaPrimeOne { pow: p as i32 });
                        Ok(())
                    }
                    other => Err(self.error(&format!("unknown factor {other:?}"))),
                }
            }
            _ => Err(self.error("expected a factor")),
        }
    }

    fn monomial(&mut self) -> Result<Monomial> {
        let mut m = self.mfactor()?;
        loop {
            if self.eat(b'*') {
                m = m.mul(&self.mfactor()?);
            } else if self.eat(b'/') {
                m = m.div(&self.mfactor()?);
            } else {
                return Ok(m);
            }
        }
    }

    fn exponent(&mut self) -> Result<Rational64> {
        if !self.eat(b'^') {
            return Ok(Rational64::one());
        }
        if self.eat(b'(') {
            let a = self.sint()?;
            let r = if self.eat(b'/') {
                let b = self.uint()?;
                if b == 0 {
                    return Err(self.error("zero denominator"));
                }
                Rational64::new(a, b)
            } else {
                Rational64::from_integer(a)
            };
            self.expect(b')')?;
            Ok(r)
        } else {
            Ok(Rational64::from_integer(self.sint()?))
        }
    }

    fn mfactor(&mut self) -> Result<Monomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let m = self.monomial()?;
                self.expect(b')')?;
                let e = self.exponent()?;
                Ok(m.scale(e))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Monomial::one())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                let v: Var = name.parse()?;
                let e = self.exponent()?;
                Ok(Monomial::pow(v, e))
            }
            _ => Err(self.error("expected a monomial")),
        }
    }
}
