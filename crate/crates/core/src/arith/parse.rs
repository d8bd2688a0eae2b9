//! Number grammar shared by the library and the command line:
//!
//! ```text
//! p/q                  rational (the "/q" part is optional)
//! (P+S*sqrt(D))/Q      quadratic irrational; P, S may be negative
//! sqrt(D)              shorthand for (0+1*sqrt(D))/1
//! ```
//!
//! Whitespace is ignored anywhere. `S*` may be omitted (`(-1+sqrt(5))/2`) and
//! the `P` term may be dropped (`(2*sqrt(3))/3`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::quad::QuadIrr;
use super::rational::Rational;
use super::real::Real;
use crate::error::{Error, Result};

struct Parser {
    src: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let src = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Parser { src, pos: 0 }
    }

    fn column(&self) -> usize {
        match self.src.get(self.pos) {
            Some((col, _)) => *col,
            None => self.src.last().map_or(1, |(c, _)| c + 1),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.column(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
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
            self.err(format!("expected '{c}'"))
        }
    }

    fn at_keyword(&self) -> bool {
        let word: String = self.src[self.pos..].iter().take(4).map(|(_, c)| *c).collect();
        word == "sqrt"
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits: String = self.src[start..self.pos].iter().map(|(_, c)| *c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn signed(&mut self) -> Result<BigInt> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let n = self.unsigned()?;
        Ok(if neg { -n } else { n })
    }

    /// `sqrt(D)`
    fn radical(&mut self) -> Result<BigInt> {
        if !self.at_keyword() {
            return self.err("expected 'sqrt'");
        }
        self.pos += 4;
        self.expect('(')?;
        let d = self.unsigned()?;
        self.expect(')')?;
        Ok(d)
    }

    /// `[P] (+|-) [S*] sqrt(D)` or `[S*] sqrt(D)`; returns (P, S, D).
    fn surd(&mut self) -> Result<(BigInt, BigInt, BigInt)> {
        let mut p = BigInt::zero();
        let mut sign = BigInt::one();
        let mut coeff = None;
        if self.at_keyword() {
            let d = self.radical()?;
            return Ok((p, sign, d));
        }
        // Leading sign applies to whichever term comes first.
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        if self.at_keyword() {
            let d = self.radical()?;
            return Ok((p, sign, d));
        }
        let first = self.unsigned()?;
        if self.eat('*') {
            coeff = Some(&sign * first);
        } else {
            p = &sign * first;
            sign = BigInt::one();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                _ => return self.err("expected '+' or '-'"),
            }
            // Allow "+-S*sqrt(D)" for a negative coefficient.
            if self.eat('-') {
                sign = -sign;
            }
            if !self.at_keyword() {
                let s = self.unsigned()?;
                self.expect('*')?;
                coeff = Some(&sign * s);
            }
        }
        let d = self.radical()?;
        Ok((p, coeff.unwrap_or(sign), d))
    }

    fn denominator(&mut self) -> Result<BigInt> {
        if self.eat('/') {
            let col = self.column();
            let q = self.signed()?;
            if q.is_zero() {
                return Err(Error::Parse {
                    pos: col,
                    msg: "zero denominator".into(),
                });
            }
            Ok(q)
        } else {
            Ok(BigInt::one())
        }
    }

    fn quad(&mut self, p: BigInt, s: BigInt, d: BigInt, q: BigInt, col: usize) -> Result<Real> {
        QuadIrr::new(p, s, d, q)
            .map(Real::Quad)
            .map_err(|e| Error::Parse {
                pos: col,
                msg: e.to_string(),
            })
    }

    fn number(&mut self) -> Result<Real> {
        let col = self.column();
        let value = if self.eat('(') {
            let (p, s, d) = self.surd()?;
            self.expect(')')?;
            let q = self.denominator()?;
            self.quad(p, s, d, q, col)?
        } else if self.at_keyword() || (self.peek() == Some('-') && {
            let save = self.pos;
            self.pos += 1;
            let kw = self.at_keyword();
            self.pos = save;
            kw
        }) {
            let (p, s, d) = self.surd()?;
            self.quad(p, s, d, BigInt::one(), col)?
        } else {
            let num = self.signed()?;
            if self.peek() == Some('+') || self.peek() == Some('-') {
                return self.err("wrap quadratic irrationals in parentheses: (P+S*sqrt(D))/Q");
            }
            let den = self.denominator()?;
            Real::Rational(Rational::new(num, den)?)
        };
        if self.pos != self.src.len() {
            return self.err("unexpected trailing input");
        }
        Ok(value)
    }
}

impl FromStr for Real {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser::new(s);
        if parser.src.is_empty() {
            return parser.err("empty input");
        }
        parser.number()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn quad(p: i64, s: i64, d: i64, q: i64) -> Real {
        Real::Quad(QuadIrr::new(p, s, d, q).unwrap())
    }

    #[test]
    fn accepted_forms() {
        assert_eq!("3/5".parse::<Real>().unwrap(), rat(3, 5).into());
        assert_eq!(" 4 / -6 ".parse::<Real>().unwrap(), rat(-2, 3).into());
        assert_eq!("0".parse::<Real>().unwrap(), Real::zero());
        assert_eq!("(-1+1*sqrt(2))/1".parse::<Real>().unwrap(), quad(-1, 1, 2, 1));
        assert_eq!("( -1 + 1 * sqrt( 2 ) ) / 1".parse::<Real>().unwrap(), quad(-1, 1, 2, 1));
        assert_eq!("sqrt(7)".parse::<Real>().unwrap(), quad(0, 1, 7, 1));
        assert_eq!("(-1+sqrt(5))/2".parse::<Real>().unwrap(), quad(-1, 1, 5, 2));
        assert_eq!("(3-2*sqrt(2))/1".parse::<Real>().unwrap(), quad(3, -2, 2, 1));
        assert_eq!("(3+-2*sqrt(2))/1".parse::<Real>().unwrap(), quad(3, -2, 2, 1));
        assert_eq!("(2*sqrt(3))/3".parse::<Real>().unwrap(), quad(0, 2, 3, 3));
        assert_eq!("(-sqrt(3))".parse::<Real>().unwrap(), quad(0, -1, 3, 1));
        assert_eq!("-sqrt(3)".parse::<Real>().unwrap(), quad(0, -1, 3, 1));
        assert_eq!("(-3+sqrt(13))/2".parse::<Real>().unwrap(), quad(-3, 1, 13, 2));
    }

    #[test]
    fn rejected_forms_report_position() {
        let err = |s: &str| match s.parse::<Real>() {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("1/0"), 3);
        assert_eq!(err("1/2x"), 4);
        assert_eq!(err("(1+sqrt(2)"), 11);
        assert_eq!(err("sqrt(4)"), 1);
        assert_eq!(err(""), 1);
        assert_eq!(err("abc"), 1);
    }
}
