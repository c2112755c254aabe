//! Text form of Boolean Laurent polynomials.
//!
//! ```text
//! poly     := '-inf' | monomial ('+' monomial)*
//! monomial := '0' | factor ('*' factor)*
//! factor   := 'x' index ('^' ['+'|'-'] digits)?
//! ```
//!
//! Whitespace is ignored everywhere. Repeated monomials are merged and a
//! variable repeated inside one monomial has its exponents added.

use num_bigint::BigInt;
use num_traits::Zero;

use super::TropPoly;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, dim: usize) -> Result<TropPoly> {
    if text.trim() == "-inf" {
        return Ok(TropPoly::zero(dim));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, dim };
    let mut monomials = Vec::new();
    loop {
        monomials.push(p.monomial()?);
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => p.pos += 1,
            Some(c) => return Err(p.error(format!("expected '+' or end of input, found '{}'", c as char))),
        }
    }
    TropPoly::new(dim, monomials)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn monomial(&mut self) -> Result<Vec<BigInt>> {
        let mut exponent = vec![BigInt::zero(); self.dim];
        self.skip_ws();
        if self.peek() == Some(b'0') {
            self.pos += 1;
            return Ok(exponent);
        }
        loop {
            self.factor(&mut exponent)?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(exponent);
            }
        }
    }

    fn factor(&mut self, exponent: &mut [BigInt]) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => self.pos += 1,
            Some(c) => return Err(self.error(format!("expected 'x' or '0', found '{}'", c as char))),
            None => return Err(self.error("unexpected end of input")),
        }
        self.skip_ws();
        let var_pos = self.pos;
        let index = self.digits()?;
        let slot = index
            .parse::<usize>()
            .ok()
            .filter(|i| (1..=self.dim).contains(i))
            .ok_or_else(|| Error::VariableOutOfRange { index: index.clone(), pos: var_pos, dim: self.dim })?;
        self.skip_ws();
        let mut power = BigInt::from(1);
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let negative = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let magnitude: BigInt = self.digits()?.parse().expect("ascii digits");
            power = if negative { -magnitude } else { magnitude };
        }
        exponent[slot - 1] += power;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(dim: usize, m: &[&[i64]]) -> TropPoly {
        TropPoly::from_i64s(dim, m).unwrap()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_poly("x1*x2^-1 + x3", 3).unwrap(), poly(3, &[&[1, -1, 0], &[0, 0, 1]]));
        assert_eq!(parse_poly("0", 2).unwrap(), poly(2, &[&[0, 0]]));
        assert_eq!(parse_poly("x1 + x1", 1).unwrap(), poly(1, &[&[1]]));
        assert_eq!(parse_poly(" x 2 ^ + 3 * x1^-2 ", 2).unwrap(), poly(2, &[&[-2, 3]]));
        assert_eq!(parse_poly(" -inf ", 2).unwrap(), TropPoly::zero(2));
        let p = parse_poly("x1*x2^-1 + x3", 3).unwrap();
        assert_eq!(parse_poly(&p.to_string(), 3).unwrap(), p);
        assert_eq!(parse_poly(&TropPoly::zero(3).to_string(), 3).unwrap(), TropPoly::zero(3));
        assert_eq!(parse_poly("x1*x1^2", 1).unwrap(), poly(1, &[&[3]]));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(parse_poly("x1 +", 1), Err(Error::Syntax { pos: 4, msg: "unexpected end of input".into() }));
        assert!(matches!(parse_poly("x1 x2", 2), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("y1", 2), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("x1^", 1), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("", 1), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn variable_range() {
        assert_eq!(parse_poly("x1 + x4", 3), Err(Error::VariableOutOfRange { index: "4".into(), pos: 6, dim: 3 }));
        assert!(matches!(parse_poly("x0", 3), Err(Error::VariableOutOfRange { .. })));
    }
}
