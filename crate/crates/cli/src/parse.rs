//! Expression parser.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := 'x[' i ',' j ']' | 'minor[' rows '|' cols ']' | 'q' | rational | '(' expr ')'
//! ```
//!
//! A leading `-` is accepted in front of any term, and negative exponents
//! are accepted on scalar units such as `q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use qdet_core::minors::{minor_poly, MinorError, MinorIndex};
use qdet_core::qfield::LaurentScalar;
use qdet_core::qmatrix::{AlgebraError, MatrixShape, NCPoly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    shape: MatrixShape,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }

    fn small(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let v = self.digits()?;
        usize::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("index too large")
        })
    }

    fn integer(&mut self) -> Result<i32, ParseError> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let v = self.digits()?;
        let v = i32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("exponent too large")
        })?;
        Ok(if neg { -v } else { v })
    }

    fn index_list(&mut self, end: u8) -> Result<Vec<usize>, ParseError> {
        let mut out = vec![self.small()?];
        while self.eat(b',') {
            out.push(self.small()?);
        }
        if self.peek() != Some(end) {
            return self.err(format!("expected '{}'", end as char));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = NCPoly::zero(self.shape);
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if first || self.eat(b'+') {
                false
            } else {
                break;
            };
            let t = self.term()?;
            acc = if neg { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            first = false;
            match self.peek() {
                Some(b'+') | Some(b'-') => {}
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.try_mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPoly, ParseError> {
        let start = self.pos;
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let k = self.integer()?;
        if k >= 0 {
            return Ok(base.pow(k as usize));
        }
        let unit = scalar_of(&base).and_then(|c| c.unit_inverse());
        match unit {
            Some(inv) => Ok(NCPoly::scalar(self.shape, inv).pow(k.unsigned_abs() as usize)),
            None => {
                self.pos = start;
                self.err("negative exponent on a non-unit")
            }
        }
    }

    fn atom(&mut self) -> Result<NCPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(NCPoly::scalar(self.shape, LaurentScalar::q()))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(NCPoly::scalar(
                    self.shape,
                    LaurentScalar::from_rational(BigRational::new(num, den)),
                ))
            }
            _ => {
                if self.keyword("x[") {
                    let i = self.small()?;
                    self.expect(b',')?;
                    let j = self.small()?;
                    self.expect(b']')?;
                    Ok(NCPoly::generator(self.shape, i, j)?)
                } else if self.keyword("minor[") {
                    let rows = self.index_list(b'|')?;
                    self.expect(b'|')?;
                    let cols = self.index_list(b']')?;
                    self.expect(b']')?;
                    let mu = MinorIndex::new(rows, cols)?;
                    Ok((*minor_poly(self.shape, &mu)?).clone())
                } else if self.peek().is_none() {
                    self.err("unexpected end of input")
                } else {
                    self.err("expected an atom")
                }
            }
        }
    }
}

fn scalar_of(p: &NCPoly) -> Option<LaurentScalar> {
    if p.is_zero() {
        return Some(LaurentScalar::zero());
    }
    let (m, c) = p.terms().next()?;
    (p.num_terms() == 1 && m.is_one()).then(|| c.clone())
}

/// Parses `text` and reduces it to PBW normal form in `O_q(M_mn)`.
pub fn parse_expression(text: &str, shape: MatrixShape) -> Result<NCPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        shape,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses `"1,3|1,2"` into a minor, enforcing ascending indices.
pub fn parse_gamma(text: &str) -> Result<MinorIndex, ParseError> {
    let bad = |msg: &str| ParseError::SyntaxError {
        pos: 0,
        msg: msg.to_string(),
    };
    let (rows, cols) = text.split_once('|').ok_or_else(|| bad("expected rows|cols"))?;
    Ok(MinorIndex::new(parse_list(rows)?, parse_list(cols)?)?)
}

/// Parses a comma separated list of positive integers.
pub fn parse_list(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let v = part.trim().parse().map_err(|_| ParseError::SyntaxError {
            pos: offset,
            msg: format!("bad index '{}'", part.trim()),
        })?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s22() -> MatrixShape {
        MatrixShape::new(2, 2).unwrap()
    }

    #[test]
    fn determinant_expression() {
        let a = parse_expression("x[1,1]*x[2,2] - q*x[1,2]*x[2,1]", s22()).unwrap();
        let b = parse_expression("minor[1,2|1,2]", s22()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scalars_and_powers() {
        let a = parse_expression("q^-1 * x[1,1]", s22()).unwrap();
        let b = NCPoly::generator(s22(), 1, 1).unwrap().scale(&LaurentScalar::q_pow(-1));
        assert_eq!(a, b);
        let c = parse_expression("-3/2*q^2*x[1,1]^2 + (q - q^-1)", s22()).unwrap();
        assert_eq!(c.num_terms(), 2);
        assert_eq!(parse_expression("x[2,1]*x[1,1]", s22()).unwrap().to_string(), "q^-1*x[1,1]*x[2,1]");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_expression("x[1,1] +", s22()),
            Err(ParseError::SyntaxError { pos: 8, .. })
        ));
        assert!(matches!(parse_expression("x[3,1]", s22()), Err(ParseError::Algebra(_))));
        assert!(matches!(
            parse_expression("x[1,1]^-1", s22()),
            Err(ParseError::SyntaxError { .. })
        ));
        assert!(parse_expression("minor[2,1|1,2]", s22()).is_err());
        assert!(matches!(parse_expression("1/0", s22()), Err(ParseError::SyntaxError { .. })));
    }

    #[test]
    fn gamma_syntax() {
        let g = parse_gamma("1,3|1,2").unwrap();
        assert_eq!(g.rows(), &[1, 3]);
        assert!(parse_gamma("3,1|1,2").is_err());
        assert!(parse_gamma("1,3").is_err());
    }
}
