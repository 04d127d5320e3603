//! Parser for the textual scalar grammar.
//!
//! ```text
//! expr    := product (('+' | '-') product)*
//! product := sign? term ('*' term)*
//! term    := int | int '/' int | 'zeta(' int ')' ('^' sign? int)?
//! ```
//!
//! A single `product` is the canonical form for monomials; sums only appear
//! for values that are not a rational multiple of a root of unity.
//! Whitespace between tokens is ignored. Positions in errors are byte offsets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{check_order, residue, Scalar, ScalarError};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
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

    fn expect(&mut self, c: u8) -> Result<(), ScalarError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, message: String) -> ScalarError {
        ScalarError::Syntax {
            pos: self.pos,
            message,
        }
    }

    fn int(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer".into()));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'z') => {
                if !self.src[self.pos..].starts_with(b"zeta") {
                    return Err(self.error("expected 'zeta'".into()));
                }
                self.pos += 4;
                self.expect(b'(')?;
                let order_pos = self.pos;
                let order = self.int()?;
                self.expect(b')')?;
                let order = match order.to_u64() {
                    Some(n) => n,
                    None => return Err(ScalarError::OrderTooLarge(u64::MAX)),
                };
                check_order(order).map_err(|e| match e {
                    ScalarError::ZeroOrder => ScalarError::Syntax {
                        pos: order_pos,
                        message: "cyclotomic order must be positive".into(),
                    },
                    other => other,
                })?;
                let order = order as u32;
                let exponent = if self.eat(b'^') {
                    let negative = self.eat(b'-');
                    let e = self.int()?;
                    if negative {
                        -e
                    } else {
                        e
                    }
                } else {
                    BigInt::from(1)
                };
                Scalar::root_of_unity(order, residue(&exponent, order) as i64)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.int()?;
                if self.eat(b'/') {
                    let den_pos = self.pos;
                    let den = self.int()?;
                    if den.is_zero() {
                        return Err(ScalarError::ZeroDenominator { pos: den_pos });
                    }
                    Ok(Scalar::from_rational(BigRational::new(num, den)))
                } else {
                    Ok(Scalar::from_rational(BigRational::from_integer(num)))
                }
            }
            Some(_) => Err(self.error("expected a number or 'zeta('".into())),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn product(&mut self, allow_sign: bool) -> Result<Scalar, ScalarError> {
        let negative = allow_sign && self.eat(b'-');
        if allow_sign && !negative {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        while self.eat(b'*') {
            let t = self.term()?;
            acc = &acc * &t;
        }
        Ok(if negative { -acc } else { acc })
    }
}

/// Parses a scalar in the textual grammar.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut acc = cur.product(true)?;
    loop {
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                let p = cur.product(false)?;
                acc = &acc + &p;
            }
            Some(b'-') => {
                cur.pos += 1;
                let p = cur.product(false)?;
                acc = &acc - &p;
            }
            Some(_) => return Err(cur.error("unexpected character".into())),
        }
    }
    Ok(acc)
}
