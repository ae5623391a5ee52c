//! Parser for the polynomial text format.
//!
//! Accepts sums and products of integers, `i`, the base variable `A`, `q`
//! (read as `t^2` where `t` is the stored base), `d` (= `-A^2 - A^-2`) and
//! `d<n>`.  Products may be written by juxtaposition or `*`.  Exponents are
//! integers; `q^k/2` is accepted for half-integer powers of `q`.
//!
//! Raw bracket polynomials use the same grammar with `A`, `B`, `d` and `d<n>`
//! all kept symbolic.

use super::{Coeff, LaurentPoly, Monomial, Poly, RawBracketPoly};

/// A variable the parser knows: either a unit (any integer power is fine,
/// built by `unit(exponent * step)`) or an ordinary polynomial atom.
enum Var<P> {
    Unit { step: i32, unit: fn(i32) -> P },
    Plain(P),
}

trait Grammar: Sized {
    fn variable(name: u8, index: Option<u32>) -> Option<Var<Self>>;
}

impl Grammar for LaurentPoly {
    fn variable(name: u8, index: Option<u32>) -> Option<Var<Self>> {
        let unit: fn(i32) -> Self = |k| LaurentPoly::term(1, k);
        match (name, index) {
            (b'A' | b't', None) => Some(Var::Unit { step: 1, unit }),
            (b'q', None) => Some(Var::Unit { step: 2, unit }),
            (b'd', None) => Some(Var::Plain(LaurentPoly::loop_value())),
            (b'd', Some(n)) => Some(Var::Plain(LaurentPoly::loop_var(n))),
            _ => None,
        }
    }
}

impl Grammar for RawBracketPoly {
    fn variable(name: u8, index: Option<u32>) -> Option<Var<Self>> {
        match (name, index) {
            (b'A', None) => Some(Var::Unit { step: 1, unit: RawBracketPoly::a_pow }),
            (b'B', None) => Some(Var::Unit { step: 1, unit: RawBracketPoly::b_pow }),
            (b'd', None) => Some(Var::Plain(RawBracketPoly::d())),
            (b'd', Some(n)) => Some(Var::Plain(RawBracketPoly::loop_var(n))),
            _ => None,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

pub fn parse_laurent(text: &str) -> Result<LaurentPoly, PolyParseError> {
    parse_with(text)
}

/// Parses a raw bracket polynomial such as `(A^2 + B^2 + A B) d + A B d0^2`.
pub fn parse_raw(text: &str) -> Result<RawBracketPoly, PolyParseError> {
    parse_with(text)
}

fn parse_with<M: Monomial>(text: &str) -> Result<Poly<M>, PolyParseError>
where
    Poly<M>: Grammar,
{
    let mut p = Parser { src: text.as_bytes(), pos: 0, _m: std::marker::PhantomData::<M> };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a, M> {
    src: &'a [u8],
    pos: usize,
    _m: std::marker::PhantomData<M>,
}

impl<M: Monomial> Parser<'_, M>
where
    Poly<M>: Grammar,
{
    fn err(&self, msg: &str) -> PolyParseError {
        PolyParseError { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Poly<M>, PolyParseError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.product()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly<M>, PolyParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn int(&mut self) -> Result<i64, PolyParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected integer"))
    }

    fn power(&mut self) -> Result<Poly<M>, PolyParseError> {
        let atom = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(match atom {
                Var::Unit { step, unit } => unit(step),
                Var::Plain(p) => p,
            });
        }
        self.pos += 1;
        self.skip_ws();
        let mut neg = false;
        if self.src.get(self.pos) == Some(&b'-') {
            neg = true;
            self.pos += 1;
        }
        let mut e = self.int()?;
        if neg {
            e = -e;
        }
        let mut half = false;
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            if self.int()? != 2 {
                return Err(self.err("only /2 fractional exponents are supported"));
            }
            half = true;
        }
        match atom {
            Var::Unit { step, unit } => {
                let k = if half {
                    if step != 2 {
                        return Err(self.err("half exponent needs q"));
                    }
                    e
                } else {
                    e * step as i64
                };
                Ok(unit(k as i32))
            }
            Var::Plain(p) => {
                if e < 0 || half {
                    return Err(self.err("negative or fractional power of a non-unit"));
                }
                Ok(p.pow(e as u32))
            }
        }
    }

    fn atom(&mut self) -> Result<Var<Poly<M>>, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(Var::Plain(v))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(Var::Plain(Poly::constant(Coeff::new(n, 0))))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Var::Plain(Poly::constant(Coeff::new(0, 1))))
            }
            Some(c) => {
                self.pos += 1;
                let index = if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    Some(self.int()? as u32)
                } else {
                    None
                };
                Poly::<M>::variable(c, index).ok_or_else(|| {
                    self.pos -= 1;
                    self.err("unexpected character")
                })
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = PolyParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_laurent(s)
    }
}

impl std::str::FromStr for RawBracketPoly {
    type Err = PolyParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_raw(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rendered_text() {
        let p = parse_laurent("-A^2 - A^-2 + d0^2").unwrap();
        assert_eq!(p.to_string(), "-A^2 - A^-2 + d0^2");
        assert_eq!(parse_laurent("d").unwrap(), LaurentPoly::loop_value());
        assert_eq!(parse_laurent("d1").unwrap(), LaurentPoly::loop_value());
    }

    #[test]
    fn gaussian_and_products() {
        let p = parse_laurent("(1+2i) A * A^-3 - i").unwrap();
        assert_eq!(p.to_string(), "-i + (1+2i) A^-2");
        let q = parse_laurent("-d^2 + d0^2 + d0 d2").unwrap();
        assert_eq!(q.len(), 3 + 2);
    }

    #[test]
    fn half_powers_of_q() {
        assert_eq!(parse_laurent("q^3/2").unwrap(), LaurentPoly::term(1, 3));
        assert_eq!(parse_laurent("q^-1").unwrap(), LaurentPoly::term(1, -2));
    }

    #[test]
    fn raw_round_trip() {
        for text in ["(A^2 + B^2 + A B) d + A B d0^2", "B^2 d d0 + 2 A B d0 + A^2 d2"] {
            let p = parse_raw(text).unwrap();
            assert_eq!(p.render(), text);
        }
        assert!(parse_raw("q").is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_laurent("A +").is_err());
        assert!(parse_laurent("d0^-1").is_err());
        assert!(parse_laurent("x").is_err());
    }
}
