//! Text forms for fields, element lists and polynomials.
//!
//! Fields: `q`, `p^m`, or `p^m/mod=c0,c1,...,cm` (ascending modulus
//! coefficients). Polynomials: either ascending coefficient lists such as
//! `1,0,2` (= `2x^2 + 1`), or expressions such as `x^3+g*x^2+g^2*x+5` where
//! integers are element encodings and `g` is the fixed primitive element.

use crate::error::{Error, Result};
use crate::field::{prime_factors, Elem, Field};
use crate::poly::Poly;

/// Parses a field spec.
pub fn parse_field(spec: &str) -> Result<Field> {
    let spec = spec.trim();
    let (order, modulus) = match spec.split_once('/') {
        Some((order, rest)) => {
            let list = rest
                .strip_prefix("mod=")
                .ok_or_else(|| Error::parse(order.len() + 1, "expected `mod=` after `/`"))?;
            let offset = order.len() + 5;
            (order, Some(parse_u32_list(list, offset)?))
        }
        None => (spec, None),
    };
    let (p, m) = match order.split_once('^') {
        Some((p, m)) => (parse_u32(p, 0)?, parse_u32(m, p.len() + 1)?),
        None => {
            let q = parse_u32(order, 0)?;
            let factors = prime_factors(q as u64);
            if factors.len() != 1 {
                return Err(Error::parse(0, format!("{q} is not a prime power")));
            }
            let p = factors[0] as u32;
            let (mut rest, mut m) = (q, 0);
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            (p, m)
        }
    };
    Field::new(p, m, modulus.as_deref())
}

fn parse_u32(s: &str, pos: usize) -> Result<u32> {
    let t = s.trim();
    t.parse()
        .map_err(|_| Error::parse(pos, format!("expected a non-negative integer, found {t:?}")))
}

fn parse_u32_list(s: &str, offset: usize) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for part in s.split(',') {
        out.push(parse_u32(part, pos)?);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Comma-separated element encodings.
pub fn parse_elements(field: &Field, s: &str) -> Result<Vec<Elem>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut pos = 0;
    let mut out = Vec::new();
    for part in s.split(',') {
        let v = parse_u32(part, pos)?;
        out.push(field.elem(v as u64).map_err(|_| {
            Error::parse(pos, format!("{v} is not an element of GF({})", field.q()))
        })?);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// A single element: an encoding, `g`, or `g^i`.
pub fn parse_element(field: &Field, s: &str) -> Result<Elem> {
    let poly = parse_poly(field, s)?;
    match poly.degree() {
        None | Some(0) => Ok(poly.coeff(0)),
        Some(_) => Err(Error::parse(
            0,
            "expected a field element, found a polynomial in x",
        )),
    }
}

/// A polynomial, as a coefficient list (if it contains a comma) or an expression.
pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    if s.contains(',') {
        return Ok(Poly::from_coeffs(parse_elements(field, s)?));
    }
    Parser {
        field,
        src: s.as_bytes(),
        pos: 0,
    }
    .expression()
}

/// Words never exceed the field order, so larger degrees are input mistakes.
const MAX_DEGREE: u64 = 1 << 16;

struct Parser<'a> {
    field: &'a Field,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn exponent(&mut self) -> Result<u64> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.number()
        } else {
            Ok(1)
        }
    }

    fn expression(&mut self) -> Result<Poly> {
        let f = self.field;
        let mut acc = Poly::zero();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let term = self.term()?;
            acc = if negate {
                acc.sub(f, &term)
            } else {
                acc.add(f, &term)
            };
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(c) => {
                    return Err(Error::parse(
                        self.pos,
                        format!("unexpected {:?}", c as char),
                    ))
                }
            }
            self.pos += 1;
        }
    }

    /// Factors joined by `*` or juxtaposition, e.g. `3*g^2*x^4` or `3x`.
    fn term(&mut self) -> Result<Poly> {
        let f = self.field;
        let mut coeff = Elem::ONE;
        let mut degree = 0u64;
        let mut first = true;
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    degree += self.exponent()?;
                }
                Some(b'g') => {
                    self.pos += 1;
                    let e = self.exponent()?;
                    if f.q() == 2 {
                        return Err(Error::parse(
                            self.pos,
                            "GF(2) has no primitive element g != 1",
                        ));
                    }
                    coeff = f.mul(coeff, f.gen_pow(e));
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    let v = self.number()?;
                    let e = f.elem(v).map_err(|_| {
                        Error::parse(start, format!("{v} is not an element of GF({})", f.q()))
                    })?;
                    coeff = f.mul(coeff, e);
                }
                Some(c) if first => {
                    return Err(Error::parse(
                        self.pos,
                        format!("expected a term, found {:?}", c as char),
                    ))
                }
                None if first => {
                    return Err(Error::parse(
                        self.pos,
                        "expected a term, found end of input",
                    ))
                }
                _ => return Err(Error::parse(self.pos, "expected a factor after `*`")),
            }
            first = false;
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'x' | b'g') => {}
                Some(c) if c.is_ascii_digit() => {
                    return Err(Error::parse(self.pos, "write `*` between numbers"))
                }
                _ => break,
            }
        }
        if degree > MAX_DEGREE {
            return Err(Error::parse(
                self.pos,
                format!("degree {degree} exceeds {MAX_DEGREE}"),
            ));
        }
        Ok(Poly::monomial(coeff, degree as usize))
    }
}
