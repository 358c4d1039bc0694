//! Text format for bihomogeneous polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff] factor*        ('*' optional between items)
//! factor := var ['^' integer]      var in {s, t, u, v}
//! coeff  := integer ['/' integer]
//! ```
//!
//! [`serialize`] writes the canonical form that [`parse_poly`] reads back exactly.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bipoly::{BiMonomial, BiPoly};
use crate::error::{Error, Result};
use crate::exactla::Scalar;

pub fn serialize(p: &BiPoly) -> String {
    p.to_string()
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("decimal digits"))
    }

    fn term(&mut self) -> Result<(Scalar, BiMonomial)> {
        let start = self.pos;
        let mut coeff = Scalar::from_integer(1.into());
        let mut exps = [0u32; 4];
        let mut items = 0;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.integer()?;
            let d = if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.integer()?;
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                d
            } else {
                BigInt::from(1)
            };
            coeff = Scalar::new(n, d);
            items += 1;
        }
        loop {
            match self.peek() {
                Some(b'*') if items > 0 => {
                    self.pos += 1;
                    match self.peek() {
                        Some(c) if var_index(c).is_some() => {}
                        _ => return self.err("expected a variable after '*'"),
                    }
                }
                Some(c) if var_index(c).is_some() => {
                    self.pos += 1;
                    let idx = var_index(c).unwrap();
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let e = self.integer()?;
                        u32::try_from(e).or_else(|_| self.err("exponent too large"))?
                    } else {
                        1
                    };
                    exps[idx] += e;
                    items += 1;
                }
                _ => break,
            }
        }
        if items == 0 {
            self.pos = start;
            self.skip_ws();
            return match self.src.get(self.pos) {
                Some(&c) => self.err(format!("unexpected character '{}'", c as char)),
                None => self.err("unexpected end of input"),
            };
        }
        Ok((coeff, BiMonomial(exps)))
    }
}

fn var_index(c: u8) -> Option<usize> {
    match c {
        b's' => Some(0),
        b't' => Some(1),
        b'u' => Some(2),
        b'v' => Some(3),
        _ => None,
    }
}

pub fn parse_poly(text: &str) -> Result<BiPoly> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Scalar, BiMonomial)> = Vec::new();
    let mut sign = match lx.peek() {
        Some(b'-') => {
            lx.pos += 1;
            -1
        }
        Some(b'+') => {
            lx.pos += 1;
            1
        }
        _ => 1,
    };
    loop {
        let (c, m) = lx.term()?;
        terms.push((if sign < 0 { -c } else { c }, m));
        match lx.peek() {
            None => break,
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(c) => return lx.err(format!("unexpected character '{}'", c as char)),
        }
        lx.pos += 1;
    }
    let nonzero: Vec<&(Scalar, BiMonomial)> = terms.iter().filter(|(c, _)| !c.is_zero()).collect();
    let degree = nonzero
        .first()
        .map_or_else(|| terms[0].1.degree(), |(_, m)| m.degree());
    if let Some((_, other)) = nonzero.iter().find(|(_, m)| m.degree() != degree) {
        let first = nonzero[0].1;
        return Err(Error::NotBihomogeneous(format!(
            "{first} has bidegree {degree} but {other} has bidegree {}",
            other.degree()
        )));
    }
    BiPoly::from_terms(
        degree,
        terms.into_iter().filter(|(c, _)| !c.is_zero()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::BiDegree;
    use crate::exactla::frac;

    #[test]
    fn parses_generator() {
        let p = parse_poly("t^2*v+s*t*v").unwrap();
        assert_eq!(p.degree(), BiDegree::new(2, 1));
        assert_eq!(p.to_string(), "s*t*v + t^2*v");
    }

    #[test]
    fn rational_coefficient_and_implicit_products() {
        let p = parse_poly("3/2 s t v").unwrap();
        assert_eq!(p.coefficient(&BiMonomial([1, 1, 0, 1])), frac(3, 2));
        assert_eq!(p.num_terms(), 1);
        assert_eq!(parse_poly("2 s s u").unwrap(), parse_poly("2*s^2*u").unwrap());
    }

    #[test]
    fn rejects_mixed_bidegrees() {
        let e = parse_poly("s^2*u + u^2*s").unwrap_err();
        match e {
            Error::NotBihomogeneous(msg) => {
                assert!(msg.contains("(2,1)") && msg.contains("(1,2)"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mixed_bidegrees_rejected_even_if_they_cancel() {
        assert!(matches!(
            parse_poly("s*u + s - s"),
            Err(Error::NotBihomogeneous(_))
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_poly("s^2*u + x"),
            Err(Error::Parse {
                pos: 8,
                msg: "unexpected character 'x'".into()
            })
        );
        assert!(matches!(parse_poly(""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_poly("s^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("1/0 s"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("s + "), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("2 *"), Err(Error::Parse { .. })));
    }

    #[test]
    fn signs_and_cancellation() {
        assert_eq!(parse_poly("-s*u + 2 s u").unwrap().to_string(), "s*u");
        assert!(parse_poly("s*u - s*u").unwrap().is_zero());
        assert_eq!(parse_poly("0").unwrap().to_string(), "0");
        assert_eq!(parse_poly("+ t").unwrap().to_string(), "t");
    }
}
