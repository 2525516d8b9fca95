//! Element expressions, e.g. `T[2,1]*1[k=1,0]`, `C[s=(1,2)|k=0,0]*[D]`,
//! `(v^2-1)*T[1] + 3*v^-1*1[0]`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' int)?
//! atom   := int | 'v' | '[D]' | 'T[' word ']' | '1[' kappa ']'
//!         | 'C[s=(' letters ')|' kappa ']' | '(' expr ')'
//! kappa  := ('k=')? int (',' int)*
//! ```
//!
//! Words and letters use 1-based simple indices; `e` is the identity letter.
//! `v` takes any integer exponent, other factors only non-negative ones.
//! The renderer's output parses back to the same element.

use crate::error::{Error, Result};
use crate::extended::{self, ExtElt};
use crate::hecke::{self, HeckeElt};
use crate::laurent::LaurentInt;
use crate::monodromy::{MonodromicDatum, MonodromyClass};

pub fn parse(md: &MonodromicDatum, src: &str) -> Result<ExtElt> {
    let mut p = Parser { md, src: src.as_bytes(), pos: 0 };
    let x = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(x)
}

/// Parses an expression that must lie in degree 0, i.e. in `Hₙ`.
pub fn parse_hecke(md: &MonodromicDatum, src: &str) -> Result<HeckeElt> {
    let x = parse(md, src)?;
    if x.components().any(|(i, h)| i != 0 && !h.is_zero()) {
        return Err(Error::Parse { offset: 0, msg: "expression involves [D]".into() });
    }
    Ok(x.component(0))
}

struct Parser<'a> {
    md: &'a MonodromicDatum,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { offset: self.pos, msg: msg.to_string() }
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
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
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { offset: start, msg: "number too large".into() })
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let u = self.uint()? as i64;
        Ok(if neg { -u } else { u })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'(') {
            let e = self.int()?;
            self.expect(b')')?;
            Ok(e)
        } else {
            self.int()
        }
    }

    fn expr(&mut self) -> Result<ExtElt> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExtElt> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            let rhs = self.unary()?;
            acc = extended::ext_mul(self.md, &acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ExtElt> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn scalar(&self, c: LaurentInt) -> ExtElt {
        ExtElt::from_hecke(hecke::unit(self.md).scale(&c))
    }

    fn power(&mut self) -> Result<ExtElt> {
        match self.peek() {
            Some(b'v') => {
                self.pos += 1;
                let k = if self.eat(b'^') { self.exponent()? } else { 1 };
                let k = i32::try_from(k).map_err(|_| self.err("exponent out of range"))?;
                Ok(self.scalar(LaurentInt::v_pow(k)))
            }
            _ => {
                let base = self.atom()?;
                if !self.eat(b'^') {
                    return Ok(base);
                }
                let k = self.uint()?;
                let mut acc = self.scalar(LaurentInt::one());
                for _ in 0..k {
                    acc = extended::ext_mul(self.md, &acc, &base);
                }
                Ok(acc)
            }
        }
    }

    fn atom(&mut self) -> Result<ExtElt> {
        let md = self.md;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(b')')?;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n = self.uint()?;
                if n == 1 && self.peek() == Some(b'[') {
                    self.pos += 1;
                    let l = self.kappa()?;
                    self.expect(b']')?;
                    return Ok(ExtElt::from_hecke(HeckeElt::idempotent(l)));
                }
                let n = i64::try_from(n).map_err(|_| Error::Parse { offset: start, msg: "number too large".into() })?;
                Ok(self.scalar(LaurentInt::constant(n)))
            }
            Some(b'[') => {
                if !self.eat_str("[D]") {
                    return Err(self.err("expected `[D]`"));
                }
                Ok(extended::d_pow(md, 1))
            }
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'[')?;
                let letters = self.letters(b']')?;
                self.expect(b']')?;
                let word: Vec<usize> = letters.into_iter().flatten().collect();
                Ok(ExtElt::from_hecke(hecke::t_w(md, md.datum().from_word(&word)?)))
            }
            Some(b'C') => {
                self.pos += 1;
                self.expect(b'[')?;
                if !self.eat_str("s=") {
                    return Err(self.err("expected `s=`"));
                }
                self.expect(b'(')?;
                let letters = self.letters(b')')?;
                self.expect(b')')?;
                self.expect(b'|')?;
                let l = self.kappa()?;
                self.expect(b']')?;
                Ok(ExtElt::from_hecke(hecke::c_word(md, &letters, l)))
            }
            _ => Err(self.err("expected an element")),
        }
    }

    /// Comma-separated 1-based letters (or `e`) up to `close`, not consumed.
    fn letters(&mut self, close: u8) -> Result<Vec<Option<usize>>> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            if self.eat(b'e') {
                out.push(None);
            } else {
                let i = self.uint()? as usize;
                let m = self.md.datum().semisimple_rank();
                if i == 0 || i > m {
                    return Err(Error::UnknownIndex(i, m));
                }
                out.push(Some(i - 1));
            }
            if !self.eat(b',') {
                return Ok(out);
            }
        }
    }

    fn kappa(&mut self) -> Result<MonodromyClass> {
        self.eat_str("k=");
        let mut kappa = vec![self.int()?];
        while self.eat(b',') {
            kappa.push(self.int()?);
        }
        self.md.class(&kappa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::RootDatum;

    fn a1(n: u32) -> MonodromicDatum {
        let d = RootDatum::new(1, vec![vec![2]], vec![vec![1]]).unwrap();
        MonodromicDatum::untwisted(d, n).unwrap()
    }

    fn a2_flip(n: u32) -> MonodromicDatum {
        let d = RootDatum::new(2, vec![vec![2, -1], vec![-1, 2]], vec![vec![1, 0], vec![0, 1]])
            .unwrap();
        MonodromicDatum::new(d, n, vec![0, 1, 1, 0], 2).unwrap()
    }

    #[test]
    fn products() {
        let md = a1(2);
        let h = parse_hecke(&md, "T[1]*T[1]").unwrap();
        assert_eq!(hecke::render(&md, &h), "v^2*T[]*1[0] + v^2*T[]*1[1] + (v^2-1)*T[1]*1[0]");
        assert!(parse_hecke(&md, "1[0]*1[1]").unwrap().is_zero());
        assert_eq!(parse_hecke(&md, "1*T[1]").unwrap(), hecke::t_w(&md, md.datum().simple(0)));
        assert_eq!(parse_hecke(&md, "1[k=1]").unwrap(), HeckeElt::idempotent(md.class(&[1]).unwrap()));
    }

    #[test]
    fn scalars_and_powers() {
        let md = a1(1);
        let x = parse_hecke(&md, "v^-2 - 3*v + (v)^2").unwrap();
        assert_eq!(x, hecke::unit(&md).scale(&"v^2-3*v+v^-2".parse().unwrap()));
        assert_eq!(parse_hecke(&md, "v^(-1)*v").unwrap(), hecke::unit(&md));
        assert_eq!(parse_hecke(&md, "-(2)").unwrap(), hecke::unit(&md).scale(&LaurentInt::constant(-2)));
        assert_eq!(parse_hecke(&md, "T[1]^0").unwrap(), hecke::unit(&md));
    }

    #[test]
    fn c_words_and_twist() {
        let md = a2_flip(2);
        let l = md.class(&[0, 0]).unwrap();
        let c = parse_hecke(&md, "C[s=(1,2)|k=0,0]").unwrap();
        assert_eq!(c, hecke::c_word(&md, &[Some(0), Some(1)], l));
        assert_eq!(parse_hecke(&md, "C[s=(1,e)|0,0]").unwrap(), hecke::c_word(&md, &[Some(0), None], l));
        let x = parse(&md, "[D]*T[1]").unwrap();
        let y = parse(&md, "T[2]*[D]").unwrap();
        assert_eq!(x, y);
        assert_eq!(parse(&md, "[D]^2").unwrap(), parse(&md, "1").unwrap());
        assert!(parse_hecke(&md, "[D]").is_err());
    }

    #[test]
    fn render_round_trip() {
        let md = a2_flip(2);
        let x = parse(&md, "(T[1]+v^-1*1[1,0])*C[s=(2,1)|k=1,1]*[D] - T[1,2]").unwrap();
        let text = extended::render(&md, &x);
        assert_eq!(parse(&md, &text).unwrap(), x);
    }

    #[test]
    fn errors() {
        let md = a1(2);
        assert!(matches!(parse(&md, "T[2]"), Err(Error::UnknownIndex(2, 1))));
        assert!(matches!(parse(&md, "T[1"), Err(Error::Parse { .. })));
        assert!(matches!(parse(&md, "T[1] T[1]"), Err(Error::Parse { offset: 5, .. })));
        assert!(matches!(parse(&md, "1[0,0]"), Err(Error::InvalidClass(_))));
        assert!(matches!(parse(&md, ""), Err(Error::Parse { offset: 0, .. })));
    }
}
