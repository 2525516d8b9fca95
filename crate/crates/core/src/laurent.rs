//! Laurent polynomials in `v` with arbitrary-precision integer coefficients.
//!
//! The canonical form is an exponent-sorted map with no zero coefficients, so
//! structural equality is ring equality and hashing is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentInt {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The ring involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// `Some((c, k))` when `self = c·v^k` with `c = ±1`, i.e. `self` is a unit of the ring.
    pub fn as_unit(&self) -> Option<(i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, e))
        } else if (-c).is_one() {
            Some((-1, e))
        } else {
            None
        }
    }

    /// Multiplicative inverse, defined only for units `±v^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.as_unit().map(|(sign, e)| Self::monomial(sign, -e))
    }

    /// `Some((c, k))` when `self` has exactly one term.
    pub fn as_monomial(&self) -> Option<(&BigInt, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (c, e))
        } else {
            None
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for LaurentInt {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &'a LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(mut self, rhs: LaurentInt) -> LaurentInt {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl AddAssign for LaurentInt {
    fn add_assign(&mut self, rhs: LaurentInt) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentInt> for LaurentInt {
    fn sub_assign(&mut self, rhs: &LaurentInt) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl<'a> Sub<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &'a LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(mut self, rhs: LaurentInt) -> LaurentInt {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        LaurentInt {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        -&self
    }
}

impl<'a> Mul<&'a LaurentInt> for &'a LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &'a LaurentInt) -> LaurentInt {
        let mut out = LaurentInt::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &BigInt, e: i32, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if neg {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    if e == 0 {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    if e == 1 {
        write!(f, "v")
    } else {
        write!(f, "v^{e}")
    }
}

/// Renders as `c*v^k` terms with descending exponents, e.g. `v^2-1` or `-3*v+v^-2`.
impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            fmt_term(f, c, e, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct LaurentParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> LaurentParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            msg: msg.to_string(),
        }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<i32, Error> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = self.eat(b'-');
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let e: i32 = d.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }

    // term := INT ['*' 'v' ['^' EXP]] | 'v' ['^' EXP]
    fn term(&mut self) -> Result<(BigInt, i32), Error> {
        if let Some(d) = self.digits() {
            let c: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
            if self.eat(b'*') {
                if !self.eat(b'v') {
                    return Err(self.err("expected 'v' after '*'"));
                }
                let e = self.exponent()?;
                return Ok((c, e));
            }
            return Ok((c, 0));
        }
        if self.eat(b'v') {
            let e = self.exponent()?;
            return Ok((BigInt::one(), e));
        }
        Err(self.err("expected a term"))
    }

    fn poly(&mut self) -> Result<LaurentInt, Error> {
        let mut out = LaurentInt::zero();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (c, e) = self.term()?;
            out.add_term(e, c * sign);
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(out)
    }
}

impl FromStr for LaurentInt {
    type Err = Error;

    /// Accepts the grammar produced by `Display` (whitespace is ignored).
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = LaurentParser {
            src: s.as_bytes(),
            pos: 0,
        };
        p.poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentInt {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(lp("v^2-1") + LaurentInt::one(), lp("v^2"));
        let x = lp("3*v^-1+v");
        assert_eq!(LaurentInt::zero() + x.clone(), x);
        assert_eq!(lp("v^-2-1") + lp("v^2-1"), lp("v^2+v^-2-2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(LaurentInt::v() * LaurentInt::v_pow(-1), LaurentInt::one());
        assert_eq!(lp("v^2-1") * lp("v^2+1"), lp("v^4-1"));
        assert!((LaurentInt::zero() * lp("v+7")).is_zero());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp("v^2").bar(), lp("v^-2"));
        assert_eq!(lp("v^2-1").bar(), lp("v^-2-1"));
    }

    #[test]
    fn rendering() {
        assert_eq!(lp("v^2-1").to_string(), "v^2-1");
        assert_eq!(lp("1+v^2").to_string(), "v^2+1");
        assert_eq!(lp("-v").to_string(), "-v");
        assert_eq!(lp("-3*v^-2 + 2").to_string(), "2-3*v^-2");
        assert_eq!(LaurentInt::zero().to_string(), "0");
        assert_eq!(lp("v^1").to_string(), "v");
    }

    #[test]
    fn parse_errors() {
        assert!("v^".parse::<LaurentInt>().is_err());
        assert!("2*".parse::<LaurentInt>().is_err());
        assert!("v v".parse::<LaurentInt>().is_err());
        assert!("".parse::<LaurentInt>().is_err());
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let x = lp("v+1").pow(200);
        assert_eq!(x.num_terms(), 201);
        let mid = x.coeff(100);
        assert!(mid > BigInt::from(u128::MAX));
    }

    #[test]
    fn unit_inverse() {
        assert_eq!(lp("-v^3").unit_inverse(), Some(lp("-v^-3")));
        assert_eq!(lp("v+1").unit_inverse(), None);
        assert_eq!(lp("2").unit_inverse(), None);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentInt> {
        prop::collection::vec((-6i32..6, -5i64..5), 0..5).prop_map(LaurentInt::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_ring_involution(a in arb_laurent(), b in arb_laurent()) {
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!(a.bar().bar(), a.clone());
        }

        #[test]
        fn display_parse_round_trip(a in arb_laurent()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<LaurentInt>().unwrap(), a);
        }
    }
}
