//! Exact rational functions in `v` over `ℚ` and sparse row reduction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::LaurentInt;

/// Dense polynomial in `v` with rational coefficients, lowest degree first,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![BigRational::one()])
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut v = vec![BigRational::zero(); deg];
        v.push(c);
        Self::from_coeffs(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dl = d.lead().expect("division by zero polynomial").clone();
        let dd = d.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (j, x) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * x;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            None => QPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, v: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * v + c)
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})v^{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Element of `ℚ(v)`, stored as `num/den` with `gcd = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let l = den.lead().unwrap().recip();
        num = num.scale(&l);
        den = den.scale(&l);
        RatFunc { num, den }
    }

    pub fn from_laurent(x: &LaurentInt) -> Self {
        let Some(lo) = x.min_exp() else {
            return Self::zero();
        };
        let shift = lo.min(0);
        let deg = (x.max_exp().unwrap() - shift) as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (e, c) in x.terms() {
            coeffs[(e - shift) as usize] = BigRational::from_integer(c.clone());
        }
        let num = QPoly::from_coeffs(coeffs);
        let den = QPoly::monomial(BigRational::one(), (-shift) as usize);
        Self::new(num, den)
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> RatFunc {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        self.mul(&o.inv())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] / [{:?}]", self.num, self.den)
    }
}

fn lcm_poly(a: &QPoly, b: &QPoly) -> QPoly {
    let g = a.gcd(b);
    a.mul(b).div_rem(&g).0.monic()
}

/// Scales a vector over `ℚ(v)` by a common factor so that all entries are
/// integer polynomials with content 1, returned as Laurent polynomials.
pub fn clear_denominators<K: Ord + Clone>(vec: &BTreeMap<K, RatFunc>) -> BTreeMap<K, LaurentInt> {
    let common = vec
        .values()
        .fold(QPoly::one(), |acc, x| lcm_poly(&acc, x.denominator()));
    let polys: Vec<(K, QPoly)> = vec
        .iter()
        .map(|(k, x)| (k.clone(), x.numerator().mul(&common.div_rem(x.denominator()).0)))
        .collect();
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for (_, p) in &polys {
        for c in p.coeffs() {
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    let ints: Vec<(K, Vec<BigInt>)> = polys
        .into_iter()
        .map(|(k, p)| {
            let cs: Vec<BigInt> = p
                .coeffs()
                .iter()
                .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
                .collect();
            (k, cs)
        })
        .collect();
    for (_, cs) in &ints {
        for c in cs {
            num_gcd = num_gcd.gcd(c);
        }
    }
    if num_gcd.is_zero() {
        num_gcd = BigInt::one();
    }
    ints.into_iter()
        .map(|(k, cs)| {
            let terms = cs
                .into_iter()
                .enumerate()
                .map(|(e, c)| (e as i32, c / &num_gcd));
            (k, LaurentInt::from_terms(terms))
        })
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Sparse vector over `ℚ(v)` indexed by column.
pub type SparseVec = BTreeMap<usize, RatFunc>;

/// Reduced row echelon basis of a subspace of `ℚ(v)^N`.
#[derive(Clone, Default, Debug)]
pub struct Subspace {
    /// pivot column → row with a 1 at the pivot and zeros at other pivots.
    rows: BTreeMap<usize, SparseVec>,
}

fn axpy(target: &mut SparseVec, a: &RatFunc, x: &SparseVec) {
    for (&c, xv) in x {
        let delta = a.mul(xv);
        let slot = target.entry(c).or_insert_with(RatFunc::zero);
        *slot = slot.add(&delta);
        if slot.is_zero() {
            target.remove(&c);
        }
    }
}

impl Subspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after elimination against the current rows; it
    /// vanishes at every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = r.get(p).cloned() {
                axpy(&mut r, &c.neg(), row);
            }
        }
        r
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, pv)) = r.iter().next() else {
            return false;
        };
        let inv = pv.inv();
        let row: SparseVec = r.iter().map(|(&c, x)| (c, x.mul(&inv))).collect();
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&p).cloned() {
                axpy(other, &c.neg(), &row);
            }
        }
        self.rows.insert(p, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// A linear functional vanishing on the span but not on `v`, if `v` is
    /// not in the span.
    pub fn separating_functional(&self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.reduce(v);
        let (&j, _) = r.iter().next()?;
        let mut f = SparseVec::new();
        f.insert(j, RatFunc::one());
        for (&p, row) in &self.rows {
            if let Some(x) = row.get(&j) {
                f.insert(p, x.neg());
            }
        }
        Some(f)
    }
}

pub fn apply_functional(f: &SparseVec, v: &SparseVec) -> RatFunc {
    f.iter()
        .filter_map(|(c, a)| v.get(c).map(|b| a.mul(b)))
        .fold(RatFunc::zero(), |acc, x| acc.add(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        RatFunc::from_laurent(&s.parse().unwrap())
    }

    #[test]
    fn field_operations() {
        let a = rf("v^2-1");
        let b = rf("v-1");
        let q = a.div(&b);
        assert_eq!(q, rf("v+1"));
        assert_eq!(rf("v^-2").mul(&rf("v^2")), RatFunc::one());
        assert_eq!(a.sub(&a), RatFunc::zero());
        let x = rf("v+2").div(&rf("v^3-v"));
        assert_eq!(x.mul(&rf("v^3-v")), rf("v+2"));
        assert_eq!(x.add(&x.neg()), RatFunc::zero());
    }

    #[test]
    fn subspace_membership_and_witness() {
        let mut s = Subspace::new();
        let v1: SparseVec = [(0, rf("1")), (1, rf("v"))].into_iter().collect();
        let v2: SparseVec = [(1, rf("1")), (2, rf("v^-1"))].into_iter().collect();
        assert!(s.insert(&v1));
        assert!(s.insert(&v2));
        assert!(!s.insert(&v1));
        let combo: SparseVec = {
            let mut c = SparseVec::new();
            axpy(&mut c, &rf("v^2+1"), &v1);
            axpy(&mut c, &rf("v-3"), &v2);
            c
        };
        assert!(s.contains(&combo));
        let outside: SparseVec = [(2, rf("1"))].into_iter().collect();
        assert!(!s.contains(&outside));
        let f = s.separating_functional(&outside).unwrap();
        assert!(apply_functional(&f, &v1).is_zero());
        assert!(apply_functional(&f, &v2).is_zero());
        assert!(!apply_functional(&f, &outside).is_zero());
        let cleared = clear_denominators(&f);
        assert!(cleared.values().all(|x| x.min_exp().unwrap() >= 0));
    }
}
