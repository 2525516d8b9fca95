//! The twisted extension `Hₙ⟨[D]⟩`: elements `Σᵢ hᵢ[D]ⁱ` with
//! `[D] h [D]⁻¹ = 𝔞_D(h)`.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::hecke::{self, HeckeElt};
use crate::laurent::LaurentInt;
use crate::monodromy::{MonodromicDatum, MonodromyClass};

/// `Σᵢ hᵢ[D]ⁱ` with `i` in `0..ω`; zero components are not stored.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct ExtElt {
    components: BTreeMap<usize, HeckeElt>,
}

impl ExtElt {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `h[D]ⁱ`; the caller supplies `i` already reduced mod `ω`.
    pub fn graded(h: HeckeElt, i: usize) -> Self {
        let mut x = Self::zero();
        x.add_component(i, h);
        x
    }

    pub fn from_hecke(h: HeckeElt) -> Self {
        Self::graded(h, 0)
    }

    fn add_component(&mut self, i: usize, h: HeckeElt) {
        if h.is_zero() {
            return;
        }
        let slot = self.components.entry(i).or_default();
        *slot += h;
        if slot.is_zero() {
            self.components.remove(&i);
        }
    }

    pub fn component(&self, i: usize) -> HeckeElt {
        self.components.get(&i).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &HeckeElt)> {
        self.components.iter().map(|(&i, h)| (i, h))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = Self::zero();
        for (&i, h) in &self.components {
            out.add_component(i, h.scale(c));
        }
        out
    }

    pub fn shift(&self, k: i32) -> Self {
        let mut out = Self::zero();
        for (&i, h) in &self.components {
            out.add_component(i, h.shift(k));
        }
        out
    }
}

impl AddAssign<&ExtElt> for ExtElt {
    fn add_assign(&mut self, rhs: &ExtElt) {
        for (&i, h) in &rhs.components {
            self.add_component(i, h.clone());
        }
    }
}

impl SubAssign<&ExtElt> for ExtElt {
    fn sub_assign(&mut self, rhs: &ExtElt) {
        for (&i, h) in &rhs.components {
            self.add_component(i, -h);
        }
    }
}

impl Add<&ExtElt> for &ExtElt {
    type Output = ExtElt;
    fn add(self, rhs: &ExtElt) -> ExtElt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ExtElt {
    type Output = ExtElt;
    fn add(mut self, rhs: ExtElt) -> ExtElt {
        self += &rhs;
        self
    }
}

impl Sub<&ExtElt> for &ExtElt {
    type Output = ExtElt;
    fn sub(self, rhs: &ExtElt) -> ExtElt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ExtElt {
    type Output = ExtElt;
    fn sub(mut self, rhs: ExtElt) -> ExtElt {
        self -= &rhs;
        self
    }
}

impl Neg for &ExtElt {
    type Output = ExtElt;
    fn neg(self) -> ExtElt {
        ExtElt::zero() - self.clone()
    }
}

/// `𝔞_D(T_w 1_λ) = T_{ε(w)} 1_{[D]λ}`.
pub fn a_d(md: &MonodromicDatum, h: &HeckeElt) -> HeckeElt {
    h.map_keys(|w, l| (md.eps(w), md.act_delta(l)))
}

pub fn a_d_pow(md: &MonodromicDatum, i: usize, h: &HeckeElt) -> HeckeElt {
    (0..i % md.omega()).fold(h.clone(), |x, _| a_d(md, &x))
}

/// `[D]ⁱ` as an element.
pub fn d_pow(md: &MonodromicDatum, i: usize) -> ExtElt {
    ExtElt::graded(hecke::unit(md), i % md.omega())
}

pub fn ext_unit(md: &MonodromicDatum) -> ExtElt {
    d_pow(md, 0)
}

/// `(h[D]ⁱ)(h'[D]ʲ) = h·𝔞_Dⁱ(h')[D]^{i+j}`.
pub fn ext_mul(md: &MonodromicDatum, x: &ExtElt, y: &ExtElt) -> ExtElt {
    let omega = md.omega();
    let mut out = ExtElt::zero();
    for (i, h) in x.components() {
        for (j, h2) in y.components() {
            let prod = hecke::mul(md, h, &a_d_pow(md, i, h2));
            out.add_component((i + j) % omega, prod);
        }
    }
    out
}

pub fn ext_bar(md: &MonodromicDatum, x: &ExtElt) -> ExtElt {
    let mut out = ExtElt::zero();
    for (i, h) in x.components() {
        out.add_component(i, hecke::bar(md, h));
    }
    out
}

/// Deterministic rendering with `*[D]` / `*[D]^i` suffixes for nonzero grades.
pub fn render(md: &MonodromicDatum, x: &ExtElt) -> String {
    let suffixes: BTreeMap<usize, String> = x
        .components()
        .map(|(i, _)| {
            let s = match i {
                0 => String::new(),
                1 => "*[D]".to_string(),
                i => format!("*[D]^{i}"),
            };
            (i, s)
        })
        .collect();
    hecke::render_terms(
        md,
        x.components()
            .flat_map(|(i, h)| h.terms().map(move |(w, l, c)| (w, l, c, i)))
            .map(|(w, l, c, i)| (w, l, c, suffixes[&i].as_str())),
    )
}

/// Result of splitting `C^𝐬_{[D]λ}` at position `p`.
#[derive(Clone, Debug)]
pub struct Rotation {
    /// The rotated word `(s_p,…,s_r, ε(s_1),…,ε(s_{p−1}))`.
    pub ss: Vec<Option<usize>>,
    /// `λ' = s_{p−1}⋯s_1 λ`.
    pub lambda: MonodromyClass,
}

fn eps_letter(md: &MonodromicDatum, s: Option<usize>) -> Option<usize> {
    s.map(|s| md.eps_simple(s))
}

/// Cyclic rotation of `(𝐬, λ)` at a split `1 ≤ p ≤ r+1`.
pub fn rotate(
    md: &MonodromicDatum,
    ss: &[Option<usize>],
    lambda: MonodromyClass,
    p: usize,
) -> Result<Rotation> {
    let r = ss.len();
    if p == 0 || p > r + 1 {
        return Err(Error::SplitOutOfRange(p, r + 1));
    }
    let mut rotated: Vec<Option<usize>> = ss[p - 1..].to_vec();
    rotated.extend(ss[..p - 1].iter().map(|&s| eps_letter(md, s)));
    let lambda = ss[..p - 1]
        .iter()
        .fold(lambda, |mu, s| s.map_or(mu, |s| md.act_simple(s, mu)));
    Ok(Rotation { ss: rotated, lambda })
}

/// `(h, h')` with `h = a_1⋯a_{p−1}`, `h' = a_p⋯a_r` and
/// `a_i = C^{s_i}_{s_{i+1}⋯s_r[D]λ}`, so that `h·h' = C^𝐬_{[D]λ}`.
pub fn split_factors(
    md: &MonodromicDatum,
    ss: &[Option<usize>],
    lambda: MonodromyClass,
    p: usize,
) -> Result<(HeckeElt, HeckeElt)> {
    let r = ss.len();
    if p == 0 || p > r + 1 {
        return Err(Error::SplitOutOfRange(p, r + 1));
    }
    let dl = md.act_delta(lambda);
    let right = hecke::c_word(md, &ss[p - 1..], dl);
    let mid = hecke::c_word_target(md, &ss[p - 1..], dl);
    let left = hecke::c_word(md, &ss[..p - 1], mid);
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{RootDatum, WeylElt};

    fn a2(n: u32, flip: bool) -> MonodromicDatum {
        let d = RootDatum::new(2, vec![vec![2, -1], vec![-1, 2]], vec![vec![1, 0], vec![0, 1]])
            .unwrap();
        if flip {
            MonodromicDatum::new(d, n, vec![0, 1, 1, 0], 2).unwrap()
        } else {
            MonodromicDatum::untwisted(d, n).unwrap()
        }
    }

    fn basis(md: &MonodromicDatum) -> Vec<HeckeElt> {
        md.datum()
            .elements()
            .flat_map(|w| md.classes().map(move |l| HeckeElt::basis(w, l)))
            .collect()
    }

    fn words(m: usize, r: usize) -> Vec<Vec<Option<usize>>> {
        (0..r).fold(vec![vec![]], |acc, _| {
            acc.into_iter()
                .flat_map(|w| {
                    (0..m).map(move |s| {
                        let mut w = w.clone();
                        w.push(Some(s));
                        w
                    })
                })
                .collect()
        })
    }

    #[test]
    fn a_d_examples() {
        let md = a2(3, false);
        let b = basis(&md);
        for h in &b {
            let (w, l, _) = h.terms().next().unwrap();
            assert_eq!(a_d(&md, h), HeckeElt::basis(w, l));
        }
        let md = a2(3, true);
        let l = md.class(&[1, 2]).unwrap();
        let s1 = md.datum().simple(0);
        assert_eq!(
            a_d(&md, &HeckeElt::basis(s1, l)),
            HeckeElt::basis(md.datum().simple(1), md.class(&[2, 1]).unwrap())
        );
        for h in &b {
            assert_eq!(a_d_pow(&md, 2, h), *h);
        }
    }

    #[test]
    fn a_d_is_multiplicative_and_commutes_with_bar() {
        let md = a2(2, true);
        let b = basis(&md);
        for x in &b {
            assert_eq!(a_d(&md, &hecke::bar(&md, x)), hecke::bar(&md, &a_d(&md, x)));
            for y in &b {
                assert_eq!(
                    a_d(&md, &hecke::mul(&md, x, y)),
                    hecke::mul(&md, &a_d(&md, x), &a_d(&md, y))
                );
            }
        }
    }

    #[test]
    fn conjugation_by_d() {
        let md = a2(2, true);
        let d = d_pow(&md, 1);
        let d_inv = d_pow(&md, 1);
        for h in basis(&md) {
            let conj = ext_mul(&md, &ext_mul(&md, &d, &ExtElt::from_hecke(h.clone())), &d_inv);
            assert_eq!(conj, ExtElt::from_hecke(a_d(&md, &h)));
        }
        assert_eq!(ext_mul(&md, &d, &d), ext_unit(&md));
        let h = HeckeElt::basis(md.datum().simple(0), md.zero_class());
        let x = ExtElt::from_hecke(h.clone());
        assert_eq!(ext_mul(&md, &x, &x), ExtElt::from_hecke(hecke::mul(&md, &h, &h)));
    }

    #[test]
    fn ext_bar_is_ring_involution() {
        let md = a2(2, true);
        let b = basis(&md);
        let elts: Vec<ExtElt> = b
            .iter()
            .step_by(3)
            .flat_map(|h| [ExtElt::graded(h.clone(), 0), ExtElt::graded(h.clone(), 1)])
            .collect();
        for x in &elts {
            assert_eq!(ext_bar(&md, &ext_bar(&md, x)), *x);
            for y in &elts {
                assert_eq!(
                    ext_bar(&md, &ext_mul(&md, x, y)),
                    ext_mul(&md, &ext_bar(&md, x), &ext_bar(&md, y))
                );
            }
        }
        assert_eq!(ext_bar(&md, &d_pow(&md, 1)), d_pow(&md, 1));
    }

    #[test]
    fn rotation_bookkeeping() {
        let md = a2(3, true);
        let ss = vec![Some(0), Some(1), Some(1)];
        let l = md.class(&[1, 0]).unwrap();
        let rot = rotate(&md, &ss, l, 1).unwrap();
        assert_eq!((rot.ss.clone(), rot.lambda), (ss.clone(), l));
        let mut cur = Rotation { ss: ss.clone(), lambda: l };
        for _ in 0..ss.len() {
            cur = rotate(&md, &cur.ss, cur.lambda, 2).unwrap();
        }
        assert_eq!(cur.ss, vec![Some(1), Some(0), Some(0)]);
        assert_eq!(
            cur.lambda,
            md.act_w(md.datum().from_word(&[1, 1, 0]).unwrap(), l)
        );
        assert!(rotate(&md, &ss, l, 5).is_err());
        assert!(rotate(&md, &ss, l, 0).is_err());
        let rot = rotate(&md, &[Some(0)], l, 2).unwrap();
        assert_eq!(rot.ss, vec![Some(1)]);
        assert_eq!(rot.lambda, md.act_simple(0, l));
    }

    #[test]
    fn rotation_identity() {
        for md in [a2(2, true), a2(2, false)] {
            for r in 0..=3 {
                for ss in words(2, r) {
                    for l in md.classes() {
                        let c = hecke::c_word(&md, &ss, md.act_delta(l));
                        let fixed = hecke::c_word_target(&md, &ss, md.act_delta(l)) == l;
                        for p in 1..=r + 1 {
                            let (h, h2) = split_factors(&md, &ss, l, p).unwrap();
                            assert_eq!(hecke::mul(&md, &h, &h2), c);
                            let rot = rotate(&md, &ss, l, p).unwrap();
                            let rhs = hecke::mul(&md, &h2, &a_d(&md, &h));
                            if fixed {
                                let lhs = hecke::c_word(&md, &rot.ss, md.act_delta(rot.lambda));
                                assert_eq!(lhs, rhs);
                            } else {
                                assert!(rhs.is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bar_degree_identity() {
        let md = a2(2, true);
        for r in 0..=3 {
            for ss in words(2, r) {
                for l in md.classes() {
                    let x = ExtElt::graded(hecke::c_word(&md, &ss, md.act_delta(l)), 1);
                    assert_eq!(ext_bar(&md, &x), x.shift(-2 * r as i32));
                }
            }
        }
    }

    #[test]
    fn a_d_of_c_elements() {
        let md = a2(3, true);
        for s in 0..2 {
            for l in md.classes() {
                assert_eq!(
                    a_d(&md, &hecke::c_elt(&md, Some(s), l)),
                    hecke::c_elt(&md, Some(md.eps_simple(s)), md.act_delta(l))
                );
            }
        }
    }

    #[test]
    fn rendering() {
        let md = a2(2, true);
        let x = ExtElt::graded(HeckeElt::basis(WeylElt::IDENTITY, md.zero_class()), 1)
            + ExtElt::from_hecke(HeckeElt::basis(md.datum().simple(0), md.zero_class()).scale(&LaurentInt::v_pow(2)));
        assert_eq!(render(&md, &x), "v^2*T[1]*1[0,0] + T[]*1[0,0]*[D]");
        assert_eq!(render(&md, &ExtElt::zero()), "0");
    }
}
