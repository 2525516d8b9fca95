//! Subexpression combinatorics for parabolic restriction.
//!
//! Positions in a sequence `𝐬 = (s_1, …, s_r)` are 0-based in this API
//! (position `i` here is `i+1` in the usual notation). A letter is
//! `Some(s)` for a simple reflection and `None` for `1`.
//!
//! For the transported class `ʸλ` attached to `y = y_0 ∈ ᴶW` we use `y·λ`
//! under the action of [`MonodromicDatum::act_w`]. With it, `t_1⋯t_r[D]`
//! fixes `ʸλ` on every admissible sequence; the inverse reading `y⁻¹·λ`
//! already fails this on the flipped A2 datum with `n = 2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::hecke::{self, HeckeElt};
use crate::laurent::LaurentInt;
use crate::monodromy::{ExtendedWeyl, MonodromicDatum, MonodromyClass};
use crate::root_datum::{CosetStep, SimpleSet, WeylElt};

/// Word in `𝕀 ∪ {1}`.
pub type SeqS = Vec<Option<usize>>;

/// Parses `1,2,e` (1-based simple indices; `e` or `1`-free letter `e` for
/// the identity). An empty string is the empty word.
pub fn parse_seq(src: &str, rank: usize) -> Result<SeqS> {
    let src = src.trim();
    if src.is_empty() {
        return Ok(Vec::new());
    }
    src.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok == "e" {
                return Ok(None);
            }
            let i: usize = tok.parse().map_err(|_| Error::InvalidSequence(format!("bad letter `{tok}`")))?;
            if i == 0 || i > rank {
                return Err(Error::UnknownIndex(i, rank));
            }
            Ok(Some(i - 1))
        })
        .collect()
}

/// Renders a word as `(1,e,2)`.
pub fn fmt_seq(ss: &[Option<usize>]) -> String {
    let parts: Vec<String> = ss
        .iter()
        .map(|s| s.map_or("e".to_string(), |s| (s + 1).to_string()))
        .collect();
    format!("({})", parts.join(","))
}

/// A sequence `(y_0, …, y_r)` in `ᴶW`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SeqY(pub Vec<WeylElt>);

impl SeqY {
    pub fn first(&self) -> WeylElt {
        self.0[0]
    }

    pub fn last(&self) -> WeylElt {
        *self.0.last().unwrap()
    }

    pub fn render(&self, md: &MonodromicDatum) -> String {
        let parts: Vec<String> = self.0.iter().map(|&y| md.datum().word_string(y)).collect();
        parts.join(";")
    }
}

/// An admissible pair `(𝐲, 𝐭)` together with `s̃` and the descent count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XiEntry {
    pub yy: SeqY,
    pub tt: SeqS,
    pub ts: SeqS,
    pub delta: usize,
}

/// `(𝒥, 𝒥₁, 𝒥₂, 𝒦⁰)` for a sequence.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Partition {
    pub j: BTreeSet<usize>,
    pub j1: BTreeSet<usize>,
    pub j2: BTreeSet<usize>,
    pub k0: BTreeSet<usize>,
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &BTreeSet<usize>| {
            let v: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", v.join(","))
        };
        write!(
            f,
            "J={} J1={} J2={} K0={}",
            show(&self.j),
            show(&self.j1),
            show(&self.j2),
            show(&self.k0)
        )
    }
}

fn check_word(md: &MonodromicDatum, ss: &[Option<usize>]) -> Result<()> {
    for s in ss.iter().flatten() {
        md.datum().check_simple(*s)?;
    }
    Ok(())
}

fn require_simple_word(md: &MonodromicDatum, ss: &[Option<usize>]) -> Result<Vec<usize>> {
    check_word(md, ss)?;
    ss.iter()
        .map(|s| s.ok_or_else(|| Error::InvalidSequence("expected simple reflections only".into())))
        .collect()
}

/// Product of the letters of a word (identities skipped).
pub fn word_product(md: &MonodromicDatum, ss: &[Option<usize>]) -> WeylElt {
    let d = md.datum();
    ss.iter()
        .flatten()
        .fold(d.identity(), |w, &s| d.rmul(w, s))
}

/// `s_r ⋯ s_{k+1} s_k s_{k+1} ⋯ s_r`.
pub fn palindrome(md: &MonodromicDatum, ss: &[Option<usize>], k: usize) -> Result<WeylElt> {
    check_word(md, ss)?;
    let sk = ss
        .get(k)
        .copied()
        .flatten()
        .ok_or_else(|| Error::InvalidSequence(format!("position {} is not a simple reflection", k + 1)))?;
    let d = md.datum();
    let tail = word_product(md, &ss[k + 1..]);
    Ok(d.conjugate(d.inverse(tail), d.simple(sk)))
}

/// `s̃_r ⋯ s̃_{k+1} s_k s̃_{k+1} ⋯ s̃_r`.
pub fn tilde_palindrome(
    md: &MonodromicDatum,
    ss: &[Option<usize>],
    ts: &[Option<usize>],
    k: usize,
) -> Result<WeylElt> {
    if ss.len() != ts.len() {
        return Err(Error::InvalidSequence("s and s-tilde differ in length".into()));
    }
    let mut mixed: SeqS = ts.to_vec();
    mixed[k] = ss[k];
    palindrome(md, &mixed, k)
}

/// Positive root `β_j` with `s_β = s_r⋯s_j⋯s_r`, as a root index.
pub fn beta_j(md: &MonodromicDatum, ss: &[Option<usize>], j: usize) -> Result<usize> {
    check_word(md, ss)?;
    let sj = ss
        .get(j)
        .copied()
        .flatten()
        .ok_or_else(|| Error::InvalidSequence(format!("position {} is not a simple reflection", j + 1)))?;
    let d = md.datum();
    let w = d.inverse(word_product(md, &ss[j + 1..]));
    let simple_idx = d
        .root_index(d.simple_root(sj))
        .ok_or_else(|| Error::Internal("simple root missing".into()))?;
    Ok(d.positive_of(d.apply_root(w, simple_idx)))
}

/// `𝒥_𝐬`: positions `j` with `s_j ∈ 𝕀` whose palindromic reflection lies in
/// `ε(W_λ) = W_{[D]λ}`. Decided both by the inversion-set criterion and by
/// the root `β_j`; the two must agree.
pub fn j_ss(md: &MonodromicDatum, ss: &[Option<usize>], lambda: MonodromyClass) -> Result<BTreeSet<usize>> {
    check_word(md, ss)?;
    let dl = md.act_delta(lambda);
    let mut out = BTreeSet::new();
    for (j, s) in ss.iter().enumerate() {
        if s.is_none() {
            continue;
        }
        let via_group = md.in_w_lambda(palindrome(md, ss, j)?, dl);
        let via_root = md.root_in_r_lambda(beta_j(md, ss, j)?, dl);
        if via_group != via_root {
            return Err(Error::Internal(format!(
                "membership of position {} disagrees between the two criteria",
                j + 1
            )));
        }
        if via_group {
            out.insert(j);
        }
    }
    Ok(out)
}

/// `𝐬_𝒥`: letters at positions in `subset` replaced by `1`.
pub fn ss_subset(ss: &[Option<usize>], subset: &BTreeSet<usize>) -> Result<SeqS> {
    for &i in subset {
        if ss.get(i).copied().flatten().is_none() {
            return Err(Error::InvalidSequence(format!(
                "position {} is not a simple reflection",
                i + 1
            )));
        }
    }
    Ok(ss
        .iter()
        .enumerate()
        .map(|(i, &s)| if subset.contains(&i) { None } else { s })
        .collect())
}

/// All sequences in `ᴶW` starting at `y0` with `y_i ∈ {y_{i−1}, y_{i−1}s_i}`.
pub fn enum_branches(md: &MonodromicDatum, ss: &[Option<usize>], j: SimpleSet, y0: WeylElt) -> Result<Vec<SeqY>> {
    let word = require_simple_word(md, ss)?;
    let d = md.datum();
    d.check_subset(j)?;
    if !d.is_min_coset_rep(y0, j) {
        return Err(Error::NotMinimalRep(d.word_string(y0)));
    }
    let mut partial: Vec<Vec<WeylElt>> = vec![vec![y0]];
    for &s in &word {
        let mut next = Vec::with_capacity(partial.len() * 2);
        for seq in partial {
            let y = *seq.last().unwrap();
            let mut stay = seq.clone();
            stay.push(y);
            next.push(stay);
            let ys = d.rmul(y, s);
            if d.is_min_coset_rep(ys, j) {
                let mut mv = seq;
                mv.push(ys);
                next.push(mv);
            }
        }
        partial = next;
    }
    Ok(partial.into_iter().map(SeqY).collect())
}

/// Sequences in `ᴶW` with `y_i ∈ {y_{i−1}, y_{i−1}s_i}` and `y_r = ε(y_0)`.
pub fn enum_yy(md: &MonodromicDatum, ss: &[Option<usize>], j: SimpleSet) -> Result<Vec<SeqY>> {
    let mut out = Vec::new();
    for y0 in md.datum().min_coset_reps(j) {
        for yy in enum_branches(md, ss, j, y0)? {
            if yy.last() == md.eps(y0) {
                out.push(yy);
            }
        }
    }
    Ok(out)
}

fn check_shape(md: &MonodromicDatum, yy: &SeqY, word: &[usize], j: SimpleSet) -> Result<()> {
    let d = md.datum();
    if yy.0.len() != word.len() + 1 {
        return Err(Error::InvalidSequence("y-sequence must have length r+1".into()));
    }
    for &y in &yy.0 {
        if !d.is_min_coset_rep(y, j) {
            return Err(Error::NotMinimalRep(d.word_string(y)));
        }
    }
    for (i, &s) in word.iter().enumerate() {
        let (a, b) = (yy.0[i], yy.0[i + 1]);
        if b != a && b != d.rmul(a, s) {
            return Err(Error::InvalidSequence(format!("step {} is neither stay nor move", i + 1)));
        }
    }
    Ok(())
}

/// `(s̃, 𝐭)`: `s̃_i = s_i` iff `y_{i−1}s_i ∈ W_J y_i`, and
/// `t_i = y_{i−1} s̃_i y_i⁻¹`; the latter is cross-checked against
/// `t_i = y_{i−1}s_iy_{i−1}⁻¹` when `y_{i−1}s_i ∈ W_J y_{i−1}`, else `1`.
pub fn derive_tt(md: &MonodromicDatum, yy: &SeqY, ss: &[Option<usize>], j: SimpleSet) -> Result<(SeqS, SeqS)> {
    let word = require_simple_word(md, ss)?;
    check_shape(md, yy, &word, j)?;
    let d = md.datum();
    let same_coset = |a: WeylElt, b: WeylElt| d.in_parabolic(d.mul(a, d.inverse(b)), j);
    let mut ts = Vec::with_capacity(word.len());
    let mut tt = Vec::with_capacity(word.len());
    for (i, &s) in word.iter().enumerate() {
        let (prev, cur) = (yy.0[i], yy.0[i + 1]);
        let ps = d.rmul(prev, s);
        let tilde = if same_coset(ps, cur) { Some(s) } else { None };
        let tilde_elt = tilde.map_or(d.identity(), |s| d.simple(s));
        let t_general = d.mul(d.mul(prev, tilde_elt), d.inverse(cur));
        let t_direct = if same_coset(ps, prev) {
            d.mul(ps, d.inverse(prev))
        } else {
            d.identity()
        };
        if t_general != t_direct {
            return Err(Error::Internal(format!("the two definitions of t_{} disagree", i + 1)));
        }
        let t = if t_direct == d.identity() {
            None
        } else {
            match d.as_simple(t_direct) {
                Some(t) if j.contains(t) => Some(t),
                _ => {
                    return Err(Error::Internal(format!("t_{} is not in J", i + 1)));
                }
            }
        };
        ts.push(tilde);
        tt.push(t);
    }
    Ok((ts, tt))
}

/// `#{i : y_{i−1}s_i ∈ ᴶW, y_{i−1}s_i < y_{i−1}}`.
pub fn descent_count(md: &MonodromicDatum, yy: &SeqY, ss: &[Option<usize>], j: SimpleSet) -> Result<usize> {
    let word = require_simple_word(md, ss)?;
    check_shape(md, yy, &word, j)?;
    let d = md.datum();
    let mut n = 0;
    for (i, &s) in word.iter().enumerate() {
        if d.classify_ys(yy.0[i], s, j)? == CosetStep::Descent {
            n += 1;
        }
    }
    Ok(n)
}

/// `#{i : y_is_i ∈ ᴶW, y_is_i < y_i}` (the count taken at the end of each step).
pub fn descent_count_after(md: &MonodromicDatum, yy: &SeqY, ss: &[Option<usize>], j: SimpleSet) -> Result<usize> {
    let word = require_simple_word(md, ss)?;
    check_shape(md, yy, &word, j)?;
    let d = md.datum();
    let mut n = 0;
    for (i, &s) in word.iter().enumerate() {
        if d.classify_ys(yy.0[i + 1], s, j)? == CosetStep::Descent {
            n += 1;
        }
    }
    Ok(n)
}

/// `δ(𝐲)` for a closed sequence (`y_r = ε(y_0)`); both counts are computed
/// and must agree.
pub fn delta_y(md: &MonodromicDatum, yy: &SeqY, ss: &[Option<usize>], j: SimpleSet) -> Result<usize> {
    let before = descent_count(md, yy, ss, j)?;
    if yy.last() != md.eps(yy.first()) {
        return Err(Error::InvalidSequence("sequence does not satisfy y_r = eps(y_0)".into()));
    }
    let after = descent_count_after(md, yy, ss, j)?;
    if before != after {
        return Err(Error::Internal(format!(
            "descent counts disagree: {before} before vs {after} after"
        )));
    }
    Ok(before)
}

/// `𝒥 = {i : s̃_i = 1}`, split by the shape of `y_{i−1}s_i` into ascents
/// `𝒥₁` and descents `𝒥₂`, and `𝒦⁰ = {i : t_i ∈ J}`.
pub fn partition_sets(md: &MonodromicDatum, yy: &SeqY, ss: &[Option<usize>], j: SimpleSet) -> Result<Partition> {
    let (ts, tt) = derive_tt(md, yy, ss, j)?;
    let d = md.datum();
    let mut p = Partition::default();
    for (i, s) in ss.iter().enumerate() {
        let s = s.expect("checked by derive_tt");
        if tt[i].is_some() {
            p.k0.insert(i);
        }
        if ts[i].is_none() {
            p.j.insert(i);
            match d.classify_ys(yy.0[i], s, j)? {
                CosetStep::Ascent => {
                    p.j1.insert(i);
                }
                CosetStep::Descent => {
                    p.j2.insert(i);
                }
                CosetStep::Fold(_) => {
                    return Err(Error::Internal(format!("position {} is both in J and folded", i + 1)));
                }
            }
        }
    }
    if !p.j.is_disjoint(&p.k0) {
        return Err(Error::Internal("J and K0 intersect".into()));
    }
    Ok(p)
}

/// The branch requirement: `t_i = 1, y_{i−1} = y_i ⟹ s_i ∈ W_{s_{i+1}⋯s_r λ'}`.
pub fn branch_admissible(
    md: &MonodromicDatum,
    yy: &SeqY,
    ss: &[Option<usize>],
    tt: &[Option<usize>],
    lambda_prime: MonodromyClass,
) -> bool {
    let mut mu = lambda_prime;
    for i in (0..ss.len()).rev() {
        let s = ss[i].expect("simple word");
        if tt[i].is_none() && yy.0[i] == yy.0[i + 1] && !md.simple_in_w_lambda(s, mu) {
            return false;
        }
        mu = md.act_simple(s, mu);
    }
    true
}

/// One admissible branch from a fixed `y_0`, with its data.
#[derive(Clone, Debug)]
pub struct Branch {
    pub yy: SeqY,
    pub tt: SeqS,
    pub ts: SeqS,
    pub delta: usize,
}

/// Admissible branches from `y0` for the expansion of `T_{y0} C^𝐬_{λ'}`.
pub fn admissible_branches(
    md: &MonodromicDatum,
    ss: &[Option<usize>],
    j: SimpleSet,
    y0: WeylElt,
    lambda_prime: MonodromyClass,
) -> Result<Vec<Branch>> {
    let mut out = Vec::new();
    for yy in enum_branches(md, ss, j, y0)? {
        let (ts, tt) = derive_tt(md, &yy, ss, j)?;
        if branch_admissible(md, &yy, ss, &tt, lambda_prime) {
            let delta = descent_count(md, &yy, ss, j)?;
            out.push(Branch { yy, tt, ts, delta });
        }
    }
    Ok(out)
}

/// `Σ_𝐲 v^{2δ(𝐲)} C^𝐭_{y_rλ'}`, grouped by the end point `y_r`: the claimed
/// coefficients of `T_{y0} C^𝐬_{λ'}` in the basis `{T_y : y ∈ ᴶW}`.
pub fn branch_sum(
    md: &MonodromicDatum,
    ss: &[Option<usize>],
    j: SimpleSet,
    y0: WeylElt,
    lambda_prime: MonodromyClass,
) -> Result<BTreeMap<WeylElt, HeckeElt>> {
    let mut out: BTreeMap<WeylElt, HeckeElt> = BTreeMap::new();
    for b in admissible_branches(md, ss, j, y0, lambda_prime)? {
        let yr = b.yy.last();
        let c = hecke::c_word(md, &b.tt, md.act_w(yr, lambda_prime)).shift(2 * b.delta as i32);
        *out.entry(yr).or_default() += c;
    }
    out.retain(|_, h| !h.is_zero());
    Ok(out)
}

/// The closed form for `T_y C^s_{λ'}`:
/// `v^{2δ(y)} Σ_{y_1} C^{t_1}_{y_1λ'} T_{y_1}`, as an element of `Hₙ`.
pub fn single_step_closed_form(
    md: &MonodromicDatum,
    y: WeylElt,
    s: usize,
    lambda_prime: MonodromyClass,
    j: SimpleSet,
) -> Result<HeckeElt> {
    let d = md.datum();
    let step = d.classify_ys(y, s, j)?;
    let ys = d.rmul(y, s);
    let (t1, folded) = match step {
        CosetStep::Fold(t) => (Some(t), true),
        _ => (None, false),
    };
    let delta = (step == CosetStep::Descent) as i32;
    let mut out = HeckeElt::zero();
    for y1 in [y, ys] {
        if !d.is_min_coset_rep(y1, j) || (y1 == ys && folded) {
            continue;
        }
        if !folded && y1 == y && !md.simple_in_w_lambda(s, lambda_prime) {
            continue;
        }
        let c = hecke::c_elt(md, t1, md.act_w(y1, lambda_prime));
        out += hecke::mul(md, &c, &hecke::t_w(md, y1)).shift(2 * delta);
    }
    Ok(out)
}

/// The four direct shapes of `T_y C^s_{λ'}`:
/// `T_{ys}`, `v²T_{ys}`, `T_{ys}+T_y`, `v²(T_{ys}+T_y)`, times `1_{λ'}`.
pub fn single_step_case_form(md: &MonodromicDatum, y: WeylElt, s: usize, lambda_prime: MonodromyClass) -> HeckeElt {
    let d = md.datum();
    let ys = d.rmul(y, s);
    let mut h = HeckeElt::basis(ys, lambda_prime);
    if md.simple_in_w_lambda(s, lambda_prime) {
        h.add_term(y, lambda_prime, LaurentInt::one());
    }
    if d.length(ys) < d.length(y) {
        h = h.shift(2);
    }
    h
}

/// `Ξ`: closed sequences satisfying the branch requirement for `λ' = [D]λ`.
pub fn xi_set(md: &MonodromicDatum, ss: &[Option<usize>], lambda: MonodromyClass, j: SimpleSet) -> Result<Vec<XiEntry>> {
    let dl = md.act_delta(lambda);
    let mut out = Vec::new();
    for yy in enum_yy(md, ss, j)? {
        let (ts, tt) = derive_tt(md, &yy, ss, j)?;
        if branch_admissible(md, &yy, ss, &tt, dl) {
            let delta = delta_y(md, &yy, ss, j)?;
            out.push(XiEntry { yy, tt, ts, delta });
        }
    }
    Ok(out)
}

/// `Ψ = Σ_{Ξ} v^{2δ(𝐲)} C^𝐭_{y_r[D]λ}`, an element of `H_{J,n}`.
pub fn psi(md: &MonodromicDatum, ss: &[Option<usize>], lambda: MonodromyClass, j: SimpleSet) -> Result<HeckeElt> {
    let dl = md.act_delta(lambda);
    let mut out = HeckeElt::zero();
    for x in xi_set(md, ss, lambda, j)? {
        out += hecke::c_word(md, &x.tt, md.act_w(x.yy.last(), dl)).shift(2 * x.delta as i32);
    }
    Ok(out)
}

/// `𝒥_𝐭`: positions with `t_i ∈ J` whose palindromic reflection in `𝐭`
/// lies in `ε(W_{ʸλ})`, with `ʸλ = y_0·λ`.
pub fn j_tt(md: &MonodromicDatum, tt: &[Option<usize>], y0: WeylElt, lambda: MonodromyClass) -> Result<BTreeSet<usize>> {
    let target = md.act_delta(md.act_w(y0, lambda));
    let mut out = BTreeSet::new();
    for (i, t) in tt.iter().enumerate() {
        if t.is_some() && md.in_w_lambda(palindrome(md, tt, i)?, target) {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Whether `t_1⋯t_r[D]` fixes `ʸλ = y_0·λ`.
pub fn folded_word_stabilizes(md: &MonodromicDatum, yy: &SeqY, tt: &[Option<usize>], lambda: MonodromyClass) -> bool {
    let a = ExtendedWeyl {
        w: word_product(md, tt),
        d_power: 1 % md.omega(),
    };
    let ylambda = md.act_w(yy.first(), lambda);
    md.in_w_bullet_lambda(a, ylambda)
}

/// Whether `s_1⋯s_r[D]` fixes `λ`.
pub fn word_fixes_class(md: &MonodromicDatum, ss: &[Option<usize>], lambda: MonodromyClass) -> bool {
    let a = ExtendedWeyl {
        w: word_product(md, ss),
        d_power: 1 % md.omega(),
    };
    md.in_w_bullet_lambda(a, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::ParabolicContext;
    use crate::root_datum::RootDatum;

    fn a1(n: u32) -> MonodromicDatum {
        let d = RootDatum::new(1, vec![vec![2]], vec![vec![1]]).unwrap();
        MonodromicDatum::untwisted(d, n).unwrap()
    }

    fn a2(n: u32, flip: bool) -> MonodromicDatum {
        let d = RootDatum::new(2, vec![vec![2, -1], vec![-1, 2]], vec![vec![1, 0], vec![0, 1]])
            .unwrap();
        if flip {
            MonodromicDatum::new(d, n, vec![0, 1, 1, 0], 2).unwrap()
        } else {
            MonodromicDatum::untwisted(d, n).unwrap()
        }
    }

    fn words(m: usize, r: usize) -> Vec<SeqS> {
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

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn seq_parsing() {
        assert_eq!(parse_seq("1,e,2", 2).unwrap(), vec![Some(0), None, Some(1)]);
        assert_eq!(parse_seq("", 2).unwrap(), vec![]);
        assert!(parse_seq("3", 2).is_err());
        assert!(parse_seq("x", 2).is_err());
        assert_eq!(fmt_seq(&[Some(1), None]), "(2,e)");
    }

    #[test]
    fn j_ss_examples() {
        let md = a1(2);
        let l0 = md.class(&[0]).unwrap();
        let l1 = md.class(&[1]).unwrap();
        let ss = vec![Some(0), Some(0)];
        assert_eq!(j_ss(&md, &ss, l0).unwrap(), set(&[0, 1]));
        assert!(j_ss(&md, &ss, l1).unwrap().is_empty());
        let md = a2(3, true);
        let ss = vec![Some(0), None, Some(1)];
        assert_eq!(j_ss(&md, &ss, md.zero_class()).unwrap(), set(&[0, 2]));
    }

    #[test]
    fn beta_examples() {
        let md = a2(2, false);
        let d = md.datum();
        let ss = vec![Some(0), Some(1)];
        assert_eq!(d.root(beta_j(&md, &ss, 1).unwrap()).vector, d.simple_root(1));
        assert_eq!(d.root(beta_j(&md, &ss, 0).unwrap()).coords, vec![1, 1]);
        assert!(beta_j(&md, &[None], 0).is_err());
    }

    #[test]
    fn subset_and_palindromes() {
        let ss = vec![Some(0), Some(0)];
        assert_eq!(ss_subset(&ss, &set(&[])).unwrap(), ss);
        assert_eq!(ss_subset(&ss, &set(&[0])).unwrap(), vec![None, Some(0)]);
        assert_eq!(ss_subset(&ss, &set(&[0, 1])).unwrap(), vec![None, None]);
        assert!(ss_subset(&[None], &set(&[0])).is_err());

        let md = a2(2, false);
        let d = md.datum();
        let ss = vec![Some(0), Some(1)];
        assert_eq!(palindrome(&md, &ss, 1).unwrap(), d.simple(1));
        assert_eq!(palindrome(&md, &ss, 0).unwrap(), d.from_word(&[1, 0, 1]).unwrap());
        assert_eq!(
            tilde_palindrome(&md, &ss, &[None, Some(1)], 0).unwrap(),
            d.from_word(&[1, 0, 1]).unwrap()
        );
        assert_eq!(tilde_palindrome(&md, &ss, &[None, None], 0).unwrap(), d.simple(0));
    }

    #[test]
    fn enum_examples() {
        let md = a1(2);
        let d = md.datum();
        let (e, s) = (d.identity(), d.simple(0));
        let got = enum_yy(&md, &[Some(0)], SimpleSet::empty()).unwrap();
        assert_eq!(got, vec![SeqY(vec![e, e]), SeqY(vec![s, s])]);
        let got = enum_yy(&md, &[Some(0), Some(0)], d.full_set()).unwrap();
        assert_eq!(got, vec![SeqY(vec![e, e, e])]);
        let md = a2(2, true);
        for r in 0..=3 {
            for ss in words(2, r) {
                for j in SimpleSet::all_subsets(2) {
                    let n = md.datum().min_coset_reps(j).len();
                    assert!(enum_yy(&md, &ss, j).unwrap().len() <= n << r);
                }
            }
        }
    }

    #[test]
    fn derive_examples() {
        let md = a2(2, false);
        let d = md.datum();
        let e = d.identity();
        let full = d.full_set();
        let ss = vec![Some(0), Some(1), Some(0)];
        let yy = SeqY(vec![e; 4]);
        let (ts, tt) = derive_tt(&md, &yy, &ss, full).unwrap();
        assert_eq!(tt, ss);
        assert_eq!(ts, ss);
        for yy in enum_yy(&md, &ss, SimpleSet::empty()).unwrap() {
            let (_, tt) = derive_tt(&md, &yy, &ss, SimpleSet::empty()).unwrap();
            assert!(tt.iter().all(|t| t.is_none()));
        }
        let j = SimpleSet::from_indices([0]);
        let (_, tt) = derive_tt(&md, &SeqY(vec![e, e]), &[Some(0)], j).unwrap();
        assert_eq!(tt, vec![Some(0)]);
    }

    #[test]
    fn delta_examples() {
        let md = a1(2);
        let d = md.datum();
        let (e, s) = (d.identity(), d.simple(0));
        let j = SimpleSet::empty();
        assert_eq!(delta_y(&md, &SeqY(vec![s, s]), &[Some(0)], j).unwrap(), 1);
        assert_eq!(delta_y(&md, &SeqY(vec![e, e]), &[Some(0)], j).unwrap(), 0);
        assert_eq!(delta_y(&md, &SeqY(vec![e, s, e]), &[Some(0), Some(0)], j).unwrap(), 1);
        assert!(delta_y(&md, &SeqY(vec![e, s]), &[Some(0)], j).is_err());
    }

    #[test]
    fn partition_examples() {
        let md = a1(2);
        let d = md.datum();
        let e = d.identity();
        let p = partition_sets(&md, &SeqY(vec![e, e]), &[Some(0)], SimpleSet::empty()).unwrap();
        assert_eq!(p.j, set(&[0]));
        assert_eq!(p.j1, set(&[0]));
        assert!(p.k0.is_empty());
        let p = partition_sets(&md, &SeqY(vec![e, e]), &[Some(0)], d.full_set()).unwrap();
        assert!(p.j.is_empty());
        assert_eq!(p.k0, set(&[0]));
    }

    #[test]
    fn xi_and_psi_a1() {
        let md = a1(2);
        let d = md.datum();
        let (e, s) = (d.identity(), d.simple(0));
        let l0 = md.class(&[0]).unwrap();
        let l1 = md.class(&[1]).unwrap();
        let j = SimpleSet::empty();
        let xi = xi_set(&md, &[Some(0)], l0, j).unwrap();
        assert_eq!(xi.len(), 2);
        assert_eq!((xi[0].yy.clone(), xi[0].tt.clone(), xi[0].delta), (SeqY(vec![e, e]), vec![None], 0));
        assert_eq!((xi[1].yy.clone(), xi[1].tt.clone(), xi[1].delta), (SeqY(vec![s, s]), vec![None], 1));
        assert!(xi_set(&md, &[Some(0)], l1, j).unwrap().is_empty());
        let p = psi(&md, &[Some(0)], l0, j).unwrap();
        assert_eq!(hecke::render(&md, &p), "(v^2+1)*T[]*1[0]");
        assert!(psi(&md, &[Some(0)], l1, j).unwrap().is_zero());

        let ss = vec![Some(0), Some(0)];
        let xi = xi_set(&md, &ss, l1, d.full_set()).unwrap();
        assert_eq!(xi.len(), 1);
        assert_eq!((xi[0].tt.clone(), xi[0].delta), (ss.clone(), 0));
        assert_eq!(psi(&md, &ss, l1, d.full_set()).unwrap(), hecke::c_word(&md, &ss, l1));
    }

    #[test]
    fn single_step_forms_agree() {
        let md = a2(3, true);
        let d = md.datum();
        for j in SimpleSet::all_subsets(2) {
            for y in d.min_coset_reps(j) {
                for s in 0..2 {
                    for l in md.classes() {
                        let direct = hecke::mul(&md, &hecke::t_w(&md, y), &hecke::c_elt(&md, Some(s), l));
                        assert_eq!(single_step_closed_form(&md, y, s, l, j).unwrap(), direct);
                        assert_eq!(single_step_case_form(&md, y, s, l), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn branch_sum_matches_decomposition() {
        let md = a2(2, true);
        for j in SimpleSet::all_subsets(2) {
            let ctx = ParabolicContext::new(&md, j).unwrap();
            for r in 0..=3 {
                for ss in words(2, r) {
                    for l in md.classes() {
                        let c = hecke::c_word(&md, &ss, l);
                        for &y in ctx.reps() {
                            let direct = ctx.decompose_t(&hecke::mul(&md, &hecke::t_w(&md, y), &c));
                            assert_eq!(branch_sum(&md, &ss, j, y, l).unwrap(), direct);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn c_expansion_uses_j_ss() {
        let md = a2(3, true);
        for r in 0..=3 {
            for ss in words(2, r) {
                for l in md.classes() {
                    let js = j_ss(&md, &ss, l).unwrap();
                    let dl = md.act_delta(l);
                    let mut sum = HeckeElt::zero();
                    let members: Vec<usize> = js.iter().copied().collect();
                    for mask in 0..(1u32 << members.len()) {
                        let sub: BTreeSet<usize> = members
                            .iter()
                            .enumerate()
                            .filter(|(b, _)| mask >> b & 1 == 1)
                            .map(|(_, &i)| i)
                            .collect();
                        let word = ss_subset(&ss, &sub).unwrap();
                        // T(𝐬_𝒥) is a product of T_s's; expand it by left multiplication.
                        let mut x = HeckeElt::idempotent(dl);
                        for s in word.iter().rev().flatten() {
                            x = hecke::left_mul_ts(&md, *s, &x);
                        }
                        sum += x;
                    }
                    assert_eq!(sum, hecke::c_word(&md, &ss, dl));
                }
            }
        }
    }

    #[test]
    fn transport_reading_is_pinned() {
        let md = a2(2, true);
        let (mut direct, mut inverse, mut total) = (0, 0, 0);
        for r in 0..=3 {
            for ss in words(2, r) {
                for l in md.classes() {
                    if !word_fixes_class(&md, &ss, l) {
                        continue;
                    }
                    for j in SimpleSet::all_subsets(2) {
                        for x in xi_set(&md, &ss, l, j).unwrap() {
                            total += 1;
                            direct += folded_word_stabilizes(&md, &x.yy, &x.tt, l) as usize;
                            let y0 = x.yy.first();
                            let a = ExtendedWeyl { w: word_product(&md, &x.tt), d_power: 1 };
                            let yl = md.act_w(md.datum().inverse(y0), l);
                            inverse += md.in_w_bullet_lambda(a, yl) as usize;
                        }
                    }
                }
            }
        }
        assert!(total > 0);
        assert_eq!(direct, total);
        assert!(inverse < total);
    }
}
