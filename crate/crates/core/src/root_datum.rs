//! Finite root data, their Weyl groups, and parabolic coset combinatorics.
//!
//! The character lattice `X` and cocharacter lattice `Y` are both `ℤ^rank`
//! with the dot product as pairing. The Weyl group is enumerated once at
//! construction; a [`WeylElt`] is a handle into that table, and each table
//! entry carries the action matrix on `X`, the length, and the
//! lexicographically smallest reduced word. Handles are numbered in
//! (length, word) order, so comparing handles compares in that order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on the Weyl group order we are willing to tabulate.
pub const MAX_GROUP_ORDER: usize = 500_000;

pub fn pairing(y: &[i64], x: &[i64]) -> i64 {
    y.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Formats a word of 0-based simple indices as `[2,1]` (1-based).
pub fn fmt_word(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// The root as a vector in `X`.
    pub vector: Vec<i64>,
    /// Its coroot in `Y`.
    pub coroot: Vec<i64>,
    /// Coordinates with respect to the simple roots.
    pub coords: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

/// Handle to an element of the Weyl group of a particular [`RootDatum`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylElt(pub(crate) u32);

impl WeylElt {
    pub const IDENTITY: WeylElt = WeylElt(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset `J` of the simple reflections, as a bitmask over 0-based indices.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimpleSet(u64);

impl SimpleSet {
    pub fn empty() -> Self {
        SimpleSet(0)
    }

    pub fn full(m: usize) -> Self {
        if m >= 64 {
            SimpleSet(u64::MAX)
        } else {
            SimpleSet((1u64 << m) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SimpleSet(it.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All subsets of `{0, …, m-1}`, in bitmask order.
    pub fn all_subsets(m: usize) -> impl Iterator<Item = SimpleSet> {
        (0..(1u64 << m)).map(SimpleSet)
    }
}

impl fmt::Debug for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Display for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The three possible shapes of `ys` for `y ∈ ᴶW` and simple `s`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CosetStep {
    /// `ys ∈ ᴶW` and `l(ys) > l(y)`.
    Ascent,
    /// `ys ∈ ᴶW` and `l(ys) < l(y)`.
    Descent,
    /// `ys ∉ ᴶW`; then `ys = t·y` for the contained simple index `t ∈ J`.
    Fold(usize),
}

#[derive(Clone, Debug)]
struct EltData {
    matrix: Vec<i64>,
    length: u32,
    word: Vec<usize>,
    inverse: u32,
    lmul: Vec<u32>,
    rmul: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    /// Positive roots first (by height, then coordinates), then their negatives
    /// in the same order.
    roots: Vec<Root>,
    root_lookup: HashMap<Vec<i64>, usize>,
    elts: Vec<EltData>,
    matrix_lookup: HashMap<Vec<i64>, u32>,
    root_reflection: Vec<u32>,
}

fn mat_mul(a: &[i64], b: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0; k * k];
    for r in 0..k {
        for t in 0..k {
            let x = a[r * k + t];
            if x == 0 {
                continue;
            }
            for c in 0..k {
                out[r * k + c] += x * b[t * k + c];
            }
        }
    }
    out
}

fn mat_apply(m: &[i64], x: &[i64]) -> Vec<i64> {
    let k = x.len();
    (0..k).map(|r| pairing(&m[r * k..(r + 1) * k], x)).collect()
}

fn identity_matrix(k: usize) -> Vec<i64> {
    let mut m = vec![0; k * k];
    for i in 0..k {
        m[i * k + i] = 1;
    }
    m
}

/// Matrix of `x ↦ x - ⟨coroot, x⟩·root` on `X`.
fn reflection_matrix(root: &[i64], coroot: &[i64]) -> Vec<i64> {
    let k = root.len();
    let mut m = identity_matrix(k);
    for r in 0..k {
        for c in 0..k {
            m[r * k + c] -= root[r] * coroot[c];
        }
    }
    m
}

/// Rank of an integer matrix given as rows, by fraction-free elimination.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let (a, b) = (m[rank][col], m[i][col]);
                for c in 0..ncols {
                    m[i][c] = m[i][c] * a - m[rank][c] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

impl RootDatum {
    /// Builds the datum, closes the simple roots under reflections, and
    /// enumerates the Weyl group.
    pub fn new(
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidDatum("rank must be positive".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidDatum(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        if simple_roots.len() > 32 {
            return Err(Error::InvalidDatum("at most 32 simple roots supported".into()));
        }
        for (i, (a, c)) in simple_roots.iter().zip(&simple_coroots).enumerate() {
            if a.len() != rank || c.len() != rank {
                return Err(Error::InvalidDatum(format!(
                    "simple root/coroot {} does not have length {rank}",
                    i + 1
                )));
            }
            if pairing(c, a) != 2 {
                return Err(Error::InvalidDatum(format!(
                    "<coroot_{0}, root_{0}> = {1}, expected 2",
                    i + 1,
                    pairing(c, a)
                )));
            }
        }
        if integer_rank(&simple_roots) != simple_roots.len() {
            return Err(Error::InvalidDatum("simple roots are linearly dependent".into()));
        }
        if integer_rank(&simple_coroots) != simple_coroots.len() {
            return Err(Error::InvalidDatum("simple coroots are linearly dependent".into()));
        }
        let mut datum = RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            roots: Vec::new(),
            root_lookup: HashMap::new(),
            elts: Vec::new(),
            matrix_lookup: HashMap::new(),
            root_reflection: Vec::new(),
        };
        datum.roots = datum.generate_roots()?;
        datum.root_lookup = datum
            .roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.vector.clone(), i))
            .collect();
        datum.enumerate_group()?;
        datum.root_reflection = datum
            .roots
            .iter()
            .map(|r| {
                let m = reflection_matrix(&r.vector, &r.coroot);
                datum.matrix_lookup.get(&m).copied().ok_or_else(|| {
                    Error::Internal(format!("reflection of {:?} missing from group", r.vector))
                })
            })
            .collect::<Result<_>>()?;
        Ok(datum)
    }

    /// Closure of the simple roots under simple reflections, with coroots
    /// reflected in parallel. Returns positive roots followed by negatives.
    fn generate_roots(&self) -> Result<Vec<Root>> {
        let m = self.simple_roots.len();
        let bound = 10 * m.max(1) * m.max(1);
        let mut seen: HashMap<Vec<i64>, Root> = HashMap::new();
        let mut frontier: Vec<Root> = (0..m)
            .map(|i| {
                let mut coords = vec![0; m];
                coords[i] = 1;
                Root {
                    vector: self.simple_roots[i].clone(),
                    coroot: self.simple_coroots[i].clone(),
                    coords,
                }
            })
            .collect();
        for r in &frontier {
            seen.insert(r.coords.clone(), r.clone());
        }
        let mut layers = 0;
        while !frontier.is_empty() {
            layers += 1;
            if layers > bound || seen.len() > bound {
                return Err(Error::NotFiniteType(format!(
                    "root closure did not terminate within {bound} steps"
                )));
            }
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..m {
                    let a = pairing(&self.simple_coroots[i], &beta.vector);
                    let b = pairing(&beta.coroot, &self.simple_roots[i]);
                    let mut vector = beta.vector.clone();
                    let mut coroot = beta.coroot.clone();
                    for t in 0..self.rank {
                        vector[t] -= a * self.simple_roots[i][t];
                        coroot[t] -= b * self.simple_coroots[i][t];
                    }
                    let mut coords = beta.coords.clone();
                    coords[i] -= a;
                    match seen.get(&coords) {
                        Some(old) => {
                            if old.coroot != coroot {
                                return Err(Error::InvalidDatum(format!(
                                    "root {:?} received two different coroots",
                                    old.vector
                                )));
                            }
                        }
                        None => {
                            let root = Root {
                                vector,
                                coroot,
                                coords: coords.clone(),
                            };
                            if !root.is_positive() && !root.coords.iter().all(|&c| c <= 0) {
                                return Err(Error::NotFiniteType(format!(
                                    "root with mixed-sign coordinates {:?}",
                                    root.coords
                                )));
                            }
                            seen.insert(coords, root.clone());
                            next.push(root);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut pos: Vec<Root> = seen.into_values().filter(|r| r.is_positive()).collect();
        pos.sort_by(|a, b| (a.height(), &a.coords).cmp(&(b.height(), &b.coords)));
        let neg: Vec<Root> = pos
            .iter()
            .map(|r| Root {
                vector: r.vector.iter().map(|x| -x).collect(),
                coroot: r.coroot.iter().map(|x| -x).collect(),
                coords: r.coords.iter().map(|x| -x).collect(),
            })
            .collect();
        pos.extend(neg);
        Ok(pos)
    }

    fn enumerate_group(&mut self) -> Result<()> {
        let k = self.rank;
        let m = self.simple_roots.len();
        let gens: Vec<Vec<i64>> = (0..m)
            .map(|i| reflection_matrix(&self.simple_roots[i], &self.simple_coroots[i]))
            .collect();

        // Breadth-first search; BFS depth is the Coxeter length.
        let mut mats: Vec<Vec<i64>> = vec![identity_matrix(k)];
        let mut depth: Vec<u32> = vec![0];
        let mut lookup: HashMap<Vec<i64>, u32> = HashMap::new();
        lookup.insert(mats[0].clone(), 0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let prod = mat_mul(&mats[w as usize], g, k);
                if !lookup.contains_key(&prod) {
                    if mats.len() >= MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
                    }
                    let id = mats.len() as u32;
                    lookup.insert(prod.clone(), id);
                    mats.push(prod);
                    depth.push(depth[w as usize] + 1);
                    queue.push_back(id);
                }
            }
        }
        let order = mats.len();
        let table = |v: &Vec<i64>| -> Result<u32> {
            lookup
                .get(v)
                .copied()
                .ok_or_else(|| Error::Internal("group not closed under products".into()))
        };
        let mut lmul = vec![vec![0u32; m]; order];
        let mut rmul = vec![vec![0u32; m]; order];
        for w in 0..order {
            for (s, g) in gens.iter().enumerate() {
                lmul[w][s] = table(&mat_mul(g, &mats[w], k))?;
                rmul[w][s] = table(&mat_mul(&mats[w], g, k))?;
            }
        }

        // Lexicographically smallest reduced word, found by peeling the
        // smallest left descent.
        let mut by_depth: Vec<usize> = (0..order).collect();
        by_depth.sort_by_key(|&w| depth[w]);
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); order];
        for &w in &by_depth {
            if depth[w] == 0 {
                continue;
            }
            let s = (0..m)
                .find(|&s| depth[lmul[w][s] as usize] < depth[w])
                .ok_or_else(|| Error::Internal("element without left descent".into()))?;
            let mut word = vec![s];
            word.extend_from_slice(&words[lmul[w][s] as usize]);
            words[w] = word;
        }

        let mut perm: Vec<usize> = (0..order).collect();
        perm.sort_by(|&a, &b| (depth[a], &words[a]).cmp(&(depth[b], &words[b])));
        let mut new_id = vec![0u32; order];
        for (new, &old) in perm.iter().enumerate() {
            new_id[old] = new as u32;
        }

        let pos_count = self.roots.len() / 2;
        let mut elts = Vec::with_capacity(order);
        for &old in &perm {
            let inversions = (0..pos_count)
                .filter(|&i| {
                    let img = mat_apply(&mats[old], &self.roots[i].vector);
                    self.root_lookup.get(&img).map_or(false, |&j| j >= pos_count)
                })
                .count();
            if inversions as u32 != depth[old] {
                return Err(Error::Internal(format!(
                    "inversion count {inversions} differs from word length {}",
                    depth[old]
                )));
            }
            elts.push(EltData {
                matrix: mats[old].clone(),
                length: depth[old],
                word: words[old].clone(),
                inverse: 0,
                lmul: lmul[old].iter().map(|&x| new_id[x as usize]).collect(),
                rmul: rmul[old].iter().map(|&x| new_id[x as usize]).collect(),
            });
        }
        self.matrix_lookup = elts
            .iter()
            .enumerate()
            .map(|(i, e)| (e.matrix.clone(), i as u32))
            .collect();
        // inverse via the reversed word
        for i in 0..order {
            let mut w = 0u32;
            for &s in elts[i].word.iter().rev() {
                w = elts[w as usize].rmul[s];
            }
            elts[i].inverse = w;
        }
        self.elts = elts;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple reflections.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_roots[i]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.simple_coroots[i]
    }

    /// All roots: positive roots first, then their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.roots.len() / 2]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn root_index(&self, vector: &[i64]) -> Option<usize> {
        self.root_lookup.get(vector).copied()
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    pub fn is_positive_root(&self, idx: usize) -> bool {
        idx < self.roots.len() / 2
    }

    /// Index of `-root(idx)`.
    pub fn negate_root(&self, idx: usize) -> usize {
        let half = self.roots.len() / 2;
        if idx < half {
            idx + half
        } else {
            idx - half
        }
    }

    /// Index of the positive root among `±root(idx)`.
    pub fn positive_of(&self, idx: usize) -> usize {
        idx % (self.roots.len() / 2)
    }

    pub fn check_simple(&self, s: usize) -> Result<()> {
        if s < self.semisimple_rank() {
            Ok(())
        } else {
            Err(Error::UnknownIndex(s + 1, self.semisimple_rank()))
        }
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt::IDENTITY
    }

    pub fn simple(&self, s: usize) -> WeylElt {
        WeylElt(self.elts[0].rmul[s])
    }

    pub fn order(&self) -> usize {
        self.elts.len()
    }

    /// All elements, in (length, word) order.
    pub fn elements(&self) -> impl Iterator<Item = WeylElt> + '_ {
        (0..self.elts.len() as u32).map(WeylElt)
    }

    pub fn element(&self, index: usize) -> WeylElt {
        assert!(index < self.elts.len());
        WeylElt(index as u32)
    }

    pub fn length(&self, w: WeylElt) -> usize {
        self.elts[w.index()].length as usize
    }

    /// Lexicographically smallest reduced word (0-based simple indices).
    pub fn word(&self, w: WeylElt) -> &[usize] {
        &self.elts[w.index()].word
    }

    pub fn word_string(&self, w: WeylElt) -> String {
        fmt_word(self.word(w))
    }

    /// Row-major `rank × rank` action matrix on `X`.
    pub fn matrix(&self, w: WeylElt) -> &[i64] {
        &self.elts[w.index()].matrix
    }

    pub fn from_matrix(&self, m: &[i64]) -> Option<WeylElt> {
        self.matrix_lookup.get(m).map(|&i| WeylElt(i))
    }

    /// Action on `X`.
    pub fn apply(&self, w: WeylElt, x: &[i64]) -> Vec<i64> {
        mat_apply(self.matrix(w), x)
    }

    /// Action on `Y` (contragredient: `⟨w·y, w·x⟩ = ⟨y, x⟩`).
    pub fn apply_coweight(&self, w: WeylElt, y: &[i64]) -> Vec<i64> {
        // w⁻¹ acts on X by M_{w⁻¹}; on Y, w acts by M_{w⁻¹}ᵀ.
        let m = self.matrix(self.inverse(w));
        let k = self.rank;
        (0..k).map(|c| (0..k).map(|r| m[r * k + c] * y[r]).sum()).collect()
    }

    /// Index of `w(root(idx))`.
    pub fn apply_root(&self, w: WeylElt, idx: usize) -> usize {
        let img = self.apply(w, &self.roots[idx].vector);
        self.root_lookup[&img]
    }

    pub fn mul(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        self.elts[b.index()]
            .word
            .iter()
            .fold(a, |acc, &s| self.rmul(acc, s))
    }

    pub fn inverse(&self, w: WeylElt) -> WeylElt {
        WeylElt(self.elts[w.index()].inverse)
    }

    /// `s·w`.
    pub fn lmul(&self, s: usize, w: WeylElt) -> WeylElt {
        WeylElt(self.elts[w.index()].lmul[s])
    }

    /// `w·s`.
    pub fn rmul(&self, w: WeylElt, s: usize) -> WeylElt {
        WeylElt(self.elts[w.index()].rmul[s])
    }

    /// `w a w⁻¹`.
    pub fn conjugate(&self, w: WeylElt, a: WeylElt) -> WeylElt {
        self.mul(self.mul(w, a), self.inverse(w))
    }

    /// Product of an arbitrary word of simple indices.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElt> {
        let mut w = self.identity();
        for &s in word {
            self.check_simple(s)?;
            w = self.rmul(w, s);
        }
        Ok(w)
    }

    pub fn is_left_descent(&self, s: usize, w: WeylElt) -> bool {
        self.length(self.lmul(s, w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: WeylElt, s: usize) -> bool {
        self.length(self.rmul(w, s)) < self.length(w)
    }

    /// `N(w) = {α > 0 : w(α) < 0}`, as root indices.
    pub fn inversion_set(&self, w: WeylElt) -> Vec<usize> {
        (0..self.num_positive_roots())
            .filter(|&i| !self.is_positive_root(self.apply_root(w, i)))
            .collect()
    }

    /// The reflection `s_α`; errors if `alpha` is not a root.
    pub fn reflection(&self, alpha: &[i64]) -> Result<WeylElt> {
        let idx = self
            .root_index(alpha)
            .ok_or_else(|| Error::NotARoot(alpha.to_vec()))?;
        Ok(self.reflection_of(idx))
    }

    pub fn reflection_of(&self, root_idx: usize) -> WeylElt {
        WeylElt(self.root_reflection[root_idx])
    }

    /// If `w` is a reflection, the index of its positive root.
    pub fn reflection_root(&self, w: WeylElt) -> Option<usize> {
        (0..self.num_positive_roots()).find(|&i| self.reflection_of(i) == w)
    }

    /// Index `s` if `w` is the simple reflection `s`.
    pub fn as_simple(&self, w: WeylElt) -> Option<usize> {
        match self.word(w) {
            [s] => Some(*s),
            _ => None,
        }
    }

    pub fn check_subset(&self, j: SimpleSet) -> Result<()> {
        match j.iter().find(|&s| s >= self.semisimple_rank()) {
            Some(s) => Err(Error::UnknownIndex(s + 1, self.semisimple_rank())),
            None => Ok(()),
        }
    }

    pub fn full_set(&self) -> SimpleSet {
        SimpleSet::full(self.semisimple_rank())
    }

    /// `w ∈ W_J`: every letter of a reduced word lies in `J`.
    pub fn in_parabolic(&self, w: WeylElt, j: SimpleSet) -> bool {
        self.word(w).iter().all(|&s| j.contains(s))
    }

    pub fn parabolic_elements(&self, j: SimpleSet) -> Vec<WeylElt> {
        self.elements().filter(|&w| self.in_parabolic(w, j)).collect()
    }

    /// `w ∈ ᴶW`: `w` is the minimal-length element of `W_J w`.
    pub fn is_min_coset_rep(&self, w: WeylElt, j: SimpleSet) -> bool {
        j.iter()
            .filter(|&s| s < self.semisimple_rank())
            .all(|s| !self.is_left_descent(s, w))
    }

    /// `ᴶW`, in (length, word) order.
    pub fn min_coset_reps(&self, j: SimpleSet) -> Vec<WeylElt> {
        self.elements()
            .filter(|&w| self.is_min_coset_rep(w, j))
            .collect()
    }

    /// `w = w_J · y` with `w_J ∈ W_J`, `y ∈ ᴶW`, lengths adding.
    pub fn coset_decompose(&self, w: WeylElt, j: SimpleSet) -> (WeylElt, WeylElt) {
        let mut wj = self.identity();
        let mut y = w;
        while let Some(s) = j
            .iter()
            .filter(|&s| s < self.semisimple_rank())
            .find(|&s| self.is_left_descent(s, y))
        {
            y = self.lmul(s, y);
            wj = self.rmul(wj, s);
        }
        (wj, y)
    }

    pub fn classify_ys(&self, y: WeylElt, s: usize, j: SimpleSet) -> Result<CosetStep> {
        self.check_simple(s)?;
        if !self.is_min_coset_rep(y, j) {
            return Err(Error::NotMinimalRep(self.word_string(y)));
        }
        let ys = self.rmul(y, s);
        if self.is_min_coset_rep(ys, j) {
            if self.length(ys) > self.length(y) {
                Ok(CosetStep::Ascent)
            } else {
                Ok(CosetStep::Descent)
            }
        } else {
            let t = self.mul(ys, self.inverse(y));
            match self.as_simple(t) {
                Some(t) if j.contains(t) => Ok(CosetStep::Fold(t)),
                _ => Err(Error::Internal(format!(
                    "ys y^-1 = {} is not a simple reflection in J",
                    self.word_string(t)
                ))),
            }
        }
    }

    /// Longest element.
    pub fn longest(&self) -> WeylElt {
        WeylElt(self.elts.len() as u32 - 1)
    }

    /// The set of roots `w(R⁺)`-images of `set`, as a sorted set of indices.
    pub fn map_roots(&self, w: WeylElt, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().map(|&i| self.apply_root(w, i)).collect()
    }
}
