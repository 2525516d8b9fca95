//! Independent reference implementations used to cross-check the main code.
//!
//! Nothing here touches the precomputed group tables: elements are integer
//! matrices, lengths are Cayley-graph distances, and Hecke products follow the
//! one-strand rule `T_w T_s = T_{ws}` or `v²T_{ws} + (v²−1)T_w` directly.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

/// `k×k` integer matrix, row-major.
pub type Mat = Vec<i64>;

fn mat_mul(a: &[i64], b: &[i64], k: usize) -> Mat {
    let mut out = vec![0; k * k];
    for r in 0..k {
        for t in 0..k {
            let x = a[r * k + t];
            if x != 0 {
                for c in 0..k {
                    out[r * k + c] += x * b[t * k + c];
                }
            }
        }
    }
    out
}

fn identity(k: usize) -> Mat {
    let mut m = vec![0; k * k];
    for i in 0..k {
        m[i * k + i] = 1;
    }
    m
}

/// `I − α ǎᵀ`.
pub fn reflection_matrix(root: &[i64], coroot: &[i64]) -> Mat {
    let k = root.len();
    let mut m = identity(k);
    for r in 0..k {
        for c in 0..k {
            m[r * k + c] -= root[r] * coroot[c];
        }
    }
    m
}

/// The closure of a set of matrices under multiplication (a finite group).
pub fn generated_group(gens: &[Mat], k: usize) -> HashSet<Mat> {
    let mut seen: HashSet<Mat> = HashSet::from([identity(k)]);
    let mut queue = VecDeque::from([identity(k)]);
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let x = mat_mul(&w, g, k);
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    seen
}

/// Laurent polynomial as exponent → coefficient, no zero entries.
pub type Poly = BTreeMap<i32, i64>;

fn poly_add_into(acc: &mut Poly, p: &Poly, scale_exp: i32, scale: i64) {
    for (&e, &c) in p {
        let slot = acc.entry(e + scale_exp).or_insert(0);
        *slot += c * scale;
        if *slot == 0 {
            acc.remove(&(e + scale_exp));
        }
    }
}

/// The Iwahori–Hecke algebra of a Weyl group given by simple reflection
/// matrices, with `T_s² = v² + (v²−1)T_s`.
pub struct IwahoriHecke {
    k: usize,
    gens: Vec<Mat>,
    index: HashMap<Mat, usize>,
    elements: Vec<Mat>,
    length: Vec<usize>,
    /// A reduced word for each element (BFS parent chain).
    word: Vec<Vec<usize>>,
}

/// Element of [`IwahoriHecke`]: basis index → coefficient.
pub type IhElt = BTreeMap<usize, Poly>;

impl IwahoriHecke {
    pub fn new(gens: Vec<Mat>) -> Self {
        let k = (gens.first().map_or(0, |g| g.len()) as f64).sqrt() as usize;
        let mut index = HashMap::from([(identity(k), 0usize)]);
        let mut elements = vec![identity(k)];
        let mut length = vec![0];
        let mut word = vec![vec![]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let x = mat_mul(&elements[i], g, k);
                if !index.contains_key(&x) {
                    let j = elements.len();
                    index.insert(x.clone(), j);
                    elements.push(x);
                    length.push(length[i] + 1);
                    let mut w = word[i].clone();
                    w.push(s);
                    word.push(w);
                    queue.push_back(j);
                }
            }
        }
        IwahoriHecke { k, gens, index, elements, length, word }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn matrix(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.length[i]
    }

    fn right_mul_ts(&self, h: &IhElt, s: usize) -> IhElt {
        let mut out = IhElt::new();
        for (&w, c) in h {
            let ws = self.index[&mat_mul(&self.elements[w], &self.gens[s], self.k)];
            if self.length[ws] > self.length[w] {
                poly_add_into(out.entry(ws).or_default(), c, 0, 1);
            } else {
                poly_add_into(out.entry(ws).or_default(), c, 2, 1);
                let slot = out.entry(w).or_default();
                poly_add_into(slot, c, 2, 1);
                poly_add_into(slot, c, 0, -1);
            }
        }
        out.retain(|_, p| !p.is_empty());
        out
    }

    pub fn basis(&self, w: usize) -> IhElt {
        IhElt::from([(w, Poly::from([(0, 1)]))])
    }

    pub fn mul(&self, a: &IhElt, b: &IhElt) -> IhElt {
        let mut out = IhElt::new();
        for (&w, c) in b {
            let mut x = a.clone();
            for &s in &self.word[w] {
                x = self.right_mul_ts(&x, s);
            }
            for (u, p) in x {
                let mut scaled = Poly::new();
                for (&e1, &c1) in c {
                    poly_add_into(&mut scaled, &p, e1, c1);
                }
                poly_add_into(out.entry(u).or_default(), &scaled, 0, 1);
            }
        }
        out.retain(|_, p| !p.is_empty());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2_gens() -> Vec<Mat> {
        // Simple roots (2,-1), (-1,2); coroots the standard basis.
        vec![
            reflection_matrix(&[2, -1], &[1, 0]),
            reflection_matrix(&[-1, 2], &[0, 1]),
        ]
    }

    #[test]
    fn group_orders() {
        assert_eq!(generated_group(&a2_gens(), 2).len(), 6);
        let b2 = vec![
            reflection_matrix(&[1, -1], &[1, -1]),
            reflection_matrix(&[0, 1], &[0, 2]),
        ];
        assert_eq!(generated_group(&b2, 2).len(), 8);
        assert_eq!(IwahoriHecke::new(b2).order(), 8);
    }

    #[test]
    fn quadratic_relation() {
        let h = IwahoriHecke::new(a2_gens());
        let s = h.index_of(&a2_gens()[0]).unwrap();
        let sq = h.mul(&h.basis(s), &h.basis(s));
        assert_eq!(sq[&0], Poly::from([(2, 1)]));
        assert_eq!(sq[&s], Poly::from([(0, -1), (2, 1)]));
        let w0 = (0..6).find(|&i| h.length(i) == 3).unwrap();
        // T_{w0} is a product of three generators, T_{w0}² has full support.
        assert_eq!(h.mul(&h.basis(w0), &h.basis(w0)).len(), 6);
    }
}
