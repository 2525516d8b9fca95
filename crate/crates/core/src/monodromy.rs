//! Monodromy classes `λ ∈ X/nX`, the diagram twist, and the extended Weyl
//! group acting on classes.
//!
//! A class is stored by its reduced representative `κ ∈ [0, n)^rank`; the
//! handle [`MonodromyClass`] indexes classes in lexicographic order of `κ`.
//! An element `(w, i)` of the extended group acts by `κ ↦ w(δⁱκ) mod n`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::root_datum::{pairing, RootDatum, WeylElt};

/// Upper bound on `n^rank`.
pub const MAX_CLASSES: usize = 1 << 20;

/// Handle to a class `λ`; ordered by `κ` lexicographically.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonodromyClass(pub(crate) u32);

impl MonodromyClass {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Element `w·[D]ⁱ` of the extended Weyl group.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtendedWeyl {
    pub w: WeylElt,
    pub d_power: usize,
}

#[derive(Clone, Debug)]
pub struct DiagramTwist {
    /// Row-major action of `[D]` on `X`.
    delta: Vec<i64>,
    /// `δ(α_i) = α_{eps[i]}`.
    eps: Vec<usize>,
    omega: usize,
}

impl DiagramTwist {
    pub fn matrix(&self) -> &[i64] {
        &self.delta
    }

    pub fn eps(&self, i: usize) -> usize {
        self.eps[i]
    }

    pub fn order(&self) -> usize {
        self.omega
    }

    pub fn is_trivial(&self) -> bool {
        let k = (self.delta.len() as f64).sqrt() as usize;
        (0..k).all(|r| (0..k).all(|c| self.delta[r * k + c] == (r == c) as i64))
    }
}

fn mat_apply(m: &[i64], x: &[i64]) -> Vec<i64> {
    let k = x.len();
    (0..k).map(|r| pairing(&m[r * k..(r + 1) * k], x)).collect()
}

fn mat_mul(a: &[i64], b: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0; k * k];
    for r in 0..k {
        for t in 0..k {
            for c in 0..k {
                out[r * k + c] += a[r * k + t] * b[t * k + c];
            }
        }
    }
    out
}

/// A root datum together with a modulus `n` and a diagram twist: the data
/// on which the monodromic Hecke algebra is built.
#[derive(Clone, Debug)]
pub struct MonodromicDatum {
    datum: RootDatum,
    n: u32,
    twist: DiagramTwist,
    kappas: Vec<Vec<i64>>,
    /// `simple_action[s][λ] = s·λ`.
    simple_action: Vec<Vec<u32>>,
    delta_action: Vec<u32>,
    delta_inv_action: Vec<u32>,
    /// `simple_in[s][λ] ⟺ s ∈ W_λ ⟺ ⟨ǎ_s, κ⟩ ≡ 0 (mod n)`.
    simple_in: Vec<Vec<bool>>,
    /// `eps_table[w] = ε(w)`.
    eps_table: Vec<u32>,
}

impl MonodromicDatum {
    /// Untwisted datum (`[D]` the identity, `ω = 1`).
    pub fn untwisted(datum: RootDatum, n: u32) -> Result<Self> {
        let k = datum.rank();
        let mut id = vec![0; k * k];
        for i in 0..k {
            id[i * k + i] = 1;
        }
        Self::new(datum, n, id, 1)
    }

    pub fn new(datum: RootDatum, n: u32, delta: Vec<i64>, omega: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidClass("modulus n must be positive".into()));
        }
        let k = datum.rank();
        let m = datum.semisimple_rank();
        if delta.len() != k * k {
            return Err(Error::InvalidTwist(format!("twist matrix must be {k}x{k}")));
        }
        if omega == 0 {
            return Err(Error::InvalidTwist("twist order must be positive".into()));
        }
        let mut eps = Vec::with_capacity(m);
        for i in 0..m {
            let img = mat_apply(&delta, datum.simple_root(i));
            let j = (0..m)
                .find(|&j| datum.simple_root(j) == img.as_slice())
                .ok_or_else(|| {
                    Error::InvalidTwist(format!("twist does not map simple root {} to a simple root", i + 1))
                })?;
            // δᵀ ǎ_{ε(i)} = ǎ_i, i.e. δ carries ǎ_i to ǎ_{ε(i)} contragrediently.
            let ct: Vec<i64> = (0..k)
                .map(|c| (0..k).map(|r| delta[r * k + c] * datum.simple_coroot(j)[r]).sum())
                .collect();
            if ct != datum.simple_coroot(i) {
                return Err(Error::InvalidTwist(format!(
                    "twist is not compatible with simple coroot {}",
                    i + 1
                )));
            }
            eps.push(j);
        }
        let mut seen = vec![false; m];
        for &j in &eps {
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidTwist("twist does not permute the simple roots".into()));
            }
        }
        let mut id = vec![0; k * k];
        for i in 0..k {
            id[i * k + i] = 1;
        }
        let mut power = id.clone();
        for _ in 0..omega {
            power = mat_mul(&power, &delta, k);
        }
        if power != id {
            return Err(Error::InvalidTwist(format!("twist matrix does not satisfy delta^{omega} = I")));
        }

        let count = (n as usize)
            .checked_pow(k as u32)
            .filter(|&c| c <= MAX_CLASSES)
            .ok_or_else(|| Error::ResourceBound(format!("n^rank = {n}^{k} classes")))?;
        let kappas: Vec<Vec<i64>> = (0..count)
            .map(|mut idx| {
                let mut kappa = vec![0i64; k];
                for slot in kappa.iter_mut().rev() {
                    *slot = (idx % n as usize) as i64;
                    idx /= n as usize;
                }
                kappa
            })
            .collect();

        let twist = DiagramTwist { delta, eps, omega };
        let mut md = MonodromicDatum {
            datum,
            n,
            twist,
            kappas,
            simple_action: Vec::new(),
            delta_action: Vec::new(),
            delta_inv_action: Vec::new(),
            simple_in: Vec::new(),
            eps_table: Vec::new(),
        };
        md.simple_action = (0..m)
            .map(|s| {
                let ms = md.datum.matrix(md.datum.simple(s)).to_vec();
                md.kappas.iter().map(|kp| md.class_of(&mat_apply(&ms, kp)).0).collect()
            })
            .collect();
        md.delta_action = md
            .kappas
            .iter()
            .map(|kp| md.class_of(&mat_apply(&md.twist.delta, kp)).0)
            .collect();
        let mut inv = vec![0u32; count];
        for (c, &d) in md.delta_action.iter().enumerate() {
            inv[d as usize] = c as u32;
        }
        md.delta_inv_action = inv;
        md.simple_in = (0..m)
            .map(|s| {
                md.kappas
                    .iter()
                    .map(|kp| pairing(md.datum.simple_coroot(s), kp).rem_euclid(n as i64) == 0)
                    .collect()
            })
            .collect();
        md.eps_table = md
            .datum
            .elements()
            .map(|w| {
                let word: Vec<usize> = md.datum.word(w).iter().map(|&s| md.twist.eps[s]).collect();
                md.datum.from_word(&word).map(|e| e.0)
            })
            .collect::<Result<_>>()?;
        // ε(w) must be realised by conjugation with δ.
        for w in md.datum.elements() {
            let lhs = mat_mul(&md.twist.delta, md.datum.matrix(w), k);
            let rhs = mat_mul(md.datum.matrix(md.eps(w)), &md.twist.delta, k);
            if lhs != rhs {
                return Err(Error::InvalidTwist("delta M_w delta^-1 != M_eps(w)".into()));
            }
        }
        Ok(md)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn twist(&self) -> &DiagramTwist {
        &self.twist
    }

    pub fn omega(&self) -> usize {
        self.twist.omega
    }

    pub fn num_classes(&self) -> usize {
        self.kappas.len()
    }

    pub fn classes(&self) -> impl Iterator<Item = MonodromyClass> {
        (0..self.kappas.len() as u32).map(MonodromyClass)
    }

    pub fn zero_class(&self) -> MonodromyClass {
        MonodromyClass(0)
    }

    pub fn kappa(&self, lambda: MonodromyClass) -> &[i64] {
        &self.kappas[lambda.index()]
    }

    /// The class of an arbitrary `κ ∈ X`.
    pub fn class_of(&self, kappa: &[i64]) -> MonodromyClass {
        let n = self.n as i64;
        let idx = kappa
            .iter()
            .fold(0i64, |acc, &x| acc * n + x.rem_euclid(n));
        MonodromyClass(idx as u32)
    }

    /// Validated class from user input.
    pub fn class(&self, kappa: &[i64]) -> Result<MonodromyClass> {
        if kappa.len() != self.datum.rank() {
            return Err(Error::InvalidClass(format!(
                "kappa has length {}, expected {}",
                kappa.len(),
                self.datum.rank()
            )));
        }
        Ok(self.class_of(kappa))
    }

    pub fn kappa_string(&self, lambda: MonodromyClass) -> String {
        let parts: Vec<String> = self.kappa(lambda).iter().map(|x| x.to_string()).collect();
        parts.join(",")
    }

    /// `s·λ` for a simple reflection.
    pub fn act_simple(&self, s: usize, lambda: MonodromyClass) -> MonodromyClass {
        MonodromyClass(self.simple_action[s][lambda.index()])
    }

    /// `w·λ`.
    pub fn act_w(&self, w: WeylElt, lambda: MonodromyClass) -> MonodromyClass {
        self.datum
            .word(w)
            .iter()
            .rev()
            .fold(lambda, |l, &s| self.act_simple(s, l))
    }

    /// `[D]λ`.
    pub fn act_delta(&self, lambda: MonodromyClass) -> MonodromyClass {
        MonodromyClass(self.delta_action[lambda.index()])
    }

    pub fn act_delta_inv(&self, lambda: MonodromyClass) -> MonodromyClass {
        MonodromyClass(self.delta_inv_action[lambda.index()])
    }

    /// `[D]ⁱλ`, `i` taken modulo `ω`.
    pub fn act_delta_pow(&self, i: usize, lambda: MonodromyClass) -> MonodromyClass {
        (0..i % self.omega()).fold(lambda, |l, _| self.act_delta(l))
    }

    pub fn act(&self, a: ExtendedWeyl, lambda: MonodromyClass) -> MonodromyClass {
        self.act_w(a.w, self.act_delta_pow(a.d_power, lambda))
    }

    /// `ε(w) = δ w δ⁻¹`.
    pub fn eps(&self, w: WeylElt) -> WeylElt {
        WeylElt(self.eps_table[w.index()])
    }

    pub fn eps_pow(&self, i: usize, w: WeylElt) -> WeylElt {
        (0..i % self.omega()).fold(w, |x, _| self.eps(x))
    }

    pub fn eps_simple(&self, s: usize) -> usize {
        self.twist.eps[s]
    }

    pub fn ext_identity(&self) -> ExtendedWeyl {
        ExtendedWeyl {
            w: self.datum.identity(),
            d_power: 0,
        }
    }

    /// `(w,i)(w',i') = (w·εⁱ(w'), i+i')`.
    pub fn ext_mul(&self, a: ExtendedWeyl, b: ExtendedWeyl) -> ExtendedWeyl {
        ExtendedWeyl {
            w: self.datum.mul(a.w, self.eps_pow(a.d_power, b.w)),
            d_power: (a.d_power + b.d_power) % self.omega(),
        }
    }

    pub fn ext_inverse(&self, a: ExtendedWeyl) -> ExtendedWeyl {
        let i = (self.omega() - a.d_power % self.omega()) % self.omega();
        ExtendedWeyl {
            w: self.eps_pow(i, self.datum.inverse(a.w)),
            d_power: i,
        }
    }

    /// Whether `⟨β̌, κ⟩ ≡ 0 (mod n)` for the root with index `root_idx`.
    pub fn root_in_r_lambda(&self, root_idx: usize, lambda: MonodromyClass) -> bool {
        let coroot = &self.datum.root(root_idx).coroot;
        pairing(coroot, self.kappa(lambda)).rem_euclid(self.n as i64) == 0
    }

    /// `R_λ` as a set of root indices.
    pub fn r_lambda(&self, lambda: MonodromyClass) -> BTreeSet<usize> {
        (0..self.datum.roots().len())
            .filter(|&i| self.root_in_r_lambda(i, lambda))
            .collect()
    }

    /// `s ∈ W_λ` for simple `s`.
    pub fn simple_in_w_lambda(&self, s: usize, lambda: MonodromyClass) -> bool {
        self.simple_in[s][lambda.index()]
    }

    /// Simple system of `R_λ ∩ R⁺`: the positive roots of `R_λ` that are not
    /// a sum of two positive roots of `R_λ`.
    pub fn lambda_simple_roots(&self, lambda: MonodromyClass) -> Vec<usize> {
        let d = &self.datum;
        let pos: Vec<usize> = (0..d.num_positive_roots())
            .filter(|&i| self.root_in_r_lambda(i, lambda))
            .collect();
        let vecs: BTreeSet<&[i64]> = pos.iter().map(|&i| d.root(i).vector.as_slice()).collect();
        pos.iter()
            .copied()
            .filter(|&b| {
                let vb = &d.root(b).vector;
                !pos.iter().any(|&g| {
                    let diff: Vec<i64> = vb.iter().zip(&d.root(g).vector).map(|(x, y)| x - y).collect();
                    vecs.contains(diff.as_slice())
                })
            })
            .collect()
    }

    /// `w ∈ W_λ = ⟨s_α : α ∈ R_λ⟩`. `w` must fix `λ`; then peel off
    /// reflections in simple roots of `R_λ⁺` that `w` makes negative until
    /// none is left. `w ∈ W_λ` iff what remains is the identity.
    pub fn in_w_lambda(&self, w: WeylElt, lambda: MonodromyClass) -> bool {
        if self.act_w(w, lambda) != lambda {
            return false;
        }
        let d = &self.datum;
        let simple = self.lambda_simple_roots(lambda);
        let mut w = w;
        while let Some(&b) = simple.iter().find(|&&b| !d.is_positive_root(d.apply_root(w, b))) {
            w = d.mul(w, d.reflection_of(b));
        }
        w == d.identity()
    }

    /// The inversion-set shortcut `N(w) ⊆ R_λ`. It implies `w ∈ W_λ` but is
    /// strictly stronger in general (reflections in non-simple roots of
    /// `R_λ` fail it); kept for comparison only.
    pub fn inversions_in_r_lambda(&self, w: WeylElt, lambda: MonodromyClass) -> bool {
        self.datum
            .inversion_set(w)
            .into_iter()
            .all(|i| self.root_in_r_lambda(i, lambda))
    }

    pub fn in_w_bullet_lambda(&self, a: ExtendedWeyl, lambda: MonodromyClass) -> bool {
        self.act(a, lambda) == lambda
    }

    pub fn w_lambda(&self, lambda: MonodromyClass) -> Vec<WeylElt> {
        self.datum
            .elements()
            .filter(|&w| self.in_w_lambda(w, lambda))
            .collect()
    }
}
