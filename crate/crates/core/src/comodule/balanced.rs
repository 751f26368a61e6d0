//! Tensor products balanced over a subalgebra. Equality is decided by
//! membership in the span of balancing relators up to a degree bound.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::ncalg::linalg::{Echelon, Indexer, Inserted, SVec};
use crate::ncalg::{is_finite, tensor_basis, test_basis, Alg, NcPoly, TKey, Tensor};

/// A balancing between factors `pos` and `pos + 1`: generator j of the base
/// acts by right multiplication with `left[j]` on factor `pos` and by left
/// multiplication with `right[j]` on factor `pos + 1`.
#[derive(Clone, Debug)]
pub struct Joint {
    pub pos: usize,
    pub left: Vec<NcPoly>,
    pub right: Vec<NcPoly>,
}

/// A family of relators indexed by basis keys and a generator index, for
/// balancings that are not given by multiplication on adjacent factors.
#[derive(Clone)]
pub struct CustomJoint {
    /// Degree of generator i; the relator at key k has degree deg(k) + degrees[i].
    pub degrees: Vec<u32>,
    pub relator: Rc<dyn Fn(&TKey, usize) -> Tensor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Equal,
    Unequal(Tensor),
    /// Not in the relator span at the bound; the reduced residue is kept.
    Undecided(Tensor),
}

impl Decision {
    pub fn is_equal(&self) -> bool {
        matches!(self, Decision::Equal)
    }
}

struct State {
    done: Option<u32>,
    idx: Indexer<TKey>,
    ech: Echelon,
    relators: usize,
}

pub struct Balanced {
    pub name: String,
    pub algs: Vec<Alg>,
    joints: Vec<Joint>,
    custom: Vec<CustomJoint>,
    /// Largest degree up to which relators are generated.
    pub cap: u32,
    full: Option<u32>,
    state: RefCell<State>,
}

impl Balanced {
    pub fn new(name: &str, algs: Vec<Alg>, joints: Vec<Joint>, cap: u32) -> Self {
        let full = algs.iter().map(top_degree).collect::<Option<Vec<u32>>>().map(|t| t.iter().sum());
        let state = State { done: None, idx: Indexer::new(), ech: Echelon::new(), relators: 0 };
        Balanced { name: name.into(), algs, joints, custom: Vec::new(), cap, full, state: RefCell::new(state) }
    }

    pub fn with_custom(mut self, j: CustomJoint) -> Self {
        self.custom.push(j);
        self
    }

    /// A⊗_B A' for one balancing.
    pub fn pair(name: &str, left: Alg, right: Alg, lgen: Vec<NcPoly>, rgen: Vec<NcPoly>, cap: u32) -> Self {
        let joints = if lgen.is_empty() { Vec::new() } else { alloc::vec![Joint { pos: 0, left: lgen, right: rgen }] };
        Self::new(name, alloc::vec![left, right], joints, cap)
    }

    /// Equality is decided exactly: no balancing, or all factors finite.
    pub fn is_complete(&self) -> bool {
        self.is_plain() || self.full.is_some()
    }

    pub fn is_plain(&self) -> bool {
        self.joints.is_empty() && self.custom.is_empty()
    }

    /// (degree, family, index) of every relator generator, joints first.
    fn generators(&self) -> Vec<(u32, usize, usize)> {
        let mut out = Vec::new();
        for (ji, j) in self.joints.iter().enumerate() {
            for i in 0..j.left.len() {
                out.push((self.gen_degree(j, i), ji, i));
            }
        }
        for (ci, c) in self.custom.iter().enumerate() {
            for (i, &g) in c.degrees.iter().enumerate() {
                out.push((g, self.joints.len() + ci, i));
            }
        }
        out
    }

    fn make_relator(&self, key: &TKey, family: usize, i: usize) -> Tensor {
        if family < self.joints.len() {
            self.relator(key, family, i)
        } else {
            (self.custom[family - self.joints.len()].relator)(key, i)
        }
    }

    pub fn arity(&self) -> usize {
        self.algs.len()
    }

    pub fn degree(&self, t: &Tensor) -> u32 {
        t.max_degree(&self.algs)
    }

    pub fn fmt(&self, t: &Tensor) -> String {
        t.fmt_with(&self.algs)
    }

    /// Keys of the tensor basis of degree ≤ d (all keys when complete).
    pub fn keys(&self, d: u32) -> Vec<TKey> {
        match self.full {
            Some(f) => tensor_basis(&self.algs, f),
            None => tensor_basis(&self.algs, d),
        }
    }

    fn gen_degree(&self, j: &Joint, i: usize) -> u32 {
        let l = self.algs[j.pos].pres().poly_degree(&j.left[i]);
        let r = self.algs[j.pos + 1].pres().poly_degree(&j.right[i]);
        l.max(r)
    }

    /// x·l_i ⊗ y − x ⊗ r_i·y on the basis key.
    pub fn relator(&self, key: &TKey, joint: usize, i: usize) -> Tensor {
        let j = &self.joints[joint];
        let mut t = Tensor::zero(self.arity());
        let (la, ra) = (&self.algs[j.pos], &self.algs[j.pos + 1]);
        let xl = la.mul(&NcPoly::word(key[j.pos].clone()), &j.left[i]);
        for (w, c) in xl.terms() {
            let mut k = key.clone();
            k[j.pos] = w.clone();
            t.add_term(k, c);
        }
        let ry = ra.mul(&j.right[i], &NcPoly::word(key[j.pos + 1].clone()));
        for (w, c) in ry.terms() {
            let mut k = key.clone();
            k[j.pos + 1] = w.clone();
            t.add_term(k, &-c);
        }
        t
    }

    /// All relators on keys with key degree + generator degree ≤ d.
    pub fn relators(&self, d: u32) -> Vec<Tensor> {
        let mut out = Vec::new();
        for (g, family, i) in self.generators() {
            if self.full.is_none() && g > d {
                continue;
            }
            let kd = if self.full.is_some() { d } else { d - g };
            for key in self.keys(kd) {
                let r = self.make_relator(&key, family, i);
                if !r.is_zero() {
                    out.push(r);
                }
            }
        }
        out
    }

    fn key_degree(&self, k: &TKey) -> u32 {
        k.iter().zip(&self.algs).map(|(w, a)| a.degree(w)).sum()
    }

    /// Generates relators up to degree `d` (everything when complete).
    pub fn ensure(&self, d: u32) {
        let d = self.full.unwrap_or_else(|| d.min(self.cap));
        let mut st = self.state.borrow_mut();
        if st.done.is_some_and(|done| done >= d) || self.is_plain() {
            return;
        }
        let prev = st.done;
        // keys with larger leading factors get smaller indices, so they are
        // the ones eliminated
        let mut keys = self.keys(d);
        keys.sort_by(|a, b| b.cmp(a));
        for k in &keys {
            st.idx.index(k);
        }
        let mut n = st.relators as u32;
        for (g, family, i) in self.generators() {
            for key in &keys {
                let kd = self.key_degree(key) + g;
                if (self.full.is_none() && kd > d) || prev.is_some_and(|p| kd <= p) {
                    continue;
                }
                let r = self.make_relator(key, family, i);
                if r.is_zero() {
                    continue;
                }
                let v = r.to_svec(&mut st.idx);
                st.ech.insert(v, n);
                n += 1;
            }
        }
        st.relators = n as usize;
        st.done = Some(d);
    }

    /// Number of relators and the rank of their span at the current bound.
    pub fn relator_stats(&self) -> (usize, usize) {
        let st = self.state.borrow();
        (st.relators, st.ech.rank())
    }

    /// Canonical representative modulo the relators generated so far.
    pub fn residue(&self, t: &Tensor) -> Tensor {
        if self.is_plain() || t.is_zero() {
            return t.clone();
        }
        let st = self.state.borrow();
        let mut known = SVec::new();
        let mut out = Tensor::zero(t.arity());
        for (k, c) in t.terms() {
            match st.idx.get(k) {
                Some(i) => known.push((i, c.clone())),
                None => out.add_term(k.clone(), c),
            }
        }
        known.sort_by_key(|(i, _)| *i);
        let r = st.ech.residue(&known);
        for (i, c) in r {
            out.add_term(st.idx.key(i).clone(), &c);
        }
        out
    }

    /// Reduced representative after generating relators to the element's degree.
    pub fn reduce(&self, t: &Tensor) -> Tensor {
        self.ensure(self.degree(t));
        self.residue(t)
    }

    /// Is `t` zero in the balanced tensor product?
    pub fn decide_zero(&self, t: &Tensor) -> Decision {
        if t.is_zero() {
            return Decision::Equal;
        }
        if self.is_plain() {
            return Decision::Unequal(t.clone());
        }
        let deg = self.degree(t);
        if self.full.is_none() && deg > self.cap {
            return Decision::Undecided(t.clone());
        }
        let r = self.reduce(t);
        if r.is_zero() {
            Decision::Equal
        } else if self.full.is_some() {
            Decision::Unequal(r)
        } else {
            Decision::Undecided(r)
        }
    }

    pub fn decide_eq(&self, x: &Tensor, y: &Tensor) -> Decision {
        self.decide_zero(&x.sub(y))
    }

    /// Indices of a maximal subfamily of `ts` independent modulo the relators.
    pub fn independent(&self, ts: &[Tensor]) -> Vec<usize> {
        let mut idx: Indexer<TKey> = Indexer::new();
        let mut ech = Echelon::new();
        let mut out = Vec::new();
        for (i, t) in ts.iter().enumerate() {
            let v = self.reduce(t).to_svec(&mut idx);
            if !v.is_empty() && matches!(ech.insert(v, i as u32), Inserted::Independent) {
                out.push(i);
            }
        }
        out
    }

    /// Dimension of the quotient in degree ≤ d: keys minus relator rank.
    pub fn quotient_dim(&self, d: u32) -> usize {
        self.ensure(d);
        let keys = self.keys(d);
        if self.is_plain() {
            return keys.len();
        }
        let st = self.state.borrow();
        let set: BTreeSet<u32> = keys.iter().filter_map(|k| st.idx.get(k)).collect();
        let pivots = st.ech.pivots().filter(|p| set.contains(p)).count();
        keys.len() - pivots
    }
}

/// Multiplies factor `i` of `t` on the left by `p` in `alg`.
pub fn left_mul(t: &Tensor, i: usize, p: &NcPoly, alg: &Alg) -> Tensor {
    t.map_factor(i, 1, |w| Tensor::from_poly(&alg.mul(p, &NcPoly::word(w.clone()))))
}

/// Multiplies factor `i` of `t` on the right by `p` in `alg`.
pub fn right_mul(t: &Tensor, i: usize, p: &NcPoly, alg: &Alg) -> Tensor {
    t.map_factor(i, 1, |w| Tensor::from_poly(&alg.mul(&NcPoly::word(w.clone()), p)))
}

/// Describes a decision for a report witness; `None` when equal.
pub fn describe(d: &Decision, fmt: impl Fn(&Tensor) -> String) -> Option<(bool, String)> {
    match d {
        Decision::Equal => None,
        Decision::Unequal(r) => Some((true, fmt(r))),
        Decision::Undecided(r) => Some((false, format!("not in relator span: {}", fmt(r)))),
    }
}

/// Largest degree of a basis word, for a finite-dimensional algebra.
pub fn top_degree(a: &Alg) -> Option<u32> {
    is_finite(&**a).then(|| test_basis(&**a, 0).iter().map(|w| a.degree(w)).max().unwrap_or(0))
}

/// Tensor basis keys of degree ≤ d, or all keys when every factor is finite.
pub fn filtered_keys(algs: &[Alg], d: u32) -> Vec<TKey> {
    let tops: Option<Vec<u32>> = algs.iter().map(top_degree).collect();
    match tops {
        Some(t) => tensor_basis(algs, t.iter().sum()),
        None => tensor_basis(algs, d),
    }
}
