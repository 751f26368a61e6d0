//! Elements of tensor products of presented algebras, stored on the product
//! of normal-word bases.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::String;
use alloc::vec::Vec;

use super::algebra::{Alg, AlgebraOps};
use super::linalg::{Indexer, SVec};
use super::poly::NcPoly;
use super::word::Word;
use crate::coeff::Scalar;

pub type TKey = Vec<Word>;

#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<TKey, Scalar>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut t = Self::zero(0);
        t.add_term(Vec::new(), &c);
        t
    }

    pub fn unit(arity: usize) -> Self {
        Self::pure(alloc::vec![Word::empty(); arity], Scalar::one())
    }

    pub fn pure(key: TKey, c: Scalar) -> Self {
        let mut t = Self::zero(key.len());
        t.add_term(key, &c);
        t
    }

    pub fn basis(key: &[Word]) -> Self {
        Self::pure(key.to_vec(), Scalar::one())
    }

    pub fn from_poly(p: &NcPoly) -> Self {
        let mut t = Self::zero(1);
        for (w, c) in p.terms() {
            t.add_term(alloc::vec![w.clone()], c);
        }
        t
    }

    /// `p1 ⊗ p2 ⊗ ...` for polynomials.
    pub fn of_polys(ps: &[&NcPoly]) -> Self {
        let mut t = Self::unit(0);
        for p in ps {
            t = t.tensor(&Self::from_poly(p));
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, TKey, Scalar> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &[Word]) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, k: TKey, c: &Scalar) {
        debug_assert_eq!(k.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Tensor, c: &Scalar) {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        for (k, x) in o.terms() {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::int(-1));
        r
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut r = Tensor::zero(self.arity);
        r.add_scaled(self, c);
        r
    }

    /// Outer product.
    pub fn tensor(&self, o: &Tensor) -> Tensor {
        let mut r = Tensor::zero(self.arity + o.arity);
        for (k1, a) in self.terms() {
            for (k2, b) in o.terms() {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                r.add_term(k, &(a * b));
            }
        }
        r
    }

    /// Replaces factor `i` of every term by the tensor `f(word)`.
    pub fn map_factor(&self, i: usize, out_arity: usize, mut f: impl FnMut(&Word) -> Tensor) -> Tensor {
        let mut r = Tensor::zero(self.arity - 1 + out_arity);
        let mut memo: BTreeMap<Word, Tensor> = BTreeMap::new();
        for (k, c) in self.terms() {
            let img = memo.entry(k[i].clone()).or_insert_with(|| f(&k[i]));
            debug_assert_eq!(img.arity, out_arity);
            for (k2, c2) in img.terms() {
                let mut nk = Vec::with_capacity(r.arity);
                nk.extend_from_slice(&k[..i]);
                nk.extend_from_slice(k2);
                nk.extend_from_slice(&k[i + 1..]);
                r.add_term(nk, &(c * c2));
            }
        }
        r
    }

    /// Like [`Tensor::map_factor`] with a fallible image.
    pub fn try_map_factor<E>(
        &self,
        i: usize,
        out_arity: usize,
        mut f: impl FnMut(&Word) -> Result<Tensor, E>,
    ) -> Result<Tensor, E> {
        let mut memo: BTreeMap<Word, Tensor> = BTreeMap::new();
        for k in self.terms.keys() {
            if !memo.contains_key(&k[i]) {
                memo.insert(k[i].clone(), f(&k[i])?);
            }
        }
        Ok(self.map_factor(i, out_arity, |w| memo[w].clone()))
    }

    /// Applies a polynomial-valued map to factor `i`.
    pub fn map_poly(&self, i: usize, mut f: impl FnMut(&Word) -> NcPoly) -> Tensor {
        self.map_factor(i, 1, |w| Tensor::from_poly(&f(w)))
    }

    /// Multiplies factors `i` and `i + 1` in `alg`.
    pub fn merge(&self, i: usize, alg: &dyn AlgebraOps) -> Tensor {
        let mut r = Tensor::zero(self.arity - 1);
        for (k, c) in self.terms() {
            alg.for_each_product(&k[i], &k[i + 1], &mut |w, c2| {
                let mut nk = Vec::with_capacity(r.arity);
                nk.extend_from_slice(&k[..i]);
                nk.push(w.clone());
                nk.extend_from_slice(&k[i + 2..]);
                r.add_term(nk, &(c * c2));
            });
        }
        r
    }

    /// New factor order: output factor `j` is input factor `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let mut r = Tensor::zero(perm.len());
        for (k, c) in self.terms() {
            r.add_term(perm.iter().map(|&j| k[j].clone()).collect(), c);
        }
        r
    }

    pub fn swap(&self) -> Tensor {
        self.permute(&[1, 0])
    }

    /// Normalises every factor in the corresponding algebra.
    pub fn normalize(&self, algs: &[Alg]) -> Tensor {
        let mut r = self.clone();
        for (i, a) in algs.iter().enumerate() {
            r = r.map_poly(i, |w| a.nf(&NcPoly::word(w.clone())));
        }
        r
    }

    /// Componentwise product in the tensor product algebra.
    pub fn mul(&self, o: &Tensor, algs: &[Alg]) -> Tensor {
        assert_eq!(self.arity, o.arity);
        let mut r = Tensor::zero(self.arity);
        let mut factor: Vec<(Word, Scalar)> = Vec::new();
        for (k1, a) in self.terms() {
            for (k2, b) in o.terms() {
                let mut acc: Vec<(TKey, Scalar)> = alloc::vec![(Vec::with_capacity(self.arity), a * b)];
                for (i, alg) in algs.iter().enumerate() {
                    factor.clear();
                    alg.for_each_product(&k1[i], &k2[i], &mut |w, c| factor.push((w.clone(), c.clone())));
                    let mut next = Vec::with_capacity(acc.len() * factor.len());
                    for (k, c) in &acc {
                        for (w, c2) in &factor {
                            let mut nk = k.clone();
                            nk.push(w.clone());
                            next.push((nk, c * c2));
                        }
                    }
                    acc = next;
                    if acc.is_empty() {
                        break;
                    }
                }
                for (k, c) in acc {
                    r.add_term(k, &c);
                }
            }
        }
        r
    }

    /// Sum of `c·p` over terms where all but factor `i` are units; `None` if
    /// some term has a non-unit elsewhere.
    pub fn factor_poly(&self, i: usize) -> Option<NcPoly> {
        let mut p = NcPoly::zero();
        for (k, c) in self.terms() {
            if k.iter().enumerate().any(|(j, w)| j != i && !w.is_empty()) {
                return None;
            }
            p.add_term(k[i].clone(), c);
        }
        Some(p)
    }

    /// Collapses an arity-1 tensor to a polynomial.
    pub fn to_poly(&self) -> NcPoly {
        assert_eq!(self.arity, 1);
        self.terms().map(|(k, c)| (k[0].clone(), c.clone())).collect()
    }

    /// Collapses an arity-0 tensor to its scalar.
    pub fn to_scalar(&self) -> Scalar {
        assert_eq!(self.arity, 0);
        self.coeff(&[])
    }

    pub fn to_svec(&self, idx: &mut Indexer<TKey>) -> SVec {
        let mut v: SVec = self.terms().map(|(k, c)| (idx.index(k), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Looks up coordinates without growing the indexer; `None` if a key is new.
    pub fn to_svec_known(&self, idx: &Indexer<TKey>) -> Option<SVec> {
        let mut v = SVec::new();
        for (k, c) in self.terms() {
            v.push((idx.get(k)?, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }

    pub fn from_svec(v: &SVec, idx: &Indexer<TKey>, arity: usize) -> Tensor {
        let mut t = Tensor::zero(arity);
        for (i, c) in v {
            t.add_term(idx.key(*i).clone(), c);
        }
        t
    }

    /// Applies each factor's involution and conjugates coefficients.
    pub fn star(&self, algs: &[Alg]) -> crate::error::Result<Tensor> {
        let mut r = self.clone();
        for (i, a) in algs.iter().enumerate() {
            r = r.try_map_factor(i, 1, |w| Ok::<_, crate::error::Error>(Tensor::from_poly(&a.star(&NcPoly::word(w.clone()))?)))?;
        }
        let mut out = Tensor::zero(r.arity);
        for (k, c) in r.terms() {
            out.add_term(k.clone(), &c.conj());
        }
        Ok(out)
    }

    pub fn max_degree(&self, algs: &[Alg]) -> u32 {
        self.terms()
            .map(|(k, _)| k.iter().zip(algs).map(|(w, a)| a.degree(w)).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn fmt_with(&self, algs: &[Alg]) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (n, (k, c)) in self.terms().enumerate() {
            if n > 0 {
                s.push_str(" + ");
            }
            if !c.is_one() {
                s.push_str(&alloc::format!("{c} "));
            }
            if k.is_empty() {
                if c.is_one() {
                    s.push('1');
                }
                continue;
            }
            s.push('(');
            for (i, w) in k.iter().enumerate() {
                if i > 0 {
                    s.push_str(" ⊗ ");
                }
                s.push_str(&algs[i].pres().fmt_word(w));
            }
            s.push(')');
        }
        s
    }
}

/// Keys of the tensor basis with total degree ≤ d, built from each factor's filtered basis.
pub fn tensor_basis(algs: &[Alg], d: u32) -> Vec<TKey> {
    let mut out: Vec<(TKey, u32)> = alloc::vec![(Vec::new(), 0)];
    for a in algs {
        let b = a.basis(d);
        let mut next = Vec::new();
        for (k, dk) in &out {
            for w in &b {
                let dw = dk + a.degree(w);
                if dw <= d {
                    let mut nk = k.clone();
                    nk.push(w.clone());
                    next.push((nk, dw));
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|(k, _)| k).collect()
}
