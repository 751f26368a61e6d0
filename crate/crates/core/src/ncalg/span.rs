use alloc::vec::Vec;

use super::linalg::{Echelon, Indexer};
use super::tensor::{TKey, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Verified,
    /// The target is outside the span at this bound; the reduced residue is kept.
    NotDecidedAtBound(Tensor),
}

impl Membership {
    pub fn verified(&self) -> bool {
        matches!(self, Membership::Verified)
    }
}

/// A fixed spanning set prepared once for many membership queries.
pub struct Span {
    idx: Indexer<TKey>,
    ech: Echelon,
    arity: usize,
}

impl Span {
    pub fn new(arity: usize, spanset: &[Tensor]) -> Self {
        let mut idx = Indexer::new();
        let mut ech = Echelon::new();
        for (i, t) in spanset.iter().enumerate() {
            assert_eq!(t.arity(), arity);
            let v = t.to_svec(&mut idx);
            ech.insert(v, i as u32);
        }
        Span { idx, ech, arity }
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn check(&self, target: &Tensor) -> Membership {
        let mut idx = self.idx.clone();
        let v = target.to_svec(&mut idx);
        let r = self.ech.residue(&v);
        if r.is_empty() {
            Membership::Verified
        } else {
            Membership::NotDecidedAtBound(Tensor::from_svec(&r, &idx, self.arity))
        }
    }

    pub fn contains(&self, target: &Tensor) -> bool {
        match target.to_svec_known(&self.idx) {
            Some(v) => self.ech.contains(&v),
            None => self.check(target).verified(),
        }
    }
}

/// One-shot form of [`Span::check`].
pub fn subspace_membership(target: &Tensor, spanset: &[Tensor]) -> Membership {
    if target.is_zero() {
        return Membership::Verified;
    }
    Span::new(target.arity(), spanset).check(target)
}

pub fn span_dim(spanset: &[Tensor]) -> usize {
    let arity = spanset.first().map_or(0, Tensor::arity);
    Span::new(arity, spanset).dim()
}

pub fn nonzero(ts: Vec<Tensor>) -> Vec<Tensor> {
    ts.into_iter().filter(|t| !t.is_zero()).collect()
}
