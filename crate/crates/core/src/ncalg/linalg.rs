//! Exact sparse Gaussian elimination.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::coeff::Scalar;

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SVec = Vec<(u32, Scalar)>;

/// `y + a·x`.
pub fn axpy(y: &SVec, a: &Scalar, x: &SVec) -> SVec {
    if a.is_zero() {
        return y.clone();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, &x[j].1 * a));
            j += 1;
        } else {
            let s = &y[i].1 + &(&x[j].1 * a);
            if !s.is_zero() {
                out.push((y[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(x: &SVec, a: &Scalar) -> SVec {
    if a.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, c)| (*i, c * a)).collect()
}

pub fn from_map(m: BTreeMap<u32, Scalar>) -> SVec {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Bijection between arbitrary ordered keys and column indices.
#[derive(Clone, Debug)]
pub struct Indexer<K: Ord + Clone> {
    map: BTreeMap<K, u32>,
    keys: Vec<K>,
}

impl<K: Ord + Clone> Default for Indexer<K> {
    fn default() -> Self {
        Indexer { map: BTreeMap::new(), keys: Vec::new() }
    }
}

impl<K: Ord + Clone> Indexer<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, k: &K) -> u32 {
        if let Some(&i) = self.map.get(k) {
            return i;
        }
        let i = self.keys.len() as u32;
        self.map.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<u32> {
        self.map.get(k).copied()
    }

    pub fn key(&self, i: u32) -> &K {
        &self.keys[i as usize]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SVec,
    /// Which inserted vectors combine to `vec`.
    combo: SVec,
}

/// Incremental row echelon form. Each pivot row has leading coefficient 1 at
/// its pivot column (the smallest column index in the row).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<u32, Row>,
    track: bool,
}

pub enum Inserted {
    Independent,
    /// The inserted vector was dependent; the combination of inserted ids summing to zero.
    Dependent(SVec),
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tracks combinations so kernels and solutions can be read off.
    pub fn tracking() -> Self {
        Echelon { rows: BTreeMap::new(), track: true }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }

    fn reduce(&self, mut v: SVec, mut combo: SVec) -> (SVec, SVec) {
        let mut idx = 0;
        while idx < v.len() {
            let col = v[idx].0;
            match self.rows.get(&col) {
                Some(row) => {
                    let c = -&v[idx].1;
                    v = axpy(&v, &c, &row.vec);
                    if self.track {
                        combo = axpy(&combo, &c, &row.combo);
                    }
                }
                None => idx += 1,
            }
        }
        (v, combo)
    }

    /// Inserts `v` under identifier `id`.
    pub fn insert(&mut self, v: SVec, id: u32) -> Inserted {
        let combo = if self.track { alloc::vec![(id, Scalar::one())] } else { Vec::new() };
        let (r, combo) = self.reduce(v, combo);
        if r.is_empty() {
            return Inserted::Dependent(combo);
        }
        let inv = r[0].1.inv().expect("nonzero pivot");
        let row = Row { vec: scale(&r, &inv), combo: if self.track { scale(&combo, &inv) } else { combo } };
        self.rows.insert(r[0].0, row);
        Inserted::Independent
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v.clone(), Vec::new()).0.is_empty()
    }

    /// Residue of `v` after elimination (empty iff `v` is in the span).
    pub fn residue(&self, v: &SVec) -> SVec {
        self.reduce(v.clone(), Vec::new()).0
    }

    /// Coefficients on inserted ids whose combination equals `v`.
    pub fn solve(&self, v: &SVec) -> Option<SVec> {
        assert!(self.track, "solve needs a tracking echelon");
        let (r, combo) = self.reduce(v.clone(), Vec::new());
        if r.is_empty() {
            Some(scale(&combo, &Scalar::int(-1)))
        } else {
            None
        }
    }
}

/// Kernel of the map sending inserted id `i` to `images[i]`.
pub fn kernel(images: &[SVec]) -> Vec<SVec> {
    let mut e = Echelon::tracking();
    let mut out = Vec::new();
    for (i, v) in images.iter().enumerate() {
        if let Inserted::Dependent(c) = e.insert(v.clone(), i as u32) {
            out.push(c);
        }
    }
    out
}

pub fn rank(vectors: &[SVec]) -> usize {
    let mut e = Echelon::new();
    for (i, v) in vectors.iter().enumerate() {
        e.insert(v.clone(), i as u32);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> SVec {
        v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, Scalar::int(x))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let imgs = [sv(&[1, 2, 0]), sv(&[0, 1, 1]), sv(&[1, 3, 1]), sv(&[2, 4, 0])];
        assert_eq!(rank(&imgs), 2);
        let k = kernel(&imgs);
        assert_eq!(k.len(), 2);
        for c in &k {
            let mut acc: SVec = Vec::new();
            for (i, x) in c {
                acc = axpy(&acc, x, &imgs[*i as usize]);
            }
            assert!(acc.is_empty());
        }
    }

    #[test]
    fn solve_recovers_combination() {
        let mut e = Echelon::tracking();
        let cols = [sv(&[1, 1, 0]), sv(&[0, 1, 1]), sv(&[1, 0, 1])];
        for (i, c) in cols.iter().enumerate() {
            e.insert(c.clone(), i as u32);
        }
        let target = sv(&[2, 3, 1]);
        let x = e.solve(&target).unwrap();
        let mut acc: SVec = Vec::new();
        for (i, c) in &x {
            acc = axpy(&acc, c, &cols[*i as usize]);
        }
        assert_eq!(acc, target);
        assert!(e.solve(&sv(&[0, 0, 0, 1])).is_none());
    }
}
