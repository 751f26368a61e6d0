use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::String;
use core::fmt::Write as _;

use super::word::Word;
use crate::coeff::Scalar;

/// Element of the free algebra: a finite map from words to nonzero scalars.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, &c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(Scalar::one(), w)
    }

    pub fn letter(g: u8) -> Self {
        Self::word(Word::letter(g))
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

    pub fn terms(&self) -> btree_map::Iter<'_, Word, Scalar> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> btree_map::IntoIter<Word, Scalar> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Deglex-largest word with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_scaled(&mut self, o: &NcPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in o.terms() {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::int(-1));
        r
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&Scalar::int(-1))
    }

    /// Product in the free algebra (concatenation, no rewriting).
    pub fn mul_free(&self, o: &NcPoly) -> NcPoly {
        let mut r = NcPoly::zero();
        for (u, a) in self.terms() {
            for (v, b) in o.terms() {
                r.add_term(u.concat(v), &(a * b));
            }
        }
        r
    }

    pub fn scalars(&self) -> impl Iterator<Item = &Scalar> {
        self.terms.values()
    }

    /// Pretty form using generator names; words print as `a b c`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        if self.is_zero() {
            return String::from("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let word = fmt_word(w, names);
            if w.is_empty() {
                let _ = write!(s, "{c}");
            } else if c.is_one() {
                s.push_str(&word);
            } else {
                let _ = write!(s, "{c} {word}");
            }
        }
        s
    }
}

pub fn fmt_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return String::from("1");
    }
    let mut s = String::new();
    for (i, g) in w.letters().iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        match names.get(*g as usize) {
            Some(n) => s.push_str(n),
            None => {
                let _ = write!(s, "#{g}");
            }
        }
    }
    s
}

impl FromIterator<(Word, Scalar)> for NcPoly {
    fn from_iter<I: IntoIterator<Item = (Word, Scalar)>>(it: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in it {
            p.add_term(w, &c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut p = NcPoly::letter(1);
        p.add_term(Word::letter(1), &Scalar::int(-1));
        assert!(p.is_zero());
    }

    #[test]
    fn free_product_concatenates() {
        let a = NcPoly::letter(0).add(&NcPoly::one());
        let b = NcPoly::letter(1);
        let p = a.mul_free(&b);
        assert_eq!(p.coeff(&Word::from(alloc::vec![0, 1])), Scalar::one());
        assert_eq!(p.coeff(&Word::letter(1)), Scalar::one());
        assert_eq!(p.len(), 2);
    }
}
