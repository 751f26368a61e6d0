use alloc::vec::Vec;
use core::cmp::Ordering;
use smallvec::SmallVec;

/// A word in generator indices. Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(g: u8) -> Self {
        Word(smallvec::smallvec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.len() + o.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn pow(g: u8, k: usize) -> Word {
        Word(smallvec::smallvec![g; k])
    }

    /// Position of the first occurrence of `pat` at or after `from`.
    pub fn find(&self, pat: &[u8], from: usize) -> Option<usize> {
        if pat.is_empty() || pat.len() > self.len() {
            return None;
        }
        (from..=self.len() - pat.len()).find(|&i| &self.0[i..i + pat.len()] == pat)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Word(SmallVec::from_slice(s))
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(SmallVec::from_vec(v))
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<I: IntoIterator<Item = u8>>(it: I) -> Self {
        Word(it.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..4, 0..6).prop_map(Word::from)
    }

    #[test]
    fn deglex_prefers_shorter() {
        assert!(Word::from(alloc::vec![3]) < Word::from(alloc::vec![0, 0]));
        assert!(Word::from(alloc::vec![0, 1]) < Word::from(alloc::vec![1, 0]));
    }

    proptest! {
        #[test]
        fn deglex_is_monomial_order(a in word(), b in word(), u in word(), v in word()) {
            // compatible with two-sided multiplication
            let l = u.concat(&a).concat(&v);
            let r = u.concat(&b).concat(&v);
            prop_assert_eq!(a.cmp(&b), l.cmp(&r));
        }
    }
}
