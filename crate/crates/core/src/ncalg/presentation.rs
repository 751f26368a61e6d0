use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::poly::{fmt_word, NcPoly};
use super::word::Word;
use crate::coeff::{FieldTag, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

/// Generators, ordered rewrite rules, filtration degrees and an optional
/// involution given by the images of the generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub name: String,
    pub field: FieldTag,
    pub generators: Vec<String>,
    pub degrees: Vec<u32>,
    pub rules: Vec<RewriteRule>,
    pub star: Option<Vec<NcPoly>>,
}

impl Presentation {
    pub fn new(name: &str, field: FieldTag, generators: &[&str]) -> Self {
        Presentation {
            name: name.to_string(),
            field,
            generators: generators.iter().map(|s| s.to_string()).collect(),
            degrees: alloc::vec![1; generators.len()],
            rules: Vec::new(),
            star: None,
        }
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn gen(&self, name: &str) -> Result<u8> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses space-separated generator names; `1` or the empty string is the unit word.
    pub fn word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        s.split_whitespace().map(|t| self.gen(t)).collect::<Result<Word>>()
    }

    /// Shorthand for building polynomials from `(coefficient, word)` pairs.
    pub fn poly(&self, terms: &[(Scalar, &str)]) -> Result<NcPoly> {
        let mut p = NcPoly::zero();
        for (c, w) in terms {
            p.add_term(self.word(w)?, c);
        }
        Ok(p)
    }

    pub fn w(&self, s: &str) -> Word {
        self.word(s).unwrap_or_else(|e| panic!("{}: {e}", self.name))
    }

    pub fn p(&self, s: &str) -> NcPoly {
        NcPoly::word(self.w(s))
    }

    pub fn rule(&mut self, lhs: &str, rhs: NcPoly) -> &mut Self {
        let lhs = self.w(lhs);
        self.rules.push(RewriteRule { lhs, rhs });
        self
    }

    pub fn set_degree(&mut self, g: &str, d: u32) -> &mut Self {
        let i = self.w(g).letters()[0] as usize;
        self.degrees[i] = d;
        self
    }

    /// Declares `a* = b` and `b* = a` for each pair (a generator may pair with itself).
    pub fn star_pairs(&mut self, pairs: &[(&str, &str)]) -> &mut Self {
        let n = self.ngens();
        let mut imgs: Vec<NcPoly> = self.star.take().unwrap_or_else(|| alloc::vec![NcPoly::zero(); n]);
        for (a, b) in pairs {
            let (ia, ib) = (self.w(a).letters()[0], self.w(b).letters()[0]);
            imgs[ia as usize] = NcPoly::letter(ib);
            imgs[ib as usize] = NcPoly::letter(ia);
        }
        self.star = Some(imgs);
        self
    }

    pub fn set_star_image(&mut self, g: &str, img: NcPoly) -> &mut Self {
        let n = self.ngens();
        let i = self.w(g).letters()[0] as usize;
        let imgs = self.star.get_or_insert_with(|| alloc::vec![NcPoly::zero(); n]);
        imgs[i] = img;
        self
    }

    pub fn degree(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&g| self.degrees[g as usize]).sum()
    }

    pub fn poly_degree(&self, p: &NcPoly) -> u32 {
        p.terms().map(|(w, _)| self.degree(w)).max().unwrap_or(0)
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        fmt_word(w, &self.generators)
    }

    pub fn fmt(&self, p: &NcPoly) -> String {
        p.fmt_with(&self.generators)
    }

    /// Checks generator indices, rule orientation and scalar fields.
    pub fn validate(&self) -> Result<()> {
        let n = self.ngens();
        if n > 255 {
            return Err(Error::Invalid(format!("{}: more than 255 generators", self.name)));
        }
        if self.degrees.len() != n || self.degrees.contains(&0) {
            return Err(Error::Invalid(format!("{}: degrees must be positive, one per generator", self.name)));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_empty() || g == "1" || g.contains(char::is_whitespace) {
                return Err(Error::Invalid(format!("{}: bad generator name `{g}`", self.name)));
            }
            if self.generators[..i].contains(g) {
                return Err(Error::Invalid(format!("{}: duplicate generator `{g}`", self.name)));
            }
        }
        let in_range = |w: &Word| w.letters().iter().all(|&g| (g as usize) < n);
        for (k, r) in self.rules.iter().enumerate() {
            let bad = |reason: String| Error::BadRule { rule: k, reason };
            if r.lhs.is_empty() {
                return Err(bad("empty left-hand side".into()));
            }
            if !in_range(&r.lhs) || !r.rhs.terms().all(|(w, _)| in_range(w)) {
                return Err(bad("generator index out of range".into()));
            }
            if let Some((w, _)) = r.rhs.terms().find(|(w, _)| *w >= &r.lhs) {
                return Err(bad(format!(
                    "rhs word {} is not below lhs {}",
                    self.fmt_word(w),
                    self.fmt_word(&r.lhs)
                )));
            }
            if let Some(c) = r.rhs.scalars().find(|c| !c.fits(self.field)) {
                return Err(bad(format!("coefficient {c} outside {}", self.field)));
            }
        }
        if let Some(imgs) = &self.star {
            if imgs.len() != n || imgs.iter().any(|p| !p.terms().all(|(w, c)| in_range(w) && c.fits(self.field))) {
                return Err(Error::Invalid(format!("{}: malformed involution", self.name)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_increasing_rule() {
        let mut p = Presentation::new("bad", FieldTag::Rational, &["a", "b"]);
        let rhs = p.p("b a");
        p.rule("a b", rhs);
        assert!(matches!(p.validate(), Err(Error::BadRule { rule: 0, .. })));
    }

    #[test]
    fn word_parsing() {
        let p = Presentation::new("t", FieldTag::Rational, &["z1", "z1*"]);
        assert_eq!(p.w("z1* z1"), Word::from(alloc::vec![1, 0]));
        assert_eq!(p.w("1"), Word::empty());
        assert!(p.word("z2").is_err());
    }
}
