//! 2-cocycles on Hopf algebras and the deformations they induce.
//!
//! A 2-cocycle is a bilinear form σ: H⊗H → k, convolution invertible with
//! inverse σ̄, normalized by σ(1,h) = σ(h,1) = ε(h), and satisfying
//!
//! σ(a₁,b₁) σ(a₂b₂,c) = σ(b₁,c₁) σ(a,b₂c₂).
//!
//! The deformed Hopf algebra H_σ keeps the coalgebra of H and has product
//! h·_σk = σ(h₁,k₁) h₂k₂ σ̄(h₃,k₃). A right H-comodule algebra A becomes an
//! H_σ-comodule algebra A_σ with a•_σa' = a₀a'₀ σ̄(a₁,a'₁) and the same
//! coaction.

mod deform;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::ncalg::linalg::{Echelon, Indexer};
use crate::ncalg::{check_map_well_defined, LinearMap, NcPoly, TKey, Tensor, Word};
use crate::report::{Check, Report};

pub use deform::{compare_with_original, deform, DeformedAlgebra, Deformation};

type Table = BTreeMap<(Word, Word), Scalar>;

/// σ and σ̄ tabulated on pairs of basis words of H.
pub struct TwoCocycle {
    pub name: String,
    pub h: Rc<Hopf>,
    pub bound: u32,
    sigma: Table,
    inverse: Table,
}

fn tabulate(words: &[Word], f: &mut dyn FnMut(&Word, &Word) -> Scalar) -> Table {
    let mut t = Table::new();
    for u in words {
        for v in words {
            let c = f(u, v);
            if !c.is_zero() {
                t.insert((u.clone(), v.clone()), c);
            }
        }
    }
    t
}

impl TwoCocycle {
    /// σ from a function on basis words; σ̄ likewise when given, else solved
    /// from σ*σ̄ = ε⊗ε (H finite dimensional).
    pub fn from_fn(
        name: &str,
        h: Rc<Hopf>,
        bound: u32,
        mut sigma: impl FnMut(&Word, &Word) -> Scalar,
        inverse: Option<&mut dyn FnMut(&Word, &Word) -> Scalar>,
    ) -> Result<Self> {
        let words = h.test_words(bound);
        let sigma = tabulate(&words, &mut sigma);
        let mut c = TwoCocycle { name: name.into(), h, bound, sigma, inverse: Table::new() };
        c.inverse = match inverse {
            Some(f) => tabulate(&words, f),
            None => c.solve_inverse(&words)?,
        };
        Ok(c)
    }

    /// σ = ε⊗ε.
    pub fn trivial(h: Rc<Hopf>, bound: u32) -> Result<Self> {
        let eps = |u: &Word, v: &Word| {
            let e = |w: &Word| h.counit(w).unwrap_or_else(|e| panic!("{e}"));
            &e(u) * &e(v)
        };
        let mut inv = eps;
        TwoCocycle::from_fn("trivial", h.clone(), bound, eps, Some(&mut inv))
    }

    /// σ(gᵃ,gᵇ) = ζ^{ab} on the group algebra of a cyclic group presented on
    /// one grouplike generator g.
    pub fn bicharacter(h: Rc<Hopf>, zeta: &Scalar) -> Result<Self> {
        let e = |u: &Word, v: &Word, sign: i64| zeta.pow(sign * (u.len() * v.len()) as i64);
        let mut inv = |u: &Word, v: &Word| e(u, v, -1);
        TwoCocycle::from_fn(&format!("bicharacter({zeta})"), h, 0, |u, v| e(u, v, 1), Some(&mut inv))
    }

    fn solve_inverse(&self, words: &[Word]) -> Result<Table> {
        if !self.h.is_finite() {
            return Err(Error::Invalid(format!("{}: solving for the inverse needs finite-dimensional H", self.name)));
        }
        let mut columns: BTreeMap<(Word, Word), Tensor> = BTreeMap::new();
        let mut rhs = Tensor::zero(2);
        for h in words {
            let dh = self.h.coproduct(h)?;
            for k in words {
                let dk = self.h.coproduct(k)?;
                for (a, x) in dh.terms() {
                    for (b, y) in dk.terms() {
                        let c = &(x * y) * &self.value(&a[0], &b[0]);
                        if !c.is_zero() {
                            let col = columns.entry((a[1].clone(), b[1].clone())).or_insert_with(|| Tensor::zero(2));
                            col.add_term(alloc::vec![h.clone(), k.clone()], &c);
                        }
                    }
                }
                rhs.add_term(alloc::vec![h.clone(), k.clone()], &(&self.h.counit(h)? * &self.h.counit(k)?));
            }
        }
        let keys: Vec<(Word, Word)> = columns.keys().cloned().collect();
        let mut idx: Indexer<TKey> = Indexer::new();
        let mut ech = Echelon::tracking();
        for (i, k) in keys.iter().enumerate() {
            ech.insert(columns[k].to_svec(&mut idx), i as u32);
        }
        let miss = || Error::NotInvertibleAtBound(self.bound);
        let target = rhs.to_svec_known(&idx).ok_or_else(miss)?;
        let sol = ech.solve(&target).ok_or_else(miss)?;
        Ok(sol.into_iter().map(|(i, c)| (keys[i as usize].clone(), c)).collect())
    }

    fn lookup(&self, t: &Table, u: &Word, v: &Word) -> Scalar {
        t.get(&(u.clone(), v.clone())).cloned().unwrap_or_else(Scalar::zero)
    }

    /// σ(u,v) on normal words of H.
    pub fn value(&self, u: &Word, v: &Word) -> Scalar {
        self.lookup(&self.sigma, u, v)
    }

    /// σ̄(u,v) on normal words of H.
    pub fn inverse_value(&self, u: &Word, v: &Word) -> Scalar {
        self.lookup(&self.inverse, u, v)
    }

    fn pair(&self, t: &Table, x: &Tensor) -> Scalar {
        x.terms().fold(Scalar::zero(), |acc, (k, c)| &acc + &(c * &self.lookup(t, &k[0], &k[1])))
    }

    /// σ extended bilinearly to H⊗H.
    pub fn eval(&self, x: &Tensor) -> Scalar {
        self.pair(&self.sigma, x)
    }

    pub fn eval_inverse(&self, x: &Tensor) -> Scalar {
        self.pair(&self.inverse, x)
    }

    pub fn eval_polys(&self, p: &NcPoly, q: &NcPoly) -> Scalar {
        self.eval(&Tensor::of_polys(&[p, q]))
    }

    /// Nonzero entries of σ, keyed by basis-word pairs.
    pub fn entries(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.sigma
    }

    pub fn inverse_entries(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.inverse
    }

    pub fn words(&self) -> Vec<Word> {
        self.h.test_words(self.bound)
    }
}

/// Normalization, the cocycle condition on basis triples and the two
/// convolution-inverse identities on basis pairs.
pub fn check_cocycle(sigma: &TwoCocycle, d: u32) -> Report {
    let h = &sigma.h;
    let hp = h.h.pres();
    let mut r = Report::new(format!("2-cocycle({})", sigma.name));
    r.config("degree", d);
    let words: Vec<Word> = h.test_words(d).into_iter().filter(|w| h.is_finite() || h.h.degree(w) <= sigma.bound).collect();
    let one = Word::empty();

    let mut norm = Check::new("sigma(1,h) = sigma(h,1) = eps(h)", Some(d));
    for w in &words {
        let res = h.counit(w).map(|e| {
            let (l, rr) = (sigma.value(&one, w), sigma.value(w, &one));
            (l != e || rr != e).then(|| format!("sigma(1,h) = {l}, sigma(h,1) = {rr}, eps(h) = {e}"))
        });
        norm.case_result(|| hp.fmt_word(w), res);
    }
    r.push(norm.finish());

    let mut cond = Check::new("sigma(a1,b1) sigma(a2 b2,c) = sigma(b1,c1) sigma(a,b2 c2)", Some(d));
    for a in &words {
        for b in &words {
            for c in &words {
                let res = (|| -> Result<Option<String>> {
                    let (da, db, dc) = (h.coproduct(a)?, h.coproduct(b)?, h.coproduct(c)?);
                    let mut lhs = Scalar::zero();
                    for (ka, x) in da.terms() {
                        for (kb, y) in db.terms() {
                            let s = sigma.value(&ka[0], &kb[0]);
                            if s.is_zero() {
                                continue;
                            }
                            let ab = h.h.mul_words(&ka[1], &kb[1]);
                            let t = sigma.eval_polys(&ab, &NcPoly::word(c.clone()));
                            lhs += &(&(x * y) * &(&s * &t));
                        }
                    }
                    let mut rhs = Scalar::zero();
                    for (kb, y) in db.terms() {
                        for (kc, z) in dc.terms() {
                            let s = sigma.value(&kb[0], &kc[0]);
                            if s.is_zero() {
                                continue;
                            }
                            let bc = h.h.mul_words(&kb[1], &kc[1]);
                            let t = sigma.eval_polys(&NcPoly::word(a.clone()), &bc);
                            rhs += &(&(y * z) * &(&s * &t));
                        }
                    }
                    Ok((lhs != rhs).then(|| format!("{lhs} != {rhs}")))
                })();
                cond.case_result(|| format!("({}, {}, {})", hp.fmt_word(a), hp.fmt_word(b), hp.fmt_word(c)), res);
            }
        }
    }
    r.push(cond.finish());

    let mut left = Check::new("sigma * sigma-bar = eps (x) eps", Some(d));
    let mut right = Check::new("sigma-bar * sigma = eps (x) eps", Some(d));
    for u in &words {
        for v in &words {
            let res = (|| -> Result<(Scalar, Scalar, Scalar)> {
                let (du, dv) = (h.coproduct(u)?, h.coproduct(v)?);
                let (mut l, mut rr) = (Scalar::zero(), Scalar::zero());
                for (ku, x) in du.terms() {
                    for (kv, y) in dv.terms() {
                        let xy = x * y;
                        l += &(&xy * &(&sigma.value(&ku[0], &kv[0]) * &sigma.inverse_value(&ku[1], &kv[1])));
                        rr += &(&xy * &(&sigma.inverse_value(&ku[0], &kv[0]) * &sigma.value(&ku[1], &kv[1])));
                    }
                }
                Ok((l, rr, &h.counit(u)? * &h.counit(v)?))
            })();
            let input = || format!("({}, {})", hp.fmt_word(u), hp.fmt_word(v));
            match res {
                Ok((l, rr, e)) => {
                    left.case(input, (l != e).then(|| format!("{l} != {e}")));
                    right.case(input, (rr != e).then(|| format!("{rr} != {e}")));
                }
                Err(e) => {
                    left.fail(input(), format!("{e}"));
                    right.fail(input(), format!("{e}"));
                }
            }
        }
    }
    r.push(left.finish());
    r.push(right.finish());
    r
}

/// σ_H(h,k) = σ(π(h),π(k)) along a bialgebra map π: H → H', after checking
/// that π respects the relations, the coproduct and the counit on basis
/// words ≤ d.
pub fn pullback_cocycle(sigma: &TwoCocycle, h: Rc<Hopf>, pi: &LinearMap, d: u32) -> Result<TwoCocycle> {
    let target = &sigma.h;
    let hp = h.h.pres();
    let wd = check_map_well_defined(pi, d);
    if let Some(e) = wd.failures().next() {
        return Err(Error::NotCoalgebraMap(format!("{}: {}", pi.name, e.name)));
    }
    let hh = target.hh();
    for w in h.test_words(d) {
        let lhs = h.coproduct(&w)?.try_map_factor(0, 1, |u| pi.apply_word(u))?.try_map_factor(1, 1, |u| pi.apply_word(u))?;
        let mut rhs = Tensor::zero(2);
        for (k, c) in pi.apply_word(&w)?.terms() {
            rhs.add_scaled(&target.coproduct(&k[0])?, c);
        }
        let diff = lhs.sub(&rhs);
        if !diff.is_zero() {
            return Err(Error::NotCoalgebraMap(format!("Delta at {}: {}", hp.fmt_word(&w), diff.fmt_with(&hh))));
        }
        let e = target.counit_poly(&pi.apply_word(&w)?.to_poly())?;
        if e != h.counit(&w)? {
            return Err(Error::NotCoalgebraMap(format!("eps at {}", hp.fmt_word(&w))));
        }
    }
    let image = |w: &Word| pi.apply_word(w).unwrap_or_else(|e| panic!("{e}")).to_poly();
    let mut inv = |u: &Word, v: &Word| sigma.eval_inverse(&Tensor::of_polys(&[&image(u), &image(v)]));
    TwoCocycle::from_fn(
        &format!("{} pulled back along {}", sigma.name, pi.name),
        h.clone(),
        d,
        |u, v| sigma.eval(&Tensor::of_polys(&[&image(u), &image(v)])),
        Some(&mut inv),
    )
}
