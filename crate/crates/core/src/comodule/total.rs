use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::balanced::{describe, filtered_keys};
use super::galois::Galois;
use super::{left_mul, right_mul};
use crate::coeff::Scalar;
use crate::error::Result;
use crate::hopf::antipode_inverse;
use crate::ncalg::{Alg, LinearMap, NcPoly, TKey, Tensor, Word};
use crate::report::{Check, Report};

/// How many cases a bounded check may evaluate. When the exhaustive list of
/// cases is longer, a seeded uniform sample of `max_cases` is taken.
#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub seed: u64,
    pub max_cases: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { seed: 0, max_cases: 2000 }
    }
}

impl Sampling {
    /// All tuples of indices into `degs` whose degrees sum to ≤ d (any sum
    /// when `complete`), or a seeded sample of them.
    pub fn tuples(&self, degs: &[u32], arity: usize, d: u32, complete: bool) -> (Vec<Vec<usize>>, bool) {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(degs: &[u32], arity: usize, left: Option<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == arity {
                out.push(cur.clone());
                return;
            }
            for (i, &g) in degs.iter().enumerate() {
                if left.is_some_and(|l| g > l) {
                    continue;
                }
                cur.push(i);
                rec(degs, arity, left.map(|l| l - g), cur, out);
                cur.pop();
            }
        }
        rec(degs, arity, (!complete).then_some(d), &mut cur, &mut out);
        let sampled = out.len() > self.max_cases;
        (self.pick(out), sampled)
    }

    /// At most `max_cases` items of `v`, chosen by a seeded partial shuffle.
    pub fn pick<T>(&self, mut v: Vec<T>) -> Vec<T> {
        if v.len() <= self.max_cases {
            return v;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for i in 0..self.max_cases {
            let j = i + (rng.next_u64() % (v.len() - i) as u64) as usize;
            v.swap(i, j);
        }
        v.truncate(self.max_cases);
        v
    }
}

/// A⊗_B A with the product m^{ψ_τ}, for a Hopf–Galois extension B ⊂ A.
pub struct TotalAlgebra {
    pub galois: Rc<Galois>,
}

impl TotalAlgebra {
    pub fn new(galois: Rc<Galois>) -> Self {
        TotalAlgebra { galois }
    }

    fn a(&self) -> &Alg {
        &self.galois.ca.a
    }

    pub fn fmt(&self, t: &Tensor) -> String {
        self.galois.fmt(t)
    }

    pub fn unit(&self) -> Tensor {
        Tensor::unit(2)
    }

    /// ψ_τ(a⊗c) = a₍₀₎·c·τ¹(a₍₁₎) ⊗_B τ²(a₍₁₎).
    pub fn psi_tau(&self, a: &Word, c: &Word) -> Result<Tensor> {
        let ca = &self.galois.ca;
        let mut out = Tensor::zero(2);
        for (k, x) in ca.coact_word(a)?.terms() {
            let t = self.galois.tau(&k[1])?;
            let ac = ca.a.mul_words(&k[0], c);
            out.add_scaled(&left_mul(&t, 0, &ac, &ca.a), x);
        }
        Ok(out)
    }

    /// ψ_τ extended linearly over A⊗A.
    pub fn psi_tau_tensor(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (k, x) in t.terms() {
            out.add_scaled(&self.psi_tau(&k[0], &k[1])?, x);
        }
        Ok(out)
    }

    /// (a⊗c)·(a'⊗c') = a·ψ_τ(c⊗a')·c' = a·c₍₀₎·a'·τ(c₍₁₎)·c' on representatives.
    /// The terms are grouped by c₍₁₎ = h and by c', so each τ(h) is
    /// multiplied once per pair (h, c').
    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        let a = self.a();
        let mut left: BTreeMap<Word, NcPoly> = BTreeMap::new();
        for (k, c) in self.galois.ca.coact_factor(x, 1)?.terms() {
            left.entry(k[2].clone()).or_insert_with(NcPoly::zero).add_scaled(&a.mul_words(&k[0], &k[1]), c);
        }
        let mut right: BTreeMap<Word, NcPoly> = BTreeMap::new();
        for (k, c) in y.terms() {
            right.entry(k[1].clone()).or_insert_with(NcPoly::zero).add_scaled(&NcPoly::word(k[0].clone()), c);
        }
        let mut out = Tensor::zero(2);
        for (h, m) in &left {
            if m.is_zero() {
                continue;
            }
            let tau = self.galois.tau(h)?;
            for (c2, ya) in &right {
                let l = a.mul(m, ya);
                if l.is_zero() {
                    continue;
                }
                let p = left_mul(&tau, 0, &l, a);
                out.add_scaled(&right_mul(&p, 1, &NcPoly::word(c2.clone()), a), &Scalar::one());
            }
        }
        Ok(out)
    }

    /// The Durdević braiding σ(a⊗_B c) = a₍₀₎c·τ(a₍₁₎), which is ψ_τ on
    /// representatives.
    pub fn sigma(&self, t: &Tensor) -> Result<Tensor> {
        self.psi_tau_tensor(t)
    }

    /// σ⁻¹(a⊗c) = τ¹(S⁻¹(c₍₁₎)) ⊗ τ²(S⁻¹(c₍₁₎))·a·c₍₀₎.
    pub fn sigma_inv(&self, sinv: &LinearMap, t: &Tensor) -> Result<Tensor> {
        let ca = &self.galois.ca;
        let a = &ca.a;
        let mut out = Tensor::zero(2);
        for (k, x) in t.terms() {
            for (kc, y) in ca.coact_word(&k[1])?.terms() {
                let h = sinv.apply_word(&kc[1])?;
                let tau = self.galois.tau_poly(&h.to_poly())?;
                let tail = a.mul_words(&k[0], &kc[0]);
                out.add_scaled(&right_mul(&tau, 1, &tail, a), &(x * y));
            }
        }
        Ok(out)
    }
}

fn key_degrees(algs: &[Alg], keys: &[TKey]) -> Vec<u32> {
    keys.iter().map(|k| k.iter().zip(algs).map(|(w, a)| a.degree(w)).sum()).collect()
}

fn fmt_keys(t: &TotalAlgebra, keys: &[TKey], ix: &[usize]) -> String {
    let parts: Vec<String> = ix.iter().map(|&i| t.fmt(&Tensor::basis(&keys[i]))).collect();
    parts.join(" ; ")
}

/// The algebra A⊗_B^{ψ_τ} A: unit, normality of ψ_τ, well-definedness of
/// the product on balancing relators, and associativity. For
/// infinite-dimensional A the χ-transport certificate is established first
/// (if not already) so that equality is decided exactly.
pub fn check_total(t: &TotalAlgebra, d: u32, sampling: Sampling) -> Report {
    let g = &t.galois;
    let ca = &g.ca;
    let a = &ca.a;
    let mut report = Report::new(format!("{}({})", "total algebra", ca.name));
    report.config("degree", d);
    report.config("seed", sampling.seed);
    let finite = ca.is_finite();
    if !finite && !g.bal.is_plain() && !g.transport_certified() {
        report.absorb("injective", g.certify_transport());
    }
    let aa = ca.aa();
    let keys = filtered_keys(&aa, d);
    let degs = key_degrees(&aa, &keys);
    let words = ca.test_words(d);
    let afmt = |w: &Word| a.pres().fmt_word(w);
    let sampled_keys = sampling.pick(keys.clone());

    let mut unit = Check::new("1 (x)_B 1 is a two-sided unit", Some(d));
    for k in &sampled_keys {
        let x = Tensor::basis(k);
        g.case(&mut unit, || t.fmt(&x), t.mul(&t.unit(), &x), Ok(x.clone()));
        g.case(&mut unit, || t.fmt(&x), t.mul(&x, &t.unit()), Ok(x.clone()));
    }
    if sampled_keys.len() < keys.len() {
        unit.note(format!("{} sampled elements", sampled_keys.len()));
    }
    report.push(unit.finish());

    let mut right_one = Check::new("psi_tau(a (x) 1) = 1 (x)_B a", Some(d));
    let mut left_one = Check::new("psi_tau(1 (x) c) = c (x)_B 1", Some(d));
    for w in &sampling.pick(words.clone()) {
        g.case(&mut right_one, || afmt(w), t.psi_tau(w, &Word::empty()), Ok(Tensor::basis(&[Word::empty(), w.clone()])));
        g.case(&mut left_one, || afmt(w), t.psi_tau(&Word::empty(), w), Ok(Tensor::basis(&[w.clone(), Word::empty()])));
    }
    report.push(right_one.finish());
    report.push(left_one.finish());

    let mut wd = Check::new("product vanishes on balancing relators", Some(d));
    let gens: Vec<TKey> = keys.iter().zip(&degs).filter(|(_, &dg)| dg <= 1).map(|(k, _)| k.clone()).collect();
    let relators = g.bal.relators(d);
    let all: Vec<(usize, usize)> = (0..relators.len()).flat_map(|i| (0..gens.len()).map(move |j| (i, j))).collect();
    let total = all.len();
    let cases = sampling.pick(all);
    for &(i, j) in &cases {
        let (r, y) = (&relators[i], Tensor::basis(&gens[j]));
        g.case(&mut wd, || format!("{} * {}", t.fmt(r), t.fmt(&y)), t.mul(r, &y), Ok(Tensor::zero(2)));
        g.case(&mut wd, || format!("{} * {}", t.fmt(&y), t.fmt(r)), t.mul(&y, r), Ok(Tensor::zero(2)));
    }
    if cases.len() < total {
        wd.note(format!("{} of {} sampled pairs", cases.len(), total));
    }
    report.push(wd.finish());

    let mut assoc = Check::new("(x y) z = x (y z)", Some(d));
    let (triples, sampled) = sampling.tuples(&degs, 3, d, finite);
    for p in &triples {
        let (x, y, z) = (Tensor::basis(&keys[p[0]]), Tensor::basis(&keys[p[1]]), Tensor::basis(&keys[p[2]]));
        let lhs = t.mul(&x, &y).and_then(|xy| t.mul(&xy, &z));
        let rhs = t.mul(&y, &z).and_then(|yz| t.mul(&x, &yz));
        g.case(&mut assoc, || fmt_keys(t, &keys, p), lhs, rhs);
    }
    if sampled {
        assoc.note(format!("{} sampled triples", triples.len()));
    }
    report.push(assoc.finish());

    report
}

/// The structure around A⊗_B^{ψ_τ} A: inner-B-linearity of ψ_τ, χ as an
/// algebra map onto A⊗H, and the Durdević braiding with its inverse.
pub fn check_total_structure(t: &TotalAlgebra, d: u32, sampling: Sampling) -> Report {
    let g = &t.galois;
    let ca = &g.ca;
    let a = &ca.a;
    let mut report = Report::new(format!("{}({})", "total algebra structure", ca.name));
    report.config("degree", d);
    report.config("seed", sampling.seed);
    let finite = ca.is_finite();
    if !finite && !g.bal.is_plain() && !g.transport_certified() {
        report.absorb("injective", g.certify_transport());
    }
    let aa = ca.aa();
    let keys = filtered_keys(&aa, d);
    let degs = key_degrees(&aa, &keys);
    let words = ca.test_words(d);
    let afmt = |w: &Word| a.pres().fmt_word(w);
    let sampled_keys = sampling.pick(keys.clone());

    let wdegs: Vec<u32> = words.iter().map(|w| a.degree(w)).collect();
    let mut inner = Check::new("psi_tau(ab (x) c) = psi_tau(a (x) bc) for B-generators b", Some(d));
    let (pairs, sampled) = sampling.tuples(&wdegs, 2, d, finite);
    for p in &pairs {
        let (wa, wc) = (&words[p[0]], &words[p[1]]);
        for b in &ca.b_gens {
            let ab = a.mul(&NcPoly::word(wa.clone()), b);
            let bc = a.mul(b, &NcPoly::word(wc.clone()));
            let lhs = t.psi_tau_tensor(&Tensor::of_polys(&[&ab, &NcPoly::word(wc.clone())]));
            let rhs = t.psi_tau_tensor(&Tensor::of_polys(&[&NcPoly::word(wa.clone()), &bc]));
            g.case(&mut inner, || format!("a = {}, b = {}, c = {}", afmt(wa), a.fmt(b), afmt(wc)), lhs, rhs);
        }
    }
    if sampled {
        inner.note(format!("{} sampled pairs", pairs.len()));
    }
    report.push(inner.finish());

    let ah = ca.ah();
    let mut chi_mul = Check::new("chi(x y) = chi(x) chi(y)", Some(d));
    let (pairs, sampled) = sampling.tuples(&degs, 2, d, finite);
    for p in &pairs {
        let (x, y) = (Tensor::basis(&keys[p[0]]), Tensor::basis(&keys[p[1]]));
        let r = (|| -> Result<Tensor> {
            let lhs = g.chi(&t.mul(&x, &y)?)?;
            let rhs = g.chi(&x)?.mul(&g.chi(&y)?, &ah);
            Ok(lhs.sub(&rhs))
        })();
        chi_mul.case_result(|| fmt_keys(t, &keys, p), r.map(|r| (!r.is_zero()).then(|| ca.fmt_ah(&r))));
    }
    if sampled {
        chi_mul.note(format!("{} sampled pairs", pairs.len()));
    }
    report.push(chi_mul.finish());

    let hp = ca.h.h.pres();
    let cap = 2 * hp.ngens() as u32 + 4;
    let mut s1 = Check::new("sigma sigma^-1 = id", Some(d));
    let mut s2 = Check::new("sigma^-1 sigma = id", Some(d));
    match antipode_inverse(&ca.h, d.max(1), cap) {
        Ok(sinv) => {
            for k in &sampled_keys {
                let x = Tensor::basis(k);
                g.case(&mut s1, || t.fmt(&x), t.sigma_inv(&sinv, &x).and_then(|y| t.sigma(&y)), Ok(x.clone()));
                g.case(&mut s2, || t.fmt(&x), t.sigma(&x).and_then(|y| t.sigma_inv(&sinv, &y)), Ok(x.clone()));
            }
        }
        Err(e) => {
            s1.fail("S^-1", format!("{e}"));
            s2.fail("S^-1", format!("{e}"));
        }
    }
    if sampled_keys.len() < keys.len() {
        s1.note(format!("{} sampled elements", sampled_keys.len()));
        s2.note(format!("{} sampled elements", sampled_keys.len()));
    }
    report.push(s1.finish());
    report.push(s2.finish());
    report
}

/// γ := τ as a cleaving map H → A⊗_B^{ψ_τ} A: γ(1), colinearity for the
/// coaction id⊗δ, multiplicativity, and γ*(γ∘S) = ηε = (γ∘S)*γ.
pub fn check_triviality_total(t: &TotalAlgebra, d: u32, sampling: Sampling) -> Report {
    let g = &t.galois;
    let ca = &g.ca;
    let hh = &ca.h;
    let hp = hh.h.pres();
    let mut report = Report::new(format!("triviality({})", ca.name));
    report.config("degree", d);
    let words = hh.test_words(d);
    let hfmt = |w: &Word| hp.fmt_word(w);

    let mut unit = Check::new("gamma(1) = 1 (x)_B 1", None);
    g.case(&mut unit, || "1".into(), g.tau(&Word::empty()), Ok(t.unit()));
    report.push(unit.finish());

    let mut colin = Check::new("(id x delta) gamma = (gamma x id) Delta", Some(d));
    for h in &words {
        let lhs = g.tau(h).and_then(|x| ca.coact_factor(&x, 1));
        let rhs = hh.coproduct(h).and_then(|c| c.try_map_factor(0, 2, |w| g.tau(w)));
        match lhs.and_then(|l| rhs.map(|r| l.sub(&r))) {
            Ok(diff) => {
                let mut by_leg: BTreeMap<Word, Tensor> = BTreeMap::new();
                for (k, c) in diff.terms() {
                    by_leg.entry(k[2].clone()).or_insert_with(|| Tensor::zero(2)).add_term(alloc::vec![k[0].clone(), k[1].clone()], c);
                }
                let mut bad = None;
                for (leg, part) in &by_leg {
                    match g.decide_zero(part) {
                        Ok(dec) => {
                            if let Some(r) = describe(&dec, |x| t.fmt(x)) {
                                bad = Some((r.0, format!("{} at {}", r.1, hfmt(leg))));
                                if r.0 {
                                    break;
                                }
                            }
                        }
                        Err(e) => {
                            bad = Some((true, format!("{e}")));
                            break;
                        }
                    }
                }
                match bad {
                    None => colin.ok(),
                    Some((true, r)) => colin.fail(hfmt(h), r),
                    Some((false, r)) => colin.undecided(hfmt(h), r),
                }
            }
            Err(e) => colin.fail(hfmt(h), format!("{e}")),
        }
    }
    report.push(colin.finish());

    let degs: Vec<u32> = words.iter().map(|w| hh.h.degree(w)).collect();
    let mut mult = Check::new("gamma(h) gamma(k) = gamma(hk)", Some(d));
    let (pairs, sampled) = sampling.tuples(&degs, 2, d, hh.is_finite());
    for p in &pairs {
        let (h, k) = (&words[p[0]], &words[p[1]]);
        let lhs = g.tau(h).and_then(|x| g.tau(k).and_then(|y| t.mul(&x, &y)));
        let rhs = g.tau_poly(&hh.h.mul_words(h, k));
        g.case(&mut mult, || format!("h = {}, k = {}", hfmt(h), hfmt(k)), lhs, rhs);
    }
    if sampled {
        mult.note(format!("{} sampled pairs", pairs.len()));
    }
    report.push(mult.finish());

    let mut left = Check::new("gamma * (gamma S) = eta eps", Some(d));
    let mut right = Check::new("(gamma S) * gamma = eta eps", Some(d));
    for h in &words {
        let conv = |flip: bool| -> Result<(Tensor, Tensor)> {
            let mut out = Tensor::zero(2);
            for (k, c) in hh.coproduct(h)?.terms() {
                let (first, second) = if flip {
                    (g.tau_poly(&hh.antipode(&k[0])?)?, g.tau(&k[1])?)
                } else {
                    (g.tau(&k[0])?, g.tau_poly(&hh.antipode(&k[1])?)?)
                };
                out.add_scaled(&t.mul(&first, &second)?, c);
            }
            Ok((out, t.unit().scale(&hh.counit(h)?)))
        };
        for (flip, check) in [(false, &mut left), (true, &mut right)] {
            match conv(flip) {
                Ok((l, r)) => g.case(check, || hfmt(h), Ok(l), Ok(r)),
                Err(e) => check.fail(hfmt(h), format!("{e}")),
            }
        }
    }
    report.push(left.finish());
    report.push(right.finish());
    report
}
