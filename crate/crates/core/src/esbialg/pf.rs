use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use super::{balanced, both, check_bialgebroid, coinvariant_basis, coinvariant_in, invalid, is_complete, Bialgebroid, Coring};
use crate::comodule::{filtered_keys, left_mul, Balanced, Decision, Galois, Sampling};
use crate::error::Result;
use crate::ncalg::{Alg, NcPoly, Tensor, Word};
use crate::pushfwd::{record, PushForward};
use crate::report::{Check, Report};

/// M = (Ω⊗Ω)^{coH} for Ω = C⊗^ψ_B A, a bialgebroid over C.
pub struct EsM {
    pub pf: Rc<PushForward>,
    pub galois: Rc<Galois>,
    pub basis: Vec<Tensor>,
    pub bound: u32,
    pub complete: bool,
    total: Balanced,
    square: Balanced,
    cube: Balanced,
}

/// Replaces the block [C, A, C, A] at `i` by its image under CAA.
fn caa_at(pf: &PushForward, t: &Tensor, i: usize) -> Result<Tensor> {
    let mut out = Tensor::zero(t.arity() - 1);
    for (k, c) in t.terms() {
        let m = pf.caa(&Tensor::basis(&k[i..i + 4]))?;
        out.add_scaled(&Tensor::basis(&k[..i]).tensor(&m).tensor(&Tensor::basis(&k[i + 4..])), c);
    }
    Ok(out)
}

impl EsM {
    pub fn new(pf: Rc<PushForward>, galois: Rc<Galois>, d: u32) -> Result<Self> {
        let (c, a) = (pf.c.clone(), pf.a().clone());
        let f: &[NcPoly] = &pf.f_gens;
        let b: &[NcPoly] = &pf.ca.b_gens;
        let algs = alloc::vec![c.clone(), a.clone(), c.clone(), a.clone()];
        let complete = is_complete(&algs);
        let total = balanced("(C(x)_B A)(x)(C(x)_B A)", algs.clone(), &[(0, f, b), (2, f, b)], d);
        let sq = [c.clone(), a.clone(), c.clone(), a.clone(), a.clone(), c.clone(), a.clone()];
        let square = balanced("M(x)_C M", sq.to_vec(), &[(0, f, b), (2, f, b), (3, b, b), (5, f, b)], d);
        let cb = [c.clone(), a.clone(), c.clone(), a.clone(), a.clone(), c.clone(), a.clone(), a.clone(), c, a];
        let cube = balanced("M(x)_C M(x)_C M", cb.to_vec(), &[(0, f, b), (2, f, b), (3, b, b), (5, f, b), (6, b, b), (8, f, b)], d);
        let keys = filtered_keys(&algs, d);
        let basis = coinvariant_basis(&pf.ca, &total, &keys, &[1, 3])?;
        Ok(EsM { pf, galois, basis, bound: d, complete, total, square, cube })
    }

    fn omega_mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        self.pf.mul(x, y)
    }

    fn algs(&self) -> [Alg; 4] {
        [self.pf.c.clone(), self.pf.a().clone(), self.pf.c.clone(), self.pf.a().clone()]
    }
}

impl Coring for EsM {
    fn name(&self) -> String {
        format!("M({})", self.pf.name)
    }

    fn basis(&self) -> &[Tensor] {
        &self.basis
    }

    fn bound(&self) -> u32 {
        self.bound
    }

    fn complete(&self) -> bool {
        self.complete
    }

    fn degree(&self, x: &Tensor) -> u32 {
        x.max_degree(&self.algs())
    }

    fn fmt(&self, x: &Tensor) -> String {
        x.fmt_with(&self.algs())
    }

    fn base(&self) -> &Alg {
        &self.pf.c
    }

    fn base_gens(&self) -> Vec<NcPoly> {
        (0..self.pf.c.pres().ngens() as u8).map(NcPoly::letter).collect()
    }

    fn total(&self) -> &Balanced {
        &self.total
    }

    fn member(&self, x: &Tensor) -> Result<Decision> {
        coinvariant_in(&self.pf.ca, &self.total, x, &[1, 3])
    }

    fn act_left(&self, r: &NcPoly, x: &Tensor) -> Tensor {
        left_mul(x, 0, r, &self.pf.c)
    }

    /// (x⊗(c'⊗a'))·c'' = x⊗c'ψ(a'⊗c'').
    fn act_right(&self, x: &Tensor, r: &NcPoly) -> Tensor {
        let rc = Tensor::of_polys(&[r, &NcPoly::one()]);
        let mut out = Tensor::zero(4);
        for (k, c) in x.terms() {
            let y = self.omega_mul(&Tensor::basis(&k[2..]), &rc).unwrap_or_else(|e| panic!("{e}"));
            out.add_scaled(&Tensor::basis(&k[..2]).tensor(&y), c);
        }
        out
    }

    /// Δ((c⊗a)⊗(c'⊗a')) = (c⊗a₍₀₎⊗1⊗τ¹(a₍₁₎)) ⊗_C (1⊗τ²(a₍₁₎)⊗c'⊗a').
    fn delta(&self, x: &Tensor) -> Result<Tensor> {
        let e = Word::empty();
        let mut out = Tensor::zero(8);
        for (k, c) in x.terms() {
            for (kd, y) in self.pf.ca.coact_word(&k[1])?.terms() {
                for (kt, z) in self.galois.tau(&kd[1])?.terms() {
                    let key = alloc::vec![k[0].clone(), kd[0].clone(), e.clone(), kt[0].clone(), e.clone(), kt[1].clone(), k[2].clone(), k[3].clone()];
                    out.add_term(key, &(&(c * y) * z));
                }
            }
        }
        Ok(out)
    }

    /// ε(x⊗y) = x·y, which lies in C⊗_B 1 ≅ C.
    fn eps(&self, x: &Tensor) -> Result<NcPoly> {
        let mut p = Tensor::zero(2);
        for (k, c) in x.terms() {
            p.add_scaled(&self.omega_mul(&Tensor::basis(&k[..2]), &Tensor::basis(&k[2..]))?, c);
        }
        self.pf.to_c(&p, self.bound).ok_or_else(|| invalid("eps not in C (x)_B 1", self.pf.fmt(&p)))
    }

    /// ε extended to Ω⊗Ω → Ω by the product, acting on the left factor.
    fn counit_left(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(4);
        for (k, c) in t.terms() {
            let e = self.omega_mul(&Tensor::basis(&k[..2]), &Tensor::basis(&k[2..4]))?;
            let l = self.omega_mul(&e, &Tensor::basis(&k[4..6]))?;
            out.add_scaled(&l.tensor(&Tensor::basis(&k[6..])), c);
        }
        Ok(out)
    }

    fn counit_right(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(4);
        for (k, c) in t.terms() {
            let e = self.omega_mul(&Tensor::basis(&k[4..6]), &Tensor::basis(&k[6..]))?;
            let r = self.omega_mul(&Tensor::basis(&k[2..4]), &e)?;
            out.add_scaled(&Tensor::basis(&k[..2]).tensor(&r), c);
        }
        Ok(out)
    }

    fn square(&self) -> &Balanced {
        &self.square
    }

    fn canon2(&self, t: &Tensor) -> Result<Tensor> {
        caa_at(&self.pf, t, 2)
    }

    fn square_member(&self, t: &Tensor) -> Result<Decision> {
        let t = self.canon2(t)?;
        let ca = &self.pf.ca;
        Ok(both(coinvariant_in(ca, &self.square, &t, &[1, 3])?, coinvariant_in(ca, &self.square, &t, &[4, 6])?))
    }

    fn cube(&self) -> &Balanced {
        &self.cube
    }

    fn canon3(&self, t: &Tensor) -> Result<Tensor> {
        caa_at(&self.pf, &caa_at(&self.pf, t, 2)?, 5)
    }
}

impl Bialgebroid for EsM {
    fn unit(&self) -> Tensor {
        Tensor::unit(4)
    }

    /// (x⊗y)·(x'⊗y') = xx' ⊗ y'y.
    fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(4);
        for (kx, cx) in x.terms() {
            for (ky, cy) in y.terms() {
                let l = self.omega_mul(&Tensor::basis(&kx[..2]), &Tensor::basis(&ky[..2]))?;
                let r = self.omega_mul(&Tensor::basis(&ky[2..]), &Tensor::basis(&kx[2..]))?;
                out.add_scaled(&l.tensor(&r), &(cx * cy));
            }
        }
        Ok(out)
    }

    fn s(&self, r: &NcPoly) -> Tensor {
        Tensor::of_polys(&[r, &NcPoly::one(), &NcPoly::one(), &NcPoly::one()])
    }

    fn t(&self, r: &NcPoly) -> Tensor {
        Tensor::of_polys(&[&NcPoly::one(), &NcPoly::one(), r, &NcPoly::one()])
    }
}

/// Computes M for the push-forward in degree ≤ d and checks its coring and
/// bialgebroid axioms over C, and that ε(M) lies in C⊗_B 1.
pub fn build_es_pf(pf: Rc<PushForward>, g: Rc<Galois>, d: u32, sampling: Sampling) -> Result<(EsM, Report)> {
    let m = EsM::new(pf, g, d)?;
    let mut report = Report::new(format!("ES bialgebroid({})", m.pf.name));
    report.config("degree", d);
    report.note("dim M", format!("{}", m.basis.len()));
    let mut unit = Check::new("(1 (x) 1) (x) (1 (x) 1) in M", None);
    match m.member(&m.unit()) {
        Ok(dec) => record(&mut unit, || "1".into(), &dec, |t| format!("{} terms off", t.len())),
        Err(e) => unit.fail("1", format!("{e}")),
    }
    report.push(unit.finish());
    let mut in_c = Check::new("eps(M) in C (x)_B 1", Some(d));
    for x in &m.basis {
        in_c.case_result(|| m.fmt(x), m.eps(x).map(|_| None::<String>));
    }
    report.push(in_c.finish());
    report.absorb("M", check_bialgebroid(&m, sampling));
    Ok((m, report))
}
