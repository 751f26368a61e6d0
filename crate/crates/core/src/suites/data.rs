//! The worked examples as presentations, Hopf structures and maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{FieldTag, Scalar};
use crate::comodule::ComoduleAlgebra;
use crate::hopf::{Action, Hopf, MatchedPair};
use crate::ncalg::{Alg, Algebra, NcPoly, Presentation, Tensor, Word};
use crate::twist::TwistingMap;

/// The field holding primitive n-th roots of unity.
pub fn root_field(n: u32) -> FieldTag {
    if n <= 2 {
        FieldTag::Rational
    } else {
        FieldTag::Cyclotomic(n)
    }
}

/// q = ζ_n^k.
pub fn root(n: u32, k: i64) -> Scalar {
    Scalar::root_of_unity(n, k)
}

fn power(g: &str, k: u32) -> String {
    vec![g; k as usize].join(" ")
}

fn alg(p: Presentation) -> Alg {
    Rc::new(Algebra::new(p).unwrap_or_else(|e| panic!("shipped presentation: {e}")))
}


fn t2(a: NcPoly, b: NcPoly) -> Tensor {
    Tensor::of_polys(&[&a, &b])
}

/// ⟨g, x | gⁿ = 1, xⁿ = c, xg = q gx⟩ with generator names `g`, `x`.
pub fn taft_like(name: &str, g: &str, x: &str, n: u32, q: &Scalar, c: &Scalar) -> Presentation {
    let mut p = Presentation::new(name, root_field(n), &[g, x]);
    p.rule(&power(g, n), NcPoly::one());
    p.rule(&power(x, n), NcPoly::constant(c.clone()));
    let gx = p.p(&format!("{g} {x}")).scale(q);
    p.rule(&format!("{x} {g}"), gx);
    if n == 2 {
        // q = −1 is real: g* = g⁻¹ = g and x* = x respect the relations
        p.star_pairs(&[(g, g), (x, x)]);
    }
    p
}

/// The Taft algebra T_n(q), q = ζ_n^k, with its Hopf structure.
pub fn taft(n: u32, k: i64) -> Rc<Hopf> {
    let q = root(n, k);
    let p = taft_like(&format!("T_{n}"), "g", "x", n, &q, &Scalar::zero());
    let ginv = p.p(&power("g", n - 1));
    let (g, x) = (p.p("g"), p.p("x"));
    let h = alg(p);
    let delta = vec![t2(g.clone(), g.clone()), t2(NcPoly::one(), x.clone()).add(&t2(x.clone(), g.clone()))];
    let eps = vec![Scalar::one(), Scalar::zero()];
    let s = vec![ginv.clone(), h.mul(&x, &ginv).neg()];
    Rc::new(Hopf::new(h, delta, eps, s))
}

/// A_s = ⟨G, X | Gⁿ = 1, Xⁿ = s, XG = q GX⟩.
pub fn a_s(n: u32, k: i64, s: i64) -> Alg {
    alg(taft_like(&format!("A_{s}"), "G", "X", n, &root(n, k), &Scalar::int(s)))
}

/// The coaction δ(G) = G⊗g, δ(X) = X⊗g + 1⊗x on generators.
pub fn a_s_coaction(a: &Alg, h: &Hopf) -> Vec<Tensor> {
    let (ap, hp) = (a.pres(), h.h.pres());
    let (gg, xx) = (ap.p("G"), ap.p("X"));
    let (g, x) = (hp.p("g"), hp.p("x"));
    vec![t2(gg, g.clone()), t2(xx, g).add(&t2(NcPoly::one(), x))]
}

/// The cyclic group algebra kZ_n on one grouplike generator.
pub fn group_algebra(n: u32, gen: &str) -> Rc<Hopf> {
    let mut p = Presentation::new(&format!("kZ_{n}"), FieldTag::Rational, &[gen]);
    p.rule(&power(gen, n), NcPoly::one());
    p.set_star_image(gen, p.p(&power(gen, n - 1)));
    let g = p.p(gen);
    let ginv = p.p(&power(gen, n - 1));
    let h = alg(p);
    Rc::new(Hopf::new(h, vec![t2(g.clone(), g)], vec![Scalar::one()], vec![ginv]))
}

/// k[c]/(cⁿ − 1) over the field of n-th roots.
pub fn cyclic(n: u32) -> Alg {
    let mut p = Presentation::new(&format!("k[c]/(c^{n}-1)"), root_field(n), &["c"]);
    p.rule(&power("c", n), NcPoly::one());
    alg(p)
}

/// The free algebra k[c].
pub fn polynomial(field: FieldTag) -> Alg {
    alg(Presentation::new("k[c]", field, &["c"]))
}

/// ψ(G⊗c) = α(c)⊗G, ψ(X⊗c) = c⊗X on generators, with α given on the
/// generators of C.
pub fn taft_twist(name: &str, a: Alg, c: Alg, alpha: &[NcPoly]) -> TwistingMap {
    let mut images = BTreeMap::new();
    let (gg, xx) = (a.pres().p("G"), a.pres().p("X"));
    for (i, img) in alpha.iter().enumerate() {
        let ci = NcPoly::letter(i as u8);
        images.insert((0, i as u8), t2(img.clone(), gg.clone()));
        images.insert((1, i as u8), t2(ci, xx.clone()));
    }
    TwistingMap::from_generators(name, a, c, images)
}

/// ψ_{α_(m)}: α scales every generator of C by q^m.
pub fn alpha_m(a: Alg, c: Alg, q: &Scalar, m: u32) -> TwistingMap {
    let f = q.pow(m as i64);
    let alpha: Vec<NcPoly> = (0..c.pres().ngens()).map(|i| NcPoly::letter(i as u8).scale(&f)).collect();
    taft_twist(&format!("psi_alpha({m})"), a, c, &alpha)
}

/// ψ_α(Gᵃ Xᵇ ⊗ w) = αᵃ(w) ⊗ Gᵃ Xᵇ with α scaling C's generators by f,
/// evaluated directly on normal words.
pub fn alpha_closed_form(f: &Scalar, wa: &Word, wc: &Word) -> Tensor {
    let ga = wa.letters().iter().filter(|&&l| l == 0).count() as i64;
    let scale = f.pow(ga * wc.len() as i64);
    Tensor::pure(vec![wc.clone(), wa.clone()], scale)
}

/// kZ_3 on a generator and its inverse, so that conjugation by an
/// involution is length preserving.
pub fn z3_with_inverse() -> Rc<Hopf> {
    let mut p = Presentation::new("kZ_3", FieldTag::Rational, &["c", "d"]);
    let (c, d) = (p.p("c"), p.p("d"));
    p.rule("c c", d.clone()).rule("d d", c.clone()).rule("c d", NcPoly::one()).rule("d c", NcPoly::one());
    p.star_pairs(&[("c", "d")]);
    let h = alg(p);
    let delta = vec![t2(c.clone(), c.clone()), t2(d.clone(), d.clone())];
    Rc::new(Hopf::new(h, delta, vec![Scalar::one(), Scalar::one()], vec![d, c]))
}

/// kZ_2 ⋉ kZ_3 with g▷c = c⁻¹ and trivial right action: the group algebra
/// of S_3.
pub fn s3_matched_pair() -> MatchedPair {
    let a = group_algebra(2, "g");
    let c = z3_with_inverse();
    let left: Action = Rc::new(|wa: &Word, wc: &Word| {
        let flip = wa.len() % 2 == 1;
        NcPoly::word(wc.letters().iter().map(|&l| if flip { 1 - l } else { l }).collect())
    });
    let right: Action = Rc::new(|wa: &Word, _wc: &Word| NcPoly::word(wa.clone()));
    MatchedPair { a, c, left, right }
}

/// kZ_n acting on kZ_n by gᵃ▷cᵇ = qᵃcᵇ (b > 0): a module but not a module
/// coalgebra.
pub fn scaling_matched_pair(n: u32) -> MatchedPair {
    let a = group_algebra(n, "g");
    let c = group_algebra(n, "c");
    let q = root(n, 1);
    let left: Action = Rc::new(move |wa: &Word, wc: &Word| {
        let f = if wc.is_empty() { Scalar::one() } else { q.pow(wa.len() as i64) };
        NcPoly::monomial(f, wc.clone())
    });
    let right: Action = Rc::new(|wa: &Word, _wc: &Word| NcPoly::word(wa.clone()));
    MatchedPair { a, c, left, right }
}

/// A_s as a right T_n(q)-comodule algebra; B = k.
pub fn taft_comodule(n: u32, k: i64, s: i64) -> Rc<ComoduleAlgebra> {
    let h = taft(n, k);
    let a = a_s(n, k, s);
    let delta = a_s_coaction(&a, &h);
    Rc::new(ComoduleAlgebra::new(&format!("A_{s} over T_{n}"), a, h, delta, Vec::new(), None))
}

/// A quotient push-forward whose ideal violates A·I ⊆ I·A.
pub struct IdealToy {
    pub ca: Rc<ComoduleAlgebra>,
    pub ideal: Vec<NcPoly>,
    pub c: Alg,
    pub f_gens: Vec<NcPoly>,
    pub lifts: Vec<NcPoly>,
}

/// A = ⟨u, v | v² = 1, u² = 0, uvu = 0⟩ over kZ_2 with δ(u) = u⊗1,
/// δ(v) = v⊗g. B = span{1, u, vuv}, I = ⟨u⟩, and v·u ∉ I·A = span{u, uv}.
/// C = B/I = k[t]/(t²) with F(u) = 0, F(vuv) = t.
pub fn ideal_toy() -> IdealToy {
    let h = group_algebra(2, "g");
    let mut p = Presentation::new("A_toy", FieldTag::Rational, &["u", "v"]);
    p.rule("v v", NcPoly::one()).rule("u u", NcPoly::zero()).rule("u v u", NcPoly::zero());
    let (u, v, vuv) = (p.p("u"), p.p("v"), p.p("v u v"));
    let a = alg(p);
    let g = h.h.pres().p("g");
    let delta = vec![t2(u.clone(), NcPoly::one()), t2(v, g)];
    let ca = Rc::new(ComoduleAlgebra::new("A_toy over kZ_2", a, h, delta, vec![u.clone(), vuv.clone()], None));
    let mut cp = Presentation::new("k[t]/(t^2)", FieldTag::Rational, &["t"]);
    cp.rule("t t", NcPoly::zero());
    let t = cp.p("t");
    IdealToy { ca, ideal: vec![u], c: alg(cp), f_gens: vec![NcPoly::zero(), t], lifts: vec![vuv] }
}
