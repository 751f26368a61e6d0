//! The θ-deformed SU(2) Hopf bundle O(S⁴_θ) ⊂ O(S⁷_θ) and its quotients.
//!
//! μ is a formal parameter with λ = μ², and * sends μ to μ⁻¹.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{FieldTag, Scalar};
use crate::comodule::ComoduleAlgebra;
use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::ncalg::linalg::{Echelon, Indexer};
use crate::projmod::MatrixOverAlgebra;
use crate::ncalg::{Alg, Algebra, Extension, LinearMap, NcPoly, Presentation, TKey, Tensor, Word};

/// Exponent e with λ_jk = μ^e, for 1 ≤ j, k ≤ 4.
pub fn lambda_exp(j: usize, k: usize) -> i32 {
    let up = |j: usize, k: usize| match (j, k) {
        (1, 2) | (3, 4) => 0,
        (1, 3) | (2, 4) => -1,
        (1, 4) | (2, 3) => 1,
        _ => unreachable!(),
    };
    match j.cmp(&k) {
        core::cmp::Ordering::Equal => 0,
        core::cmp::Ordering::Less => up(j, k),
        core::cmp::Ordering::Greater => -up(k, j),
    }
}

fn mu(e: i32) -> Scalar {
    Scalar::mu_pow(e)
}

fn alg(p: Presentation) -> Alg {
    Rc::new(Algebra::new(p).unwrap_or_else(|e| panic!("shipped presentation: {e}")))
}

fn zname(j: usize, star: bool) -> String {
    if star {
        format!("z{j}*")
    } else {
        format!("z{j}")
    }
}

/// Generators z1, z1*, …, z4, z4*; every pair of letters q-commutes and the
/// sphere relation is oriented as z4 z4* → 1 − Σ_{j<4} z_j z_j*, so normal
/// words are Π z_j^{m_j} (z_j*)^{n_j} with m₄n₄ = 0. With `quotient` set,
/// x = 0 is imposed as well, a central real generator r with r² = 2 is
/// adjoined, and the sphere relation splits into z₁z₁* + z₂z₂* = 1/2 =
/// z₃z₃* + z₄z₄*.
fn sphere7(quotient: bool) -> Presentation {
    let mut names: Vec<String> = Vec::new();
    if quotient {
        names.push("r".into());
    }
    for j in 1..=4 {
        names.push(zname(j, false));
        names.push(zname(j, true));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let name = if quotient { "O(S^7_theta)/<x>" } else { "O(S^7_theta)" };
    let mut p = Presentation::new(name, FieldTag::RationalFunction, &refs);
    let letters: Vec<(usize, bool)> = (1..=4).flat_map(|j| [(j, false), (j, true)]).collect();
    for (i, &(j, s)) in letters.iter().enumerate() {
        for &(k, t) in &letters[..i] {
            // x y = c y x with c = λ_jk for equal star type, λ_kj otherwise
            let e = if s == t { lambda_exp(j, k) } else { lambda_exp(k, j) };
            let rhs = p.p(&format!("{} {}", zname(k, t), zname(j, s))).scale(&mu(e));
            p.rule(&format!("{} {}", zname(j, s), zname(k, t)), rhs);
        }
    }
    let zz = |p: &Presentation, j: usize| p.p(&format!("z{j} z{j}*"));
    if quotient {
        for &(j, s) in &letters {
            let rhs = p.p(&format!("r {}", zname(j, s)));
            p.rule(&format!("{} r", zname(j, s)), rhs);
        }
        p.rule("r r", NcPoly::constant(Scalar::int(2)));
        let half = NcPoly::constant(Scalar::frac(1, 2));
        let r2 = half.sub(&zz(&p, 1));
        let r4 = half.sub(&zz(&p, 3));
        p.rule("z2 z2*", r2).rule("z4 z4*", r4);
        p.star_pairs(&[("r", "r")]);
    } else {
        let rhs = NcPoly::one().sub(&zz(&p, 1)).sub(&zz(&p, 2)).sub(&zz(&p, 3));
        p.rule("z4 z4*", rhs);
    }
    for j in 1..=4 {
        p.star_pairs(&[(&zname(j, false), &zname(j, true))]);
    }
    p
}

/// O(S⁷_θ).
pub fn s7() -> Alg {
    alg(sphere7(false))
}

/// O(S⁷_θ)/⟨x⟩ with the adjoined symbol r = √2.
pub fn s7_mod_x() -> Alg {
    alg(sphere7(true))
}

/// The fundamental matrix w = [[w1, −w2*], [w2, w1*]] of O(SU(2)).
pub fn w_matrix(h: &Alg) -> [[NcPoly; 2]; 2] {
    let p = h.pres();
    [[p.p("w1"), p.p("w2*").neg()], [p.p("w2"), p.p("w1*")]]
}

/// O(SU(2)) = k[w1, w1*, w2, w2*]/(w1 w1* + w2 w2* − 1) with Δ(w) = w ⊗̇ w,
/// ε(w) = 1 and S(w) = w*.
pub fn su2() -> Rc<Hopf> {
    let mut p = Presentation::new("O(SU(2))", FieldTag::Rational, &["w1", "w1*", "w2", "w2*"]);
    let names = ["w1", "w1*", "w2", "w2*"];
    for i in 0..4 {
        for k in 0..i {
            let rhs = p.p(&format!("{} {}", names[k], names[i]));
            p.rule(&format!("{} {}", names[i], names[k]), rhs);
        }
    }
    let rhs = NcPoly::one().sub(&p.p("w1 w1*"));
    p.rule("w2 w2*", rhs);
    p.star_pairs(&[("w1", "w1*"), ("w2", "w2*")]);
    let h = alg(p);
    let w = w_matrix(&h);
    let entry = |g: usize| match g {
        0 => (0, 0, Scalar::one()),
        1 => (1, 1, Scalar::one()),
        2 => (1, 0, Scalar::one()),
        _ => (0, 1, Scalar::int(-1)),
    };
    let mut delta = Vec::new();
    let mut eps = Vec::new();
    let mut s = Vec::new();
    for g in 0..4 {
        let (a, b, sign) = entry(g);
        let mut t = Tensor::zero(2);
        for c in 0..2 {
            t.add_scaled(&Tensor::of_polys(&[&w[a][c], &w[c][b]]), &sign);
        }
        delta.push(t);
        eps.push(if a == b { Scalar::one() } else { Scalar::zero() });
        // S(w_ab) = (w_ba)*
        let sw = h.star(&w[b][a]).unwrap_or_else(|e| panic!("{e}"));
        s.push(sw.scale(&sign));
    }
    Rc::new(Hopf::new(h, delta, eps, s))
}

/// The 4×2 matrix u with columns (z1, z2, z3, z4) and (−z2*, z1*, −z4*, z3*).
pub fn u_matrix(a: &Alg) -> Vec<[NcPoly; 2]> {
    let p = a.pres();
    let z = |j: usize, s: bool| p.p(&zname(j, s));
    vec![
        [z(1, false), z(2, true).neg()],
        [z(2, false), z(1, true)],
        [z(3, false), z(4, true).neg()],
        [z(4, false), z(3, true)],
    ]
}

/// Position (i, b) and sign with z = sign · u_ib for the letter z.
fn u_position(j: usize, star: bool) -> (usize, usize, Scalar) {
    match (j, star) {
        (j, false) => (j - 1, 0, Scalar::one()),
        (1, true) => (1, 1, Scalar::one()),
        (2, true) => (0, 1, Scalar::int(-1)),
        (3, true) => (3, 1, Scalar::one()),
        (4, true) => (2, 1, Scalar::int(-1)),
        _ => unreachable!(),
    }
}

/// δ(u) = u ⊗̇ w on the generators of `a` (r ↦ r⊗1 when present).
fn coaction(a: &Alg, h: &Hopf) -> Vec<Tensor> {
    let u = u_matrix(a);
    let w = w_matrix(&h.h);
    let mut out = Vec::new();
    for g in a.pres().generators.iter() {
        if g == "r" {
            out.push(Tensor::of_polys(&[&a.pres().p("r"), &NcPoly::one()]));
            continue;
        }
        let j = (g.as_bytes()[1] - b'0') as usize;
        let (i, b, sign) = u_position(j, g.ends_with('*'));
        let mut t = Tensor::zero(2);
        for c in 0..2 {
            t.add_scaled(&Tensor::of_polys(&[&u[i][c], &w[c][b]]), &sign);
        }
        out.push(t);
    }
    out
}

/// α = 2(z₁z₃* + z₂*z₄), β = 2(−z₁*z₄ + z₂z₃*), x = z₁z₁* + z₂z₂* − z₃z₃* − z₄z₄*,
/// returned as [α, α*, β, β*, x].
pub fn s4_in_s7(a: &Alg) -> Vec<NcPoly> {
    let p = a.pres();
    let two = Scalar::int(2);
    let alpha = a.nf(&p.p("z1 z3*").add(&p.p("z2* z4")).scale(&two));
    let beta = a.nf(&p.p("z2 z3*").sub(&p.p("z1* z4")).scale(&two));
    let x = a.nf(&p.p("z1 z1*").add(&p.p("z2 z2*")).sub(&p.p("z3 z3*")).sub(&p.p("z4 z4*")));
    let st = |q: &NcPoly| a.star(q).unwrap_or_else(|e| panic!("{e}"));
    vec![alpha.clone(), st(&alpha), beta.clone(), st(&beta), x]
}

/// Rules shared by O(S⁴_θ) and its quotient O(S³_θ): the relations
/// αβ = λβα, α*β* = λβ*α*, β*α = λαβ*, βα* = λα*β, and normality of α, β.
fn s4_core(p: &mut Presentation) {
    let lam = mu(2);
    let lam_inv = mu(-2);
    let pp = |p: &Presentation, s: &str| p.p(s);
    let r = pp(p, "alpha beta").scale(&lam_inv);
    p.rule("beta alpha", r);
    let r = pp(p, "alpha* beta*").scale(&lam_inv);
    p.rule("beta* alpha*", r);
    let r = pp(p, "alpha beta*").scale(&lam);
    p.rule("beta* alpha", r);
    let r = pp(p, "alpha* beta").scale(&lam);
    p.rule("beta alpha*", r);
    let r = pp(p, "alpha alpha*");
    p.rule("alpha* alpha", r);
    let r = pp(p, "beta beta*");
    p.rule("beta* beta", r);
    p.star_pairs(&[("alpha", "alpha*"), ("beta", "beta*")]);
    for g in ["alpha", "alpha*", "beta", "beta*"] {
        p.set_degree(g, 2);
    }
}

/// O(S⁴_θ) on α, α*, β, β*, x with x central and real and
/// α*α + β*β + x² = 1.
pub fn s4() -> Alg {
    let mut p = Presentation::new("O(S^4_theta)", FieldTag::RationalFunction, &["alpha", "alpha*", "beta", "beta*", "x"]);
    s4_core(&mut p);
    for g in ["alpha", "alpha*", "beta", "beta*"] {
        let r = p.p(&format!("{g} x"));
        p.rule(&format!("x {g}"), r);
    }
    let r = NcPoly::one().sub(&p.p("alpha alpha*")).sub(&p.p("beta beta*"));
    p.rule("x x", r);
    p.star_pairs(&[("x", "x")]);
    p.set_degree("x", 2);
    alg(p)
}

/// O(S³_θ) = O(S⁴_θ)/⟨x⟩.
pub fn s3() -> Alg {
    let mut p = Presentation::new("O(S^3_theta)", FieldTag::RationalFunction, &["alpha", "alpha*", "beta", "beta*"]);
    s4_core(&mut p);
    let r = NcPoly::one().sub(&p.p("alpha alpha*"));
    p.rule("beta beta*", r);
    alg(p)
}

/// O(S²) = O(S⁴_θ)/⟨α, α*⟩ = k[β, β*, x]/(β*β + x² − 1).
pub fn s2() -> Alg {
    let mut p = Presentation::new("O(S^2)", FieldTag::RationalFunction, &["beta", "beta*", "x"]);
    let names = ["beta", "beta*", "x"];
    for i in 0..3 {
        for k in 0..i {
            let r = p.p(&format!("{} {}", names[k], names[i]));
            p.rule(&format!("{} {}", names[i], names[k]), r);
        }
    }
    let r = NcPoly::one().sub(&p.p("beta beta*"));
    p.rule("x x", r);
    p.star_pairs(&[("beta", "beta*"), ("x", "x")]);
    for g in names {
        p.set_degree(g, 2);
    }
    alg(p)
}

/// O(S⁴_θ) ⊂ O(S⁷_θ) as an O(SU(2))-comodule algebra, with B presented.
pub fn theta_comodule() -> Rc<ComoduleAlgebra> {
    let a = s7();
    let h = su2();
    let delta = coaction(&a, &h);
    let b_gens = s4_in_s7(&a);
    Rc::new(ComoduleAlgebra::new("O(S^7_theta) over O(SU(2))", a, h, delta, b_gens, Some(s4())))
}

/// O(S⁷_θ)/⟨x⟩ (with r = √2) as an O(SU(2))-comodule algebra.
pub fn theta_quotient_comodule() -> Rc<ComoduleAlgebra> {
    let a = s7_mod_x();
    let h = su2();
    let delta = coaction(&a, &h);
    let b_gens = s4_in_s7(&a)[..4].to_vec();
    Rc::new(ComoduleAlgebra::new("O(S^7_theta)/<x> over O(SU(2))", a, h, delta, b_gens, None))
}

/// Σ_i (u*)_{ai} ⊗ u_{ib} for each generator w_ab of O(SU(2)), in the
/// generator order w1, w1*, w2, w2*.
pub fn theta_ell(ca: &ComoduleAlgebra) -> Vec<Tensor> {
    let a = &ca.a;
    let u = u_matrix(a);
    let index = [(0, 0, Scalar::one()), (1, 1, Scalar::one()), (1, 0, Scalar::one()), (0, 1, Scalar::int(-1))];
    index
        .iter()
        .map(|(ra, cb, sign)| {
            let mut t = Tensor::zero(2);
            for row in &u {
                let ustar = a.star(&row[*ra]).unwrap_or_else(|e| panic!("{e}"));
                t.add_scaled(&Tensor::of_polys(&[&ustar, &row[*cb]]), sign);
            }
            t
        })
        .collect()
}

/// The translation map on the letters of O(SU(2)), τ(w_ab) = Σ_i (u*)_{ai} ⊗_B u_{ib}.
pub fn theta_tau_table(ca: &ComoduleAlgebra) -> BTreeMap<Word, Tensor> {
    theta_ell(ca).into_iter().enumerate().map(|(g, t)| (Word::letter(g as u8), t)).collect()
}

/// p = uu*, the 4×4 projection with entries in B ⊂ A.
pub fn projection(a: &Alg) -> Vec<Vec<NcPoly>> {
    let u = u_matrix(a);
    let mut p = vec![vec![NcPoly::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for b in 0..2 {
                let s = a.star(&u[j][b]).unwrap_or_else(|e| panic!("{e}"));
                p[i][j] = p[i][j].add(&a.mul(&u[i][b], &s));
            }
        }
    }
    p
}

/// p = uu* with entries rewritten in the generators of O(S⁴_θ).
pub fn projection_over_s4(ca: &ComoduleAlgebra) -> Result<MatrixOverAlgebra> {
    let b = ca.b.clone().expect("B is presented");
    let rows = projection(&ca.a)
        .iter()
        .map(|r| r.iter().map(|x| pull_back_to_b(&ca.a, &b, &ca.b_gens, x, 2)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixOverAlgebra::new(b, rows))
}

/// Expresses an element of A lying in the image of B as a polynomial on
/// B's normal words of degree ≤ d, through the generator images `b_gens`.
pub fn pull_back_to_b(a: &Alg, b: &Alg, b_gens: &[NcPoly], x: &NcPoly, d: u32) -> Result<NcPoly> {
    let words = b.basis(d);
    let mut idx: Indexer<TKey> = Indexer::new();
    let mut ech = Echelon::tracking();
    for (i, w) in words.iter().enumerate() {
        let img = w.letters().iter().fold(NcPoly::one(), |acc, &l| a.mul(&acc, &b_gens[l as usize]));
        ech.insert(Tensor::from_poly(&img).to_svec(&mut idx), i as u32);
    }
    let miss = || Error::NoSolutionAtBound { bound: d, target: a.fmt(x) };
    let v = Tensor::from_poly(&a.nf(x)).to_svec_known(&idx).ok_or_else(miss)?;
    let sol = ech.solve(&v).ok_or_else(miss)?;
    Ok(sol.into_iter().map(|(i, c)| (words[i as usize].clone(), c)).collect())
}

/// F: O(S⁴_θ) → O(S³_θ), x ↦ 0, on the generators [α, α*, β, β*, x].
pub fn s3_f_gens(c: &Alg) -> Vec<NcPoly> {
    let p = c.pres();
    vec![p.p("alpha"), p.p("alpha*"), p.p("beta"), p.p("beta*"), NcPoly::zero()]
}

/// F: O(S⁴_θ) → O(S²), α, α* ↦ 0.
pub fn s2_f_gens(c: &Alg) -> Vec<NcPoly> {
    let p = c.pres();
    vec![NcPoly::zero(), NcPoly::zero(), p.p("beta"), p.p("beta*"), p.p("x")]
}

/// The quotient map O(S⁴_θ) → C given on generators.
pub fn quotient_map(b: &Alg, c: &Alg, f_gens: Vec<NcPoly>) -> LinearMap {
    LinearMap::on_generators_poly(&format!("{} -> {}", b.name(), c.name()), b.clone(), c.clone(), Extension::AlgebraMorphism, f_gens)
}

/// Lifts to O(S⁷_θ) of the generators of O(S³_θ) and O(S²).
pub fn s3_lifts(a: &Alg) -> Vec<NcPoly> {
    s4_in_s7(a)[..4].to_vec()
}

pub fn s2_lifts(a: &Alg) -> Vec<NcPoly> {
    s4_in_s7(a)[2..].to_vec()
}

/// The cleaving map γ(w) = √2 [[z1, −z2*], [z2, z1*]] and its convolution
/// inverse γ̄(w) = √2 [[z1*, z2*], [−z2, z1]], on O(S⁷_θ)/⟨x⟩.
pub fn s3_cleaving(ca: &ComoduleAlgebra) -> (LinearMap, LinearMap) {
    let a = &ca.a;
    let p = a.pres();
    let rz = |s: &str| p.p(&format!("r {s}"));
    let gamma = vec![rz("z1"), rz("z1*"), rz("z2"), rz("z2*")];
    let gamma_bar = vec![rz("z1*"), rz("z1"), rz("z2").neg(), rz("z2*").neg()];
    let h = ca.h.h.clone();
    (
        LinearMap::on_generators_poly("gamma", h.clone(), a.clone(), Extension::AlgebraMorphism, gamma),
        LinearMap::on_generators_poly("gamma-bar", h, a.clone(), Extension::AntiAlgebraMorphism, gamma_bar),
    )
}

/// The exponents e with y·g = μ^e g·y stated for g ∈ {α, β} and the letters
/// y = z_j, z_j*; the starred variants follow by applying *.
pub fn comm74_exponent(j: usize, star: bool, g: &str) -> i32 {
    let base = match g {
        "alpha" | "alpha*" => [1, -1, 1, -1][j - 1],
        _ => [1, -1, -1, 1][j - 1],
    };
    let e = if star { -base } else { base };
    if g.ends_with('*') {
        -e
    } else {
        e
    }
}
