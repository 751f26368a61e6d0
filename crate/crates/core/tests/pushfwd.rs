use std::rc::Rc;

use hgx_core::coeff::FieldTag;
use hgx_core::comodule::Sampling;
use hgx_core::error::Error;
use hgx_core::hopf::convolution_inverse;
use hgx_core::ncalg::{Algebra, Extension, LinearMap, NcPoly, Presentation, Tensor, Word};
use hgx_core::pushfwd::{
    check_descent, check_inner_b, check_pf_algebra, galois_object_pf, quotient_psi, quotient_pushforward, transfer_cleaving, PushForward,
};
use hgx_core::report::Report;
use hgx_core::suites::data;
use hgx_core::twist::TwistingMap;

fn assert_pass(r: &Report) {
    assert!(r.passed(), "{r}");
}

fn taft_pf(n: u32, k: i64, s: i64, m: u32) -> (Rc<PushForward>, Report) {
    let ca = data::taft_comodule(n, k, s);
    let c = data::cyclic(n);
    let psi = data::alpha_m(ca.a.clone(), c.clone(), &data::root(n, k), m);
    galois_object_pf(ca, c, Rc::new(psi), 2 * n, Sampling::default())
}

#[test]
fn taft_galois_object_pushforward() {
    for (n, k, s, m) in [(2, 1, 0, 1), (2, 1, 1, 0), (3, 1, 0, 1), (3, 2, 1, 2)] {
        let (_, r) = taft_pf(n, k, s, m);
        assert_pass(&r);
        assert!(r.entry("galois/chi^psi bijective").is_some());
    }
}

fn ga_xb(a: u32, b: u32) -> Word {
    Word::from([vec![0u8; a as usize], vec![1u8; b as usize]].concat())
}

#[test]
fn taft_product_closed_form() {
    let (n, m) = (3u32, 1u32);
    let (pf, _) = taft_pf(n, 1, 0, m);
    let q = data::root(n, 1);
    let cw = |j: u32| Word::pow(0, j as usize);
    for (i, j) in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
        for (a1, b1, a2, b2) in (0..n * n * n * n).map(|t| (t % n, t / n % n, t / (n * n) % n, t / (n * n * n))) {
            let x = Tensor::basis(&[cw(i), ga_xb(a1, b1)]);
            let y = Tensor::basis(&[cw(j), ga_xb(a2, b2)]);
            let want = if b1 + b2 >= n {
                Tensor::zero(2)
            } else {
                let f = q.pow((b1 * a2 + m * a1 * j) as i64);
                Tensor::pure(vec![cw((i + j) % n), ga_xb((a1 + a2) % n, b1 + b2)], f)
            };
            assert_eq!(pf.mul(&x, &y).unwrap(), want, "c^{i} G^{a1} X^{b1} * c^{j} G^{a2} X^{b2}");
        }
    }
}

#[test]
fn flip_with_commutative_target() {
    let ca = data::taft_comodule(2, 1, 1);
    let c = data::cyclic(2);
    let psi = TwistingMap::flip(ca.a.clone(), c.clone());
    let (_, r) = galois_object_pf(ca, c, Rc::new(psi), 4, Sampling::default());
    assert_pass(&r);
}

#[test]
fn cleaving_map_transfers() {
    let n = 3;
    let (pf, _) = taft_pf(n, 1, 0, 1);
    let (h, a) = (pf.ca.h.h.clone(), pf.ca.a.clone());
    let ap = a.pres();
    let gamma = LinearMap::on_generators_poly("gamma", h.clone(), a.clone(), Extension::AlgebraMorphism, vec![ap.p("G"), ap.p("X")]);
    let gn = ap.p("G G");
    let gamma_bar = LinearMap::on_generators_poly("gamma-bar", h, a.clone(), Extension::AntiAlgebraMorphism, vec![gn.clone(), a.mul(&ap.p("X"), &gn).neg()]);
    assert_pass(&transfer_cleaving(&pf, &gamma, &gamma_bar, 2 * n, true, Sampling::default()));

    // X^n = 1: the same linear map is a cleaving map but not an algebra map
    let (pf, _) = taft_pf(2, 1, 1, 1);
    let hopf = pf.ca.h.clone();
    let gamma = LinearMap::from_fn("gamma", hopf.h.clone(), vec![pf.ca.a.clone()], 4, |w| Tensor::basis(&[w.clone()]));
    let (gamma_bar, r) = convolution_inverse(&hopf, &gamma, 4, None).unwrap();
    assert_pass(&r);
    assert_pass(&transfer_cleaving(&pf, &gamma, &gamma_bar, 4, false, Sampling::default()));
    let r = transfer_cleaving(&pf, &gamma, &gamma_bar, 4, true, Sampling::default());
    assert!(!r.passed());
}

#[test]
fn ideal_condition_violation_is_reported() {
    let toy = data::ideal_toy();
    let r = quotient_pushforward(toy.ca.clone(), toy.ideal.clone(), toy.c.clone(), toy.f_gens.clone(), toy.lifts.clone(), 4, Sampling::default());
    match r {
        Err(Error::IdealConditionFailed(w)) => assert!(w.contains("v"), "{w}"),
        Err(e) => panic!("unexpected error {e}"),
        Ok(_) => panic!("ideal condition should fail"),
    }
    let psi = Rc::new(quotient_psi(&toy.ca, toy.c.clone(), toy.lifts.clone()));
    let pf = Rc::new(PushForward::new("toy", toy.ca.clone(), toy.c.clone(), toy.f_gens.clone(), psi, 4));
    let r = check_descent(&pf, 4, Sampling::default());
    let e = r.entry("(f-lin) psi(a (x) c F(b)) = psi(a (x) c) b").unwrap();
    assert!(e.witness.is_some(), "{r}");
}

#[test]
fn zero_ideal_gives_identity_pushforward() {
    let toy = data::ideal_toy();
    let mut p = Presentation::new("B_toy", FieldTag::Rational, &["s", "t"]);
    for w in ["s s", "s t", "t s", "t t"] {
        p.rule(w, NcPoly::zero());
    }
    let (s, t) = (p.p("s"), p.p("t"));
    let b = Rc::new(Algebra::new(p).unwrap());
    let ap = toy.ca.a.pres();
    let lifts = vec![ap.p("u"), ap.p("v u v")];
    let (iso, r) = quotient_pushforward(toy.ca.clone(), vec![], b, vec![s, t], lifts, 4, Sampling::default()).unwrap();
    assert_pass(&r);
    assert_eq!(iso.ideal.dim(), 0);
    assert_pass(&check_descent(&iso.pf, 4, Sampling::default()));
    assert_pass(&check_pf_algebra(&iso.pf, 4, Sampling::default()));
    assert_pass(&check_inner_b(&iso.pf, 4, Sampling::default()));
    // (1 (x) v)(1 (x) v) = 1 (x) 1
    let x = iso.g_inv(&ap.p("v"));
    let y = iso.pf.mul(&x, &x).unwrap();
    assert!(iso.pf.decide_zero(&y.sub(&iso.pf.unit())).is_equal());
}
