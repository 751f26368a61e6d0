use std::rc::Rc;

use hgx_core::comodule::{Galois, Sampling};
use hgx_core::error::Error;
use hgx_core::esbialg::{base_ring_extension, build_es, build_es_pf, check_gamma, check_tilde_gamma, gamma, Bialgebroid, Coring};
use hgx_core::ncalg::Tensor;
use hgx_core::pushfwd::PushForward;
use hgx_core::report::Report;
use hgx_core::suites::data;
use hgx_core::twist::TwistingMap;

fn assert_pass(r: &Report) {
    assert!(r.passed(), "{r}");
}

fn taft_suite(n: u32, k: i64, s: i64, m: u32) {
    let d = 2 * n;
    let ca = data::taft_comodule(n, k, s);
    let c = data::cyclic(n);
    let psi = Rc::new(data::alpha_m(ca.a.clone(), c.clone(), &data::root(n, k), m));
    let g = Rc::new(Galois::new(ca.clone(), d));
    let (l, r) = build_es(g.clone(), d, Sampling::default()).unwrap();
    assert_pass(&r);
    assert_eq!(l.basis.len() as u32, n * n);
    let pf = Rc::new(PushForward::new("taft", ca, c, vec![], psi, d));
    let (m_, r) = build_es_pf(pf.clone(), g, d, Sampling::default()).unwrap();
    assert_pass(&r);
    assert_eq!(m_.basis.len() as u32, n.pow(4));
    assert_pass(&check_gamma(&l, &m_, Sampling::default()));
    let l = Rc::new(l);
    let (lt, r) = base_ring_extension(l, pf, d).unwrap();
    assert_pass(&r);
    assert_eq!(lt.basis.len() as u32, n.pow(4));
    let r = check_tilde_gamma(&lt, &m_, Sampling::default()).unwrap();
    assert_pass(&r);
    assert!(r.entry("gamma~ bijective for invertible psi").is_some(), "{r}");
}

#[test]
fn taft_two_bialgebroids() {
    taft_suite(2, 1, 0, 1);
    taft_suite(2, 1, 1, 0);
}

#[test]
fn taft_three_bialgebroids() {
    taft_suite(3, 1, 0, 1);
}

#[test]
fn gamma_is_not_onto_m() {
    // dim L = n^2 < dim M = n^4, so gamma alone cannot be bijective
    let n = 2;
    let ca = data::taft_comodule(n, 1, 0);
    let c = data::cyclic(n);
    let psi = Rc::new(data::alpha_m(ca.a.clone(), c.clone(), &data::root(n, 1), 1));
    let g = Rc::new(Galois::new(ca.clone(), 4));
    let (l, _) = build_es(g.clone(), 4, Sampling::default()).unwrap();
    let pf = Rc::new(PushForward::new("taft", ca, c, vec![], psi, 4));
    let (m, _) = build_es_pf(pf, g, 4, Sampling::default()).unwrap();
    let images: Vec<Tensor> = l.basis().iter().map(gamma).collect();
    assert_eq!(m.total().independent(&images).len(), l.basis.len());
    assert!(l.basis.len() < m.basis.len());
    assert_eq!(gamma(&l.unit()), m.unit());
}

#[test]
fn flip_target_is_not_inner_b_sensitive() {
    let ca = data::taft_comodule(2, 1, 1);
    let c = data::cyclic(2);
    let psi = Rc::new(TwistingMap::flip(ca.a.clone(), c.clone()));
    let g = Rc::new(Galois::new(ca.clone(), 4));
    let (l, _) = build_es(g.clone(), 4, Sampling::default()).unwrap();
    let pf = Rc::new(PushForward::new("flip", ca, c, vec![], psi, 4));
    let (m, r) = build_es_pf(pf.clone(), g, 4, Sampling::default()).unwrap();
    assert_pass(&r);
    let (lt, _) = base_ring_extension(Rc::new(l), pf, 4).unwrap();
    assert_pass(&check_tilde_gamma(&lt, &m, Sampling::default()).unwrap());
}

#[test]
fn inner_b_failure_is_an_error() {
    let toy = data::ideal_toy();
    let psi = Rc::new(hgx_core::pushfwd::quotient_psi(&toy.ca, toy.c.clone(), toy.lifts.clone()));
    let pf = Rc::new(PushForward::new("toy", toy.ca.clone(), toy.c.clone(), toy.f_gens.clone(), psi, 4));
    let g = Rc::new(Galois::new(toy.ca.clone(), 4));
    let l = match build_es(g.clone(), 4, Sampling::default()) {
        Ok((l, _)) => Rc::new(l),
        Err(e) => panic!("{e}"),
    };
    let (lt, _) = base_ring_extension(l, pf.clone(), 4).unwrap();
    let (m, _) = build_es_pf(pf, g, 4, Sampling::default()).unwrap();
    match check_tilde_gamma(&lt, &m, Sampling::default()) {
        Err(Error::InnerBLinearityFailed(w)) => assert!(!w.is_empty()),
        Err(e) => panic!("unexpected {e}"),
        Ok(r) => panic!("innerB should fail\n{r}"),
    }
}
