use std::rc::Rc;

use hgx_core::cocycle::{check_cocycle, compare_with_original, deform, pullback_cocycle, TwoCocycle};
use hgx_core::coeff::Scalar;
use hgx_core::comodule::{Galois, StrongConnection};
use hgx_core::error::Error;
use hgx_core::hopf::Hopf;
use hgx_core::ncalg::{Extension, LinearMap, NcPoly, Word};
use hgx_core::report::Report;
use hgx_core::suites::data;

fn assert_pass(r: &Report) {
    assert!(r.passed(), "{r}");
}

fn to_group(t: &Rc<Hopf>, kz: &Rc<Hopf>) -> LinearMap {
    let g = kz.h.pres().p("g");
    LinearMap::on_generators_poly("x -> 0", t.h.clone(), kz.h.clone(), Extension::AlgebraMorphism, vec![g, NcPoly::zero()])
}

fn taft_cocycle(n: u32) -> Rc<TwoCocycle> {
    let t = data::taft(n, 1);
    let kz = data::group_algebra(n, "g");
    let zeta = data::root(n, 1);
    let s = TwoCocycle::bicharacter(kz.clone(), &zeta).unwrap();
    Rc::new(pullback_cocycle(&s, t.clone(), &to_group(&t, &kz), 2 * n).unwrap())
}

#[test]
fn trivial_and_bicharacter_cocycles() {
    let t = data::taft(2, 1);
    assert_pass(&check_cocycle(&TwoCocycle::trivial(t, 4).unwrap(), 4));
    for n in [2, 3, 4] {
        let kz = data::group_algebra(n, "g");
        let s = TwoCocycle::bicharacter(kz, &data::root(n, 1)).unwrap();
        assert_pass(&check_cocycle(&s, n));
    }
}

#[test]
fn solved_inverse_matches_supplied() {
    let kz = data::group_algebra(3, "g");
    let zeta = data::root(3, 1);
    let e = |u: &Word, v: &Word| zeta.pow((u.len() * v.len()) as i64);
    let solved = TwoCocycle::from_fn("solved", kz.clone(), 3, e, None).unwrap();
    let given = TwoCocycle::bicharacter(kz, &zeta).unwrap();
    assert_eq!(solved.inverse_entries(), given.inverse_entries());
}

#[test]
fn taft_pullback_table() {
    for n in [2, 3] {
        let s = taft_cocycle(n);
        assert_pass(&check_cocycle(&s, 2 * n));
        let zeta = data::root(n, 1);
        for u in s.words() {
            for v in s.words() {
                let (gu, xu) = counts(&u);
                let (gv, xv) = counts(&v);
                let want = if xu == 0 && xv == 0 { zeta.pow((gu * gv) as i64) } else { Scalar::zero() };
                assert_eq!(s.value(&u, &v), want);
            }
        }
    }
}

fn counts(w: &Word) -> (usize, usize) {
    let x = w.letters().iter().filter(|&&l| l == 1).count();
    (w.len() - x, x)
}

#[test]
fn pullback_along_identity_and_bad_maps() {
    let kz = data::group_algebra(2, "g");
    let s = TwoCocycle::bicharacter(kz.clone(), &Scalar::int(-1)).unwrap();
    let id = LinearMap::identity(kz.h.clone());
    let same = pullback_cocycle(&s, kz.clone(), &id, 2).unwrap();
    assert_eq!(same.entries(), s.entries());

    let neg = LinearMap::on_generators_poly("g -> -g", kz.h.clone(), kz.h.clone(), Extension::AlgebraMorphism, vec![kz.h.pres().p("g").neg()]);
    assert!(matches!(pullback_cocycle(&s, kz.clone(), &neg, 2), Err(Error::NotCoalgebraMap(_))));

    let t = data::taft(2, 1);
    let bad = LinearMap::on_generators_poly("x -> g", t.h.clone(), kz.h.clone(), Extension::AlgebraMorphism, vec![kz.h.pres().p("g"); 2]);
    assert!(matches!(pullback_cocycle(&s, t, &bad, 2), Err(Error::NotCoalgebraMap(_))));
}

fn strong(ca: &Rc<hgx_core::comodule::ComoduleAlgebra>, n: u32) -> StrongConnection {
    let g = Galois::new(ca.clone(), 2 * n);
    StrongConnection::from_tau(&g, &ca.h.test_words(0)).unwrap()
}

#[test]
fn trivial_deformation_reproduces_tables() {
    let ca = data::taft_comodule(2, 1, 1);
    let ell = strong(&ca, 2);
    let triv = Rc::new(TwoCocycle::trivial(ca.h.clone(), 4).unwrap());
    let (def, r) = deform(&ca, &ell, &triv, 4).unwrap();
    assert_pass(&r);
    assert_pass(&compare_with_original(&ca, &ell, &def, 4));
}

#[test]
fn bicharacter_deformation_of_taft() {
    for s in [0, 1] {
        let ca = data::taft_comodule(2, 1, s);
        let ell = strong(&ca, 2);
        let sigma = taft_cocycle(2);
        let (def, r) = deform(&ca, &ell, &sigma, 4).unwrap();
        assert_pass(&r);
        assert!(def.flags.ell && def.flags.prop_ell);
        // G • G = σ̄(g,g) G² = −1.
        let gg = Word::letter(0);
        assert_eq!(def.ca.a.mul_words(&gg, &gg), NcPoly::constant(Scalar::int(-1)));
        // u_σ(g) = σ(g, g⁻¹).
        let g = Word::letter(0);
        assert_eq!(def.u.apply_word(&g).unwrap().to_scalar(), sigma.value(&g, &g));
        let cmp = compare_with_original(&ca, &ell, &def, 4);
        assert!(!cmp.entry("bullet_sigma = m_A").unwrap().passed());
    }
}

#[test]
fn deformation_n3() {
    let ca = data::taft_comodule(3, 1, 1);
    let ell = strong(&ca, 3);
    let (def, r) = deform(&ca, &ell, &taft_cocycle(3), 6).unwrap();
    eprintln!("{r}");
    assert_pass(&r);
    assert!(def.flags.prop_ell);
    assert_eq!(r.entry("ell_sigma/(prop-ell) ell(kh) = ell1(h) ell1(k) (x) ell2(k) ell2(h)").unwrap().cases, 81);
    assert_eq!(r.entry("bullet_sigma associative and unital").unwrap().cases, 729 + 9);
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(12))]
    #[test]
    fn bicharacter_deformations_are_associative(n in 2u32..4, k in 0i64..3, s in 0i64..2) {
        let t = data::taft(n, 1);
        let kz = data::group_algebra(n, "g");
        let sig = TwoCocycle::bicharacter(kz.clone(), &data::root(n, k)).unwrap();
        let sigma = Rc::new(pullback_cocycle(&sig, t.clone(), &to_group(&t, &kz), 2 * n).unwrap());
        let ca = data::taft_comodule(n, 1, s);
        let ell = strong(&ca, n);
        let (def, r) = deform(&ca, &ell, &sigma, 2 * n).unwrap();
        proptest::prop_assert!(r.passed(), "{}", r);
        proptest::prop_assert!(def.flags.prop_ell);
    }
}
