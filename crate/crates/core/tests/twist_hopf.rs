use std::rc::Rc;

use hgx_core::coeff::{FieldTag, Scalar};
use hgx_core::error::Error;
use hgx_core::hopf::{
    antipode_inverse, check_bialgebra_axioms, check_matched_pair, convolution_inverse, double_crossed_product, MatchedPair,
};
use hgx_core::ncalg::{test_basis, Alg, LinearMap, NcPoly, Tensor, Word};
use hgx_core::report::Report;
use hgx_core::suites::data;
use hgx_core::twist::{
    check_twisting_conditions, invert_twisting, star_structure, twisted_product, Schedule, TwistingMap,
};
use proptest::prelude::*;

fn assert_pass(r: &Report) {
    assert!(r.passed(), "{r}");
}

fn max_degree(a: &Alg) -> u32 {
    test_basis(&**a, 0).iter().map(|w| a.degree(w)).max().unwrap_or(0)
}

#[test]
fn taft_and_group_algebras_are_hopf() {
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 1)] {
        let t = data::taft(n, k);
        assert_pass(&check_bialgebra_axioms(&t, 2 * n));
    }
    for n in 2..=4 {
        assert_pass(&check_bialgebra_axioms(&data::group_algebra(n, "g"), n));
    }
}

#[test]
fn broken_antipode_is_caught() {
    let t = data::taft(2, 1);
    let h = t.h.clone();
    let p = h.pres();
    let bad = hgx_core::hopf::Hopf::new(
        h.clone(),
        vec![
            Tensor::of_polys(&[&p.p("g"), &p.p("g")]),
            Tensor::of_polys(&[&NcPoly::one(), &p.p("x")]).add(&Tensor::of_polys(&[&p.p("x"), &p.p("g")])),
        ],
        vec![Scalar::one(), Scalar::zero()],
        vec![p.p("g"), p.p("x g")],
    );
    let r = check_bialgebra_axioms(&bad, 4);
    let e = r.entry("antipode identities").unwrap();
    assert!(!e.passed());
    assert!(e.witness.as_ref().is_some_and(|w| !w.residue.is_empty()));
}

#[test]
fn convolution_inverse_of_identity_is_antipode() {
    for (n, k) in [(2, 1), (3, 1)] {
        let t = data::taft(n, k);
        let id = LinearMap::identity(t.h.clone());
        let (inv, report) = convolution_inverse(&t, &id, 2 * n, None).unwrap();
        assert_pass(&report);
        for w in test_basis(&*t.h, 0) {
            assert_eq!(inv.apply_word(&w).unwrap(), t.s.apply_word(&w).unwrap());
        }
        // verification mode with the antipode as candidate
        let (_, report) = convolution_inverse(&t, &id, 2 * n, Some(&t.s)).unwrap();
        assert_pass(&report);
        // a wrong candidate is rejected
        assert!(matches!(convolution_inverse(&t, &id, 2 * n, Some(&id)), Err(Error::VerificationFailed(_))));
    }
}

#[test]
fn taft_antipode_inverse() {
    let t = data::taft(3, 1);
    let sinv = antipode_inverse(&t, 4, 6).unwrap();
    for w in test_basis(&*t.h, 0) {
        let back = t.s.apply(&sinv.apply_word(&w).unwrap().to_poly()).unwrap();
        assert_eq!(back, Tensor::basis(&[w.clone()]));
    }
}

#[test]
fn flip_is_a_normal_twisting_map() {
    let t = data::taft(2, 1);
    let a = data::a_s(2, 1, 1);
    let psi = TwistingMap::flip(a.clone(), t.h.clone());
    let (r, flags) = check_twisting_conditions(&psi, 4);
    assert_pass(&r);
    assert!(flags.all());
    let (inv, r) = invert_twisting(&psi, 4).unwrap();
    assert_pass(&r);
    assert!(inv.is_flip_on(4).unwrap());
    let (r, _) = star_structure(Rc::new(psi), 4);
    assert_pass(&r);
}

#[test]
fn alpha_m_family_matches_closed_form() {
    for (n, s) in [(2u32, 1i64), (3, 1), (3, 0)] {
        let q = data::root(n, 1);
        let a = data::a_s(n, 1, s);
        let c = data::cyclic(n);
        let d = max_degree(&a) + max_degree(&c);
        for m in 0..n {
            let psi = data::alpha_m(a.clone(), c.clone(), &q, m);
            let (r, flags) = check_twisting_conditions(&psi, 2 * d);
            assert_pass(&r);
            assert!(flags.all());
            let f = q.pow(m as i64);
            for wa in test_basis(&*a, 0) {
                for wc in test_basis(&*c, 0) {
                    assert_eq!(psi.apply_words(&wa, &wc).unwrap(), data::alpha_closed_form(&f, &wa, &wc));
                }
            }
        }
    }
}

/// (c'⊗GᵃXᵇ)(c⊗GᵃXᵇ) against q^{b₁a₂} c'αᵃ¹(c) ⊗ G^{a₁+a₂}X^{b₁+b₂} reduced by hand.
#[test]
fn alpha_m_product_formula() {
    for (n, s) in [(2u32, 1i64), (3, 1)] {
        let q = data::root(n, 1);
        let a = data::a_s(n, 1, s);
        let c = data::cyclic(n);
        for m in 0..n {
            let psi = data::alpha_m(a.clone(), c.clone(), &q, m);
            let f = q.pow(m as i64);
            for (a1, b1, a2, b2) in quads(n) {
                for (i, j) in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
                    let x = Tensor::basis(&[cw(i), gx(a1, b1)]);
                    let y = Tensor::basis(&[cw(j), gx(a2, b2)]);
                    let got = twisted_product(&psi, &x, &y).unwrap();
                    let mut coeff = q.pow((b1 * a2) as i64) * f.pow((a1 * j) as i64);
                    let mut b = b1 + b2;
                    if b >= n {
                        coeff = coeff * Scalar::int(s);
                        b -= n;
                    }
                    let want = Tensor::pure(vec![cw((i + j) % n), gx((a1 + a2) % n, b)], coeff);
                    assert_eq!(got, want, "n={n} m={m} ({i},{a1},{b1})({j},{a2},{b2})");
                }
            }
        }
    }
}

fn quads(n: u32) -> Vec<(u32, u32, u32, u32)> {
    let r = 0..n;
    r.clone()
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| (a, b, c, d)))))
        .collect()
}

fn cw(i: u32) -> Word {
    Word::pow(0, i as usize)
}

fn gx(a: u32, b: u32) -> Word {
    let mut w = vec![0u8; a as usize];
    w.extend(std::iter::repeat(1u8).take(b as usize));
    Word::from(w)
}

#[test]
fn alpha_order_violation_fails_well_definedness() {
    let a = data::a_s(2, 1, 1);
    let c = data::polynomial(FieldTag::Rational);
    let psi = data::taft_twist("alpha(c)=2c", a, c, &[NcPoly::letter(0).scale(&Scalar::int(2))]);
    let (r, flags) = check_twisting_conditions(&psi, 4);
    assert!(!flags.well_defined);
    let e = r.entry("well-defined on relations").unwrap();
    assert!(e.witness.as_ref().is_some_and(|w| !w.residue.is_empty()), "{r}");
}

#[test]
fn inverse_of_inverse_is_psi() {
    let q = data::root(3, 1);
    let a = data::a_s(3, 1, 1);
    let c = data::cyclic(3);
    let psi = data::alpha_m(a.clone(), c.clone(), &q, 1);
    let d = max_degree(&a) + max_degree(&c);
    let (inv, r) = invert_twisting(&psi, d).unwrap();
    assert_pass(&r);
    let (back, _) = invert_twisting(&inv, d).unwrap();
    for wa in test_basis(&*a, 0) {
        for wc in test_basis(&*c, 0) {
            assert_eq!(back.apply_words(&wa, &wc).unwrap(), psi.apply_words(&wa, &wc).unwrap());
        }
    }
}

#[test]
fn singular_table_is_not_invertible() {
    let a = data::cyclic(2);
    let c = data::cyclic(2);
    let pw = |i: usize| Word::pow(0, i);
    let mut table = std::collections::BTreeMap::new();
    for i in 0..2 {
        for j in 0..2 {
            // collapses c⊗a onto c⊗1 when both are nontrivial
            let img = if i == 1 && j == 1 { Tensor::basis(&[pw(1), pw(0)]) } else { Tensor::basis(&[pw(j), pw(i)]) };
            table.insert((pw(i), pw(j)), img);
        }
    }
    let psi = TwistingMap::table("collapse", a, c, 2, table);
    assert!(matches!(invert_twisting(&psi, 2), Err(Error::NotInvertibleAtBound(_))));
}

#[test]
fn s3_matched_pair_gives_a_twisting_map() {
    let mp = data::s3_matched_pair();
    assert_pass(&check_matched_pair(&mp, 4));
    let (psi, pres) = double_crossed_product(&mp, 3).unwrap();
    let (r, flags) = check_twisting_conditions(&psi, 3);
    assert_pass(&r);
    assert!(flags.all());
    assert_eq!(pres.ngens(), 3);
    // g c = c⁻¹ g in C⋈A
    let g = Word::letter(0);
    assert_eq!(psi.apply_words(&g, &Word::letter(0)).unwrap(), Tensor::basis(&[Word::letter(1), Word::letter(0)]));
    assert_eq!(pres.rules.len(), 1 + 4 + 2);
}

#[test]
fn trivial_matched_pair_is_the_flip() {
    let mp = MatchedPair::trivial(data::group_algebra(2, "g"), data::group_algebra(3, "c"));
    let (psi, _) = double_crossed_product(&mp, 3).unwrap();
    assert!(psi.is_flip_on(3).unwrap());
}

#[test]
fn scaling_action_is_not_a_matched_pair() {
    let mp = data::scaling_matched_pair(3);
    match double_crossed_product(&mp, 3) {
        Err(Error::MatchedPairViolation(msg)) => assert!(msg.contains("module coalgebra"), "{msg}"),
        other => panic!("expected a violation, got {:?}", other.map(|(p, _)| p.name)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The extension of a generator-given ψ does not depend on where words are split.
    #[test]
    fn extension_is_split_independent(m in 0u32..3, la in 0usize..5, lc in 0usize..4, seed in any::<u64>()) {
        let q = data::root(3, 1);
        let a = data::a_s(3, 1, 1);
        let c = data::taft(3, 1).h.clone();
        let psi = data::alpha_m(a, c, &q, m);
        let wa = (0..la).map(|i| ((seed >> i) & 1) as u8).collect::<Word>();
        let wc = (0..lc).map(|i| ((seed >> (8 + i)) & 1) as u8).collect::<Word>();
        let base = psi.extend_with(&wa, &wc, Schedule::CANONICAL).unwrap();
        for s in Schedule::all() {
            prop_assert_eq!(&psi.extend_with(&wa, &wc, s).unwrap(), &base);
        }
    }
}
