use std::rc::Rc;

use hgx_core::comodule::{
    check_comodule_algebra, check_strong_connection, check_total, check_total_structure, check_triviality_total, coinvariants, galois_check,
    psi_ell, translation_check, ComoduleAlgebra, Galois, Sampling, StrongConnection, TotalAlgebra,
};
use hgx_core::ncalg::{NcPoly, Tensor, Word};
use hgx_core::report::Report;
use hgx_core::suites::data;
use hgx_core::twist::check_twisting_conditions;

fn assert_pass(r: &Report) {
    assert!(r.passed(), "{r}");
}

#[test]
fn taft_comodule_axioms_and_coinvariants() {
    for (n, k, s) in [(2, 1, 0), (2, 1, 1), (3, 1, 0), (3, 2, 1)] {
        let ca = data::taft_comodule(n, k, s);
        assert_pass(&check_comodule_algebra(&ca, 2 * n));
        let (basis, r) = coinvariants(&ca, 0).unwrap();
        assert_pass(&r);
        assert_eq!(basis.len(), 1);
        assert_eq!(ca.a.nf(&basis[0]).terms().next().unwrap().0, &Word::empty());
    }
}

#[test]
fn trivial_coaction_has_everything_coinvariant() {
    let h = data::taft(2, 1);
    let ca = ComoduleAlgebra::trivial(data::a_s(2, 1, 1), h);
    assert_pass(&check_comodule_algebra(&ca, 4));
    let (basis, r) = coinvariants(&ca, 0).unwrap();
    assert_pass(&r);
    assert_eq!(basis.len(), 4);
}

#[test]
fn chi_on_generator_and_rank() {
    let ca = data::taft_comodule(2, 1, 1);
    let g = Galois::new(ca.clone(), 4);
    let x = ca.a.pres().p("X");
    let lhs = g.chi(&Tensor::of_polys(&[&NcPoly::one(), &x])).unwrap();
    let hp = ca.h.h.pres();
    let want = Tensor::of_polys(&[&x, &hp.p("g")]).add(&Tensor::of_polys(&[&NcPoly::one(), &hp.p("x")]));
    assert_eq!(lhs, want);
    assert_eq!(g.chi_rank(0).unwrap(), (16, 16));
    for (n, k, s) in [(2, 1, 0), (3, 1, 1), (3, 2, 0)] {
        let g = Galois::new(data::taft_comodule(n, k, s), 2 * n);
        let r = galois_check(&g, 2 * n);
        assert_pass(&r);
        let rank = g.chi_rank(0).unwrap().0;
        assert_eq!(rank, (n * n * n * n) as usize);
    }
}

#[test]
fn translation_map_of_grouplike() {
    let ca = data::taft_comodule(2, 1, 1);
    let g = Galois::new(ca.clone(), 4);
    let gg = ca.a.pres().p("G");
    let tau = g.tau(&Word::letter(0)).unwrap();
    assert_eq!(tau, Tensor::of_polys(&[&gg, &gg]));
    assert_eq!(g.tau(&Word::empty()).unwrap(), Tensor::unit(2));
    assert_pass(&translation_check(&g, 0));
}

#[test]
fn galois_object_strong_connection_is_tau() {
    for (n, k, s) in [(2, 1, 1), (3, 1, 0)] {
        let ca = data::taft_comodule(n, k, s);
        let g = Galois::new(ca.clone(), 2 * n);
        let words = ca.h.test_words(0);
        let ell = Rc::new(StrongConnection::from_tau(&g, &words).unwrap());
        let (r, flags) = check_strong_connection(&g, &ell, 2 * n);
        assert_pass(&r);
        assert!(flags.ell && flags.prop_ell);
        let psi = psi_ell(ell);
        let (r, flags) = check_twisting_conditions(&psi, 2 * n);
        assert_pass(&r);
        assert!(flags.all());
    }
}

#[test]
fn total_algebra_is_trivial_extension() {
    for (n, k, s) in [(2, 1, 0), (2, 1, 1)] {
        let ca = data::taft_comodule(n, k, s);
        let g = Rc::new(Galois::new(ca, 2 * n));
        let t = TotalAlgebra::new(g);
        let sampling = Sampling { seed: 1, max_cases: usize::MAX };
        assert_pass(&check_total(&t, 2 * n, sampling));
        assert_pass(&check_total_structure(&t, 2 * n, sampling));
        assert_pass(&check_triviality_total(&t, 2 * n, sampling));
    }
}

#[test]
fn wrong_translation_map_is_caught() {
    let ca = data::taft_comodule(2, 1, 1);
    let g = Galois::new(ca.clone(), 4);
    let mut table = std::collections::BTreeMap::new();
    table.insert(Word::letter(0), Tensor::unit(2));
    let g = g.with_tau_table(table);
    let r = galois_check(&g, 4);
    assert!(!r.passed());
    assert!(r.failures().all(|e| e.witness.is_some()));
}
