use hgx_core::comodule::{
    check_comodule_algebra, check_strong_connection, galois_check, EllSource, Galois, StrongConnection,
};
use hgx_core::hopf::check_bialgebra_axioms;
use hgx_core::ncalg::{check_confluence, Algebra, NcPoly};
use hgx_core::report::Report;
use hgx_core::suites::theta;

fn assert_pass(r: &Report) {
    assert!(r.passed(), "{r}");
}

#[test]
fn presentations_are_confluent() {
    for a in [theta::s7(), theta::s7_mod_x(), theta::s4(), theta::s3(), theta::s2(), theta::su2().h.clone()] {
        let alg = Algebra::new(a.pres().clone()).unwrap();
        assert_pass(&check_confluence(&alg, 4));
    }
}

#[test]
fn su2_is_hopf() {
    assert_pass(&check_bialgebra_axioms(&theta::su2(), 3));
}

#[test]
fn s7_comodule_and_s4_relations() {
    let ca = theta::theta_comodule();
    assert_pass(&check_comodule_algebra(&ca, 3));
    let ca = theta::theta_quotient_comodule();
    assert_pass(&check_comodule_algebra(&ca, 3));
}

#[test]
fn comm74_table() {
    let a = theta::s7();
    let b = theta::s4_in_s7(&a);
    let gens = ["alpha", "alpha*", "beta", "beta*"];
    for j in 1..=4 {
        for star in [false, true] {
            let z = a.pres().p(&if star { format!("z{j}*") } else { format!("z{j}") });
            for (gi, g) in gens.iter().enumerate() {
                let e = theta::comm74_exponent(j, star, g);
                let lhs = a.mul(&z, &b[gi]);
                let rhs = a.mul(&b[gi], &z).scale(&hgx_core::coeff::Scalar::mu_pow(e));
                assert_eq!(lhs, rhs, "z{j}{} {g}", if star { "*" } else { "" });
            }
            assert_eq!(a.mul(&z, &b[4]), a.mul(&b[4], &z));
        }
    }
}

#[test]
fn projection_is_selfadjoint_idempotent() {
    let a = theta::s7();
    let p = theta::projection(&a);
    let b = theta::s4();
    let bg = theta::s4_in_s7(&a);
    for i in 0..4 {
        for j in 0..4 {
            let mut sq = NcPoly::zero();
            for k in 0..4 {
                sq = sq.add(&a.mul(&p[i][k], &p[k][j]));
            }
            assert_eq!(a.nf(&sq), a.nf(&p[i][j]));
            assert_eq!(a.star(&p[i][j]).unwrap(), a.nf(&p[j][i]));
            theta::pull_back_to_b(&a, &b, &bg, &p[i][j], 2).unwrap();
        }
    }
}

#[test]
fn galois_and_strong_connection() {
    let ca = theta::theta_comodule();
    let g = Galois::new(ca.clone(), 4).with_tau_table(theta::theta_tau_table(&ca));
    assert_pass(&galois_check(&g, 2));
    // ℓ on the generators of O(SU(2)) does not respect det = 1.
    let ell = StrongConnection::new("ell", ca.clone(), EllSource::Generators(theta::theta_ell(&ca)));
    let (r, flags) = check_strong_connection(&g, &ell, 2);
    let wd = r.entry("well-defined on the relations of H").unwrap();
    assert!(!wd.passed() && wd.witness.is_some());
    assert!(!flags.ell);
}
