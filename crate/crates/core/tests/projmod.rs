use hgx_core::error::Error;
use hgx_core::ncalg::{check_map_well_defined, Extension, LinearMap, NcPoly};
use hgx_core::projmod::{check_projection, frame_ops, pushforward_projection, Frame, MatrixOverAlgebra};
use hgx_core::report::Report;
use hgx_core::suites::theta;

fn assert_pass(r: &Report) {
    assert!(r.passed(), "{r}");
}

fn p_s4() -> MatrixOverAlgebra {
    theta::projection_over_s4(&theta::theta_comodule()).unwrap()
}

#[test]
fn p_is_a_projection_over_s4() {
    let p = p_s4();
    assert_eq!(p.alg.name(), "O(S^4_theta)");
    assert_pass(&check_projection(&p));
}

#[test]
fn gram_of_canonical_frame_is_p() {
    let p = p_s4();
    let g = Frame::canonical(&p).gram().unwrap();
    assert!(g.first_difference(&p).is_none());
}

#[test]
fn identity_map_and_free_module() {
    let b = theta::s4();
    let p = p_s4();
    let id = LinearMap::identity(b.clone());
    let (fp, r) = pushforward_projection(&p, &id).unwrap();
    assert_pass(&r);
    assert!(fp.first_difference(&p).is_none());

    let one = MatrixOverAlgebra::identity(b.clone(), 3);
    let frame = Frame::canonical(&one);
    assert!(frame.gram().unwrap().first_difference(&one).is_none());
    assert_pass(&frame_ops(&one, &id, 2));

    let diag = MatrixOverAlgebra::new(b.clone(), vec![vec![NcPoly::one(), NcPoly::zero()], vec![NcPoly::zero(), NcPoly::zero()]]);
    let c = theta::s3();
    let f = theta::quotient_map(&b, &c, theta::s3_f_gens(&c));
    let (fd, _) = pushforward_projection(&diag, &f).unwrap();
    assert_eq!(fd.fmt(), "[1, 0; 0, 0]");
}

#[test]
fn non_idempotent_is_rejected() {
    let b = theta::s4();
    let m = MatrixOverAlgebra::new(b.clone(), vec![vec![b.pres().p("x")]]);
    let id = LinearMap::identity(b);
    assert!(matches!(pushforward_projection(&m, &id), Err(Error::IdempotentCheckFailed(_))));
}

#[test]
fn pushforward_under_quotients() {
    let b = theta::s4();
    let p = p_s4();
    for (c, gens) in [(theta::s3(), theta::s3_f_gens as fn(&_) -> _), (theta::s2(), theta::s2_f_gens)] {
        let f = theta::quotient_map(&b, &c, gens(&c));
        let (fp, r) = pushforward_projection(&p, &f).unwrap();
        assert_pass(&r);
        let r = frame_ops(&p, &f, 2);
        assert_pass(&r);
        // Entrywise: F(p) is p with the quotient applied.
        for i in 0..4 {
            for j in 0..4 {
                let img = f.apply(p.get(i, j)).unwrap().to_poly();
                assert!(c.nf(&img.sub(fp.get(i, j))).is_zero());
            }
        }
    }
}

#[test]
fn pushforward_composes() {
    // x ↦ −x on O(S⁴_θ), followed by the quotient onto O(S²).
    let b = theta::s4();
    let c = theta::s2();
    let p = p_s4();
    let bp = b.pres();
    let flip = vec![bp.p("alpha"), bp.p("alpha*"), bp.p("beta"), bp.p("beta*"), bp.p("x").neg()];
    let f1 = LinearMap::on_generators_poly("x -> -x", b.clone(), b.clone(), Extension::AlgebraMorphism, flip);
    assert_pass(&check_map_well_defined(&f1, 4));
    let f2 = theta::quotient_map(&b, &c, theta::s2_f_gens(&c));
    let mut composite = theta::s2_f_gens(&c);
    composite[4] = composite[4].neg();
    let f21 = theta::quotient_map(&b, &c, composite);
    let lhs = p.map(&f1).unwrap().map(&f2).unwrap();
    let rhs = p.map(&f21).unwrap();
    assert!(lhs.first_difference(&rhs).is_none());
    assert!(lhs.first_difference(&p.map(&f2).unwrap()).is_some());
}

#[test]
fn frame_checks_cover_cases() {
    let b = theta::s4();
    let c = theta::s3();
    let f = theta::quotient_map(&b, &c, theta::s3_f_gens(&c));
    let r = frame_ops(&p_s4(), &f, 2);
    for name in ["reconstruction in B^N p", "extended reconstruction", "extended Gram matrix equals F(p)", "extended inner product is B-balanced"] {
        assert!(r.entry(name).unwrap().cases > 0, "{name}");
    }
}
