use hgx::codec;
use hgx::files;
use hgx_core::coeff::{Cyclo, RatFunc, Scalar, Q};
use hgx_core::hopf::Hopf;
use hgx_core::ncalg::{Alg, Presentation};
use hgx_core::suites::{data, theta};
use proptest::prelude::*;
use serde_json::json;

fn builtin() -> Vec<(Alg, Option<std::rc::Rc<Hopf>>)> {
    let mut v: Vec<(Alg, Option<std::rc::Rc<Hopf>>)> = Vec::new();
    for h in [data::taft(2, 1), data::taft(3, 2), data::taft(4, 1), data::group_algebra(3, "g"), data::z3_with_inverse(), theta::su2()] {
        v.push((h.h.clone(), Some(h)));
    }
    for a in [data::a_s(3, 1, 0), data::cyclic(4), theta::s7(), theta::s7_mod_x(), theta::s4(), theta::s3(), theta::s2()] {
        v.push((a, None));
    }
    v
}

#[test]
fn presentations_round_trip_bit_stably() {
    for (a, h) in builtin() {
        let first = files::to_text(&codec::presentation_json(a.pres(), h.as_deref()));
        let v: serde_json::Value = serde_json::from_str(&first).unwrap();
        let p: Presentation = codec::presentation(&v, "x").unwrap();
        assert_eq!(&p, a.pres(), "{}", a.name());
        let second = match &h {
            Some(h) => {
                let back = codec::hopf_algebra(&v, "x").unwrap();
                assert_eq!(back.delta.generator_images(), h.delta.generator_images());
                assert_eq!(back.s.generator_images(), h.s.generator_images());
                files::to_text(&codec::presentation_json(back.h.pres(), Some(&back)))
            }
            None => files::to_text(&codec::presentation_json(&p, None)),
        };
        assert_eq!(first, second, "{}", a.name());
    }
}

#[test]
fn scalar_encodings() {
    assert_eq!(codec::scalar(&json!("-3/6")).unwrap(), Scalar::frac(-1, 2));
    assert_eq!(codec::scalar(&json!(5)).unwrap(), Scalar::int(5));
    assert_eq!(codec::scalar(&json!({"n": 3, "coeffs": ["0", "1"]})).unwrap(), Scalar::root_of_unity(3, 1));
    assert_eq!(codec::scalar(&json!({"num": {"-2": "1"}, "den": {"0": "1"}})).unwrap(), Scalar::mu_pow(-2));
    assert_eq!(codec::scalar_json(&Scalar::root_of_unity(2, 1)), json!("-1"));
    for bad in [json!("1/0"), json!(0.5), json!({"n": 0, "coeffs": []}), json!({"num": {"0": "1"}, "den": {}}), json!(true)] {
        assert!(codec::scalar(&bad).is_err(), "{bad}");
    }
}

#[test]
fn decoding_errors_carry_the_token() {
    let p = data::cyclic(2);
    let e = codec::poly(p.pres(), &json!({"c d": "1"})).unwrap_err();
    assert_eq!(e.token.as_deref(), Some("c d"));
    let e = codec::tensor(&[p.pres(), p.pres()], &json!({"c": "1"})).unwrap_err();
    assert_eq!(e.token.as_deref(), Some("c"));
    let e = codec::poly(p.pres(), &json!({"c": {"n": 5, "coeffs": ["0", "1"]}})).unwrap_err();
    assert!(e.message.contains("not in"), "{}", e.message);
}

fn q() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..9).prop_map(|(a, b)| Q::from(a) * Q::from(b).recip())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        q().prop_map(Scalar::rational),
        (1u32..13, proptest::collection::vec(q(), 0..6)).prop_map(|(n, cs)| Scalar::from_cyclo(Cyclo::from_coeffs(n, &cs))),
        (-4i32..4, proptest::collection::vec(q(), 1..4), proptest::collection::vec(q(), 0..3)).prop_map(|(low, num, mut den)| {
            den.push(Q::from(1));
            den[0] = den[0].clone() + Q::from(7);
            Scalar::from_ratfunc(RatFunc::new(low, num, den))
        }),
    ]
}

proptest! {
    #[test]
    fn scalars_round_trip(s in scalar()) {
        let j = codec::scalar_json(&s);
        prop_assert_eq!(codec::scalar(&j).unwrap(), s);
        let again = codec::scalar_json(&codec::scalar(&j).unwrap());
        prop_assert_eq!(again, j);
    }
}
