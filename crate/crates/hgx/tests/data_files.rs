//! The shipped example files are the built-in Taft data, encoded. Set
//! HGX_REGENERATE=1 to rewrite them.

use std::path::PathBuf;
use std::rc::Rc;

use hgx::codec;
use hgx::files::{self, Source};
use hgx_core::cocycle::TwoCocycle;
use hgx_core::ncalg::{Extension, LinearMap, NcPoly};
use hgx_core::suites::data;
use hgx_core::twist::TwistingMap;
use serde_json::{json, Value};

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn check(name: &str, v: &Value) {
    let text = files::to_text(v);
    if std::env::var_os("HGX_REGENERATE").is_some() {
        std::fs::write(path(name), &text).unwrap();
    }
    let shipped = std::fs::read_to_string(path(name)).unwrap_or_default();
    assert_eq!(shipped, text, "{name} is stale; rerun with HGX_REGENERATE=1");
}

fn taft_sigma() -> TwoCocycle {
    let t = data::taft(2, 1);
    let kz = data::group_algebra(2, "g");
    let g = kz.h.pres().p("g");
    let pi = LinearMap::on_generators_poly("x -> 0", t.h.clone(), kz.h.clone(), Extension::AlgebraMorphism, vec![g, NcPoly::zero()]);
    let b = TwoCocycle::bicharacter(kz, &data::root(2, 1)).unwrap();
    hgx_core::cocycle::pullback_cocycle(&b, t, &pi, 4).unwrap()
}

#[test]
fn shipped_files_match_builtin_data() {
    let ca = data::taft_comodule(2, 1, 1);
    let c = data::cyclic(2);
    check("taft2_bundle.json", &files::bundle_json(&ca));
    check("cyclic2_map.json", &files::map_json(c.pres(), &[]));
    let psi = data::alpha_m(ca.a.clone(), c.clone(), &data::root(2, 1), 1);
    check("alpha1_twist.json", &json!({ "psi": files::twisting_map_json(&psi) }));
    let flip = TwistingMap::flip(ca.a.clone(), c.clone());
    check(
        "flip.json",
        &json!({"A": codec::presentation_json(ca.a.pres(), None), "C": codec::presentation_json(c.pres(), None), "psi": files::twisting_map_json(&flip)}),
    );
    check("taft2_sigma.json", &files::cocycle_json(&taft_sigma()));
}

#[test]
fn shipped_files_decode_to_the_same_data() {
    let ca = data::taft_comodule(2, 1, 1);
    let src = Source::read(&path("taft2_bundle.json")).unwrap();
    let back = src.decode(files::bundle).unwrap();
    assert_eq!(back.a.pres(), ca.a.pres());
    assert_eq!(back.h.h.pres(), ca.h.h.pres());
    assert_eq!(back.delta.generator_images(), ca.delta.generator_images());
    assert_eq!(back.h.delta.generator_images(), ca.h.delta.generator_images());

    let src = Source::read(&path("taft2_sigma.json")).unwrap();
    let sigma = src.decode(|v| files::cocycle(&back.h, v)).unwrap();
    let want = taft_sigma();
    assert_eq!(sigma.entries(), want.entries());
    assert_eq!(sigma.inverse_entries(), want.inverse_entries());

    let c = data::cyclic(2);
    let src = Source::read(&path("alpha1_twist.json")).unwrap();
    let psi = src.decode(|v| files::twisting_map(&ca.a, &c, &v["psi"])).unwrap();
    let want = data::alpha_m(ca.a.clone(), c.clone(), &data::root(2, 1), 1);
    for wa in ca.a.basis(2) {
        for wc in c.basis(2) {
            assert_eq!(psi.eval(&wa, &wc), want.eval(&wa, &wc));
        }
    }
    let _ = Rc::clone(&back);
}
