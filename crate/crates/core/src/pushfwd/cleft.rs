use alloc::format;
use alloc::vec::Vec;

use super::PushForward;
use crate::comodule::{ComoduleAlgebra, Sampling};
use crate::error::Result;
use crate::hopf::check_convolution_inverse;
use crate::ncalg::{check_map_well_defined, LinearMap, Tensor, Word};
use crate::report::{Check, Report};

/// γ: H → A is a cleaving map: γ(1) = 1, H-colinear and convolution
/// invertible with inverse γ̄; with `algebra`, also well defined as an
/// algebra map on the relations of H.
pub fn check_cleaving(ca: &ComoduleAlgebra, gamma: &LinearMap, gamma_bar: &LinearMap, d: u32, algebra: bool) -> Report {
    let hh = &ca.h;
    let hp = hh.h.pres();
    let mut report = Report::new(format!("cleaving map({})", gamma.name));
    report.config("degree", d);
    let mut unit = Check::new("gamma(1) = 1", None);
    match gamma.apply_word(&Word::empty()) {
        Ok(t) => unit.case(|| "1".into(), (t != Tensor::unit(1)).then(|| t.fmt_with(&[ca.a.clone()]))),
        Err(e) => unit.fail("1", format!("{e}")),
    }
    report.push(unit.finish());

    let ah = ca.ah();
    let mut colin = Check::new("delta gamma = (gamma x id) Delta", Some(d));
    for h in hh.test_words(d) {
        let r = (|| -> Result<Option<alloc::string::String>> {
            let lhs = ca.coact_factor(&gamma.apply_word(&h)?, 0)?;
            let rhs = hh.coproduct(&h)?.try_map_factor(0, 1, |w| gamma.apply_word(w))?;
            let x = lhs.sub(&rhs);
            Ok((!x.is_zero()).then(|| x.fmt_with(&ah)))
        })();
        colin.case_result(|| hp.fmt_word(&h), r);
    }
    report.push(colin.finish());
    report.absorb("convolution", check_convolution_inverse(hh, gamma, gamma_bar, d));
    if algebra {
        report.absorb("algebra map", check_map_well_defined(gamma, d));
    }
    report
}

/// The cleaving map γ' = 1⊗_B γ of C⊗^ψ_B A with inverse 1⊗_B γ̄: colinear,
/// convolution inverse for m^ψ, and with `algebra` an algebra map for m^ψ.
pub fn transfer_cleaving(pf: &PushForward, gamma: &LinearMap, gamma_bar: &LinearMap, d: u32, algebra: bool, sampling: Sampling) -> Report {
    let ca = &pf.ca;
    let hh = &ca.h;
    let hp = hh.h.pres();
    let mut report = Report::new(format!("transferred cleaving map({})", gamma.name));
    report.config("degree", d);
    report.absorb("source", check_cleaving(ca, gamma, gamma_bar, d, algebra));
    let lift = |f: &LinearMap, h: &Word| -> Result<Tensor> { Ok(Tensor::basis(&[Word::empty()]).tensor(&f.apply_word(h)?)) };
    let words = hh.test_words(d);

    let mut colin = Check::new("gamma' is H-colinear", Some(d));
    for h in &words {
        let lhs = lift(gamma, h).and_then(|t| pf.coact(&t));
        let rhs = hh.coproduct(h).and_then(|t| t.try_map_factor(0, 2, |w| lift(gamma, w)));
        pf.case_h(&mut colin, || hp.fmt_word(h), lhs, rhs);
    }
    report.push(colin.finish());

    let conv = |f: &LinearMap, g: &LinearMap, h: &Word| -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (k, c) in hh.coproduct(h)?.terms() {
            out.add_scaled(&pf.mul(&lift(f, &k[0])?, &lift(g, &k[1])?)?, c);
        }
        Ok(out)
    };
    let mut left = Check::new("gamma' * gamma-bar' = eta eps", Some(d));
    let mut right = Check::new("gamma-bar' * gamma' = eta eps", Some(d));
    for h in &words {
        let e = hh.counit(h).map(|c| Tensor::unit(2).scale(&c));
        pf.case(&mut left, || hp.fmt_word(h), conv(gamma, gamma_bar, h), e.clone());
        pf.case(&mut right, || hp.fmt_word(h), conv(gamma_bar, gamma, h), e);
    }
    report.push(left.finish());
    report.push(right.finish());

    if algebra {
        let mut mult = Check::new("gamma'(h) gamma'(k) = gamma'(hk)", Some(d));
        let degs: Vec<u32> = words.iter().map(|w| hh.h.degree(w)).collect();
        let (pairs, _) = sampling.tuples(&degs, 2, d, hh.is_finite());
        for p in pairs {
            let (h, k) = (&words[p[0]], &words[p[1]]);
            let lhs = lift(gamma, h).and_then(|x| pf.mul(&x, &lift(gamma, k)?));
            let rhs = gamma.apply(&hh.h.mul_words(h, k)).map(|t| Tensor::basis(&[Word::empty()]).tensor(&t));
            pf.case(&mut mult, || format!("{} ; {}", hp.fmt_word(h), hp.fmt_word(k)), lhs, rhs);
        }
        report.push(mult.finish());
    }
    report
}
