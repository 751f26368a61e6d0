use alloc::collections::BTreeMap;
use alloc::format;

use super::conditions::{check_twisting_conditions, twisted_mul};
use super::{pairs, TwistingMap};
use crate::error::{Error, Result};
use crate::ncalg::linalg::{Echelon, Indexer, Inserted};
use crate::ncalg::{TKey, Tensor};
use crate::report::{Check, Report, Witness};

/// Solves for ψ⁻¹: C⊗A → A⊗C on basis pairs of total degree ≤ d and
/// returns it as a table, with a report on (C1)/(C2) for ψ⁻¹, both
/// compositions and (twist-am).
pub fn invert_twisting(psi: &TwistingMap, d: u32) -> Result<(TwistingMap, Report)> {
    let (ap, cp) = (psi.a.pres(), psi.c.pres());
    let dom = pairs(&psi.a, &psi.c, d);
    let mut idx: Indexer<TKey> = Indexer::new();
    let mut ech = Echelon::tracking();
    for (i, (a, c)) in dom.iter().enumerate() {
        let v = psi.apply_words(a, c)?.to_svec(&mut idx);
        if let Inserted::Dependent(_) = ech.insert(v, i as u32) {
            return Err(Error::NotInvertibleAtBound(ap.degree(a) + cp.degree(c)));
        }
    }
    let mut table = BTreeMap::new();
    for (a, c) in &dom {
        let target = Tensor::basis(&[c.clone(), a.clone()]);
        let v = target.to_svec(&mut idx);
        let sol = ech.solve(&v).ok_or(Error::NotInvertibleAtBound(ap.degree(a) + cp.degree(c)))?;
        let mut t = Tensor::zero(2);
        for (id, x) in &sol {
            let (a2, c2) = &dom[*id as usize];
            t.add_term(alloc::vec![a2.clone(), c2.clone()], x);
        }
        table.insert((c.clone(), a.clone()), t);
    }
    let inv = TwistingMap::table(&format!("{}^-1", psi.name), psi.c.clone(), psi.a.clone(), d, table);

    let mut report = Report::new(format!("inverse({})", psi.name));
    report.config("degree", d);
    let (sub, flags) = check_twisting_conditions(&inv, d);
    report.assert("inverse satisfies (C1)", flags.c1, Some(d), || witness_of(&sub, "(C1el)"));
    report.assert("inverse satisfies (C2)", flags.c2, Some(d), || witness_of(&sub, "(C2el)"));

    let mut left = Check::new("inverse after psi is identity", Some(d));
    let mut right = Check::new("psi after inverse is identity", Some(d));
    for (a, c) in &dom {
        let r = psi.apply_words(a, c).and_then(|t| inv.apply(&t)).map(|t| {
            let diff = t.sub(&Tensor::basis(&[a.clone(), c.clone()]));
            (!diff.is_zero()).then(|| inv.fmt_out(&diff))
        });
        left.case_result(|| psi.fmt_pair(a, c), r);
        let r = inv.apply_words(c, a).and_then(|t| psi.apply(&t)).map(|t| {
            let diff = t.sub(&Tensor::basis(&[c.clone(), a.clone()]));
            (!diff.is_zero()).then(|| psi.fmt_out(&diff))
        });
        right.case_result(|| inv.fmt_pair(c, a), r);
    }
    report.push(left.finish());
    report.push(right.finish());

    // ψ((a⊗c)·(a'⊗c')) = ψ(a⊗c)·ψ(a'⊗c'), products in A⊗^{ψ⁻¹}C and C⊗^ψA
    let mut am = Check::new("(twist-am)", Some(d));
    for (a, c) in &dom {
        let used = ap.degree(a) + cp.degree(c);
        for (a2, c2) in pairs(&psi.a, &psi.c, d - used) {
            let x = Tensor::basis(&[a.clone(), c.clone()]);
            let y = Tensor::basis(&[a2.clone(), c2.clone()]);
            let r = (|| {
                let lhs = psi.apply(&twisted_mul(&inv, &x, &y)?)?;
                let rhs = twisted_mul(psi, &psi.apply(&x)?, &psi.apply(&y)?)?;
                let diff = lhs.sub(&rhs);
                Ok::<_, Error>((!diff.is_zero()).then(|| psi.fmt_out(&diff)))
            })();
            am.case_result(|| format!("({}) ({})", psi.fmt_pair(a, c), psi.fmt_pair(&a2, &c2)), r);
        }
    }
    report.push(am.finish());
    Ok((inv, report))
}

fn witness_of(r: &Report, name: &str) -> Witness {
    let w = r.entry(name).and_then(|e| e.witness.clone());
    w.unwrap_or_else(|| Witness { input: name.into(), residue: "condition failed".into() })
}
