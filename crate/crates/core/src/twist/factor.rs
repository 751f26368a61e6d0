use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::conditions::{check_twisting_conditions, twisted_mul};
use super::{pairs, TwistingMap};
use crate::error::{Error, Result};
use crate::ncalg::linalg::{Echelon, Indexer, Inserted, SVec};
use crate::ncalg::{Alg, LinearMap, NcPoly, Presentation, Tensor, Word};
use crate::report::{Check, Report, Witness};

/// A presentation of C⊗^ψA for a generator-determined ψ: the generators of
/// C followed by those of A, both rule sets, and a·c → ψ(a⊗c) for generator
/// pairs.
pub fn twisted_presentation(psi: &TwistingMap, name: &str) -> Result<Presentation> {
    let (ap, cp) = (psi.a.pres(), psi.c.pres());
    let names: Vec<&str> = cp.generators.iter().chain(ap.generators.iter()).map(String::as_str).collect();
    let mut p = Presentation::new(name, cp.field, &names);
    let off = cp.ngens() as u8;
    let shift = |w: &Word| w.letters().iter().map(|g| g + off).collect::<Word>();
    let shift_poly = |q: &NcPoly| q.terms().map(|(w, x)| (shift(w), x.clone())).collect::<NcPoly>();
    p.degrees = cp.degrees.iter().chain(ap.degrees.iter()).copied().collect();
    p.rules.extend(cp.rules.iter().cloned());
    for r in &ap.rules {
        p.rules.push(crate::ncalg::RewriteRule { lhs: shift(&r.lhs), rhs: shift_poly(&r.rhs) });
    }
    for ga in 0..ap.ngens() as u8 {
        for gc in 0..cp.ngens() as u8 {
            let img = psi.apply_words(&Word::letter(ga), &Word::letter(gc))?;
            let rhs: NcPoly = img.terms().map(|(k, x)| (k[0].concat(&shift(&k[1])), x.clone())).collect();
            p.rules.push(crate::ncalg::RewriteRule { lhs: Word::from(alloc::vec![ga + off, gc]), rhs });
        }
    }
    if let (Some(cs), Some(as_)) = (&cp.star, &ap.star) {
        // for normal ψ the involution (*ta) acts on generators as *_C and *_A
        p.star = Some(cs.iter().cloned().chain(as_.iter().map(shift_poly)).collect());
    }
    p.validate()?;
    Ok(p)
}

/// Thm 2.1 round trip: tests that ξ = m_X∘(u_C⊗u_A) is bijective on the
/// filtered pieces up to `d`, recovers ψ = ξ⁻¹∘m_X∘(u_A⊗u_C) as a table and
/// checks that it is a normal twisting map with ξ an algebra isomorphism.
pub fn check_factorization(x: &Alg, u_c: &LinearMap, u_a: &LinearMap, d: u32) -> Result<(TwistingMap, Report)> {
    let (c_alg, a_alg) = (u_c.domain.clone(), u_a.domain.clone());
    let xi_pairs = pairs(&c_alg, &a_alg, d);
    let xi = |c: &Word, a: &Word| -> Result<NcPoly> {
        let l = u_c.apply_word(c)?.to_poly();
        let r = u_a.apply_word(a)?.to_poly();
        Ok(x.mul(&l, &r))
    };
    let to_svec = |p: &NcPoly, idx: &mut Indexer<Word>| -> SVec {
        let mut v: SVec = p.terms().map(|(w, s)| (idx.index(w), s.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    };
    let mut idx = Indexer::new();
    let mut ech = Echelon::tracking();
    for (i, (c, a)) in xi_pairs.iter().enumerate() {
        if let Inserted::Dependent(_) = ech.insert(to_svec(&xi(c, a)?, &mut idx), i as u32) {
            return Err(Error::NotBijectiveAtBound(c_alg.degree(c) + a_alg.degree(a)));
        }
    }
    for w in x.basis(d) {
        if ech.solve(&to_svec(&NcPoly::word(w.clone()), &mut idx)).is_none() {
            return Err(Error::NotBijectiveAtBound(x.degree(&w)));
        }
    }
    let xi_inv = |p: &NcPoly, idx: &mut Indexer<Word>| -> Option<Tensor> {
        let sol = ech.solve(&to_svec(p, idx))?;
        let mut t = Tensor::zero(2);
        for (id, s) in &sol {
            let (c, a) = &xi_pairs[*id as usize];
            t.add_term(alloc::vec![c.clone(), a.clone()], s);
        }
        Some(t)
    };

    let mut table = BTreeMap::new();
    for (a, c) in pairs(&a_alg, &c_alg, d) {
        let m = x.mul(&u_a.apply_word(&a)?.to_poly(), &u_c.apply_word(&c)?.to_poly());
        let t = xi_inv(&m, &mut idx).ok_or(Error::NotBijectiveAtBound(a_alg.degree(&a) + c_alg.degree(&c)))?;
        table.insert((a, c), t);
    }
    let psi = TwistingMap::table(&format!("psi from {}", x.name()), a_alg.clone(), c_alg.clone(), d, table);

    let mut report = Report::new(format!("factorization({})", x.name()));
    report.config("degree", d);
    report.assert("xi bijective on filtered pieces", true, Some(d), || Witness { input: String::new(), residue: String::new() });
    let (sub, flags) = check_twisting_conditions(&psi, d);
    report.assert("recovered map is normal", flags.normal(), Some(d), || Witness {
        input: String::from("unit pairs"),
        residue: String::from("normality fails"),
    });
    report.absorb("recovered", sub);

    let mut iso = Check::new("xi is an algebra isomorphism", Some(d));
    for (c, a) in &xi_pairs {
        let used = c_alg.degree(c) + a_alg.degree(a);
        for (c2, a2) in pairs(&c_alg, &a_alg, d - used) {
            let r = (|| {
                let prod = twisted_mul(&psi, &Tensor::basis(&[c.clone(), a.clone()]), &Tensor::basis(&[c2.clone(), a2.clone()]))?;
                let mut lhs = NcPoly::zero();
                for (k, s) in prod.terms() {
                    lhs.add_scaled(&xi(&k[0], &k[1])?, s);
                }
                let diff = lhs.sub(&x.mul(&xi(c, a)?, &xi(&c2, &a2)?));
                Ok::<_, Error>((!diff.is_zero()).then(|| x.fmt(&diff)))
            })();
            iso.case_result(|| format!("({} ⊗ {}) ({} ⊗ {})", c_alg.pres().fmt_word(c), a_alg.pres().fmt_word(a), c_alg.pres().fmt_word(&c2), a_alg.pres().fmt_word(&a2)), r);
        }
    }
    report.push(iso.finish());
    Ok((psi, report))
}
