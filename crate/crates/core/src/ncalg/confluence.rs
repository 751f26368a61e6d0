use alloc::format;

use super::algebra::{Algebra, AlgebraOps};
use super::poly::NcPoly;
use super::word::Word;
use crate::report::{Check, Report};

/// Resolves every overlap and inclusion ambiguity whose word has filtration
/// degree ≤ `bound`; marks the algebra trusted to `bound` on success.
pub fn check_confluence(alg: &Algebra, bound: u32) -> Report {
    let p = alg.pres();
    let mut report = Report::new(format!("confluence({})", p.name));
    let mut check = Check::new("ambiguities resolve", Some(bound));
    let rules = &p.rules;
    for (i, ri) in rules.iter().enumerate() {
        let li = ri.lhs.letters();
        for (j, rj) in rules.iter().enumerate() {
            let lj = rj.lhs.letters();
            // inclusion: lhs_j occurs inside lhs_i
            if i != j && lj.len() <= li.len() {
                let mut from = 0;
                while let Some(k) = ri.lhs.find(lj, from) {
                    from = k + 1;
                    if p.degree(&ri.lhs) > bound {
                        break;
                    }
                    let u = NcPoly::word(Word::from(&li[..k]));
                    let w = NcPoly::word(Word::from(&li[k + lj.len()..]));
                    let s1 = alg.nf(&ri.rhs);
                    let s2 = alg.nf(&u.mul_free(&rj.rhs).mul_free(&w));
                    resolve(alg, &mut check, &ri.lhs, i, j, s1, s2);
                }
            }
            // overlap: suffix of lhs_i equals prefix of lhs_j
            for k in 1..li.len().min(lj.len()) {
                if li[li.len() - k..] != lj[..k] {
                    continue;
                }
                let word = Word::from(li).concat(&Word::from(&lj[k..]));
                if p.degree(&word) > bound {
                    continue;
                }
                let u = NcPoly::word(Word::from(&li[..li.len() - k]));
                let w = NcPoly::word(Word::from(&lj[k..]));
                let s1 = alg.nf(&ri.rhs.mul_free(&w));
                let s2 = alg.nf(&u.mul_free(&rj.rhs));
                resolve(alg, &mut check, &word, i, j, s1, s2);
            }
        }
    }
    let ok = check.is_ok();
    report.push(check.finish());
    if ok {
        alg.mark_trusted(bound);
    }
    report
}

fn resolve(alg: &Algebra, check: &mut Check, word: &Word, i: usize, j: usize, s1: NcPoly, s2: NcPoly) {
    if s1 == s2 {
        check.ok();
    } else {
        let p = alg.pres();
        check.fail(
            format!("{} via rules {i} and {j}", p.fmt_word(word)),
            format!("{} vs {}", p.fmt(&s1), p.fmt(&s2)),
        );
    }
}
