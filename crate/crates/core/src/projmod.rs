//! Finite projective modules B^N p, their push-forward along algebra maps
//! F: B → B̃, and standard module frames.
//!
//! Module elements are row vectors and B acts on the left. The inner product
//! on B^N is ⟨ξ,η⟩ = Σ_k ξ_k η_k*, so the canonical frame of a projection p
//! (η_j = row j of p) has Gram matrix p p* = p.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ncalg::{check_map_well_defined, Alg, LinearMap, NcPoly, Word};
use crate::report::{Check, Report, Witness};

/// A rectangular matrix with entries normalized in `alg`.
#[derive(Clone)]
pub struct MatrixOverAlgebra {
    pub alg: Alg,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<NcPoly>,
}

impl MatrixOverAlgebra {
    pub fn new(alg: Alg, rows: Vec<Vec<NcPoly>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m), "ragged matrix");
        let entries = rows.iter().flatten().map(|p| alg.nf(p)).collect();
        MatrixOverAlgebra { alg, rows: n, cols: m, entries }
    }

    pub fn identity(alg: Alg, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { NcPoly::one() } else { NcPoly::zero() }).collect())
            .collect();
        Self::new(alg, rows)
    }

    pub fn get(&self, i: usize, j: usize) -> &NcPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<NcPoly> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<NcPoly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, o: &MatrixOverAlgebra) -> MatrixOverAlgebra {
        assert_eq!(self.cols, o.rows);
        let rows = (0..self.rows)
            .map(|i| {
                (0..o.cols)
                    .map(|j| (0..self.cols).fold(NcPoly::zero(), |acc, k| acc.add(&self.alg.mul(self.get(i, k), o.get(k, j)))))
                    .collect()
            })
            .collect();
        Self::new(self.alg.clone(), rows)
    }

    /// Conjugate transpose.
    pub fn star(&self) -> Result<MatrixOverAlgebra> {
        let mut rows = vec![vec![NcPoly::zero(); self.rows]; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                rows[j][i] = self.alg.star(self.get(i, j))?;
            }
        }
        Ok(Self::new(self.alg.clone(), rows))
    }

    /// Entrywise image under a map into a single algebra.
    pub fn map(&self, f: &LinearMap) -> Result<MatrixOverAlgebra> {
        assert_eq!(f.codomain.len(), 1, "{}: codomain must be one algebra", f.name);
        let rows = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|p| Ok(f.apply(p)?.to_poly())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(f.codomain[0].clone(), rows))
    }

    /// First entry where the two matrices differ, with the difference.
    pub fn first_difference(&self, o: &MatrixOverAlgebra) -> Option<(usize, usize, String)> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find_map(|(i, j)| {
                let r = self.alg.nf(&self.get(i, j).sub(o.get(i, j)));
                (!r.is_zero()).then(|| (i, j, self.alg.fmt(&r)))
            })
    }

    pub fn fmt(&self) -> String {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|p| self.alg.fmt(p)).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

fn entry_check(lhs: &MatrixOverAlgebra, rhs: &MatrixOverAlgebra) -> (bool, Witness) {
    let diff = lhs.first_difference(rhs);
    let w = match &diff {
        Some((i, j, r)) => Witness { input: format!("entry ({i},{j})"), residue: r.clone() },
        None => Witness { input: String::new(), residue: String::new() },
    };
    (diff.is_none(), w)
}

/// p² = p, and p* = p when the algebra has an involution.
pub fn check_projection(p: &MatrixOverAlgebra) -> Report {
    let mut r = Report::new(format!("projection over {}", p.alg.name()));
    let (ok, w) = entry_check(&p.mul(p), p);
    r.assert("p^2 = p", ok, None, || w);
    if p.alg.pres().star.is_some() {
        match p.star() {
            Ok(ps) => {
                let (ok, w) = entry_check(&ps, p);
                r.assert("p* = p", ok, None, || w);
            }
            Err(e) => r.assert("p* = p", false, None, || Witness { input: "p".into(), residue: e.to_string() }),
        }
    }
    r
}

/// F(p), after checking that p and F(p) are projections.
pub fn pushforward_projection(p: &MatrixOverAlgebra, f: &LinearMap) -> Result<(MatrixOverAlgebra, Report)> {
    let pre = check_projection(p);
    if let Some(e) = pre.failures().next() {
        return Err(Error::IdempotentCheckFailed(format!("{} ({})", e.name, p.alg.name())));
    }
    let fp = p.map(f)?;
    let post = check_projection(&fp);
    if let Some(e) = post.failures().next() {
        return Err(Error::IdempotentCheckFailed(format!("F({}) under {}", e.name, f.name)));
    }
    let mut r = Report::new(format!("push-forward of p along {}", f.name));
    r.absorb("p", pre);
    r.absorb("F(p)", post);
    Ok((fp, r))
}

/// ⟨ξ,η⟩ = Σ_k ξ_k η_k*.
pub fn inner(alg: &Alg, xi: &[NcPoly], eta: &[NcPoly]) -> Result<NcPoly> {
    assert_eq!(xi.len(), eta.len());
    xi.iter().zip(eta).try_fold(NcPoly::zero(), |acc, (x, y)| Ok(acc.add(&alg.mul(x, &alg.star(y)?))))
}

fn combine(alg: &Alg, coeffs: &[NcPoly], vectors: &[Vec<NcPoly>]) -> Vec<NcPoly> {
    let n = vectors.first().map_or(0, |v| v.len());
    (0..n)
        .map(|k| coeffs.iter().zip(vectors).fold(NcPoly::zero(), |acc, (c, v)| acc.add(&alg.mul(c, &v[k]))))
        .collect()
}

fn scale_left(alg: &Alg, b: &NcPoly, v: &[NcPoly]) -> Vec<NcPoly> {
    v.iter().map(|x| alg.mul(b, x)).collect()
}

fn vec_residue(alg: &Alg, a: &[NcPoly], b: &[NcPoly]) -> Option<String> {
    let d: Vec<NcPoly> = a.iter().zip(b).map(|(x, y)| alg.nf(&x.sub(y))).collect();
    d.iter().any(|x| !x.is_zero()).then(|| fmt_vec(alg, &d))
}

fn fmt_vec(alg: &Alg, v: &[NcPoly]) -> String {
    format!("({})", v.iter().map(|x| alg.fmt(x)).collect::<Vec<_>>().join(", "))
}

/// A finite family of vectors in B^N.
#[derive(Clone)]
pub struct Frame {
    pub alg: Alg,
    pub vectors: Vec<Vec<NcPoly>>,
}

impl Frame {
    /// η_j = Σ_k e_k p_kj, the rows of p (p being self-adjoint).
    pub fn canonical(p: &MatrixOverAlgebra) -> Frame {
        Frame { alg: p.alg.clone(), vectors: p.to_rows() }
    }

    pub fn gram(&self) -> Result<MatrixOverAlgebra> {
        let rows = self
            .vectors
            .iter()
            .map(|x| self.vectors.iter().map(|y| inner(&self.alg, x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixOverAlgebra::new(self.alg.clone(), rows))
    }

    /// Σ_j ⟨ξ,η_j⟩ η_j.
    pub fn reconstruct(&self, xi: &[NcPoly]) -> Result<Vec<NcPoly>> {
        let c = self.vectors.iter().map(|e| inner(&self.alg, xi, e)).collect::<Result<Vec<_>>>()?;
        Ok(combine(&self.alg, &c, &self.vectors))
    }
}

/// Frame identities for the module B^N p and its extension B̃ ⊗_B B^N p ≅ B̃^N F(p).
///
/// The extended inner product is ⟨b̃⊗ξ, c̃⊗η⟩ = b̃ F(⟨ξ,η⟩) c̃*, and the
/// extended frame is {1⊗η_j}. Test elements are the rows of p and their left
/// multiples by normal words of B of degree ≤ d; the extended checks also
/// multiply by normal words of B̃ of degree ≤ d.
pub fn frame_ops(p: &MatrixOverAlgebra, f: &LinearMap, d: u32) -> Report {
    let mut r = Report::new(format!("module frames of p along {}", f.name));
    r.config("bound", d);
    let b = p.alg.clone();
    let bt = f.codomain[0].clone();
    r.absorb("F", check_map_well_defined(f, d));
    let mut star = Check::new("F is a *-map on generators", None);
    for (i, g) in b.pres().generators.iter().enumerate() {
        let w = Word::letter(i as u8);
        let res = (|| -> Result<Option<String>> {
            let lhs = f.apply(&b.star(&NcPoly::word(w.clone()))?)?.to_poly();
            let rhs = bt.star(&f.apply_word(&w)?.to_poly())?;
            let diff = bt.nf(&lhs.sub(&rhs));
            Ok((!diff.is_zero()).then(|| bt.fmt(&diff)))
        })();
        star.case_result(|| g.clone(), res);
    }
    r.push(star.finish());

    let frame = Frame::canonical(p);
    match frame.gram() {
        Ok(g) => {
            let d = g.first_difference(p);
            r.assert("Gram matrix equals p", d.is_none(), None, || {
                let (i, j, res) = d.clone().unwrap();
                Witness { input: format!("entry ({i},{j})"), residue: res }
            });
        }
        Err(e) => r.assert("Gram matrix equals p", false, None, || Witness { input: "gram".into(), residue: e.to_string() }),
    }

    let b_words: Vec<NcPoly> = b.basis(d).into_iter().map(NcPoly::word).collect();
    let bt_words: Vec<NcPoly> = bt.basis(d).into_iter().map(NcPoly::word).collect();
    let rows = p.to_rows();
    let mut tests: Vec<(String, Vec<NcPoly>)> = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        for w in &b_words {
            tests.push((format!("{} . row {j}", b.fmt(w)), scale_left(&b, w, row)));
        }
    }

    let mut rec = Check::new("reconstruction in B^N p", Some(d));
    for (name, xi) in &tests {
        let res = frame.reconstruct(xi).map(|y| vec_residue(&b, &y, xi));
        rec.case_result(|| name.clone(), res);
    }
    r.push(rec.finish());

    let fmap = |v: &[NcPoly]| -> Result<Vec<NcPoly>> { v.iter().map(|x| Ok(f.apply(x)?.to_poly())).collect() };
    let ext_inner = |bl: &NcPoly, xi: &[NcPoly], cl: &NcPoly, eta: &[NcPoly]| -> Result<NcPoly> {
        let fi = f.apply(&inner(&b, xi, eta)?)?.to_poly();
        Ok(bt.mul(&bt.mul(bl, &fi), &bt.star(cl)?))
    };

    match p.map(f) {
        Ok(fp) => {
            let ext_frame: Vec<Vec<NcPoly>> = fp.to_rows();
            let mut gram = Check::new("extended Gram matrix equals F(p)", None);
            for j in 0..p.rows {
                for k in 0..p.rows {
                    let res = ext_inner(&NcPoly::one(), &rows[j], &NcPoly::one(), &rows[k])
                        .map(|v| vec_residue(&bt, &[v], &[fp.get(j, k).clone()]));
                    gram.case_result(|| format!("({j},{k})"), res);
                }
            }
            r.push(gram.finish());

            let mut ext = Check::new("extended reconstruction", Some(d));
            for (name, xi) in &tests {
                for bl in &bt_words {
                    let res = (|| -> Result<Option<String>> {
                        let v = scale_left(&bt, bl, &fmap(xi)?);
                        let c = rows
                            .iter()
                            .map(|eta| ext_inner(bl, xi, &NcPoly::one(), eta))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(vec_residue(&bt, &combine(&bt, &c, &ext_frame), &v))
                    })();
                    ext.case_result(|| format!("{} ⊗ {name}", bt.fmt(bl)), res);
                }
            }
            r.push(ext.finish());
        }
        Err(e) => r.assert("extended Gram matrix equals F(p)", false, None, || Witness {
            input: "F(p)".into(),
            residue: e.to_string(),
        }),
    }

    let mut bal = Check::new("extended inner product is B-balanced", Some(d));
    for (j, xi) in rows.iter().enumerate() {
        for (k, eta) in rows.iter().enumerate() {
            for bw in &b_words {
                for bl in &bt_words {
                    let res = (|| -> Result<Option<String>> {
                        let lhs = ext_inner(bl, &scale_left(&b, bw, xi), &NcPoly::one(), eta)?;
                        let moved = bt.mul(bl, &f.apply(bw)?.to_poly());
                        let rhs = ext_inner(&moved, xi, &NcPoly::one(), eta)?;
                        Ok(vec_residue(&bt, &[lhs], &[rhs]))
                    })();
                    bal.case_result(|| format!("{} ⊗ {} . row {j}, row {k}", bt.fmt(bl), b.fmt(bw)), res);
                }
            }
        }
    }
    r.push(bal.finish());
    r
}
