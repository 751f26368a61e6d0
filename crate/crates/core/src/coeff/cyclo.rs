//! Elements of ℚ(ζ_n) as polynomials in ζ reduced modulo Φ_n.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::{qpoly, Q};

/// Integer coefficients of the cyclotomic polynomial Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = exact_div_int(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] / b[db];
        q[k] = c;
        for (i, y) in b.iter().enumerate() {
            r[k + i] -= c * y;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Cyclo {
    pub(crate) n: u32,
    /// Reduced modulo Φ_n and trimmed.
    pub(crate) coeffs: Vec<Q>,
}

impl Cyclo {
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Builds a reduced element from arbitrary coefficients of powers of ζ_n.
    pub fn from_coeffs(n: u32, coeffs: &[Q]) -> Self {
        Cyclo { n, coeffs: reduce(n, coeffs.to_vec()) }
    }

    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut c = vec![Q::zero(); e + 1];
        c[e] = Q::one();
        Self::from_coeffs(n, &c)
    }

    pub(crate) fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub(crate) fn rational_part(&self) -> Q {
        self.coeffs.first().cloned().unwrap_or_else(Q::zero)
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        Cyclo { n: self.n, coeffs: qpoly::add(&self.coeffs, &o.coeffs) }
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        Cyclo { n: self.n, coeffs: reduce(self.n, qpoly::mul(&self.coeffs, &o.coeffs)) }
    }

    pub(crate) fn neg(&self) -> Self {
        Cyclo { n: self.n, coeffs: qpoly::neg(&self.coeffs) }
    }

    pub(crate) fn scale(&self, c: &Q) -> Self {
        Cyclo { n: self.n, coeffs: qpoly::scale(&self.coeffs, c) }
    }

    pub(crate) fn inv(&self) -> Option<Self> {
        let m: Vec<Q> = cyclotomic_polynomial(self.n)
            .into_iter()
            .map(|x| Q::from_integer(x.into()))
            .collect();
        qpoly::inverse_mod(&self.coeffs, &m).map(|c| Cyclo { n: self.n, coeffs: c })
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub(crate) fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut c = vec![Q::zero(); n];
        for (k, x) in self.coeffs.iter().enumerate() {
            c[(n - k % n) % n] += x;
        }
        Self::from_coeffs(self.n, &c)
    }
}

fn reduce(n: u32, mut p: Vec<Q>) -> Vec<Q> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    qpoly::trim(&mut p);
    while p.len() > d {
        let top = p.len() - 1;
        let c = p[top].clone();
        let shift = top - d;
        for (i, y) in phi.iter().enumerate() {
            if *y != 0 {
                p[shift + i] -= &c * Q::from_integer((*y).into());
            }
        }
        qpoly::trim(&mut p);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), [-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), [1, 1]);
        assert_eq!(cyclotomic_polynomial(3), [1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), [1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), [1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), [1, 0, 0, 0, 1]);
        assert_eq!(euler_phi(5), 4);
    }

    #[test]
    fn roots_of_unity_have_order_n() {
        for n in 1..=8u32 {
            let z = Cyclo::root_of_unity(n, 1);
            let mut p = Cyclo::root_of_unity(n, 0);
            for _ in 0..n {
                p = p.mul(&z);
            }
            assert_eq!(p, Cyclo::root_of_unity(n, 0), "n = {n}");
        }
    }

    #[test]
    fn conj_is_inverse_on_roots() {
        let z = Cyclo::root_of_unity(8, 3);
        assert_eq!(z.conj(), z.inv().unwrap());
    }
}
