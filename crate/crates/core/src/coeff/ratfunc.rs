//! Rational functions in μ: a Laurent numerator over a monic denominator
//! with nonzero constant term, coprime to the numerator.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::{qpoly, Q};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RatFunc {
    /// Exponent of μ carried by `num[0]`.
    pub(crate) low: i32,
    /// Trimmed; `num[0]` is nonzero unless the function is zero.
    pub(crate) num: Vec<Q>,
    /// Monic, `den[0] != 0`.
    pub(crate) den: Vec<Q>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { low: 0, num: Vec::new(), den: vec![Q::one()] }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(0, vec![c], vec![Q::one()])
    }

    pub fn monomial(c: Q, exp: i32) -> Self {
        Self::new(exp, vec![c], vec![Q::one()])
    }

    /// Normalises `μ^low · num / den`.
    pub fn new(low: i32, num: Vec<Q>, den: Vec<Q>) -> Self {
        let mut num = num;
        let mut den = den;
        qpoly::trim(&mut num);
        qpoly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let mut low = low;
        let nz = num.iter().take_while(|c| c.is_zero()).count();
        num.drain(..nz);
        low += nz as i32;
        let dz = den.iter().take_while(|c| c.is_zero()).count();
        den.drain(..dz);
        low -= dz as i32;
        if den.len() > 1 {
            let g = qpoly::gcd(&num, &den);
            if g.len() > 1 {
                num = qpoly::divrem(&num, &g).0;
                den = qpoly::divrem(&den, &g).0;
            }
        }
        let lead = den.last().unwrap().recip();
        if !lead.is_one() {
            num = qpoly::scale(&num, &lead);
            den = qpoly::monic(&den);
        }
        RatFunc { low, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.len() == 1
    }

    pub(crate) fn is_rational(&self) -> bool {
        self.is_zero() || (self.is_laurent() && self.num.len() == 1 && self.low == 0)
    }

    pub(crate) fn rational_part(&self) -> Q {
        self.num.first().cloned().unwrap_or_else(Q::zero)
    }

    pub fn low(&self) -> i32 {
        self.low
    }
    pub fn numerator(&self) -> &[Q] {
        &self.num
    }
    pub fn denominator(&self) -> &[Q] {
        &self.den
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        if self.is_laurent() && o.is_laurent() {
            let len = (self.low + self.num.len() as i32).max(o.low + o.num.len() as i32) - low;
            let mut num = vec![Q::zero(); len as usize];
            for f in [self, o] {
                for (i, c) in f.num.iter().enumerate() {
                    num[(f.low - low) as usize + i] += c;
                }
            }
            return Self::new(low, num, vec![Q::one()]);
        }
        let a = shift(&self.num, (self.low - low) as usize);
        let b = shift(&o.num, (o.low - low) as usize);
        if self.den == o.den {
            return Self::new(low, qpoly::add(&a, &b), self.den.clone());
        }
        let n = qpoly::add(&qpoly::mul(&a, &o.den), &qpoly::mul(&b, &self.den));
        Self::new(low, n, qpoly::mul(&self.den, &o.den))
    }

    pub(crate) fn neg(&self) -> Self {
        RatFunc { low: self.low, num: qpoly::neg(&self.num), den: self.den.clone() }
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let low = self.low + o.low;
        if self.is_laurent() && o.is_laurent() {
            // Leading and trailing coefficients stay nonzero, so no renormalisation.
            return RatFunc { low, num: qpoly::mul(&self.num, &o.num), den: vec![Q::one()] };
        }
        Self::new(low, qpoly::mul(&self.num, &o.num), qpoly::mul(&self.den, &o.den))
    }

    pub(crate) fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { low: self.low, num: qpoly::scale(&self.num, c), den: self.den.clone() }
    }

    pub(crate) fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(-self.low, self.den.clone(), self.num.clone()))
    }

    /// μ ↦ μ⁻¹.
    pub(crate) fn conj(&self) -> Self {
        let dn = self.num.len() as i32 - 1;
        let dd = self.den.len() as i32 - 1;
        let mut num = self.num.clone();
        num.reverse();
        let mut den = self.den.clone();
        den.reverse();
        Self::new(-self.low - dn + dd, num, den)
    }

    /// Evaluation at a nonzero rational point; `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let ev = |p: &[Q]| p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c);
        let d = ev(&self.den);
        if d.is_zero() || x.is_zero() {
            return None;
        }
        let mut r = ev(&self.num) / d;
        let xp = if self.low >= 0 { x.clone() } else { x.recip() };
        for _ in 0..self.low.unsigned_abs() {
            r *= &xp;
        }
        Some(r)
    }
}

fn shift(p: &[Q], k: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); k];
    out.extend_from_slice(p);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Q {
        Q::from_integer(x.into())
    }

    #[test]
    fn cancels_common_factors() {
        // (μ² - 1)/(μ - 1) = μ + 1
        let f = RatFunc::new(0, vec![q(-1), q(0), q(1)], vec![q(-1), q(1)]);
        assert_eq!(f, RatFunc::new(0, vec![q(1), q(1)], vec![q(1)]));
    }

    #[test]
    fn denominators_absorb_mu_powers() {
        let f = RatFunc::new(0, vec![q(2)], vec![q(0), q(0), q(1)]);
        assert_eq!(f, RatFunc::monomial(q(2), -2));
    }

    #[test]
    fn conj_inverts_mu() {
        let f = RatFunc::new(1, vec![q(1), q(3)], vec![q(2), q(1)]);
        let x = Q::new(3.into(), 7.into());
        let lhs = f.conj().eval(&x).unwrap();
        let rhs = f.eval(&x.recip()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(f.conj().conj(), f);
    }
}
