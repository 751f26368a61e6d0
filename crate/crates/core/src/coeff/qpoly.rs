//! Dense univariate polynomials over ℚ, lowest degree first.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::Q;

pub(crate) fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[Q]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    add(a, &neg(b))
}

pub(crate) fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].recip();
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Q::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn monic(a: &[Q]) -> Vec<Q> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = l.recip();
            a.iter().map(|x| x * &inv).collect()
        }
    }
}

/// Monic gcd (the zero polynomial if both inputs are zero).
pub(crate) fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Inverse of `a` modulo `m`, assuming gcd(a, m) = 1.
pub(crate) fn inverse_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    let (mut r0, mut r1) = (m.to_vec(), divrem(a, m).1);
    let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = r0[0].recip();
    Some(divrem(&scale(&s0, &inv), m).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Q> {
        let mut p: Vec<Q> = v.iter().map(|&x| Q::from_integer(x.into())).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn divrem_reconstructs() {
        let a = q(&[1, 2, 0, 3, 5]);
        let b = q(&[2, 0, 1]);
        let (qq, r) = divrem(&a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&mul(&qq, &b), &r), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = q(&[-1, 1]);
        let a = mul(&f, &q(&[1, 1, 1]));
        let b = mul(&f, &q(&[3, 1]));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn inverse_mod_cyclotomic() {
        let m = q(&[1, 1, 1]);
        let a = q(&[1, 2]);
        let inv = inverse_mod(&a, &m).unwrap();
        assert_eq!(divrem(&mul(&a, &inv), &m).1, q(&[1]));
    }
}
