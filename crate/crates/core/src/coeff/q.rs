//! Rationals stored as reduced machine-word fractions, promoted to
//! arbitrary precision only when a result does not fit.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A rational number. Values whose reduced numerator and denominator fit
/// in an `i64` are always stored in the small form, so the derived
/// equality and hashing are by value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, denominator positive.
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Q {
    fn small(n: i128, d: i128) -> Option<Q> {
        debug_assert!(d != 0);
        let (n, d) = if d < 0 { (n.checked_neg()?, d.checked_neg()?) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        Some(Q(Repr::Small(i64::try_from(n).ok()?, i64::try_from(d).ok()?)))
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q(Repr::Small(n, d)),
            _ => Q(Repr::Big(r)),
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn new(n: BigInt, d: BigInt) -> Q {
        Q::from_big(BigRational::new(n, d))
    }

    pub fn from_integer(n: BigInt) -> Q {
        match n.to_i64() {
            Some(n) => Q(Repr::Small(n, 1)),
            None => Q(Repr::Big(BigRational::from_integer(n))),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => (*n).into(),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => (*d).into(),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// Panics on zero, like the arbitrary-precision reciprocal.
    pub fn recip(&self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Q::small(*d as i128, *n as i128).unwrap_or_else(|| Q::from_big(self.big().recip()))
            }
            Repr::Big(r) => Q::from_big(r.recip()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q(Repr::Small(0, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Q {
    fn one() -> Q {
        Q(Repr::Small(1, 1))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.big().cmp(&o.big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            let r = if b == d { Q::small(a + c, b) } else { Q::small(a * d + c * b, b * d) };
            if let Some(r) = r {
                return r;
            }
        }
        Q::from_big(self.big() + o.big())
    }
}

impl<'a> Sub<&'a Q> for &'a Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Q(Repr::Small(p, 1));
                }
            }
            if let Some(r) = Q::small(*a as i128 * *c as i128, *b as i128 * *d as i128) {
                return r;
            }
        }
        Q::from_big(self.big() * o.big())
    }
}

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        self * &o.recip()
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Q(Repr::Small(m, *d)),
                None => Q::from_big(-self.big()),
            },
            Repr::Big(r) => Q::from_big(-r.clone()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $f(self, o: Q) -> Q {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $f(self, o: &Q) -> Q {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<Q> for &'a Q {
            type Output = Q;
            fn $f(self, o: Q) -> Q {
                self.$f(&o)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        *self = &*self + o;
    }
}

impl AddAssign<Q> for Q {
    fn add_assign(&mut self, o: Q) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        *self = &*self - o;
    }
}

impl SubAssign<Q> for Q {
    fn sub_assign(&mut self, o: Q) {
        *self = &*self - &o;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, o: &Q) {
        *self = &*self * o;
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q(Repr::Small(n, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn promotes_and_demotes() {
        let big = Q::from(i64::MAX);
        let s = &big + &Q::one();
        assert!(matches!(s.0, Repr::Big(_)));
        let back = &s - &Q::one();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        assert_eq!(&big * &big.recip(), Q::one());
        assert_eq!(-Q::from(i64::MIN), &Q::from(i64::MAX) + &Q::one());
    }

    #[test]
    fn arithmetic_matches_bigrational() {
        let vals = [q(3, 7), q(-5, 12), q(1, 1), q(0, 1), q(i64::MAX, 3), q(-7, i64::MAX)];
        for a in &vals {
            for b in &vals {
                assert_eq!((a + b).big(), a.big() + b.big());
                assert_eq!((a * b).big(), a.big() * b.big());
                assert_eq!((a - b).big(), a.big() - b.big());
                assert_eq!(a.cmp(b), a.big().cmp(&b.big()));
            }
        }
        assert_eq!(format!("{}", q(-6, 4)), "-3/2");
    }
}
