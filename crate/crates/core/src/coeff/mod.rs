//! Exact scalar fields: ℚ, cyclotomic fields ℚ(ζ_n) and rational functions ℚ(μ).
//!
//! Values are kept in canonical form, so structural equality is field
//! equality. Anything that happens to be rational is stored as
//! [`Scalar::Rational`], which lets rationals mix freely with either
//! extension.

mod cyclo;
mod q;
pub(crate) mod qpoly;
mod ratfunc;

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use cyclo::{cyclotomic_polynomial, euler_phi, Cyclo};
pub use ratfunc::RatFunc;

pub use q::Q;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    Cyclotomic(u32),
    RationalFunction,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Cyclotomic(n) => write!(f, "Q(zeta_{n})"),
            FieldTag::RationalFunction => write!(f, "Q(mu)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Scalar {
    Rational(Q),
    Cyclotomic(Cyclo),
    RationalFunction(RatFunc),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Q::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Q::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(Q::from_integer(n.into()))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Scalar::Rational(Q::new(p.into(), q.into()))
    }

    pub fn rational(q: Q) -> Self {
        Scalar::Rational(q)
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        Self::from_cyclo(Cyclo::root_of_unity(n, k))
    }

    /// μ^k in ℚ(μ).
    pub fn mu_pow(k: i32) -> Self {
        Self::from_ratfunc(RatFunc::monomial(Q::one(), k))
    }

    pub fn mu() -> Self {
        Self::mu_pow(1)
    }

    pub fn from_cyclo(c: Cyclo) -> Self {
        if c.is_rational() {
            Scalar::Rational(c.rational_part())
        } else {
            Scalar::Cyclotomic(c)
        }
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        if f.is_rational() {
            Scalar::Rational(f.rational_part())
        } else {
            Scalar::RationalFunction(f)
        }
    }

    /// The field this value lives in; rationals report `Rational`.
    pub fn field(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rational,
            Scalar::Cyclotomic(c) => FieldTag::Cyclotomic(c.n),
            Scalar::RationalFunction(_) => FieldTag::RationalFunction,
        }
    }

    /// Whether the value can be used in a presentation over `tag`.
    pub fn fits(&self, tag: FieldTag) -> bool {
        match (self.field(), tag) {
            (FieldTag::Rational, _) => true,
            (a, b) => a == b,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    fn mismatch(&self, o: &Self) -> ScalarError {
        ScalarError::FieldMismatch(self.field(), o.field())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ScalarError> {
        use Scalar::*;
        Ok(match (self, o) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Cyclotomic(a), Cyclotomic(b)) if a.n == b.n => Self::from_cyclo(a.add(b)),
            (Cyclotomic(a), Rational(b)) | (Rational(b), Cyclotomic(a)) => {
                Self::from_cyclo(a.add(&Cyclo::from_coeffs(a.n, core::slice::from_ref(b))))
            }
            (RationalFunction(a), RationalFunction(b)) => Self::from_ratfunc(a.add(b)),
            (RationalFunction(a), Rational(b)) | (Rational(b), RationalFunction(a)) => {
                Self::from_ratfunc(a.add(&RatFunc::constant(b.clone())))
            }
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        use Scalar::*;
        Ok(match (self, o) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Cyclotomic(a), Cyclotomic(b)) if a.n == b.n => Self::from_cyclo(a.mul(b)),
            (Cyclotomic(a), Rational(b)) | (Rational(b), Cyclotomic(a)) => {
                Self::from_cyclo(a.scale(b))
            }
            (RationalFunction(a), RationalFunction(b)) => Self::from_ratfunc(a.mul(b)),
            (RationalFunction(a), Rational(b)) | (Rational(b), RationalFunction(a)) => {
                Self::from_ratfunc(a.scale(b))
            }
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ScalarError> {
        self.try_add(&-o)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        match self {
            Scalar::Rational(q) if q.is_zero() => Err(ScalarError::DivisionByZero),
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
            Scalar::Cyclotomic(c) => {
                c.inv().map(Self::from_cyclo).ok_or(ScalarError::DivisionByZero)
            }
            Scalar::RationalFunction(f) => {
                f.inv().map(Self::from_ratfunc).ok_or(ScalarError::DivisionByZero)
            }
        }
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, ScalarError> {
        self.try_mul(&o.inv()?)
    }

    /// Conjugation: identity on ℚ, ζ ↦ ζ⁻¹, μ ↦ μ⁻¹.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Cyclotomic(c) => Self::from_cyclo(c.conj()),
            Scalar::RationalFunction(f) => Self::from_ratfunc(f.conj()),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut acc = Scalar::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Q> for Scalar {
    fn from(q: Q) -> Self {
        Scalar::Rational(q)
    }
}

// Operator forms panic on a field mismatch. Presentations pin a single field,
// so a mismatch here means inconsistent input slipped past validation.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.try_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
            Scalar::RationalFunction(f) => Scalar::RationalFunction(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

pub fn fmt_rational(q: &Q) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Q::new(p, q))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, terms: &[(Q, i64)], var: &str) -> fmt::Result {
    let mut first = true;
    for (c, e) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let mono = match *e {
            0 => String::new(),
            1 => String::from(var),
            e => format!("{var}^{e}"),
        };
        if mono.is_empty() {
            write!(f, "{}", fmt_rational(&a))?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{}*{mono}", fmt_rational(&a))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Scalar::Cyclotomic(c) => {
                let t: alloc::vec::Vec<_> =
                    c.coeffs.iter().enumerate().map(|(i, x)| (x.clone(), i as i64)).collect();
                write!(f, "(")?;
                fmt_terms(f, &t, &format!("z{}", c.n))?;
                write!(f, ")")
            }
            Scalar::RationalFunction(r) => {
                let t: alloc::vec::Vec<_> = r
                    .num
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (x.clone(), r.low as i64 + i as i64))
                    .collect();
                write!(f, "(")?;
                fmt_terms(f, &t, "mu")?;
                if r.den.len() > 1 {
                    let d: alloc::vec::Vec<_> =
                        r.den.iter().enumerate().map(|(i, x)| (x.clone(), i as i64)).collect();
                    write!(f, ")/(")?;
                    fmt_terms(f, &d, "mu")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_values_demote() {
        let z = Scalar::root_of_unity(4, 1);
        assert_eq!(&z * &z, Scalar::int(-1));
        let m = Scalar::mu();
        assert_eq!(&m * &m.inv().unwrap(), Scalar::one());
        assert_eq!(Scalar::root_of_unity(2, 1), Scalar::int(-1));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Scalar::root_of_unity(3, 1);
        let b = Scalar::root_of_unity(5, 1);
        assert!(matches!(a.try_add(&b), Err(ScalarError::FieldMismatch(..))));
        assert!(matches!(a.try_mul(&Scalar::mu()), Err(ScalarError::FieldMismatch(..))));
    }

    #[test]
    fn parse_and_print_rationals() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(fmt_rational(&q), "-3/2");
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn display_forms() {
        let s = &Scalar::int(1) - &Scalar::mu_pow(2);
        assert_eq!(format!("{s}"), "(1 - mu^2)");
        let z = Scalar::root_of_unity(3, 2);
        assert_eq!(format!("{z}"), "(-1 - z3)");
    }
}
