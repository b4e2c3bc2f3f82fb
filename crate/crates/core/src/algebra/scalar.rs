//! Exact coefficient fields.
//!
//! Everything in the crate is computed without rounding. The polynomial kernel
//! is generic over [`Scalar`]; the geometric layers use [`GaussRat`], the
//! Gaussian rationals `ℚ(i)`. [`BigRational`] is also a `Scalar` (with the
//! trivial conjugation) and is handy for real-coefficient experiments.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field with a conjugation involution.
///
/// Operations take references so generic code does not have to clone
/// big-integer payloads on every step.
pub trait Scalar:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Zero + One + Send + Sync + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `None` when `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    /// Field automorphism of order at most two (complex conjugation for `ℚ(i)`).
    fn conj(&self) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn inv(&self) -> Option<Self> {
        Self::one().checked_div(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Scalar for BigRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// A Gaussian rational `re + im·i` with both parts in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRat {
            re: BigRational::from_ratio(re_num, re_den),
            im: BigRational::from_ratio(im_num, im_den),
        }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// True when printing needs a leading minus and no parentheses.
    pub(crate) fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

impl Scalar for GaussRat {
    fn add_ref(&self, rhs: &Self) -> Self {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(&self.re * &rhs.re);
        }
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn neg_ref(&self) -> Self {
        GaussRat { re: -&self.re, im: -&self.im }
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if rhs.im.is_zero() {
            return Some(GaussRat { re: &self.re / &rhs.re, im: &self.im / &rhs.re });
        }
        let n = rhs.norm_sqr();
        let num = self.mul_ref(&rhs.conj());
        Some(GaussRat { re: num.re / &n, im: num.im / &n })
    }
    fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat::real(BigRational::from_ratio(num, den))
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:ident) => {
        impl $tr for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                self.$body(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &'a GaussRat) -> GaussRat {
                self.$body(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        self.checked_div(&rhs).expect("division by zero in GaussRat")
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        self.neg_ref()
    }
}

impl From<i64> for GaussRat {
    fn from(v: i64) -> Self {
        GaussRat::from_int(v)
    }
}

impl From<BigRational> for GaussRat {
    fn from(v: BigRational) -> Self {
        GaussRat::real(v)
    }
}

fn fmt_rat(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Prints in the polynomial grammar: `3/4`, `-i`, `2/3*i`, `(1/2-3*i)`.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, v: &BigRational| -> fmt::Result {
            if v.is_one() {
                write!(f, "i")
            } else if (-v).is_one() {
                write!(f, "-i")
            } else {
                fmt_rat(v, f)?;
                write!(f, "*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rat(&self.re, f),
            (true, false) => imag(f, &self.im),
            (false, false) => {
                write!(f, "(")?;
                fmt_rat(&self.re, f)?;
                if self.im.is_positive() {
                    write!(f, "+")?;
                }
                imag(f, &self.im)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the forms produced by `Display` plus plain `p/q`.
impl FromStr for GaussRat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_scalar(s).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = GaussRat::from_parts(1, 2, 3, 1);
        let b = GaussRat::from_parts(-2, 1, 1, 4);
        let q = a.checked_div(&b).unwrap();
        assert_eq!(q.mul_ref(&b), a);
        assert_eq!(GaussRat::i().mul_ref(&GaussRat::i()), GaussRat::from_int(-1));
        assert!(a.checked_div(&GaussRat::zero()).is_none());
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::from_parts(3, 4, 0, 1).to_string(), "3/4");
        assert_eq!(GaussRat::from_parts(0, 1, -1, 1).to_string(), "-i");
        assert_eq!(GaussRat::from_parts(0, 1, 2, 3).to_string(), "2/3*i");
        assert_eq!(GaussRat::from_parts(1, 2, -3, 1).to_string(), "(1/2-3*i)");
        assert_eq!(GaussRat::from_parts(2, 4, 0, 1), GaussRat::from_parts(1, 2, 0, 1));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = GaussRat::from_parts(1, 1, 1, 1);
        assert_eq!(a.pow(4), GaussRat::from_int(-4));
        assert_eq!(a.pow(0), GaussRat::one());
    }
}
