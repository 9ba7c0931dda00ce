//! Exact Gaussian-rational coefficients.
//!
//! Every coefficient in this crate is an element of Q(i): a pair of
//! arbitrary-precision rationals `re + im*i`. Rational inputs stay rational
//! automatically (the imaginary part is simply zero). `num_rational` keeps
//! both parts reduced with a positive denominator, so equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// A Gaussian rational `re + im*i` with exact arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussScalar {
    re: BigRational,
    im: BigRational,
}

impl GaussScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussScalar { re, im }
    }

    pub fn zero() -> Self {
        GaussScalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussScalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussScalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussScalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num/den` as a real rational. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussScalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussScalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussScalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussScalar({self})")
    }
}

/// Canonical text form, accepted back by the scalar parser:
/// `0`, `3`, `-1/2`, `i`, `-i`, `3*i`, `1/2*i`, `1/2+3/4*i`, `2-i`.
impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag_body(im: &BigRational) -> String {
            if im.is_one() {
                "i".to_string()
            } else {
                format!("{im}*i")
            }
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return if self.im.is_negative() {
                write!(f, "-{}", imag_body(&-self.im.clone()))
            } else {
                write!(f, "{}", imag_body(&self.im))
            };
        }
        if self.im.is_negative() {
            write!(f, "{}-{}", self.re, imag_body(&-self.im.clone()))
        } else {
            write!(f, "{}+{}", self.re, imag_body(&self.im))
        }
    }
}

impl Add for &GaussScalar {
    type Output = GaussScalar;
    fn add(self, rhs: &GaussScalar) -> GaussScalar {
        GaussScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussScalar {
    type Output = GaussScalar;
    fn sub(self, rhs: &GaussScalar) -> GaussScalar {
        GaussScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussScalar {
    type Output = GaussScalar;
    fn mul(self, rhs: &GaussScalar) -> GaussScalar {
        GaussScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussScalar {
            type Output = GaussScalar;
            fn $method(self, rhs: GaussScalar) -> GaussScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $method(self, rhs: &GaussScalar) -> GaussScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        -&self
    }
}

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, rhs: &GaussScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, rhs: &GaussScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, rhs: &GaussScalar) {
        *self = (&*self) * rhs;
    }
}

impl Sum for GaussScalar {
    fn sum<I: Iterator<Item = GaussScalar>>(iter: I) -> GaussScalar {
        let mut acc = GaussScalar::zero();
        for v in iter {
            acc += &v;
        }
        acc
    }
}

/// Scalars serialize as strings in the coefficient grammar (`"1/2+3/4*i"`).
impl serde::Serialize for GaussScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussScalar {
        GaussScalar::new(
            BigRational::new(BigInt::from(re_n), BigInt::from(re_d)),
            BigRational::new(BigInt::from(im_n), BigInt::from(im_d)),
        )
    }

    #[test]
    fn exact_add_sub_roundtrip() {
        let a = g(1, 3, -2, 7);
        let b = g(5, 11, 4, 9);
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussScalar::i();
        assert_eq!(&i * &i, GaussScalar::from_int(-1));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let a = g(3, 4, -5, 6);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert!(GaussScalar::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussScalar::zero().to_string(), "0");
        assert_eq!(GaussScalar::from_int(3).to_string(), "3");
        assert_eq!(GaussScalar::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussScalar::i().to_string(), "i");
        assert_eq!((-GaussScalar::i()).to_string(), "-i");
        assert_eq!(g(0, 1, 1, 2).to_string(), "1/2*i");
        assert_eq!(g(1, 2, 3, 4).to_string(), "1/2+3/4*i");
        assert_eq!(g(2, 1, -1, 1).to_string(), "2-i");
    }
}
