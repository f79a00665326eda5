//! Fixed-point reals with 400 fractional bits (about 120 decimal digits).
//!
//! This is the numeric substrate of the oracles. It shares nothing with the
//! exact quadratic-field code apart from the big-integer type.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qext::{Quad, Rational};

pub const PREC_BITS: usize = 400;

/// The real number `m · 2^-PREC_BITS`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hp(BigInt);

impl Hp {
    pub fn zero() -> Hp {
        Hp(BigInt::zero())
    }

    pub fn one() -> Hp {
        Hp(BigInt::one() << PREC_BITS)
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Hp {
        Hp(n.into() << PREC_BITS)
    }

    pub fn from_rational(r: &Rational) -> Hp {
        Hp((r.numer() << PREC_BITS).div_floor(r.denom()))
    }

    /// Exact dyadic value of this number.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.0.clone(), BigInt::one() << PREC_BITS)
    }

    /// `10^e`, possibly with a negative exponent.
    pub fn pow10(e: i32) -> Hp {
        let p = BigInt::from(10).pow(e.unsigned_abs());
        if e >= 0 {
            Hp::from_int(p)
        } else {
            Hp::from_rational(&Rational::new(BigInt::one(), p))
        }
    }

    /// Evaluates `x + y·√D`.
    pub fn from_quad(u: &Quad) -> Hp {
        let x = Hp::from_rational(u.x());
        if u.y().is_zero() {
            return x;
        }
        x + Hp::from_rational(u.y()) * Hp::from_rational(u.radicand()).sqrt()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Hp {
        Hp(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        &self.0 >> PREC_BITS
    }

    /// Distance to the nearest integer.
    pub fn dist_to_integer(&self) -> Hp {
        let f = Hp::from_int(self.floor());
        let lo = self - &f;
        let hi = &f + &Hp::one() - self;
        lo.min(hi)
    }

    pub fn sqrt(&self) -> Hp {
        assert!(!self.is_negative(), "square root of a negative number");
        Hp((&self.0 << PREC_BITS).sqrt())
    }

    pub fn pi() -> Hp {
        static PI: OnceLock<Hp> = OnceLock::new();
        PI.get_or_init(|| {
            // Machin: π = 16·atan(1/5) − 4·atan(1/239)
            Hp::from_int(16) * atan_inv(5) - Hp::from_int(4) * atan_inv(239)
        })
        .clone()
    }

    pub fn cos(&self) -> Hp {
        let two_pi = Hp::from_int(2) * Hp::pi();
        let k = (self / &two_pi).floor();
        let mut r = self - &(Hp::from_int(k) * &two_pi);
        if r > Hp::pi() {
            r = r - two_pi;
        }
        let r2 = &r * &r;
        let mut term = Hp::one();
        let mut sum = Hp::one();
        let mut n = 1u64;
        while !term.0.is_zero() {
            term = -(&term * &r2) / Hp::from_int((2 * n - 1) * (2 * n));
            sum = sum + &term;
            n += 1;
        }
        sum
    }

    pub fn powi(&self, k: u32) -> Hp {
        (0..k).fold(Hp::one(), |acc, _| acc * self)
    }

    pub fn to_f64(&self) -> f64 {
        let shift = PREC_BITS - 64;
        (&self.0 >> shift).to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
    }

    /// Decimal rendering with `digits` fractional digits (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = (self.0.abs() * BigInt::from(10).pow(digits as u32)) >> PREC_BITS;
        let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
        let (int_part, frac) = s.split_at(s.len() - digits);
        let sign = if self.is_negative() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }
}

/// `atan(1/n)` by its alternating series.
fn atan_inv(n: u64) -> Hp {
    let n2 = BigInt::from(n * n);
    let mut power = (BigInt::one() << PREC_BITS) / BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
    }
    Hp(sum)
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(40)))
    }
}

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(-self.0)
    }
}

impl Neg for &Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(-&self.0)
    }
}

fn mul_raw(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> PREC_BITS
}

fn div_raw(a: &BigInt, b: &BigInt) -> BigInt {
    assert!(!b.is_zero(), "division by zero");
    (a << PREC_BITS).div_floor(b)
}

macro_rules! hp_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&Hp> for &Hp {
            type Output = Hp;
            fn $method(self, rhs: &Hp) -> Hp {
                Hp(($f)(&self.0, &rhs.0))
            }
        }
        impl $trait<Hp> for Hp {
            type Output = Hp;
            fn $method(self, rhs: Hp) -> Hp {
                Hp(($f)(&self.0, &rhs.0))
            }
        }
        impl $trait<&Hp> for Hp {
            type Output = Hp;
            fn $method(self, rhs: &Hp) -> Hp {
                Hp(($f)(&self.0, &rhs.0))
            }
        }
        impl $trait<Hp> for &Hp {
            type Output = Hp;
            fn $method(self, rhs: Hp) -> Hp {
                Hp(($f)(&self.0, &rhs.0))
            }
        }
    };
}

hp_binop!(Add, add, |a: &BigInt, b: &BigInt| a + b);
hp_binop!(Sub, sub, |a: &BigInt, b: &BigInt| a - b);
hp_binop!(Mul, mul, mul_raw);
hp_binop!(Div, div, div_raw);

/// Compares `a` and `b` up to an absolute tolerance.
pub fn close(a: &Hp, b: &Hp, tol: &Hp) -> bool {
    (a - b).abs().cmp(tol) != Ordering::Greater
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qext::{int, rat};

    #[test]
    fn pi_digits() {
        let pi = Hp::pi().to_decimal(60);
        assert_eq!(pi, "3.141592653589793238462643383279502884197169399375105820974944");
    }

    #[test]
    fn sqrt_two_digits() {
        let s = Hp::from_int(2).sqrt().to_decimal(50);
        assert_eq!(s, "1.41421356237309504880168872420969807856967187537694");
    }

    #[test]
    fn cosine_identities() {
        let tol = Hp::pow10(-100);
        let pi = Hp::pi();
        assert!(close(&pi.cos(), &Hp::from_int(-1), &tol));
        assert!(close(&Hp::zero().cos(), &Hp::one(), &tol));
        let third = &pi / Hp::from_int(3);
        assert!(close(&third.cos(), &Hp::from_rational(&rat(1, 2)), &tol));
        let big = Hp::from_int(1000) + &third;
        let c = big.cos();
        let s2 = Hp::one() - &c * &c;
        // cos² + sin² = 1 checked through cos(x + π/2)
        let shifted = (&big + &(&pi / Hp::from_int(2))).cos();
        assert!(close(&(&shifted * &shifted), &s2, &tol));
    }

    #[test]
    fn conversions() {
        assert_eq!(Hp::from_rational(&rat(-7, 2)).floor(), BigInt::from(-4));
        assert_eq!(Hp::from_rational(&rat(-7, 2)).to_decimal(3), "-3.500");
        assert_eq!(Hp::from_rational(&rat(1, 8)).to_decimal(5), "0.12500");
        assert!(close(&(Hp::pow10(-3) * Hp::from_int(1000)), &Hp::one(), &Hp::pow10(-100)));
        let q = Quad::new(int(-70), int(66), int(5)).unwrap();
        assert_eq!(Hp::from_quad(&q).floor(), BigInt::from(77));
        assert!((Hp::from_quad(&q).to_f64() - 77.5807).abs() < 1e-3);
    }
}
