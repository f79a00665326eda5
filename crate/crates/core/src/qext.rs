//! Exact arithmetic in real quadratic fields `Q(√D)`.
//!
//! A [`Quad`] is the real number `x + y·√D` with `x`, `y` and the radicand
//! `D ≥ 0` rational. Signs, comparisons and floors are decided exactly, so
//! every integer derived from a bound is provably correct.
//!
//! Two values can be combined when they live in the same field: either one
//! of them is rational, or the ratio of their radicands is a rational square
//! (`√8` and `√2` are compatible, `√2` and `√3` are not).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{BoundError, Result};

pub type Rational = BigRational;

/// Square factors up to this bound are pulled out of radicands.
const RADICAND_TRIAL_BOUND: u32 = 1000;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rational_floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn rational_ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Integer square root of a perfect square, `None` otherwise.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a rational that is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = exact_isqrt(r.numer())?;
    let d = exact_isqrt(r.denom())?;
    Some(Rational::new(n, d))
}

/// Writes a non-square radicand `D` as `c²·k` with `k` an integer, returning
/// `(k, c)`. Square factors `p²` with `p` below the trial bound are moved
/// into `c`.
fn reduce_radicand(d: &Rational) -> (BigInt, Rational) {
    // n/m = n·m / m²
    let mut k = d.numer() * d.denom();
    let mut c = Rational::new(BigInt::one(), d.denom().clone());
    for p in 2..RADICAND_TRIAL_BOUND {
        let p2 = BigInt::from(p * p);
        if p2 > k {
            break;
        }
        while (&k % &p2).is_zero() {
            k /= &p2;
            c *= int(p);
        }
    }
    (k, c)
}

/// The real number `x + y·√D`.
#[derive(Clone, Debug)]
pub struct Quad {
    x: Rational,
    y: Rational,
    d: Rational,
}

impl Quad {
    /// Builds `x + y·√D` in canonical form. A rational-square radicand is
    /// folded into `x`; other radicands are reduced to an integer with small
    /// square factors removed.
    pub fn new(x: Rational, y: Rational, d: Rational) -> Result<Quad> {
        if d.is_negative() {
            return Err(BoundError::DomainError(format!("negative radicand {d}")));
        }
        if let Some(s) = rational_sqrt(&d) {
            return Ok(Quad { x: x + y * s, y: Rational::zero(), d });
        }
        if y.is_zero() {
            return Ok(Quad { x, y, d });
        }
        let (k, c) = reduce_radicand(&d);
        Ok(Quad { x, y: y * c, d: Rational::from_integer(k) })
    }

    pub fn from_rational(x: Rational) -> Quad {
        Quad { x, y: Rational::zero(), d: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Quad {
        Quad::from_rational(int(n))
    }

    /// `√D`.
    pub fn sqrt(d: Rational) -> Result<Quad> {
        Quad::new(Rational::zero(), Rational::one(), d)
    }

    /// `√n` for a natural integer.
    pub fn sqrt_int(n: u64) -> Quad {
        Quad::sqrt(int(n)).expect("natural radicand")
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.x)
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    pub fn conjugate(&self) -> Quad {
        Quad { x: self.x.clone(), y: -&self.y, d: self.d.clone() }
    }

    /// Field norm `x² − y²·D`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - &self.y * &self.y * &self.d
    }

    /// Rewrites `other.y` over `self`'s radicand.
    fn align(&self, other: &Quad) -> Result<(Rational, Rational, Rational)> {
        if other.y.is_zero() {
            return Ok((self.d.clone(), self.y.clone(), Rational::zero()));
        }
        if self.y.is_zero() {
            return Ok((other.d.clone(), Rational::zero(), other.y.clone()));
        }
        if self.d == other.d {
            return Ok((self.d.clone(), self.y.clone(), other.y.clone()));
        }
        match rational_sqrt(&(&other.d / &self.d)) {
            Some(t) => Ok((self.d.clone(), self.y.clone(), &other.y * t)),
            None => Err(BoundError::RadicandMismatch { left: self.d.to_string(), right: other.d.to_string() }),
        }
    }

    pub fn checked_add(&self, other: &Quad) -> Result<Quad> {
        let (d, y1, y2) = self.align(other)?;
        Ok(Quad { x: &self.x + &other.x, y: y1 + y2, d })
    }

    pub fn checked_sub(&self, other: &Quad) -> Result<Quad> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Quad) -> Result<Quad> {
        let (d, y1, y2) = self.align(other)?;
        let x = &self.x * &other.x + &y1 * &y2 * &d;
        let y = &self.x * y2 + &other.x * y1;
        Ok(Quad { x, y, d })
    }

    pub fn inv(&self) -> Result<Quad> {
        if self.is_zero() {
            return Err(BoundError::DivisionByZero);
        }
        // the norm vanishes only at zero since D is not a rational square
        let n = self.norm();
        Ok(Quad { x: &self.x / &n, y: -&self.y / &n, d: self.d.clone() })
    }

    pub fn checked_div(&self, other: &Quad) -> Result<Quad> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Quad {
        Quad { x: &self.x * r, y: &self.y * r, d: self.d.clone() }
    }

    /// Exact sign: −1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let sx = sign_of(&self.x);
        if self.y.is_zero() || self.d.is_zero() {
            return sx;
        }
        let sy = sign_of(&self.y);
        if sx == 0 {
            return sy;
        }
        if sx == sy {
            return sx;
        }
        match (&self.x * &self.x).cmp(&(&self.y * &self.y * &self.d)) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => 0,
        }
    }

    /// The unique integer `n` with `n ≤ self < n + 1`.
    pub fn floor(&self) -> BigInt {
        if self.y.is_zero() || self.d.is_zero() {
            return rational_floor(&self.x);
        }
        // floor(√s) = isqrt(floor(s)); √s is irrational here
        let s = &self.y * &self.y * &self.d;
        let r: BigInt = Roots::sqrt(&rational_floor(&s));
        let floor_y = if self.y.is_positive() { r } else { -(r + BigInt::one()) };
        let n0 = rational_floor(&self.x) + floor_y;
        let next = self.checked_sub(&Quad::from_rational(Rational::from_integer(&n0 + 1)));
        if next.expect("rational operand").signum() >= 0 {
            n0 + 1
        } else {
            n0
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn checked_cmp(&self, other: &Quad) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// Double-precision approximation, for plotting and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let x = self.x.to_f64().unwrap_or(f64::NAN);
        if self.y.is_zero() {
            return x;
        }
        x + self.y.to_f64().unwrap_or(f64::NAN) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Rational values print as a bare fraction, others in full form.
    pub fn to_exact_string(&self) -> String {
        match self.as_rational() {
            Some(r) => r.to_string(),
            None => self.to_string(),
        }
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl From<Rational> for Quad {
    fn from(r: Rational) -> Quad {
        Quad::from_rational(r)
    }
}

impl From<BigInt> for Quad {
    fn from(n: BigInt) -> Quad {
        Quad::from_rational(Rational::from_integer(n))
    }
}

impl From<i64> for Quad {
    fn from(n: i64) -> Quad {
        Quad::from_int(n)
    }
}

impl PartialEq for Quad {
    fn eq(&self, other: &Quad) -> bool {
        matches!(self.checked_cmp(other), Ok(Ordering::Equal))
    }
}

impl Eq for Quad {}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { x: -&self.x, y: -&self.y, d: self.d.clone() }
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        -&self
    }
}

// Operator forms panic on incompatible radicands; use the `checked_*`
// methods when the fields are not known to agree.
macro_rules! quad_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Quad> for &Quad {
            type Output = Quad;
            fn $method(self, rhs: &Quad) -> Quad {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Quad> for Quad {
            type Output = Quad;
            fn $method(self, rhs: Quad) -> Quad {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Quad> for Quad {
            type Output = Quad;
            fn $method(self, rhs: &Quad) -> Quad {
                (&self).$method(rhs)
            }
        }
        impl $trait<Quad> for &Quad {
            type Output = Quad;
            fn $method(self, rhs: Quad) -> Quad {
                self.$method(&rhs)
            }
        }
        impl $trait<&Rational> for &Quad {
            type Output = Quad;
            fn $method(self, rhs: &Rational) -> Quad {
                self.$method(&Quad::from_rational(rhs.clone()))
            }
        }
        impl $trait<Rational> for Quad {
            type Output = Quad;
            fn $method(self, rhs: Rational) -> Quad {
                (&self).$method(&Quad::from_rational(rhs))
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.x, self.y, self.d)
    }
}

impl FromStr for Quad {
    type Err = BoundError;

    /// Accepts `x + y*sqrt(D)`, `x - y*sqrt(D)`, `y*sqrt(D)` or a bare
    /// rational `x`.
    fn from_str(s: &str) -> Result<Quad> {
        let s = s.trim();
        let parse_rat = |t: &str| t.trim().parse::<Rational>().map_err(|e| BoundError::Parse(format!("{t:?}: {e}")));
        let Some(star) = s.find("*sqrt(") else {
            return Ok(Quad::from_rational(parse_rat(s)?));
        };
        let radicand =
            s[star + 6..].strip_suffix(')').ok_or_else(|| BoundError::Parse(format!("unclosed sqrt in {s:?}")))?;
        let head = &s[..star];
        let (x, y) = match head.rfind(" + ").map(|i| (i, 1)).or(head.rfind(" - ").map(|i| (i, -1))) {
            Some((i, sgn)) => {
                let y = parse_rat(&head[i + 3..])?;
                (parse_rat(&head[..i])?, if sgn < 0 { -y } else { y })
            }
            None => (Rational::zero(), parse_rat(head)?),
        };
        Quad::new(x, y, parse_rat(radicand)?)
    }
}
