//! Exact Gaussian-integer arithmetic.
//!
//! Components are `i128` and every ring operation is checked: an overflow
//! aborts with a panic instead of wrapping. Norms up to `2^126` are exact,
//! which leaves room for the squared residues that appear in modular
//! exponentiation modulo primes of norm below `2^62`.

mod factor;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use factor::{factor, is_primary_prime, PrimaryFactorization};
pub use rational::{factor_u128, factor_u64, is_prime_u128, is_prime_u64, sqrt_minus_one_mod};

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianInt {
    pub re: i128,
    pub im: i128,
}

/// The ramified prime `1 + i`.
pub const T: GaussianInt = GaussianInt::new(1, 1);
pub const ONE: GaussianInt = GaussianInt::new(1, 0);
pub const I: GaussianInt = GaussianInt::new(0, 1);
pub const ZERO: GaussianInt = GaussianInt::new(0, 0);

#[inline]
fn ck(v: Option<i128>) -> i128 {
    v.expect("Gaussian integer overflow")
}

impl GaussianInt {
    pub const fn new(re: i128, im: i128) -> Self {
        GaussianInt { re, im }
    }

    pub const fn from_int(re: i128) -> Self {
        GaussianInt { re, im: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    pub fn norm(self) -> u128 {
        let a = self.re.unsigned_abs();
        let b = self.im.unsigned_abs();
        a.checked_mul(a)
            .and_then(|x| b.checked_mul(b).and_then(|y| x.checked_add(y)))
            .expect("Gaussian norm overflow")
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, ck(self.im.checked_neg()))
    }

    /// Multiplication by `i^k`.
    pub fn mul_i_pow(self, k: u32) -> Self {
        match k % 4 {
            0 => self,
            1 => GaussianInt::new(ck(self.im.checked_neg()), self.re),
            2 => -self,
            _ => GaussianInt::new(self.im, ck(self.re.checked_neg())),
        }
    }

    pub fn checked_mul(self, rhs: GaussianInt) -> Option<GaussianInt> {
        let rr = self.re.checked_mul(rhs.re)?;
        let ii = self.im.checked_mul(rhs.im)?;
        let ri = self.re.checked_mul(rhs.im)?;
        let ir = self.im.checked_mul(rhs.re)?;
        Some(GaussianInt::new(rr.checked_sub(ii)?, ri.checked_add(ir)?))
    }

    pub fn checked_pow(self, e: u32) -> Option<GaussianInt> {
        (0..e).try_fold(ONE, |acc, _| acc.checked_mul(self))
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q·rhs + r` with `norm(r) ≤ norm(rhs)/2`.
    ///
    /// Each coordinate of `self / rhs` is rounded to the nearest integer,
    /// ties toward −∞.
    pub fn divrem(self, rhs: GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = i128::try_from(rhs.norm()).expect("divisor norm exceeds i128");
        let num = self * rhs.conj();
        let q = GaussianInt::new(round_div(num.re, n), round_div(num.im, n));
        let r = self - q * rhs;
        Ok((q, r))
    }

    /// Exact quotient, or `None` when `rhs` does not divide `self`.
    pub fn div_exact(self, rhs: GaussianInt) -> Option<GaussianInt> {
        if rhs.is_zero() {
            return None;
        }
        let n = i128::try_from(rhs.norm()).expect("divisor norm exceeds i128");
        let num = self * rhs.conj();
        if num.re % n == 0 && num.im % n == 0 {
            Some(GaussianInt::new(num.re / n, num.im / n))
        } else {
            None
        }
    }

    pub fn divides(self, other: GaussianInt) -> bool {
        other.div_exact(self).is_some()
    }

    /// Remainder of Euclidean division; panics on a zero modulus.
    pub fn rem(self, modulus: GaussianInt) -> GaussianInt {
        self.divrem(modulus).expect("zero modulus").1
    }

    /// Odd means not divisible by `1 + i`.
    pub fn is_odd(self) -> bool {
        (self.re + self.im) & 1 == 1
    }

    /// Division by `1 + i`, assuming it is exact.
    fn div_t(self) -> GaussianInt {
        debug_assert!(!self.is_odd());
        GaussianInt::new(
            ck(self.re.checked_add(self.im)) / 2,
            ck(self.im.checked_sub(self.re)) / 2,
        )
    }

    /// Largest `k` with `(1+i)^k | self`.
    pub fn t_valuation(self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        Ok(self.split_t().0)
    }

    /// `(k, g / (1+i)^k)` with the quotient odd. Zero maps to `(0, 0)`.
    pub fn split_t(self) -> (u32, GaussianInt) {
        if self.is_zero() {
            return (0, self);
        }
        let mut g = self;
        let mut k = 0;
        while !g.is_odd() {
            g = g.div_t();
            k += 1;
        }
        (k, g)
    }

    /// Primary means `≡ 1 (mod (1+i)^3)`.
    pub fn is_primary(self) -> bool {
        let h = self - ONE;
        h.is_zero() || h.split_t().0 >= 3
    }

    /// The unique primary associate `p` and the exponent `s` with
    /// `self = i^s · p`.
    pub fn primary_associate(self) -> Result<(GaussianInt, u8)> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        if !self.is_odd() {
            return Err(Error::NotOdd(self));
        }
        for s in 0..4u8 {
            // i^{-s} = i^{4-s}
            let p = self.mul_i_pow((4 - s as u32) % 4);
            if p.is_primary() {
                return Ok((p, s));
            }
        }
        unreachable!("every odd Gaussian integer has a primary associate")
    }

    /// `k` with `self = i^k`, for units only.
    pub fn unit_exponent(self) -> Option<u8> {
        match (self.re, self.im) {
            (1, 0) => Some(0),
            (0, 1) => Some(1),
            (-1, 0) => Some(2),
            (0, -1) => Some(3),
            _ => None,
        }
    }

    /// Sort key used for primes throughout the crate.
    pub fn canonical_key(self) -> (u128, i128, i128) {
        (self.norm(), self.re, self.im)
    }
}

/// Nearest integer to `x / n` (n > 0), ties toward −∞.
fn round_div(x: i128, n: i128) -> i128 {
    // ceil((2x - n) / 2n)
    let two_n = ck(n.checked_mul(2));
    let num = ck(ck(x.checked_mul(2)).checked_sub(n));
    -((-num).div_euclid(two_n))
}

pub fn gcd(mut a: GaussianInt, mut b: GaussianInt) -> GaussianInt {
    while !b.is_zero() {
        let r = a.rem(b);
        a = b;
        b = r;
    }
    a
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: Self) -> Self {
        GaussianInt::new(ck(self.re.checked_add(rhs.re)), ck(self.im.checked_add(rhs.im)))
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: Self) -> Self {
        GaussianInt::new(ck(self.re.checked_sub(rhs.re)), ck(self.im.checked_sub(rhs.im)))
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> Self {
        GaussianInt::new(ck(self.re.checked_neg()), ck(self.im.checked_neg()))
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("Gaussian integer overflow")
    }
}

impl From<i128> for GaussianInt {
    fn from(v: i128) -> Self {
        GaussianInt::from_int(v)
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::from_int(v as i128)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |f: &mut fmt::Formatter<'_>, v: i128| match v {
            1 => write!(f, "i"),
            -1 => write!(f, "-i"),
            _ => write!(f, "{v}i"),
        };
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => im_part(f, im),
            (re, im) if im > 0 => {
                write!(f, "{re}+")?;
                im_part(f, im)
            }
            (re, im) => {
                write!(f, "{re}")?;
                im_part(f, im)
            }
        }
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, `a+i`, with optional
    /// leading sign and surrounding whitespace; `j` is not accepted.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let parse_int = |x: &str| -> Result<i128> {
            if x.is_empty() || x.starts_with(['+', '-']) && x.len() == 1 {
                return Err(bad());
            }
            x.parse::<i128>().map_err(|_| bad())
        };
        let parse_im = |x: &str| -> Result<i128> {
            match x {
                "" | "+" => Ok(1),
                "-" => Ok(-1),
                _ => parse_int(x),
            }
        };
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not the leading one
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(k, _)| k)
                .last();
            match split {
                Some(k) => {
                    let re = parse_int(&body[..k])?;
                    let im = parse_im(&body[k..])?;
                    Ok(GaussianInt::new(re, im))
                }
                None => Ok(GaussianInt::new(0, parse_im(body)?)),
            }
        } else {
            Ok(GaussianInt::new(parse_int(&t)?, 0))
        }
    }
}

impl Serialize for GaussianInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i128, im: i128) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn norms() {
        assert_eq!(ZERO.norm(), 0);
        assert_eq!(g(3, 2).norm(), 13);
        assert_eq!(g(-7, 12).norm(), 193);
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = g(5, 0).divrem(T).unwrap();
        assert_eq!(g(5, 0), q * T + r);
        assert!(r.norm() <= 1);
        assert_eq!(g(4, 0).divrem(g(2, 0)).unwrap(), (g(2, 0), ZERO));
        assert_eq!(g(1, 3).divrem(T).unwrap(), (g(2, 1), ZERO));
        assert_eq!(g(1, 1).divrem(ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn divrem_ties_round_down() {
        // 1/2 and -1/2 both round toward -inf
        assert_eq!(round_div(1, 2), 0);
        assert_eq!(round_div(-1, 2), -1);
        assert_eq!(round_div(3, 2), 1);
        assert_eq!(round_div(5, 3), 2);
        assert_eq!(round_div(-5, 3), -2);
    }

    #[test]
    fn t_valuations() {
        assert_eq!(g(2, 0).t_valuation().unwrap(), 2);
        assert_eq!(T.t_valuation().unwrap(), 1);
        assert_eq!(ONE.t_valuation().unwrap(), 0);
        assert_eq!(ZERO.t_valuation(), Err(Error::Zero));
        assert_eq!(g(-4, 0).t_valuation().unwrap(), 4);
    }

    #[test]
    fn primary_associates() {
        assert_eq!(g(-1, 2).primary_associate().unwrap(), (g(-1, 2), 0));
        assert_eq!(g(1, -2).primary_associate().unwrap(), (g(-1, 2), 2));
        assert_eq!(ONE.primary_associate().unwrap(), (ONE, 0));
        assert_eq!(g(127, 0).primary_associate().unwrap(), (g(-127, 0), 2));
        assert_eq!(g(2, 0).primary_associate(), Err(Error::NotOdd(g(2, 0))));
        assert_eq!(ZERO.primary_associate(), Err(Error::Zero));
    }

    #[test]
    fn parse_and_print() {
        for (text, v) in [
            ("-7+12i", g(-7, 12)),
            ("9-4i", g(9, -4)),
            ("i", I),
            ("-i", g(0, -1)),
            ("3i", g(0, 3)),
            ("-127", g(-127, 0)),
            ("0", ZERO),
            ("1+i", T),
            ("2-i", g(2, -1)),
        ] {
            assert_eq!(text.parse::<GaussianInt>().unwrap(), v, "{text}");
            assert_eq!(v.to_string(), text);
        }
        assert_eq!(" +5 - 2i ".parse::<GaussianInt>().unwrap(), g(5, -2));
        assert!("".parse::<GaussianInt>().is_err());
        assert!("1+2".parse::<GaussianInt>().is_err());
        assert!("abc".parse::<GaussianInt>().is_err());
        assert!("--3".parse::<GaussianInt>().is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_aborts() {
        let big = g(i128::MAX / 2, 0);
        let _ = big * big;
    }
}
