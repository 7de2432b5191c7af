use serde::{Deserialize, Serialize};

use super::rational::{factor_u128, is_prime_u128, sqrt_minus_one_mod};
use super::{gcd, GaussianInt, ONE, T};
use crate::error::{Error, Result};

/// `g = i^s · (1+i)^t · ∏ prime^exp` with primary primes in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimaryFactorization {
    pub s: u8,
    pub t: u32,
    pub odd_part: Vec<(GaussianInt, u32)>,
}

/// True for primary Gaussian primes: either the norm is a rational prime, or
/// the value is `−ℓ` for a rational prime `ℓ ≡ 3 (mod 4)`.
pub fn is_primary_prime(p: GaussianInt) -> bool {
    if !p.is_odd() || !p.is_primary() {
        return false;
    }
    if is_prime_u128(p.norm()) {
        return true;
    }
    p.im == 0 && p.re < 0 && (-p.re) % 4 == 3 && is_prime_u128(p.re.unsigned_abs())
}

impl PrimaryFactorization {
    /// Builds a factorization from given parts, validating and sorting the
    /// primes. Exponents of zero are dropped.
    pub fn from_parts(s: u8, t: u32, primes: Vec<(GaussianInt, u32)>) -> Result<Self> {
        let mut odd_part: Vec<(GaussianInt, u32)> =
            primes.into_iter().filter(|&(_, e)| e > 0).collect();
        for &(p, _) in &odd_part {
            if !is_primary_prime(p) {
                return Err(Error::NotPrimaryPrime(p));
            }
        }
        odd_part.sort_by_key(|(p, _)| p.canonical_key());
        if odd_part.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Hypothesis("repeated prime".into()));
        }
        Ok(PrimaryFactorization { s: s % 4, t, odd_part })
    }

    /// Multiplies the factors back together.
    pub fn recompose(&self) -> GaussianInt {
        let mut g = ONE.mul_i_pow(self.s as u32) * T.pow(self.t);
        for &(p, e) in &self.odd_part {
            g = g * p.pow(e);
        }
        g
    }

    pub fn is_fourth_power_free(&self) -> bool {
        self.s < 4 && self.t < 4 && self.odd_part.iter().all(|&(_, e)| (1..=3).contains(&e))
    }

    /// The representative of the class modulo fourth powers.
    pub fn fourth_power_free_part(&self) -> PrimaryFactorization {
        PrimaryFactorization {
            s: self.s % 4,
            t: self.t % 4,
            odd_part: self.odd_part.iter().filter(|&&(_, e)| e % 4 != 0).map(|&(p, e)| (p, e % 4)).collect(),
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = GaussianInt> + '_ {
        self.odd_part.iter().map(|&(p, _)| p)
    }

    pub fn norm(&self) -> u128 {
        self.odd_part
            .iter()
            .fold(1u128 << self.t, |acc, &(p, e)| acc * p.norm().pow(e))
    }

    /// The product of the odd primes with their exponents.
    pub fn odd_value(&self) -> GaussianInt {
        self.odd_part.iter().fold(ONE, |acc, &(p, e)| acc * p.pow(e))
    }
}

/// Factors a nonzero Gaussian integer into `i^s (1+i)^t ∏ primeᵉ`.
///
/// Norms beyond `u64` use trial division to `2^16` and then Pollard–Brent,
/// so very large prime factors can be slow.
pub fn factor(g: GaussianInt) -> Result<PrimaryFactorization> {
    if g.is_zero() {
        return Err(Error::Zero);
    }
    let (t, mut rest) = g.split_t();
    let mut odd_part = Vec::new();
    for (l, e) in factor_u128(rest.norm()) {
        let li = l as i128;
        if l % 4 == 3 {
            let p = GaussianInt::from_int(-li);
            let mut k = 0;
            while let Some(q) = rest.div_exact(p) {
                rest = q;
                k += 1;
            }
            debug_assert_eq!(2 * k, e);
            odd_part.push((p, k));
        } else {
            let r = sqrt_minus_one_mod(l) as i128;
            let (p, _) = gcd(GaussianInt::from_int(li), GaussianInt::new(r, 1)).primary_associate()?;
            for q in [p, p.conj()] {
                let mut k = 0;
                while let Some(v) = rest.div_exact(q) {
                    rest = v;
                    k += 1;
                }
                if k > 0 {
                    odd_part.push((q, k));
                }
            }
        }
    }
    let s = rest.unit_exponent().expect("leftover after removing all primes is a unit");
    odd_part.sort_by_key(|(p, _)| p.canonical_key());
    Ok(PrimaryFactorization { s, t, odd_part })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i128, im: i128) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn factor_five() {
        let f = factor(g(5, 0)).unwrap();
        assert_eq!((f.s, f.t), (0, 0));
        assert_eq!(f.odd_part, vec![(g(-1, -2), 1), (g(-1, 2), 1)]);
    }

    #[test]
    fn factor_inert() {
        let f = factor(g(-127, 0)).unwrap();
        assert_eq!((f.s, f.t), (0, 0));
        assert_eq!(f.odd_part, vec![(g(-127, 0), 1)]);
        let f = factor(g(127, 0)).unwrap();
        assert_eq!(f.s, 2);
    }

    #[test]
    fn factor_two() {
        let f = factor(g(2, 0)).unwrap();
        assert_eq!((f.s, f.t), (3, 2));
        assert!(f.odd_part.is_empty());
        assert_eq!(f.recompose(), g(2, 0));
    }

    #[test]
    fn fourth_power_free() {
        assert!(!factor(g(16, 0)).unwrap().is_fourth_power_free());
        assert!(factor(g(1, 0)).unwrap().is_fourth_power_free());
        assert!(!factor(g(625, 0)).unwrap().is_fourth_power_free());
        assert!(factor(g(125, 0)).unwrap().is_fourth_power_free());
        let reduced = factor(g(-4 * 625 * 3, 0)).unwrap().fourth_power_free_part();
        assert_eq!(reduced.recompose(), g(3, 0));
    }

    #[test]
    fn from_parts_validates() {
        assert!(PrimaryFactorization::from_parts(0, 0, vec![(g(1, 2), 1)]).is_err());
        assert!(PrimaryFactorization::from_parts(0, 0, vec![(g(-21, 0), 1)]).is_err());
        let f = PrimaryFactorization::from_parts(1, 0, vec![(g(-127, 0), 1), (g(-1, 2), 2)]).unwrap();
        assert_eq!(f.odd_part[0].0, g(-1, 2));
        assert_eq!(f.recompose(), factor(f.recompose()).unwrap().recompose());
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factor(g(0, 0)), Err(Error::Zero));
    }
}
