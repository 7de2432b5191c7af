//! The quartic residue symbol `[a/p]₄ = i^log`, computed by modular
//! exponentiation or by quartic reciprocity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{factor, is_primary_prime, GaussianInt, I, ONE};

/// The symbol value `i^log`, `log ∈ ℤ/4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuarticValue {
    pub log: u8,
}

impl QuarticValue {
    pub fn new(log: u32) -> Self {
        QuarticValue { log: (log % 4) as u8 }
    }

    /// The quadratic symbol `[a/p]₂ = [a/p]₄²`, as a bit (0 for +1).
    pub fn quadratic_bit(self) -> u8 {
        self.log % 2
    }

    pub fn as_gaussian(self) -> GaussianInt {
        ONE.mul_i_pow(self.log as u32)
    }
}

fn check_prime(p: GaussianInt) -> Result<()> {
    if is_primary_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrimaryPrime(p))
    }
}

/// Removes every factor of `p` from `a`.
fn strip(mut a: GaussianInt, p: GaussianInt) -> Result<GaussianInt> {
    if a.is_zero() {
        return Err(Error::Zero);
    }
    while let Some(q) = a.div_exact(p) {
        a = q;
    }
    Ok(a)
}

pub(crate) fn pow_mod(base: GaussianInt, mut e: u128, p: GaussianInt) -> GaussianInt {
    let mut b = base.rem(p);
    let mut acc = ONE.rem(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc * b).rem(p);
        }
        b = (b * b).rem(p);
        e >>= 1;
    }
    acc
}

/// `[a/p]₄` as `a^{(N(p)−1)/4} mod p`, after removing the `p`-part of `a`.
pub fn symbol_exp(a: GaussianInt, p: GaussianInt) -> Result<QuarticValue> {
    check_prime(p)?;
    let a = strip(a, p)?;
    let r = pow_mod(a, (p.norm() - 1) / 4, p);
    for k in 0..4 {
        if (r - ONE.mul_i_pow(k)).rem(p).is_zero() {
            return Ok(QuarticValue::new(k));
        }
    }
    unreachable!("the power is a fourth root of unity mod a prime")
}

/// `(m, n) mod 4` from the coordinates of a primary `p = x + yi`:
/// `m = (x − y − y² − 1)/4`, `n = (1 − x)/2`.
pub fn mn_via_coordinates(p: GaussianInt) -> Result<(u8, u8)> {
    if !p.is_primary() {
        return Err(Error::NotPrimary(p));
    }
    let (x, y) = (p.re, p.im);
    let m = (x - y - y * y - 1) / 4;
    let n = (1 - x) / 2;
    Ok((m.rem_euclid(4) as u8, n.rem_euclid(4) as u8))
}

/// `[a/p]₄` through the supplementary laws and quartic reciprocity.
pub fn symbol_reciprocity(a: GaussianInt, p: GaussianInt) -> Result<QuarticValue> {
    check_prime(p)?;
    let a = strip(a, p)?;
    Ok(QuarticValue::new(reciprocity_log(a, p)))
}

// `a` is coprime to the primary prime `p`.
fn reciprocity_log(a: GaussianInt, p: GaussianInt) -> u32 {
    let a = a.rem(p);
    let f = factor(a).expect("a unit mod p is nonzero");
    let (m_p, n_p) = mn_via_coordinates(p).expect("p is primary");
    let mut log = f.s as u32 * n_p as u32 + f.t * m_p as u32;
    for &(q, e) in &f.odd_part {
        let (_, n_q) = mn_via_coordinates(q).expect("factors are primary");
        // [q/p] = [p/q] · i^{2 n_p n_q}
        let flipped = reciprocity_log(p, q) + 2 * n_p as u32 * n_q as u32;
        log += e * flipped;
    }
    log % 4
}

/// Whether `a` is a fourth power modulo `p`, by exhaustive search over the
/// residues. Only for small norms.
pub fn is_fourth_power_mod_bruteforce(a: GaussianInt, p: GaussianInt) -> bool {
    let target = a.rem(p);
    let n = p.norm() as i128;
    let bound = n.isqrt() + 1;
    (-bound..=bound).any(|re| {
        (-bound..=bound).any(|im| {
            let x = GaussianInt::new(re, im);
            (x.pow(4) - target).rem(p).is_zero()
        })
    })
}

/// `log [i/p]₄ = n_p mod 4`.
pub fn log_of_i(p: GaussianInt) -> Result<u8> {
    Ok(symbol_exp(I, p)?.log)
}
