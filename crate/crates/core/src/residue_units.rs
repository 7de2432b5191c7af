//! Residues modulo powers of `1+i` and the discrete logarithm of primary
//! units with respect to the generators `1−4i` and `−1−6i`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, ONE};

/// Generator of order 8 in the primary units mod `(1+i)^9`.
pub const GEN_M: GaussianInt = GaussianInt::new(1, -4);
/// Second generator of order 8, independent of [`GEN_M`].
pub const GEN_N: GaussianInt = GaussianInt::new(-1, -6);

/// A residue class modulo `(1+i)^k`, `3 ≤ k ≤ 9`.
///
/// The representative has `0 ≤ im < 2^⌊k/2⌋` and `0 ≤ re < 2^⌈k/2⌉`, so
/// structural equality is equality of classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TResidue {
    k: u32,
    value: GaussianInt,
}

fn check_k(k: u32) -> Result<()> {
    if (3..=9).contains(&k) {
        Ok(())
    } else {
        Err(Error::ModulusOutOfRange(k))
    }
}

/// Canonical representative modulo `(1+i)^k` for any `k ≥ 0`.
pub(crate) fn canonical_mod_t(g: GaussianInt, k: u32) -> GaussianInt {
    let j = k / 2;
    let m = 1i128 << j;
    if k.is_multiple_of(2) {
        // (1+i)^{2j} generates the ideal (2^j)
        GaussianInt::new(g.re.rem_euclid(m), g.im.rem_euclid(m))
    } else {
        // (1+i)^{2j+1} = 2^j·(1+i) up to a unit; subtract q·2^j·(1+i)
        let im = g.im.rem_euclid(m);
        let q = (g.im - im) / m;
        let re = (g.re - q * m).rem_euclid(2 * m);
        GaussianInt::new(re, im)
    }
}

impl TResidue {
    pub fn reduce(g: GaussianInt, k: u32) -> Result<Self> {
        check_k(k)?;
        Ok(TResidue { k, value: canonical_mod_t(g, k) })
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn value(self) -> GaussianInt {
        self.value
    }

    pub fn is_odd(self) -> bool {
        self.value.is_odd()
    }

    pub fn is_one(self) -> bool {
        self.value == ONE
    }

    pub fn is_primary(self) -> bool {
        self.value.is_primary()
    }

    /// Reduction to a smaller modulus.
    pub fn lower(self, k: u32) -> Result<Self> {
        if k > self.k {
            return Err(Error::ModulusOutOfRange(k));
        }
        TResidue::reduce(self.value, k)
    }

    fn same_k(self, other: TResidue) {
        assert_eq!(self.k, other.k, "residues with different moduli");
    }

    pub fn mul(self, other: TResidue) -> TResidue {
        self.same_k(other);
        TResidue { k: self.k, value: canonical_mod_t(self.value * other.value, self.k) }
    }

    pub fn add(self, other: TResidue) -> TResidue {
        self.same_k(other);
        TResidue { k: self.k, value: canonical_mod_t(self.value + other.value, self.k) }
    }

    pub fn neg(self) -> TResidue {
        TResidue { k: self.k, value: canonical_mod_t(-self.value, self.k) }
    }

    pub fn pow(self, e: u32) -> TResidue {
        let mut acc = TResidue { k: self.k, value: ONE };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `(m, n)` in `(ℤ/8)²` with `α ≡ (1−4i)^m (−1−6i)^n (mod (1+i)^9)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MNExponents {
    pub m: u8,
    pub n: u8,
}

impl MNExponents {
    pub fn mod4(self) -> (u8, u8) {
        (self.m % 4, self.n % 4)
    }

    pub fn mod2(self) -> (u8, u8) {
        (self.m % 2, self.n % 2)
    }
}

// indexed by re·16 + im of the canonical representative mod (1+i)^9
fn mn_table() -> &'static [Option<MNExponents>; 512] {
    static TABLE: OnceLock<[Option<MNExponents>; 512]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [None; 512];
        let mut gm = ONE;
        for m in 0..8u8 {
            let mut g = gm;
            for n in 0..8u8 {
                let r = canonical_mod_t(g, 9);
                let slot = &mut table[(r.re * 16 + r.im) as usize];
                assert!(slot.is_none(), "generators are not independent");
                *slot = Some(MNExponents { m, n });
                g = canonical_mod_t(g * GEN_N, 9);
            }
            gm = canonical_mod_t(gm * GEN_M, 9);
        }
        table
    })
}

/// Discrete logarithm of a primary `g` in the primary units mod `(1+i)^9`.
pub fn mn_exponents(g: GaussianInt) -> Result<MNExponents> {
    if !g.is_primary() {
        return Err(Error::NotPrimary(g));
    }
    let r = canonical_mod_t(g, 9);
    Ok(mn_table()[(r.re * 16 + r.im) as usize].expect("every primary class is in the table"))
}

/// Digits `(a3, a4, a5, a6)` of `g ≡ 1 + Σ a_j (1+i)^j (mod (1+i)^7)`,
/// `a_j ∈ {0, 1}`, for primary `g`.
pub fn additive_coeffs(g: GaussianInt) -> Result<[u8; 4]> {
    if !g.is_primary() {
        return Err(Error::NotPrimary(g));
    }
    let mut h = canonical_mod_t(g - ONE, 7);
    let mut digits = [0u8; 7];
    for d in digits.iter_mut() {
        let bit = (h.re + h.im).rem_euclid(2);
        *d = bit as u8;
        h = h - GaussianInt::from_int(bit);
        h = GaussianInt::new((h.re + h.im) / 2, (h.im - h.re) / 2);
    }
    debug_assert_eq!(&digits[..3], &[0, 0, 0]);
    Ok([digits[3], digits[4], digits[5], digits[6]])
}

/// All `2^{k−1}` odd residue classes mod `(1+i)^k`, in ascending order of
/// representative.
pub fn enumerate_odd_units(k: u32) -> Result<Vec<TResidue>> {
    check_k(k)?;
    let re_bound = 1i128 << k.div_ceil(2);
    let im_bound = 1i128 << (k / 2);
    let mut out = Vec::with_capacity(1 << (k - 1));
    for re in 0..re_bound {
        for im in 0..im_bound {
            let value = GaussianInt::new(re, im);
            if value.is_odd() {
                out.push(TResidue { k, value });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn g(re: i128, im: i128) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn reduce_examples() {
        let t9 = crate::gaussian::T.pow(9);
        assert!(TResidue::reduce(ONE + t9, 9).unwrap().is_one());
        let t3 = crate::gaussian::T.pow(3);
        assert_eq!(
            TResidue::reduce(g(-1, 2), 5).unwrap(),
            TResidue::reduce(ONE + t3, 5).unwrap()
        );
        assert!(TResidue::reduce(g(17, 0), 4).unwrap().is_one());
        assert_eq!(TResidue::reduce(ONE, 2), Err(Error::ModulusOutOfRange(2)));
        assert_eq!(TResidue::reduce(ONE, 10), Err(Error::ModulusOutOfRange(10)));
    }

    #[test]
    fn reduce_counts_classes() {
        for k in 3..=9 {
            let mut seen = HashSet::new();
            for re in -40..40 {
                for im in -40..40 {
                    seen.insert(TResidue::reduce(g(re, im), k).unwrap());
                }
            }
            assert_eq!(seen.len(), 1 << k);
        }
    }

    #[test]
    fn mn_examples() {
        assert_eq!(mn_exponents(ONE).unwrap(), MNExponents { m: 0, n: 0 });
        assert_eq!(mn_exponents(g(-1, 2)).unwrap().mod4(), (2, 1));
        assert_eq!(mn_exponents(g(-7, 12)).unwrap().mod4().0, 3);
        assert_eq!(mn_exponents(GEN_M).unwrap(), MNExponents { m: 1, n: 0 });
        assert_eq!(mn_exponents(g(2, 1)), Err(Error::NotPrimary(g(2, 1))));
    }

    #[test]
    fn additive_examples() {
        assert_eq!(additive_coeffs(ONE).unwrap(), [0, 0, 0, 0]);
        assert_eq!(additive_coeffs(GEN_M).unwrap(), [0, 1, 1, 1]);
        assert_eq!(additive_coeffs(GEN_N).unwrap(), [1, 0, 0, 1]);
    }

    #[test]
    fn odd_unit_counts() {
        assert_eq!(enumerate_odd_units(3).unwrap().len(), 4);
        let units: HashSet<_> = enumerate_odd_units(3)
            .unwrap()
            .into_iter()
            .collect();
        for u in [g(1, 0), g(0, 1), g(-1, 0), g(0, -1)] {
            assert!(units.contains(&TResidue::reduce(u, 3).unwrap()));
        }
        assert_eq!(enumerate_odd_units(7).unwrap().len(), 64);
        assert_eq!(enumerate_odd_units(9).unwrap().len(), 256);
    }
}
