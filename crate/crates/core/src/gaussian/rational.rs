//! Rational-integer helpers: primality, factorization, square roots of −1.
//!
//! Arithmetic runs on `u128`. Moduli below `2^64` multiply directly; larger
//! ones fall back to double-and-add.

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn pow_mod(mut base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

const BASES: [u128; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller–Rabin. The first twelve prime bases are deterministic on `u64`
/// and the first thirteen below `3.3·10^24`; above that twenty bases leave
/// an error probability below `4^-20`.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let rounds = if n <= u64::MAX as u128 { 12 } else { BASES.len() };
    'witness: for &a in &BASES[..rounds] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime_u128(n as u128)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A nontrivial factor of the odd composite `n` (Pollard–Brent).
fn pollard_brent(n: u128) -> u128 {
    for c in 1u128.. {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut y, mut r, mut q, m) = (2u128, 1u128, 1u128, 128u128);
        let mut g = 1;
        let (mut x, mut ys) = (0, 0);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization as sorted `(prime, exponent)` pairs; `1` gives `[]`.
pub fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    while n.is_multiple_of(2) {
        primes.push(2);
        n /= 2;
    }
    let mut p = 3u128;
    while p <= 1 << 16 && p * p <= n {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
        p += 2;
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            primes.push(m);
            continue;
        }
        let f = pollard_brent(m);
        stack.push(f);
        stack.push(m / f);
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor_u128(n as u128).into_iter().map(|(p, e)| (p as u64, e)).collect()
}

/// Some `r` with `r² ≡ −1 (mod p)`, for a prime `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one_mod(p: u128) -> u128 {
    assert!(p % 4 == 1, "{p} is not 1 mod 4");
    for c in 2..p {
        // c is a non-residue iff c^((p-1)/2) = -1
        if pow_mod(c, (p - 1) / 2, p) == p - 1 {
            return pow_mod(c, (p - 1) / 4, p);
        }
    }
    unreachable!("a prime 1 mod 4 has a quadratic non-residue")
}
