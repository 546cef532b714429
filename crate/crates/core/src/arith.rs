//! Exact integer helpers: gcd, primality, factorization and prime powers.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("{p}^{r} does not fit in 64 bits")]
    Overflow { p: u64, r: u32 },
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `gcd(k, |t|)`, with `gcd(k, 0) = k`.
pub fn gcd_signed(k: u64, t: i64) -> u64 {
    gcd(k, t.unsigned_abs())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
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

// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0)");
    let mut primes = Vec::new();
    let mut stack = vec![n];
    while let Some(mut m) = stack.pop() {
        if m == 1 {
            continue;
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            while m % p == 0 {
                primes.push(p);
                m /= p;
            }
        }
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn divisor_count(n: u64) -> usize {
    factorize(n).iter().map(|&(_, e)| e as usize + 1).product()
}

/// A prime power `p^r` with `r >= 1`, stored as its base and exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    prime: u64,
    exponent: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Result<Self, ArithError> {
        if !is_prime(prime) {
            return Err(ArithError::NotPrime(prime));
        }
        if exponent == 0 {
            return Err(ArithError::ZeroExponent);
        }
        prime
            .checked_pow(exponent)
            .ok_or(ArithError::Overflow { p: prime, r: exponent })?;
        Ok(Self { prime, exponent })
    }

    /// Splits `q` as `p^r`; fails unless `q` has exactly one prime divisor.
    pub fn from_value(q: u64) -> Result<Self, ArithError> {
        match factorize(q.max(1)).as_slice() {
            [(p, r)] if q > 1 => Ok(Self {
                prime: *p,
                exponent: *r,
            }),
            _ => Err(ArithError::NotPrimePower(q)),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

impl Ord for PrimePower {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value().cmp(&other.value()).then(self.prime.cmp(&other.prime))
    }
}

impl PartialOrd for PrimePower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_primes(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial_primes(n), "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in [1u64, 2, 12, 360, 9_699_690, 600_851_475_143, 1 << 62, 999_999_000_001] {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn prime_power_parsing() {
        assert_eq!(PrimePower::from_value(27).unwrap(), PrimePower::new(3, 3).unwrap());
        assert_eq!(PrimePower::from_value(6), Err(ArithError::NotPrimePower(6)));
        assert_eq!(PrimePower::from_value(1), Err(ArithError::NotPrimePower(1)));
        assert_eq!(PrimePower::new(9, 1), Err(ArithError::NotPrime(9)));
        assert!(PrimePower::new(3, 41).is_err());
    }

    #[test]
    fn gcd_conventions() {
        assert_eq!(gcd_signed(12, 0), 12);
        assert_eq!(gcd_signed(12, -8), 4);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisor_count(24), 8);
        assert_eq!(divisor_count(1), 1);
    }
}
