//! Prime powers, adjusted remainders, q-adic digit splits and finite scalar fields.

mod field;

pub use field::{Embedding, Scalar, ScalarField};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// q = p^e with p prime and e ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    e: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidInput(
                "prime power exponent must be positive".into(),
            ));
        }
        let q = p.checked_pow(e).ok_or(Error::Overflow("prime power"))?;
        Ok(PrimePower { p, e, q })
    }

    /// Recovers (p, e) from q; fails unless q is a prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        let factors = prime_factors(q);
        if factors.len() != 1 {
            return Err(Error::InvalidInput(format!("{q} is not a prime power")));
        }
        let p = factors[0];
        let mut e = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            e += 1;
        }
        PrimePower::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Smallest q = p^e with q ≡ 1 (mod m) and q > bound.
    pub fn smallest_admissible(p: u64, m: u64, bound: u64) -> Result<Self> {
        if p.is_multiple_of(m) && m > 1 {
            return Err(Error::NotCongruent { q: p, m });
        }
        let mut e = 1;
        loop {
            let pp = PrimePower::new(p, e)?;
            if pp.q % m == 1 % m && pp.q > bound {
                return Ok(pp);
            }
            e += 1;
        }
    }
}

/// Representative of b modulo m taken in [1, m].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjustedRemainder {
    pub value: u64,
    pub modulus: u64,
}

pub fn adjusted_remainder(b: u64, m: u64) -> Result<AdjustedRemainder> {
    if b == 0 || m == 0 {
        return Err(Error::InvalidInput(
            "adjusted remainder needs b ≥ 1 and m ≥ 1".into(),
        ));
    }
    Ok(AdjustedRemainder {
        value: (b - 1) % m + 1,
        modulus: m,
    })
}

/// The two q-adic digits of b(q−1)/m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitSplit {
    pub high: u64,
    pub low: u64,
    pub q: u64,
}

/// Writes b(q−1)/m = high·q + low for 0 ≤ b < q and m | q − 1.
pub fn split_digits(b: u64, q: &PrimePower, m: u64) -> Result<DigitSplit> {
    let qv = q.q();
    if m == 0 || !(qv - 1).is_multiple_of(m) {
        return Err(Error::NotCongruent { q: qv, m });
    }
    if b >= qv {
        return Err(Error::DigitOutOfRange { b, q: qv });
    }
    let t = b as u128 * ((qv - 1) / m) as u128;
    let high = (t / qv as u128) as u64;
    let low = (t % qv as u128) as u64;
    Ok(DigitSplit { high, low, q: qv })
}

/// Sum of the base-q digits of a.
pub fn qadic_trace(a: u128, q: u64) -> u128 {
    assert!(q >= 2, "base must be at least 2");
    let q = q as u128;
    let mut a = a;
    let mut s = 0;
    while a > 0 {
        s += a % q;
        a /= q;
    }
    s
}
