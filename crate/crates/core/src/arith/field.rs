use std::fmt;
use std::sync::OnceLock;

use super::{is_prime, prime_factors, PrimePower};
use crate::error::{Error, Result};

/// Largest field size for which exp/log tables are built.
const TABLE_LIMIT: u64 = 1 << 24;

/// An element of a finite field, packed as the base-p digits of its
/// coordinates in the power basis of the field's defining polynomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(u64);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// The field with p^k elements. For k ≥ 2 it is built on the first primitive
/// polynomial in lexicographic order of its coefficients, so the class of x
/// generates the multiplicative group.
#[derive(Clone)]
pub struct ScalarField {
    p: u64,
    k: u32,
    size: u64,
    modulus: Vec<u64>,
    tables: OnceLock<Tables>,
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for ScalarField {}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

impl ScalarField {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidInput("field degree must be positive".into()));
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge { p, k });
        }
        let size = p.checked_pow(k).ok_or(Error::FieldTooLarge { p, k })?;
        let mut field = ScalarField {
            p,
            k,
            size,
            modulus: Vec::new(),
            tables: OnceLock::new(),
        };
        if k > 1 {
            if size > TABLE_LIMIT {
                return Err(Error::FieldTooLarge { p, k });
            }
            let (modulus, tables) = primitive_modulus(p, k);
            field.modulus = modulus;
            let _ = field.tables.set(tables);
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Tail coefficients c_0..c_{k−1} of the monic defining polynomial.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Scalar {
        Scalar(0)
    }

    pub fn one(&self) -> Scalar {
        Scalar(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        Scalar(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_raw(&self, raw: u64) -> Result<Scalar> {
        if raw >= self.size {
            return Err(Error::InvalidInput(format!(
                "{raw} is not an element of GF({}^{})",
                self.p, self.k
            )));
        }
        Ok(Scalar(raw))
    }

    pub fn digits(&self, a: Scalar) -> Vec<u64> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Scalar {
        let mut v = 0;
        for &d in digits.iter().rev() {
            v = v * self.p + d % self.p;
        }
        Scalar(v)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_field_element(&self, a: Scalar) -> bool {
        a.0 < self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.size).map(Scalar)
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.k == 1 {
            return Scalar((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Scalar(out)
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        if self.k == 1 {
            return Scalar((self.p - a.0) % self.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Scalar(out)
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.k == 1 {
            return Scalar(a.0 * b.0 % self.p);
        }
        if a.0 == 0 || b.0 == 0 {
            return Scalar(0);
        }
        let t = self.tables.get().expect("extension fields carry tables");
        let n = self.size - 1;
        let e = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
        Scalar(t.exp[e as usize])
    }

    pub fn pow(&self, a: Scalar, mut e: u128) -> Scalar {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Power with a signed exponent; panics on zero base with negative exponent.
    pub fn pow_signed(&self, a: Scalar, e: i128) -> Scalar {
        if e >= 0 {
            self.pow(a, e as u128)
        } else {
            self.pow(self.inv(a), e.unsigned_abs())
        }
    }

    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, (self.size - 2) as u128)
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Scalar {
        self.mul(a, self.inv(b))
    }

    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.p as u128)
    }

    /// The unique c' with c'^q = c.
    pub fn qth_root(&self, c: Scalar, q: &PrimePower) -> Scalar {
        assert_eq!(q.p(), self.p, "q must be a power of the characteristic");
        let k = self.k;
        let steps = (k - q.e() % k) % k;
        let mut out = c;
        for _ in 0..steps {
            out = self.frobenius(out);
        }
        out
    }

    fn log_tables(&self) -> Result<&Tables> {
        if let Some(t) = self.tables.get() {
            return Ok(t);
        }
        if self.size > TABLE_LIMIT {
            return Err(Error::FieldTooLarge {
                p: self.p,
                k: self.k,
            });
        }
        let g = self.primitive_root_prime();
        let n = (self.size - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; self.size as usize];
        let mut cur = 1u64;
        for i in 0..n {
            exp.push(cur);
            log[cur as usize] = i as u32;
            cur = cur * g % self.p;
        }
        Ok(self.tables.get_or_init(|| Tables { exp, log }))
    }

    fn primitive_root_prime(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let n = self.p - 1;
        let factors = prime_factors(n);
        (2..self.p)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow(Scalar(g), (n / r) as u128) != Scalar(1))
            })
            .expect("prime fields have primitive roots")
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> Result<Scalar> {
        let t = self.log_tables()?;
        Ok(Scalar(if self.size == 2 { 1 } else { t.exp[1] }))
    }

    /// Exponent i in [0, size − 1) with generator^i = a.
    pub fn discrete_log(&self, a: Scalar) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::InvalidInput("discrete logarithm of zero".into()));
        }
        let t = self.log_tables()?;
        Ok(t.log[a.0 as usize] as u64)
    }

    /// The field with p^{k·j} elements and an embedding of this field into it.
    pub fn extension(&self, j: u32) -> Result<(ScalarField, Embedding)> {
        let big = ScalarField::new(
            self.p,
            self.k
                .checked_mul(j)
                .ok_or(Error::Overflow("field degree"))?,
        )?;
        let root = if self.k == 1 {
            big.one()
        } else {
            big.elements()
                .find(|&r| {
                    let mut acc = big.one();
                    let mut val = big.zero();
                    for &c in &self.modulus {
                        val = big.add(val, big.mul(big.from_int(c as i64), acc));
                        acc = big.mul(acc, r);
                    }
                    big.add(val, acc).is_zero()
                })
                .expect("defining polynomial splits in the extension")
        };
        let mut powers = Vec::with_capacity(self.k as usize);
        let mut acc = big.one();
        for _ in 0..self.k {
            powers.push(acc);
            acc = big.mul(acc, root);
        }
        Ok((
            big,
            Embedding {
                source_k: self.k,
                p: self.p,
                powers,
            },
        ))
    }

    pub fn format(&self, a: Scalar) -> String {
        if self.k == 1 {
            return a.0.to_string();
        }
        let digits = self.digits(a);
        let mut parts = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            parts.push(match i {
                0 => d.to_string(),
                1 if d == 1 => "t".to_string(),
                1 => format!("{d}t"),
                _ if d == 1 => format!("t^{i}"),
                _ => format!("{d}t^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// Field embedding GF(p^k) → GF(p^{kj}), determined by the image of the
/// defining root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source_k: u32,
    p: u64,
    powers: Vec<Scalar>,
}

impl Embedding {
    pub fn apply(&self, target: &ScalarField, a: Scalar) -> Scalar {
        let mut v = a.0;
        let mut out = target.zero();
        for i in 0..self.source_k as usize {
            let d = v % self.p;
            v /= self.p;
            if d != 0 {
                out = target.add(out, target.mul(target.from_int(d as i64), self.powers[i]));
            }
        }
        out
    }
}

fn primitive_modulus(p: u64, k: u32) -> (Vec<u64>, Tables) {
    let size = p.pow(k);
    let n = size - 1;
    let k = k as usize;
    for tail in 0..size {
        let mut coeffs = Vec::with_capacity(k);
        let mut t = tail;
        for _ in 0..k {
            coeffs.push(t % p);
            t /= p;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let mut cur = vec![0u64; k];
        cur[0] = 1;
        let mut exp = Vec::with_capacity(n as usize);
        let mut order = 0;
        for i in 1..=n {
            exp.push(pack(&cur, p));
            let carry = cur[k - 1];
            for j in (1..k).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..k {
                cur[j] = (cur[j] + (p - coeffs[j]) * carry) % p;
            }
            if cur[0] == 1 && cur[1..].iter().all(|&c| c == 0) {
                order = i;
                break;
            }
        }
        if order == n {
            let mut log = vec![0u32; size as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return (coeffs, Tables { exp, log });
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

fn pack(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}
