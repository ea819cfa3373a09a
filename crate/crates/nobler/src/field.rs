//! Exact arithmetic in small finite fields F_{p^k}.
//!
//! Elements are indices `0..q` into a fixed enumeration: the index encodes
//! the coefficient vector of the element in base `p` with respect to the
//! canonical generator of the extension. Addition, multiplication and
//! inverses are table driven, so every operation is exact and constant time.

use serde::{Deserialize, Serialize};

use crate::error::NoblerError;

/// A field element, as an index into the field's enumeration order.
pub type Fel = u16;

pub const SUPPORTED_PRIMES: [u16; 4] = [2, 3, 5, 7];

/// Largest field size for which tables are built.
const MAX_Q: usize = 4096;

#[derive(Debug)]
pub struct FiniteField {
    pub p: u16,
    pub k: u16,
    pub q: u16,
    /// Monic modulus of degree k, coefficients in F_p, constant term first.
    /// The leading (degree-k) coefficient 1 is stored explicitly.
    pub modulus: Vec<u16>,
    add: Vec<Fel>,
    mul: Vec<Fel>,
    neg: Vec<Fel>,
    inv: Vec<Fel>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

/// Descriptor used in JSON reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u16,
    pub ext: u16,
}

fn poly_trim(v: &mut Vec<u16>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul_mod_p(a: &[u16], b: &[u16], p: u16) -> Vec<u16> {
    let mut out = vec![0u16; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` by monic `m` over F_p.
fn poly_rem(a: &[u16], m: &[u16], p: u16) -> Vec<u16> {
    let mut r: Vec<u16> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            // m is monic, so this zeroes the top coefficient.
            for i in 0..=dm {
                let sub = (lead * m[i]) % p;
                r[shift + i] = (r[shift + i] + p * p - sub) % p;
            }
        }
        r.pop();
    }
    poly_trim(&mut r);
    r
}

fn is_irreducible(m: &[u16], p: u16) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                f.push((t % p as u64) as u16);
                t /= p as u64;
            }
            f.push(1);
            let r = poly_rem(m, &f, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree k in index order.
fn canonical_modulus(p: u16, k: u16) -> Vec<u16> {
    if k == 1 {
        return vec![0, 1]; // x
    }
    let count = (p as u64).pow(k as u32);
    for idx in 0..count {
        let mut m = Vec::with_capacity(k as usize + 1);
        let mut t = idx;
        for _ in 0..k {
            m.push((t % p as u64) as u16);
            t /= p as u64;
        }
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl FiniteField {
    pub fn new(p: u16, k: u16) -> Result<FiniteField, NoblerError> {
        Self::with_modulus(p, k, None)
    }

    pub fn with_modulus(
        p: u16,
        k: u16,
        modulus: Option<Vec<u16>>,
    ) -> Result<FiniteField, NoblerError> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(NoblerError::UnsupportedPrime(p));
        }
        if k == 0 {
            return Err(NoblerError::BadField("extension degree must be >= 1".into()));
        }
        let q_big = (p as u64).pow(k as u32);
        if q_big > MAX_Q as u64 {
            return Err(NoblerError::BadField(format!(
                "field size {q_big} exceeds the supported cap {MAX_Q}"
            )));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(NoblerError::BadField(
                        "modulus must be monic of degree k".into(),
                    ));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(NoblerError::BadField("modulus coefficients out of range".into()));
                }
                if k > 1 && !is_irreducible(&m, p) {
                    return Err(NoblerError::ReducibleModulus);
                }
                m
            }
            None => canonical_modulus(p, k),
        };
        let q = q_big as u16;
        let mut f = FiniteField {
            p,
            k,
            q,
            modulus,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
        };
        f.build_tables();
        Ok(f)
    }

    fn digits(&self, x: Fel) -> Vec<u16> {
        let mut d = vec![0u16; self.k as usize];
        let mut t = x;
        for di in d.iter_mut() {
            *di = t % self.p;
            t /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u16]) -> Fel {
        let mut x: u32 = 0;
        for &c in d.iter().rev() {
            x = x * self.p as u32 + c as u32;
        }
        x as Fel
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let p = self.p;
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        self.neg = vec![0; q];
        self.inv = vec![0; q];
        for a in 0..q as u16 {
            let da = self.digits(a);
            let nd: Vec<u16> = da.iter().map(|&c| (p - c) % p).collect();
            self.neg[a as usize] = self.from_digits(&nd);
            for b in a..q as u16 {
                let db = self.digits(b);
                let sd: Vec<u16> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                let s = self.from_digits(&sd);
                self.add[a as usize * q + b as usize] = s;
                self.add[b as usize * q + a as usize] = s;
                let prod = poly_mul_mod_p(&da, &db, p);
                let mut r = poly_rem(&prod, &self.modulus, p);
                r.resize(self.k as usize, 0);
                let m = self.from_digits(&r);
                self.mul[a as usize * q + b as usize] = m;
                self.mul[b as usize * q + a as usize] = m;
            }
        }
        for a in 1..q as u16 {
            for b in 1..q as u16 {
                if self.mul[a as usize * q + b as usize] == 1 {
                    self.inv[a as usize] = b;
                    break;
                }
            }
            debug_assert!(self.inv[a as usize] != 0 || self.q == 2 && a == 1);
        }
    }

    #[inline]
    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fel) -> Fel {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fel) -> Fel {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// The prime-field element n mod p, embedded.
    pub fn from_int(&self, n: u64) -> Fel {
        (n % self.p as u64) as Fel
    }

    pub fn pow(&self, a: Fel, e: u64) -> Fel {
        let mut acc: Fel = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, ext: self.k }
    }

    /// Elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Fel> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = FiniteField::new(2, 1).unwrap();
        assert_eq!(f.q, 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn arithmetic_mod_3() {
        let f = FiniteField::new(3, 1).unwrap();
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.inv(2), 2);
    }

    #[test]
    fn f4_multiplicative_group_cyclic_of_order_3() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.q, 4);
        // Exhaustive multiplication-table check: nonzero elements form a
        // group of order 3, so every nonzero a satisfies a^3 = 1.
        for a in 1..4 {
            assert_eq!(f.pow(a, 3), 1, "a = {a}");
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        // A generator of order exactly 3 exists.
        assert!((1..4).any(|a| f.pow(a, 1) != 1 && f.pow(a, 2) != 1 && f.pow(a, 3) == 1));
    }

    #[test]
    fn inverses_everywhere() {
        for (p, k) in [(2, 3), (3, 2), (5, 1), (7, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in 1..f.q {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn unsupported_prime_rejected() {
        assert!(FiniteField::new(11, 1).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over F_2.
        let r = FiniteField::with_modulus(2, 2, Some(vec![1, 0, 1]));
        assert!(matches!(r, Err(NoblerError::ReducibleModulus)));
        // x^2 + x + 1 is irreducible over F_2.
        assert!(FiniteField::with_modulus(2, 2, Some(vec![1, 1, 1])).is_ok());
    }
}
