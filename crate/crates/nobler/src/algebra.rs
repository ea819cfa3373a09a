//! Truncated polynomial algebras k[x_1..x_r]/(x_i^{p^{n_i}}), their
//! monomial bases, and their tensor squares.
//!
//! The monomial basis is ordered lexicographically in exponent vectors
//! (last generator varies fastest), which fixes serialization and every
//! matrix written against the basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::NoblerError;
use crate::field::{Fel, FiniteField};

/// Default cap on the number of basis monomials.
pub const DEFAULT_DIM_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    pub p: u16,
    pub ext: u16,
    pub orders: Vec<u32>,
}

#[derive(Debug)]
pub struct TruncatedAlgebra {
    pub field: Arc<FiniteField>,
    /// Truncation exponents n_i; generator x_i satisfies x_i^{p^{n_i}} = 0.
    pub orders: Vec<u32>,
    /// Exponent bound per generator: p^{n_i}.
    pub bounds: Vec<u64>,
    /// Mixed-radix strides: monomial index = sum e_i * stride_i.
    strides: Vec<u64>,
    pub dim: usize,
}

pub type MonIdx = u32;

/// An element of the algebra: a dense coefficient vector over the
/// monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElement {
    pub coeffs: Vec<Fel>,
}

/// A sparse element of A ⊗ A, keyed by ordered pairs of basis monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorSquareElement {
    pub terms: BTreeMap<(MonIdx, MonIdx), Fel>,
}

impl TruncatedAlgebra {
    pub fn new(field: Arc<FiniteField>, orders: Vec<u32>) -> Result<Arc<Self>, NoblerError> {
        Self::with_cap(field, orders, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(
        field: Arc<FiniteField>,
        orders: Vec<u32>,
        cap: u64,
    ) -> Result<Arc<Self>, NoblerError> {
        if orders.is_empty() {
            return Err(NoblerError::BadAlgebra("orders must be nonempty".into()));
        }
        if orders.iter().any(|&n| n == 0) {
            return Err(NoblerError::BadAlgebra("every order must be >= 1".into()));
        }
        let p = field.p as u64;
        let mut bounds = Vec::with_capacity(orders.len());
        let mut dim: u64 = 1;
        for &n in &orders {
            let b = p
                .checked_pow(n)
                .ok_or(NoblerError::DimensionCap(u64::MAX))?;
            dim = dim.checked_mul(b).ok_or(NoblerError::DimensionCap(u64::MAX))?;
            if dim > cap {
                return Err(NoblerError::DimensionCap(dim));
            }
            bounds.push(b);
        }
        // Lexicographic in exponent vectors: e_1 is most significant.
        let mut strides = vec![0u64; orders.len()];
        let mut s = 1u64;
        for i in (0..orders.len()).rev() {
            strides[i] = s;
            s *= bounds[i];
        }
        Ok(Arc::new(TruncatedAlgebra { field, orders, bounds, strides, dim: dim as usize }))
    }

    pub fn num_gens(&self) -> usize {
        self.orders.len()
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor {
            p: self.field.p,
            ext: self.field.k,
            orders: self.orders.clone(),
        }
    }

    pub fn same_as(&self, other: &TruncatedAlgebra) -> bool {
        self.field == other.field && self.orders == other.orders
    }

    /// Exponent vector of a basis monomial.
    pub fn exponents(&self, idx: MonIdx) -> Vec<u64> {
        let mut e = Vec::with_capacity(self.orders.len());
        let mut t = idx as u64;
        for i in 0..self.orders.len() {
            e.push(t / self.strides[i]);
            t %= self.strides[i];
        }
        e
    }

    /// Monomial index from exponents; None if any exponent hits its bound
    /// (the monomial is zero in the algebra).
    pub fn monomial(&self, exps: &[u64]) -> Option<MonIdx> {
        let mut idx = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            if e >= self.bounds[i] {
                return None;
            }
            idx += e * self.strides[i];
        }
        Some(idx as MonIdx)
    }

    /// Product of two basis monomials: Some(index) or None when truncated
    /// to zero.
    pub fn mon_mul(&self, a: MonIdx, b: MonIdx) -> Option<MonIdx> {
        let ea = self.exponents(a);
        let eb = self.exponents(b);
        let sum: Vec<u64> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
        self.monomial(&sum)
    }

    /// Total degree of a basis monomial.
    pub fn mon_degree(&self, a: MonIdx) -> u64 {
        self.exponents(a).iter().sum()
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement { coeffs: vec![0; self.dim] }
    }

    pub fn one(&self) -> AlgElement {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    pub fn scalar(&self, c: Fel) -> AlgElement {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    /// The i-th generator x_i as an element.
    pub fn gen(&self, i: usize) -> AlgElement {
        assert!(i < self.orders.len());
        let mut exps = vec![0u64; self.orders.len()];
        exps[i] = 1;
        let idx = self.monomial(&exps).expect("order >= 1");
        let mut e = self.zero();
        e.coeffs[idx as usize] = 1;
        e
    }

    pub fn basis_element(&self, idx: MonIdx) -> AlgElement {
        let mut e = self.zero();
        e.coeffs[idx as usize] = 1;
        e
    }

    /// The socle monomial: product of all x_i^{p^{n_i} - 1}.
    pub fn socle_monomial(&self) -> MonIdx {
        let exps: Vec<u64> = self.bounds.iter().map(|&b| b - 1).collect();
        self.monomial(&exps).unwrap()
    }

    pub fn add(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        let f = &self.field;
        AlgElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        let f = &self.field;
        AlgElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.sub(x, y))
                .collect(),
        }
    }

    pub fn scale(&self, a: &AlgElement, s: Fel) -> AlgElement {
        let f = &self.field;
        AlgElement { coeffs: a.coeffs.iter().map(|&x| f.mul(x, s)).collect() }
    }

    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        assert_eq!(a.coeffs.len(), self.dim, "element does not belong to this algebra");
        assert_eq!(b.coeffs.len(), self.dim, "element does not belong to this algebra");
        let f = &self.field;
        let mut out = self.zero();
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                if let Some(m) = self.mon_mul(i as MonIdx, j as MonIdx) {
                    let c = f.mul(ca, cb);
                    out.coeffs[m as usize] = f.add(out.coeffs[m as usize], c);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &AlgElement, e: u64) -> AlgElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// The augmentation: the constant coefficient.
    pub fn augmentation(&self, a: &AlgElement) -> Fel {
        a.coeffs[0]
    }

    pub fn is_zero(&self, a: &AlgElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// In the radical: augmentation vanishes.
    pub fn in_radical(&self, a: &AlgElement) -> bool {
        self.augmentation(a) == 0
    }

    /// Inverse of a unit (nonzero augmentation): 1-dimensional linear
    /// solve via the geometric series of the radical part.
    pub fn unit_inverse(&self, a: &AlgElement) -> Option<AlgElement> {
        let f = &self.field;
        let c = self.augmentation(a);
        if c == 0 {
            return None;
        }
        let cinv = f.inv(c);
        // a = c(1 + n), n nilpotent; a^-1 = c^-1 sum (-n)^i.
        let mut n = self.scale(a, cinv);
        n.coeffs[0] = 0;
        let neg_n = self.scale(&n, f.neg(1));
        let mut acc = self.one();
        let mut term = self.one();
        loop {
            term = self.mul(&term, &neg_n);
            if self.is_zero(&term) {
                break;
            }
            acc = self.add(&acc, &term);
        }
        Some(self.scale(&acc, cinv))
    }

    /// The degree-1 part of an element, as generator coefficients.
    pub fn linear_part(&self, a: &AlgElement) -> Vec<Fel> {
        (0..self.num_gens())
            .map(|i| {
                let mut exps = vec![0u64; self.num_gens()];
                exps[i] = 1;
                let idx = self.monomial(&exps).unwrap();
                a.coeffs[idx as usize]
            })
            .collect()
    }

    // ----- tensor square -----

    pub fn tensor_zero(&self) -> TensorSquareElement {
        TensorSquareElement::default()
    }

    pub fn tensor_of(&self, a: &AlgElement, b: &AlgElement) -> TensorSquareElement {
        let f = &self.field;
        let mut t = TensorSquareElement::default();
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                t.insert(f, (i as MonIdx, j as MonIdx), f.mul(ca, cb));
            }
        }
        t
    }

    pub fn tensor_add(
        &self,
        a: &TensorSquareElement,
        b: &TensorSquareElement,
    ) -> TensorSquareElement {
        let f = &self.field;
        let mut out = a.clone();
        for (&k, &c) in &b.terms {
            out.insert(f, k, c);
        }
        out
    }

    pub fn tensor_scale(&self, a: &TensorSquareElement, s: Fel) -> TensorSquareElement {
        let f = &self.field;
        let mut out = TensorSquareElement::default();
        for (&k, &c) in &a.terms {
            out.insert(f, k, f.mul(c, s));
        }
        out
    }

    pub fn tensor_mul(
        &self,
        a: &TensorSquareElement,
        b: &TensorSquareElement,
    ) -> TensorSquareElement {
        let f = &self.field;
        let mut out = TensorSquareElement::default();
        for (&(a1, a2), &ca) in &a.terms {
            for (&(b1, b2), &cb) in &b.terms {
                if let (Some(m1), Some(m2)) = (self.mon_mul(a1, b1), self.mon_mul(a2, b2)) {
                    out.insert(f, (m1, m2), f.mul(ca, cb));
                }
            }
        }
        out
    }

    pub fn tensor_pow(&self, a: &TensorSquareElement, e: u64) -> TensorSquareElement {
        let mut acc = TensorSquareElement::one();
        for _ in 0..e {
            acc = self.tensor_mul(&acc, a);
        }
        acc
    }

    /// Swap the tensor factors.
    pub fn tensor_swap(&self, a: &TensorSquareElement) -> TensorSquareElement {
        let mut out = TensorSquareElement::default();
        for (&(i, j), &c) in &a.terms {
            out.terms.insert((j, i), c);
        }
        out
    }

    /// (ε ⊗ id): keep terms whose left factor is the unit monomial.
    pub fn tensor_counit_left(&self, a: &TensorSquareElement) -> AlgElement {
        let mut out = self.zero();
        for (&(i, j), &c) in &a.terms {
            if i == 0 {
                out.coeffs[j as usize] = self.field.add(out.coeffs[j as usize], c);
            }
        }
        out
    }

    /// (id ⊗ ε).
    pub fn tensor_counit_right(&self, a: &TensorSquareElement) -> AlgElement {
        let mut out = self.zero();
        for (&(i, j), &c) in &a.terms {
            if j == 0 {
                out.coeffs[i as usize] = self.field.add(out.coeffs[i as usize], c);
            }
        }
        out
    }

    /// The multiplication map m: A ⊗ A -> A applied to a tensor element.
    pub fn tensor_multiply_out(&self, a: &TensorSquareElement) -> AlgElement {
        let f = &self.field;
        let mut out = self.zero();
        for (&(i, j), &c) in &a.terms {
            if let Some(m) = self.mon_mul(i, j) {
                out.coeffs[m as usize] = f.add(out.coeffs[m as usize], c);
            }
        }
        out
    }

    /// ω(t) = sum_{i=1}^{p-1} ((p-1)!/(i!(p-i)!)) t^i ⊗ t^{p-i}, the
    /// divided p-th power defect of the primitive coproduct.
    pub fn omega(&self, t: &AlgElement) -> TensorSquareElement {
        let f = &self.field;
        let p = f.p as u64;
        let mut out = TensorSquareElement::default();
        // (p-1)!/(i!(p-i)!) computed over the integers, then reduced.
        let fact = |n: u64| -> u64 { (1..=n).product::<u64>().max(1) };
        for i in 1..p {
            let c = fact(p - 1) / (fact(i) * fact(p - i));
            let cf = f.from_int(c);
            if cf == 0 {
                continue;
            }
            let left = self.pow(t, i);
            let right = self.pow(t, p - i);
            let term = self.tensor_scale(&self.tensor_of(&left, &right), cf);
            out = self.tensor_add(&out, &term);
        }
        out
    }

    // ----- serialization -----

    /// Key like "e1.e0" for exponents, dot separated, most significant
    /// generator first.
    pub fn monomial_key(&self, idx: MonIdx) -> String {
        self.exponents(idx)
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn parse_monomial_key(&self, key: &str) -> Result<MonIdx, NoblerError> {
        let exps: Result<Vec<u64>, _> = key.split('.').map(|s| s.parse::<u64>()).collect();
        let exps = exps.map_err(|e| NoblerError::Parse(format!("bad monomial key: {e}")))?;
        if exps.len() != self.num_gens() {
            return Err(NoblerError::Parse("wrong number of exponents".into()));
        }
        self.monomial(&exps)
            .ok_or_else(|| NoblerError::Parse("exponent out of range".into()))
    }

    pub fn element_to_json(&self, a: &AlgElement) -> Value {
        let mut map = serde_json::Map::new();
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c != 0 {
                map.insert(self.monomial_key(i as MonIdx), json!(c));
            }
        }
        Value::Object(map)
    }

    pub fn element_from_json(&self, v: &Value) -> Result<AlgElement, NoblerError> {
        let obj = v
            .as_object()
            .ok_or_else(|| NoblerError::Parse("element must be a JSON object".into()))?;
        let mut e = self.zero();
        for (k, c) in obj {
            let idx = self.parse_monomial_key(k)?;
            let c = c
                .as_u64()
                .ok_or_else(|| NoblerError::Parse("coefficient must be an integer".into()))?;
            if c >= self.field.q as u64 {
                return Err(NoblerError::Parse("coefficient out of field range".into()));
            }
            e.coeffs[idx as usize] = c as Fel;
        }
        Ok(e)
    }

    pub fn tensor_to_json(&self, t: &TensorSquareElement) -> Value {
        let mut map = serde_json::Map::new();
        for (&(i, j), &c) in &t.terms {
            let key = format!("{}|{}", self.monomial_key(i), self.monomial_key(j));
            map.insert(key, json!(c));
        }
        Value::Object(map)
    }

    pub fn tensor_from_json(&self, v: &Value) -> Result<TensorSquareElement, NoblerError> {
        let obj = v
            .as_object()
            .ok_or_else(|| NoblerError::Parse("tensor must be a JSON object".into()))?;
        let mut t = TensorSquareElement::default();
        for (k, c) in obj {
            let (l, r) = k
                .split_once('|')
                .ok_or_else(|| NoblerError::Parse("tensor key must be 'left|right'".into()))?;
            let i = self.parse_monomial_key(l)?;
            let j = self.parse_monomial_key(r)?;
            let c = c
                .as_u64()
                .ok_or_else(|| NoblerError::Parse("coefficient must be an integer".into()))?;
            t.terms.insert((i, j), c as Fel);
        }
        Ok(t)
    }
}

impl TensorSquareElement {
    pub fn one() -> TensorSquareElement {
        let mut t = TensorSquareElement::default();
        t.terms.insert((0, 0), 1);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn insert(&mut self, f: &FiniteField, key: (MonIdx, MonIdx), c: Fel) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }
}

/// Build an algebra from a descriptor.
pub fn algebra_from_descriptor(d: &AlgebraDescriptor) -> Result<Arc<TruncatedAlgebra>, NoblerError> {
    let field = Arc::new(FiniteField::new(d.p, d.ext)?);
    TruncatedAlgebra::new(field, d.orders.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kronecker() -> Arc<TruncatedAlgebra> {
        let f = Arc::new(FiniteField::new(2, 1).unwrap());
        TruncatedAlgebra::new(f, vec![1, 1]).unwrap()
    }

    #[test]
    fn kronecker_dimension() {
        let a = kronecker();
        assert_eq!(a.dim, 4);
    }

    #[test]
    fn cyclic_dimensions() {
        let f = Arc::new(FiniteField::new(2, 1).unwrap());
        let a = TruncatedAlgebra::new(f, vec![3]).unwrap();
        assert_eq!(a.dim, 8);
        let f3 = Arc::new(FiniteField::new(3, 1).unwrap());
        let b = TruncatedAlgebra::new(f3, vec![1]).unwrap();
        assert_eq!(b.dim, 3);
    }

    #[test]
    fn dimension_cap() {
        let f = Arc::new(FiniteField::new(2, 1).unwrap());
        assert!(matches!(
            TruncatedAlgebra::new(f, vec![17]),
            Err(NoblerError::DimensionCap(_))
        ));
    }

    #[test]
    fn generator_products() {
        let a = kronecker();
        let x = a.gen(0);
        let y = a.gen(1);
        let xy = a.mul(&x, &y);
        assert!(!a.is_zero(&xy));
        assert!(a.is_zero(&a.mul(&x, &x)));
        // (1+x)(1+y) = 1 + x + y + xy
        let ox = a.add(&a.one(), &x);
        let oy = a.add(&a.one(), &y);
        let prod = a.mul(&ox, &oy);
        let expect = a.add(&a.add(&a.one(), &x), &a.add(&y, &xy));
        assert_eq!(prod, expect);
    }

    #[test]
    fn omega_p2() {
        let a = kronecker();
        let x = a.gen(0);
        let w = a.omega(&x);
        // single term x ⊗ x
        let expect = a.tensor_of(&x, &x);
        assert_eq!(w, expect);
        assert!(a.omega(&a.zero()).is_zero());
    }

    #[test]
    fn omega_p3() {
        let f = Arc::new(FiniteField::new(3, 1).unwrap());
        let a = TruncatedAlgebra::new(f, vec![1]).unwrap();
        let x = a.gen(0);
        let w = a.omega(&x);
        let x2 = a.pow(&x, 2);
        let expect = a.tensor_add(&a.tensor_of(&x, &x2), &a.tensor_of(&x2, &x));
        assert_eq!(w, expect);
    }

    /// Integer-arithmetic oracle: (t⊗1 + 1⊗t)^p = t^p⊗1 + 1⊗t^p + p·ω(t)
    /// over Z, so the ω coefficient at (i, p-i) is binomial(p, i)/p
    /// reduced mod p.
    #[test]
    fn omega_matches_integer_binomials() {
        for p in [2u64, 3, 5] {
            let f = Arc::new(FiniteField::new(p as u16, 1).unwrap());
            let a = TruncatedAlgebra::new(f.clone(), vec![2]).unwrap();
            let x = a.gen(0);
            let w = a.omega(&x);
            let fact = |n: u64| -> u64 { (1..=n).product::<u64>().max(1) };
            for i in 1..p {
                let binom_over_p = fact(p) / (fact(i) * fact(p - i)) / p;
                let expected = (binom_over_p % p) as Fel;
                let li = a.monomial(&[i]).unwrap();
                let ri = a.monomial(&[p - i]).unwrap();
                let got = w.terms.get(&(li, ri)).copied().unwrap_or(0);
                assert_eq!(got, expected, "p={p} i={i}");
            }
        }
    }

    #[test]
    fn unit_inverse_roundtrip() {
        let a = kronecker();
        let x = a.gen(0);
        let y = a.gen(1);
        let u = a.add(&a.one(), &a.add(&x, &y));
        let inv = a.unit_inverse(&u).unwrap();
        assert_eq!(a.mul(&u, &inv), a.one());
        assert!(a.unit_inverse(&x).is_none());
    }

    #[test]
    fn unit_inverse_roundtrip_all_units_odd_characteristic() {
        let f = Arc::new(FiniteField::new(3, 1).unwrap());
        let a = TruncatedAlgebra::new(f.clone(), vec![2]).unwrap();
        let q = f.q as u64;
        for idx in 0..q.pow(a.dim as u32) {
            let mut u = a.zero();
            let mut t = idx;
            for c in u.coeffs.iter_mut() {
                *c = (t % q) as Fel;
                t /= q;
            }
            match a.unit_inverse(&u) {
                Some(inv) => assert_eq!(a.mul(&u, &inv), a.one()),
                None => assert_eq!(a.augmentation(&u), 0),
            }
        }
    }

    #[test]
    fn element_json_roundtrip() {
        let a = kronecker();
        let x = a.gen(0);
        let e = a.add(&a.one(), &x);
        let v = a.element_to_json(&e);
        assert_eq!(a.element_from_json(&v).unwrap(), e);
    }

    proptest! {
        #[test]
        fn mul_associative_commutative_unital(seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = Arc::new(FiniteField::new(3, 1).unwrap());
            let alg = TruncatedAlgebra::new(f.clone(), vec![1, 1]).unwrap();
            let mut rand_el = || {
                let mut e = alg.zero();
                for c in e.coeffs.iter_mut() {
                    *c = rng.gen_range(0..f.q);
                }
                e
            };
            let a = rand_el();
            let b = rand_el();
            let c = rand_el();
            prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
            prop_assert_eq!(alg.mul(&a, &b), alg.mul(&b, &a));
            prop_assert_eq!(alg.mul(&a, &alg.one()), a);
        }
    }
}
