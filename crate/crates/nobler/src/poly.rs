//! Univariate polynomials over a small finite field, with just enough
//! machinery for primary decomposition of endomorphisms: minimal
//! polynomials via Krylov iteration, squarefree splitting, and Berlekamp
//! factorization into irreducibles.

use crate::field::{Fel, FiniteField};
use crate::linalg::Matrix;

/// Coefficients, constant term first, no trailing zeros (zero = `[]`).
pub type Poly = Vec<Fel>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn deg(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.add(x, y);
    }
    trim(&mut out);
    out
}

pub fn mul(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    trim(&mut out);
    out
}

pub fn scale(f: &FiniteField, a: &Poly, s: Fel) -> Poly {
    let mut out: Poly = a.iter().map(|&c| f.mul(c, s)).collect();
    trim(&mut out);
    out
}

/// (quotient, remainder) of a by nonzero b.
pub fn divrem(f: &FiniteField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let lead_inv = f.inv(*b.last().unwrap());
    let mut r = a.clone();
    let mut q: Poly = Vec::new();
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), lead_inv);
        if q.len() < shift + 1 {
            q.resize(shift + 1, 0);
        }
        q[shift] = f.add(q[shift], c);
        for (i, &bi) in b.iter().enumerate() {
            let v = f.sub(r[shift + i], f.mul(c, bi));
            r[shift + i] = v;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &FiniteField, a: &Poly) -> Poly {
    match a.last() {
        None | Some(1) => a.clone(),
        Some(&l) => scale(f, a, f.inv(l)),
    }
}

pub fn gcd(f: &FiniteField, a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn pow_mod(f: &FiniteField, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

pub fn derivative(f: &FiniteField, a: &Poly) -> Poly {
    let mut out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(f.from_int(i as u64), c))
        .collect();
    trim(&mut out);
    out
}

/// Evaluate the polynomial at a square matrix.
pub fn eval_matrix(f: &FiniteField, p: &Poly, m: &Matrix) -> Matrix {
    let n = m.rows;
    let mut acc = Matrix::zeros(n, n);
    // Horner from the top coefficient down.
    for &c in p.iter().rev() {
        acc = acc.mul(f, m);
        if c != 0 {
            for i in 0..n {
                acc.set(i, i, f.add(acc.get(i, i), c));
            }
        }
    }
    acc
}

/// Minimal polynomial of a square matrix, as the lcm of the local
/// annihilators of the standard basis vectors.
pub fn min_poly(f: &FiniteField, m: &Matrix) -> Poly {
    let n = m.rows;
    let mut mp: Poly = vec![1];
    for start in 0..n {
        // Local annihilator of e_start: first linear dependence among
        // the Krylov iterates.
        let mut v = vec![0; n];
        v[start] = 1;
        let mut iterates: Vec<Vec<Fel>> = vec![v.clone()];
        loop {
            let last = iterates.last().unwrap();
            let next = m.mul_vec(f, last);
            // Solve for next as a combination of earlier iterates.
            let mat = Matrix::from_columns(&iterates, n);
            if let Some(sol) = mat.solve(f, &next) {
                if mat.mul_vec(f, &sol) == next {
                    // local annihilator: x^d - sum sol_i x^i
                    let d = iterates.len();
                    let mut ann = vec![0; d + 1];
                    ann[d] = 1;
                    for (i, &c) in sol.iter().enumerate() {
                        ann[i] = f.neg(c);
                    }
                    let g = gcd(f, &mp, &ann);
                    let (q, r) = divrem(f, &ann, &g);
                    debug_assert!(r.is_empty());
                    mp = mul(f, &mp, &q);
                    break;
                }
            }
            iterates.push(next);
            assert!(iterates.len() <= n + 1, "Krylov iteration runaway");
        }
        if deg(&mp) == Some(n) {
            break;
        }
    }
    monic(f, &mp)
}

/// Distinct monic irreducible factors (the multiplicities are not needed
/// for primary decomposition, where kernels of full powers are taken).
pub fn irreducible_factors(f: &FiniteField, p: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    factor_rec(f, &monic(f, p), &mut out);
    out.sort();
    out.dedup();
    out
}

fn factor_rec(f: &FiniteField, p: &Poly, out: &mut Vec<Poly>) {
    let d = match deg(p) {
        None | Some(0) => return,
        Some(d) => d,
    };
    if d == 1 {
        out.push(p.clone());
        return;
    }
    // Reduce to the squarefree part first.
    let dp = derivative(f, p);
    if dp.is_empty() {
        // p = g(x^p); over F_q its distinct irreducible factors are those
        // of the p-th root polynomial.
        let pe = f.p as usize;
        let mut root: Poly = Vec::new();
        for (i, &c) in p.iter().enumerate() {
            if c == 0 {
                continue;
            }
            debug_assert!(i % pe == 0);
            if root.len() < i / pe + 1 {
                root.resize(i / pe + 1, 0);
            }
            // p-th root of a coefficient: inverse Frobenius, i.e. raise
            // to p^(k-1) in F_{p^k}.
            let mut r = c;
            for _ in 0..f.k.saturating_sub(1) {
                r = f.pow(r, f.p as u64);
            }
            root[i / pe] = r;
        }
        trim(&mut root);
        factor_rec(f, &monic(f, &root), out);
        return;
    }
    let g = gcd(f, p, &dp);
    if deg(&g).map_or(false, |dg| dg > 0) {
        let (q, r) = divrem(f, p, &g);
        debug_assert!(r.is_empty());
        factor_rec(f, &g, out);
        factor_rec(f, &monic(f, &q), out);
        return;
    }
    // p squarefree: Berlekamp.
    berlekamp_split(f, p, out);
}

fn berlekamp_split(f: &FiniteField, p: &Poly, out: &mut Vec<Poly>) {
    let n = deg(p).unwrap();
    if n == 1 {
        out.push(p.clone());
        return;
    }
    // Matrix of x -> x^q mod p in the basis 1, x, ..., x^(n-1).
    let mut frob = Matrix::zeros(n, n);
    for j in 0..n {
        let mut xj = vec![0; j + 1];
        xj[j] = 1;
        let img = pow_mod(f, &xj, f.q as u64, p);
        for (i, &c) in img.iter().enumerate() {
            frob.set(i, j, c);
        }
    }
    // Berlekamp subalgebra: kernel of frob - id.
    let mut fm = frob.clone();
    for i in 0..n {
        fm.set(i, i, f.sub(fm.get(i, i), 1));
    }
    let kernel = fm.kernel_basis(f);
    if kernel.len() <= 1 {
        out.push(p.clone());
        return;
    }
    // A non-constant kernel element splits p via gcds with v - c.
    for v in &kernel {
        let mut vp: Poly = v.clone();
        trim(&mut vp);
        if deg(&vp).map_or(true, |d| d == 0) {
            continue;
        }
        let mut parts: Vec<Poly> = Vec::new();
        for c in f.elements() {
            let mut shifted = vp.clone();
            if shifted.is_empty() {
                shifted = vec![f.neg(c)];
            } else {
                shifted[0] = f.sub(shifted[0], c);
            }
            trim(&mut shifted);
            let g = gcd(f, p, &shifted);
            if deg(&g).map_or(false, |d| d > 0) && deg(&g) != deg(p) {
                parts.push(g);
            }
        }
        if !parts.is_empty() {
            let mut remainder = p.clone();
            for g in &parts {
                let (q, r) = divrem(f, &remainder, g);
                debug_assert!(r.is_empty());
                remainder = q;
                berlekamp_split(f, &monic(f, g), out);
            }
            if deg(&remainder).map_or(false, |d| d > 0) {
                berlekamp_split(f, &monic(f, &remainder), out);
            }
            return;
        }
    }
    out.push(p.clone());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FiniteField {
        FiniteField::new(2, 1).unwrap()
    }

    #[test]
    fn divrem_roundtrip() {
        let f = FiniteField::new(5, 1).unwrap();
        let a: Poly = vec![1, 2, 3, 4];
        let b: Poly = vec![2, 1];
        let (q, r) = divrem(&f, &a, &b);
        let back = add(&f, &mul(&f, &q, &b), &r);
        assert_eq!(back, a);
    }

    #[test]
    fn factor_x2_plus_x() {
        let f = f2();
        // x^2 + x = x(x+1)
        let p: Poly = vec![0, 1, 1];
        let fs = irreducible_factors(&f, &p);
        assert_eq!(fs, vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn factor_irreducible_quadratic() {
        let f = f2();
        // x^2 + x + 1 irreducible over F_2
        let p: Poly = vec![1, 1, 1];
        let fs = irreducible_factors(&f, &p);
        assert_eq!(fs, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn factor_power() {
        let f = f2();
        // (x+1)^2 = x^2 + 1
        let p: Poly = vec![1, 0, 1];
        let fs = irreducible_factors(&f, &p);
        assert_eq!(fs, vec![vec![1, 1]]);
    }

    #[test]
    fn min_poly_of_nilpotent_block() {
        let f = f2();
        let mut m = Matrix::zeros(3, 3);
        m.set(0, 1, 1);
        m.set(1, 2, 1);
        // minimal polynomial x^3
        assert_eq!(min_poly(&f, &m), vec![0, 0, 0, 1]);
    }

    #[test]
    fn min_poly_of_identity() {
        let f = FiniteField::new(3, 1).unwrap();
        let m = Matrix::identity(4);
        // x - 1
        assert_eq!(min_poly(&f, &m), vec![2, 1]);
    }
}
