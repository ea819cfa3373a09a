//! Augmented (augmentation-preserving) algebra automorphisms of a
//! truncated polynomial algebra, with eager inverses and exhaustive
//! enumeration over the base field.

use std::sync::Arc;

use crate::algebra::{AlgElement, MonIdx, TensorSquareElement, TruncatedAlgebra};
use crate::error::NoblerError;
use crate::field::Fel;
use crate::linalg::Matrix;

#[derive(Debug, Clone)]
pub struct AugAutomorphism {
    pub algebra: Arc<TruncatedAlgebra>,
    pub images: Vec<AlgElement>,
    pub inverse_images: Vec<AlgElement>,
    /// Induced linear map on A, columns indexed by basis monomials.
    matrix: Matrix,
    inv_matrix: Matrix,
}

impl AugAutomorphism {
    pub fn new(
        algebra: Arc<TruncatedAlgebra>,
        images: Vec<AlgElement>,
    ) -> Result<AugAutomorphism, NoblerError> {
        let r = algebra.num_gens();
        if images.len() != r {
            return Err(NoblerError::BadAlgebra(format!(
                "expected {r} generator images, got {}",
                images.len()
            )));
        }
        let p = algebra.field.p as u64;
        for (i, img) in images.iter().enumerate() {
            if img.coeffs.len() != algebra.dim {
                return Err(NoblerError::ElementMismatch(format!("image of generator {i}")));
            }
            if !algebra.in_radical(img) {
                return Err(NoblerError::ImageNotInRadical(i));
            }
            let order = p.pow(algebra.orders[i]);
            if !algebra.is_zero(&algebra.pow(img, order)) {
                return Err(NoblerError::RelationViolated { gen: i, order });
            }
        }
        let matrix = induced_matrix(&algebra, &images);
        let inv_matrix = matrix
            .inverse(&algebra.field)
            .ok_or(NoblerError::SingularLinearPart)?;
        let inverse_images = (0..r)
            .map(|i| {
                let g = algebra.gen(i);
                AlgElement { coeffs: inv_matrix.mul_vec(&algebra.field, &g.coeffs) }
            })
            .collect();
        Ok(AugAutomorphism { algebra, images, inverse_images, matrix, inv_matrix })
    }

    pub fn identity(algebra: Arc<TruncatedAlgebra>) -> AugAutomorphism {
        let images = (0..algebra.num_gens()).map(|i| algebra.gen(i)).collect();
        AugAutomorphism::new(algebra, images).expect("identity is always valid")
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.algebra.dim)
    }

    pub fn apply(&self, a: &AlgElement) -> AlgElement {
        AlgElement { coeffs: self.matrix.mul_vec(&self.algebra.field, &a.coeffs) }
    }

    pub fn apply_inv(&self, a: &AlgElement) -> AlgElement {
        AlgElement { coeffs: self.inv_matrix.mul_vec(&self.algebra.field, &a.coeffs) }
    }

    /// (φ ⊗ φ) on the tensor square.
    pub fn apply_tensor(&self, t: &TensorSquareElement) -> TensorSquareElement {
        let f = &self.algebra.field;
        let mut out = TensorSquareElement::default();
        for (&(i, j), &c) in &t.terms {
            let li = self.matrix.col(i as usize);
            let rj = self.matrix.col(j as usize);
            for (a, &ca) in li.iter().enumerate() {
                if ca == 0 {
                    continue;
                }
                for (b, &cb) in rj.iter().enumerate() {
                    if cb == 0 {
                        continue;
                    }
                    out.insert(f, (a as MonIdx, b as MonIdx), f.mul(c, f.mul(ca, cb)));
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> AugAutomorphism {
        AugAutomorphism {
            algebra: self.algebra.clone(),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
            matrix: self.inv_matrix.clone(),
            inv_matrix: self.matrix.clone(),
        }
    }

    /// The matrix of the induced linear map on A.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inv_matrix(&self) -> &Matrix {
        &self.inv_matrix
    }

    pub fn same_map_as(&self, other: &AugAutomorphism) -> bool {
        self.algebra.same_as(&other.algebra) && self.matrix == other.matrix
    }
}

/// Matrix of the multiplicative extension of the generator images.
fn induced_matrix(alg: &TruncatedAlgebra, images: &[AlgElement]) -> Matrix {
    // Power tables per generator: pows[i][e] = images[i]^e.
    let pows: Vec<Vec<AlgElement>> = images
        .iter()
        .zip(&alg.bounds)
        .map(|(img, &b)| {
            let mut v = Vec::with_capacity(b as usize);
            v.push(alg.one());
            for e in 1..b {
                let prev = &v[e as usize - 1];
                v.push(alg.mul(prev, img));
            }
            v
        })
        .collect();
    let mut m = Matrix::zeros(alg.dim, alg.dim);
    for j in 0..alg.dim {
        let exps = alg.exponents(j as MonIdx);
        let mut img = alg.one();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                img = alg.mul(&img, &pows[i][e as usize]);
            }
        }
        for (i, &c) in img.coeffs.iter().enumerate() {
            if c != 0 {
                m.set(i, j, c);
            }
        }
    }
    m
}

/// Composite automorphism a ↦ phi(psi(a)).
pub fn aut_compose(
    phi: &AugAutomorphism,
    psi: &AugAutomorphism,
) -> Result<AugAutomorphism, NoblerError> {
    if !phi.algebra.same_as(&psi.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let images = psi.images.iter().map(|img| phi.apply(img)).collect();
    AugAutomorphism::new(phi.algebra.clone(), images)
}

/// Every augmented automorphism defined over the base field, in a
/// deterministic order: candidates are an invertible linear part on the
/// generators plus arbitrary coefficients on the degree-≥2 monomials,
/// filtered by relation preservation.
pub fn enumerate_automorphisms(
    algebra: &Arc<TruncatedAlgebra>,
    budget: u64,
) -> Result<Vec<AugAutomorphism>, NoblerError> {
    let f = &algebra.field;
    let q = f.q as u64;
    let r = algebra.num_gens();
    // Monomials of total degree >= 2.
    let rad2: Vec<MonIdx> = (0..algebra.dim as u32)
        .filter(|&i| algebra.mon_degree(i) >= 2)
        .collect();
    let lin_count = q.checked_pow((r * r) as u32);
    let tail_count = q.checked_pow((r * rad2.len()) as u32);
    let total = lin_count.and_then(|a| tail_count.and_then(|b| a.checked_mul(b)));
    match total {
        Some(t) if t <= budget => {}
        _ => {
            return Err(NoblerError::BudgetExceeded {
                needed: total.unwrap_or(u64::MAX),
                budget,
            })
        }
    }
    let mut out = Vec::new();
    for lin_idx in 0..lin_count.unwrap() {
        // Decode an r x r linear part, row i = coefficients of image i.
        let mut lin = Matrix::zeros(r, r);
        let mut t = lin_idx;
        for i in 0..r {
            for j in 0..r {
                lin.set(i, j, (t % q) as Fel);
                t /= q;
            }
        }
        if lin.rank(f) != r {
            continue;
        }
        for tail_idx in 0..tail_count.unwrap() {
            let mut t = tail_idx;
            let images: Vec<AlgElement> = (0..r)
                .map(|i| {
                    let mut img = algebra.zero();
                    for j in 0..r {
                        let c = lin.get(i, j);
                        if c != 0 {
                            let g = algebra.gen(j);
                            img = algebra.add(&img, &algebra.scale(&g, c));
                        }
                    }
                    for &m in &rad2 {
                        let c = (t % q) as Fel;
                        t /= q;
                        if c != 0 {
                            img.coeffs[m as usize] = f.add(img.coeffs[m as usize], c);
                        }
                    }
                    img
                })
                .collect();
            match AugAutomorphism::new(algebra.clone(), images) {
                Ok(phi) => out.push(phi),
                Err(NoblerError::RelationViolated { .. })
                | Err(NoblerError::SingularLinearPart) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}
