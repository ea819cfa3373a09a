//! Cocommutative Hopf structures on a truncated algebra: the classified
//! catalog per supported shape, multiplicative coproduct extension,
//! axiom verification, antipodes as convolution inverses, and twisting
//! by augmented automorphisms.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::algebra::{AlgElement, MonIdx, TensorSquareElement, TruncatedAlgebra};
use crate::aut::{enumerate_automorphisms, AugAutomorphism};
use crate::error::NoblerError;
use crate::field::Fel;
use crate::linalg::Matrix;

/// Cap on |1 + radical| candidates scanned by the grouplike search.
const GROUPLIKE_CAP: u64 = 1 << 20;

#[derive(Debug)]
pub struct HopfStructure {
    pub algebra: Arc<TruncatedAlgebra>,
    pub coproduct_images: Vec<TensorSquareElement>,
    pub label: String,
    /// Δ on every basis monomial, built on first use.
    delta_table: OnceLock<Vec<TensorSquareElement>>,
    antipode: OnceLock<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfReport {
    pub coassociative: bool,
    pub cocommutative: bool,
    pub counit_ok: bool,
    pub antipode_ok: bool,
    /// Monomial keys of the first failing basis element per failed check.
    pub failures: Vec<String>,
}

impl HopfReport {
    pub fn all_ok(&self) -> bool {
        self.coassociative && self.cocommutative && self.counit_ok && self.antipode_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coassociative": self.coassociative,
            "cocommutative": self.cocommutative,
            "counit_ok": self.counit_ok,
            "antipode_ok": self.antipode_ok,
            "failures": self.failures,
        })
    }
}

#[derive(Debug)]
pub enum IsoVerdict {
    Iso(AugAutomorphism),
    NoIsoOverBaseField,
    BudgetExceeded,
}

impl HopfStructure {
    /// A structure from generator coproduct images. Only well-definedness
    /// is enforced here (Δ(x_i)^{p^{n_i}} = 0); the Hopf axioms are
    /// checked separately so that broken structures can be reported on.
    pub fn new(
        algebra: Arc<TruncatedAlgebra>,
        coproduct_images: Vec<TensorSquareElement>,
        label: impl Into<String>,
    ) -> Result<HopfStructure, NoblerError> {
        if coproduct_images.len() != algebra.num_gens() {
            return Err(NoblerError::BadAlgebra(
                "one coproduct image per generator required".into(),
            ));
        }
        let p = algebra.field.p as u64;
        for (i, img) in coproduct_images.iter().enumerate() {
            let power = algebra.tensor_pow(img, p.pow(algebra.orders[i]));
            if !power.is_zero() {
                return Err(NoblerError::BadAlgebra(format!(
                    "coproduct image of generator {i} does not respect the truncation"
                )));
            }
        }
        Ok(HopfStructure {
            algebra,
            coproduct_images,
            label: label.into(),
            delta_table: OnceLock::new(),
            antipode: OnceLock::new(),
        })
    }

    /// The structure with every generator primitive.
    pub fn primitive(algebra: Arc<TruncatedAlgebra>, label: impl Into<String>) -> HopfStructure {
        let images = (0..algebra.num_gens())
            .map(|i| primitive_image(&algebra, i))
            .collect();
        HopfStructure::new(algebra, images, label).expect("primitive images are nilpotent")
    }

    fn table(&self) -> &Vec<TensorSquareElement> {
        self.delta_table.get_or_init(|| {
            let alg = &self.algebra;
            // Power tables per generator, then products per monomial.
            let pows: Vec<Vec<TensorSquareElement>> = self
                .coproduct_images
                .iter()
                .zip(&alg.bounds)
                .map(|(img, &b)| {
                    let mut v = Vec::with_capacity(b as usize);
                    v.push(TensorSquareElement::one());
                    for e in 1..b {
                        let prev = &v[e as usize - 1];
                        v.push(alg.tensor_mul(prev, img));
                    }
                    v
                })
                .collect();
            (0..alg.dim)
                .map(|j| {
                    let exps = alg.exponents(j as MonIdx);
                    let mut t = TensorSquareElement::one();
                    for (i, &e) in exps.iter().enumerate() {
                        if e > 0 {
                            t = alg.tensor_mul(&t, &pows[i][e as usize]);
                        }
                    }
                    t
                })
                .collect()
        })
    }

    /// Δ on a basis monomial.
    pub fn delta_basis(&self, idx: MonIdx) -> &TensorSquareElement {
        &self.table()[idx as usize]
    }

    /// Δ extended linearly to any element.
    pub fn coproduct(&self, a: &AlgElement) -> TensorSquareElement {
        let alg = &self.algebra;
        let mut out = TensorSquareElement::default();
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c != 0 {
                out = alg.tensor_add(&out, &alg.tensor_scale(self.delta_basis(i as MonIdx), c));
            }
        }
        out
    }

    pub fn verify_bialgebra(&self) -> HopfReport {
        let alg = &self.algebra;
        let mut coassociative = true;
        let mut cocommutative = true;
        let mut counit_ok = true;
        let mut failures = Vec::new();
        for b in 0..alg.dim as MonIdx {
            let d = self.delta_basis(b);
            if counit_ok {
                let left = alg.tensor_counit_left(d);
                if left != alg.basis_element(b) {
                    counit_ok = false;
                    failures.push(alg.monomial_key(b));
                }
            }
            if cocommutative && alg.tensor_swap(d) != *d {
                cocommutative = false;
                failures.push(alg.monomial_key(b));
            }
            if coassociative && self.triple_left(d) != self.triple_right(d) {
                coassociative = false;
                failures.push(alg.monomial_key(b));
            }
        }
        let antipode_ok = coassociative
            && cocommutative
            && counit_ok
            && self.antipode().is_ok();
        HopfReport { coassociative, cocommutative, counit_ok, antipode_ok, failures }
    }

    /// (Δ⊗id) applied to a tensor element.
    fn triple_left(&self, t: &TensorSquareElement) -> BTreeMap<(MonIdx, MonIdx, MonIdx), Fel> {
        let f = &self.algebra.field;
        let mut out = BTreeMap::new();
        for (&(i, j), &c) in &t.terms {
            for (&(a, b), &ci) in &self.delta_basis(i).terms {
                triple_insert(&mut out, f, (a, b, j), f.mul(c, ci));
            }
        }
        out
    }

    /// (id⊗Δ) applied to a tensor element.
    fn triple_right(&self, t: &TensorSquareElement) -> BTreeMap<(MonIdx, MonIdx, MonIdx), Fel> {
        let f = &self.algebra.field;
        let mut out = BTreeMap::new();
        for (&(i, j), &c) in &t.terms {
            for (&(a, b), &cj) in &self.delta_basis(j).terms {
                triple_insert(&mut out, f, (i, a, b), f.mul(c, cj));
            }
        }
        out
    }

    /// The antipode as a matrix on A: the convolution inverse of the
    /// identity, from the linear system m∘(S⊗id)∘Δ = unit∘ε, verified
    /// against the symmetric axiom.
    pub fn antipode(&self) -> Result<&Matrix, NoblerError> {
        if let Some(s) = self.antipode.get() {
            return Ok(s);
        }
        let s = self.solve_antipode()?;
        Ok(self.antipode.get_or_init(|| s))
    }

    fn solve_antipode(&self) -> Result<Matrix, NoblerError> {
        let alg = &self.algebra;
        let f = &alg.field;
        let d = alg.dim;
        // Unknowns s[k*d + i] = coefficient of e_k in S(e_i); equations
        // indexed by (basis element b, output coordinate m).
        let mut sys = Matrix::zeros(d * d, d * d);
        let mut rhs = vec![0 as Fel; d * d];
        for b in 0..d as MonIdx {
            if b == 0 {
                // ε(1) = 1 lands on the unit coordinate.
                rhs[0] = 1;
            }
            for (&(i, j), &c) in &self.delta_basis(b).terms {
                for k in 0..d as MonIdx {
                    if let Some(m) = alg.mon_mul(k, j) {
                        let row = b as usize * d + m as usize;
                        let col = k as usize * d + i as usize;
                        sys.set(row, col, f.add(sys.get(row, col), c));
                    }
                }
            }
        }
        let sol = sys.solve(f, &rhs).ok_or(NoblerError::SingularAntipode)?;
        let mut s = Matrix::zeros(d, d);
        for k in 0..d {
            for i in 0..d {
                s.set(k, i, sol[k * d + i]);
            }
        }
        // Symmetric axiom m∘(id⊗S)∘Δ = unit∘ε.
        for b in 0..d as MonIdx {
            let mut acc = alg.zero();
            for (&(i, j), &c) in &self.delta_basis(b).terms {
                let sj = AlgElement { coeffs: s.mul_vec(f, &alg.basis_element(j).coeffs) };
                let prod = alg.mul(&alg.basis_element(i), &sj);
                acc = alg.add(&acc, &alg.scale(&prod, c));
            }
            let expect = if b == 0 { alg.one() } else { alg.zero() };
            if acc != expect {
                return Err(NoblerError::SingularAntipode);
            }
        }
        Ok(s)
    }

    /// Basis of the primitive subspace {u : Δ(u) = u⊗1 + 1⊗u}.
    pub fn primitives(&self) -> Vec<AlgElement> {
        let alg = &self.algebra;
        let f = &alg.field;
        let d = alg.dim;
        // Defects Δ(e_b) - e_b⊗1 - 1⊗e_b as columns over tensor pairs.
        let defects: Vec<TensorSquareElement> = (0..d as MonIdx)
            .map(|b| {
                let mut t = self.delta_basis(b).clone();
                let eb = alg.basis_element(b);
                t = alg.tensor_add(
                    &t,
                    &alg.tensor_scale(&alg.tensor_of(&eb, &alg.one()), f.neg(1)),
                );
                alg.tensor_add(
                    &t,
                    &alg.tensor_scale(&alg.tensor_of(&alg.one(), &eb), f.neg(1)),
                )
            })
            .collect();
        let mut keys: Vec<(MonIdx, MonIdx)> = defects
            .iter()
            .flat_map(|t| t.terms.keys().copied())
            .collect();
        keys.sort();
        keys.dedup();
        let mut sys = Matrix::zeros(keys.len().max(1), d);
        for (col, t) in defects.iter().enumerate() {
            for (key, &c) in &t.terms {
                let row = keys.binary_search(key).unwrap();
                sys.set(row, col, c);
            }
        }
        sys.kernel_basis(f)
            .into_iter()
            .map(|v| AlgElement { coeffs: v })
            .collect()
    }

    /// All grouplike elements (Δ(g) = g⊗g, ε(g) = 1), scanning 1 + radical
    /// over the base field.
    pub fn grouplikes(&self) -> Result<Vec<AlgElement>, NoblerError> {
        let alg = &self.algebra;
        let f = &alg.field;
        let q = f.q as u64;
        let rad_dim = alg.dim - 1;
        let count = q
            .checked_pow(rad_dim as u32)
            .filter(|&c| c <= GROUPLIKE_CAP)
            .ok_or(NoblerError::BudgetExceeded {
                needed: u64::MAX,
                budget: GROUPLIKE_CAP,
            })?;
        let mut out = Vec::new();
        for idx in 0..count {
            let mut g = alg.one();
            let mut t = idx;
            for c in g.coeffs.iter_mut().skip(1) {
                *c = (t % q) as Fel;
                t /= q;
            }
            if self.coproduct(&g) == alg.tensor_of(&g, &g) {
                out.push(g);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let alg = &self.algebra;
        json!({
            "algebra": alg.descriptor(),
            "label": self.label,
            "coproduct_images": self
                .coproduct_images
                .iter()
                .map(|t| alg.tensor_to_json(t))
                .collect::<Vec<_>>(),
        })
    }

    /// Same generator coproduct images (hence the same structure, since
    /// the extension is multiplicative).
    pub fn same_coproduct(&self, other: &HopfStructure) -> bool {
        self.algebra.same_as(&other.algebra) && self.coproduct_images == other.coproduct_images
    }
}

fn triple_insert(
    map: &mut BTreeMap<(MonIdx, MonIdx, MonIdx), Fel>,
    f: &crate::field::FiniteField,
    key: (MonIdx, MonIdx, MonIdx),
    c: Fel,
) {
    if c == 0 {
        return;
    }
    let e = map.entry(key).or_insert(0);
    *e = f.add(*e, c);
    if *e == 0 {
        map.remove(&key);
    }
}

fn primitive_image(alg: &Arc<TruncatedAlgebra>, i: usize) -> TensorSquareElement {
    let x = alg.gen(i);
    alg.tensor_add(&alg.tensor_of(&x, &alg.one()), &alg.tensor_of(&alg.one(), &x))
}

fn grouplike_shift(alg: &Arc<TruncatedAlgebra>, i: usize) -> TensorSquareElement {
    let x = alg.gen(i);
    alg.tensor_add(&primitive_image(alg, i), &alg.tensor_of(&x, &x))
}

/// The coproduct images available for one cyclic generator of order
/// p^n (n ≤ 3): primitive first, then the ω-deformations from the
/// largest Frobenius twist down, then the grouplike shift.
///
/// The deepest deformation at n = 3 needs a Witt-vector carry beyond
/// the bare ω term to be coassociative:
///   Δ(x) = x⊗1 + 1⊗x + ω(x^p) + ω(x^{p²})·[x^p⊗1 + 1⊗x^p]^{p-1}.
fn cyclic_images(alg: &Arc<TruncatedAlgebra>, i: usize) -> Vec<TensorSquareElement> {
    let n = alg.orders[i];
    let p = alg.field.p as u64;
    let x = alg.gen(i);
    let mut v = vec![primitive_image(alg, i)];
    for m in (1..n).rev() {
        let t = alg.pow(&x, p.pow(m));
        let mut img = alg.tensor_add(&primitive_image(alg, i), &alg.omega(&t));
        if m == 1 && n == 3 {
            let t2 = alg.pow(&x, p.pow(2));
            let prim_t = alg.tensor_add(
                &alg.tensor_of(&t, &alg.one()),
                &alg.tensor_of(&alg.one(), &t),
            );
            let carry = alg.tensor_mul(&alg.omega(&t2), &alg.tensor_pow(&prim_t, p - 1));
            img = alg.tensor_add(&img, &carry);
        }
        v.push(img);
    }
    v.push(grouplike_shift(alg, i));
    v
}

/// The complete orbit-representative catalog for a supported shape:
/// cyclic k[x]/x^{p^n} (n ≤ 3), the rank-two algebra k[x,y]/(x^p,y^p),
/// or a product of cyclic factors assembled componentwise. The primitive
/// structure is always listed first as "G0".
pub fn catalog(alg: &Arc<TruncatedAlgebra>) -> Result<Vec<HopfStructure>, NoblerError> {
    let r = alg.num_gens();
    if alg.orders.iter().any(|&n| n > 3) {
        return Err(NoblerError::UnsupportedShape(format!(
            "truncation exponents above 3 are not classified (orders {:?})",
            alg.orders
        )));
    }
    if r == 2 && alg.orders == [1, 1] {
        // Rank-two classification: the mixed ω entry exists only here.
        let x_prim = primitive_image(alg, 0);
        let y_prim = primitive_image(alg, 1);
        let x = alg.gen(0);
        let g1_y = alg.tensor_add(&y_prim, &alg.omega(&x));
        let entries = vec![
            ("G0", vec![x_prim.clone(), y_prim.clone()]),
            ("G1", vec![x_prim.clone(), g1_y]),
            ("G2", vec![x_prim.clone(), grouplike_shift(alg, 1)]),
            ("G3", vec![grouplike_shift(alg, 0), grouplike_shift(alg, 1)]),
        ];
        return entries
            .into_iter()
            .map(|(label, images)| HopfStructure::new(alg.clone(), images, label))
            .collect();
    }
    // Componentwise assembly from the cyclic catalogs of each factor.
    let per_gen: Vec<Vec<TensorSquareElement>> =
        (0..r).map(|i| cyclic_images(alg, i)).collect();
    let total: usize = per_gen.iter().map(|v| v.len()).product();
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut t = idx;
        let mut images = Vec::with_capacity(r);
        // Mixed radix, last generator fastest.
        let mut choices = vec![0usize; r];
        for i in (0..r).rev() {
            choices[i] = t % per_gen[i].len();
            t /= per_gen[i].len();
        }
        for i in 0..r {
            images.push(per_gen[i][choices[i]].clone());
        }
        out.push(HopfStructure::new(alg.clone(), images, format!("G{idx}"))?);
    }
    Ok(out)
}

/// Catalog entry by label.
pub fn catalog_entry(
    alg: &Arc<TruncatedAlgebra>,
    label: &str,
) -> Result<HopfStructure, NoblerError> {
    catalog(alg)?
        .into_iter()
        .find(|h| h.label == label)
        .ok_or_else(|| NoblerError::Parse(format!("no catalog entry labeled {label}")))
}

/// Δ^φ = (φ⊗φ) ∘ Δ ∘ φ⁻¹.
pub fn twist_hopf(
    h: &HopfStructure,
    phi: &AugAutomorphism,
    phi_label: &str,
) -> Result<HopfStructure, NoblerError> {
    if !h.algebra.same_as(&phi.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let images = (0..h.algebra.num_gens())
        .map(|i| {
            let pre = phi.apply_inv(&h.algebra.gen(i));
            phi.apply_tensor(&h.coproduct(&pre))
        })
        .collect();
    HopfStructure::new(
        h.algebra.clone(),
        images,
        format!("twisted({},{})", h.label, phi_label),
    )
}

/// Search for an augmented automorphism carrying H1 to H2 by twisting;
/// conclusive only over the base field.
pub fn hopf_isomorphic(h1: &HopfStructure, h2: &HopfStructure, budget: u64) -> IsoVerdict {
    if !h1.algebra.same_as(&h2.algebra) {
        return IsoVerdict::NoIsoOverBaseField;
    }
    let auts = match enumerate_automorphisms(&h1.algebra, budget) {
        Ok(a) => a,
        Err(_) => return IsoVerdict::BudgetExceeded,
    };
    for phi in auts {
        match twist_hopf(h1, &phi, "candidate") {
            Ok(t) if t.coproduct_images == h2.coproduct_images => {
                return IsoVerdict::Iso(phi);
            }
            _ => {}
        }
    }
    IsoVerdict::NoIsoOverBaseField
}
