//! Modules over a truncated algebra as tuples of commuting nilpotent
//! action matrices, with the standard constructions: regular, Jordan,
//! rank-two point modules, tensor products under a Hopf structure,
//! restriction along algebra maps, induction of the trivial module,
//! twisting, direct sums, and duals.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde_json::{json, Value};

use crate::algebra::{AlgElement, MonIdx, TruncatedAlgebra};
use crate::aut::AugAutomorphism;
use crate::error::NoblerError;
use crate::field::Fel;
use crate::hopf::HopfStructure;
use crate::linalg::Matrix;

#[derive(Debug)]
pub struct Module {
    pub algebra: Arc<TruncatedAlgebra>,
    pub dim: usize,
    /// One action matrix per generator.
    pub actions: Vec<Matrix>,
    /// Memoized monomial actions.
    mon_cache: RwLock<HashMap<MonIdx, Arc<Matrix>>>,
}

impl Clone for Module {
    fn clone(&self) -> Self {
        Module {
            algebra: self.algebra.clone(),
            dim: self.dim,
            actions: self.actions.clone(),
            mon_cache: RwLock::new(self.mon_cache.read().unwrap().clone()),
        }
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.actions == other.actions
    }
}
impl Eq for Module {}

impl Module {
    pub fn new(
        algebra: Arc<TruncatedAlgebra>,
        actions: Vec<Matrix>,
    ) -> Result<Module, NoblerError> {
        let f = &algebra.field;
        if actions.len() != algebra.num_gens() {
            return Err(NoblerError::BadModule(
                "one action matrix per generator required".into(),
            ));
        }
        let dim = actions.first().map_or(0, |m| m.rows);
        for (i, m) in actions.iter().enumerate() {
            if m.rows != dim || m.cols != dim {
                return Err(NoblerError::BadModule(format!(
                    "action of generator {i} is not square of dimension {dim}"
                )));
            }
            let power = m.pow(f, algebra.bounds[i]);
            if !power.is_zero() {
                return Err(NoblerError::BadModule(format!(
                    "action of generator {i} violates its truncation relation"
                )));
            }
        }
        for i in 0..actions.len() {
            for j in i + 1..actions.len() {
                if actions[i].mul(f, &actions[j]) != actions[j].mul(f, &actions[i]) {
                    return Err(NoblerError::BadModule(format!(
                        "actions of generators {i} and {j} do not commute"
                    )));
                }
            }
        }
        Ok(Module { algebra, dim, actions, mon_cache: RwLock::new(HashMap::new()) })
    }

    pub fn zero_module(algebra: Arc<TruncatedAlgebra>) -> Module {
        let actions = vec![Matrix::zeros(0, 0); algebra.num_gens()];
        Module { algebra, dim: 0, actions, mon_cache: RwLock::new(HashMap::new()) }
    }

    /// The trivial one-dimensional module.
    pub fn trivial(algebra: Arc<TruncatedAlgebra>) -> Module {
        let actions = vec![Matrix::zeros(1, 1); algebra.num_gens()];
        Module { algebra, dim: 1, actions, mon_cache: RwLock::new(HashMap::new()) }
    }

    /// Action matrix of a basis monomial, memoized.
    pub fn mon_action(&self, idx: MonIdx) -> Arc<Matrix> {
        if let Some(m) = self.mon_cache.read().unwrap().get(&idx) {
            return m.clone();
        }
        let f = &self.algebra.field;
        let exps = self.algebra.exponents(idx);
        let mut acc = Matrix::identity(self.dim);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                acc = acc.mul(f, &self.actions[i].pow(f, e));
            }
        }
        let acc = Arc::new(acc);
        self.mon_cache
            .write()
            .unwrap()
            .entry(idx)
            .or_insert_with(|| acc.clone())
            .clone()
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn element_action(&self, a: &AlgElement) -> Matrix {
        let f = &self.algebra.field;
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c != 0 {
                out = out.add(f, &self.mon_action(i as MonIdx).scale(f, c));
            }
        }
        out
    }

    /// Ranks of all monomial actions, a cheap isomorphism invariant.
    pub fn rank_fingerprint(&self) -> Vec<usize> {
        let f = &self.algebra.field;
        (0..self.algebra.dim)
            .map(|i| self.mon_action(i as MonIdx).rank(f))
            .collect()
    }

    /// Conjugate every action by an invertible matrix: actions ↦ t·a·t⁻¹.
    pub fn conjugate(&self, t: &Matrix) -> Result<Module, NoblerError> {
        let f = &self.algebra.field;
        let tinv = t.inverse(f).ok_or(NoblerError::BadModule("singular basis change".into()))?;
        let actions = self
            .actions
            .iter()
            .map(|a| t.mul(f, a).mul(f, &tinv))
            .collect();
        Module::new(self.algebra.clone(), actions)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.descriptor(),
            "dim": self.dim,
            "actions": self
                .actions
                .iter()
                .map(|m| matrix_to_hex(&self.algebra, m))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(algebra: Arc<TruncatedAlgebra>, v: &Value) -> Result<Module, NoblerError> {
        let dim = v["dim"]
            .as_u64()
            .ok_or_else(|| NoblerError::Parse("module dim missing".into()))? as usize;
        let actions = v["actions"]
            .as_array()
            .ok_or_else(|| NoblerError::Parse("module actions missing".into()))?
            .iter()
            .map(|s| {
                let hex = s
                    .as_str()
                    .ok_or_else(|| NoblerError::Parse("action must be a hex string".into()))?;
                matrix_from_hex(&algebra, hex, dim)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Module::new(algebra, actions)
    }
}

/// Fixed-width row-major hex encoding of a matrix, width chosen from the
/// field size.
pub fn matrix_to_hex(alg: &TruncatedAlgebra, m: &Matrix) -> String {
    let width = hex_width(alg.field.q);
    let mut s = String::with_capacity(m.rows * m.cols * width);
    for i in 0..m.rows {
        for j in 0..m.cols {
            s.push_str(&format!("{:0width$x}", m.get(i, j)));
        }
    }
    s
}

pub fn matrix_from_hex(
    alg: &TruncatedAlgebra,
    hex: &str,
    dim: usize,
) -> Result<Matrix, NoblerError> {
    let width = hex_width(alg.field.q);
    if hex.len() != dim * dim * width {
        return Err(NoblerError::Parse("hex matrix has wrong length".into()));
    }
    let mut m = Matrix::zeros(dim, dim);
    let bytes = hex.as_bytes();
    for i in 0..dim {
        for j in 0..dim {
            let off = (i * dim + j) * width;
            let chunk = std::str::from_utf8(&bytes[off..off + width]).unwrap();
            let v = Fel::from_str_radix(chunk, 16)
                .map_err(|e| NoblerError::Parse(format!("bad hex entry: {e}")))?;
            if v >= alg.field.q {
                return Err(NoblerError::Parse("matrix entry out of field range".into()));
            }
            m.set(i, j, v);
        }
    }
    Ok(m)
}

fn hex_width(q: u16) -> usize {
    let mut w = 1;
    let mut cap = 16u32;
    while cap < q as u32 {
        w += 1;
        cap *= 16;
    }
    w
}

/// Left multiplication on the monomial basis.
pub fn regular_module(algebra: &Arc<TruncatedAlgebra>) -> Module {
    let d = algebra.dim;
    let actions = (0..algebra.num_gens())
        .map(|g| {
            let mut m = Matrix::zeros(d, d);
            let x = algebra.gen(g);
            let xi = x.coeffs.iter().position(|&c| c != 0).unwrap() as MonIdx;
            for j in 0..d as MonIdx {
                if let Some(t) = algebra.mon_mul(xi, j) {
                    m.set(t as usize, j as usize, 1);
                }
            }
            m
        })
        .collect();
    Module::new(algebra.clone(), actions).expect("regular actions satisfy the relations")
}

/// The indecomposable J_i over a single-generator algebra: one nilpotent
/// Jordan block of size i.
pub fn jordan_module(algebra: &Arc<TruncatedAlgebra>, i: usize) -> Result<Module, NoblerError> {
    if algebra.num_gens() != 1 {
        return Err(NoblerError::UnsupportedShape(
            "Jordan modules require a single-generator algebra".into(),
        ));
    }
    if i < 1 || i as u64 > algebra.bounds[0] {
        return Err(NoblerError::IndexOutOfRange(i as u64));
    }
    Ok(Module::new(algebra.clone(), vec![jordan_block(i)]).expect("nilpotent block"))
}

/// Upper-triangular nilpotent block: e_j ↦ e_{j-1}.
pub fn jordan_block(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for j in 1..n {
        m.set(j - 1, j, 1);
    }
    m
}

/// The 2n-dimensional module V_{2n}([a:b]) over k[x,y]/(x^p,y^p):
/// with s2 = a·x + b·y and s1 = c·x + d·y for a complementary direction
/// [c:d], s1 acts by (0 I_n; 0 0) and s2 by (0 N_n; 0 0) with N_n a
/// nilpotent Jordan block.
pub fn kronecker_module(
    algebra: &Arc<TruncatedAlgebra>,
    n: usize,
    point: (Fel, Fel),
    aux: Option<(Fel, Fel)>,
) -> Result<Module, NoblerError> {
    let f = &algebra.field;
    if algebra.num_gens() != 2 || algebra.orders != [1, 1] {
        return Err(NoblerError::UnsupportedShape(
            "point modules require the rank-two algebra k[x,y]/(x^p,y^p)".into(),
        ));
    }
    if n < 1 {
        return Err(NoblerError::IndexOutOfRange(0));
    }
    let (a, b) = point;
    if a == 0 && b == 0 {
        return Err(NoblerError::BadPoint("[0:0] is not projective".into()));
    }
    let (c, d) = aux.unwrap_or(if b != 0 { (1, 0) } else { (0, 1) });
    let det = f.sub(f.mul(a, d), f.mul(b, c));
    if det == 0 {
        return Err(NoblerError::BadPoint(
            "auxiliary direction is parallel to the point".into(),
        ));
    }
    // (x; y) = [[a,b],[c,d]]^{-1} (s2; s1) = (1/det)[[d,-b],[-c,a]](s2; s1).
    let det_inv = f.inv(det);
    let s2 = corner_block(n, &jordan_block(n));
    let s1 = corner_block(n, &Matrix::identity(n));
    let x = s2.scale(f, f.mul(det_inv, d)).add(f, &s1.scale(f, f.mul(det_inv, f.neg(b))));
    let y = s2.scale(f, f.mul(det_inv, f.neg(c))).add(f, &s1.scale(f, f.mul(det_inv, a)));
    Module::new(algebra.clone(), vec![x, y])
}

/// The 2n x 2n matrix (0 B; 0 0).
fn corner_block(n: usize, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = b.get(i, j);
            if v != 0 {
                m.set(i, n + j, v);
            }
        }
    }
    m
}

/// M ⊗ N with the action pulled back along Δ of the given structure.
pub fn tensor_module(
    h: &HopfStructure,
    m: &Module,
    n: &Module,
) -> Result<Module, NoblerError> {
    if !h.algebra.same_as(&m.algebra) || !h.algebra.same_as(&n.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let f = &h.algebra.field;
    let dim = m.dim * n.dim;
    let actions = (0..h.algebra.num_gens())
        .map(|g| {
            let mut act = Matrix::zeros(dim, dim);
            for (&(i, j), &c) in &h.coproduct_images[g].terms {
                let part = m.mon_action(i).kron(f, &n.mon_action(j)).scale(f, c);
                act = act.add(f, &part);
            }
            act
        })
        .collect();
    Module::new(h.algebra.clone(), actions)
}

#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    pub source: Arc<TruncatedAlgebra>,
    pub target: Arc<TruncatedAlgebra>,
    pub images: Vec<AlgElement>,
}

impl AlgebraMorphism {
    pub fn new(
        source: Arc<TruncatedAlgebra>,
        target: Arc<TruncatedAlgebra>,
        images: Vec<AlgElement>,
    ) -> Result<AlgebraMorphism, NoblerError> {
        if images.len() != source.num_gens() {
            return Err(NoblerError::BadAlgebra(
                "one image per source generator required".into(),
            ));
        }
        for (i, img) in images.iter().enumerate() {
            if img.coeffs.len() != target.dim {
                return Err(NoblerError::ElementMismatch(format!("image of generator {i}")));
            }
            if !target.is_zero(&target.pow(img, source.bounds[i])) {
                return Err(NoblerError::RelationViolated {
                    gen: i,
                    order: source.bounds[i],
                });
            }
        }
        Ok(AlgebraMorphism { source, target, images })
    }

    pub fn identity(algebra: Arc<TruncatedAlgebra>) -> AlgebraMorphism {
        let images = (0..algebra.num_gens()).map(|i| algebra.gen(i)).collect();
        AlgebraMorphism::new(algebra.clone(), algebra, images).expect("identity morphism")
    }
}

/// Pull a module back along an algebra morphism: source generator t_i
/// acts by the matrix of f(t_i).
pub fn restrict_module(f: &AlgebraMorphism, m: &Module) -> Result<Module, NoblerError> {
    if !f.target.same_as(&m.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let actions = f.images.iter().map(|img| m.element_action(img)).collect();
    Module::new(f.source.clone(), actions)
}

/// The quotient module A/(A·x_g) with left-multiplication action; this is
/// the induction of the trivial module along the cyclic subalgebra
/// generated by x_g.
pub fn induce_trivial(
    algebra: &Arc<TruncatedAlgebra>,
    gen_index: usize,
) -> Result<Module, NoblerError> {
    if gen_index >= algebra.num_gens() {
        return Err(NoblerError::IndexOutOfRange(gen_index as u64));
    }
    // Basis: monomials with exponent 0 at gen_index.
    let basis: Vec<MonIdx> = (0..algebra.dim as MonIdx)
        .filter(|&i| algebra.exponents(i)[gen_index] == 0)
        .collect();
    let pos: HashMap<MonIdx, usize> =
        basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let d = basis.len();
    let actions = (0..algebra.num_gens())
        .map(|g| {
            let mut m = Matrix::zeros(d, d);
            let xg = algebra.gen(g);
            let xi = xg.coeffs.iter().position(|&c| c != 0).unwrap() as MonIdx;
            for (col, &b) in basis.iter().enumerate() {
                if let Some(t) = algebra.mon_mul(xi, b) {
                    if let Some(&row) = pos.get(&t) {
                        m.set(row, col, 1);
                    }
                    // Products that leave the quotient basis lie in the
                    // ideal (A·x_g) and vanish.
                }
            }
            m
        })
        .collect();
    Module::new(algebra.clone(), actions)
}

/// M^φ: x_i acts through φ⁻¹(x_i).
pub fn twist_module(phi: &AugAutomorphism, m: &Module) -> Result<Module, NoblerError> {
    if !phi.algebra.same_as(&m.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let actions = phi
        .inverse_images
        .iter()
        .map(|img| m.element_action(img))
        .collect();
    Module::new(m.algebra.clone(), actions)
}

pub fn direct_sum(parts: &[&Module]) -> Result<Module, NoblerError> {
    let first = parts.first().ok_or(NoblerError::BadModule("empty direct sum".into()))?;
    let algebra = first.algebra.clone();
    for p in parts {
        if !p.algebra.same_as(&algebra) {
            return Err(NoblerError::AlgebraMismatch);
        }
    }
    let actions = (0..algebra.num_gens())
        .map(|g| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.actions[g]).collect();
            Matrix::block_diag(&blocks)
        })
        .collect();
    Module::new(algebra, actions)
}

/// The dual module for the given Hopf structure: x_i acts by the
/// transpose of the action of S(x_i).
pub fn dual_module(h: &HopfStructure, m: &Module) -> Result<Module, NoblerError> {
    if !h.algebra.same_as(&m.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let f = &h.algebra.field;
    let s = h.antipode()?;
    let actions = (0..h.algebra.num_gens())
        .map(|g| {
            let sx = AlgElement { coeffs: s.mul_vec(f, &h.algebra.gen(g).coeffs) };
            m.element_action(&sx).transpose()
        })
        .collect();
    Module::new(h.algebra.clone(), actions)
}
