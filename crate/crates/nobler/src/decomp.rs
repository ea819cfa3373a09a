//! Hom spaces, isomorphism testing, Fitting splittings, and full
//! Krull–Schmidt decomposition with summand recognition.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::NoblerError;
use crate::field::{Fel, FiniteField};
use crate::geometry::{mult_matrix, support};
use crate::linalg::Matrix;
use crate::modrep::{jordan_module, kronecker_module, regular_module, Module};

/// Dimension cap for the endomorphism-ring splitting route.
const END_CAP: usize = 64;
/// Random endomorphism combinations tried before the exhaustive scan.
const RANDOM_TRIES: usize = 64;
/// Exhaustive-scan budget on q^h (h = endomorphism ring dimension).
const EXHAUSTIVE_CAP: u64 = 1 << 16;
/// Tighter exhaustive budget for fields larger than F2, where the
/// row-reduction fast path is unavailable.
const EXHAUSTIVE_CAP_BIG_Q: u64 = 1 << 12;

const DEFAULT_SEED: u64 = 0x6e6f626c65;

/// Outcome of an isomorphism test.
#[derive(Debug, Clone)]
pub enum IsoResult {
    /// An explicit intertwining invertible matrix n = C·m·C⁻¹ per action.
    Yes(Matrix),
    No,
    Inconclusive,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }
}

/// Basis of Hom_A(M, N): matrices F with F·ρ_M(g) = ρ_N(g)·F for every
/// generator g.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<Matrix>, NoblerError> {
    if !m.algebra.same_as(&n.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let f = &m.algebra.field;
    let (md, nd) = (m.dim, n.dim);
    let unknowns = md * nd;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let gens = m.algebra.num_gens();
    let mut sys = Matrix::zeros(gens * nd * md, unknowns);
    let mut row = 0;
    for g in 0..gens {
        let rho_m = &m.actions[g];
        let rho_n = &n.actions[g];
        for r in 0..nd {
            for c in 0..md {
                for k in 0..nd {
                    let v = rho_n.get(r, k);
                    if v != 0 {
                        let col = k * md + c;
                        sys.set(row, col, f.add(sys.get(row, col), v));
                    }
                }
                for k in 0..md {
                    let v = rho_m.get(k, c);
                    if v != 0 {
                        let col = r * md + k;
                        sys.set(row, col, f.sub(sys.get(row, col), v));
                    }
                }
                row += 1;
            }
        }
    }
    let basis = sys.kernel_basis(f);
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut mat = Matrix::zeros(nd, md);
            for i in 0..nd {
                for j in 0..md {
                    mat.set(i, j, v[i * md + j]);
                }
            }
            mat
        })
        .collect())
}

fn random_combination(
    f: &FiniteField,
    basis: &[Matrix],
    rng: &mut ChaCha8Rng,
) -> Matrix {
    let mut out = Matrix::zeros(basis[0].rows, basis[0].cols);
    for b in basis {
        let c = rng.gen_range(0..f.q);
        if c != 0 {
            out = out.add(f, &b.scale(f, c));
        }
    }
    out
}

fn indexed_combination(f: &FiniteField, basis: &[Matrix], mut idx: u64) -> Matrix {
    let q = f.q as u64;
    let mut out = Matrix::zeros(basis[0].rows, basis[0].cols);
    for b in basis {
        let c = (idx % q) as Fel;
        idx /= q;
        if c != 0 {
            out = out.add(f, &b.scale(f, c));
        }
    }
    out
}

fn exhaustive_budget(f: &FiniteField, h: usize) -> Option<u64> {
    let cap = if f.q == 2 { EXHAUSTIVE_CAP } else { EXHAUSTIVE_CAP_BIG_Q };
    (f.q as u64).checked_pow(h as u32).filter(|&t| t <= cap)
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Result<IsoResult, NoblerError> {
    is_isomorphic_seeded(m, n, DEFAULT_SEED)
}

/// Isomorphism test: cheap invariants first, then a search for an
/// invertible element of Hom(M, N). Decisive `No` when the invariants
/// differ or the hom space is small enough to scan exhaustively.
pub fn is_isomorphic_seeded(
    m: &Module,
    n: &Module,
    seed: u64,
) -> Result<IsoResult, NoblerError> {
    if !m.algebra.same_as(&n.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    if m.dim != n.dim {
        return Ok(IsoResult::No);
    }
    if m.dim == 0 {
        return Ok(IsoResult::Yes(Matrix::identity(0)));
    }
    if m.rank_fingerprint() != n.rank_fingerprint() {
        return Ok(IsoResult::No);
    }
    let f = &m.algebra.field;
    let homs = hom_space(m, n)?;
    if homs.is_empty() {
        return Ok(IsoResult::No);
    }
    for h in &homs {
        if h.inverse(f).is_some() {
            return Ok(IsoResult::Yes(h.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let c = random_combination(f, &homs, &mut rng);
        if c.inverse(f).is_some() {
            return Ok(IsoResult::Yes(c));
        }
    }
    if let Some(total) = exhaustive_budget(f, homs.len()) {
        for idx in 1..total {
            let c = indexed_combination(f, &homs, idx);
            if c.inverse(f).is_some() {
                return Ok(IsoResult::Yes(c));
            }
        }
        return Ok(IsoResult::No);
    }
    Ok(IsoResult::Inconclusive)
}

/// Jordan type of a nilpotent matrix: block sizes in decreasing order,
/// from the rank sequence of its powers.
pub fn jordan_type(f: &FiniteField, t: &Matrix) -> Result<Vec<usize>, NoblerError> {
    if t.rows != t.cols {
        return Err(NoblerError::BadModule("jordan type needs a square matrix".into()));
    }
    let d = t.rows;
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut ranks = vec![d];
    let mut power = Matrix::identity(d);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > d + 1 {
            return Err(NoblerError::BadModule("matrix is not nilpotent".into()));
        }
        power = power.mul(f, t);
        ranks.push(power.rank(f));
    }
    ranks.push(0);
    let mut blocks = Vec::new();
    for i in 1..ranks.len() - 1 {
        let count = ranks[i - 1] + ranks[i + 1] - 2 * ranks[i];
        for _ in 0..count {
            blocks.push(i);
        }
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    Ok(blocks)
}

/// Express the action of M on an invariant subspace, given by basis
/// columns, in the coordinates of that basis.
pub fn restrict_to_subspace(m: &Module, basis: &Matrix) -> Result<Module, NoblerError> {
    let f = &m.algebra.field;
    let mut actions = Vec::with_capacity(m.actions.len());
    for a in &m.actions {
        let rhs = a.mul(f, basis);
        let b = basis
            .solve_columns(f, &rhs)
            .ok_or_else(|| NoblerError::BadModule("subspace is not invariant".into()))?;
        actions.push(b);
    }
    Module::new(m.algebra.clone(), actions)
}

/// Fitting splitting along an endomorphism: M = im(f^dim) ⊕ ker(f^dim).
/// Returns None when f is nilpotent or invertible on M.
#[allow(clippy::type_complexity)]
pub fn fitting_split(
    m: &Module,
    endo: &Matrix,
) -> Result<Option<(Module, Matrix, Module, Matrix)>, NoblerError> {
    let f = &m.algebra.field;
    for a in &m.actions {
        if a.mul(f, endo) != endo.mul(f, a) {
            return Err(NoblerError::BadModule(
                "matrix does not commute with the module action".into(),
            ));
        }
    }
    let stab = endo.pow(f, m.dim as u64);
    let r = stab.rank(f);
    if r == 0 || r == m.dim {
        return Ok(None);
    }
    let image = Matrix::from_columns(&stab.column_space_basis(f), m.dim);
    let kernel = Matrix::from_columns(&stab.kernel_basis(f), m.dim);
    let m_im = restrict_to_subspace(m, &image)?;
    let m_ker = restrict_to_subspace(m, &kernel)?;
    Ok(Some((m_im, image, m_ker, kernel)))
}

/// Incremental span with reduced rows, for chain-basis extraction.
struct SpanTracker {
    rows: Vec<(usize, Vec<Fel>)>,
}

impl SpanTracker {
    fn new() -> SpanTracker {
        SpanTracker { rows: Vec::new() }
    }

    /// Add a vector; true if it enlarged the span.
    fn add(&mut self, f: &FiniteField, v: &[Fel]) -> bool {
        let mut w = v.to_vec();
        for (piv, row) in &self.rows {
            let c = w[*piv];
            if c != 0 {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = f.sub(*wi, f.mul(c, *ri));
                }
            }
        }
        match w.iter().position(|&c| c != 0) {
            None => false,
            Some(piv) => {
                let inv = f.inv(w[piv]);
                for c in w.iter_mut() {
                    *c = f.mul(*c, inv);
                }
                self.rows.push((piv, w));
                true
            }
        }
    }
}

/// Jordan chain bases of a nilpotent matrix. Each chain is returned
/// socle-first: [t^{L-1}·h, ..., t·h, h].
fn nilpotent_chains(
    f: &FiniteField,
    t: &Matrix,
) -> Result<Vec<Vec<Vec<Fel>>>, NoblerError> {
    let d = t.rows;
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut powers = vec![Matrix::identity(d)];
    while !powers.last().unwrap().is_zero() {
        if powers.len() > d {
            return Err(NoblerError::BadModule("matrix is not nilpotent".into()));
        }
        let next = powers.last().unwrap().mul(f, t);
        powers.push(next);
    }
    let index = powers.len() - 1;
    let kernels: Vec<Vec<Vec<Fel>>> =
        powers.iter().map(|p| p.kernel_basis(f)).collect();
    let mut heads: Vec<(usize, Vec<Fel>)> = Vec::new();
    for level in (1..=index).rev() {
        let mut tracker = SpanTracker::new();
        for v in &kernels[level - 1] {
            tracker.add(f, v);
        }
        for (len, h) in &heads {
            tracker.add(f, &powers[len - level].mul_vec(f, h));
        }
        for v in &kernels[level] {
            if tracker.add(f, v) {
                heads.push((level, v.clone()));
            }
        }
    }
    let total: usize = heads.iter().map(|(l, _)| l).sum();
    if total != d {
        return Err(NoblerError::BadModule("chain extraction lost dimensions".into()));
    }
    Ok(heads
        .into_iter()
        .map(|(len, h)| (0..len).rev().map(|e| powers[e].mul_vec(f, &h)).collect())
        .collect())
}

/// One summand of a decomposition.
#[derive(Debug, Clone)]
pub struct DecompPart {
    pub label: String,
    pub dim: usize,
    /// Columns: the summand's basis in the coordinates of the input.
    pub basis: Matrix,
    /// The recognized model (or the restricted action if unrecognized).
    pub module: Module,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Multiset of summand labels.
    pub summands: BTreeMap<String, usize>,
    pub parts: Vec<DecompPart>,
    /// True when every summand was recognized and the change of basis
    /// was verified to intertwine the actions.
    pub certified: bool,
}

struct Worker {
    rng: ChaCha8Rng,
    parts: Vec<DecompPart>,
    all_recognized: bool,
}

pub fn decompose(m: &Module) -> Result<Decomposition, NoblerError> {
    decompose_seeded(m, DEFAULT_SEED)
}

pub fn decompose_seeded(m: &Module, seed: u64) -> Result<Decomposition, NoblerError> {
    let mut w = Worker {
        rng: ChaCha8Rng::seed_from_u64(seed),
        parts: Vec::new(),
        all_recognized: true,
    };
    w.split(m.clone(), Matrix::identity(m.dim))?;
    let certified = w.all_recognized && verify_parts(m, &w.parts);
    let mut summands = BTreeMap::new();
    for p in &w.parts {
        *summands.entry(p.label.clone()).or_insert(0) += 1;
    }
    Ok(Decomposition { summands, parts: w.parts, certified })
}

fn verify_parts(m: &Module, parts: &[DecompPart]) -> bool {
    let f = &m.algebra.field;
    if parts.iter().map(|p| p.dim).sum::<usize>() != m.dim {
        return false;
    }
    let bases: Vec<&Matrix> = parts.iter().map(|p| &p.basis).collect();
    let change = Matrix::hstack(&bases);
    if m.dim > 0 && change.inverse(f).is_none() {
        return false;
    }
    for p in parts {
        for (a, b) in m.actions.iter().zip(&p.module.actions) {
            if a.mul(f, &p.basis) != p.basis.mul(f, b) {
                return false;
            }
        }
    }
    true
}

fn is_kronecker(m: &Module) -> bool {
    m.algebra.num_gens() == 2 && m.algebra.orders == [1, 1]
}

impl Worker {
    fn push(&mut self, label: String, module: Module, basis: Matrix, recognized: bool) {
        if !recognized {
            self.all_recognized = false;
        }
        self.parts.push(DecompPart { label, dim: module.dim, basis, module });
    }

    /// Decompose the submodule of the original carried by `embed`.
    fn split(&mut self, m: Module, embed: Matrix) -> Result<(), NoblerError> {
        if m.dim == 0 {
            return Ok(());
        }
        if m.algebra.num_gens() == 1 {
            return self.cyclic_route(&m, &embed);
        }
        let (m, embed) = self.peel_free(m, embed)?;
        if m.dim == 0 {
            return Ok(());
        }
        if is_kronecker(&m) && self.try_kronecker_route(&m, &embed)? {
            return Ok(());
        }
        self.endomorphism_route(m, embed)
    }

    /// Jordan chains of the single generator.
    fn cyclic_route(&mut self, m: &Module, embed: &Matrix) -> Result<(), NoblerError> {
        let f = &m.algebra.field;
        let chains = nilpotent_chains(f, &m.actions[0])?;
        for chain in chains {
            let len = chain.len();
            let basis = Matrix::from_columns(&chain, m.dim);
            self.push(
                format!("J{len}"),
                jordan_module(&m.algebra, len)?,
                embed.mul(f, &basis),
                true,
            );
        }
        Ok(())
    }

    /// Strip free direct summands via a socle-functional projection.
    fn peel_free(
        &mut self,
        mut m: Module,
        mut embed: Matrix,
    ) -> Result<(Module, Matrix), NoblerError> {
        let alg = m.algebra.clone();
        let f = &alg.field;
        let adim = alg.dim;
        let socle = alg.socle_monomial();
        let socle_exps = alg.exponents(socle);
        loop {
            if m.dim < adim {
                return Ok((m, embed));
            }
            let soc_act = m.mon_action(socle);
            let Some((i, j, alpha)) = first_nonzero(&soc_act) else {
                return Ok((m, embed));
            };
            let alpha_inv = f.inv(alpha);
            // G row μ: the socle functional composed with the action of
            // the complementary monomial of μ.
            let mut g = Matrix::zeros(adim, m.dim);
            for mu in 0..adim as u32 {
                let mu_exps = alg.exponents(mu);
                let comp_exps: Vec<u64> = socle_exps
                    .iter()
                    .zip(&mu_exps)
                    .map(|(s, e)| s - e)
                    .collect();
                let comp = alg.monomial(&comp_exps).expect("divisor of the socle");
                let act = m.mon_action(comp);
                for c in 0..m.dim {
                    g.set(mu as usize, c, f.mul(alpha_inv, act.get(i, c)));
                }
            }
            // The generator column and its unit correction.
            let gv = g.col(j);
            let gv_inv = alg
                .unit_inverse(&crate::algebra::AlgElement { coeffs: gv })
                .ok_or_else(|| NoblerError::BadModule("socle functional is degenerate".into()))?;
            let w = mult_matrix(&alg, &gv_inv);
            let mut iota = Matrix::zeros(m.dim, adim);
            for mu in 0..adim as u32 {
                let act = m.mon_action(mu);
                for r in 0..m.dim {
                    iota.set(r, mu as usize, act.get(r, j));
                }
            }
            let proj = iota.mul(f, &w.mul(f, &g));
            if proj.mul(f, &proj) != proj {
                return Err(NoblerError::BadModule("free projection is not idempotent".into()));
            }
            let free_part = restrict_to_subspace(&m, &iota)?;
            if free_part != regular_module(&alg) {
                return Err(NoblerError::BadModule("free summand failed verification".into()));
            }
            let complement = Matrix::from_columns(&proj.kernel_basis(f), m.dim);
            self.push("P".into(), free_part, embed.mul(f, &iota), true);
            let rest = restrict_to_subspace(&m, &complement)?;
            embed = embed.mul(f, &complement);
            m = rest;
        }
    }

    /// Singleton-support modules over the rank-two algebra: recover the
    /// point-module multiset from the nilpotent transfer operator on the
    /// radical quotient. Returns false (leaving the module untouched)
    /// when the structural preconditions fail.
    fn try_kronecker_route(
        &mut self,
        m: &Module,
        embed: &Matrix,
    ) -> Result<bool, NoblerError> {
        let alg = &m.algebra;
        let f = &alg.field;
        let supp = support(alg, m)?;
        if supp.len() != 1 || m.dim % 2 != 0 {
            return Ok(false);
        }
        let pt = *supp.iter().next().unwrap();
        let Some((a, b)) = pt.coords() else { return Ok(false) };
        let (c, d) = if b != 0 { (1, 0) } else { (0, 1) };
        let ax = &m.actions[0];
        let ay = &m.actions[1];
        let s2 = ax.scale(f, a).add(f, &ay.scale(f, b));
        let s1 = ax.scale(f, c).add(f, &ay.scale(f, d));
        let top = m.dim / 2;
        if s1.rank(f) != top {
            return Ok(false);
        }
        let rad = Matrix::hstack(&[ax, ay]);
        let rad_basis = rad.column_space_basis(f);
        if rad_basis.len() != top {
            return Ok(false);
        }
        let im_s1 = Matrix::from_columns(&s1.column_space_basis(f), m.dim);
        let combined = Matrix::hstack(&[&im_s1, &Matrix::from_columns(&rad_basis, m.dim)]);
        if combined.rank(f) != top {
            return Ok(false);
        }
        // Complete im(s1) to a full basis with coordinate vectors; the
        // chosen coordinates serve as radical-quotient coordinates.
        let mut tracker = SpanTracker::new();
        for c in 0..top {
            tracker.add(f, &im_s1.col(c));
        }
        let mut quot_coords = Vec::new();
        for j in 0..m.dim {
            let mut e = vec![0; m.dim];
            e[j] = 1;
            if tracker.add(f, &e) {
                quot_coords.push(j);
            }
        }
        if quot_coords.len() != top {
            return Ok(false);
        }
        let mut full = im_s1.clone();
        let coord_cols: Vec<Vec<Fel>> = quot_coords
            .iter()
            .map(|&j| {
                let mut e = vec![0; m.dim];
                e[j] = 1;
                e
            })
            .collect();
        full = Matrix::hstack(&[&full, &Matrix::from_columns(&coord_cols, m.dim)]);
        let Some(full_inv) = full.inverse(f) else { return Ok(false) };
        let qcoord = |w: &[Fel]| -> Vec<Fel> {
            let t = full_inv.mul_vec(f, w);
            t[top..].to_vec()
        };
        // Transfer operator on the quotient: Tbar·q = class of s1⁻¹·s2·q.
        let mut tbar = Matrix::zeros(top, top);
        for (col, &j) in quot_coords.iter().enumerate() {
            let rhs = s2.col(j);
            let Some(x) = s1.solve(f, &rhs) else { return Ok(false) };
            for (r, v) in qcoord(&x).into_iter().enumerate() {
                tbar.set(r, col, v);
            }
        }
        if !tbar.pow(f, top as u64).is_zero() {
            return Ok(false);
        }
        let chains = nilpotent_chains(f, &tbar)?;
        let lift = |q: &[Fel]| -> Vec<Fel> {
            let mut w = vec![0; m.dim];
            for (k, &j) in quot_coords.iter().enumerate() {
                w[j] = q[k];
            }
            w
        };
        let mut new_parts = Vec::new();
        for chain in chains {
            let n = chain.len();
            // Bottom vectors, head down: s1·b_{k-1} = s2·b_k.
            let mut bottoms = vec![Vec::new(); n];
            bottoms[n - 1] = lift(&chain[n - 1]);
            for k in (0..n - 1).rev() {
                let rhs = s2.mul_vec(f, &bottoms[k + 1]);
                let Some(x) = s1.solve(f, &rhs) else { return Ok(false) };
                bottoms[k] = x;
            }
            let tops: Vec<Vec<Fel>> =
                bottoms.iter().map(|v| s1.mul_vec(f, v)).collect();
            let cols: Vec<Vec<Fel>> = tops.into_iter().chain(bottoms).collect();
            let basis = Matrix::from_columns(&cols, m.dim);
            let Ok(sub) = restrict_to_subspace(m, &basis) else { return Ok(false) };
            let model = kronecker_module(alg, n, (a, b), None)?;
            if sub != model {
                return Ok(false);
            }
            new_parts.push((format!("V{}@{pt}", 2 * n), model, embed.mul(f, &basis)));
        }
        for (label, model, basis) in new_parts {
            self.push(label, model, basis, true);
        }
        Ok(true)
    }

    /// Generic route: search the endomorphism ring for a Fitting split;
    /// exhaustively certify indecomposability when the ring is small.
    fn endomorphism_route(&mut self, m: Module, embed: Matrix) -> Result<(), NoblerError> {
        let f = m.algebra.field.clone();
        if m.dim > END_CAP {
            let label = format!("UNRECOGNIZED(dim={})", m.dim);
            self.push(label, m, embed, false);
            return Ok(());
        }
        let ends = hom_space(&m, &m)?;
        let mut recurse_on: Option<(Module, Matrix, Module, Matrix)> = None;
        if ends.len() > 1 {
            for e in &ends {
                if let Some(split) = fitting_split(&m, e)? {
                    recurse_on = Some(split);
                    break;
                }
            }
            if recurse_on.is_none() {
                for _ in 0..RANDOM_TRIES {
                    let e = random_combination(&f, &ends, &mut self.rng);
                    if let Some(split) = fitting_split(&m, &e)? {
                        recurse_on = Some(split);
                        break;
                    }
                }
            }
            if recurse_on.is_none() {
                if let Some(total) = exhaustive_budget(&f, ends.len()) {
                    for idx in 1..total {
                        let e = indexed_combination(&f, &ends, idx);
                        if e.rank(&f) == m.dim {
                            continue;
                        }
                        if let Some(split) = fitting_split(&m, &e)? {
                            recurse_on = Some(split);
                            break;
                        }
                    }
                }
            }
        }
        if let Some((m_im, b_im, m_ker, b_ker)) = recurse_on {
            let e_im = embed.mul(&f, &b_im);
            let e_ker = embed.mul(&f, &b_ker);
            self.split(m_im, e_im)?;
            self.split(m_ker, e_ker)?;
            return Ok(());
        }
        // No split found: treat as indecomposable.
        let trivial = m.dim == 1 && m.actions.iter().all(|a| a.is_zero());
        if trivial {
            self.push("k".into(), m, embed, true);
        } else {
            let label = format!("UNRECOGNIZED(dim={})", m.dim);
            self.push(label, m, embed, false);
        }
        Ok(())
    }
}

fn first_nonzero(m: &Matrix) -> Option<(usize, usize, Fel)> {
    for i in 0..m.rows {
        for j in 0..m.cols {
            let v = m.get(i, j);
            if v != 0 {
                return Some((i, j, v));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TruncatedAlgebra;
    use crate::hopf::catalog_entry;
    use crate::modrep::{direct_sum, tensor_module};
    use std::sync::Arc;

    fn algebra(p: u16, orders: Vec<u32>) -> Arc<TruncatedAlgebra> {
        let f = Arc::new(FiniteField::new(p, 1).unwrap());
        TruncatedAlgebra::new(f, orders).unwrap()
    }

    fn scramble(m: &Module, seed: u64) -> Module {
        let f = &m.algebra.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut t = Matrix::zeros(m.dim, m.dim);
            for i in 0..m.dim {
                for j in 0..m.dim {
                    t.set(i, j, rng.gen_range(0..f.q));
                }
            }
            if t.inverse(f).is_some() {
                return m.conjugate(&t).unwrap();
            }
        }
    }

    #[test]
    fn hom_dimensions_cyclic_and_kronecker() {
        let a = algebra(3, vec![1]);
        let j1 = jordan_module(&a, 1).unwrap();
        for i in 1..=3 {
            let ji = jordan_module(&a, i).unwrap();
            assert_eq!(hom_space(&j1, &ji).unwrap().len(), 1);
            assert_eq!(hom_space(&ji, &ji).unwrap().len(), i);
        }
        let k = algebra(2, vec![1, 1]);
        let v2 = kronecker_module(&k, 1, (1, 0), None).unwrap();
        assert_eq!(hom_space(&v2, &v2).unwrap().len(), 2);
    }

    #[test]
    fn hom_is_additive() {
        let a = algebra(2, vec![2]);
        let j2 = jordan_module(&a, 2).unwrap();
        let j3 = jordan_module(&a, 3).unwrap();
        let sum = direct_sum(&[&j2, &j3]).unwrap();
        let lhs = hom_space(&sum, &j3).unwrap().len();
        let rhs =
            hom_space(&j2, &j3).unwrap().len() + hom_space(&j3, &j3).unwrap().len();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn iso_distinguishes_two_v2_from_v4() {
        let k = algebra(2, vec![1, 1]);
        let v2 = kronecker_module(&k, 1, (1, 0), None).unwrap();
        let v4 = kronecker_module(&k, 2, (1, 0), None).unwrap();
        let twice = direct_sum(&[&v2, &v2]).unwrap();
        assert!(matches!(is_isomorphic(&twice, &v4).unwrap(), IsoResult::No));
    }

    #[test]
    fn iso_ignores_auxiliary_direction() {
        let k = algebra(3, vec![1, 1]);
        let m1 = kronecker_module(&k, 2, (1, 1), Some((1, 0))).unwrap();
        let m2 = kronecker_module(&k, 2, (1, 1), Some((0, 1))).unwrap();
        let IsoResult::Yes(c) = is_isomorphic(&m1, &m2).unwrap() else {
            panic!("expected an isomorphism");
        };
        let f = &k.field;
        for (a1, a2) in m1.actions.iter().zip(&m2.actions) {
            assert_eq!(c.mul(f, a1), a2.mul(f, &c));
        }
    }

    #[test]
    fn tensor_of_jordan_blocks_at_p3() {
        let a = algebra(3, vec![1]);
        let h = catalog_entry(&a, "G0").unwrap();
        let j2 = jordan_module(&a, 2).unwrap();
        let prod = tensor_module(&h, &j2, &j2).unwrap();
        let expect = direct_sum(&[
            &jordan_module(&a, 1).unwrap(),
            &jordan_module(&a, 3).unwrap(),
        ])
        .unwrap();
        assert!(is_isomorphic(&prod, &expect).unwrap().is_yes());
    }

    #[test]
    fn fitting_split_cases() {
        let a = algebra(2, vec![1]);
        let j1 = jordan_module(&a, 1).unwrap();
        let j2 = jordan_module(&a, 2).unwrap();
        let m = direct_sum(&[&j1, &j2]).unwrap();
        // Projection onto the first summand.
        let mut e = Matrix::zeros(3, 3);
        e.set(0, 0, 1);
        let (mi, _, mk, _) = fitting_split(&m, &e).unwrap().unwrap();
        assert_eq!((mi.dim, mk.dim), (1, 2));
        // Nilpotent and invertible endomorphisms do not split.
        assert!(fitting_split(&m, &m.actions[0]).unwrap().is_none());
        assert!(fitting_split(&m, &Matrix::identity(3)).unwrap().is_none());
        // Non-commuting matrices are rejected.
        let mut bad = Matrix::zeros(3, 3);
        bad.set(2, 0, 1);
        assert!(fitting_split(&m, &bad).is_err());
    }

    #[test]
    fn jordan_type_examples() {
        let f = FiniteField::new(2, 1).unwrap();
        let t = crate::linalg::Matrix::block_diag(&[
            &crate::modrep::jordan_block(3),
            &crate::modrep::jordan_block(2),
            &crate::modrep::jordan_block(2),
        ]);
        assert_eq!(jordan_type(&f, &t).unwrap(), vec![3, 2, 2]);
        assert_eq!(jordan_type(&f, &Matrix::zeros(4, 4)).unwrap(), vec![1, 1, 1, 1]);
        assert!(jordan_type(&f, &Matrix::identity(2)).is_err());
    }

    #[test]
    fn decompose_cyclic_mixture() {
        let a = algebra(2, vec![3]);
        let m = direct_sum(&[
            &jordan_module(&a, 2).unwrap(),
            &jordan_module(&a, 3).unwrap(),
            &regular_module(&a),
        ])
        .unwrap();
        let m = scramble(&m, 7);
        let d = decompose(&m).unwrap();
        assert!(d.certified);
        let expect: BTreeMap<String, usize> =
            [("J2".into(), 1), ("J3".into(), 1), ("J8".into(), 1)].into();
        assert_eq!(d.summands, expect);
    }

    #[test]
    fn decompose_tensor_square_of_v2() {
        let k = algebra(2, vec![1, 1]);
        let h = catalog_entry(&k, "G0").unwrap();
        let v2 = kronecker_module(&k, 1, (1, 0), None).unwrap();
        let prod = tensor_module(&h, &v2, &v2).unwrap();
        let d = decompose(&prod).unwrap();
        assert!(d.certified);
        let expect: BTreeMap<String, usize> = [("V2@[1:0]".into(), 2)].into();
        assert_eq!(d.summands, expect);
    }

    #[test]
    fn decompose_tensor_square_of_v4() {
        let k = algebra(2, vec![1, 1]);
        let h = catalog_entry(&k, "G0").unwrap();
        let v4 = kronecker_module(&k, 2, (1, 0), None).unwrap();
        let prod = tensor_module(&h, &v4, &v4).unwrap();
        let d = decompose(&prod).unwrap();
        assert!(d.certified);
        let expect: BTreeMap<String, usize> =
            [("V4@[1:0]".into(), 2), ("P".into(), 2)].into();
        assert_eq!(d.summands, expect);
    }

    #[test]
    fn decompose_mixed_points_via_endomorphisms() {
        let k = algebra(2, vec![1, 1]);
        let v4 = kronecker_module(&k, 2, (1, 0), None).unwrap();
        let v2 = kronecker_module(&k, 1, (0, 1), None).unwrap();
        let m = scramble(&direct_sum(&[&v4, &v2]).unwrap(), 11);
        let d = decompose(&m).unwrap();
        assert!(d.certified);
        let expect: BTreeMap<String, usize> =
            [("V4@[1:0]".into(), 1), ("V2@[0:1]".into(), 1)].into();
        assert_eq!(d.summands, expect);
    }

    #[test]
    fn decompose_trivial_over_kronecker() {
        let k = algebra(2, vec![1, 1]);
        let m = Module::trivial(k);
        let d = decompose(&m).unwrap();
        assert!(d.certified);
        let expect: BTreeMap<String, usize> = [("k".into(), 1)].into();
        assert_eq!(d.summands, expect);
    }

    #[test]
    fn decompose_regular_over_kronecker_peels_free() {
        let k = algebra(3, vec![1, 1]);
        let m = scramble(&regular_module(&k), 3);
        let d = decompose(&m).unwrap();
        assert!(d.certified);
        let expect: BTreeMap<String, usize> = [("P".into(), 1)].into();
        assert_eq!(d.summands, expect);
    }
}
