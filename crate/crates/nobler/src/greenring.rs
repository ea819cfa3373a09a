//! Clebsch–Gordan tables, closed product formulas, noble-square checks,
//! correspondence verdicts, and the wild-family counterexample driver.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::TruncatedAlgebra;
use crate::aut::AugAutomorphism;
use crate::decomp::{
    decompose, is_isomorphic, jordan_type, Decomposition, IsoResult,
};
use crate::error::NoblerError;
use crate::field::FiniteField;
use crate::geometry::{noble_points, ProjPoint};
use crate::hopf::{twist_hopf, HopfStructure};
use crate::modrep::{
    direct_sum, induce_trivial, jordan_module, kronecker_module, restrict_module,
    tensor_module, twist_module, AlgebraMorphism, Module,
};
use crate::par::{par_map, Parallelism};

/// Tensor-product coefficient table over the indecomposable labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenTable {
    pub label: String,
    pub bound: usize,
    /// (i, j) with i ≤ j → label → multiplicity.
    pub cells: BTreeMap<(usize, usize), BTreeMap<String, usize>>,
}

impl GreenTable {
    pub fn to_json(&self) -> Value {
        json!({
            "structure": self.label,
            "bound": self.bound,
            "cells": self
                .cells
                .iter()
                .map(|((i, j), coeffs)| {
                    json!({ "i": i, "j": j, "coefficients": coeffs })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut labels: BTreeSet<&str> = BTreeSet::new();
        for coeffs in self.cells.values() {
            labels.extend(coeffs.keys().map(String::as_str));
        }
        let mut out = String::from("i,j");
        for l in &labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for ((i, j), coeffs) in &self.cells {
            out.push_str(&format!("{i},{j}"));
            for l in &labels {
                let c = coeffs.get(*l).copied().unwrap_or(0);
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Closed-form coefficients of J_i ⊗ J_j over k[x]/x^p, as the map
/// ℓ → multiplicity.
pub fn green_formula(
    p: u16,
    i: usize,
    j: usize,
) -> Result<BTreeMap<usize, usize>, NoblerError> {
    let p = p as usize;
    if !(1 <= i && i <= j && j <= p) {
        return Err(NoblerError::IndexOutOfRange(j as u64));
    }
    let mut out = BTreeMap::new();
    if p < i + j {
        out.insert(p, i + j - p);
        for m in 0..p.saturating_sub(j) {
            *out.entry(j - i + 1 + 2 * m).or_insert(0) += 1;
        }
    } else {
        for m in 0..i {
            *out.entry(j - i + 1 + 2 * m).or_insert(0) += 1;
        }
    }
    out.retain(|_, c| *c > 0);
    Ok(out)
}

fn certified_decompose(m: &Module) -> Result<Decomposition, NoblerError> {
    let d = decompose(m)?;
    if !d.certified {
        return Err(NoblerError::Uncertified(format!(
            "decomposition of a {}-dimensional module",
            m.dim
        )));
    }
    Ok(d)
}

/// Full tensor table J_i ⊗ J_j for 1 ≤ i ≤ j ≤ bound over a cyclic
/// algebra, by brute tensor-and-decompose.
pub fn cg_table(h: &HopfStructure, bound: usize) -> Result<GreenTable, NoblerError> {
    cg_table_with(h, bound, Parallelism::default())
}

pub fn cg_table_with(
    h: &HopfStructure,
    bound: usize,
    mode: Parallelism,
) -> Result<GreenTable, NoblerError> {
    let alg = &h.algebra;
    if alg.num_gens() != 1 {
        return Err(NoblerError::UnsupportedShape(
            "tensor tables are indexed by Jordan blocks of a cyclic algebra".into(),
        ));
    }
    if bound > alg.dim {
        return Err(NoblerError::IndexOutOfRange(bound as u64));
    }
    let mut pairs = Vec::new();
    for i in 1..=bound {
        for j in i..=bound {
            pairs.push((i, j));
        }
    }
    let results = par_map(mode, pairs, |(i, j)| -> Result<_, NoblerError> {
        let ji = jordan_module(alg, i)?;
        let jj = jordan_module(alg, j)?;
        let prod = tensor_module(h, &ji, &jj)?;
        let d = certified_decompose(&prod)?;
        let mut total = 0;
        for (label, c) in &d.summands {
            let ell: usize = label
                .strip_prefix('J')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    NoblerError::Uncertified(format!("unexpected summand {label}"))
                })?;
            total += ell * c;
        }
        if total != i * j {
            return Err(NoblerError::Uncertified(format!(
                "dimension bookkeeping failed at ({i},{j})"
            )));
        }
        Ok(((i, j), d.summands))
    });
    let mut cells = BTreeMap::new();
    for r in results {
        let (key, coeffs) = r?;
        cells.insert(key, coeffs);
    }
    Ok(GreenTable { label: h.label.clone(), bound, cells })
}

/// Cellwise equality of the two structures' tensor tables.
pub fn table_equal(
    h1: &HopfStructure,
    h2: &HopfStructure,
    bound: usize,
) -> Result<bool, NoblerError> {
    let t1 = cg_table(h1, bound)?;
    let t2 = cg_table(h2, bound)?;
    Ok(t1.cells == t2.cells)
}

/// Certified decomposition of V_{2n}(pt) ⊗ V_{2m}(pt), with the
/// projective-multiplicity and dimension laws enforced.
pub fn kronecker_product_decomp(
    h: &HopfStructure,
    n: usize,
    m: usize,
    pt: &ProjPoint,
) -> Result<Decomposition, NoblerError> {
    if n > m {
        return Err(NoblerError::IndexOutOfRange(n as u64));
    }
    let alg = &h.algebra;
    let (a, b) = pt
        .coords()
        .ok_or_else(|| NoblerError::BadPoint("a projective-line point is required".into()))?;
    let vn = kronecker_module(alg, n, (a, b), None)?;
    let vm = kronecker_module(alg, m, (a, b), None)?;
    let prod = tensor_module(h, &vn, &vm)?;
    let d = certified_decompose(&prod)?;
    let projectives = d.summands.get("P").copied().unwrap_or(0);
    if projectives != m * n - n {
        return Err(NoblerError::Uncertified(format!(
            "projective multiplicity {projectives} differs from {}",
            m * n - n
        )));
    }
    let nonproj_dim: usize = d
        .parts
        .iter()
        .filter(|p| p.label != "P")
        .map(|p| p.dim)
        .sum();
    if nonproj_dim != 4 * n {
        return Err(NoblerError::Uncertified(format!(
            "non-projective dimension {nonproj_dim} differs from {}",
            4 * n
        )));
    }
    Ok(d)
}

fn square_shapes(
    pt: &ProjPoint,
    n: usize,
) -> (BTreeMap<String, usize>, BTreeMap<String, usize>) {
    let mut plain = BTreeMap::new();
    plain.insert(format!("V{}@{pt}", 2 * n), 2);
    if n * n > n {
        plain.insert("P".into(), n * n - n);
    }
    let mut split = BTreeMap::new();
    if n > 1 {
        split.insert(format!("V{}@{pt}", 2 * (n - 1)), 1);
    }
    split.insert(format!("V{}@{pt}", 2 * (n + 1)), 1);
    if n * n > n {
        split.insert("P".into(), n * n - n);
    }
    (plain, split)
}

/// The set {n ≤ nmax : the square of V_{2n}(pt) splits as
/// V_{2(n−1)} ⊕ V_{2(n+1)} ⊕ projectives}. Every square must match one
/// of the two admissible shapes, and the set may not contain two
/// consecutive numbers.
pub fn n_set(
    h: &HopfStructure,
    pt: &ProjPoint,
    nmax: usize,
) -> Result<BTreeSet<usize>, NoblerError> {
    let mut out = BTreeSet::new();
    for n in 1..=nmax {
        let (a, b) = pt
            .coords()
            .ok_or_else(|| NoblerError::BadPoint("a projective-line point is required".into()))?;
        let v = kronecker_module(&h.algebra, n, (a, b), None)?;
        let prod = tensor_module(h, &v, &v)?;
        let d = certified_decompose(&prod)?;
        let (plain, split) = square_shapes(pt, n);
        if d.summands == plain {
            continue;
        }
        if d.summands == split {
            out.insert(n);
            continue;
        }
        return Err(NoblerError::Uncertified(format!(
            "square of V{} at {pt} matches neither admissible shape: {:?}",
            2 * n,
            d.summands
        )));
    }
    for &n in &out {
        if out.contains(&(n + 1)) {
            return Err(NoblerError::Uncertified(format!(
                "consecutive split squares at {n} and {}",
                n + 1
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CorrespondenceCell {
    pub point: String,
    pub n: usize,
    pub m: usize,
    pub verdict: String,
    pub left: BTreeMap<String, usize>,
    pub right: BTreeMap<String, usize>,
}

#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub left_label: String,
    pub right_label: String,
    pub nmax: usize,
    pub common_noble: Vec<String>,
    pub cells: Vec<CorrespondenceCell>,
    pub overall: bool,
}

impl CorrespondenceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "left": self.left_label,
            "right": self.right_label,
            "nmax": self.nmax,
            "common_noble_points": self.common_noble,
            "cells": self
                .cells
                .iter()
                .map(|c| {
                    json!({
                        "point": c.point,
                        "n": c.n,
                        "m": c.m,
                        "verdict": c.verdict,
                        "left": c.left,
                        "right": c.right,
                    })
                })
                .collect::<Vec<_>>(),
            "overall": self.overall,
        })
    }
}

/// Compare the two structures' tensor products of point modules at every
/// common noble point, up to half-dimension nmax. Cyclic algebras
/// compare the full Jordan-block tables instead.
pub fn noble_correspondence_check(
    h1: &HopfStructure,
    h2: &HopfStructure,
    nmax: usize,
) -> Result<CorrespondenceReport, NoblerError> {
    if !h1.algebra.same_as(&h2.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let mut cells = Vec::new();
    let mut common = Vec::new();
    if h1.algebra.num_gens() == 1 {
        let bound = h1.algebra.dim.min(nmax.max(1));
        let t1 = cg_table(h1, bound)?;
        let t2 = cg_table(h2, bound)?;
        common.push(ProjPoint::Singleton.to_string());
        for ((i, j), left) in &t1.cells {
            let right = t2.cells[&(*i, *j)].clone();
            let verdict = if *left == right { "agree" } else { "disagree" };
            cells.push(CorrespondenceCell {
                point: ProjPoint::Singleton.to_string(),
                n: *i,
                m: *j,
                verdict: verdict.into(),
                left: left.clone(),
                right,
            });
        }
    } else {
        let nobles1 = noble_points(h1)?;
        let nobles2 = noble_points(h2)?;
        let mut jobs = Vec::new();
        for pt in nobles1.intersection(&nobles2) {
            common.push(pt.to_string());
            for n in 1..=nmax {
                for m in n..=nmax {
                    jobs.push((*pt, n, m));
                }
            }
        }
        let results = par_map(Parallelism::default(), jobs, |(pt, n, m)| {
            correspondence_cell(h1, h2, &pt, n, m)
        });
        for r in results {
            cells.push(r?);
        }
    }
    let overall = !cells.is_empty() && cells.iter().all(|c| c.verdict == "agree");
    Ok(CorrespondenceReport {
        left_label: h1.label.clone(),
        right_label: h2.label.clone(),
        nmax,
        common_noble: common,
        cells,
        overall,
    })
}

fn correspondence_cell(
    h1: &HopfStructure,
    h2: &HopfStructure,
    pt: &ProjPoint,
    n: usize,
    m: usize,
) -> Result<CorrespondenceCell, NoblerError> {
    let alg = &h1.algebra;
    let (a, b) = pt
        .coords()
        .ok_or_else(|| NoblerError::BadPoint("a projective-line point is required".into()))?;
    let vn = kronecker_module(alg, n, (a, b), None)?;
    let vm = kronecker_module(alg, m, (a, b), None)?;
    let d1 = decompose(&tensor_module(h1, &vn, &vm)?)?;
    let d2 = decompose(&tensor_module(h2, &vn, &vm)?)?;
    let verdict = if !d1.certified || !d2.certified {
        "inconclusive"
    } else if d1.summands == d2.summands {
        "agree"
    } else {
        "disagree"
    };
    Ok(CorrespondenceCell {
        point: pt.to_string(),
        n,
        m,
        verdict: verdict.into(),
        left: d1.summands,
        right: d2.summands,
    })
}

/// The wild families used to refute Property PA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaCase {
    /// p = 2, three lines: A = k[x,y,z]/(x²,y²,z²), φ(x) = x + yz.
    N1Cubed,
    /// Two lines of given orders: A = k[x,y]/(x^{p^n}, y^{p^m}),
    /// φ(x) = x + y^c for the smallest power c ≥ 2 whose restriction
    /// splits unevenly (c = 2 for odd p, odd c for p = 2).
    Lines { p: u16, n: u32, m: u32 },
}

impl PaCase {
    pub fn parse(s: &str, p: u16) -> Result<PaCase, NoblerError> {
        match s {
            "n1n1n1" => {
                if p != 2 {
                    return Err(NoblerError::Parse(
                        "the three-line case requires p = 2".into(),
                    ));
                }
                Ok(PaCase::N1Cubed)
            }
            other => {
                let inner = other
                    .strip_prefix('n')
                    .and_then(|r| r.split_once('n'))
                    .ok_or_else(|| {
                        NoblerError::Parse(format!("unknown wild case {other:?}"))
                    })?;
                let n: u32 = inner.0.parse().map_err(|_| {
                    NoblerError::Parse(format!("unknown wild case {other:?}"))
                })?;
                let m: u32 = inner.1.parse().map_err(|_| {
                    NoblerError::Parse(format!("unknown wild case {other:?}"))
                })?;
                Ok(PaCase::Lines { p, n, m })
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            PaCase::N1Cubed => "n1n1n1(p=2)".into(),
            PaCase::Lines { p, n, m } => format!("n{n}n{m}(p={p})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PaReport {
    pub case_label: String,
    pub index: usize,
    /// (a) the untwisted square is index-many copies of the induced module.
    pub base_square_matches: bool,
    /// (b) Jordan type of the twisted module restricted to the chosen line.
    pub restriction_type: Vec<usize>,
    /// Whether that type is n·J_{p^s} (it must not be, for a counterexample).
    pub restriction_uniform: bool,
    /// (c) whether the twisted square still matches; None if undecided.
    pub twisted_square_matches: Option<bool>,
    pub counterexample: bool,
    pub inconclusive: bool,
}

impl PaReport {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case_label,
            "index": self.index,
            "base_square_matches": self.base_square_matches,
            "restriction_jordan_type": self.restriction_type,
            "restriction_uniform": self.restriction_uniform,
            "twisted_square_matches": self.twisted_square_matches,
            "verdict": if self.counterexample {
                "NOT in noble correspondence"
            } else if self.inconclusive {
                "inconclusive"
            } else {
                "no counterexample detected"
            },
        })
    }
}

fn uniform_type(p: u16, blocks: &[usize]) -> bool {
    let Some(&first) = blocks.first() else { return true };
    if !blocks.iter().all(|&b| b == first) {
        return false;
    }
    let mut s = first;
    while s % p as usize == 0 {
        s /= p as usize;
    }
    s == 1
}

/// Run one wild-family counterexample: build the algebra, the induced
/// module V over the first generator, and the listed twist φ; then check
/// the three certificates of the non-correspondence argument.
pub fn pa_counterexample(case: &PaCase) -> Result<PaReport, NoblerError> {
    let (p, orders) = match case {
        PaCase::N1Cubed => (2, vec![1, 1, 1]),
        PaCase::Lines { p, n, m } => (*p, vec![*n, *m]),
    };
    let field = Arc::new(FiniteField::new(p, 1)?);
    let alg = TruncatedAlgebra::new(field.clone(), orders.clone())?;
    let phi_images = match case {
        PaCase::N1Cubed => {
            let x = alg.gen(0);
            let y = alg.gen(1);
            let z = alg.gen(2);
            vec![alg.add(&x, &alg.mul(&y, &z)), y, z]
        }
        PaCase::Lines { p, n, m } => {
            // y^c must split k[y]/y^{p^m} into unequal Jordan blocks under
            // the twist; for p = 2 an even power never does, so take the
            // smallest admissible odd exponent instead of 2.
            let c = if *p == 2 && m > n {
                (1u64 << (m - n)) + 1
            } else {
                2
            };
            let x = alg.gen(0);
            let y = alg.gen(1);
            let mut g = alg.one();
            for _ in 0..c {
                g = alg.mul(&g, &y);
            }
            vec![alg.add(&x, &g), y]
        }
    };
    let phi = AugAutomorphism::new(alg.clone(), phi_images)?;
    let g0 = HopfStructure::primitive(alg.clone(), "G0");
    let v = induce_trivial(&alg, 0)?;
    let index = v.dim;
    let copies: Vec<&Module> = vec![&v; index];
    let target = direct_sum(&copies)?;

    let base_square = tensor_module(&g0, &v, &v)?;
    let (base_square_matches, mut inconclusive) =
        match is_isomorphic(&base_square, &target)? {
            IsoResult::Yes(_) => (true, false),
            IsoResult::No => (false, false),
            IsoResult::Inconclusive => (false, true),
        };

    // Restriction of the twisted module to the line of the first generator.
    let line = TruncatedAlgebra::new(field.clone(), vec![orders[0]])?;
    let to_x = AlgebraMorphism::new(line, alg.clone(), vec![alg.gen(0)])?;
    let twisted = twist_module(&phi, &v)?;
    let restricted = restrict_module(&to_x, &twisted)?;
    let restriction_type = jordan_type(&field, &restricted.actions[0])?;
    let restriction_uniform = uniform_type(p, &restriction_type);

    // Twisted square: separate by restriction Jordan types first, full
    // isomorphism search second.
    let g0_phi = twist_hopf(&g0, &phi, "phi")?;
    let twisted_square = tensor_module(&g0_phi, &v, &v)?;
    let jt_left = jordan_type(&field, &restrict_module(&to_x, &twisted_square)?.actions[0])?;
    let jt_right = jordan_type(&field, &restrict_module(&to_x, &target)?.actions[0])?;
    let twisted_square_matches = if jt_left != jt_right {
        Some(false)
    } else {
        match is_isomorphic(&twisted_square, &target)? {
            IsoResult::Yes(_) => Some(true),
            IsoResult::No => Some(false),
            IsoResult::Inconclusive => None,
        }
    };
    if twisted_square_matches.is_none() {
        inconclusive = true;
    }
    let counterexample = base_square_matches
        && !restriction_uniform
        && twisted_square_matches == Some(false);
    Ok(PaReport {
        case_label: case.label(),
        index,
        base_square_matches,
        restriction_type,
        restriction_uniform,
        twisted_square_matches,
        counterexample,
        inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::catalog;

    fn algebra(p: u16, orders: Vec<u32>) -> Arc<TruncatedAlgebra> {
        let f = Arc::new(FiniteField::new(p, 1).unwrap());
        TruncatedAlgebra::new(f, orders).unwrap()
    }

    #[test]
    fn green_formula_examples() {
        let t: BTreeMap<usize, usize> = [(2, 2)].into();
        assert_eq!(green_formula(2, 2, 2).unwrap(), t);
        let t: BTreeMap<usize, usize> = [(1, 1), (3, 1)].into();
        assert_eq!(green_formula(3, 2, 2).unwrap(), t);
        let t: BTreeMap<usize, usize> = [(2, 1), (4, 1)].into();
        assert_eq!(green_formula(5, 2, 3).unwrap(), t);
        assert!(green_formula(3, 2, 4).is_err());
        assert!(green_formula(3, 0, 1).is_err());
    }

    #[test]
    fn formula_matches_brute_force_tables() {
        for p in [2u16, 3] {
            let a = algebra(p, vec![1]);
            for h in catalog(&a).unwrap() {
                let table = cg_table(&h, p as usize).unwrap();
                for i in 1..=p as usize {
                    for j in i..=p as usize {
                        let formula: BTreeMap<String, usize> = green_formula(p, i, j)
                            .unwrap()
                            .into_iter()
                            .map(|(l, c)| (format!("J{l}"), c))
                            .collect();
                        assert_eq!(table.cells[&(i, j)], formula, "p={p} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn finite_type_tables_are_invariant() {
        let a = algebra(2, vec![2]);
        let structures = catalog(&a).unwrap();
        assert_eq!(structures.len(), 3);
        for h in &structures[1..] {
            assert!(table_equal(&structures[0], h, 4).unwrap());
        }
    }

    #[test]
    fn kronecker_products_at_noble_points() {
        let a = algebra(2, vec![1, 1]);
        let g0 = crate::hopf::catalog_entry(&a, "G0").unwrap();
        let pt: ProjPoint = "[1:0]".parse().unwrap();
        let d = kronecker_product_decomp(&g0, 1, 1, &pt).unwrap();
        let expect: BTreeMap<String, usize> = [("V2@[1:0]".into(), 2)].into();
        assert_eq!(d.summands, expect);
        let d = kronecker_product_decomp(&g0, 1, 3, &pt).unwrap();
        let expect: BTreeMap<String, usize> =
            [("V2@[1:0]".into(), 2), ("P".into(), 2)].into();
        assert_eq!(d.summands, expect);
        let g3 = crate::hopf::catalog_entry(&a, "G3").unwrap();
        let pt: ProjPoint = "[1:1]".parse().unwrap();
        let d = kronecker_product_decomp(&g3, 2, 2, &pt).unwrap();
        let expect: BTreeMap<String, usize> =
            [("V4@[1:1]".into(), 2), ("P".into(), 2)].into();
        assert_eq!(d.summands, expect);
    }

    #[test]
    fn n_set_empty_at_noble_points_of_g0() {
        let a = algebra(2, vec![1, 1]);
        let g0 = crate::hopf::catalog_entry(&a, "G0").unwrap();
        for pt in crate::geometry::proj_line(&a.field) {
            assert!(n_set(&g0, &pt, 3).unwrap().is_empty(), "{pt}");
        }
    }

    #[test]
    fn correspondence_passes_for_catalog_pairs() {
        let a = algebra(2, vec![1, 1]);
        let g0 = crate::hopf::catalog_entry(&a, "G0").unwrap();
        let g1 = crate::hopf::catalog_entry(&a, "G1").unwrap();
        let g3 = crate::hopf::catalog_entry(&a, "G3").unwrap();
        let r = noble_correspondence_check(&g0, &g1, 2).unwrap();
        assert!(r.overall);
        assert_eq!(r.common_noble, vec!["[1:0]".to_string()]);
        let r = noble_correspondence_check(&g0, &g3, 2).unwrap();
        assert!(r.overall);
        assert_eq!(r.common_noble.len(), 3);
    }

    #[test]
    fn correspondence_on_cyclic_compares_tables() {
        let a = algebra(2, vec![2]);
        let g0 = crate::hopf::catalog_entry(&a, "G0").unwrap();
        let g2 = crate::hopf::catalog_entry(&a, "G2").unwrap();
        let r = noble_correspondence_check(&g0, &g2, 4).unwrap();
        assert!(r.overall);
    }

    #[test]
    fn wild_three_line_counterexample() {
        let r = pa_counterexample(&PaCase::N1Cubed).unwrap();
        assert_eq!(r.index, 4);
        assert!(r.base_square_matches);
        assert_eq!(r.restriction_type, vec![2, 1, 1]);
        assert!(!r.restriction_uniform);
        assert_eq!(r.twisted_square_matches, Some(false));
        assert!(r.counterexample);
        assert!(!r.inconclusive);
    }

    #[test]
    fn wild_two_line_counterexample_p3() {
        let r = pa_counterexample(&PaCase::Lines { p: 3, n: 1, m: 1 }).unwrap();
        assert_eq!(r.index, 3);
        assert!(r.base_square_matches);
        assert_eq!(r.restriction_type, vec![2, 1]);
        assert!(r.counterexample);
    }

    #[test]
    fn pa_case_parsing() {
        assert_eq!(PaCase::parse("n1n1n1", 2).unwrap(), PaCase::N1Cubed);
        assert!(PaCase::parse("n1n1n1", 3).is_err());
        assert_eq!(
            PaCase::parse("n1n2", 2).unwrap(),
            PaCase::Lines { p: 2, n: 1, m: 2 }
        );
        assert!(PaCase::parse("bogus", 2).is_err());
    }

    #[test]
    fn uniform_type_detection() {
        assert!(uniform_type(2, &[]));
        assert!(uniform_type(2, &[1, 1, 1]));
        assert!(uniform_type(2, &[4, 4]));
        assert!(!uniform_type(2, &[2, 1]));
        assert!(!uniform_type(2, &[3, 3]));
        assert!(uniform_type(3, &[3, 3]));
    }
}
