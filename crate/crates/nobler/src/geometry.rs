//! π-points, the flatness rank criterion, module supports, noble points
//! of a Hopf structure, and the automorphism action on points.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{AlgElement, TruncatedAlgebra};
use crate::aut::AugAutomorphism;
use crate::error::NoblerError;
use crate::field::{Fel, FiniteField};
use crate::hopf::HopfStructure;
use crate::linalg::Matrix;
use crate::modrep::{restrict_module, AlgebraMorphism, Module};

/// Cap on radical-element scans (noble point enumeration).
const ENUM_CAP: u64 = 1 << 20;

/// A closed point of the support variety over the working field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjPoint {
    /// Normalized homogeneous coordinates on P¹ (first nonzero is 1).
    Homog(Fel, Fel),
    /// The unique point for a cyclic algebra.
    Singleton,
    /// Coordinate direction x_i (partial support for general shapes).
    Direction(usize),
}

impl ProjPoint {
    pub fn homog(f: &FiniteField, a: Fel, b: Fel) -> Result<ProjPoint, NoblerError> {
        if a == 0 && b == 0 {
            return Err(NoblerError::BadPoint("[0:0] is not projective".into()));
        }
        Ok(if a != 0 {
            ProjPoint::Homog(1, f.mul(b, f.inv(a)))
        } else {
            ProjPoint::Homog(0, 1)
        })
    }

    pub fn coords(&self) -> Option<(Fel, Fel)> {
        match self {
            ProjPoint::Homog(a, b) => Some((*a, *b)),
            _ => None,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Homog(a, b) => write!(w, "[{a}:{b}]"),
            ProjPoint::Singleton => write!(w, "[*]"),
            ProjPoint::Direction(i) => write!(w, "dir({i})"),
        }
    }
}

impl FromStr for ProjPoint {
    type Err = NoblerError;

    fn from_str(s: &str) -> Result<ProjPoint, NoblerError> {
        let bad = || NoblerError::BadPoint(format!("cannot parse point {s:?}"));
        if s == "[*]" {
            return Ok(ProjPoint::Singleton);
        }
        if let Some(inner) = s.strip_prefix("dir(").and_then(|r| r.strip_suffix(')')) {
            return Ok(ProjPoint::Direction(inner.parse().map_err(|_| bad())?));
        }
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(':').ok_or_else(bad)?;
        let a: Fel = a.trim().parse().map_err(|_| bad())?;
        let b: Fel = b.trim().parse().map_err(|_| bad())?;
        if a == 0 && b == 0 {
            return Err(bad());
        }
        // Stored points are normalized; accept only normalized input.
        if (a != 0 && a != 1) || (a == 0 && b != 1) {
            return Err(NoblerError::BadPoint(format!(
                "point {s:?} is not normalized (first nonzero coordinate must be 1)"
            )));
        }
        Ok(ProjPoint::Homog(a, b))
    }
}

/// The rational points of P¹ over the given field, in a fixed order:
/// [1:b] for each b, then [0:1].
pub fn proj_line(f: &FiniteField) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = f.elements().map(|b| ProjPoint::Homog(1, b)).collect();
    pts.push(ProjPoint::Homog(0, 1));
    pts
}

#[derive(Debug, Clone)]
pub struct PiPoint {
    pub element: AlgElement,
    pub morphism: AlgebraMorphism,
}

/// Rank that left multiplication by a flat p-nilpotent element must have
/// on a free module of the given dimension.
fn flat_rank(dim: usize, p: u16) -> usize {
    dim * (p as usize - 1) / p as usize
}

/// Validate u as a π-point: u ≠ 0, u^p = 0, and A free over k[u]
/// (rank criterion).
pub fn pi_point_from_element(
    algebra: &Arc<TruncatedAlgebra>,
    u: &AlgElement,
) -> Result<PiPoint, NoblerError> {
    let p = algebra.field.p;
    if algebra.is_zero(u) {
        return Err(NoblerError::BadPiPoint("zero element".into()));
    }
    if !algebra.is_zero(&algebra.pow(u, p as u64)) {
        return Err(NoblerError::BadPiPoint("element is not p-nilpotent".into()));
    }
    let mult = mult_matrix(algebra, u);
    let need = flat_rank(algebra.dim, p);
    let got = mult.rank(&algebra.field);
    if got != need {
        return Err(NoblerError::BadPiPoint(format!(
            "flatness fails: multiplication rank {got}, expected {need}"
        )));
    }
    let source = TruncatedAlgebra::new(algebra.field.clone(), vec![1])?;
    let morphism = AlgebraMorphism::new(source, algebra.clone(), vec![u.clone()])?;
    Ok(PiPoint { element: u.clone(), morphism })
}

/// Left-multiplication matrix of an element on the algebra.
pub fn mult_matrix(algebra: &TruncatedAlgebra, u: &AlgElement) -> Matrix {
    let f = &algebra.field;
    let d = algebra.dim;
    let mut m = Matrix::zeros(d, d);
    for (i, &c) in u.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for j in 0..d as u32 {
            if let Some(t) = algebra.mon_mul(i as u32, j) {
                m.set(t as usize, j as usize, f.add(m.get(t as usize, j as usize), c));
            }
        }
    }
    m
}

fn is_kronecker(algebra: &TruncatedAlgebra) -> bool {
    algebra.num_gens() == 2 && algebra.orders == [1, 1]
}

/// The point a π-point sits over: linear-term extraction for the
/// Kronecker algebra, the singleton for cyclic algebras.
pub fn point_of(
    algebra: &Arc<TruncatedAlgebra>,
    pi: &PiPoint,
) -> Result<ProjPoint, NoblerError> {
    if algebra.num_gens() == 1 {
        return Ok(ProjPoint::Singleton);
    }
    if is_kronecker(algebra) {
        let lin = algebra.linear_part(&pi.element);
        return ProjPoint::homog(&algebra.field, lin[0], lin[1]).map_err(|_| {
            NoblerError::BadPiPoint("flat element with zero linear part".into())
        });
    }
    // General shapes: only coordinate directions are named points.
    let lin = algebra.linear_part(&pi.element);
    let nonzero: Vec<usize> = (0..lin.len()).filter(|&i| lin[i] != 0).collect();
    if let [i] = nonzero[..] {
        return Ok(ProjPoint::Direction(i));
    }
    Err(NoblerError::UnsupportedShape(
        "only coordinate-direction points are classified for this shape".into(),
    ))
}

/// The canonical π-point representative over a point.
pub fn canonical_pi_point(
    algebra: &Arc<TruncatedAlgebra>,
    pt: &ProjPoint,
) -> Result<PiPoint, NoblerError> {
    let u = match pt {
        ProjPoint::Homog(a, b) => {
            if !is_kronecker(algebra) {
                return Err(NoblerError::UnsupportedShape(
                    "homogeneous points require the rank-two algebra".into(),
                ));
            }
            let x = algebra.gen(0);
            let y = algebra.gen(1);
            algebra.add(&algebra.scale(&x, *a), &algebra.scale(&y, *b))
        }
        ProjPoint::Singleton => {
            if algebra.num_gens() != 1 {
                return Err(NoblerError::UnsupportedShape(
                    "the singleton point requires a cyclic algebra".into(),
                ));
            }
            let p = algebra.field.p as u64;
            algebra.pow(&algebra.gen(0), p.pow(algebra.orders[0] - 1))
        }
        ProjPoint::Direction(i) => {
            let p = algebra.field.p as u64;
            algebra.pow(&algebra.gen(*i), p.pow(algebra.orders[*i] - 1))
        }
    };
    pi_point_from_element(algebra, &u)
}

/// Whether the restriction of M along the π-point is free, by the rank
/// criterion on the pulled-back generator action.
pub fn restriction_free(pi: &PiPoint, m: &Module) -> Result<bool, NoblerError> {
    let restricted = restrict_module(&pi.morphism, m)?;
    let p = m.algebra.field.p;
    if m.dim % p as usize != 0 {
        return Ok(false);
    }
    let need = flat_rank(m.dim, p);
    Ok(restricted.actions[0].rank(&m.algebra.field) == need)
}

/// The support of M over the working field.
pub fn support(
    algebra: &Arc<TruncatedAlgebra>,
    m: &Module,
) -> Result<BTreeSet<ProjPoint>, NoblerError> {
    if !algebra.same_as(&m.algebra) {
        return Err(NoblerError::AlgebraMismatch);
    }
    let mut out = BTreeSet::new();
    if algebra.num_gens() == 1 {
        let pi = canonical_pi_point(algebra, &ProjPoint::Singleton)?;
        if !restriction_free(&pi, m)? {
            out.insert(ProjPoint::Singleton);
        }
        return Ok(out);
    }
    if is_kronecker(algebra) {
        for pt in proj_line(&algebra.field) {
            let pi = canonical_pi_point(algebra, &pt)?;
            if !restriction_free(&pi, m)? {
                out.insert(pt);
            }
        }
        return Ok(out);
    }
    // General shapes: coordinate directions only (a partial support).
    for i in 0..algebra.num_gens() {
        let pi = canonical_pi_point(algebra, &ProjPoint::Direction(i))?;
        if !restriction_free(&pi, m)? {
            out.insert(ProjPoint::Direction(i));
        }
    }
    Ok(out)
}

/// The noble points of a Hopf structure: points carried by a π-point u
/// that is primitive, or whose shift 1+u is grouplike.
pub fn noble_points(h: &HopfStructure) -> Result<BTreeSet<ProjPoint>, NoblerError> {
    let algebra = &h.algebra;
    let f = &algebra.field;
    let q = f.q as u64;
    let rad_dim = algebra.dim - 1;
    let count = q
        .checked_pow(rad_dim as u32)
        .filter(|&c| c <= ENUM_CAP)
        .ok_or(NoblerError::BudgetExceeded { needed: u64::MAX, budget: ENUM_CAP })?;
    let mut out = BTreeSet::new();
    for idx in 1..count {
        let mut u = algebra.zero();
        let mut t = idx;
        for c in u.coeffs.iter_mut().skip(1) {
            *c = (t % q) as Fel;
            t /= q;
        }
        let Ok(pi) = pi_point_from_element(algebra, &u) else { continue };
        let du = h.coproduct(&u);
        let primitive = du
            == algebra.tensor_add(
                &algebra.tensor_of(&u, &algebra.one()),
                &algebra.tensor_of(&algebra.one(), &u),
            );
        let noble = primitive || {
            let g = algebra.add(&algebra.one(), &u);
            h.coproduct(&g) == algebra.tensor_of(&g, &g)
        };
        if noble {
            out.insert(point_of(algebra, &pi)?);
        }
    }
    Ok(out)
}

/// The induced action of an automorphism on a point: apply φ to a
/// canonical representative and read off the new point.
pub fn aut_on_point(
    phi: &AugAutomorphism,
    pt: &ProjPoint,
) -> Result<ProjPoint, NoblerError> {
    let algebra = &phi.algebra;
    let pi = canonical_pi_point(algebra, pt)?;
    let image = phi.apply(&pi.element);
    let moved = pi_point_from_element(algebra, &image)?;
    point_of(algebra, &moved)
}

/// Whether φ lies in the isotropy group of the point.
pub fn isotropy_in(phi: &AugAutomorphism, pt: &ProjPoint) -> Result<bool, NoblerError> {
    Ok(aut_on_point(phi, pt)? == *pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::catalog_entry;
    use crate::modrep::{kronecker_module, regular_module};

    fn algebra(p: u16, orders: Vec<u32>) -> Arc<TruncatedAlgebra> {
        let f = Arc::new(FiniteField::new(p, 1).unwrap());
        TruncatedAlgebra::new(f, orders).unwrap()
    }

    #[test]
    fn point_parse_and_display() {
        let pt: ProjPoint = "[1:1]".parse().unwrap();
        assert_eq!(pt, ProjPoint::Homog(1, 1));
        assert_eq!(pt.to_string(), "[1:1]");
        assert!("[0:0]".parse::<ProjPoint>().is_err());
        assert!("[2:1]".parse::<ProjPoint>().is_err());
        assert_eq!("[*]".parse::<ProjPoint>().unwrap(), ProjPoint::Singleton);
    }

    #[test]
    fn pi_point_validation() {
        let a = algebra(2, vec![1, 1]);
        let x = a.gen(0);
        let y = a.gen(1);
        assert!(pi_point_from_element(&a, &x).is_ok());
        assert!(pi_point_from_element(&a, &a.add(&x, &y)).is_ok());
        let xy = a.mul(&x, &y);
        assert!(pi_point_from_element(&a, &xy).is_err());
        assert!(pi_point_from_element(&a, &a.zero()).is_err());
    }

    #[test]
    fn point_of_linear_terms() {
        let a = algebra(2, vec![1, 1]);
        let x = a.gen(0);
        let y = a.gen(1);
        let xy = a.mul(&x, &y);
        let u = a.add(&a.add(&x, &y), &xy);
        let pi = pi_point_from_element(&a, &u).unwrap();
        assert_eq!(point_of(&a, &pi).unwrap(), ProjPoint::Homog(1, 1));
        let px = pi_point_from_element(&a, &x).unwrap();
        assert_eq!(point_of(&a, &px).unwrap(), ProjPoint::Homog(1, 0));
        let py = pi_point_from_element(&a, &y).unwrap();
        assert_eq!(point_of(&a, &py).unwrap(), ProjPoint::Homog(0, 1));
    }

    #[test]
    fn support_of_point_modules_and_projectives() {
        let a = algebra(2, vec![1, 1]);
        for pt in proj_line(&a.field) {
            let (pa, pb) = pt.coords().unwrap();
            for n in 1..=3 {
                let v = kronecker_module(&a, n, (pa, pb), None).unwrap();
                let s = support(&a, &v).unwrap();
                assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![pt], "n={n} pt={pt}");
            }
        }
        let p = regular_module(&a);
        assert!(support(&a, &p).unwrap().is_empty());
        let triv = Module::trivial(a.clone());
        assert_eq!(support(&a, &triv).unwrap().len(), 3);
    }

    #[test]
    fn noble_points_per_structure() {
        let a = algebra(2, vec![1, 1]);
        let all: BTreeSet<ProjPoint> = proj_line(&a.field).into_iter().collect();
        let g0 = catalog_entry(&a, "G0").unwrap();
        assert_eq!(noble_points(&g0).unwrap(), all);
        let g1 = catalog_entry(&a, "G1").unwrap();
        let only: BTreeSet<ProjPoint> = [ProjPoint::Homog(1, 0)].into();
        assert_eq!(noble_points(&g1).unwrap(), only);
        let g3 = catalog_entry(&a, "G3").unwrap();
        assert_eq!(noble_points(&g3).unwrap(), all);
    }

    #[test]
    fn aut_action_on_points() {
        let a = algebra(2, vec![1, 1]);
        let x = a.gen(0);
        let y = a.gen(1);
        let swap = AugAutomorphism::new(a.clone(), vec![y.clone(), x.clone()]).unwrap();
        assert_eq!(
            aut_on_point(&swap, &ProjPoint::Homog(1, 0)).unwrap(),
            ProjPoint::Homog(0, 1)
        );
        assert!(isotropy_in(&swap, &ProjPoint::Homog(1, 1)).unwrap());
        assert!(!isotropy_in(&swap, &ProjPoint::Homog(1, 0)).unwrap());
        let xy = a.mul(&x, &y);
        let shear = AugAutomorphism::new(a.clone(), vec![a.add(&x, &xy), y.clone()]).unwrap();
        assert!(isotropy_in(&shear, &ProjPoint::Homog(1, 0)).unwrap());
        let id = AugAutomorphism::identity(a.clone());
        for pt in proj_line(&a.field) {
            assert_eq!(aut_on_point(&id, &pt).unwrap(), pt);
        }
    }

    #[test]
    fn aut_action_is_compatible_with_composition() {
        let a = algebra(2, vec![1, 1]);
        let auts = crate::aut::enumerate_automorphisms(&a, 10_000).unwrap();
        for phi in auts.iter().take(6) {
            for psi in auts.iter().take(6) {
                let comp = crate::aut::aut_compose(phi, psi).unwrap();
                for pt in proj_line(&a.field) {
                    let via_comp = aut_on_point(&comp, &pt).unwrap();
                    let stepwise =
                        aut_on_point(phi, &aut_on_point(psi, &pt).unwrap()).unwrap();
                    assert_eq!(via_comp, stepwise);
                }
            }
        }
    }

    #[test]
    fn isotropy_of_shear_in_three_generators() {
        let a = algebra(2, vec![1, 1, 1]);
        let x = a.gen(0);
        let y = a.gen(1);
        let z = a.gen(2);
        let yz = a.mul(&y, &z);
        let phi =
            AugAutomorphism::new(a.clone(), vec![a.add(&x, &yz), y.clone(), z.clone()]).unwrap();
        assert!(isotropy_in(&phi, &ProjPoint::Direction(0)).unwrap());
    }
}
