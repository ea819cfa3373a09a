//! End-to-end acceptance suite. Each test prints a single pass line
//! (visible with `--nocapture`) together with its elapsed time.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nobler::algebra::TruncatedAlgebra;
use nobler::aut::enumerate_automorphisms;
use nobler::decomp::{decompose, jordan_type};
use nobler::field::{Fel, FiniteField};
use nobler::geometry::{noble_points, proj_line, support, ProjPoint};
use nobler::greenring::{
    cg_table, green_formula, kronecker_product_decomp, pa_counterexample, table_equal, PaCase,
};
use nobler::hopf::{catalog, hopf_isomorphic, twist_hopf, IsoVerdict};
use nobler::linalg::Matrix;
use nobler::modrep::{
    direct_sum, jordan_block, jordan_module, kronecker_module, regular_module, tensor_module,
    Module,
};

fn algebra(p: u16, orders: Vec<u32>) -> Arc<TruncatedAlgebra> {
    let f = Arc::new(FiniteField::new(p, 1).unwrap());
    TruncatedAlgebra::new(f, orders).unwrap()
}

fn report(name: &str, t0: Instant) {
    println!("ACCEPTANCE {name}: pass ({:.2?})", t0.elapsed());
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &FiniteField, n: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, rng.gen_range(0..f.q) as Fel);
            }
        }
        if m.inverse(f).is_some() {
            return m;
        }
    }
}

fn scramble(rng: &mut ChaCha8Rng, m: &Module) -> Module {
    let t = random_invertible(rng, &m.algebra.field, m.dim);
    m.conjugate(&t).unwrap()
}

#[test]
fn criterion_1_hopf_axiom_suite() {
    let t0 = Instant::now();
    let mut cases: Vec<(u16, Vec<u32>)> = vec![];
    for p in [2u16, 3, 5] {
        cases.push((p, vec![1]));
    }
    for p in [2u16, 3] {
        cases.push((p, vec![2]));
        cases.push((p, vec![3]));
        cases.push((p, vec![1, 1]));
    }
    for (p, orders) in cases {
        let alg = algebra(p, orders.clone());
        for h in catalog(&alg).unwrap() {
            let r = h.verify_bialgebra();
            assert!(
                r.all_ok(),
                "axioms fail for {} over F{p}, orders {orders:?}: {r:?}",
                h.label
            );
        }
    }
    report("1 hopf-axiom-suite", t0);
}

#[test]
fn criterion_2_cyclic_clebsch_gordan() {
    let t0 = Instant::now();
    for p in [2u16, 3, 5] {
        let alg = algebra(p, vec![1]);
        let structures = catalog(&alg).unwrap();
        assert_eq!(structures.len(), 2);
        for h in &structures {
            let table = cg_table(h, p as usize).unwrap();
            for i in 1..=p as usize {
                for j in i..=p as usize {
                    let expect: BTreeMap<String, usize> = green_formula(p, i, j)
                        .unwrap()
                        .into_iter()
                        .map(|(l, c)| (format!("J{l}"), c))
                        .collect();
                    assert_eq!(table.cells[&(i, j)], expect, "{} at ({i},{j})", h.label);
                }
            }
        }
    }
    report("2 cyclic-clebsch-gordan", t0);
}

#[test]
fn criterion_3_green_ring_invariance() {
    let t0 = Instant::now();
    for (orders, count, bound) in [(vec![2u32], 3usize, 4usize), (vec![3], 4, 8)] {
        let alg = algebra(2, orders);
        let structures = catalog(&alg).unwrap();
        assert_eq!(structures.len(), count);
        for h in &structures[1..] {
            assert!(
                table_equal(&structures[0], h, bound).unwrap(),
                "table of {} differs from {}",
                h.label,
                structures[0].label
            );
        }
    }
    report("3 green-ring-invariance", t0);
}

#[test]
fn criterion_4_noble_point_sets() {
    let t0 = Instant::now();
    let alg = algebra(2, vec![1, 1]);
    let all: Vec<String> = proj_line(&alg.field).iter().map(|p| p.to_string()).collect();
    let expect: BTreeMap<&str, Vec<String>> = BTreeMap::from([
        ("G0", all.clone()),
        ("G1", vec!["[1:0]".into()]),
        ("G2", vec!["[1:0]".into(), "[0:1]".into()]),
        ("G3", all.clone()),
    ]);
    for h in catalog(&alg).unwrap() {
        let mut got: Vec<String> =
            noble_points(&h).unwrap().iter().map(|p| p.to_string()).collect();
        got.sort();
        let mut want = expect[h.label.as_str()].clone();
        want.sort();
        assert_eq!(got, want, "noble points of {}", h.label);
    }
    report("4 noble-point-sets", t0);
}

#[test]
fn criterion_5_noble_squares() {
    let t0 = Instant::now();
    let alg = algebra(2, vec![1, 1]);
    for h in catalog(&alg).unwrap() {
        for pt in noble_points(&h).unwrap() {
            for n in 1..=6usize {
                for m in n..=6usize {
                    let d = kronecker_product_decomp(&h, n, m, &pt).unwrap();
                    let mut expect = BTreeMap::new();
                    expect.insert(format!("V{}@{pt}", 2 * n), 2);
                    if m * n > n {
                        expect.insert("P".to_string(), m * n - n);
                    }
                    assert_eq!(
                        d.summands, expect,
                        "{} at {pt}: V{}xV{}",
                        h.label,
                        2 * n,
                        2 * m
                    );
                }
            }
        }
    }
    report("5 noble-squares", t0);
}

fn random_kronecker_module(rng: &mut ChaCha8Rng, alg: &Arc<TruncatedAlgebra>) -> Module {
    let pts = proj_line(&alg.field);
    let count = rng.gen_range(1..=3);
    let parts: Vec<Module> = (0..count)
        .map(|_| match rng.gen_range(0..5) {
            0 => regular_module(alg),
            1 => Module::trivial(alg.clone()),
            _ => {
                let n = rng.gen_range(1..=3);
                let (a, b) = pts[rng.gen_range(0..pts.len())].coords().unwrap();
                kronecker_module(alg, n, (a, b), None).unwrap()
            }
        })
        .collect();
    let refs: Vec<&Module> = parts.iter().collect();
    direct_sum(&refs).unwrap()
}

#[test]
fn criterion_6_support_laws() {
    let t0 = Instant::now();
    let alg = algebra(2, vec![1, 1]);
    let structures = catalog(&alg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..20 {
        let m = random_kronecker_module(&mut rng, &alg);
        let n = random_kronecker_module(&mut rng, &alg);
        let sm = support(&alg, &m).unwrap();
        let sn = support(&alg, &n).unwrap();
        let expect: Vec<ProjPoint> = sm.intersection(&sn).copied().collect();
        for h in &structures {
            let prod = tensor_module(h, &m, &n).unwrap();
            let got: Vec<ProjPoint> = support(&alg, &prod).unwrap().into_iter().collect();
            assert_eq!(got, expect, "trial {trial}, structure {}", h.label);
        }
    }
    report("6 support-laws", t0);
}

#[test]
fn criterion_7_property_pa_counterexamples() {
    let t0 = Instant::now();
    let cases = [
        PaCase::N1Cubed,
        PaCase::Lines { p: 2, n: 1, m: 2 },
        PaCase::Lines { p: 3, n: 1, m: 1 },
    ];
    for case in &cases {
        let r = pa_counterexample(case).unwrap();
        assert!(r.base_square_matches, "{}: base square", r.case_label);
        assert!(!r.restriction_uniform, "{}: restriction type", r.case_label);
        assert!(!r.inconclusive, "{}: inconclusive", r.case_label);
        assert!(r.counterexample, "{}: not a counterexample", r.case_label);
    }
    report("7 property-pa-counterexamples", t0);
}

#[test]
fn criterion_8_decomposer_oracle() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cyclics = [algebra(2, vec![1]), algebra(2, vec![2]), algebra(2, vec![3]), algebra(3, vec![1])];
    let kron = algebra(2, vec![1, 1]);
    let pts = proj_line(&kron.field);
    for trial in 0..50 {
        let (parts, expect): (Vec<Module>, BTreeMap<String, usize>) = if trial % 2 == 0 {
            let alg = &cyclics[rng.gen_range(0..cyclics.len())];
            let mut parts = Vec::new();
            let mut expect = BTreeMap::new();
            for _ in 0..rng.gen_range(1..=4) {
                let i = rng.gen_range(1..=alg.dim);
                parts.push(jordan_module(alg, i).unwrap());
                *expect.entry(format!("J{i}")).or_insert(0) += 1;
            }
            (parts, expect)
        } else {
            let mut parts = Vec::new();
            let mut expect = BTreeMap::new();
            for _ in 0..rng.gen_range(1..=3) {
                match rng.gen_range(0..5) {
                    0 => {
                        parts.push(regular_module(&kron));
                        *expect.entry("P".to_string()).or_insert(0) += 1;
                    }
                    1 => {
                        parts.push(Module::trivial(kron.clone()));
                        *expect.entry("k".to_string()).or_insert(0) += 1;
                    }
                    _ => {
                        let n = rng.gen_range(1..=3);
                        let pt = pts[rng.gen_range(0..pts.len())];
                        let (a, b) = pt.coords().unwrap();
                        parts.push(kronecker_module(&kron, n, (a, b), None).unwrap());
                        *expect.entry(format!("V{}@{pt}", 2 * n)).or_insert(0) += 1;
                    }
                }
            }
            (parts, expect)
        };
        let refs: Vec<&Module> = parts.iter().collect();
        let sum = scramble(&mut rng, &direct_sum(&refs).unwrap());
        let d = decompose(&sum).unwrap();
        assert!(d.certified, "trial {trial}: uncertified");
        assert_eq!(d.summands, expect, "trial {trial}");
    }
    for trial in 0..50 {
        let p = [2u16, 3, 5][trial % 3];
        let f = FiniteField::new(p, 1).unwrap();
        let mut sizes: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..=6)).collect();
        let blocks: Vec<Matrix> = sizes.iter().map(|&s| jordan_block(s)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let t = Matrix::block_diag(&refs);
        let g = random_invertible(&mut rng, &f, t.rows);
        let scrambled = g.mul(&f, &t).mul(&f, &g.inverse(&f).unwrap());
        let mut got = jordan_type(&f, &scrambled).unwrap();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        got.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(got, sizes, "jordan trial {trial} over F{p}");
    }
    report("8 decomposer-oracle", t0);
}

#[test]
fn criterion_9_hopf_orbit_separation() {
    let t0 = Instant::now();
    let budget = 1u64 << 20;
    let algebras = [algebra(2, vec![1]), algebra(2, vec![2]), algebra(2, vec![1, 1])];
    for alg in &algebras {
        let structures = catalog(alg).unwrap();
        for (i, h1) in structures.iter().enumerate() {
            for h2 in &structures[i + 1..] {
                assert!(
                    matches!(hopf_isomorphic(h1, h2, budget), IsoVerdict::NoIsoOverBaseField),
                    "{} vs {} unexpectedly isomorphic",
                    h1.label,
                    h2.label
                );
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..10 {
        let alg = &algebras[trial % algebras.len()];
        let structures = catalog(alg).unwrap();
        let h = &structures[rng.gen_range(0..structures.len())];
        let auts = enumerate_automorphisms(alg, budget).unwrap();
        let phi = &auts[rng.gen_range(0..auts.len())];
        let twisted = twist_hopf(h, phi, "t").unwrap();
        assert!(
            matches!(hopf_isomorphic(&twisted, h, budget), IsoVerdict::Iso(_)),
            "round-trip {trial} on {} failed",
            h.label
        );
    }
    report("9 hopf-orbit-separation", t0);
}
