//! Acceptance suite: every numbered criterion below must pass exactly.
//! Each test prints one `criterion N: PASS` line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use kjdt::coeff::{
    check_associativity, check_commutativity, lr_coefficient, pieri_coefficient,
    product_difference, satisfies_sign_conjecture, t_pieri_fillings, witnesses, CoefficientTable,
    Provenance,
};
use kjdt::growth::{build_growth_diagram, k_evacuation, TriangularGrowthDiagram};
use kjdt::infusion::kinfusion;
use kjdt::shapes::{enumerate_partitions_in, BoxPos, Partition, Rectangle, SkewShape};
use kjdt::slides::{enumerate_rect_orders, krect_with_order, RectificationOrder};
use kjdt::tableau::{enumerate_inc, lis, superstandard, IncreasingTableau};

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn tab(outer: &[usize], inner: &[usize], rows: &[&[u32]]) -> IncreasingTableau {
    IncreasingTableau::new(
        SkewShape::new(p(outer), p(inner)).unwrap(),
        rows.iter().map(|r| r.to_vec()).collect(),
    )
    .unwrap()
}

#[test]
fn criterion_01_witness_example() {
    let start = std::time::Instant::now();
    let r = Rectangle::new(4, 3).unwrap();
    let c = lr_coefficient(&p(&[2, 2]), &p(&[2, 1]), &p(&[3, 2, 2, 1]), &r).unwrap();
    assert_eq!(c.count, 2);
    assert_eq!(c.signed, -2);
    let got = witnesses(&p(&[2, 2]), &p(&[2, 1]), &p(&[3, 2, 2, 1]), &r).unwrap();
    let expect = [
        tab(&[3, 2, 2, 1], &[2, 2], &[&[2], &[], &[1, 3], &[3]]),
        tab(&[3, 2, 2, 1], &[2, 2], &[&[2], &[], &[1, 2], &[3]]),
    ];
    assert_eq!(got.len(), 2);
    for w in &expect {
        assert!(got.contains(w), "missing witness\n{w}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1, "criterion 1 took {elapsed:?}");
    println!("criterion 1 (witness example, count 2 signed -2): PASS in {elapsed:?}");
}

#[test]
fn criterion_02_negative_constant() {
    let start = std::time::Instant::now();
    let r = Rectangle::new(3, 3).unwrap();
    let c = lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 3, 1]), &r).unwrap();
    assert_eq!(c.signed, -2);
    let o = kjdt::grothendieck::oracle_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 3, 1]), &r)
        .unwrap();
    assert_eq!(o, -2);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1, "criterion 2 took {elapsed:?}");
    println!("criterion 2 (signed constant -2, oracle agrees): PASS in {elapsed:?}");
}

#[test]
fn criterion_03_two_rectifications() {
    let t = tab(&[4, 3, 3], &[3, 2], &[&[2], &[2], &[1, 3, 4]]);
    let order_a: RectificationOrder = "0,2\n1,1\n1,0\n0,1\n0,0".parse().unwrap();
    let order_b: RectificationOrder = "1,1\n0,2\n1,0\n0,1\n0,0".parse().unwrap();
    let t1 = krect_with_order(&t, &order_a).unwrap();
    let t2 = krect_with_order(&t, &order_b).unwrap();
    assert_eq!(t1, tab(&[3, 1], &[], &[&[1, 2, 4], &[3]]));
    assert_eq!(t2, tab(&[3, 2], &[], &[&[1, 2, 4], &[3, 4]]));
    assert_ne!(t1, t2);
    let expected_lis = lis(&t.reading_word());
    assert_eq!(expected_lis, 3);
    assert_eq!(t1.shape().outer().part(0), expected_lis);
    assert_eq!(t2.shape().outer().part(0), expected_lis);
    println!("criterion 3 (two distinct non-superstandard rectifications): PASS");
}

#[test]
fn criterion_04_well_definedness_sweep() {
    let start = std::time::Instant::now();
    let r = Rectangle::new(3, 3).unwrap();
    let shapes = enumerate_partitions_in(&r);
    let mut families = 0u64;
    for nu in &shapes {
        for lam in shapes
            .iter()
            .filter(|l| nu.contains(l) && !l.is_empty() && l.size() <= 4)
        {
            let shape = SkewShape::new(nu.clone(), lam.clone()).unwrap();
            let orders = enumerate_rect_orders(&shape, usize::MAX);
            for t in enumerate_inc(&shape, shape.n_cells() as u32, true) {
                let results: Vec<IncreasingTableau> = orders
                    .iter()
                    .map(|o| krect_with_order(&t, o).unwrap())
                    .collect();
                let any_superstandard = results
                    .iter()
                    .any(|x| *x == superstandard(x.shape().outer()));
                if any_superstandard {
                    assert!(
                        results.windows(2).all(|w| w[0] == w[1]),
                        "orders disagree for\n{t}"
                    );
                    families += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(families > 0);
    assert!(elapsed.as_secs() < 300, "criterion 4 took {elapsed:?}");
    println!(
        "criterion 4 (well-definedness, {families} superstandard families, all orders): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_05_involutions() {
    let start = std::time::Instant::now();

    // Infusion involution on every abutting pair inside 3x3.
    let r3 = Rectangle::new(3, 3).unwrap();
    let shapes3 = enumerate_partitions_in(&r3);
    let mut pairs = 0u64;
    for nu in &shapes3 {
        for lam in shapes3.iter().filter(|l| nu.contains(l)) {
            for alpha in shapes3.iter().filter(|a| lam.contains(a)) {
                let t_shape = SkewShape::new(lam.clone(), alpha.clone()).unwrap();
                let u_shape = SkewShape::new(nu.clone(), lam.clone()).unwrap();
                let ts: Vec<IncreasingTableau> =
                    enumerate_inc(&t_shape, t_shape.n_cells() as u32, true).collect();
                let us: Vec<IncreasingTableau> =
                    enumerate_inc(&u_shape, u_shape.n_cells() as u32, true).collect();
                for t in &ts {
                    for u in &us {
                        let out = kinfusion(t, u).unwrap();
                        let back = kinfusion(&out.first, &out.second).unwrap();
                        assert!(back.first == *t && back.second == *u);
                        pairs += 1;
                    }
                }
            }
        }
    }

    // The reference infusion example, exactly.
    let t = tab(&[3, 2, 1], &[], &[&[1, 2, 3], &[2, 3], &[4]]);
    let u = tab(
        &[4, 4, 3, 3],
        &[3, 2, 1],
        &[&[2], &[1, 3], &[1, 3], &[2, 3, 4]],
    );
    let out = kinfusion(&t, &u).unwrap();
    assert_eq!(
        out.first,
        tab(&[3, 2, 1], &[], &[&[1, 2, 4], &[2, 3], &[4]])
    );
    assert_eq!(
        out.second,
        tab(
            &[4, 4, 3, 3],
            &[3, 2, 1],
            &[&[2], &[1, 3], &[1, 2], &[1, 2, 4]]
        )
    );

    // Evacuation involution on every straight tableau inside 4x4, with the
    // reference example byte-for-byte.
    let ev = k_evacuation(&tab(&[4, 3, 2], &[], &[&[1, 2, 3, 5], &[2, 3, 4], &[4, 5]])).unwrap();
    assert_eq!(ev.to_string(), "1 2 3 4\n2 3 5\n3 4");
    let r4 = Rectangle::new(4, 4).unwrap();
    let mut evacs = 0u64;
    for lam in enumerate_partitions_in(&r4) {
        let shape = SkewShape::straight(lam.clone());
        for t in enumerate_inc(&shape, shape.n_cells() as u32, true) {
            let ev = k_evacuation(&t).unwrap();
            assert_eq!(
                k_evacuation(&ev).unwrap(),
                t,
                "evacuation not involutive on\n{t}"
            );
            evacs += 1;
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "criterion 5 took {elapsed:?}");
    println!(
        "criterion 5 (infusion involution on {pairs} pairs, evacuation involution on {evacs} tableaux): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_06_lis_preserved_by_slides() {
    let start = std::time::Instant::now();
    let r = Rectangle::new(4, 4).unwrap();
    let shapes = enumerate_partitions_in(&r);
    let mut slides = 0u64;
    for nu in &shapes {
        for lam in shapes.iter().filter(|l| nu.contains(l) && !l.is_empty()) {
            let shape = SkewShape::new(nu.clone(), lam.clone()).unwrap();
            let corners = shape.inner_corners();
            for t in enumerate_inc(&shape, shape.n_cells() as u32, true) {
                let before = lis(&t.reading_word());
                for mask in 1u32..1 << corners.len() {
                    let subset: Vec<BoxPos> = corners
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, b)| *b)
                        .collect();
                    let out = kjdt::slides::kjdt(&t, &subset).unwrap();
                    assert_eq!(
                        lis(&out.reading_word()),
                        before,
                        "LIS changed sliding\n{t}\nat {subset:?}"
                    );
                    slides += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 6 (LIS preserved across {slides} slides): PASS in {elapsed:?}");
}

#[test]
fn criterion_07_oracle_equivalence() {
    let start = std::time::Instant::now();
    let r = Rectangle::new(3, 3).unwrap();
    let main = CoefficientTable::compute(r, Provenance::Main).unwrap();
    let growth = CoefficientTable::compute(r, Provenance::Growth).unwrap();
    let oracle = CoefficientTable::compute(r, Provenance::Oracle).unwrap();
    assert!(main.same_entries(&growth), "growth-diagram counts disagree");
    assert!(main.same_entries(&oracle), "oracle values disagree");
    let shapes = enumerate_partitions_in(&r);
    let triples = shapes.len().pow(3);
    assert_eq!(triples, 8000);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "criterion 7 took {elapsed:?}");
    println!(
        "criterion 7 (main = growth = oracle over {triples} triples in 3x3): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_08_pieri_agreement() {
    let start = std::time::Instant::now();
    let r = Rectangle::new(4, 4).unwrap();
    let shapes = enumerate_partitions_in(&r);
    let mut checked = 0u64;
    for lam in &shapes {
        for nu in &shapes {
            for t in 1..=4u32 {
                let closed = pieri_coefficient(lam, t, nu);
                let counted = lr_coefficient(lam, &p(&[t as usize]), nu, &r).unwrap();
                assert_eq!(closed, counted, "lambda={lam} t={t} nu={nu}");
                checked += 1;
            }
        }
    }
    // The reference strip example produces exactly its two fillings.
    let strip = SkewShape::new(p(&[6, 5, 2, 2]), p(&[5, 3, 2])).unwrap();
    let fillings = t_pieri_fillings(&strip, 4);
    assert_eq!(fillings.len(), 2);
    assert!(fillings.contains(&tab(
        &[6, 5, 2, 2],
        &[5, 3, 2],
        &[&[4], &[2, 3], &[], &[1, 2]]
    )));
    assert!(fillings.contains(&tab(
        &[6, 5, 2, 2],
        &[5, 3, 2],
        &[&[4], &[3, 4], &[], &[1, 2]]
    )));
    let elapsed = start.elapsed();
    println!("criterion 8 (Pieri closed form on {checked} cases): PASS in {elapsed:?}");
}

#[test]
fn criterion_09_product_difference() {
    let start = std::time::Instant::now();
    let r45 = Rectangle::new(4, 5).unwrap();
    let d = product_difference(&p(&[4, 2, 1]), &p(&[3, 3, 2]), &r45).unwrap();
    let expect: Vec<(Partition, i64)> = vec![
        (p(&[5, 5, 3, 2]), 1),
        (p(&[5, 5, 4, 1]), 2),
        (p(&[5, 5, 5]), 1),
        (p(&[5, 4, 4, 2]), 1),
        (p(&[5, 5, 5, 1]), -3),
        (p(&[5, 5, 3, 3]), -1),
        (p(&[5, 5, 4, 2]), -5),
        (p(&[5, 4, 4, 3]), -1),
        (p(&[5, 5, 5, 2]), 3),
        (p(&[5, 5, 4, 3]), 3),
        (p(&[5, 5, 5, 3]), -1),
    ];
    assert_eq!(d.len(), expect.len());
    for (nu, v) in &expect {
        assert_eq!(d.get(nu), Some(v), "d[{nu}]");
    }
    assert!(satisfies_sign_conjecture(&p(&[4, 2, 1]), &p(&[3, 3, 2]), &r45).unwrap());

    let r33 = Rectangle::new(3, 3).unwrap();
    let shapes = enumerate_partitions_in(&r33);
    for (i, lam) in shapes.iter().enumerate() {
        for mu in &shapes[i..] {
            assert!(
                satisfies_sign_conjecture(lam, mu, &r33).unwrap(),
                "sign conjecture fails at {lam}, {mu}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "criterion 9 took {elapsed:?}");
    println!("criterion 9 (reference product difference and sign conjecture): PASS in {elapsed:?}");
}

#[test]
fn criterion_10_algebra_checks() {
    let start = std::time::Instant::now();
    let r33 = Rectangle::new(3, 3).unwrap();
    let shapes3 = enumerate_partitions_in(&r33);
    for (i, lam) in shapes3.iter().enumerate() {
        for mu in &shapes3[i..] {
            assert!(check_commutativity(lam, mu, &r33).unwrap(), "{lam} {mu}");
        }
    }
    let r23 = Rectangle::new(2, 3).unwrap();
    let shapes23 = enumerate_partitions_in(&r23);
    let mut triples = 0u64;
    for a in &shapes23 {
        for b in &shapes23 {
            for c in &shapes23 {
                assert!(check_associativity(a, b, c, &r23).unwrap(), "{a} {b} {c}");
                triples += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 10 (commutativity in 3x3, associativity on {triples} triples in 2x3): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_11_golden_diagrams() {
    // The reference 5x5 growth diagram.
    let left = tab(&[3, 2, 1], &[], &[&[1, 2, 4], &[2, 3], &[4]]);
    let top = tab(
        &[4, 4, 3, 3],
        &[3, 2, 1],
        &[&[2], &[1, 3], &[1, 2], &[1, 2, 4]],
    );
    let d = build_growth_diagram(&left, &top).unwrap();
    let growth_golden = "\
(3,2,1)|(3,3,2,1)|(4,3,3,2)|(4,4,3,2)|(4,4,3,3)
(2,2)|(3,2,1)|(4,3,2,1)|(4,4,2,1)|(4,4,3,2)
(2,1)|(3,1,1)|(4,2,1,1)|(4,3,1,1)|(4,3,2,1)
(1)|(2,1)|(3,2,1)|(3,3,1)|(3,3,2)
()|(1)|(2,1)|(3,2)|(3,2,1)";
    assert_eq!(d.dump(), growth_golden);

    // The reference triangular evacuation diagram.
    let t = tab(&[4, 3, 2], &[], &[&[1, 2, 3, 5], &[2, 3, 4], &[4, 5]]);
    let tri = TriangularGrowthDiagram::from_tableau(&t).unwrap();
    let triangular_golden = "\
()|(1)|(2,1)|(3,2)|(3,3,1)|(4,3,2)
|()|(1)|(2,1)|(3,2,1)|(4,2,2)
||()|(1)|(2,1)|(3,2,1)
|||()|(1)|(2,1)
||||()|(1)
|||||()";
    assert_eq!(tri.dump(), triangular_golden);
    println!("criterion 11 (growth diagram and triangular diagram goldens): PASS");
}

#[test]
fn criterion_12_dual_equivalence_failure() {
    let u = tab(&[3, 3, 2], &[2, 1], &[&[2], &[1, 4], &[1, 3]]);
    let t1 = tab(&[2, 1], &[], &[&[1, 3], &[2]]);
    let t2 = tab(&[2, 1], &[], &[&[1, 2], &[3]]);
    let out1 = kinfusion(&t1, &u).unwrap().second;
    let out2 = kinfusion(&t2, &u).unwrap().second;
    assert_eq!(out1, tab(&[3, 3, 2], &[3, 2], &[&[], &[1], &[2, 3]]));
    assert_eq!(out2, tab(&[3, 3, 2], &[3, 1], &[&[], &[1, 2], &[1, 3]]));
    assert_ne!(out1.shape(), out2.shape());
    println!("criterion 12 (dual-equivalence counterexample shapes differ): PASS");
}
