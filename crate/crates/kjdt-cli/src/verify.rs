//! Verification suites: exhaustive checks of the library invariants over a
//! user-chosen rectangle. Work is split over `--jobs` workers round-robin
//! and reports are merged deterministically.

use kjdt::coeff::{pieri_coefficient, satisfies_sign_conjecture, CoefficientTable, Provenance};
use kjdt::growth::k_evacuation;
use kjdt::infusion::kinfusion;
use kjdt::shapes::{enumerate_partitions_in, BoxPos, Partition, Rectangle, SkewShape};
use kjdt::slides::{enumerate_rect_orders, kjdt_with_vacated, krect_with_order, krevjdt};
use kjdt::tableau::{enumerate_inc, superstandard};

use crate::CliError;

/// Inner shapes larger than this are skipped by the well-definedness suite;
/// the cap is reported, never silent.
const WELL_DEFINED_INNER_CAP: usize = 4;

pub struct SuiteReport {
    pub name: &'static str,
    pub pass: bool,
    pub checked: u64,
    pub detail: String,
    pub counterexample: Option<String>,
}

pub fn run(suite: &str, rect: Rectangle, jobs: usize) -> Result<Vec<SuiteReport>, CliError> {
    let jobs = jobs.max(1);
    match suite {
        "involution" => Ok(vec![involution(rect, jobs)]),
        "well-defined" => Ok(vec![well_defined(rect, jobs)]),
        "oracle-equiv" => Ok(vec![oracle_equiv(rect, jobs)?]),
        "pieri" => Ok(vec![pieri(rect, jobs)]),
        "sign-conjecture" => Ok(vec![sign_conjecture(rect, jobs)?]),
        "all" => Ok(vec![
            involution(rect, jobs),
            well_defined(rect, jobs),
            oracle_equiv(rect, jobs)?,
            pieri(rect, jobs),
            sign_conjecture(rect, jobs)?,
        ]),
        other => Err(CliError::Malformed(format!(
            "unknown suite {other:?}; expected involution, well-defined, oracle-equiv, pieri, sign-conjecture or all"
        ))),
    }
}

/// Splits indexed work over workers round-robin; each worker returns
/// (checked, first counterexample), merged in worker order for determinism.
fn par_run(
    items: usize,
    jobs: usize,
    f: impl Fn(usize) -> (u64, Option<String>) + Sync,
) -> (u64, Option<String>) {
    let jobs = jobs.max(1).min(items.max(1));
    let worker = |w: usize| -> (u64, Option<String>) {
        let mut checked = 0;
        let mut counterexample = None;
        for i in (w..items).step_by(jobs) {
            let (c, ce) = f(i);
            checked += c;
            if counterexample.is_none() {
                counterexample = ce;
            }
        }
        (checked, counterexample)
    };
    let parts: Vec<(u64, Option<String>)> = if jobs == 1 {
        vec![worker(0)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs).map(|w| scope.spawn(move || worker(w))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("verify worker panicked"))
                .collect()
        })
    };
    let checked = parts.iter().map(|(c, _)| c).sum();
    let counterexample = parts.into_iter().find_map(|(_, ce)| ce);
    (checked, counterexample)
}

/// Slide invertibility, the infusion involution on all abutting pairs, and
/// the evacuation involution on all straight tableaux of the rectangle.
fn involution(rect: Rectangle, jobs: usize) -> SuiteReport {
    let shapes = enumerate_partitions_in(&rect);

    // (nu, lambda) pairs for slide round trips; (nu, lambda, alpha) triples
    // for infusion; straight shapes for evacuation.
    let mut slide_pairs = Vec::new();
    let mut infusion_triples = Vec::new();
    for nu in &shapes {
        for lam in shapes.iter().filter(|l| nu.contains(l)) {
            if !lam.is_empty() {
                slide_pairs.push((nu.clone(), lam.clone()));
            }
            for alpha in shapes.iter().filter(|a| lam.contains(a)) {
                infusion_triples.push((nu.clone(), lam.clone(), alpha.clone()));
            }
        }
    }

    let (slides_checked, mut counterexample) = par_run(slide_pairs.len(), jobs, |i| {
        let (nu, lam) = &slide_pairs[i];
        let shape = SkewShape::new(nu.clone(), lam.clone()).expect("containment");
        let corners = shape.inner_corners();
        let mut checked = 0;
        for t in enumerate_inc(&shape, shape.n_cells() as u32, true) {
            for mask in 1u32..1 << corners.len() {
                let subset: Vec<BoxPos> = corners
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, b)| *b)
                    .collect();
                let (slid, vacated) = match kjdt_with_vacated(&t, &subset) {
                    Ok(x) => x,
                    Err(e) => return (checked, Some(format!("slide failed: {e}"))),
                };
                match krevjdt(&slid, &vacated, &rect) {
                    Ok(back) if back == t => checked += 1,
                    _ => {
                        return (
                            checked,
                            Some(format!("kjdt at {subset:?} not inverted on\n{t}")),
                        )
                    }
                }
            }
        }
        (checked, None)
    });

    let (infusions_checked, ce2) = par_run(infusion_triples.len(), jobs, |i| {
        let (nu, lam, alpha) = &infusion_triples[i];
        let t_shape = SkewShape::new(lam.clone(), alpha.clone()).expect("containment");
        let u_shape = SkewShape::new(nu.clone(), lam.clone()).expect("containment");
        let ts: Vec<_> = enumerate_inc(&t_shape, t_shape.n_cells() as u32, true).collect();
        let us: Vec<_> = enumerate_inc(&u_shape, u_shape.n_cells() as u32, true).collect();
        let mut checked = 0;
        for t in &ts {
            for u in &us {
                let out = match kinfusion(t, u) {
                    Ok(x) => x,
                    Err(e) => return (checked, Some(format!("infusion failed: {e}"))),
                };
                match kinfusion(&out.first, &out.second) {
                    Ok(back) if back.first == *t && back.second == *u => checked += 1,
                    _ => {
                        return (
                            checked,
                            Some(format!("infusion not involutive on\n{t}\nand\n{u}")),
                        )
                    }
                }
            }
        }
        (checked, None)
    });
    counterexample = counterexample.or(ce2);

    let (evacs_checked, ce3) = par_run(shapes.len(), jobs, |i| {
        let shape = SkewShape::straight(shapes[i].clone());
        let mut checked = 0;
        for t in enumerate_inc(&shape, shape.n_cells() as u32, true) {
            let ok = k_evacuation(&t)
                .and_then(|ev| k_evacuation(&ev))
                .map(|back| back == t)
                .unwrap_or(false);
            if !ok {
                return (checked, Some(format!("evacuation not involutive on\n{t}")));
            }
            checked += 1;
        }
        (checked, None)
    });
    counterexample = counterexample.or(ce3);

    SuiteReport {
        name: "involution",
        pass: counterexample.is_none(),
        checked: slides_checked + infusions_checked + evacs_checked,
        detail: format!(
            ": {slides_checked} slide round trips, {infusions_checked} infusion pairs, {evacs_checked} evacuations"
        ),
        counterexample,
    }
}

/// Rectification is order-independent whenever some order reaches a
/// superstandard tableau.
fn well_defined(rect: Rectangle, jobs: usize) -> SuiteReport {
    let shapes = enumerate_partitions_in(&rect);
    let mut pairs = Vec::new();
    for nu in &shapes {
        for lam in shapes
            .iter()
            .filter(|l| nu.contains(l) && !l.is_empty() && l.size() <= WELL_DEFINED_INNER_CAP)
        {
            pairs.push((nu.clone(), lam.clone()));
        }
    }
    let (checked, counterexample) = par_run(pairs.len(), jobs, |i| {
        let (nu, lam) = &pairs[i];
        let shape = SkewShape::new(nu.clone(), lam.clone()).expect("containment");
        let orders = enumerate_rect_orders(&shape, usize::MAX);
        let mut checked = 0;
        for t in enumerate_inc(&shape, shape.n_cells() as u32, true) {
            let mut results = orders.iter().map(|o| krect_with_order(&t, o));
            let first = match results.next() {
                Some(Ok(x)) => x,
                _ => return (checked, Some(format!("rectification failed on\n{t}"))),
            };
            let mut all_equal = true;
            let mut any_superstandard = first == superstandard(first.shape().outer());
            for r in results {
                match r {
                    Ok(x) => {
                        any_superstandard |= x == superstandard(x.shape().outer());
                        all_equal &= x == first;
                    }
                    Err(e) => return (checked, Some(format!("rectification failed: {e}"))),
                }
            }
            if any_superstandard && !all_equal {
                return (checked, Some(format!("orders disagree on\n{t}")));
            }
            checked += 1;
        }
        (checked, None)
    });
    SuiteReport {
        name: "well-defined",
        pass: counterexample.is_none(),
        checked,
        detail: format!(
            ": tableaux with inner shapes up to {WELL_DEFINED_INNER_CAP} cells, orders exhaustive"
        ),
        counterexample,
    }
}

/// The main rule, the growth-diagram count and the set-valued oracle agree
/// on every triple of the rectangle.
fn oracle_equiv(rect: Rectangle, jobs: usize) -> Result<SuiteReport, CliError> {
    let main = CoefficientTable::compute_with_jobs(rect, Provenance::Main, jobs)?;
    let growth = CoefficientTable::compute_with_jobs(rect, Provenance::Growth, jobs)?;
    let oracle = CoefficientTable::compute_with_jobs(rect, Provenance::Oracle, jobs)?;
    let shapes = enumerate_partitions_in(&rect).len() as u64;
    let triples = shapes * shapes * shapes;
    let mut counterexample = None;
    for (which, other) in [("growth", &growth), ("oracle", &oracle)] {
        if !main.same_entries(other) {
            for ((l, m, n), c) in main.iter() {
                let got = other
                    .get(l, m, n)
                    .unwrap_or_else(kjdt::coeff::SignedCoefficient::zero);
                if got != *c {
                    counterexample = Some(format!("({l},{m},{n}): main {c:?} vs {which} {got:?}"));
                    break;
                }
            }
            counterexample.get_or_insert_with(|| format!("{which} table carries extra entries"));
            break;
        }
    }
    Ok(SuiteReport {
        name: "oracle-equiv",
        pass: counterexample.is_none(),
        checked: triples,
        detail: format!(": {shapes}^3 triples, main vs growth vs oracle"),
        counterexample,
    })
}

/// The closed-form Pieri value equals the counted coefficient for every
/// one-row second factor.
fn pieri(rect: Rectangle, jobs: usize) -> SuiteReport {
    let shapes = enumerate_partitions_in(&rect);
    let (checked, counterexample) = par_run(shapes.len(), jobs, |i| {
        let lam = &shapes[i];
        let mut checked = 0;
        for nu in &shapes {
            for t in 1..=rect.cols as u32 {
                let closed = pieri_coefficient(lam, t, nu);
                let row = Partition::new(vec![t as usize]).expect("single row");
                match kjdt::coeff::lr_coefficient(lam, &row, nu, &rect) {
                    Ok(counted) if counted == closed => checked += 1,
                    Ok(counted) => return (
                        checked,
                        Some(format!(
                            "lambda={lam} t={t} nu={nu}: closed {closed:?} vs counted {counted:?}"
                        )),
                    ),
                    Err(e) => return (checked, Some(format!("count failed: {e}"))),
                }
            }
        }
        (checked, None)
    });
    SuiteReport {
        name: "pieri",
        pass: counterexample.is_none(),
        checked,
        detail: String::new(),
        counterexample,
    }
}

/// The meet/join product difference has alternating signs for every pair.
fn sign_conjecture(rect: Rectangle, jobs: usize) -> Result<SuiteReport, CliError> {
    let shapes = enumerate_partitions_in(&rect);
    let mut pairs = Vec::new();
    for (i, lam) in shapes.iter().enumerate() {
        for mu in &shapes[i..] {
            pairs.push((lam.clone(), mu.clone()));
        }
    }
    let (checked, counterexample) = par_run(pairs.len(), jobs, |i| {
        let (lam, mu) = &pairs[i];
        match satisfies_sign_conjecture(lam, mu, &rect) {
            Ok(true) => (1, None),
            Ok(false) => (0, Some(format!("sign conjecture fails at {lam}, {mu}"))),
            Err(e) => (0, Some(format!("difference failed: {e}"))),
        }
    });
    Ok(SuiteReport {
        name: "sign-conjecture",
        pass: counterexample.is_none(),
        checked,
        detail: ": unordered shape pairs".into(),
        counterexample,
    })
}
