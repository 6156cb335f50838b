//! Replays the worked examples shipped as golden files in `testdata/` and
//! reports any divergence byte-for-byte.

use kjdt::coeff::{lr_coefficient, t_pieri_fillings, witnesses};
use kjdt::growth::{build_growth_diagram, delta, k_evacuation, TriangularGrowthDiagram};
use kjdt::infusion::kinfusion;
use kjdt::shapes::{Partition, Rectangle, SkewShape};
use kjdt::slides::{krect_with_order, RectificationOrder};
use kjdt::tableau::IncreasingTableau;

pub struct ExampleResult {
    pub name: &'static str,
    pub ok: bool,
    pub expected: String,
    pub got: String,
}

fn p(s: &str) -> Partition {
    s.parse().expect("valid partition literal")
}

fn t(s: &str) -> IncreasingTableau {
    s.parse().expect("valid tableau literal")
}

fn check(name: &'static str, golden: &'static str, got: String) -> ExampleResult {
    let expected = golden.trim_end_matches('\n').to_string();
    let ok = expected == got;
    ExampleResult {
        name,
        ok,
        expected,
        got,
    }
}

pub fn run_all() -> Vec<ExampleResult> {
    vec![
        growth_diagram(),
        triangular_diagram(),
        rectification_orders(),
        witness_computation(),
        infusion_pair(),
        evacuation(),
        pieri_fillings(),
        counterexamples(),
        product_difference(),
    ]
}

/// The reference 5x5 growth diagram of a rectification.
fn growth_diagram() -> ExampleResult {
    let left = t("1 2 4\n2 3\n4");
    let top = t(". . . 2\n. . 1 3\n. 1 2\n1 2 4");
    let got = build_growth_diagram(&left, &top)
        .map(|d| d.dump())
        .unwrap_or_else(|e| format!("error: {e}"));
    check(
        "growth-diagram",
        include_str!("../testdata/growth_diagram.golden"),
        got,
    )
}

/// The reference triangular growth diagram of an evacuation.
fn triangular_diagram() -> ExampleResult {
    let input = t("1 2 3 5\n2 3 4\n4 5");
    let got = TriangularGrowthDiagram::from_tableau(&input)
        .map(|d| d.dump())
        .unwrap_or_else(|e| format!("error: {e}"));
    check(
        "triangular-diagram",
        include_str!("../testdata/triangular_diagram.golden"),
        got,
    )
}

/// Two rectification orders of one tableau with distinct, non-superstandard
/// results.
fn rectification_orders() -> ExampleResult {
    let input = t(". . . 2\n. . 2\n1 3 4");
    let order_a: RectificationOrder = "0,2\n1,1\n1,0\n0,1\n0,0".parse().expect("script");
    let order_b: RectificationOrder = "1,1\n0,2\n1,0\n0,1\n0,0".parse().expect("script");
    let got = match (
        krect_with_order(&input, &order_a),
        krect_with_order(&input, &order_b),
    ) {
        (Ok(t1), Ok(t2)) => format!("T1:\n{t1}\nT2:\n{t2}"),
        (a, b) => format!("error: {a:?} {b:?}"),
    };
    check(
        "rectification-orders",
        include_str!("../testdata/rectification_orders.golden"),
        got,
    )
}

/// The witness count negative two and both witnesses.
fn witness_computation() -> ExampleResult {
    let rect = Rectangle::new(4, 3).expect("rectangle");
    let (lambda, mu, nu) = (p("(2,2)"), p("(2,1)"), p("(3,2,2,1)"));
    let got = match (
        lr_coefficient(&lambda, &mu, &nu, &rect),
        witnesses(&lambda, &mu, &nu, &rect),
    ) {
        (Ok(c), Ok(ws)) => {
            let mut s = format!("count={} signed={}", c.count, c.signed);
            for w in ws {
                s.push_str(&format!("\nwitness:\n{w}"));
            }
            s
        }
        (a, b) => format!("error: {a:?} {b:?}"),
    };
    check(
        "witnesses",
        include_str!("../testdata/witnesses.golden"),
        got,
    )
}

/// The reference infusion of a straight tableau through a skew one.
fn infusion_pair() -> ExampleResult {
    let first = t("1 2 3\n2 3\n4");
    let second = t(". . . 2\n. . 1 3\n. 1 3\n2 3 4");
    let got = kinfusion(&first, &second)
        .map(|pair| format!("first:\n{}\nsecond:\n{}", pair.first, pair.second))
        .unwrap_or_else(|e| format!("error: {e}"));
    check("infusion", include_str!("../testdata/infusion.golden"), got)
}

/// One delta step and the full evacuation of the reference tableau.
fn evacuation() -> ExampleResult {
    let input = t("1 2 3 5\n2 3 4\n4 5");
    let got = match (delta(&input), k_evacuation(&input)) {
        (Ok(d), Ok(ev)) => format!("delta:\n{d}\nevacuation:\n{ev}"),
        (a, b) => format!("error: {a:?} {b:?}"),
    };
    check(
        "evacuation",
        include_str!("../testdata/evacuation.golden"),
        got,
    )
}

/// The Pieri coefficient and both 4-Pieri fillings of the reference strip.
fn pieri_fillings() -> ExampleResult {
    let (lambda, nu) = (p("(5,3,2)"), p("(6,5,2,2)"));
    let c = kjdt::coeff::pieri_coefficient(&lambda, 4, &nu);
    let shape = SkewShape::new(nu, lambda).expect("strip");
    let mut got = format!("count={} signed={}", c.count, c.signed);
    for f in t_pieri_fillings(&shape, 4) {
        got.push_str(&format!("\nfilling:\n{f}"));
    }
    check(
        "pieri-fillings",
        include_str!("../testdata/pieri_fillings.golden"),
        got,
    )
}

/// A negative constant cross-checked two ways, and the infusion pair whose
/// outputs land on different skew shapes.
fn counterexamples() -> ExampleResult {
    let rect = Rectangle::new(3, 3).expect("rectangle");
    let c = lr_coefficient(&p("(2,1)"), &p("(2,1)"), &p("(3,3,1)"), &rect);
    let u = t(". . 2\n. 1 4\n1 3");
    let run = |first: &IncreasingTableau| {
        kinfusion(first, &u)
            .map(|pair| pair.second.to_string())
            .unwrap_or_else(|e| format!("error: {e}"))
    };
    let got = match c {
        Ok(c) => format!(
            "coefficient: count={} signed={}\ninfusion2 of first tableau:\n{}\ninfusion2 of second tableau:\n{}",
            c.count,
            c.signed,
            run(&t("1 3\n2")),
            run(&t("1 2\n3")),
        ),
        Err(e) => format!("error: {e}"),
    };
    check(
        "counterexamples",
        include_str!("../testdata/counterexamples.golden"),
        got,
    )
}

/// Meet, join and every term of the reference product difference.
fn product_difference() -> ExampleResult {
    let rect = Rectangle::new(4, 5).expect("rectangle");
    let (lambda, mu) = (p("(4,2,1)"), p("(3,3,2)"));
    let mut got = format!("meet={} join={}", lambda.meet(&mu), lambda.join(&mu));
    match kjdt::coeff::product_difference(&lambda, &mu, &rect) {
        Ok(d) => {
            for (nu, v) in d {
                got.push_str(&format!("\n{nu},{v}"));
            }
        }
        Err(e) => got = format!("error: {e}"),
    }
    check(
        "product-difference",
        include_str!("../testdata/product_difference.golden"),
        got,
    )
}
