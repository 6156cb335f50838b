//! K-theory growth diagrams: the local rules, diagram construction,
//! counting of constrained diagrams, and K-evacuation.
//!
//! A growth diagram is a grid of shapes increasing to the right and upward.
//! Every 2x2 subsquare `[alpha beta / gamma delta]` satisfies (G1): the four
//! consecutive differences have no two boxes in a shared row or column, and
//! (G2): `delta` is the slide of the 1-filling of `beta/alpha` at the boxes
//! `alpha/gamma`, which also determines `alpha` from the other three shapes.

use std::collections::HashMap;

use crate::error::Error;
use crate::shapes::{antichain_extensions, BoxPos, Partition, Rectangle, SkewShape};
use crate::slides::kjdt;
use crate::tableau::{from_shape_sequence, superstandard, IncreasingTableau, ShapeSequence};
use crate::Result;

fn is_antichain_diff(big: &Partition, small: &Partition) -> bool {
    if !big.contains(small) {
        return false;
    }
    (0..big.len()).all(|r| {
        // At most one box added per row, and no box directly below an added
        // box (same column in the next row).
        big.part(r) <= small.part(r) + 1
            && (big.part(r + 1) <= small.part(r) || small.part(r + 1) == big.part(r + 1))
    })
}

fn diff_boxes(big: &Partition, small: &Partition) -> Vec<BoxPos> {
    big.boxes().filter(|b| !small.contains_box(*b)).collect()
}

/// The forward local rule (G2): the unique `delta` completing the square
/// from `gamma` (bottom-left), `alpha` (top-left) and `beta` (top-right).
pub fn local_rule_forward(
    gamma: &Partition,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Partition> {
    if !alpha.contains(gamma) || !beta.contains(alpha) {
        return Err(Error::PreconditionViolated(format!(
            "need {gamma} <= {alpha} <= {beta}"
        )));
    }
    if !is_antichain_diff(alpha, gamma) || !is_antichain_diff(beta, alpha) {
        return Err(Error::PreconditionViolated(format!(
            "differences of {gamma} <= {alpha} <= {beta} not row/column distinct"
        )));
    }
    if alpha == gamma {
        return Ok(beta.clone());
    }
    let ones = IncreasingTableau::from_cells(SkewShape::new(beta.clone(), alpha.clone())?, |_| 1)?;
    let slid = kjdt(&ones, &diff_boxes(alpha, gamma))?;
    Ok(slid.shape().outer().clone())
}

/// The backward local rule: the unique `alpha` completing the square from
/// `gamma`, `delta` (bottom-right) and `beta`. (G1)/(G2) are symmetric in
/// `alpha` and `delta`, so this is the forward rule applied to `delta`.
pub fn local_rule_backward(
    gamma: &Partition,
    delta: &Partition,
    beta: &Partition,
) -> Result<Partition> {
    local_rule_forward(gamma, delta, beta)
}

/// Fomin's classical rule (F2) on single-box covers: if `alpha` is the only
/// shape between `gamma` and `beta` the square is degenerate and `delta` is
/// `alpha`; otherwise `delta` is the unique other intermediate shape.
pub fn classical_local_rule(
    gamma: &Partition,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Partition> {
    if alpha.size() != gamma.size() + 1
        || beta.size() != alpha.size() + 1
        || !alpha.contains(gamma)
        || !beta.contains(alpha)
    {
        return Err(Error::PreconditionViolated(format!(
            "need single-box covers {gamma} < {alpha} < {beta}"
        )));
    }
    let intermediates: Vec<Partition> = gamma
        .addable_boxes()
        .into_iter()
        .filter_map(|b| {
            let sigma = gamma.with_boxes_added(&[b]).ok()?;
            beta.contains(&sigma).then_some(sigma)
        })
        .collect();
    match intermediates.iter().find(|s| *s != alpha) {
        Some(other) => Ok(other.clone()),
        None => Ok(alpha.clone()),
    }
}

/// A rectangular grid of shapes, row 0 at top, satisfying (G1)/(G2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthDiagram {
    grid: Vec<Vec<Partition>>,
}

impl GrowthDiagram {
    pub fn from_grid(grid: Vec<Vec<Partition>>) -> Result<Self> {
        if grid.is_empty() || grid[0].is_empty() {
            return Err(Error::InvalidShape("empty growth diagram".into()));
        }
        let cols = grid[0].len();
        if grid.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidShape("ragged growth diagram".into()));
        }
        let d = GrowthDiagram { grid };
        d.validate()?;
        Ok(d)
    }

    pub fn n_rows(&self) -> usize {
        self.grid.len()
    }

    pub fn n_cols(&self) -> usize {
        self.grid[0].len()
    }

    pub fn get(&self, row: usize, col: usize) -> &Partition {
        &self.grid[row][col]
    }

    pub fn top_row(&self) -> &[Partition] {
        &self.grid[0]
    }

    pub fn bottom_row(&self) -> &[Partition] {
        &self.grid[self.grid.len() - 1]
    }

    /// Right column read bottom-to-top.
    pub fn right_column_upward(&self) -> Vec<Partition> {
        self.grid
            .iter()
            .rev()
            .map(|r| r[r.len() - 1].clone())
            .collect()
    }

    /// Checks (G1) and (G2) on every 2x2 subsquare.
    pub fn validate(&self) -> Result<()> {
        for i in 1..self.n_rows() {
            for j in 1..self.n_cols() {
                let alpha = &self.grid[i - 1][j - 1];
                let beta = &self.grid[i - 1][j];
                let gamma = &self.grid[i][j - 1];
                let delta = &self.grid[i][j];
                if !is_antichain_diff(beta, delta) || !is_antichain_diff(delta, gamma) {
                    return Err(Error::PreconditionViolated(format!(
                        "(G1) fails at square ({i},{j})"
                    )));
                }
                let expect = local_rule_forward(gamma, alpha, beta)?;
                if *delta != expect {
                    return Err(Error::PreconditionViolated(format!(
                        "(G2) fails at square ({i},{j}): {delta} != {expect}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The reflection about the antidiagonal, which is again a growth
    /// diagram.
    pub fn antidiagonal_reflection(&self) -> GrowthDiagram {
        let (rows, cols) = (self.n_rows(), self.n_cols());
        let grid = (0..cols)
            .map(|i| {
                (0..rows)
                    .map(|j| self.grid[rows - 1 - j][cols - 1 - i].clone())
                    .collect()
            })
            .collect();
        GrowthDiagram { grid }
    }

    /// Byte-stable dump: rows of `|`-separated partition strings, top first.
    pub fn dump(&self) -> String {
        self.grid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join("|")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Builds the growth diagram of a rectification: `left` is the straight
/// tableau recording the slide order (largest label slid first), `top` the
/// tableau being rectified. The top row carries `top`'s shape sequence, the
/// left column carries `left`'s (bottom to top), and the interior follows
/// from the forward rule.
pub fn build_growth_diagram(
    left: &IncreasingTableau,
    top: &IncreasingTableau,
) -> Result<GrowthDiagram> {
    if !left.shape().is_straight() {
        return Err(Error::NotStraightShape(format!("{}", left.shape())));
    }
    if top.shape().inner() != left.shape().outer() {
        return Err(Error::ShapesDoNotAbut(format!(
            "left outer {} vs top inner {}",
            left.shape().outer(),
            top.shape().inner()
        )));
    }
    let top_chain = top.shape_sequence();
    let left_chain = left.shape_sequence();
    let rows = left_chain.chain().len();
    let cols = top_chain.chain().len();
    let mut grid = vec![vec![Partition::empty(); cols]; rows];
    grid[0] = top_chain.chain().to_vec();
    for (i, p) in left_chain.chain().iter().rev().enumerate() {
        grid[i][0] = p.clone();
    }
    for i in 1..rows {
        for j in 1..cols {
            let delta = local_rule_forward(&grid[i][j - 1], &grid[i - 1][j - 1], &grid[i - 1][j])?;
            grid[i][j] = delta;
        }
    }
    Ok(GrowthDiagram { grid })
}

/// Number of K-theory growth diagrams whose left column encodes the
/// superstandard tableau of `lambda`, whose bottom row encodes the
/// superstandard tableau of `mu`, and whose top-right corner is `nu`.
pub fn kgrowth_count(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    kgrowth_counts_bounded(lambda, mu, nu)
        .get(nu)
        .copied()
        .unwrap_or(0)
}

/// Diagram counts for every achievable top-right corner inside the ambient
/// rectangle at once.
pub fn kgrowth_counts(
    lambda: &Partition,
    mu: &Partition,
    ambient: &Rectangle,
) -> std::collections::BTreeMap<Partition, u64> {
    kgrowth_counts_bounded(lambda, mu, &ambient.full_shape())
}

/// Depth-first column search: column 0 is the chain of the superstandard
/// tableau of `lambda`; each next column is determined downward by the
/// forward rule from a chosen top cell, and its bottom cell must follow the
/// superstandard chain of `mu`. Memoized on (column index, column chain).
fn kgrowth_counts_bounded(
    lambda: &Partition,
    mu: &Partition,
    bound: &Partition,
) -> std::collections::BTreeMap<Partition, u64> {
    use std::collections::BTreeMap;

    let rows = lambda.size() + 1;
    let chain_mu: Vec<Partition> = superstandard(mu).shape_sequence().chain().to_vec();
    let first_column: Vec<Partition> = {
        let c = superstandard(lambda).shape_sequence();
        c.chain().iter().rev().cloned().collect()
    };
    debug_assert_eq!(first_column.len(), rows);
    if !bound.contains(lambda) || !bound.contains(mu) {
        return BTreeMap::new();
    }

    type Memo = HashMap<(usize, Vec<Partition>), BTreeMap<Partition, u64>>;

    fn search(
        col_idx: usize,
        column: &[Partition],
        chain_mu: &[Partition],
        bound: &Partition,
        memo: &mut Memo,
    ) -> BTreeMap<Partition, u64> {
        if col_idx + 1 == chain_mu.len() {
            let mut m = BTreeMap::new();
            m.insert(column[0].clone(), 1);
            return m;
        }
        let key = (col_idx, column.to_vec());
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let mut acc: BTreeMap<Partition, u64> = BTreeMap::new();
        'choice: for top in antichain_extensions(&column[0], bound) {
            let mut next = Vec::with_capacity(column.len());
            next.push(top);
            for i in 1..column.len() {
                let delta = match local_rule_forward(&column[i], &column[i - 1], &next[i - 1]) {
                    Ok(d) => d,
                    Err(_) => continue 'choice,
                };
                // (G1) on the sides the rule does not construct directly.
                if !is_antichain_diff(&next[i - 1], &delta)
                    || !is_antichain_diff(&delta, &column[i])
                {
                    continue 'choice;
                }
                next.push(delta);
            }
            if next[column.len() - 1] != chain_mu[col_idx + 1] {
                continue;
            }
            for (nu, n) in search(col_idx + 1, &next, chain_mu, bound, memo) {
                *acc.entry(nu).or_insert(0) += n;
            }
        }
        memo.insert(key, acc.clone());
        acc
    }

    let mut memo = Memo::new();
    search(0, &first_column, &chain_mu, bound, &mut memo)
}

/// One step of the evacuation operator: erase the entry 1 in the northwest
/// corner, decrement the remaining entries, and slide into the vacated box.
pub fn delta(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    if !t.shape().is_straight() {
        return Err(Error::NotStraightShape(format!("{}", t.shape())));
    }
    if t.is_empty() {
        return Ok(t.clone());
    }
    if t.get(BoxPos::new(0, 0)) != Some(1) {
        return Err(Error::InvalidTableau(
            "straight tableau must carry entry 1 in its northwest corner".into(),
        ));
    }
    let lambda = t.shape().outer().clone();
    let punctured =
        IncreasingTableau::from_cells(SkewShape::new(lambda, Partition::new(vec![1])?)?, |b| {
            t.get(b).expect("cell of shape") - 1
        })?;
    kjdt(&punctured, &[BoxPos::new(0, 0)])
}

/// The K-evacuation involution on straight-shape increasing tableaux,
/// defined by the shape sequence of the iterated `delta` images read in
/// reverse.
pub fn k_evacuation(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    if !t.shape().is_straight() {
        return Err(Error::NotStraightShape(format!("{}", t.shape())));
    }
    if t.is_empty() {
        return Ok(t.clone());
    }
    let mut shapes = vec![t.shape().outer().clone()];
    let mut cur = t.clone();
    while !cur.is_empty() {
        cur = delta(&cur)?;
        shapes.push(cur.shape().outer().clone());
    }
    shapes.reverse();
    let seq = ShapeSequence::new(shapes)?;
    Ok(from_shape_sequence(&seq))
}

/// The triangular growth diagram of an evacuation: row `i` holds the shape
/// sequence of the i-th `delta` image, right-justified, so that every
/// complete 2x2 subsquare obeys the local rules and the rightmost column
/// read upward encodes the evacuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularGrowthDiagram {
    rows: Vec<Vec<Partition>>,
}

impl TriangularGrowthDiagram {
    pub fn from_tableau(t: &IncreasingTableau) -> Result<Self> {
        if !t.shape().is_straight() {
            return Err(Error::NotStraightShape(format!("{}", t.shape())));
        }
        let mut rows = Vec::new();
        let mut cur = t.clone();
        loop {
            if cur.is_empty() {
                rows.push(vec![Partition::empty()]);
                break;
            }
            rows.push(cur.shape_sequence().chain().to_vec());
            cur = delta(&cur)?;
        }
        Ok(TriangularGrowthDiagram { rows })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Cell at conceptual (row, col); row `i` spans columns `i..n`.
    pub fn get(&self, row: usize, col: usize) -> Option<&Partition> {
        self.rows.get(row)?.get(col.checked_sub(row)?)
    }

    /// The rightmost column read bottom-to-top: the shape sequence of the
    /// evacuation.
    pub fn evacuation_chain(&self) -> Vec<Partition> {
        self.rows
            .iter()
            .rev()
            .map(|r| r.last().expect("rows nonempty").clone())
            .collect()
    }

    /// Checks the local rules on every complete 2x2 subsquare and that the
    /// diagonal entries are empty shapes.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_rows();
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != n - i {
                return Err(Error::InvalidShape(format!(
                    "triangular row {i} has {} cells, wants {}",
                    row.len(),
                    n - i
                )));
            }
            if !row[0].is_empty() {
                return Err(Error::InvalidShape(format!(
                    "diagonal entry of row {i} is {}, wants ()",
                    row[0]
                )));
            }
        }
        for i in 0..n.saturating_sub(1) {
            for j in i + 1..n.saturating_sub(1) {
                let alpha = self.get(i, j).expect("in range");
                let beta = self.get(i, j + 1).expect("in range");
                let gamma = self.get(i + 1, j).expect("in range");
                let delta = self.get(i + 1, j + 1).expect("in range");
                let expect = local_rule_forward(gamma, alpha, beta)?;
                if *delta != expect {
                    return Err(Error::PreconditionViolated(format!(
                        "(G2) fails at triangular square ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Dump with leading empty fields for the undefined cells, matching the
    /// reference triangular tables.
    pub fn dump(&self) -> String {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut fields = vec![String::new(); i];
                fields.extend(row.iter().map(|p| p.to_string()));
                fields.join("|")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::enumerate_partitions_in;
    use crate::tableau::enumerate_inc;

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
    fn forward_rule_examples() {
        assert_eq!(
            local_rule_forward(&p(&[]), &p(&[1]), &p(&[2, 1])).unwrap(),
            p(&[1])
        );
        assert_eq!(
            local_rule_forward(&p(&[2, 1]), &p(&[3, 2, 1]), &p(&[3, 3, 1])).unwrap(),
            p(&[3, 2])
        );
        let a = p(&[2, 1]);
        assert_eq!(local_rule_forward(&p(&[1]), &a, &a).unwrap(), p(&[1]));
        assert_eq!(local_rule_forward(&a, &a, &p(&[3, 1])).unwrap(), p(&[3, 1]));
        assert!(matches!(
            local_rule_forward(&p(&[1]), &p(&[3]), &p(&[3, 1])),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn backward_rule_examples() {
        assert_eq!(
            local_rule_backward(&p(&[]), &p(&[1]), &p(&[2, 1])).unwrap(),
            p(&[1])
        );
        // delta == gamma forces alpha == beta.
        assert_eq!(
            local_rule_backward(&p(&[1]), &p(&[1]), &p(&[2, 1])).unwrap(),
            p(&[2, 1])
        );
    }

    #[test]
    fn forward_backward_round_trip_exhaustive() {
        let rect = Rectangle::new(3, 3).unwrap();
        let all = enumerate_partitions_in(&rect);
        let mut squares = 0;
        for beta in &all {
            for alpha in all.iter().filter(|a| beta.contains(a)) {
                if !is_antichain_diff(beta, alpha) {
                    continue;
                }
                for gamma in all.iter().filter(|g| alpha.contains(g)) {
                    if !is_antichain_diff(alpha, gamma) {
                        continue;
                    }
                    let delta = local_rule_forward(gamma, alpha, beta).unwrap();
                    let back = local_rule_backward(gamma, &delta, beta).unwrap();
                    assert_eq!(
                        back, *alpha,
                        "square gamma={gamma} alpha={alpha} beta={beta} delta={delta}"
                    );
                    squares += 1;
                }
            }
        }
        assert!(squares > 150, "checked {squares} squares");
    }

    #[test]
    fn classical_rule_examples() {
        assert_eq!(
            classical_local_rule(&p(&[]), &p(&[1]), &p(&[2])).unwrap(),
            p(&[1])
        );
        assert_eq!(
            classical_local_rule(&p(&[1]), &p(&[2]), &p(&[2, 1])).unwrap(),
            p(&[1, 1])
        );
    }

    #[test]
    fn classical_rule_agrees_with_forward() {
        let rect = Rectangle::new(4, 4).unwrap();
        let all = enumerate_partitions_in(&rect);
        for gamma in &all {
            for alpha in &all {
                if alpha.size() != gamma.size() + 1 || !alpha.contains(gamma) {
                    continue;
                }
                for beta in &all {
                    if beta.size() != alpha.size() + 1 || !beta.contains(alpha) {
                        continue;
                    }
                    assert_eq!(
                        classical_local_rule(gamma, alpha, beta).unwrap(),
                        local_rule_forward(gamma, alpha, beta).unwrap(),
                        "gamma={gamma} alpha={alpha} beta={beta}"
                    );
                }
            }
        }
    }

    /// The reference 5x5 K-theory growth diagram.
    fn reference_growth_grid() -> Vec<Vec<Partition>> {
        let rows = [
            [
                "(3,2,1)",
                "(3,3,2,1)",
                "(4,3,3,2)",
                "(4,4,3,2)",
                "(4,4,3,3)",
            ],
            ["(2,2)", "(3,2,1)", "(4,3,2,1)", "(4,4,2,1)", "(4,4,3,2)"],
            ["(2,1)", "(3,1,1)", "(4,2,1,1)", "(4,3,1,1)", "(4,3,2,1)"],
            ["(1)", "(2,1)", "(3,2,1)", "(3,3,1)", "(3,3,2)"],
            ["()", "(1)", "(2,1)", "(3,2)", "(3,2,1)"],
        ];
        rows.iter()
            .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
            .collect()
    }

    #[test]
    fn builds_reference_growth_diagram() {
        // Slide-order tableau recovered from the reference bullet choices.
        let left = tab(&[3, 2, 1], &[], &[&[1, 2, 4], &[2, 3], &[4]]);
        let top = tab(
            &[4, 4, 3, 3],
            &[3, 2, 1],
            &[&[2], &[1, 3], &[1, 2], &[1, 2, 4]],
        );
        let d = build_growth_diagram(&left, &top).unwrap();
        assert_eq!(d.grid, reference_growth_grid());
        d.validate().unwrap();
        d.antidiagonal_reflection().validate().unwrap();
        assert_eq!(
            d.dump().lines().next().unwrap(),
            "(3,2,1)|(3,3,2,1)|(4,3,3,2)|(4,4,3,2)|(4,4,3,3)"
        );
    }

    #[test]
    fn empty_left_gives_single_row() {
        let top = tab(&[2, 1], &[], &[&[1, 2], &[2]]);
        let left = IncreasingTableau::empty();
        let d = build_growth_diagram(&left, &top).unwrap();
        assert_eq!(d.n_rows(), 1);
        assert_eq!(d.top_row(), top.shape_sequence().chain());
    }

    #[test]
    fn kgrowth_examples() {
        assert_eq!(
            kgrowth_count(&p(&[2, 2]), &p(&[2, 1]), &p(&[3, 2, 2, 1])),
            2
        );
        for mu in enumerate_partitions_in(&Rectangle::new(2, 2).unwrap()) {
            assert_eq!(kgrowth_count(&Partition::empty(), &mu, &mu), 1);
            if !mu.is_empty() {
                assert_eq!(kgrowth_count(&mu, &Partition::empty(), &mu), 1);
            }
        }
    }

    #[test]
    fn kgrowth_commutation_symmetry() {
        let rect = Rectangle::new(3, 3).unwrap();
        let shapes = enumerate_partitions_in(&rect);
        for lam in &shapes {
            for mu in &shapes {
                assert_eq!(
                    kgrowth_counts(lam, mu, &rect),
                    kgrowth_counts(mu, lam, &rect),
                    "lam={lam} mu={mu}"
                );
            }
        }
    }

    #[test]
    fn delta_and_evacuation_reference_example() {
        let t = tab(&[4, 3, 2], &[], &[&[1, 2, 3, 5], &[2, 3, 4], &[4, 5]]);
        let d1 = delta(&t).unwrap();
        assert_eq!(d1, tab(&[4, 2, 2], &[], &[&[1, 2, 3, 4], &[2, 3], &[3, 4]]));
        let ev = k_evacuation(&t).unwrap();
        assert_eq!(
            ev,
            tab(&[4, 3, 2], &[], &[&[1, 2, 3, 4], &[2, 3, 5], &[3, 4]])
        );
        assert_eq!(k_evacuation(&ev).unwrap(), t);

        let single = tab(&[1], &[], &[&[1]]);
        assert_eq!(k_evacuation(&single).unwrap(), single);
    }

    #[test]
    fn triangular_diagram_matches_reference() {
        let t = tab(&[4, 3, 2], &[], &[&[1, 2, 3, 5], &[2, 3, 4], &[4, 5]]);
        let tri = TriangularGrowthDiagram::from_tableau(&t).unwrap();
        let expect = "\
()|(1)|(2,1)|(3,2)|(3,3,1)|(4,3,2)
|()|(1)|(2,1)|(3,2,1)|(4,2,2)
||()|(1)|(2,1)|(3,2,1)
|||()|(1)|(2,1)
||||()|(1)
|||||()";
        assert_eq!(tri.dump(), expect);
        tri.validate().unwrap();
        // The rightmost column upward is the evacuation's shape sequence.
        let ev = k_evacuation(&t).unwrap();
        assert_eq!(tri.evacuation_chain(), ev.shape_sequence().chain().to_vec());
    }

    #[test]
    fn evacuation_involution_small_exhaustive() {
        let rect = Rectangle::new(3, 3).unwrap();
        for lam in enumerate_partitions_in(&rect) {
            let shape = SkewShape::straight(lam.clone());
            let max = shape.n_cells() as u32;
            for t in enumerate_inc(&shape, max, true) {
                let ev = k_evacuation(&t).unwrap();
                assert_eq!(k_evacuation(&ev).unwrap(), t, "tableau\n{t}");
            }
        }
    }

    #[test]
    fn built_diagrams_validate_and_reflect_in_3x3() {
        // Spot a family: rectify every tableau on nu/lambda for a few shapes
        // using superstandard orders, build the diagram, validate it and its
        // antidiagonal reflection.
        let lam = p(&[2, 1]);
        let nu = p(&[3, 3, 1]);
        let shape = SkewShape::new(nu, lam.clone()).unwrap();
        let left = superstandard(&lam);
        for t in enumerate_inc(&shape, shape.n_cells() as u32, true) {
            let d = build_growth_diagram(&left, &t).unwrap();
            d.validate().unwrap();
            d.antidiagonal_reflection().validate().unwrap();
        }
    }
}
