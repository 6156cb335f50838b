//! The `switch` primitive, K-jdt and reverse slides, and K-rectification.
//!
//! A slide seeds holes at chosen corners and then switches the holes past
//! the labels `1, 2, ..., max` in order (reverse slides go `max, ..., 1`).
//! Each pass exchanges the two symbols on every alternating short-ribbon
//! component of the cells holding a hole or the current label.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::shapes::{outer_corners, BoxPos, Partition, Rectangle, SkewShape};
use crate::tableau::IncreasingTableau;
use crate::Result;

/// One cell of a slide in progress.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlideCell {
    /// A currently vacated box.
    Hole,
    /// A numeric entry.
    Entry(u32),
}

/// A tableau mid-slide: a skew region holding numeric entries and holes.
/// Numeric entries strictly increase along rows and columns when holes are
/// ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlideState {
    grid: Grid,
}

impl SlideState {
    /// Builds a state from per-row cells of the active region `shape`.
    pub fn new(shape: SkewShape, rows: Vec<Vec<SlideCell>>) -> Result<Self> {
        let mut rows = rows;
        rows.resize(shape.outer().len(), Vec::new());
        for (r, row) in rows.iter().enumerate() {
            let expect = shape.outer().part(r) - shape.inner().part(r);
            if row.len() != expect {
                return Err(Error::InvalidTableau(format!(
                    "row {r} has {} cells, shape {shape} wants {expect}",
                    row.len()
                )));
            }
        }
        let mut grid = Grid::blank(shape.outer(), shape.inner());
        for (r, row) in rows.iter().enumerate() {
            for (i, &cell) in row.iter().enumerate() {
                let c = shape.inner().part(r) + i;
                grid.set(
                    r,
                    c,
                    match cell {
                        SlideCell::Hole => Cell::Hole,
                        SlideCell::Entry(v) => Cell::Entry(v),
                    },
                );
            }
        }
        grid.check_entries_increasing()?;
        Ok(SlideState { grid })
    }

    /// Seeds holes at the given inner corners of a tableau, producing the
    /// starting state of a forward slide.
    pub fn from_tableau_with_holes(t: &IncreasingTableau, holes: &[BoxPos]) -> Result<Self> {
        Ok(SlideState {
            grid: Grid::for_kjdt(t, holes)?,
        })
    }

    /// Exchanges holes and the given symbol on every alternating short
    /// ribbon of the cells holding either. Single-box components are left
    /// unchanged.
    pub fn switch(&self, symbol: u32) -> Result<SlideState> {
        let mut next = self.clone();
        next.grid.switch_pass(symbol)?;
        Ok(next)
    }

    /// Cell at a box, or `None` outside the active region.
    pub fn get(&self, b: BoxPos) -> Option<SlideCell> {
        match self.grid.get(b.row, b.col) {
            Cell::Hole => Some(SlideCell::Hole),
            Cell::Entry(v) => Some(SlideCell::Entry(v)),
            _ => None,
        }
    }

    pub fn hole_boxes(&self) -> Vec<BoxPos> {
        self.grid.holes()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    /// Outside the outer shape.
    Void,
    /// Part of the inner (untouched) shape.
    Inner,
    Hole,
    Entry(u32),
}

/// Dense row-major grid with a fixed stride, the engine behind all slides.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Grid {
    rows: usize,
    stride: usize,
    cells: Vec<Cell>,
    outer: Vec<usize>,
    inner: Vec<usize>,
}

impl Grid {
    /// Grid over `outer` with the inner prefix marked and every remaining
    /// cell a hole.
    fn blank(outer: &Partition, inner: &Partition) -> Grid {
        let rows = outer.len();
        let stride = outer.part(0);
        let mut cells = vec![Cell::Void; rows * stride];
        for (r, row) in cells.chunks_mut(stride).enumerate() {
            for (c, cell) in row.iter_mut().enumerate().take(outer.part(r)) {
                *cell = if c < inner.part(r) {
                    Cell::Inner
                } else {
                    Cell::Hole
                };
            }
        }
        Grid {
            rows,
            stride,
            cells,
            outer: (0..rows).map(|r| outer.part(r)).collect(),
            inner: (0..rows).map(|r| inner.part(r)).collect(),
        }
    }

    fn for_kjdt(t: &IncreasingTableau, seeds: &[BoxPos]) -> Result<Grid> {
        let lambda = t.shape().inner();
        let corners = lambda.inner_corners();
        if seeds.is_empty() {
            return Err(Error::NotAnInnerCorner("empty corner set".into()));
        }
        for (i, s) in seeds.iter().enumerate() {
            if !corners.contains(s) {
                return Err(Error::NotAnInnerCorner(format!("{s} in {lambda}")));
            }
            if seeds[..i].contains(s) {
                return Err(Error::NotAnInnerCorner(format!("duplicate corner {s}")));
            }
        }
        let new_inner = lambda.with_corners_removed(seeds)?;
        let mut grid = Grid::blank(t.shape().outer(), &new_inner);
        for b in t.shape().cells() {
            grid.set(b.row, b.col, Cell::Entry(t.get(b).expect("cell of shape")));
        }
        // `blank` already left holes exactly at the vacated corners.
        Ok(grid)
    }

    fn for_krevjdt(t: &IncreasingTableau, seeds: &[BoxPos]) -> Result<Grid> {
        let nu = t.shape().outer();
        let addable = nu.addable_boxes();
        if seeds.is_empty() {
            return Err(Error::NotAnOuterCorner("empty corner set".into()));
        }
        for (i, s) in seeds.iter().enumerate() {
            if !addable.contains(s) {
                return Err(Error::NotAnOuterCorner(format!("{s} outside {nu}")));
            }
            if seeds[..i].contains(s) {
                return Err(Error::NotAnOuterCorner(format!("duplicate corner {s}")));
            }
        }
        let new_outer = nu.with_boxes_added(seeds)?;
        let mut grid = Grid::blank(&new_outer, t.shape().inner());
        for b in t.shape().cells() {
            grid.set(b.row, b.col, Cell::Entry(t.get(b).expect("cell of shape")));
        }
        // Entries overwrote their cells, leaving holes exactly at the seeds.
        Ok(grid)
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> Cell {
        if r >= self.rows || c >= self.stride {
            Cell::Void
        } else {
            self.cells[r * self.stride + c]
        }
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, cell: Cell) {
        self.cells[r * self.stride + c] = cell;
    }

    fn holes(&self) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.outer[r] {
                if self.get(r, c) == Cell::Hole {
                    out.push(BoxPos::new(r, c));
                }
            }
        }
        out
    }

    fn labels(&self) -> Vec<u32> {
        let mut l: Vec<u32> = self
            .cells
            .iter()
            .filter_map(|c| match c {
                Cell::Entry(v) => Some(*v),
                _ => None,
            })
            .collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    /// Validates that numeric entries strictly increase along each row and
    /// column once holes are ignored.
    fn check_entries_increasing(&self) -> Result<()> {
        for r in 0..self.rows {
            let mut last: Option<u32> = None;
            for c in 0..self.outer[r] {
                if let Cell::Entry(v) = self.get(r, c) {
                    if last.is_some_and(|w| v <= w) {
                        return Err(Error::InvalidTableau(format!(
                            "row entries not increasing at ({r},{c})"
                        )));
                    }
                    last = Some(v);
                }
            }
        }
        for c in 0..self.stride {
            let mut last: Option<u32> = None;
            for r in 0..self.rows {
                if let Cell::Entry(v) = self.get(r, c) {
                    if last.is_some_and(|w| v <= w) {
                        return Err(Error::InvalidTableau(format!(
                            "column entries not increasing at ({r},{c})"
                        )));
                    }
                    last = Some(v);
                }
            }
        }
        Ok(())
    }

    /// One switch pass: exchange holes and `sym` on each alternating
    /// short-ribbon component of the cells holding either.
    fn switch_pass(&mut self, sym: u32) -> Result<()> {
        let in_play = |cell: Cell| matches!(cell, Cell::Hole) || cell == Cell::Entry(sym);
        let mut seen = vec![false; self.cells.len()];
        let mut comp: Vec<BoxPos> = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.outer[r] {
                if seen[r * self.stride + c] || !in_play(self.get(r, c)) {
                    continue;
                }
                // Flood-fill one component; scanning row-major visits
                // components in (row, col) order of their minimal cell.
                comp.clear();
                comp.push(BoxPos::new(r, c));
                seen[r * self.stride + c] = true;
                let mut head = 0;
                while head < comp.len() {
                    let b = comp[head];
                    head += 1;
                    let candidates = [
                        (b.row, b.col + 1),
                        (b.row + 1, b.col),
                        (b.row, b.col.wrapping_sub(1)),
                        (b.row.wrapping_sub(1), b.col),
                    ];
                    for (nr, nc) in candidates {
                        if nr >= self.rows || nc >= self.stride {
                            continue;
                        }
                        let idx = nr * self.stride + nc;
                        if !seen[idx] && in_play(self.get(nr, nc)) {
                            seen[idx] = true;
                            comp.push(BoxPos::new(nr, nc));
                        }
                    }
                }
                if comp.len() == 1 {
                    continue;
                }
                comp.sort_unstable();
                self.validate_ribbon(&comp, sym)?;
                for b in &comp {
                    let cell = self.get(b.row, b.col);
                    self.set(
                        b.row,
                        b.col,
                        match cell {
                            Cell::Hole => Cell::Entry(sym),
                            Cell::Entry(_) => Cell::Hole,
                            _ => unreachable!("component cells are holes or entries"),
                        },
                    );
                }
            }
        }
        Ok(())
    }

    /// Checks that a connected component (sorted row-major) is a short
    /// ribbon filled alternately: at most two boxes per row and column,
    /// row intervals contiguous and touching staircase-wise, and adjacent
    /// cells holding distinct content.
    fn validate_ribbon(&self, comp: &[BoxPos], sym: u32) -> Result<()> {
        let fail = || {
            Err(Error::NotAShortRibbon(format!(
                "component {:?} at symbol {sym}",
                comp.iter().map(|b| (b.row, b.col)).collect::<Vec<_>>()
            )))
        };
        // Walk the row groups of the sorted component: each must be an
        // interval of width at most two ending under the previous group's
        // leftmost box.
        let mut i = 0;
        let mut prev_min: Option<usize> = None;
        while i < comp.len() {
            let row = comp[i].row;
            let first = comp[i].col;
            let mut last = first;
            let mut width = 1;
            while i + 1 < comp.len() && comp[i + 1].row == row {
                i += 1;
                last = comp[i].col;
                width += 1;
            }
            i += 1;
            if width > 2 || last - first + 1 != width {
                return fail();
            }
            if let Some(pm) = prev_min {
                if last != pm {
                    return fail();
                }
            }
            prev_min = Some(first);
        }
        // Column multiplicity: components are tiny, scan quadratically.
        for b in comp {
            if comp.iter().filter(|x| x.col == b.col).count() > 2 {
                return fail();
            }
        }
        for b in comp {
            for n in [BoxPos::new(b.row, b.col + 1), BoxPos::new(b.row + 1, b.col)] {
                if comp.binary_search(&n).is_ok() {
                    let same = matches!(
                        (self.get(b.row, b.col), self.get(n.row, n.col)),
                        (Cell::Hole, Cell::Hole) | (Cell::Entry(_), Cell::Entry(_))
                    );
                    if same {
                        return fail();
                    }
                }
            }
        }
        Ok(())
    }

    /// Deletes the holes of a finished forward slide: they must form a
    /// suffix of every row, and the shrunken outer shape must again be a
    /// partition.
    fn finish_forward(self) -> Result<(IncreasingTableau, Vec<BoxPos>)> {
        let vacated = self.holes();
        let mut outer = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let keep = (0..self.outer[r])
                .filter(|&c| self.get(r, c) != Cell::Hole)
                .count();
            if (0..keep).any(|c| self.get(r, c) == Cell::Hole) {
                return Err(Error::NotAShortRibbon(format!(
                    "row {r}: holes not at row end after final switch"
                )));
            }
            outer.push(keep);
        }
        let shape = SkewShape::new(Partition::new(outer)?, Partition::new(self.inner.clone())?)?;
        let t = IncreasingTableau::from_cells(shape, |b| match self.get(b.row, b.col) {
            Cell::Entry(v) => v,
            _ => 0,
        })?;
        Ok((t, vacated))
    }

    /// Deletes the holes of a finished reverse slide: they must sit directly
    /// after the inner prefix of every row, and the grown inner shape must
    /// again be a partition.
    fn finish_reverse(self) -> Result<(IncreasingTableau, Vec<BoxPos>)> {
        let vacated = self.holes();
        let mut inner = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut first = self.inner[r];
            while self.get(r, first) == Cell::Hole {
                first += 1;
            }
            if (first..self.outer[r]).any(|c| self.get(r, c) == Cell::Hole) {
                return Err(Error::NotAShortRibbon(format!(
                    "row {r}: holes not at inner frontier after final switch"
                )));
            }
            inner.push(first);
        }
        let shape = SkewShape::new(Partition::new(self.outer.clone())?, Partition::new(inner)?)?;
        let t = IncreasingTableau::from_cells(shape, |b| match self.get(b.row, b.col) {
            Cell::Entry(v) => v,
            _ => 0,
        })?;
        Ok((t, vacated))
    }
}

/// Forward K-jdt slide at a nonempty set of inner corners. Returns the slid
/// tableau together with the vacated boxes, which are exactly the outer
/// corners a reverse slide needs to undo this one.
pub fn kjdt_with_vacated(
    t: &IncreasingTableau,
    corners: &[BoxPos],
) -> Result<(IncreasingTableau, Vec<BoxPos>)> {
    let mut grid = Grid::for_kjdt(t, corners)?;
    for sym in grid.labels() {
        grid.switch_pass(sym)?;
    }
    let (out, vacated) = grid.finish_forward()?;
    debug_assert_eq!(out.labels(), t.labels(), "slides preserve the label set");
    Ok((out, vacated))
}

/// Forward K-jdt slide, discarding the vacated boxes.
pub fn kjdt(t: &IncreasingTableau, corners: &[BoxPos]) -> Result<IncreasingTableau> {
    Ok(kjdt_with_vacated(t, corners)?.0)
}

/// Reverse slide at a nonempty set of outer corners inside the ambient
/// rectangle.
pub fn krevjdt(
    t: &IncreasingTableau,
    corners: &[BoxPos],
    ambient: &Rectangle,
) -> Result<IncreasingTableau> {
    let allowed = outer_corners(t.shape(), ambient)?;
    for s in corners {
        if !allowed.contains(s) {
            return Err(Error::NotAnOuterCorner(format!("{s} in {ambient}")));
        }
    }
    Ok(krevjdt_with_vacated(t, corners)?.0)
}

/// Reverse slide validated only against the tableau's own outer shape; the
/// infusion loop supplies corners coming from a surrounding tableau rather
/// than from a rectangle.
pub(crate) fn krevjdt_with_vacated(
    t: &IncreasingTableau,
    corners: &[BoxPos],
) -> Result<(IncreasingTableau, Vec<BoxPos>)> {
    let mut grid = Grid::for_krevjdt(t, corners)?;
    for sym in grid.labels().into_iter().rev() {
        grid.switch_pass(sym)?;
    }
    let (out, vacated) = grid.finish_reverse()?;
    debug_assert_eq!(out.labels(), t.labels(), "slides preserve the label set");
    Ok((out, vacated))
}

/// A rectification order: the corner sets chosen at each slide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectificationOrder {
    steps: Vec<Vec<BoxPos>>,
}

impl RectificationOrder {
    pub fn new(steps: Vec<Vec<BoxPos>>) -> Self {
        RectificationOrder { steps }
    }

    pub fn steps(&self) -> &[Vec<BoxPos>] {
        &self.steps
    }
}

/// Slide-script form: one step per line, each a flat comma-separated list of
/// `row,col` pairs, e.g. `0,2,2,0` for the corner set {(0,2), (2,0)}.
impl fmt::Display for RectificationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let flat: Vec<String> = step
                .iter()
                .flat_map(|b| [b.row.to_string(), b.col.to_string()])
                .collect();
            write!(f, "{}", flat.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for RectificationOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums = line
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
                })
                .collect::<Result<Vec<usize>>>()?;
            if nums.is_empty() || nums.len() % 2 != 0 {
                return Err(Error::Parse(format!(
                    "line {}: expected an even number of coordinates",
                    lineno + 1
                )));
            }
            steps.push(nums.chunks(2).map(|p| BoxPos::new(p[0], p[1])).collect());
        }
        Ok(RectificationOrder { steps })
    }
}

/// Rectifies under the default greedy order: every step slides at the full
/// set of current inner corners.
pub fn krect(t: &IncreasingTableau) -> Result<IncreasingTableau> {
    let mut cur = t.clone();
    while !cur.shape().inner().is_empty() {
        let corners = cur.shape().inner_corners();
        cur = kjdt(&cur, &corners)?;
    }
    Ok(cur)
}

/// Rectifies under an explicit order, which must exhaust the inner shape.
pub fn krect_with_order(
    t: &IncreasingTableau,
    order: &RectificationOrder,
) -> Result<IncreasingTableau> {
    let mut cur = t.clone();
    for step in order.steps() {
        cur = kjdt(&cur, step)?;
    }
    if !cur.shape().inner().is_empty() {
        return Err(Error::IncompleteOrder(format!(
            "inner shape {} remains",
            cur.shape().inner()
        )));
    }
    Ok(cur)
}

/// All rectification orders for the inner shape of `shape`, depth-first,
/// truncated at `cap`: at every stage any nonempty subset of the current
/// inner corners may be chosen.
pub fn enumerate_rect_orders(shape: &SkewShape, cap: usize) -> Vec<RectificationOrder> {
    fn walk(
        inner: &Partition,
        steps: &mut Vec<Vec<BoxPos>>,
        out: &mut Vec<RectificationOrder>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if inner.is_empty() {
            out.push(RectificationOrder::new(steps.clone()));
            return;
        }
        let corners = inner.inner_corners();
        for mask in 1u32..1 << corners.len() {
            let subset: Vec<BoxPos> = corners
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, b)| *b)
                .collect();
            let next = inner
                .with_corners_removed(&subset)
                .expect("subset of corners is removable");
            steps.push(subset);
            walk(&next, steps, out, cap);
            steps.pop();
            if out.len() >= cap {
                return;
            }
        }
    }
    let mut out = Vec::new();
    walk(shape.inner(), &mut Vec::new(), &mut out, cap);
    out
}
