//! Increasing tableaux: fillings of skew shapes strictly increasing along
//! rows and columns, together with reading words, shape sequences, and
//! enumeration of `INC(nu/lambda)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::shapes::{BoxPos, Partition, SkewShape};
use crate::Result;

/// A filling of a skew shape whose entries strictly increase left-to-right
/// in rows and top-to-bottom in columns.
///
/// A tableau is *canonical* when its value set is exactly `{1..max}` with no
/// gaps; enumeration can be restricted to canonical fillings, and slides
/// preserve the value set, but the type itself only enforces strictness so
/// that label-split tableaux (entries `a+1..` of a larger tableau) remain
/// representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncreasingTableau {
    shape: SkewShape,
    /// Entries of the skew cells only, row by row: `rows[r]` holds the
    /// values at columns `inner[r]..outer[r]`.
    rows: Vec<Vec<u32>>,
}

impl IncreasingTableau {
    /// Builds a tableau from per-row skew-cell entries, validating shape
    /// agreement and strict increase.
    pub fn new(shape: SkewShape, rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut rows = rows;
        rows.resize(shape.outer().len(), Vec::new());
        for (r, row) in rows.iter().enumerate() {
            let expect = shape.outer().part(r) - shape.inner().part(r);
            if row.len() != expect {
                return Err(Error::InvalidTableau(format!(
                    "row {r} has {} entries, shape {shape} wants {expect}",
                    row.len()
                )));
            }
        }
        let t = IncreasingTableau { shape, rows };
        t.check_increasing()?;
        Ok(t)
    }

    /// Builds a tableau by evaluating `f` on every cell of the shape.
    pub fn from_cells(shape: SkewShape, mut f: impl FnMut(BoxPos) -> u32) -> Result<Self> {
        let rows = (0..shape.outer().len())
            .map(|r| {
                (shape.inner().part(r)..shape.outer().part(r))
                    .map(|c| f(BoxPos::new(r, c)))
                    .collect()
            })
            .collect();
        IncreasingTableau::new(shape, rows)
    }

    pub fn empty() -> Self {
        IncreasingTableau {
            shape: SkewShape::straight(Partition::empty()),
            rows: Vec::new(),
        }
    }

    fn check_increasing(&self) -> Result<()> {
        for b in self.shape.cells() {
            let v = self.get(b).expect("cell of own shape");
            if v == 0 {
                return Err(Error::InvalidTableau(format!("entry 0 at {b}")));
            }
            for n in [BoxPos::new(b.row, b.col + 1), BoxPos::new(b.row + 1, b.col)] {
                if let Some(w) = self.get(n) {
                    if w <= v {
                        return Err(Error::InvalidTableau(format!(
                            "entries not strictly increasing at {b} ({v}) and {n} ({w})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn n_cells(&self) -> usize {
        self.shape.n_cells()
    }

    pub fn is_empty(&self) -> bool {
        self.n_cells() == 0
    }

    /// Entry at a cell, or `None` outside the skew shape.
    pub fn get(&self, b: BoxPos) -> Option<u32> {
        if !self.shape.contains_cell(b) {
            return None;
        }
        Some(self.rows[b.row][b.col - self.shape.inner().part(b.row)])
    }

    /// The maximum entry; 0 for the empty tableau.
    pub fn max_label(&self) -> u32 {
        self.rows
            .iter()
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Distinct labels in increasing order.
    pub fn labels(&self) -> Vec<u32> {
        let mut l: Vec<u32> = self.rows.iter().flatten().copied().collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    /// Cells carrying the given label, row-major.
    pub fn cells_with_label(&self, label: u32) -> Vec<BoxPos> {
        self.shape
            .cells()
            .filter(|&b| self.get(b) == Some(label))
            .collect()
    }

    /// Whether the value set is exactly `{1..max}`.
    pub fn is_canonical(&self) -> bool {
        let labels = self.labels();
        labels.iter().enumerate().all(|(i, &l)| l == i as u32 + 1)
    }

    /// Whether each of `1..=n_cells` appears exactly once.
    pub fn is_standard(&self) -> bool {
        let mut l: Vec<u32> = self.rows.iter().flatten().copied().collect();
        l.sort_unstable();
        l == (1..=self.n_cells() as u32).collect::<Vec<_>>()
    }

    /// Reading word: rows bottom-to-top, each left-to-right.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// The subtableaux of entries `<= a` and of entries `> a`.
    ///
    /// The first has shape `mid/lambda` and the second `nu/mid` where `mid`
    /// is the shape of the chain at level `a`; entries are kept as-is, so the
    /// second piece is generally non-canonical.
    pub fn split_at_label(&self, a: u32) -> (IncreasingTableau, IncreasingTableau) {
        let inner = self.shape.inner();
        let mid_parts: Vec<usize> = (0..self.shape.outer().len())
            .map(|r| {
                let low = inner.part(r);
                low + self.rows[r].iter().take_while(|&&v| v <= a).count()
            })
            .collect();
        let mid = Partition::new(mid_parts).expect("label prefix of a partition row");
        let low_shape = SkewShape::new(mid.clone(), inner.clone()).expect("inner under mid");
        let high_shape = SkewShape::new(self.shape.outer().clone(), mid).expect("mid under outer");
        let low = IncreasingTableau::from_cells(low_shape, |b| self.get(b).unwrap())
            .expect("restriction of increasing tableau");
        let high = IncreasingTableau::from_cells(high_shape, |b| self.get(b).unwrap())
            .expect("restriction of increasing tableau");
        (low, high)
    }

    /// The chain of shapes `lambda = chain[0]`, `chain[i] = lambda` plus all
    /// cells with entry at most `i`, up to `chain[max] = nu`.
    pub fn shape_sequence(&self) -> ShapeSequence {
        let max = self.max_label();
        let inner = self.shape.inner();
        let mut chain = Vec::with_capacity(max as usize + 1);
        for i in 0..=max {
            let parts: Vec<usize> = (0..self.shape.outer().len())
                .map(|r| inner.part(r) + self.rows[r].iter().take_while(|&&v| v <= i).count())
                .collect();
            chain.push(Partition::new(parts).expect("prefix cells form a partition"));
        }
        ShapeSequence::new(chain).expect("increasing tableau yields a valid chain")
    }

    pub fn to_json(&self) -> String {
        let dto = TableauDto::from(self);
        serde_json::to_string(&dto).expect("tableau serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let dto: TableauDto =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad tableau json: {e}")))?;
        dto.into_tableau()
    }
}

/// Text form: one line per row of the outer shape, `.` for a cell of the
/// inner shape, decimal entries for filled cells, single spaces between
/// tokens. This format is byte-stable for golden comparisons.
impl fmt::Display for IncreasingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.shape.outer().len() {
            if r > 0 {
                writeln!(f)?;
            }
            let mut first = true;
            for c in 0..self.shape.outer().part(r) {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                match self.get(BoxPos::new(r, c)) {
                    Some(v) => write!(f, "{v}")?,
                    None => write!(f, ".")?,
                }
            }
        }
        Ok(())
    }
}

impl FromStr for IncreasingTableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut outer = Vec::new();
        let mut inner = Vec::new();
        let mut rows = Vec::new();
        for (r, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let dots = tokens.iter().take_while(|t| **t == ".").count();
            let mut row = Vec::new();
            for t in &tokens[dots..] {
                if *t == "." {
                    return Err(Error::Parse(format!(
                        "row {r}: inner cells must form a prefix"
                    )));
                }
                row.push(
                    t.parse::<u32>()
                        .map_err(|e| Error::Parse(format!("row {r}: bad entry {t:?}: {e}")))?,
                );
            }
            outer.push(tokens.len());
            inner.push(dots);
            rows.push(row);
        }
        let shape = SkewShape::new(
            Partition::new(outer).map_err(|e| Error::Parse(e.to_string()))?,
            Partition::new(inner).map_err(|e| Error::Parse(e.to_string()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        IncreasingTableau::new(shape, rows)
    }
}

#[derive(Serialize, Deserialize)]
struct TableauDto {
    outer: Vec<usize>,
    inner: Vec<usize>,
    rows: Vec<Vec<Option<u32>>>,
}

impl From<&IncreasingTableau> for TableauDto {
    fn from(t: &IncreasingTableau) -> Self {
        let outer = t.shape.outer().parts().to_vec();
        let inner = t.shape.inner().parts().to_vec();
        let rows = (0..outer.len())
            .map(|r| (0..outer[r]).map(|c| t.get(BoxPos::new(r, c))).collect())
            .collect();
        TableauDto { outer, inner, rows }
    }
}

impl TableauDto {
    fn into_tableau(self) -> Result<IncreasingTableau> {
        let shape = SkewShape::new(Partition::new(self.outer)?, Partition::new(self.inner)?)?;
        let inner = shape.inner().clone();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c >= inner.part(r))
                    .map(|(c, v)| {
                        v.ok_or_else(|| Error::Parse(format!("missing entry at ({r},{c})")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IncreasingTableau::new(shape, rows)
    }
}

/// The superstandard tableau of shape `mu`: rows filled consecutively, the
/// first with `1..=mu_1`, the second continuing from there, and so on.
pub fn superstandard(mu: &Partition) -> IncreasingTableau {
    let mut next = 0u32;
    let rows = mu
        .parts()
        .iter()
        .map(|&len| {
            (0..len)
                .map(|_| {
                    next += 1;
                    next
                })
                .collect()
        })
        .collect();
    IncreasingTableau::new(SkewShape::straight(mu.clone()), rows)
        .expect("consecutive filling is increasing")
}

/// Length of the longest strictly increasing subsequence, by patience
/// sorting: maintain the smallest possible tail of each length and replace
/// the first tail at least as large as the incoming value.
pub fn lis(word: &[u32]) -> usize {
    let mut tails: Vec<u32> = Vec::new();
    for &x in word {
        match tails.partition_point(|&t| t < x) {
            i if i == tails.len() => tails.push(x),
            i => tails[i] = x,
        }
    }
    tails.len()
}

/// A strictly increasing chain of shapes whose consecutive differences have
/// no two boxes in the same row or column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeSequence {
    chain: Vec<Partition>,
}

impl ShapeSequence {
    pub fn new(chain: Vec<Partition>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        for w in chain.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if !b.contains(a) || a == b {
                return Err(Error::InvalidChain(format!("{a} not strictly under {b}")));
            }
            let added: Vec<BoxPos> = b.boxes().filter(|x| !a.contains_box(*x)).collect();
            let mut rows: Vec<_> = added.iter().map(|x| x.row).collect();
            let mut cols: Vec<_> = added.iter().map(|x| x.col).collect();
            rows.sort_unstable();
            cols.sort_unstable();
            rows.dedup();
            cols.dedup();
            if rows.len() != added.len() || cols.len() != added.len() {
                return Err(Error::InvalidChain(format!(
                    "difference {b}/{a} has two boxes in a row or column"
                )));
            }
        }
        Ok(ShapeSequence { chain })
    }

    pub fn chain(&self) -> &[Partition] {
        &self.chain
    }

    pub fn first(&self) -> &Partition {
        self.chain.first().expect("chain nonempty")
    }

    pub fn last(&self) -> &Partition {
        self.chain.last().expect("chain nonempty")
    }
}

/// Rebuilds the tableau encoded by a chain: entry `i` on `chain[i]/chain[i-1]`.
pub fn from_shape_sequence(seq: &ShapeSequence) -> IncreasingTableau {
    let chain = seq.chain();
    let shape = SkewShape::new(chain[chain.len() - 1].clone(), chain[0].clone())
        .expect("chain is increasing");
    IncreasingTableau::from_cells(shape, |b| {
        (1..chain.len())
            .find(|&i| chain[i].contains_box(b))
            .expect("cell appears along chain") as u32
    })
    .expect("chain labels increase along rows and columns")
}

/// Streams every strictly increasing filling of `shape` with values in
/// `{1..=max_label}`, depth-first by label layer. With `surjective` set,
/// only canonical fillings (value set exactly `{1..q}` for the maximum used
/// label `q`) are produced; otherwise any value set inside `{1..max_label}`
/// is allowed.
pub fn enumerate_inc(shape: &SkewShape, max_label: u32, surjective: bool) -> IncEnumerator {
    IncEnumerator::new(shape.clone(), max_label, surjective)
}

/// Generator behind [`enumerate_inc`].
///
/// A filling is the chain of shapes cut out by its label layers, so the
/// search walks chains: starting from the inner shape, level `i` decides
/// the cells labelled `i` by growing the current shape by a nonempty
/// antichain inside the outer shape, or, in the non-surjective mode, by
/// skipping the label. Only genuine fillings are ever visited, which keeps
/// canonical enumeration proportional to its output.
pub struct IncEnumerator {
    shape: SkewShape,
    max_label: u32,
    surjective: bool,
    /// Current chain; `chain[0]` is the inner shape, entry `i` the shape
    /// after label `i`.
    chain: Vec<Partition>,
    /// One frame per decided level: remaining candidate extensions (popped
    /// in order) and whether the skip option is still pending.
    stack: Vec<(Vec<Partition>, bool)>,
    started: bool,
}

impl IncEnumerator {
    fn new(shape: SkewShape, max_label: u32, surjective: bool) -> Self {
        let chain = vec![shape.inner().clone()];
        IncEnumerator {
            shape,
            max_label,
            surjective,
            chain,
            stack: Vec::new(),
            started: false,
        }
    }

    /// Frame for the next level, if any label budget remains.
    fn open_level(&mut self) {
        let depth = self.chain.len() as u32 - 1;
        let current = self.chain.last().expect("chain nonempty");
        let candidates = if depth < self.max_label {
            let mut c = crate::shapes::antichain_extensions(current, self.shape.outer());
            c.reverse(); // popped smallest-first
            c
        } else {
            Vec::new()
        };
        self.stack
            .push((candidates, !self.surjective && depth < self.max_label));
    }

    fn qualifies(&self) -> bool {
        let full = self.chain.last() == Some(self.shape.outer());
        if self.surjective {
            full
        } else {
            full && self.chain.len() as u32 == self.max_label + 1
        }
    }

    fn emit(&self) -> IncreasingTableau {
        let outer = self.shape.outer();
        let inner = self.shape.inner();
        let mut rows: Vec<Vec<u32>> = (0..outer.len()).map(|_| Vec::new()).collect();
        // Label of a cell = the level at which it joined the chain; skipped
        // levels repeat the shape, so the first index containing the cell
        // is its label in both modes.
        for (r, row) in rows.iter_mut().enumerate() {
            for c in inner.part(r)..outer.part(r) {
                let b = BoxPos::new(r, c);
                let level = (1..self.chain.len())
                    .find(|&i| self.chain[i].contains_box(b))
                    .expect("cell joined the chain");
                row.push(level as u32);
            }
        }
        IncreasingTableau {
            shape: self.shape.clone(),
            rows,
        }
    }
}

impl Iterator for IncEnumerator {
    type Item = IncreasingTableau;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            self.open_level();
            if self.qualifies() {
                return Some(self.emit());
            }
        }
        loop {
            let (candidates, skip_pending) = self.stack.last_mut()?;
            let next = match candidates.pop() {
                Some(ext) => Some(ext),
                None if *skip_pending => {
                    *skip_pending = false;
                    Some(self.chain.last().expect("chain nonempty").clone())
                }
                None => None,
            };
            match next {
                Some(shape) => {
                    self.chain.push(shape);
                    self.open_level();
                    if self.qualifies() {
                        return Some(self.emit());
                    }
                }
                None => {
                    self.stack.pop();
                    self.chain.pop();
                }
            }
        }
    }
}

/// Tests the `t`-Pieri shape: the skew shape is a horizontal strip, the
/// bottom-most filled row is `1,2,...,k`, every higher filled row is a
/// consecutive run starting at the previous run's last entry (a selected
/// row) or one past it, and the top value is exactly `t`.
pub fn is_t_pieri_filling(t_ab: &IncreasingTableau, t: u32) -> bool {
    let shape = t_ab.shape();
    if !shape.is_horizontal_strip() || shape.n_cells() == 0 {
        return false;
    }
    let filled: Vec<usize> = (0..shape.outer().len())
        .filter(|&r| shape.outer().part(r) > shape.inner().part(r))
        .collect();
    let mut last_entry: Option<u32> = None;
    for &r in filled.iter().rev() {
        let row = &t_ab_row(t_ab, r);
        let start = row[0];
        if !row.iter().enumerate().all(|(i, &v)| v == start + i as u32) {
            return false;
        }
        match last_entry {
            None => {
                if start != 1 {
                    return false;
                }
            }
            Some(e) => {
                if start != e && start != e + 1 {
                    return false;
                }
            }
        }
        last_entry = Some(*row.last().expect("filled row nonempty"));
    }
    last_entry == Some(t)
}

fn t_ab_row(t: &IncreasingTableau, r: usize) -> Vec<u32> {
    let inner = t.shape().inner().part(r);
    (inner..t.shape().outer().part(r))
        .map(|c| t.get(BoxPos::new(r, c)).expect("cell in row"))
        .collect()
}
