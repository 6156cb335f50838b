//! Signed K-theory structure constants of Grassmannians.
//!
//! The main rule: `(-1)^(|nu|-|lambda|-|mu|) C` counts the increasing
//! tableaux on `nu/lambda` that K-rectify to the superstandard tableau of
//! `mu`. Around it: Lenart's Pieri closed form, the t-Pieri fillings,
//! product expansions, the meet/join product difference, and the
//! commutativity and associativity identities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::shapes::{enumerate_partitions_in, BoxPos, Partition, Rectangle, SkewShape};
use crate::slides::krect;
use crate::tableau::{enumerate_inc, is_t_pieri_filling, lis, superstandard, IncreasingTableau};
use crate::Result;

/// Version tag embedded in persisted tables; bump when the counting rule or
/// enumeration order changes so stale caches are rejected.
pub const RULE_VERSION: &str = "kjdt-v1";

/// A structure constant as a witness count plus its signed value
/// `(-1)^(|nu|-|lambda|-|mu|) * count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedCoefficient {
    pub count: u64,
    pub signed: i64,
}

impl SignedCoefficient {
    pub fn zero() -> Self {
        SignedCoefficient {
            count: 0,
            signed: 0,
        }
    }

    fn from_count(count: u64, degree_excess: usize) -> Self {
        let sign = if degree_excess.is_multiple_of(2) {
            1
        } else {
            -1
        };
        SignedCoefficient {
            count,
            signed: sign * count as i64,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.count == 0
    }
}

fn check_in_rectangle(shapes: &[&Partition], ambient: &Rectangle) -> Result<()> {
    for s in shapes {
        if !ambient.contains(s) {
            return Err(Error::ShapeExceedsRectangle(format!("{s} in {ambient}")));
        }
    }
    Ok(())
}

/// Searches `INC(nu/lambda)` for tableaux rectifying to the superstandard
/// tableau of `mu`, with the pruning pipeline: cell-local strictness, label
/// accounting, per-cell value headroom, reading-word LIS bounds per
/// completed row, the t-Pieri subtableau test, and the final rectification.
struct WitnessSearch {
    shape: SkewShape,
    cells: Vec<BoxPos>,
    deps: Vec<(Option<usize>, Option<usize>)>,
    /// Cells strictly below in the column / strictly right in the row; each
    /// forces a chain of larger values, capping the entry here.
    headroom: Vec<u32>,
    row_of: Vec<usize>,
    row_last: Vec<bool>,
    max_label: u32,
    target_lis: usize,
    target: IncreasingTableau,
    prune: bool,
    values: Vec<u32>,
    used: Vec<u32>,
    missing: u32,
    count: u64,
    witnesses: Option<Vec<IncreasingTableau>>,
}

impl WitnessSearch {
    fn new(shape: SkewShape, mu: &Partition, collect: bool, prune: bool) -> Self {
        let cells: Vec<BoxPos> = shape.cells().collect();
        let index_of = |b: BoxPos, cells: &[BoxPos]| cells.binary_search(&b).ok();
        let deps = cells
            .iter()
            .map(|&b| {
                let left = (b.col > 0)
                    .then(|| index_of(BoxPos::new(b.row, b.col - 1), &cells))
                    .flatten();
                let up = (b.row > 0)
                    .then(|| index_of(BoxPos::new(b.row - 1, b.col), &cells))
                    .flatten();
                (left, up)
            })
            .collect();
        let max_label = mu.size() as u32;
        let headroom = cells
            .iter()
            .map(|&b| {
                let right = (b.col + 1..shape.outer().part(b.row))
                    .filter(|&c| shape.contains_cell(BoxPos::new(b.row, c)))
                    .count();
                let below = (b.row + 1..shape.outer().len())
                    .filter(|&r| shape.contains_cell(BoxPos::new(r, b.col)))
                    .count();
                max_label.saturating_sub(right.max(below) as u32)
            })
            .collect();
        let row_of: Vec<usize> = cells.iter().map(|b| b.row).collect();
        let row_last: Vec<bool> = cells
            .iter()
            .enumerate()
            .map(|(i, b)| i + 1 == cells.len() || cells[i + 1].row != b.row)
            .collect();
        WitnessSearch {
            shape,
            cells,
            deps,
            headroom,
            row_of,
            row_last,
            max_label,
            target_lis: mu.part(0),
            target: superstandard(mu),
            prune,
            values: Vec::new(),
            used: vec![0; max_label as usize + 1],
            missing: max_label,
            count: 0,
            witnesses: collect.then(Vec::new),
        }
    }

    fn run(&mut self) {
        if self.cells.is_empty() {
            if self.max_label == 0 {
                self.accept();
            }
            return;
        }
        self.descend(0);
    }

    fn descend(&mut self, i: usize) {
        let remaining = self.cells.len() - i;
        if (self.missing as usize) > remaining {
            return;
        }
        let (left, up) = self.deps[i];
        let mut lo = 0u32;
        if let Some(j) = left {
            lo = lo.max(self.values[j]);
        }
        if let Some(j) = up {
            lo = lo.max(self.values[j]);
        }
        let hi = if self.prune {
            self.headroom[i]
        } else {
            self.max_label
        };
        for v in lo + 1..=hi {
            self.values.push(v);
            if self.used[v as usize] == 0 {
                self.missing -= 1;
            }
            self.used[v as usize] += 1;
            if !(self.prune && self.row_last[i] && self.lis_prune_fails(i)) {
                if i + 1 == self.cells.len() {
                    if self.missing == 0 {
                        self.finish();
                    }
                } else {
                    self.descend(i + 1);
                }
            }
            self.used[v as usize] -= 1;
            if self.used[v as usize] == 0 {
                self.missing += 1;
            }
            self.values.pop();
        }
    }

    /// LIS bounds over the word tail formed by the filled rows: the tail's
    /// LIS can only grow as earlier rows fill in, and each unfilled cell
    /// adds at most one.
    fn lis_prune_fails(&self, i: usize) -> bool {
        let row = self.row_of[i];
        let mut word: Vec<u32> = Vec::with_capacity(i + 1);
        for r in (0..=row).rev() {
            let (mut a, mut b_) = (0, 0);
            for (j, &cr) in self.row_of.iter().take(i + 1).enumerate() {
                if cr == r {
                    if a == 0 {
                        a = j + 1;
                    }
                    b_ = j + 1;
                }
            }
            if a > 0 {
                word.extend_from_slice(&self.values[a - 1..b_]);
            }
        }
        let tail_lis = lis(&word);
        let remaining = self.cells.len() - (i + 1);
        tail_lis > self.target_lis || tail_lis + remaining < self.target_lis
    }

    fn finish(&mut self) {
        let t = IncreasingTableau::new(self.shape.clone(), {
            let mut rows = Vec::with_capacity(self.shape.outer().len());
            let mut at = 0;
            for r in 0..self.shape.outer().len() {
                let w = self.shape.outer().part(r) - self.shape.inner().part(r);
                rows.push(self.values[at..at + w].to_vec());
                at += w;
            }
            rows
        })
        .expect("search respects strictness");
        if self.prune {
            if lis(&t.reading_word()) != self.target_lis {
                return;
            }
            if self.target_lis > 0 {
                let (low, _) = t.split_at_label(self.target_lis as u32);
                if !is_t_pieri_filling(&low, self.target_lis as u32) {
                    return;
                }
            }
        }
        match krect(&t) {
            Ok(r) if r == self.target => {
                self.count += 1;
                if let Some(w) = self.witnesses.as_mut() {
                    w.push(t);
                }
            }
            _ => {}
        }
    }

    fn accept(&mut self) {
        self.count += 1;
        if let Some(w) = self.witnesses.as_mut() {
            w.push(IncreasingTableau::empty());
        }
    }
}

fn counted_search(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ambient: &Rectangle,
    collect: bool,
    prune: bool,
) -> Result<(u64, Vec<IncreasingTableau>)> {
    check_in_rectangle(&[lambda, mu, nu], ambient)?;
    if !nu.contains(lambda) {
        return Ok((0, Vec::new()));
    }
    let shape = SkewShape::new(nu.clone(), lambda.clone())?;
    if mu.is_empty() {
        // Only the empty tableau rectifies to the empty tableau.
        let hit = shape.n_cells() == 0;
        return Ok((
            hit as u64,
            if hit && collect {
                vec![IncreasingTableau::new(shape, vec![])?]
            } else {
                Vec::new()
            },
        ));
    }
    if prune {
        // A witness carries exactly the labels 1..=|mu|, and its reading
        // word's LIS is the first row of mu; a row longer than that or a
        // column taller than |mu| is impossible.
        if shape.n_cells() < mu.size() {
            return Ok((0, Vec::new()));
        }
        let too_long_row =
            (0..nu.len()).any(|r| nu.part(r) - lambda.part(r).min(nu.part(r)) > mu.part(0));
        if too_long_row {
            return Ok((0, Vec::new()));
        }
        let too_tall_col = (0..nu.part(0)).any(|c| {
            (0..nu.len())
                .filter(|&r| shape.contains_cell(BoxPos::new(r, c)))
                .count()
                > mu.size()
        });
        if too_tall_col {
            return Ok((0, Vec::new()));
        }
    } else if shape.n_cells() == 0 {
        return Ok((0, Vec::new()));
    }
    let mut search = WitnessSearch::new(shape, mu, collect, prune);
    search.run();
    Ok((search.count, search.witnesses.unwrap_or_default()))
}

/// The signed structure constant by the rectification-counting rule, with
/// pruning. The default greedy rectification order suffices because a
/// tableau rectifying to a superstandard target does so under every order.
pub fn lr_coefficient(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ambient: &Rectangle,
) -> Result<SignedCoefficient> {
    let (count, _) = counted_search(lambda, mu, nu, ambient, false, true)?;
    Ok(signed_from_count(count, lambda, mu, nu))
}

/// Attaches the alternating sign. A witness carries the labels `1..=|mu|`
/// on the cells of `nu/lambda`, so the count is zero whenever the degree
/// excess would be negative.
fn signed_from_count(
    count: u64,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> SignedCoefficient {
    match nu.size().checked_sub(lambda.size() + mu.size()) {
        Some(excess) => SignedCoefficient::from_count(count, excess),
        None => {
            debug_assert_eq!(count, 0);
            SignedCoefficient::zero()
        }
    }
}

/// The same count with every behavior-affecting prune disabled: enumerate
/// all of `INC(nu/lambda)` and rectify each tableau. Exists to check that
/// pruning is behavior-preserving.
pub fn lr_coefficient_unpruned(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ambient: &Rectangle,
) -> Result<SignedCoefficient> {
    check_in_rectangle(&[lambda, mu, nu], ambient)?;
    if !nu.contains(lambda) {
        return Ok(SignedCoefficient::zero());
    }
    let shape = SkewShape::new(nu.clone(), lambda.clone())?;
    let target = superstandard(mu);
    let count = if shape.n_cells() == 0 {
        (target.is_empty()) as u64
    } else {
        enumerate_inc(&shape, shape.n_cells() as u32, true)
            .filter(|t| krect(t).map(|r| r == target).unwrap_or(false))
            .count() as u64
    };
    Ok(signed_from_count(count, lambda, mu, nu))
}

/// The tableaux counted by [`lr_coefficient`], in enumeration order.
pub fn witnesses(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ambient: &Rectangle,
) -> Result<Vec<IncreasingTableau>> {
    Ok(counted_search(lambda, mu, nu, ambient, true, true)?.1)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u64 = 1;
    for i in 0..k {
        out = out * (n - i) as u64 / (i + 1) as u64;
    }
    out
}

/// Lenart's closed form: when `nu/lambda` is a horizontal strip of size at
/// least `t` the count is `binom(rows(nu/lambda) - 1, |nu/lambda| - t)` with
/// sign `(-1)^(|nu/lambda| - t)`; otherwise zero.
pub fn pieri_coefficient(lambda: &Partition, t: u32, nu: &Partition) -> SignedCoefficient {
    if t == 0 || !nu.contains(lambda) {
        return SignedCoefficient::zero();
    }
    let shape = SkewShape::new(nu.clone(), lambda.clone()).expect("containment checked");
    let size = shape.n_cells();
    if !shape.is_horizontal_strip() || size < t as usize {
        return SignedCoefficient::zero();
    }
    let excess = size - t as usize;
    SignedCoefficient::from_count(
        binomial(shape.row_count().saturating_sub(1), excess),
        excess,
    )
}

/// The t-Pieri fillings of a horizontal strip: one for each choice of
/// `|nu/lambda| - t` of the non-bottom-most filled rows. The bottom row gets
/// `1..=k`; each higher filled row continues from the last entry of the row
/// below it when selected, and from one past it otherwise.
pub fn t_pieri_fillings(shape: &SkewShape, t: u32) -> Vec<IncreasingTableau> {
    if t == 0 || !shape.is_horizontal_strip() {
        return Vec::new();
    }
    let size = shape.n_cells();
    if size < t as usize {
        return Vec::new();
    }
    let excess = size - t as usize;
    let filled: Vec<usize> = (0..shape.outer().len())
        .filter(|&r| shape.outer().part(r) > shape.inner().part(r))
        .collect();
    let upper = filled.len().saturating_sub(1);
    if excess > upper {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << upper {
        if mask.count_ones() as usize != excess {
            continue;
        }
        // Bit b of the mask selects the b-th filled row counted upward from
        // just above the bottom.
        let mut entries: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut last = 0u32;
        for (idx, &r) in filled.iter().rev().enumerate() {
            let width = shape.outer().part(r) - shape.inner().part(r);
            let start = match idx {
                0 => 1,
                _ if mask >> (idx - 1) & 1 == 1 => last,
                _ => last + 1,
            };
            let row: Vec<u32> = (0..width as u32).map(|i| start + i).collect();
            last = *row.last().expect("filled row nonempty");
            entries.push((r, row));
        }
        let tableau = IncreasingTableau::from_cells(shape.clone(), |b| {
            let (_, row) = entries
                .iter()
                .find(|(r, _)| *r == b.row)
                .expect("filled rows cover cells");
            row[b.col - shape.inner().part(b.row)]
        })
        .expect("construction yields an increasing tableau");
        debug_assert!(is_t_pieri_filling(&tableau, t));
        out.push(tableau);
    }
    out
}

/// Expands the product of two Schubert classes: the signed coefficient of
/// every shape in the rectangle, nonzero entries only.
pub fn product_expansion(
    lambda: &Partition,
    mu: &Partition,
    ambient: &Rectangle,
) -> Result<BTreeMap<Partition, SignedCoefficient>> {
    check_in_rectangle(&[lambda, mu], ambient)?;
    let mut out = BTreeMap::new();
    for nu in enumerate_partitions_in(ambient) {
        if nu.size() < lambda.size() + mu.size() || !nu.contains(lambda) || !nu.contains(mu) {
            continue;
        }
        let c = lr_coefficient(lambda, mu, &nu, ambient)?;
        if !c.is_zero() {
            out.insert(nu, c);
        }
    }
    Ok(out)
}

/// The product difference `[O_meet][O_join] - [O_lambda][O_mu]` as a map
/// from shapes to signed integers, nonzero entries only.
pub fn product_difference(
    lambda: &Partition,
    mu: &Partition,
    ambient: &Rectangle,
) -> Result<BTreeMap<Partition, i64>> {
    let meet = lambda.meet(mu);
    let join = lambda.join(mu);
    let plus = product_expansion(&meet, &join, ambient)?;
    let minus = product_expansion(lambda, mu, ambient)?;
    let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
    for (nu, c) in plus {
        *out.entry(nu).or_insert(0) += c.signed;
    }
    for (nu, c) in minus {
        *out.entry(nu).or_insert(0) -= c.signed;
    }
    out.retain(|_, d| *d != 0);
    Ok(out)
}

/// Whether every term of the product difference satisfies
/// `(-1)^(|nu|-|lambda|-|mu|) d >= 0`.
pub fn satisfies_sign_conjecture(
    lambda: &Partition,
    mu: &Partition,
    ambient: &Rectangle,
) -> Result<bool> {
    let base = lambda.size() + mu.size();
    Ok(product_difference(lambda, mu, ambient)?
        .iter()
        .all(|(nu, d)| {
            let sign = if (nu.size() - base).is_multiple_of(2) {
                1
            } else {
                -1
            };
            sign * d >= 0
        }))
}

/// Checks the commutation symmetry by computing both product expansions.
pub fn check_commutativity(
    lambda: &Partition,
    mu: &Partition,
    ambient: &Rectangle,
) -> Result<bool> {
    Ok(product_expansion(lambda, mu, ambient)? == product_expansion(mu, lambda, ambient)?)
}

/// Checks the associativity identity: for every shape in the rectangle, the
/// two ways of expanding a triple product agree.
pub fn check_associativity(
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
    ambient: &Rectangle,
) -> Result<bool> {
    check_in_rectangle(&[alpha, beta, gamma], ambient)?;
    let mut lhs: BTreeMap<Partition, i64> = BTreeMap::new();
    for (sigma, c1) in product_expansion(alpha, beta, ambient)? {
        for (nu, c2) in product_expansion(&sigma, gamma, ambient)? {
            *lhs.entry(nu).or_insert(0) += c1.signed * c2.signed;
        }
    }
    let mut rhs: BTreeMap<Partition, i64> = BTreeMap::new();
    for (tau, c1) in product_expansion(beta, gamma, ambient)? {
        for (nu, c2) in product_expansion(alpha, &tau, ambient)? {
            *rhs.entry(nu).or_insert(0) += c1.signed * c2.signed;
        }
    }
    lhs.retain(|_, c| *c != 0);
    rhs.retain(|_, c| *c != 0);
    Ok(lhs == rhs)
}

/// Which rule produced a table's numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Main,
    Growth,
    Oracle,
    Pieri,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Main => "main",
            Provenance::Growth => "growth",
            Provenance::Oracle => "oracle",
            Provenance::Pieri => "pieri",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "main" => Ok(Provenance::Main),
            "growth" => Ok(Provenance::Growth),
            "oracle" => Ok(Provenance::Oracle),
            "pieri" => Ok(Provenance::Pieri),
            other => Err(Error::Parse(format!("unknown provenance {other:?}"))),
        }
    }
}

/// A persistent map `(lambda, mu, nu) -> SignedCoefficient` over a fixed
/// rectangle, symmetric in the first two shapes, storing nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    rectangle: Rectangle,
    provenance: Provenance,
    entries: BTreeMap<(Partition, Partition, Partition), SignedCoefficient>,
}

impl CoefficientTable {
    pub fn new(rectangle: Rectangle, provenance: Provenance) -> Self {
        CoefficientTable {
            rectangle,
            provenance,
            entries: BTreeMap::new(),
        }
    }

    pub fn rectangle(&self) -> Rectangle {
        self.rectangle
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn key(
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> (Partition, Partition, Partition) {
        if lambda.graded_lex_cmp(mu).is_le() {
            (lambda.clone(), mu.clone(), nu.clone())
        } else {
            (mu.clone(), lambda.clone(), nu.clone())
        }
    }

    pub fn insert(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        c: SignedCoefficient,
    ) {
        if !c.is_zero() {
            self.entries.insert(Self::key(lambda, mu, nu), c);
        }
    }

    /// The stored coefficient; `None` when `nu` leaves the rectangle (the
    /// truncation is reported as absence, not as zero).
    pub fn get(
        &self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Option<SignedCoefficient> {
        if !self.rectangle.contains(nu) {
            return None;
        }
        Some(
            self.entries
                .get(&Self::key(lambda, mu, nu))
                .copied()
                .unwrap_or_else(SignedCoefficient::zero),
        )
    }

    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (&(Partition, Partition, Partition), &SignedCoefficient)> {
        self.entries.iter()
    }

    /// Whether two tables carry identical numbers, ignoring provenance.
    pub fn same_entries(&self, other: &CoefficientTable) -> bool {
        self.rectangle == other.rectangle && self.entries == other.entries
    }

    /// Fills the table for every pair of shapes in the rectangle using the
    /// named rule.
    pub fn compute(rectangle: Rectangle, provenance: Provenance) -> Result<Self> {
        Self::compute_with_jobs(rectangle, provenance, 1)
    }

    /// Parallel table fill: workers take (lambda, mu) pairs round-robin,
    /// each computing the full expansion over `nu` with pure enumeration;
    /// results meet at a single deterministic merge.
    pub fn compute_with_jobs(
        rectangle: Rectangle,
        provenance: Provenance,
        jobs: usize,
    ) -> Result<Self> {
        if provenance == Provenance::Pieri {
            return Err(Error::InvalidShape(
                "pieri tables are built per single-row shape".into(),
            ));
        }
        let shapes = enumerate_partitions_in(&rectangle);
        let mut pairs: Vec<(Partition, Partition)> = Vec::new();
        for (i, lambda) in shapes.iter().enumerate() {
            for mu in &shapes[i..] {
                pairs.push((lambda.clone(), mu.clone()));
            }
        }
        let jobs = jobs.max(1).min(pairs.len().max(1));
        type Entry = ((Partition, Partition, Partition), SignedCoefficient);
        let worker = |worker_id: usize| -> Result<Vec<Entry>> {
            let mut out = Vec::new();
            let mut basis = crate::grothendieck::GrothendieckBasis::new(rectangle.rows);
            for (lambda, mu) in pairs.iter().skip(worker_id).step_by(jobs) {
                match provenance {
                    Provenance::Main => {
                        for nu in &shapes {
                            if nu.size() < lambda.size() + mu.size()
                                || !nu.contains(lambda)
                                || !nu.contains(mu)
                            {
                                continue;
                            }
                            let c = lr_coefficient(lambda, mu, nu, &rectangle)?;
                            if !c.is_zero() {
                                out.push((Self::key(lambda, mu, nu), c));
                            }
                        }
                    }
                    Provenance::Growth => {
                        for (nu, count) in crate::growth::kgrowth_counts(lambda, mu, &rectangle) {
                            if count == 0 || nu.size() < lambda.size() + mu.size() {
                                continue;
                            }
                            let c = SignedCoefficient::from_count(
                                count,
                                nu.size() - lambda.size() - mu.size(),
                            );
                            out.push((Self::key(lambda, mu, &nu), c));
                        }
                    }
                    Provenance::Oracle => {
                        let prod = basis.grothendieck(lambda).mul(&basis.grothendieck(mu));
                        for (nu, signed) in basis.expand(&prod)? {
                            if signed == 0 || !rectangle.contains(&nu) {
                                continue;
                            }
                            let c = SignedCoefficient {
                                count: signed.unsigned_abs(),
                                signed,
                            };
                            out.push((Self::key(lambda, mu, &nu), c));
                        }
                    }
                    Provenance::Pieri => unreachable!("rejected above"),
                }
            }
            Ok(out)
        };
        let chunks: Vec<Result<Vec<Entry>>> = if jobs == 1 {
            vec![worker(0)]
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..jobs).map(|w| scope.spawn(move || worker(w))).collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("table worker panicked"))
                    .collect()
            })
        };
        let mut table = CoefficientTable::new(rectangle, provenance);
        for chunk in chunks {
            for (key, c) in chunk? {
                table.entries.insert(key, c);
            }
        }
        Ok(table)
    }

    /// CSV form: comment lines carrying the rule version, rectangle and
    /// provenance, then `lambda,mu,nu,count,signed` rows in partition text
    /// form.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# rule-version: {RULE_VERSION}\n# rectangle: {}\n# provenance: {}\nlambda,mu,nu,count,signed\n",
            self.rectangle, self.provenance
        );
        for ((l, m, n), c) in &self.entries {
            out.push_str(&format!("{l},{m},{n},{},{}\n", c.count, c.signed));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rectangle = None;
        let mut provenance = None;
        let mut version_ok = false;
        let mut entries = BTreeMap::new();
        let mut saw_header = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("rule-version:") {
                    version_ok = v.trim() == RULE_VERSION;
                    if !version_ok {
                        return Err(Error::Parse(format!(
                            "stale table: rule version {} wanted {RULE_VERSION}",
                            v.trim()
                        )));
                    }
                } else if let Some(v) = rest.strip_prefix("rectangle:") {
                    rectangle = Some(v.trim().parse::<Rectangle>()?);
                } else if let Some(v) = rest.strip_prefix("provenance:") {
                    provenance = Some(v.trim().parse::<Provenance>()?);
                }
                continue;
            }
            if !saw_header {
                if line != "lambda,mu,nu,count,signed" {
                    return Err(Error::Parse(format!("unexpected header {line:?}")));
                }
                saw_header = true;
                continue;
            }
            let fields = split_top_level_commas(line);
            if fields.len() != 5 {
                return Err(Error::Parse(format!("bad row {line:?}")));
            }
            let l: Partition = fields[0].parse()?;
            let m: Partition = fields[1].parse()?;
            let n: Partition = fields[2].parse()?;
            let count: u64 = fields[3]
                .parse()
                .map_err(|e| Error::Parse(format!("bad count: {e}")))?;
            let signed: i64 = fields[4]
                .parse()
                .map_err(|e| Error::Parse(format!("bad signed value: {e}")))?;
            entries.insert((l, m, n), SignedCoefficient { count, signed });
        }
        if !version_ok {
            return Err(Error::Parse("table missing rule-version comment".into()));
        }
        Ok(CoefficientTable {
            rectangle: rectangle
                .ok_or_else(|| Error::Parse("table missing rectangle comment".into()))?,
            provenance: provenance
                .ok_or_else(|| Error::Parse("table missing provenance comment".into()))?,
            entries,
        })
    }

    pub fn to_json(&self) -> String {
        let dto = TableDto {
            rule_version: RULE_VERSION.to_string(),
            rectangle: self.rectangle.to_string(),
            provenance: self.provenance,
            entries: self
                .entries
                .iter()
                .map(|((l, m, n), c)| TableRow {
                    lambda: l.to_string(),
                    mu: m.to_string(),
                    nu: n.to_string(),
                    count: c.count,
                    signed: c.signed,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: TableDto =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad table json: {e}")))?;
        if dto.rule_version != RULE_VERSION {
            return Err(Error::Parse(format!(
                "stale table: rule version {} wanted {RULE_VERSION}",
                dto.rule_version
            )));
        }
        let mut entries = BTreeMap::new();
        for row in dto.entries {
            entries.insert(
                (row.lambda.parse()?, row.mu.parse()?, row.nu.parse()?),
                SignedCoefficient {
                    count: row.count,
                    signed: row.signed,
                },
            );
        }
        Ok(CoefficientTable {
            rectangle: dto.rectangle.parse()?,
            provenance: dto.provenance,
            entries,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TableDto {
    rule_version: String,
    rectangle: String,
    provenance: Provenance,
    entries: Vec<TableRow>,
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    lambda: String,
    mu: String,
    nu: String,
    count: u64,
    signed: i64,
}

/// Splits a CSV row on commas that are not nested inside parentheses, so
/// partition text forms survive.
pub fn split_top_level_commas(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in line.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}
