//! Independent oracle: set-valued semistandard tableaux, Grothendieck and
//! Schur polynomials, and expansion of products in the Grothendieck basis.
//!
//! A set-valued tableau assigns a nonempty set of labels to each box; it is
//! semistandard when each box's largest entry is weakly smaller than the
//! minimum of the box to its right and strictly smaller than the minimum of
//! the box below. Summing the signed weights of all such fillings with
//! labels at most `k` gives the Grothendieck polynomial, whose lowest-degree
//! homogeneous component is the Schur polynomial. Products expand uniquely
//! in the basis `{G_nu}`, and the coefficients are the signed K-theory
//! structure constants whenever `nu` fits in the ambient rectangle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::Error;
use crate::shapes::{BoxPos, Partition, Rectangle};
use crate::Result;

/// A set-valued filling of a straight shape, stored as one label bitmask per
/// box (bit `i` set means label `i + 1` present).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedTableau {
    shape: Partition,
    masks: Vec<u32>,
}

impl SetValuedTableau {
    /// Builds a set-valued tableau from per-box label lists in row-major
    /// order, validating nonemptiness and the semistandard conditions.
    pub fn new(shape: Partition, boxes: Vec<Vec<u32>>) -> Result<Self> {
        if boxes.len() != shape.size() {
            return Err(Error::InvalidTableau(format!(
                "{} boxes given, shape {shape} has {}",
                boxes.len(),
                shape.size()
            )));
        }
        let masks: Vec<u32> = boxes
            .iter()
            .map(|labels| {
                if labels.is_empty() {
                    return Err(Error::InvalidTableau("empty label set".into()));
                }
                let mut m = 0u32;
                for &l in labels {
                    if l == 0 || l > 32 {
                        return Err(Error::InvalidTableau(format!("label {l} out of range")));
                    }
                    m |= 1 << (l - 1);
                }
                Ok(m)
            })
            .collect::<Result<_>>()?;
        let t = SetValuedTableau { shape, masks };
        for b in t.shape.boxes() {
            let here = t.masks[t.cell_index(b).expect("box of shape")];
            let max_here = 32 - here.leading_zeros();
            let right = BoxPos::new(b.row, b.col + 1);
            if let Some(i) = t.cell_index(right) {
                let min_right = t.masks[i].trailing_zeros() + 1;
                if max_here > min_right {
                    return Err(Error::InvalidTableau(format!("row condition fails at {b}")));
                }
            }
            let below = BoxPos::new(b.row + 1, b.col);
            if let Some(i) = t.cell_index(below) {
                let min_below = t.masks[i].trailing_zeros() + 1;
                if max_here >= min_below {
                    return Err(Error::InvalidTableau(format!(
                        "column condition fails at {b}"
                    )));
                }
            }
        }
        Ok(t)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Labels of the box, ascending.
    pub fn labels_at(&self, b: BoxPos) -> Vec<u32> {
        let idx = self.cell_index(b).expect("box of shape");
        mask_labels(self.masks[idx])
    }

    fn cell_index(&self, b: BoxPos) -> Option<usize> {
        if !self.shape.contains_box(b) {
            return None;
        }
        let before: usize = (0..b.row).map(|r| self.shape.part(r)).sum();
        Some(before + b.col)
    }

    /// Total number of entries across all boxes.
    pub fn n_entries(&self) -> usize {
        self.masks.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_ordinary(&self) -> bool {
        self.masks.iter().all(|m| m.count_ones() == 1)
    }
}

fn mask_labels(mask: u32) -> Vec<u32> {
    (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

/// The signed weight of a semistandard set-valued tableau: sign
/// `(-1)^(entries - boxes)` and one exponent per label counting its
/// occurrences.
pub fn weight(t: &SetValuedTableau, vars: usize) -> (i64, Vec<u32>) {
    let mut exps = vec![0u32; vars];
    for m in &t.masks {
        let mut m = *m;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            exps[i] += 1;
            m &= m - 1;
        }
    }
    let sign = if (t.n_entries() - t.shape.size()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    (sign, exps)
}

/// Visits every semistandard filling as a flat row-major mask slice.
/// Candidates at each box are the nonempty subsets of `{1..=k}` whose
/// minimum is at least the left box's maximum and strictly exceeds the upper
/// box's maximum, in ascending bitmask order.
fn visit_setvalued(shape: &Partition, k: usize, singletons_only: bool, f: &mut impl FnMut(&[u32])) {
    if shape.len() > k {
        return;
    }
    if shape.is_empty() {
        f(&[]);
        return;
    }
    let cells: Vec<BoxPos> = shape.boxes().collect();
    let index_of = |b: BoxPos| cells.binary_search(&b).ok();
    let deps: Vec<(Option<usize>, Option<usize>)> = cells
        .iter()
        .map(|&b| {
            let left = (b.col > 0)
                .then(|| index_of(BoxPos::new(b.row, b.col - 1)))
                .flatten();
            let up = (b.row > 0)
                .then(|| index_of(BoxPos::new(b.row - 1, b.col)))
                .flatten();
            (left, up)
        })
        .collect();
    let full: u32 = if k == 32 { u32::MAX } else { (1 << k) - 1 };
    let mut masks: Vec<u32> = Vec::with_capacity(cells.len());

    // Minimum allowed label (1-based) at cell i given current masks.
    let min_label = |i: usize, masks: &[u32]| -> u32 {
        let (left, up) = deps[i];
        let mut lo = 1u32;
        if let Some(j) = left {
            lo = lo.max(32 - masks[j].leading_zeros());
        }
        if let Some(j) = up {
            lo = lo.max(32 - masks[j].leading_zeros() + 1);
        }
        lo
    };
    // Next candidate mask at cell i strictly after `prev` (0 for none).
    let next_mask = |i: usize, masks: &[u32], prev: u32| -> Option<u32> {
        let lo = min_label(i, masks);
        if lo > k as u32 {
            return None;
        }
        let allowed = full & !((1 << (lo - 1)) - 1);
        if singletons_only {
            let mut bit = if prev == 0 {
                1u32 << (lo - 1)
            } else {
                prev << 1
            };
            while bit <= allowed {
                if bit & allowed != 0 {
                    return Some(bit);
                }
                bit <<= 1;
            }
            return None;
        }
        let mut m = prev + 1;
        while m <= full {
            if m & !allowed == 0 && m != 0 {
                return Some(m);
            }
            // Skip past masks using disallowed low bits: force them clear.
            m = ((m | (!allowed & full)) + 1) & !(!allowed & full);
            if m == 0 {
                break;
            }
        }
        None
    };

    let mut pending: Option<u32> = None;
    loop {
        let i = masks.len();
        let prev = pending.take().unwrap_or(0);
        match next_mask(i, &masks, prev) {
            Some(m) => {
                masks.push(m);
                if masks.len() == cells.len() {
                    f(&masks);
                    pending = masks.pop();
                }
            }
            None => match masks.pop() {
                Some(prev) => pending = Some(prev),
                None => return,
            },
        }
    }
}

/// All semistandard set-valued tableaux of shape `lambda` with labels at
/// most `k`, in depth-first row-major order.
pub fn enumerate_setvalued(lambda: &Partition, k: usize) -> Vec<SetValuedTableau> {
    let mut out = Vec::new();
    visit_setvalued(lambda, k, false, &mut |masks| {
        out.push(SetValuedTableau {
            shape: lambda.clone(),
            masks: masks.to_vec(),
        });
    });
    out
}

/// An inhomogeneous symmetric polynomial with integer coefficients, stored
/// as a sorted map from exponent vectors to coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl SymmetricPolynomial {
    pub fn zero(vars: usize) -> Self {
        SymmetricPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: i64) {
        debug_assert_eq!(exps.len(), self.vars);
        let e = self.terms.entry(exps).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add_assign(&mut self, other: &SymmetricPolynomial) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), *c);
        }
    }

    pub fn sub_scaled(&mut self, other: &SymmetricPolynomial, scale: i64) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), -c * scale);
        }
    }

    pub fn mul(&self, other: &SymmetricPolynomial) -> SymmetricPolynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = SymmetricPolynomial::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .min()
    }

    pub fn homogeneous_component(&self, degree: usize) -> SymmetricPolynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() as usize == degree)
            .map(|(e, c)| (e.clone(), *c))
            .collect();
        SymmetricPolynomial {
            vars: self.vars,
            terms,
        }
    }

    /// The lexicographically largest exponent vector present.
    pub fn leading_exponent(&self) -> Option<&Vec<u32>> {
        self.terms.keys().next_back()
    }

    /// True when invariant under all adjacent variable swaps.
    pub fn is_symmetric(&self) -> bool {
        (0..self.vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut swapped = e.clone();
                swapped.swap(i, i + 1);
                self.coefficient(&swapped) == *c
            })
        })
    }
}

/// Dump: sorted `exponent-vector: coefficient` lines, exponents
/// comma-separated.
impl fmt::Display for SymmetricPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            write!(f, "{}: {c}", exps.join(","))?;
        }
        Ok(())
    }
}

/// A cache of Grothendieck and Schur polynomials in a fixed number of
/// variables, with the basis-expansion algorithm.
pub struct GrothendieckBasis {
    k: usize,
    g_cache: HashMap<Partition, SymmetricPolynomial>,
    s_cache: HashMap<Partition, SymmetricPolynomial>,
}

impl GrothendieckBasis {
    pub fn new(k: usize) -> Self {
        GrothendieckBasis {
            k,
            g_cache: HashMap::new(),
            s_cache: HashMap::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.k
    }

    /// The Grothendieck polynomial: the signed-weight sum over all
    /// semistandard set-valued tableaux with labels at most `k`.
    pub fn grothendieck(&mut self, lambda: &Partition) -> SymmetricPolynomial {
        if let Some(hit) = self.g_cache.get(lambda) {
            return hit.clone();
        }
        let mut p = SymmetricPolynomial::zero(self.k);
        let size = lambda.size();
        visit_setvalued(lambda, self.k, false, &mut |masks| {
            let mut exps = vec![0u32; self.k];
            let mut entries = 0usize;
            for m in masks {
                let mut m = *m;
                entries += m.count_ones() as usize;
                while m != 0 {
                    exps[m.trailing_zeros() as usize] += 1;
                    m &= m - 1;
                }
            }
            p.add_term(
                exps,
                if (entries - size).is_multiple_of(2) {
                    1
                } else {
                    -1
                },
            );
        });
        debug_assert!(p.is_symmetric(), "G_{lambda} must be symmetric");
        self.g_cache.insert(lambda.clone(), p.clone());
        p
    }

    /// The Schur polynomial: the weight sum over ordinary semistandard
    /// tableaux; equivalently the lowest-degree component of the
    /// Grothendieck polynomial.
    pub fn schur(&mut self, lambda: &Partition) -> SymmetricPolynomial {
        if let Some(hit) = self.s_cache.get(lambda) {
            return hit.clone();
        }
        let mut p = SymmetricPolynomial::zero(self.k);
        visit_setvalued(lambda, self.k, true, &mut |masks| {
            let mut exps = vec![0u32; self.k];
            for m in masks {
                exps[m.trailing_zeros() as usize] += 1;
            }
            p.add_term(exps, 1);
        });
        debug_assert!(p.is_symmetric(), "s_{lambda} must be symmetric");
        self.s_cache.insert(lambda.clone(), p.clone());
        p
    }

    /// Expands a symmetric polynomial as a finite integer combination of
    /// Grothendieck polynomials, working upward by total degree: the lowest
    /// homogeneous component is expanded in Schur polynomials by repeated
    /// leading-monomial elimination, the matching Grothendieck terms are
    /// subtracted, and the process repeats on the residual.
    pub fn expand(&mut self, p: &SymmetricPolynomial) -> Result<BTreeMap<Partition, i64>> {
        if p.vars() != self.k {
            return Err(Error::NotInSpan(format!(
                "polynomial in {} variables, basis in {}",
                p.vars(),
                self.k
            )));
        }
        let mut residual = p.clone();
        let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
        while let Some(d) = residual.lowest_degree() {
            let mut h = residual.homogeneous_component(d);
            let mut layer: Vec<(Partition, i64)> = Vec::new();
            while let Some(lead) = h.leading_exponent().cloned() {
                if lead.windows(2).any(|w| w[0] < w[1]) {
                    return Err(Error::NotInSpan(format!(
                        "leading exponent {lead:?} is not a partition"
                    )));
                }
                let parts: Vec<usize> = lead.iter().map(|&x| x as usize).collect();
                let nu = Partition::new(parts).expect("weakly decreasing");
                let c = h.coefficient(&lead);
                let s = self.schur(&nu);
                h.sub_scaled(&s, c);
                layer.push((nu, c));
            }
            for (nu, c) in layer {
                let g = self.grothendieck(&nu);
                residual.sub_scaled(&g, c);
                *out.entry(nu).or_insert(0) += c;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }

    /// Coefficient of `G_nu` in `G_lambda * G_mu`.
    pub fn product_coefficient(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<i64> {
        let prod = self.grothendieck(lambda).mul(&self.grothendieck(mu));
        Ok(self.expand(&prod)?.get(nu).copied().unwrap_or(0))
    }
}

/// Free-function form of [`GrothendieckBasis::grothendieck`].
pub fn grothendieck_polynomial(lambda: &Partition, k: usize) -> SymmetricPolynomial {
    GrothendieckBasis::new(k).grothendieck(lambda)
}

/// Free-function form of [`GrothendieckBasis::schur`].
pub fn schur_polynomial(lambda: &Partition, k: usize) -> SymmetricPolynomial {
    GrothendieckBasis::new(k).schur(lambda)
}

/// Free-function form of [`GrothendieckBasis::expand`].
pub fn expand_in_g_basis(p: &SymmetricPolynomial, k: usize) -> Result<BTreeMap<Partition, i64>> {
    GrothendieckBasis::new(k).expand(p)
}

/// The oracle value of the signed structure constant: the coefficient of
/// `G_nu` in `G_lambda * G_mu` computed with `ambient.rows` variables.
pub fn oracle_coefficient(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ambient: &Rectangle,
) -> Result<i64> {
    for shape in [lambda, mu, nu] {
        if !ambient.contains(shape) {
            return Err(Error::ShapeExceedsRectangle(format!(
                "{shape} in {ambient}"
            )));
        }
    }
    GrothendieckBasis::new(ambient.rows).product_coefficient(lambda, mu, nu)
}
