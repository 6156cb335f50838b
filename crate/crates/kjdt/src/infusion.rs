//! The K-infusion involution on abutting tableau pairs.
//!
//! `kinfusion(T, U)` slides `U` through the labels of `T`, largest first:
//! the boxes of `T` carrying the current label seed a forward slide of `U`,
//! and the label is written into the vacated holes. The labels of `T` end up
//! beyond the labels of `U`, which rectify against `T`'s inner shape.

use crate::error::Error;
use crate::shapes::SkewShape;
use crate::slides::{kjdt_with_vacated, krevjdt_with_vacated};
use crate::tableau::IncreasingTableau;
use crate::Result;

/// An abutting pair: the second tableau's inner shape equals the first's
/// outer shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauPair {
    pub first: IncreasingTableau,
    pub second: IncreasingTableau,
}

impl TableauPair {
    pub fn new(first: IncreasingTableau, second: IncreasingTableau) -> Result<Self> {
        if second.shape().inner() != first.shape().outer() {
            return Err(Error::ShapesDoNotAbut(format!(
                "first outer {} vs second inner {}",
                first.shape().outer(),
                second.shape().inner()
            )));
        }
        Ok(TableauPair { first, second })
    }
}

/// K-infusion of an abutting pair `(T, U)`: returns `(U', T')` where `U'`
/// carries `U`'s labels slid down to `T`'s inner shape and `T'` carries
/// `T`'s labels at the successively vacated boxes, written as-is.
pub fn kinfusion(t: &IncreasingTableau, u: &IncreasingTableau) -> Result<TableauPair> {
    if u.shape().inner() != t.shape().outer() {
        return Err(Error::ShapesDoNotAbut(format!(
            "shape {} does not extend {}",
            u.shape(),
            t.shape()
        )));
    }
    let mut sliding = u.clone();
    let mut migrated: Vec<(crate::shapes::BoxPos, u32)> = Vec::new();
    for label in t.labels().into_iter().rev() {
        let seeds = t.cells_with_label(label);
        let (next, vacated) = kjdt_with_vacated(&sliding, &seeds)?;
        migrated.extend(vacated.into_iter().map(|b| (b, label)));
        sliding = next;
    }
    debug_assert_eq!(sliding.shape().inner(), t.shape().inner());
    let gamma = sliding.shape().outer().clone();
    let second_shape = SkewShape::new(u.shape().outer().clone(), gamma)?;
    let second = IncreasingTableau::from_cells(second_shape, |b| {
        migrated
            .iter()
            .find(|(x, _)| *x == b)
            .map(|(_, v)| *v)
            .expect("vacated boxes tile nu/gamma")
    })?;
    TableauPair::new(sliding, second)
}

/// Reverse K-infusion: slides `T` outward through the labels of `U`,
/// smallest first, writing each label into the holes vacated inside. By the
/// infusion involution this computes the same pair as [`kinfusion`].
pub fn krevinfusion(t: &IncreasingTableau, u: &IncreasingTableau) -> Result<TableauPair> {
    if u.shape().inner() != t.shape().outer() {
        return Err(Error::ShapesDoNotAbut(format!(
            "shape {} does not extend {}",
            u.shape(),
            t.shape()
        )));
    }
    let mut sliding = t.clone();
    let mut migrated: Vec<(crate::shapes::BoxPos, u32)> = Vec::new();
    for label in u.labels() {
        let seeds = u.cells_with_label(label);
        let (next, vacated) = krevjdt_with_vacated(&sliding, &seeds)?;
        migrated.extend(vacated.into_iter().map(|b| (b, label)));
        sliding = next;
    }
    debug_assert_eq!(sliding.shape().outer(), u.shape().outer());
    let gamma = sliding.shape().inner().clone();
    let first_shape = SkewShape::new(gamma, t.shape().inner().clone())?;
    let first = IncreasingTableau::from_cells(first_shape, |b| {
        migrated
            .iter()
            .find(|(x, _)| *x == b)
            .map(|(_, v)| *v)
            .expect("vacated boxes tile gamma/alpha")
    })?;
    TableauPair::new(first, sliding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{enumerate_partitions_in, Partition, Rectangle};
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
    fn reference_infusion_example() {
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
        // Applying infusion to the output returns (T, U).
        let back = kinfusion(&out.first, &out.second).unwrap();
        assert_eq!(back.first, t);
        assert_eq!(back.second, u);
        // And the reverse computation agrees.
        assert_eq!(krevinfusion(&t, &u).unwrap(), out);
    }

    #[test]
    fn empty_first_component() {
        let u = tab(&[3, 2], &[2, 1], &[&[1], &[1]]);
        let t = IncreasingTableau::new(SkewShape::new(p(&[2, 1]), p(&[2, 1])).unwrap(), vec![])
            .unwrap();
        let out = kinfusion(&t, &u).unwrap();
        assert_eq!(out.first, u);
        assert!(out.second.is_empty());
    }

    #[test]
    fn empty_second_component_in_reverse() {
        let t = tab(&[2, 1], &[], &[&[1, 2], &[2]]);
        let u = IncreasingTableau::new(SkewShape::new(p(&[2, 1]), p(&[2, 1])).unwrap(), vec![])
            .unwrap();
        let out = krevinfusion(&t, &u).unwrap();
        assert_eq!(out.second, t);
        assert!(out.first.is_empty());
    }

    #[test]
    fn shape_mismatch_rejected() {
        let t = tab(&[2], &[], &[&[1, 2]]);
        let u = tab(&[3, 1], &[1], &[&[1, 2], &[1]]);
        assert!(matches!(kinfusion(&t, &u), Err(Error::ShapesDoNotAbut(_))));
        assert!(matches!(
            krevinfusion(&t, &u),
            Err(Error::ShapesDoNotAbut(_))
        ));
    }

    #[test]
    fn dual_equivalence_counterexample() {
        // Two tableaux of the same straight shape whose infusions land on
        // different skew shapes.
        let u = tab(&[3, 3, 2], &[2, 1], &[&[2], &[1, 4], &[1, 3]]);
        let t1 = tab(&[2, 1], &[], &[&[1, 3], &[2]]);
        let t2 = tab(&[2, 1], &[], &[&[1, 2], &[3]]);
        let out1 = kinfusion(&t1, &u).unwrap();
        let out2 = kinfusion(&t2, &u).unwrap();
        assert_eq!(out1.second, tab(&[3, 3, 2], &[3, 2], &[&[], &[1], &[2, 3]]));
        assert_eq!(
            out2.second,
            tab(&[3, 3, 2], &[3, 1], &[&[], &[1, 2], &[1, 3]])
        );
        assert_ne!(out1.second.shape(), out2.second.shape());
    }

    #[test]
    fn involution_exhaustive_in_3x3() {
        let rect = Rectangle::new(3, 3).unwrap();
        let shapes = enumerate_partitions_in(&rect);
        let mut pairs = 0u64;
        for nu in &shapes {
            for lam in shapes.iter().filter(|l| nu.contains(l)) {
                for alpha in shapes.iter().filter(|a| lam.contains(a)) {
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
                            assert_eq!(back.first, *t);
                            assert_eq!(back.second, *u);
                            assert_eq!(krevinfusion(t, u).unwrap(), out);
                            pairs += 1;
                        }
                    }
                }
            }
        }
        assert!(pairs > 10_000, "checked {pairs} pairs");
    }

    #[test]
    fn growth_diagram_encodes_infusion() {
        // The diagram's bottom row and right column carry the shape
        // sequences of the two infusion outputs; the two code paths are
        // independent.
        use crate::growth::build_growth_diagram;
        let rect = Rectangle::new(3, 3).unwrap();
        let shapes = enumerate_partitions_in(&rect);
        for nu in &shapes {
            for lam in shapes.iter().filter(|l| nu.contains(l) && !l.is_empty()) {
                let r_shape = SkewShape::straight(lam.clone());
                let u_shape = SkewShape::new(nu.clone(), lam.clone()).unwrap();
                if u_shape.n_cells() == 0 {
                    continue;
                }
                for r in enumerate_inc(&r_shape, r_shape.n_cells() as u32, true).take(4) {
                    for u in enumerate_inc(&u_shape, u_shape.n_cells() as u32, true).take(8) {
                        let d = build_growth_diagram(&r, &u).unwrap();
                        let pair = kinfusion(&r, &u).unwrap();
                        assert_eq!(
                            d.bottom_row(),
                            pair.first.shape_sequence().chain(),
                            "bottom row vs infusion_1 for r=\n{r}\nu=\n{u}"
                        );
                        assert_eq!(
                            d.right_column_upward(),
                            pair.second.shape_sequence().chain(),
                            "right column vs infusion_2 for r=\n{r}\nu=\n{u}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn split_lemma_exhaustive_small() {
        // infusion_1(R, T) decomposes through any label cut of T.
        let rect = Rectangle::new(3, 3).unwrap();
        let shapes = enumerate_partitions_in(&rect);
        for nu in &shapes {
            for lam in shapes.iter().filter(|l| nu.contains(l) && !l.is_empty()) {
                let r_shape = SkewShape::straight(lam.clone());
                let t_shape = SkewShape::new(nu.clone(), lam.clone()).unwrap();
                if t_shape.n_cells() == 0 || t_shape.n_cells() > 5 {
                    continue;
                }
                let rs: Vec<IncreasingTableau> =
                    enumerate_inc(&r_shape, r_shape.n_cells() as u32, true).collect();
                for r in rs.iter().take(6) {
                    for t in enumerate_inc(&t_shape, t_shape.n_cells() as u32, true) {
                        let whole = kinfusion(r, &t).unwrap();
                        for a in 1..t.max_label() {
                            let (low, high) = t.split_at_label(a);
                            let first = kinfusion(r, &low).unwrap();
                            let second = kinfusion(&first.second, &high).unwrap();
                            // Glue the two partial rectifications.
                            let glued = IncreasingTableau::from_cells(
                                SkewShape::new(
                                    second.first.shape().outer().clone(),
                                    first.first.shape().inner().clone(),
                                )
                                .unwrap(),
                                |b| {
                                    first
                                        .first
                                        .get(b)
                                        .or_else(|| second.first.get(b))
                                        .expect("cells covered by the two pieces")
                                },
                            )
                            .unwrap();
                            assert_eq!(glued, whole.first, "r=\n{r}\nt=\n{t}\na={a}");
                        }
                    }
                }
            }
        }
    }
}
