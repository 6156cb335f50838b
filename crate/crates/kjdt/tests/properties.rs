//! Randomized invariants over the 4x3 universe, complementing the
//! exhaustive 3x3 sweeps in the unit tests and the acceptance suite.

use proptest::prelude::*;

use kjdt::infusion::{kinfusion, krevinfusion};
use kjdt::shapes::{BoxPos, Partition, Rectangle, SkewShape};
use kjdt::slides::{kjdt_with_vacated, krect, krevjdt};
use kjdt::tableau::{enumerate_inc, lis, IncreasingTableau};

fn partition_in(rows: usize, cols: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..=cols, 0..=rows).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted parts form a partition")
    })
}

/// A random increasing tableau on a random skew shape inside 4x3, picked by
/// index into the canonical enumeration.
fn tableau_in_4x3() -> impl Strategy<Value = IncreasingTableau> {
    (partition_in(4, 3), partition_in(4, 3), any::<u32>()).prop_filter_map(
        "need lambda inside nu with cells",
        |(nu, lam, seed)| {
            if !nu.contains(&lam) {
                return None;
            }
            let shape = SkewShape::new(nu, lam).ok()?;
            let n = shape.n_cells() as u32;
            let count = enumerate_inc(&shape, n, true).count();
            if count == 0 {
                return None;
            }
            enumerate_inc(&shape, n, true).nth(seed as usize % count)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn meet_join_absorption(a in partition_in(5, 5), b in partition_in(5, 5)) {
        let join = a.join(&b);
        let meet = a.meet(&b);
        prop_assert!(join.contains(&a) && join.contains(&b));
        prop_assert!(a.contains(&meet) && b.contains(&meet));
        prop_assert_eq!(a.meet(&join), a.clone());
        prop_assert_eq!(a.join(&meet), a);
    }

    #[test]
    fn lis_matches_quadratic_dp(word in proptest::collection::vec(1u32..=9, 0..24)) {
        // Independent O(n^2) recurrence.
        let mut best = vec![0usize; word.len()];
        let mut expect = 0;
        for i in 0..word.len() {
            best[i] = 1;
            for j in 0..i {
                if word[j] < word[i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
            expect = expect.max(best[i]);
        }
        prop_assert_eq!(lis(&word), expect);
    }

    #[test]
    fn text_and_json_round_trip(t in tableau_in_4x3()) {
        let text = t.to_string();
        if !t.is_empty() {
            let back: IncreasingTableau = text.parse().unwrap();
            prop_assert_eq!(&back, &t);
        }
        let back = IncreasingTableau::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn slides_round_trip(t in tableau_in_4x3(), mask in 1u32..16) {
        let corners = t.shape().inner_corners();
        if corners.is_empty() {
            return Ok(());
        }
        let subset: Vec<BoxPos> = corners
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 4) & 1 == 1 || *i == 0)
            .map(|(_, b)| *b)
            .collect();
        let (slid, vacated) = kjdt_with_vacated(&t, &subset).unwrap();
        prop_assert_eq!(lis(&slid.reading_word()), lis(&t.reading_word()));
        let back = krevjdt(&slid, &vacated, &Rectangle::new(4, 3).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn rectification_first_row_is_lis(t in tableau_in_4x3()) {
        let rect = krect(&t).unwrap();
        prop_assert!(rect.shape().is_straight());
        prop_assert_eq!(rect.shape().outer().part(0), lis(&t.reading_word()));
    }

    #[test]
    fn lis_between_longest_row_and_max_label(t in tableau_in_4x3()) {
        let value = lis(&t.reading_word());
        let longest_row = (0..t.shape().outer().len())
            .map(|r| t.shape().outer().part(r) - t.shape().inner().part(r))
            .max()
            .unwrap_or(0);
        prop_assert!(value >= longest_row);
        prop_assert!(value <= t.max_label() as usize);
    }

    #[test]
    fn infusion_involutive(t in tableau_in_4x3(), seed in any::<u32>()) {
        // Extend t's outer shape by a random second tableau inside 4x3.
        let nu = Rectangle::new(4, 3).unwrap().full_shape();
        let upper = SkewShape::new(nu, t.shape().outer().clone()).unwrap();
        let n = upper.n_cells() as u32;
        let count = enumerate_inc(&upper, n, true).count();
        if count == 0 {
            return Ok(());
        }
        let u = enumerate_inc(&upper, n, true)
            .nth(seed as usize % count)
            .unwrap();
        let out = kinfusion(&t, &u).unwrap();
        let back = kinfusion(&out.first, &out.second).unwrap();
        prop_assert_eq!(&back.first, &t);
        prop_assert_eq!(&back.second, &u);
        prop_assert_eq!(krevinfusion(&t, &u).unwrap(), out);
    }
}
