//! Persistence barcodes of filtered based chain complexes, and the exact
//! correspondence between persistence bars and tagged intervals.
//!
//! A monotone filter induces two pictures of the same data. Sublevel
//! homology read off by column reduction gives a persistence barcode of
//! intervals [s,t). The induced weights |f(a) - f(b)| give a weighted
//! complex whose isolated-collapse construction emits a tagged barcode.
//! Shifting every finite persistence bar to start at 0 and raising its
//! degree by one, and sending every infinite bar to the essential tagged
//! interval of its own degree, carries one picture onto the other, for any
//! way of breaking ties among equal filter values or equal weights.

use crate::constructions::construction_y;
use crate::ext::ExtReal;
use crate::factored::{Interval, IntervalBarcode, TaggedBarcode, TaggedInterval};
use crate::weighted::{FilteredComplex, TieOrder};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScalarError {
    #[error("no degree has {a:?} with {b:?} one degree below")]
    NotAdjacent { a: String, b: String },
    #[error("the pair ({a:?}, {b:?}) occurs in more than one degree")]
    AmbiguousPair { a: String, b: String },
    #[error("{b:?} does not appear in the boundary of {a:?}")]
    PairNotInBoundary { a: String, b: String },
}

/// Seed of the randomized pass of `verify_correspondence`.
const RANDOMIZED_PASS_SEED: u64 = 177;

// ============================================================================
// Persistence by column reduction
// ============================================================================

/// Persistence barcode of the filtered complex, all degrees at once.
///
/// Columns of the total boundary matrix are processed in ascending filter
/// value; cells with equal value keep their basis order. A column that
/// reduces to zero births a bar at its filter value; a column whose pivot
/// lands on row b kills the bar born at f(b) at this column's value.
pub fn persistence_barcode(f: &FilteredComplex) -> IntervalBarcode {
    reduce(f, total_order(f, None))
}

/// As `persistence_barcode`, but cells with equal filter value are ordered
/// by a seeded shuffle. The barcode does not depend on the seed; tests
/// assert that rather than assume it.
pub fn persistence_barcode_seeded(f: &FilteredComplex, seed: u64) -> IntervalBarcode {
    reduce(f, total_order(f, Some(seed)))
}

/// All cells sorted by filter value. The sort is stable, so the pre-order
/// (basis order, or a seeded shuffle of it) breaks ties.
fn total_order(f: &FilteredComplex, shuffle_seed: Option<u64>) -> Vec<(usize, usize)> {
    let c = f.complex();
    let mut cells: Vec<(usize, usize)> = (0..c.num_degrees())
        .flat_map(|k| (0..c.dim(k)).map(move |i| (k, i)))
        .collect();
    if let Some(seed) = shuffle_seed {
        cells.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    cells.sort_by(|a, b| f.value(a.0, a.1).total_cmp(&f.value(b.0, b.1)));
    cells
}

fn reduce(f: &FilteredComplex, order: Vec<(usize, usize)>) -> IntervalBarcode {
    let c = f.complex();
    let n = order.len();
    let pos: BTreeMap<(usize, usize), usize> =
        order.iter().enumerate().map(|(p, &cell)| (cell, p)).collect();
    // Monotonicity puts every face strictly earlier than its cofacet, so
    // each column only has entries above its own position.
    let mut cols: Vec<BTreeSet<usize>> = order
        .iter()
        .map(|&(k, i)| match c.boundary(k) {
            Some(d) => d.column(i).ones().map(|b| pos[&(k - 1, b)]).collect(),
            None => BTreeSet::new(),
        })
        .collect();
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut killer: Vec<Option<usize>> = vec![None; n];
    for j in 0..n {
        while let Some(&p) = cols[j].last() {
            match pivot_owner[p] {
                Some(j2) => {
                    let other = cols[j2].clone();
                    for q in other {
                        if !cols[j].remove(&q) {
                            cols[j].insert(q);
                        }
                    }
                }
                None => {
                    pivot_owner[p] = Some(j);
                    killer[p] = Some(j);
                    break;
                }
            }
        }
    }
    let mut out = IntervalBarcode::new();
    for (p, &(k, i)) in order.iter().enumerate() {
        if !cols[p].is_empty() {
            // A death column births nothing; it can also never be a pivot
            // row of a later column.
            debug_assert!(killer[p].is_none());
            continue;
        }
        let birth = f.value(k, i);
        let death = match killer[p] {
            Some(j) => {
                let (kj, ij) = order[j];
                ExtReal::finite(f.value(kj, ij))
            }
            None => ExtReal::Inf,
        };
        let bar = Interval::new(birth, death).expect("monotone filters give positive-length bars");
        out.insert(k, bar);
    }
    out
}

// ============================================================================
// Splitting off a single pair
// ============================================================================

/// Whether quotienting the adjacent pair (a, b) splits one bar off the
/// persistence barcode. True iff f(b) is the largest filter value in the
/// support of ∂a and f(a) is the smallest among cofacets hitting b; the
/// barcode then satisfies
/// `persistence_barcode(f) = persistence_barcode(f / (a,b)) + [f(b), f(a))`
/// in degree one below a, which tests assert via the quotient.
pub fn split_check(f: &FilteredComplex, a: &str, b: &str) -> Result<bool, ScalarError> {
    let c = f.complex();
    let mut hits = Vec::new();
    for k in 1..c.num_degrees() {
        if let (Some(ai), Some(bi)) = (c.label_index(k, a), c.label_index(k - 1, b)) {
            hits.push((k, ai, bi));
        }
    }
    let (n, ai, bi) = match hits.len() {
        0 => return Err(ScalarError::NotAdjacent { a: a.to_string(), b: b.to_string() }),
        1 => hits[0],
        _ => return Err(ScalarError::AmbiguousPair { a: a.to_string(), b: b.to_string() }),
    };
    let d = c.boundary(n).expect("resolved degree is at least one");
    if !d.get(bi, ai) {
        return Err(ScalarError::PairNotInBoundary { a: a.to_string(), b: b.to_string() });
    }
    let late_birth = d
        .column(ai)
        .ones()
        .all(|r| f.value(n - 1, r) <= f.value(n - 1, bi));
    let early_death =
        (0..c.dim(n)).all(|col| !d.get(bi, col) || f.value(n, col) >= f.value(n, ai));
    Ok(late_birth && early_death)
}

// ============================================================================
// The correspondence
// ============================================================================

/// Persistence bars as tagged intervals: a finite [s,t) in degree n becomes
/// the collapsed interval [0,t-s,t-s) in degree n+1; an infinite [s,∞) in
/// degree n becomes the essential interval [0,0,∞) in degree n.
pub fn correspondence_map(pb: &IntervalBarcode) -> TaggedBarcode {
    let mut out = TaggedBarcode::new();
    for (degree, bar, count) in pb.iter() {
        match bar.t().as_finite() {
            None => out.insert_n(degree, TaggedInterval::essential(), count),
            Some(t) => out.insert_n(degree + 1, TaggedInterval::collapsed(t - bar.s()), count),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TiePass {
    Default,
    Randomized,
}

impl fmt::Display for TiePass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiePass::Default => write!(f, "default tie order"),
            TiePass::Randomized => write!(f, "randomized tie order"),
        }
    }
}

/// One multiplicity mismatch between the two sides of the correspondence.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceDiff {
    pub pass: TiePass,
    pub degree: usize,
    pub interval: TaggedInterval,
    pub via_persistence: usize,
    pub via_construction: usize,
}

impl fmt::Display for CorrespondenceDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {}: {} occurs {} times via persistence, {} times via direct construction ({})",
            self.degree, self.interval, self.via_persistence, self.via_construction, self.pass
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CorrespondenceReport {
    pub diffs: Vec<CorrespondenceDiff>,
}

impl CorrespondenceReport {
    pub fn is_match(&self) -> bool {
        self.diffs.is_empty()
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_match() {
            return write!(f, "PASS");
        }
        write!(f, "FAIL")?;
        for d in &self.diffs {
            write!(f, "\n{d}")?;
        }
        Ok(())
    }
}

/// Checks that mapping the persistence barcode into tagged intervals gives
/// exactly the tagged barcode of the isolated-collapse construction on the
/// induced weights. Runs twice: once with the default tie order on both
/// sides, once with a seeded random order on both sides.
pub fn verify_correspondence(f: &FilteredComplex) -> CorrespondenceReport {
    verify_correspondence_seeded(f, RANDOMIZED_PASS_SEED)
}

pub fn verify_correspondence_seeded(f: &FilteredComplex, seed: u64) -> CorrespondenceReport {
    let mut diffs = Vec::new();
    compare(
        TiePass::Default,
        &correspondence_map(&persistence_barcode(f)),
        &construction_y(&f.to_weights()),
        &mut diffs,
    );
    let shuffled = f.to_weights().with_tie_order(shuffled_tie_order(f, seed));
    compare(
        TiePass::Randomized,
        &correspondence_map(&persistence_barcode_seeded(f, seed)),
        &construction_y(&shuffled),
        &mut diffs,
    );
    CorrespondenceReport { diffs }
}

/// A uniformly shuffled full priority list over all adjacent pairs.
fn shuffled_tie_order(f: &FilteredComplex, seed: u64) -> TieOrder {
    let c = f.complex();
    let mut pairs: Vec<(usize, String, String)> = Vec::new();
    for k in 1..c.num_degrees() {
        for a in c.basis(k) {
            for b in c.basis(k - 1) {
                pairs.push((k, a.clone(), b.clone()));
            }
        }
    }
    pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(1)));
    TieOrder::from_priority(pairs)
}

fn compare(
    pass: TiePass,
    via_persistence: &TaggedBarcode,
    via_construction: &TaggedBarcode,
    diffs: &mut Vec<CorrespondenceDiff>,
) {
    let mut keys: BTreeSet<(usize, TaggedInterval)> = BTreeSet::new();
    for (d, iv, _) in via_persistence.iter() {
        keys.insert((d, *iv));
    }
    for (d, iv, _) in via_construction.iter() {
        keys.insert((d, *iv));
    }
    for (degree, interval) in keys {
        let x = via_persistence.slice(degree).count(&interval);
        let y = via_construction.slice(degree).count(&interval);
        if x != y {
            diffs.push(CorrespondenceDiff {
                pass,
                degree,
                interval,
                via_persistence: x,
                via_construction: y,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{BasedChainComplex, Gf2Matrix};
    use crate::testkit::labels;
    use std::collections::HashMap;

    /// x (deg 0, f=0), b (deg 0, f=1), a (deg 1, f=2) with ∂a = x + b.
    fn worked_example() -> FilteredComplex {
        let complex = BasedChainComplex::new(
            vec![labels(&["x", "b"]), labels(&["a"])],
            vec![Gf2Matrix::from_row_strings(&["1", "1"])],
        );
        FilteredComplex::new(complex, vec![vec![0.0, 1.0], vec![2.0]]).unwrap()
    }

    fn bar(s: f64, t: f64) -> Interval {
        Interval::new(s, ExtReal::finite(t)).unwrap()
    }

    fn ray(s: f64) -> Interval {
        Interval::new(s, ExtReal::Inf).unwrap()
    }

    #[test]
    fn worked_example_barcode() {
        let mut expected = IntervalBarcode::new();
        expected.insert(0, ray(0.0));
        expected.insert(0, bar(1.0, 2.0));
        assert_eq!(persistence_barcode(&worked_example()), expected);
    }

    #[test]
    fn zero_differential_births_every_generator() {
        let complex = BasedChainComplex::zero_differential(vec![
            labels(&["u", "v"]),
            labels(&["e"]),
        ]);
        let f = FilteredComplex::new(complex, vec![vec![0.5, 3.0], vec![1.25]]).unwrap();
        let mut expected = IntervalBarcode::new();
        expected.insert(0, ray(0.5));
        expected.insert(0, ray(3.0));
        expected.insert(1, ray(1.25));
        assert_eq!(persistence_barcode(&f), expected);
    }

    #[test]
    fn triangle_boundary_filtered_by_vertex_order() {
        let complex = BasedChainComplex::new(
            vec![labels(&["a", "b", "c"]), labels(&["ab", "ac", "bc"])],
            vec![Gf2Matrix::from_row_strings(&["110", "101", "011"])],
        );
        let f = FilteredComplex::new(
            complex,
            vec![vec![0.0, 1.0, 2.0], vec![3.0, 4.0, 5.0]],
        )
        .unwrap();
        let mut expected = IntervalBarcode::new();
        expected.insert(0, ray(0.0));
        expected.insert(0, bar(1.0, 3.0));
        expected.insert(0, bar(2.0, 4.0));
        expected.insert(1, ray(5.0));
        assert_eq!(persistence_barcode(&f), expected);
    }

    #[test]
    fn correspondence_map_frozen_cases() {
        let mut pb = IntervalBarcode::new();
        pb.insert(0, ray(0.0));
        let mut expected = TaggedBarcode::new();
        expected.insert(0, TaggedInterval::essential());
        assert_eq!(correspondence_map(&pb), expected);

        let mut pb = IntervalBarcode::new();
        pb.insert(0, bar(1.0, 2.0));
        let mut expected = TaggedBarcode::new();
        expected.insert(1, TaggedInterval::collapsed(1.0));
        assert_eq!(correspondence_map(&pb), expected);
    }

    #[test]
    fn worked_example_correspondence() {
        let f = worked_example();
        let mut expected = TaggedBarcode::new();
        expected.insert(1, TaggedInterval::collapsed(1.0));
        expected.insert(0, TaggedInterval::essential());
        assert_eq!(correspondence_map(&persistence_barcode(&f)), expected);
        let report = verify_correspondence(&f);
        assert!(report.is_match(), "{report}");
        assert_eq!(report.to_string(), "PASS");
    }

    #[test]
    fn single_pair_splits() {
        let f = worked_example();
        // x is born before b, so (a, x) fails the late-birth condition.
        assert!(!split_check(&f, "a", "x").unwrap());
        assert!(split_check(&f, "a", "b").unwrap());
        assert_split_property(&f, "a", "b");
    }

    #[test]
    fn two_saddle_fails_the_birth_condition() {
        let complex = BasedChainComplex::new(
            vec![labels(&["b1", "b2"]), labels(&["a"])],
            vec![Gf2Matrix::from_row_strings(&["1", "1"])],
        );
        let f = FilteredComplex::new(complex, vec![vec![1.0, 2.0], vec![3.0]]).unwrap();
        assert!(!split_check(&f, "a", "b1").unwrap());
        assert!(split_check(&f, "a", "b2").unwrap());
    }

    #[test]
    fn split_check_rejects_bad_pairs() {
        let f = worked_example();
        assert!(matches!(
            split_check(&f, "a", "zz"),
            Err(ScalarError::NotAdjacent { .. })
        ));
        let complex = BasedChainComplex::new(
            vec![labels(&["x", "y"]), labels(&["a"])],
            vec![Gf2Matrix::from_row_strings(&["1", "0"])],
        );
        let g = FilteredComplex::new(complex, vec![vec![0.0, 0.0], vec![1.0]]).unwrap();
        assert!(matches!(
            split_check(&g, "a", "y"),
            Err(ScalarError::PairNotInBoundary { .. })
        ));
    }

    /// Quotients (a, b) out of the underlying complex and restricts the
    /// filter to the surviving labels.
    fn quotient_filtered(f: &FilteredComplex, a: &str, b: &str) -> FilteredComplex {
        let q = f.to_weights().simplify_pair(a, b).unwrap();
        let mut values = HashMap::new();
        for k in 0..f.complex().num_degrees() {
            for (i, label) in f.complex().basis(k).iter().enumerate() {
                values.insert(label.clone(), f.value(k, i));
            }
        }
        FilteredComplex::from_label_values(q.complex().clone(), &values).unwrap()
    }

    fn assert_split_property(f: &FilteredComplex, a: &str, b: &str) {
        let c = f.complex();
        let n = (1..c.num_degrees())
            .find(|&k| c.label_index(k, a).is_some() && c.label_index(k - 1, b).is_some())
            .unwrap();
        let mut expected = persistence_barcode(&quotient_filtered(f, a, b));
        expected.insert(
            n - 1,
            bar(f.value_of_label(n - 1, b).unwrap(), f.value_of_label(n, a).unwrap()),
        );
        assert_eq!(persistence_barcode(f), expected);
    }

    // --------------------------------------------------------------------
    // Properties
    // --------------------------------------------------------------------

    use crate::testkit::arb_filtered;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bar_counts_match_rank_and_betti(f in arb_filtered()) {
            let pb = persistence_barcode(&f);
            let c = f.complex();
            let betti = c.betti_numbers().unwrap();
            for (k, &betti_k) in betti.iter().enumerate() {
                let finite = pb
                    .slice(k)
                    .iter()
                    .filter(|(bar, _)| !bar.is_infinite())
                    .map(|(_, m)| m)
                    .sum::<usize>();
                let infinite = pb.slice(k).len() - finite;
                let rank_above = c.boundary(k + 1).map_or(0, Gf2Matrix::rank);
                prop_assert_eq!(finite, rank_above);
                prop_assert_eq!(infinite, betti_k);
            }
        }

        #[test]
        fn barcode_ignores_equal_value_ordering(f in arb_filtered(), seed in 0u64..1024) {
            prop_assert_eq!(persistence_barcode(&f), persistence_barcode_seeded(&f, seed));
        }

        #[test]
        fn correspondence_holds_on_random_complexes(f in arb_filtered(), seed in 0u64..1024) {
            let report = verify_correspondence_seeded(&f, seed);
            prop_assert!(report.is_match(), "{}", report);
        }

        #[test]
        fn minimal_weight_pairs_split(f in arb_filtered()) {
            let w = f.to_weights();
            if let Some(cand) = w.minimal_candidate() {
                let (a, b) = w.pair_labels(cand.degree, cand.a, cand.b);
                prop_assert!(split_check(&f, &a, &b).unwrap());
                let n = cand.degree;
                let mut expected = persistence_barcode(&quotient_filtered(&f, &a, &b));
                let fb = f.value_of_label(n - 1, &b).unwrap();
                let fa = f.value_of_label(n, &a).unwrap();
                expected.insert(n - 1, bar(fb, fa));
                prop_assert_eq!(persistence_barcode(&f), expected);
            }
        }
    }

    #[test]
    fn ambiguous_pairs_are_reported() {
        // Labels are only unique per degree, so (a, b) can be adjacent in
        // two different degrees at once.
        let complex = BasedChainComplex::new(
            vec![labels(&["b"]), labels(&["a", "b"]), labels(&["a"])],
            vec![
                Gf2Matrix::from_row_strings(&["10"]),
                Gf2Matrix::from_row_strings(&["0", "1"]),
            ],
        );
        let f =
            FilteredComplex::new(complex, vec![vec![0.0], vec![1.0, 1.0], vec![2.0]]).unwrap();
        assert!(matches!(
            split_check(&f, "a", "b"),
            Err(ScalarError::AmbiguousPair { .. })
        ));
    }
}
