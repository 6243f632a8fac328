//! Turning an ordered weighted based chain complex into a factored
//! presentation and its tagged barcode.
//!
//! Both constructions share one engine: repeatedly quotient out the
//! minimal-weight pair (a, b) with ⟨∂a, b⟩ ≠ 0 until every differential
//! vanishes. The timeline construction (x) schedules the i-th collapse at the
//! running sum t_i of the step weights, producing one presentation whose
//! transitions are the quotient maps; each step contributes [0,t_i,t_i) in
//! the degree of a. The isolated construction (y) instead records each step
//! as its own summand [0,w_i,w_i) at the step's raw weight, skipping
//! zero-weight steps. Both add one essential interval [0,0,∞) per unit of
//! surviving homology, read off the terminal complex.

use crate::factored::{ChainMap, FactoredPresentation, TaggedBarcode, TaggedInterval};
use crate::gf2::BasedChainComplex;
use crate::weighted::{PairRef, WeightedComplex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("the timeline construction requires strictly positive weights; found {0}")]
    ZeroWeight(PairRef),
    #[error(transparent)]
    Presentation(#[from] crate::factored::PresentationError),
}

/// One simplification step: the pair that was quotiented, the degree of a,
/// and the weight it carried when selected.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub a: String,
    pub b: String,
    pub degree: usize,
    pub weight: f64,
}

/// The full run of the simplification engine. Every step's pair had minimal
/// weight among candidates at the time of selection, ties broken by the tie
/// order; the terminal complex has zero differentials.
#[derive(Debug, Clone)]
pub struct SimplificationTrace {
    pub steps: Vec<TraceStep>,
    pub terminal: BasedChainComplex,
}

/// Runs the engine to exhaustion, recording each intermediate quotient and
/// its chain map.
fn run_with_states(
    w: &WeightedComplex,
) -> (Vec<TraceStep>, Vec<WeightedComplex>, Vec<ChainMap>) {
    let mut steps = Vec::new();
    let mut states = vec![w.clone()];
    let mut maps = Vec::new();
    loop {
        let current = states.last().unwrap();
        let Some(c) = current.minimal_candidate() else { break };
        let (a, b) = current.pair_labels(c.degree, c.a, c.b);
        let (next, q) = current
            .simplify_pair_with_map(&a, &b)
            .expect("minimal candidate satisfies the simplification precondition");
        steps.push(TraceStep { a, b, degree: c.degree, weight: c.weight });
        maps.push(ChainMap::new(q));
        states.push(next);
    }
    (steps, states, maps)
}

/// Runs the minimal-pair simplification loop to exhaustion. Terminates
/// because every step removes two basis elements.
pub fn run_simplifications(w: &WeightedComplex) -> SimplificationTrace {
    let (steps, states, _) = run_with_states(w);
    SimplificationTrace { steps, terminal: states.last().unwrap().complex().clone() }
}

/// Essential intervals of the terminal complex: with all differentials gone,
/// each surviving generator is one unit of homology in its degree.
fn essential_part(terminal: &BasedChainComplex) -> TaggedBarcode {
    debug_assert!(terminal.is_zero_differential());
    let mut out = TaggedBarcode::new();
    for k in 0..terminal.num_degrees() {
        out.insert_n(k, TaggedInterval::essential(), terminal.dim(k));
    }
    out
}

/// The timeline construction: collapses scheduled at cumulative weights.
/// Returns the barcode together with the presentation it describes, so the
/// structure-theorem decomposition can serve as an independent check.
pub fn construction_x(
    w: &WeightedComplex,
) -> Result<(TaggedBarcode, FactoredPresentation), ConstructionError> {
    for (k, ai, bi, weight) in w.weights_iter() {
        if weight == 0.0 {
            let (a, b) = w.pair_labels(k, ai, bi);
            return Err(ConstructionError::ZeroWeight(PairRef { degree: k, a, b, weight }));
        }
    }
    let (steps, states, maps) = run_with_states(w);
    let mut barcode = essential_part(states.last().unwrap().complex());
    let mut times = vec![0.0];
    let mut acc = 0.0;
    for step in &steps {
        acc += step.weight;
        times.push(acc);
        barcode.insert(step.degree, TaggedInterval::collapsed(acc));
    }
    let stages = states.into_iter().map(|s| s.complex().clone()).collect();
    let presentation = FactoredPresentation::new(times, stages, maps)?;
    Ok((barcode, presentation))
}

/// The isolated construction: each simplification step becomes its own
/// summand collapsing at the step's raw weight; zero-weight steps contribute
/// nothing.
pub fn construction_y(w: &WeightedComplex) -> TaggedBarcode {
    let trace = run_simplifications(w);
    let mut barcode = essential_part(&trace.terminal);
    for step in &trace.steps {
        if step.weight > 0.0 {
            barcode.insert(step.degree, TaggedInterval::collapsed(step.weight));
        }
    }
    barcode
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Matrix;
    use crate::testkit::{arb_generic_weighted, labels, owned, sphere_weighted, ties_weighted};
    use crate::weighted::TieOrder;

    const SQRT8: f64 = 2.8284271247461903;

    fn step(a: &str, b: &str, degree: usize, weight: f64) -> TraceStep {
        TraceStep { a: a.to_string(), b: b.to_string(), degree, weight }
    }

    fn flipped_ties() -> WeightedComplex {
        let w = ties_weighted(SQRT8);
        let order = TieOrder::from_precedence(
            w.complex(),
            &[(("p".to_string(), "s".to_string()), ("p".to_string(), "r".to_string()))],
        )
        .unwrap();
        w.with_tie_order(order)
    }

    // --------------------------------------------------------------------
    // Traces
    // --------------------------------------------------------------------

    #[test]
    fn sphere_trace() {
        let trace = run_simplifications(&sphere_weighted());
        assert_eq!(trace.steps, vec![step("p", "s", 2, 1.0)]);
        assert_eq!(trace.terminal.basis(2), &["q".to_string()]);
        assert!(trace.terminal.basis(1).is_empty());
        assert_eq!(trace.terminal.basis(0), &["x".to_string()]);
    }

    #[test]
    fn ties_trace_default_order() {
        let trace = run_simplifications(&ties_weighted(SQRT8));
        assert_eq!(
            trace.steps,
            vec![step("p", "r", 2, 1.0), step("s", "x", 1, 2.0)]
        );
    }

    #[test]
    fn ties_trace_flipped_order() {
        let trace = run_simplifications(&flipped_ties());
        assert_eq!(
            trace.steps,
            vec![step("p", "s", 2, 1.0), step("r", "x", 1, SQRT8)]
        );
    }

    #[test]
    fn zero_differential_gives_empty_trace() {
        let complex = BasedChainComplex::zero_differential(vec![
            labels(&["x"]),
            labels(&[]),
            labels(&["p"]),
        ]);
        let w = WeightedComplex::from_weight_fn(complex, |_, _, _| 1.0).unwrap();
        let trace = run_simplifications(&w);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.terminal.dim(0), 1);
        assert_eq!(trace.terminal.dim(2), 1);
    }

    // --------------------------------------------------------------------
    // Barcodes
    // --------------------------------------------------------------------

    fn sphere_expected() -> TaggedBarcode {
        let mut out = TaggedBarcode::new();
        out.insert(2, TaggedInterval::collapsed(1.0));
        out.insert(2, TaggedInterval::essential());
        out.insert(0, TaggedInterval::essential());
        out
    }

    #[test]
    fn sphere_barcodes_agree_across_constructions() {
        let w = sphere_weighted();
        let (x_barcode, presentation) = construction_x(&w).unwrap();
        let y_barcode = construction_y(&w);
        assert_eq!(x_barcode, sphere_expected());
        assert_eq!(y_barcode, sphere_expected());
        assert_eq!(presentation.decompose().unwrap(), x_barcode);
    }

    #[test]
    fn ties_default_order_barcodes() {
        let w = ties_weighted(SQRT8);
        let y = construction_y(&w);
        let mut y_expected = TaggedBarcode::new();
        y_expected.insert(2, TaggedInterval::collapsed(1.0));
        y_expected.insert(1, TaggedInterval::collapsed(2.0));
        y_expected.insert(2, TaggedInterval::essential());
        y_expected.insert(0, TaggedInterval::essential());
        assert_eq!(y, y_expected);

        let (x, presentation) = construction_x(&w).unwrap();
        let mut x_expected = TaggedBarcode::new();
        x_expected.insert(2, TaggedInterval::collapsed(1.0));
        x_expected.insert(1, TaggedInterval::collapsed(3.0));
        x_expected.insert(2, TaggedInterval::essential());
        x_expected.insert(0, TaggedInterval::essential());
        assert_eq!(x, x_expected);
        assert_eq!(presentation.decompose().unwrap(), x);
        assert_eq!(presentation.times(), &[0.0, 1.0, 3.0]);
    }

    #[test]
    fn ties_flipped_order_barcodes() {
        let w = flipped_ties();
        let y = construction_y(&w);
        assert_eq!(y.slice(1).count(&TaggedInterval::collapsed(SQRT8)), 1);
        let (x, presentation) = construction_x(&w).unwrap();
        assert_eq!(x.slice(1).count(&TaggedInterval::collapsed(1.0 + SQRT8)), 1);
        assert_eq!(presentation.decompose().unwrap(), x);
    }

    #[test]
    fn zero_differential_yields_pure_essentials() {
        let complex = BasedChainComplex::zero_differential(vec![
            labels(&["x"]),
            labels(&[]),
            labels(&["p"]),
        ]);
        let w = WeightedComplex::from_weight_fn(complex, |_, _, _| 1.0).unwrap();
        let (x, _) = construction_x(&w).unwrap();
        let y = construction_y(&w);
        let mut expected = TaggedBarcode::new();
        expected.insert(0, TaggedInterval::essential());
        expected.insert(2, TaggedInterval::essential());
        assert_eq!(x, expected);
        assert_eq!(y, expected);
    }

    #[test]
    fn zero_weight_rejected_by_timeline_construction() {
        // ∂a = b; the (a, b) pair carries weight 0, the off-support pair
        // (a, c) a positive one.
        let complex = BasedChainComplex::new(
            vec![labels(&["b", "c"]), labels(&["a"])],
            vec![Gf2Matrix::from_row_strings(&["1", "0"])],
        );
        let w = WeightedComplex::from_weight_list(
            complex,
            &owned(&[("a", "b", 0.0), ("a", "c", 3.0)]),
            &[],
        )
        .unwrap();
        let err = construction_x(&w).unwrap_err();
        assert!(matches!(err, ConstructionError::ZeroWeight(p) if p.a == "a" && p.b == "b"));
    }

    #[test]
    fn zero_weight_step_contributes_nothing_to_isolated_construction() {
        let complex = BasedChainComplex::new(
            vec![labels(&["b", "c"]), labels(&["a"])],
            vec![Gf2Matrix::from_row_strings(&["1", "0"])],
        );
        let w = WeightedComplex::from_weight_list(
            complex,
            &owned(&[("a", "b", 0.0), ("a", "c", 3.0)]),
            &[],
        )
        .unwrap();
        let y = construction_y(&w);
        let mut expected = TaggedBarcode::new();
        expected.insert(0, TaggedInterval::essential());
        assert_eq!(y, expected);
    }

    // --------------------------------------------------------------------
    // Properties
    // --------------------------------------------------------------------

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn decompose_matches_emitted_barcode(w in arb_generic_weighted()) {
            let (barcode, presentation) = construction_x(&w).unwrap();
            prop_assert_eq!(presentation.decompose().unwrap(), barcode);
        }

        #[test]
        fn essential_counts_equal_betti(w in arb_generic_weighted()) {
            let betti = w.complex().betti_numbers().unwrap();
            let y = construction_y(&w);
            for (k, &b) in betti.iter().enumerate() {
                prop_assert_eq!(y.slice(k).count(&TaggedInterval::essential()), b);
            }
        }

        #[test]
        fn finite_counts_equal_boundary_ranks(w in arb_generic_weighted()) {
            let y = construction_y(&w);
            for k in 1..w.complex().num_degrees() {
                let rank = w.complex().boundary(k).unwrap().rank();
                let finite = y
                    .slice(k)
                    .iter()
                    .filter(|(iv, _)| iv.t().is_finite())
                    .map(|(_, n)| n)
                    .sum::<usize>();
                prop_assert_eq!(finite, rank);
            }
        }

        #[test]
        fn x_intervals_are_prefix_sums_of_y(w in arb_generic_weighted()) {
            let trace = run_simplifications(&w);
            let (x, _) = construction_x(&w).unwrap();
            let y = construction_y(&w);
            let mut acc = 0.0;
            for step in &trace.steps {
                acc += step.weight;
                prop_assert!(y.slice(step.degree).count(&TaggedInterval::collapsed(step.weight)) >= 1);
                prop_assert!(x.slice(step.degree).count(&TaggedInterval::collapsed(acc)) >= 1);
            }
            // Finite interval counts agree degree by degree.
            for k in x.degrees() {
                let count = |b: &TaggedBarcode| {
                    b.slice(k).iter().filter(|(iv, _)| iv.t().is_finite()).map(|(_, n)| n).sum::<usize>()
                };
                prop_assert_eq!(count(&x), count(&y));
            }
        }

        #[test]
        fn generic_inputs_ignore_tie_order(w in arb_generic_weighted()) {
            // An adversarial explicit order: all pairs, reversed default.
            let mut priority: Vec<(usize, String, String)> = w
                .weights_iter()
                .map(|(k, ai, bi, _)| {
                    let (a, b) = w.pair_labels(k, ai, bi);
                    (k, a, b)
                })
                .collect();
            priority.reverse();
            let reordered = w.clone().with_tie_order(TieOrder::from_priority(priority));
            prop_assert_eq!(construction_y(&w), construction_y(&reordered));
        }

        #[test]
        fn timeline_construction_times_are_cumulative(w in arb_generic_weighted()) {
            let trace = run_simplifications(&w);
            let (_, presentation) = construction_x(&w).unwrap();
            let mut expected = vec![0.0];
            let mut acc = 0.0;
            for step in &trace.steps {
                acc += step.weight;
                expected.push(acc);
            }
            prop_assert_eq!(presentation.times(), expected.as_slice());
        }
    }
}
