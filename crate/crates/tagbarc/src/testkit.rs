//! Shared fixtures and strategies for the unit test modules.

use crate::ext::ExtReal;
use crate::factored::{TaggedBarcode, TaggedInterval};
use crate::gf2::{synth_labels, BasedChainComplex, Gf2Matrix};
use crate::morse::SimplicialComplex;
use crate::weighted::{FilteredComplex, WeightedComplex};
use proptest::prelude::*;

pub(crate) fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub(crate) fn owned(pairs: &[(&str, &str, f64)]) -> Vec<(String, String, f64)> {
    pairs.iter().map(|(a, b, w)| (a.to_string(), b.to_string(), *w)).collect()
}

/// The 4-generator sphere complex: p, q in degree 2 over s, s over x;
/// weights 1, 2 on the top pairs and 5 below.
pub(crate) fn sphere_weighted() -> WeightedComplex {
    let complex = BasedChainComplex::new(
        vec![labels(&["x"]), labels(&["s"]), labels(&["p", "q"])],
        vec![Gf2Matrix::zeros(1, 1), Gf2Matrix::from_row_strings(&["11"])],
    );
    WeightedComplex::from_weight_list(
        complex,
        &owned(&[("p", "s", 1.0), ("q", "s", 2.0), ("s", "x", 5.0)]),
        &[],
    )
    .unwrap()
}

/// The two-saddle complex where tie order matters: ∂p = ∂q = r + s,
/// ∂r = ∂s = x + y, all eight adjacent pairs weighted; (p,r) and (p,s) tie
/// at weight 1, and the (r,x) weight is the caller's √8 stand-in.
pub(crate) fn ties_weighted(sqrt8: f64) -> WeightedComplex {
    let complex = BasedChainComplex::new(
        vec![labels(&["x", "y"]), labels(&["r", "s"]), labels(&["p", "q"])],
        vec![
            Gf2Matrix::from_row_strings(&["11", "11"]),
            Gf2Matrix::from_row_strings(&["11", "11"]),
        ],
    );
    WeightedComplex::from_weight_list(
        complex,
        &owned(&[
            ("p", "r", 1.0),
            ("p", "s", 1.0),
            ("q", "r", 5.0),
            ("q", "s", 6.0),
            ("r", "x", sqrt8),
            ("s", "x", 2.0),
            ("r", "y", 7.0),
            ("s", "y", 9.0),
        ]),
        &[],
    )
    .unwrap()
}

/// Random valid three-degree complexes: ∂1 arbitrary, ∂2 columns drawn from
/// ker ∂1 so that ∂∘∂ = 0 by construction.
pub(crate) fn arb_complex() -> impl Strategy<Value = BasedChainComplex> {
    (1usize..5, 0usize..5, 0usize..4).prop_flat_map(|(d0, d1, d2)| {
        let bits1 = proptest::collection::vec(any::<bool>(), d0 * d1);
        let picks2 =
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), 0..=d1), d2);
        (bits1, picks2).prop_map(move |(bits1, picks2)| {
            let mut m1 = Gf2Matrix::zeros(d0, d1);
            for (i, b) in bits1.iter().enumerate() {
                if *b {
                    m1.set(i / d1.max(1), i % d1.max(1), true);
                }
            }
            let kernel = m1.null_space();
            let mut m2 = Gf2Matrix::zeros(d1, d2);
            for (c, picks) in picks2.iter().enumerate() {
                for (ki, pick) in picks.iter().enumerate() {
                    if *pick && ki < kernel.len() {
                        for r in kernel[ki].ones() {
                            let v = m2.get(r, c);
                            m2.set(r, c, !v);
                        }
                    }
                }
            }
            BasedChainComplex::new(
                vec![synth_labels("v", d0), synth_labels("e", d1), synth_labels("t", d2)],
                vec![m1, m2],
            )
        })
    })
}

/// Random complexes decorated with distinct positive weights (hence generic).
pub(crate) fn arb_generic_weighted() -> impl Strategy<Value = WeightedComplex> {
    arb_complex().prop_map(|complex| {
        let mut counter = 0u32;
        WeightedComplex::from_weight_fn(complex, |_, _, _| {
            counter += 1;
            counter as f64 * 0.25
        })
        .unwrap()
    })
}

/// Random monotone filtered complexes: values sit in per-degree bands
/// [k, k+1) on an eighth grid, so equal values within a degree are common
/// but faces always come strictly earlier.
pub(crate) fn arb_filtered() -> impl Strategy<Value = FilteredComplex> {
    arb_complex().prop_flat_map(|c| {
        let total = c.total_dim();
        proptest::collection::vec(0u8..8, total..=total).prop_map(move |offsets| {
            let mut values = Vec::new();
            let mut at = 0;
            for k in 0..c.num_degrees() {
                values.push(
                    (0..c.dim(k))
                        .map(|_| {
                            let v = k as f64 + f64::from(offsets[at]) / 8.0;
                            at += 1;
                            v
                        })
                        .collect(),
                );
            }
            FilteredComplex::new(c.clone(), values).unwrap()
        })
    })
}

/// Random small simplicial complexes on up to six planar vertices.
pub(crate) fn arb_simplicial() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=6).prop_flat_map(|n| {
        let max_card = 3.min(n);
        proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=max_card), 1..6)
            .prop_map(move |tuples| {
                let vertices: Vec<(String, Vec<f64>)> = (0..n)
                    .map(|i| (format!("v{i}"), vec![i as f64, ((i * i) % 5) as f64]))
                    .collect();
                let lists: Vec<Vec<String>> = tuples
                    .iter()
                    .map(|t| t.iter().map(|&i| format!("v{i}")).collect())
                    .collect();
                SimplicialComplex::from_simplices(vertices, &lists).unwrap()
            })
    })
}

/// Random tagged intervals on a quarter grid, covering all four shapes.
pub(crate) fn arb_tagged_interval() -> impl Strategy<Value = TaggedInterval> {
    let fin = |range: std::ops::Range<u32>| range.prop_map(|q| f64::from(q) / 4.0);
    prop_oneof![
        (fin(0..12), 1u32..8).prop_map(|(s, d)| {
            TaggedInterval::new(ExtReal::finite(s), ExtReal::finite(s + f64::from(d) / 4.0))
                .unwrap()
        }),
        fin(1..12).prop_map(TaggedInterval::collapsed),
        fin(0..12).prop_map(|s| TaggedInterval::new(ExtReal::finite(s), ExtReal::Inf).unwrap()),
        Just(TaggedInterval::forever_disk()),
    ]
}

/// Random tagged barcodes over degrees 0..4; degree 0 only receives
/// intervals allowed there.
pub(crate) fn arb_tagged_barcode() -> impl Strategy<Value = TaggedBarcode> {
    proptest::collection::vec((0usize..4, arb_tagged_interval()), 0..12).prop_map(|items| {
        let mut out = TaggedBarcode::new();
        for (k, iv) in items {
            let k = if iv.allowed_in_degree(k) { k } else { k + 1 };
            out.insert(k, iv);
        }
        out
    })
}
