//! Tagged barcodes of factored chain complexes over GF(2).
//!
//! The pipeline: a based chain complex with weights on adjacent-degree basis
//! pairs is repeatedly simplified at its minimal-weight boundary pair. Two
//! bookkeeping schemes (`constructions::construction_x` accumulates weights
//! into a timeline, `constructions::construction_y` records each weight as an
//! isolated collapse) turn the simplification sequence into a factored chain
//! complex, classified up to isomorphism by its tagged barcode. Barcodes are
//! compared under the bottleneck distance, which equals the interleaving
//! distance degreewise.
//!
//! Weighted complexes arrive either hand-written, from a combinatorial
//! gradient vector field on a metric simplicial complex (`morse`), or from a
//! monotone filter on the basis (`scalar`, which also ties the tagged barcode
//! back to classical persistence).

pub mod constructions;
pub mod ext;
pub mod factored;
pub mod gf2;
pub mod io;
pub mod metrics;
pub mod morse;
pub mod scalar;
#[cfg(test)]
pub(crate) mod testkit;
pub mod weighted;
