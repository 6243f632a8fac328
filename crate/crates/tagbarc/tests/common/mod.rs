//! Independent oracles and seeded random generators for the acceptance
//! gate. The brute-force matcher deliberately avoids the library's matching
//! code: it enumerates every assignment, so agreement is meaningful.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use tagbarc::ext::ExtReal;
use tagbarc::factored::{TaggedBarcode, TaggedInterval};
use tagbarc::gf2::{BasedChainComplex, Gf2Matrix};
use tagbarc::morse::{CombinatorialVectorField, SimplexRef, SimplicialComplex};
use tagbarc::weighted::{FilteredComplex, WeightedComplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ============================================================================
// Brute-force bottleneck oracle
// ============================================================================

fn endpoint_diff(a: ExtReal, b: ExtReal) -> ExtReal {
    match (a.as_finite(), b.as_finite()) {
        (Some(x), Some(y)) => ExtReal::finite((x - y).abs()),
        (None, None) => ExtReal::finite(0.0),
        _ => ExtReal::Inf,
    }
}

fn match_cost(a: &TaggedInterval, b: &TaggedInterval) -> ExtReal {
    endpoint_diff(a.s(), b.s()).max(endpoint_diff(a.t(), b.t()))
}

fn delete_cost(iv: &TaggedInterval) -> ExtReal {
    iv.t().half()
}

/// Minimum over all partial matchings of the worst move: every interval is
/// either matched (endpoint moves) or deleted (half its lifetime). Memoized
/// over (next left index, used-right bitmask); right side must fit in 64.
pub fn brute_bottleneck(a: &[TaggedInterval], b: &[TaggedInterval]) -> ExtReal {
    assert!(b.len() <= 64, "oracle supports at most 64 intervals per side");
    fn go(
        i: usize,
        used: u64,
        a: &[TaggedInterval],
        b: &[TaggedInterval],
        memo: &mut HashMap<(usize, u64), ExtReal>,
    ) -> ExtReal {
        if i == a.len() {
            let mut worst = ExtReal::finite(0.0);
            for (j, iv) in b.iter().enumerate() {
                if used & (1 << j) == 0 {
                    worst = worst.max(delete_cost(iv));
                }
            }
            return worst;
        }
        if let Some(v) = memo.get(&(i, used)) {
            return *v;
        }
        let mut best = go(i + 1, used, a, b, memo).max(delete_cost(&a[i]));
        for j in 0..b.len() {
            if used & (1 << j) == 0 {
                let v = go(i + 1, used | (1 << j), a, b, memo).max(match_cost(&a[i], &b[j]));
                best = best.min(v);
            }
        }
        memo.insert((i, used), best);
        best
    }
    go(0, 0, a, b, &mut HashMap::new())
}

// ============================================================================
// Random tagged intervals and barcodes on the quarter grid
// ============================================================================

fn quarter(r: &mut ChaCha8Rng, lo: u32, hi: u32) -> f64 {
    f64::from(r.gen_range(lo..=hi)) / 4.0
}

/// A random interval legal in the given degree, endpoints in quarters of
/// 0..=4 so that every cost and weight is an exact dyadic.
pub fn random_tagged_interval(r: &mut ChaCha8Rng, degree: usize) -> TaggedInterval {
    if degree == 0 {
        // No disk phase in degree 0: the left tag stays at 0.
        return match r.gen_range(0..3) {
            0 => TaggedInterval::essential(),
            1 => TaggedInterval::new(ExtReal::finite(0.0), ExtReal::finite(quarter(r, 1, 16)))
                .unwrap(),
            _ => TaggedInterval::collapsed(quarter(r, 1, 16)),
        };
    }
    match r.gen_range(0..4) {
        0 => {
            let s = quarter(r, 0, 12);
            let t = s + quarter(r, 1, 4);
            TaggedInterval::new(ExtReal::finite(s), ExtReal::finite(t)).unwrap()
        }
        1 => TaggedInterval::collapsed(quarter(r, 1, 16)),
        2 => TaggedInterval::new(ExtReal::finite(quarter(r, 0, 16)), ExtReal::Inf).unwrap(),
        _ => TaggedInterval::forever_disk(),
    }
}

pub fn random_tagged_barcode(r: &mut ChaCha8Rng, max_per_degree: usize) -> TaggedBarcode {
    let mut out = TaggedBarcode::new();
    for degree in 0..=3 {
        for _ in 0..r.gen_range(0..=max_per_degree) {
            let iv = random_tagged_interval(r, degree);
            out.insert(degree, iv);
        }
    }
    out
}

// ============================================================================
// Random complexes
// ============================================================================

fn synth(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random three-degree based chain complex with vanishing composites:
/// the degree-1 boundary is arbitrary and degree-2 columns are sums of its
/// kernel vectors.
pub fn random_complex(r: &mut ChaCha8Rng) -> BasedChainComplex {
    let d0 = r.gen_range(1..=4);
    let d1 = r.gen_range(0..=4);
    let d2 = r.gen_range(0..=3);
    let mut m1 = Gf2Matrix::zeros(d0, d1);
    for i in 0..d0 {
        for j in 0..d1 {
            if r.gen_bool(0.5) {
                m1.set(i, j, true);
            }
        }
    }
    let kernel = m1.null_space();
    let mut m2 = Gf2Matrix::zeros(d1, d2);
    for c in 0..d2 {
        for kv in &kernel {
            if r.gen_bool(0.5) {
                for row in kv.ones() {
                    m2.set(row, c, !m2.get(row, c));
                }
            }
        }
    }
    BasedChainComplex::new(
        vec![synth("v", d0), synth("e", d1), synth("t", d2)],
        vec![m1, m2],
    )
}

/// A random complex with a full table of distinct dyadic weights (multiples
/// of 1/4, shuffled), so the complex is generic and every gap is at least
/// a quarter.
pub fn random_generic_weighted(r: &mut ChaCha8Rng) -> WeightedComplex {
    let complex = random_complex(r);
    let mut pairs = Vec::new();
    for k in 1..complex.num_degrees() {
        for a in complex.basis(k) {
            for b in complex.basis(k - 1) {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let mut weights: Vec<f64> = (1..=pairs.len()).map(|i| i as f64 * 0.25).collect();
    weights.shuffle(r);
    let list: Vec<(String, String, f64)> = pairs
        .into_iter()
        .zip(weights)
        .map(|((a, b), w)| (a, b, w))
        .collect();
    WeightedComplex::from_weight_list(complex, &list, &[]).unwrap()
}

/// A random strictly monotone filter: degree k values live in [k, k + 7/8]
/// on the eighth grid, so ties within a degree are common but boundary
/// entries always strictly precede their cofaces.
pub fn random_filtered(r: &mut ChaCha8Rng) -> FilteredComplex {
    loop {
        let complex = random_complex(r);
        if complex.total_dim() > 12 {
            continue;
        }
        let values: Vec<Vec<f64>> = (0..complex.num_degrees())
            .map(|k| {
                (0..complex.dim(k))
                    .map(|_| k as f64 + f64::from(r.gen_range(0..8u32)) / 8.0)
                    .collect()
            })
            .collect();
        return FilteredComplex::new(complex, values).unwrap();
    }
}

/// A small random embedded simplicial complex with at most 30 simplices:
/// planar vertices on a parabola-like curve and a handful of generating
/// tuples of size at most 3.
pub fn random_simplicial(r: &mut ChaCha8Rng) -> SimplicialComplex {
    loop {
        let n = r.gen_range(2..=6);
        let vertices: Vec<(String, Vec<f64>)> = (0..n)
            .map(|i| (format!("v{i}"), vec![i as f64, ((i * i) % 5) as f64]))
            .collect();
        let tuples = r.gen_range(1..=4);
        let mut simplices = Vec::new();
        for _ in 0..tuples {
            let card = r.gen_range(1..=3.min(n));
            let mut picks: Vec<usize> = (0..n).collect();
            picks.shuffle(r);
            picks.truncate(card);
            simplices.push(picks.iter().map(|&i| format!("v{i}")).collect::<Vec<_>>());
        }
        let k = SimplicialComplex::from_simplices(vertices, &simplices).unwrap();
        if k.total_simplices() <= 30 {
            return k;
        }
    }
}

// ============================================================================
// Cycle tooling for the subdivision experiment
// ============================================================================

fn vertex_ref(k: &SimplicialComplex, vertex: usize) -> SimplexRef {
    let label = k.vertex_label(vertex).to_string();
    k.find_by_labels(&[&label]).expect("every cycle vertex is a 0-simplex")
}

pub fn euclid(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Collapses a cycle graph onto two critical vertices and two critical
/// edges: removing the critical edges splits the cycle into two paths, and
/// every other vertex pairs with its edge toward the critical vertex of its
/// path. The result is gradient-like because every V-path descends a tree.
pub fn cycle_collapse_field(
    k: &SimplicialComplex,
    critical_vertices: [SimplexRef; 2],
    critical_edges: [SimplexRef; 2],
) -> CombinatorialVectorField {
    let mut adjacent: HashMap<usize, Vec<(usize, SimplexRef)>> = HashMap::new();
    for index in 0..k.simplex_count(1) {
        let e = SimplexRef { dim: 1, index };
        if critical_edges.contains(&e) {
            continue;
        }
        let t = k.tuple(e);
        adjacent.entry(t[0]).or_default().push((t[1], e));
        adjacent.entry(t[1]).or_default().push((t[0], e));
    }
    let mut field = CombinatorialVectorField::new();
    let mut visited: Vec<usize> =
        critical_vertices.iter().map(|&v| k.tuple(v)[0]).collect();
    let mut queue = visited.clone();
    while let Some(u) = queue.pop() {
        for &(w, e) in adjacent.get(&u).into_iter().flatten() {
            if !visited.contains(&w) {
                visited.push(w);
                queue.push(w);
                field.add_pair(vertex_ref(k, w), e).expect("each vertex paired once");
            }
        }
    }
    field
}

/// All edges whose barycenter is nearest to the target point, ties kept.
pub fn nearest_edges(k: &SimplicialComplex, target: &[f64]) -> Vec<SimplexRef> {
    let mut best = f64::INFINITY;
    let mut out = Vec::new();
    for index in 0..k.simplex_count(1) {
        let e = SimplexRef { dim: 1, index };
        let d = euclid(&k.barycenter(e), target);
        if d < best - 1e-12 {
            best = d;
            out = vec![e];
        } else if d <= best + 1e-12 {
            out.push(e);
        }
    }
    out
}
