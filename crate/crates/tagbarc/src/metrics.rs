//! Distances between tagged barcodes.
//!
//! Matching a tagged interval J = [0,s,t) to J' = [0,s',t') costs
//! max(|s−s'|, |t−t'|) with the conventions |∞−∞| = 0 and |finite−∞| = ∞;
//! leaving J unmatched costs its weight t/2. The bottleneck distance of two
//! degree slices is the smallest ε admitting a matching whose every pair
//! costs at most ε and whose every unmatched interval weighs at most ε. The
//! interleaving distance of factored chain complexes agrees with the maximal
//! degreewise bottleneck distance of their barcodes, so this module computes
//! distances on barcodes only.
//!
//! The minimum is attained on a finite candidate set: every threshold that
//! can be critical is a pairwise cost, a weight, or zero. Feasibility at a
//! threshold is a perfect-matching question on the diagonal-augmented
//! bipartite graph, where each interval may fall back to a private deletion
//! node when its weight fits and deletion nodes pair with each other freely.

use crate::ext::ExtReal;
use crate::factored::{Multiset, TaggedBarcode, TaggedInterval};
use std::collections::BTreeSet;

/// |x − y| on the extended half-line: ∞ agrees with itself and is infinitely
/// far from every finite value.
fn ext_abs_diff(x: ExtReal, y: ExtReal) -> ExtReal {
    match (x.as_finite(), y.as_finite()) {
        (Some(a), Some(b)) => ExtReal::finite((a - b).abs()),
        (None, None) => ExtReal::finite(0.0),
        _ => ExtReal::Inf,
    }
}

/// Cost of matching two tagged intervals: the larger of the endpoint moves.
pub fn cost(a: &TaggedInterval, b: &TaggedInterval) -> ExtReal {
    ext_abs_diff(a.s(), b.s()).max(ext_abs_diff(a.t(), b.t()))
}

/// Cost of leaving an interval unmatched: half its lifetime t.
pub fn weight(iv: &TaggedInterval) -> ExtReal {
    iv.t().half()
}

/// An optimal matching witnessing a bottleneck distance. Matched pairs cost
/// at most `epsilon`, unmatched intervals (from either side, each listed with
/// its weight) weigh at most `epsilon`, and no interval occurrence is used
/// twice.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingResult {
    pub epsilon: ExtReal,
    pub matched: Vec<(TaggedInterval, TaggedInterval)>,
    pub unmatched: Vec<(TaggedInterval, ExtReal)>,
}

/// Kuhn augmenting-path step: tries to match left node `u`, displacing
/// earlier matches along an alternating path.
fn augment(
    u: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        if !seen[v] {
            seen[v] = true;
            let free = match match_right[v] {
                None => true,
                Some(w) => augment(w, adj, seen, match_right),
            };
            if free {
                match_right[v] = Some(u);
                return true;
            }
        }
    }
    false
}

/// Perfect matching on the diagonal-augmented graph at threshold `eps`, if
/// one exists. Left nodes are the A intervals followed by B's deletion
/// proxies; right nodes are the B intervals followed by A's deletion proxies.
/// Returns, for each left node, the right node it is matched to.
fn perfect_matching(
    avec: &[TaggedInterval],
    bvec: &[TaggedInterval],
    eps: f64,
) -> Option<Vec<usize>> {
    let na = avec.len();
    let nb = bvec.len();
    let n = na + nb;
    let fits = |x: ExtReal| x <= ExtReal::finite(eps);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, a) in avec.iter().enumerate() {
        for (j, b) in bvec.iter().enumerate() {
            if fits(cost(a, b)) {
                adj[i].push(j);
            }
        }
        if fits(weight(a)) {
            adj[i].push(nb + i);
        }
    }
    for (j, b) in bvec.iter().enumerate() {
        if fits(weight(b)) {
            adj[na + j].push(j);
        }
        adj[na + j].extend((0..na).map(|i| nb + i));
    }
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        if !augment(u, &adj, &mut seen, &mut match_right) {
            // No augmenting path from u now means none ever, so the matching
            // cannot become perfect.
            return None;
        }
    }
    let mut match_left = vec![usize::MAX; n];
    for (v, m) in match_right.iter().enumerate() {
        if let Some(u) = *m {
            match_left[u] = v;
        }
    }
    Some(match_left)
}

/// Intervals whose weight is infinite can neither be deleted nor matched
/// across shape classes at finite cost, so each class count must agree for
/// the distance to be finite.
fn infinite_classes(v: &[TaggedInterval]) -> (usize, usize) {
    let half_inf = v
        .iter()
        .filter(|iv| iv.t() == ExtReal::Inf && iv.s().is_finite())
        .count();
    let forever = v.iter().filter(|iv| iv.s() == ExtReal::Inf).count();
    (half_inf, forever)
}

/// Bottleneck distance between two degree slices, with a witnessing
/// matching. Exact: the answer is the smallest feasible value on the finite
/// candidate grid of pairwise costs, weights, and zero.
pub fn bottleneck(
    a: &Multiset<TaggedInterval>,
    b: &Multiset<TaggedInterval>,
) -> (ExtReal, MatchingResult) {
    let avec = a.expand();
    let bvec = b.expand();
    if infinite_classes(&avec) != infinite_classes(&bvec) {
        let unmatched = avec
            .iter()
            .chain(bvec.iter())
            .map(|iv| (*iv, weight(iv)))
            .collect();
        let result = MatchingResult {
            epsilon: ExtReal::Inf,
            matched: Vec::new(),
            unmatched,
        };
        return (ExtReal::Inf, result);
    }
    let mut grid: Vec<f64> = vec![0.0];
    for iv in avec.iter().chain(bvec.iter()) {
        if let Some(w) = weight(iv).as_finite() {
            grid.push(w);
        }
    }
    for x in &avec {
        for y in &bvec {
            if let Some(c) = cost(x, y).as_finite() {
                grid.push(c);
            }
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    // Feasibility is monotone in the threshold and holds at the grid maximum
    // once the class counts agree, so binary search finds the optimum.
    let mut lo = 0usize;
    let mut hi = grid.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if perfect_matching(&avec, &bvec, grid[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let eps = grid[lo];
    let match_left =
        perfect_matching(&avec, &bvec, eps).expect("grid maximum is feasible");
    let mut matched = Vec::new();
    let mut unmatched = Vec::new();
    for (i, iv) in avec.iter().enumerate() {
        let v = match_left[i];
        if v < bvec.len() {
            matched.push((*iv, bvec[v]));
        } else {
            unmatched.push((*iv, weight(iv)));
        }
    }
    // B's deletion proxy pairs with its own interval exactly when that
    // interval is deleted.
    for (j, iv) in bvec.iter().enumerate() {
        if match_left[avec.len() + j] == j {
            unmatched.push((*iv, weight(iv)));
        }
    }
    let epsilon = ExtReal::finite(eps);
    (epsilon, MatchingResult { epsilon, matched, unmatched })
}

/// Interleaving distance of the factored chain complexes the barcodes
/// describe: the maximum over degrees of the degreewise bottleneck distance.
pub fn interleaving_distance(x: &TaggedBarcode, y: &TaggedBarcode) -> ExtReal {
    let degrees: BTreeSet<usize> = x.degrees().chain(y.degrees()).collect();
    let mut out = ExtReal::finite(0.0);
    for k in degrees {
        out = out.max(bottleneck(&x.slice(k), &y.slice(k)).0);
    }
    out
}

/// Interleaving distance of two single-interval summands in the same degree:
/// either move both endpoints or delete both intervals, whichever is cheaper.
pub fn interval_pair_interleaving(
    degree: usize,
    a: &TaggedInterval,
    b: &TaggedInterval,
) -> ExtReal {
    debug_assert!(a.allowed_in_degree(degree) && b.allowed_in_degree(degree));
    cost(a, b).min(weight(a).max(weight(b)))
}
