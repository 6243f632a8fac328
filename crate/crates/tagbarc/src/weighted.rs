//! Weight, order, and filter decorations on based chain complexes, the
//! genericity gap ξ, and the single-step simplification engine.
//!
//! A weighted complex carries a nonnegative weight for every adjacent-degree
//! basis pair (a, b), whether or not b appears in ∂a, plus a tie order that
//! totally orders each equal-weight class. Simplifying a pair (a, b) with
//! ⟨∂a, b⟩ ≠ 0 quotients out an acyclic disk: bases shrink by one in the two
//! adjacent degrees, homology is untouched, and the surviving weights restrict
//! unchanged.

use crate::ext::ExtReal;
use crate::gf2::{BasedChainComplex, Gf2Matrix};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

// ============================================================================
// Errors and witnesses
// ============================================================================

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("complex fails validation: {0}")]
    InvalidComplex(crate::gf2::ValidationReport),
    #[error("no adjacent-degree pair ({a}, {b}) exists in the complex")]
    NotAdjacent { a: String, b: String },
    #[error("pair ({a}, {b}) is ambiguous: labels occur in several adjacent degrees")]
    AmbiguousPair { a: String, b: String },
    #[error("weight for pair ({a}, {b}) given more than once")]
    DuplicateWeight { a: String, b: String },
    #[error("missing weight for adjacent pair ({a}, {b}) in degree {degree}")]
    MissingWeight { degree: usize, a: String, b: String },
    #[error("weight {value} for pair ({a}, {b}) is not a finite nonnegative number")]
    BadWeight { a: String, b: String, value: f64 },
    #[error("tie-order precedence rules contain a cycle through pair ({a}, {b})")]
    OrderCycle { a: String, b: String },
    #[error("pair ({a}, {b}) does not satisfy the simplification precondition: b is not in the support of the boundary of a")]
    PairNotInBoundary { a: String, b: String },
    #[error("filter value {value} for '{label}' is not a finite nonnegative number")]
    BadFilterValue { label: String, value: f64 },
    #[error("missing filter value for basis element '{label}'")]
    MissingFilterValue { label: String },
    #[error("filter is not monotone: f({b}) = {fb} is not below f({a}) = {fa} although {b} is in the support of the boundary of {a}")]
    NonMonotoneFilter { a: String, b: String, fa: f64, fb: f64 },
    #[error("filter value list has wrong shape for the complex")]
    FilterShape,
}

/// An adjacent-degree basis pair with its weight, used in witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRef {
    pub degree: usize,
    pub a: String,
    pub b: String,
    pub weight: f64,
}

impl fmt::Display for PairRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) in degree {} with weight {}", self.a, self.b, self.degree, self.weight)
    }
}

/// Why a weighted complex is not generic.
#[derive(Debug, Clone, PartialEq)]
pub enum GenericityViolation {
    ZeroWeight(PairRef),
    EqualWeights(PairRef, PairRef),
}

impl fmt::Display for GenericityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenericityViolation::ZeroWeight(p) => write!(f, "zero weight on pair {p}"),
            GenericityViolation::EqualWeights(p, q) => {
                write!(f, "equal weights on pairs {p} and {q}")
            }
        }
    }
}

// ============================================================================
// Weight tables
// ============================================================================

/// Dense weight table for one adjacent degree pair (a-side rows, b-side cols).
#[derive(Clone, PartialEq)]
struct WeightTable {
    a_dim: usize,
    b_dim: usize,
    w: Vec<f64>,
}

impl WeightTable {
    fn filled(a_dim: usize, b_dim: usize, value: f64) -> Self {
        WeightTable { a_dim, b_dim, w: vec![value; a_dim * b_dim] }
    }

    fn get(&self, a: usize, b: usize) -> f64 {
        self.w[a * self.b_dim + b]
    }

    fn set(&mut self, a: usize, b: usize, value: f64) {
        self.w[a * self.b_dim + b] = value;
    }

    fn delete_a(&self, a: usize) -> WeightTable {
        let mut w = Vec::with_capacity((self.a_dim - 1) * self.b_dim);
        for i in 0..self.a_dim {
            if i != a {
                w.extend_from_slice(&self.w[i * self.b_dim..(i + 1) * self.b_dim]);
            }
        }
        WeightTable { a_dim: self.a_dim - 1, b_dim: self.b_dim, w }
    }

    fn delete_b(&self, b: usize) -> WeightTable {
        let mut w = Vec::with_capacity(self.a_dim * (self.b_dim.max(1) - 1));
        for i in 0..self.a_dim {
            for j in 0..self.b_dim {
                if j != b {
                    w.push(self.get(i, j));
                }
            }
        }
        WeightTable { a_dim: self.a_dim, b_dim: self.b_dim - 1, w }
    }
}

// ============================================================================
// Tie order
// ============================================================================

/// A precedence rule between two labeled pairs: the first simplifies before
/// the second when their weights tie.
pub type PrecedenceRule = ((String, String), (String, String));

/// A strict total order on equal-weight pairs: an explicit priority list, with
/// unlisted pairs falling back to the deterministic lexicographic default
/// (degree of a, position of a, position of b). Listed pairs precede unlisted
/// ones within an equal-weight class.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TieOrder {
    priority: Vec<(usize, String, String)>,
}

impl TieOrder {
    /// Builds the order from precedence rules ((a,b) before (a',b')) by
    /// topological sort. Rules referencing unknown pairs or forming a cycle
    /// are errors.
    pub fn from_precedence(
        complex: &BasedChainComplex,
        rules: &[PrecedenceRule],
    ) -> Result<Self, WeightError> {
        let mut mentioned: Vec<(usize, String, String)> = Vec::new();
        let index_of = |pair: &(String, String),
                            mentioned: &mut Vec<(usize, String, String)>|
         -> Result<usize, WeightError> {
            let (degree, _, _) = resolve_pair(complex, &pair.0, &pair.1)?;
            let key = (degree, pair.0.clone(), pair.1.clone());
            Ok(match mentioned.iter().position(|m| *m == key) {
                Some(i) => i,
                None => {
                    mentioned.push(key);
                    mentioned.len() - 1
                }
            })
        };
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (first, second) in rules {
            let i = index_of(first, &mut mentioned)?;
            let j = index_of(second, &mut mentioned)?;
            edges.push((i, j));
        }
        // Kahn topological sort, first-mention order as the deterministic tie
        // break among sources.
        let n = mentioned.len();
        let mut indegree = vec![0usize; n];
        for &(_, j) in &edges {
            indegree[j] += 1;
        }
        let mut placed = vec![false; n];
        let mut priority = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n).find(|&i| !placed[i] && indegree[i] == 0);
            match next {
                Some(i) => {
                    placed[i] = true;
                    priority.push(mentioned[i].clone());
                    for &(s, t) in &edges {
                        if s == i {
                            indegree[t] -= 1;
                        }
                    }
                }
                None => {
                    let culprit = (0..n).find(|&i| !placed[i]).unwrap();
                    return Err(WeightError::OrderCycle {
                        a: mentioned[culprit].1.clone(),
                        b: mentioned[culprit].2.clone(),
                    });
                }
            }
        }
        Ok(TieOrder { priority })
    }

    /// An explicit priority list, highest priority first.
    pub fn from_priority(priority: Vec<(usize, String, String)>) -> Self {
        TieOrder { priority }
    }

    pub fn is_default(&self) -> bool {
        self.priority.is_empty()
    }

    fn rank(&self, degree: usize, a: &str, b: &str) -> Option<usize> {
        self.priority
            .iter()
            .position(|(d, pa, pb)| *d == degree && pa == a && pb == b)
    }

    /// Drops entries that mention a basis element deleted by a simplification.
    fn restrict(&self, n: usize, a: &str, b: &str) -> TieOrder {
        let survives = |(d, pa, pb): &(usize, String, String)| {
            !((*d == n && pa == a)
                || (*d == n && pb == b)
                || (*d == n + 1 && pb == a)
                || (n >= 1 && *d == n - 1 && pa == b))
        };
        TieOrder {
            priority: self.priority.iter().filter(|e| survives(e)).cloned().collect(),
        }
    }
}

// ============================================================================
// Weighted complexes
// ============================================================================

/// A candidate simplification pair: b lies in the support of ∂a.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub degree: usize,
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// A based chain complex with a weight on every adjacent-degree basis pair
/// and a tie order.
#[derive(Clone, PartialEq)]
pub struct WeightedComplex {
    complex: BasedChainComplex,
    // tables[k-1] holds the degree-k table (a in degree k, b in degree k-1)
    tables: Vec<WeightTable>,
    tie_order: TieOrder,
}

fn resolve_pair(
    complex: &BasedChainComplex,
    a: &str,
    b: &str,
) -> Result<(usize, usize, usize), WeightError> {
    let mut hits = Vec::new();
    for k in 1..complex.num_degrees() {
        if let (Some(ai), Some(bi)) = (complex.label_index(k, a), complex.label_index(k - 1, b)) {
            hits.push((k, ai, bi));
        }
    }
    match hits.len() {
        0 => Err(WeightError::NotAdjacent { a: a.to_string(), b: b.to_string() }),
        1 => Ok(hits[0]),
        _ => Err(WeightError::AmbiguousPair { a: a.to_string(), b: b.to_string() }),
    }
}

fn check_valid(complex: &BasedChainComplex) -> Result<(), WeightError> {
    let report = complex.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(WeightError::InvalidComplex(report))
    }
}

/// Canonicalizes a parsed weight (rejects NaN/negative/infinite, folds -0.0).
fn check_weight(a: &str, b: &str, value: f64) -> Result<f64, WeightError> {
    if !value.is_finite() || value < 0.0 {
        return Err(WeightError::BadWeight { a: a.to_string(), b: b.to_string(), value });
    }
    Ok(if value == 0.0 { 0.0 } else { value })
}

impl WeightedComplex {
    /// Builds from an explicit weight list; every adjacent pair must appear
    /// exactly once. Precedence rules seed the tie order.
    pub fn from_weight_list(
        complex: BasedChainComplex,
        weights: &[(String, String, f64)],
        order_rules: &[PrecedenceRule],
    ) -> Result<Self, WeightError> {
        check_valid(&complex)?;
        let mut staged: Vec<Vec<Option<f64>>> = (1..complex.num_degrees())
            .map(|k| vec![None; complex.dim(k) * complex.dim(k - 1)])
            .collect();
        for (a, b, w) in weights {
            let (k, ai, bi) = resolve_pair(&complex, a, b)?;
            let cell = &mut staged[k - 1][ai * complex.dim(k - 1) + bi];
            if cell.is_some() {
                return Err(WeightError::DuplicateWeight { a: a.clone(), b: b.clone() });
            }
            *cell = Some(check_weight(a, b, *w)?);
        }
        let mut tables = Vec::with_capacity(staged.len());
        for (ki, cells) in staged.into_iter().enumerate() {
            let k = ki + 1;
            let b_dim = complex.dim(k - 1);
            let mut table = WeightTable::filled(complex.dim(k), b_dim, 0.0);
            for (idx, cell) in cells.into_iter().enumerate() {
                match cell {
                    Some(w) => table.w[idx] = w,
                    None => {
                        return Err(WeightError::MissingWeight {
                            degree: k,
                            a: complex.basis(k)[idx / b_dim.max(1)].clone(),
                            b: complex.basis(k - 1)[idx % b_dim.max(1)].clone(),
                        })
                    }
                }
            }
            tables.push(table);
        }
        let tie_order = TieOrder::from_precedence(&complex, order_rules)?;
        Ok(WeightedComplex { complex, tables, tie_order })
    }

    /// Builds with weights given by a total function on adjacent pairs and
    /// the default tie order.
    pub fn from_weight_fn(
        complex: BasedChainComplex,
        mut weight: impl FnMut(usize, &str, &str) -> f64,
    ) -> Result<Self, WeightError> {
        check_valid(&complex)?;
        let mut tables = Vec::new();
        for k in 1..complex.num_degrees() {
            let mut table = WeightTable::filled(complex.dim(k), complex.dim(k - 1), 0.0);
            for ai in 0..complex.dim(k) {
                for bi in 0..complex.dim(k - 1) {
                    let a = &complex.basis(k)[ai];
                    let b = &complex.basis(k - 1)[bi];
                    table.set(ai, bi, check_weight(a, b, weight(k, a, b))?);
                }
            }
            tables.push(table);
        }
        Ok(WeightedComplex { complex, tables, tie_order: TieOrder::default() })
    }

    pub fn complex(&self) -> &BasedChainComplex {
        &self.complex
    }

    pub fn tie_order(&self) -> &TieOrder {
        &self.tie_order
    }

    pub fn with_tie_order(mut self, tie_order: TieOrder) -> Self {
        self.tie_order = tie_order;
        self
    }

    /// Weight of the pair (a in degree k, b in degree k-1) by position.
    pub fn weight(&self, degree: usize, a: usize, b: usize) -> f64 {
        self.tables[degree - 1].get(a, b)
    }

    pub fn weight_of_labels(&self, a: &str, b: &str) -> Result<f64, WeightError> {
        let (k, ai, bi) = resolve_pair(&self.complex, a, b)?;
        Ok(self.weight(k, ai, bi))
    }

    pub fn pair_labels(&self, degree: usize, a: usize, b: usize) -> (String, String) {
        (
            self.complex.basis(degree)[a].clone(),
            self.complex.basis(degree - 1)[b].clone(),
        )
    }

    /// All adjacent pairs with weights, degrees ascending then positional.
    pub fn weights_iter(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        (1..self.complex.num_degrees()).flat_map(move |k| {
            (0..self.complex.dim(k)).flat_map(move |ai| {
                (0..self.complex.dim(k - 1)).map(move |bi| (k, ai, bi, self.weight(k, ai, bi)))
            })
        })
    }

    /// Rewrites every weight through `f`; the tie order is kept.
    pub fn map_weights(
        &self,
        mut f: impl FnMut(usize, usize, usize, f64) -> f64,
    ) -> Result<Self, WeightError> {
        let mut out = self.clone();
        for k in 1..self.complex.num_degrees() {
            for ai in 0..self.complex.dim(k) {
                for bi in 0..self.complex.dim(k - 1) {
                    let w = f(k, ai, bi, self.weight(k, ai, bi));
                    let (a, b) = (&self.complex.basis(k)[ai], &self.complex.basis(k - 1)[bi]);
                    out.tables[k - 1].set(ai, bi, check_weight(a, b, w)?);
                }
            }
        }
        Ok(out)
    }

    /// Generic: all weights strictly positive and pairwise distinct. On
    /// failure returns the first violation in scan order.
    #[allow(clippy::result_large_err)]
    pub fn is_generic(&self) -> Result<(), GenericityViolation> {
        let pair_ref = |k: usize, ai: usize, bi: usize| PairRef {
            degree: k,
            a: self.complex.basis(k)[ai].clone(),
            b: self.complex.basis(k - 1)[bi].clone(),
            weight: self.weight(k, ai, bi),
        };
        let mut seen: HashMap<u64, (usize, usize, usize)> = HashMap::new();
        for (k, ai, bi, w) in self.weights_iter() {
            if w == 0.0 {
                return Err(GenericityViolation::ZeroWeight(pair_ref(k, ai, bi)));
            }
            if let Some(&(k0, a0, b0)) = seen.get(&w.to_bits()) {
                return Err(GenericityViolation::EqualWeights(
                    pair_ref(k0, a0, b0),
                    pair_ref(k, ai, bi),
                ));
            }
            seen.insert(w.to_bits(), (k, ai, bi));
        }
        Ok(())
    }

    /// Candidate pairs (⟨∂a, b⟩ ≠ 0), degrees ascending then positional.
    pub fn candidates(&self) -> Vec<Candidate> {
        let mut out = Vec::new();
        for k in 1..self.complex.num_degrees() {
            if let Some(d) = self.complex.boundary(k) {
                for (bi, ai) in d.entries().iter().map(|&(r, c)| (r, c)) {
                    out.push(Candidate { degree: k, a: ai, b: bi, weight: self.weight(k, ai, bi) });
                }
            }
        }
        out
    }

    /// The minimal-weight candidate, ties broken by the tie order. None when
    /// every differential vanishes.
    pub fn minimal_candidate(&self) -> Option<Candidate> {
        self.candidates().into_iter().min_by(|x, y| {
            x.weight.total_cmp(&y.weight).then_with(|| {
                let (xa, xb) = self.pair_labels(x.degree, x.a, x.b);
                let (ya, yb) = self.pair_labels(y.degree, y.a, y.b);
                let xr = self.tie_order.rank(x.degree, &xa, &xb).unwrap_or(usize::MAX);
                let yr = self.tie_order.rank(y.degree, &ya, &yb).unwrap_or(usize::MAX);
                xr.cmp(&yr).then((x.degree, x.a, x.b).cmp(&(y.degree, y.a, y.b)))
            })
        })
    }

    /// Quotients out the pair (a, b): the one-step simplification.
    pub fn simplify_pair(&self, a: &str, b: &str) -> Result<WeightedComplex, WeightError> {
        Ok(self.simplify_pair_with_map(a, b)?.0)
    }

    /// As `simplify_pair`, also returning the quotient chain map, one matrix
    /// per degree (rows: new basis, cols: old basis). The map is the identity
    /// away from the two affected degrees; in degree n it kills a, and in
    /// degree n-1 it rewrites b as the rest of the support of ∂a.
    pub fn simplify_pair_with_map(
        &self,
        a: &str,
        b: &str,
    ) -> Result<(WeightedComplex, Vec<Gf2Matrix>), WeightError> {
        let (n, ai, bi) = resolve_pair(&self.complex, a, b)?;
        let d_n = self.complex.boundary(n).expect("degree resolved against boundary range");
        if !d_n.get(bi, ai) {
            return Err(WeightError::PairNotInBoundary { a: a.to_string(), b: b.to_string() });
        }
        let support: Vec<usize> = d_n.column(ai).ones().filter(|&r| r != bi).collect();

        let mut bases: Vec<Vec<String>> =
            (0..self.complex.num_degrees()).map(|k| self.complex.basis(k).to_vec()).collect();
        bases[n].remove(ai);
        bases[n - 1].remove(bi);

        let mut boundaries = Vec::with_capacity(self.complex.num_degrees().saturating_sub(1));
        for k in 1..self.complex.num_degrees() {
            let m = self.complex.boundary(k).expect("validated complex has all boundaries");
            let out = if k == n + 1 {
                m.delete_row(ai)
            } else if k == n {
                let mut m = m.clone();
                for &s in &support {
                    m.add_row_to(bi, s);
                }
                m.delete_col(ai).delete_row(bi)
            } else if k + 1 == n {
                m.delete_col(bi)
            } else {
                m.clone()
            };
            boundaries.push(out);
        }

        let mut maps = Vec::with_capacity(self.complex.num_degrees());
        for k in 0..self.complex.num_degrees() {
            let old_dim = self.complex.dim(k);
            let map = if k == n {
                let mut q = Gf2Matrix::zeros(old_dim - 1, old_dim);
                for j in 0..old_dim {
                    if j != ai {
                        q.set(if j < ai { j } else { j - 1 }, j, true);
                    }
                }
                q
            } else if k == n - 1 {
                let mut q = Gf2Matrix::zeros(old_dim - 1, old_dim);
                for j in 0..old_dim {
                    if j != bi {
                        q.set(if j < bi { j } else { j - 1 }, j, true);
                    }
                }
                for &s in &support {
                    q.set(if s < bi { s } else { s - 1 }, bi, true);
                }
                q
            } else {
                Gf2Matrix::identity(old_dim)
            };
            maps.push(map);
        }

        let mut tables = self.tables.clone();
        tables[n - 1] = tables[n - 1].delete_a(ai).delete_b(bi);
        if n < tables.len() {
            tables[n] = tables[n].delete_b(ai);
        }
        if n >= 2 {
            tables[n - 2] = tables[n - 2].delete_a(bi);
        }

        let quotient = WeightedComplex {
            complex: BasedChainComplex::new(bases, boundaries),
            tables,
            tie_order: self.tie_order.restrict(n, a, b),
        };
        Ok((quotient, maps))
    }
}

impl fmt::Debug for WeightedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedComplex {{ complex: {:?} }}", self.complex)
    }
}

// ============================================================================
// Filtered complexes
// ============================================================================

/// A based chain complex with a monotone scalar on basis elements: whenever b
/// appears in ∂a, f(b) < f(a) strictly.
#[derive(Clone, PartialEq)]
pub struct FilteredComplex {
    complex: BasedChainComplex,
    values: Vec<Vec<f64>>,
}

impl FilteredComplex {
    pub fn new(complex: BasedChainComplex, values: Vec<Vec<f64>>) -> Result<Self, WeightError> {
        check_valid(&complex)?;
        if values.len() != complex.num_degrees()
            || values.iter().enumerate().any(|(k, v)| v.len() != complex.dim(k))
        {
            return Err(WeightError::FilterShape);
        }
        for (k, vs) in values.iter().enumerate() {
            for (i, &v) in vs.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(WeightError::BadFilterValue {
                        label: complex.basis(k)[i].clone(),
                        value: v,
                    });
                }
            }
        }
        for k in 1..complex.num_degrees() {
            let d = complex.boundary(k).expect("validated complex has all boundaries");
            for (bi, ai) in d.entries() {
                if values[k - 1][bi] >= values[k][ai] {
                    return Err(WeightError::NonMonotoneFilter {
                        a: complex.basis(k)[ai].clone(),
                        b: complex.basis(k - 1)[bi].clone(),
                        fa: values[k][ai],
                        fb: values[k - 1][bi],
                    });
                }
            }
        }
        Ok(FilteredComplex { complex, values })
    }

    /// Builds from a label → value map; every basis label must be present.
    pub fn from_label_values(
        complex: BasedChainComplex,
        values: &HashMap<String, f64>,
    ) -> Result<Self, WeightError> {
        let mut by_degree = Vec::with_capacity(complex.num_degrees());
        for k in 0..complex.num_degrees() {
            let mut vs = Vec::with_capacity(complex.dim(k));
            for label in complex.basis(k) {
                match values.get(label) {
                    Some(&v) => vs.push(v),
                    None => return Err(WeightError::MissingFilterValue { label: label.clone() }),
                }
            }
            by_degree.push(vs);
        }
        FilteredComplex::new(complex, by_degree)
    }

    pub fn complex(&self) -> &BasedChainComplex {
        &self.complex
    }

    pub fn value(&self, degree: usize, i: usize) -> f64 {
        self.values[degree][i]
    }

    pub fn value_of_label(&self, degree: usize, label: &str) -> Option<f64> {
        self.complex.label_index(degree, label).map(|i| self.values[degree][i])
    }

    /// The induced weights w(a, b) = |f(a) - f(b)| on all adjacent pairs,
    /// with the default tie order.
    pub fn to_weights(&self) -> WeightedComplex {
        WeightedComplex::from_weight_fn(self.complex.clone(), |k, a, b| {
            let ai = self.complex.label_index(k, a).unwrap();
            let bi = self.complex.label_index(k - 1, b).unwrap();
            (self.values[k][ai] - self.values[k - 1][bi]).abs()
        })
        .expect("filter values are finite and nonnegative")
    }
}

impl fmt::Debug for FilteredComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FilteredComplex {{ complex: {:?} }}", self.complex)
    }
}

// ============================================================================
// The genericity gap ξ
// ============================================================================

#[derive(Debug, Error, PartialEq)]
pub enum XiError {
    #[error("distance table is not square")]
    NotSquare,
    #[error("distance table is asymmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("distance table has a nonzero diagonal entry at {i}")]
    NonzeroDiagonal { i: usize },
}

/// The minimum gap between distances of distinct unordered point pairs: small
/// ξ means the configuration is close to violating genericity. Returns +∞
/// when fewer than two unordered pairs exist.
pub fn xi(distances: &[Vec<f64>]) -> Result<ExtReal, XiError> {
    let n = distances.len();
    for row in distances {
        if row.len() != n {
            return Err(XiError::NotSquare);
        }
    }
    for (i, row) in distances.iter().enumerate() {
        if row[i] != 0.0 {
            return Err(XiError::NonzeroDiagonal { i });
        }
        for (j, &value) in row.iter().enumerate().skip(i + 1) {
            if value != distances[j][i] {
                return Err(XiError::Asymmetric { i, j });
            }
        }
    }
    let mut values: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| distances[i][j])
        .collect();
    if values.len() < 2 {
        return Ok(ExtReal::Inf);
    }
    values.sort_by(f64::total_cmp);
    let gap = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    Ok(ExtReal::finite(gap))
}
