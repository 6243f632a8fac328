//! Simplicial complexes with embedded geometry, combinatorial vector fields,
//! and the mod-2 Morse complex obtained by counting V-paths.
//!
//! A combinatorial vector field pairs simplices with cofacets one dimension
//! up; it is gradient-like when no dimension admits a closed non-stationary
//! V-path. The critical cells of a gradient-like field span a chain complex
//! whose boundary coefficient ⟨∂τ, σ⟩ counts, mod 2, the V-paths running
//! from a hyperface of τ down the field to σ. That complex computes the same
//! mod-2 homology as the underlying simplicial complex.
//!
//! Geometry enters through cell metrics: the default metric is the Euclidean
//! distance between barycenters, with all cross-component distances set to
//! one shared constant, the largest intra-component distance. Feeding those
//! distances to the critical pairs of a Morse complex yields a weighted
//! based chain complex ready for the barcode constructions.

use crate::gf2::{BasedChainComplex, Gf2Matrix};
use crate::weighted::{WeightError, WeightedComplex};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimplicialError {
    #[error("vertex {0:?} is declared twice")]
    DuplicateVertex(String),
    #[error("vertex {label:?} has {got} coordinates, expected {want}")]
    CoordinateDim { label: String, got: usize, want: usize },
    #[error("simplex references unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("simplex repeats vertex {0:?}")]
    RepeatedVertex(String),
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,
    #[error("simplex on {0} vertices exceeds the supported dimension")]
    SimplexTooLarge(usize),
}

#[derive(Debug, Error)]
pub enum MorseError {
    #[error("invalid combinatorial vector field: {0}")]
    InvalidField(CvfReport),
    #[error("field is not gradient-like: closed V-path of {} cells in dimension {}",
            .0.len(), .0.first().map_or(0, |r| r.dim))]
    NotGradientLike(Vec<SimplexRef>),
    #[error("pair source {0} is already paired")]
    DuplicateSource(SimplexRef),
    #[error("metric does not cover the pair ({a}, {b})")]
    MissingDistance { a: String, b: String },
    #[error("metric entry for ({a}, {b}) is {value}, which is not usable as a distance")]
    BadMetricEntry { a: SimplexRef, b: SimplexRef, value: f64 },
    #[error("metric entries for ({a}, {b}) disagree: {first} vs {second}")]
    ConflictingMetricEntry { a: SimplexRef, b: SimplexRef, first: f64, second: f64 },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// Position of a simplex inside its complex: dimension and index within the
/// sorted list of that dimension.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexRef {
    pub dim: usize,
    pub index: usize,
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.dim, self.index)
    }
}

impl fmt::Debug for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ============================================================================
// Simplicial complexes
// ============================================================================

/// A finite simplicial complex on labeled vertices with coordinates in a
/// common Euclidean space. Simplices are stored per dimension as sorted
/// strictly increasing vertex-index tuples, closed under faces.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    coords: Vec<Vec<f64>>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: BTreeMap<Vec<usize>, SimplexRef>,
}

impl SimplicialComplex {
    /// Builds the complex generated by the given simplices: every nonempty
    /// subset of a listed simplex is included. Vertices may stay unused;
    /// they contribute geometry only.
    pub fn from_simplices(
        vertices: Vec<(String, Vec<f64>)>,
        simplices: &[Vec<String>],
    ) -> Result<Self, SimplicialError> {
        let mut labels = Vec::with_capacity(vertices.len());
        let mut coords = Vec::with_capacity(vertices.len());
        let mut by_label: HashMap<String, usize> = HashMap::new();
        let want = vertices.first().map_or(0, |(_, c)| c.len());
        for (label, c) in vertices {
            if c.len() != want {
                return Err(SimplicialError::CoordinateDim {
                    label,
                    got: c.len(),
                    want,
                });
            }
            if by_label.insert(label.clone(), labels.len()).is_some() {
                return Err(SimplicialError::DuplicateVertex(label));
            }
            labels.push(label);
            coords.push(c);
        }
        let mut per_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for simplex in simplices {
            if simplex.is_empty() {
                return Err(SimplicialError::EmptySimplex);
            }
            if simplex.len() > 16 {
                return Err(SimplicialError::SimplexTooLarge(simplex.len()));
            }
            let mut tuple = Vec::with_capacity(simplex.len());
            for l in simplex {
                let &i = by_label
                    .get(l)
                    .ok_or_else(|| SimplicialError::UnknownVertex(l.clone()))?;
                tuple.push(i);
            }
            tuple.sort_unstable();
            if tuple.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::RepeatedVertex(simplex[0].clone()));
            }
            // Close under faces: every nonempty subset of the tuple.
            for mask in 1u32..(1 << tuple.len()) {
                let face: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| mask & (1 << p) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                let d = face.len() - 1;
                if per_dim.len() <= d {
                    per_dim.resize_with(d + 1, BTreeSet::new);
                }
                per_dim[d].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> =
            per_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut index = BTreeMap::new();
        for (dim, list) in simplices.iter().enumerate() {
            for (i, tuple) in list.iter().enumerate() {
                index.insert(tuple.clone(), SimplexRef { dim, index: i });
            }
        }
        Ok(SimplicialComplex { labels, coords, simplices, index })
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertex_coords(&self, i: usize) -> &[f64] {
        &self.coords[i]
    }

    pub fn coord_dim(&self) -> usize {
        self.coords.first().map_or(0, Vec::len)
    }

    /// Dimension of the complex, or None when it has no simplices.
    pub fn top_dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<usize>] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn simplex_count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    /// All simplices, dimension by dimension.
    pub fn refs(&self) -> impl Iterator<Item = SimplexRef> + '_ {
        self.simplices.iter().enumerate().flat_map(|(dim, list)| {
            (0..list.len()).map(move |index| SimplexRef { dim, index })
        })
    }

    pub fn tuple(&self, r: SimplexRef) -> &[usize] {
        &self.simplices[r.dim][r.index]
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        r.dim < self.simplices.len() && r.index < self.simplices[r.dim].len()
    }

    /// Locates a simplex by its vertex labels, in any order.
    pub fn find_by_labels(&self, vertex_labels: &[&str]) -> Option<SimplexRef> {
        let mut tuple = Vec::with_capacity(vertex_labels.len());
        for l in vertex_labels {
            tuple.push(self.vertex_index(l)?);
        }
        tuple.sort_unstable();
        self.index.get(&tuple).copied()
    }

    /// Canonical printable name: vertex labels joined by dashes.
    pub fn simplex_label(&self, r: SimplexRef) -> String {
        self.tuple(r)
            .iter()
            .map(|&v| self.labels[v].as_str())
            .collect::<Vec<_>>()
            .join("-")
    }

    /// Codimension-one faces, in vertex-drop order.
    pub fn hyperfaces(&self, r: SimplexRef) -> Vec<SimplexRef> {
        if r.dim == 0 {
            return Vec::new();
        }
        let tuple = self.tuple(r);
        let mut out = Vec::with_capacity(tuple.len());
        for drop in 0..tuple.len() {
            let face: Vec<usize> = tuple
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != drop)
                .map(|(_, &v)| v)
                .collect();
            out.push(self.index[&face]);
        }
        out
    }

    pub fn barycenter(&self, r: SimplexRef) -> Vec<f64> {
        let tuple = self.tuple(r);
        let mut out = vec![0.0; self.coord_dim()];
        for &v in tuple {
            for (o, c) in out.iter_mut().zip(&self.coords[v]) {
                *o += c;
            }
        }
        for o in &mut out {
            *o /= tuple.len() as f64;
        }
        out
    }

    /// The mod-2 simplicial chain complex, cells labeled by joined vertex
    /// names.
    pub fn chain_complex(&self) -> BasedChainComplex {
        if self.simplices.is_empty() {
            return BasedChainComplex::empty();
        }
        let bases: Vec<Vec<String>> = self
            .simplices
            .iter()
            .enumerate()
            .map(|(dim, list)| {
                (0..list.len())
                    .map(|index| self.simplex_label(SimplexRef { dim, index }))
                    .collect()
            })
            .collect();
        let mut boundaries = Vec::new();
        for k in 1..self.simplices.len() {
            let mut ones = Vec::new();
            for col in 0..self.simplex_count(k) {
                for face in self.hyperfaces(SimplexRef { dim: k, index: col }) {
                    ones.push((face.index, col));
                }
            }
            boundaries.push(Gf2Matrix::from_entries(
                self.simplex_count(k - 1),
                self.simplex_count(k),
                &ones,
            ));
        }
        BasedChainComplex::new(bases, boundaries)
    }

    /// Connected component id per vertex, linked through 1-simplices.
    fn vertex_components(&self) -> Vec<usize> {
        let n = self.num_vertices();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for edge in self.simplices(1) {
            adj[edge[0]].push(edge[1]);
            adj[edge[1]].push(edge[0]);
        }
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// Mod-2 Betti numbers of the full simplicial chain complex.
pub fn simplicial_betti(k: &SimplicialComplex) -> Vec<usize> {
    k.chain_complex()
        .betti_numbers()
        .expect("simplicial boundaries square to zero")
}

/// Barycentric subdivision: one vertex per simplex, placed at its
/// barycenter; a j-simplex per strictly increasing chain of j+1 faces.
pub fn barycentric_subdivide(k: &SimplicialComplex) -> SimplicialComplex {
    let cells: Vec<SimplexRef> = k.refs().collect();
    let mut cell_pos: BTreeMap<SimplexRef, usize> = BTreeMap::new();
    let mut vertices = Vec::with_capacity(cells.len());
    for (p, &c) in cells.iter().enumerate() {
        cell_pos.insert(c, p);
        let label = if c.dim == 0 {
            k.vertex_label(k.tuple(c)[0]).to_string()
        } else {
            let joined = k
                .tuple(c)
                .iter()
                .map(|&v| k.vertex_label(v))
                .collect::<Vec<_>>()
                .join(".");
            format!("({joined})")
        };
        vertices.push((label, k.barycenter(c)));
    }
    // Proper-superset arcs in the face poset; chains are its directed paths.
    let mut supersets: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    for (p, &c) in cells.iter().enumerate() {
        let tuple = k.tuple(c);
        for mask in 1u32..(1 << tuple.len()) {
            if mask == (1 << tuple.len()) - 1 {
                continue;
            }
            let face: Vec<usize> = tuple
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            supersets[cell_pos[&k.index[&face]]].push(p);
        }
    }
    let mut chains: Vec<Vec<String>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..cells.len()).map(|p| vec![p]).collect();
    while let Some(chain) = stack.pop() {
        chains.push(chain.iter().map(|&p| vertices[p].0.clone()).collect());
        let top = *chain.last().unwrap();
        for &up in &supersets[top] {
            let mut longer = chain.clone();
            longer.push(up);
            stack.push(longer);
        }
    }
    SimplicialComplex::from_simplices(vertices, &chains)
        .expect("chains of a valid complex form a valid complex")
}

// ============================================================================
// Combinatorial vector fields
// ============================================================================

/// A pairing of simplices with chosen cofacets. Construction only enforces
/// that each source appears once; the Forman conditions are checked by
/// `validate_cvf` so that broken fields can be inspected.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CombinatorialVectorField {
    pairs: BTreeMap<SimplexRef, SimplexRef>,
    target_count: BTreeMap<SimplexRef, usize>,
}

impl CombinatorialVectorField {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (SimplexRef, SimplexRef)>,
    ) -> Result<Self, MorseError> {
        let mut out = Self::new();
        for (s, t) in pairs {
            out.add_pair(s, t)?;
        }
        Ok(out)
    }

    pub fn add_pair(&mut self, source: SimplexRef, target: SimplexRef) -> Result<(), MorseError> {
        if self.pairs.contains_key(&source) {
            return Err(MorseError::DuplicateSource(source));
        }
        self.pairs.insert(source, target);
        *self.target_count.entry(target).or_insert(0) += 1;
        Ok(())
    }

    pub fn value(&self, source: SimplexRef) -> Option<SimplexRef> {
        self.pairs.get(&source).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (SimplexRef, SimplexRef)> + '_ {
        self.pairs.iter().map(|(&s, &t)| (s, t))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_source(&self, r: SimplexRef) -> bool {
        self.pairs.contains_key(&r)
    }

    pub fn is_target(&self, r: SimplexRef) -> bool {
        self.target_count.contains_key(&r)
    }

    pub fn is_critical(&self, r: SimplexRef) -> bool {
        !self.is_source(r) && !self.is_target(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CvfViolation {
    UnknownSimplex { simplex: SimplexRef },
    NotACofacet { source: SimplexRef, target: SimplexRef },
    TargetIsSource { simplex: SimplexRef },
    PairedTwiceAsTarget { target: SimplexRef },
}

impl fmt::Display for CvfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CvfViolation::UnknownSimplex { simplex } => {
                write!(f, "pair references missing simplex {simplex}")
            }
            CvfViolation::NotACofacet { source, target } => {
                write!(f, "{target} is not a cofacet of {source}")
            }
            CvfViolation::TargetIsSource { simplex } => {
                write!(f, "paired simplex {simplex} is also a source")
            }
            CvfViolation::PairedTwiceAsTarget { target } => {
                write!(f, "{target} is the value of more than one pair")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CvfReport {
    pub violations: Vec<CvfViolation>,
}

impl CvfReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CvfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut sep = "";
        for v in &self.violations {
            write!(f, "{sep}{v}")?;
            sep = "; ";
        }
        Ok(())
    }
}

/// Checks the Forman conditions: targets are genuine cofacets, no simplex is
/// paired in both directions, and no simplex is the value of two pairs.
pub fn validate_cvf(k: &SimplicialComplex, v: &CombinatorialVectorField) -> CvfReport {
    let mut violations = Vec::new();
    for (source, target) in v.pairs() {
        if !k.contains(source) {
            violations.push(CvfViolation::UnknownSimplex { simplex: source });
            continue;
        }
        if !k.contains(target) {
            violations.push(CvfViolation::UnknownSimplex { simplex: target });
            continue;
        }
        let is_cofacet = target.dim == source.dim + 1
            && k.hyperfaces(target).contains(&source);
        if !is_cofacet {
            violations.push(CvfViolation::NotACofacet { source, target });
        }
        if v.is_source(target) {
            violations.push(CvfViolation::TargetIsSource { simplex: target });
        }
    }
    for (&target, &count) in &v.target_count {
        if count > 1 {
            violations.push(CvfViolation::PairedTwiceAsTarget { target });
        }
    }
    CvfReport { violations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradientCheck {
    Acyclic,
    /// Nodes of a closed non-stationary V-path, in traversal order.
    ClosedPath(Vec<SimplexRef>),
}

/// Successor lists of the V-path digraph in one dimension: a paired simplex
/// steps to every hyperface of its value except itself.
fn vpath_successors(
    k: &SimplicialComplex,
    v: &CombinatorialVectorField,
    dim: usize,
) -> Vec<Vec<usize>> {
    (0..k.simplex_count(dim))
        .map(|index| {
            let r = SimplexRef { dim, index };
            match v.value(r) {
                Some(t) => k
                    .hyperfaces(t)
                    .into_iter()
                    .filter(|f| f.index != index)
                    .map(|f| f.index)
                    .collect(),
                None => Vec::new(),
            }
        })
        .collect()
}

fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn dfs(
        u: usize,
        succ: &[Vec<usize>],
        color: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        color[u] = 1;
        stack.push(u);
        for &w in &succ[u] {
            match color[w] {
                1 => {
                    let at = stack.iter().position(|&x| x == w).unwrap();
                    return Some(stack[at..].to_vec());
                }
                0 => {
                    if let Some(cycle) = dfs(w, succ, color, stack) {
                        return Some(cycle);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        color[u] = 2;
        None
    }
    let mut color = vec![0u8; succ.len()];
    let mut stack = Vec::new();
    for u in 0..succ.len() {
        if color[u] == 0 {
            if let Some(cycle) = dfs(u, succ, &mut color, &mut stack) {
                return Some(cycle);
            }
        }
    }
    None
}

/// Whether the field admits no closed non-stationary V-path. A cycle in any
/// dimension is returned as a witness.
pub fn is_gradient_like(
    k: &SimplicialComplex,
    v: &CombinatorialVectorField,
) -> Result<GradientCheck, MorseError> {
    let report = validate_cvf(k, v);
    if !report.is_valid() {
        return Err(MorseError::InvalidField(report));
    }
    for dim in 0..k.simplices.len() {
        if let Some(cycle) = find_cycle(&vpath_successors(k, v, dim)) {
            let witness = cycle
                .into_iter()
                .map(|index| SimplexRef { dim, index })
                .collect();
            return Ok(GradientCheck::ClosedPath(witness));
        }
    }
    Ok(GradientCheck::Acyclic)
}

/// Critical cells per dimension: simplices paired in neither direction.
pub fn critical_cells(k: &SimplicialComplex, v: &CombinatorialVectorField) -> Vec<Vec<SimplexRef>> {
    (0..k.simplices.len())
        .map(|dim| {
            (0..k.simplex_count(dim))
                .map(|index| SimplexRef { dim, index })
                .filter(|&r| v.is_critical(r))
                .collect()
        })
        .collect()
}

/// Number of V-paths mod 2 from `start` to the critical cell `target`, over
/// the acyclic successor digraph of one dimension.
fn paths_mod2(start: usize, target: usize, succ: &[Vec<usize>], memo: &mut [Option<bool>]) -> bool {
    if let Some(m) = memo[start] {
        return m;
    }
    let value = if start == target {
        true
    } else {
        succ[start]
            .iter()
            .fold(false, |acc, &w| acc ^ paths_mod2(w, target, succ, memo))
    };
    memo[start] = Some(value);
    value
}

/// The combinatorial Morse complex of a gradient-like field: critical cells
/// as basis, boundary coefficients by mod-2 V-path counting.
pub fn morse_complex(
    k: &SimplicialComplex,
    v: &CombinatorialVectorField,
) -> Result<BasedChainComplex, MorseError> {
    Ok(morse_complex_with_cells(k, v)?.0)
}

/// Morse complex together with the critical cells backing each basis
/// element, aligned degree by degree with the bases.
pub fn morse_complex_with_cells(
    k: &SimplicialComplex,
    v: &CombinatorialVectorField,
) -> Result<(BasedChainComplex, Vec<Vec<SimplexRef>>), MorseError> {
    if let GradientCheck::ClosedPath(cycle) = is_gradient_like(k, v)? {
        return Err(MorseError::NotGradientLike(cycle));
    }
    let criticals = critical_cells(k, v);
    if criticals.is_empty() {
        return Ok((BasedChainComplex::empty(), criticals));
    }
    let bases: Vec<Vec<String>> = criticals
        .iter()
        .map(|cells| cells.iter().map(|&r| k.simplex_label(r)).collect())
        .collect();
    let mut boundaries = Vec::new();
    for d in 1..criticals.len() {
        let succ = vpath_successors(k, v, d - 1);
        let row_of: BTreeMap<usize, usize> = criticals[d - 1]
            .iter()
            .enumerate()
            .map(|(row, r)| (r.index, row))
            .collect();
        let mut ones = Vec::new();
        for (row, &sigma) in criticals[d - 1].iter().enumerate() {
            let mut memo = vec![None; succ.len()];
            for (col, &tau) in criticals[d].iter().enumerate() {
                let mut coeff = false;
                for face in k.hyperfaces(tau) {
                    coeff ^= paths_mod2(face.index, sigma.index, &succ, &mut memo);
                }
                if coeff {
                    ones.push((row, col));
                }
            }
            debug_assert_eq!(row_of[&sigma.index], row);
        }
        boundaries.push(Gf2Matrix::from_entries(
            criticals[d - 1].len(),
            criticals[d].len(),
            &ones,
        ));
    }
    let complex = BasedChainComplex::new(bases, boundaries);
    debug_assert!(complex.validate().is_valid());
    Ok((complex, criticals))
}

// ============================================================================
// Cell metrics
// ============================================================================

/// A symmetric distance on pairs of simplices. The table form may be
/// partial; the barycentric form is total.
#[derive(Clone, Debug)]
pub struct CellMetric {
    inner: MetricImpl,
}

#[derive(Clone, Debug)]
enum MetricImpl {
    Table(BTreeMap<(SimplexRef, SimplexRef), f64>),
    Barycentric {
        barycenters: Vec<Vec<Vec<f64>>>,
        component: Vec<Vec<usize>>,
        cross: f64,
    },
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl CellMetric {
    /// Explicit distances; the diagonal is implied zero and entries are
    /// symmetrized. Negative, non-finite, or conflicting entries are
    /// rejected.
    pub fn from_table(
        entries: impl IntoIterator<Item = ((SimplexRef, SimplexRef), f64)>,
    ) -> Result<Self, MorseError> {
        let mut table = BTreeMap::new();
        for ((a, b), value) in entries {
            if !value.is_finite() || value < 0.0 || (a == b && value != 0.0) {
                return Err(MorseError::BadMetricEntry { a, b, value });
            }
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if let Some(&first) = table.get(&key) {
                if first != value {
                    return Err(MorseError::ConflictingMetricEntry {
                        a: key.0,
                        b: key.1,
                        first,
                        second: value,
                    });
                }
            }
            table.insert(key, value);
        }
        Ok(CellMetric { inner: MetricImpl::Table(table) })
    }

    /// Distance between two simplices, or None when a table metric does not
    /// cover the pair.
    pub fn distance(&self, a: SimplexRef, b: SimplexRef) -> Option<f64> {
        if a == b {
            return Some(0.0);
        }
        match &self.inner {
            MetricImpl::Table(table) => table.get(&(a.min(b), a.max(b))).copied(),
            MetricImpl::Barycentric { barycenters, component, cross } => {
                let ca = *component.get(a.dim)?.get(a.index)?;
                let cb = *component.get(b.dim)?.get(b.index)?;
                if ca != cb {
                    return Some(*cross);
                }
                Some(euclidean(&barycenters[a.dim][a.index], &barycenters[b.dim][b.index]))
            }
        }
    }
}

/// The barycenter metric: Euclidean distance between barycenters within a
/// connected component; across components, always the single constant equal
/// to the largest intra-component distance.
pub fn barycenter_metric(k: &SimplicialComplex) -> CellMetric {
    let vertex_comp = k.vertex_components();
    let mut barycenters = Vec::new();
    let mut component = Vec::new();
    for dim in 0..k.simplices.len() {
        let mut b = Vec::with_capacity(k.simplex_count(dim));
        let mut c = Vec::with_capacity(k.simplex_count(dim));
        for index in 0..k.simplex_count(dim) {
            let r = SimplexRef { dim, index };
            b.push(k.barycenter(r));
            c.push(vertex_comp[k.tuple(r)[0]]);
        }
        barycenters.push(b);
        component.push(c);
    }
    let cells: Vec<SimplexRef> = k.refs().collect();
    let comp_of = |r: SimplexRef| component[r.dim][r.index];
    let distinct: BTreeSet<usize> = cells.iter().map(|&r| comp_of(r)).collect();
    let mut cross = 0.0f64;
    if distinct.len() > 1 {
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                if comp_of(a) == comp_of(b) {
                    let d = euclidean(
                        &barycenters[a.dim][a.index],
                        &barycenters[b.dim][b.index],
                    );
                    cross = cross.max(d);
                }
            }
        }
    }
    CellMetric { inner: MetricImpl::Barycentric { barycenters, component, cross } }
}

/// Weighted based chain complex on a Morse complex: the weight of every
/// adjacent critical pair is its metric distance; default tie order.
pub fn morse_weights(
    k: &SimplicialComplex,
    v: &CombinatorialVectorField,
    metric: &CellMetric,
) -> Result<WeightedComplex, MorseError> {
    let (complex, criticals) = morse_complex_with_cells(k, v)?;
    let mut weights = Vec::new();
    for d in 1..complex.num_degrees() {
        for (col, &tau) in criticals[d].iter().enumerate() {
            for (row, &sigma) in criticals[d - 1].iter().enumerate() {
                let dist = metric.distance(tau, sigma).ok_or_else(|| {
                    MorseError::MissingDistance {
                        a: k.simplex_label(tau),
                        b: k.simplex_label(sigma),
                    }
                })?;
                weights.push((
                    complex.basis(d)[col].clone(),
                    complex.basis(d - 1)[row].clone(),
                    dist,
                ));
            }
        }
    }
    Ok(WeightedComplex::from_weight_list(complex, &weights, &[])?)
}

// ============================================================================
// Greedy field generation
// ============================================================================

/// How `greedy_acyclic_matching` orders its candidate pairs: a seeded
/// shuffle, or ascending by a scalar on vertices (a simplex scores the
/// maximum of its vertices).
#[derive(Clone, Debug)]
pub enum FieldGuide {
    Seed(u64),
    VertexScalar(Vec<f64>),
}

/// Whether pairing `sigma` with `tau` would close a V-path cycle. The field
/// is acyclic beforehand and the new arcs all leave `sigma`, so it suffices
/// to test whether `sigma` is reachable from the new successors.
fn creates_cycle(
    k: &SimplicialComplex,
    field: &CombinatorialVectorField,
    sigma: SimplexRef,
    tau: SimplexRef,
) -> bool {
    let dim = sigma.dim;
    let mut visited = vec![false; k.simplex_count(dim)];
    let mut stack: Vec<usize> = k
        .hyperfaces(tau)
        .into_iter()
        .filter(|f| f.index != sigma.index)
        .map(|f| f.index)
        .collect();
    while let Some(x) = stack.pop() {
        if x == sigma.index {
            return true;
        }
        if visited[x] {
            continue;
        }
        visited[x] = true;
        if let Some(t) = field.value(SimplexRef { dim, index: x }) {
            stack.extend(
                k.hyperfaces(t)
                    .into_iter()
                    .filter(|f| f.index != x)
                    .map(|f| f.index),
            );
        }
    }
    false
}

/// Builds a gradient-like field greedily: walk the candidate (face, cofacet)
/// pairs in guide order, pairing whenever both cells are still critical and
/// no V-path cycle appears. Deterministic for a fixed guide.
pub fn greedy_acyclic_matching(
    k: &SimplicialComplex,
    guide: &FieldGuide,
) -> CombinatorialVectorField {
    let mut candidates: Vec<(SimplexRef, SimplexRef)> = Vec::new();
    for dim in 1..k.simplices.len() {
        for index in 0..k.simplex_count(dim) {
            let tau = SimplexRef { dim, index };
            for sigma in k.hyperfaces(tau) {
                candidates.push((sigma, tau));
            }
        }
    }
    match guide {
        FieldGuide::Seed(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            candidates.shuffle(&mut rng);
        }
        FieldGuide::VertexScalar(f) => {
            let score = |r: SimplexRef| {
                k.tuple(r)
                    .iter()
                    .map(|&v| f[v])
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            candidates.sort_by(|(s1, t1), (s2, t2)| {
                score(*t1)
                    .total_cmp(&score(*t2))
                    .then(score(*s1).total_cmp(&score(*s2)))
                    .then(t1.cmp(t2))
                    .then(s1.cmp(s2))
            });
        }
    }
    let mut field = CombinatorialVectorField::new();
    let mut used: BTreeSet<SimplexRef> = BTreeSet::new();
    for (sigma, tau) in candidates {
        if used.contains(&sigma) || used.contains(&tau) {
            continue;
        }
        if creates_cycle(k, &field, sigma, tau) {
            continue;
        }
        field.add_pair(sigma, tau).expect("sigma is unused");
        used.insert(sigma);
        used.insert(tau);
    }
    field
}
