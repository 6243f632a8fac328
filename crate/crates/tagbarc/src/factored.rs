//! Tagged intervals and barcodes, presentations of factored chain complexes,
//! and the structure-theorem decomposition.
//!
//! A factored presentation encodes a right-constant family of chain complexes
//! over [0, ∞) whose internal maps are surjective chain maps: stage i holds on
//! [t_i, t_{i+1}), the last stage holds forever. The indecomposable such
//! families are the interval functors I^n[0,s,t): an n-disk (two generators
//! with identity boundary) on [0,s), an n-sphere on [s,t), zero afterwards.
//! `decompose` recovers the interval-functor multiset of a presentation from
//! the barcodes of its parametrized homology and boundary-image functors: a
//! homology bar [s,t) is a summand [0,s,t), a boundary bar [0,s) not
//! accounted for by homology born at s is a collapse summand [0,s,s), and a
//! boundary bar [0,∞) is a disk that never collapses, [0,∞,∞).

use crate::ext::ExtReal;
use crate::gf2::{BasedChainComplex, BitVec, Gf2Matrix, ValidationReport};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

// ============================================================================
// Intervals
// ============================================================================

#[derive(Debug, Error, PartialEq)]
pub enum IntervalError {
    #[error("tagged interval needs 0 <= s <= t, got s = {s}, t = {t}")]
    TagOutOfRange { s: ExtReal, t: ExtReal },
    #[error("tagged interval needs a non-empty carrier [0,t), so t > 0")]
    EmptyCarrier,
    #[error("interval [{s},{t}) is empty")]
    EmptyInterval { s: f64, t: ExtReal },
    #[error("negative left endpoint {0}")]
    NegativeEndpoint(f64),
}

/// A tagged interval [0,s,t): the half-open carrier [0,t) with a collapse tag
/// s ∈ [0,t]. Before s the summand is a disk, from s to t a sphere. The left
/// endpoint is fixed at 0 throughout this crate (epimorphic families only).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedInterval {
    s: ExtReal,
    t: ExtReal,
}

impl TaggedInterval {
    pub fn new(s: ExtReal, t: ExtReal) -> Result<Self, IntervalError> {
        if s > t {
            return Err(IntervalError::TagOutOfRange { s, t });
        }
        if t <= ExtReal::finite(0.0) {
            return Err(IntervalError::EmptyCarrier);
        }
        Ok(TaggedInterval { s, t })
    }

    /// [0,w,w): a disk collapsing at w and vanishing immediately; w > 0.
    pub fn collapsed(w: f64) -> Self {
        TaggedInterval::new(ExtReal::finite(w), ExtReal::finite(w))
            .expect("collapse time must be positive")
    }

    /// [0,0,∞): a sphere alive forever (an essential homology class).
    pub fn essential() -> Self {
        TaggedInterval { s: ExtReal::finite(0.0), t: ExtReal::Inf }
    }

    /// [0,∞,∞): a disk that never collapses.
    pub fn forever_disk() -> Self {
        TaggedInterval { s: ExtReal::Inf, t: ExtReal::Inf }
    }

    pub fn s(&self) -> ExtReal {
        self.s
    }

    pub fn t(&self) -> ExtReal {
        self.t
    }

    /// Degree-0 summands admit no disk phase, so 0 < s < t is forbidden there.
    pub fn allowed_in_degree(&self, degree: usize) -> bool {
        degree != 0 || !(self.s > ExtReal::finite(0.0) && self.s < self.t)
    }
}

impl fmt::Display for TaggedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0,{},{})", self.s, self.t)
    }
}

impl fmt::Debug for TaggedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A plain half-open interval [s,t) with 0 ≤ s < t ≤ ∞.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    s: f64,
    t: ExtReal,
}

impl Interval {
    pub fn new(s: f64, t: ExtReal) -> Result<Self, IntervalError> {
        if !s.is_finite() || s < 0.0 {
            return Err(IntervalError::NegativeEndpoint(s));
        }
        if ExtReal::finite(s) >= t {
            return Err(IntervalError::EmptyInterval { s, t });
        }
        Ok(Interval { s, t })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> ExtReal {
        self.t
    }

    pub fn is_infinite(&self) -> bool {
        self.t == ExtReal::Inf
    }
}

impl Eq for Interval {}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.s.total_cmp(&other.s).then_with(|| self.t.cmp(&other.t))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", ExtReal::finite(self.s), self.t)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ============================================================================
// Multisets and barcodes
// ============================================================================

/// A finite multiset with deterministic iteration order. Zero counts are
/// never stored, so equality is multiset equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multiset<T: Ord> {
    items: BTreeMap<T, usize>,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset { items: BTreeMap::new() }
    }
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, item: T) {
        self.insert_n(item, 1);
    }

    pub fn insert_n(&mut self, item: T, n: usize) {
        if n > 0 {
            *self.items.entry(item).or_insert(0) += n;
        }
    }

    pub fn count(&self, item: &T) -> usize {
        self.items.get(item).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, usize)> {
        self.items.iter().map(|(k, &v)| (k, v))
    }

    /// Total count including repetitions.
    pub fn len(&self) -> usize {
        self.items.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn extend_from(&mut self, other: &Multiset<T>)
    where
        T: Clone,
    {
        for (item, n) in other.iter() {
            self.insert_n(item.clone(), n);
        }
    }

    /// All elements with repetitions, in order.
    pub fn expand(&self) -> Vec<T>
    where
        T: Clone,
    {
        let mut out = Vec::with_capacity(self.len());
        for (item, n) in self.iter() {
            for _ in 0..n {
                out.push(item.clone());
            }
        }
        out
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut out = Multiset::new();
        for item in iter {
            out.insert(item);
        }
        out
    }
}

/// A per-degree family of interval multisets. Iteration is canonical: degree
/// ascending, then interval order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Barcode<T: Ord> {
    degrees: BTreeMap<usize, Multiset<T>>,
}

pub type TaggedBarcode = Barcode<TaggedInterval>;
pub type IntervalBarcode = Barcode<Interval>;

impl<T: Ord> Default for Barcode<T> {
    fn default() -> Self {
        Barcode { degrees: BTreeMap::new() }
    }
}

impl<T: Ord> Barcode<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, degree: usize, item: T) {
        self.insert_n(degree, item, 1);
    }

    pub fn insert_n(&mut self, degree: usize, item: T, n: usize) {
        if n > 0 {
            self.degrees.entry(degree).or_default().insert_n(item, n);
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.degrees.keys().copied()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.degrees.keys().next_back().copied()
    }

    pub fn slice(&self, degree: usize) -> Multiset<T>
    where
        T: Clone,
    {
        self.degrees.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T, usize)> {
        self.degrees
            .iter()
            .flat_map(|(&d, ms)| ms.iter().map(move |(item, n)| (d, item, n)))
    }

    pub fn len(&self) -> usize {
        self.degrees.values().map(Multiset::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn extend_from(&mut self, other: &Barcode<T>)
    where
        T: Clone,
    {
        for (d, item, n) in other.iter() {
            self.insert_n(d, item.clone(), n);
        }
    }
}

// ============================================================================
// Chain maps and presentations
// ============================================================================

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("critical times must start at 0, got {0}")]
    FirstTimeNonzero(f64),
    #[error("critical times must be strictly increasing finite nonnegative values")]
    BadTimes,
    #[error("stage/transition counts do not line up with the critical times")]
    CountMismatch,
    #[error("stage {index} fails validation: {report}")]
    InvalidStage { index: usize, report: ValidationReport },
    #[error("transition {index} has a wrongly shaped matrix in degree {degree}")]
    TransitionShape { index: usize, degree: usize },
    #[error("transition {index} does not commute with the boundaries in degree {degree}")]
    NotChainMap { index: usize, degree: usize },
    #[error("transition {index} is not surjective in degree {degree}")]
    NotEpimorphic { index: usize, degree: usize },
    #[error("degree-0 interval functor requires s = 0, got s = {s}")]
    DiskInDegreeZero { s: ExtReal },
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("negative multiplicity in degree {degree} at time {time}: presentation is not epimorphic or corrupted")]
    NegativeMultiplicity { degree: usize, time: ExtReal },
    #[error("boundary-image bar born after time 0 in degree {degree}: presentation is not epimorphic")]
    LateBoundaryBirth { degree: usize },
}

/// A chain map as one matrix per degree (rows: target basis, cols: source
/// basis). Degrees beyond the stored list are zero maps of the right shape.
#[derive(Clone, PartialEq)]
pub struct ChainMap {
    degrees: Vec<Gf2Matrix>,
}

impl ChainMap {
    pub fn new(degrees: Vec<Gf2Matrix>) -> Self {
        ChainMap { degrees }
    }

    pub fn identity(c: &BasedChainComplex) -> Self {
        ChainMap { degrees: (0..c.num_degrees()).map(|k| Gf2Matrix::identity(c.dim(k))).collect() }
    }

    pub fn matrix(&self, k: usize) -> Option<&Gf2Matrix> {
        self.degrees.get(k)
    }

    pub fn matrix_or_zero(&self, k: usize, rows: usize, cols: usize) -> Gf2Matrix {
        match self.degrees.get(k) {
            Some(m) => m.clone(),
            None => Gf2Matrix::zeros(rows, cols),
        }
    }

    pub fn num_degrees(&self) -> usize {
        self.degrees.len()
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap {{ degrees: {} }}", self.degrees.len())
    }
}

/// A factored presentation: strictly increasing critical times starting at 0,
/// one valid stage per time, and surjective chain maps between consecutive
/// stages. The family it presents equals stage i on [t_i, t_{i+1}) and the
/// last stage from t_r on.
#[derive(Clone, PartialEq, Debug)]
pub struct FactoredPresentation {
    times: Vec<f64>,
    stages: Vec<BasedChainComplex>,
    transitions: Vec<ChainMap>,
}

impl FactoredPresentation {
    pub fn new(
        times: Vec<f64>,
        stages: Vec<BasedChainComplex>,
        transitions: Vec<ChainMap>,
    ) -> Result<Self, PresentationError> {
        if times.is_empty() || stages.len() != times.len() || transitions.len() + 1 != stages.len()
        {
            return Err(PresentationError::CountMismatch);
        }
        if times[0] != 0.0 {
            return Err(PresentationError::FirstTimeNonzero(times[0]));
        }
        if times.iter().any(|t| !t.is_finite() || *t < 0.0)
            || times.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(PresentationError::BadTimes);
        }
        for (index, stage) in stages.iter().enumerate() {
            let report = stage.validate();
            if !report.is_valid() {
                return Err(PresentationError::InvalidStage { index, report });
            }
        }
        for (index, q) in transitions.iter().enumerate() {
            let src = &stages[index];
            let tgt = &stages[index + 1];
            let span = src.num_degrees().max(tgt.num_degrees()).max(q.num_degrees());
            for degree in 0..span {
                let expected = (tgt.dim(degree), src.dim(degree));
                if let Some(m) = q.matrix(degree) {
                    if (m.rows(), m.cols()) != expected {
                        return Err(PresentationError::TransitionShape { index, degree });
                    }
                }
            }
            for degree in 1..span {
                let qk = q.matrix_or_zero(degree, tgt.dim(degree), src.dim(degree));
                let qk1 = q.matrix_or_zero(degree - 1, tgt.dim(degree - 1), src.dim(degree - 1));
                let lhs = tgt.boundary_or_zero(degree).mul(&qk).expect("shapes checked");
                let rhs = qk1.mul(&src.boundary_or_zero(degree)).expect("shapes checked");
                if lhs != rhs {
                    return Err(PresentationError::NotChainMap { index, degree });
                }
            }
            for degree in 0..span {
                let qk = q.matrix_or_zero(degree, tgt.dim(degree), src.dim(degree));
                if qk.rank() != tgt.dim(degree) {
                    return Err(PresentationError::NotEpimorphic { index, degree });
                }
            }
        }
        Ok(FactoredPresentation { times, stages, transitions })
    }

    /// The zero presentation: one empty stage at time 0.
    pub fn zero() -> Self {
        FactoredPresentation {
            times: vec![0.0],
            stages: vec![BasedChainComplex::empty()],
            transitions: vec![],
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn stages(&self) -> &[BasedChainComplex] {
        &self.stages
    }

    pub fn transitions(&self) -> &[ChainMap] {
        &self.transitions
    }

    pub fn num_stages(&self) -> usize {
        self.stages.len()
    }

    pub fn max_num_degrees(&self) -> usize {
        self.stages.iter().map(BasedChainComplex::num_degrees).max().unwrap_or(0)
    }

    pub fn stage_index_at(&self, t: f64) -> usize {
        let mut idx = 0;
        for (i, &u) in self.times.iter().enumerate() {
            if u <= t {
                idx = i;
            } else {
                break;
            }
        }
        idx
    }

    /// The stage holding at time t (right-constant evaluation).
    pub fn stage_at(&self, t: f64) -> &BasedChainComplex {
        &self.stages[self.stage_index_at(t)]
    }

    /// Blockwise direct sum on the merged time grid. Summand labels are
    /// prefixed with their index to keep bases disjoint.
    pub fn direct_sum(parts: &[FactoredPresentation]) -> FactoredPresentation {
        if parts.is_empty() {
            return FactoredPresentation::zero();
        }
        let mut times: Vec<f64> = parts.iter().flat_map(|p| p.times.iter().copied()).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let stages: Vec<BasedChainComplex> = times
            .iter()
            .map(|&u| {
                let blocks: Vec<&BasedChainComplex> =
                    parts.iter().map(|p| p.stage_at(u)).collect();
                sum_complexes(&blocks)
            })
            .collect();
        let mut transitions = Vec::with_capacity(times.len().saturating_sub(1));
        for j in 1..times.len() {
            let span = stages[j - 1].num_degrees().max(stages[j].num_degrees());
            let mut degrees = Vec::with_capacity(span);
            for k in 0..span {
                let blocks: Vec<Gf2Matrix> = parts
                    .iter()
                    .map(|p| {
                        let src = p.stage_at(times[j - 1]);
                        match p.times.iter().position(|&u| u == times[j]) {
                            Some(i) => p.transitions[i - 1].matrix_or_zero(
                                k,
                                p.stages[i].dim(k),
                                src.dim(k),
                            ),
                            None => Gf2Matrix::identity(src.dim(k)),
                        }
                    })
                    .collect();
                let refs: Vec<&Gf2Matrix> = blocks.iter().collect();
                degrees.push(Gf2Matrix::block_diag(&refs));
            }
            transitions.push(ChainMap::new(degrees));
        }
        FactoredPresentation::new(times, stages, transitions)
            .expect("direct sum of valid presentations is valid")
    }

    /// Barcode of the parametrized homology in degree n.
    pub fn homology_barcode(&self, n: usize) -> Result<Multiset<Interval>, PresentationError> {
        let stages: Vec<HomologyStage> =
            self.stages.iter().map(|c| HomologyStage::compute(c, n)).collect();
        let dims: Vec<usize> = stages.iter().map(|s| s.h).collect();
        let mut maps = Vec::with_capacity(self.transitions.len());
        for (i, q) in self.transitions.iter().enumerate() {
            let (src, tgt) = (&self.stages[i], &self.stages[i + 1]);
            let qn = q.matrix_or_zero(n, tgt.dim(n), src.dim(n));
            let mut m = Gf2Matrix::zeros(stages[i + 1].h, stages[i].h);
            for (j, rep) in stages[i].reps.iter().enumerate() {
                let image = qn.mul_vec(rep);
                let coords = stages[i + 1].homology_coords(&image);
                for r in coords.ones() {
                    m.set(r, j, true);
                }
            }
            maps.push(m);
        }
        sequence_barcode(&dims, &maps, &self.times, n)
    }

    /// Barcode of the parametrized boundary image in degree n.
    pub fn boundary_barcode(&self, n: usize) -> Result<Multiset<Interval>, PresentationError> {
        if n == 0 {
            return Ok(Multiset::new());
        }
        let bases: Vec<Vec<BitVec>> =
            self.stages.iter().map(|c| image_basis(c, n - 1)).collect();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(self.transitions.len());
        for (i, q) in self.transitions.iter().enumerate() {
            let (src, tgt) = (&self.stages[i], &self.stages[i + 1]);
            let qn1 = q.matrix_or_zero(n - 1, tgt.dim(n - 1), src.dim(n - 1));
            let tgt_matrix =
                Gf2Matrix::from_columns(tgt.dim(n - 1), bases[i + 1].clone());
            let mut m = Gf2Matrix::zeros(dims[i + 1], dims[i]);
            for (j, v) in bases[i].iter().enumerate() {
                let image = qn1.mul_vec(v);
                let x = tgt_matrix
                    .solve(&image)
                    .expect("chain maps send boundary images into boundary images");
                for r in x.ones() {
                    m.set(r, j, true);
                }
            }
            maps.push(m);
        }
        sequence_barcode(&dims, &maps, &self.times, n)
    }

    /// The tagged barcode classifying this presentation up to isomorphism.
    pub fn decompose(&self) -> Result<TaggedBarcode, PresentationError> {
        let mut out = TaggedBarcode::new();
        for n in 0..self.max_num_degrees() {
            let homology = self.homology_barcode(n)?;
            let boundary = self.boundary_barcode(n)?;
            // collapse accounting per finite time: boundary bars [0,u) vs
            // homology bars born at u
            let mut at_time: BTreeMap<ExtReal, (usize, usize)> = BTreeMap::new();
            for (iv, m) in boundary.iter() {
                if iv.s() != 0.0 {
                    return Err(PresentationError::LateBoundaryBirth { degree: n });
                }
                match iv.t() {
                    ExtReal::Inf => out.insert_n(n, TaggedInterval::forever_disk(), m),
                    t @ ExtReal::Finite(_) => at_time.entry(t).or_insert((0, 0)).0 += m,
                }
            }
            for (iv, m) in homology.iter() {
                let tagged = TaggedInterval::new(ExtReal::finite(iv.s()), iv.t())?;
                out.insert_n(n, tagged, m);
                if iv.s() > 0.0 {
                    at_time.entry(ExtReal::finite(iv.s())).or_insert((0, 0)).1 += m;
                }
            }
            for (time, (boundary_count, homology_count)) in at_time {
                if boundary_count < homology_count {
                    return Err(PresentationError::NegativeMultiplicity { degree: n, time });
                }
                let w = time.as_finite().expect("only finite collapse times are tabulated");
                out.insert_n(n, TaggedInterval::collapsed(w), boundary_count - homology_count);
            }
        }
        Ok(out)
    }
}

// ============================================================================
// Interval functors
// ============================================================================

/// The n-disk stage: generators in degrees n and n-1 with identity boundary.
fn disk_stage(n: usize) -> BasedChainComplex {
    assert!(n >= 1, "disks need a degree below them");
    let mut bases = vec![vec![]; n + 1];
    bases[n] = vec!["top".to_string()];
    bases[n - 1] = vec!["bot".to_string()];
    let mut boundaries: Vec<Gf2Matrix> =
        (1..=n).map(|k| Gf2Matrix::zeros(bases[k - 1].len(), bases[k].len())).collect();
    boundaries[n - 1] = Gf2Matrix::identity(1);
    BasedChainComplex::new(bases, boundaries)
}

/// The n-sphere stage: a single generator in degree n, zero boundary.
fn sphere_stage(n: usize) -> BasedChainComplex {
    let mut bases = vec![vec![]; n + 1];
    bases[n] = vec!["top".to_string()];
    BasedChainComplex::zero_differential(bases)
}

/// The collapse map disk → sphere: identity on the top generator, zero below.
fn collapse_map(n: usize) -> ChainMap {
    let mut degrees: Vec<Gf2Matrix> = (0..=n).map(|_| Gf2Matrix::zeros(0, 0)).collect();
    degrees[n] = Gf2Matrix::identity(1);
    degrees[n - 1] = Gf2Matrix::zeros(0, 1);
    ChainMap::new(degrees)
}

/// The presentation of the interval functor I^n[0,s,t): a disk on [0,s), a
/// sphere on [s,t), zero afterwards. Degree 0 admits no disk phase (s = 0).
pub fn interval_functor_presentation(
    n: usize,
    iv: TaggedInterval,
) -> Result<FactoredPresentation, PresentationError> {
    if n == 0 && iv.s() > ExtReal::finite(0.0) {
        return Err(PresentationError::DiskInDegreeZero { s: iv.s() });
    }
    let (times, stages, transitions) = match (iv.s(), iv.t()) {
        (ExtReal::Inf, _) => (vec![0.0], vec![disk_stage(n)], vec![]),
        (ExtReal::Finite(s), ExtReal::Inf) => {
            if s == 0.0 {
                (vec![0.0], vec![sphere_stage(n)], vec![])
            } else {
                (vec![0.0, s], vec![disk_stage(n), sphere_stage(n)], vec![collapse_map(n)])
            }
        }
        (ExtReal::Finite(s), ExtReal::Finite(t)) => {
            if s == 0.0 {
                (
                    vec![0.0, t],
                    vec![sphere_stage(n), BasedChainComplex::empty()],
                    vec![ChainMap::new(vec![])],
                )
            } else if s == t {
                (
                    vec![0.0, s],
                    vec![disk_stage(n), BasedChainComplex::empty()],
                    vec![ChainMap::new(vec![])],
                )
            } else {
                (
                    vec![0.0, s, t],
                    vec![disk_stage(n), sphere_stage(n), BasedChainComplex::empty()],
                    vec![collapse_map(n), ChainMap::new(vec![])],
                )
            }
        }
    };
    FactoredPresentation::new(times, stages, transitions)
}

// ============================================================================
// Internal homology machinery
// ============================================================================

/// A basis of im ∂_{k+1} inside C_k, as explicit vectors.
fn image_basis(stage: &BasedChainComplex, k: usize) -> Vec<BitVec> {
    match stage.boundary(k + 1) {
        Some(d) => d.pivot_columns().iter().map(|&j| d.column(j).clone()).collect(),
        None => vec![],
    }
}

/// A basis of ker ∂_k inside C_k.
fn cycle_space(stage: &BasedChainComplex, k: usize) -> Vec<BitVec> {
    if k >= stage.num_degrees() {
        return vec![];
    }
    match stage.boundary(k) {
        Some(d) => d.null_space(),
        None => (0..stage.dim(k))
            .map(|i| BitVec::from_indices(stage.dim(k), &[i]))
            .collect(),
    }
}

/// Degree-k homology of one stage: representatives extending a boundary basis
/// to a cycle basis, plus the combined matrix used to express arbitrary
/// cycles in (boundary, representative) coordinates.
struct HomologyStage {
    express: Gf2Matrix,
    b: usize,
    h: usize,
    reps: Vec<BitVec>,
}

impl HomologyStage {
    fn compute(stage: &BasedChainComplex, k: usize) -> Self {
        let dim = stage.dim(k);
        let boundary_vectors = image_basis(stage, k);
        let mut pivots: Vec<Option<BitVec>> = vec![None; dim];
        for v in &boundary_vectors {
            let mut c = v.clone();
            while let Some(low) = c.lowest_set() {
                match &pivots[low] {
                    Some(p) => c.xor_assign(p),
                    None => {
                        pivots[low] = Some(c);
                        break;
                    }
                }
            }
        }
        let mut reps = Vec::new();
        'cycles: for z in cycle_space(stage, k) {
            let mut c = z.clone();
            while let Some(low) = c.lowest_set() {
                match &pivots[low] {
                    Some(p) => c.xor_assign(p),
                    None => {
                        pivots[low] = Some(c);
                        reps.push(z);
                        continue 'cycles;
                    }
                }
            }
        }
        let b = boundary_vectors.len();
        let h = reps.len();
        let mut columns = boundary_vectors;
        columns.extend(reps.iter().cloned());
        HomologyStage { express: Gf2Matrix::from_columns(dim, columns), b, h, reps }
    }

    /// Coordinates of a cycle's homology class over the representatives.
    fn homology_coords(&self, cycle: &BitVec) -> BitVec {
        let x = self
            .express
            .solve(cycle)
            .expect("cycles decompose over boundaries and representatives");
        let mut out = BitVec::zeros(self.h);
        for i in x.ones() {
            if i >= self.b {
                out.set(i - self.b, true);
            }
        }
        out
    }
}

/// Barcode of a tame sequence of vector spaces (dims and connecting maps) on
/// the given time grid, last stage extended to ∞. Multiplicity of the bar
/// spanning stages i..=j is the inclusion–exclusion of composite ranks.
fn sequence_barcode(
    dims: &[usize],
    maps: &[Gf2Matrix],
    times: &[f64],
    degree: usize,
) -> Result<Multiset<Interval>, PresentationError> {
    let r = dims.len() - 1;
    let mut rk = vec![vec![0i64; r + 1]; r + 1];
    for i in 0..=r {
        rk[i][i] = dims[i] as i64;
        let mut acc = Gf2Matrix::identity(dims[i]);
        for j in i + 1..=r {
            acc = maps[j - 1].mul(&acc).expect("sequence maps are composable");
            rk[i][j] = acc.rank() as i64;
        }
    }
    let mut out = Multiset::new();
    for i in 0..=r {
        for j in i..=r {
            let mut m = rk[i][j];
            if i > 0 {
                m -= rk[i - 1][j];
            }
            if j < r {
                m -= rk[i][j + 1];
            }
            if i > 0 && j < r {
                m += rk[i - 1][j + 1];
            }
            if m < 0 {
                return Err(PresentationError::NegativeMultiplicity {
                    degree,
                    time: ExtReal::finite(times[i]),
                });
            }
            if m > 0 {
                let t = if j < r { ExtReal::finite(times[j + 1]) } else { ExtReal::Inf };
                let iv = Interval::new(times[i], t).expect("grid times are increasing");
                out.insert_n(iv, m as usize);
            }
        }
    }
    Ok(out)
}

/// Blockwise direct sum of complexes; labels get an index prefix so the
/// result's bases stay duplicate-free.
fn sum_complexes(parts: &[&BasedChainComplex]) -> BasedChainComplex {
    let num_degrees = parts.iter().map(|c| c.num_degrees()).max().unwrap_or(0);
    let mut bases = Vec::with_capacity(num_degrees);
    for k in 0..num_degrees {
        let mut labels = Vec::new();
        for (i, c) in parts.iter().enumerate() {
            labels.extend(c.basis(k).iter().map(|l| format!("{i}.{l}")));
        }
        bases.push(labels);
    }
    let mut boundaries = Vec::with_capacity(num_degrees.saturating_sub(1));
    for k in 1..num_degrees {
        let blocks: Vec<Gf2Matrix> = parts.iter().map(|c| c.boundary_or_zero(k)).collect();
        let refs: Vec<&Gf2Matrix> = blocks.iter().collect();
        boundaries.push(Gf2Matrix::block_diag(&refs));
    }
    BasedChainComplex::new(bases, boundaries)
}
