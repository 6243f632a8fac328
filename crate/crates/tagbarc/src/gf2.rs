//! Exact linear algebra over GF(2) and the based chain complex data model.
//!
//! Matrices store bit-packed columns (one `u64` word per 64 rows), so column
//! XOR, the workhorse of every reduction here, is word-parallel. All
//! eliminations pivot on the lowest set row index of a column, which makes
//! ranks, solves, and kernel bases deterministic.

use std::fmt;
use thiserror::Error;

// ============================================================================
// Bit vectors
// ============================================================================

/// A fixed-length vector over GF(2), packed 64 entries per word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn lowest_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

// ============================================================================
// Matrices
// ============================================================================

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: left is {lrows}x{lcols}, right is {rrows}x{rcols}")]
    DimensionMismatch {
        lrows: usize,
        lcols: usize,
        rrows: usize,
        rcols: usize,
    },
}

/// A matrix over GF(2) with bit-packed columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    columns: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            columns: vec![BitVec::zeros(rows); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, ones: &[(usize, usize)]) -> Self {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for &(r, c) in ones {
            m.set(r, c, true);
        }
        m
    }

    /// Builds a matrix from row strings of '0'/'1', e.g. `["11", "10"]`.
    /// Convenience constructor, mainly for tests and small fixtures.
    pub fn from_row_strings(rows: &[&str]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Gf2Matrix::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged row strings");
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '1' => m.set(r, c, true),
                    '0' => {}
                    _ => panic!("row strings must be 0/1"),
                }
            }
        }
        m
    }

    pub fn from_columns(rows: usize, columns: Vec<BitVec>) -> Self {
        for c in &columns {
            assert_eq!(c.len(), rows, "column length mismatch");
        }
        Gf2Matrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Block-diagonal assembly; absent blocks contribute nothing.
    pub fn block_diag(blocks: &[&Gf2Matrix]) -> Gf2Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Gf2Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (r, c) in b.entries() {
                m.set(r0 + r, c0 + c, true);
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Horizontal concatenation; all blocks must share a row count.
    pub fn hstack(blocks: &[&Gf2Matrix]) -> Gf2Matrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut columns = Vec::new();
        for b in blocks {
            assert_eq!(b.rows, rows, "row count mismatch in hstack");
            columns.extend(b.columns.iter().cloned());
        }
        Gf2Matrix::from_columns(rows, columns)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.columns[c].get(r)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.columns[c].set(r, value);
    }

    pub fn column(&self, c: usize) -> &BitVec {
        &self.columns[c]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BitVec::is_zero)
    }

    /// Positions of all 1 entries, column-major ascending.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, col) in self.columns.iter().enumerate() {
            for r in col.ones() {
                out.push((r, c));
            }
        }
        out
    }

    /// GF(2) row operation: row `dst` += row `src`.
    pub fn add_row_to(&mut self, src: usize, dst: usize) {
        assert!(src < self.rows && dst < self.rows && src != dst);
        for c in 0..self.cols {
            if self.columns[c].get(src) {
                let v = self.columns[c].get(dst);
                self.columns[c].set(dst, !v);
            }
        }
    }

    pub fn delete_row(&self, row: usize) -> Gf2Matrix {
        assert!(row < self.rows);
        let mut columns = Vec::with_capacity(self.cols);
        for col in &self.columns {
            let mut v = BitVec::zeros(self.rows - 1);
            for r in col.ones() {
                if r != row {
                    v.set(if r < row { r } else { r - 1 }, true);
                }
            }
            columns.push(v);
        }
        Gf2Matrix::from_columns(self.rows - 1, columns)
    }

    pub fn delete_col(&self, col: usize) -> Gf2Matrix {
        assert!(col < self.cols);
        let mut columns = self.columns.clone();
        columns.remove(col);
        Gf2Matrix::from_columns(self.rows, columns)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (r, c) in self.entries() {
            t.set(c, r, true);
        }
        t
    }

    /// Rank via column elimination with lowest-row-index pivots.
    pub fn rank(&self) -> usize {
        let mut pivots: Vec<Option<BitVec>> = vec![None; self.rows];
        let mut rank = 0;
        for col in &self.columns {
            let mut c = col.clone();
            while let Some(low) = c.lowest_set() {
                match &pivots[low] {
                    Some(p) => c.xor_assign(p),
                    None => {
                        pivots[low] = Some(c);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Matrix product with XOR accumulation. `self * rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != rhs.rows {
            return Err(Gf2Error::DimensionMismatch {
                lrows: self.rows,
                lcols: self.cols,
                rrows: rhs.rows,
                rcols: rhs.cols,
            });
        }
        let mut columns = Vec::with_capacity(rhs.cols);
        for rcol in &rhs.columns {
            let mut acc = BitVec::zeros(self.rows);
            for k in rcol.ones() {
                acc.xor_assign(&self.columns[k]);
            }
            columns.push(acc);
        }
        Ok(Gf2Matrix::from_columns(self.rows, columns))
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut acc = BitVec::zeros(self.rows);
        for k in v.ones() {
            acc.xor_assign(&self.columns[k]);
        }
        acc
    }

    /// Indices of an independent subset of columns spanning the column space
    /// (the columns that introduce a new pivot, scanned left to right).
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut pivots: Vec<Option<BitVec>> = vec![None; self.rows];
        let mut out = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let mut c = col.clone();
            while let Some(low) = c.lowest_set() {
                match &pivots[low] {
                    Some(p) => c.xor_assign(p),
                    None => {
                        pivots[low] = Some(c);
                        out.push(j);
                        break;
                    }
                }
            }
        }
        out
    }

    /// A basis of the null space, as combination vectors over the columns.
    pub fn null_space(&self) -> Vec<BitVec> {
        // Track, for each reduced column, which original columns were XORed in.
        let mut pivots: Vec<Option<(BitVec, BitVec)>> = vec![None; self.rows];
        let mut kernel = Vec::new();
        'cols: for (j, col) in self.columns.iter().enumerate() {
            let mut c = col.clone();
            let mut combo = BitVec::zeros(self.cols);
            combo.set(j, true);
            while let Some(low) = c.lowest_set() {
                match &pivots[low] {
                    Some((p, pcombo)) => {
                        c.xor_assign(p);
                        combo.xor_assign(pcombo);
                    }
                    None => {
                        pivots[low] = Some((c, combo));
                        continue 'cols;
                    }
                }
            }
            kernel.push(combo);
        }
        kernel
    }

    /// Solves `self * x = y` if consistent, returning one solution.
    pub fn solve(&self, y: &BitVec) -> Option<BitVec> {
        assert_eq!(y.len(), self.rows, "rhs length mismatch");
        let mut pivots: Vec<Option<(BitVec, BitVec)>> = vec![None; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            let mut c = col.clone();
            let mut combo = BitVec::zeros(self.cols);
            combo.set(j, true);
            while let Some(low) = c.lowest_set() {
                match &pivots[low] {
                    Some((p, pcombo)) => {
                        c.xor_assign(p);
                        combo.xor_assign(pcombo);
                    }
                    None => {
                        pivots[low] = Some((c, combo));
                        break;
                    }
                }
            }
        }
        let mut r = y.clone();
        let mut x = BitVec::zeros(self.cols);
        while let Some(low) = r.lowest_set() {
            match &pivots[low] {
                Some((p, pcombo)) => {
                    r.xor_assign(p);
                    x.xor_assign(pcombo);
                }
                None => return None,
            }
        }
        Some(x)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}", if self.get(r, c) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// ============================================================================
// Based chain complexes
// ============================================================================

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("complex fails validation: {0}")]
    Invalid(ValidationReport),
    #[error("no basis element '{label}' in degree {degree}")]
    MissingLabel { degree: usize, label: String },
}

/// How a complex violates its invariants, with the degree it happens in and a
/// witness column where one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    DuplicateLabel { degree: usize, label: String },
    BoundaryShape { degree: usize, expected: (usize, usize), got: (usize, usize) },
    MissingBoundary { degree: usize },
    /// ∂_{degree} ∘ ∂_{degree+1} has a nonzero entry in the given column.
    CompositeNonzero { degree: usize, witness_column: usize, column_label: String },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::DuplicateLabel { degree, label } => {
                write!(f, "degree {degree}: duplicate basis label '{label}'")
            }
            ValidationFailure::BoundaryShape { degree, expected, got } => write!(
                f,
                "degree {degree}: boundary matrix is {}x{}, expected {}x{}",
                got.0, got.1, expected.0, expected.1
            ),
            ValidationFailure::MissingBoundary { degree } => {
                write!(f, "degree {degree}: boundary matrix missing")
            }
            ValidationFailure::CompositeNonzero { degree, witness_column, column_label } => write!(
                f,
                "degree {degree}: boundary composite is nonzero at column {witness_column} ('{column_label}')"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            write!(f, "valid")
        } else {
            for (i, fail) in self.failures.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{fail}")?;
            }
            Ok(())
        }
    }
}

/// A compact, non-negative chain complex over GF(2) with a chosen ordered
/// basis in every degree.
///
/// `bases[k]` lists the degree-k basis labels; label order is significant, it
/// seeds default tie-breaking downstream. `boundaries[k-1]` is the matrix of
/// the boundary operator from degree k to degree k-1, rows indexed by the
/// degree k-1 basis and columns by the degree k basis.
///
/// Construction does not validate; `validate` reports every violation so that
/// broken inputs can be diagnosed rather than merely rejected.
#[derive(Clone, PartialEq, Eq)]
pub struct BasedChainComplex {
    bases: Vec<Vec<String>>,
    boundaries: Vec<Gf2Matrix>,
}

impl BasedChainComplex {
    pub fn new(bases: Vec<Vec<String>>, boundaries: Vec<Gf2Matrix>) -> Self {
        BasedChainComplex { bases, boundaries }
    }

    /// The empty complex (no degrees at all).
    pub fn empty() -> Self {
        BasedChainComplex { bases: vec![], boundaries: vec![] }
    }

    /// A complex with the given bases and all differentials zero.
    pub fn zero_differential(bases: Vec<Vec<String>>) -> Self {
        let boundaries = (1..bases.len())
            .map(|k| Gf2Matrix::zeros(bases[k - 1].len(), bases[k].len()))
            .collect();
        BasedChainComplex { bases, boundaries }
    }

    pub fn num_degrees(&self) -> usize {
        self.bases.len()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases.get(k).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    pub fn basis(&self, k: usize) -> &[String] {
        self.bases.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn label_index(&self, k: usize, label: &str) -> Option<usize> {
        self.bases.get(k)?.iter().position(|l| l == label)
    }

    /// The boundary matrix of degree k (rows: degree k-1, cols: degree k), or
    /// None when k is 0 or above the top degree.
    pub fn boundary(&self, k: usize) -> Option<&Gf2Matrix> {
        if k == 0 {
            None
        } else {
            self.boundaries.get(k - 1)
        }
    }

    /// Boundary matrix of degree k, materializing zeros out of range.
    pub fn boundary_or_zero(&self, k: usize) -> Gf2Matrix {
        match self.boundary(k) {
            Some(m) => m.clone(),
            None => {
                let rows = if k >= 1 { self.dim(k - 1) } else { 0 };
                Gf2Matrix::zeros(rows, self.dim(k))
            }
        }
    }

    pub fn is_zero_differential(&self) -> bool {
        self.boundaries.iter().all(Gf2Matrix::is_zero)
    }

    /// Checks every invariant: distinct labels per degree, boundary matrix
    /// shapes, and vanishing composites, reporting each violated degree with
    /// a witness column.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        for (k, basis) in self.bases.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for label in basis {
                if !seen.insert(label) {
                    failures.push(ValidationFailure::DuplicateLabel {
                        degree: k,
                        label: label.clone(),
                    });
                }
            }
        }
        let expected_len = self.bases.len().saturating_sub(1);
        for k in 1..=expected_len {
            match self.boundaries.get(k - 1) {
                None => failures.push(ValidationFailure::MissingBoundary { degree: k }),
                Some(m) => {
                    let expected = (self.dim(k - 1), self.dim(k));
                    if (m.rows(), m.cols()) != expected {
                        failures.push(ValidationFailure::BoundaryShape {
                            degree: k,
                            expected,
                            got: (m.rows(), m.cols()),
                        });
                    }
                }
            }
        }
        if failures.is_empty() {
            for k in 1..expected_len {
                let composite = self.boundaries[k - 1].mul(&self.boundaries[k]).unwrap();
                if let Some((_, c)) = composite.entries().first() {
                    failures.push(ValidationFailure::CompositeNonzero {
                        degree: k,
                        witness_column: *c,
                        column_label: self.bases[k + 1][*c].clone(),
                    });
                }
            }
        }
        ValidationReport { failures }
    }

    /// Mod-2 Betti numbers: dim C_k minus the ranks of the boundary maps in
    /// and out of degree k.
    pub fn betti_numbers(&self) -> Result<Vec<usize>, ComplexError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(ComplexError::Invalid(report));
        }
        let mut out = Vec::with_capacity(self.num_degrees());
        for k in 0..self.num_degrees() {
            let rank_in = self.boundary(k + 1).map_or(0, Gf2Matrix::rank);
            let rank_out = self.boundary(k).map_or(0, Gf2Matrix::rank);
            out.push(self.dim(k) - rank_out - rank_in);
        }
        Ok(out)
    }
}

impl fmt::Debug for BasedChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasedChainComplex {{ dims: [")?;
        for k in 0..self.num_degrees() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.dim(k))?;
        }
        write!(f, "] }}")
    }
}

/// Labels a..z, aa.., for generated fixtures.
pub fn synth_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}
