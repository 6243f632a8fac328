//! Text formats for complexes, simplicial data, and barcodes.
//!
//! All three formats are UTF-8, newline-delimited, with `#` starting a
//! comment that runs to the end of the line (barcode files reserve their
//! first contentful line for a `#tagged` or `#persistence` header). Parsing
//! distinguishes two failure classes. Lexical and referential problems,
//! such as a malformed record, an unparsable number, a label used before
//! its declaration, or a duplicate declaration, are `Parse` errors.
//! Violations of the mathematical invariants of the parsed object, such as
//! an interval with its endpoints out of order or a pair record naming a
//! vertex set that is not a simplex, are `Invalid` errors. The command-line
//! tool maps the former to exit code 2 and the latter to exit code 1.
//!
//! Serialization is canonical: records are emitted in a fixed order and
//! floating-point values as their shortest round-tripping decimals, so
//! parse, serialize, parse is the identity and byte diffs of emitted files
//! are meaningful.

use crate::ext::ExtReal;
use crate::factored::{Interval, IntervalBarcode, TaggedBarcode, TaggedInterval};
use crate::morse::{CombinatorialVectorField, SimplicialComplex};
use crate::weighted::{FilteredComplex, PrecedenceRule, TieOrder, WeightedComplex};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    InvalidAt { line: usize, msg: String },
    #[error("{msg}")]
    Invalid { msg: String },
}

impl IoError {
    fn parse(line: usize, msg: impl ToString) -> Self {
        IoError::Parse { line, msg: msg.to_string() }
    }

    fn invalid_at(line: usize, msg: impl ToString) -> Self {
        IoError::InvalidAt { line, msg: msg.to_string() }
    }

    fn invalid(msg: impl ToString) -> Self {
        IoError::Invalid { msg: msg.to_string() }
    }

    /// True for lexical failures (exit code 2); false for invariant
    /// violations (exit code 1).
    pub fn is_parse(&self) -> bool {
        matches!(self, IoError::Parse { .. })
    }
}

// ============================================================================
// Shared lexing helpers
// ============================================================================

/// Content lines with 1-based numbers, comments and blanks removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            None
        } else {
            Some((i + 1, tokens))
        }
    })
}

fn parse_finite(token: &str, line: usize, what: &str) -> Result<f64, IoError> {
    let v: f64 = token
        .parse()
        .map_err(|_| IoError::parse(line, format!("{what} {token:?} is not a number")))?;
    if !v.is_finite() {
        return Err(IoError::parse(line, format!("{what} {token:?} is not a finite decimal")));
    }
    Ok(v)
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize, IoError> {
    token
        .parse()
        .map_err(|_| IoError::parse(line, format!("{what} {token:?} is not a nonnegative integer")))
}

/// An interval endpoint: `inf` or a nonnegative finite decimal.
fn parse_endpoint(token: &str, line: usize) -> Result<ExtReal, IoError> {
    if token == "inf" {
        return Ok(ExtReal::Inf);
    }
    let v = parse_finite(token, line, "endpoint")?;
    if v < 0.0 {
        return Err(IoError::invalid_at(line, format!("endpoint {token} is negative")));
    }
    Ok(ExtReal::finite(v))
}

fn decimal(v: f64) -> String {
    format!("{v}")
}

fn ext_token(v: ExtReal) -> String {
    match v.as_finite() {
        Some(x) => decimal(x),
        None => "inf".to_string(),
    }
}

// ============================================================================
// Complex files
// ============================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexFileMode {
    /// Neither weights nor filter values.
    Bare,
    Weighted,
    Filtered,
}

/// A based chain complex with optional weight records, filter records, and
/// tie-order precedence rules. Labels are globally unique across degrees so
/// that `bnd`, `w`, `f`, and `order` records resolve without naming the
/// degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFile {
    complex: crate::gf2::BasedChainComplex,
    weights: Vec<(String, String, f64)>,
    filter: Vec<(String, f64)>,
    order_rules: Vec<PrecedenceRule>,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        use crate::gf2::{BasedChainComplex, Gf2Matrix};
        let mut bases: Vec<Option<Vec<String>>> = Vec::new();
        let mut declared: HashMap<String, (usize, usize)> = HashMap::new();
        // Per degree: column index -> boundary support rows.
        let mut boundary_cols: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut weights: Vec<(String, String, f64)> = Vec::new();
        let mut seen_pairs: HashMap<(String, String), usize> = HashMap::new();
        let mut filter: Vec<(String, f64)> = Vec::new();
        let mut seen_filter: HashMap<String, usize> = HashMap::new();
        let mut order_rules = Vec::new();

        let lookup = |declared: &HashMap<String, (usize, usize)>,
                      tok: &str,
                      line: usize|
         -> Result<(usize, usize), IoError> {
            declared
                .get(tok)
                .copied()
                .ok_or_else(|| IoError::parse(line, format!("label {tok:?} is not declared")))
        };

        for (line, tokens) in content_lines(text) {
            match tokens[0] {
                "dim" => {
                    if tokens.len() < 2 {
                        return Err(IoError::parse(line, "dim needs a degree"));
                    }
                    let k = parse_usize(tokens[1], line, "degree")?;
                    if bases.len() <= k {
                        bases.resize(k + 1, None);
                    }
                    if bases[k].is_some() {
                        return Err(IoError::parse(line, format!("degree {k} is declared twice")));
                    }
                    let mut labels = Vec::with_capacity(tokens.len() - 2);
                    for tok in &tokens[2..] {
                        if tok.contains(':') {
                            return Err(IoError::parse(
                                line,
                                format!("label {tok:?} must not contain ':'"),
                            ));
                        }
                        if declared.insert(tok.to_string(), (k, labels.len())).is_some() {
                            return Err(IoError::parse(
                                line,
                                format!("label {tok:?} is declared twice"),
                            ));
                        }
                        labels.push(tok.to_string());
                    }
                    bases[k] = Some(labels);
                }
                "bnd" => {
                    if tokens.len() < 3 || tokens[2] != ":" {
                        return Err(IoError::parse(line, "bnd needs the form `bnd <a> : <b>...`"));
                    }
                    let (k, ai) = lookup(&declared, tokens[1], line)?;
                    if k == 0 {
                        return Err(IoError::parse(
                            line,
                            format!("{:?} is in degree 0 and has no boundary", tokens[1]),
                        ));
                    }
                    if boundary_cols.contains_key(&(k, ai)) {
                        return Err(IoError::parse(
                            line,
                            format!("boundary of {:?} is declared twice", tokens[1]),
                        ));
                    }
                    let mut rows = Vec::new();
                    for tok in &tokens[3..] {
                        let (kb, bi) = lookup(&declared, tok, line)?;
                        if kb != k - 1 {
                            return Err(IoError::parse(
                                line,
                                format!("{tok:?} is in degree {kb}, expected degree {}", k - 1),
                            ));
                        }
                        if rows.contains(&bi) {
                            return Err(IoError::parse(
                                line,
                                format!("{tok:?} is listed twice in one boundary"),
                            ));
                        }
                        rows.push(bi);
                    }
                    boundary_cols.insert((k, ai), rows);
                }
                "w" => {
                    if tokens.len() != 4 {
                        return Err(IoError::parse(line, "w needs the form `w <a> <b> <value>`"));
                    }
                    if !filter.is_empty() {
                        return Err(IoError::parse(line, "file mixes weight and filter records"));
                    }
                    lookup(&declared, tokens[1], line)?;
                    lookup(&declared, tokens[2], line)?;
                    let key = (tokens[1].to_string(), tokens[2].to_string());
                    if let Some(first) = seen_pairs.insert(key.clone(), line) {
                        return Err(IoError::parse(
                            line,
                            format!(
                                "weight of ({:?}, {:?}) is already given on line {first}",
                                tokens[1], tokens[2]
                            ),
                        ));
                    }
                    let v = parse_finite(tokens[3], line, "weight")?;
                    weights.push((key.0, key.1, v));
                }
                "f" => {
                    if tokens.len() != 3 {
                        return Err(IoError::parse(line, "f needs the form `f <label> <value>`"));
                    }
                    if !weights.is_empty() {
                        return Err(IoError::parse(line, "file mixes weight and filter records"));
                    }
                    lookup(&declared, tokens[1], line)?;
                    if let Some(first) = seen_filter.insert(tokens[1].to_string(), line) {
                        return Err(IoError::parse(
                            line,
                            format!(
                                "filter value of {:?} is already given on line {first}",
                                tokens[1]
                            ),
                        ));
                    }
                    let v = parse_finite(tokens[2], line, "filter value")?;
                    filter.push((tokens[1].to_string(), v));
                }
                "order" => {
                    if tokens.len() != 5 {
                        return Err(IoError::parse(
                            line,
                            "order needs the form `order <a> <b> <a'> <b'>`",
                        ));
                    }
                    for tok in &tokens[1..] {
                        lookup(&declared, tok, line)?;
                    }
                    order_rules.push((
                        (tokens[1].to_string(), tokens[2].to_string()),
                        (tokens[3].to_string(), tokens[4].to_string()),
                    ));
                }
                other => {
                    return Err(IoError::parse(line, format!("unknown record kind {other:?}")));
                }
            }
        }

        let bases: Vec<Vec<String>> = bases.into_iter().map(Option::unwrap_or_default).collect();
        let complex = if bases.is_empty() {
            BasedChainComplex::empty()
        } else {
            let mut boundaries = Vec::new();
            for k in 1..bases.len() {
                let mut ones = Vec::new();
                for ((kk, ai), rows) in &boundary_cols {
                    if *kk == k {
                        for &bi in rows {
                            ones.push((bi, *ai));
                        }
                    }
                }
                boundaries.push(Gf2Matrix::from_entries(
                    bases[k - 1].len(),
                    bases[k].len(),
                    &ones,
                ));
            }
            BasedChainComplex::new(bases, boundaries)
        };
        // Canonical record order: weights by (degree, column, row), filter
        // by (degree, index). Duplicates were rejected above.
        weights.sort_by_key(|(a, b, _)| (declared[a], declared[b]));
        filter.sort_by_key(|(l, _)| declared[l]);
        Ok(ComplexFile { complex, weights, filter, order_rules })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for k in 0..self.complex.num_degrees() {
            write!(out, "dim {k}").unwrap();
            for label in self.complex.basis(k) {
                write!(out, " {label}").unwrap();
            }
            out.push('\n');
        }
        for k in 1..self.complex.num_degrees() {
            let d = self.complex.boundary(k).expect("constructed with full boundaries");
            for ai in 0..self.complex.dim(k) {
                let rows: Vec<usize> = d.column(ai).ones().collect();
                if rows.is_empty() {
                    continue;
                }
                write!(out, "bnd {} :", self.complex.basis(k)[ai]).unwrap();
                for bi in rows {
                    write!(out, " {}", self.complex.basis(k - 1)[bi]).unwrap();
                }
                out.push('\n');
            }
        }
        for (a, b, v) in &self.weights {
            writeln!(out, "w {a} {b} {}", decimal(*v)).unwrap();
        }
        for (l, v) in &self.filter {
            writeln!(out, "f {l} {}", decimal(*v)).unwrap();
        }
        for ((a, b), (a2, b2)) in &self.order_rules {
            writeln!(out, "order {a} {b} {a2} {b2}").unwrap();
        }
        out
    }

    /// File form of a weighted complex. Tie-order state beyond the weight
    /// table is not reconstructed; emitted files carry the default order.
    pub fn from_weighted(w: &WeightedComplex) -> Self {
        let complex = w.complex().clone();
        let weights = w
            .weights_iter()
            .map(|(k, ai, bi, v)| {
                let (a, b) = w.pair_labels(k, ai, bi);
                (a, b, v)
            })
            .collect();
        ComplexFile { complex, weights, filter: Vec::new(), order_rules: Vec::new() }
    }

    /// File form of a filtered complex.
    pub fn from_filtered(f: &FilteredComplex) -> Self {
        let complex = f.complex().clone();
        let mut filter = Vec::new();
        for k in 0..complex.num_degrees() {
            for (i, label) in complex.basis(k).iter().enumerate() {
                filter.push((label.clone(), f.value(k, i)));
            }
        }
        ComplexFile { complex, weights: Vec::new(), filter, order_rules: Vec::new() }
    }

    pub fn complex(&self) -> &crate::gf2::BasedChainComplex {
        &self.complex
    }

    pub fn mode(&self) -> ComplexFileMode {
        if !self.weights.is_empty() {
            ComplexFileMode::Weighted
        } else if !self.filter.is_empty() {
            ComplexFileMode::Filtered
        } else {
            ComplexFileMode::Bare
        }
    }

    pub fn weight_records(&self) -> &[(String, String, f64)] {
        &self.weights
    }

    pub fn filter_records(&self) -> &[(String, f64)] {
        &self.filter
    }

    pub fn order_rules(&self) -> &[PrecedenceRule] {
        &self.order_rules
    }

    /// The weighted complex this file describes: directly in weight mode,
    /// through |f(a) - f(b)| in filter mode. Order records apply in both.
    pub fn to_weighted(&self) -> Result<WeightedComplex, IoError> {
        match self.mode() {
            ComplexFileMode::Weighted => WeightedComplex::from_weight_list(
                self.complex.clone(),
                &self.weights,
                &self.order_rules,
            )
            .map_err(IoError::invalid),
            ComplexFileMode::Filtered => {
                let w = self.to_filtered()?.to_weights();
                if self.order_rules.is_empty() {
                    return Ok(w);
                }
                let order = TieOrder::from_precedence(w.complex(), &self.order_rules)
                    .map_err(IoError::invalid)?;
                Ok(w.with_tie_order(order))
            }
            ComplexFileMode::Bare => {
                Err(IoError::invalid("the file has neither weight nor filter records"))
            }
        }
    }

    pub fn to_filtered(&self) -> Result<FilteredComplex, IoError> {
        if self.mode() != ComplexFileMode::Filtered {
            return Err(IoError::invalid("the file has no filter records"));
        }
        let map: HashMap<String, f64> = self.filter.iter().cloned().collect();
        FilteredComplex::from_label_values(self.complex.clone(), &map).map_err(IoError::invalid)
    }
}

// ============================================================================
// Simplicial files
// ============================================================================

/// An embedded simplicial complex with an optional combinatorial vector
/// field. `s` records list generating simplices; the face closure is taken
/// automatically. `pair` records give field pairs by vertex sets.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialFile {
    complex: SimplicialComplex,
    field: CombinatorialVectorField,
}

impl SimplicialFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let mut vertices: Vec<(String, Vec<f64>)> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut coord_dim: Option<usize> = None;
        let mut simplices: Vec<Vec<String>> = Vec::new();
        let mut pair_records: Vec<(usize, Vec<String>, Vec<String>)> = Vec::new();

        let check_ids = |ids: &HashMap<String, usize>,
                         tokens: &[&str],
                         line: usize|
         -> Result<Vec<String>, IoError> {
            let mut out = Vec::with_capacity(tokens.len());
            for tok in tokens {
                if !ids.contains_key(*tok) {
                    return Err(IoError::parse(line, format!("vertex {tok:?} is not declared")));
                }
                if out.contains(&tok.to_string()) {
                    return Err(IoError::parse(line, format!("vertex {tok:?} is repeated")));
                }
                out.push(tok.to_string());
            }
            Ok(out)
        };

        for (line, tokens) in content_lines(text) {
            match tokens[0] {
                "v" => {
                    if tokens.len() < 2 {
                        return Err(IoError::parse(line, "v needs the form `v <id> <coords...>`"));
                    }
                    let id = tokens[1];
                    if id == "->" {
                        return Err(IoError::parse(line, "vertex id `->` is reserved"));
                    }
                    if ids.contains_key(id) {
                        return Err(IoError::parse(
                            line,
                            format!("vertex {id:?} is declared twice"),
                        ));
                    }
                    let mut coords = Vec::with_capacity(tokens.len() - 2);
                    for tok in &tokens[2..] {
                        coords.push(parse_finite(tok, line, "coordinate")?);
                    }
                    match coord_dim {
                        None => coord_dim = Some(coords.len()),
                        Some(d) if d != coords.len() => {
                            return Err(IoError::parse(
                                line,
                                format!("vertex {id:?} has {} coordinates, expected {d}", coords.len()),
                            ));
                        }
                        _ => {}
                    }
                    ids.insert(id.to_string(), vertices.len());
                    vertices.push((id.to_string(), coords));
                }
                "s" => {
                    if tokens.len() < 2 {
                        return Err(IoError::parse(line, "s needs at least one vertex"));
                    }
                    if tokens.len() > 17 {
                        return Err(IoError::parse(line, "simplex has too many vertices"));
                    }
                    simplices.push(check_ids(&ids, &tokens[1..], line)?);
                }
                "pair" => {
                    let arrow = tokens.iter().position(|&t| t == "->").ok_or_else(|| {
                        IoError::parse(line, "pair needs the form `pair <face> -> <cofacet>`")
                    })?;
                    if arrow < 2 || arrow + 1 >= tokens.len() {
                        return Err(IoError::parse(
                            line,
                            "pair needs vertices on both sides of `->`",
                        ));
                    }
                    let sigma = check_ids(&ids, &tokens[1..arrow], line)?;
                    let tau = check_ids(&ids, &tokens[arrow + 1..], line)?;
                    pair_records.push((line, sigma, tau));
                }
                other => {
                    return Err(IoError::parse(line, format!("unknown record kind {other:?}")));
                }
            }
        }

        let complex = SimplicialComplex::from_simplices(vertices, &simplices)
            .expect("records were checked line by line");
        let mut field = CombinatorialVectorField::new();
        for (line, sigma, tau) in pair_records {
            let resolve = |labels: &[String]| {
                let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
                complex.find_by_labels(&refs).ok_or_else(|| {
                    IoError::invalid_at(
                        line,
                        format!("{} is not a simplex of the complex", labels.join("-")),
                    )
                })
            };
            let s = resolve(&sigma)?;
            let t = resolve(&tau)?;
            field.add_pair(s, t).map_err(|e| IoError::invalid_at(line, e))?;
        }
        Ok(SimplicialFile { complex, field })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for i in 0..self.complex.num_vertices() {
            write!(out, "v {}", self.complex.vertex_label(i)).unwrap();
            for c in self.complex.vertex_coords(i) {
                write!(out, " {}", decimal(*c)).unwrap();
            }
            out.push('\n');
        }
        // Only maximal simplices are written; closure restores the rest.
        let mut is_face = std::collections::BTreeSet::new();
        for r in self.complex.refs() {
            for face in self.complex.hyperfaces(r) {
                is_face.insert(face);
            }
        }
        for r in self.complex.refs() {
            if is_face.contains(&r) {
                continue;
            }
            write!(out, "s").unwrap();
            for &v in self.complex.tuple(r) {
                write!(out, " {}", self.complex.vertex_label(v)).unwrap();
            }
            out.push('\n');
        }
        for (s, t) in self.field.pairs() {
            write!(out, "pair").unwrap();
            for &v in self.complex.tuple(s) {
                write!(out, " {}", self.complex.vertex_label(v)).unwrap();
            }
            write!(out, " ->").unwrap();
            for &v in self.complex.tuple(t) {
                write!(out, " {}", self.complex.vertex_label(v)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_parts(complex: SimplicialComplex, field: CombinatorialVectorField) -> Self {
        SimplicialFile { complex, field }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn field(&self) -> &CombinatorialVectorField {
        &self.field
    }
}

// ============================================================================
// Barcode files
// ============================================================================

/// A barcode under one of the two headers. Tagged records are
/// `<degree> <s> <t>` with the left endpoint 0 implicit; persistence
/// records are `<degree> <s> <t>` with finite s. `inf` denotes +∞.
#[derive(Debug, Clone, PartialEq)]
pub enum BarcodeFile {
    Tagged(TaggedBarcode),
    Persistence(IntervalBarcode),
}

impl BarcodeFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let mut kind: Option<(usize, bool)> = None;
        let mut tagged = TaggedBarcode::new();
        let mut persistence = IntervalBarcode::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('#') {
                if kind.is_none() {
                    match rest.trim() {
                        "tagged" => kind = Some((line, true)),
                        "persistence" => kind = Some((line, false)),
                        _ => {}
                    }
                }
                continue;
            }
            let Some((_, is_tagged)) = kind else {
                return Err(IoError::parse(
                    line,
                    "expected a `#tagged` or `#persistence` header before records",
                ));
            };
            let body = trimmed.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if tokens.len() != 3 {
                return Err(IoError::parse(line, "record needs the form `<degree> <s> <t>`"));
            }
            let degree = parse_usize(tokens[0], line, "degree")?;
            if is_tagged {
                let s = parse_endpoint(tokens[1], line)?;
                let t = parse_endpoint(tokens[2], line)?;
                let iv = TaggedInterval::new(s, t).map_err(|e| IoError::invalid_at(line, e))?;
                if !iv.allowed_in_degree(degree) {
                    return Err(IoError::invalid_at(
                        line,
                        format!("{iv} is not a valid degree-{degree} interval"),
                    ));
                }
                tagged.insert(degree, iv);
            } else {
                if tokens[1] == "inf" {
                    return Err(IoError::invalid_at(line, "a bar cannot be born at inf"));
                }
                let s = parse_finite(tokens[1], line, "endpoint")?;
                let t = parse_endpoint(tokens[2], line)?;
                if s < 0.0 {
                    return Err(IoError::invalid_at(line, format!("endpoint {s} is negative")));
                }
                let bar = Interval::new(s, t).map_err(|e| IoError::invalid_at(line, e))?;
                persistence.insert(degree, bar);
            }
        }
        match kind {
            Some((_, true)) => Ok(BarcodeFile::Tagged(tagged)),
            Some((_, false)) => Ok(BarcodeFile::Persistence(persistence)),
            None => Err(IoError::parse(
                text.lines().count().max(1),
                "missing `#tagged` or `#persistence` header",
            )),
        }
    }

    /// Canonical form: header, then records by degree ascending, then left
    /// endpoint, then right endpoint, repeated per multiplicity.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match self {
            BarcodeFile::Tagged(b) => {
                out.push_str("#tagged\n");
                for (degree, iv, count) in b.iter() {
                    for _ in 0..count {
                        writeln!(out, "{degree} {} {}", ext_token(iv.s()), ext_token(iv.t()))
                            .unwrap();
                    }
                }
            }
            BarcodeFile::Persistence(b) => {
                out.push_str("#persistence\n");
                for (degree, bar, count) in b.iter() {
                    for _ in 0..count {
                        writeln!(out, "{degree} {} {}", decimal(bar.s()), ext_token(bar.t()))
                            .unwrap();
                    }
                }
            }
        }
        out
    }

    pub fn as_tagged(&self) -> Result<&TaggedBarcode, IoError> {
        match self {
            BarcodeFile::Tagged(b) => Ok(b),
            BarcodeFile::Persistence(_) => {
                Err(IoError::invalid("expected a tagged barcode file, found #persistence"))
            }
        }
    }

    pub fn as_persistence(&self) -> Result<&IntervalBarcode, IoError> {
        match self {
            BarcodeFile::Persistence(b) => Ok(b),
            BarcodeFile::Tagged(_) => {
                Err(IoError::invalid("expected a persistence barcode file, found #tagged"))
            }
        }
    }
}
