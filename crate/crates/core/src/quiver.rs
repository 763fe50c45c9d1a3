//! Quivers (finite directed multigraphs) and paths.
//!
//! Arrows are stored as (source, target) pairs and a path records its arrows
//! in traversal order: the first entry is the arrow leaving the path's source.
//! Pretty-printing composes right to left, so a path that walks `a` then `b`
//! is shown as `b*a`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Index of a vertex inside its quiver, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Index of an arrow inside its quiver, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

/// A finite quiver with named vertices and arrows.
///
/// Names are unique per kind and iteration order is declaration order, so
/// everything derived from a quiver is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrow_names: Vec<String>,
    endpoints: Vec<(VertexId, VertexId)>,
    out_arrows: Vec<Vec<ArrowId>>,
}

/// Incremental construction of a [`Quiver`] with name validation.
#[derive(Default)]
pub struct QuiverBuilder {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
}

impl QuiverBuilder {
    pub fn vertex(mut self, id: &str) -> Self {
        self.vertices.push(id.to_string());
        self
    }

    pub fn arrow(mut self, id: &str, source: &str, target: &str) -> Self {
        self.arrows
            .push((id.to_string(), source.to_string(), target.to_string()));
        self
    }

    pub fn build(self) -> Result<Quiver, Error> {
        let mut vertex_names = Vec::new();
        for v in &self.vertices {
            if vertex_names.contains(v) {
                return Err(Error::DuplicateId(v.clone()));
            }
            validate_identifier(v)?;
            vertex_names.push(v.clone());
        }
        let mut arrow_names: Vec<String> = Vec::new();
        let mut endpoints = Vec::new();
        let lookup = |names: &[String], id: &str| -> Option<VertexId> {
            names
                .iter()
                .position(|n| n == id)
                .map(|i| VertexId(i as u32))
        };
        for (id, src, tgt) in &self.arrows {
            if arrow_names.iter().any(|n| n == id) {
                return Err(Error::DuplicateId(id.clone()));
            }
            validate_identifier(id)?;
            if id.starts_with("e_") {
                // would collide with the printed form of trivial paths
                return Err(Error::DuplicateId(id.clone()));
            }
            let s = lookup(&vertex_names, src).ok_or_else(|| Error::UnknownVertex(src.clone()))?;
            let t = lookup(&vertex_names, tgt).ok_or_else(|| Error::UnknownVertex(tgt.clone()))?;
            arrow_names.push(id.clone());
            endpoints.push((s, t));
        }
        let mut out_arrows = vec![Vec::new(); vertex_names.len()];
        for (i, (s, _)) in endpoints.iter().enumerate() {
            out_arrows[s.0 as usize].push(ArrowId(i as u32));
        }
        Ok(Quiver {
            vertex_names,
            arrow_names,
            endpoints,
            out_arrows,
        })
    }
}

fn validate_identifier(id: &str) -> Result<(), Error> {
    let mut chars = id.chars();
    let head_ok = chars
        .next()
        .map(|c| c.is_ascii_alphabetic() || c == '_')
        .unwrap_or(false);
    if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(())
    } else {
        Err(Error::BadIdentifier(id.to_string()))
    }
}

impl Quiver {
    pub fn builder() -> QuiverBuilder {
        QuiverBuilder::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrow_count() as u32).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0 as usize]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrow_names[a.0 as usize]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .map(|i| VertexId(i as u32))
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrow_names
            .iter()
            .position(|n| n == name)
            .map(|i| ArrowId(i as u32))
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.endpoints[a.0 as usize].0
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.endpoints[a.0 as usize].1
    }

    pub fn arrows_from(&self, v: VertexId) -> &[ArrowId] {
        &self.out_arrows[v.0 as usize]
    }

    /// The length-one path walking a single arrow.
    pub fn arrow_path(&self, a: ArrowId) -> Path {
        Path {
            source: self.source(a),
            target: self.target(a),
            arrows: vec![a],
        }
    }

    /// Builds a path from arrows listed in traversal order, checking that
    /// consecutive arrows compose.
    pub fn path_from_arrows(&self, arrows: &[ArrowId]) -> Result<Path, Error> {
        let first = match arrows.first() {
            Some(a) => *a,
            None => return Err(Error::EmptyPath),
        };
        let mut at = self.target(first);
        for a in &arrows[1..] {
            if self.source(*a) != at {
                return Err(Error::NonComposable {
                    at: self.vertex_name(at).to_string(),
                    arrow: self.arrow_name(*a).to_string(),
                });
            }
            at = self.target(*a);
        }
        Ok(Path {
            source: self.source(first),
            target: at,
            arrows: arrows.to_vec(),
        })
    }

    /// The sequence of vertices a path visits, length `len + 1`.
    pub fn vertex_trace(&self, p: &Path) -> VertexTrace {
        let mut vs = Vec::with_capacity(p.len() + 1);
        vs.push(p.source());
        for a in p.arrows() {
            vs.push(self.target(*a));
        }
        VertexTrace(vs)
    }

    /// True when the quiver has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        // 0 = unseen, 1 = on the current stack, 2 = done
        let mut state = vec![0u8; self.vertex_count()];
        for v in self.vertices() {
            if state[v.0 as usize] == 0 && self.has_cycle_from(v, &mut state) {
                return false;
            }
        }
        true
    }

    fn has_cycle_from(&self, v: VertexId, state: &mut [u8]) -> bool {
        state[v.0 as usize] = 1;
        for a in self.arrows_from(v) {
            let t = self.target(*a);
            match state[t.0 as usize] {
                0 => {
                    if self.has_cycle_from(t, state) {
                        return true;
                    }
                }
                1 => return true,
                _ => {}
            }
        }
        state[v.0 as usize] = 2;
        false
    }
}

/// A path: either a trivial path at a vertex or a composable arrow sequence.
///
/// Ordering is the canonical total order used everywhere for pivots and
/// reports: shorter paths first, then the arrow index sequence
/// lexicographically, then the source vertex (which only separates trivial
/// paths).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// First `p` then `q`; defined when `target(p) = source(q)`.
    pub fn compose(&self, q: &Path) -> Option<Path> {
        if self.target != q.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path {
            source: self.source,
            target: q.target,
            arrows,
        })
    }

    /// The sub-path walking arrows `range.start..range.end`; a trivial path
    /// at the appropriate vertex when the range is empty.
    pub fn segment(&self, quiver: &Quiver, start: usize, end: usize) -> Path {
        assert!(start <= end && end <= self.len());
        if start == end {
            let v = if start == 0 {
                self.source
            } else {
                quiver.target(self.arrows[start - 1])
            };
            return Path::trivial(v);
        }
        let arrows: Vec<ArrowId> = self.arrows[start..end].to_vec();
        Path {
            source: quiver.source(arrows[0]),
            target: quiver.target(arrows[end - start - 1]),
            arrows,
        }
    }

    /// Rendering against a quiver: `e_v` for trivial paths, otherwise arrow
    /// names joined with `*` from last traversed to first.
    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertex_name(self.path.source()));
        }
        let names: Vec<&str> = self
            .path
            .arrows()
            .iter()
            .rev()
            .map(|a| self.quiver.arrow_name(*a))
            .collect();
        write!(f, "{}", names.join("*"))
    }
}

/// The vertices visited by a path, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexTrace(pub Vec<VertexId>);

impl VertexTrace {
    /// The set of visited vertices.
    pub fn visited(&self) -> BTreeSet<VertexId> {
        self.0.iter().copied().collect()
    }

    /// Vertices strictly between source and target.
    pub fn interior(&self) -> BTreeSet<VertexId> {
        if self.0.len() <= 2 {
            return BTreeSet::new();
        }
        self.0[1..self.0.len() - 1].iter().copied().collect()
    }
}

/// All paths from `a` to `b` of length at most `max_len`, canonically sorted.
///
/// Trivial paths are included when `a == b`. Raising `max_len` only appends
/// longer paths; the shorter part of the list is stable.
pub fn enumerate_paths(quiver: &Quiver, a: VertexId, b: VertexId, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    if a == b {
        out.push(Path::trivial(a));
    }
    let mut stack: Vec<ArrowId> = Vec::new();
    walk_paths(quiver, a, b, max_len, &mut stack, &mut out);
    out.sort();
    out
}

fn walk_paths(
    quiver: &Quiver,
    at: VertexId,
    b: VertexId,
    remaining: usize,
    stack: &mut Vec<ArrowId>,
    out: &mut Vec<Path>,
) {
    if remaining == 0 {
        return;
    }
    for a in quiver.arrows_from(at) {
        stack.push(*a);
        if quiver.target(*a) == b {
            out.push(
                quiver
                    .path_from_arrows(stack)
                    .expect("stack arrows compose"),
            );
        }
        walk_paths(quiver, quiver.target(*a), b, remaining - 1, stack, out);
        stack.pop();
    }
}

/// All paths of length at most `max_len` between any pair of vertices.
pub fn enumerate_all_paths(quiver: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for a in quiver.vertices() {
        for b in quiver.vertices() {
            out.extend(enumerate_paths(quiver, a, b, max_len));
        }
    }
    out.sort();
    out
}

/// Evidence that path counts between all vertex pairs are finite, checked up
/// to length `max_len`.
///
/// Exact for acyclic quivers; otherwise compares counts at `max_len - 1` and
/// `max_len` and reports stability, which is evidence, not a proof.
pub fn is_intervally_finite_upto(quiver: &Quiver, max_len: usize) -> bool {
    if quiver.is_acyclic() {
        return true;
    }
    if max_len == 0 {
        return true;
    }
    for a in quiver.vertices() {
        for b in quiver.vertices() {
            let lo = enumerate_paths(quiver, a, b, max_len - 1).len();
            let hi = enumerate_paths(quiver, a, b, max_len).len();
            if hi > lo {
                return false;
            }
        }
    }
    true
}

/// True when `p` runs between two vertices of `x` with no interior visit to
/// `x`. Trivial paths are rejected.
pub fn is_cell(
    quiver: &Quiver,
    x: &BTreeSet<VertexId>,
    p: &Path,
) -> Result<bool, Error> {
    if p.is_trivial() {
        return Err(Error::TrivialPath);
    }
    if !x.contains(&p.source()) || !x.contains(&p.target()) {
        return Ok(false);
    }
    let trace = quiver.vertex_trace(p);
    Ok(trace.interior().is_disjoint(x))
}

/// True when `p` leaves `x` at its source and never returns to `x`.
pub fn is_tail(
    quiver: &Quiver,
    x: &BTreeSet<VertexId>,
    p: &Path,
) -> Result<bool, Error> {
    if p.is_trivial() {
        return Err(Error::TrivialPath);
    }
    if !x.contains(&p.source()) {
        return Ok(false);
    }
    let trace = quiver.vertex_trace(p);
    Ok(trace.0[1..].iter().all(|v| !x.contains(v)))
}

/// All cells from `x` to `y` relative to the vertex set, up to `max_len`,
/// canonically sorted.
pub fn enumerate_cells(
    quiver: &Quiver,
    xs: &BTreeSet<VertexId>,
    x: VertexId,
    y: VertexId,
    max_len: usize,
) -> Vec<Path> {
    let mut out = Vec::new();
    if !xs.contains(&x) || !xs.contains(&y) {
        return out;
    }
    let mut stack = Vec::new();
    walk_cells(quiver, xs, x, y, max_len, &mut stack, &mut out);
    out.sort();
    out
}

fn walk_cells(
    quiver: &Quiver,
    xs: &BTreeSet<VertexId>,
    at: VertexId,
    y: VertexId,
    remaining: usize,
    stack: &mut Vec<ArrowId>,
    out: &mut Vec<Path>,
) {
    if remaining == 0 {
        return;
    }
    for a in quiver.arrows_from(at) {
        let t = quiver.target(*a);
        stack.push(*a);
        if t == y {
            out.push(
                quiver
                    .path_from_arrows(stack)
                    .expect("stack arrows compose"),
            );
        }
        if !xs.contains(&t) {
            walk_cells(quiver, xs, t, y, remaining - 1, stack, out);
        }
        stack.pop();
    }
}

/// All tails leaving `x` relative to the vertex set, up to `max_len`,
/// canonically sorted.
pub fn enumerate_tails(
    quiver: &Quiver,
    xs: &BTreeSet<VertexId>,
    x: VertexId,
    max_len: usize,
) -> Vec<Path> {
    let mut out = Vec::new();
    if !xs.contains(&x) {
        return out;
    }
    let mut stack = Vec::new();
    walk_tails(quiver, xs, x, max_len, &mut stack, &mut out);
    out.sort();
    out
}

fn walk_tails(
    quiver: &Quiver,
    xs: &BTreeSet<VertexId>,
    at: VertexId,
    remaining: usize,
    stack: &mut Vec<ArrowId>,
    out: &mut Vec<Path>,
) {
    if remaining == 0 {
        return;
    }
    for a in quiver.arrows_from(at) {
        let t = quiver.target(*a);
        if xs.contains(&t) {
            continue;
        }
        stack.push(*a);
        out.push(
            quiver
                .path_from_arrows(stack)
                .expect("stack arrows compose"),
        );
        walk_tails(quiver, xs, t, remaining - 1, stack, out);
        stack.pop();
    }
}

/// The factorization of a path with endpoints in the vertex set into cells,
/// listed in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition(pub Vec<Path>);

/// Cuts `p` at every interior visit to the vertex set. The pieces are the
/// unique cell factorization; concatenating them recovers `p`.
pub fn cellular_decomposition(
    quiver: &Quiver,
    xs: &BTreeSet<VertexId>,
    p: &Path,
) -> Result<CellDecomposition, Error> {
    if p.is_trivial() {
        return Err(Error::TrivialPath);
    }
    if !xs.contains(&p.source()) {
        return Err(Error::EndpointOutsideSubset {
            vertex: quiver.vertex_name(p.source()).to_string(),
        });
    }
    if !xs.contains(&p.target()) {
        return Err(Error::EndpointOutsideSubset {
            vertex: quiver.vertex_name(p.target()).to_string(),
        });
    }
    let trace = quiver.vertex_trace(p);
    let mut pieces = Vec::new();
    let mut start = 0usize;
    for i in 1..=p.len() {
        if xs.contains(&trace.0[i]) {
            pieces.push(p.segment(quiver, start, i));
            start = i;
        }
    }
    debug_assert_eq!(start, p.len());
    Ok(CellDecomposition(pieces))
}

/// The factorization of a path leaving the vertex set: cells in traversal
/// order followed by the final tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailDecomposition {
    pub cells: Vec<Path>,
    pub tail: Path,
}

/// Cuts `p` at every visit to the vertex set; the last piece is a tail and
/// everything before it is a cell.
pub fn tail_decomposition(
    quiver: &Quiver,
    xs: &BTreeSet<VertexId>,
    p: &Path,
) -> Result<TailDecomposition, Error> {
    if p.is_trivial() {
        return Err(Error::TrivialPath);
    }
    if !xs.contains(&p.source()) {
        return Err(Error::EndpointOutsideSubset {
            vertex: quiver.vertex_name(p.source()).to_string(),
        });
    }
    if xs.contains(&p.target()) {
        return Err(Error::TargetInsideSubset {
            vertex: quiver.vertex_name(p.target()).to_string(),
        });
    }
    let trace = quiver.vertex_trace(p);
    let mut cells = Vec::new();
    let mut start = 0usize;
    for i in 1..p.len() {
        if xs.contains(&trace.0[i]) {
            cells.push(p.segment(quiver, start, i));
            start = i;
        }
    }
    let tail = p.segment(quiver, start, p.len());
    Ok(TailDecomposition { cells, tail })
}

/// Convenience: vertex set from names.
pub fn vertex_set(quiver: &Quiver, names: &[&str]) -> Result<BTreeSet<VertexId>, Error> {
    names
        .iter()
        .map(|n| {
            quiver
                .vertex_by_name(n)
                .ok_or_else(|| Error::UnknownVertex(n.to_string()))
        })
        .collect()
}

pub type SharedQuiver = Arc<Quiver>;

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Quiver {
        Quiver::builder()
            .vertex("x1")
            .vertex("x2")
            .vertex("x3")
            .vertex("x4")
            .arrow("alpha1", "x1", "x2")
            .arrow("alpha2", "x2", "x4")
            .arrow("alpha3", "x1", "x3")
            .arrow("alpha4", "x3", "x4")
            .build()
            .unwrap()
    }

    #[test]
    fn builder_rejects_duplicates_and_unknown_endpoints() {
        let err = Quiver::builder()
            .vertex("a")
            .vertex("a")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::DuplicateId(_)));
        let err = Quiver::builder()
            .vertex("a")
            .arrow("f", "a", "b")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::UnknownVertex(_)));
    }

    #[test]
    fn compose_respects_endpoints() {
        let q = diamond();
        let a1 = q.arrow_path(q.arrow_by_name("alpha1").unwrap());
        let a2 = q.arrow_path(q.arrow_by_name("alpha2").unwrap());
        let p = a1.compose(&a2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(q.vertex_name(p.source()), "x1");
        assert_eq!(q.vertex_name(p.target()), "x4");
        assert_eq!(p.display(&q).to_string(), "alpha2*alpha1");
        assert!(a2.compose(&a1).is_none());
        let e = Path::trivial(p.source());
        assert_eq!(e.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&Path::trivial(p.target())).unwrap(), p);
    }

    #[test]
    fn canonical_order_is_length_then_lex_then_source() {
        let q = diamond();
        let x1 = q.vertex_by_name("x1").unwrap();
        let x4 = q.vertex_by_name("x4").unwrap();
        let walk = |names: &[&str]| {
            q.path_from_arrows(
                &names
                    .iter()
                    .map(|n| q.arrow_by_name(n).unwrap())
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        };
        let upper = walk(&["alpha1", "alpha2"]);
        let lower = walk(&["alpha3", "alpha4"]);
        assert!(Path::trivial(x1) < Path::trivial(x4));
        assert!(Path::trivial(x4) < upper);
        assert!(upper < lower);
        let paths = enumerate_paths(&q, x1, x4, 2);
        assert_eq!(paths, vec![upper, lower]);
    }

    #[test]
    fn enumeration_is_prefix_stable_in_the_bound() {
        let q = Quiver::builder()
            .vertex("v")
            .arrow("loop_a", "v", "v")
            .arrow("loop_b", "v", "v")
            .build()
            .unwrap();
        let v = q.vertex_by_name("v").unwrap();
        let small = enumerate_paths(&q, v, v, 2);
        let large = enumerate_paths(&q, v, v, 3);
        assert_eq!(&large[..small.len()], &small[..]);
        assert_eq!(small.len(), 1 + 2 + 4);
        assert_eq!(large.len(), 1 + 2 + 4 + 8);
    }

    #[test]
    fn acyclicity_and_interval_finiteness() {
        let q = diamond();
        assert!(q.is_acyclic());
        assert!(is_intervally_finite_upto(&q, 4));
        let looped = Quiver::builder()
            .vertex("v")
            .arrow("l", "v", "v")
            .build()
            .unwrap();
        assert!(!looped.is_acyclic());
        assert!(!is_intervally_finite_upto(&looped, 3));
    }

    #[test]
    fn cells_and_tails_in_the_diamond() {
        let q = diamond();
        let xs = vertex_set(&q, &["x1", "x3", "x4"]).unwrap();
        let x1 = q.vertex_by_name("x1").unwrap();
        let x3 = q.vertex_by_name("x3").unwrap();
        let x4 = q.vertex_by_name("x4").unwrap();

        let c13 = enumerate_cells(&q, &xs, x1, x3, 2);
        assert_eq!(c13.len(), 1);
        assert_eq!(c13[0].display(&q).to_string(), "alpha3");

        let c14 = enumerate_cells(&q, &xs, x1, x4, 2);
        assert_eq!(c14.len(), 1);
        assert_eq!(c14[0].display(&q).to_string(), "alpha2*alpha1");

        let c34 = enumerate_cells(&q, &xs, x3, x4, 2);
        assert_eq!(c34.len(), 1);
        assert_eq!(c34[0].display(&q).to_string(), "alpha4");

        // x2 is outside, so alpha1 leaves the set for good only if nothing
        // returns; here alpha2 re-enters at x4, hence no tail survives.
        let tails = enumerate_tails(&q, &xs, x1, 2);
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].display(&q).to_string(), "alpha1");
    }

    #[test]
    fn trivial_paths_are_rejected_by_cell_and_tail_predicates() {
        let q = diamond();
        let xs = vertex_set(&q, &["x1"]).unwrap();
        let e = Path::trivial(q.vertex_by_name("x1").unwrap());
        assert!(matches!(is_cell(&q, &xs, &e), Err(Error::TrivialPath)));
        assert!(matches!(is_tail(&q, &xs, &e), Err(Error::TrivialPath)));
    }

    #[test]
    fn cellular_decomposition_cuts_at_interior_visits() {
        let q = diamond();
        let xs = vertex_set(&q, &["x1", "x3", "x4"]).unwrap();
        let lower = q
            .path_from_arrows(&[
                q.arrow_by_name("alpha3").unwrap(),
                q.arrow_by_name("alpha4").unwrap(),
            ])
            .unwrap();
        let dec = cellular_decomposition(&q, &xs, &lower).unwrap();
        assert_eq!(dec.0.len(), 2);
        assert_eq!(dec.0[0].display(&q).to_string(), "alpha3");
        assert_eq!(dec.0[1].display(&q).to_string(), "alpha4");
        let upper = q
            .path_from_arrows(&[
                q.arrow_by_name("alpha1").unwrap(),
                q.arrow_by_name("alpha2").unwrap(),
            ])
            .unwrap();
        let dec = cellular_decomposition(&q, &xs, &upper).unwrap();
        assert_eq!(dec.0.len(), 1);
        assert_eq!(dec.0[0], upper);
    }

    #[test]
    fn tail_decomposition_splits_cells_then_tail() {
        let q = Quiver::builder()
            .vertex("x")
            .vertex("m")
            .vertex("out")
            .arrow("f", "x", "m")
            .arrow("g", "m", "out")
            .build()
            .unwrap();
        let xs = vertex_set(&q, &["x", "m"]).unwrap();
        let p = q
            .path_from_arrows(&[q.arrow_by_name("f").unwrap(), q.arrow_by_name("g").unwrap()])
            .unwrap();
        let dec = tail_decomposition(&q, &xs, &p).unwrap();
        assert_eq!(dec.cells.len(), 1);
        assert_eq!(dec.cells[0].display(&q).to_string(), "f");
        assert_eq!(dec.tail.display(&q).to_string(), "g");
        let back = dec
            .cells
            .iter()
            .cloned()
            .reduce(|acc, c| acc.compose(&c).unwrap())
            .unwrap()
            .compose(&dec.tail)
            .unwrap();
        assert_eq!(back, p);
    }
}
