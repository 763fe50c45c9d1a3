//! Relation sets, their truncated two-sided span, and the orthogonal
//! correspondence with graded subcoalgebras.
//!
//! A relation is a nonzero combination of parallel paths, each of length at
//! least two. The span of all products `u · r · v` (keeping only terms that
//! fit under the truncation bound) is closed under further truncated
//! multiplication, so orthogonal complements move exactly between relation
//! ideals and admissible subcoalgebras at every fixed bound.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coalgebra::GradedSubcoalgebra;
use crate::error::Error;
use crate::linalg::{PathVector, Subspace};
use crate::quiver::{enumerate_paths, Path, Quiver, VertexId};

/// Checks that every generator is a nonzero combination of parallel paths of
/// length at least two.
pub fn validate_relations(gens: &[PathVector]) -> Result<(), Error> {
    for g in gens {
        let endpoints = g.endpoints()?;
        if endpoints.is_none() {
            return Err(Error::EmptyPath);
        }
        if let Some(len) = g.iter().map(|(p, _)| p.len()).min() {
            if len < 2 {
                return Err(Error::RelationTooShort { len });
            }
        }
    }
    Ok(())
}

/// The graded span of a truncated two-sided ideal, one subspace per pair of
/// endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    quiver: Arc<Quiver>,
    max_len: usize,
    components: BTreeMap<(VertexId, VertexId), Subspace>,
}

impl GradedIdeal {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn components(&self) -> impl Iterator<Item = (&(VertexId, VertexId), &Subspace)> {
        self.components.iter()
    }

    pub fn component(&self, a: VertexId, b: VertexId) -> Option<&Subspace> {
        self.components.get(&(a, b))
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Subspace::dim).sum()
    }

    /// A canonical generating set: the basis rows of every component.
    pub fn rows(&self) -> Vec<PathVector> {
        self.components
            .values()
            .flat_map(|s| s.rows().iter().cloned())
            .collect()
    }
}

/// Composes `p` before every support path, dropping products longer than the
/// bound.
fn left_multiply(p: &Path, v: &PathVector, max_len: usize) -> PathVector {
    let mut out = PathVector::zero();
    for (q, c) in v.iter() {
        if p.len() + q.len() > max_len {
            continue;
        }
        if let Some(pq) = p.compose(q) {
            out.add_term(pq, c.clone());
        }
    }
    out
}

/// Composes `p` after every support path, dropping products longer than the
/// bound.
fn right_multiply(v: &PathVector, p: &Path, max_len: usize) -> PathVector {
    let mut out = PathVector::zero();
    for (q, c) in v.iter() {
        if p.len() + q.len() > max_len {
            continue;
        }
        if let Some(qp) = q.compose(p) {
            out.add_term(qp, c.clone());
        }
    }
    out
}

/// Span of all products `u · r · v` over the generators `r`, keeping the
/// terms of length at most `max_len`.
///
/// Dropping over-long terms commutes with further multiplication (lengths
/// only grow), so this span is closed under truncated multiplication by
/// arbitrary paths.
pub fn truncated_ideal_span(
    quiver: &Arc<Quiver>,
    gens: &[PathVector],
    max_len: usize,
) -> Result<GradedIdeal, Error> {
    validate_relations(gens)?;
    let mut components: BTreeMap<(VertexId, VertexId), Subspace> = BTreeMap::new();
    for r in gens {
        let (a, b) = r.endpoints()?.expect("validated nonzero");
        let min_len = r.iter().map(|(p, _)| p.len()).min().expect("nonzero");
        if min_len > max_len {
            continue;
        }
        let slack = max_len - min_len;
        for ua in quiver.vertices() {
            for u in enumerate_paths(quiver, ua, a, slack) {
                let budget = slack - u.len();
                for vb in quiver.vertices() {
                    for v in enumerate_paths(quiver, b, vb, budget) {
                        let mut w = PathVector::zero();
                        for (p, c) in r.iter() {
                            if u.len() + p.len() + v.len() > max_len {
                                continue;
                            }
                            let up = u.compose(p).expect("endpoints match");
                            let upv = up.compose(&v).expect("endpoints match");
                            w.add_term(upv, c.clone());
                        }
                        if w.is_zero() {
                            continue;
                        }
                        let comp = components.entry((ua, vb)).or_insert_with(|| {
                            Subspace::zero(enumerate_paths(quiver, ua, vb, max_len))
                        });
                        comp.insert(&w)?;
                    }
                }
            }
        }
    }
    components.retain(|_, s| s.dim() > 0);
    Ok(GradedIdeal {
        quiver: quiver.clone(),
        max_len,
        components,
    })
}

/// The subcoalgebra orthogonal to the ideal spanned by the given relations:
/// componentwise orthogonal complements inside the truncated path spans.
///
/// The result always contains every trivial path and every arrow, and is
/// closed under the compressed comultiplication, because pairing against an
/// ideal turns multiplication into comultiplication.
pub fn coalgebra_of_relations(
    quiver: &Arc<Quiver>,
    gens: &[PathVector],
    max_len: usize,
) -> Result<GradedSubcoalgebra, Error> {
    let ideal = truncated_ideal_span(quiver, gens, max_len)?;
    let mut components = BTreeMap::new();
    for a in quiver.vertices() {
        for b in quiver.vertices() {
            let ambient = enumerate_paths(quiver, a, b, max_len);
            if ambient.is_empty() {
                continue;
            }
            let comp = match ideal.component(a, b) {
                Some(i) => i.orthogonal(),
                None => Subspace::full(ambient),
            };
            components.insert((a, b), comp);
        }
    }
    let vertices = quiver.vertices().collect();
    Ok(GradedSubcoalgebra::from_components(
        quiver.clone(),
        vertices,
        max_len,
        components,
        true,
    ))
}

/// The orthogonal relation space of a subcoalgebra together with the checks
/// that it really behaves like a relation ideal at the truncation bound.
#[derive(Clone, Debug)]
pub struct RelationDiagnostics {
    pub ideal: GradedIdeal,
    /// Every basis row is supported on paths of length at least two.
    pub supports_are_long: bool,
    pub short_row: Option<PathVector>,
    /// Multiplying any basis row by an arrow on either side (dropping
    /// over-long terms) stays inside the space.
    pub closed_under_multiplication: bool,
    pub closure_violation: Option<PathVector>,
}

/// Componentwise orthogonal complement of a subcoalgebra, with diagnostics
/// certifying the ideal structure of the result.
pub fn relations_of_coalgebra(c: &GradedSubcoalgebra) -> Result<RelationDiagnostics, Error> {
    let quiver = c.quiver();
    let max_len = c.max_len();
    let mut components: BTreeMap<(VertexId, VertexId), Subspace> = BTreeMap::new();
    for a in quiver.vertices() {
        for b in quiver.vertices() {
            let ambient = enumerate_paths(quiver, a, b, max_len);
            if ambient.is_empty() {
                continue;
            }
            let orth = match c.component(a, b) {
                Some(s) => s.orthogonal(),
                None => Subspace::full(ambient),
            };
            if orth.dim() > 0 {
                components.insert((a, b), orth);
            }
        }
    }

    let mut supports_are_long = true;
    let mut short_row = None;
    'short: for s in components.values() {
        for row in s.rows() {
            if row.iter().any(|(p, _)| p.len() < 2) {
                supports_are_long = false;
                short_row = Some(row.clone());
                break 'short;
            }
        }
    }

    let mut closed_under_multiplication = true;
    let mut closure_violation = None;
    'closure: for ((a, b), s) in &components {
        for row in s.rows() {
            for arrow in quiver.arrows() {
                if quiver.target(arrow) == *a {
                    let prod = left_multiply(&quiver.arrow_path(arrow), row, max_len);
                    if !ideal_member(&components, (quiver.source(arrow), *b), &prod) {
                        closed_under_multiplication = false;
                        closure_violation = Some(prod);
                        break 'closure;
                    }
                }
                if quiver.source(arrow) == *b {
                    let prod = right_multiply(row, &quiver.arrow_path(arrow), max_len);
                    if !ideal_member(&components, (*a, quiver.target(arrow)), &prod) {
                        closed_under_multiplication = false;
                        closure_violation = Some(prod);
                        break 'closure;
                    }
                }
            }
        }
    }

    Ok(RelationDiagnostics {
        ideal: GradedIdeal {
            quiver: quiver.clone(),
            max_len,
            components,
        },
        supports_are_long,
        short_row,
        closed_under_multiplication,
        closure_violation,
    })
}

fn ideal_member(
    components: &BTreeMap<(VertexId, VertexId), Subspace>,
    key: (VertexId, VertexId),
    v: &PathVector,
) -> bool {
    if v.is_zero() {
        return true;
    }
    components.get(&key).is_some_and(|s| s.member(v))
}

/// Independent elements of one component whose support paths all lie outside
/// the subcoalgebra.
///
/// The basis rows are in reduced row echelon form over the canonical path
/// order, so the family is automatically triangular with respect to its
/// pivot paths. Everything is relative to the truncation bound: a large
/// family here is bounded evidence, never a claim about untruncated objects.
#[derive(Clone, Debug)]
pub struct CriterionWitness {
    pub pair: (VertexId, VertexId),
    pub rows: Vec<PathVector>,
    pub truncation: usize,
}

impl CriterionWitness {
    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// Collects the basis rows of the `(x, y)` component no support path of
/// which is itself a member of `c`.
pub fn criterion_witness(c: &GradedSubcoalgebra, x: VertexId, y: VertexId) -> CriterionWitness {
    let mut rows = Vec::new();
    if let Some(s) = c.component(x, y) {
        for row in s.rows() {
            let all_outside = row
                .iter()
                .all(|(p, _)| !c.member(&PathVector::unit(p.clone())));
            if all_outside {
                rows.push(row.clone());
            }
        }
    }
    CriterionWitness {
        pair: (x, y),
        rows,
        truncation: c.max_len(),
    }
}
