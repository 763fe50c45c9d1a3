//! Localization of an admissible subcoalgebra at a vertex subset.
//!
//! For a vertex set `X`, the localized object keeps exactly the components
//! with both endpoints in `X`. Its own quiver has one arrow from `x` to `y`
//! per basis vector of `span(cells from x to y) ∩ C`; every element of the
//! localized object can be rewritten over that quiver by cutting support
//! paths into cells and reading off pivot coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::coalgebra::GradedSubcoalgebra;
use crate::error::Error;
use crate::linalg::{PathVector, Subspace};
use crate::quiver::{
    cellular_decomposition, enumerate_cells, enumerate_paths, enumerate_tails, ArrowId, Path,
    Quiver, VertexId,
};

/// Restriction of `c` to the components with both endpoints in `xs`.
///
/// The result is a graded object over the original quiver whose active vertex
/// set is `xs`; its compressed comultiplication only splits at `xs`-vertices.
/// Re-reading it over the full vertex set (see
/// [`GradedSubcoalgebra::with_vertices`]) tests whether the idempotent splits.
pub fn localize(
    c: &GradedSubcoalgebra,
    xs: &BTreeSet<VertexId>,
) -> Result<GradedSubcoalgebra, Error> {
    for x in xs {
        if !c.vertices().contains(x) {
            return Err(Error::EndpointOutsideSubset {
                vertex: c.quiver().vertex_name(*x).to_string(),
            });
        }
    }
    let components: BTreeMap<(VertexId, VertexId), Subspace> = c
        .components()
        .filter(|((a, b), _)| xs.contains(a) && xs.contains(b))
        .map(|(k, s)| (*k, s.clone()))
        .collect();
    Ok(GradedSubcoalgebra::from_components(
        c.quiver().clone(),
        xs.clone(),
        c.max_len(),
        components,
        c.admissible() && xs.len() == c.quiver().vertex_count(),
    ))
}

/// The quiver of a localization: vertices are the chosen subset, arrows from
/// `x` to `y` are a canonical basis of `span(cells x→y) ∩ C`.
///
/// Each arrow carries its defining label, a cell combination in the original
/// quiver. Counts are exact up to the coalgebra's truncation bound.
#[derive(Clone, Debug)]
pub struct LocalizedQuiver {
    original: Arc<Quiver>,
    xs: BTreeSet<VertexId>,
    quiver: Arc<Quiver>,
    labels: Vec<PathVector>,
    pivot_to_arrow: BTreeMap<Path, ArrowId>,
    truncation: usize,
}

impl LocalizedQuiver {
    pub fn original(&self) -> &Arc<Quiver> {
        &self.original
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.xs
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    /// The cell combination defining a localized arrow.
    pub fn label(&self, a: ArrowId) -> &PathVector {
        &self.labels[a.0 as usize]
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Original-quiver vertex corresponding to a localized vertex.
    pub fn original_vertex(&self, v: VertexId) -> VertexId {
        self.original
            .vertex_by_name(self.quiver.vertex_name(v))
            .expect("localized vertices are named after original ones")
    }

    /// Localized vertex corresponding to an original vertex of the subset.
    pub fn localized_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.quiver.vertex_by_name(self.original.vertex_name(v))
    }

    /// Arrow multiplicities between localized vertex pairs.
    pub fn parallel_counts(&self) -> BTreeMap<(VertexId, VertexId), usize> {
        let mut out = BTreeMap::new();
        for a in self.quiver.arrows() {
            *out.entry((self.quiver.source(a), self.quiver.target(a)))
                .or_insert(0) += 1;
        }
        out
    }

    /// Vertex pairs joined by at least three parallel arrows.
    pub fn triple_parallel_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.parallel_counts()
            .into_iter()
            .filter(|(_, n)| *n >= 3)
            .map(|(k, _)| k)
            .collect()
    }
}

/// Builds the localized quiver of `c` at `xs`. Cells are enumerated up to the
/// coalgebra's truncation bound.
pub fn localized_quiver(
    c: &GradedSubcoalgebra,
    xs: &BTreeSet<VertexId>,
) -> Result<LocalizedQuiver, Error> {
    let quiver = c.quiver();
    for x in xs {
        if !c.vertices().contains(x) {
            return Err(Error::EndpointOutsideSubset {
                vertex: quiver.vertex_name(*x).to_string(),
            });
        }
    }
    let bound = c.max_len();
    let mut builder = Quiver::builder();
    for v in quiver.vertices() {
        if xs.contains(&v) {
            builder = builder.vertex(quiver.vertex_name(v));
        }
    }
    let mut labels = Vec::new();
    let mut pivot_to_arrow = BTreeMap::new();
    for x in quiver.vertices().filter(|v| xs.contains(v)) {
        for y in quiver.vertices().filter(|v| xs.contains(v)) {
            let Some(comp) = c.component(x, y) else { continue };
            let cells = enumerate_cells(quiver, xs, x, y, bound);
            if cells.is_empty() {
                continue;
            }
            let ambient = enumerate_paths(quiver, x, y, bound);
            let cell_units: Vec<PathVector> =
                cells.iter().map(|p| PathVector::unit(p.clone())).collect();
            let cell_span = Subspace::new(ambient, &cell_units)?;
            let arrows = cell_span.intersect(comp)?;
            for (k, row) in arrows.rows().iter().enumerate() {
                let pivot = arrows.pivot_paths()[k].clone();
                let name = arrow_label_name(quiver, row, x, y, k);
                builder = builder.arrow(&name, quiver.vertex_name(x), quiver.vertex_name(y));
                labels.push(row.clone());
                pivot_to_arrow.insert(pivot, ArrowId(labels.len() as u32 - 1));
            }
        }
    }
    let localized = Arc::new(builder.build()?);
    Ok(LocalizedQuiver {
        original: quiver.clone(),
        xs: xs.clone(),
        quiver: localized,
        labels,
        pivot_to_arrow,
        truncation: bound,
    })
}

/// Localized arrows borrow the original arrow's name (with a `_bar` suffix)
/// when their label is that single arrow; everything else is numbered per
/// endpoint pair.
fn arrow_label_name(quiver: &Quiver, row: &PathVector, x: VertexId, y: VertexId, k: usize) -> String {
    if row.term_count() == 1 {
        let (p, c) = row.iter().next().expect("single term");
        if p.len() == 1 && c == &num::BigRational::from_integer(1.into()) {
            return format!("{}_bar", quiver.arrow_name(p.arrows()[0]));
        }
    }
    format!(
        "cell_{}_{}_{}",
        quiver.vertex_name(x),
        quiver.vertex_name(y),
        k + 1
    )
}

/// Rewrites an element of the localized object in the path basis of the
/// localized quiver.
///
/// Each support path is cut into cells; a cell contributes the localized
/// arrow whose basis row pivots on it, and a term containing any cell outside
/// the pivot set projects to zero. This is the canonical choice fixed by the
/// reduced-row-echelon bases of the arrow spaces.
pub fn re_express(lq: &LocalizedQuiver, v: &PathVector) -> Result<PathVector, Error> {
    let quiver = lq.original();
    let mut out = PathVector::zero();
    'terms: for (p, c) in v.iter() {
        if p.is_trivial() {
            let lv = lq.localized_vertex(p.source()).ok_or_else(|| {
                Error::EndpointOutsideSubset {
                    vertex: quiver.vertex_name(p.source()).to_string(),
                }
            })?;
            out.add_term(Path::trivial(lv), c.clone());
            continue;
        }
        let cells = cellular_decomposition(quiver, &lq.xs, p)?;
        let mut arrows = Vec::with_capacity(cells.0.len());
        for cell in &cells.0 {
            match lq.pivot_to_arrow.get(cell) {
                Some(a) => arrows.push(*a),
                None => continue 'terms,
            }
        }
        let path = lq
            .quiver
            .path_from_arrows(&arrows)
            .expect("cell chain composes");
        out.add_term(path, c.clone());
    }
    Ok(out)
}

/// The localized object rewritten as a graded subcoalgebra over its own
/// localized quiver.
pub fn localize_over_quotient(
    c: &GradedSubcoalgebra,
    xs: &BTreeSet<VertexId>,
) -> Result<(LocalizedQuiver, GradedSubcoalgebra), Error> {
    let lq = localized_quiver(c, xs)?;
    let local = localize(c, xs)?;
    let mut components: BTreeMap<(VertexId, VertexId), Subspace> = BTreeMap::new();
    for ((a, b), s) in local.components() {
        let la = lq.localized_vertex(*a).expect("component endpoint in subset");
        let lb = lq.localized_vertex(*b).expect("component endpoint in subset");
        let ambient = enumerate_paths(lq.quiver(), la, lb, c.max_len());
        let rows: Vec<PathVector> = s
            .rows()
            .iter()
            .map(|row| re_express(&lq, row))
            .collect::<Result<_, _>>()?;
        components.insert((la, lb), Subspace::new(ambient, &rows)?);
    }
    let vertices: BTreeSet<VertexId> = lq.quiver().vertices().collect();
    let provisional = GradedSubcoalgebra::from_components(
        lq.quiver().clone(),
        vertices.clone(),
        c.max_len(),
        components.clone(),
        false,
    );
    let admissible = crate::coalgebra::is_admissible(&provisional);
    let rewritten = if admissible {
        GradedSubcoalgebra::from_components(
            lq.quiver().clone(),
            vertices,
            c.max_len(),
            components,
            true,
        )
    } else {
        provisional
    };
    Ok((lq, rewritten))
}

/// Span of the tail combinations from `x` that lie in `c`, using tails of
/// length at most `bound`.
///
/// The ambient is the full path list up to the coalgebra's truncation, so
/// spans at increasing bounds are comparable.
pub fn tail_space(
    c: &GradedSubcoalgebra,
    xs: &BTreeSet<VertexId>,
    x: VertexId,
    bound: usize,
) -> Result<Subspace, Error> {
    if !xs.contains(&x) {
        return Err(Error::EndpointOutsideSubset {
            vertex: c.quiver().vertex_name(x).to_string(),
        });
    }
    let quiver = c.quiver();
    let bound = bound.min(c.max_len());
    let tails = enumerate_tails(quiver, xs, x, bound);
    let mut by_target: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
    for t in tails {
        by_target.entry(t.target()).or_default().push(t);
    }
    let mut global_ambient: Vec<Path> = Vec::new();
    let mut global_rows: Vec<PathVector> = Vec::new();
    for b in quiver.vertices() {
        if xs.contains(&b) {
            continue;
        }
        let ambient = enumerate_paths(quiver, x, b, c.max_len());
        if ambient.is_empty() {
            continue;
        }
        global_ambient.extend(ambient.iter().cloned());
        let Some(comp) = c.component(x, b) else { continue };
        let units: Vec<PathVector> = by_target
            .get(&b)
            .map(|ts| ts.iter().map(|t| PathVector::unit(t.clone())).collect())
            .unwrap_or_default();
        if units.is_empty() {
            continue;
        }
        let tail_span = Subspace::new(ambient, &units)?;
        let meet = tail_span.intersect(comp)?;
        global_rows.extend(meet.rows().iter().cloned());
    }
    global_ambient.sort();
    Subspace::new(global_ambient, &global_rows)
}

/// Everything the classification of a vertex-subset idempotent reports.
///
/// `colocalizing` certifies finite tail spaces: exactly for acyclic quivers,
/// otherwise only when the per-vertex dimensions stopped growing at the last
/// two bounds. `tail_dims` lists, per subset vertex, the tail-space dimension
/// at each bound from 1 to the truncation.
#[derive(Clone, Debug)]
pub struct IdempotentClassification {
    pub left_semicentral: bool,
    pub right_semicentral: bool,
    pub split: bool,
    pub colocalizing: bool,
    pub acyclic_exact: bool,
    pub entering_arrow: Option<ArrowId>,
    pub leaving_arrow: Option<ArrowId>,
    pub split_violation: Option<Path>,
    pub tail_dims: BTreeMap<VertexId, Vec<usize>>,
    pub growing: Vec<VertexId>,
    pub truncation: usize,
}

/// Classifies the idempotent of a vertex subset: arrow-boundary tests for
/// semicentrality, a support test for splitness, and truncation-bounded tail
/// dimensions for the colocalizing property.
pub fn classify_idempotent(
    c: &GradedSubcoalgebra,
    xs: &BTreeSet<VertexId>,
) -> Result<IdempotentClassification, Error> {
    let quiver = c.quiver();
    for x in xs {
        if !c.vertices().contains(x) {
            return Err(Error::EndpointOutsideSubset {
                vertex: quiver.vertex_name(*x).to_string(),
            });
        }
    }

    let entering_arrow = quiver
        .arrows()
        .find(|a| !xs.contains(&quiver.source(*a)) && xs.contains(&quiver.target(*a)));
    let leaving_arrow = quiver
        .arrows()
        .find(|a| xs.contains(&quiver.source(*a)) && !xs.contains(&quiver.target(*a)));

    let local = localize(c, xs)?;
    let split_violation = local
        .psupp_set()
        .into_iter()
        .find(|p| {
            quiver
                .vertex_trace(p)
                .visited()
                .iter()
                .any(|v| !xs.contains(v))
        });

    let truncation = c.max_len();
    let mut tail_dims = BTreeMap::new();
    let mut growing = Vec::new();
    for x in xs {
        let dims: Vec<usize> = (1..=truncation)
            .map(|l| tail_space(c, xs, *x, l).map(|s| s.dim()))
            .collect::<Result<_, _>>()?;
        if truncation >= 2 && dims[truncation - 1] > dims[truncation - 2] {
            growing.push(*x);
        }
        tail_dims.insert(*x, dims);
    }
    let acyclic_exact = quiver.is_acyclic();

    Ok(IdempotentClassification {
        left_semicentral: entering_arrow.is_none(),
        right_semicentral: leaving_arrow.is_none(),
        split: split_violation.is_none(),
        colocalizing: acyclic_exact || growing.is_empty(),
        acyclic_exact,
        entering_arrow,
        leaving_arrow,
        split_violation,
        tail_dims,
        growing,
        truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{is_admissible, is_subcoalgebra, subcoalgebra_closure};
    use crate::quiver::vertex_set;

    fn diamond() -> Arc<Quiver> {
        Arc::new(
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
                .unwrap(),
        )
    }

    fn path(q: &Quiver, names: &[&str]) -> Path {
        q.path_from_arrows(
            &names
                .iter()
                .map(|n| q.arrow_by_name(n).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn diamond_coalgebra(q: &Arc<Quiver>) -> GradedSubcoalgebra {
        let gen = PathVector::unit(path(q, &["alpha1", "alpha2"]))
            .add(&PathVector::unit(path(q, &["alpha3", "alpha4"])));
        subcoalgebra_closure(q, &[gen], 2, true).unwrap()
    }

    #[test]
    fn diamond_localization_drops_the_upper_route() {
        let q = diamond();
        let c = diamond_coalgebra(&q);
        let xs = vertex_set(&q, &["x1", "x3", "x4"]).unwrap();

        let lq = localized_quiver(&c, &xs).unwrap();
        assert_eq!(lq.quiver().vertex_count(), 3);
        assert_eq!(lq.quiver().arrow_count(), 2);
        let names: Vec<&str> = lq.quiver().arrows().map(|a| lq.quiver().arrow_name(a)).collect();
        assert_eq!(names, vec!["alpha3_bar", "alpha4_bar"]);

        let gen = PathVector::unit(path(&q, &["alpha1", "alpha2"]))
            .add(&PathVector::unit(path(&q, &["alpha3", "alpha4"])));
        let image = re_express(&lq, &gen).unwrap();
        let expected = PathVector::unit(
            lq.quiver()
                .path_from_arrows(&[
                    lq.quiver().arrow_by_name("alpha3_bar").unwrap(),
                    lq.quiver().arrow_by_name("alpha4_bar").unwrap(),
                ])
                .unwrap(),
        );
        assert_eq!(image, expected);
    }

    #[test]
    fn diamond_full_coalgebra_keeps_a_direct_arrow() {
        let q = diamond();
        let kq = GradedSubcoalgebra::full_path_coalgebra(q.clone(), 2);
        let xs = vertex_set(&q, &["x1", "x3", "x4"]).unwrap();

        let lq = localized_quiver(&kq, &xs).unwrap();
        assert_eq!(lq.quiver().arrow_count(), 3);
        let names: Vec<&str> = lq.quiver().arrows().map(|a| lq.quiver().arrow_name(a)).collect();
        assert_eq!(names, vec!["alpha3_bar", "cell_x1_x4_1", "alpha4_bar"]);
        assert_eq!(
            lq.label(lq.quiver().arrow_by_name("cell_x1_x4_1").unwrap()),
            &PathVector::unit(path(&q, &["alpha1", "alpha2"]))
        );

        let gen = PathVector::unit(path(&q, &["alpha1", "alpha2"]))
            .add(&PathVector::unit(path(&q, &["alpha3", "alpha4"])));
        let image = re_express(&lq, &gen).unwrap();
        let direct = PathVector::unit(
            lq.quiver()
                .arrow_path(lq.quiver().arrow_by_name("cell_x1_x4_1").unwrap()),
        );
        let two_step = PathVector::unit(
            lq.quiver()
                .path_from_arrows(&[
                    lq.quiver().arrow_by_name("alpha3_bar").unwrap(),
                    lq.quiver().arrow_by_name("alpha4_bar").unwrap(),
                ])
                .unwrap(),
        );
        assert_eq!(image, direct.add(&two_step));
    }

    #[test]
    fn rewritten_localization_is_a_subcoalgebra_over_its_quiver() {
        let q = diamond();
        let c = diamond_coalgebra(&q);
        let xs = vertex_set(&q, &["x1", "x3", "x4"]).unwrap();
        let (_, rewritten) = localize_over_quotient(&c, &xs).unwrap();
        assert!(is_subcoalgebra(&rewritten));
        assert!(is_admissible(&rewritten));
        assert_eq!(rewritten.total_dim(), 6);
    }

    #[test]
    fn diamond_idempotent_is_not_split() {
        let q = diamond();
        let c = diamond_coalgebra(&q);
        let xs = vertex_set(&q, &["x1", "x3", "x4"]).unwrap();
        let cls = classify_idempotent(&c, &xs).unwrap();
        assert!(!cls.left_semicentral);
        assert!(!cls.right_semicentral);
        assert!(!cls.split);
        let witness = cls.split_violation.unwrap();
        assert_eq!(witness, path(&q, &["alpha1", "alpha2"]));
        assert!(cls.colocalizing);
        assert!(cls.acyclic_exact);
    }

    #[test]
    fn line_quiver_idempotent_splits() {
        let q = Arc::new(
            Quiver::builder()
                .vertex("v1")
                .vertex("v2")
                .vertex("v3")
                .arrow("alpha", "v1", "v2")
                .arrow("beta", "v2", "v3")
                .build()
                .unwrap(),
        );
        let c = subcoalgebra_closure(&q, &[], 2, true).unwrap();
        let xs = vertex_set(&q, &["v1", "v3"]).unwrap();
        let cls = classify_idempotent(&c, &xs).unwrap();
        assert!(cls.split);
        assert!(!cls.left_semicentral);
        assert!(!cls.right_semicentral);
        let local = localize(&c, &xs).unwrap();
        assert_eq!(local.total_dim(), 2);
        assert!(is_subcoalgebra(
            &local.with_vertices(q.vertices().collect())
        ));
    }

    #[test]
    fn star_tails_are_the_arrows() {
        let mut builder = Quiver::builder().vertex("x");
        for i in 1..=5 {
            builder = builder.vertex(&format!("y{i}"));
        }
        for i in 1..=5 {
            builder = builder.arrow(&format!("al{i}"), "x", &format!("y{i}"));
        }
        let q = Arc::new(builder.build().unwrap());
        let c = subcoalgebra_closure(&q, &[], 2, true).unwrap();
        let xs = vertex_set(&q, &["x"]).unwrap();
        let x = q.vertex_by_name("x").unwrap();
        let space = tail_space(&c, &xs, x, 2).unwrap();
        assert_eq!(space.dim(), 5);
        let cls = classify_idempotent(&c, &xs).unwrap();
        assert!(cls.colocalizing);
        assert!(cls.left_semicentral);
        assert!(!cls.right_semicentral);
        assert!(cls.split);
    }

    #[test]
    fn star_tail_dimension_grows_with_the_arrow_count() {
        let mut dims = Vec::new();
        for n in [5usize, 6, 7] {
            let mut builder = Quiver::builder().vertex("x");
            for i in 1..=n {
                builder = builder.vertex(&format!("y{i}"));
            }
            for i in 1..=n {
                builder = builder.arrow(&format!("al{i}"), "x", &format!("y{i}"));
            }
            let q = Arc::new(builder.build().unwrap());
            let c = subcoalgebra_closure(&q, &[], 2, true).unwrap();
            let xs = vertex_set(&q, &["x"]).unwrap();
            let x = q.vertex_by_name("x").unwrap();
            dims.push(tail_space(&c, &xs, x, 2).unwrap().dim());
        }
        assert_eq!(dims, vec![5, 6, 7]);
    }

    #[test]
    fn cyclic_quiver_reports_growing_tails_without_claiming_infinity() {
        let q = Arc::new(
            Quiver::builder()
                .vertex("x")
                .vertex("u")
                .arrow("out", "x", "u")
                .arrow("back", "u", "u")
                .build()
                .unwrap(),
        );
        let c = GradedSubcoalgebra::full_path_coalgebra(q.clone(), 4);
        let xs = vertex_set(&q, &["x"]).unwrap();
        let cls = classify_idempotent(&c, &xs).unwrap();
        assert!(!cls.acyclic_exact);
        assert!(!cls.colocalizing);
        let x = q.vertex_by_name("x").unwrap();
        assert_eq!(cls.tail_dims.get(&x).unwrap(), &vec![1, 2, 3, 4]);
        assert_eq!(cls.growing, vec![x]);
    }
}
