//! The path coalgebra of a quiver and its graded subcoalgebras.
//!
//! Comultiplication splits a path at every visited vertex; with paths printed
//! right to left the left tensor leg is the back portion (ending at the
//! path's target) and the right leg is the front portion (starting at the
//! source). Splitting never increases length, so computations truncated at a
//! length bound are exact whenever all inputs fit under the bound.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num::BigRational;
use num::Zero;

use crate::error::Error;
use crate::linalg::{PathVector, Subspace};
use crate::quiver::{enumerate_paths, Path, Quiver, VertexId};

/// A finite rational combination of ordered path pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorExpansion {
    terms: BTreeMap<(Path, Path), BigRational>,
}

impl TensorExpansion {
    pub fn zero() -> TensorExpansion {
        TensorExpansion::default()
    }

    pub fn add_term(&mut self, left: Path, right: Path, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Path, Path), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Groups the left legs by right-leg path: the vectors `(id ⊗ q*)(t)`.
    pub fn left_legs_by_right_path(&self) -> BTreeMap<Path, PathVector> {
        let mut out: BTreeMap<Path, PathVector> = BTreeMap::new();
        for ((l, r), c) in self.iter() {
            out.entry(r.clone())
                .or_insert_with(PathVector::zero)
                .add_term(l.clone(), c.clone());
        }
        out
    }

    /// Groups the right legs by left-leg path: the vectors `(q* ⊗ id)(t)`.
    pub fn right_legs_by_left_path(&self) -> BTreeMap<Path, PathVector> {
        let mut out: BTreeMap<Path, PathVector> = BTreeMap::new();
        for ((l, r), c) in self.iter() {
            out.entry(l.clone())
                .or_insert_with(PathVector::zero)
                .add_term(r.clone(), c.clone());
        }
        out
    }
}

/// Comultiplication of a single path: the sum over its `len + 1` splittings,
/// back portion tensor front portion.
pub fn delta_path(quiver: &Quiver, p: &Path) -> TensorExpansion {
    let mut out = TensorExpansion::zero();
    for cut in 0..=p.len() {
        let front = p.segment(quiver, 0, cut);
        let back = p.segment(quiver, cut, p.len());
        out.add_term(back, front, num::One::one());
    }
    out
}

/// Linear extension of [`delta_path`].
pub fn delta_elem(quiver: &Quiver, v: &PathVector) -> TensorExpansion {
    let mut out = TensorExpansion::zero();
    for (p, c) in v.iter() {
        for cut in 0..=p.len() {
            let front = p.segment(quiver, 0, cut);
            let back = p.segment(quiver, cut, p.len());
            out.add_term(back, front, c.clone());
        }
    }
    out
}

/// Counit: the sum of coefficients of trivial paths.
pub fn counit(v: &PathVector) -> BigRational {
    let mut acc = BigRational::zero();
    for (p, c) in v.iter() {
        if p.is_trivial() {
            acc += c;
        }
    }
    acc
}

/// Union of the support paths of an element.
pub fn psupp(v: &PathVector) -> BTreeSet<Path> {
    v.support().cloned().collect()
}

/// A graded subcoalgebra of a truncated path coalgebra, stored per endpoint
/// pair as a canonical subspace of the paths between those endpoints.
///
/// `vertices` is the active vertex set: the full vertex set for ordinary
/// subcoalgebras, a subset for localized ones. Comultiplication of a
/// localized object only splits at active vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubcoalgebra {
    quiver: Arc<Quiver>,
    vertices: BTreeSet<VertexId>,
    max_len: usize,
    components: BTreeMap<(VertexId, VertexId), Subspace>,
    admissible: bool,
}

impl GradedSubcoalgebra {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Whether the object was built or verified as an admissible subcoalgebra
    /// over its full quiver.
    pub fn admissible(&self) -> bool {
        self.admissible
    }

    pub fn components(&self) -> impl Iterator<Item = (&(VertexId, VertexId), &Subspace)> {
        self.components.iter()
    }

    pub fn component(&self, a: VertexId, b: VertexId) -> Option<&Subspace> {
        self.components.get(&(a, b))
    }

    pub fn dim_component(&self, a: VertexId, b: VertexId) -> usize {
        self.component(a, b).map(|s| s.dim()).unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(|s| s.dim()).sum()
    }

    /// Membership of an arbitrary element, tested per endpoint component.
    pub fn member(&self, v: &PathVector) -> bool {
        for ((a, b), piece) in v.split_by_endpoints() {
            match self.component(a, b) {
                Some(s) if s.member(&piece) => {}
                _ => return false,
            }
        }
        true
    }

    /// Union of supports of all basis rows.
    pub fn psupp_set(&self) -> BTreeSet<Path> {
        let mut out = BTreeSet::new();
        for s in self.components.values() {
            for row in s.rows() {
                out.extend(row.support().cloned());
            }
        }
        out
    }

    /// Comultiplication compressed to the active vertex set: splittings whose
    /// cut vertex is inactive are dropped.
    pub fn delta(&self, v: &PathVector) -> TensorExpansion {
        let mut out = TensorExpansion::zero();
        for (p, c) in v.iter() {
            let trace = self.quiver.vertex_trace(p);
            for cut in 0..=p.len() {
                if !self.vertices.contains(&trace.0[cut]) {
                    continue;
                }
                let front = p.segment(&self.quiver, 0, cut);
                let back = p.segment(&self.quiver, cut, p.len());
                out.add_term(back, front, c.clone());
            }
        }
        out
    }

    /// The same components read over the stated vertex set. Used to re-read a
    /// localized object over the full quiver when testing splitness.
    pub fn with_vertices(&self, vertices: BTreeSet<VertexId>) -> GradedSubcoalgebra {
        GradedSubcoalgebra {
            quiver: self.quiver.clone(),
            vertices,
            max_len: self.max_len,
            components: self.components.clone(),
            admissible: false,
        }
    }

    /// The full truncated path coalgebra: every component is the whole span.
    pub fn full_path_coalgebra(quiver: Arc<Quiver>, max_len: usize) -> GradedSubcoalgebra {
        let mut components = BTreeMap::new();
        for a in quiver.vertices() {
            for b in quiver.vertices() {
                let ambient = enumerate_paths(&quiver, a, b, max_len);
                if !ambient.is_empty() {
                    components.insert((a, b), Subspace::full(ambient));
                }
            }
        }
        let vertices = quiver.vertices().collect();
        GradedSubcoalgebra {
            quiver,
            vertices,
            max_len,
            components,
            admissible: true,
        }
    }

    /// Builds a graded object directly from per-component spans. The spans
    /// are row-reduced; no closure is applied.
    pub fn from_components(
        quiver: Arc<Quiver>,
        vertices: BTreeSet<VertexId>,
        max_len: usize,
        components: BTreeMap<(VertexId, VertexId), Subspace>,
        admissible: bool,
    ) -> GradedSubcoalgebra {
        let components = components
            .into_iter()
            .filter(|(_, s)| s.dim() > 0)
            .collect();
        GradedSubcoalgebra {
            quiver,
            vertices,
            max_len,
            components,
            admissible,
        }
    }
}

fn ambient_for(
    quiver: &Quiver,
    cache: &mut BTreeMap<(VertexId, VertexId), Vec<Path>>,
    a: VertexId,
    b: VertexId,
    max_len: usize,
) -> Vec<Path> {
    cache
        .entry((a, b))
        .or_insert_with(|| enumerate_paths(quiver, a, b, max_len))
        .clone()
}

/// The smallest graded subcoalgebra of the truncated path coalgebra
/// containing the generators; with `admissible` also every trivial path and
/// every arrow.
///
/// Iterates partial evaluations of the comultiplication on both tensor legs
/// until the per-component bases stabilize. Since splitting a path never
/// increases length, the result is exact whenever every generator fits under
/// `max_len`, which is enforced.
pub fn subcoalgebra_closure(
    quiver: &Arc<Quiver>,
    generators: &[PathVector],
    max_len: usize,
    admissible: bool,
) -> Result<GradedSubcoalgebra, Error> {
    for g in generators {
        let len = g.max_support_len();
        if len > max_len {
            return Err(Error::GeneratorTooLong { len, max_len });
        }
    }
    let mut ambients: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    let mut components: BTreeMap<(VertexId, VertexId), Subspace> = BTreeMap::new();
    let mut work: VecDeque<PathVector> = VecDeque::new();

    if admissible {
        for v in quiver.vertices() {
            work.push_back(PathVector::unit(Path::trivial(v)));
        }
        for a in quiver.arrows() {
            work.push_back(PathVector::unit(quiver.arrow_path(a)));
        }
    }
    for g in generators {
        for (_, piece) in g.split_by_endpoints() {
            work.push_back(piece);
        }
    }

    while let Some(v) = work.pop_front() {
        let Some((a, b)) = v.endpoints()? else { continue };
        let comp = components.entry((a, b)).or_insert_with(|| {
            Subspace::zero(ambient_for(quiver, &mut ambients, a, b, max_len))
        });
        if !comp.insert(&v)? {
            continue;
        }
        let expansion = delta_elem(quiver, &v);
        for (_, legs) in expansion.left_legs_by_right_path() {
            work.push_back(legs);
        }
        for (_, legs) in expansion.right_legs_by_left_path() {
            work.push_back(legs);
        }
    }

    components.retain(|_, s| s.dim() > 0);
    Ok(GradedSubcoalgebra {
        quiver: quiver.clone(),
        vertices: quiver.vertices().collect(),
        max_len,
        components,
        admissible,
    })
}

/// Checks that comultiplication maps every basis row into the object tensor
/// itself: both partial-evaluation families of each row must be members.
pub fn is_subcoalgebra(c: &GradedSubcoalgebra) -> bool {
    for ((a, b), s) in c.components() {
        if !c.vertices.contains(a) || !c.vertices.contains(b) {
            return false;
        }
        for row in s.rows() {
            let expansion = c.delta(row);
            for (_, legs) in expansion.left_legs_by_right_path() {
                if !c.member(&legs) {
                    return false;
                }
            }
            for (_, legs) in expansion.right_legs_by_left_path() {
                if !c.member(&legs) {
                    return false;
                }
            }
        }
    }
    true
}

/// A subcoalgebra over the full quiver containing every trivial path and
/// every arrow.
pub fn is_admissible(c: &GradedSubcoalgebra) -> bool {
    let quiver = c.quiver();
    if c.vertices.len() != quiver.vertex_count() {
        return false;
    }
    for v in quiver.vertices() {
        if !c.member(&PathVector::unit(Path::trivial(v))) {
            return false;
        }
    }
    for a in quiver.arrows() {
        if !c.member(&PathVector::unit(quiver.arrow_path(a))) {
            return false;
        }
    }
    is_subcoalgebra(c)
}
