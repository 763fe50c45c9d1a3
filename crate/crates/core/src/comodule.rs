//! Finite-dimensional right comodules over graded subcoalgebras.
//!
//! A coaction sends the `i`-th basis vector to `Σ_j m_j ⊗ c_{ij}` with every
//! coefficient inside the coalgebra; construction checks the counit and
//! coassociativity axioms exactly, so an invalid table never becomes a value
//! of [`FinComodule`]. On top of that sit socles, length vectors, the
//! restriction of a comodule to a vertex subset, and the section functor
//! going back, built from the cotensor kernel.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{BigRational, One, Zero};

use crate::coalgebra::{delta_elem, GradedSubcoalgebra, TensorExpansion};
use crate::error::Error;
use crate::linalg::{PathVector, VecSubspace};
use crate::localization::localize;
use crate::quiver::{Path, VertexId};

/// A finite-dimensional right comodule, given by a validated coaction table
/// on an abstract basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinComodule {
    coalgebra: Arc<GradedSubcoalgebra>,
    dim: usize,
    coaction: Vec<Vec<(usize, PathVector)>>,
}

/// Accumulates `left ⊗ right` into a tensor expansion.
fn tensor_into(t: &mut TensorExpansion, left: &PathVector, right: &PathVector) {
    for (p, a) in left.iter() {
        for (q, b) in right.iter() {
            t.add_term(p.clone(), q.clone(), a * b);
        }
    }
}

impl FinComodule {
    /// Validates a coaction table: indices in range, coefficients inside the
    /// coalgebra, counit identity, and exact coassociativity.
    pub fn new(
        coalgebra: Arc<GradedSubcoalgebra>,
        coaction: Vec<Vec<(usize, PathVector)>>,
    ) -> Result<FinComodule, Error> {
        let dim = coaction.len();
        let mut rows: Vec<Vec<(usize, PathVector)>> = Vec::with_capacity(dim);
        for (i, entries) in coaction.into_iter().enumerate() {
            let mut merged: BTreeMap<usize, PathVector> = BTreeMap::new();
            for (j, c) in entries {
                if j >= dim {
                    return Err(Error::BadCoaction {
                        index: i,
                        reason: format!("basis index {j} out of range for dimension {dim}"),
                    });
                }
                merged.entry(j).or_insert_with(PathVector::zero).add_scaled(&c, &BigRational::one());
            }
            merged.retain(|_, c| !c.is_zero());
            for (j, c) in &merged {
                if !coalgebra.member(c) {
                    return Err(Error::BadCoaction {
                        index: i,
                        reason: format!(
                            "coefficient at basis index {j} is outside the coalgebra"
                        ),
                    });
                }
            }
            rows.push(merged.into_iter().collect());
        }

        let m = FinComodule {
            coalgebra,
            dim,
            coaction: rows,
        };

        for i in 0..dim {
            let mut counit_row = vec![BigRational::zero(); dim];
            for (j, c) in &m.coaction[i] {
                counit_row[*j] += crate::coalgebra::counit(c);
            }
            for (j, val) in counit_row.iter().enumerate() {
                let expected = if j == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if *val != expected {
                    return Err(Error::BadCoaction {
                        index: i,
                        reason: "counit identity fails".to_string(),
                    });
                }
            }
        }

        let by_target = m.transposed();
        for i in 0..dim {
            for k in 0..dim {
                let mut lhs = TensorExpansion::zero();
                for (j, c_jk) in &by_target[k] {
                    if let Some(c_ij) = m.entry(i, *j) {
                        tensor_into(&mut lhs, c_jk, c_ij);
                    }
                }
                let rhs = match m.entry(i, k) {
                    Some(c) => m.coalgebra.delta(c),
                    None => TensorExpansion::zero(),
                };
                if lhs != rhs {
                    return Err(Error::BadCoaction {
                        index: i,
                        reason: format!("coassociativity fails at module index {k}"),
                    });
                }
            }
        }

        Ok(m)
    }

    pub fn coalgebra(&self) -> &Arc<GradedSubcoalgebra> {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coaction row of the `i`-th basis vector, sorted by module index.
    pub fn coaction(&self, i: usize) -> &[(usize, PathVector)] {
        &self.coaction[i]
    }

    fn entry(&self, i: usize, j: usize) -> Option<&PathVector> {
        self.coaction[i]
            .binary_search_by_key(&j, |(k, _)| *k)
            .ok()
            .map(|pos| &self.coaction[i][pos].1)
    }

    /// For each module index `j`, the list of `(i, c_{ij})` with nonzero
    /// coefficient.
    fn transposed(&self) -> Vec<Vec<(usize, &PathVector)>> {
        let mut out: Vec<Vec<(usize, &PathVector)>> = vec![Vec::new(); self.dim];
        for (i, row) in self.coaction.iter().enumerate() {
            for (j, c) in row {
                out[*j].push((i, c));
            }
        }
        out
    }

    /// Coalgebra legs of the coaction on an arbitrary vector: index `j` maps
    /// to `Σ_i v_i · c_{ij}`.
    pub fn coaction_legs(&self, v: &[BigRational]) -> Vec<PathVector> {
        let mut legs = vec![PathVector::zero(); self.dim];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, c) in &self.coaction[i] {
                legs[*j].add_scaled(c, vi);
            }
        }
        legs
    }

    /// The one-dimensional comodule concentrated at a vertex.
    pub fn simple(coalgebra: Arc<GradedSubcoalgebra>, x: VertexId) -> Result<FinComodule, Error> {
        let e = PathVector::unit(Path::trivial(x));
        if !coalgebra.member(&e) {
            return Err(Error::NotAMember);
        }
        FinComodule::new(coalgebra, vec![vec![(0, e)]])
    }

    pub fn direct_sum(&self, other: &FinComodule) -> Result<FinComodule, Error> {
        if self.coalgebra != other.coalgebra {
            return Err(Error::AmbientMismatch);
        }
        let mut coaction = self.coaction.clone();
        for row in &other.coaction {
            coaction.push(
                row.iter()
                    .map(|(j, c)| (j + self.dim, c.clone()))
                    .collect(),
            );
        }
        FinComodule::new(self.coalgebra.clone(), coaction)
    }

    /// Basis of `{v : ρ(v) = v ⊗ e_x}`, the `x`-isotypic part of the socle,
    /// in coordinates of the module basis.
    pub fn simple_socle_basis(&self, x: VertexId) -> Vec<Vec<BigRational>> {
        let e_x = Path::trivial(x);
        let by_target = self.transposed();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (j, entries) in by_target.iter().enumerate() {
            let mut paths: BTreeSet<Path> = entries
                .iter()
                .flat_map(|(_, c)| c.support().cloned())
                .collect();
            paths.insert(e_x.clone());
            for p in paths {
                let mut row = vec![BigRational::zero(); self.dim];
                for (i, c) in entries {
                    row[*i] = c.coeff(&p);
                }
                if p == e_x {
                    row[j] -= BigRational::one();
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        VecSubspace::nullspace_of(&rows, self.dim).rows().to_vec()
    }

    /// Multiplicity of the simple comodule at `x` in the socle.
    pub fn hom_simple(&self, x: VertexId) -> usize {
        self.simple_socle_basis(x).len()
    }

    /// Basis of the largest semisimple subcomodule: the vectors whose
    /// coaction legs are supported on trivial paths only.
    pub fn socle_basis(&self) -> Vec<Vec<BigRational>> {
        let by_target = self.transposed();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for entries in &by_target {
            let paths: BTreeSet<Path> = entries
                .iter()
                .flat_map(|(_, c)| c.support().cloned())
                .filter(|p| !p.is_trivial())
                .collect();
            for p in paths {
                let mut row = vec![BigRational::zero(); self.dim];
                for (i, c) in entries {
                    row[*i] = c.coeff(&p);
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        VecSubspace::nullspace_of(&rows, self.dim).rows().to_vec()
    }

    /// Smallest subcomodule containing the given vectors, as a row space.
    ///
    /// Iterates partial evaluations of the coaction against every support
    /// path until the span stabilizes.
    pub fn sub_comodule_generated(&self, gens: &[Vec<BigRational>]) -> VecSubspace {
        let mut collected: Vec<Vec<BigRational>> = gens.to_vec();
        let mut space = VecSubspace::new(self.dim, &collected);
        let mut queue: Vec<Vec<BigRational>> = space.rows().to_vec();
        while let Some(v) = queue.pop() {
            let legs = self.coaction_legs(&v);
            let paths: BTreeSet<Path> = legs
                .iter()
                .flat_map(|c| c.support().cloned())
                .collect();
            for p in paths {
                let w: Vec<BigRational> = legs.iter().map(|c| c.coeff(&p)).collect();
                if !space.member(&w) {
                    collected.push(w.clone());
                    space = VecSubspace::new(self.dim, &collected);
                    queue.push(w);
                }
            }
        }
        space
    }

    /// Whether a row space is stable under the coaction.
    pub fn is_subcomodule(&self, rows: &VecSubspace) -> bool {
        for v in rows.rows() {
            let legs = self.coaction_legs(v);
            let paths: BTreeSet<Path> = legs
                .iter()
                .flat_map(|c| c.support().cloned())
                .collect();
            for p in &paths {
                let w: Vec<BigRational> = legs.iter().map(|c| c.coeff(p)).collect();
                if !rows.member(&w) {
                    return false;
                }
            }
        }
        true
    }

    /// The comodule structure on a coaction-stable row space, in its basis.
    pub fn sub_comodule(&self, sub: &VecSubspace) -> Result<FinComodule, Error> {
        if sub.width() != self.dim {
            return Err(Error::AmbientMismatch);
        }
        if !self.is_subcomodule(sub) {
            return Err(Error::BadCoaction {
                index: 0,
                reason: "row space is not a subcomodule".to_string(),
            });
        }
        let mut coaction: Vec<Vec<(usize, PathVector)>> = Vec::with_capacity(sub.dim());
        for w in sub.rows() {
            let legs = self.coaction_legs(w);
            let paths: BTreeSet<Path> = legs
                .iter()
                .flat_map(|c| c.support().cloned())
                .collect();
            let mut new_row: BTreeMap<usize, PathVector> = BTreeMap::new();
            for p in paths {
                let slice: Vec<BigRational> = legs.iter().map(|c| c.coeff(&p)).collect();
                let coords = sub.coords(&slice).expect("checked subcomodule");
                for (k, coeff) in coords.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    new_row
                        .entry(k)
                        .or_insert_with(PathVector::zero)
                        .add_term(p.clone(), coeff.clone());
                }
            }
            coaction.push(new_row.into_iter().collect());
        }
        FinComodule::new(self.coalgebra.clone(), coaction)
    }

    /// Quotient by a subcomodule, with the non-pivot coordinates of the
    /// subspace as the quotient basis.
    pub fn quotient_by(&self, sub: &VecSubspace) -> Result<FinComodule, Error> {
        if sub.width() != self.dim {
            return Err(Error::AmbientMismatch);
        }
        if !self.is_subcomodule(sub) {
            return Err(Error::BadCoaction {
                index: 0,
                reason: "quotient by a space that is not a subcomodule".to_string(),
            });
        }
        let pivots: BTreeSet<usize> = sub.pivots().iter().copied().collect();
        let kept: Vec<usize> = (0..self.dim).filter(|j| !pivots.contains(j)).collect();

        // Reduction of each original basis vector, read off on the kept
        // coordinates: the quotient image of the basis.
        let mut images: Vec<Vec<BigRational>> = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut e = vec![BigRational::zero(); self.dim];
            e[j] = BigRational::one();
            let reduced = sub.reduce(&e);
            images.push(kept.iter().map(|k| reduced[*k].clone()).collect());
        }

        let mut coaction: Vec<Vec<(usize, PathVector)>> = Vec::with_capacity(kept.len());
        for q in &kept {
            let mut new_row: BTreeMap<usize, PathVector> = BTreeMap::new();
            for (j, c) in &self.coaction[*q] {
                for (kpos, coeff) in images[*j].iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    new_row
                        .entry(kpos)
                        .or_insert_with(PathVector::zero)
                        .add_scaled(c, coeff);
                }
            }
            new_row.retain(|_, c| !c.is_zero());
            coaction.push(new_row.into_iter().collect());
        }
        FinComodule::new(self.coalgebra.clone(), coaction)
    }

    /// Socle multiplicities accumulated layer by layer until the comodule is
    /// exhausted: index `x` counts the composition factors at `x`.
    pub fn length_vector(&self) -> Result<BTreeMap<VertexId, usize>, Error> {
        let mut totals: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut current = self.clone();
        while current.dim() > 0 {
            let socle_rows = current.socle_basis();
            if socle_rows.is_empty() {
                return Err(Error::BadCoaction {
                    index: 0,
                    reason: "socle vanished on a nonzero comodule".to_string(),
                });
            }
            let mut layer_total = 0;
            for x in current.coalgebra.vertices().clone() {
                let mult = current.hom_simple(x);
                if mult > 0 {
                    *totals.entry(x).or_insert(0) += mult;
                    layer_total += mult;
                }
            }
            if layer_total != socle_rows.len() {
                return Err(Error::BadCoaction {
                    index: 0,
                    reason: "socle does not split into vertex-isotypic parts".to_string(),
                });
            }
            let sub = VecSubspace::new(current.dim(), &socle_rows);
            current = current.quotient_by(&sub)?;
        }
        Ok(totals)
    }
}

/// The restriction comodule of a coalgebra at a vertex subset: all components
/// whose source lies in the subset, coacted on by the sub-subset part.
///
/// Returns the comodule over the localized coalgebra together with one label
/// per basis index: the component and the basis row it came from.
pub struct RestrictionComodule {
    pub comodule: FinComodule,
    pub labels: Vec<((VertexId, VertexId), PathVector)>,
}

pub fn comodule_of_restriction(
    c: &GradedSubcoalgebra,
    xs: &BTreeSet<VertexId>,
) -> Result<RestrictionComodule, Error> {
    let ece = Arc::new(localize(c, xs)?);
    let quiver = c.quiver();

    let mut labels: Vec<((VertexId, VertexId), PathVector)> = Vec::new();
    let mut index_of: BTreeMap<(VertexId, VertexId), Vec<usize>> = BTreeMap::new();
    for ((a, b), s) in c.components() {
        if !xs.contains(a) {
            continue;
        }
        let indices = index_of.entry((*a, *b)).or_default();
        for row in s.rows() {
            indices.push(labels.len());
            labels.push(((*a, *b), row.clone()));
        }
    }

    let mut coaction: Vec<Vec<(usize, PathVector)>> = Vec::with_capacity(labels.len());
    for ((_, b), row) in &labels {
        let mut legs: BTreeMap<usize, PathVector> = BTreeMap::new();
        let expansion = delta_elem(quiver, row);
        // Keep the splittings cut at subset vertices; the earlier piece is
        // the coalgebra leg, the later piece stays in the module.
        let mut by_cut: BTreeMap<VertexId, Vec<(&Path, &Path, &BigRational)>> = BTreeMap::new();
        for ((back, front), coeff) in expansion.iter() {
            let cut = front.target();
            if xs.contains(&cut) {
                by_cut.entry(cut).or_default().push((back, front, coeff));
            }
        }
        for (cut, terms) in by_cut {
            let comp = c
                .component(cut, *b)
                .expect("splitting legs stay inside the coalgebra");
            let indices = &index_of[&(cut, *b)];
            let pivots = comp.pivot_paths();
            for (slot, pivot) in pivots.iter().enumerate() {
                let mut leg = PathVector::zero();
                for (back, front, coeff) in &terms {
                    if back == pivot {
                        leg.add_term((*front).clone(), (*coeff).clone());
                    }
                }
                if !leg.is_zero() {
                    legs.entry(indices[slot])
                        .or_insert_with(PathVector::zero)
                        .add_scaled(&leg, &BigRational::one());
                }
            }
        }
        coaction.push(legs.into_iter().collect());
    }

    let comodule = FinComodule::new(ece, coaction)?;
    Ok(RestrictionComodule { comodule, labels })
}

/// Restriction of a comodule to a vertex subset, over the localized
/// coalgebra: the image of the projection that keeps coaction legs with
/// trivial paths at subset vertices.
pub fn restrict_comodule(
    m: &FinComodule,
    ece: &Arc<GradedSubcoalgebra>,
) -> Result<FinComodule, Error> {
    if m.coalgebra().quiver() != ece.quiver() {
        return Err(Error::AmbientMismatch);
    }
    let xs = ece.vertices();
    let dim = m.dim();

    let subset_counit = |c: &PathVector| -> BigRational {
        xs.iter()
            .map(|x| c.coeff(&Path::trivial(*x)))
            .fold(BigRational::zero(), |acc, v| acc + v)
    };

    let mut projected: Vec<Vec<BigRational>> = Vec::with_capacity(dim);
    for row in &m.coaction {
        let mut image = vec![BigRational::zero(); dim];
        for (j, c) in row {
            image[*j] = subset_counit(c);
        }
        projected.push(image);
    }
    let image_space = VecSubspace::new(dim, &projected);

    let mut coaction: Vec<Vec<(usize, PathVector)>> = Vec::with_capacity(image_space.dim());
    for w in image_space.rows() {
        let legs = m.coaction_legs(w);
        let mut new_row: BTreeMap<usize, PathVector> = BTreeMap::new();
        for (j, leg) in legs.iter().enumerate() {
            if leg.is_zero() {
                continue;
            }
            let restricted = restrict_to_subset(leg, xs);
            if restricted.is_zero() {
                continue;
            }
            let coords = image_space
                .coords(&projected[j])
                .expect("projection rows span the image");
            for (k, coeff) in coords.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                new_row
                    .entry(k)
                    .or_insert_with(PathVector::zero)
                    .add_scaled(&restricted, coeff);
            }
        }
        new_row.retain(|_, c| !c.is_zero());
        coaction.push(new_row.into_iter().collect());
    }
    FinComodule::new(ece.clone(), coaction)
}

/// Keeps the terms whose paths start and end inside the subset.
fn restrict_to_subset(v: &PathVector, xs: &BTreeSet<VertexId>) -> PathVector {
    let mut out = PathVector::zero();
    for (p, c) in v.iter() {
        if xs.contains(&p.source()) && xs.contains(&p.target()) {
            out.add_term(p.clone(), c.clone());
        }
    }
    out
}

/// A section comodule together with the coordinates it was cut out in: the
/// kernel rows live in the tensor of the input comodule with the
/// subset-ending part of the coalgebra, whose basis is described by
/// `ce_labels` (tensor index `i * ce_labels.len() + k` pairs module index `i`
/// with basis row `k`).
pub struct SectionComodule {
    pub comodule: FinComodule,
    pub ce_labels: Vec<((VertexId, VertexId), PathVector)>,
    pub kernel: VecSubspace,
}

/// The section comodule: the cotensor kernel of a comodule over the localized
/// coalgebra against the paths-ending-in-the-subset bicomodule, carrying the
/// full coalgebra's coaction on the second leg.
pub fn cotensor_section(
    n: &FinComodule,
    c: &Arc<GradedSubcoalgebra>,
    cap: usize,
) -> Result<SectionComodule, Error> {
    if n.coalgebra().quiver() != c.quiver() {
        return Err(Error::AmbientMismatch);
    }
    let xs = n.coalgebra().vertices().clone();
    let quiver = c.quiver();

    // Basis of the paths-ending-in-the-subset part of the coalgebra.
    let mut ce_labels: Vec<((VertexId, VertexId), PathVector)> = Vec::new();
    let mut ce_index: BTreeMap<(VertexId, VertexId), Vec<usize>> = BTreeMap::new();
    for ((a, b), s) in c.components() {
        if !xs.contains(b) {
            continue;
        }
        let indices = ce_index.entry((*a, *b)).or_default();
        for row in s.rows() {
            indices.push(ce_labels.len());
            ce_labels.push(((*a, *b), row.clone()));
        }
    }
    let ce_dim = ce_labels.len();
    let unknowns = n.dim() * ce_dim;
    if unknowns > cap {
        return Err(Error::DimensionCap { dim: unknowns, cap });
    }
    if unknowns == 0 {
        return Ok(SectionComodule {
            comodule: FinComodule::new(c.clone(), Vec::new())?,
            ce_labels,
            kernel: VecSubspace::zero(0),
        });
    }

    // Per basis row of the subset-ending part: its left coaction expanded in
    // that same basis (subset splits only), and its full right coaction.
    // `left[k]` maps k' to the coalgebra leg between them; `right[k]` maps
    // k'' to the full-coalgebra leg.
    let mut left: Vec<BTreeMap<usize, PathVector>> = Vec::with_capacity(ce_dim);
    let mut right: Vec<BTreeMap<usize, PathVector>> = Vec::with_capacity(ce_dim);
    for ((a, b), row) in &ce_labels {
        let expansion = delta_elem(quiver, row);
        let mut left_k: BTreeMap<usize, PathVector> = BTreeMap::new();
        let mut right_k: BTreeMap<usize, PathVector> = BTreeMap::new();

        // Left: group by the later piece (the localized-coalgebra leg);
        // expand the earlier piece in the subset-ending basis.
        let mut fronts_by_back: BTreeMap<Path, PathVector> = BTreeMap::new();
        for ((back, front), coeff) in expansion.iter() {
            if xs.contains(&back.source()) {
                fronts_by_back
                    .entry(back.clone())
                    .or_insert_with(PathVector::zero)
                    .add_term(front.clone(), coeff.clone());
            }
        }
        for (back, fronts) in fronts_by_back {
            let cut = back.source();
            let comp = c
                .component(*a, cut)
                .expect("splitting legs stay inside the coalgebra");
            let coords = comp
                .coords(&fronts)
                .expect("grouped legs lie in the component");
            let indices = &ce_index[&(*a, cut)];
            for (slot, coeff) in coords.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                left_k
                    .entry(indices[slot])
                    .or_insert_with(PathVector::zero)
                    .add_term(back.clone(), coeff.clone());
            }
        }

        // Right: group by the earlier piece (the full-coalgebra leg); expand
        // the later piece, which still ends in the subset.
        let mut backs_by_front: BTreeMap<Path, PathVector> = BTreeMap::new();
        for ((back, front), coeff) in expansion.iter() {
            backs_by_front
                .entry(front.clone())
                .or_insert_with(PathVector::zero)
                .add_term(back.clone(), coeff.clone());
        }
        for (front, backs) in backs_by_front {
            let cut = front.target();
            let comp = c
                .component(cut, *b)
                .expect("splitting legs stay inside the coalgebra");
            let coords = comp
                .coords(&backs)
                .expect("grouped legs lie in the component");
            let indices = &ce_index[&(cut, *b)];
            for (slot, coeff) in coords.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                right_k
                    .entry(indices[slot])
                    .or_insert_with(PathVector::zero)
                    .add_term(front.clone(), coeff.clone());
            }
        }

        left.push(left_k);
        right.push(right_k);
    }

    // Kernel of (coaction ⊗ id) − (id ⊗ left coaction) on the tensor
    // coordinates: unknown (i, k) sits at column i * ce_dim + k; equation
    // rows are indexed by (module index, coalgebra path, basis index).
    let mut row_index: BTreeMap<(usize, Path, usize), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let bump = |rows: &mut Vec<Vec<BigRational>>,
                    row_index: &mut BTreeMap<(usize, Path, usize), usize>,
                    key: (usize, Path, usize),
                    col: usize,
                    delta: BigRational| {
        let idx = *row_index.entry(key).or_insert_with(|| {
            rows.push(vec![BigRational::zero(); unknowns]);
            rows.len() - 1
        });
        rows[idx][col] += delta;
    };
    for i in 0..n.dim() {
        for k in 0..ce_dim {
            let col = i * ce_dim + k;
            for (j, cij) in n.coaction(i) {
                for (p, coeff) in cij.iter() {
                    bump(
                        &mut rows,
                        &mut row_index,
                        (*j, p.clone(), k),
                        col,
                        coeff.clone(),
                    );
                }
            }
            for (kp, leg) in &left[k] {
                for (p, coeff) in leg.iter() {
                    bump(
                        &mut rows,
                        &mut row_index,
                        (i, p.clone(), *kp),
                        col,
                        -coeff.clone(),
                    );
                }
            }
        }
    }
    let kernel = VecSubspace::nullspace_of(&rows, unknowns);

    // The right coaction descends to the kernel; read it off in the kernel
    // basis via pivot coordinates.
    let mut coaction: Vec<Vec<(usize, PathVector)>> = Vec::with_capacity(kernel.dim());
    for w in kernel.rows() {
        let mut slices: BTreeMap<Path, Vec<BigRational>> = BTreeMap::new();
        for i in 0..n.dim() {
            for k in 0..ce_dim {
                let z = &w[i * ce_dim + k];
                if z.is_zero() {
                    continue;
                }
                for (kpp, leg) in &right[k] {
                    for (p, coeff) in leg.iter() {
                        let slice = slices
                            .entry(p.clone())
                            .or_insert_with(|| vec![BigRational::zero(); unknowns]);
                        slice[i * ce_dim + kpp] += z * coeff;
                    }
                }
            }
        }
        let mut new_row: BTreeMap<usize, PathVector> = BTreeMap::new();
        for (p, slice) in slices {
            let coords = kernel.coords(&slice).ok_or_else(|| Error::BadCoaction {
                index: 0,
                reason: "section coaction left the cotensor kernel".to_string(),
            })?;
            for (s, coeff) in coords.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                new_row
                    .entry(s)
                    .or_insert_with(PathVector::zero)
                    .add_term(p.clone(), coeff.clone());
            }
        }
        coaction.push(new_row.into_iter().collect());
    }
    Ok(SectionComodule {
        comodule: FinComodule::new(c.clone(), coaction)?,
        ce_labels,
        kernel,
    })
}

/// Convenience: the subspace a list of coordinate rows spans inside a
/// comodule, for feeding quotients.
pub fn row_space(dim: usize, rows: &[Vec<BigRational>]) -> VecSubspace {
    VecSubspace::new(dim, rows)
}
