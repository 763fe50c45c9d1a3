//! Exact linear algebra over the rationals.
//!
//! Elements of the path space are sparse maps from paths to `BigRational`
//! coefficients. Subspaces are kept in reduced row echelon form relative to a
//! fixed ambient path list sorted in the canonical path order, which makes
//! every basis unique and every report reproducible.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;
use crate::quiver::{Path, Quiver, VertexId};

/// A finite rational combination of paths.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PathVector {
    terms: BTreeMap<Path, BigRational>,
}

impl PathVector {
    pub fn zero() -> PathVector {
        PathVector::default()
    }

    pub fn unit(p: Path) -> PathVector {
        let mut terms = BTreeMap::new();
        terms.insert(p, BigRational::one());
        PathVector { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Path, BigRational)>>(iter: I) -> PathVector {
        let mut v = PathVector::zero();
        for (p, c) in iter {
            v.add_term(p, c);
        }
        v
    }

    pub fn add_term(&mut self, p: Path, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
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

    pub fn coeff(&self, p: &Path) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Path, &BigRational)> {
        self.terms.iter()
    }

    /// Support paths in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    /// The first support path in canonical order.
    pub fn leading_path(&self) -> Option<&Path> {
        self.terms.keys().next()
    }

    pub fn max_support_len(&self) -> usize {
        self.terms.keys().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn scaled(&self, c: &BigRational) -> PathVector {
        if c.is_zero() {
            return PathVector::zero();
        }
        PathVector {
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &PathVector) -> PathVector {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PathVector) -> PathVector {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, other: &PathVector, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (p, v) in other.iter() {
            self.add_term(p.clone(), v * c);
        }
    }

    /// The common (source, target) of the support, `None` for zero vectors.
    pub fn endpoints(&self) -> Result<Option<(VertexId, VertexId)>, Error> {
        let mut found: Option<(VertexId, VertexId)> = None;
        for p in self.support() {
            let e = (p.source(), p.target());
            match found {
                None => found = Some(e),
                Some(f) if f == e => {}
                Some(_) => return Err(Error::MixedEndpoints),
            }
        }
        Ok(found)
    }

    /// Splits the vector into endpoint-homogeneous pieces.
    pub fn split_by_endpoints(&self) -> BTreeMap<(VertexId, VertexId), PathVector> {
        let mut out: BTreeMap<(VertexId, VertexId), PathVector> = BTreeMap::new();
        for (p, c) in self.iter() {
            out.entry((p.source(), p.target()))
                .or_insert_with(PathVector::zero)
                .add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathVectorDisplay<'a> {
        PathVectorDisplay { vector: self, quiver }
    }
}

pub struct PathVectorDisplay<'a> {
    vector: &'a PathVector,
    quiver: &'a Quiver,
}

impl fmt::Display for PathVectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vector.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.vector.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{}*", mag)?;
            }
            write!(f, "{}", p.display(self.quiver))?;
        }
        Ok(())
    }
}

/// Kronecker pairing: paths are orthonormal, extended bilinearly.
pub fn pairing(v: &PathVector, w: &PathVector) -> BigRational {
    let (small, large) = if v.term_count() <= w.term_count() {
        (v, w)
    } else {
        (w, v)
    };
    let mut acc = BigRational::zero();
    for (p, c) in small.iter() {
        let d = large.coeff(p);
        if !d.is_zero() {
            acc += c * d;
        }
    }
    acc
}

/// Reduced row echelon form in place. Returns the pivot columns in strictly
/// increasing order; zero rows are dropped.
pub(crate) fn rref_dense(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..width {
        let found = (next..rows.len()).find(|&i| !rows[i][col].is_zero());
        let Some(row) = found else { continue };
        rows.swap(next, row);
        let lead = rows[next][col].clone();
        for x in rows[next].iter_mut() {
            if !x.is_zero() {
                *x /= lead.clone();
            }
        }
        for i in 0..rows.len() {
            if i == next || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for c in col..width {
                let sub = &rows[next][c] * &factor;
                rows[i][c] -= sub;
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

/// Canonical basis of the right null space of the row matrix.
pub(crate) fn nullspace_dense(rows: &[Vec<BigRational>], width: usize) -> Vec<Vec<BigRational>> {
    let mut work: Vec<Vec<BigRational>> = rows.to_vec();
    let pivots = rref_dense(&mut work);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; width];
        for p in &pivots {
            s[*p] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..width {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![BigRational::zero(); width];
        v[free] = BigRational::one();
        for (i, p) in pivots.iter().enumerate() {
            v[*p] = -work[i][free].clone();
        }
        basis.push(v);
    }
    rref_dense(&mut basis);
    basis
}

/// A subspace of the span of a fixed ambient path list, held in reduced row
/// echelon form. Equal subspaces over equal ambients compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: Vec<Path>,
    rows: Vec<PathVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row-reduces `vectors` over the ambient list. Every support path must
    /// appear in the ambient.
    pub fn new(ambient: Vec<Path>, vectors: &[PathVector]) -> Result<Subspace, Error> {
        debug_assert!(ambient.windows(2).all(|w| w[0] < w[1]));
        let mut dense = Vec::with_capacity(vectors.len());
        for v in vectors {
            dense.push(to_dense(&ambient, v)?);
        }
        let pivots = rref_dense(&mut dense);
        let rows = dense.iter().map(|r| from_dense(&ambient, r)).collect();
        Ok(Subspace {
            ambient,
            rows,
            pivots,
        })
    }

    pub fn zero(ambient: Vec<Path>) -> Subspace {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: Vec<Path>) -> Subspace {
        let rows = ambient
            .iter()
            .map(|p| PathVector::unit(p.clone()))
            .collect();
        let pivots = (0..ambient.len()).collect();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> &[Path] {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    /// Basis rows in reduced row echelon form, pivot order.
    pub fn rows(&self) -> &[PathVector] {
        &self.rows
    }

    /// Pivot path of each basis row.
    pub fn pivot_paths(&self) -> Vec<&Path> {
        self.pivots.iter().map(|i| &self.ambient[*i]).collect()
    }

    /// Residual of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &PathVector) -> PathVector {
        let mut rest = v.clone();
        for (row, piv) in self.rows.iter().zip(&self.pivots) {
            let c = rest.coeff(&self.ambient[*piv]);
            if !c.is_zero() {
                rest.add_scaled(row, &(-c));
            }
        }
        rest
    }

    pub fn member(&self, v: &PathVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the basis rows, or `None` when `v` is outside.
    pub fn coords(&self, v: &PathVector) -> Option<Vec<BigRational>> {
        let coords: Vec<BigRational> = self
            .pivots
            .iter()
            .map(|i| v.coeff(&self.ambient[*i]))
            .collect();
        let mut rest = v.clone();
        for (row, c) in self.rows.iter().zip(&coords) {
            rest.add_scaled(row, &(-c.clone()));
        }
        if rest.is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    /// Adds a vector, re-reducing. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &PathVector) -> Result<bool, Error> {
        if self.reduce(v).is_zero() {
            return Ok(false);
        }
        let mut vectors: Vec<PathVector> = self.rows.clone();
        vectors.push(v.clone());
        let rebuilt = Subspace::new(std::mem::take(&mut self.ambient), &vectors)?;
        *self = rebuilt;
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut vectors = self.rows.clone();
        vectors.extend(other.rows.iter().cloned());
        Subspace::new(self.ambient.clone(), &vectors)
    }

    /// Orthogonal complement under the Kronecker pairing.
    pub fn orthogonal(&self) -> Subspace {
        let dense: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|r| to_dense(&self.ambient, r).expect("rows live in ambient"))
            .collect();
        let basis = nullspace_dense(&dense, self.ambient.len());
        let rows: Vec<PathVector> = basis.iter().map(|r| from_dense(&self.ambient, r)).collect();
        Subspace::new(self.ambient.clone(), &rows).expect("nullspace rows live in ambient")
    }

    /// Intersection via complements: (S1^perp + S2^perp)^perp.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.orthogonal().sum(&other.orthogonal())?.orthogonal())
    }
}

fn to_dense(ambient: &[Path], v: &PathVector) -> Result<Vec<BigRational>, Error> {
    let mut row = vec![BigRational::zero(); ambient.len()];
    for (p, c) in v.iter() {
        let idx = ambient.binary_search(p).map_err(|_| Error::OutsideAmbient)?;
        row[idx] = c.clone();
    }
    Ok(row)
}

fn from_dense(ambient: &[Path], row: &[BigRational]) -> PathVector {
    PathVector::from_terms(
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (ambient[i].clone(), c.clone())),
    )
}

/// A subspace of plain coordinate space, used for comodule computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecSubspace {
    width: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl VecSubspace {
    pub fn new(width: usize, vectors: &[Vec<BigRational>]) -> VecSubspace {
        let mut rows: Vec<Vec<BigRational>> = vectors
            .iter()
            .inspect(|v| assert_eq!(v.len(), width))
            .cloned()
            .collect();
        let pivots = rref_dense(&mut rows);
        VecSubspace {
            width,
            rows,
            pivots,
        }
    }

    pub fn zero(width: usize) -> VecSubspace {
        VecSubspace {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn nullspace_of(matrix: &[Vec<BigRational>], width: usize) -> VecSubspace {
        let basis = nullspace_dense(matrix, width);
        VecSubspace::new(width, &basis)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut rest = v.to_vec();
        for (row, piv) in self.rows.iter().zip(&self.pivots) {
            let c = rest[*piv].clone();
            if c.is_zero() {
                continue;
            }
            for i in 0..self.width {
                let sub = &row[i] * &c;
                rest[i] -= sub;
            }
        }
        rest
    }

    pub fn member(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Coordinates in the basis rows (pivot readout), `None` when outside.
    pub fn coords(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let coords: Vec<BigRational> = self.pivots.iter().map(|p| v[*p].clone()).collect();
        let mut rest = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            for i in 0..self.width {
                let sub = &row[i] * c;
                rest[i] -= sub;
            }
        }
        if rest.iter().all(|c| c.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{enumerate_paths, Quiver};

    fn three_arrows() -> (Quiver, Vec<Path>) {
        let q = Quiver::builder()
            .vertex("x")
            .vertex("y")
            .arrow("g1", "x", "y")
            .arrow("g2", "x", "y")
            .arrow("g3", "x", "y")
            .build()
            .unwrap();
        let ambient = enumerate_paths(
            &q,
            q.vertex_by_name("x").unwrap(),
            q.vertex_by_name("y").unwrap(),
            1,
        );
        (q, ambient)
    }

    fn unit(q: &Quiver, name: &str) -> PathVector {
        PathVector::unit(q.arrow_path(q.arrow_by_name(name).unwrap()))
    }

    #[test]
    fn path_vector_addition_cancels() {
        let (q, _) = three_arrows();
        let g1 = unit(&q, "g1");
        let v = g1.sub(&g1);
        assert!(v.is_zero());
        let w = g1.scaled(&rational(2, 3)).add(&g1.scaled(&rational(1, 3)));
        assert_eq!(w, g1);
    }

    #[test]
    fn pairing_is_kronecker_on_paths() {
        let (q, _) = three_arrows();
        let g1 = unit(&q, "g1");
        let g2 = unit(&q, "g2");
        assert_eq!(pairing(&g1, &g1), integer(1));
        assert_eq!(pairing(&g1, &g2), integer(0));
        let v = g1.add(&g2.scaled(&integer(3)));
        let w = g1.scaled(&integer(2)).sub(&g2);
        assert_eq!(pairing(&v, &w), integer(-1));
    }

    #[test]
    fn orthogonal_of_difference_span_is_the_sum_vector() {
        let (q, ambient) = three_arrows();
        let s = Subspace::new(
            ambient,
            &[
                unit(&q, "g1").sub(&unit(&q, "g2")),
                unit(&q, "g2").sub(&unit(&q, "g3")),
            ],
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        let orth = s.orthogonal();
        assert_eq!(orth.dim(), 1);
        let expected = unit(&q, "g1").add(&unit(&q, "g2")).add(&unit(&q, "g3"));
        assert!(orth.member(&expected));
        assert_eq!(orth.orthogonal(), s);
    }

    #[test]
    fn member_and_coords_agree() {
        let (q, ambient) = three_arrows();
        let s = Subspace::new(
            ambient,
            &[unit(&q, "g1").add(&unit(&q, "g2")), unit(&q, "g3")],
        )
        .unwrap();
        let v = unit(&q, "g1")
            .add(&unit(&q, "g2"))
            .add(&unit(&q, "g3").scaled(&integer(5)));
        assert!(s.member(&v));
        let coords = s.coords(&v).unwrap();
        assert_eq!(coords, vec![integer(1), integer(5)]);
        assert!(!s.member(&unit(&q, "g1")));
        assert!(s.coords(&unit(&q, "g1")).is_none());
    }

    #[test]
    fn intersection_via_complements() {
        let (q, ambient) = three_arrows();
        let s1 = Subspace::new(
            ambient.clone(),
            &[unit(&q, "g1"), unit(&q, "g2")],
        )
        .unwrap();
        let s2 = Subspace::new(
            ambient,
            &[unit(&q, "g1").add(&unit(&q, "g2")), unit(&q, "g3")],
        )
        .unwrap();
        let meet = s1.intersect(&s2).unwrap();
        assert_eq!(meet.dim(), 1);
        assert!(meet.member(&unit(&q, "g1").add(&unit(&q, "g2"))));
    }

    #[test]
    fn dimension_formula_for_complements() {
        let (q, ambient) = three_arrows();
        let s = Subspace::new(ambient.clone(), &[unit(&q, "g1").sub(&unit(&q, "g3"))]).unwrap();
        assert_eq!(s.dim() + s.orthogonal().dim(), ambient.len());
    }

    #[test]
    fn vec_subspace_nullspace() {
        // x + y + z = 0 over coordinates (x, y, z)
        let matrix = vec![vec![integer(1), integer(1), integer(1)]];
        let ns = VecSubspace::nullspace_of(&matrix, 3);
        assert_eq!(ns.dim(), 2);
        assert!(ns.member(&[integer(1), integer(-1), integer(0)]));
        assert!(ns.member(&[integer(0), integer(1), integer(-1)]));
        assert!(!ns.member(&[integer(1), integer(0), integer(0)]));
    }
}
