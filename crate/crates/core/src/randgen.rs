//! Seeded random generation of quivers, relations, subcoalgebras, vertex
//! subsets, and comodules, for property tests and the self-test command.
//!
//! Everything is driven by a caller-supplied ChaCha stream, so a run is
//! reproducible from its seed alone.

use std::collections::BTreeSet;
use std::sync::Arc;

use num::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalgebra::{subcoalgebra_closure, GradedSubcoalgebra};
use crate::comodule::{comodule_of_restriction, FinComodule};
use crate::error::Error;
use crate::linalg::{integer, PathVector};
use crate::quiver::{enumerate_paths, Quiver, VertexId};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A quiver with `2..=max_vertices` vertices and `1..=max_arrows` arrows.
/// With `acyclic`, arrows only run from lower to higher vertex index.
pub fn random_quiver(rng: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize, acyclic: bool) -> Arc<Quiver> {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let m = rng.gen_range(1..=max_arrows.max(1));
    let mut builder = Quiver::builder();
    for i in 1..=n {
        builder = builder.vertex(&format!("v{i}"));
    }
    for k in 1..=m {
        let (s, t) = if acyclic {
            let s = rng.gen_range(1..n);
            let t = rng.gen_range(s + 1..=n);
            (s, t)
        } else {
            (rng.gen_range(1..=n), rng.gen_range(1..=n))
        };
        builder = builder.arrow(&format!("a{k}"), &format!("v{s}"), &format!("v{t}"));
    }
    Arc::new(builder.build().expect("generated names are valid"))
}

fn nonzero_coefficient(rng: &mut ChaCha8Rng) -> BigRational {
    let c = *[-2i64, -1, 1, 2].choose(rng).expect("non-empty");
    integer(c)
}

/// A combination of up to three parallel paths with lengths in
/// `min_len..=max_len` between a random pair of vertices, if any exist.
pub fn random_parallel_combination(
    rng: &mut ChaCha8Rng,
    quiver: &Quiver,
    min_len: usize,
    max_len: usize,
) -> Option<PathVector> {
    let vertices: Vec<VertexId> = quiver.vertices().collect();
    for _ in 0..16 {
        let a = *vertices.choose(rng)?;
        let b = *vertices.choose(rng)?;
        let pool: Vec<_> = enumerate_paths(quiver, a, b, max_len)
            .into_iter()
            .filter(|p| p.len() >= min_len)
            .collect();
        if pool.is_empty() {
            continue;
        }
        let count = rng.gen_range(1..=3usize.min(pool.len()));
        let mut v = PathVector::zero();
        for p in pool.choose_multiple(rng, count) {
            v.add_term(p.clone(), nonzero_coefficient(rng));
        }
        if !v.is_zero() {
            return Some(v);
        }
    }
    None
}

/// Up to `count` valid relation generators (parallel, length at least two).
pub fn random_relations(
    rng: &mut ChaCha8Rng,
    quiver: &Quiver,
    count: usize,
    max_len: usize,
) -> Vec<PathVector> {
    let mut out = Vec::new();
    for _ in 0..count {
        if let Some(v) = random_parallel_combination(rng, quiver, 2, max_len) {
            out.push(v);
        }
    }
    out
}

/// An admissible subcoalgebra generated by a few random combinations.
pub fn random_subcoalgebra(
    rng: &mut ChaCha8Rng,
    quiver: &Arc<Quiver>,
    max_generators: usize,
    max_len: usize,
) -> GradedSubcoalgebra {
    let count = rng.gen_range(0..=max_generators);
    let mut gens = Vec::new();
    for _ in 0..count {
        if let Some(v) = random_parallel_combination(rng, quiver, 1, max_len) {
            gens.push(v);
        }
    }
    subcoalgebra_closure(quiver, &gens, max_len, true).expect("generators fit under the bound")
}

/// A non-empty vertex subset, each vertex kept with probability 1/2.
pub fn random_vertex_subset(rng: &mut ChaCha8Rng, quiver: &Quiver) -> BTreeSet<VertexId> {
    let vertices: Vec<VertexId> = quiver.vertices().collect();
    let mut xs: BTreeSet<VertexId> = vertices.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if xs.is_empty() {
        xs.insert(*vertices.choose(rng).expect("quivers are non-empty"));
    }
    xs
}

/// A random vector in `dim`-dimensional coordinate space with small integer
/// entries, at least one of them nonzero.
fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = (0..dim)
        .map(|_| {
            if rng.gen_bool(0.5) {
                integer(rng.gen_range(-2..=2))
            } else {
                integer(0)
            }
        })
        .collect();
    if v.iter().all(|c| c == &integer(0)) {
        let i = rng.gen_range(0..dim);
        v[i] = integer(1);
    }
    v
}

/// A random comodule over `c` with dimension at most `max_dim`: a chain of
/// random sub- and quotient comodules of the coalgebra coacting on itself.
pub fn random_comodule(
    rng: &mut ChaCha8Rng,
    c: &Arc<GradedSubcoalgebra>,
    max_dim: usize,
) -> Result<FinComodule, Error> {
    let full = comodule_of_restriction(c, &c.vertices().clone())?.comodule;
    let mut m = full;
    for _ in 0..8 {
        if m.dim() == 0 {
            break;
        }
        let gens = vec![random_vector(rng, m.dim())];
        let sub = m.sub_comodule_generated(&gens);
        let next = if rng.gen_bool(0.5) && sub.dim() > 0 {
            m.sub_comodule(&sub)?
        } else if sub.dim() < m.dim() {
            m.quotient_by(&sub)?
        } else {
            m.clone()
        };
        if next.dim() > 0 {
            m = next;
        }
        if m.dim() <= max_dim {
            break;
        }
    }
    if m.dim() > max_dim || m.dim() == 0 {
        // Deterministic fallback: a simple at a random active vertex.
        let vertices: Vec<VertexId> = m.coalgebra().vertices().iter().copied().collect();
        let x = *vertices.choose(rng).expect("coalgebras keep their vertices");
        return FinComodule::simple(m.coalgebra().clone(), x);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible_from_the_seed() {
        let mut r1 = rng_from_seed(11);
        let mut r2 = rng_from_seed(11);
        let q1 = random_quiver(&mut r1, 5, 7, true);
        let q2 = random_quiver(&mut r2, 5, 7, true);
        assert_eq!(q1, q2);
        let c1 = random_subcoalgebra(&mut r1, &q1, 2, 3);
        let c2 = random_subcoalgebra(&mut r2, &q2, 2, 3);
        assert_eq!(c1, c2);
    }

    #[test]
    fn acyclic_generation_is_acyclic() {
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let q = random_quiver(&mut rng, 6, 8, true);
            assert!(q.is_acyclic());
        }
    }

    #[test]
    fn random_relations_validate() {
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            let q = random_quiver(&mut rng, 5, 8, true);
            let rels = random_relations(&mut rng, &q, 3, 4);
            assert!(crate::relations::validate_relations(&rels).is_ok());
        }
    }

    #[test]
    fn random_comodules_fit_under_the_cap_and_validate() {
        let mut rng = rng_from_seed(3);
        for _ in 0..10 {
            let q = random_quiver(&mut rng, 4, 5, true);
            let c = Arc::new(random_subcoalgebra(&mut rng, &q, 2, 3));
            let m = random_comodule(&mut rng, &c, 8).unwrap();
            assert!(m.dim() >= 1 && m.dim() <= 8);
            let lv = m.length_vector().unwrap();
            let total: usize = lv.values().sum();
            assert_eq!(total, m.dim());
        }
    }
}
