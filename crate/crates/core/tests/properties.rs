//! Randomized invariants for the exact linear algebra underneath everything
//! else: canonical bases, complements, and kernels over the rationals.

use num::{BigRational, Zero};
use pathcoalg::linalg::{integer, rational, PathVector, Subspace, VecSubspace};
use pathcoalg::quiver::{enumerate_paths, Path, Quiver};
use proptest::prelude::*;
use std::sync::Arc;

const WIDTH: usize = 6;

/// Six parallel arrows, so the component ambient is exactly six paths.
fn parallel_ambient() -> (Arc<Quiver>, Vec<Path>) {
    let mut builder = Quiver::builder().vertex("x").vertex("y");
    for i in 1..=WIDTH {
        builder = builder.arrow(&format!("g{i}"), "x", "y");
    }
    let q = Arc::new(builder.build().unwrap());
    let x = q.vertex_by_name("x").unwrap();
    let y = q.vertex_by_name("y").unwrap();
    let ambient = enumerate_paths(&q, x, y, 1);
    (q, ambient)
}

fn to_vector(ambient: &[Path], coeffs: &[i64]) -> PathVector {
    let mut v = PathVector::zero();
    for (p, c) in ambient.iter().zip(coeffs) {
        if *c != 0 {
            v.add_term(p.clone(), integer(*c));
        }
    }
    v
}

fn rows_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, WIDTH), 0..=5)
}

proptest! {
    /// The orthogonal complement is an involution and dimensions add up to
    /// the ambient dimension.
    #[test]
    fn orthogonal_complement_is_an_involution(rows in rows_strategy()) {
        let (_q, ambient) = parallel_ambient();
        let vectors: Vec<PathVector> = rows.iter().map(|r| to_vector(&ambient, r)).collect();
        let s = Subspace::new(ambient.clone(), &vectors).unwrap();
        let orth = s.orthogonal();
        prop_assert_eq!(s.dim() + orth.dim(), ambient.len());
        prop_assert_eq!(&orth.orthogonal(), &s);
        // Every pairing between the two sides vanishes.
        for a in s.rows() {
            for b in orth.rows() {
                let mut dot = BigRational::zero();
                for (p, c) in a.iter() {
                    dot += c * b.coeff(p);
                }
                prop_assert!(dot.is_zero());
            }
        }
    }

    /// The stored basis is canonical: scaling generators and shuffling their
    /// order leaves the representation untouched.
    #[test]
    fn reduced_basis_is_invariant_under_generator_presentation(
        rows in rows_strategy(),
        scales in prop::collection::vec((1i64..=3, 1i64..=3, prop::bool::ANY), 5),
        rotate in 0usize..5,
    ) {
        let (_q, ambient) = parallel_ambient();
        let vectors: Vec<PathVector> = rows.iter().map(|r| to_vector(&ambient, r)).collect();
        let s = Subspace::new(ambient.clone(), &vectors).unwrap();

        let mut rescaled: Vec<PathVector> = vectors
            .iter()
            .zip(scales.iter().cycle())
            .map(|(v, (num, den, flip))| {
                let sign = if *flip { -1 } else { 1 };
                v.scaled(&rational(sign * num, *den))
            })
            .collect();
        if !rescaled.is_empty() {
            let k = rotate % rescaled.len();
            rescaled.rotate_left(k);
        }
        let t = Subspace::new(ambient, &rescaled).unwrap();
        prop_assert_eq!(s, t);
    }

    /// Kernels really solve the system, and rank plus nullity is the width.
    #[test]
    fn nullspace_rows_solve_the_system(rows in rows_strategy()) {
        let matrix: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|c| integer(*c)).collect())
            .collect();
        let rank = VecSubspace::new(WIDTH, &matrix).dim();
        let kernel = VecSubspace::nullspace_of(&matrix, WIDTH);
        prop_assert_eq!(rank + kernel.dim(), WIDTH);
        for v in kernel.rows() {
            for row in &matrix {
                let mut dot = BigRational::zero();
                for (a, b) in row.iter().zip(v) {
                    dot += a * b;
                }
                prop_assert!(dot.is_zero());
            }
        }
    }
}
