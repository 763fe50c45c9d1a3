//! Exact computation with quivers and path coalgebras.
//!
//! The crate provides, over the rationals and without any floating point:
//!
//! * quivers, paths, and the cell/tail combinatorics of a vertex subset;
//! * sparse rational path vectors and canonical reduced-row-echelon subspaces;
//! * admissible subcoalgebras of a path coalgebra with truncation-bounded
//!   closure, comultiplication and counit;
//! * localization at a vertex subset: the localized quiver, re-expression of
//!   localized elements, and the split/semicentral classification of the
//!   associated idempotent;
//! * the correspondence between admissible subcoalgebras and relation ideals,
//!   plus a bounded witness search for components that cannot come from a
//!   quotient algebra presentation;
//! * finite-dimensional right comodules with socle series, length vectors,
//!   the vertex-subset quotient functor and its cotensor section.
//!
//! All truncation-sensitive answers state their bound; nothing infinite is
//! ever claimed from bounded evidence.

pub mod coalgebra;
pub mod comodule;
pub mod error;
pub mod format;
pub mod linalg;
pub mod localization;
pub mod randgen;
pub mod relations;
pub mod quiver;

pub use error::Error;
