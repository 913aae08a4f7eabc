//! Perfect cochain complexes over `Λ(y1, y2)∗Q` in characteristic two,
//! where `Λ(y1, y2) ≅ F[(Z/2)^2]` and `Q` is trivial or cyclic of order 3
//! (so `Λ∗C3` is the group algebra of `A4`).
//!
//! A complex whose homology has total dimension four is determined up to
//! quasi-isomorphism by a triple `(l, L, J)`: its lowest homology degree, a
//! one-dimensional representation of `Q`, and a `Q`-invariant parameter
//! ideal in `F[x1, x2]`. [`bgg::classify`] computes the triple and
//! [`bgg::realize`] builds a complex from one.
//!
//! Module map:
//! - [`field`], [`linalg`]: GF(2)/GF(4) scalars and bit-packed linear algebra.
//! - [`skew`]: `Λ`, the automorphism `Ψ`, and `Λ∗Q`.
//! - [`complex`]: modules, complexes, homology with its `Q`-action.
//! - [`poly`], [`ideal`], [`enumerate`]: `S = F[x1, x2]`, ideals, Steenrod
//!   squares, and parameter-ideal enumeration.
//! - [`bgg`]: the BGG transform, classification and realization.
//! - [`specseq`]: the coradical-filtration spectral sequence.
//! - [`kzero`]: `K0(F[C3])` and the finiteness obstruction.
//! - [`io`]: JSON file formats; [`cli`]: the command-line front end.

pub mod bgg;
pub mod cli;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod ideal;
pub mod io;
pub mod kzero;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod skew;
pub mod specseq;
pub mod text;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use skew::Group;
