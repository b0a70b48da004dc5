//! Exact-arithmetic blow-ups of affine toric surfaces along monomial
//! ideals.
//!
//! The crate has five layers:
//!
//! * [`lattice`] — rank-2 integer vectors, pointed cones, Hilbert bases,
//!   Hirzebruch–Jung continued fractions and GL(2,ℤ) normal forms;
//! * [`semigroup`] — finitely generated affine subsemigroups of ℤ² with
//!   exact membership, minimal generators, saturation and chart
//!   classification;
//! * [`blowup`] — the combinatorial blow-up of a monomial ideal: Newton
//!   polyhedron vertices, chart semigroups, gluing data, and the
//!   normalized blow-up as a fan refinement;
//! * [`matfact`] — sparse rational polynomials in three variables, the
//!   matrix-factorization pipeline for hypersurface singularities, and the
//!   monomialization that produces the derivation blow-up center of the
//!   surface `xz = y^{n+1}`;
//! * [`resolve`] — the iteration engine that blows up until every chart is
//!   smooth, assembles the global fan, and extracts the exceptional dual
//!   graph.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe for unrestricted concurrent use.

pub mod blowup;
pub mod error;
pub mod lattice;
pub mod matfact;
pub mod resolve;
pub mod semigroup;

pub use error::{Error, Result};
pub use lattice::{Cone2, LatticeVec, QuotientType};
pub use semigroup::{AffineSemigroup, ChartClass};
