//! Flat-band bosons on the line graph of the cubic torus, at desk scale and
//! in exact arithmetic.
//!
//! The crate builds the torus `Q³(L₁,L₂,L₃)` and its line graph, constructs
//! the localized signed face states spanning the flat band, enumerates and
//! counts 4-cycle decompositions exactly, evaluates many-boson Gram matrices
//! through Wick permanents, and compares every computed quantity against the
//! closed-form lower and upper bounds.
//!
//! Module map:
//!
//! * [`lattice`] — torus, incidence/hopping matrices, faces, face states
//! * [`exactalg`] — exact ranks, kernel bases, permanents, eigen cross-check
//! * [`decomp`] — tower construction, column rotations, exact cover search,
//!   2D layer packings
//! * [`manybody`] — product states, Gram ranks, rotated families, two-boson
//!   zero modes, dilution entropy
//! * [`bounds`] — bound formulas and the comparison report

pub mod bounds;
pub mod decomp;
pub mod exactalg;
pub mod lattice;
pub mod manybody;

pub use bounds::{assemble_report, BoundsReport, SpanRankEvidence};
pub use decomp::{
    count_decompositions, enumerate_decompositions, tower_decomposition, verify_decomposition,
    Decomposition, Packing2D, SearchBudget,
};
pub use exactalg::{IntMatrix, RankResult};
pub use lattice::{Axis, CubicTorus, Face, FaceId, FaceState, Plane, TorusSpec};
pub use manybody::{EntropyReport, FaceProductState};
