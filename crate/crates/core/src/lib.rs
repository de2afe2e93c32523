//! Exact range geometry for sampling, affine and Weyl-Heisenberg systems.
//!
//! Bands are finite unions of half-open rational boxes. Everything that
//! decides a verdict (multiplicities, supports, relations between ranges)
//! is computed in exact rational arithmetic; the floating-point parts are
//! the finite torus models in [`discrete`] and the correlation oracle in
//! [`generators::oracle`], which exist to cross-check the exact answers.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod band;
pub mod classify;
pub mod discrete;
pub mod error;
pub mod generators;
mod grid;
pub mod lattice;
pub mod rational;
pub mod torus;

pub use band::{BandRelation, BandSet, BoolOp, RationalBox};
pub use classify::{
    classify_bessel, classify_single, classify_union, Claim, CoordinateVerdict, Grade,
    GradedRelation, RangeKind, RangeRelation, UnionStatus, UnionVerdict,
};
pub use discrete::{
    build_model, collisions, cross_gram, frame_bounds_numeric, multiplex_roundtrip,
    projections_commutator, reconstruct_closed_form, reconstruct_least_squares, DiscreteModel,
    MuxOutcome, NumericBounds,
};
pub use error::{Error, Side};
pub use generators::oracle::{cross_correlation, Correlation, TestVector};
pub use generators::{
    affine_verdict, dilate_profile, eval_profile, fj_family, msf_orthogonality_check,
    periodization_sq, periodized_support, quasi_affine_report, wh_verdict, DisjointClaim,
    DisjointnessVerdict, Domain, Periodization, PeriodizedValues, PolyPiece, Polynomial,
    ProfileForm, QuasiAffineReport, QuasiAffineRow, SpectralProfile, SupportPair, VerdictStatus,
    WhRoute,
};
pub use lattice::{
    frame_bounds_exact, is_sampling_matrix, multiplicity, multiplicity_for_matrix,
    numeric_multiplicity, FrameBounds, Lattice, NumericGrid, RationalMatrix, SamplingCheck,
};
pub use num_complex::Complex64;
pub use rational::{format_rational, parse_rational, Rational};
pub use torus::TorusStep;
