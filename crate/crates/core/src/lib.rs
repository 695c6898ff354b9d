//! Vector-valued harmonic analysis on compact groups.
//!
//! The crate works with functions `f: G -> E` where `G` is a concrete compact
//! group (a finite group given by tables, the circle, or SU(2)) and `E` is
//! complex `m`-space with a selectable `l^p` norm. It provides
//!
//! * groups with a truncated unitary dual and an exact Haar quadrature rule
//!   ([`group`]),
//! * the forward transform, the inversion series and the spectral `S_p` norms
//!   ([`fourier`]),
//! * weight sequences, the Bessel-potential Sobolev norm `H^s_gamma`, Lebesgue
//!   and sup norms, and the constants of the embedding inequalities
//!   ([`sobolev`]),
//! * a seeded property-checking harness for every embedding inequality
//!   ([`verify`]).
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]
// `!(x >= y)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub use error::{Error, Result};

pub mod fourier;
pub mod group;
pub mod linalg;
pub mod sobolev;
pub mod verify;

pub use fourier::{
    forward_transform, inverse_transform, random_band_limited, s_p_norm, AmplitudeLaw, ENorm,
    FourierCoefficients, VectorFunction,
};
pub use group::{
    make_group, orthogonality_selftest, DualWindow, Group, GroupElement, GroupSpec, Irrep, Label,
    OrthogonalityReport, QuadratureRule,
};
pub use num_complex::Complex;
pub use sobolev::{
    embedding_constant_c, exponents, h_s_norm, l_p_norm, lq_bound_constant, summability_check,
    sup_norm, ConstantEstimate, SobolevParams, SummabilityReport, Verdict, WeightSequence,
};
pub use verify::{
    run_suite, CheckSummary, InequalityRecord, ReportMeta, SuiteConfig, SuiteGroup,
    VerificationReport, WeightChoice,
};

/// Complex scalar used throughout.
pub type C64 = Complex<f64>;
