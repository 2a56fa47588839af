//! Numerical laboratory for the boundary behaviour of bounded analytic
//! functions in the unit disc: Blaschke products, Poisson and Herglotz
//! integrals, inner–outer factors, Frostman sums, summable series
//! constructions, and a raster classifier for Arakeljan sets.
//!
//! The numeric modules are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar for the common cases.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arakeljan;
pub mod blaschke;
pub mod constructions;
pub mod error;
pub mod factorization;
pub mod frostman;
pub mod function;
pub mod herglotz;
pub mod io;
pub mod point;
pub mod probe;
pub mod scalar;
pub mod selftest;
pub mod unitdisc;

pub use num_complex::Complex;

pub use blaschke::{eval_factor, factor_at, BlaschkeProduct, TruncatedValue, Truncation};
pub use constructions::{
    build_bgh_sum, build_bgh_sum_with_depths, build_lohwater_piranian,
    build_lohwater_piranian_with_depths, eval_series, SeriesSpec, SeriesTerm, SeriesValue,
    WeightRule,
};
pub use error::{Error, Result};
pub use factorization::{eval_inner_outer, Factor, InnerFunctionSpec};
pub use frostman::{
    frostman_classify, frostman_partial, frostman_profile, FrostmanPolicy, FrostmanProfile,
    FrostmanVerdict,
};
pub use function::DiscFunction;
pub use herglotz::{
    approx_identity_report, eval_outer, eval_singular_inner, poisson_integral, poisson_kernel,
    ApproxIdentityReport, BoundaryFunction, ClosedForm, OuterDensity, OuterFactor, Quadrature,
    SingularAtoms,
};
pub use point::DiscPoint;
pub use probe::{
    boundary_scan, limit_probe, radial_trace, ApproachPath, BoundaryScan, LimitProbeReport,
    PathFamily, PathLimit, RadialTrace,
};
pub use scalar::Real;
pub use unitdisc::{
    blaschke_condition_sum, gen_accumulation_sequence, gen_radial_sequence, BlaschkeCondition,
    CircleArc, ClosedSetSpec, ConvergenceBasis, SequenceSource, ZeroSequence,
};

pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;
pub type DiscPointF64 = DiscPoint<f64>;
pub type DiscPointF32 = DiscPoint<f32>;
pub type ZeroSequenceF64 = ZeroSequence<f64>;
pub type ZeroSequenceF32 = ZeroSequence<f32>;
pub type BlaschkeProductF64 = BlaschkeProduct<f64>;
pub type BlaschkeProductF32 = BlaschkeProduct<f32>;
pub type ClosedSetSpecF64 = ClosedSetSpec<f64>;
pub type ClosedSetSpecF32 = ClosedSetSpec<f32>;
pub type BoundaryFunctionF64 = BoundaryFunction<f64>;
pub type BoundaryFunctionF32 = BoundaryFunction<f32>;
pub type SingularAtomsF64 = SingularAtoms<f64>;
pub type SingularAtomsF32 = SingularAtoms<f32>;
pub type InnerFunctionSpecF64 = InnerFunctionSpec<f64>;
pub type InnerFunctionSpecF32 = InnerFunctionSpec<f32>;
pub type SeriesSpecF64 = SeriesSpec<f64>;
pub type SeriesSpecF32 = SeriesSpec<f32>;
