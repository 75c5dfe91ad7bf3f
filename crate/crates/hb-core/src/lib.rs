//! Numerical toolkit for de Branges-Rovnyak spaces H(b) with a non-extreme
//! symbol b.
//!
//! Everything is spectral: functions live as Taylor coefficients up to a
//! truncation degree and as samples on a uniform grid of roots of unity,
//! with FFTs moving between the two pictures. The central objects are
//! [`PythagoreanPair`] (a symbol together with its outer mate) and
//! [`HbElement`] (a function together with the auxiliary function that
//! certifies membership and carries the norm). On top of those sit
//! reproducing kernels, Clark densities, shift norms, and the
//! completeness and cyclicity experiments in [`completeness`].
//!
//! [`verify::run_suite`] checks the whole stack against closed-form
//! oracles and recorded baselines.

mod circle;
mod clark;
mod element;
mod error;
mod fft;
mod grid;
mod hardy;
mod kernel;
mod lambda;
mod outer;
mod pair;
mod preset;
mod report;
mod shift;
mod span;

pub mod completeness;
pub mod verify;

pub use circle::{
    analyze, cauchy_boundary_identity_residual, cauchy_transform, conjugate_function,
    distribution_profile, riesz_project, toeplitz_apply, BoundaryFunction, DistributionProfile,
    CAUCHY_DELTA,
};
pub use clark::{clark, clark_isometry, ClarkData, ClarkIsometryCheck};
pub use completeness::{
    a_density_experiment, classify_one_minus_cb, completeness_experiment, cyclicity_residual,
    gr_approximant, gr_series, hypothesis_bf_bounded, named_target, shift_recurrence_check,
    span_residual, BfBoundedCheck, Classification, GrCheck, OneMinusCbCase, SpanResidual,
};
pub use element::{hb_inner, lift, HbElement, MEMBERSHIP_GATE};
pub use error::{HbError, Result};
pub use grid::{Grid, DEFAULT_EPS_FLOOR, DEFAULT_LAMBDA_MAX};
pub use hardy::HardyFunction;
pub use kernel::{eval_functionals, kernel, product_kernel_lift, KernelKind};
pub use lambda::{blaschke_partial_sums, LambdaSequence};
pub use outer::{outer_defect, outer_from_modulus};
pub use pair::{mate, PythagoreanPair};
pub use preset::Preset;
pub use report::{CompletenessReport, ReportRow};
pub use shift::{
    finite_section_shift_norm, finite_section_shift_norms, monomial_lifts, shift_apply,
};
pub use span::{gram, gram_condition, ILL_CONDITION_LIMIT};
pub use verify::{render_table, run_suite, standard_presets, CheckRow};
