//! Convolution, rearrangement and Lorentz-norm calculus on finite
//! commutative hypergroups, plus a property-based numerical verification
//! suite for the classical convolution inequalities in this setting:
//! truncation bounds, the O'Neil rearrangement inequalities, Hardy's
//! inequality, the generalized Young inequality with constant `3p₀`, and
//! Lorentz/Lebesgue boundedness of Riesz potentials up to
//! Hardy–Littlewood–Sobolev.
//!
//! * [`hypergroup`] — structure tensors, axiom validation, Haar measure,
//!   generalized translation and convolution.
//! * [`families`] — guaranteed-valid instance generators.
//! * [`step`] — exact step-function calculus: distribution functions,
//!   decreasing rearrangements, maximal functions, tail integrals.
//! * [`norms`] — Lebesgue and Lorentz functionals, weak norms, embedding
//!   gaps.
//! * [`potential`] — quasi-metrics, ball growth, Riesz kernels, fractional
//!   integrals.
//! * [`verify`] — per-inequality checks and the deterministic suite runner.
//! * [`instance`] — JSON document formats for instances, functions, and
//!   reports.

pub mod error;
pub mod families;
pub mod hypergroup;
pub mod instance;
pub mod norms;
pub mod potential;
pub mod quad;
pub mod step;
pub mod verify;

pub use error::{Error, Result};
pub use families::{build_family, Family, FamilyKind, GroupTable};
pub use hypergroup::{
    compute_haar, invariance_residual, AxiomReport, HaarWeights, HypergroupTable, SampledFunction,
};
pub use norms::{embedding_gap, lebesgue_norm, lorentz_norm, LorentzParams};
pub use potential::{
    riesz_kernel, riesz_potential, CenterPolicy, GrowthSpace, QuasiMetric, RieszParams,
};
pub use step::{
    distribution, maximal, rearrangement, tail_product_maximal, tail_product_star,
    MaximalFunction, PiecewiseConstant, StepFunction,
};
pub use verify::{run_suite, CheckResult, SuiteConfig, SuiteError, SuiteReport};
