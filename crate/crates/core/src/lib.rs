//! Weighted power means, mixed-mean increments, and numerical certification
//! of the mixed arithmetic-geometric mean inequality
//!
//! ```text
//! W_{n-1} (G_{n-1}(A) - A_{n-1}(G)) <= W_n (G_n(A) - A_n(G))
//! ```
//!
//! through its reduction to a box-constrained maximization.
//!
//! All routines are pure functions of their inputs and safe to call from
//! many threads at once.

pub mod certificate;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod functionals;
pub mod means;
pub mod reduction;
pub mod search;

pub use certificate::{certify, Certificate, NumericMax, Route};
pub use conditions::{
    critical_weight, d_zero, existence_check, extended_conditions, holland_condition,
    nanjundiah_condition, ConditionReport, Margin,
};
pub use error::{Error, Result};
pub use functionals::{popoviciu_increment, rado_increment, rado_value, ratio_form_lhs};
pub use means::{
    identity_residuals, mixed_mean, partial_mean_sequence, power_mean, Exponent,
    PartialMeanSequence, SampleVector, WeightSequence,
};
pub use reduction::{
    boundary_bound, eliminate_last, interior_bound, objective_f, objective_g, stationary_analysis,
    x_to_y, y_to_x, Elimination, StationaryPoint, YPoint,
};
pub use search::{
    grid_max_f, violation_search, weight_scan, ScanRow, SearchConfig, SearchPoint, SearchResult,
};
