//! Sewing two tori: moment matrices, their log-determinant and resolvent,
//! the genus-two period data and the degenerate modulus.

mod eps;
mod matrix;
mod period;

pub use eps::EpsSeries;
pub use matrix::{
    a2_degenerate, a_matrix, constant_entries, effective_size, log_det_i_minus, resolvent_11,
    resolvent_11_with, AMatrix,
};
pub use period::{bivariate_matrices, degenerate_tau, domain_check, period_matrix, PeriodData};
