//! The Virasoro vacuum module with a symbolic central charge.
//!
//! States are combinations of PBW monomials `L₋k₁ … L₋k_m 𝟙` with
//! `k₁ ≥ … ≥ k_m ≥ 2` and coefficients in `ℚ[C]`.

mod algebra;
mod conformal;
mod lambda;
mod state;

pub use algebra::{apply_mode, Normalizer};
pub use conformal::{
    alpha_coefficients, beta_coefficients, beta_peeling, exp_minus_one, first_peeled_map,
    BetaPeeling,
};
pub use lambda::{lambda_vector, lambda_vector_direct};
pub use state::{CPolynomial, Partition, VirState};
