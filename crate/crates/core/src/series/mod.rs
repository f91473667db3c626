//! Exact truncated formal power series and the modular-form expansions built
//! on them.

mod bivariate;
pub mod quasimodular;
mod qseries;
mod ring;
pub mod special;
mod symbolic;
mod text;

pub use bivariate::BiSeries;
pub use quasimodular::{monomials, to_quasimodular, Monomial, QuasiModularPoly};
pub use qseries::{QSeries, Var};
pub use ring::Ring;
pub use special::{bernoulli, bernoulli_numbers, eisenstein, eta_normalized, euler_product, EisensteinCache};
pub use symbolic::CSeries;
pub use text::JsonCoeff;
