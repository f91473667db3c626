//! Closed-form genus-two partition functions of Heisenberg theories and
//! their `q₂ → 0` limits.

use crate::error::Result;
use crate::rational::{int, rat, Rational};
use crate::series::{eta_normalized, BiSeries, QSeries, Ring, Var};
use crate::sewing::{
    a2_degenerate, a_matrix, bivariate_matrices, constant_entries, degenerate_tau, effective_size,
    log_det_i_minus, period_matrix, EpsSeries,
};

/// Rank and lattice pairings of a pair of Heisenberg modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePair {
    pub rank: u32,
    pub alpha_sq: Rational,
    pub beta_sq: Rational,
    pub alpha_dot_beta: Rational,
}

impl ModulePair {
    pub fn vacuum(rank: u32) -> Self {
        ModulePair {
            rank,
            alpha_sq: int(0),
            beta_sq: int(0),
            alpha_dot_beta: int(0),
        }
    }

    /// `β = 0`, so only `α·α` is nonzero.
    pub fn first_only(rank: u32, alpha_sq: Rational) -> Self {
        ModulePair {
            alpha_sq,
            ..Self::vacuum(rank)
        }
    }

    /// Whether `(α·β)² ≤ (α·α)(β·β)`; advisory only.
    pub fn gram_ok(&self) -> bool {
        &self.alpha_dot_beta * &self.alpha_dot_beta <= &self.alpha_sq * &self.beta_sq
    }
}

fn half(r: &Rational) -> Rational {
    r / int(2)
}

/// `η(q)^(-r)` with its `q^(-r/24)` prefactor in the offset.
pub fn inverse_eta_power(var: Var, rank: u32, trunc: usize) -> QSeries {
    let inv = eta_normalized(trunc).inv().expect("η has unit constant").with_var(var);
    let mut acc = QSeries::one(var, trunc);
    for _ in 0..rank {
        acc = &acc * &inv;
    }
    acc
}

/// `exp(-(r/2) · log)`.
fn det_power<R: Ring>(log_det: &EpsSeries<R>, rank: u32) -> Result<EpsSeries<R>> {
    log_det.scale(&-half(&Rational::from_integer(rank.into()))).exp()
}

/// `(η(q₁) η(q₂))⁻¹ det(I − A₁A₂)^(-1/2)` as a joint series.
pub fn z2_heisenberg(q1_trunc: usize, q2_trunc: usize, eps_trunc: u32, size: Option<usize>) -> Result<EpsSeries<BiSeries>> {
    z2_module_pair(&ModulePair::vacuum(1), q1_trunc, q2_trunc, eps_trunc, size)
}

/// `Z_M^(2)^r · q₁^(α²/2) q₂^(β²/2) · exp(½(α² d11 + β² d22 + 2 α·β d12))`.
pub fn z2_module_pair(
    p: &ModulePair,
    q1_trunc: usize,
    q2_trunc: usize,
    eps_trunc: u32,
    size: Option<usize>,
) -> Result<EpsSeries<BiSeries>> {
    let n = effective_size(size, eps_trunc)?;
    let (a1, a2) = bivariate_matrices(q1_trunc, q2_trunc, eps_trunc, n);
    let det = det_power(&log_det_i_minus(&a1, &a2, eps_trunc)?, p.rank)?;
    let etas = BiSeries::outer(
        &inverse_eta_power(Var::Q1, p.rank, q1_trunc),
        &inverse_eta_power(Var::Q2, p.rank, q2_trunc),
    );
    let mut z = det.times_coeff(&etas);
    let has_lattice = [&p.alpha_sq, &p.beta_sq, &p.alpha_dot_beta]
        .iter()
        .any(|x| !num_traits::Zero::is_zero(*x));
    if has_lattice {
        let pd = period_matrix(q1_trunc, q2_trunc, eps_trunc, Some(n))?;
        let exponent = pd
            .d11
            .scale(&p.alpha_sq)
            .add(&pd.d22.scale(&p.beta_sq))
            .add(&pd.d12.scale(&(int(2) * &p.alpha_dot_beta)))
            .scale(&rat(1, 2));
        let prefactor = BiSeries::one((q1_trunc, q2_trunc)).shift_offsets(&half(&p.alpha_sq), &half(&p.beta_sq));
        z = z.mul_trunc(&exponent.exp()?).times_coeff(&prefactor);
    }
    z.check_even()?;
    Ok(z)
}

/// `log det(I − A₁ A₂(0))` as a `q1`-series in `ε`.
pub fn degenerate_log_det(q_trunc: usize, eps_trunc: u32, size: Option<usize>) -> Result<EpsSeries<QSeries>> {
    let n = effective_size(size, eps_trunc)?;
    let a1 = a_matrix(1, n, eps_trunc, q_trunc);
    let a2 = constant_entries(&a2_degenerate(n, eps_trunc), &QSeries::zero(Var::Q1, q_trunc));
    log_det_i_minus(&a1, &a2, eps_trunc)
}

/// `det(I − A₁A₂(0))^(-r/2)`.
pub fn degenerate_det_factor(rank: u32, q_trunc: usize, eps_trunc: u32, size: Option<usize>) -> Result<EpsSeries<QSeries>> {
    det_power(&degenerate_log_det(q_trunc, eps_trunc, size)?, rank)
}

/// `lim_{q₂→0} q₂^(r/24) Z^(2)_{α,0}` by substitution: `A₂ → A₂(0)`, the
/// `η(q₂)^(-r)` prefactor is cancelled, and `d11 → δ`.
pub fn z2_module_degenerate(p: &ModulePair, q_trunc: usize, eps_trunc: u32, size: Option<usize>) -> Result<EpsSeries<QSeries>> {
    let det = degenerate_det_factor(p.rank, q_trunc, eps_trunc, size)?;
    let mut z = det.times_coeff(&inverse_eta_power(Var::Q1, p.rank, q_trunc));
    if !num_traits::Zero::is_zero(&p.alpha_sq) {
        let delta = degenerate_tau(q_trunc, eps_trunc, size)?;
        let lattice = delta.scale(&half(&p.alpha_sq)).exp()?;
        let prefactor = QSeries::one(Var::Q1, q_trunc).with_offset(half(&p.alpha_sq));
        z = z.mul_trunc(&lattice).times_coeff(&prefactor);
    }
    Ok(z)
}

/// `lim_{q₂→0} q₂^(1/24) Z_M^(2)`.
pub fn z2_heisenberg_degenerate(q_trunc: usize, eps_trunc: u32, size: Option<usize>) -> Result<EpsSeries<QSeries>> {
    z2_module_degenerate(&ModulePair::vacuum(1), q_trunc, eps_trunc, size)
}

/// `f(q)` at `q = q₁ e^δ`, i.e. `Σ_l δ^l/l! ∂^l f(q₁)`.
pub fn taylor_shift(f: &QSeries, delta: &EpsSeries<QSeries>) -> EpsSeries<QSeries> {
    let eps_trunc = delta.eps_trunc();
    let mut acc = EpsSeries::constant(f.clone(), eps_trunc);
    let mut deriv = f.clone();
    for l in 1..=eps_trunc {
        deriv = deriv.qd();
        let term = delta.divided_power(l);
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term.times_coeff(&deriv));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_term_is_the_torus_product() {
        let z = z2_heisenberg(3, 3, 2, None).unwrap();
        let expect = BiSeries::outer(&inverse_eta_power(Var::Q1, 1, 3), &inverse_eta_power(Var::Q2, 1, 3));
        assert_eq!(z.coeff(0), expect);
        assert_eq!(z.coeff(0).offsets(), (&rat(-1, 24), &rat(-1, 24)));
    }

    #[test]
    fn module_pair_reduces_to_heisenberg() {
        let a = z2_module_pair(&ModulePair::vacuum(1), 2, 2, 2, None).unwrap();
        let b = z2_heisenberg(2, 2, 2, None).unwrap();
        assert_eq!(a, b);
        let p = ModulePair::first_only(1, int(1));
        let z = z2_module_pair(&p, 2, 2, 2, None).unwrap();
        let expect = BiSeries::outer(&inverse_eta_power(Var::Q1, 1, 2), &inverse_eta_power(Var::Q2, 1, 2))
            .shift_offsets(&rat(1, 2), &int(0));
        assert_eq!(z.coeff(0), expect);
    }

    #[test]
    fn bivariate_limit_matches_substitution() {
        let (q, e) = (3, 4);
        for p in [ModulePair::vacuum(1), ModulePair::first_only(1, int(1)), ModulePair::first_only(2, rat(1, 4))] {
            let full = z2_module_pair(&p, q, 2, e, None).unwrap();
            let shift = rat(p.rank as i64, 24);
            let limit = full.map(&QSeries::zero(Var::Q1, q), |b| {
                b.shift_offsets(&int(0), &shift).q2_constant_term().unwrap()
            });
            let sub = z2_module_degenerate(&p, q, e, None).unwrap();
            assert_eq!(limit, sub, "{p:?}");
        }
    }

    #[test]
    fn taylor_shift_of_monomial_is_exponential() {
        // q^(1/2) at q = q₁ e^δ is q₁^(1/2) e^(δ/2).
        let delta = degenerate_tau(4, 6, None).unwrap();
        let f = QSeries::one(Var::Q1, 4).with_offset(rat(1, 2));
        let shifted = taylor_shift(&f, &delta);
        let direct = delta.scale(&rat(1, 2)).exp().unwrap().times_coeff(&f);
        assert_eq!(shifted, direct);
    }
}
