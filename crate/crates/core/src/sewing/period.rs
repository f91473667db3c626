//! Genus-two period data and the modulus of the degenerate torus.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::Result;
use crate::rational::Rational;
use crate::series::{BiSeries, QSeries, Ring, Var};

use super::eps::EpsSeries;
use super::matrix::{a2_degenerate, a_matrix, constant_entries, effective_size, resolvent_11_with, AMatrix};

/// `d11 = 2πi(Ω₁₁ − τ₁)`, `d22 = 2πi(Ω₂₂ − τ₂)`, `d12 = 2πi Ω₁₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodData {
    pub d11: EpsSeries<BiSeries>,
    pub d22: EpsSeries<BiSeries>,
    pub d12: EpsSeries<BiSeries>,
}

/// The two moment matrices lifted to joint `(q1, q2)` series.
pub fn bivariate_matrices(
    q1_trunc: usize,
    q2_trunc: usize,
    eps_trunc: u32,
    size: usize,
) -> (AMatrix<BiSeries>, AMatrix<BiSeries>) {
    let proto = BiSeries::zero((q1_trunc, q2_trunc));
    let a1 = a_matrix(1, size, eps_trunc, q1_trunc).map(&proto, |s| BiSeries::from_q1(s, q2_trunc));
    let a2 = a_matrix(2, size, eps_trunc, q2_trunc).map(&proto, |s| BiSeries::from_q2(s, q1_trunc));
    (a1, a2)
}

/// `ε · X`, kept at the requested order.
fn times_eps<R: Ring>(x: &EpsSeries<R>, eps_trunc: u32) -> EpsSeries<R> {
    x.shift_eps(1).truncate_eps(eps_trunc)
}

pub fn period_matrix(
    q1_trunc: usize,
    q2_trunc: usize,
    eps_trunc: u32,
    size: Option<usize>,
) -> Result<PeriodData> {
    let size = effective_size(size, eps_trunc)?;
    let (a1, a2) = bivariate_matrices(q1_trunc, q2_trunc, eps_trunc, size);
    let r11 = resolvent_11_with(Some(&a2), &a1, &a2, eps_trunc)?;
    let r22 = resolvent_11_with(Some(&a1), &a2, &a1, eps_trunc)?;
    let r12 = resolvent_11_with(None, &a1, &a2, eps_trunc)?;
    Ok(PeriodData {
        d11: times_eps(&r11, eps_trunc),
        d22: times_eps(&r22, eps_trunc),
        d12: times_eps(&r12, eps_trunc).scale(&-Rational::from_integer(1.into())),
    })
}

/// `δ = 2πi(τ − τ₁) = ε (A₂(0) (I − A₁A₂(0))⁻¹)(1,1)` as a `q1`-series in `ε`.
pub fn degenerate_tau(q1_trunc: usize, eps_trunc: u32, size: Option<usize>) -> Result<EpsSeries<QSeries>> {
    let size = effective_size(size, eps_trunc)?;
    let a1 = a_matrix(1, size, eps_trunc, q1_trunc);
    let a2 = constant_entries(&a2_degenerate(size, eps_trunc), &QSeries::zero(Var::Q1, q1_trunc));
    let r = resolvent_11_with(Some(&a2), &a1, &a2, eps_trunc)?;
    Ok(times_eps(&r, eps_trunc))
}

const SCAN: i32 = 20;

/// `min |2πi(m + nτ)|` over nonzero lattice points with `|m|, |n| ≤ 20`, for
/// `q = e^(2πiτ)`.
fn lattice_distance(q: Complex64) -> f64 {
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    if q.norm() == 0.0 {
        // τ → i∞: only the n = 0 points stay at finite distance.
        return two_pi_i.norm();
    }
    let tau = q.ln() / two_pi_i;
    let mut best = f64::INFINITY;
    for m in -SCAN..=SCAN {
        for n in -SCAN..=SCAN {
            if m == 0 && n == 0 {
                continue;
            }
            let d = (two_pi_i * (Complex64::new(m as f64, 0.0) + tau * n as f64)).norm();
            best = best.min(d);
        }
    }
    best
}

/// Whether `(q1, q2, ε)` lies in the sewing domain `|ε| < D(q1) D(q2) / 4`.
/// Numerical and advisory; the exact series never depend on it.
pub fn domain_check(q1: (f64, f64), q2: (f64, f64), eps: (f64, f64)) -> bool {
    let (q1, q2, eps) = (
        Complex64::new(q1.0, q1.1),
        Complex64::new(q2.0, q2.1),
        Complex64::new(eps.0, eps.1),
    );
    if q1.norm() >= 1.0 || q2.norm() >= 1.0 {
        return false;
    }
    if eps.is_zero() {
        return true;
    }
    eps.norm() < lattice_distance(q1) * lattice_distance(q2) / 4.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::series::eisenstein;

    #[test]
    fn tau_leading_terms() {
        let d = degenerate_tau(6, 6, None).unwrap();
        let e2 = eisenstein(2, 6).unwrap().with_var(Var::Q1);
        for odd_or_zero in [0, 1, 3, 5] {
            assert!(d.coeff(odd_or_zero).is_zero());
        }
        assert_eq!(d.coeff(2), QSeries::constant(Var::Q1, rat(-1, 12), 6));
        assert_eq!(d.coeff(4), e2.scale(&rat(1, 144)));
        assert!(d.check_even().is_ok());
    }

    #[test]
    fn period_leading_terms_and_symmetry() {
        let p = period_matrix(3, 3, 4, None).unwrap();
        assert!(p.d11.coeff(0).is_zero());
        let one = BiSeries::one((3, 3));
        assert_eq!(p.d12.coeff(1), one.scale(&int(-1)));
        // d11 starts with ε · Ã₂(1,1) = ε² E₂(q₂)
        let e2 = eisenstein(2, 3).unwrap().with_var(Var::Q2);
        assert_eq!(p.d11.coeff(2), BiSeries::from_q2(&e2, 3));
        let swapped = p.d11.map(&BiSeries::zero((3, 3)), BiSeries::swap);
        assert_eq!(swapped, p.d22);
    }

    #[test]
    fn domain_examples() {
        let q = (-2.0 * std::f64::consts::PI).exp();
        assert!(domain_check((q, 0.0), (q, 0.0), (1e-6, 0.0)));
        assert!(!domain_check((q, 0.0), (q, 0.0), (100.0, 0.0)));
        assert!(domain_check((0.9, 0.0), (0.0, 0.9), (0.0, 0.0)));
        assert!(!domain_check((1.5, 0.0), (0.1, 0.0), (0.0, 0.0)));
    }
}
