//! Parameters of the conformal map `φ(z) = e^z - 1`.
//!
//! Two descriptions are computed: the single exponential
//! `exp(Σ_{i≥1} α_i z^(i+1) ∂_z) z = φ(z)`, and the factorization of `φ`
//! into the elementary maps `w_k(z) = z (1 - k β_k z^k)^(-1/k)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::{QSeries, Var};

/// `e^z - 1` known modulo `z^(trunc+1)`.
pub fn exp_minus_one(trunc: usize) -> QSeries {
    let e = QSeries::variable(Var::Z, trunc).exp().expect("z has zero constant term");
    &e - &QSeries::one(Var::Z, trunc)
}

// The derivation `Σ a_i z^(i+1) ∂_z` applied to a coefficient vector.
fn derivation(alpha: &[Rational], f: &[Rational]) -> Vec<Rational> {
    let t = f.len() - 1;
    let mut out = vec![Rational::zero(); t + 1];
    for (m, fm) in f.iter().enumerate().skip(1) {
        if fm.is_zero() {
            continue;
        }
        let d = fm * int(m as i64);
        // z^(i+1) · m f_m z^(m-1) = m f_m z^(m+i)
        for (i, a) in alpha.iter().enumerate().skip(1) {
            if m + i > t {
                break;
            }
            out[m + i] += a * &d;
        }
    }
    out
}

fn exp_derivation_on_z(alpha: &[Rational], trunc: usize) -> Vec<Rational> {
    let mut term = vec![Rational::zero(); trunc + 1];
    term[1] = Rational::one();
    let mut acc = term.clone();
    for n in 1..=trunc {
        term = derivation(alpha, &term)
            .into_iter()
            .map(|c| c / int(n as i64))
            .collect();
        if term.iter().all(Zero::is_zero) {
            break;
        }
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += t;
        }
    }
    acc
}

/// `α_1, …, α_max` (index `i - 1` holds `α_i`).
///
/// The coefficient of `z^(k+1)` in `exp(D) z` is `α_k` plus a polynomial in
/// the earlier `α`s, so the unknowns are fixed one order at a time.
pub fn alpha_coefficients(max_i: usize) -> Vec<Rational> {
    let trunc = max_i + 1;
    let target = exp_minus_one(trunc);
    // alpha[0] is a placeholder for the absent z ∂_z generator.
    let mut alpha = vec![Rational::zero(); max_i + 1];
    for k in 1..=max_i {
        let got = exp_derivation_on_z(&alpha, k + 1);
        alpha[k] = target.coeff(k + 1) - &got[k + 1];
    }
    alpha.split_off(1)
}

/// `w_k⁻¹(y) = y (1 + k β y^k)^(-1/k)` as a series in `y`.
fn w_inverse(k: usize, beta: &Rational, trunc: usize) -> QSeries {
    let mut inner = QSeries::one(Var::Z, trunc.saturating_sub(1));
    if k < trunc {
        inner = &inner
            + &QSeries::monomial(Var::Z, k, int(k as i64) * beta, trunc - 1);
    }
    let powered = inner.pow(&Rational::new((-1).into(), (k as i64).into())).unwrap();
    &QSeries::variable(Var::Z, trunc) * &powered
}

/// The peeled maps `g_0 = φ`, `g_k = w_k⁻¹ ∘ g_{k-1}` together with `β_k`.
pub struct BetaPeeling {
    /// `β_1, …, β_max` (index `k - 1`).
    pub betas: Vec<Rational>,
    /// `g_0, g_1, …, g_max`.
    pub maps: Vec<QSeries>,
}

/// Factorizes `φ` as `… ∘ w_3 ∘ w_2 ∘ w_1`, returning every intermediate map.
pub fn beta_peeling(max_k: usize) -> Result<BetaPeeling> {
    let trunc = max_k + 1;
    let mut g = exp_minus_one(trunc);
    let mut betas = Vec::with_capacity(max_k);
    let mut maps = vec![g.clone()];
    for k in 1..=max_k {
        let beta = g.coeff(k + 1).clone();
        if k >= 3 && k % 2 == 1 && !beta.is_zero() {
            return Err(Error::OddBeta { k, value: crate::rational::format(&beta) });
        }
        g = w_inverse(k, &beta, trunc).compose(&g)?;
        betas.push(beta);
        maps.push(g.clone());
    }
    Ok(BetaPeeling { betas, maps })
}

/// `β_1, …, β_max` (index `k - 1` holds `β_k`).
pub fn beta_coefficients(max_k: usize) -> Result<Vec<Rational>> {
    Ok(beta_peeling(max_k)?.betas)
}

/// `w_1⁻¹ ∘ φ`, which is `2 tanh(z/2)`.
pub fn first_peeled_map(trunc: usize) -> QSeries {
    let phi = exp_minus_one(trunc);
    w_inverse(1, &Rational::new(1.into(), 2.into()), trunc)
        .compose(&phi)
        .expect("φ(0) = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn alpha_low_orders() {
        let a = alpha_coefficients(3);
        assert_eq!(a, vec![rat(1, 2), rat(-1, 12), rat(1, 48)]);
    }

    #[test]
    fn alpha_reproduces_the_map() {
        let a = alpha_coefficients(9);
        let mut with_zero = vec![Rational::zero()];
        with_zero.extend(a);
        let lhs = exp_derivation_on_z(&with_zero, 10);
        assert_eq!(lhs.as_slice(), exp_minus_one(10).coeffs());
    }

    #[test]
    fn beta_table() {
        let b = beta_coefficients(14).unwrap();
        let even: Vec<Rational> = (2..=14).step_by(2).map(|k| b[k - 1].clone()).collect();
        assert_eq!(
            even,
            vec![
                rat(-1, 12),
                rat(-1, 480),
                rat(1, 12096),
                rat(-1, 138240),
                rat(1, 2280960),
                rat(-389, 13586227200),
                rat(1, 464486400),
            ]
        );
        assert_eq!(b[0], rat(1, 2));
        for k in (3..=14).step_by(2) {
            assert!(b[k - 1].is_zero());
        }
    }

    #[test]
    fn tanh_intermediate() {
        let g1 = first_peeled_map(5);
        assert_eq!(
            g1.coeffs(),
            &[
                Rational::zero(),
                Rational::one(),
                Rational::zero(),
                rat(-1, 12),
                Rational::zero(),
                rat(1, 120)
            ]
        );
        assert_eq!(beta_peeling(4).unwrap().maps[1], g1);
    }

    #[test]
    fn each_peel_kills_its_coefficient() {
        let p = beta_peeling(10).unwrap();
        for (k, g) in p.maps.iter().enumerate().skip(1) {
            assert_eq!(g.coeff(1), &Rational::one());
            for j in 2..=k + 1 {
                assert!(g.coeff(j).is_zero(), "g_{k} has z^{j}");
            }
        }
    }

    #[test]
    fn w_inverse_inverts_w() {
        let beta = rat(-1, 12);
        let w_inv = w_inverse(2, &beta, 9);
        let w = w_inv.revert().unwrap();
        // w(z) = z (1 - 2β z²)^(-1/2)
        let direct = &QSeries::variable(Var::Z, 9)
            * &(&QSeries::one(Var::Z, 8) - &QSeries::monomial(Var::Z, 2, int(2) * &beta, 8))
                .pow(&rat(-1, 2))
                .unwrap();
        assert_eq!(w, direct);
    }
}
