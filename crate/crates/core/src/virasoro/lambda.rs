//! The vacuum descendants `λ⁽ⁿ⁾`, built two independent ways.

use num_traits::Zero;

use crate::error::Result;
use crate::rational::{int, Rational};

use super::algebra::Normalizer;
use super::conformal::{alpha_coefficients, beta_coefficients};
use super::state::{CPolynomial, VirState};

fn split_by_weight(v: &VirState, max_weight: u32) -> Vec<VirState> {
    (0..=max_weight).map(|w| v.component(w)).collect()
}

/// `exp(x L_{-k}) v`, dropping everything above `max_weight`.
fn exp_mode(nz: &mut Normalizer, k: u32, x: &Rational, v: &VirState, max_weight: u32) -> VirState {
    let mut acc = v.clone();
    let mut term = v.clone();
    for n in 1.. {
        term = nz
            .apply_mode(-i64::from(k), &term)
            .truncate_weight(max_weight)
            .scale(&CPolynomial::constant(x / int(n)));
        if term.is_zero() {
            break;
        }
        acc.add_assign(&term);
    }
    acc
}

/// `λ⁽⁰⁾, …, λ⁽ᵐᵃˣ⁾` from the ordered product
/// `… exp(β₄ L₋₄) exp(β₂ L₋₂) 𝟙`.
///
/// Each new factor carries a larger mode than anything already present, so
/// the product is born in PBW order.
pub fn lambda_vector(max_weight: u32) -> Result<Vec<VirState>> {
    let betas = beta_coefficients((max_weight as usize).max(1))?;
    let mut nz = Normalizer::new();
    let mut v = VirState::vacuum();
    for k in 2..=max_weight {
        let beta = &betas[k as usize - 1];
        if !beta.is_zero() {
            v = exp_mode(&mut nz, k, beta, &v, max_weight);
        }
    }
    Ok(split_by_weight(&v, max_weight))
}

/// `λ⁽⁰⁾, …, λ⁽ᵐᵃˣ⁾` from `exp(Σ_{i≥1} α_i L₋ᵢ) 𝟙`, normal-ordering every
/// term of the exponential series.
pub fn lambda_vector_direct(max_weight: u32) -> Vec<VirState> {
    let alphas = alpha_coefficients((max_weight as usize).max(1));
    let mut nz = Normalizer::new();
    let mut acc = VirState::vacuum();
    let mut term = VirState::vacuum();
    for n in 1.. {
        let mut next = VirState::zero();
        for (i, a) in alphas.iter().enumerate() {
            let mode = i as i64 + 1;
            if a.is_zero() || mode > i64::from(max_weight) {
                continue;
            }
            let applied = nz.apply_mode(-mode, &term).truncate_weight(max_weight);
            next.add_assign(&applied.scale(&CPolynomial::constant(a.clone())));
        }
        term = next.scale(&CPolynomial::constant(Rational::new(1.into(), n.into())));
        if term.is_zero() {
            break;
        }
        acc.add_assign(&term);
    }
    split_by_weight(&acc, max_weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::virasoro::state::Partition;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn c(r: Rational) -> CPolynomial {
        CPolynomial::constant(r)
    }

    #[test]
    fn low_weights() {
        let l = lambda_vector(6).unwrap();
        assert_eq!(l[0], VirState::vacuum());
        assert_eq!(l[2], VirState::monomial(p(&[2]), c(rat(-1, 12))));
        assert_eq!(
            l[4],
            VirState::from_terms([(p(&[2, 2]), c(rat(1, 288))), (p(&[4]), c(rat(-1, 480)))])
        );
        assert_eq!(
            l[6],
            VirState::from_terms([
                (p(&[2, 2, 2]), c(rat(-1, 10368))),
                (p(&[4, 2]), c(rat(1, 5760))),
                (p(&[6]), c(rat(1, 12096))),
            ])
        );
        for odd in [1, 3, 5] {
            assert!(l[odd].is_zero());
        }
    }

    #[test]
    fn direct_weight_two() {
        let l = lambda_vector_direct(2);
        assert_eq!(l[0], VirState::vacuum());
        assert!(l[1].is_zero());
        assert_eq!(l[2], VirState::monomial(p(&[2]), c(rat(-1, 12))));
    }

    #[test]
    fn constructions_agree() {
        let a = lambda_vector(10).unwrap();
        let b = lambda_vector_direct(10);
        assert_eq!(a, b);
    }

    #[test]
    fn leading_coefficient() {
        let l = lambda_vector(10).unwrap();
        let b2 = rat(-1, 12);
        let mut fact = int(1);
        for n in 1..=5u32 {
            fact *= int(n as i64);
            let expect = num_traits::pow(b2.clone(), n as usize) / &fact;
            assert_eq!(l[2 * n as usize].coeff(&p(&vec![2; n as usize])), c(expect));
        }
    }
}
