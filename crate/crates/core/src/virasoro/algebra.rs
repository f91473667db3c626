//! Normal ordering of Virasoro modes acting on the vacuum module.

use std::collections::HashMap;

use crate::rational::Rational;

use super::state::{CPolynomial, Partition, VirState};

/// `C (n³ - n) / 12`, the central term of `[L_n, L_{-n}]`.
fn central_term(n: i64) -> CPolynomial {
    CPolynomial::monomial(1, Rational::new((n * n * n - n).into(), 12.into()))
}

/// Memoized evaluator of `L_n · (PBW monomial)`.
///
/// The cache is owned by the value, so each computation session keeps its
/// own table.
#[derive(Default)]
pub struct Normalizer {
    cache: HashMap<(i64, Partition), VirState>,
}

impl Normalizer {
    pub fn new() -> Self {
        Self::default()
    }

    /// `L_n v` in PBW form.
    pub fn apply_mode(&mut self, n: i64, v: &VirState) -> VirState {
        let mut out = VirState::zero();
        for (p, c) in v.terms() {
            out.add_assign(&self.apply(n, p).scale(c));
        }
        out
    }

    /// `L_{n_1} L_{n_2} … L_{n_k} v`, rightmost mode first.
    pub fn apply_word(&mut self, word: &[i64], v: &VirState) -> VirState {
        word.iter().rev().fold(v.clone(), |acc, &n| self.apply_mode(n, &acc))
    }

    /// `L_n L_{-k₁} L_{-k₂} … 𝟙`.
    pub fn apply(&mut self, n: i64, p: &Partition) -> VirState {
        let key = (n, p.clone());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let result = self.compute(n, p);
        self.cache.insert(key, result.clone());
        result
    }

    fn compute(&mut self, n: i64, p: &Partition) -> VirState {
        let parts = p.parts();
        let Some(&k1) = parts.first() else {
            // L_r 𝟙 = 0 for r >= -1.
            return if n <= -2 {
                VirState::monomial(Partition::from_sorted(vec![(-n) as u32]), CPolynomial::one())
            } else {
                VirState::zero()
            };
        };
        let k1 = i64::from(k1);
        if -n >= k1 {
            let mut parts = parts.to_vec();
            parts.insert(0, (-n) as u32);
            return VirState::monomial(Partition::from_sorted(parts), CPolynomial::one());
        }

        // L_n L_{-k} R = L_{-k} L_n R + (n + k) L_{n-k} R + δ_{n,k} C(n³-n)/12 R
        let rest = Partition::from_sorted(parts[1..].to_vec());
        let inner = self.apply(n, &rest);
        let mut out = self.apply_mode(-k1, &inner);
        if n + k1 != 0 {
            let shifted = self.apply(n - k1, &rest);
            out.add_assign(&shifted.scale(&CPolynomial::constant(Rational::from_integer(
                (n + k1).into(),
            ))));
        }
        if n == k1 {
            out.add_assign(&VirState::monomial(rest, central_term(n)));
        }
        out
    }
}

/// One-shot `L_n v` with a fresh cache.
pub fn apply_mode(n: i64, v: &VirState) -> VirState {
    Normalizer::new().apply_mode(n, v)
}
