//! Bernoulli numbers, Eisenstein series and the Dedekind eta function.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, rat, Rational};

use super::{QSeries, Var};

/// `B_0, …, B_n` from `z/(e^z − 1) = Σ B_k z^k / k!`, by inverting
/// `(e^z − 1)/z = Σ z^k/(k+1)!`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let coeffs = (0..=n)
        .map(|k| Rational::from_integer(factorial(k as u64 + 1)).recip())
        .collect();
    let inv = QSeries::from_coeffs(Var::Z, coeffs, n)
        .inv()
        .expect("(e^z-1)/z has constant term 1");
    inv.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c * Rational::from_integer(factorial(k as u64)))
        .collect()
}

pub fn bernoulli(k: usize) -> Rational {
    bernoulli_numbers(k).pop().expect("non-empty")
}

fn divisor_power_sum(n: u64, power: u32) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(power);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(power);
            }
        }
        d += 1;
    }
    acc
}

/// `E_k(q) = −B_k/k! + (2/(k−1)!) Σ_{n≥1} n^(k−1) q^n/(1−q^n)`, using the
/// divisor-sum form of the q-coefficients. Odd `k` gives the zero series.
pub fn eisenstein(k: u32, trunc: usize) -> Result<QSeries> {
    if k < 2 {
        return Err(Error::EisensteinWeight(k));
    }
    if k % 2 == 1 {
        return Ok(QSeries::zero(Var::Q, trunc));
    }
    let mut coeffs = Vec::with_capacity(trunc + 1);
    coeffs.push(-bernoulli(k as usize) / Rational::from_integer(factorial(k as u64)));
    let scale = Rational::new(BigInt::from(2), factorial(k as u64 - 1));
    for n in 1..=trunc as u64 {
        coeffs.push(Rational::from_integer(divisor_power_sum(n, k - 1)) * &scale);
    }
    Ok(QSeries::from_coeffs(Var::Q, coeffs, trunc))
}

/// `Π_{n≥1} (1 − q^n)`.
pub fn euler_product(trunc: usize) -> QSeries {
    let mut acc = QSeries::one(Var::Q, trunc);
    let one = QSeries::one(Var::Q, trunc);
    for n in 1..=trunc {
        let factor = &one - &QSeries::monomial(Var::Q, n, Rational::one(), trunc);
        acc = (&acc * &factor).truncate(trunc);
    }
    acc
}

/// `η(q) = q^(1/24) Π (1 − q^n)`, with the prefactor held in the offset.
pub fn eta_normalized(trunc: usize) -> QSeries {
    euler_product(trunc).with_offset(rat(1, 24))
}

/// Memoized Eisenstein series at a fixed truncation and variable.
#[derive(Debug, Clone)]
pub struct EisensteinCache {
    var: Var,
    trunc: usize,
    table: HashMap<u32, QSeries>,
}

impl EisensteinCache {
    pub fn new(var: Var, trunc: usize) -> Self {
        EisensteinCache {
            var,
            trunc,
            table: HashMap::new(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// `E_k`, zero for odd `k`. Panics for `k < 2`.
    pub fn get(&mut self, k: u32) -> &QSeries {
        let (var, trunc) = (self.var, self.trunc);
        self.table.entry(k).or_insert_with(|| {
            eisenstein(k, trunc)
                .expect("Eisenstein weight >= 2")
                .with_var(var)
        })
    }
}
