//! A minimal commutative-ring interface so that ε-series and sewing matrices
//! can carry rationals, q-series, bivariate series or C-polynomials of
//! q-series as coefficients.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::rational::Rational;

use super::{BiSeries, CSeries, QSeries};

pub trait Ring: Clone + Debug + PartialEq {
    /// Additive identity in the same ring (same variable, truncation, ...).
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inv(&self) -> Option<Self>;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-Rational::one()))
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn try_inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Ring for QSeries {
    fn zero_like(&self) -> Self {
        QSeries::zero(self.var(), self.trunc())
    }
    fn one_like(&self) -> Self {
        QSeries::one(self.var(), self.trunc())
    }
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        // A zero summand carries no prefactor information.
        if QSeries::is_zero(other) && other.offset() != self.offset() {
            return self.truncate(other.trunc());
        }
        if QSeries::is_zero(self) && other.offset() != self.offset() {
            return other.truncate(self.trunc());
        }
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Ring for BiSeries {
    fn zero_like(&self) -> Self {
        BiSeries::zero(self.truncs())
    }
    fn one_like(&self) -> Self {
        BiSeries::one(self.truncs())
    }
    fn is_zero(&self) -> bool {
        BiSeries::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        if BiSeries::is_zero(other) && other.offsets() != self.offsets() {
            return self.truncate(other.truncs());
        }
        if BiSeries::is_zero(self) && other.offsets() != self.offsets() {
            return other.truncate(self.truncs());
        }
        self.try_add(other).expect("incompatible bivariate series")
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Ring for CSeries {
    fn zero_like(&self) -> Self {
        CSeries::zero(self.proto().clone())
    }
    fn one_like(&self) -> Self {
        CSeries::constant(self.proto().one_like())
    }
    fn is_zero(&self) -> bool {
        CSeries::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.degree() != Some(0) {
            return None;
        }
        Some(CSeries::constant(self.coeff(0).inv().ok()?))
    }
}
