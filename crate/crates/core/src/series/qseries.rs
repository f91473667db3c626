//! Truncated univariate power series `var^offset · Σ_{n=0}^{trunc} c_n var^n`.
//!
//! A series is known modulo `var^(trunc+1)` times its prefactor. Binary
//! operations record the tightest truncation that is still sound for their
//! inputs, so precision is never silently invented.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Q,
    Q1,
    Q2,
    Z,
    Eps,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Q1 => "q1",
            Var::Q2 => "q2",
            Var::Z => "z",
            Var::Eps => "eps",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Some(match s {
            "q" => Var::Q,
            "q1" => Var::Q1,
            "q2" => Var::Q2,
            "z" => Var::Z,
            "eps" => Var::Eps,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    var: Var,
    offset: Rational,
    // Dense, length trunc + 1.
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Builds a series from its leading coefficients, padding with zeros (or
    /// dropping extras) so that exactly `trunc + 1` coefficients are kept.
    pub fn from_coeffs(var: Var, mut coeffs: Vec<Rational>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, Rational::zero());
        QSeries {
            var,
            offset: Rational::zero(),
            coeffs,
        }
    }

    pub fn zero(var: Var, trunc: usize) -> Self {
        Self::from_coeffs(var, Vec::new(), trunc)
    }

    pub fn one(var: Var, trunc: usize) -> Self {
        Self::constant(var, Rational::one(), trunc)
    }

    pub fn constant(var: Var, c: Rational, trunc: usize) -> Self {
        Self::from_coeffs(var, vec![c], trunc)
    }

    /// `c · var^n`, zero if `n` lies beyond the truncation.
    pub fn monomial(var: Var, n: usize, c: Rational, trunc: usize) -> Self {
        let mut s = Self::zero(var, trunc);
        if n <= trunc {
            s.coeffs[n] = c;
        }
        s
    }

    /// The variable itself, `var + O(var^(trunc+1))`.
    pub fn variable(var: Var, trunc: usize) -> Self {
        Self::monomial(var, 1, Rational::one(), trunc)
    }

    pub fn with_offset(mut self, offset: Rational) -> Self {
        self.offset = offset;
        self
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `var^n` (relative to the offset prefactor).
    ///
    /// Panics when `n` is beyond the truncation: that coefficient is unknown,
    /// not zero.
    pub fn coeff(&self, n: usize) -> &Rational {
        assert!(
            n <= self.trunc(),
            "coefficient {n} requested beyond truncation {}",
            self.trunc()
        );
        &self.coeffs[n]
    }

    /// Index of the first nonzero coefficient, `trunc + 1` for a zero series.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients beyond `min(trunc, self.trunc())`.
    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc());
        QSeries {
            var: self.var,
            offset: self.offset.clone(),
            coeffs: self.coeffs[..=t].to_vec(),
        }
    }

    /// Moves leading zero coefficients into the offset prefactor. A zero
    /// series is returned unchanged.
    pub fn normalize(&self) -> Self {
        let v = self.valuation();
        if v == 0 || v > self.trunc() {
            return self.clone();
        }
        QSeries {
            var: self.var,
            offset: &self.offset + int(v as i64),
            coeffs: self.coeffs[v..].to_vec(),
        }
    }

    /// True when both series share variable and offset and agree on every
    /// coefficient known to both.
    pub fn same_up_to(&self, other: &QSeries) -> bool {
        self.var == other.var
            && self.offset == other.offset
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a == b)
    }

    fn check_var(&self, other: &QSeries) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(
                self.var.to_string(),
                other.var.to_string(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &QSeries) -> Result<QSeries> {
        self.check_var(other)?;
        if self.offset != other.offset {
            return Err(Error::offsets(&self.offset, &other.offset));
        }
        let t = self.trunc().min(other.trunc());
        let coeffs = (0..=t).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect();
        Ok(QSeries {
            var: self.var,
            offset: self.offset.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check_var(other)?;
        let (va, vb) = (self.valuation(), other.valuation());
        // a·b is known modulo var^(min(ta + vb, tb + va) + 1).
        let t = (self.trunc() + vb).min(other.trunc() + va);
        let mut coeffs = vec![Rational::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().skip(va) {
            if i > t {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().skip(vb) {
                if i + j > t {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(QSeries {
            var: self.var,
            offset: &self.offset + &other.offset,
            coeffs,
        })
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            var: self.var,
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `q d/dq`, including the offset: `qd(q^a Σ c_n q^n) = q^a Σ (n+a) c_n q^n`.
    pub fn qd(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * (&self.offset + int(n as i64)))
            .collect();
        QSeries {
            var: self.var,
            offset: self.offset.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse. The offset is negated; the remaining series
    /// must have a nonzero constant term.
    pub fn inv(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnitConstant);
        }
        let t = self.trunc();
        let c0_inv = c0.recip();
        let mut out = vec![Rational::zero(); t + 1];
        out[0] = c0_inv.clone();
        for n in 1..=t {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out[n] = -acc * &c0_inv;
        }
        Ok(QSeries {
            var: self.var,
            offset: -self.offset.clone(),
            coeffs: out,
        })
    }

    pub fn try_div(&self, other: &QSeries) -> Result<QSeries> {
        self.try_mul(&other.inv()?)
    }

    /// `exp(f)` for `f` with zero constant term and zero offset.
    pub fn exp(&self) -> Result<QSeries> {
        if !self.offset.is_zero() || !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let t = self.trunc();
        // n e_n = Σ_{k=1}^n k f_k e_{n-k}
        let mut e = vec![Rational::zero(); t + 1];
        e[0] = Rational::one();
        for n in 1..=t {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += int(k as i64) * &self.coeffs[k] * &e[n - k];
                }
            }
            e[n] = acc / int(n as i64);
        }
        Ok(QSeries::from_coeffs(self.var, e, t))
    }

    /// `log(f)` for `f = 1 + O(var)` with zero offset.
    pub fn log(&self) -> Result<QSeries> {
        if !self.offset.is_zero() || !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant);
        }
        let t = self.trunc();
        // f' = f · g'  =>  n g_n = n f_n - Σ_{k=1}^{n-1} k g_k f_{n-k}
        let mut g = vec![Rational::zero(); t + 1];
        for n in 1..=t {
            let mut acc = int(n as i64) * &self.coeffs[n];
            for k in 1..n {
                if !g[k].is_zero() {
                    acc -= int(k as i64) * &g[k] * &self.coeffs[n - k];
                }
            }
            g[n] = acc / int(n as i64);
        }
        Ok(QSeries::from_coeffs(self.var, g, t))
    }

    /// `f^r` for rational `r`, computed as `exp(r log f)`. Requires the
    /// coefficient part to start with 1; the offset is multiplied by `r`.
    pub fn pow(&self, r: &Rational) -> Result<QSeries> {
        let unit = QSeries {
            offset: Rational::zero(),
            ..self.clone()
        };
        let mut out = unit.log()?.scale(r).exp()?;
        out.offset = &self.offset * r;
        Ok(out)
    }

    /// `self(g(z))` for `g` with zero constant term and zero offset.
    pub fn compose(&self, g: &QSeries) -> Result<QSeries> {
        self.check_var(g)?;
        if !g.offset.is_zero() || !g.coeffs[0].is_zero() || !self.offset.is_zero() {
            return Err(Error::CompositionConstant);
        }
        let v = g.valuation();
        let tf = self.trunc();
        // Error from truncating f is O(g^(tf+1)); error from truncating g
        // is O(z^(tg+1)) times the lowest surviving f' term.
        let mut t = v * (tf + 1) - 1;
        if let Some(m) = (1..=tf).find(|&n| !self.coeffs[n].is_zero()) {
            t = t.min(g.trunc() + v * (m - 1));
        }
        let g = g.truncate(t);
        // Horner, evaluated at truncation t.
        let mut acc = QSeries::constant(self.var, self.coeffs[tf].clone(), t);
        for n in (0..tf).rev() {
            acc = acc.try_mul(&g)?.truncate(t);
            acc.coeffs[0] += &self.coeffs[n];
        }
        Ok(acc)
    }

    /// Compositional inverse of `f = z + O(z²)`.
    pub fn revert(&self) -> Result<QSeries> {
        if !self.offset.is_zero()
            || self.trunc() < 1
            || !self.coeffs[0].is_zero()
            || !self.coeffs[1].is_one()
        {
            return Err(Error::RevertLeading);
        }
        let t = self.trunc();
        let mut g = QSeries::variable(self.var, t);
        // Fix one coefficient per pass: f(g) = z + e_n z^n + ..., so g_n -= e_n.
        for n in 2..=t {
            let fg = self.compose(&g)?;
            let e = fg.coeffs[n].clone();
            g.coeffs[n] -= e;
        }
        Ok(g)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            var: self.var,
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.try_add(rhs).expect("incompatible series in addition")
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.try_add(&-rhs).expect("incompatible series in subtraction")
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.try_mul(rhs).expect("incompatible series in multiplication")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn q(coeffs: &[i64], trunc: usize) -> QSeries {
        QSeries::from_coeffs(Var::Q, coeffs.iter().map(|&c| int(c)).collect(), trunc)
    }

    fn z(coeffs: Vec<Rational>, trunc: usize) -> QSeries {
        QSeries::from_coeffs(Var::Z, coeffs, trunc)
    }

    fn exp_minus_one(t: usize) -> QSeries {
        let mut c = vec![int(0)];
        let mut f = int(1);
        for n in 1..=t {
            f *= int(n as i64);
            c.push(f.recip());
        }
        z(c, t)
    }

    fn log_one_plus(t: usize) -> QSeries {
        let mut c = vec![int(0)];
        for n in 1..=t {
            let s = if n % 2 == 1 { 1 } else { -1 };
            c.push(rat(s, n as i64));
        }
        z(c, t)
    }

    #[test]
    fn qd_examples() {
        assert_eq!(q(&[1, 0, 3], 2).qd(), q(&[0, 0, 6], 2));
        let s = q(&[1, 1], 1).with_offset(rat(1, 2));
        let d = s.qd();
        assert_eq!(d.offset(), &rat(1, 2));
        assert_eq!(d.coeffs(), &[rat(1, 2), rat(3, 2)]);
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = q(&[1, 1, 1], 2);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }

    #[test]
    fn binomial_square_root() {
        let f = q(&[1, 2], 2);
        let r = f.pow(&rat(1, 2)).unwrap();
        assert_eq!(r.coeffs(), &[int(1), int(1), rat(-1, 2)]);
    }

    #[test]
    fn geometric_inverse() {
        let f = q(&[1, -1], 3);
        assert_eq!(f.inv().unwrap(), q(&[1, 1, 1, 1], 3));
    }

    #[test]
    fn unit_errors() {
        assert_eq!(q(&[0, 1], 3).inv(), Err(Error::NonUnitConstant));
        assert_eq!(q(&[2, 1], 3).log(), Err(Error::NonUnitConstant));
        assert_eq!(q(&[2, 1], 3).pow(&rat(1, 3)), Err(Error::NonUnitConstant));
        assert_eq!(q(&[1, 1], 3).exp(), Err(Error::NonZeroConstant));
    }

    #[test]
    fn inverse_of_offset_series() {
        let eta_like = q(&[1, -1, -1], 4).with_offset(rat(1, 24));
        let inv = eta_like.inv().unwrap();
        assert_eq!(inv.offset(), &rat(-1, 24));
        let prod = &eta_like * &inv;
        assert!(prod.same_up_to(&q(&[1], 4)));
    }

    #[test]
    fn multiplication_truncation_is_tight() {
        // (q + O(q^3))·(q + q^2 + O(q^3)) is known to q^3.
        let a = q(&[0, 1], 2);
        let b = q(&[0, 1, 1], 2);
        let p = &a * &b;
        assert_eq!(p.trunc(), 3);
        assert_eq!(p, q(&[0, 0, 1, 1], 3));
        // A unit factor does not extend precision.
        assert_eq!((&a * &q(&[1, 1], 2)).trunc(), 2);
    }

    #[test]
    fn compose_examples() {
        let f = z(vec![int(0), int(1), int(1)], 2);
        let g = z(vec![int(0), int(2)], 2);
        assert_eq!(f.compose(&g).unwrap(), z(vec![int(0), int(2), int(4)], 2));

        let id = exp_minus_one(6).compose(&log_one_plus(6)).unwrap();
        assert_eq!(id, QSeries::variable(Var::Z, 6));

        let bad = z(vec![int(1), int(1)], 2);
        assert_eq!(f.compose(&bad), Err(Error::CompositionConstant));
    }

    #[test]
    fn revert_examples() {
        let idz = QSeries::variable(Var::Z, 5);
        assert_eq!(idz.revert().unwrap(), idz);
        assert_eq!(exp_minus_one(6).revert().unwrap(), log_one_plus(6));
        assert_eq!(
            z(vec![int(0), int(2)], 3).revert(),
            Err(Error::RevertLeading)
        );
    }

    #[test]
    fn mismatched_variables_rejected() {
        let a = q(&[1], 2);
        let b = QSeries::one(Var::Q1, 2);
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch(..))));
        let c = q(&[1], 2).with_offset(rat(1, 2));
        assert!(matches!(a.try_add(&c), Err(Error::OffsetMismatch(..))));
    }

    #[test]
    fn normalize_moves_valuation_into_offset() {
        let s = q(&[0, 0, 3, 1], 3).normalize();
        assert_eq!(s.offset(), &int(2));
        assert_eq!(s.coeffs(), &[int(3), int(1)]);
    }
}
