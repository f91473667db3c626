//! Truncated series in the sewing parameter.
//!
//! Powers are stored in `t` with `ε = t²`, so the half-integral powers of the
//! raw sewing matrices have a home. Anything handed out as a final result
//! is checked to contain even `t`-powers only.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::{JsonCoeff, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct EpsSeries<R> {
    terms: BTreeMap<u32, R>,
    // Known modulo t^(t_trunc + 1).
    t_trunc: u32,
    proto: R,
}

impl<R: Ring> EpsSeries<R> {
    /// Zero, known modulo `ε^(eps_trunc + 1)`.
    pub fn zero(proto: &R, eps_trunc: u32) -> Self {
        Self::zero_t(proto, 2 * eps_trunc + 1)
    }

    pub fn zero_t(proto: &R, t_trunc: u32) -> Self {
        EpsSeries {
            terms: BTreeMap::new(),
            t_trunc,
            proto: proto.zero_like(),
        }
    }

    pub fn constant(c: R, eps_trunc: u32) -> Self {
        Self::t_monomial(0, c, 2 * eps_trunc + 1)
    }

    pub fn one(proto: &R, eps_trunc: u32) -> Self {
        Self::constant(proto.one_like(), eps_trunc)
    }

    pub fn t_monomial(t_power: u32, c: R, t_trunc: u32) -> Self {
        let mut s = Self::zero_t(&c, t_trunc);
        s.insert(t_power, c);
        s
    }

    /// `c · ε^n`.
    pub fn eps_monomial(n: u32, c: R, eps_trunc: u32) -> Self {
        Self::t_monomial(2 * n, c, 2 * eps_trunc + 1)
    }

    pub fn from_eps_terms(proto: &R, eps_trunc: u32, terms: impl IntoIterator<Item = (u32, R)>) -> Self {
        let mut s = Self::zero(proto, eps_trunc);
        for (n, c) in terms {
            s.add_at(2 * n, c);
        }
        s
    }

    fn insert(&mut self, t_power: u32, c: R) {
        if t_power <= self.t_trunc && !c.is_zero() {
            self.terms.insert(t_power, c);
        } else {
            self.terms.remove(&t_power);
        }
    }

    fn add_at(&mut self, t_power: u32, c: R) {
        if t_power > self.t_trunc {
            return;
        }
        let merged = match self.terms.remove(&t_power) {
            Some(prev) => prev.plus(&c),
            None => c,
        };
        self.insert(t_power, merged);
    }

    pub fn t_trunc(&self) -> u32 {
        self.t_trunc
    }

    /// The largest `n` with `ε^n` known.
    pub fn eps_trunc(&self) -> u32 {
        self.t_trunc / 2
    }

    pub fn proto(&self) -> &R {
        &self.proto
    }

    pub fn coeff_t(&self, t_power: u32) -> R {
        self.terms.get(&t_power).cloned().unwrap_or_else(|| self.proto.clone())
    }

    /// Coefficient of `ε^n`.
    pub fn coeff(&self, n: u32) -> R {
        self.coeff_t(2 * n)
    }

    pub fn terms_t(&self) -> impl Iterator<Item = (u32, &R)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Fails on the first odd `t`-power (a half-integral power of `ε`).
    pub fn check_even(&self) -> Result<()> {
        match self.terms.keys().find(|k| *k % 2 == 1) {
            Some(k) => Err(Error::OddEpsPower(*k)),
            None => Ok(()),
        }
    }

    /// `(n, coefficient of ε^n)` for nonzero terms, after the parity check.
    pub fn eps_terms(&self) -> Result<Vec<(u32, &R)>> {
        self.check_even()?;
        Ok(self.terms.iter().map(|(k, c)| (k / 2, c)).collect())
    }

    pub fn truncate_t(&self, t_trunc: u32) -> Self {
        let t_trunc = t_trunc.min(self.t_trunc);
        EpsSeries {
            terms: self.terms.range(..=t_trunc).map(|(k, c)| (*k, c.clone())).collect(),
            t_trunc,
            proto: self.proto.clone(),
        }
    }

    pub fn truncate_eps(&self, eps_trunc: u32) -> Self {
        self.truncate_t(2 * eps_trunc + 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate_t(other.t_trunc);
        for (k, c) in &other.terms {
            out.add_at(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Tight truncation: (a + O(t^(ta+1)))(b + O(t^(tb+1))) is known up to
        // min(ta + val b, tb + val a).
        let va = self.terms.keys().next().copied();
        let vb = other.terms.keys().next().copied();
        let t_trunc = match (va, vb) {
            (Some(va), Some(vb)) => (self.t_trunc + vb).min(other.t_trunc + va),
            (None, Some(vb)) => self.t_trunc + vb,
            (Some(va), None) => other.t_trunc + va,
            (None, None) => self.t_trunc.min(other.t_trunc),
        };
        let mut out = Self::zero_t(&self.proto, t_trunc);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if i + j > t_trunc {
                    break;
                }
                out.add_at(i + j, a.times(b));
            }
        }
        out
    }

    /// Product truncated to the smaller of the two truncations, which is the
    /// right rule when the result is about to be compared at a fixed order.
    pub fn mul_trunc(&self, other: &Self) -> Self {
        let t = self.t_trunc.min(other.t_trunc);
        self.mul(other).truncate_t(t)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero_t(&self.proto, self.t_trunc);
        for (k, a) in &self.terms {
            out.insert(*k, a.scaled(c));
        }
        out
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn times_coeff(&self, c: &R) -> Self {
        let mut out = Self::zero_t(&c.zero_like(), self.t_trunc);
        for (k, a) in &self.terms {
            out.insert(*k, a.times(c));
        }
        out
    }

    /// Multiplies by `ε^n`; the truncation moves up with it.
    pub fn shift_eps(&self, n: u32) -> Self {
        EpsSeries {
            terms: self.terms.iter().map(|(k, c)| (k + 2 * n, c.clone())).collect(),
            t_trunc: self.t_trunc + 2 * n,
            proto: self.proto.clone(),
        }
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&R) -> S) -> EpsSeries<S> {
        let mut out = EpsSeries::zero_t(proto, self.t_trunc);
        for (k, c) in &self.terms {
            out.insert(*k, f(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.proto, self.eps_trunc()).truncate_t(self.t_trunc);
        for _ in 0..n {
            acc = acc.mul_trunc(self);
        }
        acc
    }

    /// `exp(x)` for `x` with vanishing constant term.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.contains_key(&0) {
            return Err(Error::NonZeroConstant);
        }
        let mut acc = Self::one(&self.proto, 0).truncate_t(0);
        acc.t_trunc = self.t_trunc;
        let mut term = acc.clone();
        for n in 1..=self.t_trunc {
            term = term.mul_trunc(self).scale(&Rational::new(1.into(), n.into()));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Inverse for an invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeff_t(0);
        let c0_inv = c0.try_inv().ok_or(Error::NonUnitConstant)?;
        // x = c0 (1 + y) with y = O(t)
        let mut y = self.times_coeff(&c0_inv);
        y.terms.remove(&0);
        let mut acc = Self::one(&c0_inv, 0);
        acc.t_trunc = self.t_trunc;
        let mut term = acc.clone();
        for _ in 1..=self.t_trunc {
            term = term.mul_trunc(&y).scale(&-Rational::one());
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.times_coeff(&c0_inv))
    }

    /// `x^n / n!`.
    pub fn divided_power(&self, n: u32) -> Self {
        let mut fact = Rational::one();
        for k in 1..=n {
            fact *= int(k as i64);
        }
        self.pow(n).scale(&fact.recip())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for EpsSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in &self.terms {
            let body = c.to_string();
            let body = if body.contains(' ') { format!("({body})") } else { body };
            let mono = match k {
                0 => String::new(),
                2 => "*eps".to_string(),
                _ if k % 2 == 0 => format!("*eps^{}", k / 2),
                _ => format!("*eps^({k}/2)"),
            };
            parts.push(format!("{body}{mono}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        let order = if self.t_trunc % 2 == 1 {
            format!("eps^{}", self.t_trunc / 2 + 1)
        } else {
            format!("eps^({}/2)", self.t_trunc + 1)
        };
        write!(f, "{} + O({order})", parts.join(" + "))
    }
}

impl<R: Ring + JsonCoeff> EpsSeries<R> {
    /// `{variable: "eps", offset, trunc, coeffs: {"n": <coefficient>}}` with
    /// every order `0..=trunc` listed so that the coefficient type and its
    /// truncation survive the round trip.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        self.check_even()?;
        let coeffs: serde_json::Map<String, serde_json::Value> = (0..=self.eps_trunc())
            .map(|n| (n.to_string(), self.coeff(n).to_json()))
            .collect();
        Ok(serde_json::json!({
            "variable": "eps",
            "offset": "0",
            "trunc": self.eps_trunc(),
            "coeffs": coeffs,
        }))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("eps-series JSON: {m}"));
        if v["variable"] != "eps" {
            return Err(bad("variable must be \"eps\""));
        }
        let trunc = v["trunc"].as_u64().ok_or_else(|| bad("missing trunc"))? as u32;
        let map = v["coeffs"].as_object().ok_or_else(|| bad("missing coeffs"))?;
        let mut terms = Vec::new();
        for (n, c) in map {
            let n: u32 = n.parse().map_err(|_| bad("bad exponent"))?;
            terms.push((n, R::from_json(c)?));
        }
        let proto = terms.first().map(|(_, c)| c.zero_like()).ok_or_else(|| bad("no coefficients"))?;
        Ok(Self::from_eps_terms(&proto, trunc, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::series::{QSeries, Var};

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    fn eps_rat(coeffs: &[(u32, Rational)], e: u32) -> EpsSeries<Rational> {
        EpsSeries::from_eps_terms(&r(0, 1), e, coeffs.iter().cloned())
    }

    #[test]
    fn exp_and_inverse() {
        let x = eps_rat(&[(1, r(1, 1))], 4);
        let e = x.exp().unwrap();
        for n in 0..=4u32 {
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(e.coeff(n), r(1, fact));
        }
        let one_minus = eps_rat(&[(0, r(1, 1)), (1, r(-1, 1))], 4);
        let inv = one_minus.inv().unwrap();
        for n in 0..=4 {
            assert_eq!(inv.coeff(n), r(1, 1));
        }
        assert_eq!(one_minus.mul_trunc(&inv), EpsSeries::one(&r(0, 1), 4));
    }

    #[test]
    fn truncation_tracks_valuation() {
        let a = eps_rat(&[(1, r(1, 1))], 2);
        let b = eps_rat(&[(2, r(1, 1))], 2);
        assert_eq!(a.mul(&b).eps_trunc(), 3);
        assert_eq!(a.shift_eps(1).eps_trunc(), 3);
    }

    #[test]
    fn parity_check() {
        let s = EpsSeries::t_monomial(3, r(1, 1), 5);
        assert_eq!(s.check_even(), Err(Error::OddEpsPower(3)));
        assert!(s.mul(&s).check_even().is_ok());
    }

    #[test]
    fn json_roundtrip_with_series_coefficients() {
        let e2 = crate::series::eisenstein(2, 3).unwrap();
        let s = EpsSeries::from_eps_terms(
            &QSeries::zero(Var::Q, 3),
            3,
            [(1, e2.clone()), (3, e2.scale(&r(1, 144)))],
        );
        let j = s.to_json().unwrap();
        assert_eq!(j["variable"], "eps");
        assert_eq!(j["coeffs"]["1"]["coeffs"]["0"], "-1/12");
        assert_eq!(EpsSeries::<QSeries>::from_json(&j).unwrap(), s);
    }

    #[test]
    fn display() {
        let s = eps_rat(&[(1, r(-1, 12)), (2, r(1, 3))], 2);
        assert_eq!(s.to_string(), "-1/12*eps + 1/3*eps^2 + O(eps^3)");
    }
}
