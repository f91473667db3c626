//! Differential operators `Σ c_ij(q) C^j ∂^i` with `∂ = q d/dq`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{to_quasimodular, QSeries, Var};
use crate::virasoro::CPolynomial;

/// What the operator is applied to.
///
/// `Z`: the base partition function itself. `Theta`: the η-normalized
/// `Θ = η^C Z`, with the overall `η^(-C)` left implicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Z,
    Theta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    basis: Basis,
    var: Var,
    trunc: usize,
    /// Weight of the inserted state, when homogeneous. The coefficient of
    /// `∂^i` then has quasi-modular weight `weight - 2i`.
    weight: Option<u32>,
    terms: BTreeMap<(u32, u32), QSeries>,
}

impl DiffOp {
    pub fn zero(basis: Basis, var: Var, trunc: usize) -> Self {
        DiffOp {
            basis,
            var,
            trunc,
            weight: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(basis: Basis, var: Var, trunc: usize) -> Self {
        let mut op = Self::zero(basis, var, trunc);
        op.weight = Some(0);
        op.insert((0, 0), QSeries::one(var, trunc));
        op
    }

    pub fn from_terms(
        basis: Basis,
        var: Var,
        trunc: usize,
        terms: impl IntoIterator<Item = ((u32, u32), QSeries)>,
    ) -> Self {
        let mut op = Self::zero(basis, var, trunc);
        for (k, s) in terms {
            op.add_at(k, &s);
        }
        op
    }

    fn insert(&mut self, key: (u32, u32), s: QSeries) {
        if s.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    fn add_at(&mut self, key: (u32, u32), s: &QSeries) {
        let s = s.truncate(self.trunc);
        let merged = match self.terms.remove(&key) {
            Some(prev) => &prev + &s,
            None => s,
        };
        self.insert(key, merged);
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn weight(&self) -> Option<u32> {
        self.weight
    }

    pub fn with_weight(mut self, weight: Option<u32>) -> Self {
        self.weight = weight;
        self
    }

    /// `((derivative order, C-degree), coefficient)` for nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &QSeries)> {
        self.terms.iter().map(|(k, s)| (*k, s))
    }

    pub fn coeff(&self, d_order: u32, c_degree: u32) -> QSeries {
        self.terms
            .get(&(d_order, c_degree))
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.var, self.trunc))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let weight = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.weight,
            (_, true) => self.weight,
            _ if self.weight == other.weight => self.weight,
            _ => None,
        };
        let mut out = DiffOp {
            trunc: self.trunc.min(other.trunc),
            weight,
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (k, s) in self.terms.iter().chain(&other.terms) {
            out.add_at(*k, s);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        let mut out = DiffOp { terms: BTreeMap::new(), ..self.clone() };
        for (k, s) in &self.terms {
            out.insert(*k, s.scale(c));
        }
        out
    }

    /// Multiplies by a polynomial in `C`.
    pub fn times_cpoly(&self, p: &CPolynomial) -> DiffOp {
        let mut out = DiffOp { terms: BTreeMap::new(), ..self.clone() };
        for (d, c) in p.terms() {
            for ((i, j), s) in &self.terms {
                out.add_at((*i, j + d), &s.scale(c));
            }
        }
        out
    }

    /// Multiplies every coefficient by the function `f(q)` on the left.
    pub fn times_series(&self, f: &QSeries) -> DiffOp {
        let mut out = DiffOp { terms: BTreeMap::new(), ..self.clone() };
        for (k, s) in &self.terms {
            out.add_at(*k, &(f * s));
        }
        out
    }

    /// `∂ ∘ self`: the Leibniz rule gives `Σ (∂c) C^j ∂^i + c C^j ∂^(i+1)`.
    pub fn derivative(&self) -> DiffOp {
        let mut out = DiffOp { terms: BTreeMap::new(), ..self.clone() };
        for ((i, j), s) in &self.terms {
            out.add_at((*i, *j), &s.qd());
            out.add_at((i + 1, *j), s);
        }
        out
    }

    /// `(∂ + sign (C/2) E₂)ⁱ` for `i = 0..=max`.
    fn twisted_powers(&self, sign: i64, max: u32) -> Vec<DiffOp> {
        let e2 = crate::series::eisenstein(2, self.trunc)
            .expect("k = 2")
            .with_var(self.var)
            .scale(&Rational::new(sign.into(), 2.into()));
        let mut p = DiffOp::identity(self.basis, self.var, self.trunc);
        let mut out = vec![p.clone()];
        for _ in 0..max {
            let mut shifted = p.times_series(&e2);
            shifted.terms = shifted.terms.into_iter().map(|((i, j), s)| ((i, j + 1), s)).collect();
            p = p.derivative().add(&shifted);
            out.push(p.clone());
        }
        out
    }

    fn rebase(&self, from: Basis, to: Basis, sign: i64) -> Result<DiffOp> {
        if self.basis != from {
            return Err(Error::Parse(format!("expected an operator in the {from:?} basis")));
        }
        let powers = self.twisted_powers(sign, self.max_order().unwrap_or(0));
        let mut out = DiffOp::zero(to, self.var, self.trunc).with_weight(self.weight);
        for ((i, j), c) in &self.terms {
            for ((a, b), g) in &powers[*i as usize].terms {
                out.add_at((*a, b + j), &(c * g));
            }
        }
        Ok(out)
    }

    /// Rewrites `Σ c_ij C^j ∂^i Z` as `η^(-C) Σ G_ij C^j ∂^i Θ` using
    /// `∂(η^(-C) X) = η^(-C)(∂ + (C/2)E₂) X`.
    pub fn to_theta_basis(&self) -> Result<DiffOp> {
        self.rebase(Basis::Z, Basis::Theta, 1)
    }

    /// Inverse of [`DiffOp::to_theta_basis`].
    pub fn from_theta_basis(&self) -> Result<DiffOp> {
        self.rebase(Basis::Theta, Basis::Z, -1)
    }

    /// Copies the operator onto another series variable.
    pub fn with_var(&self, var: Var) -> DiffOp {
        DiffOp {
            var,
            terms: self.terms.iter().map(|(k, s)| (*k, s.clone().with_var(var))).collect(),
            ..self.clone()
        }
    }

    /// `Σ_j c_ij C^j` evaluated at a numeric `C`, for each derivative order.
    pub fn at_central_charge(&self, c: &Rational) -> BTreeMap<u32, QSeries> {
        let mut out: BTreeMap<u32, QSeries> = BTreeMap::new();
        for ((i, j), s) in &self.terms {
            let term = s.scale(&num_traits::pow(c.clone(), *j as usize));
            let merged = match out.remove(i) {
                Some(prev) => &prev + &term,
                None => term,
            };
            out.insert(*i, merged);
        }
        out
    }
}

/// The normalized genus-one partition function `Θ = η^C Z` of a concrete
/// theory together with its central charge.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePartition {
    pub theta: QSeries,
    pub central_charge: Rational,
}

impl BasePartition {
    /// Rank-`r` Heisenberg: `Θ = 1`, `C = r`.
    pub fn heisenberg(rank: u32, var: Var, trunc: usize) -> Self {
        BasePartition {
            theta: QSeries::one(var, trunc),
            central_charge: Rational::from_integer(rank.into()),
        }
    }

    /// Rank-`r` Heisenberg module of momentum `α`: `Θ = q^(α²/2)`, `C = r`.
    pub fn heisenberg_module(rank: u32, alpha_sq: &Rational, var: Var, trunc: usize) -> Self {
        BasePartition {
            theta: QSeries::one(var, trunc).with_offset(alpha_sq / Rational::from_integer(2.into())),
            central_charge: Rational::from_integer(rank.into()),
        }
    }
}

/// `Σ G_ij C^j ∂^i Θ` at the base's central charge; the implicit `η^(-C)`
/// is not reattached.
pub fn specialize(op: &DiffOp, base: &BasePartition) -> Result<QSeries> {
    if op.basis != Basis::Theta {
        return Err(Error::Parse("specialize needs a Theta-basis operator".into()));
    }
    if base.theta.trunc() < op.trunc {
        return Err(Error::TruncationMismatch {
            needed: op.trunc,
            have: base.theta.trunc(),
        });
    }
    let theta = base.theta.truncate(op.trunc).with_var(op.var);
    let by_order = op.at_central_charge(&base.central_charge);
    let mut derivs = vec![theta.clone()];
    let mut acc = QSeries::zero(op.var, op.trunc).with_offset(theta.offset().clone());
    for (i, g) in by_order {
        while derivs.len() <= i as usize {
            let next = derivs.last().unwrap().qd();
            derivs.push(next);
        }
        acc = &acc + &(&g * &derivs[i as usize]).truncate(op.trunc);
    }
    Ok(acc)
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut pieces = Vec::new();
        for ((i, j), s) in self.terms.iter().rev() {
            let poly = self
                .weight
                .and_then(|w| w.checked_sub(2 * i))
                .and_then(|w| to_quasimodular(s, w).ok());
            let (negative, coef) = match &poly {
                Some(p) if p.coeffs().len() == 1 => {
                    let (m, c) = p.coeffs().iter().next().unwrap();
                    let single = crate::series::QuasiModularPoly::from_terms([(*m, c.abs())]);
                    (c < &Rational::zero(), single.to_string())
                }
                Some(p) => (false, format!("({p})")),
                None => (false, format!("({s})")),
            };
            let mut factors = Vec::new();
            if coef != "1" {
                factors.push(coef);
            }
            match j {
                0 => {}
                1 => factors.push("C".into()),
                _ => factors.push(format!("C^{j}")),
            }
            match i {
                0 => {}
                1 => factors.push("∂".into()),
                _ => factors.push(format!("∂^{i}")),
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            pieces.push((negative, factors.join("*")));
        }
        for (n, (negative, body)) in pieces.iter().enumerate() {
            match (n, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DiffOpTerm {
    d_order: u32,
    c_degree: u32,
    series: QSeries,
}

#[derive(Serialize, Deserialize)]
struct DiffOpJson {
    basis: Basis,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    weight: Option<u32>,
    variable: Var,
    trunc: usize,
    terms: Vec<DiffOpTerm>,
}

impl Serialize for DiffOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiffOpJson {
            basis: self.basis,
            weight: self.weight,
            variable: self.var,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| DiffOpTerm {
                    d_order: *i,
                    c_degree: *j,
                    series: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiffOpJson::deserialize(d)?;
        Ok(DiffOp::from_terms(
            j.basis,
            j.variable,
            j.trunc,
            j.terms.into_iter().map(|t| ((t.d_order, t.c_degree), t.series)),
        )
        .with_weight(j.weight))
    }
}

impl DiffOp {
    /// `true` when this is exactly the identity operator.
    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&QSeries::one(self.var, self.trunc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::series::{eisenstein, eta_normalized};

    fn e(k: u32, t: usize) -> QSeries {
        eisenstein(k, t).unwrap()
    }

    #[test]
    fn derivative_rewrite() {
        let d = DiffOp::from_terms(Basis::Z, Var::Q, 6, [((1, 0), QSeries::one(Var::Q, 6))]);
        let th = d.to_theta_basis().unwrap();
        assert_eq!(
            th,
            DiffOp::from_terms(
                Basis::Theta,
                Var::Q,
                6,
                [((1, 0), QSeries::one(Var::Q, 6)), ((0, 1), e(2, 6).scale(&rat(1, 2)))]
            )
        );
        assert_eq!(th.from_theta_basis().unwrap(), d);
        let id = DiffOp::identity(Basis::Z, Var::Q, 4);
        assert!(id.to_theta_basis().unwrap().is_identity());
    }

    #[test]
    fn specialize_examples() {
        let t = 6;
        let op = DiffOp::from_terms(
            Basis::Theta,
            Var::Q,
            t,
            [((1, 0), QSeries::one(Var::Q, t)), ((0, 1), e(2, t).scale(&rat(1, 2)))],
        );
        let base = BasePartition::heisenberg_module(1, &int(1), Var::Q, t);
        let got = specialize(&op, &base).unwrap();
        let half = rat(1, 2);
        let expect = (&QSeries::constant(Var::Q, half.clone(), t) + &e(2, t).scale(&half))
            .with_offset(half);
        assert_eq!(got, expect);

        // Reattaching η^(-1): qd(1/η) = (E₂/2)/η
        let heis = BasePartition::heisenberg(1, Var::Q, t);
        let applied = specialize(&op, &heis).unwrap();
        let inv_eta = eta_normalized(t).inv().unwrap();
        assert_eq!(&applied * &inv_eta, inv_eta.qd());

        let short = BasePartition::heisenberg(1, Var::Q, 2);
        assert!(matches!(specialize(&op, &short), Err(Error::TruncationMismatch { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let op = DiffOp::from_terms(Basis::Theta, Var::Q1, 3, [((2, 1), e(4, 3).with_var(Var::Q1))])
            .with_weight(Some(8));
        let j = serde_json::to_string(&op).unwrap();
        assert!(j.starts_with(r#"{"basis":"Theta","weight":8,"variable":"q1","trunc":3,"terms":[{"d_order":2,"c_degree":1"#));
        assert_eq!(serde_json::from_str::<DiffOp>(&j).unwrap(), op);
    }
}
