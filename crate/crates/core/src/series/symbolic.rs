//! Polynomials in the central charge `C` whose coefficients are q-series.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;

use super::QSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct CSeries {
    terms: BTreeMap<u32, QSeries>,
    // Zero series fixing the variable and truncation of absent terms.
    proto: QSeries,
}

impl CSeries {
    pub fn zero(proto: QSeries) -> Self {
        CSeries {
            terms: BTreeMap::new(),
            proto: proto.scale(&Rational::default()),
        }
    }

    pub fn constant(s: QSeries) -> Self {
        Self::monomial(0, s)
    }

    /// `s · C^degree`.
    pub fn monomial(degree: u32, s: QSeries) -> Self {
        let mut out = Self::zero(s.clone());
        out.insert(degree, s);
        out
    }

    pub fn from_terms(proto: QSeries, terms: impl IntoIterator<Item = (u32, QSeries)>) -> Self {
        let mut out = Self::zero(proto);
        for (d, s) in terms {
            let merged = match out.terms.remove(&d) {
                Some(prev) => crate::series::Ring::plus(&prev, &s),
                None => s,
            };
            out.insert(d, merged);
        }
        out
    }

    fn insert(&mut self, degree: u32, s: QSeries) {
        if !s.is_zero() {
            self.terms.insert(degree, s);
        }
    }

    pub fn proto(&self) -> &QSeries {
        &self.proto
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of `C^degree` (the zero series if absent).
    pub fn coeff(&self, degree: u32) -> QSeries {
        self.terms
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| self.proto.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &QSeries)> {
        self.terms.iter().map(|(d, s)| (*d, s))
    }

    pub fn add(&self, other: &CSeries) -> CSeries {
        use crate::series::Ring;
        let mut out = self.clone();
        for (d, s) in &other.terms {
            let merged = match out.terms.remove(d) {
                Some(prev) => prev.plus(s),
                None => s.clone(),
            };
            out.insert(*d, merged);
        }
        out
    }

    pub fn mul(&self, other: &CSeries) -> CSeries {
        use crate::series::Ring;
        let mut out = CSeries::zero(self.proto.clone());
        for (d1, a) in &self.terms {
            for (d2, b) in &other.terms {
                let p = a.times(b);
                let merged = match out.terms.remove(&(d1 + d2)) {
                    Some(prev) => prev.plus(&p),
                    None => p,
                };
                out.insert(d1 + d2, merged);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CSeries {
        let mut out = CSeries::zero(self.proto.clone());
        for (d, s) in &self.terms {
            out.insert(*d, s.scale(c));
        }
        out
    }

    /// Multiplies by `C^k`.
    pub fn shift_degree(&self, k: u32) -> CSeries {
        CSeries {
            terms: self.terms.iter().map(|(d, s)| (d + k, s.clone())).collect(),
            proto: self.proto.clone(),
        }
    }

    /// Exact coefficientwise equality up to the common truncation.
    pub fn same_up_to(&self, other: &CSeries) -> bool {
        let degrees: std::collections::BTreeSet<u32> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        degrees.into_iter().all(|d| {
            let (a, b) = (self.coeff(d), other.coeff(d));
            match (a.is_zero(), b.is_zero()) {
                (true, true) => true,
                (false, false) => a.same_up_to(&b),
                _ => false,
            }
        })
    }
}

impl fmt::Display for CSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, s)| match d {
                0 => format!("({s})"),
                1 => format!("({s})*C"),
                _ => format!("({s})*C^{d}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
