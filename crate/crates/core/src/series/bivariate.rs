//! Truncated series in `q1, q2` jointly, with a rational prefactor
//! `q1^a q2^b`. Known modulo the ideal `(q1^(t1+1), q2^(t2+1))`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

use super::{QSeries, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    offsets: (Rational, Rational),
    // coeffs[m][n] is the coefficient of q1^m q2^n.
    coeffs: Vec<Vec<Rational>>,
}

impl BiSeries {
    pub fn zero(truncs: (usize, usize)) -> Self {
        BiSeries {
            offsets: (Rational::zero(), Rational::zero()),
            coeffs: vec![vec![Rational::zero(); truncs.1 + 1]; truncs.0 + 1],
        }
    }

    pub fn one(truncs: (usize, usize)) -> Self {
        let mut s = Self::zero(truncs);
        s.coeffs[0][0] = Rational::one();
        s
    }

    /// Lifts a `q1`-series, keeping its offset, with `q2` truncation `t2`.
    pub fn from_q1(s: &QSeries, t2: usize) -> Self {
        let mut out = Self::zero((s.trunc(), t2));
        for (m, c) in s.coeffs().iter().enumerate() {
            out.coeffs[m][0] = c.clone();
        }
        out.offsets.0 = s.offset().clone();
        out
    }

    pub fn from_q2(s: &QSeries, t1: usize) -> Self {
        let mut out = Self::zero((t1, s.trunc()));
        for (n, c) in s.coeffs().iter().enumerate() {
            out.coeffs[0][n] = c.clone();
        }
        out.offsets.1 = s.offset().clone();
        out
    }

    /// `a(q1) · b(q2)`.
    pub fn outer(a: &QSeries, b: &QSeries) -> Self {
        let mut out = Self::zero((a.trunc(), b.trunc()));
        for (m, x) in a.coeffs().iter().enumerate() {
            for (n, y) in b.coeffs().iter().enumerate() {
                out.coeffs[m][n] = x * y;
            }
        }
        out.offsets = (a.offset().clone(), b.offset().clone());
        out
    }

    pub fn from_terms(
        offsets: (Rational, Rational),
        truncs: (usize, usize),
        terms: impl IntoIterator<Item = ((usize, usize), Rational)>,
    ) -> Self {
        let mut out = Self::zero(truncs);
        out.offsets = offsets;
        for ((m, n), c) in terms {
            if m <= truncs.0 && n <= truncs.1 {
                out.coeffs[m][n] = c;
            }
        }
        out
    }

    pub fn truncs(&self) -> (usize, usize) {
        (self.coeffs.len() - 1, self.coeffs[0].len() - 1)
    }

    pub fn offsets(&self) -> (&Rational, &Rational) {
        (&self.offsets.0, &self.offsets.1)
    }

    pub fn with_offsets(mut self, offsets: (Rational, Rational)) -> Self {
        self.offsets = offsets;
        self
    }

    pub fn coeff(&self, m: usize, n: usize) -> &Rational {
        &self.coeffs[m][n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Nonzero terms in `(m, n)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.coeffs.iter().enumerate().flat_map(|(m, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(n, c)| ((m, n), c))
        })
    }

    pub fn truncate(&self, truncs: (usize, usize)) -> Self {
        let (t1, t2) = (truncs.0.min(self.truncs().0), truncs.1.min(self.truncs().1));
        BiSeries {
            offsets: self.offsets.clone(),
            coeffs: self.coeffs[..=t1].iter().map(|r| r[..=t2].to_vec()).collect(),
        }
    }

    pub fn try_add(&self, other: &BiSeries) -> Result<BiSeries> {
        if self.offsets != other.offsets {
            let (a, b) = if self.offsets.0 != other.offsets.0 {
                (&self.offsets.0, &other.offsets.0)
            } else {
                (&self.offsets.1, &other.offsets.1)
            };
            return Err(Error::offsets(a, b));
        }
        let (t1, t2) = (
            self.truncs().0.min(other.truncs().0),
            self.truncs().1.min(other.truncs().1),
        );
        let coeffs = (0..=t1)
            .map(|m| (0..=t2).map(|n| &self.coeffs[m][n] + &other.coeffs[m][n]).collect())
            .collect();
        Ok(BiSeries {
            offsets: self.offsets.clone(),
            coeffs,
        })
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let (t1, t2) = (
            self.truncs().0.min(other.truncs().0),
            self.truncs().1.min(other.truncs().1),
        );
        let mut out = Self::zero((t1, t2));
        let rhs: Vec<_> = other.terms().filter(|((m, n), _)| *m <= t1 && *n <= t2).collect();
        for ((m, n), a) in self.terms() {
            if m > t1 || n > t2 {
                continue;
            }
            for &((k, l), b) in &rhs {
                if m + k <= t1 && n + l <= t2 {
                    out.coeffs[m + k][n + l] += a * b;
                }
            }
        }
        out.offsets = (
            &self.offsets.0 + &other.offsets.0,
            &self.offsets.1 + &other.offsets.1,
        );
        out
    }

    pub fn scale(&self, c: &Rational) -> BiSeries {
        BiSeries {
            offsets: self.offsets.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// Inverse for a nonzero constant term; the offsets are negated.
    pub fn inv(&self) -> Result<BiSeries> {
        let c0 = &self.coeffs[0][0];
        if c0.is_zero() {
            return Err(Error::NonUnitConstant);
        }
        let truncs = self.truncs();
        let c0_inv = c0.recip();
        // 1/(c0(1 + x)) = c0^-1 Σ (-x)^k, with x of total degree >= 1.
        let mut x = self.scale(&-c0_inv.clone()).with_offsets((Rational::zero(), Rational::zero()));
        x.coeffs[0][0] = Rational::zero();
        let mut acc = Self::one(truncs);
        let mut power = Self::one(truncs);
        for _ in 0..(truncs.0 + truncs.1) {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            acc = acc.try_add(&power)?;
        }
        Ok(acc
            .scale(&c0_inv)
            .with_offsets((-self.offsets.0.clone(), -self.offsets.1.clone())))
    }

    /// Exchanges the roles of `q1` and `q2`.
    pub fn swap(&self) -> BiSeries {
        let (t1, t2) = self.truncs();
        let mut out = Self::zero((t2, t1));
        for ((m, n), c) in self.terms() {
            out.coeffs[n][m] = c.clone();
        }
        out.offsets = (self.offsets.1.clone(), self.offsets.0.clone());
        out
    }

    /// The `q2 → 0` limit: requires a zero `q2` offset and returns the
    /// `q2^0` coefficient as a `q1`-series.
    pub fn q2_constant_term(&self) -> Result<QSeries> {
        if !self.offsets.1.is_zero() {
            return Err(Error::offsets(&self.offsets.1, &Rational::zero()));
        }
        let col = self.coeffs.iter().map(|r| r[0].clone()).collect();
        Ok(QSeries::from_coeffs(Var::Q1, col, self.truncs().0).with_offset(self.offsets.0.clone()))
    }

    /// Multiplies by `q1^a q2^b` (prefactor only).
    pub fn shift_offsets(&self, a: &Rational, b: &Rational) -> BiSeries {
        let mut out = self.clone();
        out.offsets.0 += a;
        out.offsets.1 += b;
        out
    }
}

impl From<i64> for BiSeries {
    fn from(c: i64) -> Self {
        let mut s = Self::zero((0, 0));
        s.coeffs[0][0] = int(c);
        s
    }
}
