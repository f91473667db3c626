//! The graded ring `ℚ[E₂, E₄, E₆]` of quasi-modular forms.
//!
//! Decomposition of a q-series is an exact linear solve against the
//! q-expansions of the weight-graded monomials `E₂^a E₄^b E₆^c`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::special::EisensteinCache;
use super::{QSeries, Var};

/// Exponent triple `(a, b, c)` of `E₂^a E₄^b E₆^c`.
pub type Monomial = (u32, u32, u32);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuasiModularPoly {
    coeffs: BTreeMap<Monomial, Rational>,
}

/// All `(a, b, c)` with `2a + 4b + 6c = weight`, in lexicographic order.
pub fn monomials(weight: u32) -> Vec<Monomial> {
    if weight % 2 == 1 {
        return Vec::new();
    }
    let half = weight / 2;
    let mut out = Vec::new();
    for c in 0..=half / 3 {
        for b in 0..=(half - 3 * c) / 2 {
            let a = half - 3 * c - 2 * b;
            out.push((a, b, c));
        }
    }
    out.sort();
    out
}

impl QuasiModularPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = QuasiModularPoly::default();
        for (m, c) in terms {
            let e = p.coeffs.entry(m).or_insert_with(Rational::zero);
            *e += c;
        }
        p.coeffs.retain(|_, c| !c.is_zero());
        p
    }

    pub fn coeffs(&self) -> &BTreeMap<Monomial, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.coeffs.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Weight of the monomials, `None` for the zero polynomial or a mixed one.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.coeffs.keys().map(|(a, b, c)| 2 * a + 4 * b + 6 * c);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn to_series(&self, trunc: usize) -> QSeries {
        let mut cache = EisensteinCache::new(Var::Q, trunc);
        let mut acc = QSeries::zero(Var::Q, trunc);
        for (m, c) in &self.coeffs {
            acc = &acc + &monomial_series(*m, &mut cache).scale(c);
        }
        acc
    }
}

fn monomial_series((a, b, c): Monomial, cache: &mut EisensteinCache) -> QSeries {
    let trunc = cache.trunc();
    let mut acc = QSeries::one(Var::Q, trunc);
    for (k, e) in [(2, a), (4, b), (6, c)] {
        for _ in 0..e {
            acc = (&acc * cache.get(k)).truncate(trunc);
        }
    }
    acc
}

/// Expresses `s` in the basis `{E₂^a E₄^b E₆^c : 2a + 4b + 6c = weight}`.
///
/// Fails when the truncation is too short to separate the basis monomials,
/// or when the system has no exact solution.
pub fn to_quasimodular(s: &QSeries, weight: u32) -> Result<QuasiModularPoly> {
    if !s.offset().is_zero() {
        return Err(Error::NotQuasiModular(weight));
    }
    let basis = monomials(weight);
    if basis.is_empty() {
        return if s.is_zero() {
            Ok(QuasiModularPoly::default())
        } else {
            Err(Error::NotQuasiModular(weight))
        };
    }
    let trunc = s.trunc();
    let mut cache = EisensteinCache::new(Var::Q, trunc);
    let columns: Vec<QSeries> = basis.iter().map(|m| monomial_series(*m, &mut cache)).collect();

    // Augmented matrix: one row per q-power.
    let ncols = basis.len();
    let mut rows: Vec<Vec<Rational>> = (0..=trunc)
        .map(|n| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c.coeff(n).clone()).collect();
            row.push(s.coeff(n).clone());
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in col..=ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() < ncols {
        return Err(Error::InsufficientTruncation {
            weight,
            monomials: ncols,
            trunc,
        });
    }
    if rows[r..].iter().any(|row| !row[ncols].is_zero()) {
        return Err(Error::NotQuasiModular(weight));
    }
    Ok(QuasiModularPoly::from_terms(
        pivots.iter().enumerate().map(|(i, &col)| (basis[col], rows[i][ncols].clone())),
    ))
}

impl fmt::Display for QuasiModularPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((a, b, c), coef) in &self.coeffs {
            let mut factors = Vec::new();
            for (k, e) in [(2, a), (4, b), (6, c)] {
                match e {
                    0 => {}
                    1 => factors.push(format!("E{k}")),
                    _ => factors.push(format!("E{k}^{e}")),
                }
            }
            let negative = coef < &Rational::zero();
            let mag = if negative { -coef.clone() } else { coef.clone() };
            let body = match (factors.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => factors.join("*"),
                (false, false) => format!("{}*{}", mag, factors.join("*")),
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::series::special::eisenstein;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(0), vec![(0, 0, 0)]);
        assert_eq!(monomials(4), vec![(0, 1, 0), (2, 0, 0)]);
        assert_eq!(monomials(10).len(), 5);
        assert_eq!(monomials(12).len(), 7);
        assert!(monomials(5).is_empty());
    }

    #[test]
    fn e2_squared() {
        let e2 = eisenstein(2, 8).unwrap();
        let p = to_quasimodular(&(&e2 * &e2).truncate(8), 4).unwrap();
        assert_eq!(p, QuasiModularPoly::from_terms([((2, 0, 0), int(1))]));
    }

    #[test]
    fn derivative_of_e2() {
        let e2 = eisenstein(2, 12).unwrap();
        let p = to_quasimodular(&e2.qd(), 4).unwrap();
        assert_eq!(
            p,
            QuasiModularPoly::from_terms([((2, 0, 0), int(-1)), ((0, 1, 0), int(5))])
        );
        assert_eq!(p.to_string(), "5*E4 - E2^2");
    }

    #[test]
    fn e8_is_multiple_of_e4_squared() {
        let e8 = eisenstein(8, 12).unwrap();
        let p = to_quasimodular(&e8, 8).unwrap();
        let e4 = eisenstein(4, 12).unwrap();
        let ratio = e8.coeff(0) / (e4.coeff(0) * e4.coeff(0));
        assert_eq!(p, QuasiModularPoly::from_terms([((0, 2, 0), ratio.clone())]));
        // -B_8/8! over (1/720)^2
        assert_eq!(ratio, rat(3, 7));
        assert_eq!(p.to_series(12), e8);
    }

    #[test]
    fn rejects_wrong_weight_and_short_truncation() {
        let e4 = eisenstein(4, 10).unwrap();
        assert_eq!(to_quasimodular(&e4, 6), Err(Error::NotQuasiModular(6)));
        assert!(matches!(
            to_quasimodular(&e4.truncate(0), 4),
            Err(Error::InsufficientTruncation { .. })
        ));
        let eta = crate::series::special::eta_normalized(10);
        assert!(to_quasimodular(&eta, 0).is_err());
    }
}
