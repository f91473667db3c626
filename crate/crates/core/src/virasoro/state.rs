//! PBW monomials, polynomials in the central charge, and vacuum-module
//! states.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Parts `k₁ ≥ k₂ ≥ … ≥ k_m ≥ 2` of the monomial `L₋k₁ … L₋k_m 𝟙`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn vacuum() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts into weakly decreasing order; rejects parts below 2.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if let Some(p) = parts.iter().find(|&&p| p < 2) {
            return Err(Error::Parse(format!(
                "partition part {p} < 2 (L_-1 and L_0 annihilate the vacuum)"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p >= 2));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Every partition of `weight` into parts `>= 2`, in lexicographic order.
    pub fn all_of_weight(weight: u32) -> Vec<Partition> {
        fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (2..=max.min(left)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(weight, weight, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("vacuum");
        }
        for p in &self.0 {
            write!(f, "L[-{p}]")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `"4,2"`; empty string is the vacuum.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::vacuum());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `Σ_j c_j C^j` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CPolynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl CPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn monomial(degree: u32, c: Rational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.coeffs.insert(degree, c);
        }
        p
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_assign(&mut self, other: &CPolynomial) {
        for (d, c) in &other.coeffs {
            let e = self.coeffs.entry(*d).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                self.coeffs.remove(d);
            }
        }
    }

    pub fn mul(&self, other: &CPolynomial) -> CPolynomial {
        let mut out = CPolynomial::zero();
        for (d1, a) in &self.coeffs {
            for (d2, b) in &other.coeffs {
                out.add_assign(&CPolynomial::monomial(d1 + d2, a * b));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CPolynomial {
        let mut out = CPolynomial::zero();
        for (d, a) in &self.coeffs {
            out.add_assign(&CPolynomial::monomial(*d, a * c));
        }
        out
    }

    /// Specializes `C` to a number.
    pub fn eval(&self, c: &Rational) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (d, a)| {
            acc + a * num_traits::pow(c.clone(), *d as usize)
        })
    }
}

impl fmt::Display for CPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().rev() {
            let mag = c.abs();
            let mono = match d {
                0 => String::new(),
                1 => "C".to_string(),
                _ => format!("C^{d}"),
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad C-polynomial {s:?}"));
        let mut out = CPolynomial::zero();
        let mut rest = s.trim();
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        }
        loop {
            let cut = match (rest.find(" + "), rest.find(" - ")) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            let term = cut.map_or(rest, |i| &rest[..i]).trim();
            let (coef, degree) = if let Some((c, m)) = term.split_once('*') {
                (rational::parse(c)?, parse_c_power(m).ok_or_else(bad)?)
            } else if let Some(d) = parse_c_power(term) {
                (Rational::one(), d)
            } else {
                (rational::parse(term)?, 0)
            };
            let coef = if negative { -coef } else { coef };
            out.add_assign(&CPolynomial::monomial(degree, coef));
            match cut {
                None => return Ok(out),
                Some(i) => {
                    negative = &rest[i..i + 3] == " - ";
                    rest = &rest[i + 3..];
                }
            }
        }
    }
}

fn parse_c_power(s: &str) -> Option<u32> {
    match s {
        "C" => Some(1),
        _ => s.strip_prefix("C^")?.parse().ok(),
    }
}

impl From<Rational> for CPolynomial {
    fn from(c: Rational) -> Self {
        CPolynomial::constant(c)
    }
}

/// A finite combination `Σ p(C) · L₋k₁…L₋k_m 𝟙` in PBW form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirState {
    terms: BTreeMap<Partition, CPolynomial>,
}

impl VirState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(Partition::vacuum(), CPolynomial::one())
    }

    pub fn monomial(p: Partition, c: CPolynomial) -> Self {
        let mut s = Self::default();
        s.add_term(p, &c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, CPolynomial)>) -> Self {
        let mut s = Self::default();
        for (p, c) in terms {
            s.add_term(p, &c);
        }
        s
    }

    pub fn add_term(&mut self, p: Partition, c: &CPolynomial) {
        let e = self.terms.entry(p.clone()).or_default();
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add_assign(&mut self, other: &VirState) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c);
        }
    }

    pub fn scale(&self, c: &CPolynomial) -> VirState {
        let mut out = VirState::zero();
        for (p, a) in &self.terms {
            out.add_term(p.clone(), &a.mul(c));
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &CPolynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Partition) -> CPolynomial {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight of all monomials, if there is one.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(Partition::weight);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    /// The weight-`n` component.
    pub fn component(&self, weight: u32) -> VirState {
        VirState {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.weight() == weight)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops monomials of weight above `max`.
    pub fn truncate_weight(&self, max: u32) -> VirState {
        VirState {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.weight() <= max)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for VirState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| {
                if c.terms().count() > 1 {
                    format!("({c}) · {p}")
                } else {
                    format!("{c} · {p}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct VirTermJson {
    partition: Vec<u32>,
    coeff: String,
}

impl Serialize for VirState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms
            .iter()
            .map(|(p, c)| VirTermJson {
                partition: p.parts().to_vec(),
                coeff: c.to_string(),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VirState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<VirTermJson>::deserialize(d)?;
        let mut out = VirState::zero();
        for t in raw {
            let p = Partition::new(t.partition).map_err(D::Error::custom)?;
            let c: CPolynomial = t.coeff.parse().map_err(D::Error::custom)?;
            out.add_term(p, &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn partitions_sorted_and_checked() {
        let p: Partition = "2,4,2".parse().unwrap();
        assert_eq!(p.parts(), &[4, 2, 2]);
        assert_eq!(p.weight(), 8);
        assert!("2,1".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::vacuum());
    }

    #[test]
    fn partition_counts() {
        // Partitions into parts >= 2: p(n) - p(n-1).
        let counts: Vec<usize> = (0..=12).map(|w| Partition::all_of_weight(w).len()).collect();
        assert_eq!(counts, vec![1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12, 14, 21]);
    }

    #[test]
    fn cpolynomial_text_roundtrip() {
        let p = CPolynomial::from_terms_for_test(&[(2, int(1)), (1, rat(-1, 2)), (0, rat(3, 4))]);
        assert_eq!(p.to_string(), "C^2 - 1/2*C + 3/4");
        assert_eq!(p.to_string().parse::<CPolynomial>().unwrap(), p);
        assert_eq!("-C".parse::<CPolynomial>().unwrap(), CPolynomial::monomial(1, int(-1)));
        assert_eq!(p.eval(&int(2)), rat(15, 4));
    }

    #[test]
    fn state_json_roundtrip() {
        let s = VirState::from_terms([
            (Partition::new(vec![2, 2]).unwrap(), CPolynomial::constant(rat(1, 288))),
            (Partition::new(vec![4]).unwrap(), CPolynomial::monomial(1, rat(-1, 480))),
        ]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"[{"partition":[2,2],"coeff":"1/288"},{"partition":[4],"coeff":"-1/480*C"}]"#
        );
        assert_eq!(serde_json::from_str::<VirState>(&j).unwrap(), s);
    }

    impl CPolynomial {
        fn from_terms_for_test(t: &[(u32, Rational)]) -> Self {
            let mut p = CPolynomial::zero();
            for (d, c) in t {
                p.add_assign(&CPolynomial::monomial(*d, c.clone()));
            }
            p
        }
    }
}
