//! Text and JSON forms of series.
//!
//! Text: `c0 + c1*q + c2*q^2 + O(q^3)`, wrapped as `q^(a)*(...)` when the
//! offset is nonzero. JSON: `{variable, offset, trunc, coeffs: {"n": "p/q"}}`
//! with only nonzero coefficients listed. Both forms round-trip exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::{BiSeries, CSeries, QSeries, Var};

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let mag = c.abs();
        let body = match (mono.is_empty(), mag.is_one()) {
            (true, _) => mag.to_string(),
            (false, true) => mono,
            (false, false) => format!("{mag}*{mono}"),
        };
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn power(var: &str, n: usize) -> String {
    match n {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{n}"),
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.var().name();
        let wrap = !self.offset().is_zero();
        if wrap {
            write!(f, "{var}^({})*(", self.offset())?;
        }
        write_terms(
            f,
            self.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(n, c)| (power(var, n), c)),
        )?;
        write!(f, " + O({var}^{})", self.trunc() + 1)?;
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn split_signed_terms(body: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut rest = body.trim();
    let mut negative = false;
    if let Some(r) = rest.strip_prefix('-') {
        negative = true;
        rest = r;
    }
    loop {
        let next_plus = rest.find(" + ");
        let next_minus = rest.find(" - ");
        let cut = match (next_plus, next_minus) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match cut {
            None => {
                out.push((negative, rest.trim().to_string()));
                return Ok(out);
            }
            Some(i) => {
                out.push((negative, rest[..i].trim().to_string()));
                negative = &rest[i..i + 3] == " - ";
                rest = &rest[i + 3..];
            }
        }
    }
}

/// Parses `var`, `var^n`, `c`, `c*var`, `c*var^n` into `(var?, n, c)`.
fn parse_term(term: &str) -> Result<(Option<String>, usize, Rational)> {
    let bad = || Error::Parse(format!("bad series term {term:?}"));
    let (coef, mono) = match term.split_once('*') {
        Some((c, m)) => (rational::parse(c)?, m),
        None => {
            if term.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Ok((None, 0, rational::parse(term)?));
            }
            (Rational::one(), term)
        }
    };
    let (var, n) = match mono.split_once('^') {
        Some((v, n)) => (v, n.parse::<usize>().map_err(|_| bad())?),
        None => (mono, 1),
    };
    if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphanumeric()) {
        return Err(bad());
    }
    Ok((Some(var.to_string()), n, coef))
}

impl FromStr for QSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<QSeries> {
        let s = s.trim();
        let (offset, body) = match s.find("^(") {
            Some(i) if s.ends_with(')') && s[i..].contains(")*(") => {
                let close = i + s[i..].find(")*(").unwrap();
                let off = rational::parse(&s[i + 2..close])?;
                (off, &s[close + 3..s.len() - 1])
            }
            _ => (Rational::zero(), s),
        };
        let mut var: Option<Var> = None;
        let mut trunc = None;
        let mut terms = Vec::new();
        let mut set_var = |name: &str| -> Result<()> {
            let v = Var::from_name(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            match var {
                Some(old) if old != v => Err(Error::VariableMismatch(old.to_string(), name.into())),
                _ => {
                    var = Some(v);
                    Ok(())
                }
            }
        };
        for (neg, term) in split_signed_terms(body)? {
            if let Some(inner) = term.strip_prefix("O(").and_then(|t| t.strip_suffix(')')) {
                let (v, n, _) = parse_term(inner)?;
                set_var(v.as_deref().unwrap_or(""))?;
                if n == 0 {
                    return Err(Error::Parse("O-term must have positive order".into()));
                }
                trunc = Some(n - 1);
                continue;
            }
            let (v, n, c) = parse_term(&term)?;
            if let Some(v) = v {
                set_var(&v)?;
            }
            terms.push((n, if neg { -c } else { c }));
        }
        let trunc = trunc.ok_or_else(|| Error::Parse("missing O(...) term".into()))?;
        let var = var.unwrap_or(Var::Q);
        let mut coeffs = vec![Rational::zero(); trunc + 1];
        for (n, c) in terms {
            if n > trunc {
                return Err(Error::Parse(format!("term of order {n} beyond O-term")));
            }
            coeffs[n] += c;
        }
        Ok(QSeries::from_coeffs(var, coeffs, trunc).with_offset(offset))
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesJson {
    variable: Var,
    offset: String,
    trunc: usize,
    coeffs: BTreeMap<usize, String>,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesJson {
            variable: self.var(),
            offset: rational::format(self.offset()),
            trunc: self.trunc(),
            coeffs: self
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(n, c)| (n, rational::format(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = QSeriesJson::deserialize(d)?;
        let mut coeffs = vec![Rational::zero(); j.trunc + 1];
        for (n, c) in j.coeffs {
            if n > j.trunc {
                return Err(D::Error::custom(format!("coefficient {n} beyond trunc")));
            }
            coeffs[n] = rational::parse(&c).map_err(D::Error::custom)?;
        }
        let offset = rational::parse(&j.offset).map_err(D::Error::custom)?;
        Ok(QSeries::from_coeffs(j.variable, coeffs, j.trunc).with_offset(offset))
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (o1, o2) = self.offsets();
        let wrap = !o1.is_zero() || !o2.is_zero();
        if wrap {
            write!(f, "q1^({o1})*q2^({o2})*(")?;
        }
        write_terms(
            f,
            self.terms().map(|((m, n), c)| {
                let mono = [power("q1", m), power("q2", n)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join("*");
                (mono, c)
            }),
        )?;
        let (t1, t2) = self.truncs();
        write!(f, " + O(q1^{}, q2^{})", t1 + 1, t2 + 1)?;
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BiSeriesJson {
    variables: [Var; 2],
    offsets: [String; 2],
    truncs: [usize; 2],
    coeffs: BTreeMap<String, String>,
}

impl Serialize for BiSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (o1, o2) = self.offsets();
        let (t1, t2) = self.truncs();
        BiSeriesJson {
            variables: [Var::Q1, Var::Q2],
            offsets: [rational::format(o1), rational::format(o2)],
            truncs: [t1, t2],
            coeffs: self
                .terms()
                .map(|((m, n), c)| (format!("{m},{n}"), rational::format(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = BiSeriesJson::deserialize(d)?;
        let mut terms = Vec::new();
        for (k, c) in j.coeffs {
            let (m, n) = k
                .split_once(',')
                .and_then(|(m, n)| Some((m.parse().ok()?, n.parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad exponent key {k:?}")))?;
            terms.push(((m, n), rational::parse(&c).map_err(D::Error::custom)?));
        }
        let offsets = (
            rational::parse(&j.offsets[0]).map_err(D::Error::custom)?,
            rational::parse(&j.offsets[1]).map_err(D::Error::custom)?,
        );
        Ok(BiSeries::from_terms(offsets, (j.truncs[0], j.truncs[1]), terms))
    }
}

/// Coefficient types that appear inside nested JSON series.
pub trait JsonCoeff: Sized {
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self>;
}

fn json_err(e: impl fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

impl JsonCoeff for Rational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(rational::format(self))
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        rational::parse(v.as_str().ok_or_else(|| json_err("expected a rational string"))?)
    }
}

impl JsonCoeff for QSeries {
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("series serialize")
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(json_err)
    }
}

impl JsonCoeff for BiSeries {
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("series serialize")
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(json_err)
    }
}

/// `{"zero": <series>, "c_coeffs": {"j": <series>}}`; the zero series pins
/// the variable and truncation when no coefficient is present.
impl JsonCoeff for CSeries {
    fn to_json(&self) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> =
            self.terms().map(|(d, s)| (d.to_string(), s.to_json())).collect();
        serde_json::json!({ "zero": self.proto().to_json(), "c_coeffs": coeffs })
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        let proto = QSeries::from_json(&v["zero"])?;
        let map = v["c_coeffs"]
            .as_object()
            .ok_or_else(|| json_err("expected c_coeffs object"))?;
        let mut terms = Vec::new();
        for (d, s) in map {
            let d: u32 = d.parse().map_err(json_err)?;
            terms.push((d, QSeries::from_json(s)?));
        }
        Ok(CSeries::from_terms(proto, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::series::special::{eisenstein, eta_normalized};

    #[test]
    fn renders_eisenstein() {
        let e2 = eisenstein(2, 4).unwrap();
        assert_eq!(e2.to_string(), "-1/12 + 2*q + 6*q^2 + 8*q^3 + 14*q^4 + O(q^5)");
        assert_eq!(eisenstein(3, 2).unwrap().to_string(), "0 + O(q^3)");
        assert_eq!(
            eta_normalized(3).to_string(),
            "q^(1/24)*(1 - q - q^2 + O(q^4))"
        );
    }

    #[test]
    fn text_roundtrip_examples() {
        for s in [
            eisenstein(2, 6).unwrap(),
            eta_normalized(7),
            eta_normalized(7).inv().unwrap(),
            QSeries::zero(Var::Eps, 0),
            QSeries::from_coeffs(Var::Z, vec![int(0), int(1), rat(-1, 2)], 5),
        ] {
            let back: QSeries = s.to_string().parse().unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn json_shape() {
        let eta = eta_normalized(3);
        let j = serde_json::to_string(&eta).unwrap();
        assert_eq!(
            j,
            r#"{"variable":"q","offset":"1/24","trunc":3,"coeffs":{"0":"1","1":"-1","2":"-1"}}"#
        );
        let back: QSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, eta);
    }

    #[test]
    fn bivariate_json_roundtrip() {
        let b = BiSeries::outer(
            &eta_normalized(3).with_var(Var::Q1),
            &eisenstein(4, 2).unwrap().with_var(Var::Q2),
        );
        let j = serde_json::to_string(&b).unwrap();
        let back: BiSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, b);
        assert!(b.to_string().starts_with("q1^(1/24)*q2^(0)*(1/720 + 1/3*q2"));
    }

    #[test]
    fn parse_errors() {
        assert!("1 + q".parse::<QSeries>().is_err());
        assert!("1 + q + O(z^3)".parse::<QSeries>().is_err());
        assert!("1 + q^5 + O(q^3)".parse::<QSeries>().is_err());
    }
}
