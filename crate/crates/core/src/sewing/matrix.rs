//! Sewing moment matrices and the trace / resolvent expansions built on them.
//!
//! Entries are stored conjugated by `diag(√k)`, which turns
//! `A(k,l) = ε^((k+l)/2) (−1)^(l+1) (k+l−1)! / (√(kl) (k−1)! (l−1)!) E_{k+l}`
//! into the rational
//! `Ã(k,l) = t^(k+l) (−1)^(l+1) (k+l−1)! / (l (k−1)! (l−1)!) E_{k+l}`.
//! Traces of products, determinants and `(1,1)` entries are unchanged.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};
use crate::series::{bernoulli_numbers, EisensteinCache, QSeries, Ring, Var};

use super::eps::EpsSeries;

/// Square matrix of ε-series, indices `1..=size` stored at `0..size`.
#[derive(Clone, Debug, PartialEq)]
pub struct AMatrix<R> {
    entries: Vec<Vec<EpsSeries<R>>>,
    conjugated: bool,
}

impl<R: Ring> AMatrix<R> {
    pub fn from_fn(size: usize, conjugated: bool, mut f: impl FnMut(usize, usize) -> EpsSeries<R>) -> Self {
        AMatrix {
            entries: (1..=size).map(|k| (1..=size).map(|l| f(k, l)).collect()).collect(),
            conjugated,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_conjugated(&self) -> bool {
        self.conjugated
    }

    /// Entry `(k, l)` with 1-based indices.
    pub fn entry(&self, k: usize, l: usize) -> &EpsSeries<R> {
        &self.entries[k - 1][l - 1]
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&R) -> S) -> AMatrix<S> {
        AMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.map(proto, &f)).collect())
                .collect(),
            conjugated: self.conjugated,
        }
    }

    fn proto(&self) -> &R {
        self.entries[0][0].proto()
    }
}

fn a_coefficient(k: usize, l: usize) -> Rational {
    let sign = if l % 2 == 1 { 1 } else { -1 };
    let num = factorial((k + l - 1) as u64) * BigInt::from(sign);
    let den = factorial((k - 1) as u64) * factorial((l - 1) as u64) * BigInt::from(l);
    Rational::new(num, den)
}

/// The conjugated moment matrix of torus `a ∈ {1, 2}` in the variable
/// `q1` or `q2`.
pub fn a_matrix(torus: u8, size: usize, eps_trunc: u32, q_trunc: usize) -> AMatrix<QSeries> {
    let var = if torus == 1 { Var::Q1 } else { Var::Q2 };
    let mut cache = EisensteinCache::new(var, q_trunc);
    let zero = QSeries::zero(var, q_trunc);
    let t_trunc = 2 * eps_trunc + 1;
    AMatrix::from_fn(size, true, |k, l| {
        if (k + l) % 2 == 1 || (k + l) as u32 > t_trunc {
            return EpsSeries::zero_t(&zero, t_trunc);
        }
        let e = cache.get((k + l) as u32).scale(&a_coefficient(k, l));
        EpsSeries::t_monomial((k + l) as u32, e, t_trunc)
    })
}

/// The conjugated `q₂ → 0` limit of the second moment matrix:
/// `Ã₂(0)(k,l) = (−1)^l t^(k+l) B_{k+l} / (l (k+l) (k−1)! (l−1)!)`.
pub fn a2_degenerate(size: usize, eps_trunc: u32) -> AMatrix<Rational> {
    let bern = bernoulli_numbers(2 * size);
    let t_trunc = 2 * eps_trunc + 1;
    AMatrix::from_fn(size, true, |k, l| {
        let b = &bern[k + l];
        if Zero::is_zero(b) || (k + l) % 2 == 1 {
            return EpsSeries::zero_t(&Rational::zero(), t_trunc);
        }
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let den = factorial((k - 1) as u64)
            * factorial((l - 1) as u64)
            * BigInt::from(l)
            * BigInt::from(k + l);
        let c = b * Rational::new(BigInt::from(sign), den);
        EpsSeries::t_monomial((k + l) as u32, c, t_trunc)
    })
}

/// Lifts rational entries to constant series shaped like `proto`.
pub fn constant_entries(m: &AMatrix<Rational>, proto: &QSeries) -> AMatrix<QSeries> {
    let zero = proto.zero_like();
    m.map(&zero, |c| zero.one_like().scale(c))
}

fn check_size<R: Ring>(a: &AMatrix<R>, eps_trunc: u32) -> Result<()> {
    if (a.size() as u32) < eps_trunc {
        return Err(Error::MatrixTooSmall {
            size: a.size(),
            eps_order: eps_trunc,
        });
    }
    Ok(())
}

type Row<R> = Vec<EpsSeries<R>>;

fn unit_row<R: Ring>(size: usize, i: usize, proto: &R, eps_trunc: u32) -> Row<R> {
    (1..=size)
        .map(|j| {
            if j == i {
                EpsSeries::one(proto, eps_trunc)
            } else {
                EpsSeries::zero(proto, eps_trunc)
            }
        })
        .collect()
}

/// `row · M`, truncated at `ε^eps_trunc`.
fn row_times<R: Ring>(row: &Row<R>, m: &AMatrix<R>, eps_trunc: u32) -> Row<R> {
    let n = m.size();
    let mut out: Row<R> = (0..n).map(|_| EpsSeries::zero(m.proto(), eps_trunc)).collect();
    for (k, r) in row.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        for (l, acc) in out.iter_mut().enumerate() {
            let e = &m.entries[k][l];
            if e.is_zero() {
                continue;
            }
            *acc = acc.add(&r.mul(e).truncate_eps(eps_trunc));
        }
    }
    out
}

fn row_is_zero<R: Ring>(row: &Row<R>) -> bool {
    row.iter().all(EpsSeries::is_zero)
}

/// `log det(I − AB) = −Σ_{n≥1} Tr((AB)ⁿ)/n` to `ε^eps_trunc`.
///
/// `Tr((AB)ⁿ)` starts at `ε^(2n)`, so only `n ≤ eps_trunc/2` contributes.
pub fn log_det_i_minus<R: Ring>(a: &AMatrix<R>, b: &AMatrix<R>, eps_trunc: u32) -> Result<EpsSeries<R>> {
    check_size(a, eps_trunc)?;
    let size = a.size();
    let proto = a.proto().clone();
    let max_n = eps_trunc / 2;
    let mut traces: Vec<EpsSeries<R>> = (0..=max_n).map(|_| EpsSeries::zero(&proto, eps_trunc)).collect();
    for i in 1..=size {
        let mut row = unit_row(size, i, &proto, eps_trunc);
        for trace in traces.iter_mut().skip(1) {
            row = row_times(&row_times(&row, a, eps_trunc), b, eps_trunc);
            if row_is_zero(&row) {
                break;
            }
            *trace = trace.add(&row[i - 1]);
        }
    }
    let mut acc = EpsSeries::zero(&proto, eps_trunc);
    for (n, tr) in traces.iter().enumerate().skip(1) {
        acc = acc.sub(&tr.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
    }
    acc.check_even()?;
    Ok(acc)
}

/// `(P (I − AB)⁻¹)(1,1)` with `P` the identity when `prefix` is `None`.
pub fn resolvent_11_with<R: Ring>(
    prefix: Option<&AMatrix<R>>,
    a: &AMatrix<R>,
    b: &AMatrix<R>,
    eps_trunc: u32,
) -> Result<EpsSeries<R>> {
    check_size(a, eps_trunc)?;
    let size = a.size();
    let proto = a.proto().clone();
    let mut row = unit_row(size, 1, &proto, eps_trunc);
    if let Some(p) = prefix {
        row = row_times(&row, p, eps_trunc);
    }
    let mut acc = row[0].clone();
    loop {
        row = row_times(&row_times(&row, a, eps_trunc), b, eps_trunc);
        if row_is_zero(&row) {
            break;
        }
        acc = acc.add(&row[0]);
    }
    acc.check_even()?;
    Ok(acc)
}

/// `(I − AB)⁻¹(1,1)`.
pub fn resolvent_11<R: Ring>(a: &AMatrix<R>, b: &AMatrix<R>, eps_trunc: u32) -> Result<EpsSeries<R>> {
    resolvent_11_with(None, a, b, eps_trunc)
}

/// The matrix truncation an ε-order needs, checked against an explicit
/// request.
pub fn effective_size(requested: Option<usize>, eps_trunc: u32) -> Result<usize> {
    let size = requested.unwrap_or(eps_trunc as usize).max(1);
    if (size as u32) < eps_trunc {
        return Err(Error::MatrixTooSmall {
            size,
            eps_order: eps_trunc,
        });
    }
    Ok(size)
}
