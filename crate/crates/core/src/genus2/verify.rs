//! Exact verification suites for the degeneration identities.
//!
//! Every check is an equality of exact rational coefficients; a report
//! passes only when every check does.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::series::{eisenstein, eta_normalized, JsonCoeff, QSeries, Ring, Var};
use crate::sewing::{degenerate_tau, EpsSeries};
use crate::virasoro::Partition;
use crate::zhu::{structure_check, BasePartition, OnePointEngine};

use super::closed::{
    degenerate_det_factor, inverse_eta_power, taylor_shift, z2_module_degenerate, z2_module_pair, ModulePair,
};
use super::degeneration::{degeneration_sum, extract_h, h_closed_form, specialize_sum};

/// Truncation orders shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orders {
    pub eps_trunc: u32,
    pub q_trunc: usize,
    pub max_weight: u32,
    /// Sewing-matrix size; `None` picks the smallest exact one.
    pub matrix_size: Option<usize>,
}

impl Default for Orders {
    fn default() -> Self {
        Orders {
            eps_trunc: 8,
            q_trunc: 8,
            max_weight: 8,
            matrix_size: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub order: u32,
    pub expected: Value,
    pub computed: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegenerationReport {
    pub suite: String,
    pub pass: bool,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl DegenerationReport {
    pub fn new(suite: &str) -> Self {
        DegenerationReport {
            suite: suite.to_string(),
            pass: true,
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: DegenerationReport) {
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        for c in other.checks {
            self.push(Check {
                name: format!("{}: {}", other.suite, c.name),
                ..c
            });
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    fn compare<T: JsonCoeff + PartialEq>(&mut self, name: &str, order: u32, expected: &T, computed: &T) {
        self.push(Check {
            name: name.to_string(),
            pass: expected == computed,
            order,
            expected: expected.to_json(),
            computed: computed.to_json(),
        });
    }

    /// One check per `ε` order up to `through`.
    fn compare_eps<T: Ring + JsonCoeff>(&mut self, name: &str, through: u32, expected: &EpsSeries<T>, computed: &EpsSeries<T>) {
        for n in 0..=through {
            self.compare(name, n, &expected.coeff(n), &computed.coeff(n));
        }
    }

    /// `ε^n` coefficients vanish for every odd `n` up to `through`.
    fn odd_orders_vanish<T: Ring + JsonCoeff>(&mut self, name: &str, through: u32, s: &EpsSeries<T>) {
        for n in (1..=through).step_by(2) {
            self.compare(name, n, &s.proto().zero_like(), &s.coeff(n));
        }
    }

    fn error(&mut self, name: &str, e: &Error) {
        self.push(Check {
            name: name.to_string(),
            pass: false,
            order: 0,
            expected: Value::Null,
            computed: Value::String(e.to_string()),
        });
    }
}

impl fmt::Display for DegenerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(4).max(5);
        writeln!(f, "{:<width$}  {:>5}  result", "check", "order")?;
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            writeln!(f, "{:<width$}  {:>5}  {verdict}", c.name, c.order)?;
            if !c.pass {
                writeln!(f, "    expected: {}", c.expected)?;
                writeln!(f, "    computed: {}", c.computed)?;
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} checks, {} failed",
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        )
    }
}

const PREFACTOR_NOTE: &str = "the q2 -> 0 limit is normalized by q2^(r/24), the power that cancels eta(q2)^(-r); a q2^(r/2) prefactor has no finite nonzero limit";

fn e(k: u32, q: usize) -> QSeries {
    eisenstein(k, q).expect("even k >= 2").with_var(Var::Q1)
}

/// `lim_{q₂→0} q₂^(r/24) z2_module_pair` from the bivariate series. With
/// `q2_trunc = 0` the constant term in `q₂` is exact.
fn bivariate_limit(p: &ModulePair, o: &Orders) -> Result<EpsSeries<QSeries>> {
    let full = z2_module_pair(p, o.q_trunc, 0, o.eps_trunc, o.matrix_size)?;
    let shift = Rational::from_integer(p.rank.into()) / int(24);
    let proto = QSeries::zero(Var::Q1, o.q_trunc);
    let mut out = EpsSeries::zero(&proto, o.eps_trunc);
    for (n, c) in full.eps_terms()? {
        let c = c.shift_offsets(&int(0), &shift).q2_constant_term()?;
        out = out.add(&EpsSeries::eps_monomial(n, c, o.eps_trunc));
    }
    Ok(out)
}

/// `H_l` against its closed form, identically in `C`, for `l ≤ l_max`.
pub fn verify_det_hi(o: &Orders, l_max: u32) -> DegenerationReport {
    let mut r = DegenerationReport::new("detHi");
    if 2 * l_max > o.eps_trunc {
        r.error("preconditions", &Error::Precondition(format!("l_max {l_max} exceeds eps order {} / 2", o.eps_trunc)));
        return r;
    }
    if let Err(e) = det_hi_checks(&mut r, o, l_max) {
        r.error("computation", &e);
    }
    r
}

fn det_hi_checks(r: &mut DegenerationReport, o: &Orders, l_max: u32) -> Result<()> {
    let ds = degeneration_sum(o.eps_trunc, o.q_trunc)?;
    for l in 0..=l_max {
        let h = extract_h(l, &ds);
        let closed = h_closed_form(l, o.q_trunc, o.eps_trunc, o.matrix_size)?;
        r.compare_eps(&format!("H_{l}"), o.eps_trunc, &closed, &h);
        let zero = h.proto().zero_like();
        for n in 0..2 * l {
            r.compare(&format!("H_{l} below eps^{}", 2 * l), n, &zero, &h.coeff(n));
        }
    }
    Ok(())
}

/// The rank-one Heisenberg limit against `1/η(q)` at the degenerate modulus.
pub fn verify_heisenberg_degeneration(o: &Orders) -> DegenerationReport {
    let mut r = DegenerationReport::new("heisenberg-degen");
    r.note(PREFACTOR_NOTE);
    if let Err(e) = heisenberg_checks(&mut r, o) {
        r.error("computation", &e);
    }
    r
}

fn heisenberg_checks(r: &mut DegenerationReport, o: &Orders) -> Result<()> {
    let (q, et) = (o.q_trunc, o.eps_trunc);
    let p = ModulePair::vacuum(1);
    let limit = z2_module_degenerate(&p, q, et, o.matrix_size)?;
    r.compare_eps("substitution equals bivariate limit", et, &bivariate_limit(&p, o)?, &limit);

    let inv_eta = inverse_eta_power(Var::Q1, 1, q);
    let delta = degenerate_tau(q, et, o.matrix_size)?;
    let shifted = taylor_shift(&inv_eta, &delta);
    let ratio = limit.mul_trunc(&shifted.inv()?);

    let (e2, e4) = (e(2, q), e(4, q));
    let e2sq = &e2 * &e2;
    let known = et.min(5);
    let proto = QSeries::zero(Var::Q1, q);
    let head = |c2: QSeries, c4: QSeries| {
        EpsSeries::from_eps_terms(&proto, known, [(0, QSeries::one(Var::Q1, q)), (2, c2), (4, c4)])
    };

    let expect_ratio = head(QSeries::zero(Var::Q1, q), e4.scale(&rat(1, 576)));
    r.compare_eps("ratio to 1/eta(q)", known, &expect_ratio, &ratio.truncate_eps(known));
    r.odd_orders_vanish("ratio odd orders", et, &ratio);

    let shift_factor = head(e2.scale(&rat(-1, 24)), &e2sq.scale(&rat(1, 384)) + &e4.scale(&rat(5, 576)));
    let expect_shift = shift_factor.times_coeff(&inv_eta);
    r.compare_eps("1/eta(q) at q = q1 e^delta", known, &expect_shift, &shifted.truncate_eps(known));

    let expect_det = head(e2.scale(&rat(-1, 24)), &e2sq.scale(&rat(1, 384)) + &e4.scale(&rat(1, 96)));
    let det = degenerate_det_factor(1, q, et, o.matrix_size)?;
    r.compare_eps("det(I - A1 A2(0))^(-1/2)", known, &expect_det, &det.truncate_eps(known));
    Ok(())
}

/// Three-way degeneration check for a module pair with `β = 0` at `C = r`.
pub fn verify_theta_degeneration(p: &ModulePair, o: &Orders) -> DegenerationReport {
    let mut r = DegenerationReport::new(&format!("theta-degen alpha^2={} r={}", crate::rational::format(&p.alpha_sq), p.rank));
    r.note(PREFACTOR_NOTE);
    let bad = if !num_traits::Zero::is_zero(&p.beta_sq) || !num_traits::Zero::is_zero(&p.alpha_dot_beta) {
        Some("the second module must be trivial (beta = 0)".to_string())
    } else if p.rank == 0 {
        Some("rank must be positive".to_string())
    } else if o.max_weight < o.eps_trunc {
        Some(format!("max weight {} is below eps order {}", o.max_weight, o.eps_trunc))
    } else {
        None
    };
    if let Some(msg) = bad {
        r.error("preconditions", &Error::Precondition(msg));
        return r;
    }
    if let Err(e) = theta_checks(&mut r, p, o) {
        r.error("computation", &e);
    }
    r
}

fn theta_checks(r: &mut DegenerationReport, p: &ModulePair, o: &Orders) -> Result<()> {
    let (q, et) = (o.q_trunc, o.eps_trunc);
    let module_limit = bivariate_limit(p, o)?;
    let vacuum_limit = bivariate_limit(&ModulePair::vacuum(p.rank), o)?;
    let closed_ratio = module_limit.mul_trunc(&vacuum_limit.inv()?);

    let theta1 = QSeries::one(Var::Q1, q).with_offset(&p.alpha_sq / int(2));
    let delta = degenerate_tau(q, et, o.matrix_size)?;
    let shifted = taylor_shift(&theta1, &delta);
    r.compare_eps("(a) closed-form ratio = (b) Theta(q) at q = q1 e^delta", et, &shifted, &closed_ratio);

    let ds = degeneration_sum(o.max_weight, q)?;
    let base = BasePartition::heisenberg_module(p.rank, &p.alpha_sq, Var::Q1, q);
    let summed = specialize_sum(&ds, &base)?.truncate_eps(et);
    let unnormalized = summed.times_coeff(&inverse_eta_power(Var::Q1, p.rank, q));
    r.compare_eps("(c) eta^(-r) x degeneration sum = closed-form limit", et, &module_limit, &unnormalized);

    let substituted = z2_module_degenerate(p, q, et, o.matrix_size)?;
    r.compare_eps("substitution equals bivariate limit", et, &module_limit, &substituted);

    let det = degenerate_det_factor(p.rank, q, et, o.matrix_size)?;
    let normalized = summed.mul_trunc(&det.inv()?);
    r.compare_eps("degeneration sum / det factor = Theta(q)", et, &shifted, &normalized);
    Ok(())
}

/// `qd E₂ = 5E₄ − E₂²` and `qd η = −½ E₂ η`.
pub fn verify_modular_identities(q_trunc: usize) -> DegenerationReport {
    let mut r = DegenerationReport::new("modular-identities");
    let (e2, e4) = (eisenstein(2, q_trunc).unwrap(), eisenstein(4, q_trunc).unwrap());
    let order = q_trunc as u32;
    r.compare("qd E2 = 5 E4 - E2^2", order, &(&e4.scale(&int(5)) - &(&e2 * &e2)), &e2.qd());
    let eta = eta_normalized(q_trunc);
    r.compare("qd eta = -1/2 E2 eta", order, &(&e2 * &eta).scale(&rat(-1, 2)), &eta.qd());
    r
}

/// Degree bounds and quasi-modular weights for every PBW monomial of
/// weight at most `max_weight`, in both bases.
pub fn verify_structure(max_weight: u32, q_trunc: usize) -> DegenerationReport {
    let mut r = DegenerationReport::new("structure");
    let mut eng = OnePointEngine::new(Var::Q, q_trunc);
    for w in 0..=max_weight {
        for part in Partition::all_of_weight(w) {
            let z = eng.partition(&part);
            let mut ops = vec![z.clone()];
            match z.to_theta_basis() {
                Ok(th) => ops.push(th),
                Err(e) => r.error(&format!("{part} Theta"), &e),
            }
            for op in ops {
                let rep = structure_check(&part, &op);
                let bounds: Vec<Value> = rep
                    .entries
                    .iter()
                    .map(|e| serde_json::json!({"d_order": e.d_order, "c_degree_max": e.degree_bound, "weight": e.weight}))
                    .collect();
                r.push(Check {
                    name: format!("{part} {:?}", rep.basis),
                    pass: rep.pass,
                    order: w,
                    expected: Value::Array(bounds),
                    computed: serde_json::to_value(&rep.entries).expect("entries serialize"),
                });
            }
        }
    }
    r
}

/// Module pairs exercised by the `all` suite.
pub fn default_pairs() -> Vec<ModulePair> {
    vec![
        ModulePair::first_only(1, int(0)),
        ModulePair::first_only(1, int(1)),
        ModulePair::first_only(2, rat(1, 4)),
        ModulePair::first_only(1, int(2)),
    ]
}

pub fn verify_all(o: &Orders) -> DegenerationReport {
    let mut all = DegenerationReport::new("all");
    all.merge(verify_modular_identities(o.q_trunc.max(20)));
    all.merge(verify_det_hi(o, o.eps_trunc / 2));
    all.merge(verify_heisenberg_degeneration(o));
    for p in default_pairs() {
        all.merge(verify_theta_degeneration(&p, o));
    }
    all.merge(verify_structure(o.max_weight, o.q_trunc));
    all
}
