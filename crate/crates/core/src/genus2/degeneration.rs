//! The `q₂ → 0` limit of a genus-two partition function written as a sum of
//! genus-one 1-point operators, and its `∂^l Θ` components.

use crate::error::Result;
use crate::rational::{rat, Rational};
use crate::series::{CSeries, QSeries, Var};
use crate::sewing::{degenerate_tau, EpsSeries};
use crate::virasoro::lambda_vector;
use crate::zhu::{specialize, BasePartition, DiffOp, OnePointEngine};

use super::closed::degenerate_log_det;

/// `Σ_n εⁿ Z(λ̃^[n])` with every operator in the Θ basis over `q1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationSum {
    ops: Vec<DiffOp>,
    q_trunc: usize,
}

impl DegenerationSum {
    /// Known modulo `ε^(eps_trunc + 1)`.
    pub fn eps_trunc(&self) -> u32 {
        self.ops.len() as u32 - 1
    }

    pub fn q_trunc(&self) -> usize {
        self.q_trunc
    }

    /// The operator multiplying `εⁿ`.
    pub fn op(&self, n: u32) -> &DiffOp {
        &self.ops[n as usize]
    }

    pub fn ops(&self) -> &[DiffOp] {
        &self.ops
    }
}

pub fn degeneration_sum(max_weight: u32, q_trunc: usize) -> Result<DegenerationSum> {
    let lambdas = lambda_vector(max_weight)?;
    let mut eng = OnePointEngine::new(Var::Q1, q_trunc);
    let ops = lambdas
        .iter()
        .map(|v| eng.state(v).to_theta_basis())
        .collect::<Result<Vec<_>>>()?;
    Ok(DegenerationSum { ops, q_trunc })
}

/// The sum applied to a concrete `Θ` at a concrete central charge.
pub fn specialize_sum(ds: &DegenerationSum, base: &BasePartition) -> Result<EpsSeries<QSeries>> {
    let proto = QSeries::zero(Var::Q1, ds.q_trunc).with_offset(base.theta.offset().clone());
    let terms = ds
        .ops
        .iter()
        .enumerate()
        .map(|(n, op)| Ok((n as u32, specialize(op, base)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EpsSeries::from_eps_terms(&proto, ds.eps_trunc(), terms))
}

/// `H_l`: the coefficient of `∂^l Θ`, a polynomial in `C` at each order.
pub fn extract_h(l: u32, ds: &DegenerationSum) -> EpsSeries<CSeries> {
    let proto = CSeries::zero(QSeries::zero(Var::Q1, ds.q_trunc));
    let terms = ds.ops.iter().enumerate().map(|(n, op)| {
        let by_degree = op.terms().filter(|((i, _), _)| *i == l).map(|((_, j), s)| (j, s.clone()));
        (n as u32, CSeries::from_terms(proto.proto().clone(), by_degree))
    });
    EpsSeries::from_eps_terms(&proto, ds.eps_trunc(), terms)
}

/// `exp(−(C/2) log det(I − A₁A₂(0))) · δ^l / l!` with `C` symbolic.
pub fn h_closed_form(l: u32, q_trunc: usize, eps_trunc: u32, size: Option<usize>) -> Result<EpsSeries<CSeries>> {
    let proto = CSeries::zero(QSeries::zero(Var::Q1, q_trunc));
    let minus_half: Rational = rat(-1, 2);
    let exponent = degenerate_log_det(q_trunc, eps_trunc, size)?.map(&proto, |s| CSeries::monomial(1, s.scale(&minus_half)));
    let det = exponent.exp()?;
    let delta = degenerate_tau(q_trunc, eps_trunc, size)?.map(&proto, |s| CSeries::constant(s.clone()));
    Ok(det.mul(&delta.divided_power(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::series::eisenstein;
    use crate::zhu::Basis;

    #[test]
    fn low_orders() {
        let t = 4;
        let ds = degeneration_sum(4, t).unwrap();
        assert!(ds.op(0).is_identity());
        assert!(ds.op(1).is_zero() && ds.op(3).is_zero());
        let e2 = eisenstein(2, t).unwrap().with_var(Var::Q1);
        let expect = DiffOp::from_terms(
            Basis::Theta,
            Var::Q1,
            t,
            [
                ((1, 0), QSeries::constant(Var::Q1, rat(-1, 12), t)),
                ((0, 1), e2.scale(&rat(-1, 24))),
            ],
        )
        .with_weight(Some(2));
        assert_eq!(ds.op(2), &expect);
    }

    #[test]
    fn heisenberg_to_eps_squared() {
        let t = 5;
        let ds = degeneration_sum(2, t).unwrap();
        let z = specialize_sum(&ds, &BasePartition::heisenberg(1, Var::Q1, t)).unwrap();
        let e2 = eisenstein(2, t).unwrap().with_var(Var::Q1);
        assert_eq!(z.coeff(0), QSeries::one(Var::Q1, t));
        assert_eq!(z.coeff(2), e2.scale(&rat(-1, 24)));
    }

    #[test]
    fn h_leading_terms() {
        let t = 3;
        let ds = degeneration_sum(4, t).unwrap();
        let h0 = extract_h(0, &ds);
        let h1 = extract_h(1, &ds);
        assert_eq!(h0.coeff(0), CSeries::constant(QSeries::one(Var::Q1, t)));
        assert_eq!(h1.coeff(0), CSeries::zero(QSeries::zero(Var::Q1, t)));
        assert_eq!(h1.coeff(2), CSeries::constant(QSeries::constant(Var::Q1, rat(-1, 12), t)));
        let e2 = eisenstein(2, t).unwrap().with_var(Var::Q1);
        assert_eq!(h0.coeff(2).coeff(1), e2.scale(&rat(-1, 24)));
        assert_eq!(h0.coeff(2).coeff(0), QSeries::zero(Var::Q1, t));
        assert_eq!(extract_h(2, &ds).coeff(4).coeff(0), QSeries::constant(Var::Q1, int(1) / int(288), t));
    }

    #[test]
    fn closed_form_matches_at_low_order() {
        let (t, e) = (3, 4);
        let ds = degeneration_sum(e, t).unwrap();
        for l in 0..=2 {
            assert_eq!(extract_h(l, &ds), h_closed_form(l, t, e, None).unwrap(), "H_{l}");
        }
    }
}
