//! Degree and weight bounds on 1-point operators.
//!
//! For `v = L[−k₁] … L[−k_m] 𝟙` of weight `n`, the coefficient of `C^j ∂^i`
//! is quasi-modular of weight `n − 2i`, with `j ≤ ⌊(m − i)/2⌋` in the Z
//! basis and `j ≤ m − i` in the Θ basis.

use serde::Serialize;

use crate::series::{to_quasimodular, QuasiModularPoly};
use crate::virasoro::Partition;

use super::diffop::{Basis, DiffOp};

#[derive(Clone, Debug, Serialize)]
pub struct StructureEntry {
    pub d_order: u32,
    pub c_degree: u32,
    pub degree_bound: u32,
    pub weight: u32,
    /// The graded-ring form, when the solve succeeded.
    pub quasimodular: Option<String>,
    pub pass: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub partition: Vec<u32>,
    pub basis: Basis,
    pub pass: bool,
    pub entries: Vec<StructureEntry>,
}

fn degree_bound(basis: Basis, m: u32, i: u32) -> Option<u32> {
    let room = m.checked_sub(i)?;
    Some(match basis {
        Basis::Z => room / 2,
        Basis::Theta => room,
    })
}

pub fn structure_check(p: &Partition, op: &DiffOp) -> StructureReport {
    let m = p.len() as u32;
    let n = p.weight();
    let mut entries = Vec::new();
    for ((i, j), s) in op.terms() {
        let bound = degree_bound(op.basis(), m, i);
        let weight = n.checked_sub(2 * i);
        let mut note = None;
        let mut pass = true;
        if bound.is_none_or(|b| j > b) {
            pass = false;
            note = Some(format!("C-degree {j} exceeds bound {bound:?}"));
        }
        let poly: Option<QuasiModularPoly> = match weight {
            None => {
                pass = false;
                note = Some(format!("derivative order {i} exceeds half the weight {n}"));
                None
            }
            Some(w) => match to_quasimodular(s, w) {
                Ok(q) => Some(q),
                Err(e) => {
                    pass = false;
                    note = Some(e.to_string());
                    None
                }
            },
        };
        entries.push(StructureEntry {
            d_order: i,
            c_degree: j,
            degree_bound: bound.unwrap_or(0),
            weight: weight.unwrap_or(0),
            quasimodular: poly.map(|q| q.to_string()),
            pass,
            note,
        });
    }
    StructureReport {
        partition: p.parts().to_vec(),
        basis: op.basis(),
        pass: entries.iter().all(|e| e.pass),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Var;
    use crate::zhu::recursion::OnePointEngine;

    #[test]
    fn small_examples() {
        let mut eng = OnePointEngine::new(Var::Q, 8);
        let p: Partition = "2,2".parse().unwrap();
        let op = eng.partition(&p);
        let r = structure_check(&p, &op);
        assert!(r.pass);
        let constant = r.entries.iter().find(|e| e.d_order == 0).unwrap();
        assert_eq!(constant.c_degree, 1);
        assert_eq!(constant.quasimodular.as_deref(), Some("1/2*E4"));
        let th = structure_check(&p, &op.to_theta_basis().unwrap());
        assert!(th.pass);

        let p4: Partition = "4".parse().unwrap();
        let r4 = structure_check(&p4, &eng.partition(&p4));
        assert!(r4.pass && r4.entries.is_empty());
    }

    #[test]
    fn all_monomials_up_to_weight_eight() {
        let mut eng = OnePointEngine::new(Var::Q, 8);
        for w in 0..=8 {
            for p in Partition::all_of_weight(w) {
                let op = eng.partition(&p);
                assert!(structure_check(&p, &op).pass, "{p} Z basis");
                let th = op.to_theta_basis().unwrap();
                assert!(structure_check(&p, &th).pass, "{p} Theta basis");
            }
        }
    }

    #[test]
    fn violations_are_reported() {
        let p: Partition = "2".parse().unwrap();
        // ∂ · C is not allowed for a single L[-2] in the Z basis.
        let bad = DiffOp::from_terms(
            Basis::Z,
            Var::Q,
            4,
            [((1, 1), crate::series::QSeries::one(Var::Q, 4))],
        );
        let r = structure_check(&p, &bad);
        assert!(!r.pass);
        assert!(r.entries[0].note.as_ref().unwrap().contains("exceeds"));
    }
}
