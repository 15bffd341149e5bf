use super::axioms::first_failure;
use super::{AxiomReport, AxiomStatus, Bilinear, ExtendingDatum};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{vadd, vsub, Vector};

/// The four maps (lact, ract, cocycle, vmult) of a commutative datum; the
/// other two actions are the mirrored ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeDatum {
    pub a: Algebra,
    pub v_dim: usize,
    pub lact: Bilinear,
    pub ract: Bilinear,
    pub cocycle: Bilinear,
    pub vmult: Bilinear,
}

pub type CommutativeReport = AxiomReport;

impl CommutativeDatum {
    /// Full datum with a ↼ x := x ▷ a and a ⇀ x := x ◁ a.
    pub fn expand(&self) -> ExtendingDatum {
        let (n, m) = (self.a.dim(), self.v_dim);
        ExtendingDatum {
            a: self.a.clone(),
            v_dim: m,
            lact: self.lact.clone(),
            ract: self.ract.clone(),
            lhar: Bilinear::from_fn(n, m, n, |i, x| self.ract.at(x, i).to_vec()),
            rhar: Bilinear::from_fn(n, m, m, |i, x| self.lact.at(x, i).to_vec()),
            cocycle: self.cocycle.clone(),
            vmult: self.vmult.clone(),
        }
    }
}

fn check_symmetric(name: &str, b: &Bilinear) -> Result<()> {
    for i in 0..b.left {
        for j in 0..i {
            if b.at(i, j) != b.at(j, i) {
                return Err(Error::NotSymmetric(format!("{name} at (v{i}, v{j})")));
            }
        }
    }
    Ok(())
}

/// Evaluates CA1-CA6.
pub fn commutative_check(c: &CommutativeDatum) -> Result<CommutativeReport> {
    let d = c.expand();
    d.check_shapes()?;
    if !c.a.is_commutative() {
        return Err(Error::NotCommutativeBase);
    }
    check_symmetric("cocycle", &c.cocycle)?;
    check_symmetric("vmult", &c.vmult)?;
    let f = d.field().clone();
    let (n, m) = (d.a.dim(), d.v_dim);
    let ea = |i: usize| d.a.basis_vec(i);
    let ev = |i: usize| d.v_basis_vec(i);
    let one = d.a.unit().clone();
    let am = |x: &[crate::field::Elem], y: &[crate::field::Elem]| d.a.mul(x, y);
    let add = |x: &Vector, y: &Vector| vadd(&f, x, y);
    let sub = |x: &Vector, y: &Vector| vsub(&f, x, y);
    let (a1, a2, v1, v2, v3) = (('a', n), ('a', n), ('v', m), ('v', m), ('v', m));
    let mut statuses = Vec::new();
    let mut push = |name: &'static str, witness: Option<String>| {
        statuses.push(AxiomStatus { name, holds: witness.is_none(), witness });
    };

    push(
        "CA1",
        first_failure(&[v1, a1, a2], |t| {
            let (x, a, b) = (ev(t[0]), ea(t[1]), ea(t[2]));
            d.lact(&x, &one) == x
                && d.is_zero_a(&d.ract(&x, &one))
                && d.lact(&d.lact(&x, &a), &b) == d.lact(&x, &am(&a, &b))
        }),
    );
    push(
        "CA2",
        first_failure(&[v1, v2, v3], |t| {
            let (x, y, z) = (ev(t[0]), ev(t[1]), ev(t[2]));
            let lhs = sub(&d.vmult(&x, &d.vmult(&y, &z)), &d.vmult(&d.vmult(&x, &y), &z));
            let rhs = sub(&d.lact(&z, &d.cocycle(&x, &y)), &d.lact(&x, &d.cocycle(&y, &z)));
            lhs == rhs
        }),
    );
    push(
        "CA3",
        first_failure(&[v1, v2, a1], |t| {
            let (x, y, a) = (ev(t[0]), ev(t[1]), ea(t[2]));
            d.lact(&d.vmult(&x, &y), &a) == add(&d.lact(&x, &d.ract(&y, &a)), &d.vmult(&x, &d.lact(&y, &a)))
        }),
    );
    push(
        "CA4",
        first_failure(&[v1, a1, a2], |t| {
            let (x, a, b) = (ev(t[0]), ea(t[1]), ea(t[2]));
            d.ract(&x, &am(&a, &b)) == add(&am(&a, &d.ract(&x, &b)), &d.ract(&d.lact(&x, &b), &a))
        }),
    );
    push(
        "CA5",
        first_failure(&[v1, v2, a1], |t| {
            let (x, y, a) = (ev(t[0]), ev(t[1]), ea(t[2]));
            let rhs =
                sub(&add(&d.ract(&x, &d.ract(&y, &a)), &d.cocycle(&x, &d.lact(&y, &a))), &am(&d.cocycle(&x, &y), &a));
            d.ract(&d.vmult(&x, &y), &a) == rhs
        }),
    );
    push(
        "CA6",
        first_failure(&[v1, v2, v3], |t| {
            let (x, y, z) = (ev(t[0]), ev(t[1]), ev(t[2]));
            let lhs = sub(&d.cocycle(&x, &d.vmult(&y, &z)), &d.cocycle(&d.vmult(&x, &y), &z));
            let rhs = sub(&d.ract(&z, &d.cocycle(&x, &y)), &d.ract(&x, &d.cocycle(&y, &z)));
            lhs == rhs
        }),
    );
    Ok(AxiomReport { statuses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::unified::check_axioms;

    #[test]
    fn ground_field_datums_pass() {
        let f = Field::prime(3).unwrap();
        let k = Algebra::ground(&f);
        for a0 in 0..3 {
            for u in 0..3 {
                let mut c = CommutativeDatum {
                    a: k.clone(),
                    v_dim: 1,
                    lact: Bilinear::from_fn(1, 1, 1, |_, _| vec![f.one()]),
                    ract: Bilinear::zero(&f, 1, 1, 1),
                    cocycle: Bilinear::zero(&f, 1, 1, 1),
                    vmult: Bilinear::zero(&f, 1, 1, 1),
                };
                c.cocycle.set(0, 0, &[f.from_int(a0)]);
                c.vmult.set(0, 0, &[f.from_int(u)]);
                assert!(commutative_check(&c).unwrap().all_hold());
                assert!(check_axioms(&c.expand()).unwrap().all_hold());
            }
        }
    }

    #[test]
    fn asymmetric_cocycle_is_rejected() {
        let f = Field::prime(3).unwrap();
        let k = Algebra::ground(&f);
        let mut c = CommutativeDatum {
            a: k,
            v_dim: 2,
            lact: Bilinear::from_fn(2, 1, 2, |x, _| crate::linalg::unit_vec(&f, 2, x)),
            ract: Bilinear::zero(&f, 2, 1, 1),
            cocycle: Bilinear::zero(&f, 2, 2, 1),
            vmult: Bilinear::zero(&f, 2, 2, 2),
        };
        c.cocycle.set(0, 1, &[f.one()]);
        assert!(matches!(commutative_check(&c), Err(Error::NotSymmetric(_))));
    }
}
