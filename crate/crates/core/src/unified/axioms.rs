use super::ExtendingDatum;
use crate::error::Result;
use crate::linalg::{vadd, vsub, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomStatus {
    pub name: &'static str,
    pub holds: bool,
    /// First failing basis tuple, e.g. "a=e1, x=v0".
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub statuses: Vec<AxiomStatus>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.statuses.iter().all(|s| s.holds)
    }

    pub fn failing(&self) -> Vec<String> {
        self.statuses
            .iter()
            .filter(|s| !s.holds)
            .map(|s| match &s.witness {
                Some(w) => format!("{} ({w})", s.name),
                None => s.name.to_string(),
            })
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&AxiomStatus> {
        self.statuses.iter().find(|s| s.name == name)
    }
}

/// Searches tuples of basis indices (ranges given per slot) for a failure.
pub(super) fn first_failure(ranges: &[(char, usize)], mut holds: impl FnMut(&[usize]) -> bool) -> Option<String> {
    let k = ranges.len();
    let mut idx = vec![0usize; k];
    if ranges.iter().any(|r| r.1 == 0) {
        return None;
    }
    loop {
        if !holds(&idx) {
            let parts: Vec<String> = ranges
                .iter()
                .zip(&idx)
                .enumerate()
                .map(|(s, ((kind, _), i))| {
                    format!("{}={}{}", slot_name(*kind, s, ranges), if *kind == 'a' { 'e' } else { 'v' }, i)
                })
                .collect();
            return Some(parts.join(", "));
        }
        let mut s = k;
        loop {
            if s == 0 {
                return None;
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < ranges[s].1 {
                break;
            }
            idx[s] = 0;
        }
    }
}

fn slot_name(kind: char, slot: usize, ranges: &[(char, usize)]) -> char {
    let before = ranges[..slot].iter().filter(|r| r.0 == kind).count();
    match kind {
        'a' => ['a', 'b', 'c'][before],
        _ => ['x', 'y', 'z'][before],
    }
}

/// Evaluates the normalization conditions and A1-A12 on all basis tuples.
pub fn check_axioms(d: &ExtendingDatum) -> Result<AxiomReport> {
    d.check_shapes()?;
    let f = d.a.field().clone();
    let (n, m) = (d.a.dim(), d.v_dim);
    let ea = |i: usize| d.a.basis_vec(i);
    let ev = |i: usize| d.v_basis_vec(i);
    let one = d.a.unit().clone();
    let am = |x: &[crate::field::Elem], y: &[crate::field::Elem]| d.a.mul(x, y);
    let add = |x: &Vector, y: &Vector| vadd(&f, x, y);
    let sub = |x: &Vector, y: &Vector| vsub(&f, x, y);
    let (a1, v1, a2, v2) = (('a', n), ('v', m), ('a', n), ('v', m));

    let mut statuses = Vec::new();
    let mut push = |name: &'static str, witness: Option<String>| {
        statuses.push(AxiomStatus { name, holds: witness.is_none(), witness });
    };

    push(
        "normalization",
        first_failure(&[v1], |t| {
            let x = ev(t[0]);
            d.is_zero_a(&d.ract(&x, &one))
                && d.lact(&x, &one) == x
                && d.is_zero_a(&d.lhar(&one, &x))
                && d.rhar(&one, &x) == x
        }),
    );

    // A1: (V, rhar, lact) is an A-bimodule
    push(
        "A1",
        first_failure(&[a1, a2, v1], |t| {
            let (a, b, x) = (ea(t[0]), ea(t[1]), ev(t[2]));
            d.rhar(&a, &d.rhar(&b, &x)) == d.rhar(&am(&a, &b), &x)
                && d.lact(&d.lact(&x, &a), &b) == d.lact(&x, &am(&a, &b))
                && d.rhar(&a, &d.lact(&x, &b)) == d.lact(&d.rhar(&a, &x), &b)
        }),
    );

    // A2: x.(y.z) - (x.y).z = f(x,y) rhar z - x lact f(y,z)
    push(
        "A2",
        first_failure(&[v1, v2, ('v', m)], |t| {
            let (x, y, z) = (ev(t[0]), ev(t[1]), ev(t[2]));
            let lhs = sub(&d.vmult(&x, &d.vmult(&y, &z)), &d.vmult(&d.vmult(&x, &y), &z));
            let rhs = sub(&d.rhar(&d.cocycle(&x, &y), &z), &d.lact(&x, &d.cocycle(&y, &z)));
            lhs == rhs
        }),
    );

    // A3: f(x, y.z) - f(x.y, z) = f(x,y) lhar z - x ract f(y,z)
    push(
        "A3",
        first_failure(&[v1, v2, ('v', m)], |t| {
            let (x, y, z) = (ev(t[0]), ev(t[1]), ev(t[2]));
            let lhs = sub(&d.cocycle(&x, &d.vmult(&y, &z)), &d.cocycle(&d.vmult(&x, &y), &z));
            let rhs = sub(&d.lhar(&d.cocycle(&x, &y), &z), &d.ract(&x, &d.cocycle(&y, &z)));
            lhs == rhs
        }),
    );

    // A4: a rhar (x.y) = (a rhar x).y + (a lhar x) rhar y
    push(
        "A4",
        first_failure(&[a1, v1, v2], |t| {
            let (a, x, y) = (ea(t[0]), ev(t[1]), ev(t[2]));
            d.rhar(&a, &d.vmult(&x, &y)) == add(&d.vmult(&d.rhar(&a, &x), &y), &d.rhar(&d.lhar(&a, &x), &y))
        }),
    );

    // A5: (a lhar x) lhar y = a lhar (x.y) + a f(x,y) - f(a rhar x, y)
    push(
        "A5",
        first_failure(&[a1, v1, v2], |t| {
            let (a, x, y) = (ea(t[0]), ev(t[1]), ev(t[2]));
            let lhs = d.lhar(&d.lhar(&a, &x), &y);
            let rhs =
                sub(&add(&d.lhar(&a, &d.vmult(&x, &y)), &am(&a, &d.cocycle(&x, &y))), &d.cocycle(&d.rhar(&a, &x), &y));
            lhs == rhs
        }),
    );

    // A6: (ab) lhar x = a (b lhar x) + a lhar (b rhar x)
    push(
        "A6",
        first_failure(&[a1, a2, v1], |t| {
            let (a, b, x) = (ea(t[0]), ea(t[1]), ev(t[2]));
            d.lhar(&am(&a, &b), &x) == add(&am(&a, &d.lhar(&b, &x)), &d.lhar(&a, &d.rhar(&b, &x)))
        }),
    );

    // A7: x ract (ab) = (x ract a) b + (x lact a) ract b
    push(
        "A7",
        first_failure(&[v1, a1, a2], |t| {
            let (x, a, b) = (ev(t[0]), ea(t[1]), ea(t[2]));
            d.ract(&x, &am(&a, &b)) == add(&am(&d.ract(&x, &a), &b), &d.ract(&d.lact(&x, &a), &b))
        }),
    );

    // A8: x ract (y ract a) = (x.y) ract a + f(x,y) a - f(x, y lact a)
    push(
        "A8",
        first_failure(&[v1, v2, a1], |t| {
            let (x, y, a) = (ev(t[0]), ev(t[1]), ea(t[2]));
            let lhs = d.ract(&x, &d.ract(&y, &a));
            let rhs =
                sub(&add(&d.ract(&d.vmult(&x, &y), &a), &am(&d.cocycle(&x, &y), &a)), &d.cocycle(&x, &d.lact(&y, &a)));
            lhs == rhs
        }),
    );

    // A9: (x.y) lact a = x lact (y ract a) + x.(y lact a)
    push(
        "A9",
        first_failure(&[v1, v2, a1], |t| {
            let (x, y, a) = (ev(t[0]), ev(t[1]), ea(t[2]));
            d.lact(&d.vmult(&x, &y), &a) == add(&d.lact(&x, &d.ract(&y, &a)), &d.vmult(&x, &d.lact(&y, &a)))
        }),
    );

    // A10: a (x ract b) + a lhar (x lact b) = (a lhar x) b + (a rhar x) ract b
    push(
        "A10",
        first_failure(&[a1, v1, a2], |t| {
            let (a, x, b) = (ea(t[0]), ev(t[1]), ea(t[2]));
            add(&am(&a, &d.ract(&x, &b)), &d.lhar(&a, &d.lact(&x, &b)))
                == add(&am(&d.lhar(&a, &x), &b), &d.ract(&d.rhar(&a, &x), &b))
        }),
    );

    // A11: x ract (a lhar y) + f(x, a rhar y) = (x ract a) lhar y + f(x lact a, y)
    push(
        "A11",
        first_failure(&[v1, a1, v2], |t| {
            let (x, a, y) = (ev(t[0]), ea(t[1]), ev(t[2]));
            add(&d.ract(&x, &d.lhar(&a, &y)), &d.cocycle(&x, &d.rhar(&a, &y)))
                == add(&d.lhar(&d.ract(&x, &a), &y), &d.cocycle(&d.lact(&x, &a), &y))
        }),
    );

    // A12: x lact (a lhar y) + x.(a rhar y) = (x ract a) rhar y + (x lact a).y
    push(
        "A12",
        first_failure(&[v1, a1, v2], |t| {
            let (x, a, y) = (ev(t[0]), ea(t[1]), ev(t[2]));
            add(&d.lact(&x, &d.lhar(&a, &y)), &d.vmult(&x, &d.rhar(&a, &y)))
                == add(&d.rhar(&d.ract(&x, &a), &y), &d.vmult(&d.lact(&x, &a), &y))
        }),
    );

    Ok(AxiomReport { statuses })
}
