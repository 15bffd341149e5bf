use super::{datum_from_retraction, unified_product_unchecked, ExtendingDatum};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{self, affine_solve, unit_vec, vadd, vsub, Matrix, Vector};

/// A pair (r: V -> A, v: V -> V) between two datums over the same A and V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismPair {
    pub r: Matrix,
    pub v: Matrix,
}

impl MorphismPair {
    pub fn identity(d: &ExtendingDatum) -> Self {
        let f = d.field();
        MorphismPair { r: Matrix::zeros(f, d.a.dim(), d.v_dim), v: Matrix::identity(f, d.v_dim) }
    }
}

fn check_compatible(d: &ExtendingDatum, d2: &ExtendingDatum, pair: Option<&MorphismPair>) -> Result<()> {
    d.check_shapes()?;
    d2.check_shapes()?;
    if d.a != d2.a || d.v_dim != d2.v_dim {
        return Err(Error::ShapeMismatch("datums over different A or V".into()));
    }
    if let Some(p) = pair {
        let (n, m) = (d.a.dim(), d.v_dim);
        if (p.r.rows, p.r.cols, p.v.rows, p.v.cols) != (n, m, m, m) {
            return Err(Error::ShapeMismatch(format!("r must be {n} x {m} and v must be {m} x {m}")));
        }
    }
    Ok(())
}

/// Evaluates the six morphism conditions; returns the first failing one.
fn first_failing(d: &ExtendingDatum, d2: &ExtendingDatum, p: &MorphismPair) -> Option<&'static str> {
    let f = d.field();
    let (n, m) = (d.a.dim(), d.v_dim);
    let r = |x: &[Elem]| p.r.apply(f, x);
    let v = |x: &[Elem]| p.v.apply(f, x);
    let am = |a: &[Elem], b: &[Elem]| d.a.mul(a, b);
    let ea: Vec<Vector> = (0..n).map(|i| unit_vec(f, n, i)).collect();
    let ev: Vec<Vector> = (0..m).map(|i| unit_vec(f, m, i)).collect();
    for x in &ev {
        for a in &ea {
            // M3, M4
            let lhs = r(&d.lact(x, a));
            let rhs = vadd(f, &vsub(f, &am(&r(x), a), &d.ract(x, a)), &d2.ract(&v(x), a));
            if lhs != rhs {
                return Some("M3");
            }
            if v(&d.lact(x, a)) != d2.lact(&v(x), a) {
                return Some("M4");
            }
            // M5, M6
            let lhs = r(&d.rhar(a, x));
            let rhs = vadd(f, &vsub(f, &am(a, &r(x)), &d.lhar(a, x)), &d2.lhar(a, &v(x)));
            if lhs != rhs {
                return Some("M5");
            }
            if v(&d.rhar(a, x)) != d2.rhar(a, &v(x)) {
                return Some("M6");
            }
        }
        for y in &ev {
            let (rx, ry, vx, vy) = (r(x), r(y), v(x), v(y));
            let lhs = v(&d.vmult(x, y));
            let rhs = vadd(f, &vadd(f, &d2.rhar(&rx, &vy), &d2.lact(&vx, &ry)), &d2.vmult(&vx, &vy));
            if lhs != rhs {
                return Some("M2");
            }
            let lhs = r(&d.vmult(x, y));
            let mut rhs = vsub(f, &vadd(f, &am(&rx, &ry), &d2.cocycle(&vx, &vy)), &d.cocycle(x, y));
            rhs = vadd(f, &vadd(f, &rhs, &d2.lhar(&rx, &vy)), &d2.ract(&vx, &ry));
            if lhs != rhs {
                return Some("M1");
            }
        }
    }
    None
}

/// Whether (r, v) satisfies M1-M6, i.e. psi(a, x) = (a + r(x), v(x)) is an
/// algebra map from the product of `d` to the product of `d2`.
pub fn morphism_check(d: &ExtendingDatum, d2: &ExtendingDatum, pair: &MorphismPair) -> Result<bool> {
    check_compatible(d, d2, Some(pair))?;
    Ok(first_failing(d, d2, pair).is_none())
}

/// Matrix of psi(a, x) = (a + r(x), v(x)) on A x V.
pub fn psi_map(d: &ExtendingDatum, pair: &MorphismPair) -> Matrix {
    let f = d.field();
    let (n, m) = (d.a.dim(), d.v_dim);
    let mut cols = Vec::with_capacity(n + m);
    for i in 0..n {
        cols.push(unit_vec(f, n + m, i));
    }
    for j in 0..m {
        let mut c = pair.r.col(j);
        c.extend(pair.v.col(j));
        cols.push(c);
    }
    Matrix::from_cols(f, n + m, &cols)
}

/// The datum d2 for which psi(r, v) is an isomorphism from the product of `d`
/// onto the product of d2 (v must be invertible).
pub fn transport_datum(d: &ExtendingDatum, pair: &MorphismPair) -> Result<ExtendingDatum> {
    let f = d.field();
    let (n, m) = (d.a.dim(), d.v_dim);
    let psi = psi_map(d, pair);
    let inv = psi.inverse(f).ok_or_else(|| Error::ShapeMismatch("v is not invertible".into()))?;
    let e = unified_product_unchecked(d);
    let target = crate::algebra::Algebra::from_fn(f.clone(), n + m, psi.apply(f, e.unit()), |i, j| {
        let (u, w) = (inv.col(i), inv.col(j));
        psi.apply(f, &e.mul(&u, &w))
    });
    let a_basis: Vec<Vector> = (0..n).map(|i| unit_vec(f, n + m, i)).collect();
    let mut p = Matrix::zeros(f, n, n + m);
    for i in 0..n {
        p.set(i, i, f.one());
    }
    let (d2, _) = datum_from_retraction(&target, &a_basis, &p)?;
    Ok(d2)
}

/// Solves the conditions linear in r (M2, M3, M5) for a fixed v, then tests
/// the quadratic M1 on every solution. Stops at the first pair unless `all`.
fn solve_for_r(d: &ExtendingDatum, d2: &ExtendingDatum, v: &Matrix, all: bool) -> Result<Vec<MorphismPair>> {
    let f = d.field();
    let (n, m) = (d.a.dim(), d.v_dim);
    let v_ok = (0..m).all(|x| {
        let x = unit_vec(f, m, x);
        (0..n).all(|a| {
            let a = unit_vec(f, n, a);
            v.apply(f, &d.lact(&x, &a)) == d2.lact(&v.apply(f, &x), &a)
                && v.apply(f, &d.rhar(&a, &x)) == d2.rhar(&a, &v.apply(f, &x))
        })
    });
    if !v_ok {
        return Ok(Vec::new());
    }
    let to_r = |c: &[Elem]| {
        let mut r = Matrix::zeros(f, n, m);
        for (k, ck) in c.iter().enumerate() {
            r.set(k / m, k % m, ck.clone());
        }
        r
    };
    let ea: Vec<Vector> = (0..n).map(|i| unit_vec(f, n, i)).collect();
    let ev: Vec<Vector> = (0..m).map(|i| unit_vec(f, m, i)).collect();
    let residual = |c: &[Elem]| -> Vector {
        let r = to_r(c);
        let ra = |x: &[Elem]| r.apply(f, x);
        let va = |x: &[Elem]| v.apply(f, x);
        let mut out = Vec::new();
        for x in &ev {
            for a in &ea {
                let lhs = ra(&d.lact(x, a));
                let rhs = vadd(f, &vsub(f, &d.a.mul(&ra(x), a), &d.ract(x, a)), &d2.ract(&va(x), a));
                out.extend(vsub(f, &lhs, &rhs));
                let lhs = ra(&d.rhar(a, x));
                let rhs = vadd(f, &vsub(f, &d.a.mul(a, &ra(x)), &d.lhar(a, x)), &d2.lhar(a, &va(x)));
                out.extend(vsub(f, &lhs, &rhs));
            }
            for y in &ev {
                let lhs = va(&d.vmult(x, y));
                let rhs =
                    vadd(f, &vadd(f, &d2.rhar(&ra(x), &va(y)), &d2.lact(&va(x), &ra(y))), &d2.vmult(&va(x), &va(y)));
                out.extend(vsub(f, &lhs, &rhs));
            }
        }
        out
    };
    let Some(space) = affine_solve(f, n * m, residual) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for c in space.points(f)? {
        let pair = MorphismPair { r: to_r(&c), v: v.clone() };
        if first_failing(d, d2, &pair).is_none() {
            out.push(pair);
            if !all {
                break;
            }
        }
    }
    Ok(out)
}

/// All pairs (r, v) with the given v satisfying M1-M6, in lexicographic
/// order of r.
pub fn morphisms_with_v(d: &ExtendingDatum, d2: &ExtendingDatum, v: &Matrix) -> Result<Vec<MorphismPair>> {
    check_compatible(d, d2, None)?;
    if !d.field().is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("morphism enumeration".into()));
    }
    solve_for_r(d, d2, v, true)
}

/// Some pair (r, v) with v invertible realizing an equivalence d -> d2.
pub fn find_equivalence(d: &ExtendingDatum, d2: &ExtendingDatum) -> Result<Option<MorphismPair>> {
    check_compatible(d, d2, None)?;
    let f = d.field();
    if !f.is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("equivalence search".into()));
    }
    for v in linalg::general_linear(f, d.v_dim)? {
        if let Some(p) = solve_for_r(d, d2, &v, false)?.pop() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Some r such that (r, id) realizes d and d2 as cohomologous.
pub fn find_cohomologous(d: &ExtendingDatum, d2: &ExtendingDatum) -> Result<Option<Matrix>> {
    check_compatible(d, d2, None)?;
    let f = d.field();
    if !f.is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("cohomology search".into()));
    }
    Ok(solve_for_r(d, d2, &Matrix::identity(f, d.v_dim), false)?.pop().map(|p| p.r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Field;
    use crate::unified::check_axioms;

    fn ground_datum(f: &Field, a0: u64, u: u64) -> ExtendingDatum {
        let k = Algebra::ground(f);
        let mut d = ExtendingDatum::with_characters(&k, 1, &[f.one()], &[f.one()]);
        d.cocycle.set(0, 0, &[f.from_int(a0 as i64)]);
        d.vmult.set(0, 0, &[f.from_int(u as i64)]);
        d
    }

    #[test]
    fn identity_pair_is_a_morphism() {
        let f = Field::prime(2).unwrap();
        let d = ground_datum(&f, 1, 1);
        assert!(morphism_check(&d, &d, &MorphismPair::identity(&d)).unwrap());
        assert_eq!(find_equivalence(&d, &d).unwrap(), Some(MorphismPair::identity(&d)));
    }

    #[test]
    fn ground_field_equivalences_over_gf2() {
        let f = Field::prime(2).unwrap();
        let d10 = ground_datum(&f, 1, 0);
        let d00 = ground_datum(&f, 0, 0);
        let d01 = ground_datum(&f, 0, 1);
        assert!(find_equivalence(&d10, &d00).unwrap().is_some());
        assert!(find_equivalence(&d00, &d01).unwrap().is_none());
        assert!(!morphism_check(&d10, &d00, &MorphismPair::identity(&d10)).unwrap());
    }

    #[test]
    fn transport_gives_a_morphism() {
        let f = Field::prime(3).unwrap();
        let d = ground_datum(&f, 2, 1);
        let pair = MorphismPair {
            r: Matrix::from_rows(&f, 1, &[vec![f.one()]]),
            v: Matrix::from_rows(&f, 1, &[vec![f.from_int(2)]]),
        };
        let d2 = transport_datum(&d, &pair).unwrap();
        assert!(check_axioms(&d2).unwrap().all_hold());
        assert!(morphism_check(&d, &d2, &pair).unwrap());
    }
}
