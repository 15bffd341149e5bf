//! Flag datums: codimension-1 extensions, their classification and the
//! supersolvable towers built from them.

mod catalog;
mod classify;
mod families;

use crate::algebra::{characters, Algebra, Character};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{self, affine_solve, unit_vec, vadd, vscale, vsub, zero_vec, AffineSpace, Matrix, Vector};
use crate::unified::{AxiomReport, AxiomStatus, Bilinear, ExtendingDatum};

pub use catalog::{paper_catalog_dim2, paper_catalog_dim3, CatalogEntry};
pub use classify::{classify_codim1, supersolvable_catalog, ClassifiedFamily, FlagClass};
pub use families::{flag_family_generators, FamilyBase, FlagFamily};

/// Largest base dimension accepted by `enumerate_flag_datums`.
pub const MAX_ENUM_DIM: usize = 4;

/// (Λ, λ, D, d, a0, u). The derived ordering is the lexicographic order on
/// the fields in this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagDatum {
    pub big_lambda: Character,
    pub lambda: Character,
    pub big_d: Matrix,
    pub d: Matrix,
    pub a0: Vector,
    pub u: Elem,
}

/// The pair (q, α) relating two flag datums: x maps to α + q x'.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    pub q: Elem,
    pub alpha: Vector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquivMode {
    Equivalent,
    Cohomologous,
}

impl EquivMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EquivMode::Equivalent => "equivalent",
            EquivMode::Cohomologous => "cohomologous",
        }
    }
}

impl std::str::FromStr for EquivMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equivalent" => Ok(EquivMode::Equivalent),
            "cohomologous" => Ok(EquivMode::Cohomologous),
            _ => Err(Error::Usage(format!("unknown mode {s:?}"))),
        }
    }
}

pub type FlagReport = AxiomReport;

fn check_shape(a: &Algebra, fd: &FlagDatum) -> Result<()> {
    let n = a.dim();
    let ok = fd.big_lambda.values.len() == n
        && fd.lambda.values.len() == n
        && (fd.big_d.rows, fd.big_d.cols) == (n, n)
        && (fd.d.rows, fd.d.cols) == (n, n)
        && fd.a0.len() == n;
    if ok {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!("flag datum does not fit an algebra of dimension {n}")))
    }
}

/// Residual (lhs - rhs) of equation `eq` (1..=6) at basis indices (i, j).
fn residual(a: &Algebra, fd: &FlagDatum, eq: usize, i: usize, j: usize) -> Vector {
    let f = a.field();
    let n = a.dim();
    let (e_i, e_j) = (unit_vec(f, n, i), unit_vec(f, n, j));
    let big_l = |v: &[Elem]| fd.big_lambda.apply(f, v);
    let lam = |v: &[Elem]| fd.lambda.apply(f, v);
    let big_d = |v: &[Elem]| fd.big_d.apply(f, v);
    let d = |v: &[Elem]| fd.d.apply(f, v);
    let sub = |x: &Vector, y: &Vector| vsub(f, x, y);
    let sc = |c: &Elem, v: &[Elem]| vscale(f, c, v);
    match eq {
        1 => {
            let mut r = vec![f.sub(&big_l(&fd.a0), &lam(&fd.a0))];
            r.extend(sub(&big_d(&fd.a0), &d(&fd.a0)));
            r.push(lam(&d(&e_i)));
            r.push(big_l(&big_d(&e_i)));
            r
        }
        2 => {
            let ab = a.product(i, j).to_vec();
            let mut r = sub(&sub(&d(&ab), &a.mul(&e_i, &d(&e_j))), &sc(&lam(&e_j), &d(&e_i)));
            r.extend(sub(&sub(&big_d(&ab), &sc(&big_l(&e_i), &big_d(&e_j))), &a.mul(&big_d(&e_i), &e_j)));
            r
        }
        3 => {
            let de = d(&e_i);
            let mut r = sub(&sub(&d(&de), &sc(&fd.u, &de)), &sub(&a.mul(&e_i, &fd.a0), &sc(&lam(&e_i), &fd.a0)));
            let bde = big_d(&e_i);
            r.extend(sub(&sub(&big_d(&bde), &sc(&fd.u, &bde)), &sub(&a.mul(&fd.a0, &e_i), &sc(&big_l(&e_i), &fd.a0))));
            r
        }
        4 => {
            let c = f.sub(&big_l(&e_i), &lam(&e_i));
            sub(&sub(&big_d(&d(&e_i)), &d(&big_d(&e_i))), &sc(&c, &fd.a0))
        }
        5 => {
            let c = f.sub(&big_l(&e_i), &lam(&e_i));
            vec![f.sub(&f.sub(&big_l(&d(&e_i)), &lam(&big_d(&e_i))), &f.mul(&c, &fd.u))]
        }
        6 => {
            let lhs = vadd(f, &a.mul(&e_i, &big_d(&e_j)), &sc(&big_l(&e_j), &d(&e_i)));
            let rhs = vadd(f, &a.mul(&d(&e_i), &e_j), &sc(&lam(&e_i), &big_d(&e_j)));
            sub(&lhs, &rhs)
        }
        _ => unreachable!(),
    }
}

const PAIR_EQS: [bool; 7] = [false, false, true, false, false, false, true];
const NAMES: [&str; 7] = ["", "flag1", "flag2", "flag3", "flag4", "flag5", "flag6"];

/// Verifies flag1-flag6 on basis vectors (pairs for flag2 and flag6).
pub fn flag_check(a: &Algebra, fd: &FlagDatum) -> Result<FlagReport> {
    check_shape(a, fd)?;
    for (name, ch) in [("Lambda", &fd.big_lambda), ("lambda", &fd.lambda)] {
        if !ch.is_character_of(a) {
            return Err(Error::NotACharacter(name.into()));
        }
    }
    let f = a.field();
    let n = a.dim();
    let mut statuses = Vec::new();
    for eq in 1..=6 {
        let mut witness = None;
        'outer: for i in 0..n {
            for j in 0..if PAIR_EQS[eq] { n } else { 1 } {
                if !linalg::is_zero_vec(f, &residual(a, fd, eq, i, j)) {
                    witness = Some(if PAIR_EQS[eq] { format!("a=e{i}, b=e{j}") } else { format!("a=e{i}") });
                    break 'outer;
                }
            }
        }
        statuses.push(AxiomStatus { name: NAMES[eq], holds: witness.is_none(), witness });
    }
    Ok(AxiomReport { statuses })
}

/// Residual vector of several equations over all basis tuples.
fn stacked(a: &Algebra, fd: &FlagDatum, eqs: &[usize]) -> Vector {
    let n = a.dim();
    let mut out = Vec::new();
    for &eq in eqs {
        for i in 0..n {
            for j in 0..if PAIR_EQS[eq] { n } else { 1 } {
                out.extend(residual(a, fd, eq, i, j));
            }
        }
    }
    out
}

/// The algebra A + kx with x^2 = a0 + u x, a x = d(a) + λ(a) x and
/// x a = D(a) + Λ(a) x; x is the last basis vector.
pub fn flag_extension(a: &Algebra, fd: &FlagDatum) -> Result<Algebra> {
    let report = flag_check(a, fd)?;
    if !report.all_hold() {
        return Err(Error::FlagCheckFailed(report.failing().join(", ")));
    }
    Ok(flag_extension_unchecked(a, fd))
}

pub(crate) fn flag_extension_unchecked(a: &Algebra, fd: &FlagDatum) -> Algebra {
    let f = a.field();
    let n = a.dim();
    let mut unit = a.unit().clone();
    unit.push(f.zero());
    let ext = |v: Vector, c: Elem| {
        let mut v = v;
        v.push(c);
        v
    };
    Algebra::from_fn(f.clone(), n + 1, unit, |i, j| match (i == n, j == n) {
        (false, false) => ext(a.product(i, j).to_vec(), f.zero()),
        (false, true) => ext(fd.d.col(i), fd.lambda.values[i].clone()),
        (true, false) => ext(fd.big_d.col(j), fd.big_lambda.values[j].clone()),
        (true, true) => ext(fd.a0.clone(), fd.u.clone()),
    })
}

/// The extending datum with V = kx: x◁a = Λ(a)x, x▷a = D(a), a↼x = d(a),
/// a⇀x = λ(a)x, f(x, x) = a0, x·x = ux.
pub fn datum_from_flag(a: &Algebra, fd: &FlagDatum) -> ExtendingDatum {
    let n = a.dim();
    ExtendingDatum {
        a: a.clone(),
        v_dim: 1,
        lact: Bilinear::from_fn(1, n, 1, |_, i| vec![fd.big_lambda.values[i].clone()]),
        ract: Bilinear::from_fn(1, n, n, |_, i| fd.big_d.col(i)),
        lhar: Bilinear::from_fn(n, 1, n, |i, _| fd.d.col(i)),
        rhar: Bilinear::from_fn(n, 1, 1, |i, _| vec![fd.lambda.values[i].clone()]),
        cocycle: Bilinear::from_fn(1, 1, n, |_, _| fd.a0.clone()),
        vmult: Bilinear::from_fn(1, 1, 1, |_, _| vec![fd.u.clone()]),
    }
}

/// Inverse of `datum_from_flag` for a datum with one-dimensional V.
pub fn flag_from_datum(d: &ExtendingDatum) -> Result<FlagDatum> {
    if d.v_dim != 1 {
        return Err(Error::DimensionMismatch(format!("flag datums need dim V = 1, got {}", d.v_dim)));
    }
    let f = d.field();
    let n = d.a.dim();
    Ok(FlagDatum {
        big_lambda: Character { values: (0..n).map(|i| d.lact.at(0, i)[0].clone()).collect() },
        lambda: Character { values: (0..n).map(|i| d.rhar.at(i, 0)[0].clone()).collect() },
        big_d: Matrix::from_cols(f, n, &(0..n).map(|i| d.ract.at(0, i).to_vec()).collect::<Vec<_>>()),
        d: Matrix::from_cols(f, n, &(0..n).map(|i| d.lhar.at(i, 0).to_vec()).collect::<Vec<_>>()),
        a0: d.cocycle.at(0, 0).to_vec(),
        u: d.vmult.at(0, 0)[0].clone(),
    })
}

fn matrix_from(n: usize, c: &[Elem], f: &crate::field::Field) -> Matrix {
    let mut m = Matrix::zeros(f, n, n);
    for (k, ck) in c.iter().enumerate() {
        m.set(k / n, k % n, ck.clone());
    }
    m
}

/// Affine space of (D, d), both flattened row-major,
/// satisfying the conditions linear in the maps for a fixed character pair
/// (flag2, flag6, λ∘d = 0, Λ∘D = 0).
pub fn flag_map_space(a: &Algebra, big_lambda: &Character, lambda: &Character) -> Option<AffineSpace> {
    let f = a.field();
    let n = a.dim();
    let base = flag_skeleton(a, big_lambda, lambda);
    let phase1 = |c: &[Elem]| {
        let fd = with_maps(a, &base, c);
        let mut r = stacked(a, &fd, &[2, 6]);
        for i in 0..n {
            let e = unit_vec(f, n, i);
            r.push(fd.lambda.apply(f, &fd.d.apply(f, &e)));
            r.push(fd.big_lambda.apply(f, &fd.big_d.apply(f, &e)));
        }
        r
    };
    affine_solve(f, 2 * n * n, phase1)
}

/// Affine space of (a0, u) completing a datum whose characters and maps are
/// fixed.
pub fn flag_rest_space(a: &Algebra, fd: &FlagDatum) -> Option<AffineSpace> {
    let n = a.dim();
    affine_solve(a.field(), n + 1, |c| stacked(a, &with_rest(fd, c), &[1, 3, 4, 5]))
}

/// The datum with given characters and zero maps, a0 and u.
pub fn flag_skeleton(a: &Algebra, big_lambda: &Character, lambda: &Character) -> FlagDatum {
    let f = a.field();
    let n = a.dim();
    FlagDatum {
        big_lambda: big_lambda.clone(),
        lambda: lambda.clone(),
        big_d: Matrix::zeros(f, n, n),
        d: Matrix::zeros(f, n, n),
        a0: zero_vec(f, n),
        u: f.zero(),
    }
}

/// `fd` with (D, d) read from a point of `flag_map_space`.
pub fn with_maps(a: &Algebra, fd: &FlagDatum, c: &[Elem]) -> FlagDatum {
    let n = a.dim();
    let mut out = fd.clone();
    out.big_d = matrix_from(n, &c[..n * n], a.field());
    out.d = matrix_from(n, &c[n * n..], a.field());
    out
}

/// `fd` with (a0, u) read from a point of `flag_rest_space`.
pub fn with_rest(fd: &FlagDatum, c: &[Elem]) -> FlagDatum {
    let n = fd.a0.len();
    let mut out = fd.clone();
    out.a0 = c[..n].to_vec();
    out.u = c[n].clone();
    out
}

/// Every flag datum of A, sorted.
///
/// For each character pair the maps (D, d) range over `flag_map_space`; for
/// each of them the remaining conditions are linear in (a0, u).
pub fn enumerate_flag_datums(a: &Algebra) -> Result<Vec<FlagDatum>> {
    let f = a.field();
    if !f.is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("flag datum enumeration".into()));
    }
    let n = a.dim();
    if n > MAX_ENUM_DIM {
        return Err(Error::DimensionBoundExceeded { dim: n, bound: MAX_ENUM_DIM });
    }
    let chars = characters(a)?;
    let mut out = Vec::new();
    for big_lambda in &chars {
        for lambda in &chars {
            let base = flag_skeleton(a, big_lambda, lambda);
            let Some(maps) = flag_map_space(a, big_lambda, lambda) else {
                continue;
            };
            for c in maps.points(f)? {
                let fd0 = with_maps(a, &base, &c);
                let Some(rest) = flag_rest_space(a, &fd0) else {
                    continue;
                };
                for c in rest.points(f)? {
                    let fd = with_rest(&fd0, &c);
                    debug_assert!(flag_check(a, &fd).map(|r| r.all_hold()).unwrap_or(false));
                    out.push(fd);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The datum fd' with fd ≡ fd' through (q, α), i.e. the unique solution of
/// the four relating equations for the primed datum.
pub fn transform(a: &Algebra, fd: &FlagDatum, cert: &Certificate) -> FlagDatum {
    let f = a.field();
    let n = a.dim();
    let qi = f.inv(&cert.q);
    let alpha = &cert.alpha;
    let cols = |m: &Matrix, ch: &Character, left: bool| -> Vec<Vector> {
        (0..n)
            .map(|i| {
                let e = unit_vec(f, n, i);
                let prod = if left { a.mul(alpha, &e) } else { a.mul(&e, alpha) };
                let v = vadd(f, &vsub(f, &m.col(i), &prod), &vscale(f, &ch.values[i], alpha));
                vscale(f, &qi, &v)
            })
            .collect()
    };
    let big_d = Matrix::from_cols(f, n, &cols(&fd.big_d, &fd.big_lambda, true));
    let d = Matrix::from_cols(f, n, &cols(&fd.d, &fd.lambda, false));
    let u = f.mul(&qi, &f.sub(&f.sub(&fd.u, &fd.lambda.apply(f, alpha)), &fd.big_lambda.apply(f, alpha)));
    // a0 = q^2 a0' + α^2 - u α + q d'(α) + q D'(α)
    let mut rest = vsub(f, &fd.a0, &a.mul(alpha, alpha));
    rest = vadd(f, &rest, &vscale(f, &fd.u, alpha));
    rest = vsub(f, &rest, &vscale(f, &cert.q, &d.apply(f, alpha)));
    rest = vsub(f, &rest, &vscale(f, &cert.q, &big_d.apply(f, alpha)));
    let a0 = vscale(f, &f.mul(&qi, &qi), &rest);
    FlagDatum { big_lambda: fd.big_lambda.clone(), lambda: fd.lambda.clone(), big_d, d, a0, u }
}

/// Direct evaluation of the four relating equations for fd ≡ fd2 via (q, α).
pub fn certificate_holds(a: &Algebra, fd: &FlagDatum, fd2: &FlagDatum, cert: &Certificate) -> bool {
    let f = a.field();
    let n = a.dim();
    let (q, alpha) = (&cert.q, &cert.alpha);
    if f.is_zero(q) || fd.big_lambda != fd2.big_lambda || fd.lambda != fd2.lambda {
        return false;
    }
    for i in 0..n {
        let e = unit_vec(f, n, i);
        let big = vsub(
            f,
            &vadd(f, &vscale(f, q, &fd2.big_d.col(i)), &a.mul(alpha, &e)),
            &vscale(f, &fd.big_lambda.values[i], alpha),
        );
        if fd.big_d.col(i) != big {
            return false;
        }
        let small =
            vsub(f, &vadd(f, &vscale(f, q, &fd2.d.col(i)), &a.mul(&e, alpha)), &vscale(f, &fd.lambda.values[i], alpha));
        if fd.d.col(i) != small {
            return false;
        }
    }
    let mut a0 = vscale(f, &f.mul(q, q), &fd2.a0);
    a0 = vadd(f, &a0, &a.mul(alpha, alpha));
    a0 = vsub(f, &a0, &vscale(f, &fd.u, alpha));
    a0 = vadd(f, &a0, &vscale(f, q, &fd2.d.apply(f, alpha)));
    a0 = vadd(f, &a0, &vscale(f, q, &fd2.big_d.apply(f, alpha)));
    let u = f.add(&f.add(&f.mul(q, &fd2.u), &fd2.lambda.apply(f, alpha)), &fd2.big_lambda.apply(f, alpha));
    fd.a0 == a0 && fd.u == u
}

/// A certificate (q, α) with fd ≡ fd2, searching q over k* (or q = 1 in the
/// cohomologous mode) and solving the conditions linear in α.
pub fn flag_equiv(a: &Algebra, fd: &FlagDatum, fd2: &FlagDatum, mode: EquivMode) -> Result<Option<Certificate>> {
    let f = a.field();
    if !f.is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("flag equivalence search".into()));
    }
    check_shape(a, fd)?;
    check_shape(a, fd2)?;
    if fd.big_lambda != fd2.big_lambda || fd.lambda != fd2.lambda {
        return Ok(None);
    }
    let n = a.dim();
    let qs = match mode {
        EquivMode::Equivalent => f.units()?,
        EquivMode::Cohomologous => vec![f.one()],
    };
    for q in qs {
        // D, d and u of transform(fd) are affine in α; a0 is checked after
        let lin = |alpha: &[Elem]| {
            let t = transform(a, fd, &Certificate { q: q.clone(), alpha: alpha.to_vec() });
            let mut r = vsub(f, &t.big_d.data, &fd2.big_d.data);
            r.extend(vsub(f, &t.d.data, &fd2.d.data));
            r.push(f.sub(&t.u, &fd2.u));
            r
        };
        let Some(space) = affine_solve(f, n, lin) else {
            continue;
        };
        for alpha in space.points(f)? {
            let cert = Certificate { q: q.clone(), alpha };
            if transform(a, fd, &cert) == *fd2 {
                debug_assert!(certificate_holds(a, fd, fd2, &cert));
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// All certificates (q, α) in k* x A (q = 1 when cohomologous).
pub(crate) fn all_certificates(a: &Algebra, mode: EquivMode) -> Result<Vec<Certificate>> {
    let f = a.field();
    let qs = match mode {
        EquivMode::Equivalent => f.units()?,
        EquivMode::Cohomologous => vec![f.one()],
    };
    let alphas = linalg::all_vectors(f, a.dim())?;
    let mut out = Vec::with_capacity(qs.len() * alphas.len());
    for q in &qs {
        for alpha in &alphas {
            out.push(Certificate { q: q.clone(), alpha: alpha.clone() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::unified::{check_axioms, unified_product};

    fn ground(f: &Field, a0: i64, u: i64) -> FlagDatum {
        let one = Character { values: vec![f.one()] };
        FlagDatum {
            big_lambda: one.clone(),
            lambda: one,
            big_d: Matrix::zeros(f, 1, 1),
            d: Matrix::zeros(f, 1, 1),
            a0: vec![f.from_int(a0)],
            u: f.from_int(u),
        }
    }

    #[test]
    fn ground_field_census() {
        for (p, count) in [(2, 4), (3, 9)] {
            let f = Field::prime(p).unwrap();
            let all = enumerate_flag_datums(&Algebra::ground(&f)).unwrap();
            assert_eq!(all.len(), count);
        }
    }

    #[test]
    fn extension_matches_unified_product() {
        let f = Field::prime(3).unwrap();
        let k00 = Algebra::two_dim(&f, &f.zero(), &f.zero());
        for fd in enumerate_flag_datums(&k00).unwrap() {
            let d = datum_from_flag(&k00, &fd);
            assert!(check_axioms(&d).unwrap().all_hold());
            assert_eq!(unified_product(&d).unwrap(), flag_extension(&k00, &fd).unwrap());
            assert_eq!(flag_from_datum(&d).unwrap(), fd);
        }
    }

    #[test]
    fn datum_of_extension_recovers_flag_datum() {
        let f = Field::prime(2).unwrap();
        let k01 = Algebra::two_dim(&f, &f.zero(), &f.one());
        for fd in enumerate_flag_datums(&k01).unwrap() {
            let e = flag_extension(&k01, &fd).unwrap();
            let a_basis = vec![e.basis_vec(0), e.basis_vec(1)];
            let (d, _) = crate::unified::datum_from_subalgebra(&e, &a_basis).unwrap();
            assert_eq!(flag_from_datum(&d).unwrap(), fd);
        }
    }

    #[test]
    fn ground_equivalences_over_gf2() {
        let f = Field::prime(2).unwrap();
        let k = Algebra::ground(&f);
        let cert = flag_equiv(&k, &ground(&f, 1, 0), &ground(&f, 0, 0), EquivMode::Equivalent).unwrap().unwrap();
        assert_eq!(cert, Certificate { q: f.one(), alpha: vec![f.one()] });
        assert!(flag_equiv(&k, &ground(&f, 0, 0), &ground(&f, 0, 1), EquivMode::Equivalent).unwrap().is_none());
        assert!(flag_equiv(&k, &ground(&f, 0, 0), &ground(&f, 0, 1), EquivMode::Cohomologous).unwrap().is_none());
    }

    #[test]
    fn bad_flag_datum_over_k00() {
        let f = Field::prime(3).unwrap();
        let k00 = Algebra::two_dim(&f, &f.zero(), &f.zero());
        let ch = Character { values: vec![f.one(), f.zero()] };
        // D1 = 0, d1 = 1, a01 = 1, u = 0
        let mut d = Matrix::zeros(&f, 2, 2);
        d.set(1, 1, f.one());
        let fd = FlagDatum {
            big_lambda: ch.clone(),
            lambda: ch,
            big_d: Matrix::zeros(&f, 2, 2),
            d,
            a0: vec![f.zero(), f.one()],
            u: f.zero(),
        };
        assert!(!flag_check(&k00, &fd).unwrap().all_hold());
        assert!(matches!(flag_extension(&k00, &fd), Err(Error::FlagCheckFailed(_))));
    }
}
