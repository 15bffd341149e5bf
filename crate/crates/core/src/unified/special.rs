use super::axioms::first_failure;
use super::{
    check_axioms, datum_from_complement, unified_product_unchecked, AxiomReport, AxiomStatus, Bilinear, ExtendingDatum,
};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{self, vadd, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpecialTag {
    TrivialExtension,
    CocycleDeformedTrivial,
    LeftSplit,
    RightSplit,
    CocycleSemidirect,
    Semidirect,
    MatchedPair,
}

impl SpecialTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SpecialTag::TrivialExtension => "trivial-extension",
            SpecialTag::CocycleDeformedTrivial => "cocycle-deformed-trivial",
            SpecialTag::LeftSplit => "left-split",
            SpecialTag::RightSplit => "right-split",
            SpecialTag::CocycleSemidirect => "cocycle-semidirect",
            SpecialTag::Semidirect => "semidirect",
            SpecialTag::MatchedPair => "matched-pair",
        }
    }
}

impl std::fmt::Display for SpecialTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which special products the datum's unified product belongs to.
pub fn classify_special(d: &ExtendingDatum) -> Result<Vec<SpecialTag>> {
    let report = check_axioms(d)?;
    if !report.all_hold() {
        return Err(Error::AxiomsFailed(Box::new(report)));
    }
    let f = d.field();
    let no_lhar = d.lhar.is_zero(f);
    let no_ract = d.ract.is_zero(f);
    let no_f = d.cocycle.is_zero(f);
    let no_mult = d.vmult.is_zero(f);
    let mut tags = Vec::new();
    if no_ract && no_lhar && no_mult {
        if no_f {
            tags.push(SpecialTag::TrivialExtension);
        }
        tags.push(SpecialTag::CocycleDeformedTrivial);
    }
    if no_lhar {
        tags.push(SpecialTag::LeftSplit);
    }
    if no_ract {
        tags.push(SpecialTag::RightSplit);
    }
    if no_lhar && no_ract {
        tags.push(SpecialTag::CocycleSemidirect);
        if no_f {
            tags.push(SpecialTag::Semidirect);
        }
    }
    if no_f {
        tags.push(SpecialTag::MatchedPair);
    }
    Ok(tags)
}

/// A unital algebra A, a possibly non-unital algebra (V, vmult) and four
/// mutual actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub a: Algebra,
    pub v_dim: usize,
    pub vmult: Bilinear,
    pub lact: Bilinear,
    pub ract: Bilinear,
    pub lhar: Bilinear,
    pub rhar: Bilinear,
}

pub type MatchedPairReport = AxiomReport;

impl MatchedPair {
    /// The extending datum with zero cocycle.
    pub fn to_datum(&self) -> ExtendingDatum {
        let f = self.a.field();
        ExtendingDatum {
            a: self.a.clone(),
            v_dim: self.v_dim,
            lact: self.lact.clone(),
            ract: self.ract.clone(),
            lhar: self.lhar.clone(),
            rhar: self.rhar.clone(),
            cocycle: Bilinear::zero(f, self.v_dim, self.v_dim, self.a.dim()),
            vmult: self.vmult.clone(),
        }
    }

    pub fn from_datum(d: &ExtendingDatum) -> Self {
        MatchedPair {
            a: d.a.clone(),
            v_dim: d.v_dim,
            vmult: d.vmult.clone(),
            lact: d.lact.clone(),
            ract: d.ract.clone(),
            lhar: d.lhar.clone(),
            rhar: d.rhar.clone(),
        }
    }
}

/// Checks associativity of V, both bimodule structures and MP1-MP6.
pub fn matched_pair_check(mp: &MatchedPair) -> Result<MatchedPairReport> {
    let d = mp.to_datum();
    d.check_shapes()?;
    let f = d.field().clone();
    let (n, m) = (d.a.dim(), d.v_dim);
    let ea = |i: usize| d.a.basis_vec(i);
    let ev = |i: usize| d.v_basis_vec(i);
    let one = d.a.unit().clone();
    let am = |x: &[crate::field::Elem], y: &[crate::field::Elem]| d.a.mul(x, y);
    let add = |x: &Vector, y: &Vector| vadd(&f, x, y);
    let (a1, a2, v1, v2, v3) = (('a', n), ('a', n), ('v', m), ('v', m), ('v', m));
    let mut statuses = Vec::new();
    let mut push = |name: &'static str, witness: Option<String>| {
        statuses.push(AxiomStatus { name, holds: witness.is_none(), witness });
    };

    push(
        "V-associative",
        first_failure(&[v1, v2, v3], |t| {
            let (x, y, z) = (ev(t[0]), ev(t[1]), ev(t[2]));
            d.vmult(&x, &d.vmult(&y, &z)) == d.vmult(&d.vmult(&x, &y), &z)
        }),
    );
    push(
        "A-bimodule",
        first_failure(&[a1, a2, v1], |t| {
            let (a, b, x) = (ea(t[0]), ea(t[1]), ev(t[2]));
            d.rhar(&one, &x) == x
                && d.lact(&x, &one) == x
                && d.rhar(&a, &d.rhar(&b, &x)) == d.rhar(&am(&a, &b), &x)
                && d.lact(&d.lact(&x, &a), &b) == d.lact(&x, &am(&a, &b))
                && d.rhar(&a, &d.lact(&x, &b)) == d.lact(&d.rhar(&a, &x), &b)
        }),
    );
    push(
        "V-bimodule",
        first_failure(&[v1, v2, a1], |t| {
            let (x, y, a) = (ev(t[0]), ev(t[1]), ea(t[2]));
            d.ract(&x, &d.ract(&y, &a)) == d.ract(&d.vmult(&x, &y), &a)
                && d.lhar(&d.lhar(&a, &x), &y) == d.lhar(&a, &d.vmult(&x, &y))
                && d.lhar(&d.ract(&x, &a), &y) == d.ract(&x, &d.lhar(&a, &y))
        }),
    );
    push(
        "MP1",
        first_failure(&[a1, v1, v2], |t| {
            let (a, x, y) = (ea(t[0]), ev(t[1]), ev(t[2]));
            d.rhar(&a, &d.vmult(&x, &y)) == add(&d.vmult(&d.rhar(&a, &x), &y), &d.rhar(&d.lhar(&a, &x), &y))
        }),
    );
    push(
        "MP2",
        first_failure(&[a1, a2, v1], |t| {
            let (a, b, x) = (ea(t[0]), ea(t[1]), ev(t[2]));
            d.lhar(&am(&a, &b), &x) == add(&am(&a, &d.lhar(&b, &x)), &d.lhar(&a, &d.rhar(&b, &x)))
        }),
    );
    push(
        "MP3",
        first_failure(&[v1, a1, a2], |t| {
            let (x, a, b) = (ev(t[0]), ea(t[1]), ea(t[2]));
            d.ract(&x, &am(&a, &b)) == add(&am(&d.ract(&x, &a), &b), &d.ract(&d.lact(&x, &a), &b))
        }),
    );
    push(
        "MP4",
        first_failure(&[v1, v2, a1], |t| {
            let (x, y, a) = (ev(t[0]), ev(t[1]), ea(t[2]));
            d.lact(&d.vmult(&x, &y), &a) == add(&d.lact(&x, &d.ract(&y, &a)), &d.vmult(&x, &d.lact(&y, &a)))
        }),
    );
    push(
        "MP5",
        first_failure(&[a1, v1, a2], |t| {
            let (a, x, b) = (ea(t[0]), ev(t[1]), ea(t[2]));
            add(&am(&a, &d.ract(&x, &b)), &d.lhar(&a, &d.lact(&x, &b)))
                == add(&am(&d.lhar(&a, &x), &b), &d.ract(&d.rhar(&a, &x), &b))
        }),
    );
    push(
        "MP6",
        first_failure(&[v1, a1, v2], |t| {
            let (x, a, y) = (ev(t[0]), ea(t[1]), ev(t[2]));
            add(&d.lact(&x, &d.lhar(&a, &y)), &d.vmult(&x, &d.rhar(&a, &y)))
                == add(&d.rhar(&d.ract(&x, &a), &y), &d.vmult(&d.lact(&x, &a), &y))
        }),
    );
    Ok(AxiomReport { statuses })
}

/// The product on A x V with zero cocycle.
pub fn bicrossed_product(mp: &MatchedPair) -> Result<Algebra> {
    let report = matched_pair_check(mp)?;
    if !report.all_hold() {
        return Err(Error::MatchedPairFailed(report.failing().join(", ")));
    }
    Ok(unified_product_unchecked(&mp.to_datum()))
}

/// The matched pair of E = span(a_basis) + span(v_basis), extracted with the
/// projection onto A along V. Its bicrossed product is E written in the basis
/// (a_basis, v_basis).
pub fn factorize(e: &Algebra, a_basis: &[Vector], v_basis: &[Vector]) -> Result<MatchedPair> {
    let f = e.field();
    let n = a_basis.len();
    if a_basis.iter().chain(v_basis).any(|v| v.len() != e.dim()) {
        return Err(Error::DimensionMismatch("basis vector length".into()));
    }
    let mut all = a_basis.to_vec();
    all.extend(v_basis.iter().cloned());
    if all.len() != e.dim() || linalg::rank_of(f, &all) != e.dim() {
        return Err(Error::NotAFactorization("spans are not complementary".into()));
    }
    if !e.is_subalgebra(a_basis) {
        return Err(Error::NotAFactorization("A is not a unital subalgebra".into()));
    }
    if !e.is_closed(v_basis) {
        return Err(Error::NotAFactorization("V is not closed under multiplication".into()));
    }
    let inv = Matrix::from_cols(f, e.dim(), &all).inverse(f).expect("complementary spans");
    let mut p = Matrix::zeros(f, n, e.dim());
    for i in 0..n {
        for j in 0..e.dim() {
            p.set(i, j, inv.get(i, j).clone());
        }
    }
    let (d, _) = datum_from_complement(e, a_basis, v_basis, &p)?;
    debug_assert!(d.cocycle.is_zero(f));
    Ok(MatchedPair::from_datum(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::linalg::unit_vec;

    #[test]
    fn dual_numbers_as_bicrossed_product() {
        let f = Field::prime(2).unwrap();
        let k = Algebra::ground(&f);
        let d = ExtendingDatum::with_characters(&k, 1, &[f.one()], &[f.one()]);
        let mp = MatchedPair::from_datum(&d);
        assert!(matched_pair_check(&mp).unwrap().all_hold());
        assert_eq!(bicrossed_product(&mp).unwrap(), Algebra::two_dim(&f, &f.zero(), &f.zero()));
        let tags = classify_special(&d).unwrap();
        assert!(tags.contains(&SpecialTag::TrivialExtension));
        assert!(tags.contains(&SpecialTag::Semidirect));
    }

    #[test]
    fn factorize_round_trip_on_matrices() {
        let f = Field::prime(3).unwrap();
        let m2 = Algebra::matrix_algebra(&f, 2);
        // upper triangular matrices and the strictly lower part
        let a_basis = vec![unit_vec(&f, 4, 0), unit_vec(&f, 4, 1), unit_vec(&f, 4, 3)];
        let v_basis = vec![unit_vec(&f, 4, 2)];
        let mp = factorize(&m2, &a_basis, &v_basis).unwrap();
        assert!(matched_pair_check(&mp).unwrap().all_hold());
        let all: Vec<Vector> = a_basis.iter().chain(&v_basis).cloned().collect();
        let (rebased, _) = m2.rebase(&all).unwrap();
        assert_eq!(bicrossed_product(&mp).unwrap(), rebased);
    }

    #[test]
    fn dependent_spans_are_rejected() {
        let f = Field::prime(2).unwrap();
        let m2 = Algebra::matrix_algebra(&f, 2);
        let a = vec![unit_vec(&f, 4, 0), unit_vec(&f, 4, 3)];
        let v = vec![unit_vec(&f, 4, 0), unit_vec(&f, 4, 1)];
        assert!(matches!(factorize(&m2, &a, &v), Err(Error::NotAFactorization(_))));
    }
}
