use super::{datum_from_retraction, ExtendingDatum};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, Matrix, Vector};

/// A finite group given by labels and a multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl GroupTable {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup(format!("table must be {n} x {n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| table[g][h] == identity && table[h][g] == identity) {
                return Err(Error::NotAGroup(format!("{} has no inverse", labels[g])));
            }
        }
        for g in 0..n {
            for h in 0..n {
                for l in 0..n {
                    if table[table[g][h]][l] != table[g][table[h][l]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            labels[g], labels[h], labels[l]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { labels, table, identity })
    }

    /// Z/n with elements 0..n-1.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupTable { labels, table, identity: 0 }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }
}

/// An algebra A, a group G acting on A by automorphisms (`action[g]`) and a
/// normalized map f: G x G -> A (`cocycle[g][h]`).
#[derive(Clone, Debug)]
pub struct CrossedProductInput {
    pub a: Algebra,
    pub group: GroupTable,
    pub action: Vec<Matrix>,
    pub cocycle: Vec<Vec<Vector>>,
}

impl CrossedProductInput {
    /// Trivial action and cocycle: the group algebra A[G].
    pub fn group_algebra(a: &Algebra, group: GroupTable) -> Self {
        let f = a.field();
        let n = group.order();
        CrossedProductInput {
            a: a.clone(),
            action: vec![Matrix::identity(f, a.dim()); n],
            cocycle: vec![vec![a.unit().clone(); n]; n],
            group,
        }
    }

    fn validate(&self) -> Result<()> {
        let a = &self.a;
        let f = a.field();
        let (n, g) = (a.dim(), self.group.order());
        if self.action.len() != g || self.action.iter().any(|m| m.rows != n || m.cols != n) {
            return Err(Error::ShapeMismatch(format!("need {g} action matrices of size {n} x {n}")));
        }
        if self.cocycle.len() != g || self.cocycle.iter().any(|r| r.len() != g || r.iter().any(|v| v.len() != n)) {
            return Err(Error::ShapeMismatch(format!("cocycle must be {g} x {g} vectors of length {n}")));
        }
        for (gi, m) in self.action.iter().enumerate() {
            if !m.is_invertible(f) || !a.is_hom_to(a, m) {
                return Err(Error::NotAnAutomorphism(self.group.labels[gi].clone()));
            }
        }
        let e = self.group.identity;
        if self.cocycle[e][e] != *a.unit() {
            return Err(Error::CocycleConditionFailed("f(1, 1) != 1".into()));
        }
        for gi in 0..g {
            for hi in 0..g {
                if !a.left_mult(&self.cocycle[gi][hi]).is_invertible(f) {
                    return Err(Error::CocycleConditionFailed(format!(
                        "f({}, {}) is not a unit",
                        self.group.labels[gi], self.group.labels[hi]
                    )));
                }
            }
        }
        let act = |gi: usize, x: &[crate::field::Elem]| self.action[gi].apply(f, x);
        for gi in 0..g {
            for hi in 0..g {
                let fgh = &self.cocycle[gi][hi];
                let gh = self.group.mul(gi, hi);
                // g(h(b)) f(g,h) = f(g,h) (gh)(b), the twisted module condition
                // with the inverse cleared
                for bi in 0..n {
                    let b = unit_vec(f, n, bi);
                    if a.mul(&act(gi, &act(hi, &b)), fgh) != a.mul(fgh, &act(gh, &b)) {
                        return Err(Error::CocycleConditionFailed(format!(
                            "twisted module condition at ({}, {})",
                            self.group.labels[gi], self.group.labels[hi]
                        )));
                    }
                }
                for li in 0..g {
                    let lhs = a.mul(fgh, &self.cocycle[gh][li]);
                    let rhs = a.mul(&act(gi, &self.cocycle[hi][li]), &self.cocycle[gi][self.group.mul(hi, li)]);
                    if lhs != rhs {
                        return Err(Error::CocycleConditionFailed(format!(
                            "cocycle condition at ({}, {}, {})",
                            self.group.labels[gi], self.group.labels[hi], self.group.labels[li]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The free left A-module on the group with (a g)(b h) = a g(b) f(g,h) gh.
/// Basis vector a_i g has index g * dim(A) + i.
pub fn crossed_product(input: &CrossedProductInput) -> Result<Algebra> {
    input.validate()?;
    let a = &input.a;
    let f = a.field();
    let (n, g) = (a.dim(), input.group.order());
    let total = n * g;
    let place = |gi: usize, v: &[crate::field::Elem]| {
        let mut out = crate::linalg::zero_vec(f, total);
        out[gi * n..(gi + 1) * n].clone_from_slice(v);
        out
    };
    let unit = place(input.group.identity, a.unit());
    Ok(Algebra::from_fn(f.clone(), total, unit, |p, q| {
        let (gi, ai) = (p / n, p % n);
        let (hi, bi) = (q / n, q % n);
        let gb = input.action[gi].apply(f, &unit_vec(f, n, bi));
        let coef = a.mul(&a.mul(&unit_vec(f, n, ai), &gb), &input.cocycle[gi][hi]);
        place(input.group.mul(gi, hi), &coef)
    }))
}

/// Datum of the crossed product relative to the augmentation a g -> a.
pub fn extract_crossed_datum(input: &CrossedProductInput) -> Result<(ExtendingDatum, Matrix)> {
    let e = crossed_product(input)?;
    let f = e.field();
    let (n, g) = (input.a.dim(), input.group.order());
    let id = input.group.identity;
    let a_basis: Vec<Vector> = (0..n).map(|i| unit_vec(f, n * g, id * n + i)).collect();
    let mut p = Matrix::zeros(f, n, n * g);
    for gi in 0..g {
        for i in 0..n {
            p.set(i, gi * n + i, f.one());
        }
    }
    datum_from_retraction(&e, &a_basis, &p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::unified::{classify_special, SpecialTag};

    #[test]
    fn group_algebra_of_z2() {
        let f = Field::prime(3).unwrap();
        let k = Algebra::ground(&f);
        let e = crossed_product(&CrossedProductInput::group_algebra(&k, GroupTable::cyclic(2))).unwrap();
        assert_eq!(e, Algebra::two_dim(&f, &f.one(), &f.zero()));
    }

    #[test]
    fn twisted_group_algebra() {
        let f = Field::prime(5).unwrap();
        let k = Algebra::ground(&f);
        let mut input = CrossedProductInput::group_algebra(&k, GroupTable::cyclic(2));
        input.cocycle[1][1] = vec![f.from_int(3)];
        let e = crossed_product(&input).unwrap();
        assert_eq!(e, Algebra::two_dim(&f, &f.from_int(3), &f.zero()));
        let (d, _) = extract_crossed_datum(&input).unwrap();
        assert!(classify_special(&d).unwrap().contains(&SpecialTag::LeftSplit));
    }

    #[test]
    fn bad_tables_and_cocycles() {
        assert!(GroupTable::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 1]]).is_err());
        let f = Field::prime(3).unwrap();
        let k = Algebra::ground(&f);
        let mut input = CrossedProductInput::group_algebra(&k, GroupTable::cyclic(2));
        input.cocycle[1][1] = vec![f.zero()];
        assert!(matches!(crossed_product(&input), Err(Error::CocycleConditionFailed(_))));
    }
}
