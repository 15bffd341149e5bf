use super::FlagDatum;
use crate::algebra::{Algebra, Character};
use crate::error::Result;
use crate::field::{Elem, Field};
use crate::linalg::Matrix;

/// The two 2-dimensional bases with explicit family descriptions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyBase {
    /// x^2 = 0
    K00,
    /// x^2 = x
    K01,
}

impl FamilyBase {
    pub fn algebra(self, f: &Field) -> Algebra {
        match self {
            FamilyBase::K00 => Algebra::two_dim(f, &f.zero(), &f.zero()),
            FamilyBase::K01 => Algebra::two_dim(f, &f.zero(), &f.one()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagFamily {
    pub name: &'static str,
    pub datums: Vec<FlagDatum>,
}

fn ch(f: &Field, x: i64) -> Character {
    Character { values: vec![f.one(), f.from_int(x)] }
}

/// The map 1 -> 0, x -> c0 + c1 x.
fn map_x(f: &Field, c0: &Elem, c1: &Elem) -> Matrix {
    let mut m = Matrix::zeros(f, 2, 2);
    m.set(0, 1, c0.clone());
    m.set(1, 1, c1.clone());
    m
}

fn datum(big_lambda: Character, lambda: Character, big_d: Matrix, d: Matrix, a0: [Elem; 2], u: Elem) -> FlagDatum {
    FlagDatum { big_lambda, lambda, big_d, d, a0: a0.to_vec(), u }
}

/// The parametrized families of flag datums of k_(0,0) or k_(0,1), each
/// instantiated over every parameter value.
pub fn flag_family_generators(base: FamilyBase, f: &Field) -> Result<Vec<FlagFamily>> {
    let k = f.elements()?;
    let units = f.units()?;
    let z = f.zero();
    let mul = |a: &Elem, b: &Elem| f.mul(a, b);
    let sub = |a: &Elem, b: &Elem| f.sub(a, b);
    let mut fams = Vec::new();
    match base {
        FamilyBase::K00 => {
            let c0 = ch(f, 0);
            let (mut f1, mut f2, mut f3) = (Vec::new(), Vec::new(), Vec::new());
            for d1 in &k {
                let m = map_x(f, &z, d1);
                for u in &k {
                    let a00 = sub(&mul(d1, d1), &mul(u, d1));
                    for a01 in &units {
                        f1.push(datum(
                            c0.clone(),
                            c0.clone(),
                            m.clone(),
                            m.clone(),
                            [a00.clone(), a01.clone()],
                            u.clone(),
                        ));
                    }
                    f2.push(datum(c0.clone(), c0.clone(), m.clone(), m.clone(), [a00, z.clone()], u.clone()));
                }
                for sd1 in k.iter().filter(|x| *x != d1) {
                    // D1 = d1, small d1 = sd1
                    let a00 = f.neg(&mul(d1, sd1));
                    let u = f.add(d1, sd1);
                    f3.push(datum(c0.clone(), c0.clone(), m.clone(), map_x(f, &z, sd1), [a00, z.clone()], u));
                }
            }
            fams.push(FlagFamily { name: "F1", datums: f1 });
            fams.push(FlagFamily { name: "F2", datums: f2 });
            fams.push(FlagFamily { name: "F3", datums: f3 });
        }
        FamilyBase::K01 => {
            let (c0, c1) = (ch(f, 0), ch(f, 1));
            let (mut f1, mut f2, mut f3, mut f4) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for p in &k {
                let on_x = map_x(f, &z, p);
                let on_1mx = map_x(f, p, &f.neg(p));
                for u in &k {
                    for a01 in &k {
                        let a00 = sub(&sub(&mul(p, p), &mul(u, p)), a01);
                        f1.push(datum(
                            c0.clone(),
                            c0.clone(),
                            on_x.clone(),
                            on_x.clone(),
                            [a00, a01.clone()],
                            u.clone(),
                        ));
                        let a00 = f.add(&mul(p, p), &mul(u, p));
                        f2.push(datum(
                            c1.clone(),
                            c1.clone(),
                            on_1mx.clone(),
                            on_1mx.clone(),
                            [a00, a01.clone()],
                            u.clone(),
                        ));
                    }
                }
                for q in &k {
                    let a0 = [mul(p, q), z.clone()];
                    f3.push(datum(c0.clone(), c1.clone(), on_x.clone(), map_x(f, q, &f.neg(q)), a0.clone(), sub(p, q)));
                    f4.push(datum(c1.clone(), c0.clone(), on_1mx.clone(), map_x(f, &z, q), a0, sub(q, p)));
                }
            }
            fams.push(FlagFamily { name: "F1", datums: f1 });
            fams.push(FlagFamily { name: "F2", datums: f2 });
            fams.push(FlagFamily { name: "F3", datums: f3 });
            fams.push(FlagFamily { name: "F4", datums: f4 });
        }
    }
    Ok(fams)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{enumerate_flag_datums, flag_check};
    use std::collections::BTreeSet;

    fn sizes(base: FamilyBase, p: u64) -> Vec<usize> {
        let f = Field::prime(p).unwrap();
        flag_family_generators(base, &f).unwrap().iter().map(|x| x.datums.len()).collect()
    }

    #[test]
    fn family_sizes() {
        assert_eq!(sizes(FamilyBase::K00, 2), vec![4, 4, 2]);
        assert_eq!(sizes(FamilyBase::K00, 3), vec![18, 9, 6]);
        assert_eq!(sizes(FamilyBase::K01, 3), vec![27, 27, 9, 9]);
    }

    #[test]
    fn families_partition_the_enumeration() {
        for p in [2, 3, 5] {
            let f = Field::prime(p).unwrap();
            for base in [FamilyBase::K00, FamilyBase::K01] {
                let a = base.algebra(&f);
                let fams = flag_family_generators(base, &f).unwrap();
                let total: usize = fams.iter().map(|x| x.datums.len()).sum();
                let union: BTreeSet<_> = fams.iter().flat_map(|x| x.datums.iter().cloned()).collect();
                assert_eq!(union.len(), total, "families overlap for {base:?} over GF({p})");
                for fd in &union {
                    assert!(flag_check(&a, fd).unwrap().all_hold());
                }
                let all: BTreeSet<_> = enumerate_flag_datums(&a).unwrap().into_iter().collect();
                assert_eq!(union, all, "{base:?} over GF({p})");
            }
        }
    }

    #[test]
    fn k00_third_family_shape() {
        let f = Field::prime(3).unwrap();
        let fams = flag_family_generators(FamilyBase::K00, &f).unwrap();
        for fd in &fams[2].datums {
            let (bd1, d1) = (fd.big_d.get(1, 1), fd.d.get(1, 1));
            assert_eq!(fd.u, f.add(bd1, d1));
            assert_eq!(fd.a0, vec![f.neg(&f.mul(bd1, d1)), f.zero()]);
        }
    }
}
