use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{all_certificates, enumerate_flag_datums, flag_extension, transform, Certificate, EquivMode, FlagDatum};
use crate::algebra::{is_isomorphic, Algebra, Invariants};
use crate::error::{Error, Result};
use crate::field::Field;

/// Largest base dimension accepted by `classify_codim1`.
pub const MAX_CLASSIFY_DIM: usize = 3;

/// Largest target dimension accepted by `supersolvable_catalog`.
pub const MAX_TOWER_DIM: usize = 4;

/// One class: its least member and every member with a certificate `c`
/// such that `transform(A, representative, c) == member`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagClass {
    pub representative: FlagDatum,
    pub members: Vec<(FlagDatum, Certificate)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedFamily {
    pub mode: EquivMode,
    pub classes: Vec<FlagClass>,
}

impl ClassifiedFamily {
    pub fn representatives(&self) -> Vec<&FlagDatum> {
        self.classes.iter().map(|c| &c.representative).collect()
    }

    pub fn datum_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    /// Index of the class containing `fd`.
    pub fn class_of(&self, fd: &FlagDatum) -> Option<usize> {
        self.classes.iter().position(|c| c.members.iter().any(|(m, _)| m == fd))
    }
}

/// Quotient of the flag datums of A by the equivalent (q in k*) or
/// cohomologous (q = 1) relation.
///
/// The certificates act on datums as a group (composition of the maps
/// x -> α + q x), so each class is the orbit of its least member.
pub fn classify_codim1(a: &Algebra, mode: EquivMode) -> Result<ClassifiedFamily> {
    if a.dim() > MAX_CLASSIFY_DIM {
        return Err(Error::DimensionBoundExceeded { dim: a.dim(), bound: MAX_CLASSIFY_DIM });
    }
    let datums = enumerate_flag_datums(a)?;
    let certs = all_certificates(a, mode)?;
    let mut owner: HashMap<FlagDatum, usize> = HashMap::with_capacity(datums.len());
    let mut classes: Vec<FlagClass> = Vec::new();
    for fd in &datums {
        if owner.contains_key(fd) {
            continue;
        }
        let idx = classes.len();
        let orbit: Vec<(FlagDatum, Certificate)> = certs.par_iter().map(|c| (transform(a, fd, c), c.clone())).collect();
        let mut members: BTreeMap<FlagDatum, Certificate> = BTreeMap::new();
        for (image, c) in orbit {
            members.entry(image).or_insert(c);
        }
        for image in members.keys() {
            debug_assert!(datums.binary_search(image).is_ok());
            owner.insert(image.clone(), idx);
        }
        classes.push(FlagClass { representative: fd.clone(), members: members.into_iter().collect() });
    }
    Ok(ClassifiedFamily { mode, classes })
}

/// Representatives up to isomorphism of the m-dimensional supersolvable
/// algebras over a finite field, built stage by stage from k.
pub fn supersolvable_catalog(f: &Field, m: usize) -> Result<Vec<Algebra>> {
    if !f.is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("supersolvable catalog".into()));
    }
    if m == 0 {
        return Err(Error::Usage("target dimension must be at least 1".into()));
    }
    if m > MAX_TOWER_DIM {
        return Err(Error::DimensionBoundExceeded { dim: m, bound: MAX_TOWER_DIM });
    }
    let mut stage = vec![Algebra::ground(f)];
    for _ in 1..m {
        let candidates: Vec<Vec<Algebra>> = stage
            .par_iter()
            .map(|a| {
                let fam = classify_codim1(a, EquivMode::Equivalent)?;
                fam.representatives().into_iter().map(|fd| flag_extension(a, fd)).collect()
            })
            .collect::<Result<_>>()?;
        stage = dedup_isomorphic(candidates.into_iter().flatten().collect())?;
    }
    Ok(stage)
}

/// Keeps the first algebra of each isomorphism class, in input order.
pub fn dedup_isomorphic(algs: Vec<Algebra>) -> Result<Vec<Algebra>> {
    let invariants: Vec<Invariants> = algs.par_iter().map(Invariants::of).collect::<Result<_>>()?;
    let mut buckets: HashMap<Invariants, Vec<usize>> = HashMap::new();
    let mut kept = Vec::new();
    'next: for (i, inv) in invariants.into_iter().enumerate() {
        let bucket = buckets.entry(inv).or_default();
        for &j in bucket.iter() {
            if is_isomorphic(&algs[i], &algs[j])?.is_some() {
                continue 'next;
            }
        }
        bucket.push(i);
        kept.push(i);
    }
    Ok(kept.into_iter().map(|i| algs[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{certificate_holds, flag_equiv};

    #[test]
    fn ground_field_classes() {
        let f = Field::prime(2).unwrap();
        let k = Algebra::ground(&f);
        let fam = classify_codim1(&k, EquivMode::Equivalent).unwrap();
        let sizes: Vec<usize> = fam.classes.iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes, vec![2, 1, 1]);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(classify_codim1(&Algebra::ground(&f3), EquivMode::Equivalent).unwrap().classes.len(), 3);
    }

    #[test]
    fn certificates_and_refinement() {
        let f = Field::prime(3).unwrap();
        let k00 = Algebra::two_dim(&f, &f.zero(), &f.zero());
        let eq = classify_codim1(&k00, EquivMode::Equivalent).unwrap();
        let co = classify_codim1(&k00, EquivMode::Cohomologous).unwrap();
        assert_eq!(eq.datum_count(), 33);
        assert_eq!(co.datum_count(), 33);
        for class in &eq.classes {
            for (m, c) in &class.members {
                assert!(certificate_holds(&k00, &class.representative, m, c));
            }
        }
        for class in &co.classes {
            let target = eq.class_of(&class.representative).unwrap();
            for (m, c) in &class.members {
                assert_eq!(c.q, f.one());
                assert_eq!(eq.class_of(m), Some(target));
            }
        }
        for i in 0..eq.classes.len() {
            for j in 0..i {
                let (a, b) = (&eq.classes[i].representative, &eq.classes[j].representative);
                assert!(flag_equiv(&k00, a, b, EquivMode::Equivalent).unwrap().is_none());
            }
        }
    }

    #[test]
    fn dimension_two_catalogs() {
        for p in [2, 3, 5] {
            let f = Field::prime(p).unwrap();
            assert_eq!(supersolvable_catalog(&f, 2).unwrap().len(), 3, "GF({p})");
        }
    }
}
