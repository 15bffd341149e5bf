use extalg::algebra::Algebra;
use extalg::field::Field;
use extalg::flag::{certificate_holds, enumerate_flag_datums, flag_check, transform, Certificate};
use extalg::json::{AlgebraJson, DatumJson};
use extalg::linalg::{vadd, vscale};
use extalg::sample::Sampler;
use extalg::unified::{check_axioms, transport_datum, unified_product};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    ["GF(2)", "GF(3)", "GF(4)", "GF(7)", "GF(8)", "GF(9)"].iter().map(|s| Field::parse(s).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(fi in 0usize..6, i in 0usize..9, j in 0usize..9, k in 0usize..9) {
        let f = &fields()[fi];
        let els = f.elements().unwrap();
        let q = els.len();
        let (a, b, c) = (&els[i % q], &els[j % q], &els[k % q]);
        prop_assert_eq!(f.mul(a, &f.mul(b, c)), f.mul(&f.mul(a, b), c));
        prop_assert_eq!(f.add(a, &f.add(b, c)), f.add(&f.add(a, b), c));
        prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert!(f.is_zero(&f.add(a, &f.neg(a))));
        if !f.is_zero(a) {
            prop_assert!(f.is_one(&f.mul(a, &f.inv(a))));
        }
        prop_assert_eq!(f.parse_elem(&f.format(a)).unwrap(), a.clone());
    }

    #[test]
    fn matrix_inverse(p in prop::sample::select(vec![2u64, 3, 5]), n in 1usize..5, seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let mut s = Sampler::new(&f, seed).unwrap();
        let m = s.invertible(n);
        let inv = m.inverse(&f).unwrap();
        prop_assert!(inv.mul(&f, &m).is_identity(&f));
        prop_assert!(m.mul(&f, &inv).is_identity(&f));
    }

    #[test]
    fn datum_json_round_trip(p in prop::sample::select(vec![2u64, 3]), m in 1usize..3, seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let mut s = Sampler::new(&f, seed).unwrap();
        let a = Algebra::two_dim(&f, &s.elem(), &s.elem());
        let d = s.mixed_datum(&a, m).unwrap();
        let text = serde_json::to_string(&DatumJson::from_datum(&d)).unwrap();
        let back: DatumJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_datum(None).unwrap(), d.clone());
        let aj: AlgebraJson = serde_json::from_str(&serde_json::to_string(&AlgebraJson::from_algebra(&a)).unwrap()).unwrap();
        prop_assert_eq!(aj.to_algebra(None).unwrap(), a);
    }

    #[test]
    fn sampling_is_seeded(seed in any::<u64>()) {
        let f = Field::prime(3).unwrap();
        let a = Algebra::two_dim(&f, &f.zero(), &f.one());
        let mut s1 = Sampler::new(&f, seed).unwrap();
        let mut s2 = Sampler::new(&f, seed).unwrap();
        prop_assert_eq!(s1.mixed_datum(&a, 2).unwrap(), s2.mixed_datum(&a, 2).unwrap());
    }

    #[test]
    fn transport_preserves_validity(p in prop::sample::select(vec![2u64, 3]), seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let mut s = Sampler::new(&f, seed).unwrap();
        let a = Algebra::two_dim(&f, &f.zero(), &f.zero());
        if let Some(d) = s.tower_datum(&a, 1, false).unwrap() {
            let pair = s.morphism_pair(2, 1, true);
            let d2 = transport_datum(&d, &pair).unwrap();
            prop_assert!(check_axioms(&d2).unwrap().all_hold());
            let (e, e2) = (unified_product(&d).unwrap(), unified_product(&d2).unwrap());
            prop_assert!(e.is_hom_to(&e2, &extalg::unified::psi_map(&d, &pair)));
        }
    }

    /// x = a1 + q1 x' and x' = a2 + q2 x'' compose to x = (a1 + q1 a2) + q1 q2 x''.
    #[test]
    fn flag_transforms_compose(
        p in prop::sample::select(vec![2u64, 3]),
        base in 0usize..3,
        pick in any::<usize>(),
        seed in any::<u64>(),
    ) {
        let f = Field::prime(p).unwrap();
        let a = match base {
            0 => Algebra::ground(&f),
            1 => Algebra::two_dim(&f, &f.zero(), &f.zero()),
            _ => Algebra::two_dim(&f, &f.zero(), &f.one()),
        };
        let fds = enumerate_flag_datums(&a).unwrap();
        let fd = &fds[pick % fds.len()];
        let mut s = Sampler::new(&f, seed).unwrap();
        let n = a.dim();
        let c1 = Certificate { q: s.nonzero(), alpha: s.vector(n) };
        let c2 = Certificate { q: s.nonzero(), alpha: s.vector(n) };
        let fd1 = transform(&a, fd, &c1);
        prop_assert!(flag_check(&a, &fd1).unwrap().all_hold());
        prop_assert!(certificate_holds(&a, fd, &fd1, &c1));
        let twice = transform(&a, &fd1, &c2);
        let composed = Certificate {
            q: f.mul(&c1.q, &c2.q),
            alpha: vadd(&f, &c1.alpha, &vscale(&f, &c1.q, &c2.alpha)),
        };
        prop_assert_eq!(transform(&a, fd, &composed), twice);
        let ident = Certificate { q: f.one(), alpha: vec![f.zero(); n] };
        prop_assert_eq!(&transform(&a, fd, &ident), fd);
    }
}
