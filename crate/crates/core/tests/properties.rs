use num_bigint::BigInt;
use proptest::prelude::*;

use shiftlab_core::alcove::{AffineSystem, AffineWeight};
use shiftlab_core::liealg::{identity_mat, mat_mul};
use shiftlab_core::qseries::QSeries;
use shiftlab_core::rational::{qi, qr};
use shiftlab_core::{ShiftCase, Variant, WeightVec, WeylElement};

/// σ_{j1}⋯σ_{jk} for any word, reduced or not.
fn product(c: &ShiftCase, word: &[usize]) -> WeylElement {
    let m = word.iter().fold(identity_mat(c.rank()), |m, &i| mat_mul(&m, c.weyl.simple_mat(i)));
    c.weyl.get(c.weyl.index_of(&m).unwrap()).clone()
}

fn series(base: (i64, i64), grid: u64, cs: Vec<i64>) -> QSeries {
    let n = cs.len() as i64;
    let b = qr(base.0, base.1);
    let prec = &b + qr(n, grid as i64);
    QSeries::new(b, grid, cs.into_iter().map(BigInt::from).collect(), prec).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in coeffs(), b in coeffs(), c in coeffs(), g in prop::sample::select(vec![1u64, 2, 12, 48])) {
        let (x, y, z) = (series((1, 24), g, a), series((-1, 8), 2, b), series((0, 1), g, c));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn json_roundtrip_is_stable(a in coeffs()) {
        let x = series((5, 48), 48, a);
        let s1 = serde_json::to_string(&x).unwrap();
        let s2 = serde_json::to_string(&x.truncate(x.precision())).unwrap();
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn twisted_action_is_a_group_action(word in prop::collection::vec(0usize..2, 0..8), lam_idx in 0usize..16) {
        let c = ShiftCase::from_type("B2", Variant::NonSuper, 2).unwrap();
        let lams = c.enumerate_lambda();
        let lam = &lams[lam_idx % lams.len()];
        let w = product(&c, &word);
        // acting letter by letter, rightmost first, equals acting by the product
        let mut step = lam.clone();
        for &i in word.iter().rev() {
            step = c.w_act(&product(&c, &[i]), &step);
        }
        prop_assert_eq!(step, c.w_act(&w, lam));
    }

    #[test]
    fn reduction_is_canonical(coords in prop::collection::vec(-30i64..30, 2), k in 1i64..6, word in prop::collection::vec(0usize..2, 0..6), t in prop::collection::vec(-3i64..3, 2)) {
        let c = ShiftCase::from_type("G2", Variant::NonSuper, 2).unwrap();
        let a = AffineSystem::new(&c);
        let mu = AffineWeight::new(WeightVec::new(coords.iter().map(|&x| qr(x, 3)).collect()), qi(k));
        let red = a.dominant_reduce(&mu).unwrap();
        prop_assert!(a.in_chamber(&red.reduced));
        let g = a.make(product(&c, &word), WeightVec::from_ints(&t).scale_int(a.scale)).unwrap();
        let red2 = a.dominant_reduce(&a.dot_act(&g, &mu)).unwrap();
        prop_assert_eq!(&red2.reduced.finite, &red.reduced.finite);
        prop_assert_eq!(&red2.reduced, &red.reduced);
    }
}
