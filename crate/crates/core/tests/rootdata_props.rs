use coulomb_core::rootdata::{Builtin, RootDatum};
use coulomb_core::theory::{build_quiver, build_so_instanton, GaugeTheory, Quiver};
use proptest::prelude::*;

fn data() -> Vec<RootDatum> {
    [
        Builtin::U(3),
        Builtin::Su(4),
        Builtin::Sp(3),
        Builtin::SoOdd(2),
        Builtin::SoOdd(3),
        Builtin::SoEven(4),
        Builtin::Torus(2),
    ]
    .into_iter()
    .map(|b| RootDatum::builtin(b).unwrap())
    .collect()
}

fn theories() -> Vec<GaugeTheory> {
    vec![
        build_quiver(&Quiver::jordan(), &[3], &[1], false).unwrap(),
        build_quiver(&Quiver::linear(2), &[2, 1], &[3, 0], false).unwrap(),
        build_quiver(&Quiver::cycle(3), &[1, 2, 1], &[1, 0, 1], false).unwrap(),
        build_so_instanton(3, 2).unwrap(),
    ]
}

fn apply_word(rd: &RootDatum, word: &[usize], lambda: &[i64]) -> Vec<i64> {
    let s = rd.simple_roots().len();
    word.iter().fold(lambda.to_vec(), |l, &i| {
        if s == 0 {
            l
        } else {
            rd.reflect(i % s, &l)
        }
    })
}

fn coweight(r: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dominant_representative_is_weyl_invariant(
        which in 0usize..7, raw in coweight(4), word in prop::collection::vec(0usize..8, 0..10)
    ) {
        let rd = &data()[which];
        let l = &raw[..rd.rank()];
        let d = rd.to_dominant(l).unwrap();
        prop_assert!(rd.is_dominant(&d).unwrap());
        prop_assert_eq!(rd.to_dominant(&apply_word(rd, &word, l)).unwrap(), d.clone());
        let degs = rd.stabilizer_degrees(&d).unwrap();
        prop_assert_eq!(degs.len(), rd.rank());
        let levi = rd.positive_roots().iter().filter(|a| a.iter().zip(&d).map(|(x, y)| x * y).sum::<i64>() == 0).count();
        prop_assert_eq!(degs.iter().map(|x| x - 1).sum::<usize>(), levi);
    }

    #[test]
    fn pi1_is_additive_and_weyl_invariant(
        which in 0usize..7, a in coweight(4), b in coweight(4), word in prop::collection::vec(0usize..8, 0..10)
    ) {
        let rd = &data()[which];
        let r = rd.rank();
        let p = rd.pi1();
        let (a, b) = (&a[..r], &b[..r]);
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(p.project(&sum), p.group.compose(&p.project(a), &p.project(b)));
        prop_assert_eq!(p.project(&apply_word(rd, &word, a)), p.project(a));
        for c in rd.simple_coroots() {
            prop_assert_eq!(p.project(c), p.group.identity());
        }
    }

    #[test]
    fn two_delta_weyl_invariant_and_homogeneous(
        which in 0usize..4, raw in coweight(4), word in prop::collection::vec(0usize..8, 0..10), c in 0i64..4
    ) {
        let th = &theories()[which];
        let l = &raw[..th.gauge.rank()];
        let d = th.two_delta(l, None).unwrap();
        prop_assert_eq!(th.two_delta(&apply_word(&th.gauge, &word, l), None).unwrap(), d);
        let scaled: Vec<i64> = l.iter().map(|x| c * x).collect();
        prop_assert_eq!(th.two_delta(&scaled, None).unwrap(), c * d);
    }
}
