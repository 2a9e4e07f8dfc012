use coulomb_core::abelian::{
    ring_hilbert, ring_mul, structure_polynomial, AbelianData, EtaPoly, RingElement,
};
use coulomb_core::monopole::{hilbert, Refine};
use coulomb_core::theory::check_charge_matrix;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_data(rng: &mut ChaCha8Rng) -> AbelianData {
    loop {
        let d = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=2.min(d));
        let alpha: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..k).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if check_charge_matrix(&alpha, k).is_ok() {
            return AbelianData::new(alpha, k, None).unwrap();
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, k: usize) -> RingElement {
    let mut x = RingElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let lambda: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
        let mut p = EtaPoly::zero();
        for _ in 0..rng.gen_range(1..=2) {
            let exps: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=1)).collect();
            p = p.add(&EtaPoly::monomial(
                exps,
                BigInt::from(rng.gen_range(-3..=3)),
            ));
        }
        x = x.add(&RingElement::term(lambda, p));
    }
    x
}

#[test]
fn associative_and_commutative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let data = random_data(&mut rng);
        let k = data.rank();
        let (x, y, z) = (
            random_element(&mut rng, k),
            random_element(&mut rng, k),
            random_element(&mut rng, k),
        );
        let xy = ring_mul(&data, &x, &y).unwrap();
        assert_eq!(xy, ring_mul(&data, &y, &x).unwrap());
        let left = ring_mul(&data, &xy, &z).unwrap();
        let right = ring_mul(&data, &x, &ring_mul(&data, &y, &z).unwrap()).unwrap();
        assert_eq!(left, right, "{:?}", data.alpha());
    }
}

#[test]
fn product_respects_grading() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let data = random_data(&mut rng);
        let k = data.rank();
        let l: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
        let m: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
        let s: Vec<i64> = l.iter().zip(&m).map(|(a, b)| a + b).collect();
        let p = structure_polynomial(&data, &l, &m);
        let h = p.homogeneous_degree().unwrap() as i64;
        assert_eq!(data.degree(&s) + 2 * h, data.degree(&l) + data.degree(&m));
    }
}

#[test]
fn ring_series_equals_monopole_series() {
    let cases: Vec<(Vec<Vec<i64>>, usize, Option<Vec<i64>>)> = vec![
        (vec![vec![1]], 1, None),
        (vec![vec![1]; 2], 1, None),
        (vec![vec![1]; 3], 1, Some(vec![1, 0, -1])),
        (vec![vec![1]; 4], 1, None),
        (vec![vec![1]; 5], 1, Some(vec![2, 0, 0, 0, 0])),
        (
            vec![vec![1, 0], vec![1, 0], vec![-1, 1], vec![0, 1], vec![0, 1]],
            2,
            None,
        ),
        (
            vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![1, -1]],
            2,
            Some(vec![0, 1, 0, 0]),
        ),
        (vec![vec![1, 0], vec![0, 1], vec![0, 0]], 2, None),
    ];
    for (alpha, k, lift) in cases {
        let data = AbelianData::new(alpha, k, lift).unwrap();
        let th = data.theory().unwrap();
        let refine = Refine {
            pi1: true,
            lambda_f: Some(data.lift().to_vec()),
        };
        let mono = hilbert(&th, 20, &refine, None).unwrap();
        let ring = ring_hilbert(&data, 20, true).unwrap();
        assert_eq!(ring, mono, "{:?}", data.alpha());
        assert_eq!(
            ring_hilbert(&data, 20, false).unwrap(),
            hilbert(
                &th,
                20,
                &Refine {
                    pi1: false,
                    lambda_f: Some(data.lift().to_vec())
                },
                None
            )
            .unwrap()
        );
    }
}
