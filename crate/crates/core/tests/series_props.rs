use coulomb_core::series::{plethystic_exp, rat, FugacityGroup, LambdaSeries, TruncatedSeries};
use coulomb_core::symprod::h1_closed;
use proptest::prelude::*;

const CUTOFF: usize = 6;

fn group() -> FugacityGroup {
    FugacityGroup::new(1, vec![3]).unwrap()
}

fn series_from(terms: &[(usize, i64, i64, i64)]) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(group(), CUTOFF);
    for &(e, z, w, c) in terms {
        s.add_monomial(e, &[z, w], rat(c)).unwrap();
    }
    s
}

fn any_series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((0..=CUTOFF, -2i64..=2, 0i64..3, -3i64..=3), 0..8)
        .prop_map(|t| series_from(&t))
}

/// Constant term 1 or -1 at the identity, plus anything else.
fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (
        prop::bool::ANY,
        prop::collection::vec((1..=CUTOFF, -2i64..=2, 0i64..3, -3i64..=3), 0..8),
    )
        .prop_map(|(sign, mut t)| {
            t.push((0, 0, 0, if sign { 1 } else { -1 }));
            series_from(&t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(a in any_series(), b in any_series(), c in any_series()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, ab.add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn recip_is_two_sided(u in unit_series()) {
        let one = TruncatedSeries::one(group(), CUTOFF);
        let r = u.recip().unwrap();
        prop_assert_eq!(u.mul(&r).unwrap(), one.clone());
        prop_assert_eq!(r.mul(&u).unwrap(), one);
    }

    #[test]
    fn torsion_generator_has_order_three(a in any_series()) {
        let w3 = a.mul_monomial(0, &[0, 3], &rat(1)).unwrap();
        prop_assert_eq!(w3, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pe_is_additive(a in any_series(), b in any_series()) {
        let order = 3;
        let f = LambdaSeries::single(a, 1, order);
        let g = LambdaSeries::single(b.clone(), 1, order).add(&LambdaSeries::single(b, 2, order)).unwrap();
        let lhs = plethystic_exp(&f.add(&g).unwrap()).unwrap();
        let rhs = plethystic_exp(&f).unwrap().mul(&plethystic_exp(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn sym_square_of_polynomial_ring() {
    // unordered pairs {x^a, x^b}: count with a ≤ b, a + b = e
    let cutoff = 8;
    let f = TruncatedSeries::from_integers(cutoff, &vec![1; cutoff + 1]);
    let pe = plethystic_exp(&LambdaSeries::single(f, 1, 2)).unwrap();
    let mut want = vec![0i64; cutoff + 1];
    for a in 0..=cutoff {
        for b in a..=cutoff - a {
            want[a + b] += 1;
        }
    }
    assert_eq!(
        pe.coefficient(2),
        &TruncatedSeries::from_integers(cutoff, &want)
    );
}

#[test]
fn sym_square_of_plane() {
    // C[x, y] with deg x = t z, deg y = t z^{-1}; Sym² counts unordered
    // pairs of monomials
    let cutoff = 8;
    let g = FugacityGroup::free(1);
    let f = h1_closed(1, cutoff);
    let pe = plethystic_exp(&LambdaSeries::single(f, 1, 2)).unwrap();
    let monos: Vec<(usize, usize)> = (0..=cutoff)
        .flat_map(|i| (0..=cutoff - i).map(move |j| (i, j)))
        .collect();
    let mut want = TruncatedSeries::zero(g, cutoff);
    for (p, &(i1, j1)) in monos.iter().enumerate() {
        for &(i2, j2) in &monos[p..] {
            let e = i1 + j1 + i2 + j2;
            if e <= cutoff {
                let z = (i1 + i2) as i64 - (j1 + j2) as i64;
                want.add_monomial(e, &[z], rat(1)).unwrap();
            }
        }
    }
    assert_eq!(pe.coefficient(2), &want);
}
