//! The Coulomb branch of a torus gauge theory as an explicit ring
//! `⊕_λ C[η_1..η_k] z^λ`, with `z^λ z^μ = z^{λ+μ} π(∏ ξ_i^{d_i(λ,μ)})`.
//!
//! `α` is a `d x k` integer matrix: row `i` is the gauge charge of
//! hypermultiplet `i`, and `π(ξ_i) = Σ_p α_ip η_p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{mat_vec, smith};
use crate::series::{rat, FugacityGroup, SeriesError, TruncatedSeries};
use crate::theory::{build_abelian, check_charge_matrix, GaugeTheory, TheoryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("lift has length {got}, expected {expected}")]
    LiftLength { expected: usize, got: usize },
    #[error("element lives over rank {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianData {
    alpha: Vec<Vec<i64>>,
    rank: usize,
    lift: Vec<i64>,
}

impl AbelianData {
    pub fn new(
        alpha: Vec<Vec<i64>>,
        rank: usize,
        lift: Option<Vec<i64>>,
    ) -> Result<Self, AbelianError> {
        check_charge_matrix(&alpha, rank)?;
        let d = alpha.len();
        let lift = lift.unwrap_or_else(|| vec![0; d]);
        if lift.len() != d {
            return Err(AbelianError::LiftLength {
                expected: d,
                got: lift.len(),
            });
        }
        Ok(Self { alpha, rank, lift })
    }

    /// Number of hypermultiplets `d`.
    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    /// Gauge rank `d - n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn alpha(&self) -> &[Vec<i64>] {
        &self.alpha
    }

    pub fn lift(&self) -> &[i64] {
        &self.lift
    }

    pub fn apply(&self, lambda: &[i64]) -> Vec<i64> {
        mat_vec(&self.alpha, lambda)
    }

    /// The gauge theory with a rank-`d` flavor torus (so the lift is a flavor
    /// coweight).
    pub fn theory(&self) -> Result<GaugeTheory, AbelianError> {
        Ok(build_abelian(&self.alpha, self.rank, true)?)
    }

    /// `Σ_i |(λ̃_F + α(λ))_i|`.
    pub fn two_delta(&self, lambda: &[i64]) -> i64 {
        self.apply(lambda)
            .iter()
            .zip(&self.lift)
            .map(|(a, l)| (a + l).abs())
            .sum()
    }

    /// `Σ_i |α(λ)_i|`, the ring grading (no lift).
    pub fn degree(&self, lambda: &[i64]) -> i64 {
        self.apply(lambda).iter().map(|a| a.abs()).sum()
    }

    /// Integer left inverse `L` of `α`, so `λ = L α(λ)`.
    pub fn left_inverse(&self) -> Vec<Vec<i64>> {
        let k = self.rank;
        let s = smith(&self.alpha, k);
        // u α v = [I; 0]  =>  L = v [I 0] u
        (0..k)
            .map(|i| {
                (0..self.d())
                    .map(|j| (0..k).map(|m| s.v[i][m] * s.u[m][j]).sum())
                    .collect()
            })
            .collect()
    }
}

/// `2Δ` from the flavored gauge theory side, for comparison.
pub fn two_delta_abelian(data: &AbelianData, lambda: &[i64]) -> i64 {
    data.two_delta(lambda)
}

/// Exponent of `ξ_i` in `z^λ z^μ`, from the signs of `a = α(λ)_i`,
/// `b = α(μ)_i` and `a + b`.
pub fn defect(a: i64, b: i64) -> i64 {
    let c = a + b;
    if a * b >= 0 {
        0
    } else if a >= 0 && b <= 0 && c >= 0 {
        -b
    } else if a >= 0 && b <= 0 && c <= 0 {
        a
    } else if a <= 0 && b >= 0 && c >= 0 {
        -a
    } else {
        b
    }
}

/// Polynomial in `η_1..η_k` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EtaPoly {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl EtaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(vec![0; k], BigInt::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// `Σ_p coeffs[p] η_p`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let k = coeffs.len();
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; k];
            e[i] = 1;
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &EtaPoly) -> EtaPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &EtaPoly) -> EtaPoly {
        let mut out = EtaPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32, k: usize) -> EtaPoly {
        (0..n).fold(EtaPoly::one(k), |acc, _| acc.mul(self))
    }

    /// Total degree if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for EtaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mon: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("η{}", i + 1)
                        } else {
                            format!("η{}^{x}", i + 1)
                        }
                    })
                    .collect();
                match (mon.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mon.join("*"),
                    (false, false) if *c == -BigInt::one() => format!("-{}", mon.join("*")),
                    (false, false) => format!("{c}*{}", mon.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Finite sum `Σ_λ f_λ(η) z^λ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingElement {
    terms: BTreeMap<Vec<i64>, EtaPoly>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `z^λ`.
    pub fn basis(lambda: Vec<i64>) -> Self {
        let k = lambda.len();
        Self::term(lambda, EtaPoly::one(k))
    }

    pub fn term(lambda: Vec<i64>, p: EtaPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(lambda, p);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &EtaPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, lambda: Vec<i64>, p: EtaPoly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&lambda) {
            Some(q) => q.add(&p),
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(lambda, sum);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (l, p) in &other.terms {
            out.add_term(l.clone(), p.clone());
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, p)| {
                let z = if l.iter().all(|&x| x == 0) {
                    String::new()
                } else {
                    format!("z^{l:?}")
                };
                match (p.to_string().as_str(), z.is_empty()) {
                    ("1", false) => z,
                    (s, true) => s.to_string(),
                    (s, false) => format!("({s})*{z}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `π(∏ ξ_i^{d_i})` for the product `z^λ z^μ`.
pub fn structure_polynomial(data: &AbelianData, lambda: &[i64], mu: &[i64]) -> EtaPoly {
    let a = data.apply(lambda);
    let b = data.apply(mu);
    let k = data.rank();
    let mut out = EtaPoly::one(k);
    for (i, row) in data.alpha().iter().enumerate() {
        let d = defect(a[i], b[i]);
        if d > 0 {
            out = out.mul(&EtaPoly::linear(row).pow(d as u32, k));
        }
    }
    out
}

pub fn ring_mul(
    data: &AbelianData,
    x: &RingElement,
    y: &RingElement,
) -> Result<RingElement, AbelianError> {
    let k = data.rank();
    for l in x.terms.keys().chain(y.terms.keys()) {
        if l.len() != k {
            return Err(AbelianError::RankMismatch {
                expected: k,
                got: l.len(),
            });
        }
    }
    let mut out = RingElement::zero();
    for (l, p) in &x.terms {
        for (m, q) in &y.terms {
            let s: Vec<i64> = l.iter().zip(m).map(|(a, b)| a + b).collect();
            let c = structure_polynomial(data, l, m).mul(p).mul(q);
            out.add_term(s, c);
        }
    }
    Ok(out)
}

/// Graded dimensions of the ring (`deg η = 2`, `deg z^λ = 2Δ(λ)` with the
/// lift), optionally refined by `z^λ ∈ Z^k`. Counts basis monomials
/// `η^β z^λ` directly; `λ` is bounded through the integer left inverse of
/// `α`.
pub fn ring_hilbert(
    data: &AbelianData,
    cutoff: usize,
    refined: bool,
) -> Result<TruncatedSeries, AbelianError> {
    let k = data.rank();
    let group = if refined {
        FugacityGroup::free(k)
    } else {
        FugacityGroup::trivial()
    };
    let mut out = TruncatedSeries::zero(group, cutoff);
    let linv = data.left_inverse();
    let norm: i64 = linv
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).sum())
        .max()
        .unwrap_or(0);
    let lift_norm: i64 = data.lift().iter().map(|x| x.abs()).sum();
    // ‖λ‖∞ ≤ norm·‖α(λ)‖∞ ≤ norm·(2Δ + ‖lift‖₁)
    let radius = norm * (cutoff as i64 + lift_norm);
    let mut lambda = vec![-radius; k];
    loop {
        let e = data.two_delta(&lambda);
        if e >= 0 && e as usize <= cutoff {
            let fug = if refined { lambda.clone() } else { Vec::new() };
            let mut m = 0;
            // η-monomials of degree m: none beyond m = 0 when k = 0
            while e as usize + 2 * m <= cutoff && (k > 0 || m == 0) {
                let count = if k == 0 {
                    1
                } else {
                    binomial(m + k - 1, k - 1)
                };
                out.add_monomial(e as usize + 2 * m, &fug, rat(count as i64))?;
                m += 1;
            }
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            if lambda[i] < radius {
                lambda[i] += 1;
                break;
            }
            lambda[i] = -radius;
            i += 1;
        }
    }
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// A product rule `z^a z^b = p(η) z^{a+b}` between unit generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub left: Vec<i64>,
    pub right: Vec<i64>,
    pub product: RingElement,
    pub degree: i64,
}

/// Generators `η_p` (degree 2) and `z^{±e_p}` with their degrees.
pub fn unit_generators(data: &AbelianData) -> Vec<(String, Vec<i64>, i64)> {
    let k = data.rank();
    let mut out = Vec::new();
    for p in 0..k {
        for s in [1, -1] {
            let mut e = vec![0; k];
            e[p] = s;
            let deg = data.degree(&e);
            out.push((format!("z^{e:?}"), e, deg));
        }
    }
    out
}

/// Products among the `z^{±e_p}` whose degree does not exceed `max_degree`.
pub fn unit_relations(data: &AbelianData, max_degree: i64) -> Vec<Relation> {
    let gens = unit_generators(data);
    let mut out = Vec::new();
    for (i, (_, a, da)) in gens.iter().enumerate() {
        for (_, b, db) in &gens[i..] {
            if da + db > max_degree {
                continue;
            }
            let product = ring_mul(
                data,
                &RingElement::basis(a.clone()),
                &RingElement::basis(b.clone()),
            )
            .expect("generators match the rank");
            out.push(Relation {
                left: a.clone(),
                right: b.clone(),
                product,
                degree: da + db,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqed(n: usize) -> AbelianData {
        AbelianData::new(vec![vec![1]; n], 1, None).unwrap()
    }

    #[test]
    fn two_delta_examples() {
        let d = sqed(4);
        assert_eq!(d.two_delta(&[-3]), 12);
        assert_eq!(d.two_delta(&[0]), 0);
        let lifted = AbelianData::new(vec![vec![1]; 3], 1, Some(vec![1, 0, 0])).unwrap();
        assert_eq!(lifted.two_delta(&[0]), 1);
    }

    #[test]
    fn surface_xy_equals_z_to_n() {
        for n in 1..=5 {
            let d = sqed(n);
            let p = ring_mul(
                &d,
                &RingElement::basis(vec![1]),
                &RingElement::basis(vec![-1]),
            )
            .unwrap();
            let want = RingElement::term(vec![0], EtaPoly::monomial(vec![n as u32], BigInt::one()));
            assert_eq!(p, want);
        }
        let d = sqed(3);
        let p = ring_mul(
            &d,
            &RingElement::basis(vec![1]),
            &RingElement::basis(vec![1]),
        )
        .unwrap();
        assert_eq!(p, RingElement::basis(vec![2]));
        let x = RingElement::term(vec![2], EtaPoly::linear(&[5]));
        assert_eq!(ring_mul(&d, &RingElement::basis(vec![0]), &x).unwrap(), x);
    }

    #[test]
    fn defect_is_the_overlap() {
        for a in -6..=6 {
            for b in -6..=6 {
                assert_eq!(
                    defect(a, b),
                    (a.abs() + b.abs() - (a + b).abs()) / 2,
                    "{a} {b}"
                );
            }
        }
    }

    #[test]
    fn ring_series_examples() {
        let h = ring_hilbert(&sqed(1), 10, false).unwrap();
        assert_eq!(
            h.integer_coeffs().unwrap(),
            (1..=11).map(BigInt::from).collect::<Vec<_>>()
        );
        let h = ring_hilbert(&sqed(2), 8, false).unwrap();
        let want = [1, 0, 3, 0, 5, 0, 7, 0, 9].map(BigInt::from).to_vec();
        assert_eq!(h.integer_coeffs().unwrap(), want);
        assert!(AbelianData::new(vec![vec![0]], 1, None).is_err());
    }

    #[test]
    fn left_inverse_inverts() {
        let d = AbelianData::new(
            vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![2, 1]],
            2,
            None,
        )
        .unwrap();
        let l = d.left_inverse();
        for lam in [[1, 0], [0, 1], [3, -2]] {
            assert_eq!(mat_vec(&l, &d.apply(&lam)), lam.to_vec());
        }
    }
}
