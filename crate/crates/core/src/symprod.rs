//! Symmetric powers of `C²/(Z/N)` from the `U(k)` theory with one adjoint
//! and `N` fundamentals.
//!
//! Three computations of `Σ_k H_k(t,z) Λ^k`: the direct sum over dominant
//! coweights, the plethystic exponential of `Λ·H_1`, and the q-binomial
//! resummation over `(m; k_0, k_1, …)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::series::{
    plethystic_exp, rat, FugacityGroup, LambdaSeries, Rational, SeriesError, TruncatedSeries,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymProdCase {
    pub n: usize,
    pub order_t: usize,
    pub order_lambda: usize,
}

impl SymProdCase {
    pub fn new(n: usize, order_t: usize, order_lambda: usize) -> Result<Self, SeriesError> {
        if n == 0 {
            return Err(SeriesError::ZeroStep);
        }
        Ok(Self {
            n,
            order_t,
            order_lambda,
        })
    }

    fn reach(&self) -> i64 {
        (self.order_t / self.n) as i64
    }
}

fn group() -> FugacityGroup {
    FugacityGroup::free(1)
}

/// `1 / (t²;t²)_j` for `j = 0..=k`.
fn inverse_pochhammers(k: usize, cutoff: usize) -> Vec<TruncatedSeries> {
    let g = group();
    let mut out = vec![TruncatedSeries::one(g.clone(), cutoff)];
    for j in 1..=k {
        let f = TruncatedSeries::geom(2 * j, cutoff)
            .unwrap()
            .embed(&g)
            .unwrap();
        let next = out[j - 1].mul(&f).unwrap();
        out.push(next);
    }
    out
}

/// `Σ_λ z^{Σλ} t^{N Σ|λ_i|} ∏_α 1/(t²;t²)_{k_α}` over `λ_1 ≥ … ≥ λ_k`.
pub fn hk_direct(n: usize, k: usize, cutoff: usize) -> TruncatedSeries {
    let g = group();
    if k == 0 {
        return TruncatedSeries::one(g, cutoff);
    }
    assert!(n > 0, "N must be positive");
    let reach = (cutoff / n) as i64;
    // Numerators grouped by the sorted multiplicities of equal parts.
    let mut by_blocks: BTreeMap<Vec<usize>, TruncatedSeries> = BTreeMap::new();
    let mut lam = Vec::with_capacity(k);
    fn rec(
        lam: &mut Vec<i64>,
        k: usize,
        upper: i64,
        budget: i64,
        n: i64,
        out: &mut BTreeMap<Vec<usize>, TruncatedSeries>,
        cutoff: usize,
    ) {
        if lam.len() == k {
            let mut blocks: Vec<usize> = Vec::new();
            for (i, x) in lam.iter().enumerate() {
                if i > 0 && lam[i - 1] == *x {
                    *blocks.last_mut().unwrap() += 1;
                } else {
                    blocks.push(1);
                }
            }
            blocks.sort_unstable();
            let e = n * lam.iter().map(|x| x.abs()).sum::<i64>();
            let z: i64 = lam.iter().sum();
            out.entry(blocks)
                .or_insert_with(|| TruncatedSeries::zero(group(), cutoff))
                .add_monomial(e as usize, &[z], rat(1))
                .unwrap();
            return;
        }
        let reach = budget / n;
        for x in (-reach..=upper.min(reach)).rev() {
            lam.push(x);
            rec(lam, k, x, budget - n * x.abs(), n, out, cutoff);
            lam.pop();
        }
    }
    rec(
        &mut lam,
        k,
        reach,
        cutoff as i64,
        n as i64,
        &mut by_blocks,
        cutoff,
    );
    let inv = inverse_pochhammers(k, cutoff);
    let mut out = TruncatedSeries::zero(g, cutoff);
    for (blocks, num) in by_blocks {
        let p = blocks.iter().fold(num, |acc, &b| acc.mul(&inv[b]).unwrap());
        out.add_assign(&p).unwrap();
    }
    out
}

/// `(1 - t^{2N}) / ((1 - t²)(1 - t^N z)(1 - t^N z^{-1}))`.
pub fn h1_closed(n: usize, cutoff: usize) -> TruncatedSeries {
    let g = group();
    let one = TruncatedSeries::one(g.clone(), cutoff);
    let mut num = one.clone();
    num.add_monomial(2 * n, &[0], rat(-1)).unwrap();
    let mut a = one.clone();
    a.add_monomial(n, &[1], rat(-1)).unwrap();
    let mut b = one;
    b.add_monomial(n, &[-1], rat(-1)).unwrap();
    let p = TruncatedSeries::geom(2, cutoff).unwrap().embed(&g).unwrap();
    num.mul(&p)
        .and_then(|x| x.mul(&a.recip()?))
        .and_then(|x| x.mul(&b.recip()?))
        .unwrap()
}

/// `Σ_k H_k Λ^k` from the direct sums, computed in parallel over `k`.
pub fn direct_side(case: &SymProdCase) -> LambdaSeries {
    let parts: Vec<TruncatedSeries> = (0..=case.order_lambda)
        .into_par_iter()
        .map(|k| hk_direct(case.n, k, case.order_t))
        .collect();
    LambdaSeries::new(parts).unwrap()
}

/// `PE(Λ·h1)`.
pub fn pe_side(h1: &TruncatedSeries, order_lambda: usize) -> Result<LambdaSeries, SeriesError> {
    plethystic_exp(&LambdaSeries::single(h1.clone(), 1, order_lambda))
}

/// Largest coefficient difference between the direct side and `PE(Λ·h1)`
/// for an arbitrary `h1`.
pub fn discrepancy_with(case: &SymProdCase, h1: &TruncatedSeries) -> Result<Rational, SeriesError> {
    direct_side(case).max_abs_difference(&pe_side(h1, case.order_lambda)?)
}

pub fn pe_identity_check(case: &SymProdCase) -> Result<Rational, SeriesError> {
    discrepancy_with(case, &h1_closed(case.n, case.order_t))
}

/// `h1 + t`, a deliberately wrong input for exercising the check.
pub fn perturbed_h1(n: usize, cutoff: usize) -> TruncatedSeries {
    let mut h = h1_closed(n, cutoff);
    h.add_monomial(1, &[0], rat(1)).unwrap();
    h
}

/// `Q(j) = Σ_k (t^{N|j|} z^j Λ)^k / (t²;t²)_k = 1 / (t^{N|j|} z^j Λ; t²)_∞`.
pub fn q_factor(case: &SymProdCase, j: i64, inv: &[TruncatedSeries]) -> LambdaSeries {
    let parts = (0..=case.order_lambda)
        .map(|k| {
            let e = case.n * j.unsigned_abs() as usize * k;
            inv[k].mul_monomial(e, &[j * k as i64], &rat(1)).unwrap()
        })
        .collect();
    LambdaSeries::new(parts).unwrap()
}

/// Product of `Q(j)` for `j` in `lo..=hi`; empty products are `1`.
fn q_product(case: &SymProdCase, lo: i64, hi: i64, inv: &[TruncatedSeries]) -> LambdaSeries {
    let one = LambdaSeries::one(group(), case.order_t, case.order_lambda);
    (lo..=hi).fold(one, |acc, j| acc.mul(&q_factor(case, j, inv)).unwrap())
}

/// The resummation after the q-binomial theorem, in two forms.
#[derive(Debug, Clone)]
pub struct QBinomialForms {
    /// `1 + Σ_m (∏_{α≥0} Q(m+α) - ∏_{α≥1} Q(m+α))`.
    pub unsplit: LambdaSeries,
    /// The same sum split at `m = 0`, with `1` subtracted from every term
    /// before the two halves are summed separately.
    pub split: LambdaSeries,
    /// `∏_{α≥0} Q(α) · ∏_{α≥1} Q(-α)`.
    pub closed: LambdaSeries,
}

/// `Q(j) ≡ 1` once `N|j| > order_t`, so every infinite product and sum is
/// cut at `|j| ≤ order_t / N`.
pub fn qbinomial_forms(case: &SymProdCase) -> QBinomialForms {
    let r = case.reach();
    let inv = inverse_pochhammers(case.order_lambda, case.order_t);
    let one = LambdaSeries::one(group(), case.order_t, case.order_lambda);

    // suffix[i] = ∏_{j = i - r}^{r} Q(j)
    let width = (2 * r + 2) as usize;
    let mut suffix = vec![one.clone(); width];
    for i in (0..width - 1).rev() {
        let j = i as i64 - r;
        suffix[i] = suffix[i + 1].mul(&q_factor(case, j, &inv)).unwrap();
    }
    let tail = |m: i64| -> &LambdaSeries { &suffix[(m.max(-r) + r).min(2 * r + 1) as usize] };

    let mut unsplit = one.clone();
    for m in -r..=r {
        unsplit = unsplit.add(&tail(m).sub(tail(m + 1)).unwrap()).unwrap();
    }

    // m ≥ 0: Σ (∏_{α≥m} Q(α) - 1) - Σ (∏_{α≥m+1} Q(α) - 1)
    let mut first = LambdaSeries::zero(group(), case.order_t, case.order_lambda);
    let mut second = first.clone();
    for m in 0..=r {
        first = first.add(&tail(m).sub(&one).unwrap()).unwrap();
        second = second.add(&tail(m + 1).sub(&one).unwrap()).unwrap();
    }
    let nonneg = first.sub(&second).unwrap();

    // m < 0: ∏_{α≥0} Q(α) · Σ_{m≥1} (∏_{α=1}^{m} Q(-α) - ∏_{α=1}^{m-1} Q(-α))
    let mut a = LambdaSeries::zero(group(), case.order_t, case.order_lambda);
    let mut b = a.clone();
    for m in 1..=r {
        a = a
            .add(&q_product(case, -m, -1, &inv).sub(&one).unwrap())
            .unwrap();
        b = b
            .add(&q_product(case, -(m - 1), -1, &inv).sub(&one).unwrap())
            .unwrap();
    }
    let neg = tail(0).mul(&a.sub(&b).unwrap()).unwrap();
    let split = one.add(&nonneg).unwrap().add(&neg).unwrap();

    let closed = tail(0).mul(&q_product(case, -r, -1, &inv)).unwrap();
    QBinomialForms {
        unsplit,
        split,
        closed,
    }
}

/// Largest discrepancy of the three resummed forms against the direct side.
pub fn qbinomial_check(case: &SymProdCase) -> Rational {
    let direct = direct_side(case);
    let f = qbinomial_forms(case);
    [&f.unsplit, &f.split, &f.closed]
        .into_iter()
        .map(|x| direct.max_abs_difference(x).unwrap())
        .max()
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn h1_examples() {
        let h = h1_closed(2, 6).at_identity();
        let c: Vec<Rational> = h.scalar_coeffs();
        assert_eq!(c, [1, 0, 3, 0, 5, 0, 7].map(rat).to_vec());
        assert_eq!(hk_direct(2, 1, 10), h1_closed(2, 10));
        assert_eq!(hk_direct(3, 0, 5), TruncatedSeries::one(group(), 5));
    }

    #[test]
    fn pe_identity_small() {
        let case = SymProdCase::new(1, 8, 3).unwrap();
        assert!(pe_identity_check(&case).unwrap().is_zero());
        assert!(!discrepancy_with(&case, &perturbed_h1(1, 8))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn qbinomial_small() {
        for n in 1..=2 {
            let case = SymProdCase::new(n, 6, 3).unwrap();
            assert!(qbinomial_check(&case).is_zero(), "N={n}");
        }
    }
}
