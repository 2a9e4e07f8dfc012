//! The monopole formula: `H(t) = Σ_{λ dominant} t^{2Δ(λ)} P_G(t; λ)`, with
//! optional `π₁` grading `z^{J(λ)}`, background flavor flux, and gluing of
//! flavored pieces along a common flavor group.
//!
//! Termination rests on homogeneity: on the dominant cone `2Δ(λ) ≥ m₁‖λ‖∞`
//! with `m₁` the exact slope from [`min_slope`], and a background flux lowers
//! `2Δ` by at most `c_F = ½Σ|⟨w_F, λ_F⟩|`. So every term of degree at most
//! `hi` has `‖λ‖∞ ≤ ⌈(hi + c_F)/m₁⌉`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use thiserror::Error;

use crate::rootdata::{p_from_degrees, RootDatum, RootError};
use crate::series::{FugacityGroup, FugacityPoly, Rational, SeriesError, TruncatedSeries};
use crate::theory::{
    classify, min_slope, GaugeTheory, MatterWeights, TheoryError, Verdict, Weight, CANDIDATE_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonopoleError {
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("Bad, witness λ={}, 2Δ={two_delta}", fmt_coweight(.witness))]
    Bad { witness: Vec<i64>, two_delta: i64 },
    #[error("negative exponent t^{two_delta} at λ={}", fmt_coweight(.lambda))]
    NegativeExponent { lambda: Vec<i64>, two_delta: i64 },
    #[error("enumeration bound failed: λ={} on the outer shell has 2Δ={two_delta}", fmt_coweight(.lambda))]
    ShellCheck { lambda: Vec<i64>, two_delta: i64 },
    #[error("flavor coweight {0:?} is not dominant for the flavor group")]
    FlavorNotDominant(Vec<i64>),
    #[error("glued theories must share one flavor group")]
    FlavorMismatch,
    #[error("glued theory is Bad (witness {}), the gluing sum diverges", fmt_coweight(.0))]
    DivergentGlue(Vec<i64>),
}

/// `1` for rank one, `(1,0,-2)` otherwise.
pub fn fmt_coweight(l: &[i64]) -> String {
    if l.len() == 1 {
        l[0].to_string()
    } else {
        let parts: Vec<String> = l.iter().map(i64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// Which extra gradings to keep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Refine {
    /// Grade by `J(λ) ∈ π₁(G)`.
    pub pi1: bool,
    /// Background flavor coweight; zero when absent.
    pub lambda_f: Option<Vec<i64>>,
}

/// Box radius for the dominant enumeration, and where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationPlan {
    /// Largest `2Δ` wanted.
    pub cutoff: i64,
    pub lambda_f: Vec<i64>,
    /// Every wanted dominant λ has `‖λ‖∞ ≤ radius`.
    pub radius: i64,
    /// Exact slope `m₁` when the radius was derived from it.
    pub slope: Option<BigRational>,
    /// Whether the shell `radius + 1` is scanned to confirm the bound.
    pub check_shell: bool,
}

fn ceil_div(num: &BigRational) -> i64 {
    i64::try_from(num.ceil().to_integer()).expect("radius fits in i64")
}

impl EnumerationPlan {
    /// Derives the radius from the exact slope; refuses Bad theories.
    pub fn new(
        th: &GaugeTheory,
        cutoff: i64,
        lambda_f: Option<Vec<i64>>,
    ) -> Result<Self, MonopoleError> {
        let lambda_f = lambda_f.unwrap_or_else(|| vec![0; th.flavor_rank()]);
        check_flavor(th, &lambda_f)?;
        let c = classify(th, None)?;
        if c.verdict == Verdict::Bad {
            return Err(MonopoleError::Bad {
                witness: c.witness.unwrap_or_default(),
                two_delta: c.min_nonzero_two_delta.unwrap_or(0),
            });
        }
        let radius = match &c.slope {
            None => 0,
            Some(m1) => {
                let reach = cutoff + th.flavor_shift_bound(&lambda_f);
                ceil_div(&(BigRational::from_integer(reach.max(0).into()) / m1))
            }
        };
        Ok(Self {
            cutoff,
            lambda_f,
            radius,
            slope: c.slope,
            check_shell: true,
        })
    }

    /// Fixed radius, no classification and no shell check.
    pub fn with_radius(
        th: &GaugeTheory,
        cutoff: i64,
        lambda_f: Option<Vec<i64>>,
        radius: i64,
    ) -> Result<Self, MonopoleError> {
        let lambda_f = lambda_f.unwrap_or_else(|| vec![0; th.flavor_rank()]);
        check_flavor(th, &lambda_f)?;
        Ok(Self {
            cutoff,
            lambda_f,
            radius,
            slope: None,
            check_shell: false,
        })
    }
}

fn check_flavor(th: &GaugeTheory, lambda_f: &[i64]) -> Result<(), MonopoleError> {
    if lambda_f.len() != th.flavor_rank() {
        return Err(TheoryError::Length {
            what: "λ_F",
            expected: th.flavor_rank(),
            got: lambda_f.len(),
        }
        .into());
    }
    if let Some(f) = &th.flavor {
        if !f.is_dominant(lambda_f)? {
            return Err(MonopoleError::FlavorNotDominant(lambda_f.to_vec()));
        }
    }
    Ok(())
}

/// Every dominant λ within the plan's radius with `2Δ(λ, λ_F) ≤ cutoff`,
/// in lexicographic order, paired with its `2Δ`.
pub fn enumerate_dominant(
    th: &GaugeTheory,
    plan: &EnumerationPlan,
) -> Result<Vec<(Vec<i64>, i64)>, MonopoleError> {
    let outer = if plan.check_shell {
        plan.radius + 1
    } else {
        plan.radius
    };
    let points = th.gauge.dominant_in_box(outer);
    let lf = Some(plan.lambda_f.as_slice());
    let evaluated: Vec<(Vec<i64>, i64)> = points
        .into_par_iter()
        .map(|l| th.two_delta(&l, lf).map(|d| (l, d)))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (l, d) in evaluated {
        if d > plan.cutoff {
            continue;
        }
        let norm = l.iter().map(|x| x.abs()).max().unwrap_or(0);
        if norm > plan.radius {
            return Err(MonopoleError::ShellCheck {
                lambda: l,
                two_delta: d,
            });
        }
        out.push((l, d));
    }
    Ok(out)
}

/// Series in `t` with exponents in `[lo, hi]`, possibly negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentWindow {
    group: FugacityGroup,
    lo: i64,
    hi: i64,
    coeffs: Vec<FugacityPoly>,
}

impl LaurentWindow {
    pub fn zero(group: FugacityGroup, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window [{lo}, {hi}]");
        Self {
            group,
            lo,
            hi,
            coeffs: vec![FugacityPoly::zero(); (hi - lo + 1) as usize],
        }
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        Self {
            group: s.group().clone(),
            lo: 0,
            hi: s.cutoff() as i64,
            coeffs: s.coeffs().to_vec(),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn coeff(&self, e: i64) -> Option<&FugacityPoly> {
        if e < self.lo || e > self.hi {
            None
        } else {
            Some(&self.coeffs[(e - self.lo) as usize])
        }
    }

    /// Adds `c z^fug t^e`; exponents outside the window are dropped.
    pub fn add_monomial(&mut self, e: i64, fug: &[i64], c: Rational) {
        if e >= self.lo && e <= self.hi {
            let mut f = fug.to_vec();
            self.group.reduce(&mut f);
            let mut p = FugacityPoly::zero();
            p.add_term(f, c);
            self.coeffs[(e - self.lo) as usize].add_assign(&p);
        }
    }

    pub fn add_assign(&mut self, other: &LaurentWindow) {
        assert!(self.group == other.group && self.lo == other.lo && self.hi == other.hi);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign(b);
        }
    }

    /// Product known exactly on `[lo₁ + lo₂, hi]`; both factors must reach
    /// far enough for that.
    pub fn mul(&self, other: &LaurentWindow, hi: i64) -> LaurentWindow {
        assert_eq!(self.group, other.group);
        let lo = self.lo + other.lo;
        assert!(
            self.hi >= hi - other.lo && other.hi >= hi - self.lo,
            "factor windows too short"
        );
        let mut out = LaurentWindow::zero(self.group.clone(), lo, hi.max(lo));
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.lo + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ea + other.lo + j as i64;
                if e > hi {
                    break;
                }
                if !b.is_zero() {
                    let prod = a.mul(b, &self.group);
                    out.coeffs[(e - lo) as usize].add_assign(&prod);
                }
            }
        }
        out
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentWindow {
        LaurentWindow {
            group: self.group.clone(),
            lo: self.lo + k,
            hi: self.hi + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Converts to a series truncated at `cutoff`, insisting that nothing
    /// sits at a negative exponent.
    pub fn into_series(self, cutoff: usize) -> Result<TruncatedSeries, MonopoleError> {
        let mut out = TruncatedSeries::zero(self.group.clone(), cutoff);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.lo + i as i64;
            if c.is_zero() {
                continue;
            }
            if e < 0 {
                return Err(MonopoleError::NegativeExponent {
                    lambda: Vec::new(),
                    two_delta: e,
                });
            }
            if e as usize <= cutoff {
                for (f, x) in c.terms() {
                    out.add_monomial(e as usize, f, x.clone())?;
                }
            }
        }
        Ok(out)
    }
}

/// Sums `z^{J(λ)} t^{2Δ} P_G(t; λ)` over enumerated terms, as a window
/// `[lo, hi]`.
fn sum_terms(
    th: &GaugeTheory,
    terms: &[(Vec<i64>, i64)],
    lo: i64,
    hi: i64,
    pi1: bool,
) -> Result<LaurentWindow, MonopoleError> {
    let pi = pi1.then(|| th.gauge.pi1());
    let group = pi
        .as_ref()
        .map_or_else(FugacityGroup::trivial, |p| p.group.clone());
    let simple = th.gauge.simple_roots();

    // Numerators grouped by stabilizer type; for dominant λ the stabilizer
    // depends only on which simple roots vanish on λ.
    let mut by_pattern: BTreeMap<Vec<bool>, (Vec<i64>, LaurentWindow)> = BTreeMap::new();
    for (l, d) in terms {
        if *d < lo {
            return Err(MonopoleError::NegativeExponent {
                lambda: l.clone(),
                two_delta: *d,
            });
        }
        let pattern: Vec<bool> = simple
            .iter()
            .map(|a| crate::lattice::dot(a, l) == 0)
            .collect();
        let entry = by_pattern
            .entry(pattern)
            .or_insert_with(|| (l.clone(), LaurentWindow::zero(group.clone(), lo, hi)));
        let fug = pi.as_ref().map_or_else(Vec::new, |p| p.project(l));
        entry
            .1
            .add_monomial(*d, &fug, Rational::from_integer(BigInt::from(1)));
    }
    let mut by_degrees: BTreeMap<Vec<usize>, LaurentWindow> = BTreeMap::new();
    for (_, (rep, num)) in by_pattern {
        let degs = th.gauge.stabilizer_degrees(&rep)?;
        match by_degrees.get_mut(&degs) {
            Some(acc) => acc.add_assign(&num),
            None => {
                by_degrees.insert(degs, num);
            }
        }
    }
    let span = (hi - lo).max(0) as usize;
    let products: Vec<LaurentWindow> = by_degrees
        .into_par_iter()
        .map(|(degs, num)| -> Result<LaurentWindow, MonopoleError> {
            let p = p_from_degrees(&degs, span)?.embed(&group)?;
            Ok(num.mul(&LaurentWindow::from_series(&p), hi))
        })
        .collect::<Result<_, _>>()?;
    let mut total = LaurentWindow::zero(group, lo, hi);
    for p in &products {
        total.add_assign(p);
    }
    Ok(total)
}

/// Monopole-formula series from an explicit plan (used for brute-force
/// comparisons with enlarged radii).
pub fn hilbert_with_plan(
    th: &GaugeTheory,
    plan: &EnumerationPlan,
    pi1: bool,
) -> Result<TruncatedSeries, MonopoleError> {
    let cutoff = usize::try_from(plan.cutoff).expect("cutoff is nonnegative");
    let terms = enumerate_dominant(th, plan)?;
    if let Some((l, d)) = terms.iter().find(|(_, d)| *d < 0) {
        return Err(MonopoleError::NegativeExponent {
            lambda: l.clone(),
            two_delta: *d,
        });
    }
    sum_terms(th, &terms, 0, plan.cutoff, pi1)?.into_series(cutoff)
}

/// The monopole-formula series to `t^cutoff`.
pub fn hilbert(
    th: &GaugeTheory,
    cutoff: usize,
    refine: &Refine,
    radius_override: Option<i64>,
) -> Result<TruncatedSeries, MonopoleError> {
    let plan = match radius_override {
        Some(r) => EnumerationPlan::with_radius(th, cutoff as i64, refine.lambda_f.clone(), r)?,
        None => EnumerationPlan::new(th, cutoff as i64, refine.lambda_f.clone())?,
    };
    hilbert_with_plan(th, &plan, refine.pi1)
}

/// Flavored series at fixed `λ_F` on the window `[lo, hi]`, where
/// `lo = -c_F` bounds every exponent from below.
fn flavored_window(
    th: &GaugeTheory,
    lambda_f: &[i64],
    hi: i64,
    slope: &Option<BigRational>,
) -> Result<LaurentWindow, MonopoleError> {
    let c_f = th.flavor_shift_bound(lambda_f);
    let lo = -c_f;
    let radius = match slope {
        None => 0,
        Some(m1) => ceil_div(&(BigRational::from_integer((hi + c_f).max(0).into()) / m1)),
    };
    let plan = EnumerationPlan {
        cutoff: hi,
        lambda_f: lambda_f.to_vec(),
        radius,
        slope: slope.clone(),
        check_shell: true,
    };
    let terms = enumerate_dominant(th, &plan)?;
    sum_terms(th, &terms, lo, hi.max(lo), false)
}

/// The fiber-product theory: gauge group `∏ G_i x G_F` with the flavor
/// charges of each piece turned into gauge charges under `G_F`.
pub fn fiber_product(theories: &[GaugeTheory]) -> Result<GaugeTheory, MonopoleError> {
    let flavor = shared_flavor(theories)?;
    let mut parts: Vec<RootDatum> = theories.iter().map(|t| t.gauge.clone()).collect();
    parts.push(flavor.clone());
    let gauge = RootDatum::product(&parts)?;
    let total = gauge.rank();
    let fr = flavor.rank();
    let mut all: Vec<(Weight, usize)> = Vec::new();
    let mut offset = 0;
    for t in theories {
        for (w, m) in t.matter.iter() {
            let mut g = vec![0; total];
            g[offset..offset + t.gauge.rank()].copy_from_slice(&w.gauge);
            if fr > 0 {
                g[total - fr..].copy_from_slice(&w.flavor);
            }
            all.push((Weight::new(g, vec![]), m));
        }
        offset += t.gauge.rank();
    }
    let matter = MatterWeights::new(all, total, 0)?;
    let name = theories
        .iter()
        .map(|t| t.name.as_str())
        .collect::<Vec<_>>()
        .join(" ⨝ ");
    Ok(GaugeTheory::new(name, gauge, matter, None)?)
}

fn shared_flavor(theories: &[GaugeTheory]) -> Result<RootDatum, MonopoleError> {
    let first = theories
        .first()
        .map(|t| t.flavor.clone().unwrap_or_else(|| RootDatum::torus(0)))
        .unwrap_or_else(|| RootDatum::torus(0));
    for t in theories {
        let f = t.flavor.clone().unwrap_or_else(|| RootDatum::torus(0));
        if f.rank() != first.rank()
            || f.simple_roots() != first.simple_roots()
            || f.simple_coroots() != first.simple_coroots()
        {
            return Err(MonopoleError::FlavorMismatch);
        }
    }
    Ok(first)
}

/// Series of the theory obtained by gauging the common flavor group:
/// `Σ_{λ_F} t^{-2Σ_{α∈Δ_F⁺}|⟨α,λ_F⟩|} P_{G_F}(t;λ_F) ∏_i H_i(t;λ_F)`.
pub fn glue(theories: &[GaugeTheory], cutoff: usize) -> Result<TruncatedSeries, MonopoleError> {
    let flavor = shared_flavor(theories)?;
    let fp = fiber_product(theories)?;
    let c = classify(&fp, None)?;
    if c.verdict == Verdict::Bad {
        return Err(MonopoleError::DivergentGlue(c.witness.unwrap_or_default()));
    }
    // The fiber-product 2Δ bounds each λ_F term from below by m'·‖λ_F‖∞.
    let radius_f = match &c.slope {
        None => 0,
        Some(m) => i64::try_from(
            (BigRational::from_integer(BigInt::from(cutoff)) / m)
                .floor()
                .to_integer(),
        )
        .expect("radius fits in i64"),
    };
    let slopes: Vec<Option<BigRational>> = theories
        .iter()
        .map(|t| -> Result<_, MonopoleError> {
            match min_slope(t, CANDIDATE_CAP)? {
                Some((m, x)) if !m.is_positive() => {
                    let witness = crate::theory::integer_direction(&x);
                    let two_delta = t.two_delta(&witness, Some(&vec![0; t.flavor_rank()]))?;
                    Err(MonopoleError::Bad { witness, two_delta })
                }
                other => Ok(other.map(|(m, _)| m)),
            }
        })
        .collect::<Result<_, _>>()?;
    let cut = cutoff as i64;
    let lambda_fs = flavor.dominant_in_box(radius_f);
    let terms: Vec<TruncatedSeries> = lambda_fs
        .par_iter()
        .map(|lf| -> Result<TruncatedSeries, MonopoleError> {
            let s: i64 = 2 * flavor
                .positive_roots()
                .iter()
                .map(|a| crate::lattice::dot(a, lf).abs())
                .sum::<i64>();
            let los: Vec<i64> = theories.iter().map(|t| -t.flavor_shift_bound(lf)).collect();
            let lo_sum: i64 = los.iter().sum();
            // Exponents of the product before the shift by -s.
            let hi = cut + s;
            let pf = p_from_degrees(
                &flavor.stabilizer_degrees(lf)?,
                (hi - lo_sum).max(0) as usize,
            )?;
            let mut acc = LaurentWindow::from_series(&pf);
            let mut consumed = 0;
            for (i, t) in theories.iter().enumerate() {
                // Factor i is needed up to hi minus the lower bounds of the others.
                let w = flavored_window(t, lf, hi - lo_sum + los[i], &slopes[i])?;
                consumed += los[i];
                acc = acc.mul(&w, hi - (lo_sum - consumed));
            }
            acc.shift(-s).into_series(cutoff).map_err(|e| match e {
                MonopoleError::NegativeExponent { two_delta, .. } => {
                    MonopoleError::NegativeExponent {
                        lambda: lf.clone(),
                        two_delta,
                    }
                }
                other => other,
            })
        })
        .collect::<Result<_, _>>()?;
    let mut total = TruncatedSeries::zero(FugacityGroup::trivial(), cutoff);
    for t in &terms {
        total.add_assign(t)?;
    }
    Ok(total)
}

impl fmt::Display for LaurentWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!(
                    "({})*t^{}",
                    c.format(&self.group),
                    self.lo + i as i64
                ));
            }
        }
        write!(
            f,
            "{} on [{}, {}]",
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            },
            self.lo,
            self.hi
        )
    }
}

/// Coefficientwise check that every `t`-coefficient at `z = 1` is a
/// nonnegative integer.
pub fn has_nonnegative_integer_coeffs(s: &TruncatedSeries) -> bool {
    s.scalar_coeffs()
        .iter()
        .all(|c| c.is_integer() && !c.is_negative())
}
