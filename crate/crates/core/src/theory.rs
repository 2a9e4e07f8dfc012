//! Gauge theories: a gauge root datum, a quaternionic matter representation
//! given by its complex weights, and an optional flavor root datum.
//!
//! Matter is stored as the full multiset of complex weights, which is closed
//! under negation. The matter part of `2Δ` is then `½ Σ |⟨w, λ⟩ + ⟨w_F, λ_F⟩|`
//! over the whole multiset.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{dot, smith};
use crate::rootdata::{Builtin, RootDatum, RootError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{what} has length {got}, expected {expected}")]
    Length {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("matter is not closed under negation: {0} has no partner")]
    NotNegationClosed(Weight),
    #[error("zero weight appears an odd number of times (half-hypermultiplet)")]
    OddZeroMultiplicity,
    #[error("2Δ is not an integer at λ={0:?}")]
    HalfInteger(Vec<i64>),
    #[error("matter carries flavor charges, a flavor coweight λ_F is required")]
    MissingFlavorFlux,
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("charge matrix is not injective")]
    NotInjective,
    #[error("charge matrix has torsion cokernel (invariant factors {0:?})")]
    TorsionCokernel(Vec<i64>),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("slope computation needs more than {0} candidate vertices; supply a search radius")]
    TooManyCandidates(usize),
}

/// A complex weight of `G x G_F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub gauge: Vec<i64>,
    pub flavor: Vec<i64>,
}

impl Weight {
    pub fn new(gauge: Vec<i64>, flavor: Vec<i64>) -> Self {
        Self { gauge, flavor }
    }

    pub fn neg(&self) -> Self {
        Self {
            gauge: self.gauge.iter().map(|x| -x).collect(),
            flavor: self.flavor.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gauge.iter().chain(&self.flavor).all(|&x| x == 0)
    }

    /// First nonzero entry (gauge, then flavor) is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.gauge
            .iter()
            .chain(&self.flavor)
            .find(|&&x| x != 0)
            .is_some_and(|&x| x > 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.gauge)?;
        if !self.flavor.is_empty() {
            write!(f, "|{:?}", self.flavor)?;
        }
        Ok(())
    }
}

/// Negation-closed multiset of complex weights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatterWeights {
    entries: BTreeMap<Weight, usize>,
}

impl MatterWeights {
    pub fn new(
        entries: impl IntoIterator<Item = (Weight, usize)>,
        gauge_rank: usize,
        flavor_rank: usize,
    ) -> Result<Self, TheoryError> {
        let mut map: BTreeMap<Weight, usize> = BTreeMap::new();
        for (w, m) in entries {
            if w.gauge.len() != gauge_rank {
                return Err(TheoryError::Length {
                    what: "gauge weight",
                    expected: gauge_rank,
                    got: w.gauge.len(),
                });
            }
            if w.flavor.len() != flavor_rank {
                return Err(TheoryError::Length {
                    what: "flavor weight",
                    expected: flavor_rank,
                    got: w.flavor.len(),
                });
            }
            if m > 0 {
                *map.entry(w).or_default() += m;
            }
        }
        for (w, &m) in &map {
            if w.is_zero() {
                if m % 2 == 1 {
                    return Err(TheoryError::OddZeroMultiplicity);
                }
            } else if map.get(&w.neg()) != Some(&m) {
                return Err(TheoryError::NotNegationClosed(w.clone()));
            }
        }
        Ok(Self { entries: map })
    }

    /// Builds the multiset from one weight per hypermultiplet (an ℍ-basis),
    /// adding the negated partner of each.
    pub fn from_hypers(
        hypers: impl IntoIterator<Item = (Weight, usize)>,
        gauge_rank: usize,
        flavor_rank: usize,
    ) -> Result<Self, TheoryError> {
        let mut all = Vec::new();
        for (w, m) in hypers {
            all.push((w.neg(), m));
            all.push((w, m));
        }
        Self::new(all, gauge_rank, flavor_rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, usize)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    /// Number of complex weights counted with multiplicity.
    pub fn len(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_flavor_charges(&self) -> bool {
        self.entries
            .keys()
            .any(|w| w.flavor.iter().any(|&x| x != 0))
    }

    /// One representative per `±` pair: the lexicographically positive one,
    /// and half the multiplicity of the zero weight.
    pub fn hyper_basis(&self) -> Vec<(Weight, usize)> {
        self.entries
            .iter()
            .filter_map(|(w, &m)| {
                if w.is_zero() {
                    Some((w.clone(), m / 2))
                } else if w.is_lex_positive() {
                    Some((w.clone(), m))
                } else {
                    None
                }
            })
            .filter(|(_, m)| *m > 0)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTheory {
    pub name: String,
    pub gauge: RootDatum,
    pub matter: MatterWeights,
    pub flavor: Option<RootDatum>,
}

impl GaugeTheory {
    pub fn new(
        name: impl Into<String>,
        gauge: RootDatum,
        matter: MatterWeights,
        flavor: Option<RootDatum>,
    ) -> Result<Self, TheoryError> {
        let fr = flavor.as_ref().map_or(0, RootDatum::rank);
        for (w, _) in matter.iter() {
            if w.gauge.len() != gauge.rank() || w.flavor.len() != fr {
                return Err(TheoryError::Length {
                    what: "matter weight",
                    expected: gauge.rank() + fr,
                    got: w.gauge.len() + w.flavor.len(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            gauge,
            matter,
            flavor,
        })
    }

    pub fn flavor_rank(&self) -> usize {
        self.flavor.as_ref().map_or(0, RootDatum::rank)
    }

    /// `2Δ(λ)`, with background flux `λ_F` when the matter is flavor-charged.
    pub fn two_delta(&self, lambda: &[i64], lambda_f: Option<&[i64]>) -> Result<i64, TheoryError> {
        self.gauge.check_rank(lambda)?;
        let lf = match lambda_f {
            Some(lf) => {
                if lf.len() != self.flavor_rank() {
                    return Err(TheoryError::Length {
                        what: "λ_F",
                        expected: self.flavor_rank(),
                        got: lf.len(),
                    });
                }
                Some(lf)
            }
            None if self.matter.has_flavor_charges() => return Err(TheoryError::MissingFlavorFlux),
            None => None,
        };
        let vector: i64 = self
            .gauge
            .positive_roots()
            .iter()
            .map(|a| dot(a, lambda).abs())
            .sum();
        let mut matter = 0i64;
        for (w, m) in self.matter.iter() {
            let shift = lf.map_or(0, |lf| dot(&w.flavor, lf));
            matter += m as i64 * (dot(&w.gauge, lambda) + shift).abs();
        }
        if matter % 2 != 0 {
            return Err(TheoryError::HalfInteger(lambda.to_vec()));
        }
        Ok(matter / 2 - 2 * vector)
    }

    /// `½ Σ |⟨w_F, λ_F⟩|`: how far a background flux can lower `2Δ`.
    pub fn flavor_shift_bound(&self, lambda_f: &[i64]) -> i64 {
        let s: i64 = self
            .matter
            .iter()
            .map(|(w, m)| m as i64 * dot(&w.flavor, lambda_f).abs())
            .sum();
        (s + 1) / 2
    }

    /// Quaternionic dimension of the matter representation.
    pub fn matter_quaternionic_dim(&self) -> usize {
        self.matter.len() / 2
    }
}

/// Directed graph with loops allowed; edges are `(tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn jordan() -> Self {
        Self {
            vertices: 1,
            edges: vec![(0, 0)],
        }
    }

    /// Linear `A_n` quiver `0 -> 1 -> ... -> n-1`.
    pub fn linear(n: usize) -> Self {
        Self {
            vertices: n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    /// Cyclic quiver on `n` vertices (affine `A_{n-1}`); one loop for `n = 1`.
    pub fn cycle(n: usize) -> Self {
        Self {
            vertices: n,
            edges: (0..n).map(|i| (i, (i + 1) % n)).collect(),
        }
    }

    fn validate(&self, v: &[usize], w: &[usize]) -> Result<(), TheoryError> {
        if v.len() != self.vertices || w.len() != self.vertices {
            return Err(TheoryError::MalformedQuiver(format!(
                "{} vertices but {} gauge and {} framing dimensions",
                self.vertices,
                v.len(),
                w.len()
            )));
        }
        if let Some(&(a, b)) = self
            .edges
            .iter()
            .find(|(a, b)| *a >= self.vertices || *b >= self.vertices)
        {
            return Err(TheoryError::MalformedQuiver(format!(
                "edge ({a},{b}) leaves the vertex set"
            )));
        }
        Ok(())
    }
}

/// Cotangent-type quiver theory with gauge group `∏ U(v_i)` (vertices with
/// `v_i = 0` drop out). With `flavor`, the framing carries `∏ U(w_i)` flavor
/// charges.
pub fn build_quiver(
    q: &Quiver,
    v: &[usize],
    w: &[usize],
    flavor: bool,
) -> Result<GaugeTheory, TheoryError> {
    q.validate(v, w)?;
    let mut offsets = Vec::with_capacity(q.vertices);
    let mut parts = Vec::new();
    let mut r = 0;
    for &vi in v {
        offsets.push(r);
        if vi > 0 {
            parts.push(RootDatum::builtin(Builtin::U(vi))?);
        }
        r += vi;
    }
    let mut foffsets = Vec::with_capacity(q.vertices);
    let mut fparts = Vec::new();
    let mut fr = 0;
    for &wi in w {
        foffsets.push(fr);
        if wi > 0 {
            fparts.push(RootDatum::builtin(Builtin::U(wi))?);
        }
        fr += wi;
    }
    let flavor_rank = if flavor { fr } else { 0 };

    let mut hypers: Vec<(Weight, usize)> = Vec::new();
    for &(tail, head) in &q.edges {
        for p in 0..v[head] {
            for s in 0..v[tail] {
                let mut g = vec![0; r];
                g[offsets[head] + p] += 1;
                g[offsets[tail] + s] -= 1;
                hypers.push((Weight::new(g, vec![0; flavor_rank]), 1));
            }
        }
    }
    for i in 0..q.vertices {
        for p in 0..v[i] {
            let mut g = vec![0; r];
            g[offsets[i] + p] = 1;
            if flavor {
                for s in 0..w[i] {
                    let mut f = vec![0; flavor_rank];
                    f[foffsets[i] + s] = -1;
                    hypers.push((Weight::new(g.clone(), f), 1));
                }
            } else if w[i] > 0 {
                hypers.push((Weight::new(g, Vec::new()), w[i]));
            }
        }
    }
    let matter = MatterWeights::from_hypers(hypers, r, flavor_rank)?;
    let gauge = RootDatum::product(&parts)?;
    let fl = if flavor {
        Some(RootDatum::product(&fparts)?)
    } else {
        None
    };
    GaugeTheory::new(format!("quiver v={v:?} w={w:?}"), gauge, matter, fl)
}

/// Checks that `α` (rows = hypermultiplets, columns = gauge directions) is
/// injective with free cokernel.
pub fn check_charge_matrix(alpha: &[Vec<i64>], cols: usize) -> Result<(), TheoryError> {
    if let Some(row) = alpha.iter().find(|r| r.len() != cols) {
        return Err(TheoryError::Length {
            what: "charge row",
            expected: cols,
            got: row.len(),
        });
    }
    let snf = smith(alpha, cols);
    if snf.factors.len() < cols {
        return Err(TheoryError::NotInjective);
    }
    if snf.factors.iter().any(|&d| d != 1) {
        return Err(TheoryError::TorsionCokernel(snf.factors));
    }
    Ok(())
}

/// Torus gauge theory with one hypermultiplet per row of `α`. With `flavor`,
/// hypermultiplet `i` also carries charge `e_i` under a rank-`d` flavor torus,
/// so a flavor coweight is a lift `λ̃_F ∈ Z^d`.
pub fn build_abelian(
    alpha: &[Vec<i64>],
    cols: usize,
    flavor: bool,
) -> Result<GaugeTheory, TheoryError> {
    check_charge_matrix(alpha, cols)?;
    let d = alpha.len();
    let fr = if flavor { d } else { 0 };
    let hypers = alpha.iter().enumerate().map(|(i, row)| {
        let mut f = vec![0; fr];
        if flavor {
            f[i] = 1;
        }
        (Weight::new(row.clone(), f), 1)
    });
    let matter = MatterWeights::from_hypers(hypers, cols, fr)?;
    GaugeTheory::new(
        format!("abelian d={d} rank={cols}"),
        RootDatum::torus(cols),
        matter,
        flavor.then(|| RootDatum::torus(d)),
    )
}

/// `Sp(k)` with two copies of `Λ²` of the vector representation and `N`
/// copies of the vector (the `SO(N)` `k`-instanton quiver side).
pub fn build_so_instanton(n: usize, k: usize) -> Result<GaugeTheory, TheoryError> {
    if n < 3 || k < 1 {
        return Err(TheoryError::InvalidParameters(format!(
            "need N >= 3 and k >= 1, got N={n}, k={k}"
        )));
    }
    let e = |i: usize, s: i64| {
        let mut v = vec![0; k];
        v[i] = s;
        v
    };
    let mut all: Vec<(Weight, usize)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for si in [1, -1] {
                for sj in [1, -1] {
                    let mut g = e(i, si);
                    g[j] = sj;
                    all.push((Weight::new(g, vec![]), 2));
                }
            }
        }
        all.push((Weight::new(vec![0; k], vec![]), 2));
        all.push((Weight::new(e(i, 1), vec![]), n));
        all.push((Weight::new(e(i, -1), vec![]), n));
    }
    let matter = MatterWeights::new(all, k, 0)?;
    GaugeTheory::new(
        format!("so({n}) {k}-instanton"),
        RootDatum::builtin(Builtin::Sp(k))?,
        matter,
        None,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Balance {
    pub values: Vec<i64>,
    /// Every balance is at least `-1`.
    pub passes: bool,
}

/// `w_i - Σ_j (2δ_ij - a_ij) v_j`, where `a_ij` counts edges between `i` and
/// `j` in either direction and a loop counts twice.
pub fn quiver_balance(q: &Quiver, v: &[usize], w: &[usize]) -> Result<Balance, TheoryError> {
    q.validate(v, w)?;
    let n = q.vertices;
    let mut a = vec![vec![0i64; n]; n];
    for &(s, t) in &q.edges {
        if s == t {
            a[s][s] += 2;
        } else {
            a[s][t] += 1;
            a[t][s] += 1;
        }
    }
    let values: Vec<i64> = (0..n)
        .map(|i| {
            let c: i64 = (0..n)
                .map(|j| (2 * i64::from(i == j) - a[i][j]) * v[j] as i64)
                .sum();
            w[i] as i64 - c
        })
        .collect();
    let passes = values.iter().all(|&b| b >= -1);
    Ok(Balance { values, passes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Good,
    Ugly,
    Bad,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Good => "Good",
            Verdict::Ugly => "Ugly",
            Verdict::Bad => "Bad",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Minimum of `2Δ` over nonzero coweights (at the witness).
    pub min_nonzero_two_delta: Option<i64>,
    pub witness: Option<Vec<i64>>,
    /// Exact minimum of `2Δ` on dominant directions of unit sup-norm;
    /// `None` for rank 0 and for bounded searches.
    pub slope: Option<BigRational>,
    /// Verdict comes from a finite search box rather than the exact slope.
    pub bounded_search: bool,
}

/// Default cap on vertex-candidate subsets examined by `min_slope`.
pub const CANDIDATE_CAP: usize = 1 << 20;

struct Hyperplane {
    normal: Vec<i64>,
    rhs: i64,
}

fn primitive_lex_positive(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    let sign = if v.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
        -1
    } else {
        1
    };
    Some(v.iter().map(|x| sign * x / g).collect())
}

fn rat_dot(a: &[i64], x: &[BigRational]) -> BigRational {
    a.iter().zip(x).fold(BigRational::zero(), |acc, (&ai, xi)| {
        acc + xi * BigInt::from(ai)
    })
}

/// `2Δ` at a rational point, ignoring flavor charges.
pub fn two_delta_rational(th: &GaugeTheory, x: &[BigRational]) -> BigRational {
    let vector = th
        .gauge
        .positive_roots()
        .iter()
        .fold(BigRational::zero(), |acc, a| acc + rat_dot(a, x).abs());
    let matter = th.matter.iter().fold(BigRational::zero(), |acc, (w, m)| {
        acc + rat_dot(&w.gauge, x).abs() * BigInt::from(m)
    });
    matter / BigInt::from(2) - vector * BigInt::from(2)
}

/// Solves a square system exactly; `None` if singular.
fn solve(rows: &[&Hyperplane], r: usize) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|h| {
            let mut row: Vec<BigRational> = h
                .normal
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            row.push(BigRational::from_integer(h.rhs.into()));
            row
        })
        .collect();
    for c in 0..r {
        let p = (c..r).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..r {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=r {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[r].clone()).collect())
}

/// Whether `v` is independent of the span of `basis` (kept in echelon form
/// as `(pivot, row)` with unit pivots); if so it is appended.
fn extend_basis(basis: &mut Vec<(usize, Vec<BigRational>)>, v: &[i64]) -> bool {
    let mut v: Vec<BigRational> = v
        .iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect();
    for (p, row) in basis.iter() {
        if !v[*p].is_zero() {
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x -= y * &f;
            }
        }
    }
    let Some(p) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let inv = v[p].recip();
    for x in v.iter_mut() {
        *x = &*x * &inv;
    }
    basis.push((p, v));
    true
}

/// Exact minimum of `2Δ` over real dominant `λ` with `‖λ‖∞ = 1`, with a
/// minimizing vertex. `Ok(None)` for rank 0.
///
/// On each region cut out by the matter hyperplanes, the Weyl walls and the
/// cube, `2Δ` is linear, so the minimum sits at a point where `rank`
/// independent constraints are tight and at least one is a cube facet.
pub fn min_slope(
    th: &GaugeTheory,
    cap: usize,
) -> Result<Option<(BigRational, Vec<BigRational>)>, TheoryError> {
    let r = th.gauge.rank();
    if r == 0 {
        return Ok(None);
    }
    let mut planes: Vec<Hyperplane> = Vec::new();
    for j in 0..r {
        for s in [1, -1] {
            let mut n = vec![0; r];
            n[j] = 1;
            planes.push(Hyperplane { normal: n, rhs: s });
        }
    }
    let n_cube = planes.len();
    let mut normals: Vec<Vec<i64>> = th
        .matter
        .iter()
        .filter_map(|(w, _)| primitive_lex_positive(&w.gauge))
        .chain(
            th.gauge
                .simple_roots()
                .iter()
                .filter_map(|a| primitive_lex_positive(a)),
        )
        .collect();
    normals.sort();
    normals.dedup();
    planes.extend(
        normals
            .into_iter()
            .map(|normal| Hyperplane { normal, rhs: 0 }),
    );

    struct Search<'a> {
        th: &'a GaugeTheory,
        planes: &'a [Hyperplane],
        n_cube: usize,
        r: usize,
        cap: usize,
        visited: usize,
        best: Option<(BigRational, Vec<BigRational>)>,
    }

    impl Search<'_> {
        fn dfs(
            &mut self,
            start: usize,
            chosen: &mut Vec<usize>,
            basis: &mut Vec<(usize, Vec<BigRational>)>,
            has_cube: bool,
        ) -> Result<(), TheoryError> {
            if chosen.len() == self.r {
                let rows: Vec<&Hyperplane> = chosen.iter().map(|&i| &self.planes[i]).collect();
                if let Some(x) = solve(&rows, self.r) {
                    self.consider(x);
                }
                return Ok(());
            }
            for idx in start..self.planes.len() {
                if !has_cube && idx >= self.n_cube {
                    break;
                }
                if self.planes.len() - idx < self.r - chosen.len() {
                    break;
                }
                self.visited += 1;
                if self.visited > self.cap {
                    return Err(TheoryError::TooManyCandidates(self.cap));
                }
                let mut next = basis.clone();
                if !extend_basis(&mut next, &self.planes[idx].normal) {
                    continue;
                }
                chosen.push(idx);
                self.dfs(idx + 1, chosen, &mut next, has_cube || idx < self.n_cube)?;
                chosen.pop();
            }
            Ok(())
        }

        fn consider(&mut self, x: Vec<BigRational>) {
            let one = BigRational::one();
            if x.iter().any(|xi| xi.abs() > one) {
                return;
            }
            if self
                .th
                .gauge
                .simple_roots()
                .iter()
                .any(|a| rat_dot(a, &x).is_negative())
            {
                return;
            }
            let f = two_delta_rational(self.th, &x);
            if self.best.as_ref().is_none_or(|(b, _)| f < *b) {
                self.best = Some((f, x));
            }
        }
    }

    let mut s = Search {
        th,
        planes: &planes,
        n_cube,
        r,
        cap,
        visited: 0,
        best: None,
    };
    s.dfs(0, &mut Vec::new(), &mut Vec::new(), false)?;
    Ok(s.best)
}

/// Scales a rational direction to the smallest integer multiple.
pub fn integer_direction(x: &[BigRational]) -> Vec<i64> {
    let l = x.iter().fold(BigInt::one(), |l, xi| l.lcm(xi.denom()));
    x.iter()
        .map(|xi| {
            let v = xi * &l;
            i64::try_from(v.to_integer()).expect("direction fits in i64")
        })
        .collect()
}

/// Minimum of `2Δ` (flavor flux zero) over nonzero dominant lattice points
/// with `‖λ‖∞ ≤ radius`, first minimizer in enumeration order.
fn lattice_min(th: &GaugeTheory, radius: i64) -> Result<Option<(i64, Vec<i64>)>, TheoryError> {
    let zero_f = vec![0; th.flavor_rank()];
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut err = None;
    th.gauge.for_each_dominant_in_box(radius, |l| {
        if err.is_some() || l.iter().all(|&x| x == 0) {
            return;
        }
        match th.two_delta(l, Some(&zero_f)) {
            Ok(v) => {
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, l.to_vec()));
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

fn verdict_of(min: i64) -> Verdict {
    match min {
        m if m > 1 => Verdict::Good,
        1 => Verdict::Ugly,
        _ => Verdict::Bad,
    }
}

/// Good / ugly / bad, from the exact slope when the vertex search fits under
/// `cap`, otherwise from a lattice search of the given radius.
pub fn classify_with_cap(
    th: &GaugeTheory,
    search_radius: Option<i64>,
    cap: usize,
) -> Result<Classification, TheoryError> {
    match min_slope(th, cap) {
        Ok(None) => Ok(Classification {
            verdict: Verdict::Good,
            min_nonzero_two_delta: None,
            witness: None,
            slope: None,
            bounded_search: false,
        }),
        Ok(Some((m1, x))) => {
            if !m1.is_positive() {
                let w = integer_direction(&x);
                let zero_f = vec![0; th.flavor_rank()];
                let v = th.two_delta(&w, Some(&zero_f))?;
                return Ok(Classification {
                    verdict: Verdict::Bad,
                    min_nonzero_two_delta: Some(v),
                    witness: Some(w),
                    slope: Some(m1),
                    bounded_search: false,
                });
            }
            // Grow the box until it holds a nonzero dominant point; nothing
            // with ‖λ‖∞ > best/m₁ can beat `best`.
            let mut radius = 1;
            let mut best = loop {
                if let Some(b) = lattice_min(th, radius)? {
                    break b;
                }
                radius *= 2;
            };
            let reach = (BigRational::from_integer(best.0.into()) / &m1)
                .floor()
                .to_integer();
            let reach = i64::try_from(reach).expect("search radius fits in i64");
            if reach > radius {
                best = lattice_min(th, reach)?.expect("a smaller box already had points");
            }
            Ok(Classification {
                verdict: verdict_of(best.0),
                min_nonzero_two_delta: Some(best.0),
                witness: Some(best.1),
                slope: Some(m1),
                bounded_search: false,
            })
        }
        Err(TheoryError::TooManyCandidates(c)) => {
            let Some(radius) = search_radius else {
                return Err(TheoryError::TooManyCandidates(c));
            };
            let best = lattice_min(th, radius)?;
            Ok(Classification {
                verdict: best.as_ref().map_or(Verdict::Good, |b| verdict_of(b.0)),
                min_nonzero_two_delta: best.as_ref().map(|b| b.0),
                witness: best.map(|b| b.1),
                slope: None,
                bounded_search: true,
            })
        }
        Err(e) => Err(e),
    }
}

pub fn classify(
    th: &GaugeTheory,
    search_radius: Option<i64>,
) -> Result<Classification, TheoryError> {
    classify_with_cap(th, search_radius, CANDIDATE_CAP)
}

/// Convenience: gauge datum with matter given as hypermultiplet weights and
/// no flavor group.
pub fn custom_theory(
    name: &str,
    gauge: RootDatum,
    hypers: Vec<(Vec<i64>, usize)>,
) -> Result<GaugeTheory, TheoryError> {
    let r = gauge.rank();
    let matter = MatterWeights::from_hypers(
        hypers.into_iter().map(|(g, m)| (Weight::new(g, vec![]), m)),
        r,
        0,
    )?;
    GaugeTheory::new(name, gauge, matter, None)
}

/// `U(1)` with `n` hypermultiplets of charge 1.
pub fn sqed(n: usize) -> GaugeTheory {
    custom_theory(
        &format!("U(1) with {n} flavors"),
        RootDatum::builtin(Builtin::U(1)).unwrap(),
        vec![(vec![1], n)],
    )
    .expect("sqed is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_delta_examples() {
        let th = sqed(1);
        for m in -4..=4 {
            assert_eq!(th.two_delta(&[m], None).unwrap(), m.abs());
        }
        let th = sqed(5);
        assert_eq!(th.two_delta(&[-3], None).unwrap(), 15);
        let su2 = GaugeTheory::new(
            "pure",
            RootDatum::builtin(Builtin::Su(2)).unwrap(),
            MatterWeights::default(),
            None,
        )
        .unwrap();
        for a in 0..5 {
            assert_eq!(su2.two_delta(&[a], None).unwrap(), -4 * a);
        }
    }

    #[test]
    fn jordan_quiver_delta() {
        let th = build_quiver(&Quiver::jordan(), &[3], &[2], false).unwrap();
        assert_eq!(th.two_delta(&[2, 0, -1], None).unwrap(), 2 * 3);
        let a1 = build_quiver(&Quiver::linear(1), &[1], &[2], false).unwrap();
        assert_eq!(a1.matter, sqed(2).matter);
    }

    #[test]
    fn negation_closure_enforced() {
        let w = Weight::new(vec![1], vec![]);
        assert!(matches!(
            MatterWeights::new([(w, 1)], 1, 0),
            Err(TheoryError::NotNegationClosed(_))
        ));
        let z = Weight::new(vec![0], vec![]);
        assert_eq!(
            MatterWeights::new([(z, 1)], 1, 0),
            Err(TheoryError::OddZeroMultiplicity)
        );
    }

    #[test]
    fn flavor_flux_required() {
        let th = build_abelian(&[vec![1], vec![1]], 1, true).unwrap();
        assert_eq!(
            th.two_delta(&[0], None),
            Err(TheoryError::MissingFlavorFlux)
        );
        assert_eq!(th.two_delta(&[0], Some(&[1, 0])).unwrap(), 1);
        assert_eq!(th.two_delta(&[2], Some(&[0, 0])).unwrap(), 4);
    }

    #[test]
    fn abelian_builder_checks() {
        let th = build_abelian(&vec![vec![1]; 4], 1, false).unwrap();
        assert_eq!(th.two_delta(&[-2], None).unwrap(), 8);
        let id = build_abelian(&[vec![1, 0], vec![0, 1]], 2, false).unwrap();
        assert_eq!(id.two_delta(&[3, -1], None).unwrap(), 4);
        let free = build_abelian(&[vec![1], vec![0]], 1, false).unwrap();
        assert_eq!(free.two_delta(&[5], None).unwrap(), 5);
        assert_eq!(
            build_abelian(&[vec![0]], 1, false),
            Err(TheoryError::NotInjective)
        );
        assert_eq!(
            build_abelian(&[vec![2]], 1, false),
            Err(TheoryError::TorsionCokernel(vec![2]))
        );
    }

    #[test]
    fn so_instanton_counts() {
        let th = build_so_instanton(3, 1).unwrap();
        assert_eq!(th.matter.len(), 8);
        assert_eq!(th.matter_quaternionic_dim() - th.gauge.dim(), 1);
        let th = build_so_instanton(4, 2).unwrap();
        assert_eq!(th.matter.len(), 28);
        assert_eq!(th.matter_quaternionic_dim() - th.gauge.dim(), 4);
        assert!(build_so_instanton(2, 1).is_err());
    }

    #[test]
    fn balances() {
        let b = quiver_balance(&Quiver::jordan(), &[4], &[3]).unwrap();
        assert_eq!(b.values, vec![3]);
        let b = quiver_balance(&Quiver::linear(2), &[1, 1], &[2, 0]).unwrap();
        assert_eq!(
            b,
            Balance {
                values: vec![1, -1],
                passes: true
            }
        );
        let b = quiver_balance(&Quiver::linear(1), &[2], &[1]).unwrap();
        assert_eq!(
            b,
            Balance {
                values: vec![-3],
                passes: false
            }
        );
    }

    #[test]
    fn classification_examples() {
        let c = classify(&sqed(1), None).unwrap();
        assert_eq!(
            (c.verdict, c.min_nonzero_two_delta),
            (Verdict::Ugly, Some(1))
        );
        for n in 2..5 {
            let c = classify(&sqed(n), None).unwrap();
            assert_eq!(
                (c.verdict, c.min_nonzero_two_delta),
                (Verdict::Good, Some(n as i64))
            );
        }
        let su2 = GaugeTheory::new(
            "pure",
            RootDatum::builtin(Builtin::Su(2)).unwrap(),
            MatterWeights::default(),
            None,
        )
        .unwrap();
        let c = classify(&su2, None).unwrap();
        assert_eq!(c.verdict, Verdict::Bad);
        assert_eq!(c.witness, Some(vec![1]));
        assert_eq!(c.min_nonzero_two_delta, Some(-4));
    }

    #[test]
    fn bounded_search_fallback() {
        let th = build_quiver(&Quiver::jordan(), &[2], &[1], false).unwrap();
        assert_eq!(
            classify_with_cap(&th, None, 3),
            Err(TheoryError::TooManyCandidates(3))
        );
        let c = classify_with_cap(&th, Some(3), 3).unwrap();
        assert!(c.bounded_search);
        assert_eq!(c.verdict, Verdict::Ugly);
    }
}
