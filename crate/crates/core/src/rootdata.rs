//! Root data of connected compact groups.
//!
//! Coweights live in `Y = Z^rank`, weights in `X = Z^rank`, and the pairing is
//! the dot product. The built-in families use these coordinates:
//!
//! * `u(n)`: `Y = Z^n`, roots `e_i - e_j`.
//! * `su(n)`: rank `n-1`. Coweights are written in the simple-coroot basis
//!   (`λ = Σ c_i α_i^∨`), weights in the fundamental-weight basis (Dynkin
//!   labels). The fundamental representation has weights `ω_1`,
//!   `ω_2 - ω_1`, ..., `-ω_{n-1}`.
//! * `sp(n)`: `Y = Z^n`, roots `e_i ± e_j`, `2e_i`; coroots `e_i ± e_j`, `e_i`.
//! * `so(2n+1)`: `Y = Z^n`, roots `e_i ± e_j`, `e_i`; coroots `e_i ± e_j`, `2e_i`.
//! * `so(2n)`: `Y = Z^n`, roots and coroots `e_i ± e_j`.
//! * `torus(r)`: no roots.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::lattice::{dot, hermite_rows, mat_vec, smith};
use crate::series::{FugacityGroup, SeriesError, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("{kind}({n}) is not a valid group")]
    InvalidBuiltin { kind: &'static str, n: usize },
    #[error("coweight has length {got}, rank is {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("coweight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("malformed root datum: {0}")]
    Malformed(String),
    #[error("Cartan matrix component is not of finite type: {0:?}")]
    NotFiniteType(Vec<Vec<i64>>),
    #[error("Weyl orbit exceeds {0} elements")]
    OrbitTooLarge(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Finite Cartan types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n)
            | CartanType::B(n)
            | CartanType::C(n)
            | CartanType::D(n)
            | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    pub fn exponents(self) -> Vec<usize> {
        match self {
            CartanType::A(n) => (1..=n).collect(),
            CartanType::B(n) | CartanType::C(n) => (1..=n).map(|i| 2 * i - 1).collect(),
            CartanType::D(n) => {
                let mut e: Vec<usize> = (1..n).map(|i| 2 * i - 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            CartanType::E(6) => vec![1, 4, 5, 7, 8, 11],
            CartanType::E(7) => vec![1, 5, 7, 9, 11, 13, 17],
            CartanType::E(8) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            CartanType::E(n) => panic!("E{n} is not a finite type"),
            CartanType::F4 => vec![1, 5, 7, 11],
            CartanType::G2 => vec![1, 5],
        }
    }

    /// Cartan matrix `a_ij = ⟨α_i, α_j^∨⟩` in Bourbaki numbering.
    pub fn cartan(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self {
            CartanType::A(_) | CartanType::B(_) | CartanType::C(_) => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            CartanType::D(_) => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            CartanType::E(_) => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::F4 => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            CartanType::G2 => link(0, 1),
        }
        match self {
            CartanType::B(_) => a[n - 1][n - 2] = -2,
            CartanType::C(_) => a[n - 2][n - 1] = -2,
            CartanType::F4 => a[2][1] = -2,
            CartanType::G2 => a[1][0] = -3,
            _ => {}
        }
        a
    }

    fn candidates(n: usize) -> Vec<CartanType> {
        let mut out = vec![CartanType::A(n)];
        if n >= 2 {
            out.push(CartanType::B(n));
        }
        if n >= 3 {
            out.push(CartanType::C(n));
        }
        if n >= 4 {
            out.push(CartanType::D(n));
        }
        if (6..=8).contains(&n) {
            out.push(CartanType::E(n));
        }
        if n == 4 {
            out.push(CartanType::F4);
        }
        if n == 2 {
            out.push(CartanType::G2);
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

fn dynkin_graph(a: &[Vec<i64>]) -> DiGraph<(), i64> {
    let mut g = DiGraph::new();
    let nodes: Vec<_> = (0..a.len()).map(|_| g.add_node(())).collect();
    for i in 0..a.len() {
        for j in 0..a.len() {
            if i != j && a[i][j] != 0 {
                g.add_edge(nodes[i], nodes[j], a[i][j]);
            }
        }
    }
    g
}

/// Splits a Cartan matrix into connected components and names each one.
/// Returns `(type, indices)` per component.
pub fn identify_components(a: &[Vec<i64>]) -> Result<Vec<(CartanType, Vec<usize>)>, RootError> {
    let n = a.len();
    for i in 0..n {
        if a[i].len() != n || a[i][i] != 2 {
            return Err(RootError::NotFiniteType(a.to_vec()));
        }
        for j in 0..n {
            if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                return Err(RootError::NotFiniteType(a.to_vec()));
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| a[i][j]).collect())
            .collect();
        let g = dynkin_graph(&sub);
        let ty = CartanType::candidates(comp.len())
            .into_iter()
            .find(|ty| {
                let h = dynkin_graph(&ty.cartan());
                is_isomorphic_matching(&g, &h, |_, _| true, |x, y| x == y)
            })
            .ok_or_else(|| RootError::NotFiniteType(sub.clone()))?;
        out.push((ty, comp));
    }
    Ok(out)
}

/// Which family a datum came from, for labels and schema round trips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    U(usize),
    Su(usize),
    Sp(usize),
    /// `so(2n+1)`, parameter `n`.
    SoOdd(usize),
    /// `so(2n)`, parameter `n`.
    SoEven(usize),
    Torus(usize),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::U(n) => write!(f, "u({n})"),
            Builtin::Su(n) => write!(f, "su({n})"),
            Builtin::Sp(n) => write!(f, "sp({n})"),
            Builtin::SoOdd(n) => write!(f, "so({})", 2 * n + 1),
            Builtin::SoEven(n) => write!(f, "so({})", 2 * n),
            Builtin::Torus(r) => write!(f, "torus({r})"),
        }
    }
}

/// `π₁` as a fugacity group together with the projection `J: Y -> π₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Data {
    pub group: FugacityGroup,
    /// One row per generator (free rows first, then torsion rows).
    pub projection: Vec<Vec<i64>>,
}

impl Pi1Data {
    pub fn project(&self, lambda: &[i64]) -> Vec<i64> {
        let mut e = mat_vec(&self.projection, lambda);
        self.group.reduce(&mut e);
        e
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    label: String,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    /// Coefficients of each positive root in the simple roots.
    root_coeffs: Vec<Vec<i64>>,
    components: Vec<(CartanType, Vec<usize>)>,
}

impl RootDatum {
    /// Builds a datum from simple roots and coroots, generating the positive
    /// system. Rejects anything whose Cartan matrix is not of finite type.
    pub fn new(
        rank: usize,
        label: impl Into<String>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self, RootError> {
        let s = simple_roots.len();
        if simple_coroots.len() != s {
            return Err(RootError::Malformed(
                "simple roots and coroots differ in number".into(),
            ));
        }
        if simple_roots
            .iter()
            .chain(&simple_coroots)
            .any(|v| v.len() != rank)
        {
            return Err(RootError::Malformed(
                "vector length differs from rank".into(),
            ));
        }
        let cartan: Vec<Vec<i64>> = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| dot(&simple_roots[i], &simple_coroots[j]))
                    .collect()
            })
            .collect();
        let components = identify_components(&cartan)?;

        // Every positive root is s_i of a lower positive root, so closing the
        // simple system under simple reflections yields all of them.
        let mut root_coeffs: Vec<Vec<i64>> = Vec::new();
        let mut positive_roots = Vec::new();
        let mut positive_coroots = Vec::new();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..s {
            let mut c = vec![0; s];
            c[i] = 1;
            index.insert(c.clone(), root_coeffs.len());
            root_coeffs.push(c);
            positive_roots.push(simple_roots[i].clone());
            positive_coroots.push(simple_coroots[i].clone());
            queue.push_back(i);
        }
        while let Some(k) = queue.pop_front() {
            for i in 0..s {
                let pair = dot(&positive_roots[k], &simple_coroots[i]);
                if pair == 0 || root_coeffs[k] == unit(s, i) {
                    continue;
                }
                let mut c = root_coeffs[k].clone();
                c[i] -= pair;
                if c.iter().any(|&x| x < 0) || index.contains_key(&c) {
                    continue;
                }
                let root: Vec<i64> = positive_roots[k]
                    .iter()
                    .zip(&simple_roots[i])
                    .map(|(b, a)| b - pair * a)
                    .collect();
                let copair = dot(&simple_roots[i], &positive_coroots[k]);
                let coroot: Vec<i64> = positive_coroots[k]
                    .iter()
                    .zip(&simple_coroots[i])
                    .map(|(b, a)| b - copair * a)
                    .collect();
                index.insert(c.clone(), root_coeffs.len());
                root_coeffs.push(c);
                positive_roots.push(root);
                positive_coroots.push(coroot);
                queue.push_back(root_coeffs.len() - 1);
            }
        }
        Ok(Self {
            rank,
            label: label.into(),
            simple_roots,
            simple_coroots,
            positive_roots,
            positive_coroots,
            root_coeffs,
            components,
        })
    }

    pub fn builtin(kind: Builtin) -> Result<Self, RootError> {
        let label = kind.to_string();
        let e = |n: usize, i: usize| unit(n, i);
        let diff = |n: usize, i: usize, j: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = -1;
            v
        };
        match kind {
            Builtin::U(n) => {
                if n == 0 {
                    return Err(RootError::InvalidBuiltin { kind: "u", n });
                }
                let simple: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                Self::new(n, label, simple.clone(), simple)
            }
            Builtin::Su(n) => {
                if n == 0 {
                    return Err(RootError::InvalidBuiltin { kind: "su", n });
                }
                let r = n - 1;
                let cartan = CartanType::A(r).cartan();
                let coroots: Vec<_> = (0..r).map(|i| e(r, i)).collect();
                Self::new(r, label, cartan, coroots)
            }
            Builtin::Sp(n) => {
                if n == 0 {
                    return Err(RootError::InvalidBuiltin { kind: "sp", n });
                }
                let mut roots: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                let mut coroots = roots.clone();
                let mut last = vec![0; n];
                last[n - 1] = 2;
                roots.push(last);
                coroots.push(e(n, n - 1));
                Self::new(n, label, roots, coroots)
            }
            Builtin::SoOdd(n) => {
                if n == 0 {
                    return Err(RootError::InvalidBuiltin { kind: "so_odd", n });
                }
                let mut roots: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                let mut coroots = roots.clone();
                let mut last = vec![0; n];
                last[n - 1] = 2;
                roots.push(e(n, n - 1));
                coroots.push(last);
                Self::new(n, label, roots, coroots)
            }
            Builtin::SoEven(n) => {
                if n == 0 {
                    return Err(RootError::InvalidBuiltin { kind: "so_even", n });
                }
                let mut roots: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                if n >= 2 {
                    let mut last = vec![0; n];
                    last[n - 2] = 1;
                    last[n - 1] = 1;
                    roots.push(last);
                }
                Self::new(n, label, roots.clone(), roots)
            }
            Builtin::Torus(r) => Self::new(r, label, Vec::new(), Vec::new()),
        }
    }

    pub fn torus(r: usize) -> Self {
        Self::builtin(Builtin::Torus(r)).expect("a torus is always valid")
    }

    /// Direct product; coordinates are concatenated in order.
    pub fn product(parts: &[RootDatum]) -> Result<Self, RootError> {
        let rank: usize = parts.iter().map(|p| p.rank).sum();
        let mut simple = Vec::new();
        let mut co = Vec::new();
        let mut offset = 0;
        for p in parts {
            let pad = |v: &Vec<i64>| {
                let mut w = vec![0; rank];
                w[offset..offset + p.rank].copy_from_slice(v);
                w
            };
            simple.extend(p.simple_roots.iter().map(pad));
            co.extend(p.simple_coroots.iter().map(pad));
            offset += p.rank;
        }
        let label = if parts.is_empty() {
            "trivial".to_string()
        } else {
            parts
                .iter()
                .map(|p| p.label.as_str())
                .collect::<Vec<_>>()
                .join(" x ")
        };
        Self::new(rank, label, simple, co)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// Coefficients of each positive root in the simple roots.
    pub fn root_coefficients(&self) -> &[Vec<i64>] {
        &self.root_coeffs
    }

    pub fn components(&self) -> &[(CartanType, Vec<usize>)] {
        &self.components
    }

    /// Real dimension of the compact group.
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn check_rank(&self, lambda: &[i64]) -> Result<(), RootError> {
        if lambda.len() != self.rank {
            return Err(RootError::RankMismatch {
                expected: self.rank,
                got: lambda.len(),
            });
        }
        Ok(())
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> Result<bool, RootError> {
        self.check_rank(lambda)?;
        Ok(self.simple_roots.iter().all(|a| dot(a, lambda) >= 0))
    }

    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let p = dot(&self.simple_roots[i], lambda);
        lambda
            .iter()
            .zip(&self.simple_coroots[i])
            .map(|(x, c)| x - p * c)
            .collect()
    }

    pub fn to_dominant(&self, lambda: &[i64]) -> Result<Vec<i64>, RootError> {
        self.check_rank(lambda)?;
        let mut l = lambda.to_vec();
        while let Some(i) =
            (0..self.simple_roots.len()).find(|&i| dot(&self.simple_roots[i], &l) < 0)
        {
            l = self.reflect(i, &l);
        }
        Ok(l)
    }

    /// Full Weyl orbit, sorted, refusing to grow beyond `limit` elements.
    pub fn weyl_orbit(&self, lambda: &[i64], limit: usize) -> Result<Vec<Vec<i64>>, RootError> {
        self.check_rank(lambda)?;
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.to_vec());
        queue.push_back(lambda.to_vec());
        while let Some(l) = queue.pop_front() {
            for i in 0..self.simple_roots.len() {
                let m = self.reflect(i, &l);
                if !seen.contains(&m) {
                    if seen.len() >= limit {
                        return Err(RootError::OrbitTooLarge(limit));
                    }
                    seen.insert(m.clone());
                    queue.push_back(m);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Calls `f` on every dominant coweight with `‖λ‖∞ ≤ radius`, in
    /// lexicographic order.
    pub fn for_each_dominant_in_box(&self, radius: i64, mut f: impl FnMut(&[i64])) {
        let r = self.rank;
        let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); r];
        for (i, a) in self.simple_roots.iter().enumerate() {
            if let Some(last) = a.iter().rposition(|&x| x != 0) {
                check_at[last].push(i);
            }
        }
        let mut l = vec![0i64; r];
        self.fill(0, radius, &check_at, &mut l, &mut f);
    }

    fn fill(
        &self,
        k: usize,
        radius: i64,
        check_at: &[Vec<usize>],
        l: &mut Vec<i64>,
        f: &mut impl FnMut(&[i64]),
    ) {
        if k == l.len() {
            f(l);
            return;
        }
        for x in -radius..=radius {
            l[k] = x;
            if check_at[k]
                .iter()
                .all(|&i| dot(&self.simple_roots[i][..=k], &l[..=k]) >= 0)
            {
                self.fill(k + 1, radius, check_at, l, f);
            }
        }
        l[k] = 0;
    }

    pub fn dominant_in_box(&self, radius: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.for_each_dominant_in_box(radius, |l| out.push(l.to_vec()));
        out
    }

    /// Invariant degrees `d_i` of the centralizer of a dominant coweight:
    /// exponent + 1 on each simple factor of the Levi, and 1 for each
    /// remaining central direction.
    pub fn stabilizer_degrees(&self, lambda: &[i64]) -> Result<Vec<usize>, RootError> {
        if !self.is_dominant(lambda)? {
            return Err(RootError::NotDominant(lambda.to_vec()));
        }
        let levi: Vec<usize> = (0..self.positive_roots.len())
            .filter(|&k| dot(&self.positive_roots[k], lambda) == 0)
            .collect();
        let sums: BTreeSet<Vec<i64>> = levi
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| {
                levi[a..].iter().map(move |&j| {
                    self.root_coeffs[i]
                        .iter()
                        .zip(&self.root_coeffs[j])
                        .map(|(x, y)| x + y)
                        .collect::<Vec<i64>>()
                })
            })
            .collect();
        let simple: Vec<usize> = levi
            .iter()
            .copied()
            .filter(|&k| !sums.contains(&self.root_coeffs[k]))
            .collect();
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|&i| {
                simple
                    .iter()
                    .map(|&j| dot(&self.positive_roots[i], &self.positive_coroots[j]))
                    .collect()
            })
            .collect();
        let comps = identify_components(&cartan)?;
        let mut degrees: Vec<usize> = Vec::with_capacity(self.rank);
        for (ty, _) in &comps {
            degrees.extend(ty.exponents().into_iter().map(|e| e + 1));
        }
        degrees.resize(self.rank, 1);
        degrees.sort_unstable();
        Ok(degrees)
    }

    /// `∏ 1/(1 - t^{2 d_i})` over the stabilizer degrees.
    pub fn p_factor(&self, lambda: &[i64], cutoff: usize) -> Result<TruncatedSeries, RootError> {
        p_from_degrees(&self.stabilizer_degrees(lambda)?, cutoff)
    }

    /// `π₁ = Y / (coroot lattice)` via the Smith form of the simple-coroot
    /// matrix. The free coordinates are put in row Hermite form so that, for
    /// example, `u(n)` projects by `Σ λ_i`.
    pub fn pi1(&self) -> Pi1Data {
        let r = self.rank;
        let s = self.simple_coroots.len();
        let cols: Vec<Vec<i64>> = (0..r)
            .map(|i| self.simple_coroots.iter().map(|c| c[i]).collect())
            .collect();
        let snf = smith(&cols, s);
        let free_rows: Vec<Vec<i64>> = snf.u[snf.factors.len()..].to_vec();
        let mut projection = hermite_rows(&free_rows, r);
        let mut torsion = Vec::new();
        for (i, &d) in snf.factors.iter().enumerate() {
            if d > 1 {
                projection.push(snf.u[i].iter().map(|x| x.rem_euclid(d)).collect());
                torsion.push(d);
            }
        }
        let group =
            FugacityGroup::new(free_rows.len(), torsion).expect("invariant factors exceed 1");
        Pi1Data { group, projection }
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `∏ 1/(1 - t^{2 d})` for the given degrees.
pub fn p_from_degrees(degrees: &[usize], cutoff: usize) -> Result<TruncatedSeries, RootError> {
    let mut acc = TruncatedSeries::one(FugacityGroup::trivial(), cutoff);
    for &d in degrees {
        acc = acc.mul(&TruncatedSeries::geom(2 * d, cutoff)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(b: Builtin) -> RootDatum {
        RootDatum::builtin(b).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for n in 1..6 {
            assert_eq!(rd(Builtin::U(n)).positive_roots().len(), n * (n - 1) / 2);
            assert_eq!(rd(Builtin::Sp(n)).positive_roots().len(), n * n);
            assert_eq!(rd(Builtin::SoOdd(n)).positive_roots().len(), n * n);
            assert_eq!(rd(Builtin::SoEven(n)).positive_roots().len(), n * (n - 1));
        }
        assert_eq!(rd(Builtin::U(2)).positive_roots(), &[vec![1, -1]]);
        assert!(rd(Builtin::Torus(3)).positive_roots().is_empty());
        let p = RootDatum::product(&[rd(Builtin::U(1)), rd(Builtin::U(2))]).unwrap();
        assert_eq!(p.rank(), 3);
        assert_eq!(p.positive_roots(), &[vec![0, 1, -1]]);
    }

    #[test]
    fn dominance() {
        assert!(rd(Builtin::U(3)).is_dominant(&[3, 1, 1]).unwrap());
        assert_eq!(rd(Builtin::U(2)).to_dominant(&[1, 3]).unwrap(), vec![3, 1]);
        assert_eq!(
            rd(Builtin::Sp(2)).to_dominant(&[-1, 2]).unwrap(),
            vec![2, 1]
        );
        assert!(rd(Builtin::U(2)).is_dominant(&[1]).is_err());
    }

    #[test]
    fn stabilizers() {
        assert_eq!(
            rd(Builtin::U(3)).stabilizer_degrees(&[2, 1, 1]).unwrap(),
            vec![1, 1, 2]
        );
        assert_eq!(rd(Builtin::U(1)).stabilizer_degrees(&[7]).unwrap(), vec![1]);
        assert_eq!(
            rd(Builtin::Sp(2)).stabilizer_degrees(&[0, 0]).unwrap(),
            vec![2, 4]
        );
        assert_eq!(
            rd(Builtin::SoEven(4)).stabilizer_degrees(&[0; 4]).unwrap(),
            vec![2, 4, 4, 6]
        );
        assert!(matches!(
            rd(Builtin::U(2)).stabilizer_degrees(&[0, 1]),
            Err(RootError::NotDominant(_))
        ));
    }

    #[test]
    fn p_factors() {
        let p = rd(Builtin::U(2)).p_factor(&[0, 0], 8).unwrap();
        let expect = TruncatedSeries::geom(2, 8)
            .unwrap()
            .mul(&TruncatedSeries::geom(4, 8).unwrap())
            .unwrap();
        assert_eq!(p, expect);
        let q = rd(Builtin::Torus(2)).p_factor(&[5, -3], 6).unwrap();
        assert_eq!(
            q.integer_coeffs().unwrap(),
            [1, 0, 2, 0, 3, 0, 4].map(Into::into).to_vec()
        );
    }

    #[test]
    fn orbits() {
        let u2 = rd(Builtin::U(2));
        assert_eq!(
            u2.weyl_orbit(&[1, 0], 100).unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(u2.weyl_orbit(&[1, 1], 100).unwrap(), vec![vec![1, 1]]);
        let sp2 = rd(Builtin::Sp(2));
        assert_eq!(sp2.weyl_orbit(&[1, 0], 100).unwrap().len(), 4);
        assert!(matches!(
            rd(Builtin::U(5)).weyl_orbit(&[4, 3, 2, 1, 0], 10),
            Err(RootError::OrbitTooLarge(10))
        ));
    }

    #[test]
    fn fundamental_groups() {
        let u3 = rd(Builtin::U(3)).pi1();
        assert_eq!(u3.group, FugacityGroup::free(1));
        assert_eq!(u3.project(&[2, -1, 4]), vec![5]);
        assert!(rd(Builtin::Su(4)).pi1().group.is_trivial());
        let so5 = rd(Builtin::SoOdd(2)).pi1();
        assert_eq!(so5.group, FugacityGroup::new(0, vec![2]).unwrap());
        assert_eq!(so5.project(&[1, 0]), vec![1]);
    }

    #[test]
    fn dominant_box_matches_filter() {
        for b in [
            Builtin::U(3),
            Builtin::Su(3),
            Builtin::Sp(2),
            Builtin::SoOdd(2),
            Builtin::SoEven(3),
        ] {
            let d = rd(b);
            let got = d.dominant_in_box(2);
            let mut want = Vec::new();
            let r = d.rank() as u32;
            for code in 0..5i64.pow(r) {
                let l: Vec<i64> = (0..r)
                    .map(|i| (code / 5i64.pow(r - 1 - i)) % 5 - 2)
                    .collect();
                if d.is_dominant(&l).unwrap() {
                    want.push(l);
                }
            }
            assert_eq!(got, want, "{b}");
        }
    }

    #[test]
    fn rejects_affine_cartan() {
        // affine A1: a_12 = a_21 = -2
        let r = RootDatum::new(
            2,
            "bad",
            vec![vec![2, -2], vec![-2, 2]],
            vec![vec![1, 0], vec![0, 1]],
        );
        assert!(matches!(r, Err(RootError::NotFiniteType(_))));
    }

    #[test]
    fn exceptional_identification() {
        for ty in [
            CartanType::E(6),
            CartanType::E(7),
            CartanType::E(8),
            CartanType::F4,
            CartanType::G2,
        ] {
            let a = ty.cartan();
            let n = a.len();
            let co: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
            let d = RootDatum::new(n, ty.to_string(), a, co).unwrap();
            assert_eq!(d.components()[0].0, ty);
            let degs = d.stabilizer_degrees(&vec![0; n]).unwrap();
            let sum: usize = degs.iter().map(|d| d - 1).sum();
            assert_eq!(sum, d.positive_roots().len(), "{ty}");
        }
    }
}
