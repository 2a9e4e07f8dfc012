//! Truncated power series in `t` with coefficients in the rational group
//! algebra of a finitely generated abelian group.
//!
//! The group (`FugacityGroup`) is `Z^a x Z/m_1 x ... x Z/m_b`; an element is
//! an exponent vector whose torsion entries are kept in `[0, m_j)`. Every
//! arithmetic step reduces eagerly, so `z^{m_j}` is literally the identity.
//!
//! A `TruncatedSeries` stores the coefficients of `t^0 ..= t^cutoff`. Binary
//! operations refuse operands with different groups or cutoffs instead of
//! silently truncating to the smaller one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational coefficient.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("fugacity groups differ ({0} vs {1})")]
    GroupMismatch(FugacityGroup, FugacityGroup),
    #[error("cutoffs differ ({0} vs {1})")]
    CutoffMismatch(usize, usize),
    #[error("Λ-orders differ ({0} vs {1})")]
    LambdaOrderMismatch(usize, usize),
    #[error("constant term is not a nonzero rational")]
    NonUnit,
    #[error("geometric step must be positive")]
    ZeroStep,
    #[error("torsion order {0} is below 2")]
    BadTorsion(i64),
    #[error("exponent vector has length {got}, the group needs {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("plethystic exponential needs a vanishing Λ^0 part")]
    ConstantLambdaTerm,
    #[error("only series over the trivial group can be embedded")]
    NotTrivial,
}

/// `Z^free_rank x Z/m_1 x ... x Z/m_b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FugacityGroup {
    free_rank: usize,
    torsion: Vec<i64>,
}

impl FugacityGroup {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self, SeriesError> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(SeriesError::BadTorsion(m));
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion
    }

    /// Length of an exponent vector.
    pub fn len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 0
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.len()]
    }

    /// Brings torsion entries into `[0, m_j)`.
    pub fn reduce(&self, e: &mut [i64]) {
        for (x, &m) in e[self.free_rank..].iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(m);
        }
    }

    pub fn check(&self, e: &[i64]) -> Result<(), SeriesError> {
        if e.len() != self.len() {
            return Err(SeriesError::ExponentLength {
                expected: self.len(),
                got: e.len(),
            });
        }
        Ok(())
    }

    pub fn compose(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut out);
        out
    }

    pub fn power(&self, a: &[i64], d: i64) -> Vec<i64> {
        let mut out: Vec<i64> = a.iter().map(|x| x * d).collect();
        self.reduce(&mut out);
        out
    }

    /// Human-readable monomial, free generators `z1..` and torsion `w1..`.
    pub fn format_monomial(&self, e: &[i64]) -> String {
        let mut parts = Vec::new();
        for (i, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = if i < self.free_rank {
                format!("z{}", i + 1)
            } else {
                format!("w{}", i - self.free_rank + 1)
            };
            if x == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{x}"));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for FugacityGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for m in &self.torsion {
            parts.push(format!("Z/{m}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Finite rational combination of group elements. No zero coefficient is
/// ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FugacityPoly {
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl FugacityPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(group: &FugacityGroup, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(group.identity(), c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[i64]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * z^e`; `e` must already be reduced.
    pub(crate) fn add_term(&mut self, e: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &FugacityPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &FugacityPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }

    pub fn scale(&self, s: &Rational) -> FugacityPoly {
        if s.is_zero() {
            return Self::zero();
        }
        FugacityPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &FugacityPoly, group: &FugacityGroup) -> FugacityPoly {
        let mut out = FugacityPoly::zero();
        self.mul_add_into(other, group, &mut out);
        out
    }

    fn mul_add_into(&self, other: &FugacityPoly, group: &FugacityGroup, out: &mut FugacityPoly) {
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(group.compose(ea, eb), ca * cb);
            }
        }
    }

    /// `z -> z^d` on every generator.
    pub fn power_map(&self, group: &FugacityGroup, d: i64) -> FugacityPoly {
        let mut out = FugacityPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(group.power(e, d), c.clone());
        }
        out
    }

    /// Specialisation at `z = 1`.
    pub fn sum_coefficients(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// The coefficient if this is a pure constant (possibly zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn format(&self, group: &FugacityGroup) -> String {
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let m = group.format_monomial(e);
            if m.is_empty() {
                parts.push(c.to_string());
            } else if c.is_one() {
                parts.push(m);
            } else if *c == -Rational::one() {
                parts.push(format!("-{m}"));
            } else {
                parts.push(format!("{c}*{m}"));
            }
        }
        parts.join(" + ")
    }
}

/// Power series in `t` known exactly up to and including `t^cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    group: FugacityGroup,
    cutoff: usize,
    coeffs: Vec<FugacityPoly>,
}

impl TruncatedSeries {
    pub fn zero(group: FugacityGroup, cutoff: usize) -> Self {
        Self {
            group,
            cutoff,
            coeffs: vec![FugacityPoly::zero(); cutoff + 1],
        }
    }

    pub fn one(group: FugacityGroup, cutoff: usize) -> Self {
        let mut s = Self::zero(group, cutoff);
        s.coeffs[0] = FugacityPoly::constant(&s.group, Rational::one());
        s
    }

    /// `c * z^fug * t^t_exp`; vanishes when `t_exp > cutoff`.
    pub fn monomial(
        group: FugacityGroup,
        cutoff: usize,
        t_exp: usize,
        fug: &[i64],
        c: Rational,
    ) -> Result<Self, SeriesError> {
        group.check(fug)?;
        let mut s = Self::zero(group, cutoff);
        s.add_monomial(t_exp, fug, c)?;
        Ok(s)
    }

    /// Series over the trivial group from plain rational coefficients.
    pub fn from_rationals(cutoff: usize, coeffs: &[Rational]) -> Self {
        let mut s = Self::zero(FugacityGroup::trivial(), cutoff);
        for (e, c) in coeffs.iter().enumerate().take(cutoff + 1) {
            s.coeffs[e].add_term(Vec::new(), c.clone());
        }
        s
    }

    pub fn from_integers(cutoff: usize, coeffs: &[i64]) -> Self {
        let r: Vec<Rational> = coeffs.iter().map(|&c| rat(c)).collect();
        Self::from_rationals(cutoff, &r)
    }

    /// Expansion of `1 / (1 - t^d)`.
    pub fn geom(d: usize, cutoff: usize) -> Result<Self, SeriesError> {
        if d == 0 {
            return Err(SeriesError::ZeroStep);
        }
        let mut s = Self::zero(FugacityGroup::trivial(), cutoff);
        for e in (0..=cutoff).step_by(d) {
            s.coeffs[e].add_term(Vec::new(), Rational::one());
        }
        Ok(s)
    }

    pub fn group(&self) -> &FugacityGroup {
        &self.group
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Coefficient of `t^e`; `None` beyond the cutoff.
    pub fn coeff(&self, e: usize) -> Option<&FugacityPoly> {
        self.coeffs.get(e)
    }

    pub fn coeffs(&self) -> &[FugacityPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FugacityPoly::is_zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add_monomial(
        &mut self,
        t_exp: usize,
        fug: &[i64],
        c: Rational,
    ) -> Result<(), SeriesError> {
        self.group.check(fug)?;
        if t_exp <= self.cutoff {
            let mut e = fug.to_vec();
            self.group.reduce(&mut e);
            self.coeffs[t_exp].add_term(e, c);
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.group != other.group {
            return Err(SeriesError::GroupMismatch(
                self.group.clone(),
                other.group.clone(),
            ));
        }
        if self.cutoff != other.cutoff {
            return Err(SeriesError::CutoffMismatch(self.cutoff, other.cutoff));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<(), SeriesError> {
        self.compatible(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign(b);
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.sub_assign(b);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            group: self.group.clone(),
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Cauchy product truncated at the common cutoff.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let mut out = Self::zero(self.group.clone(), self.cutoff);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.cutoff - i].iter().enumerate() {
                if !b.is_zero() {
                    a.mul_add_into(b, &self.group, &mut out.coeffs[i + j]);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0].as_constant().ok_or(SeriesError::NonUnit)?;
        if c0.is_zero() {
            return Err(SeriesError::NonUnit);
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(self.group.clone(), self.cutoff);
        out.coeffs[0] = FugacityPoly::constant(&self.group, inv0.clone());
        let neg_inv0 = -inv0;
        for n in 1..=self.cutoff {
            let mut acc = FugacityPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !out.coeffs[n - k].is_zero() {
                    self.coeffs[k].mul_add_into(&out.coeffs[n - k], &self.group, &mut acc);
                }
            }
            out.coeffs[n] = acc.scale(&neg_inv0);
        }
        Ok(out)
    }

    /// Multiplication by `c * z^fug * t^t_exp`.
    pub fn mul_monomial(
        &self,
        t_exp: usize,
        fug: &[i64],
        c: &Rational,
    ) -> Result<Self, SeriesError> {
        self.group.check(fug)?;
        let mut out = Self::zero(self.group.clone(), self.cutoff);
        if t_exp > self.cutoff {
            return Ok(out);
        }
        for (e, poly) in self.coeffs[..=self.cutoff - t_exp].iter().enumerate() {
            for (f, x) in poly.terms() {
                out.coeffs[e + t_exp].add_term(self.group.compose(f, fug), x * c);
            }
        }
        Ok(out)
    }

    /// Substitution `t -> t^d, z -> z^d`.
    pub fn adams(&self, d: usize) -> Self {
        assert!(d >= 1, "adams operation needs d >= 1");
        let mut out = Self::zero(self.group.clone(), self.cutoff);
        for e in (0..=self.cutoff / d).filter(|e| !self.coeffs[*e].is_zero()) {
            out.coeffs[e * d] = self.coeffs[e].power_map(&self.group, d as i64);
        }
        out
    }

    /// Keeps `t^0 ..= t^new_cutoff` (`new_cutoff` may not exceed the current one).
    pub fn truncate(&self, new_cutoff: usize) -> Self {
        assert!(
            new_cutoff <= self.cutoff,
            "cannot extend a truncated series"
        );
        Self {
            group: self.group.clone(),
            cutoff: new_cutoff,
            coeffs: self.coeffs[..=new_cutoff].to_vec(),
        }
    }

    /// Re-expresses a trivial-group series inside `group`.
    pub fn embed(&self, group: &FugacityGroup) -> Result<Self, SeriesError> {
        if !self.group.is_trivial() {
            return Err(SeriesError::NotTrivial);
        }
        let mut out = Self::zero(group.clone(), self.cutoff);
        for (e, poly) in self.coeffs.iter().enumerate() {
            if let Some(c) = poly.as_constant() {
                out.coeffs[e].add_term(group.identity(), c);
            }
        }
        Ok(out)
    }

    /// Specialisation at `z = 1` (sum over fugacity coefficients).
    pub fn at_identity(&self) -> Self {
        let rs: Vec<Rational> = self
            .coeffs
            .iter()
            .map(FugacityPoly::sum_coefficients)
            .collect();
        Self::from_rationals(self.cutoff, &rs)
    }

    /// Coefficients at `z = 1`, as rationals.
    pub fn scalar_coeffs(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .map(FugacityPoly::sum_coefficients)
            .collect()
    }

    /// Coefficients at `z = 1` as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.scalar_coeffs()
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Largest absolute coefficient of `self - other`.
    pub fn max_abs_difference(&self, other: &Self) -> Result<Rational, SeriesError> {
        let d = self.sub(other)?;
        Ok(d.coeffs
            .iter()
            .map(FugacityPoly::max_abs_coefficient)
            .max()
            .unwrap_or_else(Rational::zero))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, poly) in self.coeffs.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            let body = poly.format(&self.group);
            let tpow = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            let term = if tpow.is_empty() {
                if poly.len() > 1 {
                    format!("({body})")
                } else {
                    body
                }
            } else if poly.len() > 1 {
                format!("({body})*{tpow}")
            } else if body == "1" {
                tpow
            } else if body == "-1" {
                format!("-{tpow}")
            } else {
                format!("{body}*{tpow}")
            };
            parts.push(term);
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "{} + O(t^{})", parts.join(" + "), self.cutoff + 1)
    }
}

/// Series in an extra counting variable `Λ`: `Σ_k Λ^k f_k(t, z)` truncated at
/// `Λ^order`. Every `f_k` shares one group and one `t`-cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSeries {
    parts: Vec<TruncatedSeries>,
}

impl LambdaSeries {
    pub fn new(parts: Vec<TruncatedSeries>) -> Result<Self, SeriesError> {
        assert!(!parts.is_empty(), "a Λ-series needs at least the Λ^0 part");
        for p in &parts[1..] {
            parts[0].compatible(p)?;
        }
        Ok(Self { parts })
    }

    pub fn zero(group: FugacityGroup, cutoff: usize, order: usize) -> Self {
        Self {
            parts: vec![TruncatedSeries::zero(group, cutoff); order + 1],
        }
    }

    pub fn one(group: FugacityGroup, cutoff: usize, order: usize) -> Self {
        let mut s = Self::zero(group.clone(), cutoff, order);
        s.parts[0] = TruncatedSeries::one(group, cutoff);
        s
    }

    /// `Λ^k * f`.
    pub fn single(f: TruncatedSeries, k: usize, order: usize) -> Self {
        let mut s = Self::zero(f.group().clone(), f.cutoff(), order);
        if k <= order {
            s.parts[k] = f;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn cutoff(&self) -> usize {
        self.parts[0].cutoff()
    }

    pub fn group(&self) -> &FugacityGroup {
        self.parts[0].group()
    }

    pub fn coefficient(&self, k: usize) -> &TruncatedSeries {
        &self.parts[k]
    }

    pub fn parts(&self) -> &[TruncatedSeries] {
        &self.parts
    }

    fn compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::LambdaOrderMismatch(
                self.order(),
                other.order(),
            ));
        }
        self.parts[0].compatible(&other.parts[0])
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(Self { parts })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_, _>>()?;
        Ok(Self { parts })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            parts: self.parts.iter().map(|p| p.scale(s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let n = self.order();
        let mut out = Self::zero(self.group().clone(), self.cutoff(), n);
        for i in 0..=n {
            if self.parts[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !other.parts[j].is_zero() {
                    let prod = self.parts[i].mul(&other.parts[j])?;
                    out.parts[i + j].add_assign(&prod)?;
                }
            }
        }
        Ok(out)
    }

    /// `Λ -> Λ^d, t -> t^d, z -> z^d`.
    pub fn adams(&self, d: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(self.group().clone(), self.cutoff(), n);
        for k in 0..=n / d {
            out.parts[k * d] = self.parts[k].adams(d);
        }
        out
    }

    /// `exp(g)` for `g` without a `Λ^0` part.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.parts[0].is_zero() {
            return Err(SeriesError::ConstantLambdaTerm);
        }
        let n = self.order();
        let mut out = Self::one(self.group().clone(), self.cutoff(), n);
        let mut power = out.clone();
        for m in 1..=n {
            power = power.mul(self)?.scale(&rat(m as i64).recip());
            out = out.add(&power)?;
        }
        Ok(out)
    }

    pub fn max_abs_difference(&self, other: &Self) -> Result<Rational, SeriesError> {
        self.compatible(other)?;
        let mut best = Rational::zero();
        for (a, b) in self.parts.iter().zip(&other.parts) {
            best = best.max(a.max_abs_difference(b)?);
        }
        Ok(best)
    }
}

/// `exp(Σ_{d≥1} ψ_d(f) / d)` where `ψ_d` raises `Λ`, `t` and every fugacity
/// to the `d`-th power.
pub fn plethystic_exp(f: &LambdaSeries) -> Result<LambdaSeries, SeriesError> {
    if !f.coefficient(0).is_zero() {
        return Err(SeriesError::ConstantLambdaTerm);
    }
    let n = f.order();
    let mut g = LambdaSeries::zero(f.group().clone(), f.cutoff(), n);
    for d in 1..=n.max(1) {
        g = g.add(&f.adams(d).scale(&rat(d as i64).recip()))?;
    }
    g.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.integer_coeffs()
            .unwrap()
            .into_iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect()
    }

    #[test]
    fn telescoping_product() {
        let a = TruncatedSeries::from_integers(4, &[1, 1]);
        let b = TruncatedSeries::from_integers(4, &[1, -1]);
        assert_eq!(ints(&a.mul(&b).unwrap()), vec![1, 0, -1, 0, 0]);
    }

    #[test]
    fn one_is_identity() {
        let a = TruncatedSeries::from_integers(5, &[3, -1, 0, 7, 2, 9]);
        let one = TruncatedSeries::one(FugacityGroup::trivial(), 5);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn geometric_times_one_minus_t() {
        // 1/(1-t) expanded by hand to cutoff 6
        let g = TruncatedSeries::from_integers(6, &[1; 7]);
        let d = TruncatedSeries::from_integers(6, &[1, -1]);
        assert_eq!(
            g.mul(&d).unwrap(),
            TruncatedSeries::one(FugacityGroup::trivial(), 6)
        );
        assert_eq!(TruncatedSeries::geom(1, 6).unwrap(), g);
    }

    #[test]
    fn recip_examples() {
        let a = TruncatedSeries::from_integers(5, &[1, 0, -1]);
        assert_eq!(ints(&a.recip().unwrap()), vec![1, 0, 1, 0, 1, 0]);
        let one = TruncatedSeries::one(FugacityGroup::trivial(), 3);
        assert_eq!(one.recip().unwrap(), one);

        let g = FugacityGroup::free(1);
        let mut b = TruncatedSeries::one(g.clone(), 3);
        b.add_monomial(1, &[1], rat(-1)).unwrap();
        let r = b.recip().unwrap();
        for k in 0..=3usize {
            let c = r.coeff(k).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c.coefficient(&[k as i64]), rat(1));
        }
    }

    #[test]
    fn recip_rejects_non_units() {
        let a = TruncatedSeries::from_integers(3, &[0, 1]);
        assert_eq!(a.recip(), Err(SeriesError::NonUnit));
        let g = FugacityGroup::free(1);
        let b = TruncatedSeries::monomial(g, 3, 0, &[1], rat(1)).unwrap();
        assert_eq!(b.recip(), Err(SeriesError::NonUnit));
    }

    #[test]
    fn geom_examples() {
        assert_eq!(
            ints(&TruncatedSeries::geom(1, 3).unwrap()),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            ints(&TruncatedSeries::geom(2, 5).unwrap()),
            vec![1, 0, 1, 0, 1, 0]
        );
        assert_eq!(
            ints(&TruncatedSeries::geom(7, 5).unwrap()),
            vec![1, 0, 0, 0, 0, 0]
        );
        assert_eq!(TruncatedSeries::geom(0, 5), Err(SeriesError::ZeroStep));
    }

    #[test]
    fn mismatches_are_rejected() {
        let a = TruncatedSeries::one(FugacityGroup::trivial(), 3);
        let b = TruncatedSeries::one(FugacityGroup::trivial(), 4);
        assert!(matches!(a.mul(&b), Err(SeriesError::CutoffMismatch(3, 4))));
        let c = TruncatedSeries::one(FugacityGroup::free(1), 3);
        assert!(matches!(a.add(&c), Err(SeriesError::GroupMismatch(..))));
    }

    #[test]
    fn torsion_wraps_exactly() {
        let g = FugacityGroup::new(0, vec![3]).unwrap();
        let s = TruncatedSeries::monomial(g.clone(), 2, 1, &[2], rat(5)).unwrap();
        let z3 = TruncatedSeries::monomial(g.clone(), 2, 0, &[3], rat(1)).unwrap();
        assert_eq!(z3, TruncatedSeries::one(g.clone(), 2));
        assert_eq!(s.mul(&z3).unwrap(), s);
        let s2 = s.mul_monomial(0, &[1], &rat(1)).unwrap();
        assert_eq!(s2.coeff(1).unwrap().coefficient(&[0]), rat(5));
        assert!(FugacityGroup::new(0, vec![1]).is_err());
    }

    #[test]
    fn pe_of_lambda_t_is_geometric() {
        let t = TruncatedSeries::from_integers(6, &[0, 1]);
        let f = LambdaSeries::single(t, 1, 5);
        let pe = plethystic_exp(&f).unwrap();
        for k in 0..=5 {
            let mut expect = vec![0i64; 7];
            expect[k] = 1;
            assert_eq!(ints(pe.coefficient(k)), expect, "Λ^{k}");
        }
    }

    #[test]
    fn pe_of_geometric_gives_sym2() {
        // Sym^2 C[x]: multisets {a <= b} of exponents, graded by a + b.
        let cutoff = 8;
        let mut brute = vec![0i64; cutoff + 1];
        for a in 0..=cutoff {
            for b in a..=cutoff {
                if a + b <= cutoff {
                    brute[a + b] += 1;
                }
            }
        }
        let f = LambdaSeries::single(TruncatedSeries::geom(1, cutoff).unwrap(), 1, 2);
        let pe = plethystic_exp(&f).unwrap();
        assert_eq!(ints(pe.coefficient(2)), brute);
    }

    #[test]
    fn pe_rejects_constant_part() {
        let f = LambdaSeries::one(FugacityGroup::trivial(), 3, 2);
        assert_eq!(plethystic_exp(&f), Err(SeriesError::ConstantLambdaTerm));
    }

    #[test]
    fn display_is_readable() {
        let g = FugacityGroup::free(1);
        let mut s = TruncatedSeries::one(g, 2);
        s.add_monomial(1, &[1], rat(1)).unwrap();
        s.add_monomial(1, &[-1], rat(1)).unwrap();
        s.add_monomial(2, &[0], rat(3)).unwrap();
        assert_eq!(s.to_string(), "1 + (z1^-1 + z1)*t + 3*t^2 + O(t^3)");
    }
}
