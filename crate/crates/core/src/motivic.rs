//! Motivic classes on `P¹`, as rational functions in `s = -L^{1/2}` (so
//! `L = s²`), used to re-derive each monopole-formula term independently.
//!
//! For a bundle of type `λ`, `s^{dim G} / [Aut(𝒫)]` should equal
//! `(-1)^r s^r s^{-2Σ_{α>0}⟨α,λ⟩} P_G(s; λ)`. `[Aut(𝒫)]` is computed two
//! ways: block by block for `GL(k)`, and from the Levi decomposition
//! `Aut(𝒫) = L ⋉ H⁰(𝒫_u)` for any `G`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::dot;
use crate::rootdata::{RootDatum, RootError};
use crate::theory::GaugeTheory;

/// Polynomial in `s` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c s^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        Self(v).trimmed()
    }

    pub fn from_coeffs(c: &[i64]) -> Self {
        Self(c.iter().map(|&x| BigInt::from(x)).collect()).trimmed()
    }

    /// `L^k - 1 = s^{2k} - 1`.
    pub fn l_pow_minus_one(k: usize) -> Self {
        Self::monomial(1, 2 * k).sub(&Self::one())
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        Self(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
        .trimmed()
    }

    pub fn neg(&self) -> IntPoly {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self(out).trimmed()
    }

    pub fn pow(&self, n: usize) -> IntPoly {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    fn scale_div(&self, c: &BigInt) -> IntPoly {
        Self(self.0.iter().map(|x| x / c).collect())
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let p = self.scale_div(&c);
        if p.lead().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// `lead(b)^k · self mod b` for the smallest suitable `k`.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lead();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            let shifted = Self(
                std::iter::repeat_n(BigInt::zero(), dr - db)
                    .chain(b.0.iter().map(|c| c * &lr))
                    .collect(),
            );
            r = Self(r.0.iter().map(|c| c * &lb).collect()).sub(&shifted);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient; panics if `b` does not divide `self`.
    pub fn div_exact(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lead();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.0.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let (c, rem) = r.lead().div_rem(&lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            q[dr - db] = c.clone();
            let shifted = Self(
                std::iter::repeat_n(BigInt::zero(), dr - db)
                    .chain(b.0.iter().map(|x| x * &c))
                    .collect(),
            );
            r = r.sub(&shifted);
        }
        assert!(r.is_zero(), "inexact polynomial division");
        Self(q).trimmed()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mon = match k {
                0 => String::new(),
                1 => "s".into(),
                _ => format!("s^{k}"),
            };
            let term = match (mon.is_empty(), c.is_one(), *c == -BigInt::one()) {
                (true, _, _) => c.to_string(),
                (false, true, _) => mon,
                (false, _, true) => format!("-{mon}"),
                _ => format!("{c}*{mon}"),
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Reduced rational function `num / den` in `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotivicExpr {
    num: IntPoly,
    den: IntPoly,
}

impl MotivicExpr {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self {
                num,
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g);
        let mut d = den.div_exact(&g);
        let c = n.content().gcd(&d.content());
        n = n.scale_div(&c);
        d = d.scale_div(&c);
        if d.lead().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        Self { num: n, den: d }
    }

    pub fn poly(p: IntPoly) -> Self {
        Self::new(p, IntPoly::one())
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        if k >= 0 {
            Self::poly(IntPoly::monomial(1, k as usize))
        } else {
            Self::new(IntPoly::one(), IntPoly::monomial(1, (-k) as usize))
        }
    }

    /// `L^k = s^{2k}`.
    pub fn l_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn mul(&self, o: &MotivicExpr) -> MotivicExpr {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &MotivicExpr) -> MotivicExpr {
        assert!(!o.num.is_zero(), "division by zero");
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn neg(&self) -> MotivicExpr {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Equality by cross-multiplication.
    pub fn same_as(&self, o: &MotivicExpr) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Display for MotivicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den == IntPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

/// `[G_C] = L^{#Δ⁺} ∏ (L^{d_i} - 1)` with the fundamental degrees `d_i`.
pub fn class_group(rd: &RootDatum) -> Result<MotivicExpr, RootError> {
    let degs = rd.stabilizer_degrees(&vec![0; rd.rank()])?;
    let mut out = MotivicExpr::l_pow(rd.positive_roots().len() as i64);
    for d in degs {
        out = out.mul(&MotivicExpr::poly(IntPoly::l_pow_minus_one(d)));
    }
    Ok(out)
}

/// `[GL(k)] / [End C^k] = ∏_{i<k} (L^k - L^i) · L^{-k²}`.
pub fn gl_class_ratio(k: usize) -> MotivicExpr {
    let mut num = IntPoly::one();
    for i in 0..k {
        num = num.mul(&IntPoly::monomial(1, 2 * k).sub(&IntPoly::monomial(1, 2 * i)));
    }
    MotivicExpr::poly(num).mul(&MotivicExpr::l_pow(-((k * k) as i64)))
}

/// `P_G(s; λ) = ∏ 1 / (1 - s^{2 d_i})`.
pub fn p_factor_expr(rd: &RootDatum, lambda: &[i64]) -> Result<MotivicExpr, RootError> {
    let mut den = IntPoly::one();
    for d in rd.stabilizer_degrees(lambda)? {
        den = den.mul(&IntPoly::one().sub(&IntPoly::monomial(1, 2 * d)));
    }
    Ok(MotivicExpr::new(IntPoly::one(), den))
}

/// Splitting type of a `GL(k)` bundle `⊕ O(λ_i)`: `(degree, multiplicity)`
/// blocks in increasing degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleClass {
    pub lambda: Vec<i64>,
    pub blocks: Vec<(i64, usize)>,
}

impl BundleClass {
    pub fn new(lambda: &[i64]) -> Self {
        let mut sorted = lambda.to_vec();
        sorted.sort_unstable();
        let mut blocks: Vec<(i64, usize)> = Vec::new();
        for x in sorted {
            match blocks.last_mut() {
                Some((d, m)) if *d == x => *m += 1,
                _ => blocks.push((x, 1)),
            }
        }
        Self {
            lambda: lambda.to_vec(),
            blocks,
        }
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    /// `dim End(𝒫) = Σ_{β ≥ α} k_α k_β (β - α + 1)`.
    pub fn dim_end(&self) -> i64 {
        let mut total = 0;
        for (i, &(a, ka)) in self.blocks.iter().enumerate() {
            for &(b, kb) in &self.blocks[i..] {
                total += (ka * kb) as i64 * (b - a + 1);
            }
        }
        total
    }

    /// `-2 Σ_{β > α} k_α k_β (β - α) + Σ k_α`: the power of `s` left after
    /// the `L`-powers cancel.
    pub fn exponent(&self) -> i64 {
        let mut total = 0;
        for (i, &(a, ka)) in self.blocks.iter().enumerate() {
            for &(b, kb) in &self.blocks[i + 1..] {
                total += (ka * kb) as i64 * (b - a);
            }
        }
        self.rank() as i64 - 2 * total
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(d, k)| format!("{d}^{k}"))
            .collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// `[Aut(𝒫)] = L^{dim End} ∏_α [GL(k_α)] / [End C^{k_α}]`.
pub fn gl_aut_class(b: &BundleClass) -> MotivicExpr {
    b.blocks
        .iter()
        .fold(MotivicExpr::l_pow(b.dim_end()), |acc, &(_, k)| {
            acc.mul(&gl_class_ratio(k))
        })
}

/// `s^{k²} / [Aut(𝒫)]` from the block formula.
pub fn gl_route(lambda: &[i64]) -> MotivicExpr {
    let b = BundleClass::new(lambda);
    let k = b.rank() as i64;
    MotivicExpr::s_pow(k * k).div(&gl_aut_class(&b))
}

/// `[Aut(𝒫)] = L^{h⁰(𝒫_u) - dim U} [G] / [G/P]` with `[G/P]` the
/// Poincaré polynomial `P_G(s;λ) / P_G(s;0)`.
pub fn general_aut_class(rd: &RootDatum, lambda: &[i64]) -> Result<MotivicExpr, RootError> {
    if !rd.is_dominant(lambda)? {
        return Err(RootError::NotDominant(lambda.to_vec()));
    }
    let mut h0 = 0;
    let mut dim_u = 0;
    for a in rd.positive_roots() {
        let p = dot(a, lambda);
        if p > 0 {
            h0 += p + 1;
            dim_u += 1;
        }
    }
    let flag = p_factor_expr(rd, lambda)?.div(&p_factor_expr(rd, &vec![0; rd.rank()])?);
    Ok(MotivicExpr::l_pow(h0 - dim_u)
        .mul(&class_group(rd)?)
        .div(&flag))
}

/// `s^{dim G_C} / [Aut(𝒫)]` via the Levi decomposition.
pub fn general_route(rd: &RootDatum, lambda: &[i64]) -> Result<MotivicExpr, RootError> {
    let dim = (rd.rank() + 2 * rd.positive_roots().len()) as i64;
    Ok(MotivicExpr::s_pow(dim).div(&general_aut_class(rd, lambda)?))
}

/// The overall factor `(-1)^r s^r` separating the two sides.
pub fn normalization(rd: &RootDatum) -> MotivicExpr {
    let r = rd.rank() as i64;
    let e = MotivicExpr::s_pow(r);
    if r % 2 == 1 {
        e.neg()
    } else {
        e
    }
}

/// `(-1)^r s^r · s^{-2Σ_{α>0}⟨α,λ⟩} · P_G(s; λ)`.
pub fn monopole_side(rd: &RootDatum, lambda: &[i64]) -> Result<MotivicExpr, RootError> {
    let shift: i64 = rd
        .positive_roots()
        .iter()
        .map(|a| dot(a, lambda).abs())
        .sum();
    Ok(normalization(rd)
        .mul(&MotivicExpr::s_pow(-2 * shift))
        .mul(&p_factor_expr(rd, lambda)?))
}

/// Whether `rd` is `u(k)` in the standard coordinates.
pub fn is_gl(rd: &RootDatum) -> bool {
    let k = rd.rank();
    rd.simple_roots().len() + 1 == k.max(1)
        && rd.simple_roots().iter().enumerate().all(|(i, a)| {
            a.iter()
                .enumerate()
                .all(|(j, &x)| x == i64::from(j == i) - i64::from(j == i + 1))
        })
        && rd.simple_roots() == rd.simple_coroots()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCheck {
    pub monopole: MotivicExpr,
    pub general: MotivicExpr,
    /// Present only for `u(k)`.
    pub gl: Option<MotivicExpr>,
}

impl TermCheck {
    pub fn holds(&self) -> bool {
        self.general.same_as(&self.monopole)
            && self.gl.as_ref().is_none_or(|g| g.same_as(&self.monopole))
    }
}

pub fn term_check(rd: &RootDatum, lambda: &[i64]) -> Result<TermCheck, RootError> {
    let monopole = monopole_side(rd, lambda)?;
    let general = general_route(rd, lambda)?;
    let gl = is_gl(rd).then(|| gl_route(lambda));
    Ok(TermCheck {
        monopole,
        general,
        gl,
    })
}

/// `Σ_b |⟨λ, wt(b)⟩ + deg M₁ + 1|` over one weight per hypermultiplet.
pub fn matter_exponent(th: &GaugeTheory, lambda: &[i64], deg_m1: i64) -> i64 {
    th.matter
        .hyper_basis()
        .iter()
        .map(|(w, m)| *m as i64 * (dot(&w.gauge, lambda) + deg_m1 + 1).abs())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Builtin;
    use crate::theory::sqed;

    fn u(n: usize) -> RootDatum {
        RootDatum::builtin(Builtin::U(n)).unwrap()
    }

    #[test]
    fn group_classes() {
        let l = IntPoly::monomial(1, 2);
        let one = IntPoly::one();
        assert!(class_group(&u(1))
            .unwrap()
            .same_as(&MotivicExpr::poly(l.sub(&one))));
        let want = l.pow(2).sub(&one).mul(&l.pow(2).sub(&l));
        assert!(class_group(&u(2))
            .unwrap()
            .same_as(&MotivicExpr::poly(want)));
        let t3 = RootDatum::torus(3);
        assert!(class_group(&t3)
            .unwrap()
            .same_as(&MotivicExpr::poly(l.sub(&one).pow(3))));
    }

    #[test]
    fn gl_ratio_two_forms() {
        for k in 0..5usize {
            // (-1)^k (1-L)...(1-L^k) L^{-k(k+1)/2}
            let mut p = IntPoly::one();
            for j in 1..=k {
                p = p.mul(&IntPoly::one().sub(&IntPoly::monomial(1, 2 * j)));
            }
            if k % 2 == 1 {
                p = p.neg();
            }
            let alt = MotivicExpr::poly(p).mul(&MotivicExpr::l_pow(-((k * (k + 1) / 2) as i64)));
            assert!(gl_class_ratio(k).same_as(&alt), "k={k}");
        }
    }

    #[test]
    fn gl1_example() {
        let want = MotivicExpr::new(IntPoly::monomial(1, 1), IntPoly::from_coeffs(&[-1, 0, 1]));
        let c = term_check(&u(1), &[5]).unwrap();
        assert!(c.holds());
        assert!(c.monopole.same_as(&want));
    }

    #[test]
    fn gl2_examples() {
        let c = term_check(&u(2), &[1, 0]).unwrap();
        assert!(c.holds());
        assert_eq!(BundleClass::new(&[1, 0]).exponent(), 0);
        let c = term_check(&u(2), &[0, 0]).unwrap();
        assert!(c.holds());
        let want = MotivicExpr::new(
            IntPoly::monomial(1, 2),
            IntPoly::one()
                .sub(&IntPoly::monomial(1, 2))
                .mul(&IntPoly::one().sub(&IntPoly::monomial(1, 4))),
        );
        assert!(c.monopole.same_as(&want));
    }

    #[test]
    fn matter_exponents() {
        let th = sqed(1);
        for m in -3..=3 {
            assert_eq!(matter_exponent(&th, &[m], -1), m.abs());
        }
        assert_eq!(matter_exponent(&th, &[2], 0), 3);
    }

    #[test]
    fn reduction_is_canonical() {
        let a = MotivicExpr::new(
            IntPoly::from_coeffs(&[-2, 0, 2]),
            IntPoly::from_coeffs(&[2, -2]),
        );
        assert_eq!(a.num(), &IntPoly::from_coeffs(&[-1, -1]));
        assert_eq!(a.den(), &IntPoly::one());
        assert_eq!(a.to_string(), "-s - 1");
    }
}
