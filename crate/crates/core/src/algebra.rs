//! Exact Laurent polynomials, half-integer gradings and bigraded rank tables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("value at t = 1 is {0}, expected +1 or -1")]
    NotUnitAtOne(String),
    #[error("no unit t^k makes the polynomial symmetric")]
    NotSymmetrizable,
    #[error("delta gradings {0} and {1} are not integer-spaced")]
    MixedDeltaParity(HalfInteger, HalfInteger),
}

/// Coefficient ring for [`LaurentPoly`]: an exact signed integer type.
pub trait Coefficient: Clone + fmt::Debug + fmt::Display + Integer + Signed + From<i32> + Send + Sync {}

impl<R> Coefficient for R where R: Clone + fmt::Debug + fmt::Display + Integer + Signed + From<i32> + Send + Sync {}

/// A polynomial in `t` and `t^{-1}` with coefficients in `R`.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<R> {
    coeffs: BTreeMap<i64, R>,
}

impl<R: Coefficient> Default for LaurentPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coefficient> LaurentPoly<R> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(R::one(), 0)
    }

    /// `coeff * t^exp`.
    pub fn monomial(coeff: R, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, R)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(R::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> R {
        self.coeffs.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `t -> t^{-1}`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact evaluation at `t = 1`, or at `t = -1` when `at_minus_one` is set.
    pub fn eval_at_unit(&self, at_minus_one: bool) -> R {
        self.coeffs.iter().fold(R::zero(), |acc, (e, c)| {
            if at_minus_one && e.is_odd() {
                acc - c.clone()
            } else {
                acc + c.clone()
            }
        })
    }

    /// Exact division in `R[t, t^{-1}]`; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (d_lo, d_hi) = (divisor.min_exp()?, divisor.max_exp()?);
        let d_lead = divisor.coeff(d_hi);
        let floor = self.min_exp()? - d_lo;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(r_hi) = rem.max_exp() {
            let q_exp = r_hi - d_hi;
            if q_exp < floor {
                return None;
            }
            let (q, r) = rem.coeff(r_hi).div_rem(&d_lead);
            if !r.is_zero() {
                return None;
            }
            let term = Self::monomial(q, q_exp);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Normalize a knot Alexander polynomial: multiply by the unique `±t^k`
    /// making it symmetric under `t -> t^{-1}` with value 1 at `t = 1`.
    pub fn normalize_alexander(&self) -> Result<Self, AlgebraError> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(AlgebraError::ZeroPolynomial),
        };
        let at_one = self.eval_at_unit(false);
        if at_one.abs() != R::one() {
            return Err(AlgebraError::NotUnitAtOne(at_one.to_string()));
        }
        if (lo + hi).is_odd() {
            return Err(AlgebraError::NotSymmetrizable);
        }
        let mut q = self.shift(-(lo + hi) / 2);
        if at_one.is_negative() {
            q = -q;
        }
        if q != q.reflect() {
            return Err(AlgebraError::NotSymmetrizable);
        }
        Ok(q)
    }
}

impl<R: Coefficient> Add for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<R: Coefficient> Add for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
        &self + &rhs
    }
}

impl<R: Coefficient> AddAssign<&LaurentPoly<R>> for LaurentPoly<R> {
    fn add_assign(&mut self, rhs: &LaurentPoly<R>) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl<R: Coefficient> Neg for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Coefficient> Sub for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<R: Coefficient> Sub for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
        &self - &rhs
    }
}

impl<R: Coefficient> Mul for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<R: Coefficient> Mul for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
        &self * &rhs
    }
}

impl<R: Coefficient> Zero for LaurentPoly<R> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Coefficient> One for LaurentPoly<R> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl<R: Coefficient> fmt::Display for LaurentPoly<R> {
    /// Highest power first, e.g. `t^3 - 2t^2 + 3 - 2t^-2 + t^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl<R: Coefficient> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// An exact half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub const fn from_twice(twice: i64) -> Self {
        Self(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        Self(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0.is_even()
    }

    /// `Some(n)` when the value is the integer `n`.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger(self.0 + rhs.0)
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger(self.0 - rhs.0)
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> HalfInteger {
        HalfInteger(-self.0)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl fmt::Debug for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A bigraded generator: Alexander grading and delta grading.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator {
    pub alexander: i64,
    pub delta: HalfInteger,
}

impl Generator {
    pub const fn new(alexander: i64, delta: HalfInteger) -> Self {
        Self { alexander, delta }
    }
}

/// Multiset of bigraded generators. Ranks are always positive.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct GeneratorMultiset {
    ranks: BTreeMap<Generator, u64>,
}

impl GeneratorMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// One generator of each listed Alexander grading, all in `delta`.
    pub fn from_gradings<I>(delta: HalfInteger, gradings: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        let mut m = Self::new();
        for s in gradings {
            m.insert(Generator::new(s, delta), 1);
        }
        m
    }

    pub fn insert(&mut self, g: Generator, rank: u64) {
        if rank > 0 {
            *self.ranks.entry(g).or_insert(0) += rank;
        }
    }

    /// Removes up to `rank` copies of `g`; returns how many were removed.
    pub fn remove(&mut self, g: Generator, rank: u64) -> u64 {
        let Some(have) = self.ranks.get_mut(&g) else {
            return 0;
        };
        let taken = rank.min(*have);
        *have -= taken;
        if *have == 0 {
            self.ranks.remove(&g);
        }
        taken
    }

    pub fn merge(&mut self, other: &GeneratorMultiset) {
        for (g, r) in &other.ranks {
            self.insert(*g, *r);
        }
    }

    pub fn rank(&self, alexander: i64, delta: HalfInteger) -> u64 {
        self.ranks.get(&Generator::new(alexander, delta)).copied().unwrap_or(0)
    }

    /// Rank in Alexander grading `s`, summed over delta.
    pub fn rank_in_alexander(&self, s: i64) -> u64 {
        self.ranks
            .iter()
            .filter(|(g, _)| g.alexander == s)
            .map(|(_, r)| r)
            .sum()
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Entries sorted by `(alexander, delta)`.
    pub fn iter(&self) -> impl Iterator<Item = (Generator, u64)> + '_ {
        self.ranks.iter().map(|(g, r)| (*g, *r))
    }

    /// Distinct delta gradings present, ascending.
    pub fn deltas(&self) -> Vec<HalfInteger> {
        let mut ds: Vec<_> = self.ranks.keys().map(|g| g.delta).collect();
        ds.sort();
        ds.dedup();
        ds
    }

    /// Distinct Alexander gradings carrying `delta`, ascending.
    pub fn alexander_support(&self, delta: HalfInteger) -> Vec<i64> {
        self.ranks
            .keys()
            .filter(|g| g.delta == delta)
            .map(|g| g.alexander)
            .collect()
    }

    /// Alexander gradings with their ranks, ignoring delta.
    pub fn alexander_profile(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for (g, r) in &self.ranks {
            *out.entry(g.alexander).or_insert(0) += r;
        }
        out
    }

    /// Image under `s -> -s` with delta fixed.
    pub fn negated(&self) -> Self {
        let mut out = Self::new();
        for (g, r) in &self.ranks {
            out.insert(Generator::new(-g.alexander, g.delta), *r);
        }
        out
    }

    /// Every delta grading moved by `shift`.
    pub fn delta_shifted(&self, shift: HalfInteger) -> Self {
        let mut out = Self::new();
        for (g, r) in &self.ranks {
            out.insert(Generator::new(g.alexander, g.delta + shift), *r);
        }
        out
    }
}

impl FromIterator<Generator> for GeneratorMultiset {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        let mut m = Self::new();
        for g in iter {
            m.insert(g, 1);
        }
        m
    }
}

impl fmt::Debug for GeneratorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.ranks.iter().map(|(g, r)| ((g.alexander, g.delta), r)))
            .finish()
    }
}

/// Graded Euler characteristic `sum (-1)^(s - delta) rk t^s`.
///
/// Deltas are only relative, so the result is fixed up to an overall sign:
/// the smallest delta present is treated as delta 0.
pub fn euler_characteristic<R: Coefficient>(gens: &GeneratorMultiset) -> Result<LaurentPoly<R>, AlgebraError> {
    let Some(base) = gens.deltas().first().copied() else {
        return Ok(LaurentPoly::zero());
    };
    let mut p = LaurentPoly::zero();
    for (g, r) in gens.iter() {
        let offset = g.delta - base;
        let Some(offset) = offset.to_integer() else {
            return Err(AlgebraError::MixedDeltaParity(base, g.delta));
        };
        let maslov = g.alexander - offset;
        let rank = R::from(i32::try_from(r).expect("rank fits in i32"));
        let c = if maslov.is_odd() { -rank } else { rank };
        p.add_term(g.alexander, c);
    }
    Ok(p)
}
