//! Sparse Laurent polynomials in one and two variables with half-integer
//! exponents and arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Smallest integer that is at least `self`.
    pub fn ceil(self) -> i64 {
        self.0.div_euclid(2) + self.0.rem_euclid(2)
    }

    /// Largest integer that is at most `self`.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Exact integer value; `None` for a proper half-integer.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt(self.0 * k)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exponent monoid of a Laurent polynomial.
pub trait Exponent: Copy + Ord + fmt::Debug {
    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
}

impl Exponent for HalfInt {
    fn zero() -> Self {
        HalfInt::ZERO
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
}

impl Exponent for (HalfInt, HalfInt) {
    fn zero() -> Self {
        (HalfInt::ZERO, HalfInt::ZERO)
    }
    fn plus(self, o: Self) -> Self {
        (self.0 + o.0, self.1 + o.1)
    }
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<E: Exponent> {
    terms: BTreeMap<E, BigInt>,
}

pub type LaurentPoly1 = Laurent<HalfInt>;
pub type LaurentPoly2 = Laurent<(HalfInt, HalfInt)>;

impl<E: Exponent> Default for Laurent<E> {
    fn default() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }
}

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(E::zero(), 1)
    }

    pub fn monomial(e: E, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (E, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: E, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: E) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &BigInt)> {
        self.terms.iter()
    }

    /// Multiply by the monomial `t^e`.
    pub fn shift(&self, e: E) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.plus(e), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients, i.e. the value at t = 1.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn map_exponents<F: Exponent>(&self, f: impl Fn(E) -> F) -> Laurent<F> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<E: Exponent> Add for &Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, o: &Laurent<E>) -> Laurent<E> {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl<E: Exponent> Sub for &Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, o: &Laurent<E>) -> Laurent<E> {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl<E: Exponent> Neg for &Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<E: Exponent> Mul for &Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, o: &Laurent<E>) -> Laurent<E> {
        let mut r = Laurent::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.plus(*b), x * y);
            }
        }
        r
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<E: Exponent> $tr for Laurent<E> {
            type Output = Laurent<E>;
            fn $m(self, o: Laurent<E>) -> Laurent<E> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        -&self
    }
}

impl LaurentPoly1 {
    pub fn top_degree(&self) -> Option<HalfInt> {
        self.terms.keys().next_back().copied()
    }

    pub fn bottom_degree(&self) -> Option<HalfInt> {
        self.terms.keys().next().copied()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-*e) == Some(c))
    }

    /// Replace `t` by `t^p`.
    pub fn substitute_power(&self, p: i64) -> Self {
        self.map_exponents(|e| e * p)
    }

    /// `t^{a} - t^{-a}`.
    pub fn binomial(a: HalfInt) -> Self {
        Self::from_terms([(a, 1), (-a, -1)])
    }

    /// Exact quotient by `t^{a} - t^{-a}` (`a > 0`), or `None` when the
    /// division leaves a remainder.
    pub fn div_binomial(&self, a: HalfInt) -> Option<Self> {
        assert!(a > HalfInt::ZERO);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.top_degree() {
            let bottom = rem.bottom_degree().unwrap();
            if top - bottom < a * 2 {
                return None;
            }
            let c = rem.coeff(top);
            let e = top - a;
            quot.add_term(e, c.clone());
            rem.add_term(top, -c.clone());
            rem.add_term(e - a, c);
        }
        Some(quot)
    }
}

impl LaurentPoly2 {
    /// Replace `t1` by `t1^p`.
    pub fn substitute_power(&self, p: i64) -> Self {
        self.map_exponents(|(a, b)| (a * p, b))
    }

    pub fn swap_variables(&self) -> Self {
        self.map_exponents(|(a, b)| (b, a))
    }

    /// Largest absolute exponent in each variable.
    pub fn support_radius(&self) -> (HalfInt, HalfInt) {
        self.terms
            .keys()
            .fold((HalfInt::ZERO, HalfInt::ZERO), |(r1, r2), (a, b)| {
                (r1.max(a.abs()), r2.max(b.abs()))
            })
    }

    /// Laurent polynomial in `u = t1^{k1} t2^{k2}` pushed into two variables.
    pub fn from_one_variable(f: &LaurentPoly1, k1: i64, k2: i64) -> Self {
        f.map_exponents(|e| (e * k1, e * k2))
    }
}

/// `sum_{k=0}^{p-1} t^{q(p-1-2k)/2}`, the expansion of
/// `(t^{pq/2} - t^{-pq/2}) / (t^{q/2} - t^{-q/2})`.
pub fn quantum_factor(p: i64, q: i64) -> Result<LaurentPoly1> {
    if p < 1 || q < 1 || p.gcd(&q) != 1 {
        return Err(Error::InvalidParameters(format!(
            "quantum factor needs coprime p, q >= 1, got ({p}, {q})"
        )));
    }
    Ok(LaurentPoly1::from_terms(
        (0..p).map(|k| (HalfInt::from_doubled(q * (p - 1 - 2 * k)), 1)),
    ))
}

/// Check that `delta` is symmetric and normalized so that `delta(1) = 1`.
pub fn check_knot_polynomial(delta: &LaurentPoly1) -> Result<()> {
    if !delta.is_symmetric() {
        return Err(Error::NotLSpaceKnot(format!(
            "Alexander polynomial {delta} is not symmetric"
        )));
    }
    if !delta.eval_one().is_one() {
        return Err(Error::NotLSpaceKnot(format!(
            "Alexander polynomial {delta} does not evaluate to 1 at t = 1"
        )));
    }
    Ok(())
}

/// Coefficient of `t^s` in the power series `delta / (1 - t^{-1})`.
pub fn tilde_coeff_knot(delta: &LaurentPoly1, s: HalfInt) -> Result<BigInt> {
    check_knot_polynomial(delta)?;
    Ok(delta.terms.range(s..).map(|(_, c)| c).sum())
}

pub(crate) fn to_i64(c: &BigInt) -> Result<i64> {
    c.to_i64().ok_or_else(|| Error::Overflow(c.to_string()))
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt, mono: &str) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let mag = c.abs();
    if mono.is_empty() || !mag.is_one() {
        write!(f, "{mag}")?;
    }
    write!(f, "{mono}")
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = if *e == HalfInt::ZERO {
                String::new()
            } else {
                format!("t^{e}")
            };
            write_term(f, i == 0, c, &mono)?;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            if *a != HalfInt::ZERO {
                mono += &format!("t1^{a}");
            }
            if *b != HalfInt::ZERO {
                mono += &format!("t2^{b}");
            }
            write_term(f, i == 0, c, &mono)?;
        }
        Ok(())
    }
}

impl<E: Exponent> fmt::Debug for Laurent<E>
where
    Laurent<E>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
