//! Classification data derived from the H-function: genera, the
//! thresholds `b1`, `b2`, the type A/B dichotomy and maximal lattice points.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hfun::{HFunction2D, Point};
use crate::poly::{check_knot_polynomial, HalfInt, LaurentPoly1};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LinkType {
    A,
    B,
}

impl fmt::Display for LinkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkType::A => "A",
            LinkType::B => "B",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkInvariants {
    pub b1: i64,
    pub b2: i64,
    pub g1: i64,
    pub g2: i64,
    pub linking: i64,
    pub link_type: LinkType,
    /// A lattice point certifying type A, if any.
    pub witness: Option<Point>,
    pub maximal_points: Vec<Point>,
    pub split_with_unknot: bool,
}

/// Top exponent of a knot's symmetrized Alexander polynomial.
pub fn genus(delta: &LaurentPoly1) -> Result<i64> {
    check_knot_polynomial(delta)?;
    let top = delta.top_degree().unwrap_or(HalfInt::ZERO);
    top.to_int()
        .ok_or_else(|| Error::NotLSpaceKnot(format!("{delta} has a half-integer top degree")))
}

/// Smallest `s1` with `H(s1, .) = H(inf, .)`, scanning down from the right
/// edge of the window. Monotone by the growth property.
fn stable_column(h: &HFunction2D, swap: bool) -> HalfInt {
    let (r1, r2) = h.radii();
    let (ra, rb) = if swap { (r2, r1) } else { (r1, r2) };
    let (ga, half_l) = (
        if swap { h.h2() } else { h.h1() }.genus(),
        HalfInt::from_doubled(h.linking()),
    );
    let at = |a: HalfInt, b: HalfInt| if swap { h.value(b, a) } else { h.value(a, b) };
    let inf = |b: HalfInt| if swap { h.at_inf2(b) } else { h.at_inf1(b) };
    let column_ok = |a: HalfInt| {
        a - half_l >= HalfInt::int(ga) && {
            let mut b = -rb - HalfInt::ONE;
            let mut ok = true;
            while ok && b <= rb + HalfInt::ONE {
                ok = at(a, b) == inf(b);
                b = b + HalfInt::ONE;
            }
            ok
        }
    };
    let mut a = ra + HalfInt::ONE;
    while a > -ra - HalfInt::ONE && column_ok(a - HalfInt::ONE) {
        a = a - HalfInt::ONE;
    }
    a
}

/// `b_i = min ceil(s_i - 1)` over the stabilized columns (rows).
pub fn compute_b(h: &HFunction2D) -> (i64, i64) {
    let b = |swap| (stable_column(h, swap) - HalfInt::ONE).ceil();
    (b(false), b(true))
}

/// All points with `H(s) = 1` and `H(s + e1) = H(s + e2) = 0`.
pub fn maximal_lattice_points(h: &HFunction2D) -> Vec<Point> {
    scan(h)
        .filter(|&(s1, s2)| {
            h.value(s1, s2) == 1
                && h.value(s1 + HalfInt::ONE, s2) == 0
                && h.value(s1, s2 + HalfInt::ONE) == 0
        })
        .collect()
}

/// Window points padded by one step on each side.
fn scan(h: &HFunction2D) -> impl Iterator<Item = Point> + '_ {
    let (r1, r2) = h.radii();
    let n1 = r1.doubled() + 3;
    let n2 = r2.doubled() + 3;
    let one = HalfInt::ONE;
    (0..n1).flat_map(move |i| {
        (0..n2).map(move |j| (HalfInt::int(i) - r1 - one, HalfInt::int(j) - r2 - one))
    })
}

fn type_a_witness(h: &HFunction2D) -> Option<Point> {
    scan(h).find(|&(s1, s2)| {
        let v = h.value(s1, s2);
        v > h.value(s1, s2 + HalfInt::ONE)
            && v > h.value(s1 + HalfInt::ONE, s2)
            && (h.at_inf2(s1) == 0 || h.at_inf1(s2) == 0)
    })
}

/// Type A iff a strict local drop with a vanishing boundary value exists;
/// cross-checked against `b_i >= g_i + l/2`.
pub fn classify_type(h: &HFunction2D, b: (i64, i64)) -> Result<(LinkType, Option<Point>)> {
    let witness = type_a_witness(h);
    let l = h.linking();
    let by_b = 2 * b.0 >= 2 * h.h1().genus() + l || 2 * b.1 >= 2 * h.h2().genus() + l;
    if witness.is_some() != by_b {
        return Err(Error::Inconsistency(format!(
            "type A witness {witness:?} disagrees with b = {b:?}, g = ({}, {}), l = {l}",
            h.h1().genus(),
            h.h2().genus()
        )));
    }
    Ok((if by_b { LinkType::A } else { LinkType::B }, witness))
}

/// Whether `H(s1, s2) = H1(s1) + H2(s2)` with one unknotted component
/// (linking number zero only).
pub fn split_with_unknot(h: &HFunction2D) -> bool {
    h.linking() == 0
        && h.h1().genus().min(h.h2().genus()) == 0
        && scan(h).all(|(s1, s2)| h.value(s1, s2) == h.at_inf2(s1) + h.at_inf1(s2))
}

pub fn link_invariants(h: &HFunction2D) -> Result<LinkInvariants> {
    let (b1, b2) = compute_b(h);
    let (link_type, witness) = classify_type(h, (b1, b2))?;
    Ok(LinkInvariants {
        b1,
        b2,
        g1: h.h1().genus(),
        g2: h.h2().genus(),
        linking: h.linking(),
        link_type,
        witness,
        maximal_points: maximal_lattice_points(h),
        split_with_unknot: split_with_unknot(h),
    })
}
