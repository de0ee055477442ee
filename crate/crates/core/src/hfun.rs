//! H-functions of L-space knots and 2-component L-space links.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{check_knot_polynomial, to_i64, HalfInt, LaurentPoly1, LaurentPoly2};

/// H-function of an L-space knot, `H(s) = sum_j a_j max(j - s, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFunction1D {
    coeffs: Vec<(i64, i64)>,
    genus: i64,
}

impl HFunction1D {
    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// Nonzero Alexander coefficients as `(exponent, coefficient)` pairs.
    pub fn coeffs(&self) -> &[(i64, i64)] {
        &self.coeffs
    }

    pub fn alexander(&self) -> LaurentPoly1 {
        LaurentPoly1::from_terms(self.coeffs.iter().map(|&(e, c)| (HalfInt::int(e), c)))
    }

    pub fn value(&self, s: i64) -> i64 {
        if s >= self.genus {
            0
        } else if s <= -self.genus {
            -s
        } else {
            self.coeffs.iter().map(|&(j, a)| a * (j - s).max(0)).sum()
        }
    }
}

pub fn knot_h_from_alexander(delta: &LaurentPoly1) -> Result<HFunction1D> {
    check_knot_polynomial(delta)?;
    let mut coeffs = Vec::with_capacity(delta.len());
    for (e, c) in delta.terms() {
        let e = e.to_int().ok_or_else(|| {
            Error::NotLSpaceKnot(format!(
                "knot polynomial {delta} has a half-integer exponent"
            ))
        })?;
        coeffs.push((e, to_i64(c)?));
    }
    let genus = delta.top_degree().map_or(0, |g| g.doubled() / 2);
    let h = HFunction1D { coeffs, genus };
    for s in -genus - 1..=genus + 1 {
        let (prev, cur) = (h.value(s - 1), h.value(s));
        if cur < 0 || !(0..=1).contains(&(prev - cur)) {
            return Err(Error::NotLSpaceKnot(format!(
                "{delta}: H({}) = {prev}, H({s}) = {cur}",
                s - 1
            )));
        }
    }
    Ok(h)
}

/// Lattice point of `(Z + l/2)^2`.
pub type Point = (HalfInt, HalfInt);

/// H-function of a 2-component L-space link.
///
/// Values are tabulated on the symmetric box `|s_i| <= r_i`; outside it the
/// boundary stabilization and conjugation symmetry give closed forms, so
/// evaluation is O(1) everywhere and needs no cache.
#[derive(Clone, Debug)]
pub struct HFunction2D {
    linking: i64,
    h1: HFunction1D,
    h2: HFunction1D,
    r1: HalfInt,
    r2: HalfInt,
    n2: usize,
    table: Vec<i64>,
    alexander: Option<LaurentPoly2>,
}

fn lattice_offset(l: i64) -> HalfInt {
    HalfInt::from_doubled(l.rem_euclid(2))
}

impl HFunction2D {
    /// Builds an H-function from explicit values on the box `|s_i| <= r_i`.
    /// No validation is performed; see [`validate_h`].
    pub fn from_fn(
        linking: i64,
        h1: HFunction1D,
        h2: HFunction1D,
        r1: HalfInt,
        r2: HalfInt,
        mut f: impl FnMut(HalfInt, HalfInt) -> i64,
    ) -> Result<Self> {
        let off = lattice_offset(linking);
        if (r1 - off).to_int().is_none()
            || (r2 - off).to_int().is_none()
            || r1 < HalfInt::ZERO
            || r2 < HalfInt::ZERO
        {
            return Err(Error::LatticeMismatch(format!(
                "window radii ({r1}, {r2}) do not lie on Z + {linking}/2"
            )));
        }
        let n1 = (r1.doubled() + 1) as usize;
        let n2 = (r2.doubled() + 1) as usize;
        let mut h = HFunction2D {
            linking,
            h1,
            h2,
            r1,
            r2,
            n2,
            table: vec![0; n1 * n2],
            alexander: None,
        };
        for i in 0..n1 {
            for j in 0..n2 {
                let (s1, s2) = h.point(i, j);
                h.table[i * n2 + j] = f(s1, s2);
            }
        }
        Ok(h)
    }

    fn point(&self, i: usize, j: usize) -> Point {
        (
            HalfInt::int(i as i64) - self.r1,
            HalfInt::int(j as i64) - self.r2,
        )
    }

    pub fn linking(&self) -> i64 {
        self.linking
    }

    pub fn h1(&self) -> &HFunction1D {
        &self.h1
    }

    pub fn h2(&self) -> &HFunction1D {
        &self.h2
    }

    /// Half-widths of the tabulated box.
    pub fn radii(&self) -> (HalfInt, HalfInt) {
        (self.r1, self.r2)
    }

    /// The 2-variable Alexander polynomial the function was built from, if any.
    pub fn alexander(&self) -> Option<&LaurentPoly2> {
        self.alexander.as_ref()
    }

    /// Offset of the lattice: `0` for even linking number, `1/2` for odd.
    pub fn lattice_offset(&self) -> HalfInt {
        lattice_offset(self.linking)
    }

    pub fn on_lattice(&self, s: Point) -> bool {
        let off = self.lattice_offset();
        (s.0 - off).is_integer() && (s.1 - off).is_integer()
    }

    /// All tabulated lattice points, with `s2` varying fastest.
    pub fn window_points(&self) -> impl Iterator<Item = Point> + '_ {
        let n1 = self.table.len() / self.n2;
        (0..n1).flat_map(move |i| (0..self.n2).map(move |j| self.point(i, j)))
    }

    /// `H(infinity, s2) = H2(s2 - l/2)`.
    pub fn at_inf1(&self, s2: HalfInt) -> i64 {
        self.h2
            .value(int_of(s2 - HalfInt::from_doubled(self.linking)))
    }

    /// `H(s1, infinity) = H1(s1 - l/2)`.
    pub fn at_inf2(&self, s1: HalfInt) -> i64 {
        self.h1
            .value(int_of(s1 - HalfInt::from_doubled(self.linking)))
    }

    /// Evaluation without the lattice check; callers guarantee `s` is on the lattice.
    pub(crate) fn value(&self, s1: HalfInt, s2: HalfInt) -> i64 {
        if s1 > self.r1 {
            self.at_inf1(s2)
        } else if s2 > self.r2 {
            self.at_inf2(s1)
        } else if s1 < -self.r1 || s2 < -self.r2 {
            self.value(-s1, -s2) - int_of(s1 + s2)
        } else {
            let i = ((s1 + self.r1).doubled() / 2) as usize;
            let j = ((s2 + self.r2).doubled() / 2) as usize;
            self.table[i * self.n2 + j]
        }
    }

    pub fn eval(&self, s1: HalfInt, s2: HalfInt) -> Result<i64> {
        if !self.on_lattice((s1, s2)) {
            return Err(Error::LatticeMismatch(format!(
                "({s1}, {s2}) is not in (Z + {}/2)^2",
                self.linking
            )));
        }
        Ok(self.value(s1, s2))
    }
}

fn int_of(x: HalfInt) -> i64 {
    x.to_int().expect("integral lattice combination")
}

/// Alias of [`HFunction2D::eval`].
pub fn h_eval(h: &HFunction2D, s1: HalfInt, s2: HalfInt) -> Result<i64> {
    h.eval(s1, s2)
}

/// H-function of a 2-component L-space link from its multivariable
/// Alexander polynomial and the Alexander polynomials of its components.
pub fn link_h_from_alexander(
    delta2: &LaurentPoly2,
    delta_1: &LaurentPoly1,
    delta_2: &LaurentPoly1,
    l: i64,
) -> Result<HFunction2D> {
    link_h_with_margin(delta2, delta_1, delta_2, l, 0)
}

/// As [`link_h_from_alexander`], tabulating `extra` more rows and columns on
/// each side of the default window.
pub fn link_h_with_margin(
    delta2: &LaurentPoly2,
    delta_1: &LaurentPoly1,
    delta_2: &LaurentPoly1,
    l: i64,
    extra: i64,
) -> Result<HFunction2D> {
    if l < 0 {
        return Err(Error::InvalidParameters(format!(
            "linking number {l} must be nonnegative"
        )));
    }
    let h1 = knot_h_from_alexander(delta_1)?;
    let h2 = knot_h_from_alexander(delta_2)?;
    // Euler characteristics are the coefficients of (t1 t2)^{1/2} delta2.
    let tilde = delta2.shift((HalfInt::HALF, HalfInt::HALF));
    let off = lattice_offset(l);
    let mut chi = Vec::with_capacity(tilde.len());
    for (&(e1, e2), c) in tilde.terms() {
        if !(e1 - off).is_integer() || !(e2 - off).is_integer() {
            return Err(Error::LatticeMismatch(format!(
                "(t1 t2)^(1/2) * ({delta2}) has exponent ({e1}, {e2}) outside (Z + {l}/2)^2"
            )));
        }
        chi.push(((e1, e2), to_i64(c)?));
    }
    let (rt1, rt2) = tilde.support_radius();
    let half_l = HalfInt::from_doubled(l);
    let margin = HalfInt::int(l + 2 + extra.max(0));
    let r1 = rt1.max(HalfInt::int(h1.genus()) + half_l) + margin;
    let r2 = rt2.max(HalfInt::int(h2.genus()) + half_l) + margin;

    let n1 = (r1.doubled() + 1) as usize;
    let n2 = (r2.doubled() + 1) as usize;
    // Grid with one extra row and column on the top edge holding the boundary values.
    let (w1, w2) = (n1 + 1, n2 + 1);
    let mut grid = vec![0i64; w1 * w2];
    let pt = |i: usize, j: usize| (HalfInt::int(i as i64) - r1, HalfInt::int(j as i64) - r2);
    let chi_at = |y: Point| chi.iter().find(|(e, _)| *e == y).map_or(0, |(_, c)| *c);
    for j in 0..w2 {
        grid[n1 * w2 + j] = h2.value(int_of(pt(n1, j).1 - half_l));
    }
    for i in 0..w1 {
        grid[i * w2 + n2] = h1.value(int_of(pt(i, n2).0 - half_l));
    }
    for i in (0..n1).rev() {
        for j in (0..n2).rev() {
            let up = pt(i + 1, j + 1);
            grid[i * w2 + j] = grid[i * w2 + j + 1] + grid[(i + 1) * w2 + j]
                - grid[(i + 1) * w2 + j + 1]
                - chi_at(up);
        }
    }
    let mut h = HFunction2D::from_fn(l, h1, h2, r1, r2, |s1, s2| {
        let i = ((s1 + r1).doubled() / 2) as usize;
        let j = ((s2 + r2).doubled() / 2) as usize;
        grid[i * w2 + j]
    })?;
    h.alexander = Some(delta2.clone());
    let violations = validate_h(&h);
    if let Some(v) = violations.first() {
        return Err(Error::NotLSpaceLink(format!(
            "{} violation(s), first: {v}",
            violations.len()
        )));
    }
    Ok(h)
}

/// Recovers the 2-variable Alexander polynomial from the H-function by
/// reading off the Euler characteristics on the window.
pub fn alexander_from_h(h: &HFunction2D) -> LaurentPoly2 {
    let one = HalfInt::ONE;
    let mut out = LaurentPoly2::zero();
    for (y1, y2) in h.window_points() {
        let chi = -h.value(y1 - one, y2 - one) + h.value(y1 - one, y2) + h.value(y1, y2 - one)
            - h.value(y1, y2);
        if !chi.is_zero() {
            out.add_term((y1 - HalfInt::HALF, y2 - HalfInt::HALF), chi.into());
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    Growth,
    Nonnegativity,
    Symmetry,
    /// `H(-s) - H(inf, -s2) = H(s) - H(inf, s2 + l) + s1 - l/2`.
    ShiftedSymmetry,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub point: Point,
    pub property: Property,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} at ({}, {}): {}",
            self.property, self.point.0, self.point.1, self.detail
        )
    }
}

pub fn validate_h(h: &HFunction2D) -> Vec<Violation> {
    let one = HalfInt::ONE;
    let half_l = HalfInt::from_doubled(h.linking);
    let mut out = Vec::new();
    let mut push = |point, property, detail: String| {
        out.push(Violation {
            point,
            property,
            detail,
        })
    };
    for (s1, s2) in h.window_points() {
        let v = h.value(s1, s2);
        if v < 0 {
            push((s1, s2), Property::Nonnegativity, format!("H = {v}"));
        }
        for (d, prev) in [("e1", h.value(s1 - one, s2)), ("e2", h.value(s1, s2 - one))] {
            if !(0..=1).contains(&(prev - v)) {
                push(
                    (s1, s2),
                    Property::Growth,
                    format!("H(s - {d}) - H(s) = {}", prev - v),
                );
            }
        }
        let m = h.value(-s1, -s2);
        if m != v + int_of(s1 + s2) {
            push(
                (s1, s2),
                Property::Symmetry,
                format!("H(-s) = {m}, H(s) + s1 + s2 = {}", v + int_of(s1 + s2)),
            );
        }
        let lhs = m - h.at_inf1(-s2);
        let rhs = v - h.at_inf1(s2 + HalfInt::int(h.linking)) + int_of(s1 - half_l);
        if lhs != rhs {
            push(
                (s1, s2),
                Property::ShiftedSymmetry,
                format!("{lhs} != {rhs}"),
            );
        }
        if s1 == h.r1 && v != h.at_inf1(s2) {
            push(
                (s1, s2),
                Property::Boundary,
                format!("H = {v}, H2(s2 - l/2) = {}", h.at_inf1(s2)),
            );
        }
        if s2 == h.r2 && v != h.at_inf2(s1) {
            push(
                (s1, s2),
                Property::Boundary,
                format!("H = {v}, H1(s1 - l/2) = {}", h.at_inf2(s1)),
            );
        }
    }
    out
}

/// H-function of the link with the first component's orientation reversed,
/// `H'(s1, s2) = H(-s1, s2) - s1 - l/2`. The result has linking number `-l`.
pub fn reverse_orientation(h: &HFunction2D) -> HFunction2D {
    let half_l = HalfInt::from_doubled(h.linking);
    HFunction2D::from_fn(
        -h.linking,
        h.h1.clone(),
        h.h2.clone(),
        h.r1,
        h.r2,
        |s1, s2| h.value(-s1, s2) - int_of(s1 + half_l),
    )
    .expect("same window")
}
