//! Rule engine for L-space surgeries, and region maps cross-checked
//! against the surgery complex.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::LinkDescriptor;
use crate::complex::{is_lspace_surgery, SurgeryMatrix};
use crate::error::{Error, Result};
use crate::hfun::{alexander_from_h, Point};
use crate::invariants::{link_invariants, LinkInvariants, LinkType};
use crate::poly::{HalfInt, LaurentPoly2};

/// Integral surgery on an L-space knot of genus `g` gives an L-space iff
/// `d >= 2g - 1`. For the unknot every `d != 0` gives a lens space.
pub fn knot_surgery_is_lspace(g: i64, d: i64) -> bool {
    if g == 0 {
        d != 0
    } else {
        d >= 2 * g - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Lspace,
    NotLspace,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Lspace => "LSPACE",
            Status::NotLspace => "NOT_LSPACE",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    /// Direct computation with the truncated surgery complex.
    Computed,
}

impl Rule {
    pub fn citation(self) -> &'static str {
        match self {
            Rule::R1 => "large surgery: d_i > 2b_i",
            Rule::R2 => "type A links need d1 > 0, d2 > 0 and det > 0",
            Rule::R3 => "very negative surgery forces unknotted components",
            Rule::R4 => "large surgery on one component and negative on the other forces an unknot",
            Rule::R5 => "unknotted components with l > 1 have no surgeries in the negative cone",
            Rule::R6 => "zero linking, large positive and negative surgery forces a split unknot",
            Rule::R7 => "zero linking needs an L-space surgery on one component",
            Rule::R8 => "zero linking gap bounds: d1 > b1 and d1 >= 2g1 - 1",
            Rule::R9 => "zero linking with an unknotted component: d1 > 2b1",
            Rule::R10 => "zero linking with b_i = g_i - 1: iff d_i > 2b_i",
            Rule::R11 => {
                "maximal point with nonzero mirrored Alexander coefficient bounds d1 > 2s1"
            }
            Rule::R12 => "b realised by maximal points: iff d_i > 2b_i",
            Rule::R13 => "induction along an axis from an L-space surgery",
            Rule::Computed => "truncated surgery complex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fired {
    pub rule: Rule,
    /// `true` for an L-space conclusion.
    pub lspace: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub d1: i64,
    pub d2: i64,
    pub status: Status,
    pub rules: Vec<Fired>,
    pub computed: Option<bool>,
    /// `det = 0`: not a rational homology sphere, no verdict is issued.
    pub det_zero: bool,
}

impl Verdict {
    fn fire(&mut self, rule: Rule, lspace: bool, note: String) -> Result<()> {
        let status = if lspace {
            Status::Lspace
        } else {
            Status::NotLspace
        };
        if self.status != Status::Unknown && self.status != status {
            return Err(Error::Inconsistency(format!(
                "rule conflict at ({}, {}): {rule:?} says {status} after {:?}",
                self.d1, self.d2, self.rules
            )));
        }
        self.status = status;
        self.rules.push(Fired { rule, lspace, note });
        Ok(())
    }

    pub fn symbol(&self) -> char {
        match (self.det_zero, self.status) {
            (true, _) => '0',
            (_, Status::Lspace) => 'L',
            (_, Status::NotLspace) => 'n',
            (_, Status::Unknown) => '?',
        }
    }
}

/// Maximal points whose mirrored Alexander coefficients are nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlexFlags {
    /// Points `(s1, s2)` with a nonzero coefficient of `t1^{-s1-1/2} t2^{s2+1/2}`.
    pub first: Vec<Point>,
    /// Points `(s1, s2)` with a nonzero coefficient of `t1^{s1+1/2} t2^{-s2-1/2}`.
    pub second: Vec<Point>,
}

pub fn alex_flags(inv: &LinkInvariants, delta: &LaurentPoly2) -> AlexFlags {
    let h = HalfInt::HALF;
    let pick = |f: &dyn Fn(Point) -> (HalfInt, HalfInt)| {
        inv.maximal_points
            .iter()
            .copied()
            .filter(|&p| !delta.coeff(f(p)).is_zero())
            .collect()
    };
    AlexFlags {
        first: pick(&|(s1, s2)| (-s1 - h, s2 + h)),
        second: pick(&|(s1, s2)| (s1 + h, -s2 - h)),
    }
}

fn det(inv: &LinkInvariants, d1: i64, d2: i64) -> i64 {
    d1 * d2 - inv.linking * inv.linking
}

fn direct_rules(inv: &LinkInvariants, flags: &AlexFlags, d1: i64, d2: i64) -> Result<Verdict> {
    let det = det(inv, d1, d2);
    let mut v = Verdict {
        d1,
        d2,
        status: Status::Unknown,
        rules: Vec::new(),
        computed: None,
        det_zero: det == 0,
    };
    if det == 0 {
        return Ok(v);
    }
    let (b1, b2, g1, g2, l) = (inv.b1, inv.b2, inv.g1, inv.g2, inv.linking);
    let large = d1 > 2 * b1 && d2 > 2 * b2;

    if large {
        v.fire(Rule::R1, true, format!("b = ({b1}, {b2})"))?;
    }
    if inv.link_type == LinkType::A && (d1 <= 0 || d2 <= 0 || det <= 0) {
        v.fire(Rule::R2, false, format!("type A, det = {det}"))?;
    }
    if (g1 >= 1 || g2 >= 1) && d1 < -2 * b1 - l && d2 < -2 * b2 - l {
        v.fire(Rule::R3, false, format!("g = ({g1}, {g2})"))?;
    }
    if g2 >= 1 && d1 > 2 * b1 + l && d2 < 0 {
        v.fire(Rule::R4, false, format!("g2 = {g2}"))?;
    }
    if g1 >= 1 && d2 > 2 * b2 + l && d1 < 0 {
        v.fire(Rule::R4, false, format!("g1 = {g1}"))?;
    }
    if g1 == 0 && g2 == 0 && l > 1 && d1 < 0 && d2 < 0 && det > 0 {
        v.fire(Rule::R5, false, format!("l = {l}"))?;
    }
    if l == 0 {
        if !inv.split_with_unknot && ((d1 > 2 * b1 && d2 < 0) || (d2 > 2 * b2 && d1 < 0)) {
            v.fire(Rule::R6, false, "not split with an unknot".into())?;
        }
        if !knot_surgery_is_lspace(g1, d1) && !knot_surgery_is_lspace(g2, d2) {
            v.fire(
                Rule::R7,
                false,
                "neither component surgery is an L-space".into(),
            )?;
        }
        if d2 > 2 * b2 && 0 < d1 && d1 <= b1.max(2 * g1 - 2) {
            v.fire(Rule::R8, false, format!("d1 <= max({b1}, {})", 2 * g1 - 2))?;
        }
        if d1 > 2 * b1 && 0 < d2 && d2 <= b2.max(2 * g2 - 2) {
            v.fire(Rule::R8, false, format!("d2 <= max({b2}, {})", 2 * g2 - 2))?;
        }
        if g2 == 0 && d2 > b2 && 0 < d1 && d1 <= 2 * b1 {
            v.fire(Rule::R9, false, "second component unknotted".into())?;
        }
        if g1 == 0 && d1 > b1 && 0 < d2 && d2 <= 2 * b2 {
            v.fire(Rule::R9, false, "first component unknotted".into())?;
        }
        // b_i = g_i - 1 with g_i = 0 would describe an unknotted split
        // component, where the criterion fails; the rule needs knotted
        // components.
        if g1 >= 1 && g2 >= 1 && b1 == g1 - 1 && b2 == g2 - 1 {
            v.fire(Rule::R10, large, format!("b = g - 1 = ({b1}, {b2})"))?;
        }
    }
    let twice = |s: HalfInt| s * 2;
    if d2 > 2 * b2 {
        if let Some(p) = flags.first.iter().find(|p| HalfInt::int(d1) <= twice(p.0)) {
            v.fire(Rule::R11, false, format!("maximal point {p:?}"))?;
        }
    }
    if d1 > 2 * b1 {
        if let Some(p) = flags.second.iter().find(|p| HalfInt::int(d2) <= twice(p.1)) {
            v.fire(Rule::R11, false, format!("maximal point {p:?}"))?;
        }
    }
    if r12_applies(inv, flags) {
        v.fire(Rule::R12, large, format!("b = ({b1}, {b2})"))?;
    }
    Ok(v)
}

/// `b1` and `b2` are attained by maximal points with nonzero mirrored coefficients.
pub fn r12_applies(inv: &LinkInvariants, flags: &AlexFlags) -> bool {
    flags.first.iter().any(|p| p.0 == HalfInt::int(inv.b1))
        && flags.second.iter().any(|p| p.1 == HalfInt::int(inv.b2))
}

/// Direction in which coordinate `axis` (1 or 2) may move away from an
/// L-space point `base`, or `None` if the surgery on the other component
/// alone is not an L-space.
fn induction_direction(inv: &LinkInvariants, base: (i64, i64), axis: u8) -> Option<i64> {
    let (fixed, g_fixed) = if axis == 1 {
        (base.1, inv.g2)
    } else {
        (base.0, inv.g1)
    };
    if !knot_surgery_is_lspace(g_fixed, fixed) {
        return None;
    }
    let sign = det(inv, base.0, base.1).signum() * fixed.signum();
    (sign != 0).then_some(sign)
}

/// Verdict at one point from rules R1 to R12. Induction (R13) needs a set
/// of known points and is applied by [`region_map`].
pub fn theorem_verdict(
    inv: &LinkInvariants,
    flags: &AlexFlags,
    d1: i64,
    d2: i64,
) -> Result<Verdict> {
    direct_rules(inv, flags, d1, d2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Theorems,
    WithComputation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub d1_min: i64,
    pub d1_max: i64,
    pub d2_min: i64,
    pub d2_max: i64,
}

impl Bounds {
    pub fn new(d1_min: i64, d1_max: i64, d2_min: i64, d2_max: i64) -> Result<Self> {
        if d1_min > d1_max || d2_min > d2_max {
            return Err(Error::InvalidParameters(format!(
                "empty box [{d1_min}, {d1_max}] x [{d2_min}, {d2_max}]"
            )));
        }
        Ok(Bounds {
            d1_min,
            d1_max,
            d2_min,
            d2_max,
        })
    }

    fn width(&self) -> usize {
        (self.d1_max - self.d1_min + 1) as usize
    }

    fn contains(&self, p: (i64, i64)) -> bool {
        (self.d1_min..=self.d1_max).contains(&p.0) && (self.d2_min..=self.d2_max).contains(&p.1)
    }

    /// Points row by row, `d2` ascending, `d1` ascending within a row.
    pub fn points(&self) -> Vec<(i64, i64)> {
        (self.d2_min..=self.d2_max)
            .flat_map(|d2| (self.d1_min..=self.d1_max).map(move |d1| (d1, d2)))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionMap {
    pub name: String,
    pub bounds: Bounds,
    pub mode: Mode,
    /// Row-major, `d2` ascending, `d1` ascending within a row.
    pub verdicts: Vec<Verdict>,
}

impl RegionMap {
    fn index(&self, d1: i64, d2: i64) -> Option<usize> {
        let b = &self.bounds;
        b.contains((d1, d2))
            .then(|| (d2 - b.d2_min) as usize * b.width() + (d1 - b.d1_min) as usize)
    }

    pub fn get(&self, d1: i64, d2: i64) -> Option<&Verdict> {
        self.index(d1, d2).map(|i| &self.verdicts[i])
    }

    /// One text row per `d2`, largest first, one character per `d1`.
    pub fn ascii(&self) -> String {
        let b = &self.bounds;
        let mut out = String::new();
        for d2 in (b.d2_min..=b.d2_max).rev() {
            out.push_str(&format!("{d2:>4} "));
            for d1 in b.d1_min..=b.d1_max {
                out.push(self.get(d1, d2).map_or(' ', Verdict::symbol));
            }
            out.push('\n');
        }
        out.push_str(&format!("     d1 = {}..{}\n", b.d1_min, b.d1_max));
        out
    }

    /// Green for L-spaces, red for non-L-spaces, white otherwise.
    pub fn svg(&self) -> String {
        const CELL: i64 = 24;
        let b = &self.bounds;
        let (w, h) = (b.width() as i64, b.d2_max - b.d2_min + 1);
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n",
            (w + 2) * CELL,
            (h + 2) * CELL
        );
        for v in &self.verdicts {
            let x = (v.d1 - b.d1_min + 1) * CELL;
            let y = (b.d2_max - v.d2 + 1) * CELL;
            let fill = match (v.det_zero, v.status) {
                (true, _) => "#bbbbbb",
                (_, Status::Lspace) => "#4caf50",
                (_, Status::NotLspace) => "#e53935",
                (_, Status::Unknown) => "#ffffff",
            };
            out.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\" stroke=\"#333\"><title>({}, {}) {}</title></rect>\n",
                v.d1, v.d2, v.status
            ));
        }
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n</svg>\n",
            CELL,
            (h + 2) * CELL - 6,
            self.name
        ));
        out
    }
}

/// Propagates L-space verdicts by induction to a fixed point inside the map.
fn close_under_induction(inv: &LinkInvariants, map: &mut RegionMap) -> Result<()> {
    let mut queue: Vec<(i64, i64)> = map
        .verdicts
        .iter()
        .filter(|v| v.status == Status::Lspace)
        .map(|v| (v.d1, v.d2))
        .collect();
    while let Some(base) = queue.pop() {
        for axis in [1u8, 2] {
            let Some(dir) = induction_direction(inv, base, axis) else {
                continue;
            };
            let mut p = base;
            loop {
                if axis == 1 {
                    p.0 += dir;
                } else {
                    p.1 += dir;
                }
                let Some(i) = map.index(p.0, p.1) else { break };
                let v = &mut map.verdicts[i];
                if v.det_zero {
                    return Err(Error::Inconsistency(format!(
                        "induction from {base:?} reached det = 0 at {p:?}"
                    )));
                }
                if v.status == Status::Lspace {
                    continue;
                }
                v.fire(Rule::R13, true, format!("from {base:?} along d{axis}"))?;
                queue.push(p);
            }
        }
    }
    Ok(())
}

/// Verdicts over a box. In `WithComputation` mode every point with
/// `det != 0` is also computed directly, and any disagreement is an error.
pub fn region_map(desc: &LinkDescriptor, bounds: Bounds, mode: Mode) -> Result<RegionMap> {
    let h = desc.h_function()?;
    let inv = link_invariants(&h)?;
    let delta = desc
        .alexander2
        .clone()
        .unwrap_or_else(|| alexander_from_h(&h));
    let flags = alex_flags(&inv, &delta);
    let verdicts = bounds
        .points()
        .into_par_iter()
        .map(|(d1, d2)| theorem_verdict(&inv, &flags, d1, d2))
        .collect::<Result<Vec<_>>>()?;
    let mut map = RegionMap {
        name: desc.name.clone(),
        bounds,
        mode,
        verdicts,
    };
    close_under_induction(&inv, &mut map)?;
    if mode == Mode::WithComputation {
        let computed = map
            .verdicts
            .par_iter()
            .map(|v| {
                if v.det_zero {
                    Ok(None)
                } else {
                    is_lspace_surgery(&h, SurgeryMatrix::new(v.d1, v.d2, inv.linking)).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        for (v, c) in map.verdicts.iter_mut().zip(computed) {
            let Some(c) = c else { continue };
            v.computed = Some(c);
            if v.status == Status::Unknown {
                v.fire(Rule::Computed, c, "hat dimensions".into())?;
            } else if (v.status == Status::Lspace) != c {
                return Err(Error::Inconsistency(format!(
                    "{}: theorems and computation disagree: {v:?}, invariants {inv:?}",
                    desc.name
                )));
            }
        }
    }
    Ok(map)
}
