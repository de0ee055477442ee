//! Truncated surgery complexes and their homology over GF(2).

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2;
use crate::hfun::{HFunction2D, Point};
use crate::invariants::compute_b;
use crate::poly::HalfInt;

/// Largest `i0`, `j0` tried when searching for the truncation box.
pub const DEFAULT_CAP: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SurgeryMatrix {
    pub d1: i64,
    pub d2: i64,
    pub l: i64,
}

impl SurgeryMatrix {
    pub fn new(d1: i64, d2: i64, l: i64) -> Self {
        SurgeryMatrix { d1, d2, l }
    }

    pub fn det(&self) -> i64 {
        self.d1 * self.d2 - self.l * self.l
    }

    fn require_rhs(&self) -> Result<()> {
        if self.det() == 0 {
            return Err(Error::NotRationalHomologySphere(format!(
                "det of ({}, {}; {}) is zero",
                self.d1, self.d2, self.l
            )));
        }
        if self.l < 0 {
            return Err(Error::InvalidParameters(format!(
                "linking number {} is negative; reverse one orientation first",
                self.l
            )));
        }
        Ok(())
    }

    /// `2 * det * theta` for the point `s`, where `s = theta1 L1 + theta2 L2`
    /// (doubled coordinates keep this integral).
    fn theta2x(&self, s: Point) -> (i64, i64) {
        let (x, y) = (s.0.doubled(), s.1.doubled());
        (self.d2 * x - self.l * y, self.d1 * y - self.l * x)
    }

    fn shift(&self, s: Point, i: i64, j: i64) -> Point {
        let one = HalfInt::ONE;
        (
            s.0 + one * (i * self.d1 + j * self.l),
            s.1 + one * (i * self.l + j * self.d2),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpinCClass {
    pub representative: Point,
    pub index: usize,
}

/// One representative per class of `H(L) / Λ`: the lattice points in the
/// half-open parallelogram spanned by `Λ1`, `Λ2` at `(l/2, l/2)`, in
/// lexicographic order.
pub fn spinc_classes(lam: SurgeryMatrix) -> Result<Vec<SpinCClass>> {
    lam.require_rhs()?;
    let det = lam.det();
    let base = HalfInt::from_doubled(lam.l);
    let (xs, ys) = (
        [0, lam.d1, lam.l, lam.d1 + lam.l],
        [0, lam.l, lam.d2, lam.l + lam.d2],
    );
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let mut reps = Vec::with_capacity(det.unsigned_abs() as usize);
    for x in x0..=x1 {
        for y in y0..=y1 {
            // theta = Λ^{-1}(x, y) must lie in [0, 1)^2
            let (t1, t2) = (lam.d2 * x - lam.l * y, lam.d1 * y - lam.l * x);
            let inside = |t: i64| {
                if det > 0 {
                    0 <= t && t < det
                } else {
                    det < t && t <= 0
                }
            };
            if inside(t1) && inside(t2) {
                reps.push((base + HalfInt::int(x), base + HalfInt::int(y)));
            }
        }
    }
    debug_assert_eq!(reps.len() as i64, det.abs());
    Ok(reps
        .into_iter()
        .enumerate()
        .map(|(index, representative)| SpinCClass {
            representative,
            index,
        })
        .collect())
}

/// Class of an arbitrary lattice point, as an index into [`spinc_classes`].
pub fn class_of(lam: SurgeryMatrix, s: Point) -> Result<usize> {
    let classes = spinc_classes(lam)?;
    let det = lam.det();
    let key = |p: Point| {
        let (a, b) = lam.theta2x(p);
        (a.mod_floor(&(2 * det)), b.mod_floor(&(2 * det)))
    };
    let k = key(s);
    classes
        .iter()
        .find(|c| key(c.representative) == k)
        .map(|c| c.index)
        .ok_or_else(|| Error::LatticeMismatch(format!("({}, {}) is not a lattice point", s.0, s.1)))
}

/// Label `ε1 ε2` of a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Eps {
    E00,
    E01,
    E10,
    E11,
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::E00 => "00",
            Eps::E01 => "01",
            Eps::E10 => "10",
            Eps::E11 => "11",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub point: Point,
    pub eps: Eps,
    /// `(i, j)` with `point = representative + i Λ1 + j Λ2`.
    pub index: (i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub exponent: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncatedComplex {
    pub lam: SurgeryMatrix,
    pub class: SpinCClass,
    pub case_id: u8,
    /// Built from the relaxed box of a degenerate matrix.
    pub relaxed: bool,
    pub i0: i64,
    pub j0: i64,
    pub cells: Vec<Cell>,
    pub edges: Vec<Edge>,
}

impl TruncatedComplex {
    pub fn count(&self, eps: Eps) -> usize {
        self.cells.iter().filter(|c| c.eps == eps).count()
    }
}

/// Which graded part carries the generator of `HF^`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Part {
    P00,
    P11,
    Odd,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::P00 => "00",
            Part::P11 => "11",
            Part::Odd => "01+10",
        })
    }
}

/// Truncation case from the signs of `d1`, `d2` and `det`. Mixed signs with
/// `d1 d2 = -l^2` go to case 3 or 4 with a relaxed box, see [`is_degenerate`].
pub fn select_case(lam: SurgeryMatrix) -> Result<u8> {
    lam.require_rhs()?;
    let (d1, d2, det) = (lam.d1, lam.d2, lam.det());
    Ok(if det > 0 && d1 > 0 {
        1
    } else if det > 0 {
        2
    } else if d1 > 0 && d2 < 0 && d1 * d2 <= -lam.l * lam.l {
        3
    } else if d1 < 0 && d2 > 0 && d1 * d2 <= -lam.l * lam.l {
        4
    } else {
        5
    })
}

/// Whether `(i0 Λ1 + j0 Λ2)/2` and the other three vertices of `Q` lie in
/// four distinct open quadrants beyond `(b1, b2)`.
pub fn q_vertices_ok(lam: SurgeryMatrix, b: (i64, i64), i0: i64, j0: i64) -> bool {
    if i0 < 2 || j0 < 2 {
        return false;
    }
    let mut seen = [false; 4];
    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        // doubled coordinates of the vertex
        let x = si * i0 * lam.d1 + sj * j0 * lam.l;
        let y = si * i0 * lam.l + sj * j0 * lam.d2;
        let qx = if x > 2 * b.0 {
            0
        } else if x < -2 * b.0 {
            1
        } else {
            return false;
        };
        let qy = if y > 2 * b.1 {
            0
        } else if y < -2 * b.1 {
            1
        } else {
            return false;
        };
        seen[2 * qx + qy] = true;
    }
    seen.iter().all(|&x| x)
}

/// Mixed signs with `d1 d2 = -l^2`: `Λ1` and `Λ2` are mirror images up to
/// scale, and no parallelogram with these edge directions has its four
/// vertices in four distinct quadrants.
pub fn is_degenerate(lam: SurgeryMatrix) -> bool {
    lam.l > 0 && lam.d1 * lam.d2 == -lam.l * lam.l
}

/// Relaxed condition for degenerate matrices: the box `|s_i| <= b_i` lies
/// in the interior of `Q`.
pub fn q_contains_box(lam: SurgeryMatrix, b: (i64, i64), i0: i64, j0: i64) -> bool {
    let det = lam.det().abs();
    i0 >= 2
        && j0 >= 2
        && [(1, 1), (1, -1), (-1, 1), (-1, -1)]
            .iter()
            .all(|&(cx, cy)| {
                let c = (HalfInt::int(cx * b.0), HalfInt::int(cy * b.1));
                let (t1, t2) = lam.theta2x(c);
                t1.abs() < i0 * det && t2.abs() < j0 * det
            })
}

/// The admissibility condition used for the truncation box: the vertex
/// condition, or [`q_contains_box`] for degenerate matrices. The vertex
/// condition bounds the ratio `i0 / j0` unless the vertices sit in the
/// standard quadrants, so it is not monotone in `(i0, j0)`.
pub fn box_ok(lam: SurgeryMatrix, b: (i64, i64), i0: i64, j0: i64) -> bool {
    if is_degenerate(lam) {
        q_contains_box(lam, b, i0, j0)
    } else {
        q_vertices_ok(lam, b, i0, j0)
    }
}

/// Minimal `(i0, j0)`, ordered by `i0 + j0` and then `i0`.
pub fn find_q(lam: SurgeryMatrix, b: (i64, i64), cap: i64) -> Option<(i64, i64)> {
    (4..=2 * cap).find_map(|sum| {
        (2.max(sum - cap)..=cap.min(sum - 2))
            .map(|i0| (i0, sum - i0))
            .find(|&(i0, j0)| box_ok(lam, b, i0, j0))
    })
}

/// Index ranges `[A1, A2] x [B1, B2]` of `class ∩ Q`.
fn q_rect(lam: SurgeryMatrix, rep: Point, i0: i64, j0: i64) -> ((i64, i64), (i64, i64)) {
    let det = lam.det();
    let (n1, n2) = lam.theta2x(rep);
    let range = |n: i64, k: i64| {
        // n + 2 det t in [-k|det|, k|det|]
        let m = 2 * det.abs();
        let lo = Integer::div_ceil(&(-k * det.abs() - n), &m);
        let hi = Integer::div_floor(&(k * det.abs() - n), &m);
        if det > 0 {
            (lo, hi)
        } else {
            (-hi, -lo)
        }
    };
    (range(n1, i0), range(n2, j0))
}

/// The retained index sets of one truncation case.
fn case_cells(case: u8, (a, b): ((i64, i64), (i64, i64))) -> Vec<(Eps, i64, i64)> {
    let rect = |i: (i64, i64), j: (i64, i64), e: Eps| {
        (i.0..=i.1).flat_map(move |x| (j.0..=j.1).map(move |y| (e, x, y)))
    };
    let (a1, a2, b1, b2) = (a.0, a.1, b.0, b.1);
    let mut out: Vec<(Eps, i64, i64)> = rect(a, b, Eps::E00).collect();
    match case {
        1 | 5 => {
            out.extend(rect((a1 + 1, a2), b, Eps::E10));
            out.extend(rect(a, (b1 + 1, b2), Eps::E01));
            out.extend(rect((a1 + 1, a2), (b1 + 1, b2), Eps::E11));
            if case == 5 {
                // just outside the intersections; at (A2, B1) and (A1, B2)
                // they would already be retained
                out.push((Eps::E10, a2 + 1, b1));
                out.push((Eps::E01, a1, b2 + 1));
            }
        }
        2 => {
            out.extend(rect((a1, a2 + 1), b, Eps::E10));
            out.extend(rect(a, (b1, b2 + 1), Eps::E01));
            out.extend(rect((a1, a2 + 1), (b1, b2 + 1), Eps::E11));
        }
        3 => {
            out.extend(rect((a1 + 1, a2), b, Eps::E10));
            out.extend(rect(a, (b1, b2 + 1), Eps::E01));
            out.extend(rect((a1 + 1, a2), (b1, b2 + 1), Eps::E11));
        }
        4 => {
            out.extend(rect((a1, a2 + 1), b, Eps::E10));
            out.extend(rect(a, (b1 + 1, b2), Eps::E01));
            out.extend(rect((a1, a2 + 1), (b1 + 1, b2), Eps::E11));
        }
        _ => unreachable!("case {case}"),
    }
    out.sort();
    out.dedup();
    out
}

/// The nonzero components of the differential leaving a cell, as
/// `(target label, index offset, exponent)`.
fn arrows(h: &HFunction2D, eps: Eps, s: Point) -> Vec<(Eps, (i64, i64), i64)> {
    let half_l = HalfInt::from_doubled(h.linking());
    let int = |x: HalfInt| x.to_int().expect("lattice point");
    let (s1, s2) = s;
    match eps {
        Eps::E00 => {
            let (v, w) = (h.value(s1, s2), h.value(-s1, -s2));
            vec![
                (Eps::E10, (0, 0), v - h.at_inf1(s2)),
                (Eps::E10, (1, 0), w - h.at_inf1(-s2)),
                (Eps::E01, (0, 0), v - h.at_inf2(s1)),
                (Eps::E01, (0, 1), w - h.at_inf2(-s1)),
            ]
        }
        Eps::E01 => vec![
            (Eps::E11, (0, 0), h.at_inf2(s1)),
            (Eps::E11, (1, 0), h.h1().value(int(half_l - s1))),
        ],
        Eps::E10 => vec![
            (Eps::E11, (0, 0), h.at_inf1(s2)),
            (Eps::E11, (0, 1), h.h2().value(int(half_l - s2))),
        ],
        Eps::E11 => vec![],
    }
}

pub fn build_truncated_complex(
    h: &HFunction2D,
    lam: SurgeryMatrix,
    u: SpinCClass,
) -> Result<TruncatedComplex> {
    build_with_b(h, compute_b(h), lam, u, DEFAULT_CAP, (0, 0))
}

/// Builder with explicit thresholds, search cap and an enlargement
/// `grow = (di, dj)` of the minimal box; the enlarged box must still
/// satisfy [`box_ok`].
pub fn build_with_b(
    h: &HFunction2D,
    b: (i64, i64),
    lam: SurgeryMatrix,
    u: SpinCClass,
    cap: i64,
    grow: (i64, i64),
) -> Result<TruncatedComplex> {
    let case_id = select_case(lam)?;
    if lam.l != h.linking() {
        return Err(Error::InvalidParameters(format!(
            "surgery matrix has l = {}, link has linking number {}",
            lam.l,
            h.linking()
        )));
    }
    let (i0, j0) = find_q(lam, b, cap).ok_or_else(|| {
        Error::Overflow(format!(
            "no truncation box with i0, j0 <= {cap} for ({}, {}; {}) and b = {b:?}",
            lam.d1, lam.d2, lam.l
        ))
    })?;
    let (i0, j0) = (i0 + grow.0, j0 + grow.1);
    if !box_ok(lam, b, i0, j0) {
        return Err(Error::InvalidParameters(format!(
            "box ({i0}, {j0}) violates the truncation condition"
        )));
    }
    let rect = q_rect(lam, u.representative, i0, j0);
    Ok(assemble(
        h,
        lam,
        u,
        case_id,
        i0,
        j0,
        case_cells(case_id, rect),
    ))
}

fn assemble(
    h: &HFunction2D,
    lam: SurgeryMatrix,
    u: SpinCClass,
    case_id: u8,
    i0: i64,
    j0: i64,
    keys: Vec<(Eps, i64, i64)>,
) -> TruncatedComplex {
    let lookup: HashMap<(Eps, i64, i64), usize> =
        keys.iter().enumerate().map(|(n, &k)| (k, n)).collect();
    let cells: Vec<Cell> = keys
        .iter()
        .map(|&(eps, i, j)| Cell {
            point: lam.shift(u.representative, i, j),
            eps,
            index: (i, j),
        })
        .collect();
    let mut edges = Vec::new();
    for (from, c) in cells.iter().enumerate() {
        for (eps, (di, dj), exponent) in arrows(h, c.eps, c.point) {
            assert!(exponent >= 0, "negative exponent {exponent} at {c:?}");
            if let Some(&to) = lookup.get(&(eps, c.index.0 + di, c.index.1 + dj)) {
                edges.push(Edge { from, to, exponent });
            }
        }
    }
    TruncatedComplex {
        lam,
        class: u,
        case_id,
        relaxed: is_degenerate(lam),
        i0,
        j0,
        cells,
        edges,
    }
}

/// Checks that the differential squares to zero over `F[U]`.
pub fn check_d_squared(c: &TruncatedComplex) -> Result<()> {
    let mut out: Vec<Vec<&Edge>> = vec![Vec::new(); c.cells.len()];
    for e in &c.edges {
        out[e.from].push(e);
    }
    let mut paths: HashMap<(usize, usize, i64), u32> = HashMap::new();
    for e in &c.edges {
        for f in &out[e.to] {
            *paths
                .entry((e.from, f.to, e.exponent + f.exponent))
                .or_default() += 1;
        }
    }
    match paths.into_iter().find(|&(_, n)| n % 2 == 1) {
        None => Ok(()),
        Some(((a, z, k), _)) => Err(Error::Inconsistency(format!(
            "d^2 != 0 in class {}: {:?} -> {:?} with U^{k}",
            c.class.index, c.cells[a], c.cells[z]
        ))),
    }
}

/// Dimensions of the homology in the parts 00, 01+10, 11, keeping edges
/// accepted by `keep`.
fn graded_homology(c: &TruncatedComplex, keep: impl Fn(&Edge) -> bool) -> [usize; 3] {
    let degree = |e: Eps| match e {
        Eps::E00 => 0,
        Eps::E01 | Eps::E10 => 1,
        Eps::E11 => 2,
    };
    let mut rows: [Vec<Vec<u32>>; 2] = Default::default();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut n = [0usize; 3];
    for (k, cell) in c.cells.iter().enumerate() {
        let d = degree(cell.eps);
        if d < 2 {
            slot.insert(k, rows[d].len());
            rows[d].push(Vec::new());
        }
        n[d] += 1;
    }
    for e in c.edges.iter().filter(|e| keep(e)) {
        let d = degree(c.cells[e.from].eps);
        rows[d][slot[&e.from]].push(e.to as u32);
    }
    let [r1, r2] = rows.map(gf2::rank);
    [n[0] - r1, n[1] - r1 - r2, n[2] - r2]
}

pub fn hat_homology_dim(c: &TruncatedComplex) -> Result<usize> {
    check_d_squared(c)?;
    Ok(graded_homology(c, |e| e.exponent == 0).iter().sum())
}

pub fn hfminus_free_rank(c: &TruncatedComplex) -> Result<usize> {
    check_d_squared(c)?;
    Ok(graded_homology(c, |_| true).iter().sum())
}

pub fn locate_generator(c: &TruncatedComplex) -> Result<Part> {
    check_d_squared(c)?;
    match graded_homology(c, |e| e.exponent == 0) {
        [1, 0, 0] => Ok(Part::P00),
        [0, 1, 0] => Ok(Part::Odd),
        [0, 0, 1] => Ok(Part::P11),
        dims => Err(Error::NotLSpace(format!(
            "class {} has hat homology of dimensions {dims:?}",
            c.class.index
        ))),
    }
}

/// Hat dimension of one class. Relaxed truncations are cross-checked
/// against a box enlarged by two steps.
pub fn class_hat_dim(
    h: &HFunction2D,
    b: (i64, i64),
    lam: SurgeryMatrix,
    u: SpinCClass,
) -> Result<usize> {
    let c = build_with_b(h, b, lam, u, DEFAULT_CAP, (0, 0))?;
    let dim = hat_homology_dim(&c)?;
    if c.relaxed {
        let wider = hat_homology_dim(&build_with_b(h, b, lam, u, DEFAULT_CAP, (2, 2))?)?;
        if wider != dim {
            return Err(Error::Inconsistency(format!(
                "relaxed truncation for ({}, {}; {}) class {} is unstable: {dim} vs {wider}",
                lam.d1, lam.d2, lam.l, u.index
            )));
        }
    }
    Ok(dim)
}

/// Hat dimensions for every class.
pub fn hat_dims(h: &HFunction2D, lam: SurgeryMatrix) -> Result<Vec<usize>> {
    let b = compute_b(h);
    spinc_classes(lam)?
        .into_par_iter()
        .map(|u| class_hat_dim(h, b, lam, u))
        .collect()
}

pub fn is_lspace_surgery(h: &HFunction2D, lam: SurgeryMatrix) -> Result<bool> {
    Ok(hat_dims(h, lam)?.iter().all(|&d| d == 1))
}
