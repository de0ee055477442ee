//! Built-in link descriptors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hfun::{knot_h_from_alexander, link_h_from_alexander, validate_h, HFunction2D, Point};
use crate::poly::{HalfInt, LaurentPoly1, LaurentPoly2};

/// Explicit H-values on the box `|s_i| <= r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTable {
    pub r1: HalfInt,
    pub r2: HalfInt,
    pub values: BTreeMap<Point, i64>,
}

impl HTable {
    pub fn from_h(h: &HFunction2D) -> Self {
        let (r1, r2) = h.radii();
        let values = h
            .window_points()
            .map(|(a, b)| ((a, b), h.eval(a, b).unwrap()))
            .collect();
        HTable { r1, r2, values }
    }
}

/// A 2-component link given by Alexander data or by an explicit H-table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDescriptor {
    pub name: String,
    pub linking: i64,
    pub alexander2: Option<LaurentPoly2>,
    pub component1: LaurentPoly1,
    pub component2: LaurentPoly1,
    pub h_table: Option<HTable>,
}

impl LinkDescriptor {
    /// Computes and validates the H-function.
    pub fn h_function(&self) -> Result<HFunction2D> {
        match (&self.alexander2, &self.h_table) {
            (Some(a), None) => {
                link_h_from_alexander(a, &self.component1, &self.component2, self.linking)
            }
            (None, Some(t)) => {
                if self.linking < 0 {
                    return Err(Error::InvalidParameters(format!(
                        "linking number {} is negative",
                        self.linking
                    )));
                }
                let h1 = knot_h_from_alexander(&self.component1)?;
                let h2 = knot_h_from_alexander(&self.component2)?;
                let mut missing = None;
                let h = HFunction2D::from_fn(self.linking, h1, h2, t.r1, t.r2, |a, b| {
                    match t.values.get(&(a, b)) {
                        Some(&v) => v,
                        None => {
                            missing.get_or_insert((a, b));
                            0
                        }
                    }
                })?;
                if let Some((a, b)) = missing {
                    return Err(Error::Parse(format!(
                        "{}: H-table has no value at ({a}, {b})",
                        self.name
                    )));
                }
                let violations = validate_h(&h);
                if let Some(v) = violations.first() {
                    return Err(Error::NotLSpaceLink(format!("{}: {v}", self.name)));
                }
                Ok(h)
            }
            _ => Err(Error::InvalidParameters(format!(
                "{}: exactly one of the Alexander polynomial and the H-table must be given",
                self.name
            ))),
        }
    }
}

fn h(d: i64) -> HalfInt {
    HalfInt::from_doubled(d)
}

pub fn unknot() -> LaurentPoly1 {
    LaurentPoly1::one()
}

/// Right-handed trefoil, `t - 1 + t^-1`.
pub fn trefoil() -> LaurentPoly1 {
    LaurentPoly1::from_terms([(h(2), 1), (h(0), -1), (h(-2), 1)])
}

/// `-(t1^{1/2} - t1^{-1/2})(t2^{1/2} - t2^{-1/2})`.
fn whitehead_alexander() -> LaurentPoly2 {
    let a = LaurentPoly1::binomial(HalfInt::HALF);
    let a1 = LaurentPoly2::from_one_variable(&a, 1, 0);
    let a2 = LaurentPoly2::from_one_variable(&a, 0, 1);
    -(&a1 * &a2)
}

pub fn hopf() -> LinkDescriptor {
    LinkDescriptor {
        name: "hopf".into(),
        linking: 1,
        alexander2: Some(LaurentPoly2::one()),
        component1: unknot(),
        component2: unknot(),
        h_table: None,
    }
}

pub fn whitehead() -> LinkDescriptor {
    LinkDescriptor {
        name: "whitehead".into(),
        linking: 0,
        alexander2: Some(whitehead_alexander()),
        component1: unknot(),
        component2: unknot(),
        h_table: None,
    }
}

/// Mirror of L7a3: the first component is an unknot, the second a
/// right-handed trefoil.
pub fn l7a3m() -> LinkDescriptor {
    let factor = LaurentPoly2::from_terms([((h(0), h(2)), 1), ((h(0), h(-2)), 1)]);
    LinkDescriptor {
        name: "l7a3m".into(),
        linking: 0,
        alexander2: Some(&whitehead_alexander() * &factor),
        component1: unknot(),
        component2: trefoil(),
        h_table: None,
    }
}

/// Closed-form H-function of the torus link `T(2, 2l)` with both components
/// oriented in parallel (linking number `l`).
pub fn torus_h(l: i64, s1: HalfInt, s2: HalfInt) -> i64 {
    let half_l = HalfInt::from_doubled(l);
    let val = |x: HalfInt| x.to_int().expect("integral value");
    if s1 >= HalfInt::ZERO && s2 >= HalfInt::ZERO {
        val(half_l - s1.min(s2)).max(0)
    } else if s1 <= HalfInt::ZERO && s2 >= HalfInt::ZERO {
        val(half_l - s1)
    } else if s2 <= HalfInt::ZERO && s1 >= HalfInt::ZERO {
        val(half_l - s2)
    } else {
        torus_h(l, -s1, -s2) - val(s1 + s2)
    }
}

/// `T(2, 2l)` for `l >= 1`, shipped as an H-table.
pub fn torus_link(l: i64) -> Result<LinkDescriptor> {
    if l < 1 {
        return Err(Error::InvalidParameters(format!(
            "T(2, 2l) needs l >= 1, got l = {l}"
        )));
    }
    let r = HalfInt::from_doubled(l) + HalfInt::int(l + 2);
    let values = window(r, r)
        .map(|(a, b)| ((a, b), torus_h(l, a, b)))
        .collect();
    Ok(LinkDescriptor {
        name: format!("T(2,{})", 2 * l),
        linking: l,
        alexander2: None,
        component1: unknot(),
        component2: unknot(),
        h_table: Some(HTable {
            r1: r,
            r2: r,
            values,
        }),
    })
}

/// `sum_{k=0}^{l-1} (t1 t2)^{(l-1)/2 - k}`, the Alexander polynomial of `T(2, 2l)`.
pub fn torus_alexander(l: i64) -> LaurentPoly2 {
    LaurentPoly2::from_terms((0..l).map(|k| {
        let e = HalfInt::from_doubled(l - 1 - 2 * k);
        ((e, e), 1)
    }))
}

fn window(r1: HalfInt, r2: HalfInt) -> impl Iterator<Item = Point> {
    let n1 = r1.doubled() + 1;
    let n2 = r2.doubled() + 1;
    (0..n1).flat_map(move |i| (0..n2).map(move |j| (HalfInt::int(i) - r1, HalfInt::int(j) - r2)))
}

pub const NAMES: [&str; 5] = ["hopf", "whitehead", "l7a3m", "T(2,4)", "T(2,6)"];

pub fn catalog_get(name: &str) -> Result<LinkDescriptor> {
    let key = name.trim().to_ascii_lowercase();
    match key.as_str() {
        "hopf" => Ok(hopf()),
        "whitehead" | "wh" => Ok(whitehead()),
        "l7a3m" | "l7a3" | "mirror-l7a3" => Ok(l7a3m()),
        _ => {
            let n = key
                .strip_prefix("t(2,")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.trim().parse::<i64>().ok())
                .ok_or_else(|| Error::UnknownLink(name.to_string()))?;
            if n < 2 || n % 2 != 0 {
                return Err(Error::UnknownLink(format!(
                    "{name}: only T(2, 2l) with l >= 1 is available"
                )));
            }
            torus_link(n / 2)
        }
    }
}

/// Every catalog link.
pub fn all() -> Vec<LinkDescriptor> {
    NAMES
        .iter()
        .map(|n| catalog_get(n).expect("catalog entry"))
        .collect()
}
