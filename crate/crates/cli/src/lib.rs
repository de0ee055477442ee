//! Commands behind the `lsk` binary. Each returns the text to print.

pub mod linkfile;

use std::fmt::Write as _;
use std::path::Path;

use lsk_core::cable::{cable_b, cable_link, CableParams};
use lsk_core::catalog::{self, LinkDescriptor};
use lsk_core::complex::{hat_dims, SurgeryMatrix};
use lsk_core::hfun::{alexander_from_h, HFunction2D};
use lsk_core::invariants::{link_invariants, LinkInvariants};
use lsk_core::oracle::{
    alex_flags, region_map, theorem_verdict, Bounds, Mode, Rule, Status, Verdict,
};
use lsk_core::{Error, HalfInt, Result};
use serde_json::json;

pub use linkfile::LinkFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurgeryMode {
    Direct,
    Theorems,
    Both,
}

/// Reads a link file, or falls back to a catalog name when no such file exists.
pub fn load(arg: &str) -> Result<LinkDescriptor> {
    let path = Path::new(arg);
    if path.exists() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        LinkFile::parse(&text)
            .and_then(|f| f.to_descriptor())
            .map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{arg}: {m}")),
                e => e,
            })
    } else {
        catalog::catalog_get(arg)
    }
}

/// Parses `3`, `-3/2` or `1.5` as a half-integer.
pub fn parse_halfint(s: &str) -> Result<HalfInt> {
    let bad = || Error::Parse(format!("{s:?} is not an integer or half-integer"));
    let s = s.trim();
    if let Some(num) = s.strip_suffix("/2") {
        let n: i64 = num.parse().map_err(|_| bad())?;
        return Ok(HalfInt::from_doubled(n));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.starts_with('-') { -1 } else { 1 };
        let whole: i64 = if int == "-" || int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        return match frac.trim_end_matches('0') {
            "" => Ok(HalfInt::int(whole)),
            "5" => Ok(HalfInt::from_doubled(2 * whole + sign)),
            _ => Err(bad()),
        };
    }
    s.parse().map(HalfInt::int).map_err(|_| bad())
}

fn lattice_range(h: &HFunction2D, lo: HalfInt, hi: HalfInt) -> Vec<HalfInt> {
    let off = h.lattice_offset();
    let mut s = HalfInt::int((lo - off).ceil()) + off;
    let mut out = Vec::new();
    while s <= hi {
        out.push(s);
        s = s + HalfInt::ONE;
    }
    out
}

/// H-values on `[lo, hi]^2`, `s1` to the right and `s2` upward.
pub fn cmd_hfun(desc: &LinkDescriptor, lo: HalfInt, hi: HalfInt, as_json: bool) -> Result<String> {
    let h = desc.h_function()?;
    let axis = lattice_range(&h, lo, hi);
    if axis.is_empty() {
        return Err(Error::InvalidParameters(format!(
            "window [{lo}, {hi}] contains no lattice point"
        )));
    }
    if as_json {
        let mut rows = Vec::new();
        for &s2 in axis.iter().rev() {
            for &s1 in &axis {
                rows.push(json!({"s1": s1.doubled(), "s2": s2.doubled(), "h": h.eval(s1, s2)?}));
            }
        }
        return Ok(json!({"name": desc.name, "exponent_scale": 2, "rows": rows}).to_string());
    }
    let w = axis
        .iter()
        .map(|s| s.to_string().len())
        .max()
        .unwrap_or(1)
        .max(2);
    let mut out = format!("H-function of {} (s1 rightward, s2 upward)\n", desc.name);
    for &s2 in axis.iter().rev() {
        write!(out, "{:>w$} |", s2.to_string()).unwrap();
        for &s1 in &axis {
            write!(out, " {:>w$}", h.eval(s1, s2)?).unwrap();
        }
        out.push('\n');
    }
    write!(out, "{:>w$} +", "").unwrap();
    out.push_str(&"-".repeat(axis.len() * (w + 1)));
    out.push('\n');
    write!(out, "{:>w$}  ", "").unwrap();
    for &s1 in &axis {
        write!(out, " {:>w$}", s1.to_string()).unwrap();
    }
    out.push('\n');
    Ok(out)
}

fn point_list(points: &[(HalfInt, HalfInt)]) -> String {
    if points.is_empty() {
        return "∅".into();
    }
    let items: Vec<String> = points.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", items.join(","))
}

fn invariants(desc: &LinkDescriptor) -> Result<(HFunction2D, LinkInvariants)> {
    let h = desc.h_function()?;
    let inv = link_invariants(&h)?;
    Ok((h, inv))
}

pub fn cmd_classify(desc: &LinkDescriptor, as_json: bool) -> Result<String> {
    let (_, inv) = invariants(desc)?;
    if as_json {
        return Ok(json!({"name": desc.name, "invariants": inv}).to_string());
    }
    Ok(format!(
        "{}: type {}, b=({},{}), maximal={}\n  g=({},{}), linking={}, split_with_unknot={}\n",
        desc.name,
        inv.link_type,
        inv.b1,
        inv.b2,
        point_list(&inv.maximal_points),
        inv.g1,
        inv.g2,
        inv.linking,
        inv.split_with_unknot
    ))
}

fn describe(v: &Verdict) -> String {
    let mut out = String::new();
    for f in &v.rules {
        let concl = if f.lspace {
            "L-space"
        } else {
            "not an L-space"
        };
        writeln!(
            out,
            "  {:?} ({}): {concl}; {}",
            f.rule,
            f.rule.citation(),
            f.note
        )
        .unwrap();
    }
    out
}

pub fn cmd_surgery(
    desc: &LinkDescriptor,
    d1: i64,
    d2: i64,
    mode: SurgeryMode,
    as_json: bool,
) -> Result<String> {
    let (h, inv) = invariants(desc)?;
    let lam = SurgeryMatrix::new(d1, d2, inv.linking);
    if lam.det() == 0 {
        return Err(Error::NotRationalHomologySphere(format!(
            "det of ({d1}, {d2}; {}) is 0, so the surgery is not a rational homology sphere",
            inv.linking
        )));
    }
    let mut verdict = if mode == SurgeryMode::Direct {
        None
    } else {
        let delta = desc
            .alexander2
            .clone()
            .unwrap_or_else(|| alexander_from_h(&h));
        Some(theorem_verdict(&inv, &alex_flags(&inv, &delta), d1, d2)?)
    };
    let dims = if mode == SurgeryMode::Theorems {
        None
    } else {
        Some(hat_dims(&h, lam)?)
    };
    let computed = dims.as_ref().map(|d| d.iter().all(|&x| x == 1));
    if let (Some(v), Some(c)) = (verdict.as_mut(), computed) {
        v.computed = Some(c);
        if v.status != Status::Unknown && (v.status == Status::Lspace) != c {
            return Err(Error::Inconsistency(format!(
                "{} at ({d1}, {d2}): theorems say {}, computation says {c}: {v:?}",
                desc.name, v.status
            )));
        }
    }
    let status = match (&verdict, computed) {
        (_, Some(true)) => Status::Lspace,
        (_, Some(false)) => Status::NotLspace,
        (Some(v), None) => v.status,
        (None, None) => Status::Unknown,
    };
    if as_json {
        return Ok(json!({
            "name": desc.name, "d1": d1, "d2": d2, "det": lam.det(),
            "status": status, "verdict": verdict, "hat_dims": dims,
        })
        .to_string());
    }
    let mut out = format!(
        "{} surgery ({d1}, {d2}), det {}: {}\n",
        desc.name,
        lam.det(),
        match status {
            Status::Lspace => "LSPACE",
            Status::NotLspace => "NOT",
            Status::Unknown => "UNKNOWN",
        }
    );
    if let Some(v) = &verdict {
        writeln!(out, "theorems: {}", v.status).unwrap();
        out.push_str(&describe(v));
    }
    if let Some(d) = &dims {
        writeln!(out, "hat dimensions per Spin^c class: {d:?}").unwrap();
    }
    Ok(out)
}

pub struct RegionOutput {
    pub text: String,
    pub svg: String,
}

pub fn cmd_region(
    desc: &LinkDescriptor,
    bounds: Bounds,
    mode: SurgeryMode,
    as_json: bool,
) -> Result<RegionOutput> {
    let mode = match mode {
        SurgeryMode::Theorems => Mode::Theorems,
        SurgeryMode::Direct | SurgeryMode::Both => Mode::WithComputation,
    };
    let map = region_map(desc, bounds, mode)?;
    let text = if as_json {
        serde_json::to_string(&map).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        let count = |s| {
            map.verdicts
                .iter()
                .filter(|v| !v.det_zero && v.status == s)
                .count()
        };
        let by_rule = map
            .verdicts
            .iter()
            .filter(|v| v.rules.iter().any(|f| f.rule == Rule::Computed))
            .count();
        format!(
            "{} on [{}, {}] x [{}, {}] ({:?})\n{}L: {}  n: {}  ?: {}  resolved by computation: {by_rule}\n",
            desc.name,
            bounds.d1_min,
            bounds.d1_max,
            bounds.d2_min,
            bounds.d2_max,
            mode,
            map.ascii(),
            count(Status::Lspace),
            count(Status::NotLspace),
            count(Status::Unknown),
        )
    };
    Ok(RegionOutput {
        text,
        svg: map.svg(),
    })
}

pub struct CableOutput {
    pub report: String,
    pub file: LinkFile,
}

pub fn cmd_cable(desc: &LinkDescriptor, p: i64, q: i64, component: u8) -> Result<CableOutput> {
    let params = CableParams::new(p, q, component)?;
    let (_, inv) = invariants(desc)?;
    let cabled = cable_link(desc, &params)?;
    let (_, derived) = invariants(&cabled)?;
    let formula = cable_b(&inv, &params);
    let (f, d) = if component == 1 {
        (formula.0, derived.b1)
    } else {
        (formula.1, derived.b2)
    };
    let report = format!(
        "{}: b{component} formula {f}, derived {d}; b = ({}, {})\n",
        cabled.name, derived.b1, derived.b2
    );
    Ok(CableOutput {
        report,
        file: LinkFile::from_descriptor(&cabled)?,
    })
}

pub fn cmd_catalog(name: Option<&str>) -> Result<String> {
    match name {
        None => Ok(catalog::NAMES.iter().map(|n| format!("{n}\n")).collect()),
        Some(n) => Ok(LinkFile::from_descriptor(&catalog::catalog_get(n)?)?.to_json() + "\n"),
    }
}

/// 2 for internal inconsistencies, 1 for every other failure.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconsistency(_) => 2,
        _ => 1,
    }
}
