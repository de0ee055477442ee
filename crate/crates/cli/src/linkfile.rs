//! JSON link files. Exponents are stored doubled (`"exponent_scale": 2`).

use std::collections::BTreeMap;

use lsk_core::catalog::{HTable, LinkDescriptor};
use lsk_core::{Error, HalfInt, LaurentPoly1, LaurentPoly2, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term2 {
    pub e1: i64,
    pub e2: i64,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term1 {
    pub e: i64,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HValue {
    pub s1: i64,
    pub s2: i64,
    pub h: i64,
}

/// Explicit H-values on `|s_i| <= r_i / 2`, all doubled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HTableBlock {
    pub r1: i64,
    pub r2: i64,
    pub values: Vec<HValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkFile {
    pub schema: u32,
    pub name: String,
    pub linking: i64,
    pub exponent_scale: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander2: Option<Vec<Term2>>,
    pub component1: Vec<Term1>,
    pub component2: Vec<Term1>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_table: Option<HTableBlock>,
}

fn invalid(msg: String) -> Error {
    Error::Parse(msg)
}

fn poly1(name: &str, terms: &[Term1]) -> Result<LaurentPoly1> {
    let mut seen = std::collections::BTreeSet::new();
    for t in terms {
        if t.c == 0 {
            return Err(invalid(format!(
                "{name}: zero coefficient at exponent {}",
                t.e
            )));
        }
        if !seen.insert(t.e) {
            return Err(invalid(format!("{name}: repeated exponent {}", t.e)));
        }
    }
    if seen.iter().any(|e| !seen.contains(&-e)) {
        return Err(invalid(format!("{name}: support is not symmetric")));
    }
    Ok(LaurentPoly1::from_terms(
        terms.iter().map(|t| (HalfInt::from_doubled(t.e), t.c)),
    ))
}

fn poly2(terms: &[Term2]) -> Result<LaurentPoly2> {
    let mut seen = std::collections::BTreeSet::new();
    for t in terms {
        if t.c == 0 {
            return Err(invalid(format!(
                "alexander2: zero coefficient at ({}, {})",
                t.e1, t.e2
            )));
        }
        if !seen.insert((t.e1, t.e2)) {
            return Err(invalid(format!(
                "alexander2: repeated exponent ({}, {})",
                t.e1, t.e2
            )));
        }
    }
    if seen.iter().any(|&(a, b)| !seen.contains(&(-a, -b))) {
        return Err(invalid("alexander2: support is not symmetric".into()));
    }
    Ok(LaurentPoly2::from_terms(terms.iter().map(|t| {
        (
            (HalfInt::from_doubled(t.e1), HalfInt::from_doubled(t.e2)),
            t.c,
        )
    })))
}

fn coeff(c: &BigInt) -> Result<i64> {
    i64::try_from(c)
        .map_err(|_| Error::Overflow(format!("coefficient {c} does not fit in 64 bits")))
}

fn terms1(p: &LaurentPoly1) -> Result<Vec<Term1>> {
    p.terms()
        .map(|(e, c)| {
            Ok(Term1 {
                e: e.doubled(),
                c: coeff(c)?,
            })
        })
        .collect()
}

impl LinkFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: LinkFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.schema != SCHEMA {
            return Err(invalid(format!("unsupported schema {}", f.schema)));
        }
        if f.exponent_scale != 2 {
            return Err(invalid(format!(
                "exponent_scale must be 2, got {}",
                f.exponent_scale
            )));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("link files serialize")
    }

    pub fn from_descriptor(d: &LinkDescriptor) -> Result<Self> {
        Ok(LinkFile {
            schema: SCHEMA,
            name: d.name.clone(),
            linking: d.linking,
            exponent_scale: 2,
            alexander2: d
                .alexander2
                .as_ref()
                .map(|a| {
                    a.terms()
                        .map(|((e1, e2), c)| {
                            Ok(Term2 {
                                e1: e1.doubled(),
                                e2: e2.doubled(),
                                c: coeff(c)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?,
            component1: terms1(&d.component1)?,
            component2: terms1(&d.component2)?,
            h_table: d.h_table.as_ref().map(|t| HTableBlock {
                r1: t.r1.doubled(),
                r2: t.r2.doubled(),
                values: t
                    .values
                    .iter()
                    .map(|(&(s1, s2), &h)| HValue {
                        s1: s1.doubled(),
                        s2: s2.doubled(),
                        h,
                    })
                    .collect(),
            }),
        })
    }

    pub fn to_descriptor(&self) -> Result<LinkDescriptor> {
        let h_table = self.h_table.as_ref().map(|t| {
            let values: BTreeMap<_, _> = t
                .values
                .iter()
                .map(|v| {
                    (
                        (HalfInt::from_doubled(v.s1), HalfInt::from_doubled(v.s2)),
                        v.h,
                    )
                })
                .collect();
            HTable {
                r1: HalfInt::from_doubled(t.r1),
                r2: HalfInt::from_doubled(t.r2),
                values,
            }
        });
        Ok(LinkDescriptor {
            name: self.name.clone(),
            linking: self.linking,
            alexander2: self.alexander2.as_deref().map(poly2).transpose()?,
            component1: poly1("component1", &self.component1)?,
            component2: poly1("component2", &self.component2)?,
            h_table,
        })
    }
}
