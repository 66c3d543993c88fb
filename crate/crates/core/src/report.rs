//! Text and JSON renderings of factor lists and reports.
//!
//! JSON encodes an F_q element as an integer in `[0, p)` when `e = 1` and as
//! its array of `e` base-p digits (constant term first) otherwise; a
//! polynomial is its ascending coefficient array.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explicit::{Checks, FactorizationReport};
use crate::field::{Field, FieldCtx, FqElem};
use crate::poly::{FactorList, Poly};

/// Coefficient shown as a signed residue in `(-p/2, p/2]` for prime fields.
fn signed_coeff(ctx: &FieldCtx, c: FqElem) -> (bool, String) {
    if ctx.e() == 1 {
        let v = c.raw();
        if v > ctx.p() / 2 {
            (true, (ctx.p() - v).to_string())
        } else {
            (false, v.to_string())
        }
    } else {
        (false, ctx.format_elem(c))
    }
}

/// Descending-power rendering such as `x^2 - 6x + 5`.
pub fn format_poly(ctx: &FieldCtx, f: &Poly<FqElem>) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, &c) in f.coeffs().iter().enumerate().rev() {
        if c == ctx.zero() {
            continue;
        }
        let (neg, mag) = signed_coeff(ctx, c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag == "1";
        match i {
            0 => out.push_str(&mag),
            _ => {
                if !unit {
                    out.push_str(&mag);
                }
                out.push('x');
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    out
}

/// `(x - 1)(x + 1)`, with `^m` after factors of multiplicity `m > 1`.
pub fn format_product(ctx: &FieldCtx, list: &FactorList<FqElem>) -> String {
    if list.is_empty() {
        return "1".to_string();
    }
    list.iter()
        .map(|f| {
            let body = format!("({})", format_poly(ctx, &f.poly));
            if f.multiplicity > 1 {
                format!("{body}^{}", f.multiplicity)
            } else {
                body
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Int(u64),
    Digits(Vec<u64>),
}

pub fn elem_to_json(ctx: &FieldCtx, x: FqElem) -> ElemJson {
    if ctx.e() == 1 {
        ElemJson::Int(x.raw())
    } else {
        ElemJson::Digits(ctx.coeffs(x))
    }
}

pub fn elem_from_json(ctx: &FieldCtx, x: &ElemJson) -> Result<FqElem> {
    match x {
        ElemJson::Int(v) if ctx.e() == 1 && *v < ctx.p() => Ok(ctx.elem(*v as i64)),
        ElemJson::Digits(ds) if ds.len() == ctx.e() as usize && ds.iter().all(|&v| v < ctx.p()) => {
            let ds: Vec<i64> = ds.iter().map(|&v| v as i64).collect();
            ctx.elem_from_coeffs(&ds)
        }
        other => Err(Error::InvalidElement(format!("{other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub coeffs: Vec<ElemJson>,
    pub multiplicity: u32,
    pub provenance: String,
}

pub fn factors_to_json(ctx: &FieldCtx, list: &FactorList<FqElem>) -> Vec<FactorJson> {
    list.iter()
        .map(|f| FactorJson {
            coeffs: f.poly.coeffs().iter().map(|&c| elem_to_json(ctx, c)).collect(),
            multiplicity: f.multiplicity,
            provenance: f.provenance.clone(),
        })
        .collect()
}

pub fn factors_from_json(ctx: &FieldCtx, items: &[FactorJson]) -> Result<FactorList<FqElem>> {
    let mut out = FactorList::new();
    for item in items {
        let coeffs = item
            .coeffs
            .iter()
            .map(|c| elem_from_json(ctx, c))
            .collect::<Result<Vec<_>>>()?;
        out.insert(ctx, Poly::new(coeffs), item.multiplicity, item.provenance.clone())?;
    }
    Ok(out)
}

/// The serialized form of a [`FactorizationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub q: u64,
    pub e: u32,
    pub n: u32,
    pub d: u64,
    pub degree: u64,
    pub predicted_count: u64,
    pub factors: Vec<FactorJson>,
    pub checks: Checks,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl ReportJson {
    pub fn from_report(ctx: &FieldCtx, report: &FactorizationReport) -> Self {
        ReportJson {
            q: report.q,
            e: report.e,
            n: report.n,
            d: report.d,
            degree: report.target.degree().unwrap_or(0) as u64,
            predicted_count: report.predicted_count,
            factors: factors_to_json(ctx, &report.factors),
            checks: report.checks,
            diagnostics: report.diagnostics.clone(),
        }
    }
}

/// Factors of `Φ_{2^k}(x^d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiJson {
    pub q: u64,
    pub e: u32,
    pub k: u32,
    pub d: u64,
    pub degree: u64,
    pub factors: Vec<FactorJson>,
}

/// Oracle factorization of an arbitrary polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub q: u64,
    pub e: u32,
    pub input: Vec<ElemJson>,
    pub factors: Vec<FactorJson>,
}
