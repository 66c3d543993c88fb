//! Parsing of field parameters and element encodings given on the command line.
//!
//! An F_q element is an integer (reduced mod p) when `e = 1`, and a
//! colon-separated list of `e` base-field digits, constant term first,
//! otherwise. An F_{q²} element `a + b·w` is written `a,b`.

use cyclofact::numtheory::factorize;
use cyclofact::{Error, FieldCtx, Fq2Elem, FqElem, Result};

/// Context for the field of order `q`. `e` is inferred from `q` when absent
/// and must agree with it when given.
pub fn field_from_order(q: u64, e: Option<u32>) -> Result<FieldCtx> {
    let f = factorize(q);
    let (p, k) = match f.as_slice() {
        [(p, k)] if *p > 2 => (*p, *k),
        _ => return Err(Error::Hypothesis(format!("q = {q} must be a power of an odd prime"))),
    };
    if let Some(e) = e {
        if e != k {
            return Err(Error::Hypothesis(format!("q = {q} is {p}^{k}, not a degree-{e} extension")));
        }
    }
    FieldCtx::new(p, k)
}

pub fn parse_fq(ctx: &FieldCtx, s: &str) -> Result<FqElem> {
    let bad = || Error::InvalidElement(format!("cannot read {s:?} as an element of F_{}", ctx.q()));
    let digits: Vec<i64> = s
        .split(':')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    if ctx.e() == 1 && digits.len() != 1 {
        return Err(bad());
    }
    ctx.elem_from_coeffs(&digits)
}

pub fn parse_fq2(ctx: &FieldCtx, s: &str) -> Result<Fq2Elem> {
    match s.split_once(',') {
        Some((a, b)) => Ok(Fq2Elem::new(parse_fq(ctx, a)?, parse_fq(ctx, b)?)),
        None => Err(Error::InvalidElement(format!(
            "{s:?} is not of the form a,b for a + b*w in F_(q^2)"
        ))),
    }
}

pub fn parse_poly(ctx: &FieldCtx, s: &str) -> Result<Vec<FqElem>> {
    s.split(',').map(|t| parse_fq(ctx, t)).collect()
}
