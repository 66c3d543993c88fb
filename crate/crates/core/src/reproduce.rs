//! The three worked examples: `Φ_8(x^5)` over F_29, the δ-table and
//! `x^120 - 1` over F_29, and the Δ-set and `x^240 - 1` over F_59.
//! Expected values are hard-coded; the computed side uses only the library.

use std::collections::BTreeSet;

use crate::cyclotomic::cyclotomic_poly;
use crate::error::Result;
use crate::explicit::{FactorOptions, Factorizer};
use crate::field::{Field, FieldCtx, FqElem};
use crate::poly::{FactorList, Poly, PolyRing};
use crate::report::format_poly;
use crate::sequences::{delta_set, DeltaThetaTable};

#[derive(Clone, Debug)]
pub struct ExampleCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Empty on success; otherwise the differences found.
    pub detail: Vec<String>,
}

fn set_of(ctx: &FieldCtx, polys: &[[i64; 3]]) -> BTreeSet<Poly<FqElem>> {
    let ring = PolyRing::new(ctx);
    polys.iter().map(|c| ring.from_ints(c)).collect()
}

fn diff_sets(ctx: &FieldCtx, got: &BTreeSet<Poly<FqElem>>, want: &BTreeSet<Poly<FqElem>>) -> Vec<String> {
    let mut out = Vec::new();
    for f in want.difference(got) {
        out.push(format!("missing {}", format_poly(ctx, f)));
    }
    for f in got.difference(want) {
        out.push(format!("unexpected {}", format_poly(ctx, f)));
    }
    out
}

fn polys(list: &FactorList<FqElem>) -> BTreeSet<Poly<FqElem>> {
    list.iter().map(|f| f.poly.clone()).collect()
}

/// `Φ_8(x^5)` over F_29 and the eight trinomials that make up `Φ_40`.
pub fn phi8_of_x5_over_f29() -> Result<ExampleCheck> {
    let ctx = FieldCtx::new(29, 1)?;
    let ring = PolyRing::new(&ctx);
    let binomials = [[12, 0, 1], [17, 0, 1]];
    let trinomials = [
        [17, 6, 1],
        [17, -6, 1],
        [17, 7, 1],
        [17, -7, 1],
        [12, 14, 1],
        [12, -14, 1],
        [12, 3, 1],
        [12, -3, 1],
    ];
    let want_trinomials = set_of(&ctx, &trinomials);
    let mut want = want_trinomials.clone();
    want.extend(set_of(&ctx, &binomials));

    let list = Factorizer::new(&ctx, 5)?.phi2k_xd_q1_high(1)?;
    let got = polys(&list);
    let mut detail = diff_sets(&ctx, &got, &want);
    let phi40 = cyclotomic_poly(&ctx, 40)?;
    let prod = want_trinomials
        .iter()
        .fold(ring.one(), |acc, f| ring.mul(&acc, f));
    if prod != phi40 {
        detail.push("the eight trinomials do not multiply to Phi_40".to_string());
    }
    Ok(ExampleCheck {
        name: "Phi_8(x^5) over F_29",
        passed: detail.is_empty(),
        detail,
    })
}

/// δ-table for `γ = 2 + √3` over F_29 and the 62-factor split of `x^120 - 1`.
pub fn delta_table_and_x120_over_f29() -> Result<ExampleCheck> {
    let base = FieldCtx::new(29, 1)?;
    let sqrt3 = base.clone().with_nonsquare(base.elem(3))?;
    let table = DeltaThetaTable::build_with_gamma(&sqrt3, 15, sqrt3.fq2_elem(2, 1))?;
    let want: Vec<u64> = vec![4, 14, 23, 20, 28, 5, 21];
    let got: Vec<u64> = table.delta()[1..=7].iter().map(|x| x.raw()).collect();
    let mut detail = Vec::new();
    if got != want {
        detail.push(format!("delta_1..7 = {got:?}, expected {want:?}"));
    }
    let opts = FactorOptions {
        verify: true,
        seed: 0,
    };
    let report = Factorizer::new(&base, 15)?.x2nd_minus_1(3, &opts)?;
    if report.factors.len() != 62 {
        detail.push(format!("x^120 - 1 has {} factors, expected 62", report.factors.len()));
    }
    if !report.checks.all() {
        detail.push(format!("x^120 - 1 checks failed: {:?}", report.checks));
        detail.extend(report.diagnostics);
    }
    Ok(ExampleCheck {
        name: "delta table and x^120 - 1 over F_29",
        passed: detail.is_empty(),
        detail,
    })
}

/// Δ-set for `d = 15` over F_59 and the 91-factor split of `x^240 - 1`.
pub fn delta_set_and_x240_over_f59() -> Result<ExampleCheck> {
    let ctx = FieldCtx::new(59, 1)?;
    let want: BTreeSet<FqElem> = [-10, -20, -26, -15, -1, 25, -13]
        .iter()
        .map(|&v| ctx.elem(v))
        .collect();
    let factorizer = Factorizer::new(&ctx, 15)?;
    let got = delta_set(factorizer.table());
    let mut detail = Vec::new();
    if got != want {
        let show = |s: &BTreeSet<FqElem>| s.iter().map(|x| x.raw()).collect::<Vec<_>>();
        detail.push(format!("Delta = {:?}, expected {:?}", show(&got), show(&want)));
    }
    let opts = FactorOptions {
        verify: true,
        seed: 0,
    };
    let report = factorizer.x2nd_minus_1(4, &opts)?;
    if report.factors.len() != 91 {
        detail.push(format!("x^240 - 1 has {} factors, expected 91", report.factors.len()));
    }
    if !report.checks.all() {
        detail.push(format!("x^240 - 1 checks failed: {:?}", report.checks));
        detail.extend(report.diagnostics);
    }
    let ring = PolyRing::new(&ctx);
    if report.target != ring.binomial(240, ctx.one()) {
        detail.push("target is not x^240 - 1".to_string());
    }
    Ok(ExampleCheck {
        name: "Delta set and x^240 - 1 over F_59",
        passed: detail.is_empty(),
        detail,
    })
}

pub fn reproduce_examples() -> Result<Vec<ExampleCheck>> {
    Ok(vec![
        phi8_of_x5_over_f29()?,
        delta_table_and_x120_over_f29()?,
        delta_set_and_x240_over_f59()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_pass() {
        for check in reproduce_examples().unwrap() {
            assert!(check.passed, "{}: {:?}", check.name, check.detail);
        }
    }
}
