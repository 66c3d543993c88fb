//! The sequences `δ_j = γ^j + γ^{qj}` and `θ_j = γ^j - γ^{qj}` for a
//! primitive `d`-th root of unity `γ ∈ F_{q²}`, and the trace values that
//! become middle coefficients of the explicit factors.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{element_order, Field, FieldCtx, Fq2Elem, FqElem};
use crate::numtheory::gcd;

/// Rejects `d` unless it is an odd divisor of `q + 1` (hence coprime to `q`).
pub fn check_d(ctx: &FieldCtx, d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::hypothesis("d must be positive"));
    }
    if d % 2 == 0 {
        return Err(Error::hypothesis(format!("d must be odd (got d = {d})")));
    }
    if gcd(d, ctx.q()) != 1 {
        return Err(Error::hypothesis(format!(
            "d must be coprime to q (got d = {d}, q = {})",
            ctx.q()
        )));
    }
    if (ctx.q() + 1) % d != 0 {
        return Err(Error::hypothesis(format!(
            "d must be an odd divisor of q+1 (got d = {d}, q+1 = {})",
            ctx.q() + 1
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaThetaTable {
    d: u64,
    gamma: Fq2Elem,
    delta: Vec<FqElem>,
    theta: Vec<Fq2Elem>,
}

impl DeltaThetaTable {
    /// Table for the deterministic root `γ = gen_q2^((q²-1)/d)`.
    pub fn build(ctx: &FieldCtx, d: u64) -> Result<Self> {
        check_d(ctx, d)?;
        let gamma = ctx.root_of_unity_fq2(d)?;
        Self::build_with_gamma(ctx, d, gamma)
    }

    /// Table for a caller-supplied `γ`, which must have multiplicative order exactly `d`.
    pub fn build_with_gamma(ctx: &FieldCtx, d: u64, gamma: Fq2Elem) -> Result<Self> {
        check_d(ctx, d)?;
        let f2 = ctx.fq2();
        let group = ctx.q() * ctx.q() - 1;
        if element_order(&f2, gamma, group) != Some(d) {
            return Err(Error::InvalidElement(format!(
                "gamma = {} is not a primitive {d}-th root of unity",
                ctx.format_fq2(gamma)
            )));
        }
        let len = d as usize;
        let mut delta = Vec::with_capacity(len);
        let mut theta = Vec::with_capacity(len);
        delta.push(ctx.from_int(2));
        theta.push(f2.zero());
        if len > 1 {
            let conj = ctx.frobenius(gamma);
            delta.push(ctx.to_base(f2.add(gamma, conj))?);
            theta.push(f2.sub(gamma, conj));
        }
        let d1 = delta.get(1).copied().unwrap_or_else(|| ctx.from_int(2));
        let d1_ext = Fq2Elem::from_base(d1);
        for j in 2..len {
            delta.push(ctx.sub(ctx.mul(d1, delta[j - 1]), delta[j - 2]));
            theta.push(f2.sub(f2.mul(d1_ext, theta[j - 1]), theta[j - 2]));
        }

        // Independent recomputation from powers of γ.
        let mut power = f2.one();
        for j in 0..len {
            let conj = ctx.frobenius(power);
            let direct_delta = f2.add(power, conj);
            let direct_theta = f2.sub(power, conj);
            if direct_delta != Fq2Elem::from_base(delta[j]) || direct_theta != theta[j] {
                return Err(Error::internal(format!(
                    "recursion disagrees with gamma^{j} + gamma^(q·{j}) at j = {j}"
                )));
            }
            power = f2.mul(power, gamma);
        }
        Ok(DeltaThetaTable {
            d,
            gamma,
            delta,
            theta,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn gamma(&self) -> Fq2Elem {
        self.gamma
    }

    /// `δ_0, …, δ_{d-1}`.
    pub fn delta(&self) -> &[FqElem] {
        &self.delta
    }

    /// `θ_0, …, θ_{d-1}`.
    pub fn theta(&self) -> &[Fq2Elem] {
        &self.theta
    }

    /// `(d - 1) / 2`, the number of distinct nontrivial `δ_j`.
    pub fn half(&self) -> usize {
        ((self.d - 1) / 2) as usize
    }
}

/// `{δ_j : 1 ≤ j ≤ (d-1)/2}`.
pub fn delta_set(table: &DeltaThetaTable) -> BTreeSet<FqElem> {
    table.delta[1..=table.half()].iter().copied().collect()
}

/// The index `j'` with `δ_{j'} = δ_j² - 2`: `2j` folded back into `1..=(d-1)/2`.
pub fn sigma_d(table: &DeltaThetaTable, j: usize) -> Result<usize> {
    let half = table.half();
    if j == 0 || j > half {
        return Err(Error::hypothesis(format!(
            "index j = {j} outside 1..={half}"
        )));
    }
    Ok(if 2 * j <= half {
        2 * j
    } else {
        table.d as usize - 2 * j
    })
}

/// `B·γ^j + (B·γ^j)^q` projected into F_q.
fn trace_of(ctx: &FieldCtx, table: &DeltaThetaTable, b: Fq2Elem, j: usize) -> Result<FqElem> {
    let f2 = ctx.fq2();
    let x = f2.mul(b, f2.pow(table.gamma, j as u128));
    ctx.to_base(f2.add(x, ctx.frobenius(x))).map_err(|_| {
        Error::internal(format!(
            "trace of {} is not Frobenius-fixed",
            ctx.format_fq2(x)
        ))
    })
}

/// `θ_{i,j,k} = β_{2^k}^{2i-1} γ^j + β_{2^k}^{q(2i-1)} γ^{qj}` for `q ≡ 3 (mod 4)`,
/// `2 ≤ k ≤ m-1`, `1 ≤ i ≤ 2^{k-2}`, `0 ≤ j < d`.
pub fn theta_ijk(
    ctx: &FieldCtx,
    table: &DeltaThetaTable,
    i: u64,
    j: usize,
    k: u32,
) -> Result<FqElem> {
    if ctx.q() % 4 != 3 {
        return Err(Error::hypothesis("q must be congruent to 3 mod 4"));
    }
    if k < 2 || k + 1 > ctx.m() {
        return Err(Error::hypothesis(format!(
            "level k = {k} outside 2..={}",
            ctx.m() - 1
        )));
    }
    theta_checked(ctx, table, i, j, k, 1u64 << (k - 2))
}

/// `θ_{i,j} = β_{2^m}^{2i-1} γ^j + β_{2^m}^{q(2i-1)} γ^{qj}` for `q ≡ 3 (mod 4)`,
/// `1 ≤ i ≤ 2^{m-3}`, `0 ≤ j < d`.
pub fn theta_top(ctx: &FieldCtx, table: &DeltaThetaTable, i: u64, j: usize) -> Result<FqElem> {
    if ctx.q() % 4 != 3 {
        return Err(Error::hypothesis("q must be congruent to 3 mod 4"));
    }
    theta_checked(ctx, table, i, j, ctx.m(), 1u64 << (ctx.m() - 3))
}

fn theta_checked(
    ctx: &FieldCtx,
    table: &DeltaThetaTable,
    i: u64,
    j: usize,
    k: u32,
    i_max: u64,
) -> Result<FqElem> {
    if i == 0 || i > i_max {
        return Err(Error::hypothesis(format!("index i = {i} outside 1..={i_max}")));
    }
    if j as u64 >= table.d {
        return Err(Error::hypothesis(format!(
            "index j = {j} outside 0..{}",
            table.d
        )));
    }
    let beta = ctx.root_of_unity_fq2(1u64 << k)?;
    let b = ctx.fq2().pow(beta, (2 * i - 1) as u128);
    trace_of(ctx, table, b, j)
}
