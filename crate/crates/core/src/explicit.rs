//! Closed-form factorizations of `x^ℓ - c`, `x^d ± 1`, `Φ_{2^k}(x^d)` and
//! `x^{2^n·d} - 1` over F_q, for odd `d` dividing `q + 1`.
//!
//! Every list is built from roots of unity in F_q or F_{q²} and the δ/θ
//! sequences; nothing here searches or factors generically. The oracle is
//! only consulted when a caller asks for verification.

use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx, Fq2Elem, FqElem};
use crate::numtheory::{gcd, nu2};
use crate::oracle;
use crate::poly::{FactorList, Poly, PolyRing};
use crate::report::format_poly;
use crate::sequences::{theta_ijk, theta_top, DeltaThetaTable};

/// Largest `2^n·d` accepted by [`factor_x2nd_minus_1`].
pub const DEGREE_BUDGET: u64 = 16384;

/// Selects `x^d - 1` or `x^d + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XdSign {
    Minus,
    Plus,
}

#[derive(Clone, Debug, Default)]
pub struct FactorOptions {
    /// Run the irreducibility and oracle checks (product and count are always checked).
    pub verify: bool,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Checks {
    pub product_ok: bool,
    pub all_irreducible: bool,
    pub count_ok: bool,
    pub oracle_match: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.product_ok && self.all_irreducible && self.count_ok && self.oracle_match
    }
}

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub q: u64,
    pub e: u32,
    pub n: u32,
    pub d: u64,
    pub target: Poly<FqElem>,
    pub factors: FactorList<FqElem>,
    pub predicted_count: u64,
    pub checks: Checks,
    /// `false` when only product and count were checked.
    pub verified: bool,
    /// One line per failed check, naming the offending factor when there is one.
    pub diagnostics: Vec<String>,
}

impl FactorizationReport {
    /// Every check passed, or every check that was run passed when not verifying.
    pub fn ok(&self) -> bool {
        if self.verified {
            self.checks.all()
        } else {
            self.checks.product_ok && self.checks.count_ok
        }
    }
}

fn check_odd_divisor(ctx: &FieldCtx, name: &str, l: u64) -> Result<()> {
    if l == 0 || l % 2 == 0 || (ctx.q() + 1) % l != 0 {
        return Err(Error::hypothesis(format!(
            "{name} must be an odd divisor of q+1 (got {name} = {l}, q+1 = {})",
            ctx.q() + 1
        )));
    }
    Ok(())
}

/// `x^{2t} + b·x^t + c`.
fn trinomial(ctx: &FieldCtx, t: usize, b: FqElem, c: FqElem) -> Poly<FqElem> {
    let mut coeffs = vec![ctx.zero(); 2 * t + 1];
    coeffs[0] = c;
    coeffs[t] = ctx.add(coeffs[t], b);
    coeffs[2 * t] = ctx.one();
    Poly::new(coeffs)
}

fn linear(ctx: &FieldCtx, c: FqElem) -> Poly<FqElem> {
    Poly::new(vec![c, ctx.one()])
}

fn signs() -> [(i64, char); 2] {
    [(1, '+'), (-1, '-')]
}

fn signed(ctx: &FieldCtx, s: i64, x: FqElem) -> FqElem {
    if s < 0 {
        ctx.neg(x)
    } else {
        x
    }
}

/// `x^ℓ - a^ℓ = (x - a) ∏_{j=1}^{(ℓ-1)/2} (x² - a(b^j + b^{qj})x + a²)` with `b`
/// a primitive `ℓ`-th root of unity in F_{q²}.
pub fn factor_xl_minus_c(ctx: &FieldCtx, l: u64, a: FqElem) -> Result<FactorList<FqElem>> {
    check_odd_divisor(ctx, "l", l)?;
    if a == ctx.zero() {
        return Err(Error::ZeroInput("a"));
    }
    let table = DeltaThetaTable::build(ctx, l)?;
    let mut out = FactorList::new();
    out.insert(ctx, linear(ctx, ctx.neg(a)), 1, format!("x^{l} - a^{l} linear"))?;
    let a2 = ctx.mul(a, a);
    for j in 1..=table.half() {
        let b = ctx.neg(ctx.mul(a, table.delta()[j]));
        out.insert(ctx, trinomial(ctx, 1, b, a2), 1, format!("x^{l} - a^{l} quadratic j={j}"))?;
    }
    Ok(out)
}

/// Factorizations built around one fixed choice of `γ` (and of `d`).
#[derive(Clone, Debug)]
pub struct Factorizer<'a> {
    ctx: &'a FieldCtx,
    table: DeltaThetaTable,
}

impl<'a> Factorizer<'a> {
    pub fn new(ctx: &'a FieldCtx, d: u64) -> Result<Self> {
        Ok(Factorizer {
            ctx,
            table: DeltaThetaTable::build(ctx, d)?,
        })
    }

    pub fn with_gamma(ctx: &'a FieldCtx, d: u64, gamma: Fq2Elem) -> Result<Self> {
        Ok(Factorizer {
            ctx,
            table: DeltaThetaTable::build_with_gamma(ctx, d, gamma)?,
        })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn table(&self) -> &DeltaThetaTable {
        &self.table
    }

    pub fn d(&self) -> u64 {
        self.table.d()
    }

    /// `x^d - 1 = (x - 1) ∏ (x² - δ_j x + 1)` or `x^d + 1 = (x + 1) ∏ (x² + δ_j x + 1)`.
    pub fn xd_pm1(&self, sign: XdSign) -> Result<FactorList<FqElem>> {
        let ctx = self.ctx;
        let d = self.d();
        let (s, label) = match sign {
            XdSign::Minus => (-1, format!("x^{d} - 1")),
            XdSign::Plus => (1, format!("x^{d} + 1")),
        };
        let mut out = FactorList::new();
        out.insert(ctx, linear(ctx, ctx.from_int(s)), 1, format!("{label} linear"))?;
        for j in 1..=self.table.half() {
            let b = signed(ctx, s, self.table.delta()[j]);
            out.insert(
                ctx,
                trinomial(ctx, 1, b, ctx.one()),
                1,
                format!("{label} quadratic j={j}"),
            )?;
        }
        Ok(out)
    }

    /// `Φ_{2^k}(x) = ∏_{i=1}^{2^{k-2}} (x ± β_{2^k}^{d(2i-1)})` over F_{q²}, `2 ≤ k ≤ m`.
    pub fn phi2k_fq2(&self, k: u32) -> Result<FactorList<Fq2Elem>> {
        phi2k_fq2_roots(self.ctx, k, self.d())
    }

    /// `Φ_{2^k}(x^d)` for `q ≡ 1 (mod 4)` and `2 ≤ k ≤ s`: with `a = α_{2^k}^{2i-1}`,
    /// the factors `x ± a` and `x² ± a·δ_j x + a²`.
    pub fn phi2k_xd_q1(&self, k: u32) -> Result<FactorList<FqElem>> {
        let ctx = self.ctx;
        if ctx.q() % 4 != 1 {
            return Err(Error::hypothesis("q must be congruent to 1 mod 4"));
        }
        if k < 2 || k > ctx.s() {
            return Err(Error::hypothesis(format!(
                "k must satisfy 2 <= k <= s = {} (got k = {k})",
                ctx.s()
            )));
        }
        let alpha = ctx.root_of_unity_fq(1u64 << k)?;
        let mut out = FactorList::new();
        for i in 1..=(1u64 << (k - 2)) {
            let a = ctx.pow(alpha, (2 * i - 1) as u128);
            let a2 = ctx.mul(a, a);
            for (s, c) in signs() {
                let sa = signed(ctx, s, a);
                let tag = format!("phi(2^{k})(x^d) q=1 mod 4 i={i}");
                out.insert(ctx, linear(ctx, sa), 1, format!("{tag} linear {c}"))?;
                for j in 1..=self.table.half() {
                    let b = ctx.mul(sa, self.table.delta()[j]);
                    out.insert(
                        ctx,
                        trinomial(ctx, 1, b, a2),
                        1,
                        format!("{tag} quadratic j={j} {c}"),
                    )?;
                }
            }
        }
        Ok(out)
    }

    /// `Φ_{2^{s+r}}(x^d)` for `q ≡ 1 (mod 4)` and `r ≥ 1`. With
    /// `B = β_{2^{s+1}}^{2i-1}` and `A = B²`, the factors are the binomials
    /// `x^{2^r} ± A` and the trinomials `x^{2^r} ± α_4^l B θ_j x^{2^{r-1}} - (-1)^l A`.
    pub fn phi2k_xd_q1_high(&self, r: u32) -> Result<FactorList<FqElem>> {
        let ctx = self.ctx;
        if ctx.q() % 4 != 1 {
            return Err(Error::hypothesis("q must be congruent to 1 mod 4"));
        }
        if r == 0 {
            return Err(Error::hypothesis("r must be at least 1"));
        }
        let s = ctx.s();
        let f2 = ctx.fq2();
        let beta = ctx.root_of_unity_fq2(1u64 << (s + 1))?;
        let alpha4 = ctx.root_of_unity_fq(4)?;
        let t = 1usize << (r - 1);
        let level = s + r;
        let mut out = FactorList::new();
        for i in 1..=(1u64 << (s - 2)) {
            let b = f2.pow(beta, (2 * i - 1) as u128);
            let a = ctx
                .to_base(f2.mul(b, b))
                .map_err(|_| Error::internal(format!("square of beta^{} is not in F_q", 2 * i - 1)))?;
            let tag = format!("phi(2^{level})(x^d) q=1 mod 4 r={r} i={i}");
            for (sg, c) in signs() {
                out.insert(
                    ctx,
                    trinomial(ctx, t, ctx.zero(), signed(ctx, sg, a)),
                    1,
                    format!("{tag} binomial {c}"),
                )?;
            }
            for j in 1..=self.table.half() {
                let bt = f2.mul(b, self.table.theta()[j]);
                let mid0 = ctx.to_base(bt).map_err(|_| {
                    Error::internal(format!(
                        "{tag} j={j}: middle coefficient {} is not Frobenius-fixed",
                        ctx.format_fq2(bt)
                    ))
                })?;
                let mid1 = ctx.mul(alpha4, mid0);
                for (l, mid, constant) in [(0, mid0, ctx.neg(a)), (1, mid1, a)] {
                    for (sg, c) in signs() {
                        out.insert(
                            ctx,
                            trinomial(ctx, t, signed(ctx, sg, mid), constant),
                            1,
                            format!("{tag} trinomial j={j} l={l} {c}"),
                        )?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Φ_{2^k}(x^d)` for `q ≡ 3 (mod 4)`, `k ≥ 2`: quadratics `x² - θ_{i,j,k} x + 1`
    /// below level `m`, trinomials `x^{2^{k-m+1}} ± θ_{i,j} x^{2^{k-m}} - 1` from `m` on.
    pub fn phi2k_xd_q3(&self, k: u32) -> Result<FactorList<FqElem>> {
        let ctx = self.ctx;
        if ctx.q() % 4 != 3 {
            return Err(Error::hypothesis("q must be congruent to 3 mod 4"));
        }
        if k < 2 {
            return Err(Error::hypothesis(format!("k must be at least 2 (got k = {k})")));
        }
        let m = ctx.m();
        let d = self.d() as usize;
        let mut out = FactorList::new();
        if k < m {
            for i in 1..=(1u64 << (k - 2)) {
                for j in 0..d {
                    let theta = theta_ijk(ctx, &self.table, i, j, k)?;
                    out.insert(
                        ctx,
                        trinomial(ctx, 1, ctx.neg(theta), ctx.one()),
                        1,
                        format!("phi(2^{k})(x^d) q=3 mod 4 quadratic i={i} j={j}"),
                    )?;
                }
            }
        } else {
            let t = 1usize << (k - m);
            let minus_one = ctx.from_int(-1);
            for i in 1..=(1u64 << (m - 3)) {
                for j in 0..d {
                    let theta = theta_top(ctx, &self.table, i, j)?;
                    for (sg, c) in signs() {
                        out.insert(
                            ctx,
                            trinomial(ctx, t, signed(ctx, sg, theta), minus_one),
                            1,
                            format!("phi(2^{k})(x^d) q=3 mod 4 trinomial i={i} j={j} {c}"),
                        )?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Φ_{2^k}(x^d)` for any `k ≥ 0`, dispatching on `q mod 4` and the level.
    pub fn phi2k_xd(&self, k: u32) -> Result<FactorList<FqElem>> {
        let ctx = self.ctx;
        match k {
            0 => self.xd_pm1(XdSign::Minus),
            1 => self.xd_pm1(XdSign::Plus),
            _ if ctx.q() % 4 == 3 => self.phi2k_xd_q3(k),
            _ if k <= ctx.s() => self.phi2k_xd_q1(k),
            _ => self.phi2k_xd_q1_high(k - ctx.s()),
        }
    }

    /// The full factorization of `x^{2^n·d} - 1 = ∏_{k=0}^{n} Φ_{2^k}(x^d)`.
    pub fn x2nd_minus_1(&self, n: u32, opts: &FactorOptions) -> Result<FactorizationReport> {
        let ctx = self.ctx;
        let d = self.d();
        let degree = 1u64
            .checked_shl(n)
            .and_then(|v| v.checked_mul(d))
            .filter(|&v| n < 63 && v <= DEGREE_BUDGET)
            .ok_or_else(|| {
                Error::hypothesis(format!(
                    "2^n·d must not exceed {DEGREE_BUDGET} (got n = {n}, d = {d})"
                ))
            })?;
        let mut factors = FactorList::new();
        for k in 0..=n {
            factors.append(self.phi2k_xd(k)?);
        }
        let ring = PolyRing::new(ctx);
        let target = ring.binomial(degree as usize, ctx.one());
        let predicted_count = count_formula(ctx.q(), n, d);
        let mut checks = Checks::default();
        let mut diagnostics = Vec::new();

        checks.product_ok = ring.product(&factors) == target;
        if !checks.product_ok {
            diagnostics.push("product of the factors differs from the target".to_string());
        }
        let repeated: Vec<_> = factors.iter().filter(|f| f.multiplicity != 1).collect();
        for f in &repeated {
            diagnostics.push(format!(
                "factor {} emitted {} times ({})",
                format_poly(ctx, &f.poly),
                f.multiplicity,
                f.provenance
            ));
        }
        checks.count_ok = repeated.is_empty() && factors.len() as u64 == predicted_count;
        if factors.len() as u64 != predicted_count {
            diagnostics.push(format!(
                "{} distinct factors, expected {predicted_count}",
                factors.len()
            ));
        }

        if opts.verify {
            checks.all_irreducible = true;
            for f in factors.iter() {
                if !oracle::is_irreducible(ctx, &f.poly)? {
                    checks.all_irreducible = false;
                    diagnostics.push(format!(
                        "factor {} is reducible ({})",
                        format_poly(ctx, &f.poly),
                        f.provenance
                    ));
                }
            }
            let reference = oracle::full_factor(ctx, &target, opts.seed)?;
            checks.oracle_match = oracle::compare_factorizations(&factors, &reference);
            if !checks.oracle_match {
                for f in reference.iter().filter(|f| !factors.contains(&f.poly)) {
                    diagnostics.push(format!(
                        "oracle factor {} is missing",
                        format_poly(ctx, &f.poly)
                    ));
                }
                if diagnostics.is_empty() {
                    diagnostics.push("factor multiset differs from the oracle".to_string());
                }
            }
        }

        Ok(FactorizationReport {
            q: ctx.q(),
            e: ctx.e(),
            n,
            d,
            target,
            factors,
            predicted_count,
            checks,
            verified: opts.verify,
            diagnostics,
        })
    }
}

pub fn factor_xd_pm1(ctx: &FieldCtx, d: u64, sign: XdSign) -> Result<FactorList<FqElem>> {
    Factorizer::new(ctx, d)?.xd_pm1(sign)
}

pub fn factor_phi2k_fq2(ctx: &FieldCtx, k: u32, d: u64) -> Result<FactorList<Fq2Elem>> {
    if d % 2 == 0 || gcd(d, ctx.q()) != 1 {
        return Err(Error::hypothesis(format!(
            "d must be odd and coprime to q (got d = {d})"
        )));
    }
    phi2k_fq2_roots(ctx, k, d)
}

fn phi2k_fq2_roots(ctx: &FieldCtx, k: u32, d: u64) -> Result<FactorList<Fq2Elem>> {
    if k < 2 || k > ctx.m() {
        return Err(Error::hypothesis(format!(
            "k must satisfy 2 <= k <= m = {} (got k = {k})",
            ctx.m()
        )));
    }
    let f2 = ctx.fq2();
    let beta = ctx.root_of_unity_fq2(1u64 << k)?;
    let beta_d = f2.pow(beta, d as u128);
    let mut out = FactorList::new();
    for i in 1..=(1u64 << (k - 2)) {
        let b = f2.pow(beta_d, (2 * i - 1) as u128);
        for (s, c) in signs() {
            let root = if s > 0 { b } else { f2.neg(b) };
            out.insert(
                &f2,
                Poly::new(vec![root, f2.one()]),
                1,
                format!("phi(2^{k}) over F_q2 i={i} {c}"),
            )?;
        }
    }
    Ok(out)
}

pub fn factor_phi2k_xd_q1(ctx: &FieldCtx, k: u32, d: u64) -> Result<FactorList<FqElem>> {
    Factorizer::new(ctx, d)?.phi2k_xd_q1(k)
}

pub fn factor_phi2k_xd_q1_high(ctx: &FieldCtx, r: u32, d: u64) -> Result<FactorList<FqElem>> {
    Factorizer::new(ctx, d)?.phi2k_xd_q1_high(r)
}

pub fn factor_phi2k_xd_q3(ctx: &FieldCtx, k: u32, d: u64) -> Result<FactorList<FqElem>> {
    Factorizer::new(ctx, d)?.phi2k_xd_q3(k)
}

pub fn factor_x2nd_minus_1(
    ctx: &FieldCtx,
    n: u32,
    d: u64,
    opts: &FactorOptions,
) -> Result<FactorizationReport> {
    Factorizer::new(ctx, d)?.x2nd_minus_1(n, opts)
}

/// Number of irreducible factors of `x^{2^n·d} - 1`, for every `n ≥ 0`.
fn count_formula(q: u64, n: u32, d: u64) -> u64 {
    let s = nu2(q - 1);
    let m = nu2(q * q - 1);
    let p2 = |e: u32| 1u64 << e;
    match n {
        0 => (d + 1) / 2,
        1 => d + 1,
        _ if q % 4 == 1 && n <= s => p2(n - 1) * (d + 1),
        _ if q % 4 == 1 => p2(s - 1) * ((n - s + 1) as u64 * d + 1),
        _ if n < m => p2(n - 1) * d + 1,
        _ => p2(m - 2) * d * (n - m + 2) as u64 + 1,
    }
}

/// Closed-form count of irreducible factors of `x^{2^n·d} - 1` over F_q for `n ≥ 2`:
/// `2^{n-1}(d+1)` or `2^{s-1}((n-s+1)d+1)` when `q ≡ 1 (mod 4)`, and
/// `2^{n-1}d+1` or `2^{m-2}d(n-m+2)+1` when `q ≡ 3 (mod 4)`.
pub fn predicted_factor_count(q: u64, n: u32, d: u64) -> Result<u64> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::hypothesis(format!("q must be odd (got q = {q})")));
    }
    if n < 2 {
        return Err(Error::hypothesis(format!(
            "n must be at least 2 (got n = {n}); x^d - 1 has (d+1)/2 factors and x^(2d) - 1 has d+1"
        )));
    }
    if d == 0 || d % 2 == 0 || (q + 1) % d != 0 {
        return Err(Error::hypothesis(format!(
            "d must be an odd divisor of q+1 (got d = {d}, q+1 = {})",
            q + 1
        )));
    }
    if n >= 40 {
        return Err(Error::hypothesis("n is too large"));
    }
    Ok(count_formula(q, n, d))
}
