//! Cyclotomic polynomials over a finite field and the degree profile of
//! their irreducible factors.

use crate::error::{Error, Result};
use crate::field::{Field, FieldCtx};
use crate::numtheory::{divisors, gcd, is_prime, mobius, multiplicative_order, totient};
use crate::poly::{Poly, PolyRing};

fn check_coprime<F: Field>(field: &F, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroInput("cyclotomic index"));
    }
    if gcd(n, field.characteristic()) != 1 {
        return Err(Error::hypothesis(format!(
            "n = {n} must be coprime to the characteristic {}",
            field.characteristic()
        )));
    }
    Ok(())
}

/// `Φ_n(x) = ∏_{k | n} (x^{n/k} - 1)^{μ(k)}`.
///
/// The factors with `μ = 1` are multiplied first and the ones with `μ = -1`
/// are then divided out exactly; a nonzero remainder is reported as an error.
pub fn cyclotomic_poly<F: Field>(field: &F, n: u64) -> Result<Poly<F::Elem>> {
    check_coprime(field, n)?;
    let ring = PolyRing::new(field);
    let one = field.one();
    let mut num = ring.one();
    let mut den = Vec::new();
    for k in divisors(n) {
        let term = ring.binomial((n / k) as usize, one);
        match mobius(k) {
            1 => num = ring.mul(&num, &term),
            -1 => den.push(term),
            _ => {}
        }
    }
    for term in den {
        num = ring.exact_div(&num, &term)?;
    }
    Ok(num)
}

/// `Φ_n` as `(x^n - 1) / ∏_{k | n, k < n} Φ_k`, building every `Φ_k` the same way.
pub fn cyclotomic_poly_by_division<F: Field>(field: &F, n: u64) -> Result<Poly<F::Elem>> {
    check_coprime(field, n)?;
    let ring = PolyRing::new(field);
    let divs = divisors(n);
    let mut built: Vec<Poly<F::Elem>> = Vec::with_capacity(divs.len());
    for (idx, &k) in divs.iter().enumerate() {
        let mut phi = ring.binomial(k as usize, field.one());
        for (jdx, &j) in divs[..idx].iter().enumerate() {
            if k % j == 0 {
                phi = ring.exact_div(&phi, &built[jdx])?;
            }
        }
        built.push(phi);
    }
    Ok(built.pop().expect("n has at least one divisor"))
}

/// `(e, count)` where every irreducible factor of `Φ_n` over F_q has degree
/// `e = ord_n(q)` and there are `count = φ(n)/e` of them.
pub fn factor_profile(ctx: &FieldCtx, n: u64) -> Result<(u64, u64)> {
    check_coprime(ctx, n)?;
    let e = multiplicative_order(ctx.q() % n, n)
        .ok_or_else(|| Error::internal("q is not a unit modulo n"))?;
    Ok((e, totient(n) / e))
}

/// Checks the four classical identities relating `Φ_n`, `Φ_{2n}`, `Φ_{np}`
/// and `Φ_{np^k}`, each where its side condition holds:
///
/// 1. `Φ_{2n}(x) = Φ_n(-x)` for odd `n ≥ 3`;
/// 2. `Φ_{np^k}(x) = Φ_{np}(x^{p^{k-1}})`;
/// 3. `Φ_{np}(x) = Φ_n(x^p)` when `p | n`, and `Φ_{2^{k+1}}(x) = Φ_{2^k}(x^2)`;
/// 4. `Φ_{np}(x) = Φ_n(x^p) / Φ_n(x)` when `p ∤ n`.
pub fn cyclotomic_identities_check(ctx: &FieldCtx, n: u64, p: u64, k: u32) -> Result<bool> {
    if !(p > 2 && is_prime(p)) {
        return Err(Error::hypothesis(format!("p = {p} must be an odd prime")));
    }
    if gcd(2 * p, ctx.q()) != 1 {
        return Err(Error::hypothesis("gcd(2p, q) must be 1"));
    }
    if n == 0 || k == 0 {
        return Err(Error::hypothesis("n and k must be positive"));
    }
    check_coprime(ctx, n)?;
    let ring = PolyRing::new(ctx);
    let phi = |i: u64| cyclotomic_poly(ctx, i);
    let pk = crate::numtheory::checked_pow(p, k)
        .and_then(|v| v.checked_mul(n))
        .ok_or_else(|| Error::hypothesis("n·p^k is too large"))?;
    let np = n * p;
    let phi_n = phi(n)?;
    let phi_np = phi(np)?;
    let mut ok = true;

    if n >= 3 && n % 2 == 1 {
        ok &= phi(2 * n)? == ring.negate_variable(&phi_n);
    }
    let spread = (pk / np) as usize;
    ok &= phi(pk)? == phi_np.substitute_power(spread);
    if n % p == 0 {
        ok &= phi_np == phi_n.substitute_power(p as usize);
    } else {
        let lifted = phi_n.substitute_power(p as usize);
        ok &= phi_np == ring.exact_div(&lifted, &phi_n)?;
    }
    if k <= 12 {
        let t = 1u64 << k;
        ok &= phi(2 * t)? == phi(t)?.substitute_power(2);
    }
    Ok(ok)
}
