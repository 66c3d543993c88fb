//! Acceptance run: one PASS/FAIL line per criterion, with wall time against
//! its limit. Exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cyclofact::cyclotomic::cyclotomic_poly;
use cyclofact::explicit::{factor_x2nd_minus_1, predicted_factor_count, FactorOptions, Factorizer};
use cyclofact::numtheory::{divisors, factorize, gcd, is_prime};
use cyclofact::oracle::{compare_factorizations, full_factor, is_irreducible};
use cyclofact::reproduce;
use cyclofact::sequences::{delta_set, sigma_d, DeltaThetaTable};
use cyclofact::{Field, FieldCtx, Fq2Elem, Poly, PolyRing};

type Outcome = Result<String, String>;

fn odd_primes(limit: u64) -> Vec<u64> {
    (3..=limit).filter(|&q| is_prime(q)).collect()
}

fn odd_divisors(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|d| d % 2 == 1).collect()
}

fn criterion_1() -> Outcome {
    let check = reproduce::phi8_of_x5_over_f29().map_err(|e| e.to_string())?;
    if check.passed {
        Ok("10 factors of Phi_8(x^5) match; Phi_40 is the product of the 8 trinomials".into())
    } else {
        Err(check.detail.join("; "))
    }
}

fn criterion_2() -> Outcome {
    let check = reproduce::delta_table_and_x120_over_f29().map_err(|e| e.to_string())?;
    let formula = predicted_factor_count(29, 3, 15).map_err(|e| e.to_string())?;
    if !check.passed {
        return Err(check.detail.join("; "));
    }
    if formula != 62 {
        return Err(format!("count formula gives {formula}"));
    }
    Ok("delta_1..7 = 4,14,23,20,28,5,21; x^120 - 1 has 62 verified factors".into())
}

fn criterion_3() -> Outcome {
    let check = reproduce::delta_set_and_x240_over_f59().map_err(|e| e.to_string())?;
    let formula = predicted_factor_count(59, 4, 15).map_err(|e| e.to_string())?;
    if !check.passed {
        return Err(check.detail.join("; "));
    }
    if formula != 91 {
        return Err(format!("count formula gives {formula}"));
    }
    Ok("Delta set matches; x^240 - 1 has 91 verified factors".into())
}

/// `(q, d, n)` for odd prime `q ≤ 200`, odd `d | q+1`, `n ≥ 2`, `2^n·d ≤ max_degree`.
fn grid(max_degree: u64) -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    for q in odd_primes(200) {
        for d in odd_divisors(q + 1) {
            let mut n = 2;
            while (1u64 << n) * d <= max_degree {
                out.push((q, d, n));
                n += 1;
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let cases = grid(4096);
    let mut failures = Vec::new();
    for &(q, d, n) in &cases {
        let ctx = FieldCtx::new(q, 1).map_err(|e| e.to_string())?;
        let report = factor_x2nd_minus_1(&ctx, n, d, &FactorOptions::default())
            .map_err(|e| format!("q={q} d={d} n={n}: {e}"))?;
        let formula = predicted_factor_count(q, n, d).map_err(|e| e.to_string())?;
        let emitted = report.factors.len() as u64;
        if emitted != formula || !report.checks.product_ok || !report.checks.count_ok {
            failures.push(format!("q={q} d={d} n={n}: {emitted} vs {formula}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} instances, zero exceptions, all products exact", cases.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_5() -> Outcome {
    let cases = grid(1024);
    let mut failures = Vec::new();
    for &(q, d, n) in &cases {
        let ctx = FieldCtx::new(q, 1).map_err(|e| e.to_string())?;
        let report = factor_x2nd_minus_1(&ctx, n, d, &FactorOptions::default())
            .map_err(|e| format!("q={q} d={d} n={n}: {e}"))?;
        let seed = q * 1000 + d * 10 + n as u64;
        let reference = full_factor(&ctx, &report.target, seed).map_err(|e| e.to_string())?;
        if !compare_factorizations(&report.factors, &reference) {
            failures.push(format!("q={q} d={d} n={n}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} instances match the oracle", cases.len()))
    } else {
        Err(failures.join("; "))
    }
}

/// Every invariant of the sequence and cyclotomic layers for one `(q, d)`.
fn invariants_for(q: u64, d: u64) -> Result<(), String> {
    let (p, e) = factorize(q)[0];
    let ctx = FieldCtx::new(p, e).map_err(|e| e.to_string())?;
    let f2 = ctx.fq2();
    let table = DeltaThetaTable::build(&ctx, d).map_err(|e| e.to_string())?;
    let n = d as usize;
    let two = ctx.from_int(2);

    let mut power = f2.one();
    for j in 0..n {
        let conj = ctx.frobenius(power);
        if f2.add(power, conj) != Fq2Elem::from_base(table.delta()[j])
            || f2.sub(power, conj) != table.theta()[j]
        {
            return Err(format!("recursion differs from direct powers at j={j}"));
        }
        let sq = ctx.sub(ctx.mul(table.delta()[j], table.delta()[j]), two);
        let th = f2.add(f2.mul(table.theta()[j], table.theta()[j]), Fq2Elem::from_base(two));
        if Fq2Elem::from_base(sq) != th {
            return Err(format!("delta_j^2 - 2 != theta_j^2 + 2 at j={j}"));
        }
        if ctx.frobenius(table.theta()[j]) != f2.neg(table.theta()[j]) {
            return Err(format!("theta_{j}^q != -theta_{j}"));
        }
        power = f2.mul(power, table.gamma());
    }
    let half = table.half();
    let images: BTreeSet<usize> = (1..=half)
        .map(|j| sigma_d(&table, j).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if images != (1..=half).collect() || delta_set(&table).len() != half {
        return Err("sigma_d is not a permutation of 1..(d-1)/2".into());
    }
    for j in 1..=half {
        let sq = ctx.sub(ctx.mul(table.delta()[j], table.delta()[j]), two);
        if table.delta()[sigma_d(&table, j).unwrap()] != sq {
            return Err(format!("delta at sigma_d({j}) is not delta_{j}^2 - 2"));
        }
    }

    // Coefficients embedded into F_q are checked for Frobenius-fixedness inside
    // the constructions; any failure surfaces here as an error.
    let factorizer = Factorizer::new(&ctx, d).map_err(|e| e.to_string())?;
    let ring = PolyRing::new(&ctx);
    let mut k = 0;
    while (1u64 << k) * d <= 512 {
        let list = factorizer.phi2k_xd(k).map_err(|e| format!("level {k}: {e}"))?;
        let phi = cyclotomic_poly(&ctx, 1u64 << k).map_err(|e| e.to_string())?;
        if ring.product(&list) != phi.substitute_power(n) {
            return Err(format!("level {k} does not multiply to Phi_(2^{k})(x^{d})"));
        }
        k += 1;
    }

    for m in (1..=200u64).filter(|&m| gcd(m, p) == 1) {
        let prod = divisors(m).into_iter().try_fold(ring.one(), |acc, j| {
            cyclotomic_poly(&ctx, j).map(|f| ring.mul(&acc, &f))
        });
        if prod.map_err(|e| e.to_string())? != ring.binomial(m as usize, ctx.one()) {
            return Err(format!("product of Phi_k over k | {m} is not x^{m} - 1"));
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let prime_powers: Vec<u64> = (3..=1000u64)
        .filter(|&q| q % 2 == 1 && factorize(q).len() == 1)
        .collect();
    let mut pairs = Vec::new();
    while pairs.len() < 25 {
        let q = *prime_powers.choose(&mut rng).unwrap();
        let d = *odd_divisors(q + 1).choose(&mut rng).unwrap();
        if !pairs.contains(&(q, d)) {
            pairs.push((q, d));
        }
    }
    let mut failures = Vec::new();
    for &(q, d) in &pairs {
        if let Err(msg) = invariants_for(q, d) {
            failures.push(format!("q={q} d={d}: {msg}"));
        }
    }
    let shown: Vec<String> = pairs.iter().map(|(q, d)| format!("({q},{d})")).collect();
    if failures.is_empty() {
        Ok(format!("25 pairs {}", shown.join(" ")))
    } else {
        Err(failures.join("; "))
    }
}

/// All monic polynomials of degree `deg` over `ctx`.
fn monic_of_degree(ctx: &FieldCtx, deg: usize) -> Vec<Poly<cyclofact::FqElem>> {
    let q = ctx.q();
    let total = q.pow(deg as u32);
    (0..total)
        .map(|mut idx| {
            let mut coeffs = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                coeffs.push(ctx.lex_element(idx % q));
                idx /= q;
            }
            coeffs.push(ctx.one());
            Poly::new(coeffs)
        })
        .collect()
}

fn rejection_checks() -> Result<(), String> {
    let cases: [(u64, u64, &str); 5] = [
        (29, 6, "d must be odd"),
        (29, 7, "d must be an odd divisor of q+1"),
        (59, 59, "d must be coprime to q"),
        (29, 0, "d must be positive"),
        (59, 9, "d must be an odd divisor of q+1"),
    ];
    for (q, d, needle) in cases {
        let ctx = FieldCtx::new(q, 1).map_err(|e| e.to_string())?;
        match factor_x2nd_minus_1(&ctx, 3, d, &FactorOptions::default()) {
            Ok(_) => return Err(format!("q={q} d={d} accepted")),
            Err(e) if e.to_string().contains(needle) => {}
            Err(e) => return Err(format!("q={q} d={d}: message {e:?} lacks {needle:?}")),
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    rejection_checks()?;
    let mut checked = 0usize;
    for (p, e) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
        let ctx = FieldCtx::new(p, e).map_err(|e| e.to_string())?;
        let ring = PolyRing::new(&ctx);
        let by_degree: Vec<Vec<_>> = (0..=6).map(|k| monic_of_degree(&ctx, k)).collect();
        let mut reducible = HashSet::new();
        for deg in 2..=6usize {
            for a_deg in 1..=deg / 2 {
                for a in &by_degree[a_deg] {
                    for b in &by_degree[deg - a_deg] {
                        reducible.insert(ring.mul(a, b));
                    }
                }
            }
        }
        for deg in 1..=6usize {
            for f in &by_degree[deg] {
                let fast = is_irreducible(&ctx, f).map_err(|e| e.to_string())?;
                if fast == reducible.contains(f) {
                    return Err(format!("q={} disagreement on {:?}", ctx.q(), f));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "hypotheses named in all rejections; is_irreducible agrees on {checked} polynomials"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 7] = [
        ("1 Phi_8(x^5) over F_29", Duration::from_secs(1), criterion_1),
        ("2 delta table, x^120 - 1 over F_29", Duration::from_secs(5), criterion_2),
        ("3 Delta set, x^240 - 1 over F_59", Duration::from_secs(10), criterion_3),
        ("4 count-formula sweep", Duration::from_secs(300), criterion_4),
        ("5 oracle equivalence sweep", Duration::from_secs(300), criterion_5),
        ("6 sequence and cyclotomic invariants", Duration::from_secs(300), criterion_6),
        ("7 negative paths, irreducibility vs exhaustive search", Duration::from_secs(300), criterion_7),
    ];
    let mut all_ok = true;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let (ok, msg) = match outcome {
            Ok(msg) if in_time => (true, msg),
            Ok(msg) => (false, format!("{msg}; too slow")),
            Err(msg) => (false, msg),
        };
        all_ok &= ok;
        println!(
            "{} criterion {name}: {:.2}s (limit {}s) {msg}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
