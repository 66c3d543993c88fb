//! The explicit constructions over non-prime fields, checked against the oracle.

use cyclofact::explicit::{factor_x2nd_minus_1, predicted_factor_count, FactorOptions};
use cyclofact::numtheory::divisors;
use cyclofact::FieldCtx;

#[test]
fn prime_power_fields_match_the_oracle() {
    for (p, e) in [(3u64, 2u32), (5, 2), (3, 3), (7, 2), (3, 4), (11, 2)] {
        let ctx = FieldCtx::new(p, e).unwrap();
        let q = ctx.q();
        for d in divisors(q + 1).into_iter().filter(|d| d % 2 == 1) {
            let mut n = 0;
            while (1u64 << n) * d <= 256 {
                let opts = FactorOptions { verify: true, seed: n as u64 };
                let rep = factor_x2nd_minus_1(&ctx, n, d, &opts).unwrap();
                assert!(rep.checks.all(), "q={q} d={d} n={n}: {:?}", rep.diagnostics);
                if n >= 2 {
                    assert_eq!(rep.factors.len() as u64, predicted_factor_count(q, n, d).unwrap());
                }
                n += 1;
            }
        }
    }
}
