use cyclofact::field::element_order;
use cyclofact::numtheory::{is_prime, prime_divisors};
use cyclofact::{Field, FieldCtx, FieldElement};
use proptest::prelude::*;

fn small_fields() -> Vec<FieldCtx> {
    let mut out: Vec<FieldCtx> = (3..100u64)
        .filter(|&p| is_prime(p))
        .map(|p| FieldCtx::new(p, 1).unwrap())
        .collect();
    out.push(FieldCtx::new(3, 2).unwrap());
    out.push(FieldCtx::new(5, 2).unwrap());
    out.push(FieldCtx::new(3, 3).unwrap());
    out
}

#[test]
fn field_axioms_exhaustively() {
    for k in small_fields().into_iter().filter(|k| k.q() <= 50) {
        let all: Vec<_> = (0..k.q()).map(|t| k.lex_element(t)).collect();
        for &x in &all {
            if !x.is_zero() {
                assert_eq!(k.mul(x, k.inv(x).unwrap()), k.one(), "q={}", k.q());
            }
            assert_eq!(k.add(x, k.neg(x)), k.zero());
            for &y in &all {
                assert_eq!(k.add(x, y), k.add(y, x));
                assert_eq!(k.mul(x, y), k.mul(y, x));
                assert_eq!(k.sub(k.add(x, y), y), x);
                for &z in all.iter().step_by(3) {
                    assert_eq!(k.mul(x, k.add(y, z)), k.add(k.mul(x, y), k.mul(x, z)));
                    assert_eq!(k.mul(k.mul(x, y), z), k.mul(x, k.mul(y, z)));
                }
            }
        }
    }
}

#[test]
fn context_invariants() {
    for k in small_fields() {
        let q = k.q();
        assert_eq!(k.pow(k.nonsquare(), ((q - 1) / 2) as u128), k.from_int(-1));
        assert_eq!(element_order(&k, k.gen_q(), q - 1), Some(q - 1));
        assert_eq!(element_order(&k.fq2(), k.gen_q2(), q * q - 1), Some(q * q - 1));
        assert_eq!(k.s() + (q + 1).trailing_zeros(), k.m());
        assert_eq!(k.m() == k.s() + 1, q % 4 == 1);
        assert_eq!(k.s() == 1, q % 4 == 3);
    }
}

#[test]
fn is_square_matches_enumeration() {
    for k in small_fields() {
        let squares: std::collections::HashSet<_> =
            (1..k.q()).map(|t| { let x = k.lex_element(t); k.mul(x, x) }).collect();
        for t in 1..k.q() {
            let c = k.lex_element(t);
            assert_eq!(k.is_square(c).unwrap(), squares.contains(&c));
        }
    }
}

#[test]
fn roots_of_unity_have_exact_order() {
    for k in small_fields() {
        let q = k.q();
        for t in cyclofact::numtheory::divisors(q - 1) {
            let r = k.root_of_unity_fq(t).unwrap();
            assert_eq!(k.pow(r, t as u128), k.one());
            for p in prime_divisors(t) {
                assert_ne!(k.pow(r, (t / p) as u128), k.one());
            }
        }
        let f2 = k.fq2();
        for t in cyclofact::numtheory::divisors(q * q - 1).into_iter().take(40) {
            let r = k.root_of_unity_fq2(t).unwrap();
            assert_eq!(element_order(&f2, r, q * q - 1), Some(t));
        }
        assert!(k.root_of_unity_fq(q + 1).is_err());
    }
}

proptest! {
    #[test]
    fn frobenius_is_a_field_automorphism(a in 0i64..1_000_000, b in 0i64..1_000_000,
                                        c in 0i64..1_000_000, e in 0i64..1_000_000) {
        let k = FieldCtx::new(1_000_003, 1).unwrap();
        let f2 = k.fq2();
        let x = k.fq2_elem(a, b);
        let y = k.fq2_elem(c, e);
        prop_assert_eq!(k.frobenius(f2.mul(x, y)), f2.mul(k.frobenius(x), k.frobenius(y)));
        prop_assert_eq!(k.frobenius(f2.add(x, y)), f2.add(k.frobenius(x), k.frobenius(y)));
        prop_assert_eq!(k.frobenius(x), f2.pow(x, k.q() as u128));
        prop_assert_eq!(k.frobenius(x) == x, x.in_base_field());
    }

    #[test]
    fn large_prime_arithmetic(a in 1i64..4_294_967_291, b in 1i64..4_294_967_291) {
        let k = FieldCtx::new(4_294_967_291, 1).unwrap();
        let (x, y) = (k.elem(a), k.elem(b));
        prop_assert_eq!(k.mul(k.mul(x, y), k.inv(y).unwrap()), x);
        prop_assert_eq!(k.pow_signed(x, -3).unwrap(), k.inv(k.pow(x, 3)).unwrap());
    }
}
