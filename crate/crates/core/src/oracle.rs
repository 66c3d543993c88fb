//! Generic factorization over a finite field, used to cross-check the
//! explicit constructions. Nothing here knows about cyclotomic structure.
//!
//! Pipeline: squarefree decomposition, distinct-degree factorization via
//! `gcd(x^{q^i} - x, f)`, then equal-degree splitting with random trace
//! elements (odd characteristic). The q-power Frobenius is applied through a
//! precomputed matrix of `x^{q·i} mod f`, which makes each step one
//! matrix-vector product instead of a modular exponentiation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::numtheory::prime_divisors;
use crate::poly::{FactorList, Poly, PolyRing};

/// The F-linear map `h ↦ h^Q mod g`, where `Q` is the field order.
struct FrobeniusMap<E> {
    modulus: Poly<E>,
    /// `columns[i] = x^{Q·i} mod modulus`, each padded to `deg(modulus)` slots.
    columns: Vec<Vec<E>>,
}

impl<E: FieldElement> FrobeniusMap<E> {
    fn new<F: Field<Elem = E>>(field: &F, modulus: &Poly<E>) -> Self {
        let ring = PolyRing::new(field);
        let d = modulus.degree().expect("nonzero modulus");
        let order = field.order();
        let pad = |mut v: Vec<E>| {
            v.resize(d, E::ZERO);
            v
        };
        let mut columns = Vec::with_capacity(d);
        let mut col = pad(vec![field.one()]);
        // Multiplying by x^Q is a shift followed by a reduction of Q leading
        // terms when Q is small; otherwise a full mulmod by x^Q mod g.
        let shift = usize::try_from(order).ok().filter(|&s| s <= 2 * d);
        let xq = if shift.is_none() {
            Some(
                ring.powmod(&ring.x(), order as u128, modulus)
                    .expect("modulus has positive degree"),
            )
        } else {
            None
        };
        for i in 0..d {
            if i > 0 {
                let next = match (shift, &xq) {
                    (Some(s), _) => {
                        let mut shifted = vec![E::ZERO; s];
                        shifted.extend_from_slice(&col);
                        field.divrem_monic(&shifted, modulus.coeffs()).1
                    }
                    (None, Some(xq)) => {
                        let prod = field.mul_slices(&col, xq.coeffs());
                        field.divrem_monic(&prod, modulus.coeffs()).1
                    }
                    (None, None) => unreachable!(),
                };
                col = pad(next);
            }
            columns.push(col.clone());
        }
        FrobeniusMap {
            modulus: modulus.clone(),
            columns,
        }
    }

    fn degree(&self) -> usize {
        self.columns.len()
    }

    /// `h^Q mod self.modulus`; `h` must already be reduced.
    fn apply<F: Field<Elem = E>>(&self, field: &F, h: &Poly<E>) -> Poly<E> {
        debug_assert!(h.coeffs().len() <= self.degree());
        Poly::new(field.lincomb(h.coeffs(), &self.columns, self.degree()))
    }
}

/// `true` iff `f` is irreducible: `x^{Q^n} ≡ x (mod f)` and
/// `gcd(x^{Q^{n/r}} - x, f) = 1` for every prime `r | n`, `n = deg f`.
pub fn is_irreducible<F: Field>(field: &F, f: &Poly<F::Elem>) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let ring = PolyRing::new(field);
    let f = ring.monic(f);
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    let frob = FrobeniusMap::new(field, &f);
    let x = ring.x();
    let checkpoints: Vec<usize> = prime_divisors(n as u64)
        .into_iter()
        .map(|r| n / r as usize)
        .collect();
    let mut h = x.clone();
    for i in 1..=n {
        h = frob.apply(field, &h);
        if checkpoints.contains(&i) {
            let g = ring.gcd(&ring.sub(&h, &x), &f);
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
    }
    Ok(h == x)
}

/// Complete factorization of `f` into monic irreducibles with multiplicities.
///
/// The leading coefficient is dropped. Randomness for equal-degree splitting
/// comes only from `seed`, so the output is reproducible; the factor multiset
/// does not depend on the seed.
pub fn full_factor<F: Field>(
    field: &F,
    f: &Poly<F::Elem>,
    seed: u64,
) -> Result<FactorList<F::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("polynomial to factor"));
    }
    let ring = PolyRing::new(field);
    let f = ring.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = FactorList::new();
    for (part, mult) in squarefree_decomposition(field, &f) {
        for (deg, block) in distinct_degree(field, &part) {
            for g in equal_degree(field, &block, deg, &mut rng) {
                out.insert(field, g, mult, format!("oracle degree {deg}"))?;
            }
        }
    }
    let prod = ring.product(&out);
    if prod != f {
        return Err(Error::internal(
            "oracle factors do not multiply back to the input",
        ));
    }
    Ok(out)
}

/// Equality as multisets of `(monic factor, multiplicity)`, ignoring order and labels.
pub fn compare_factorizations<E: FieldElement>(a: &FactorList<E>, b: &FactorList<E>) -> bool {
    a.multiset() == b.multiset()
}

/// `f = ∏ parts[i].0 ^ parts[i].1` with every part squarefree.
fn squarefree_decomposition<F: Field>(
    field: &F,
    f: &Poly<F::Elem>,
) -> Vec<(Poly<F::Elem>, u32)> {
    let ring = PolyRing::new(field);
    let p = field.characteristic() as u32;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = ring.derivative(f);
    if df.is_zero() {
        let root = pth_root_poly(field, f);
        for (g, m) in squarefree_decomposition(field, &root) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = ring.gcd(f, &df);
    let mut w = ring.exact_div(f, &c).expect("gcd divides f");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = ring.gcd(&w, &c);
        let z = ring.exact_div(&w, &y).expect("gcd divides w");
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = ring.exact_div(&c, &y).expect("gcd divides c");
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = pth_root_poly(field, &c);
        for (g, m) in squarefree_decomposition(field, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// `g` with `g^p = f`, for `f` whose derivative vanishes.
fn pth_root_poly<F: Field>(field: &F, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    let p = field.characteristic() as usize;
    Poly::new(
        f.coeffs()
            .iter()
            .step_by(p)
            .map(|&c| field.pth_root(c))
            .collect(),
    )
}

/// Splits a monic squarefree `f` into `(d, product of all degree-d factors)`.
fn distinct_degree<F: Field>(field: &F, f: &Poly<F::Elem>) -> Vec<(usize, Poly<F::Elem>)> {
    let ring = PolyRing::new(field);
    let x = ring.x();
    let mut out = Vec::new();
    let mut rest = f.clone();
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut frob = FrobeniusMap::new(field, &rest);
    let mut h = ring.rem(&x, &rest).expect("nonzero modulus");
    let mut i = 0;
    while rest.degree().unwrap() >= 2 * (i + 1) {
        i += 1;
        h = frob.apply(field, &h);
        if frob.modulus != rest {
            h = ring.rem(&h, &rest).expect("nonzero modulus");
        }
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = ring.exact_div(&rest, &g).expect("gcd divides rest");
            out.push((i, g));
            if rest.degree().unwrap_or(0) == 0 {
                return out;
            }
            h = ring.rem(&h, &rest).expect("nonzero modulus");
            if 2 * rest.degree().unwrap() <= frob.degree() {
                frob = FrobeniusMap::new(field, &rest);
            }
        }
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((d, rest));
    }
    out
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree `d`.
fn equal_degree<F: Field>(
    field: &F,
    f: &Poly<F::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<F::Elem>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let ring = PolyRing::new(field);
    let frob = FrobeniusMap::new(field, f);
    let half = ((field.order() - 1) / 2) as u128;
    let one = ring.one();
    loop {
        let a = Poly::new((0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        // Trace down to the prime-order subfield of each residue field.
        let mut t = a.clone();
        let mut trace = a;
        for _ in 1..d {
            t = frob.apply(field, &t);
            trace = ring.add(&trace, &t);
        }
        let c = ring.powmod(&trace, half, f).expect("nonconstant modulus");
        let g = ring.gcd(&ring.sub(&c, &one), f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = ring.exact_div(f, &g).expect("gcd divides f");
            let mut out = equal_degree(field, &g, d, rng);
            out.extend(equal_degree(field, &h, d, rng));
            return out;
        }
    }
}
