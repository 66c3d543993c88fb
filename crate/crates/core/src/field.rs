//! The field tower F_p ⊆ F_q ⊆ F_{q²}.
//!
//! Elements of F_q are stored packed in a single word: the coefficients of
//! the representing polynomial over F_p, read as base-p digits with the
//! constant term least significant. For prime fields the packed value is
//! just the residue. F_{q²} is the pair basis `{1, w}` with `w²` equal to
//! the context's chosen nonsquare, so Frobenius is conjugation `b ↦ -b`.
//!
//! Wherever the construction has to pick something (modulus, nonsquare,
//! generators), it takes the first candidate in lexicographic order, where
//! the constant coefficient is the most significant position of the scan.

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{checked_pow, is_prime, nu2, prime_divisors};
use crate::oracle;
use crate::poly::Poly;

pub trait FieldElement: Copy + Eq + Ord + Hash + Debug + Send + Sync {
    const ZERO: Self;

    fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

/// A finite field of odd characteristic together with its arithmetic.
///
/// Polynomial kernels (`mul_slices`, `divrem_monic`) have schoolbook
/// defaults; implementations may override them with faster equivalents.
pub trait Field {
    type Elem: FieldElement;

    /// Number of elements.
    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem>;
    /// Image of an integer under `Z -> F_p ⊆ self`.
    fn from_int(&self, n: i64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn zero(&self) -> Self::Elem {
        Self::Elem::ZERO
    }

    fn pow(&self, a: Self::Elem, mut exp: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Power with a signed exponent; negative exponents go through the inverse.
    fn pow_signed(&self, a: Self::Elem, exp: i64) -> Result<Self::Elem> {
        if exp >= 0 {
            Ok(self.pow(a, exp as u128))
        } else {
            Ok(self.pow(self.inv(a)?, exp.unsigned_abs() as u128))
        }
    }

    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: Self::Elem) -> Self::Elem {
        self.pow(a, (self.order() / self.characteristic()) as u128)
    }

    fn mul_slices(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        schoolbook_mul(self, a, b)
    }

    /// Quotient and remainder of `a` by the monic `m` (`m.len() >= 2`).
    /// The remainder has exactly `m.len() - 1` slots and is not trimmed.
    fn divrem_monic(
        &self,
        a: &[Self::Elem],
        m: &[Self::Elem],
    ) -> (Vec<Self::Elem>, Vec<Self::Elem>) {
        schoolbook_divrem(self, a, m)
    }

    /// `Σ coeffs[i] · rows[i]`, each row holding `len` elements.
    fn lincomb(&self, coeffs: &[Self::Elem], rows: &[Vec<Self::Elem>], len: usize) -> Vec<Self::Elem> {
        let mut out = vec![self.zero(); len];
        for (&c, row) in coeffs.iter().zip(rows) {
            if c.is_zero() {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(row) {
                *o = self.add(*o, self.mul(c, v));
            }
        }
        out
    }
}

/// Element of F_q, packed as base-p digits (constant term least significant).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FqElem(u64);

impl FqElem {
    /// Packed representation. For prime fields this is the residue in `[0, p)`.
    pub fn raw(self) -> u64 {
        self.0
    }
}

impl FieldElement for FqElem {
    const ZERO: Self = FqElem(0);
}

/// Element `a + b·w` of F_{q²}.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fq2Elem {
    pub a: FqElem,
    pub b: FqElem,
}

impl Fq2Elem {
    pub fn new(a: FqElem, b: FqElem) -> Self {
        Fq2Elem { a, b }
    }

    pub fn from_base(a: FqElem) -> Self {
        Fq2Elem { a, b: FqElem::ZERO }
    }

    pub fn in_base_field(self) -> bool {
        self.b.is_zero()
    }
}

impl FieldElement for Fq2Elem {
    const ZERO: Self = Fq2Elem {
        a: FqElem::ZERO,
        b: FqElem::ZERO,
    };
}

/// Immutable description of F_p ⊆ F_q ⊆ F_{q²}.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    /// Monic, ascending, length `e + 1`. `x` for prime fields.
    modulus: Vec<u64>,
    nonsquare: FqElem,
    gen_q: FqElem,
    gen_q2: Fq2Elem,
    s: u32,
    m: u32,
}

impl FieldCtx {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = checked_pow(p, e)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::WordOverflow { p, e })?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            find_modulus(p, e)?
        };
        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            nonsquare: FqElem::ZERO,
            gen_q: FqElem::ZERO,
            gen_q2: Fq2Elem::ZERO,
            s: nu2(q - 1),
            m: nu2(q * q - 1),
        };
        ctx.nonsquare = (1..q)
            .map(|t| ctx.lex_element(t))
            .find(|&c| ctx.pow(c, ((q - 1) / 2) as u128) != ctx.one())
            .ok_or_else(|| Error::internal("F_q has no nonsquare"))?;
        let primes = prime_divisors(q - 1);
        ctx.gen_q = (1..q)
            .map(|t| ctx.lex_element(t))
            .find(|&g| has_order(&ctx, g, q - 1, &primes))
            .ok_or_else(|| Error::internal("F_q* has no generator"))?;
        ctx.gen_q2 = ctx.find_gen_q2()?;
        Ok(ctx)
    }

    /// Rebuild the quadratic extension over a different nonsquare `w²`.
    /// The generator of F_{q²}* is recomputed in the new basis.
    pub fn with_nonsquare(mut self, nonsquare: FqElem) -> Result<Self> {
        self.check_elem(nonsquare)?;
        if self.is_square(nonsquare)? {
            return Err(Error::InvalidElement(format!(
                "{} is a square in F_{}",
                self.format_elem(nonsquare),
                self.q
            )));
        }
        self.nonsquare = nonsquare;
        self.gen_q2 = self.find_gen_q2()?;
        Ok(self)
    }

    pub fn with_gen_q(mut self, g: FqElem) -> Result<Self> {
        self.check_elem(g)?;
        if !has_order(&self, g, self.q - 1, &prime_divisors(self.q - 1)) {
            return Err(Error::InvalidElement(format!(
                "{} does not generate F_{}*",
                self.format_elem(g),
                self.q
            )));
        }
        self.gen_q = g;
        Ok(self)
    }

    pub fn with_gen_q2(mut self, g: Fq2Elem) -> Result<Self> {
        self.check_elem(g.a)?;
        self.check_elem(g.b)?;
        let n = self.q * self.q - 1;
        if !has_order(&self.fq2(), g, n, &group_primes(self.q)) {
            return Err(Error::InvalidElement(format!(
                "{} does not generate F_{{{}^2}}*",
                self.format_fq2(g),
                self.q
            )));
        }
        self.gen_q2 = g;
        Ok(self)
    }

    fn find_gen_q2(&self) -> Result<Fq2Elem> {
        let n = self.q * self.q - 1;
        let primes = group_primes(self.q);
        let ext = self.fq2();
        // Elements b·w square into F_q, so their order divides 2(q - 1) and
        // the scan can start at a = 1.
        for ta in 1..self.q {
            for tb in 0..self.q {
                let g = Fq2Elem::new(self.lex_element(ta), self.lex_element(tb));
                if has_order(&ext, g, n, &primes) {
                    return Ok(g);
                }
            }
        }
        Err(Error::internal("F_{q^2}* has no generator"))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// ν₂(q − 1).
    pub fn s(&self) -> u32 {
        self.s
    }

    /// ν₂(q² − 1).
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn nonsquare(&self) -> FqElem {
        self.nonsquare
    }

    pub fn gen_q(&self) -> FqElem {
        self.gen_q
    }

    pub fn gen_q2(&self) -> Fq2Elem {
        self.gen_q2
    }

    /// The quadratic extension as a [`Field`].
    pub fn fq2(&self) -> Fq2Field<'_> {
        Fq2Field { ctx: self }
    }

    pub fn elem(&self, n: i64) -> FqElem {
        self.from_int(n)
    }

    /// Element from its coefficients over F_p (ascending, at most `e` of them).
    pub fn elem_from_coeffs(&self, coeffs: &[i64]) -> Result<FqElem> {
        if coeffs.len() > self.e as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.e
            )));
        }
        let p = self.p as i64;
        let digits: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(p) as u64).collect();
        Ok(self.pack(&digits))
    }

    pub fn fq2_elem(&self, a: i64, b: i64) -> Fq2Elem {
        Fq2Elem::new(self.elem(a), self.elem(b))
    }

    /// Coefficients over F_p, ascending, always of length `e`.
    pub fn coeffs(&self, x: FqElem) -> Vec<u64> {
        let mut v = x.0;
        (0..self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, digits: &[u64]) -> FqElem {
        FqElem(digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d))
    }

    fn check_elem(&self, x: FqElem) -> Result<()> {
        if x.0 >= self.q {
            return Err(Error::InvalidElement(format!("packed value {} >= q", x.0)));
        }
        Ok(())
    }

    /// The `t`-th element of F_q in lexicographic order (constant term most significant).
    pub fn lex_element(&self, t: u64) -> FqElem {
        let mut digits = vec![0u64; self.e as usize];
        let mut v = t;
        for d in digits.iter_mut().rev() {
            *d = v % self.p;
            v /= self.p;
        }
        self.pack(&digits)
    }

    /// `true` iff `c` is a square, by Euler's criterion.
    pub fn is_square(&self, c: FqElem) -> Result<bool> {
        if c.is_zero() {
            return Err(Error::ZeroInput("is_square argument"));
        }
        Ok(self.pow(c, ((self.q - 1) / 2) as u128) == self.one())
    }

    /// Primitive root of unity of the given order in F_q: `gen_q^((q-1)/order)`.
    pub fn root_of_unity_fq(&self, order: u64) -> Result<FqElem> {
        if order == 0 || (self.q - 1) % order != 0 {
            return Err(Error::OrderDoesNotDivide {
                order,
                group: self.q - 1,
            });
        }
        Ok(self.pow(self.gen_q, ((self.q - 1) / order) as u128))
    }

    /// Primitive root of unity of the given order in F_{q²}: `gen_q2^((q²-1)/order)`.
    pub fn root_of_unity_fq2(&self, order: u64) -> Result<Fq2Elem> {
        let group = self.q * self.q - 1;
        if order == 0 || group % order != 0 {
            return Err(Error::OrderDoesNotDivide { order, group });
        }
        Ok(self.fq2().pow(self.gen_q2, (group / order) as u128))
    }

    /// `x ↦ x^q` on F_{q²}.
    pub fn frobenius(&self, x: Fq2Elem) -> Fq2Elem {
        Fq2Elem::new(x.a, self.neg(x.b))
    }

    /// Project an element of F_{q²} into F_q, failing unless it is Frobenius-fixed.
    pub fn to_base(&self, x: Fq2Elem) -> Result<FqElem> {
        if x.b.is_zero() {
            Ok(x.a)
        } else {
            Err(Error::NotInBaseField)
        }
    }

    /// Residue for prime fields, bracketed coefficient list otherwise.
    pub fn format_elem(&self, x: FqElem) -> String {
        if self.e == 1 {
            x.0.to_string()
        } else {
            let c: Vec<String> = self.coeffs(x).iter().map(u64::to_string).collect();
            format!("[{}]", c.join(","))
        }
    }

    pub fn format_fq2(&self, x: Fq2Elem) -> String {
        format!("{}+{}w", self.format_elem(x.a), self.format_elem(x.b))
    }

    fn ext_mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p;
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y % p) % p;
            }
        }
        for i in (e..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..e {
                let t = c * self.modulus[j] % p;
                prod[i - e + j] = (prod[i - e + j] + p - t) % p;
            }
        }
        prod.truncate(e);
        self.pack(&prod)
    }

    fn digitwise(&self, a: FqElem, b: FqElem, op: impl Fn(u64, u64) -> u64) -> FqElem {
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let out: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| op(x, y)).collect();
        self.pack(&out)
    }
}

impl Field for FieldCtx {
    type Elem = FqElem;

    fn order(&self) -> u64 {
        self.q
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn one(&self) -> FqElem {
        FqElem(1)
    }

    fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p;
        if self.e == 1 {
            let s = a.0 + b.0;
            FqElem(if s >= p { s - p } else { s })
        } else {
            self.digitwise(a, b, |x, y| (x + y) % p)
        }
    }

    fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p;
        if self.e == 1 {
            FqElem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 })
        } else {
            self.digitwise(a, b, |x, y| (x + p - y) % p)
        }
    }

    fn neg(&self, a: FqElem) -> FqElem {
        self.sub(FqElem::ZERO, a)
    }

    fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e == 1 {
            FqElem(a.0 * b.0 % self.p)
        } else {
            self.ext_mul(a, b)
        }
    }

    fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        if self.e == 1 {
            Ok(FqElem(inv_mod(a.0, self.p)))
        } else {
            Ok(self.pow(a, (self.q - 2) as u128))
        }
    }

    fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u64)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        FqElem(rng.gen_range(0..self.q))
    }

    fn mul_slices(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        if self.e != 1 {
            return schoolbook_mul(self, a, b);
        }
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let terms = a.len().min(b.len()) as u64;
        let out = if fits_u64(self.p, terms) {
            prime_mul::<u64>(self.p, a, b)
        } else {
            prime_mul::<u128>(self.p, a, b)
        };
        out.into_iter().map(FqElem).collect()
    }

    fn divrem_monic(&self, a: &[FqElem], m: &[FqElem]) -> (Vec<FqElem>, Vec<FqElem>) {
        if self.e != 1 {
            return schoolbook_divrem(self, a, m);
        }
        let d = m.len() - 1;
        if a.len() <= d {
            let mut r = a.to_vec();
            r.resize(d, FqElem::ZERO);
            return (Vec::new(), r);
        }
        let terms = d.min(a.len() - d) as u64 + 1;
        let (q, r) = if fits_u64(self.p, terms) {
            prime_divrem::<u64>(self.p, a, m)
        } else {
            prime_divrem::<u128>(self.p, a, m)
        };
        (
            q.into_iter().map(FqElem).collect(),
            r.into_iter().map(FqElem).collect(),
        )
    }

    fn lincomb(&self, coeffs: &[FqElem], rows: &[Vec<FqElem>], len: usize) -> Vec<FqElem> {
        if self.e != 1 {
            let mut out = vec![FqElem::ZERO; len];
            for (&c, row) in coeffs.iter().zip(rows) {
                for (o, &v) in out.iter_mut().zip(row) {
                    *o = self.add(*o, self.mul(c, v));
                }
            }
            return out;
        }
        let out = if fits_u64(self.p, coeffs.len() as u64) {
            prime_lincomb::<u64>(self.p, coeffs, rows, len)
        } else {
            prime_lincomb::<u128>(self.p, coeffs, rows, len)
        };
        out.into_iter().map(FqElem).collect()
    }
}

fn prime_lincomb<T: Acc>(p: u64, coeffs: &[FqElem], rows: &[Vec<FqElem>], len: usize) -> Vec<u64> {
    let mut acc = vec![T::default(); len];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.0 == 0 {
            continue;
        }
        for (slot, v) in acc.iter_mut().zip(row) {
            *slot += T::prod(c.0, v.0);
        }
    }
    acc.into_iter().map(|v| v.reduce(p)).collect()
}

pub(crate) fn schoolbook_mul<F: Field + ?Sized>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn schoolbook_divrem<F: Field + ?Sized>(
    f: &F,
    a: &[F::Elem],
    m: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    if a.len() <= d {
        r.resize(d, f.zero());
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); a.len() - d];
    for i in (d..a.len()).rev() {
        let c = r[i];
        q[i - d] = c;
        if c.is_zero() {
            continue;
        }
        for j in 0..d {
            r[i - d + j] = f.sub(r[i - d + j], f.mul(c, m[j]));
        }
    }
    r.truncate(d);
    (q, r)
}

/// Word accumulator for delayed modular reduction.
trait Acc: Copy + Default + std::ops::AddAssign {
    fn of(x: u64) -> Self;
    fn prod(a: u64, b: u64) -> Self;
    fn reduce(self, p: u64) -> u64;
}

impl Acc for u64 {
    fn of(x: u64) -> Self {
        x
    }
    fn prod(a: u64, b: u64) -> Self {
        a * b
    }
    fn reduce(self, p: u64) -> u64 {
        self % p
    }
}

impl Acc for u128 {
    fn of(x: u64) -> Self {
        x as u128
    }
    fn prod(a: u64, b: u64) -> Self {
        a as u128 * b as u128
    }
    fn reduce(self, p: u64) -> u64 {
        (self % p as u128) as u64
    }
}

/// Whether `terms` products of residues mod `p`, plus one residue, fit in a u64.
fn fits_u64(p: u64, terms: u64) -> bool {
    let sq = ((p - 1) as u128) * ((p - 1) as u128);
    sq * terms as u128 + p as u128 <= u64::MAX as u128
}

fn prime_mul<T: Acc>(p: u64, a: &[FqElem], b: &[FqElem]) -> Vec<u64> {
    let mut acc = vec![T::default(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        let x = x.0;
        if x == 0 {
            continue;
        }
        for (slot, y) in acc[i..].iter_mut().zip(b) {
            *slot += T::prod(x, y.0);
        }
    }
    acc.into_iter().map(|v| v.reduce(p)).collect()
}

fn prime_divrem<T: Acc>(p: u64, a: &[FqElem], m: &[FqElem]) -> (Vec<u64>, Vec<u64>) {
    let d = m.len() - 1;
    let neg_m: Vec<u64> = m[..d].iter().map(|c| (p - c.0) % p).collect();
    let mut acc: Vec<T> = a.iter().map(|c| T::of(c.0)).collect();
    let mut q = vec![0u64; a.len() - d];
    for i in (d..a.len()).rev() {
        let c = acc[i].reduce(p);
        q[i - d] = c;
        if c == 0 {
            continue;
        }
        for (slot, &nm) in acc[i - d..i].iter_mut().zip(&neg_m) {
            *slot += T::prod(c, nm);
        }
    }
    let r = acc[..d].iter().map(|v| v.reduce(p)).collect();
    (q, r)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

/// `g` has exact order `n`, given the distinct primes dividing `n`.
pub(crate) fn has_order<F: Field>(f: &F, g: F::Elem, n: u64, primes: &[u64]) -> bool {
    !g.is_zero()
        && f.pow(g, n as u128) == f.one()
        && primes.iter().all(|&r| f.pow(g, (n / r) as u128) != f.one())
}

/// Distinct primes dividing `q² - 1 = (q - 1)(q + 1)`.
fn group_primes(q: u64) -> Vec<u64> {
    let mut v = prime_divisors(q - 1);
    v.extend(prime_divisors(q + 1));
    v.sort_unstable();
    v.dedup();
    v
}

/// Exact multiplicative order of `g`, which must divide `group`.
pub fn element_order<F: Field>(f: &F, g: F::Elem, group: u64) -> Option<u64> {
    if g.is_zero() || f.pow(g, group as u128) != f.one() {
        return None;
    }
    let mut n = group;
    for r in prime_divisors(group) {
        while n % r == 0 && f.pow(g, (n / r) as u128) == f.one() {
            n /= r;
        }
    }
    Some(n)
}

fn find_modulus(p: u64, e: u32) -> Result<Vec<u64>> {
    let prime = FieldCtx::new(p, 1)?;
    let count = checked_pow(p, e).ok_or(Error::WordOverflow { p, e })?;
    for t in 0..count {
        let mut digits = vec![0u64; e as usize];
        let mut v = t;
        for d in digits.iter_mut().rev() {
            *d = v % p;
            v /= p;
        }
        if digits[0] == 0 {
            continue;
        }
        let mut coeffs: Vec<FqElem> = digits.iter().map(|&d| FqElem(d)).collect();
        coeffs.push(FqElem(1));
        if oracle::is_irreducible(&prime, &Poly::new(coeffs))? {
            digits.push(1);
            return Ok(digits);
        }
    }
    Err(Error::internal(format!(
        "no irreducible polynomial of degree {e} over F_{p}"
    )))
}

/// F_{q²} as `F_q[w]/(w² - nonsquare)`.
#[derive(Clone, Copy, Debug)]
pub struct Fq2Field<'a> {
    ctx: &'a FieldCtx,
}

impl<'a> Fq2Field<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    /// `w` itself.
    pub fn w(&self) -> Fq2Elem {
        Fq2Elem::new(FqElem::ZERO, self.ctx.one())
    }
}

impl Field for Fq2Field<'_> {
    type Elem = Fq2Elem;

    fn order(&self) -> u64 {
        self.ctx.q * self.ctx.q
    }

    fn characteristic(&self) -> u64 {
        self.ctx.p
    }

    fn one(&self) -> Fq2Elem {
        Fq2Elem::from_base(self.ctx.one())
    }

    fn add(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        let k = self.ctx;
        Fq2Elem::new(k.add(x.a, y.a), k.add(x.b, y.b))
    }

    fn sub(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        let k = self.ctx;
        Fq2Elem::new(k.sub(x.a, y.a), k.sub(x.b, y.b))
    }

    fn neg(&self, x: Fq2Elem) -> Fq2Elem {
        Fq2Elem::new(self.ctx.neg(x.a), self.ctx.neg(x.b))
    }

    fn mul(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        let k = self.ctx;
        let ac = k.mul(x.a, y.a);
        let bd = k.mul(x.b, y.b);
        let ad = k.mul(x.a, y.b);
        let bc = k.mul(x.b, y.a);
        Fq2Elem::new(k.add(ac, k.mul(bd, k.nonsquare)), k.add(ad, bc))
    }

    fn inv(&self, x: Fq2Elem) -> Result<Fq2Elem> {
        if x.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let k = self.ctx;
        // x · conj(x) = a² - ns·b² lies in F_q.
        let norm = k.sub(k.mul(x.a, x.a), k.mul(k.nonsquare, k.mul(x.b, x.b)));
        let n_inv = k.inv(norm)?;
        Ok(Fq2Elem::new(k.mul(x.a, n_inv), k.neg(k.mul(x.b, n_inv))))
    }

    fn from_int(&self, n: i64) -> Fq2Elem {
        Fq2Elem::from_base(self.ctx.from_int(n))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq2Elem {
        Fq2Elem::new(self.ctx.random(rng), self.ctx.random(rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f29() -> FieldCtx {
        FieldCtx::new(29, 1).unwrap()
    }

    #[test]
    fn context_parameters() {
        let k = f29();
        assert_eq!((k.q(), k.s(), k.m()), (29, 2, 3));
        // 2 is the first failure of Euler's criterion mod 29 (29 = 5 mod 8).
        assert_eq!(k.nonsquare(), k.elem(2));
        assert_eq!(k.gen_q(), k.elem(2));

        let k = FieldCtx::new(59, 1).unwrap();
        assert_eq!((k.s(), k.m()), (1, 3));
        assert_eq!(k.nonsquare(), k.elem(2));

        let k = FieldCtx::new(3, 1).unwrap();
        assert_eq!((k.s(), k.m()), (1, 3));
        assert_eq!(k.gen_q(), k.elem(2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(2, 1).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(FieldCtx::new(15, 1).unwrap_err(), Error::NotOddPrime(15));
        assert_eq!(FieldCtx::new(7, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            FieldCtx::new(3, 40),
            Err(Error::WordOverflow { .. })
        ));
    }

    #[test]
    fn base_field_examples() {
        let k = f29();
        assert_eq!(k.mul(k.elem(12), k.elem(12)), k.elem(-1));
        assert_eq!(k.inv(k.one()).unwrap(), k.one());
        assert_eq!(k.pow(k.elem(2), 7), k.elem(12));
        assert_eq!(k.inv(FqElem::ZERO), Err(Error::InverseOfZero));
        assert_eq!(k.pow_signed(k.elem(2), -7).unwrap(), k.inv(k.elem(12)).unwrap());
    }

    #[test]
    fn quadratic_extension_examples() {
        let k = f29().with_nonsquare(FieldCtx::new(29, 1).unwrap().elem(3)).unwrap();
        let ext = k.fq2();
        let two_w = k.fq2_elem(0, 2);
        assert_eq!(ext.mul(two_w, two_w), k.fq2_elem(12, 0));
        let w = ext.w();
        assert_eq!(ext.mul(ext.inv(w).unwrap(), w), ext.one());

        let k = FieldCtx::new(59, 1).unwrap();
        let ext = k.fq2();
        let gamma = k.fq2_elem(-5, -22);
        let gamma_inv = ext.inv(gamma).unwrap();
        assert_eq!(ext.mul(gamma, gamma_inv), ext.one());
        assert_eq!(gamma_inv, k.fq2_elem(-5, 22));
        assert_eq!(k.frobenius(gamma), gamma_inv);
        assert_eq!(ext.pow(gamma, 59), gamma_inv);
    }

    #[test]
    fn squares() {
        let k = f29();
        assert!(!k.is_square(k.elem(3)).unwrap());
        assert!(k.is_square(k.one()).unwrap());
        assert!(k.is_square(k.elem(28)).unwrap());
        assert_eq!(k.is_square(FqElem::ZERO), Err(Error::ZeroInput("is_square argument")));
        for q in [3u64, 5, 7, 11, 13, 29, 59, 97, 101, 199] {
            let k = FieldCtx::new(q, 1).unwrap();
            let table: std::collections::HashSet<u64> = (1..q).map(|a| a * a % q).collect();
            for c in 1..q {
                assert_eq!(k.is_square(k.elem(c as i64)).unwrap(), table.contains(&c));
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let k = f29();
        assert_eq!(k.root_of_unity_fq(4).unwrap(), k.elem(12));
        assert_eq!(k.root_of_unity_fq(1).unwrap(), k.one());
        assert_eq!(k.root_of_unity_fq(2).unwrap(), k.elem(-1));
        assert!(matches!(
            k.root_of_unity_fq(3),
            Err(Error::OrderDoesNotDivide { order: 3, group: 28 })
        ));
        let ext = k.fq2();
        let beta = k.root_of_unity_fq2(8).unwrap();
        assert_eq!(ext.pow(beta, 4), ext.from_int(-1));
        assert_eq!(element_order(&ext, beta, 29 * 29 - 1), Some(8));
        assert_eq!(k.root_of_unity_fq2(2).unwrap(), ext.from_int(-1));
    }

    #[test]
    fn frobenius_is_conjugation() {
        let k = f29();
        let ext = k.fq2();
        let x = k.fq2_elem(5, 0);
        assert_eq!(k.frobenius(x), x);
        let y = k.fq2_elem(7, 11);
        assert_eq!(k.frobenius(y), ext.pow(y, 29));
        assert_eq!(k.frobenius(k.frobenius(y)), y);
    }

    #[test]
    fn extension_field_arithmetic() {
        let k = FieldCtx::new(3, 2).unwrap();
        assert_eq!(k.q(), 9);
        // lex scan with the constant term most significant: x^2 + 1 is the
        // first irreducible monic quadratic over F_3 with nonzero constant.
        assert_eq!(k.modulus(), &[1, 0, 1]);
        for t in 1..9 {
            let x = k.lex_element(t);
            assert_eq!(k.mul(x, k.inv(x).unwrap()), k.one());
            assert_eq!(k.pow(x, 9), x);
        }
        assert_eq!(element_order(&k, k.gen_q(), 8), Some(8));
        let ext = k.fq2();
        assert_eq!(element_order(&ext, k.gen_q2(), 80), Some(80));
        assert!(!k.is_square(k.nonsquare()).unwrap());
    }
}
