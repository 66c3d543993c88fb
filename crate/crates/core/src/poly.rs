//! Dense univariate polynomials over a [`Field`].
//!
//! [`Poly`] is a plain coefficient vector (ascending, no trailing zeros);
//! arithmetic goes through a [`PolyRing`], which borrows the coefficient
//! field. Coefficient fields are distinguished by element type, so mixing
//! F_q and F_{q²} operands is rejected at compile time.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: FieldElement> Poly<E> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<E> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, i: usize) -> E {
        self.coeffs.get(i).copied().unwrap_or(E::ZERO)
    }

    /// `f(x^t)`: coefficient `i` moves to index `i·t`.
    ///
    /// # Panics
    /// If `t == 0`.
    pub fn substitute_power(&self, t: usize) -> Self {
        assert!(t > 0, "substitute_power needs a positive exponent");
        if t == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut out = vec![E::ZERO; (self.coeffs.len() - 1) * t + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * t] = c;
        }
        Poly { coeffs: out }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Polynomial arithmetic over the field `F`.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<'a, F: Field> {
    field: &'a F,
}

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly::zero()
    }

    pub fn one(&self) -> Poly<F::Elem> {
        Poly::new(vec![self.field.one()])
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        Poly::new(vec![c])
    }

    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut v = vec![self.field.zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// Polynomial with integer coefficients mapped into the field (ascending).
    pub fn from_ints(&self, coeffs: &[i64]) -> Poly<F::Elem> {
        Poly::new(coeffs.iter().map(|&c| self.field.from_int(c)).collect())
    }

    /// `x^n - c`.
    pub fn binomial(&self, n: usize, c: F::Elem) -> Poly<F::Elem> {
        let mut v = vec![self.field.zero(); n + 1];
        v[n] = self.field.one();
        v[0] = self.field.sub(v[0], c);
        Poly::new(v)
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| self.field.add(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| self.field.sub(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::new(a.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: F::Elem) -> Poly<F::Elem> {
        Poly::new(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::new(self.field.mul_slices(&a.coeffs, &b.coeffs))
    }

    pub fn pow(&self, a: &Poly<F::Elem>, mut k: u32) -> Poly<F::Elem> {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Scale to leading coefficient 1. The zero polynomial is returned unchanged.
    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.leading() {
            None => a.clone(),
            Some(lc) if lc == self.field.one() => a.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(a, inv)
            }
        }
    }

    pub fn is_monic(&self, a: &Poly<F::Elem>) -> bool {
        a.leading() == Some(self.field.one())
    }

    /// `(quotient, remainder)` with `deg(remainder) < deg(b)`.
    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let lc = b.leading().ok_or(Error::DivisionByZero)?;
        if b.coeffs.len() == 1 {
            let inv = self.field.inv(lc)?;
            return Ok((self.scale(a, inv), Poly::zero()));
        }
        if lc == self.field.one() {
            let (q, r) = self.field.divrem_monic(&a.coeffs, &b.coeffs);
            return Ok((Poly::new(q), Poly::new(r)));
        }
        let inv = self.field.inv(lc)?;
        let bm = self.scale(b, inv);
        let (q, r) = self.field.divrem_monic(&a.coeffs, &bm.coeffs);
        Ok((self.scale(&Poly::new(q), inv), Poly::new(r)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let lc = b.leading().ok_or(Error::DivisionByZero)?;
        if b.coeffs.len() == 1 {
            return Ok(Poly::zero());
        }
        if lc == self.field.one() {
            let (_, r) = self.field.divrem_monic(&a.coeffs, &b.coeffs);
            return Ok(Poly::new(r));
        }
        self.divrem(a, b).map(|(_, r)| r)
    }

    /// `a / b`, failing if `b` does not divide `a`.
    pub fn exact_div(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!(
                "divisor of degree {:?} leaves a remainder of degree {:?}",
                b.degree(),
                r.degree()
            )));
        }
        Ok(q)
    }

    /// Whether `d` divides `a`.
    pub fn divides(&self, d: &Poly<F::Elem>, a: &Poly<F::Elem>) -> Result<bool> {
        Ok(self.rem(a, d)?.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut a = self.monic(a);
        let mut b = self.monic(b);
        while !b.is_zero() {
            let r = if b.coeffs.len() == 1 {
                Poly::zero()
            } else {
                Poly::new(self.field.divrem_monic(&a.coeffs, &b.coeffs).1)
            };
            a = b;
            b = self.monic(&r);
        }
        a
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: F::Elem) -> F::Elem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| {
                self.field.add(self.field.mul(acc, x), c)
            })
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.field.mul(self.field.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `f(-x)`.
    pub fn negate_variable(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::new(
            a.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { self.field.neg(c) } else { c })
                .collect(),
        )
    }

    pub fn mulmod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        modulus: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>> {
        self.rem(&self.mul(a, b), modulus)
    }

    /// `base^exp mod modulus` by square-and-multiply.
    pub fn powmod(
        &self,
        base: &Poly<F::Elem>,
        mut exp: u128,
        modulus: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>> {
        match modulus.degree() {
            None => return Err(Error::DivisionByZero),
            Some(0) => return Err(Error::ConstantModulus),
            Some(_) => {}
        }
        let m = self.monic(modulus);
        let reduce = |p: Vec<F::Elem>| Poly::new(self.field.divrem_monic(&p, &m.coeffs).1);
        let mut acc = reduce(vec![self.field.one()]);
        let mut b = reduce(base.coeffs.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = reduce(self.field.mul_slices(&acc.coeffs, &b.coeffs));
            }
            exp >>= 1;
            if exp > 0 {
                b = reduce(self.field.mul_slices(&b.coeffs, &b.coeffs));
            }
        }
        Ok(acc)
    }

    /// Product of every factor raised to its multiplicity; the empty list gives 1.
    pub fn product(&self, list: &FactorList<F::Elem>) -> Poly<F::Elem> {
        list.entries.iter().fold(self.one(), |acc, f| {
            let term = self.pow(&f.poly, f.multiplicity);
            self.mul(&acc, &term)
        })
    }
}

/// One irreducible factor with its multiplicity and a label naming the
/// construction that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor<E> {
    pub poly: Poly<E>,
    pub multiplicity: u32,
    pub provenance: String,
}

/// Multiset of monic factors of degree at least 1, stored without repeats.
#[derive(Clone, Debug)]
pub struct FactorList<E> {
    entries: Vec<Factor<E>>,
    index: HashMap<Poly<E>, usize>,
}

impl<E: FieldElement> Default for FactorList<E> {
    fn default() -> Self {
        FactorList {
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<E: FieldElement> FactorList<E> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `f` normalized to monic. Inserting a polynomial that is
    /// already present adds to its multiplicity and keeps the first label.
    pub fn insert<F: Field<Elem = E>>(
        &mut self,
        field: &F,
        f: Poly<E>,
        multiplicity: u32,
        provenance: impl Into<String>,
    ) -> Result<()> {
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if multiplicity == 0 {
            return Err(Error::internal("factor multiplicity must be positive"));
        }
        let f = PolyRing::new(field).monic(&f);
        self.push_monic(f, multiplicity, provenance.into());
        Ok(())
    }

    fn push_monic(&mut self, f: Poly<E>, multiplicity: u32, provenance: String) {
        if let Some(&i) = self.index.get(&f) {
            self.entries[i].multiplicity += multiplicity;
        } else {
            self.index.insert(f.clone(), self.entries.len());
            self.entries.push(Factor {
                poly: f,
                multiplicity,
                provenance,
            });
        }
    }

    /// Merges every entry of `other` into `self`.
    pub fn append(&mut self, other: FactorList<E>) {
        for f in other.entries {
            self.push_monic(f.poly, f.multiplicity, f.provenance);
        }
    }

    pub fn entries(&self) -> &[Factor<E>] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &Factor<E>> {
        self.entries.iter()
    }

    /// Number of distinct factors.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, f: &Poly<E>) -> bool {
        self.index.contains_key(f)
    }

    /// Total degree counted with multiplicity.
    pub fn total_degree(&self) -> usize {
        self.entries
            .iter()
            .map(|f| f.poly.degree().unwrap_or(0) * f.multiplicity as usize)
            .sum()
    }

    /// `(factor, multiplicity)` pairs in canonical order, labels dropped.
    pub fn multiset(&self) -> Vec<(Poly<E>, u32)> {
        let mut v: Vec<_> = self
            .entries
            .iter()
            .map(|f| (f.poly.clone(), f.multiplicity))
            .collect();
        v.sort();
        v
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|f| f.multiplicity == 1)
    }
}
