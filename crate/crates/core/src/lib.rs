//! Explicit irreducible factorization of `x^(2^n·d) - 1` over an odd finite
//! field F_q, for odd `d` dividing `q + 1`, together with a generic
//! Cantor–Zassenhaus oracle that every explicit result can be checked against.

pub mod cyclotomic;
pub mod error;
pub mod explicit;
pub mod field;
pub mod numtheory;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod reproduce;
pub mod sequences;

pub use error::{Error, Result};
pub use field::{Field, FieldCtx, FieldElement, Fq2Elem, Fq2Field, FqElem};
pub use poly::{Factor, FactorList, Poly, PolyRing};
