//! Exact computations with locally nilpotent derivations (LNDs) on finitely
//! presented commutative algebras `B = Q[X1..Xn]/(f1..fm)`.
//!
//! Everything is exact: coefficients are unbounded rationals and every ring
//! element is stored as its normal form modulo a reduced Gröbner basis. The
//! results hold over any field extension of characteristic zero, since none
//! of the computations (derivation images, kernels, Dixmier images) depend on
//! the base field beyond containing `Q`.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: sparse multivariate polynomials and term orders.
//! * [`groebner`]: Buchberger's algorithm and normal forms.
//! * [`ring`]: ring presentations, elements and the localization `B_t`.
//! * [`derivation`]: derivations given by generator images, nilpotency
//!   certificates and extension to `B[T]`.
//! * [`dixmier`]: slices, local slices, the Dixmier map and kernels via a slice.
//! * [`invariant`]: bounded-degree exact linear algebra (kernel bases,
//!   subalgebra spans, intersections, ML* estimates).
//! * [`parse`]: the expression grammar used by fixtures and the CLI.

pub mod derivation;
pub mod dixmier;
mod error;
pub mod groebner;
pub mod invariant;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ring;

pub use derivation::{Derivation, Nilpotency, NilpotencyCertificate};
pub use dixmier::{DixmierImage, KernelPresentation, SliceReport};
pub use error::{Error, Result};
pub use invariant::{Distinctness, Limits, SpanBasis};
pub use parse::{parse_expression, ParseError};
pub use poly::{Monomial, OrderKind, Polynomial, TermOrder, VarContext};
pub use ring::{LocalizedElement, Ring, RingElement};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
