//! Exact symbolic engine for Alexander polynomials of braid closures and the
//! Seiberg-Witten invariants of a family of link surgery 4-manifolds.
//!
//! The crate is organized bottom-up:
//!
//! * [`laurent`]: sparse multivariate Laurent polynomials over the integers,
//!   the group ring in which every invariant lives.
//! * [`braid`]: braid words, the Artin action on free groups and closure
//!   combinatorics.
//! * [`fox`]: Fox free-differential calculus.
//! * [`burau`]: reduced Burau matrices, an independent Alexander route.
//! * [`det`]: exact determinants of Laurent-polynomial matrices.
//! * [`alexander`]: knot and closure-plus-axis Alexander polynomials.
//! * [`surgery`]: the gluing pipeline, basic classes and divisibility.
//! * [`catalog`]: built-in and user-supplied knot catalogs.

pub mod alexander;
pub mod braid;
pub mod burau;
pub mod catalog;
pub mod det;
pub mod fox;
pub mod laurent;
pub mod surgery;

pub use alexander::{AlexResult, FibrednessReport, KnotSpec};
pub use braid::{BraidWord, ClosureInfo, FreeWord};
pub use laurent::{LaurentFraction, LaurentPoly, Monomial, Unit, VariableSet};
pub use surgery::{BasicClass, FamilyParams, SWInvariant};
