//! Minimal linear codes built from characteristic functions over finite fields.
//!
//! The crate covers field arithmetic and subspaces ([`field`]), exact
//! arithmetic in Z[ζ_p] ([`cyclotomic`]), p-ary functions and their Walsh
//! spectra ([`pfunc`]), the two code families with weight and minimality
//! tools ([`code`]), and the parametric constructions with their predicted
//! weight tables ([`constructions`]). [`report`] bundles the cross-checks for
//! one code and [`catalog`] holds the worked examples.

pub mod catalog;
pub mod code;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod field;
mod linalg;
pub mod pfunc;
pub mod report;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, Form, Subspace, VectorSpace};
