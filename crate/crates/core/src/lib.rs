//! Exact tensor calculus on Lie groups carrying an almost hypercomplex
//! structure with a Hermitian-Norden metric.
//!
//! Everything is computed in a global frame of left-invariant vector fields,
//! so tensor fields reduce to constant component arrays and covariant
//! derivatives reduce to structure-constant algebra. The crate provides
//!
//! * a dual-backend scalar type (exact rationals / `f64`) with dense linear
//!   algebra ([`linalg`]),
//! * Lie frames with Levi-Civita data derived from the Koszul formula
//!   ([`frame`]),
//! * Nijenhuis tensors, associated Nijenhuis tensors and the wedge-style
//!   composition operations on (1,2)-tensors ([`nijenhuis`]),
//! * validated hypercomplex Hermitian-Norden structures with their
//!   fundamental tensors, class predicates and identity verifiers ([`hn`]),
//! * a decision procedure for connections with totally skew-symmetric
//!   torsion preserving the structure ([`torsion`]),
//! * concrete instance generators, including a four-dimensional solvable
//!   example family and seeded random structures ([`instances`]),
//! * a JSON instance format shared with the command-line tool ([`json`]).
//!
//! All verification paths default to the rational backend, where every
//! identity is checked for exact zero; the float backend uses a scaled
//! `1e-9` tolerance and exists for timing runs and large sweeps.

// Index-matched loops over several tensors at once are the house style
// here; iterator rewrites obscure the index algebra.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod frame;
pub mod hn;
pub mod instances;
pub mod json;
pub mod linalg;
pub mod nijenhuis;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod torsion;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use frame::LieFrame;
pub use hn::{AssocSix, ClassReport, FundamentalTensor, HnStructure};
pub use linalg::{Matrix, SolutionSet};
pub use report::ResidualReport;
pub use scalar::{Backend, Scalar};
pub use tensor::{Endo, Tensor03, Tensor12};
pub use torsion::{TorsionProblem, TorsionResult, TorsionStatus};
