//! Exact computations for complex structures on tangent Lie algebras of
//! compact Lie groups: structure tensors, root decompositions, tangent lifts,
//! Samelson-type structures and Nijenhuis verification.

pub mod algebra;
pub mod catalog;
pub mod checks;
pub mod error;
pub mod linalg;
pub mod report;
pub mod roots;
pub mod samelson;
pub mod scalar;
pub mod tangent;
pub mod verify;

pub use algebra::{Element, LieAlgebra};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use report::{Certificate, VerificationItem, VerificationReport};
pub use roots::{decompose, DecomposeOptions, Root, RootDatum};
pub use samelson::{ComplexStructure, Provenance};
pub use scalar::{GaussianRational, Rational};
pub use tangent::{TangentAlgebra, Tower};
