//! Garside calculus over finitely presented left-cancellative categories.
//!
//! Word reversing, recognition of Garside families from presentations and
//! from germs, greedy, symmetric and Δ-normal forms, word problem solvers
//! and lcm/gcd computations.

pub mod core;
pub mod error;
pub mod garside;
pub mod germ;
pub mod normal;
pub mod presentation;
pub mod reversing;
pub mod signed;

pub use crate::core::{Alphabet, Letter, ObjectId, Path, Shape, SignedLetter, SignedPath};
pub use crate::error::{Error, Result};
pub use crate::garside::{DeltaData, GarsideStructure};
pub use crate::germ::{Elem, Germ, GermVerdict};
pub use crate::presentation::{Complement, NoetherianEvidence, Orientation, Presentation};
