//! Exact construction and verification of quantum-mechanical partner
//! Hamiltonians with reflection (parity) operators.
//!
//! The crate builds pairs `H±` of Schrödinger-type operators whose
//! potentials contain a reflection term, together with an intertwining
//! operator `P_N^-` of order N (N = 1, 2), and verifies two layers of
//! structure:
//!
//! * symbolically (exact rational-function arithmetic): the intertwining
//!   relation, the polynomial superalgebra closure, and every named
//!   closure condition of the 2-fold classification;
//! * numerically (finite differences): the spectral consequences —
//!   pairing of eigenvalues between `H+` and `H-`, kernel invariance,
//!   and agreement with the two-component matrix representation.

pub mod builders;
pub mod coeff;
pub mod conditions;
pub mod config;
pub mod error;
pub mod freering;
pub mod model;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod refop;
pub mod report;
pub mod spectral;
pub mod split;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use model::{CaseTag, PseudoOddConstant, SusyConstants, SusyModel};
pub use ratfun::RationalFunction;
pub use rational::Rational;
pub use refop::RefOp;
pub use split::SplitFunction;
