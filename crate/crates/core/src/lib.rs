//! Interval exchange transformations and Rauzy induction.

pub mod error;
pub mod flow;
pub mod golden;
pub mod iet;
pub mod numerics;
pub mod perm;
pub mod rauzy;
pub mod reduce;
pub mod subst;

pub use error::{Error, Result};
pub use iet::{IetMap, IetPair, LengthVector, Word};
pub use numerics::{CertifiedReal, Comparison, IntMatrix, IntVector};
pub use perm::{CyclicSet, Label, Permutation};
pub use rauzy::RauzyPath;
pub use subst::Substitution;
