//! Exact and certified numerics.

pub mod certified;
pub mod linalg;
pub mod perron;
pub mod poly;

pub use certified::{compare, Comparison, CertifiedReal, DEFAULT_MAX_BITS};
pub use linalg::{IntMatrix, IntVector, RowSpace};
pub use perron::{perron, perron_eigen, PerronData};
pub use poly::{char_poly, factor_int_poly, quartic_galois, IntPoly, QuarticGaloisData};
