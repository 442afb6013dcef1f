//! Rigidity of monomial ideals in numerical semigroup rings.
//!
//! The ring `R = k[[t^S]]` is encoded by its value semigroup `S`, and a
//! monomial fractional ideal by an S-closed set of integers. Rigidity
//! (`Ext¹(I, I) = 0`) is decided twice: by a length formula involving the
//! twisted conormal module, and by the torsion of `I ⊗ I*`.

pub mod error;
pub mod graded;
pub mod ideal;
pub mod linalg;
pub mod linkage;
pub mod rigidity;
pub mod search;
pub mod semigroup;
pub mod union_find;

pub use error::{Error, Result};
pub use graded::{ShiftModule, TensorDiagnostics};
pub use ideal::RelativeIdeal;
pub use semigroup::NumericalSemigroup;
