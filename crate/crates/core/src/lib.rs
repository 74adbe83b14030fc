//! Invariant theory for the Lie superalgebras `gl`, `osp`, `pe` and `spe`
//! tested by exact linear algebra over the rationals.

pub mod claims;
pub mod error;
pub mod invariants;
pub mod liesuper;
pub mod linalg;
pub mod report;
pub mod superalg;
pub mod supercomb;
pub mod symgroup;
pub mod tensorspace;

pub use error::{Error, Result};
