//! Mod-2 cohomology of Milnor manifolds and projective spaces, zero-divisor
//! cup-length and bounds for higher topological complexity.

pub mod algebra;
pub mod bits;
pub mod bounds;
pub mod certfile;
pub mod certgen;
pub mod cuplength;
pub mod error;
pub mod expr;
pub mod par;
pub mod report;
pub mod space;
pub mod tensor;

pub use error::{Error, Result};
