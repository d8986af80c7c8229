//! Clifford algebras, their matrix representations and the groups defined inside them.

pub mod classify;
pub mod groups;
pub mod matrices;
pub mod multivector;
pub mod report;
pub mod representation;
pub mod sampling;
pub mod scalars;
pub mod transport;

pub use multivector::{Blade, Multivector, QuatType, Signature};
pub use report::{Report, Status};
pub use scalars::{Complex, Quaternion, Rational, Scalar};
