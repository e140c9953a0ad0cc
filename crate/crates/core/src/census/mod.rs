//! Curve censuses over finite fields.

pub mod g1;

pub use g1::{EllipticCensus, EllipticClassRecord};
