//! Genus-two censuses and Siegel-modular trace formulas.

pub mod aut;
pub mod calibration;
pub mod char2;
pub mod degree3;
pub mod forms;
pub mod odd;
pub mod traces;

pub use calibration::{BraceSelector, Calibration, CALIBRATION};
pub use char2::{enumerate_g2_char2, enumerate_hyperelliptic_char2};
pub use degree3::SigmaAbcStore;
pub use odd::{enumerate_g2, SexticOrbitMass};
pub use traces::{calibrate, Genus2Data, SigmaABReport, TraceEngine};
