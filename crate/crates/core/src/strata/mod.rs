//! Characteristic-`p` invariants of curves: Hasse–Witt matrices, `p`-rank,
//! `a`-number, Newton polygons, supersingular constructions and strata
//! censuses.

pub mod bounds;
pub mod census;
pub mod construct;
pub mod models;
pub mod newton;
pub mod table;

pub use bounds::{bound_check, Bound, Violation};
pub use census::{
    closed_strata, quartic_census_f2, strata_census_g1, strata_census_g2, strata_census_g2_char2, strata_census_g2_odd,
    strata_census_g3_char2, supersingular_mass, Genus3Census,
};
pub use construct::{build_ss_char2, build_ss_oddp, large_genus_examples, quotient_curve, AsModel, Status, SupersingularModel};
pub use models::{hasse_witt, point_counts, CurveModel, HasseWittMatrix};
pub use newton::NewtonPolygon;
pub use table::{StrataCensus, StrataKey};
