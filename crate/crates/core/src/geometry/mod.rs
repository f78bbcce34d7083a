//! Point families, exact hulls, slopes and the difference-point check.

pub mod claim;
pub mod family;
pub mod hull;
pub mod point;
pub mod slope;

pub use claim::{claim_equivalence_check, ClaimReport};
pub use family::{
    admissible_indices, circle_violations, family_hull, gen_family, FamilyHull, LatticePoint, PointFamily,
    PointLabel, Quadrants,
};
pub use hull::{convex_hull, polygon_area, HullPolygon};
pub use point::{orient, HPoint};
pub use slope::{gamma_sup, slope_check, slope_gamma, SlopeReport};
