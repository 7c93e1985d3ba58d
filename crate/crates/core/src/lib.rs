//! Hyperbolicity and hyperbolic volumes of bongles.
//!
//! * [`bongle`]: charms, parsing, alternation, hyperbolicity verdicts,
//!   symmetry classes and enumeration.
//! * [`numerics`]: dilogarithm, Gram matrices, generalized tetrahedron
//!   volumes and the half-bipyramid family `T_n`.
//! * [`triangulation`]: bipyramid decomposition and angle constraints.
//! * [`optimizer`]: volume maximization and the per-bongle dispatcher.
//! * [`bounds`]: upper bounds, monotonicity and limit scans.

pub mod bongle;
pub mod bounds;
pub mod numerics;
pub mod optimizer;
pub mod triangulation;

pub use bongle::{
    are_equivalent, canonical_form, classify_nonalternating, decide_hyperbolic, enumerate_bongles,
    enumerate_bongles_with_cap, parse_bongle, Bongle, BongleError, Charm, EnumerationFilter, HyperbolicityReason,
    HyperbolicityVerdict, NonAltPair, NonAltType, ParseError, Pattern, Side,
};
pub use bounds::{
    bound_table, inequality_check, k_order_scan, k_order_scan_with_cap, limit_table, monotonicity_scan, volume_table, BoundRow,
    BoundsError, KOrderRow, KOrderScan, LimitRow, MonotonicityRow, MonotonicityScan, VolumeTableRow,
};
pub use numerics::{constants, Constants, GeneralizedTetrahedron, NumericsError};
pub use optimizer::{
    balanced_closed_form, bongle_volume, maximize_volume, maximize_volume_from, random_feasible_start, restart_audit, OptimizerError, OptimizerOptions,
    VolumeMethod, VolumeReport,
};
pub use triangulation::{
    build_decomposition, AngleAssignment, AngleSlot, SystemKind, TriangulatedBongle, TriangulationError,
};
