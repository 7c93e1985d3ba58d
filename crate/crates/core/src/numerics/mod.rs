//! Special functions and closed-form hyperbolic volumes.

mod bipyramid;
mod dilog;
mod gram;
mod tetrahedron;

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bipyramid::{
    bipyramid_volume, half_bipyramid, tn_tetrahedron, tn_volume, TnClosedForm, IDEAL_APEX_ANGLE,
};
pub use dilog::{dilog, dilog_real, lobachevsky};
pub use gram::{Edge, GramMatrix, VertexType, IDEAL_TOLERANCE};
pub use tetrahedron::{
    edge_lengths, schlafli_lengths, ushijima_volume, EdgeLength, GeneralizedTetrahedron, Orientation,
    TetrahedronVolume, DET_TOLERANCE, FLAT_TOLERANCE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("dihedral angle {edge:?} = {value} is outside [0, π]")]
    AngleOutOfRange { edge: Edge, value: f64 },
    #[error("angles do not describe a hyperbolic tetrahedron (det G = {det:e})")]
    NotRealizable { det: f64 },
    #[error("truncation planes at the ends of edge {edge:?} intersect")]
    IntersectingTruncations { edge: Edge },
    #[error("{0}")]
    InvalidArgument(String),
}

/// Reference volumes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Regular ideal tetrahedron, `3Λ(π/3)`.
    pub v_tet: f64,
    /// Supremum of a bipyramid volume, `5 v_tet`.
    pub five_v_tet: f64,
    /// Whitehead link exterior: regular ideal octahedron, `8Λ(π/4)`.
    pub vol_whitehead: f64,
    /// `6_2^2` exterior: four regular ideal tetrahedra.
    pub vol_622: f64,
}

pub fn constants() -> &'static Constants {
    static CONSTANTS: OnceLock<Constants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        let v_tet = 3.0 * lobachevsky(PI / 3.0);
        Constants {
            v_tet,
            five_v_tet: 5.0 * v_tet,
            vol_whitehead: 8.0 * lobachevsky(PI / 4.0),
            vol_622: 4.0 * v_tet,
        }
    })
}
