//! Volumes and edge lengths of generalized (mildly truncated) hyperbolic
//! tetrahedra from their dihedral angles.
//!
//! The volume is Ushijima's dilogarithm formula
//!
//! ```text
//! U(z) = 1/2 [ Li2(z) + Li2(abde z) + Li2(acdf z) + Li2(bcef z)
//!            - Li2(-abc z) - Li2(-aef z) - Li2(-bdf z) - Li2(-cde z) ]
//! z∓   = -2 (sin A sin D + sin B sin E + sin C sin F ∓ sqrt(det G))
//!        / (ad + be + cf + abf + ace + bcd + def + abcdef)
//! Vol  = 1/2 Im (U(z-) - U(z+))
//! ```
//!
//! with `a = e^{iA}` and so on, in the labelling documented in [`super::gram`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dilog::dilog;
use super::gram::{Edge, GramMatrix, VertexType};
use super::NumericsError;

/// `det G` above this value counts as non-realizable; between `-DET_TOLERANCE`
/// and this value the tetrahedron is flat.
pub const DET_TOLERANCE: f64 = 1e-12;

/// Angles this close to `π` (or to `0` at an ideal vertex) flatten the tetrahedron.
pub const FLAT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetrahedronVolume {
    /// Absolute value of the volume.
    pub volume: f64,
    pub orientation: Orientation,
    /// Set when an angle reached `π` (or `0` at an ideal vertex); the volume is then 0.
    pub degenerate: bool,
}

impl TetrahedronVolume {
    pub fn signed(&self) -> f64 {
        match self.orientation {
            Orientation::Positive => self.volume,
            Orientation::Negative => -self.volume,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum EdgeLength {
    Finite(f64),
    /// The edge has an ideal endpoint.
    Infinite,
}

impl EdgeLength {
    pub fn finite(self) -> Option<f64> {
        match self {
            EdgeLength::Finite(l) => Some(l),
            EdgeLength::Infinite => None,
        }
    }
}

/// A tetrahedron given by its six dihedral angles in the `A..F` labelling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedTetrahedron {
    angles: [f64; 6],
}

impl GeneralizedTetrahedron {
    /// Angles must lie in `[0, π]`; an angle of exactly `π` is accepted as the
    /// flat limit.
    pub fn new(angles: [f64; 6]) -> Result<Self, NumericsError> {
        for (e, &a) in Edge::ALL.iter().zip(angles.iter()) {
            if !a.is_finite() || !(0.0..=PI).contains(&a) {
                return Err(NumericsError::AngleOutOfRange {
                    edge: *e,
                    value: a,
                });
            }
        }
        Ok(GeneralizedTetrahedron { angles })
    }

    pub fn from_labels(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self, NumericsError> {
        Self::new([a, b, c, d, e, f])
    }

    pub fn angles(&self) -> &[f64; 6] {
        &self.angles
    }

    pub fn angle(&self, e: Edge) -> f64 {
        self.angles[e.index()]
    }

    pub fn gram(&self) -> GramMatrix {
        GramMatrix::from_angles(&self.angles)
    }

    pub fn vertex_types(&self) -> [VertexType; 4] {
        self.gram().vertex_types()
    }

    pub fn volume(&self) -> Result<TetrahedronVolume, NumericsError> {
        ushijima_volume(self)
    }
}

/// Hyperbolic volume of a generalized tetrahedron.
pub fn ushijima_volume(t: &GeneralizedTetrahedron) -> Result<TetrahedronVolume, NumericsError> {
    let g = t.gram();
    let det = g.det();
    if det > DET_TOLERANCE {
        return Err(NumericsError::NotRealizable { det });
    }
    let flat = TetrahedronVolume {
        volume: 0.0,
        orientation: Orientation::Positive,
        degenerate: true,
    };
    if det >= -DET_TOLERANCE || is_flat(t, &g) {
        return Ok(flat);
    }

    let raw = volume_formula(&t.angles, det)?;
    Ok(TetrahedronVolume {
        volume: raw.abs(),
        orientation: if raw < 0.0 {
            Orientation::Negative
        } else {
            Orientation::Positive
        },
        degenerate: false,
    })
}

fn is_flat(t: &GeneralizedTetrahedron, g: &GramMatrix) -> bool {
    if t.angles.iter().any(|&a| a >= PI - FLAT_TOLERANCE) {
        return true;
    }
    let types = g.vertex_types();
    Edge::ALL.iter().any(|&e| {
        let (v0, v1) = e.vertices();
        let at_ideal = types[v0] == VertexType::Ideal || types[v1] == VertexType::Ideal;
        at_ideal && t.angle(e) <= FLAT_TOLERANCE
    })
}

/// Signed value `1/2 Im(U(z-) - U(z+))`; `det` must be negative.
pub(crate) fn volume_formula(angles: &[f64; 6], det: f64) -> Result<f64, NumericsError> {
    let [a, b, c, d, e, f] = angles.map(|x| Complex64::from_polar(1.0, x));
    let [sa, sb, sc, sd, se, sf] = angles.map(f64::sin);

    let s = sa * sd + sb * se + sc * sf;
    let root = Complex64::new(0.0, (-det).sqrt());
    let den = a * d + b * e + c * f + a * b * f + a * c * e + b * c * d + d * e * f + a * b * c * d * e * f;
    if den.norm() < 1e-300 {
        return Err(NumericsError::NotRealizable { det });
    }
    let z_minus = -2.0 * (s - root) / den;
    let z_plus = -2.0 * (s + root) / den;

    let (abde, acdf, bcef) = (a * b * d * e, a * c * d * f, b * c * e * f);
    let (abc, aef, bdf, cde) = (a * b * c, a * e * f, b * d * f, c * d * e);
    let u = |z: Complex64| -> Complex64 {
        0.5 * (dilog(z) + dilog(abde * z) + dilog(acdf * z) + dilog(bcef * z)
            - dilog(-abc * z)
            - dilog(-aef * z)
            - dilog(-bdf * z)
            - dilog(-cde * z))
    };
    Ok(0.5 * (u(z_minus) - u(z_plus)).im)
}

/// Lengths of the edges between non-ideal vertices.
///
/// Between two truncated (or two finite) vertices `cosh ℓ = |c_ij| / sqrt(c_ii c_jj)`;
/// between a finite and a truncated vertex `sinh ℓ = |c_ij| / sqrt(|c_ii c_jj|)`.
pub fn edge_lengths(t: &GeneralizedTetrahedron) -> Result<[EdgeLength; 6], NumericsError> {
    let g = t.gram();
    let det = g.det();
    if det >= -DET_TOLERANCE {
        return Err(NumericsError::NotRealizable { det });
    }
    let c = g.cofactors();
    let types = g.vertex_types();
    let mut out = [EdgeLength::Infinite; 6];
    for e in Edge::ALL {
        let (i, j) = e.vertices();
        if types[i] == VertexType::Ideal || types[j] == VertexType::Ideal {
            continue;
        }
        out[e.index()] = EdgeLength::Finite(finite_length(&c, i, j, e)?);
    }
    Ok(out)
}

fn finite_length(c: &[[f64; 4]; 4], i: usize, j: usize, edge: Edge) -> Result<f64, NumericsError> {
    let (ci, cj) = (c[i][i], c[j][j]);
    let ratio = c[i][j].abs() / (ci * cj).abs().sqrt();
    if ci * cj > 0.0 {
        // Ultraparallel planes (or two points); tangent planes give 0.
        if ratio < 1.0 - 1e-9 {
            return Err(NumericsError::IntersectingTruncations { edge });
        }
        Ok(ratio.max(1.0).acosh())
    } else {
        Ok(ratio.asinh())
    }
}

/// Edge lengths for the Schläfli formula, with every vertex listed in `cusps`
/// cut off by a horosphere instead of being sent to infinity.
///
/// The horosphere at each cusp is fixed by a normalization of the lightlike
/// vertex vector, so the lengths are only meaningful as a whole: for angle
/// variations that keep every cusp's angle sum at `π`,
/// `dVol = -1/2 Σ ℓ_e dθ_e` holds with these values. Non-cusp vertices must
/// not be ideal; near-ideal ones produce large but finite lengths.
pub fn schlafli_lengths(t: &GeneralizedTetrahedron, cusps: [bool; 4]) -> Result<[f64; 6], NumericsError> {
    let g = t.gram();
    let det = g.det();
    if det >= -DET_TOLERANCE {
        return Err(NumericsError::NotRealizable { det });
    }
    let c = g.cofactors();
    let abs_det = det.abs();
    // Keeps lengths finite at a non-cusp vertex sitting exactly on the ideal boundary.
    let floor = 1e-300_f64;
    let mut out = [0.0; 6];
    for e in Edge::ALL {
        let (i, j) = e.vertices();
        let cij = c[i][j].abs().max(floor);
        out[e.index()] = match (cusps[i], cusps[j]) {
            (true, true) => (cij / (2.0 * abs_det)).ln(),
            (true, false) => (cij / (c[j][j].abs().max(floor) * abs_det).sqrt()).ln(),
            (false, true) => (cij / (c[i][i].abs().max(floor) * abs_det).sqrt()).ln(),
            (false, false) => {
                let (ci, cj) = (c[i][i], c[j][j]);
                let ratio = cij / (ci.abs().max(floor) * cj.abs().max(floor)).sqrt();
                if ci * cj >= 0.0 {
                    ratio.max(1.0).acosh()
                } else {
                    ratio.asinh()
                }
            }
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const V_TET: f64 = 1.014_941_606_409_653_6;

    fn tet(a: [f64; 6]) -> GeneralizedTetrahedron {
        GeneralizedTetrahedron::new(a).unwrap()
    }

    #[test]
    fn regular_ideal() {
        let v = tet([PI / 3.0; 6]).volume().unwrap();
        assert!((v.volume - V_TET).abs() < 1e-13);
        assert_eq!(v.orientation, Orientation::Positive);
    }

    #[test]
    fn ideal_tetrahedron_matches_lobachevsky_sum() {
        // Opposite edges share angles: (α, β, γ) with α + β + γ = π.
        let (x, y) = (0.7, 1.1);
        let z = PI - x - y;
        let t = tet([x, y, z, x, y, z]);
        let l = |t: f64| super::super::dilog::lobachevsky(t);
        let expect = l(x) + l(y) + l(z);
        assert!((t.volume().unwrap().volume - expect).abs() < 1e-12);
    }

    #[test]
    fn regular_ideal_octahedron_from_four_pieces() {
        // The octahedron splits around a diagonal into four ideal tetrahedra
        // with angles (π/2, π/4, π/4); the Whitehead link volume.
        let t = tet([PI / 2.0, PI / 4.0, PI / 4.0, PI / 2.0, PI / 4.0, PI / 4.0]);
        let v = 4.0 * t.volume().unwrap().volume;
        assert!((v - 3.663_862_376_708_876).abs() < 1e-12);
    }

    #[test]
    fn flat_and_unrealizable() {
        let v = tet([PI, 0.0, 0.0, PI, 0.0, 0.0]);
        let r = ushijima_volume(&v);
        assert!(matches!(r, Ok(TetrahedronVolume { degenerate: true, .. }) | Err(_)));
        // All right angles: a spherical (positive-definite) Gram matrix.
        let err = ushijima_volume(&tet([PI / 2.0; 6])).unwrap_err();
        assert!(matches!(err, NumericsError::NotRealizable { .. }));
        // Ideal vertex with a zero angle.
        let t = tet([0.0, PI / 2.0, PI / 2.0, 0.3, 0.3, 0.3]);
        let v = t.volume().unwrap();
        assert!(v.degenerate);
        assert_eq!(v.volume, 0.0);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(GeneralizedTetrahedron::new([0.1, 0.1, 0.1, 0.1, 0.1, -0.1]).is_err());
        assert!(GeneralizedTetrahedron::new([0.1, 0.1, 4.0, 0.1, 0.1, 0.1]).is_err());
        assert!(GeneralizedTetrahedron::new([0.1, 0.1, f64::NAN, 0.1, 0.1, 0.1]).is_err());
    }

    #[test]
    fn symmetric_edges_have_equal_lengths() {
        let t = tet([PI / 3.0, PI / 3.0, PI / 3.0, 0.2, 0.2, 0.2]);
        let l = edge_lengths(&t).unwrap();
        assert_eq!(l[0], EdgeLength::Infinite);
        let d = l[3].finite().unwrap();
        assert!(d > 0.0);
        assert!((l[4].finite().unwrap() - d).abs() < 1e-13);
        assert!((l[5].finite().unwrap() - d).abs() < 1e-13);
    }

    #[test]
    fn schlafli_for_truncated_edges() {
        let base = [0.9, 0.8, 0.7, 0.35, 0.4, 0.3];
        let t = tet(base);
        let lengths = edge_lengths(&t).unwrap();
        let h = 1e-5;
        for e in Edge::ALL {
            let Some(len) = lengths[e.index()].finite() else { continue };
            let mut p = base;
            let mut m = base;
            p[e.index()] += h;
            m[e.index()] -= h;
            let dv = (tet(p).volume().unwrap().volume - tet(m).volume().unwrap().volume) / (2.0 * h);
            assert!((dv + len / 2.0).abs() < 1e-7, "{e:?}: {dv} vs {}", -len / 2.0);
        }
    }

    #[test]
    fn horosphere_lengths_satisfy_schlafli_on_cusp_preserving_moves() {
        // Two ideal vertices v0 (C, D, E) and v1 (B, D, F); v2, v3 truncated.
        let (a, b, c, d) = (0.5, 0.6, 0.45, 1.9);
        let angles = |a: f64, b: f64, c: f64, d: f64| [a, b, c, d, PI - c - d, PI - b - d];
        let base = angles(a, b, c, d);
        let t = tet(base);
        let types = t.vertex_types();
        assert_eq!(types[0], VertexType::Ideal);
        assert_eq!(types[1], VertexType::Ideal);
        let len = schlafli_lengths(&t, [true, true, false, false]).unwrap();
        let vol = |x: [f64; 6]| tet(x).volume().unwrap().volume;
        let h = 1e-5;
        let dirs: [[f64; 4]; 4] = [[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 1., 0.], [0., 0., 0., 1.]];
        for dir in dirs {
            let p = angles(a + h * dir[0], b + h * dir[1], c + h * dir[2], d + h * dir[3]);
            let m = angles(a - h * dir[0], b - h * dir[1], c - h * dir[2], d - h * dir[3]);
            let fd = (vol(p) - vol(m)) / (2.0 * h);
            let dtheta: Vec<f64> = (0..6).map(|i| (p[i] - m[i]) / (2.0 * h)).collect();
            let analytic: f64 = -0.5 * (0..6).map(|i| len[i] * dtheta[i]).sum::<f64>();
            assert!((fd - analytic).abs() < 1e-7, "{dir:?}: {fd} vs {analytic}");
        }
    }
}
