//! Triangular bipyramids with ideal apices and truncated equatorial vertices,
//! and the half-bipyramid tetrahedra `T_n`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dilog::dilog;
use super::tetrahedron::{ushijima_volume, GeneralizedTetrahedron};
use super::NumericsError;

/// Angle on the three apex edges that makes the apices ideal.
pub const IDEAL_APEX_ANGLE: f64 = PI / 3.0;

/// Half of a bipyramid cut along its equatorial triangle.
///
/// Edges `A, B, C` meet at the apex (vertex `v3`); `D, E, F` are the equatorial
/// edges, each carrying half the bipyramid's equatorial angle.
pub fn half_bipyramid(apex_angle: f64, equatorial_angle: f64) -> Result<GeneralizedTetrahedron, NumericsError> {
    let half = 0.5 * equatorial_angle;
    GeneralizedTetrahedron::new([apex_angle, apex_angle, apex_angle, half, half, half])
}

/// Volume of the bipyramid with dihedral angle `apex_angle` on the six edges at
/// the apices and `equatorial_angle` on the three equatorial edges.
pub fn bipyramid_volume(apex_angle: f64, equatorial_angle: f64) -> Result<f64, NumericsError> {
    for (name, v) in [("apex", apex_angle), ("equatorial", equatorial_angle)] {
        if !(v > 0.0 && v < PI) {
            return Err(NumericsError::InvalidArgument(format!(
                "{name} angle {v} outside (0, π)"
            )));
        }
    }
    let half = half_bipyramid(apex_angle, equatorial_angle)?;
    Ok(2.0 * ushijima_volume(&half)?.signed())
}

/// The tetrahedron `T_n`: ideal apex with angles `π/3`, truncated edges `2π/3n`.
pub fn tn_tetrahedron(n: u32) -> Result<GeneralizedTetrahedron, NumericsError> {
    check_n(n)?;
    half_bipyramid(IDEAL_APEX_ANGLE, 4.0 * PI / (3.0 * n as f64))
}

fn check_n(n: u32) -> Result<(), NumericsError> {
    if n < 2 {
        return Err(NumericsError::InvalidArgument(format!("n = {n}, need n >= 2")));
    }
    Ok(())
}

/// Closed form for `Vol(T_n)` specialized from the general formula.
///
/// With three angles `π/3` at the ideal vertex and `α = 2π/3n` on the other
/// three edges, four of the eight dilogarithm terms cancel in pairs and
///
/// ```text
/// U(z) = 3/2 [ Li2(e^{2πi/3} e^{2iα} z) - Li2(-e^{πi/3} e^{2iα} z) ]
/// ```
///
/// while `det G = -27/4 cos²α` puts the two roots at `z1 = 1` and
/// `z2 = -e^{-2iα}`. `Vol(T_n) = 1/2 Im(U(z1) - U(z2))`.
#[derive(Clone, Copy, Debug)]
pub struct TnClosedForm {
    n: f64,
}

impl TnClosedForm {
    pub fn new(n: u32) -> Result<Self, NumericsError> {
        check_n(n)?;
        Ok(TnClosedForm { n: n as f64 })
    }

    /// Real-valued `n`, used for the large-`n` limit.
    pub fn with_real_n(n: f64) -> Result<Self, NumericsError> {
        if !(n >= 2.0) || !n.is_finite() {
            return Err(NumericsError::InvalidArgument(format!("n = {n}, need n >= 2")));
        }
        Ok(TnClosedForm { n })
    }

    /// Truncated-edge angle `2π/3n`.
    pub fn alpha(&self) -> f64 {
        2.0 * PI / (3.0 * self.n)
    }

    pub fn det_gram(&self) -> f64 {
        -6.75 * self.alpha().cos().powi(2)
    }

    pub fn roots(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(1.0, 0.0),
            -Complex64::from_polar(1.0, -2.0 * self.alpha()),
        )
    }

    pub fn u(&self, z: Complex64) -> Complex64 {
        let rot = Complex64::from_polar(1.0, 2.0 * self.alpha());
        let w1 = Complex64::from_polar(1.0, 2.0 * PI / 3.0) * rot;
        let w2 = -Complex64::from_polar(1.0, PI / 3.0) * rot;
        1.5 * (dilog(w1 * z) - dilog(w2 * z))
    }

    /// `(Im U(z1), Im U(z2))`.
    pub fn u_parts(&self) -> (f64, f64) {
        let (z1, z2) = self.roots();
        (self.u(z1).im, self.u(z2).im)
    }

    pub fn volume(&self) -> f64 {
        let (u1, u2) = self.u_parts();
        0.5 * (u1 - u2)
    }
}

/// `Vol(T_n)` from the specialized closed form.
pub fn tn_volume(n: u32) -> Result<f64, NumericsError> {
    Ok(TnClosedForm::new(n)?.volume())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::constants;

    #[test]
    fn t2_is_regular_ideal() {
        let v = tn_volume(2).unwrap();
        assert!((v - constants().v_tet).abs() < 1e-13);
    }

    #[test]
    fn closed_form_matches_general_formula() {
        for n in 2..=60 {
            let t = tn_tetrahedron(n).unwrap();
            let general = ushijima_volume(&t).unwrap().volume;
            let closed = tn_volume(n).unwrap();
            assert!((general - closed).abs() < 1e-12, "n = {n}: {general} vs {closed}");
            let det = t.gram().det();
            assert!((det - TnClosedForm::new(n).unwrap().det_gram()).abs() < 1e-13);
        }
    }

    #[test]
    fn bipyramid_is_two_halves() {
        let v = bipyramid_volume(PI / 3.0, 4.0 * PI / 9.0).unwrap();
        assert!((v - 2.0 * tn_volume(3).unwrap()).abs() < 1e-13);
        assert!(bipyramid_volume(0.0, 1.0).is_err());
        assert!(bipyramid_volume(1.0, PI).is_err());
        assert!(tn_volume(1).is_err());
    }

    #[test]
    fn balanced_two_bongle_value() {
        // Two bipyramids with equatorial angle 2π/3: four regular ideal tetrahedra.
        let v = 2.0 * bipyramid_volume(PI / 3.0, 2.0 * PI / 3.0).unwrap();
        assert!((v - 4.0 * constants().v_tet).abs() < 1e-12);
        assert!((v - 4.0597).abs() < 5e-4);
    }
}
