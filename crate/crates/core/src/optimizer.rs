//! Volume maximization over the angle-structure polytope and the volume
//! dispatcher for bongles.
//!
//! The ascent runs in the nullspace of the constraint matrix: conjugate
//! gradient directions (Polak–Ribière) are projected with `I - M⁺M`, step
//! lengths come from a derivative-based line search that stops short of the
//! boundary, and a logarithmic barrier keeps early iterates away from it.
//! Gradients come from the Schläfli formula with horosphere-normalized lengths
//! at the two ideal apices, which is exact for moves that keep every vertex
//! row satisfied.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bongle::{decide_hyperbolic, Bongle, HyperbolicityVerdict};
use crate::numerics::{
    schlafli_lengths, tn_volume, ushijima_volume, GeneralizedTetrahedron, NumericsError, Orientation,
    VertexType,
};
use crate::triangulation::{
    build_decomposition, AngleAssignment, SystemKind, TriangulatedBongle, TriangulationError, CONVENTION,
};

/// Slots closer than this to `0` or `π` count as degenerate.
pub const DEGENERACY_BAND: f64 = 1e-6;

/// Allowed gap between closed form and optimizer when cross-checking.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-6;

/// `S` and `N` (vertices `v0`, `v1`) are the ideal apices of every tetrahedron.
const CUSPS: [bool; 4] = [true, true, false, false];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerOptions {
    /// Stop once the projected gradient norm falls below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Barrier weights, applied in order; the last should be `0`.
    pub barrier_schedule: Vec<f64>,
    /// Random starts used by [`restart_audit`].
    pub restarts: usize,
    /// Cross-check the balanced closed form with the optimizer.
    pub verify: bool,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions {
            tol: 1e-9,
            max_iter: 5000,
            barrier_schedule: vec![1e-6, 1e-9, 0.0],
            restarts: 100,
            verify: false,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VolumeMethod {
    KnownLink,
    BalancedClosedForm,
    Optimizer,
    BoundOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub closed_form: f64,
    pub optimizer: f64,
    pub difference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartAudit {
    pub runs: usize,
    pub min_volume: f64,
    pub max_volume: f64,
    pub spread: f64,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub bongle: Bongle,
    pub volume: f64,
    pub method: VolumeMethod,
    /// Estimated absolute accuracy of `volume`.
    pub accuracy: f64,
    pub iterations: usize,
    pub projected_gradient_norm: f64,
    pub max_residual: f64,
    /// Slots within [`DEGENERACY_BAND`] of `0` or `π`.
    pub degenerate_slots: Vec<usize>,
    pub negative_tetrahedra: Vec<usize>,
    pub converged: bool,
    /// Largest drop in volume between consecutive iterates.
    pub max_volume_drop: f64,
    /// Ideal-class convention, for results that depend on it.
    pub convention: Option<String>,
    /// Set when the underlying identification is not settled.
    pub provisional: bool,
    pub angles: Option<AngleAssignment>,
    pub cross_check: Option<CrossCheck>,
    pub audit: Option<RestartAudit>,
}

impl VolumeReport {
    fn simple(bongle: &Bongle, volume: f64, method: VolumeMethod, accuracy: f64) -> VolumeReport {
        VolumeReport {
            bongle: bongle.clone(),
            volume,
            method,
            accuracy,
            iterations: 0,
            projected_gradient_norm: 0.0,
            max_residual: 0.0,
            degenerate_slots: Vec::new(),
            negative_tetrahedra: Vec::new(),
            converged: true,
            max_volume_drop: 0.0,
            convention: None,
            provisional: false,
            angles: None,
            cross_check: None,
            audit: None,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum OptimizerError {
    #[error("bongle is not hyperbolic ({:?})", .0.reason)]
    NotHyperbolic(HyperbolicityVerdict),
    #[error("optimizer reached the boundary of the angle polytope; upper bound {bound}", bound = .0.volume)]
    NoInteriorProgress(Box<VolumeReport>),
    #[error("volume is not concave along the search direction at iteration {iteration} (slope {before:e} -> {after:e})")]
    NonConcave { iteration: usize, before: f64, after: f64 },
    #[error("closed form {closed_form} and optimizer {optimizer} disagree")]
    CrossCheckFailed { closed_form: f64, optimizer: f64 },
    #[error("optimizer requires the strict constraint system")]
    LoosenedSystem,
    #[error("starting point violates the constraints (residual {0:e})")]
    InfeasibleStart(f64),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// `V_n^B = 2n Vol(T_n)`: the balanced `n`-bongle volume, an upper bound for
/// every hyperbolic `n`-bongle.
pub fn balanced_closed_form(n: usize) -> Result<f64, NumericsError> {
    let n32 = u32::try_from(n).map_err(|_| NumericsError::InvalidArgument(format!("n = {n} too large")))?;
    Ok(2.0 * n as f64 * tn_volume(n32)?)
}

/// Total signed volume of the tetrahedra at `x`.
pub fn total_volume(x: &[f64]) -> Result<f64, NumericsError> {
    let (v, _) = volume_and_orientation(x)?;
    Ok(v)
}

fn volume_and_orientation(x: &[f64]) -> Result<(f64, Vec<usize>), NumericsError> {
    let mut total = 0.0;
    let mut negative = Vec::new();
    for (i, a) in x.chunks_exact(6).enumerate() {
        let t = GeneralizedTetrahedron::new(a.try_into().expect("six angles"))?;
        let v = ushijima_volume(&t)?;
        if v.orientation == Orientation::Negative && !v.degenerate {
            negative.push(i);
        }
        total += v.signed();
    }
    Ok((total, negative))
}

fn volume_gradient(x: &[f64], out: &mut [f64]) -> Result<(), NumericsError> {
    for (a, g) in x.chunks_exact(6).zip(out.chunks_exact_mut(6)) {
        let t = GeneralizedTetrahedron::new(a.try_into().expect("six angles"))?;
        let l = schlafli_lengths(&t, CUSPS)?;
        for (gi, li) in g.iter_mut().zip(l) {
            *gi = -0.5 * li;
        }
    }
    Ok(())
}

fn degenerate_slots(x: &[f64]) -> Vec<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, &v)| !(DEGENERACY_BAND..=PI - DEGENERACY_BAND).contains(&v))
        .map(|(i, _)| i)
        .collect()
}

/// Affine feasible set `{x : Mx = b}` with its orthogonal projector.
struct Feasible {
    projector: DMatrix<f64>,
    pinv: DMatrix<f64>,
    matrix: DMatrix<f64>,
    rhs: DVector<f64>,
}

impl Feasible {
    fn new(t: &TriangulatedBongle) -> Feasible {
        let matrix = t.system.matrix();
        let pinv = matrix
            .clone()
            .pseudo_inverse(1e-10)
            .expect("SVD of a finite matrix succeeds");
        let n = matrix.ncols();
        let projector = DMatrix::identity(n, n) - &pinv * &matrix;
        Feasible {
            projector,
            pinv,
            matrix,
            rhs: t.system.rhs(),
        }
    }

    fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.projector * v
    }

    /// Removes drift off the affine set.
    fn restore(&self, x: &mut DVector<f64>) {
        let r = &self.matrix * &*x - &self.rhs;
        *x -= &self.pinv * r;
    }
}

struct Ascent {
    grad_buf: Vec<f64>,
    evaluations: usize,
}

enum Slope {
    Value(f64),
    /// The trial point left the realizable region.
    Outside,
}

impl Ascent {
    /// Barrier-augmented gradient at `x`.
    fn gradient(&mut self, x: &DVector<f64>, mu: f64) -> Result<DVector<f64>, NumericsError> {
        self.evaluations += 1;
        volume_gradient(x.as_slice(), &mut self.grad_buf)?;
        let mut g = DVector::from_column_slice(&self.grad_buf);
        if mu > 0.0 {
            for (gi, &xi) in g.iter_mut().zip(x.iter()) {
                *gi += mu * (1.0 / xi - 1.0 / (PI - xi));
            }
        }
        Ok(g)
    }

    fn slope(&mut self, x: &DVector<f64>, d: &DVector<f64>, t: f64, mu: f64) -> Slope {
        let y = x + d * t;
        if y.iter().any(|&v| v <= 0.0 || v >= PI) {
            return Slope::Outside;
        }
        match self.gradient(&y, mu) {
            Ok(g) => Slope::Value(g.dot(d)),
            Err(_) => Slope::Outside,
        }
    }

    /// Step length along `d` that brings the directional derivative near zero.
    fn line_search(
        &mut self,
        x: &DVector<f64>,
        d: &DVector<f64>,
        slope0: f64,
        t_guess: f64,
        t_max: f64,
        mu: f64,
        iteration: usize,
    ) -> Result<f64, OptimizerError> {
        let concavity_slack = 1e-8 * slope0.abs() + 1e-10;
        let mut lo = 0.0;
        let mut slope_lo = slope0;
        let mut t = t_guess.min(t_max);
        let (mut hi, mut slope_hi);
        loop {
            match self.slope(x, d, t, mu) {
                Slope::Value(s) => {
                    if s > slope0 + concavity_slack {
                        return Err(OptimizerError::NonConcave {
                            iteration,
                            before: slope0,
                            after: s,
                        });
                    }
                    if s > 0.0 {
                        lo = t;
                        slope_lo = s;
                        if t >= t_max {
                            return Ok(t_max);
                        }
                        t = (4.0 * t).min(t_max);
                        continue;
                    }
                    hi = t;
                    slope_hi = Some(s);
                }
                Slope::Outside => {
                    hi = t;
                    slope_hi = None;
                }
            }
            break;
        }
        for _ in 0..80 {
            let width = hi - lo;
            if width <= 1e-16 * hi.max(1e-300) {
                break;
            }
            t = match slope_hi {
                Some(sh) if sh.is_finite() && slope_lo > sh => {
                    let secant = lo + width * slope_lo / (slope_lo - sh);
                    secant.clamp(lo + 0.05 * width, hi - 0.05 * width)
                }
                _ => lo + 0.5 * width,
            };
            match self.slope(x, d, t, mu) {
                Slope::Value(s) => {
                    if s.abs() <= 1e-3 * slope0 {
                        return Ok(t);
                    }
                    if s > 0.0 {
                        lo = t;
                        slope_lo = s;
                    } else {
                        hi = t;
                        slope_hi = Some(s);
                    }
                }
                Slope::Outside => {
                    hi = t;
                    slope_hi = None;
                }
            }
        }
        Ok(if lo > 0.0 { lo } else { t })
    }
}

/// Largest `t` keeping `x + t d` strictly inside `(0, π)`, scaled back.
fn boundary_step(x: &DVector<f64>, d: &DVector<f64>) -> f64 {
    let mut t = f64::INFINITY;
    for (&xi, &di) in x.iter().zip(d.iter()) {
        if di < 0.0 {
            t = t.min(xi / -di);
        } else if di > 0.0 {
            t = t.min((PI - xi) / di);
        }
    }
    0.995 * t
}

/// Maximizes total volume over the strict angle-structure polytope, starting
/// from the symmetric point.
pub fn maximize_volume(t: &TriangulatedBongle, opts: &OptimizerOptions) -> Result<VolumeReport, OptimizerError> {
    let feasible = Feasible::new(t);
    maximize_from(t, &feasible, t.feasible_start(), opts)
}

fn maximize_from(
    t: &TriangulatedBongle,
    feasible: &Feasible,
    start: AngleAssignment,
    opts: &OptimizerOptions,
) -> Result<VolumeReport, OptimizerError> {
    if t.system.kind != SystemKind::Strict {
        return Err(OptimizerError::LoosenedSystem);
    }
    let start_residual = t.constraint_residuals(&start)?.max_norm;
    if start_residual > 1e-9 {
        return Err(OptimizerError::InfeasibleStart(start_residual));
    }
    let mut x = DVector::from_vec(start.values);
    let mut ascent = Ascent {
        grad_buf: vec![0.0; x.len()],
        evaluations: 0,
    };
    let mut volume = total_volume(x.as_slice())?;
    let mut max_drop: f64 = 0.0;
    let mut iterations = 0;
    let mut pg_norm = f64::INFINITY;
    let mut converged = false;
    let mut hit_boundary = false;

    let schedule: Vec<f64> = if opts.barrier_schedule.is_empty() {
        vec![0.0]
    } else {
        opts.barrier_schedule.clone()
    };
    'stages: for &mu in &schedule {
        let mut g = ascent.gradient(&x, mu)?;
        let mut pg = feasible.project(&g);
        let mut d = pg.clone();
        let mut t_guess = 0.1 / d.amax().max(1e-300);
        let mut since_restart = 0;
        converged = false;
        while iterations < opts.max_iter {
            pg_norm = if mu == 0.0 {
                pg.norm()
            } else {
                feasible.project(&ascent.gradient(&x, 0.0)?).norm()
            };
            if pg.norm() < opts.tol {
                converged = pg_norm < opts.tol || mu > 0.0;
                break;
            }
            iterations += 1;
            let mut slope0 = g.dot(&d);
            if !(slope0 > 0.0) || since_restart > x.len() {
                d = pg.clone();
                slope0 = g.dot(&d);
                since_restart = 0;
            }
            let t_max = boundary_step(&x, &d);
            let step = ascent.line_search(&x, &d, slope0, t_guess, t_max, mu, iterations)?;
            let mut x_new = &x + &d * step;
            feasible.restore(&mut x_new);
            let v_new = match total_volume(x_new.as_slice()) {
                Ok(v) => v,
                Err(_) => {
                    hit_boundary = true;
                    break 'stages;
                }
            };
            let noise = 1e-13 * (1.0 + volume.abs());
            if mu == 0.0 && v_new < volume - noise {
                if since_restart == 0 {
                    // Steepest ascent cannot improve further at this precision.
                    converged = pg_norm < opts.tol.max(1e-7);
                    break;
                }
                d = pg.clone();
                since_restart = 0;
                continue;
            }
            max_drop = max_drop.max(volume - v_new);
            volume = v_new;
            x = x_new;
            t_guess = (2.0 * step).max(1e-12);

            let g_new = ascent.gradient(&x, mu)?;
            let pg_new = feasible.project(&g_new);
            let beta = (pg_new.dot(&(&pg_new - &pg)) / pg.dot(&pg)).max(0.0);
            d = feasible.project(&(&pg_new + &d * beta));
            g = g_new;
            pg = pg_new;
            since_restart += 1;

            if mu == 0.0 && !degenerate_slots(x.as_slice()).is_empty() {
                hit_boundary = true;
                break 'stages;
            }
        }
    }

    let x_final = AngleAssignment { values: x.as_slice().to_vec() };
    let max_residual = t.constraint_residuals(&x_final)?.max_norm;
    let degenerate = degenerate_slots(&x_final.values);
    let (volume, negative) = volume_and_orientation(&x_final.values)?;
    let mut report = VolumeReport {
        bongle: t.bongle.clone(),
        volume,
        method: VolumeMethod::Optimizer,
        accuracy: (pg_norm * pg_norm).max(1e-12),
        iterations,
        projected_gradient_norm: pg_norm,
        max_residual,
        degenerate_slots: degenerate,
        negative_tetrahedra: negative,
        converged,
        max_volume_drop: max_drop,
        convention: Some(CONVENTION.to_string()),
        provisional: false,
        angles: Some(x_final),
        cross_check: None,
        audit: None,
    };
    if hit_boundary || !report.degenerate_slots.is_empty() {
        report.method = VolumeMethod::BoundOnly;
        report.volume = balanced_closed_form(t.n())?;
        report.converged = false;
        return Err(OptimizerError::NoInteriorProgress(Box::new(report)));
    }
    Ok(report)
}

/// True when every equatorial vertex is truncated, the setting the
/// triangulation models.
fn equator_truncated(x: &[f64]) -> bool {
    x.chunks_exact(6).all(|a| {
        GeneralizedTetrahedron::new(a.try_into().expect("six angles"))
            .map(|t| t.vertex_types()[2..].iter().all(|&v| v == VertexType::Truncated))
            .unwrap_or(false)
    })
}

/// Seeded random feasible point with every equatorial vertex truncated.
pub fn random_feasible_start(t: &TriangulatedBongle, seed: u64) -> AngleAssignment {
    let feasible = Feasible::new(t);
    random_start(t, &feasible, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Maximizes total volume starting from a given feasible point.
pub fn maximize_volume_from(
    t: &TriangulatedBongle,
    start: AngleAssignment,
    opts: &OptimizerOptions,
) -> Result<VolumeReport, OptimizerError> {
    maximize_from(t, &Feasible::new(t), start, opts)
}

/// Random feasible start `x0 + s P r` with `r` uniform in the unit cube,
/// drawn until every equatorial vertex is truncated.
fn random_start(t: &TriangulatedBongle, feasible: &Feasible, rng: &mut ChaCha8Rng) -> AngleAssignment {
    let x0 = DVector::from_vec(t.feasible_start().values);
    let mut last = x0.clone();
    for _ in 0..200 {
        let r = DVector::from_fn(x0.len(), |_, _| rng.gen_range(-1.0..1.0));
        let d = feasible.project(&r);
        let mut s = rng.gen_range(0.1..0.9) * boundary_step(&x0, &d) / 0.995;
        for _ in 0..8 {
            let mut x = &x0 + &d * s;
            feasible.restore(&mut x);
            if equator_truncated(x.as_slice()) {
                return AngleAssignment { values: x.as_slice().to_vec() };
            }
            last = x;
            s *= 0.5;
        }
    }
    AngleAssignment { values: last.as_slice().to_vec() }
}

/// Re-runs the optimizer from `opts.restarts` random feasible starts.
pub fn restart_audit(t: &TriangulatedBongle, opts: &OptimizerOptions) -> Result<RestartAudit, OptimizerError> {
    let feasible = Feasible::new(t);
    let results: Vec<Result<f64, String>> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
            let start = random_start(t, &feasible, &mut rng);
            maximize_from(t, &feasible, start, opts)
                .map(|r| r.volume)
                .map_err(|e| format!("restart {i}: {e}"))
        })
        .collect();
    let volumes: Vec<f64> = results.iter().filter_map(|r| r.as_ref().ok()).copied().collect();
    let first_failure = results.iter().find_map(|r| r.as_ref().err().cloned());
    let min_volume = volumes.iter().copied().fold(f64::INFINITY, f64::min);
    let max_volume = volumes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RestartAudit {
        runs: opts.restarts,
        min_volume,
        max_volume,
        spread: if volumes.is_empty() { f64::NAN } else { max_volume - min_volume },
        failures: results.len() - volumes.len(),
        first_failure,
    })
}

/// Volume of a bongle, dispatched on hyperbolicity and balance.
pub fn bongle_volume(b: &Bongle, opts: &OptimizerOptions) -> Result<VolumeReport, OptimizerError> {
    let verdict = decide_hyperbolic(b);
    if !verdict.is_hyperbolic {
        return Err(OptimizerError::NotHyperbolic(verdict));
    }
    if let Some(v) = verdict.known_volume {
        let mut r = VolumeReport::simple(b, v, VolumeMethod::KnownLink, 1e-12);
        r.provisional = verdict.provisional;
        return Ok(r);
    }
    let n = b.len();
    if b.is_balanced() {
        let closed = balanced_closed_form(n)?;
        let mut report = VolumeReport::simple(b, closed, VolumeMethod::BalancedClosedForm, 1e-12);
        if opts.verify {
            let t = build_decomposition(b, SystemKind::Strict)?;
            let opt = maximize_volume(&t, opts)?;
            let difference = (opt.volume - closed).abs();
            if difference > CROSS_CHECK_TOLERANCE {
                return Err(OptimizerError::CrossCheckFailed {
                    closed_form: closed,
                    optimizer: opt.volume,
                });
            }
            report.cross_check = Some(CrossCheck {
                closed_form: closed,
                optimizer: opt.volume,
                difference,
            });
            report.iterations = opt.iterations;
            report.projected_gradient_norm = opt.projected_gradient_norm;
            report.max_residual = opt.max_residual;
            report.convention = opt.convention;
        }
        return Ok(report);
    }
    let t = build_decomposition(b, SystemKind::Strict)?;
    let mut report = maximize_volume(&t, opts)?;
    report.bongle = b.clone();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::constants;

    fn tri(s: &str) -> TriangulatedBongle {
        build_decomposition(&s.parse().unwrap(), SystemKind::Strict).unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert!((balanced_closed_form(2).unwrap() - 4.0597).abs() < 5e-4);
        assert!((balanced_closed_form(4).unwrap() - 8.0 * tn_volume(4).unwrap()).abs() < 1e-15);
        let c = constants();
        assert!(balanced_closed_form(1000).unwrap() / 1000.0 < c.five_v_tet);
    }

    #[test]
    fn projector_is_idempotent() {
        let t = tri("O0 O0 I0 O0");
        let f = Feasible::new(&t);
        let p2 = &f.projector * &f.projector;
        assert!((p2 - &f.projector).amax() < 1e-12);
        assert!((&f.matrix * &f.projector).amax() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences_along_feasible_moves() {
        let t = tri("O0 O0 I0 O0 I0");
        let f = Feasible::new(&t);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = random_start(&t, &f, &mut rng);
        let mut g = vec![0.0; x.values.len()];
        volume_gradient(&x.values, &mut g).unwrap();
        for _ in 0..5 {
            let r = DVector::from_fn(g.len(), |_, _| rng.gen_range(-1.0..1.0));
            let d = f.project(&r);
            let h = 1e-5;
            let xv = DVector::from_vec(x.values.clone());
            let plus = total_volume((&xv + &d * h).as_slice()).unwrap();
            let minus = total_volume((&xv - &d * h).as_slice()).unwrap();
            let fd = (plus - minus) / (2.0 * h);
            let exact = DVector::from_vec(g.clone()).dot(&d);
            assert!((fd - exact).abs() < 1e-6 * (1.0 + exact.abs()), "{fd} vs {exact}");
        }
    }

    #[test]
    fn balanced_four_recovers_symmetric_point() {
        let t = tri("O0 I0 O0 I0");
        let r = maximize_volume(&t, &OptimizerOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.volume - balanced_closed_form(4).unwrap()).abs() < 1e-6);
        let x = r.angles.unwrap();
        for (i, v) in x.values.iter().enumerate() {
            let want = match i % 6 {
                0 => PI / 3.0,
                3 => 2.0 * PI / 3.0,
                _ => PI / 6.0,
            };
            assert!((v - want).abs() < 1e-6, "slot {i}: {v} vs {want}");
        }
        assert!(r.max_residual < 1e-10);
        assert!(r.max_volume_drop <= 1e-12);
    }

    #[test]
    fn all_outie_three() {
        let t = tri("O0 O0 O0");
        let r = maximize_volume(&t, &OptimizerOptions::default()).unwrap();
        assert!(r.converged);
        assert!(r.volume > 0.0 && r.volume < balanced_closed_form(3).unwrap());
        assert!(r.volume > total_volume(&t.feasible_start().values).unwrap());
    }

    #[test]
    fn restarts_agree() {
        let t = tri("O0 O0 O0");
        let opts = OptimizerOptions {
            restarts: 8,
            ..Default::default()
        };
        let a = restart_audit(&t, &opts).unwrap();
        assert_eq!(a.failures, 0, "{a:?}");
        assert!(a.spread < 1e-7, "{a:?}");
    }

    #[test]
    fn dispatch() {
        let opts = OptimizerOptions::default();
        let r = bongle_volume(&"O0 O0".parse().unwrap(), &opts).unwrap();
        assert_eq!(r.method, VolumeMethod::KnownLink);
        assert!((r.volume - 3.6638).abs() < 1e-4);
        let r = bongle_volume(&"O0 I0 O0 I0".parse().unwrap(), &opts).unwrap();
        assert_eq!(r.method, VolumeMethod::BalancedClosedForm);
        assert_eq!(r.volume, balanced_closed_form(4).unwrap());
        let e = bongle_volume(&"O0 O1 O0".parse().unwrap(), &opts).unwrap_err();
        assert!(matches!(e, OptimizerError::NotHyperbolic(_)));
        let verified = OptimizerOptions { verify: true, ..Default::default() };
        let r = bongle_volume(&"O0 I0 O0 I0 O0 I0".parse().unwrap(), &verified).unwrap();
        assert!(r.cross_check.unwrap().difference < 1e-6);
    }

    #[test]
    fn report_json_round_trip() {
        let r = maximize_volume(&tri("O0 O0 I0 O0"), &OptimizerOptions::default()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: VolumeReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
