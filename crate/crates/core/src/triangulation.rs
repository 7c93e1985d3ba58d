//! Bipyramid decomposition of an alternating bongle and its angle-structure
//! constraints.
//!
//! Each crossing `j` contributes a triangular bipyramid with ideal apices `N`
//! and `S` and truncated equatorial vertices `P_0, P_1, P_2` (`P_0` sits in the
//! monogon, `P_1` and `P_2` on the two strands leaving it). The central edge
//! `NS` cuts the bipyramid into tetrahedra `k = 0, 1, 2`, where tetrahedron `k`
//! has vertices `N, S, P_k, P_{k+1}` and angle slots
//!
//! | label | edge            |
//! |-------|-----------------|
//! | A     | `P_k P_{k+1}`   |
//! | B     | `N P_k`         |
//! | C     | `S P_k`         |
//! | D     | `N S`           |
//! | E     | `S P_{k+1}`     |
//! | F     | `N P_{k+1}`     |
//!
//! which matches the [`Edge`] labelling with `S = v0`, `N = v1`,
//! `P_{k+1} = v2` and `P_k = v3`.
//!
//! Equatorial edges `P_0 P_1` and `P_2 P_0` face the monogon side, `P_1 P_2`
//! faces the other side. Ideal edge class `j` collects `N P_0`, `N P_2`,
//! `S P_0`, `S P_1` of bipyramid `j`, `N P_1` of bipyramid `j - 1` and `S P_2`
//! of bipyramid `j + 1` (convention `C1`).

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bongle::{Bongle, Side};
use crate::numerics::{Edge, GeneralizedTetrahedron, NumericsError};

/// Tag attached to results that depend on the ideal-class convention.
pub const CONVENTION: &str = "C1";

const SLOTS_PER_TET: usize = 6;
const TETS_PER_BIPYRAMID: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TriangulationError {
    #[error("bongle is not alternating")]
    NonAlternating,
    #[error("triangulation needs n >= 3, got n = {0}")]
    NTooSmall(usize),
    #[error("expected {expected} angle values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("constraint matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AngleSlot {
    pub bipyramid: usize,
    /// Tetrahedron within the bipyramid, `0..3`.
    pub tetrahedron: usize,
    pub label: Edge,
}

impl AngleSlot {
    pub fn new(bipyramid: usize, tetrahedron: usize, label: Edge) -> AngleSlot {
        AngleSlot {
            bipyramid,
            tetrahedron,
            label,
        }
    }

    pub fn index(&self) -> usize {
        (self.bipyramid * TETS_PER_BIPYRAMID + self.tetrahedron) * SLOTS_PER_TET + self.label.index()
    }

    pub fn from_index(i: usize) -> AngleSlot {
        let label = Edge::ALL[i % SLOTS_PER_TET];
        let t = i / SLOTS_PER_TET;
        AngleSlot::new(t / TETS_PER_BIPYRAMID, t % TETS_PER_BIPYRAMID, label)
    }
}

impl fmt::Display for AngleSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.label.letter(), self.bipyramid, self.tetrahedron + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquatorialClass {
    Inner,
    Outer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowKind {
    /// `B + F + D = π` at the `N` end.
    NorthVertex { bipyramid: usize, tetrahedron: usize },
    /// `C + E + D = π` at the `S` end.
    SouthVertex { bipyramid: usize, tetrahedron: usize },
    CentralEdge { bipyramid: usize },
    InnerEquator,
    OuterEquator,
    IdealClass { crossing: usize },
    TotalCentral,
    TotalIdealEdges,
    TotalEquator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintRow {
    #[serde(flatten)]
    pub kind: RowKind,
    pub slots: Vec<usize>,
    pub rhs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemKind {
    /// Per-tetrahedron, per-edge-class rows.
    Strict,
    /// Only the three global sums.
    Loosened,
}

/// Linear equality rows with unit coefficients; every slot is bounded by `(0, π)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub kind: SystemKind,
    pub slot_count: usize,
    pub rows: Vec<ConstraintRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub rows: Vec<f64>,
    pub max_norm: f64,
}

impl ConstraintSystem {
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows.len(), self.slot_count);
        for (r, row) in self.rows.iter().enumerate() {
            for &s in &row.slots {
                m[(r, s)] += 1.0;
            }
        }
        m
    }

    pub fn rhs(&self) -> DVector<f64> {
        DVector::from_iterator(self.rows.len(), self.rows.iter().map(|r| r.rhs))
    }

    pub fn residuals(&self, x: &[f64]) -> Result<Residuals, TriangulationError> {
        if x.len() != self.slot_count {
            return Err(TriangulationError::DimensionMismatch {
                expected: self.slot_count,
                got: x.len(),
            });
        }
        let rows: Vec<f64> = self
            .rows
            .iter()
            .map(|r| (r.slots.iter().map(|&s| x[s]).sum::<f64>() - r.rhs).abs())
            .collect();
        let max_norm = rows.iter().copied().fold(0.0, f64::max);
        Ok(Residuals { rows, max_norm })
    }

    /// Numerical rank of the coefficient matrix.
    pub fn rank(&self) -> usize {
        let m = self.matrix();
        let svd = m.svd(false, false);
        let smax = svd.singular_values.max();
        let tol = smax * 1e-10 * (self.rows.len().max(self.slot_count) as f64);
        svd.singular_values.iter().filter(|&&s| s > tol).count()
    }

    /// Rows that are linear combinations of the others. In the strict system
    /// the ideal-class rows sum to the vertex rows minus twice the central rows,
    /// so one ideal-class row is redundant.
    pub fn redundant_rows(&self) -> usize {
        match self.kind {
            SystemKind::Strict => 1,
            SystemKind::Loosened => 0,
        }
    }

    /// Fails when the rank is lower than the documented redundancies explain.
    pub fn check_rank(&self) -> Result<usize, TriangulationError> {
        let rank = self.rank();
        let expected = self.rows.len() - self.redundant_rows();
        if rank != expected {
            return Err(TriangulationError::RankDeficient { rank, expected });
        }
        Ok(rank)
    }
}

/// Angle values indexed by [`AngleSlot::index`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleAssignment {
    pub values: Vec<f64>,
}

impl AngleAssignment {
    pub fn get(&self, slot: AngleSlot) -> f64 {
        self.values[slot.index()]
    }

    pub fn tetrahedron_angles(&self, tet: usize) -> [f64; 6] {
        let mut a = [0.0; 6];
        a.copy_from_slice(&self.values[tet * SLOTS_PER_TET..(tet + 1) * SLOTS_PER_TET]);
        a
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulatedBongle {
    /// Orientation-normalized source, `k <= n/2`.
    pub bongle: Bongle,
    pub system: ConstraintSystem,
    /// Equatorial class of each tetrahedron's `A` slot.
    pub equatorial: Vec<EquatorialClass>,
    /// Slots of ideal edge class `j`, for each crossing `j`.
    pub ideal_classes: Vec<Vec<usize>>,
}

pub fn build_decomposition(b: &Bongle, kind: SystemKind) -> Result<TriangulatedBongle, TriangulationError> {
    if !b.is_alternating() {
        return Err(TriangulationError::NonAlternating);
    }
    let n = b.len();
    if n < 3 {
        return Err(TriangulationError::NTooSmall(n));
    }
    let bongle = b.normalize_orientation();
    let slot = |j: usize, k: usize, l: Edge| AngleSlot::new(j % n, k % 3, l).index();

    let mut equatorial = Vec::with_capacity(3 * n);
    for c in bongle.charms() {
        for k in 0..3 {
            let faces_monogon = k != 1;
            let outer = (c.side == Side::Outie) == faces_monogon;
            equatorial.push(if outer {
                EquatorialClass::Outer
            } else {
                EquatorialClass::Inner
            });
        }
    }

    let np = |j: usize, p: usize| [slot(j, p, Edge::B), slot(j, p + 2, Edge::F)];
    let sp = |j: usize, p: usize| [slot(j, p, Edge::C), slot(j, p + 2, Edge::E)];
    let ideal_classes: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            [np(j, 0), np(j, 2), sp(j, 0), sp(j, 1), np(j + n - 1, 1), sp(j + 1, 2)]
                .concat()
        })
        .collect();

    let mut rows = Vec::new();
    match kind {
        SystemKind::Strict => {
            for j in 0..n {
                for k in 0..3 {
                    rows.push(ConstraintRow {
                        kind: RowKind::NorthVertex { bipyramid: j, tetrahedron: k },
                        slots: vec![slot(j, k, Edge::B), slot(j, k, Edge::F), slot(j, k, Edge::D)],
                        rhs: PI,
                    });
                    rows.push(ConstraintRow {
                        kind: RowKind::SouthVertex { bipyramid: j, tetrahedron: k },
                        slots: vec![slot(j, k, Edge::C), slot(j, k, Edge::E), slot(j, k, Edge::D)],
                        rhs: PI,
                    });
                }
                rows.push(ConstraintRow {
                    kind: RowKind::CentralEdge { bipyramid: j },
                    slots: (0..3).map(|k| slot(j, k, Edge::D)).collect(),
                    rhs: 2.0 * PI,
                });
            }
            for (class, kind) in [
                (EquatorialClass::Inner, RowKind::InnerEquator),
                (EquatorialClass::Outer, RowKind::OuterEquator),
            ] {
                rows.push(ConstraintRow {
                    kind,
                    slots: equatorial
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c == class)
                        .map(|(t, _)| t * SLOTS_PER_TET + Edge::A.index())
                        .collect(),
                    rhs: 2.0 * PI,
                });
            }
            for (j, class) in ideal_classes.iter().enumerate() {
                rows.push(ConstraintRow {
                    kind: RowKind::IdealClass { crossing: j },
                    slots: class.clone(),
                    rhs: 2.0 * PI,
                });
            }
        }
        SystemKind::Loosened => {
            let all_with = |labels: &[Edge]| -> Vec<usize> {
                (0..3 * n)
                    .flat_map(|t| labels.iter().map(move |l| t * SLOTS_PER_TET + l.index()))
                    .collect()
            };
            let two_n_pi = 2.0 * n as f64 * PI;
            rows.push(ConstraintRow {
                kind: RowKind::TotalCentral,
                slots: all_with(&[Edge::D]),
                rhs: two_n_pi,
            });
            rows.push(ConstraintRow {
                kind: RowKind::TotalIdealEdges,
                slots: all_with(&[Edge::B, Edge::C, Edge::E, Edge::F]),
                rhs: two_n_pi,
            });
            rows.push(ConstraintRow {
                kind: RowKind::TotalEquator,
                slots: all_with(&[Edge::A]),
                rhs: 4.0 * PI,
            });
        }
    }

    Ok(TriangulatedBongle {
        bongle,
        system: ConstraintSystem {
            kind,
            slot_count: SLOTS_PER_TET * TETS_PER_BIPYRAMID * n,
            rows,
        },
        equatorial,
        ideal_classes,
    })
}

impl TriangulatedBongle {
    pub fn n(&self) -> usize {
        self.bongle.len()
    }

    pub fn tetrahedron_count(&self) -> usize {
        TETS_PER_BIPYRAMID * self.n()
    }

    pub fn slot_count(&self) -> usize {
        self.system.slot_count
    }

    pub fn class_size(&self, class: EquatorialClass) -> usize {
        self.equatorial.iter().filter(|&&c| c == class).count()
    }

    /// The symmetric point: `D = 2π/3`, `B = C = E = F = π/6`, and each
    /// equatorial angle `2π` divided by the size of its class.
    pub fn feasible_start(&self) -> AngleAssignment {
        let inner = 2.0 * PI / self.class_size(EquatorialClass::Inner) as f64;
        let outer = 2.0 * PI / self.class_size(EquatorialClass::Outer) as f64;
        let mut values = vec![0.0; self.slot_count()];
        for (t, class) in self.equatorial.iter().enumerate() {
            let base = t * SLOTS_PER_TET;
            values[base + Edge::A.index()] = match class {
                EquatorialClass::Inner => inner,
                EquatorialClass::Outer => outer,
            };
            values[base + Edge::D.index()] = 2.0 * PI / 3.0;
            for l in [Edge::B, Edge::C, Edge::E, Edge::F] {
                values[base + l.index()] = PI / 6.0;
            }
        }
        AngleAssignment { values }
    }

    pub fn constraint_residuals(&self, x: &AngleAssignment) -> Result<Residuals, TriangulationError> {
        self.system.residuals(&x.values)
    }

    pub fn tetrahedron(&self, x: &AngleAssignment, tet: usize) -> Result<GeneralizedTetrahedron, TriangulationError> {
        Ok(GeneralizedTetrahedron::new(x.tetrahedron_angles(tet))?)
    }

    /// JSON listing of slots, rows and class memberships.
    pub fn debug_json(&self) -> serde_json::Value {
        let slots: Vec<serde_json::Value> = (0..self.slot_count())
            .map(|i| {
                let s = AngleSlot::from_index(i);
                let t = i / SLOTS_PER_TET;
                serde_json::json!({
                    "index": i,
                    "name": s.to_string(),
                    "bipyramid": s.bipyramid,
                    "tetrahedron": s.tetrahedron + 1,
                    "label": s.label.letter().to_string(),
                    "equatorial_class": (s.label == Edge::A).then(|| self.equatorial[t]),
                })
            })
            .collect();
        serde_json::json!({
            "bongle": self.bongle.to_string(),
            "n": self.n(),
            "innies": self.bongle.innie_count(),
            "convention": CONVENTION,
            "system": self.system.kind,
            "slots": slots,
            "rows": self.system.rows,
            "ideal_classes": self.ideal_classes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bongle::{enumerate_bongles, EnumerationFilter};

    fn tri(s: &str) -> TriangulatedBongle {
        build_decomposition(&s.parse().unwrap(), SystemKind::Strict).unwrap()
    }

    #[test]
    fn slot_index_round_trip() {
        for i in 0..18 * 5 {
            assert_eq!(AngleSlot::from_index(i).index(), i);
        }
        assert_eq!(AngleSlot::new(1, 2, Edge::D).to_string(), "D[1,3]");
    }

    #[test]
    fn class_sizes_and_row_counts() {
        let t = tri("O0 I0 O0 I0");
        assert_eq!(t.tetrahedron_count(), 12);
        assert_eq!(t.class_size(EquatorialClass::Inner), 6);
        assert_eq!(t.class_size(EquatorialClass::Outer), 6);
        let t = tri("O0 O0 O0");
        assert_eq!(t.class_size(EquatorialClass::Inner), 3);
        assert_eq!(t.class_size(EquatorialClass::Outer), 6);
        let t = tri("O0 I0 O0 O0 I0");
        assert_eq!(t.system.rows.len(), 42);
    }

    #[test]
    fn rejects_bad_input() {
        let err = |s: &str| build_decomposition(&s.parse().unwrap(), SystemKind::Strict).unwrap_err();
        assert_eq!(err("O0 O1 O0"), TriangulationError::NonAlternating);
        assert_eq!(err("O0 I0"), TriangulationError::NTooSmall(2));
    }

    #[test]
    fn normalizes_orientation() {
        let t = tri("I0 I0 O0");
        assert_eq!(t.bongle.innie_count(), 1);
        assert_eq!(t.class_size(EquatorialClass::Inner), 4);
    }

    #[test]
    fn start_values() {
        let t = tri("O0 I0 O0 I0 O0 I0");
        let x = t.feasible_start();
        for tet in 0..18 {
            assert!((x.values[tet * 6] - 2.0 * PI / 9.0).abs() < 1e-15);
        }
        assert!(t.constraint_residuals(&x).unwrap().max_norm < 1e-12);

        let t = tri("O0 O0 O0");
        let x = t.feasible_start();
        for (tet, c) in t.equatorial.iter().enumerate() {
            let want = match c {
                EquatorialClass::Inner => 2.0 * PI / 3.0,
                EquatorialClass::Outer => PI / 3.0,
            };
            assert!((x.values[tet * 6] - want).abs() < 1e-15);
        }
        for class in &t.ideal_classes {
            assert_eq!(class.len(), 12);
            let s: f64 = class.iter().map(|&i| x.values[i]).sum();
            assert!((s - 2.0 * PI).abs() < 1e-14);
        }
    }

    #[test]
    fn residual_linearity() {
        let t = tri("O0 O0 I0 O0");
        let x0 = t.feasible_start();
        let base = t.constraint_residuals(&x0).unwrap();
        let d = AngleSlot::new(2, 1, Edge::D).index();
        let mut x = x0.clone();
        x.values[d] += 1e-3;
        let r = t.constraint_residuals(&x).unwrap();
        for (row, (a, b)) in t.system.rows.iter().zip(base.rows.iter().zip(&r.rows)) {
            let expect = if row.slots.contains(&d) { 1e-3 } else { 0.0 };
            assert!((b - a - expect).abs() < 1e-12, "{:?}", row.kind);
        }
        let zero = AngleAssignment { values: vec![0.0; t.slot_count()] };
        let r = t.constraint_residuals(&zero).unwrap();
        for (row, v) in t.system.rows.iter().zip(&r.rows) {
            if let RowKind::CentralEdge { .. } = row.kind {
                assert!((v - 2.0 * PI).abs() < 1e-15);
            }
        }
        let short = AngleAssignment { values: vec![0.0; 3] };
        assert_eq!(
            t.constraint_residuals(&short).unwrap_err(),
            TriangulationError::DimensionMismatch { expected: 72, got: 3 }
        );
    }

    #[test]
    fn loosened_system() {
        let b: Bongle = "O0 O0 I0 O0 I0".parse().unwrap();
        let t = build_decomposition(&b, SystemKind::Loosened).unwrap();
        assert_eq!(t.system.rows.len(), 3);
        assert!(t.constraint_residuals(&t.feasible_start()).unwrap().max_norm < 1e-12);
        assert_eq!(t.system.check_rank().unwrap(), 3);
    }

    #[test]
    fn every_alternating_bongle_up_to_eight() {
        for n in 3..=8 {
            for b in enumerate_bongles(n, EnumerationFilter::Alternating).unwrap() {
                let t = build_decomposition(&b, SystemKind::Strict).unwrap();
                let k = t.bongle.innie_count();
                assert_eq!(t.class_size(EquatorialClass::Inner), n + k);
                assert_eq!(t.class_size(EquatorialClass::Outer), 2 * n - k);
                assert!(t.constraint_residuals(&t.feasible_start()).unwrap().max_norm < 1e-12);
                for (j, class) in t.ideal_classes.iter().enumerate() {
                    assert_eq!(class.len(), 12);
                    let mut bips: Vec<usize> = class.iter().map(|&i| AngleSlot::from_index(i).bipyramid).collect();
                    bips.sort();
                    bips.dedup();
                    let mut want = vec![(j + n - 1) % n, j, (j + 1) % n];
                    want.sort();
                    assert_eq!(bips, want);
                }
                let mut seen = vec![0; t.slot_count()];
                for class in &t.ideal_classes {
                    for &s in class {
                        seen[s] += 1;
                    }
                }
                for (i, &c) in seen.iter().enumerate() {
                    let ideal = matches!(AngleSlot::from_index(i).label, Edge::B | Edge::C | Edge::E | Edge::F);
                    assert_eq!(c, ideal as usize);
                }
                if n <= 6 {
                    t.system.check_rank().unwrap();
                }
            }
        }
    }

    #[test]
    fn debug_dump_lists_everything() {
        let t = tri("O0 I0 O0");
        let v = t.debug_json();
        assert_eq!(v["slots"].as_array().unwrap().len(), 54);
        assert_eq!(v["rows"].as_array().unwrap().len(), t.system.rows.len());
        assert_eq!(v["convention"], "C1");
        assert_eq!(v["rows"][0]["kind"], "north_vertex");
        let rows: Vec<ConstraintRow> = serde_json::from_value(v["rows"].clone()).unwrap();
        assert_eq!(rows, t.system.rows);
    }
}
