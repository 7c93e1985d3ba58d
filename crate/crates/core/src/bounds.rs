//! Volume bounds, monotonicity scans and tables for the volume conjectures.
//!
//! Scans run rows in parallel and collect them in key order, so output is
//! deterministic. Tables serialize to CSV or to a versioned JSON envelope.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bongle::{enumerate_bongles_with_cap, BongleError, EnumerationFilter, DEFAULT_ENUMERATION_CAP};
use crate::numerics::{constants, NumericsError, TnClosedForm};
use crate::optimizer::{balanced_closed_form, bongle_volume, maximize_volume, OptimizerError, OptimizerOptions, VolumeMethod};
use crate::triangulation::{build_decomposition, SystemKind};

/// Version of the column layout of every emitted table.
pub const SCHEMA_VERSION: u32 = 1;

/// Label carried by the k-ordering table.
pub const CONJECTURE_LABEL: &str = "conjecture exploration — not a theorem";

/// Largest `n` accepted by the closed-form scans.
pub const MAX_SCAN_N: u32 = 1_000_000;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("scan range {start}..={end} must lie within 2..={max}")]
    BadRange { start: u32, end: u32, max: u32 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Bongle(#[from] BongleError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn check_range(range: &RangeInclusive<u32>, min: u32) -> Result<(), BoundsError> {
    let (start, end) = (*range.start(), *range.end());
    if start < min || start > end || end > MAX_SCAN_N {
        return Err(BoundsError::BadRange {
            start,
            end,
            max: MAX_SCAN_N,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: u32,
    pub balanced_volume: f64,
    pub five_n_vtet: f64,
    /// `V_n^B / (n - 1) = (2n / (n - 1)) Vol(T_n)`.
    pub per_n_minus_one: f64,
    pub per_n: f64,
    /// `V_n^B < 5n v_tet`.
    pub below_supremum: bool,
    /// `V_n^B / (n - 1) - 5 v_tet`.
    pub inequality_margin: f64,
    pub inequality_holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub n: u32,
    pub value: f64,
    pub margin: f64,
    pub holds: bool,
}

/// Evaluates `(2n / (n - 1)) Vol(T_n) - 5 v_tet`.
pub fn inequality_check(n: u32) -> Result<InequalityCheck, NumericsError> {
    let t = TnClosedForm::new(n)?;
    let nf = n as f64;
    let value = 2.0 * nf / (nf - 1.0) * t.volume();
    let margin = value - constants().five_v_tet;
    Ok(InequalityCheck {
        n,
        value,
        margin,
        holds: margin > 0.0,
    })
}

pub fn bound_table(range: RangeInclusive<u32>) -> Result<Vec<BoundRow>, BoundsError> {
    check_range(&range, 2)?;
    let five = constants().five_v_tet;
    range
        .into_par_iter()
        .map(|n| {
            let v = balanced_closed_form(n as usize)?;
            let check = inequality_check(n)?;
            let nf = n as f64;
            Ok(BoundRow {
                n,
                balanced_volume: v,
                five_n_vtet: five * nf,
                per_n_minus_one: v / (nf - 1.0),
                per_n: v / nf,
                below_supremum: v < five * nf,
                inequality_margin: check.margin,
                inequality_holds: check.holds,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityRow {
    pub n: u32,
    /// `(n / (n - 1)) Im U(z1, T_n)`.
    pub z1_term: f64,
    /// `(n / (n - 1)) Im U(z2, T_n)`.
    pub z2_term: f64,
    /// `(2n / (n - 1)) Vol(T_n)`, which equals `z1_term - z2_term`.
    pub combined: f64,
    /// Sign of the change from the previous row; empty on the first row.
    pub z1_decreasing: Option<bool>,
    pub z2_decreasing: Option<bool>,
    pub combined_decreasing: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityScan {
    pub rows: Vec<MonotonicityRow>,
    /// First `n` from which the sequence decreases through the end of the range.
    pub z1_decreasing_from: Option<u32>,
    pub z2_decreasing_from: Option<u32>,
    pub combined_decreasing_from: Option<u32>,
    pub z2_increasing_throughout: bool,
}

pub fn monotonicity_scan(range: RangeInclusive<u32>) -> Result<MonotonicityScan, BoundsError> {
    check_range(&range, 2)?;
    let raw: Vec<(u32, f64, f64)> = range
        .into_par_iter()
        .map(|n| {
            let t = TnClosedForm::new(n)?;
            let (u1, u2) = t.u_parts();
            let s = n as f64 / (n as f64 - 1.0);
            Ok((n, s * u1, s * u2))
        })
        .collect::<Result<_, NumericsError>>()?;
    let mut rows: Vec<MonotonicityRow> = Vec::with_capacity(raw.len());
    for (i, &(n, z1, z2)) in raw.iter().enumerate() {
        let combined = z1 - z2;
        let prev = i.checked_sub(1).map(|j| raw[j]);
        rows.push(MonotonicityRow {
            n,
            z1_term: z1,
            z2_term: z2,
            combined,
            z1_decreasing: prev.map(|p| z1 < p.1),
            z2_decreasing: prev.map(|p| z2 < p.2),
            combined_decreasing: prev.map(|p| combined < p.1 - p.2),
        });
    }
    let tail_start = |flag: fn(&MonotonicityRow) -> Option<bool>| -> Option<u32> {
        let mut start = None;
        for r in rows.iter().rev() {
            match flag(r) {
                Some(true) => start = Some(r.n - 1),
                _ => break,
            }
        }
        start
    };
    let z1_decreasing_from = tail_start(|r| r.z1_decreasing);
    let z2_decreasing_from = tail_start(|r| r.z2_decreasing);
    let combined_decreasing_from = tail_start(|r| r.combined_decreasing);
    let z2_increasing_throughout = rows.iter().skip(1).all(|r| r.z2_decreasing == Some(false));
    Ok(MonotonicityScan {
        rows,
        z1_decreasing_from,
        z2_decreasing_from,
        combined_decreasing_from,
        z2_increasing_throughout,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub n: u32,
    pub per_n: f64,
    /// `5 v_tet - V_n^B / n`.
    pub gap: f64,
    /// Whether `per_n` grew from the previous row.
    pub increasing: Option<bool>,
}

pub fn limit_table(range: RangeInclusive<u32>) -> Result<Vec<LimitRow>, BoundsError> {
    check_range(&range, 2)?;
    let five = constants().five_v_tet;
    let per_n: Vec<(u32, f64)> = range
        .into_par_iter()
        .map(|n| Ok((n, balanced_closed_form(n as usize)? / n as f64)))
        .collect::<Result<_, NumericsError>>()?;
    Ok(per_n
        .iter()
        .enumerate()
        .map(|(i, &(n, v))| LimitRow {
            n,
            per_n: v,
            gap: five - v,
            increasing: i.checked_sub(1).map(|j| v > per_n[j].1),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KOrderRow {
    pub n: usize,
    pub k: usize,
    pub bongle: String,
    pub volume: Option<f64>,
    pub method: Option<VolumeMethod>,
    /// Closed form for the balanced row.
    pub closed_form: Option<f64>,
    pub below_supremum: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KOrderScan {
    pub label: String,
    pub n: usize,
    pub rows: Vec<KOrderRow>,
    /// Every class with more innies has a larger volume than every class with fewer.
    pub increasing_in_k: bool,
}

/// Optimizer volumes for every alternating class of `n`-bongles, grouped by
/// the innie count after orientation normalization.
pub fn k_order_scan(n: usize, opts: &OptimizerOptions) -> Result<KOrderScan, BoundsError> {
    k_order_scan_with_cap(n, opts, DEFAULT_ENUMERATION_CAP)
}

pub fn k_order_scan_with_cap(n: usize, opts: &OptimizerOptions, cap: usize) -> Result<KOrderScan, BoundsError> {
    if n < 3 {
        return Err(BoundsError::BadRange {
            start: n as u32,
            end: n as u32,
            max: cap as u32,
        });
    }
    let classes = enumerate_bongles_with_cap(n, EnumerationFilter::Alternating, cap)?;
    let mut keyed: Vec<(usize, crate::bongle::Bongle)> = classes
        .into_iter()
        .map(|b| {
            let nb = b.normalize_orientation();
            (nb.innie_count(), nb)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.to_string().cmp(&b.1.to_string())));
    let five = constants().five_v_tet * n as f64;
    let rows: Vec<KOrderRow> = keyed
        .par_iter()
        .map(|(k, b)| {
            let closed_form = (2 * k == n).then(|| balanced_closed_form(n).ok()).flatten();
            let result = build_decomposition(b, SystemKind::Strict)
                .map_err(OptimizerError::from)
                .and_then(|t| maximize_volume(&t, opts));
            let (volume, method, error) = match result {
                Ok(r) => (Some(r.volume), Some(r.method), None),
                Err(OptimizerError::NoInteriorProgress(r)) => {
                    (Some(r.volume), Some(VolumeMethod::BoundOnly), Some("degenerate".to_string()))
                }
                Err(e) => (None, None, Some(e.to_string())),
            };
            KOrderRow {
                n,
                k: *k,
                bongle: b.to_string(),
                volume,
                method,
                closed_form,
                below_supremum: volume.map(|v| v < five),
                error,
            }
        })
        .collect();
    let mut increasing_in_k = true;
    for a in &rows {
        for b in &rows {
            if let (Some(va), Some(vb)) = (a.volume, b.volume) {
                if a.k < b.k && va >= vb {
                    increasing_in_k = false;
                }
            }
        }
    }
    Ok(KOrderScan {
        label: CONJECTURE_LABEL.to_string(),
        n,
        rows,
        increasing_in_k,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeTableRow {
    pub n: usize,
    pub k: usize,
    pub bongle: String,
    pub volume: Option<f64>,
    pub method: Option<VolumeMethod>,
    pub convention: Option<String>,
    pub below_supremum: Option<bool>,
    pub note: Option<String>,
}

/// Volumes of every alternating class for `n_min <= n <= n_max`, in
/// canonical order. Balanced classes after the first of each `n` are marked
/// as sharing its volume.
pub fn volume_table(
    n_min: usize,
    n_max: usize,
    opts: &OptimizerOptions,
    cap: usize,
) -> Result<Vec<VolumeTableRow>, BoundsError> {
    if n_min < 3 || n_min > n_max {
        return Err(BoundsError::BadRange {
            start: n_min as u32,
            end: n_max as u32,
            max: cap as u32,
        });
    }
    let mut classes = Vec::new();
    for n in n_min..=n_max {
        classes.extend(enumerate_bongles_with_cap(n, EnumerationFilter::Alternating, cap)?);
    }
    let mut rows: Vec<VolumeTableRow> = classes
        .par_iter()
        .map(|b| {
            let n = b.len();
            let (volume, method, convention, note) = match bongle_volume(b, opts) {
                Ok(r) => (Some(r.volume), Some(r.method), r.convention, None),
                Err(OptimizerError::NoInteriorProgress(r)) => (
                    Some(r.volume),
                    Some(VolumeMethod::BoundOnly),
                    r.convention,
                    Some("degenerate: upper bound only".to_string()),
                ),
                Err(e) => (None, None, None, Some(e.to_string())),
            };
            VolumeTableRow {
                n,
                k: b.normalize_orientation().innie_count(),
                bongle: b.to_string(),
                volume,
                method,
                convention,
                below_supremum: volume.map(|v| v < constants().five_v_tet * n as f64),
                note,
            }
        })
        .collect();
    let mut first_balanced: Option<(usize, String)> = None;
    for r in &mut rows {
        if 2 * r.k != r.n {
            continue;
        }
        match &first_balanced {
            Some((n, rep)) if *n == r.n => {
                r.note = Some(format!("balanced: same volume as {rep}"));
            }
            _ => first_balanced = Some((r.n, r.bongle.clone())),
        }
    }
    Ok(rows)
}

/// CSV with a header row and LF line endings.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, BoundsError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| BoundsError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEnvelope<T> {
    pub schema_version: u32,
    pub table: String,
    pub note: Option<String>,
    pub rows: Vec<T>,
}

pub fn to_json<T: Serialize + Clone>(table: &str, note: Option<&str>, rows: &[T]) -> serde_json::Value {
    serde_json::to_value(TableEnvelope {
        schema_version: SCHEMA_VERSION,
        table: table.to_string(),
        note: note.map(str::to_string),
        rows: rows.to_vec(),
    })
    .expect("table rows serialize")
}
