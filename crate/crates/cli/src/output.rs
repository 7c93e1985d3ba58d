use std::fmt::Write;

use bongle_core::{VolumeMethod, VolumeReport};
use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// Ten significant digits in fixed notation, scientific for tiny or huge values.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..15).contains(&mag) {
        return format!("{x:.9e}");
    }
    let decimals = (9 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Left-aligned columns separated by two spaces.
pub fn human_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", parts.join("  ").trim_end()).unwrap();
    };
    line(header.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

pub fn human_report(r: &VolumeReport) -> String {
    let mut s = String::new();
    let method = match r.method {
        VolumeMethod::KnownLink => "known link exterior",
        VolumeMethod::BalancedClosedForm => "balanced closed form",
        VolumeMethod::Optimizer => "angle-structure optimizer",
        VolumeMethod::BoundOnly => "upper bound only",
    };
    writeln!(s, "bongle:       {}", r.bongle).unwrap();
    writeln!(s, "volume:       {}", sig10(r.volume)).unwrap();
    writeln!(s, "method:       {method}").unwrap();
    writeln!(s, "accuracy:     {:.1e}", r.accuracy).unwrap();
    if let Some(c) = &r.convention {
        writeln!(s, "convention:   {c}").unwrap();
    }
    if r.provisional {
        writeln!(s, "provisional:  yes").unwrap();
    }
    if r.method == VolumeMethod::Optimizer || r.method == VolumeMethod::BoundOnly || r.iterations > 0 {
        writeln!(s, "iterations:   {}", r.iterations).unwrap();
        writeln!(s, "gradient:     {:.1e}", r.projected_gradient_norm).unwrap();
        writeln!(s, "residual:     {:.1e}", r.max_residual).unwrap();
        writeln!(s, "converged:    {}", if r.converged { "yes" } else { "no" }).unwrap();
    }
    if !r.degenerate_slots.is_empty() {
        writeln!(s, "degenerate slots: {:?}", r.degenerate_slots).unwrap();
    }
    if !r.negative_tetrahedra.is_empty() {
        writeln!(s, "negatively oriented tetrahedra: {:?}", r.negative_tetrahedra).unwrap();
    }
    if let Some(c) = &r.cross_check {
        writeln!(
            s,
            "cross-check:  closed form {}, optimizer {}, difference {:.1e}",
            sig10(c.closed_form),
            sig10(c.optimizer),
            c.difference
        )
        .unwrap();
    }
    if let Some(a) = &r.audit {
        writeln!(
            s,
            "restarts:     {} runs, {} failed, spread {:.1e}",
            a.runs, a.failures, a.spread
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(3.663862376708876), "3.663862377");
        assert_eq!(sig10(18.26894551), "18.26894551");
        assert_eq!(sig10(0.0123456789012), "0.01234567890");
        assert_eq!(sig10(1.5e-7), "1.500000000e-7");
        assert_eq!(sig10(0.0), "0");
    }

    #[test]
    fn table_alignment() {
        let t = human_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\n");
    }
}
