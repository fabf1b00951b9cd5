//! CSV emission. Plain UTF-8, '\n' line endings, floats at 12 significant
//! digits (enough to round-trip f64 for regression diffs without pinning
//! sub-tolerance noise), and a leading '#' comment carrying the full
//! parameter set so every file can reproduce itself.

use rabi_core::analysis::{ConvergenceRow, EntropySweep, SpectrumSweep};
use rabi_core::quantum::WignerGrid;

/// 12 significant digits: one lead digit plus 11 after the point.
pub fn format_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Render `# key=value ...` from metadata pairs.
pub fn metadata_line(pairs: &[(&str, String)]) -> String {
    let body: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("# {}", body.join(" "))
}

pub fn spectrum_csv(meta: &str, sweep: &SpectrumSweep) -> String {
    let levels = sweep.energies.first().map_or(0, |row| row.len());
    let mut out = String::new();
    out.push_str(meta);
    out.push('\n');
    out.push('g');
    for k in 0..levels {
        out.push_str(&format!(",level_{k}"));
    }
    out.push_str(",converged\n");
    for ((g, row), converged) in sweep
        .g_values
        .iter()
        .zip(&sweep.energies)
        .zip(&sweep.converged)
    {
        out.push_str(&format_sig(*g));
        for level in row {
            out.push(',');
            out.push_str(&format_sig(*level));
        }
        out.push(',');
        out.push_str(if *converged { "true" } else { "false" });
        out.push('\n');
    }
    out
}

pub fn entropy_csv(meta: &str, sweep: &EntropySweep) -> String {
    let mut out = String::new();
    out.push_str(meta);
    out.push_str("\ng,entropy_bits\n");
    for (g, s) in sweep.g_values.iter().zip(&sweep.entropy_bits) {
        out.push_str(&format_sig(*g));
        out.push(',');
        out.push_str(&format_sig(*s));
        out.push('\n');
    }
    out
}

/// Row-major in the x index: every x row lists all p samples.
pub fn wigner_csv(meta: &str, grid: &WignerGrid) -> String {
    let mut out = String::new();
    out.push_str(meta);
    out.push_str("\nx,p,w\n");
    for (xi, x) in grid.x_axis().iter().enumerate() {
        for (pi, p) in grid.p_axis().iter().enumerate() {
            out.push_str(&format_sig(*x));
            out.push(',');
            out.push_str(&format_sig(*p));
            out.push(',');
            out.push_str(&format_sig(grid.value(xi, pi)));
            out.push('\n');
        }
    }
    out
}

/// Absent estimates serialize as an empty field.
pub fn gc_scan_csv(meta: &str, rows: &[(f64, Option<f64>)]) -> String {
    let mut out = String::new();
    out.push_str(meta);
    out.push_str("\ngamma,g_c\n");
    for (gamma, gc) in rows {
        out.push_str(&format_sig(*gamma));
        out.push(',');
        if let Some(gc) = gc {
            out.push_str(&format_sig(*gc));
        }
        out.push('\n');
    }
    out
}

pub fn converge_csv(meta: &str, rows: &[ConvergenceRow]) -> String {
    let mut out = String::new();
    out.push_str(meta);
    out.push_str("\nn,e0,entropy_bits,max_level_drift\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.fock_dim,
            format_sig(row.ground_energy),
            format_sig(row.entropy_bits),
            format_sig(row.max_level_drift)
        ));
    }
    out
}
