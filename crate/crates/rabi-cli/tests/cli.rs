//! End-to-end tests against the built binary: file formats, determinism,
//! exit codes, and SVG well-formedness.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn rabi(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rabi"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("read {name}: {e}"))
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn spectrum_emits_schema_and_identical_bytes_across_runs() {
    let dir = TempDir::new().unwrap();
    let args = [
        "spectrum",
        "--model",
        "2pqrm",
        "--g-max",
        "0.6",
        "--g-steps",
        "7",
        "--fock-dim",
        "24",
        "--levels",
        "6",
        "--out",
        "run1",
    ];
    let out = rabi(dir.path(), &args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("estimated g_c"), "{stdout}");

    let first = read(dir.path(), "run1.csv");
    let lines = data_lines(&first);
    assert_eq!(lines.len(), 8, "header + 7 rows");
    assert_eq!(
        lines[0],
        "g,level_0,level_1,level_2,level_3,level_4,level_5,converged"
    );
    assert!(first.starts_with("# command=spectrum"), "metadata comment first");
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 8);
        for value in &fields[..7] {
            value.parse::<f64>().expect("numeric field");
        }
        assert!(fields[7] == "true" || fields[7] == "false");
    }

    let second_run = rabi(dir.path(), &args);
    assert!(second_run.status.success());
    let second = read(dir.path(), "run1.csv");
    assert_eq!(first.as_bytes(), second.as_bytes(), "CSV must be byte-identical");
}

#[test]
fn spectrum_csv_round_trips_the_computed_values() {
    use rabi_core::analysis::{spectrum_sweep, SweepConfig};
    use rabi_core::models::{ModelParams, ModelVariant};

    let dir = TempDir::new().unwrap();
    let out = rabi(
        dir.path(),
        &[
            "spectrum", "--model", "qrsm", "--gamma", "0.2", "--g-min", "0.1", "--g-max", "0.5",
            "--g-steps", "5", "--fock-dim", "16", "--levels", "4", "--out", "qs",
        ],
    );
    assert!(out.status.success());

    let expected = spectrum_sweep(&SweepConfig {
        base: ModelParams {
            gamma: 0.2,
            ..ModelParams::new(ModelVariant::Qrsm, 16)
        },
        g_min: 0.1,
        g_max: 0.5,
        g_steps: 5,
        levels: 4,
    })
    .unwrap();

    let text = read(dir.path(), "qs.csv");
    for (row, (g, levels)) in data_lines(&text)[1..]
        .iter()
        .zip(expected.g_values.iter().zip(&expected.energies))
    {
        let fields: Vec<f64> = row
            .split(',')
            .take(5)
            .map(|f| f.parse().unwrap())
            .collect();
        assert!((fields[0] - g).abs() <= 1e-11 * g.abs().max(1.0));
        for (parsed, level) in fields[1..].iter().zip(levels) {
            assert!(
                (parsed - level).abs() <= 1e-11 * level.abs().max(1.0),
                "round trip lost precision: {parsed} vs {level}"
            );
        }
    }
}

#[test]
fn wigner_grid_has_one_row_per_cell_and_a_clean_vacuum_svg() {
    let dir = TempDir::new().unwrap();
    let out = rabi(
        dir.path(),
        &[
            "wigner", "--model", "qrm", "--g", "0", "--fock-dim", "8", "--grid-points", "9",
            "--x-range=-3:3", "--p-range=-3:3", "--out", "vac", "--svg",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = read(dir.path(), "vac.csv");
    let lines = data_lines(&csv);
    assert_eq!(lines.len(), 1 + 81, "schema header + 9x9 grid");
    assert_eq!(lines[0], "x,p,w");

    // Vacuum is nonnegative: no cell may be colored from the blue
    // (negative) half of the diverging map.
    let svg = read(dir.path(), "vac.svg");
    for piece in svg.split("fill=\"#").skip(1) {
        let hex = &piece[..6];
        if hex == "ffffff" {
            continue;
        }
        let r = u8::from_str_radix(&hex[0..2], 16).unwrap();
        let b = u8::from_str_radix(&hex[4..6], 16).unwrap();
        assert!(r >= b, "blue-dominant cell #{hex} in a vacuum heatmap");
    }
    roxmltree::Document::parse(&svg).expect("well-formed XML");
}

#[test]
fn entropy_multi_gamma_emits_one_csv_per_curve_and_a_legend() {
    let dir = TempDir::new().unwrap();
    let out = rabi(
        dir.path(),
        &[
            "entropy", "--model", "2prsm", "--gamma", "0.2,0.5", "--g-max", "0.4", "--g-steps",
            "4", "--fock-dim", "16", "--out", "ent", "--svg",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    for name in ["ent_gamma0.2.csv", "ent_gamma0.5.csv"] {
        let csv = read(dir.path(), name);
        let lines = data_lines(&csv);
        assert_eq!(lines.len(), 5, "{name}: header + 4 rows");
        assert_eq!(lines[0], "g,entropy_bits");
    }
    let svg = read(dir.path(), "ent.svg");
    assert!(svg.contains("gamma = 0.2"));
    assert!(svg.contains("gamma = 0.5"));
    roxmltree::Document::parse(&svg).expect("well-formed XML");
}

#[test]
fn gc_scan_reports_a_decreasing_collapse_threshold() {
    let dir = TempDir::new().unwrap();
    let out = rabi(
        dir.path(),
        &[
            "gc-scan",
            "--model",
            "2prsm",
            "--gamma",
            "0,0.6",
            "--g-max",
            "0.6",
            "--g-steps",
            "31",
            "--fock-dim",
            "40",
            "--threshold-fraction",
            "0.3",
            "--out",
            "scan",
            "--svg",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "scan.csv");
    let lines = data_lines(&csv);
    assert_eq!(lines[0], "gamma,g_c");
    assert_eq!(lines.len(), 3);
    let parse_gc = |line: &str| -> f64 {
        line.split(',').nth(1).unwrap().parse().unwrap()
    };
    let gc0 = parse_gc(lines[1]);
    let gc6 = parse_gc(lines[2]);
    assert!(
        gc0 > gc6,
        "Stark coupling should lower the collapse threshold: {gc0} vs {gc6}"
    );
    roxmltree::Document::parse(&read(dir.path(), "scan.svg")).expect("well-formed XML");
}

#[test]
fn converge_emits_the_drift_table() {
    let dir = TempDir::new().unwrap();
    let out = rabi(
        dir.path(),
        &[
            "converge", "--model", "2pqrm", "--g", "0.2", "--fock-dim", "16,32", "--levels", "6",
            "--out", "conv", "--svg",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "conv.csv");
    let lines = data_lines(&csv);
    assert_eq!(lines[0], "n,e0,entropy_bits,max_level_drift");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("16,"));
    assert!(lines[2].starts_with("32,"));
    roxmltree::Document::parse(&read(dir.path(), "conv.svg")).expect("well-formed XML");
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    // Unknown flag.
    let out = rabi(dir.path(), &["spectrum", "--model", "qrm", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // Two-photon truncation too small for (a^dag)^2.
    let out = rabi(
        dir.path(),
        &[
            "spectrum", "--model", "2pqrm", "--g-max", "1", "--g-steps", "5", "--fock-dim", "1",
            "--out", "x",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("--fock-dim"), "{stderr}");

    // Stark coupling on the variant that forbids it.
    let out = rabi(
        dir.path(),
        &[
            "spectrum", "--model", "2pqrm", "--gamma", "0.5", "--g-max", "1", "--g-steps", "5",
            "--out", "x",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("--gamma"), "{stderr}");

    // Missing required flag.
    let out = rabi(dir.path(), &["spectrum", "--model", "qrm", "--out", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_one() {
    let dir = TempDir::new().unwrap();
    let out = rabi(
        dir.path(),
        &[
            "spectrum",
            "--model",
            "qrm",
            "--g-max",
            "0.5",
            "--g-steps",
            "3",
            "--fock-dim",
            "8",
            "--levels",
            "2",
            "--out",
            "missing-dir/run",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("cannot write"), "{stderr}");
}

#[test]
fn help_exits_zero() {
    let dir = TempDir::new().unwrap();
    let out = rabi(dir.path(), &["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    for sub in ["spectrum", "entropy", "wigner", "gc-scan", "converge"] {
        assert!(stdout.contains(sub), "{stdout}");
    }
}
