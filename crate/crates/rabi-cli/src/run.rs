//! Command dispatch: compute with `rabi-core`, serialize, summarize.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rabi_core::analysis::{
    convergence_study, entropy_sweep, estimate_gc, gc_vs_gamma, spectrum_sweep, wigner_snapshot,
    EntropySweep, SweepConfig,
};
use rabi_core::models::ModelParams;

use crate::config::{self, Cli, CommandConfig, RunConfig};
use crate::csv_out;
use crate::svg::{self, Series, PALETTE};

/// Failures split by exit code: usage errors exit 2, everything after
/// (computation or IO) exits 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let config = config::validate(cli).map_err(CliError::Usage)?;
    execute(&config)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|err| CliError::Failed(format!("cannot write {}: {err}", path.display())))
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{}{suffix}", prefix.display()))
}

fn compute<T>(result: Result<T, rabi_core::analysis::AnalysisError>) -> Result<T, CliError> {
    result.map_err(|err| CliError::Failed(err.to_string()))
}

fn model_meta(p: &ModelParams) -> Vec<(&'static str, String)> {
    vec![
        ("model", p.variant.to_string()),
        ("omega_c", p.omega_c.to_string()),
        ("omega_0", p.omega_0.to_string()),
        ("gamma", p.gamma.to_string()),
        ("fock_dim", p.fock_dim.to_string()),
    ]
}

fn sweep_meta(cfg: &SweepConfig) -> Vec<(&'static str, String)> {
    let mut meta = model_meta(&cfg.base);
    meta.push(("g_min", cfg.g_min.to_string()));
    meta.push(("g_max", cfg.g_max.to_string()));
    meta.push(("g_steps", cfg.g_steps.to_string()));
    meta.push(("levels", cfg.levels.to_string()));
    meta
}

fn execute(config: &RunConfig) -> Result<(), CliError> {
    let mut written: Vec<PathBuf> = Vec::new();
    let summary = match &config.command {
        CommandConfig::Spectrum {
            cfg,
            threshold_fraction,
        } => {
            let sweep = compute(spectrum_sweep(cfg))?;
            let estimate = estimate_gc(&sweep, *threshold_fraction);
            let mut meta = vec![("command", String::from("spectrum"))];
            meta.extend(sweep_meta(cfg));
            meta.push(("threshold_fraction", threshold_fraction.to_string()));
            let meta_line = csv_out::metadata_line(&meta);
            let csv_path = suffixed(&config.out, ".csv");
            write_file(&csv_path, &csv_out::spectrum_csv(&meta_line, &sweep))?;
            written.push(csv_path);
            if config.emit_svg {
                let series: Vec<Series<'_>> = (0..cfg.levels)
                    .map(|level| Series {
                        label: None,
                        color: "#1f77b4",
                        points: sweep
                            .g_values
                            .iter()
                            .zip(&sweep.energies)
                            .map(|(g, row)| (*g, row[level]))
                            .collect(),
                        with_markers: false,
                    })
                    .collect();
                let title = format!(
                    "{} spectrum, N = {}, gamma = {}",
                    cfg.base.variant, cfg.base.fock_dim, cfg.base.gamma
                );
                let svg_path = suffixed(&config.out, ".svg");
                write_file(
                    &svg_path,
                    &svg::line_chart(&meta_line[2..], &title, "g", "energy", &series),
                )?;
                written.push(svg_path);
            }
            let gc_text = estimate
                .g_c
                .map_or_else(|| String::from("none"), |gc| gc.to_string());
            format!(
                "spectrum: {} g-points x {} levels at N = {}; estimated g_c = {gc_text} \
                 (threshold {})",
                sweep.g_values.len(),
                cfg.levels,
                cfg.base.fock_dim,
                threshold_fraction
            )
        }
        CommandConfig::Entropy { cfg, gammas } => {
            let mut curves: Vec<(f64, EntropySweep)> = Vec::new();
            for &gamma in gammas {
                let sub = SweepConfig {
                    base: ModelParams { gamma, ..cfg.base },
                    ..cfg.clone()
                };
                curves.push((gamma, compute(entropy_sweep(&sub))?));
            }
            let mut best: Option<(f64, f64, f64)> = None;
            for (gamma, sweep) in &curves {
                let mut meta = vec![("command", String::from("entropy"))];
                meta.extend(sweep_meta(&SweepConfig {
                    base: ModelParams {
                        gamma: *gamma,
                        ..cfg.base
                    },
                    ..cfg.clone()
                }));
                let meta_line = csv_out::metadata_line(&meta);
                let csv_path = if curves.len() == 1 {
                    suffixed(&config.out, ".csv")
                } else {
                    suffixed(&config.out, &format!("_gamma{gamma}.csv"))
                };
                write_file(&csv_path, &csv_out::entropy_csv(&meta_line, sweep))?;
                written.push(csv_path);
                for (g, s) in sweep.g_values.iter().zip(&sweep.entropy_bits) {
                    if best.is_none_or(|(_, _, sb)| *s > sb) {
                        best = Some((*gamma, *g, *s));
                    }
                }
            }
            if config.emit_svg {
                let mut meta = vec![("command", String::from("entropy"))];
                meta.extend(sweep_meta(cfg));
                meta.push((
                    "gammas",
                    gammas
                        .iter()
                        .map(|g| g.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ));
                let series: Vec<Series<'_>> = curves
                    .iter()
                    .enumerate()
                    .map(|(i, (gamma, sweep))| Series {
                        label: Some(format!("gamma = {gamma}")),
                        color: PALETTE[i % PALETTE.len()],
                        points: sweep
                            .g_values
                            .iter()
                            .zip(&sweep.entropy_bits)
                            .map(|(g, s)| (*g, *s))
                            .collect(),
                        with_markers: false,
                    })
                    .collect();
                let title = format!(
                    "{} ground-state entropy, N = {}",
                    cfg.base.variant, cfg.base.fock_dim
                );
                let svg_path = suffixed(&config.out, ".svg");
                write_file(
                    &svg_path,
                    &svg::line_chart(
                        &csv_out::metadata_line(&meta)[2..],
                        &title,
                        "g",
                        "entropy (bits)",
                        &series,
                    ),
                )?;
                written.push(svg_path);
            }
            let (bg, bgg, bs) = best.expect("at least one curve point");
            format!("entropy: max S = {bs:.6} bits at gamma = {bg}, g = {bgg}")
        }
        CommandConfig::Wigner { params, grid } => {
            let wigner = compute(wigner_snapshot(params, grid))?;
            let mut meta = vec![("command", String::from("wigner"))];
            meta.extend(model_meta(params));
            meta.push(("g", params.g.to_string()));
            meta.push(("x_min", grid.x_min.to_string()));
            meta.push(("x_max", grid.x_max.to_string()));
            meta.push(("p_min", grid.p_min.to_string()));
            meta.push(("p_max", grid.p_max.to_string()));
            meta.push(("grid_points", grid.x_points.to_string()));
            let meta_line = csv_out::metadata_line(&meta);
            let csv_path = suffixed(&config.out, ".csv");
            write_file(&csv_path, &csv_out::wigner_csv(&meta_line, &wigner))?;
            written.push(csv_path);
            if config.emit_svg {
                let title = format!(
                    "{} ground-state Wigner function, N = {}, g = {}, gamma = {}",
                    params.variant, params.fock_dim, params.g, params.gamma
                );
                let svg_path = suffixed(&config.out, ".svg");
                write_file(
                    &svg_path,
                    &svg::wigner_heatmap(&meta_line[2..], &title, &wigner),
                )?;
                written.push(svg_path);
            }
            format!(
                "wigner: min W = {:.6}, max W = {:.6}, negativity volume = {:.6}",
                wigner.min_value(),
                wigner.max_value(),
                wigner.negativity_volume()
            )
        }
        CommandConfig::GcScan {
            cfg,
            gammas,
            threshold_fraction,
        } => {
            let scan = compute(gc_vs_gamma(cfg, gammas, *threshold_fraction))?;
            let mut meta = vec![("command", String::from("gc-scan"))];
            meta.extend(sweep_meta(cfg));
            meta.push(("threshold_fraction", threshold_fraction.to_string()));
            meta.push((
                "gammas",
                gammas
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ));
            let meta_line = csv_out::metadata_line(&meta);
            let csv_path = suffixed(&config.out, ".csv");
            write_file(&csv_path, &csv_out::gc_scan_csv(&meta_line, &scan))?;
            written.push(csv_path);
            if config.emit_svg {
                let points: Vec<(f64, f64)> = scan
                    .iter()
                    .filter_map(|(gamma, gc)| gc.map(|gc| (*gamma, gc)))
                    .collect();
                let series = [Series {
                    label: None,
                    color: PALETTE[2],
                    points,
                    with_markers: true,
                }];
                let title = format!(
                    "{} collapse coupling vs Stark coupling, N = {}",
                    cfg.base.variant, cfg.base.fock_dim
                );
                let svg_path = suffixed(&config.out, ".svg");
                write_file(
                    &svg_path,
                    &svg::line_chart(&meta_line[2..], &title, "gamma", "g_c", &series),
                )?;
                written.push(svg_path);
            }
            let mut report = String::from("gc-scan:");
            for (gamma, gc) in &scan {
                match gc {
                    Some(gc) => write!(report, " g_c({gamma}) = {gc};").expect("string write"),
                    None => write!(report, " g_c({gamma}) = none;").expect("string write"),
                }
            }
            report.pop();
            report
        }
        CommandConfig::Converge {
            params,
            dims,
            levels,
        } => {
            let rows = compute(convergence_study(params, dims, *levels))?;
            let mut meta = vec![("command", String::from("converge"))];
            meta.extend(model_meta(params));
            meta.push(("g", params.g.to_string()));
            meta.push((
                "dims",
                dims.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ));
            meta.push(("levels", levels.to_string()));
            let meta_line = csv_out::metadata_line(&meta);
            let csv_path = suffixed(&config.out, ".csv");
            write_file(&csv_path, &csv_out::converge_csv(&meta_line, &rows))?;
            written.push(csv_path);
            if config.emit_svg {
                let series = [Series {
                    label: None,
                    color: PALETTE[2],
                    points: rows
                        .iter()
                        .map(|r| (r.fock_dim as f64, r.ground_energy))
                        .collect(),
                    with_markers: true,
                }];
                let title = format!(
                    "{} ground energy vs truncation, g = {}, gamma = {}",
                    params.variant, params.g, params.gamma
                );
                let svg_path = suffixed(&config.out, ".svg");
                write_file(
                    &svg_path,
                    &svg::line_chart(&meta_line[2..], &title, "fock dimension N", "E0", &series),
                )?;
                written.push(svg_path);
            }
            let last = rows.last().expect("validated nonempty");
            let worst = rows
                .iter()
                .map(|r| r.max_level_drift)
                .fold(0.0f64, f64::max);
            format!(
                "converge: E0(N = {}) = {:.9}, S = {:.6} bits, max level drift {:.3e}",
                last.fock_dim, last.ground_energy, last.entropy_bits, worst
            )
        }
    };

    let files: Vec<String> = written
        .iter()
        .map(|p| p.display().to_string())
        .collect();
    println!("{summary}; wrote {}", files.join(" "));
    Ok(())
}
