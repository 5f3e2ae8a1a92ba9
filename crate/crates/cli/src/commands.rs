//! Implementations of the subcommands.

use std::path::{Path, PathBuf};

use serde_json::json;
use spintop_core::classical::evolve_classical;
use spintop_core::decoherence::{evolve_dephasing, DephasingParams};
use spintop_core::grid::make_grid;
use spintop_core::nmr;
use spintop_core::propagators::kernel_positivity_scan;
use spintop_core::qfunc::{coherent_state, q_coherent, q_function_grid};
use spintop_core::quantum::evolve_unitary;
use spintop_core::{linalg::vec_norm, PhasePoint, QGrid, SpinQuantum, TopParams};

use crate::cli::*;
use crate::complexfmt::{format_complex, parse_complex};
use crate::csvio;
use crate::manifest::{to_json_string, write_json, RunManifest};
use crate::pgm::write_pgm;
use crate::reports;
use crate::CliError;

fn parse_spin(s: f64) -> Result<SpinQuantum, CliError> {
    SpinQuantum::from_value(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_grid_size(text: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| CliError::Usage(format!("grid {text:?} is not THETAxPHI")))?;
    let n_theta = a
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid rows {a:?}")))?;
    let n_phi = b
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid cols {b:?}")))?;
    Ok((n_theta, n_phi))
}

/// Returns the phase-space point plus the canonical echo of the input
/// literal for manifests.
fn parse_z0(text: &str) -> Result<(PhasePoint, String), CliError> {
    let z = parse_complex(text).map_err(CliError::Usage)?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(CliError::Usage(format!("z0 {text:?} is not finite")));
    }
    Ok((PhasePoint::from_z(z), format_complex(z)))
}

fn build_grid(s: SpinQuantum, size: &str) -> Result<QGrid, CliError> {
    let (n_theta, n_phi) = parse_grid_size(size)?;
    make_grid(s, n_theta, n_phi).map_err(CliError::from)
}

/// BASE or BASE.csv -> (BASE.csv, BASE.manifest.json, BASE.pgm)
fn evolve_paths(out: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let base = if out.extension().map(|e| e == "csv").unwrap_or(false) {
        out.with_extension("")
    } else {
        out.to_path_buf()
    };
    (
        base.with_extension("csv"),
        base.with_extension("manifest.json"),
        base.with_extension("pgm"),
    )
}

struct EvolveRun {
    mode: Mode,
    s: f64,
    omega: f64,
    j: f64,
    gamma: Option<f64>,
    t: f64,
    z0: String,
    grid: String,
    out: PathBuf,
    heatmap: bool,
}

fn run_evolve(run: EvolveRun) -> Result<(), CliError> {
    if run.mode != Mode::Dephasing && run.gamma.is_some() {
        return Err(CliError::Usage(format!(
            "--gamma only applies to dephasing mode, not {}",
            run.mode.as_str()
        )));
    }
    if run.mode == Mode::Dephasing && run.gamma.is_none() {
        return Err(CliError::Usage("dephasing mode requires --gamma".into()));
    }
    let s = parse_spin(run.s)?;
    let (z0, z0_echo) = parse_z0(&run.z0)?;
    let grid = build_grid(s, &run.grid)?;
    let params = TopParams::new(run.omega, run.j, s);

    let q = match run.mode {
        Mode::Quantum => {
            let rho0 = coherent_state(s, &z0).to_density();
            q_function_grid(&evolve_unitary(&rho0, &params, run.t)?, &grid)
        }
        Mode::Classical => evolve_classical(|z| q_coherent(s, z, &z0), &params, run.t, &grid),
        Mode::Dephasing => {
            let dp = DephasingParams::new(run.gamma.unwrap(), params)?;
            let rho0 = coherent_state(s, &z0).to_density();
            q_function_grid(&evolve_dephasing(&rho0, &dp, run.t)?, &grid)
        }
    };

    let (csv_path, manifest_path, pgm_path) = evolve_paths(&run.out);
    let mut manifest = RunManifest::new(
        "evolve",
        json!({
            "mode": run.mode.as_str(),
            "s": run.s,
            "omega": run.omega,
            "J": run.j,
            "gamma": run.gamma,
            "t": run.t,
            "z0": z0_echo,
            "grid": run.grid,
        }),
        None,
    );
    csvio::write_grid(&q, &csv_path)?;
    manifest.record_output(&csv_path);
    if run.heatmap {
        write_pgm(&q, &pgm_path)?;
        manifest.record_output(&pgm_path);
    }
    manifest.write(&manifest_path)?;
    Ok(())
}

pub fn evolve(args: EvolveArgs) -> Result<(), CliError> {
    run_evolve(EvolveRun {
        mode: args.mode,
        s: args.s,
        omega: args.omega,
        j: args.j,
        gamma: args.gamma,
        t: args.t,
        z0: args.z0,
        grid: args.grid,
        out: args.out,
        heatmap: args.heatmap,
    })
}

pub fn dephase(args: DephaseArgs) -> Result<(), CliError> {
    run_evolve(EvolveRun {
        mode: Mode::Dephasing,
        s: args.s,
        omega: args.omega,
        j: args.j,
        gamma: Some(args.gamma),
        t: args.t,
        z0: args.z0,
        grid: args.grid,
        out: args.out,
        heatmap: args.heatmap,
    })
}

fn emit_report<T: serde::Serialize>(report: &T, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => write_json(path, report),
        None => {
            print!("{}", to_json_string(report));
            Ok(())
        }
    }
}

pub fn compare(args: CompareArgs) -> Result<(), CliError> {
    let a = csvio::read_grid(&args.file_a)?;
    let b = csvio::read_grid(&args.file_b)?;
    let report = reports::compare_grids(&a, &b, Vec::new())?;
    emit_report(&report, args.out.as_deref())
}

pub fn figure1(args: Figure1Args) -> Result<(), CliError> {
    let s = parse_spin(args.s)?;
    let (z0, z0_echo) = parse_z0(&args.z0)?;
    let grid = build_grid(s, &args.grid)?;
    if args.j == 0.0 {
        return Err(CliError::Usage(
            "figure1 needs J != 0 for the revival time 2 pi / J".into(),
        ));
    }
    let params = TopParams::new(args.omega, args.j, s);
    let t = 2.0 * std::f64::consts::PI / args.j;

    std::fs::create_dir_all(&args.outdir)
        .map_err(|e| CliError::io(&format!("creating {}", args.outdir.display()), e))?;

    let rho0 = coherent_state(s, &z0).to_density();
    let initial = q_function_grid(&rho0, &grid);
    let classical = evolve_classical(|z| q_coherent(s, z, &z0), &params, t, &grid);
    let quantum = q_function_grid(&evolve_unitary(&rho0, &params, t)?, &grid);

    let mut manifest = RunManifest::new(
        "figure1",
        json!({
            "s": args.s,
            "omega": args.omega,
            "J": args.j,
            "z0": z0_echo,
            "grid": args.grid,
            "t": t,
        }),
        None,
    );
    for (name, panel) in [
        ("initial", &initial),
        ("classical", &classical),
        ("quantum", &quantum),
    ] {
        let csv = args.outdir.join(format!("{name}.csv"));
        csvio::write_grid(panel, &csv)?;
        manifest.record_output(&csv);
        let pgm = args.outdir.join(format!("{name}.pgm"));
        write_pgm(panel, &pgm)?;
        manifest.record_output(&pgm);
    }
    let report = reports::compare_grids(&quantum, &classical, vec![t])?;
    let report_path = args.outdir.join("comparison.json");
    write_json(&report_path, &report)?;
    manifest.record_output(&report_path);
    manifest.write(&args.outdir.join("manifest.json"))?;
    Ok(())
}

pub fn scan(args: ScanArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("scan needs --n >= 1".into()));
    }
    let s = parse_spin(args.s)?;
    let params = TopParams::new(args.omega, args.j, s);
    let report = kernel_positivity_scan(&params, args.t, args.n, args.seed);
    let body = reports::scan_report_json(
        reports::ScanParams {
            s: args.s,
            omega: args.omega,
            j: args.j,
        },
        args.t,
        &report,
    );
    emit_report(&body, args.out.as_deref())
}

pub fn bell(args: BellArgs) -> Result<(), CliError> {
    let state = nmr::bell_sequence();
    let target = nmr::bell_phi_plus();
    let eps = 1e-5;
    let report = reports::BellReport {
        fidelity: state.fidelity(&target),
        entangled: nmr::ppt_entangled(&state.to_density())?,
        state: state
            .amplitudes()
            .iter()
            .map(|a| format_complex(*a))
            .collect(),
        pulse_sequence: reports::pulse_sequence_json(&nmr::bell_pulse_sequence()),
        pseudo_pure_epsilon: eps,
        pseudo_pure_entangled: nmr::ppt_entangled(&nmr::pseudo_pure(&target, eps)?)?,
    };
    emit_report(&report, args.out.as_deref())
}

pub fn decay(args: DecayArgs) -> Result<(), CliError> {
    if args.n < 1 {
        return Err(CliError::Usage("decay needs --n >= 1".into()));
    }
    if args.g < 0.0 {
        return Err(CliError::Usage("decay needs --g >= 0".into()));
    }
    let report = reports::DecayReport {
        n: args.n,
        g: args.g,
        value: nmr::schack_caves_decay(args.n, args.g),
    };
    emit_report(&report, args.out.as_deref())
}

pub fn ghz(args: GhzArgs) -> Result<(), CliError> {
    let state = nmr::ghz_cascade(args.n).map_err(|e| CliError::Usage(e.to_string()))?;
    let nonzero: Vec<usize> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-12)
        .map(|(i, _)| i)
        .collect();
    let report = reports::GhzReport {
        n: args.n,
        amplitudes: nonzero
            .iter()
            .map(|&i| format_complex(state.amplitudes()[i]))
            .collect(),
        nonzero_indices: nonzero,
        norm: vec_norm(state.amplitudes()),
    };
    emit_report(&report, args.out.as_deref())
}
