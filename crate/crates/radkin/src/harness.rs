//! Scenario runner: dispatches a validated [`Scenario`] to the library
//! modules and writes a reproducible output directory:
//!
//! ```text
//! <out>/config.toml         canonical copy of the scenario
//! <out>/diagnostics.jsonl   one JSON object per record (solver runs)
//! <out>/*.csv               plot-ready artifacts
//! <out>/summary.txt         key = value lines; first line is the headline
//! ```
//!
//! Runs are deterministic: identical configs produce byte-identical
//! artifacts.

use crate::dispersion::{self, Background};
use crate::entropy;
use crate::fields::FieldModel;
use crate::kinematics::{FourVector, ReducedState};
use crate::numerics::{exponential_rate, linear_fit, local_maxima};
use crate::pushers::{
    self, dirac::push_dirac_asymptotic, ParticleParams, PushMethod, PusherConfig,
};
use crate::scenario::{
    ColdOscillationParams, DispersionScanParams, EntropyBudgetParams, PusherCompareParams,
    RunawayParams, Scenario,
};
use crate::submanifold::PhaseGrid;
use crate::vlasov::{self, PlasmaState, SolverParams};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("pusher failure: {0}")]
    Push(#[from] pushers::PushError),
    #[error("solver failure: {0}")]
    Solver(#[from] vlasov::SolverError),
    #[error("dispersion failure: {0}")]
    Dispersion(#[from] dispersion::DispersionError),
    #[error("fit failure: {0}")]
    Fit(String),
}

/// Outcome of a run: the headline measurement plus all summary entries,
/// as written to `summary.txt`.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub headline: String,
    pub entries: Vec<(String, String)>,
    pub out_dir: PathBuf,
}

impl RunSummary {
    fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Run a scenario into `out_dir` (created if absent).
pub fn run_scenario(scenario: &Scenario, out_dir: &Path) -> Result<RunSummary, HarnessError> {
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("config.toml"), scenario.to_toml_string())?;
    let mut summary = RunSummary {
        headline: String::new(),
        entries: Vec::new(),
        out_dir: out_dir.to_path_buf(),
    };
    match scenario {
        Scenario::Runaway(p) => run_runaway(p, out_dir, &mut summary)?,
        Scenario::PusherCompare(p) => run_pusher_compare(p, out_dir, &mut summary)?,
        Scenario::ColdOscillation(p) => run_cold_oscillation(p, out_dir, &mut summary)?,
        Scenario::DispersionScan(p) => run_dispersion_scan(p, out_dir, &mut summary)?,
        Scenario::EntropyBudget(p) => run_entropy_budget(p, out_dir, &mut summary)?,
    }
    let mut f = BufWriter::new(File::create(out_dir.join("summary.txt"))?);
    writeln!(f, "{}", summary.headline)?;
    for (k, v) in &summary.entries {
        writeln!(f, "{k} = {v}")?;
    }
    Ok(summary)
}

fn run_runaway(
    p: &RunawayParams,
    out: &Path,
    summary: &mut RunSummary,
) -> Result<(), HarnessError> {
    let params = ParticleParams::new(p.tau, p.q_over_m);
    let cfg = PusherConfig::new(PushMethod::LorentzDirac, p.step_over_tau * p.tau);
    let init = ReducedState::new(FourVector::ZERO, [0.0; 3], [p.g0, 0.0, 0.0]);
    let traj = pushers::push_lorentz_dirac(
        &init,
        &FieldModel::Free,
        &params,
        &cfg,
        p.lambda_end_over_tau * p.tau,
    )?;
    traj.write_csv(BufWriter::new(File::create(out.join("trajectory.csv"))?))?;
    let rate = exponential_rate(&traj.lambdas(), &traj.proper_accelerations());
    let rel = (rate * p.tau - 1.0).abs();
    summary.headline = format!(
        "runaway: fitted proper-acceleration growth rate {rate:.6e} vs 1/tau = {:.6e} (relative error {rel:.2e})",
        1.0 / p.tau
    );
    summary.push("fitted_rate", format!("{rate:.12e}"));
    summary.push("inverse_tau", format!("{:.12e}", 1.0 / p.tau));
    summary.push("relative_error", format!("{rel:.6e}"));
    summary.push(
        "max_constraint_residual",
        format!("{:.3e}", traj.max_constraint_residual()),
    );
    Ok(())
}

fn run_pusher_compare(
    p: &PusherCompareParams,
    out: &Path,
    summary: &mut RunSummary,
) -> Result<(), HarnessError> {
    let field = FieldModel::UniformElectric {
        e: [0.0, 0.0, p.e0],
    };
    let v0 = [p.v0_perp, 0.0, 0.0];
    let mut taus = Vec::new();
    let mut dirac_vs_ll = Vec::new();
    let mut series_vs_ll = Vec::new();
    for k in 0..=p.halvings {
        let tau = p.tau / 2f64.powi(k as i32);
        let params = ParticleParams::new(tau, p.q_over_m);
        let cfg = PusherConfig::new(PushMethod::LandauLifshitz, p.step);
        let ll = pushers::push_landau_lifshitz(
            &FourVector::ZERO,
            v0,
            &field,
            &params,
            &cfg,
            p.lambda_end,
        )?;
        let ts = pushers::push_tau_series(
            &FourVector::ZERO,
            v0,
            &field,
            &params,
            1,
            &cfg,
            p.lambda_end,
        )?;
        let mut dcfg = PusherConfig::dirac(p.step, tau);
        dcfg.tolerance = 1e-13;
        let da =
            push_dirac_asymptotic(&FourVector::ZERO, v0, &field, &params, &dcfg, p.lambda_end)?;
        let sup = |a: &pushers::Trajectory, b: &pushers::Trajectory| {
            let n = a.samples.len().min(b.samples.len());
            let mut m: f64 = 0.0;
            for i in 0..n {
                for c in 0..3 {
                    m = m.max((a.samples[i].state.v[c] - b.samples[i].state.v[c]).abs());
                }
            }
            m
        };
        if k == 0 {
            ll.write_csv(BufWriter::new(File::create(
                out.join("landau_lifshitz.csv"),
            )?))?;
            ts.write_csv(BufWriter::new(File::create(out.join("tau_series_n1.csv"))?))?;
            da.write_csv(BufWriter::new(File::create(
                out.join("dirac_asymptotic.csv"),
            )?))?;
        }
        taus.push(tau);
        dirac_vs_ll.push(sup(&da, &ll));
        series_vs_ll.push(sup(&ts, &ll));
    }
    let lx: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
    let ly: Vec<f64> = dirac_vs_ll.iter().map(|d| d.ln()).collect();
    let (slope, _) = linear_fit(&lx, &ly);
    summary.headline = format!(
        "pusher-compare: |dirac-asymptotic - landau-lifshitz| scales as tau^{slope:.3} (expected 2); tau-series N=1 max deviation {:.3e}",
        series_vs_ll.iter().cloned().fold(0.0, f64::max)
    );
    summary.push("dirac_vs_ll_exponent", format!("{slope:.6}"));
    for (i, tau) in taus.iter().enumerate() {
        summary.push(
            &format!("sup_dirac_vs_ll[tau={tau:e}]"),
            format!("{:.6e}", dirac_vs_ll[i]),
        );
        summary.push(
            &format!("sup_series1_vs_ll[tau={tau:e}]"),
            format!("{:.6e}", series_vs_ll[i]),
        );
    }
    Ok(())
}

/// Shared solver loop: evolves the state for `periods` plasma periods,
/// streaming diagnostics, and returns the energy history.
pub struct SolverRun {
    pub state: PlasmaState,
    pub times: Vec<f64>,
    pub field_energy: Vec<f64>,
    pub total_energy: Vec<f64>,
}

pub fn evolve_with_diagnostics(
    mut state: PlasmaState,
    periods: f64,
    cfl: f64,
    mut sink: Option<&mut dyn Write>,
) -> Result<SolverRun, HarnessError> {
    let grid = state.g.grid;
    let vhat_max = grid.vmax / (1.0 + grid.vmax * grid.vmax).sqrt();
    let mut dt = cfl * grid.dz() / vhat_max;
    let accel = state.accel_field();
    dt = dt.min(0.95 * vlasov::stable_dt(&state, &accel));
    let t_end = periods * 2.0 * std::f64::consts::PI / state.params.omega_p();
    let nsteps = (t_end / dt).ceil() as usize;
    let dt = t_end / nsteps as f64;
    let mut times = Vec::with_capacity(nsteps + 1);
    let mut field_energy = Vec::with_capacity(nsteps + 1);
    let mut total_energy = Vec::with_capacity(nsteps + 1);
    let record = |state: &PlasmaState,
                  times: &mut Vec<f64>,
                  fe: &mut Vec<f64>,
                  te: &mut Vec<f64>,
                  sink: &mut Option<&mut dyn Write>|
     -> Result<(), HarnessError> {
        let d = state.diagnostics();
        times.push(d.t);
        fe.push(d.field_energy);
        te.push(d.field_energy + d.kinetic_energy);
        if let Some(w) = sink {
            serde_json::to_writer(&mut **w, &d).map_err(std::io::Error::other)?;
            writeln!(w)?;
        }
        Ok(())
    };
    record(
        &state,
        &mut times,
        &mut field_energy,
        &mut total_energy,
        &mut sink,
    )?;
    for _ in 0..nsteps {
        vlasov::step(&mut state, dt)?;
        record(
            &state,
            &mut times,
            &mut field_energy,
            &mut total_energy,
            &mut sink,
        )?;
    }
    Ok(SolverRun {
        state,
        times,
        field_energy,
        total_energy,
    })
}

/// Fit the exponential decay rate of the field-energy envelope through its
/// local maxima.
pub fn fit_envelope_rate(times: &[f64], field_energy: &[f64]) -> Result<f64, HarnessError> {
    let peaks = local_maxima(field_energy);
    if peaks.len() < 4 {
        return Err(HarnessError::Fit(format!(
            "need at least 4 field-energy peaks for an envelope fit, found {}",
            peaks.len()
        )));
    }
    let tp: Vec<f64> = peaks.iter().map(|&i| times[i]).collect();
    let ep: Vec<f64> = peaks.iter().map(|&i| field_energy[i]).collect();
    Ok(-exponential_rate(&tp, &ep))
}

fn run_cold_oscillation(
    p: &ColdOscillationParams,
    out: &Path,
    summary: &mut RunSummary,
) -> Result<(), HarnessError> {
    let grid = PhaseGrid::new(
        p.grid[0],
        2.0 * std::f64::consts::PI / p.k_mode as f64 * p.k_mode as f64,
        p.grid[1],
        p.v_max,
    );
    let params = SolverParams {
        tau: p.omega_p_tau,
        closure_order: p.closure_order,
        slope: p.slope,
        ..Default::default()
    };
    let sigma_v = 3.0 * grid.dv();
    let state = vlasov::quiet_start(grid, params, p.amplitude, p.k_mode, sigma_v)?;
    let mut sink = BufWriter::new(File::create(out.join("diagnostics.jsonl"))?);
    let run = evolve_with_diagnostics(state, p.periods, p.cfl, Some(&mut sink))?;
    sink.flush()?;

    let e0 = run.total_energy[0];
    let drift = run
        .total_energy
        .iter()
        .map(|e| ((e - e0) / e0).abs())
        .fold(0.0f64, f64::max);
    summary.push("energy_drift_rel", format!("{drift:.6e}"));
    summary.push(
        "gauss_residual",
        format!("{:.3e}", run.state.gauss_residual()),
    );
    summary.push("min_g", format!("{:.3e}", run.state.g.min_value()));

    if p.omega_p_tau > 0.0 {
        let rate = fit_envelope_rate(&run.times, &run.field_energy)?;
        let expected = params.omega_p().powi(2) * p.omega_p_tau;
        let rel = (rate - expected).abs() / expected;
        summary.headline = format!(
            "cold-oscillation: fitted field-energy decay rate {rate:.6e} vs omega_p^2 tau = {expected:.6e} (relative error {rel:.2e})"
        );
        summary.push("fitted_decay_rate", format!("{rate:.12e}"));
        summary.push("expected_decay_rate", format!("{expected:.12e}"));
        summary.push("relative_error", format!("{rel:.6e}"));
    } else {
        summary.headline = format!(
            "cold-oscillation (tau = 0): max relative energy drift {drift:.3e} over {} periods",
            p.periods
        );
    }
    if p.snapshot_final {
        run.state
            .g
            .write_csv(BufWriter::new(File::create(out.join("state_final.csv"))?))?;
        let mut f = BufWriter::new(File::create(out.join("efield_final.csv"))?);
        writeln!(f, "z_face,e_z")?;
        for (i, e) in run.state.e_faces.iter().enumerate() {
            writeln!(
                f,
                "{:.16e},{:.16e}",
                (i as f64 + 1.0) * run.state.g.grid.dz(),
                e
            )?;
        }
    }
    Ok(())
}

fn run_dispersion_scan(
    p: &DispersionScanParams,
    out: &Path,
    summary: &mut RunSummary,
) -> Result<(), HarnessError> {
    let mut f = BufWriter::new(File::create(out.join("roots.csv"))?);
    writeln!(f, "k,tau,re_omega,im_omega,classification,residual")?;
    let omega_p = (p.q_over_m * p.q_over_m * p.mass * p.n0).sqrt();
    let mut n_roots = 0usize;
    let mut n_failed = 0usize;
    for &k in &p.k_list {
        for &tau in &p.tau_list {
            let bg = if p.vth > 0.0 {
                Background::Maxwellian {
                    n0: p.n0,
                    vth: p.vth,
                }
            } else {
                Background::Cold { n0: p.n0 }
            };
            let seeds = dispersion::default_seeds(omega_p, tau);
            for res in dispersion::find_roots(k, &bg, tau, p.q_over_m, p.mass, &seeds) {
                match res {
                    Ok(root) => {
                        writeln!(
                            f,
                            "{:.16e},{:.16e},{:.16e},{:.16e},{},{:.3e}",
                            k,
                            tau,
                            root.omega.re,
                            root.omega.im,
                            root.classification,
                            root.residual
                        )?;
                        n_roots += 1;
                    }
                    Err(e) => {
                        n_failed += 1;
                        summary.push("seed_failure", format!("k={k:e} tau={tau:e}: {e}"));
                    }
                }
            }
        }
    }
    summary.headline = format!(
        "dispersion-scan: {n_roots} roots over {} (k, tau) pairs ({n_failed} seed failures); see roots.csv",
        p.k_list.len() * p.tau_list.len()
    );
    summary.push("roots_found", n_roots);
    summary.push("seed_failures", n_failed);
    Ok(())
}

fn run_entropy_budget(
    p: &EntropyBudgetParams,
    out: &Path,
    summary: &mut RunSummary,
) -> Result<(), HarnessError> {
    let grid = PhaseGrid::new(p.grid[0], 2.0 * std::f64::consts::PI, p.grid[1], p.v_max);
    let params = SolverParams {
        tau: p.omega_p_tau,
        closure_order: p.closure_order.max(1),
        slope: p.slope,
        ..Default::default()
    };
    let sigma_v = 3.0 * grid.dv();
    let state = vlasov::quiet_start(grid, params, p.amplitude, p.k_mode, sigma_v)?;
    let mut sink = BufWriter::new(File::create(out.join("diagnostics.jsonl"))?);
    let run = evolve_with_diagnostics(state, p.settle_periods, p.cfl, Some(&mut sink))?;
    sink.flush()?;

    let state = run.state;
    let accel = state.accel_field();
    let report = entropy::entropy_report(
        &state.g,
        &accel,
        &state.e_centers(),
        state.params.q,
        state.params.mass,
        state.params.n0,
    );
    let cross = (report.ds_dt_exact - state.params.tau * report.ds_dt_first_order).abs();
    summary.headline = format!(
        "entropy-budget: exact rate {:.6e}, tau x first-order rate {:.6e} (difference {:.3e}); self {:+.3e}, ext {:+.3e}, field {:+.3e}",
        report.ds_dt_exact,
        state.params.tau * report.ds_dt_first_order,
        cross,
        report.self_term,
        report.ext_term,
        report.field_term
    );
    summary.push("s_total", format!("{:.12e}", report.s_total));
    summary.push("ds_dt_exact", format!("{:.12e}", report.ds_dt_exact));
    summary.push(
        "ds_dt_first_order",
        format!("{:.12e}", report.ds_dt_first_order),
    );
    summary.push("self_term", format!("{:.12e}", report.self_term));
    summary.push("ext_term", format!("{:.12e}", report.ext_term));
    summary.push("field_term", format!("{:.12e}", report.field_term));
    summary.push("cross_check_abs", format!("{cross:.6e}"));

    // the report is also the last diagnostics record's context; append it
    let mut f = BufWriter::new(File::create(out.join("entropy_report.jsonl"))?);
    let json = serde_json::json!({
        "t": state.t,
        "s_total": report.s_total,
        "ds_dt_exact": report.ds_dt_exact,
        "ds_dt_first_order": report.ds_dt_first_order,
        "self_term": report.self_term,
        "ext_term": report.ext_term,
        "field_term": report.field_term,
    });
    serde_json::to_writer(&mut f, &json).map_err(std::io::Error::other)?;
    writeln!(f)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Scenario;

    #[test]
    fn runaway_scenario_writes_artifacts_and_fits_rate() {
        let dir = tempfile::tempdir().unwrap();
        let s = Scenario::Runaway(RunawayParams::default());
        let summary = run_scenario(&s, dir.path()).unwrap();
        assert!(dir.path().join("trajectory.csv").exists());
        assert!(dir.path().join("config.toml").exists());
        assert!(dir.path().join("summary.txt").exists());
        let rel: f64 = summary.get("relative_error").unwrap().parse().unwrap();
        assert!(rel < 0.01, "relative error {rel}");
    }

    #[test]
    fn determinism_identical_runs_identical_bytes() {
        let s = Scenario::DispersionScan(DispersionScanParams::default());
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        run_scenario(&s, d1.path()).unwrap();
        run_scenario(&s, d2.path()).unwrap();
        let a = std::fs::read(d1.path().join("roots.csv")).unwrap();
        let b = std::fs::read(d2.path().join("roots.csv")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dispersion_scan_csv_has_three_root_structure() {
        let dir = tempfile::tempdir().unwrap();
        let s = Scenario::DispersionScan(DispersionScanParams {
            tau_list: vec![1e-3],
            ..Default::default()
        });
        run_scenario(&s, dir.path()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("roots.csv")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,tau,re_omega,im_omega,classification,residual");
        assert_eq!(lines.len(), 4);
        let physical = lines[1..]
            .iter()
            .filter(|l| l.contains(",physical,"))
            .count();
        let runaway = lines[1..]
            .iter()
            .filter(|l| l.contains(",runaway,"))
            .count();
        assert_eq!((physical, runaway), (2, 1));
    }

    #[test]
    fn small_cold_oscillation_run_completes() {
        let dir = tempfile::tempdir().unwrap();
        let s = Scenario::ColdOscillation(ColdOscillationParams {
            grid: [32, 48],
            periods: 3.0,
            omega_p_tau: 5e-3,
            amplitude: 1e-3,
            v_max: 0.3,
            snapshot_final: true,
            ..Default::default()
        });
        let summary = run_scenario(&s, dir.path()).unwrap();
        assert!(dir.path().join("diagnostics.jsonl").exists());
        assert!(dir.path().join("state_final.csv").exists());
        let rel: f64 = summary.get("relative_error").unwrap().parse().unwrap();
        assert!(rel < 0.3, "coarse-grid decay fit off by {rel}");
        // diagnostics stream is valid JSON lines with the expected keys
        let text = std::fs::read_to_string(dir.path().join("diagnostics.jsonl")).unwrap();
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        for key in [
            "t",
            "field_energy",
            "kinetic_energy",
            "N_tot",
            "J1_mode_amplitude",
            "entropy",
        ] {
            assert!(first.get(key).is_some(), "missing diagnostics key {key}");
        }
    }
}
