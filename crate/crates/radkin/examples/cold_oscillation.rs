//! Radiative damping of a cold Langmuir oscillation.
//!
//! A quiet-start density perturbation rings at the plasma frequency; with
//! radiation reaction on, the field-energy envelope decays at
//! `omega_p^2 tau`. This runs a desk-size case (128x128, 10 periods) and
//! compares the fitted envelope rate with both the first-order prediction
//! and the exact cold-cubic damping.
//!
//! ```text
//! cargo run --release --example cold_oscillation
//! ```

use radkin::dispersion::cold_dispersion_roots;
use radkin::harness::{evolve_with_diagnostics, fit_envelope_rate};
use radkin::submanifold::PhaseGrid;
use radkin::vlasov::{quiet_start, SlopeMode, SolverParams};

fn main() {
    let omega_p_tau = 2e-3;
    let grid = PhaseGrid::new(128, 2.0 * std::f64::consts::PI, 128, 0.35);
    let params = SolverParams {
        tau: omega_p_tau,
        closure_order: 1,
        slope: SlopeMode::Central,
        ..Default::default()
    };
    let sigma_v = 3.0 * grid.dv();
    let state = quiet_start(grid, params, 1e-5, 1, sigma_v).expect("quiet start fits the grid");
    println!(
        "cold oscillation: grid {}x{}, omega_p tau = {omega_p_tau}, 10 periods",
        grid.nz, grid.nv
    );
    println!("initial Gauss-law residual: {:.2e}", state.gauss_residual());

    let run = evolve_with_diagnostics(state, 10.0, 0.4, None).expect("run completes");
    let rate = fit_envelope_rate(&run.times, &run.field_energy).expect("enough peaks");

    let expected = params.omega_p().powi(2) * params.tau;
    let exact = {
        // exact decay of the field-energy envelope: 2 |Im omega| of the
        // damped cubic root
        let roots = cold_dispersion_roots(params.omega_p(), params.tau);
        let physical = roots.iter().find(|r| r.re > 0.0).unwrap();
        2.0 * physical.im.abs()
    };
    println!("fitted field-energy decay rate: {rate:.6e}");
    println!(
        "first-order prediction  wp^2 tau: {expected:.6e}  ({:+.2}%)",
        (rate / expected - 1.0) * 100.0
    );
    println!(
        "exact cold-cubic damping 2|Im w|: {exact:.6e}  ({:+.2}%)",
        (rate / exact - 1.0) * 100.0
    );

    let e0 = run.total_energy[0];
    let e1 = *run.total_energy.last().unwrap();
    println!(
        "total (field + kinetic) energy change: {:+.3e} relative — the radiated loss",
        (e1 - e0) / e0
    );
    println!(
        "final Gauss-law residual: {:.2e}",
        run.state.gauss_residual()
    );
}
