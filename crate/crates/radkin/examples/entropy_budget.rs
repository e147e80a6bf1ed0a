//! Entropy budget of a radiating plasma wave.
//!
//! Radiation reaction makes the velocity divergence of the acceleration
//! field a source of electron entropy. At first order in tau the rate
//! splits into a self-interaction term (heating), an external-current
//! term, and a field-coupling term (radiation cooling). This evolves a
//! small self-consistent wave and compares the exact quadrature rate with
//! the closed-form decomposition.
//!
//! ```text
//! cargo run --release --example entropy_budget
//! ```

use radkin::entropy::{entropy_rate_exact, entropy_rate_first_order, entropy_total};
use radkin::harness::evolve_with_diagnostics;
use radkin::submanifold::PhaseGrid;
use radkin::vlasov::{quiet_start, SlopeMode, SolverParams};

fn main() {
    let grid = PhaseGrid::new(64, 2.0 * std::f64::consts::PI, 64, 0.3);
    let tau = 2e-3;
    let params = SolverParams {
        tau,
        closure_order: 1,
        slope: SlopeMode::Central,
        ..Default::default()
    };
    let state = quiet_start(grid, params, 1e-3, 1, 3.0 * grid.dv()).unwrap();
    println!("evolving a self-consistent wave for 2 plasma periods (tau = {tau})...");
    let run = evolve_with_diagnostics(state, 2.0, 0.4, None).unwrap();
    let state = run.state;

    let accel = state.accel_field();
    let exact = entropy_rate_exact(&state.g, &accel);
    let report = entropy_rate_first_order(
        &state.g,
        &state.e_centers(),
        state.params.q,
        state.params.mass,
        state.params.n0,
    );
    println!("total entropy S = {:.8}", entropy_total(&state.g));
    println!("exact rate (divergence quadrature):   {exact:+.6e}");
    println!(
        "tau x first-order closed form:        {:+.6e}",
        tau * report.ds_dt_first_order
    );
    println!("  self term   {:+.6e}", tau * report.self_term);
    println!("  ext term    {:+.6e}", tau * report.ext_term);
    println!("  field term  {:+.6e}", tau * report.field_term);
    println!(
        "same-snapshot agreement: {:.2e} relative",
        (exact - tau * report.ds_dt_first_order).abs() / exact.abs().max(1e-300)
    );

    // sign demonstrations on constructed states
    let rest = quiet_start(grid, params, 0.0, 1, 3.0 * grid.dv()).unwrap();
    let heating =
        entropy_rate_first_order(&rest.g, &vec![0.0; grid.nz], params.q, params.mass, 0.0);
    let cooling = entropy_rate_first_order(
        &rest.g,
        &vec![2.0; grid.nz],
        params.q,
        params.mass,
        params.n0,
    );
    println!();
    println!("constructed sign cases:");
    println!(
        "  charged cloud, no background, no field: dS/dt = {:+.3e} (self-interaction heats)",
        tau * heating.ds_dt_first_order
    );
    println!(
        "  neutral plasma in a strong field:       dS/dt = {:+.3e} (radiation cooling)",
        tau * cooling.ds_dt_first_order
    );
}
