//! Runaway growth of the free-particle Lorentz-Dirac equation.
//!
//! With no applied field and a nonzero initial acceleration, the proper
//! acceleration grows like `exp(lambda/tau)`. This integrates a short
//! stretch of the flow and fits the growth rate.
//!
//! ```text
//! cargo run --release --example runaway
//! ```

use radkin::fields::FieldModel;
use radkin::kinematics::{FourVector, ReducedState};
use radkin::numerics::exponential_rate;
use radkin::pushers::{push_lorentz_dirac, ParticleParams, PushMethod, PusherConfig};

fn main() {
    let tau = 0.1;
    let g0 = 1.0;
    let params = ParticleParams::new(tau, -1.0);
    let cfg = PusherConfig::new(PushMethod::LorentzDirac, tau / 400.0);
    let init = ReducedState::new(FourVector::ZERO, [0.0; 3], [g0, 0.0, 0.0]);

    let traj = push_lorentz_dirac(&init, &FieldModel::Free, &params, &cfg, 5.0 * tau)
        .expect("short runaway stretch integrates cleanly");

    println!("free Lorentz-Dirac push: tau = {tau}, a(0) = {g0}");
    println!(" lambda/tau   proper accel   accel * exp(-lambda/tau)");
    for s in traj.samples.iter().step_by(traj.samples.len() / 10) {
        let a = s.state.proper_accel();
        println!(
            "   {:6.2}     {:12.5e}   {:12.8}",
            s.lambda / tau,
            a,
            a * (-s.lambda / tau).exp()
        );
    }
    let rate = exponential_rate(&traj.lambdas(), &traj.proper_accelerations());
    println!("fitted growth rate * tau = {:.6} (expected 1)", rate * tau);
    println!(
        "worst normalized constraint residual: {:.2e}",
        traj.max_constraint_residual()
    );
}
