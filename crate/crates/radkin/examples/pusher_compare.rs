//! Agreement hierarchy of the radiating-particle pushers.
//!
//! In a weak uniform electric field with a transverse start:
//! the tau-series pusher at first order reproduces Landau-Lifshitz to
//! roundoff, and the Dirac-asymptotic solution approaches Landau-Lifshitz
//! at O(tau^2) as tau is halved.
//!
//! ```text
//! cargo run --release --example pusher_compare
//! ```

use radkin::fields::FieldModel;
use radkin::kinematics::FourVector;
use radkin::numerics::powerlaw_exponent;
use radkin::pushers::{
    dirac::push_dirac_asymptotic, push_landau_lifshitz, push_tau_series, ParticleParams,
    PushMethod, PusherConfig, Trajectory,
};

fn sup_velocity_diff(a: &Trajectory, b: &Trajectory) -> f64 {
    let n = a.samples.len().min(b.samples.len());
    let mut sup: f64 = 0.0;
    for i in 0..n {
        for c in 0..3 {
            sup = sup.max((a.samples[i].state.v[c] - b.samples[i].state.v[c]).abs());
        }
    }
    sup
}

fn main() {
    let field = FieldModel::UniformElectric { e: [0.0, 0.0, 0.1] };
    let v0 = [0.3, 0.0, 0.0];
    let lambda_end = 1.0;
    let step = 2e-3;

    println!("weak uniform E field, |E| = 0.1, transverse v0 = 0.3, lambda_end = {lambda_end}");
    println!("  tau        sup|LL - series1|   sup|asymptotic - LL|");
    let mut taus = Vec::new();
    let mut dirac_diffs = Vec::new();
    for k in 0..4 {
        let tau = 1e-2 / 2f64.powi(k);
        let params = ParticleParams::new(tau, -1.0);
        let cfg = PusherConfig::new(PushMethod::LandauLifshitz, step);
        let ll =
            push_landau_lifshitz(&FourVector::ZERO, v0, &field, &params, &cfg, lambda_end).unwrap();
        let ts =
            push_tau_series(&FourVector::ZERO, v0, &field, &params, 1, &cfg, lambda_end).unwrap();
        let mut dcfg = PusherConfig::dirac(step, tau);
        dcfg.tolerance = 1e-13;
        let da = push_dirac_asymptotic(&FourVector::ZERO, v0, &field, &params, &dcfg, lambda_end)
            .unwrap();
        let d_series = sup_velocity_diff(&ll, &ts);
        let d_dirac = sup_velocity_diff(&da, &ll);
        println!("  {tau:8.2e}   {d_series:12.3e}        {d_dirac:12.3e}");
        taus.push(tau);
        dirac_diffs.push(d_dirac);
    }
    let exponent = powerlaw_exponent(&taus, &dirac_diffs);
    println!("|asymptotic - LL| scales as tau^{exponent:.3} (expected 2)");
}
