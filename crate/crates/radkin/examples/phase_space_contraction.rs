//! Phase-space contraction of the Lorentz-Dirac flow.
//!
//! Without radiation reaction the Lorentz force preserves phase-space
//! volume. The Lorentz-Dirac flow on the constrained (velocity,
//! acceleration) phase space contracts the induced Leray measure at the
//! universal rate 3/tau, independent of the applied field — the
//! phase-space signature of radiative loss. This checks the identity by
//! finite differences at random phase points in three different fields.
//!
//! ```text
//! cargo run --release --example phase_space_contraction
//! ```

use radkin::fields::FieldModel;
use radkin::kinematics::{FourVector, ReducedState};
use radkin::pushers::{phase_space_divergence, ParticleParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let tau = 0.25;
    let params = ParticleParams::new(tau, -1.0);
    let target = 3.0 / tau;
    let fields: [(&str, FieldModel); 3] = [
        ("free", FieldModel::Free),
        (
            "uniform B",
            FieldModel::UniformMagnetic { b: [0.3, 0.0, 1.0] },
        ),
        (
            "plane wave",
            FieldModel::plane_wave(0.5, [1.0, 0.0, 0.5], [0.0, 1.0, 0.0]),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    println!("Leray-weighted divergence of the flow vs 3/tau = {target}");
    for (name, field) in &fields {
        let mut worst: f64 = 0.0;
        let mut mean = 0.0;
        let n = 200;
        for _ in 0..n {
            let state = ReducedState::new(
                FourVector::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ),
                [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ],
                [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ],
            );
            let div = phase_space_divergence(&state, field, &params, 1e-3).unwrap();
            mean += div / n as f64;
            worst = worst.max((div - target).abs() / target);
        }
        println!(
            "  {name:11}: mean divergence {mean:.6} (relative spread from stencil error {worst:.1e})"
        );
    }
}
