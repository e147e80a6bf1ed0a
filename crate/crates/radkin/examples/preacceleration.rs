//! Pre-acceleration under the asymptotic (future-integral) equation of
//! motion.
//!
//! A uniform electric field is switched on smoothly around coordinate
//! time `t0`. The asymptotic solution starts accelerating *before* the
//! field arrives, with the acausal tail decaying like
//! `exp((lambda - lambda0)/tau)` into the past — unobservable for any
//! macroscopic switching time, but clearly visible here.
//!
//! ```text
//! cargo run --release --example preacceleration
//! ```

use radkin::fields::{Field, FieldError, FieldTensor};
use radkin::kinematics::FourVector;
use radkin::numerics::linear_fit;
use radkin::pushers::{dirac::push_dirac_asymptotic, ParticleParams, PusherConfig};

/// Uniform E_z gated by a tanh profile in coordinate time.
struct SwitchedField {
    e0: f64,
    t0: f64,
    width: f64,
}

impl Field for SwitchedField {
    fn at(&self, x: &FourVector) -> Result<FieldTensor, FieldError> {
        let s = ((x[0] - self.t0) / self.width).tanh();
        let gate = 0.5 * (1.0 + s);
        let mut ft = FieldTensor::from_e_b([0.0, 0.0, self.e0 * gate], [0.0; 3]);
        let dgate = 0.5 * (1.0 - s * s) / self.width;
        ft.df[0][0][3] = self.e0 * dgate;
        ft.df[0][3][0] = -self.e0 * dgate;
        Ok(ft)
    }
}

fn main() {
    let tau = 0.05;
    let t0 = 12.0 * tau;
    let field = SwitchedField {
        e0: 0.2,
        t0,
        width: 0.4 * tau,
    };
    let params = ParticleParams::new(tau, -1.0);
    let mut cfg = PusherConfig::dirac(tau / 40.0, tau);
    cfg.tolerance = 1e-14;

    let traj = push_dirac_asymptotic(&FourVector::ZERO, [0.0; 3], &field, &params, &cfg, 2.0 * t0)
        .expect("weak field converges");

    println!("field switches on at t0 = {t0} (tau = {tau}); acceleration before arrival:");
    println!("  (lambda-t0)/tau    a_z          a_z * exp(-(lambda-t0)/tau)");
    let mut ls = Vec::new();
    let mut lna = Vec::new();
    for s in &traj.samples {
        let u = (s.lambda - t0) / tau;
        if (-6.0..=0.0).contains(&u) && s.lambda.rem_euclid(tau / 2.0) < cfg.step {
            println!(
                "     {:6.2}        {:11.4e}   {:11.4e}",
                u,
                s.state.a[2],
                s.state.a[2] * (-u).exp()
            );
        }
        if u > -6.0 && u < -2.5 {
            ls.push(s.lambda);
            lna.push(s.state.a[2].abs().ln());
        }
    }
    let (rate, _) = linear_fit(&ls, &lna);
    println!(
        "fitted pre-acceleration decay rate * tau = {:.4} (expected 1)",
        rate * tau
    );

    // contrast: the same smooth switching integrated as Landau-Lifshitz
    // shows no response before t0
    let lcfg = PusherConfig::new(radkin::pushers::PushMethod::LandauLifshitz, tau / 40.0);
    let ll = radkin::pushers::push_landau_lifshitz(
        &FourVector::ZERO,
        [0.0; 3],
        &field,
        &params,
        &lcfg,
        2.0 * t0,
    )
    .unwrap();
    let before: f64 = ll
        .samples
        .iter()
        .filter(|s| s.lambda < t0 - 3.0 * tau)
        .map(|s| s.state.a[2].abs())
        .fold(0.0, f64::max);
    println!("Landau-Lifshitz |a_z| before t0 - 3 tau: {before:.2e} (causal)");
}
