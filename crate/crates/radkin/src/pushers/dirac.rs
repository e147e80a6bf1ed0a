//! The asymptotic integro-differential form of the radiating-particle
//! equation of motion.
//!
//! Instead of an initial acceleration, the acceleration at each instant is
//! the exponentially weighted average of the force kernel over the future:
//!
//! ```text
//! xddot(lambda) = int_0^inf K(lambda + alpha tau) e^{-alpha} d alpha,
//! K = -(q/m) F xdot - tau (xddot.xddot) xdot .
//! ```
//!
//! This selects the unique non-runaway solution at the price of mild
//! acausality: switching a field on at `lambda_0` produces pre-acceleration
//! decaying like `e^{(lambda - lambda_0)/tau}` backwards in time.
//!
//! Solved by damped Picard iteration on the acceleration history over
//! `[0, lambda_end + horizon]`: integrate the trajectory against the
//! current history, evaluate `K` along it, refresh the history through
//! Gauss-Laguerre quadrature of the future integral (32 nodes; the
//! exponential weight is exactly the Laguerre weight), and relax. Beyond
//! the history grid `K` is frozen at its final value, which contributes
//! only `O(e^{-horizon/tau})` for a ten-tau horizon.

use super::{ParticleParams, PushError, PusherConfig, Trajectory, TrajectorySample};
use crate::fields::Field;
use crate::kinematics::{
    lift_acceleration, lift_velocity, minkowski_dot, FourVector, ReducedState,
};
use crate::numerics::{cubic_interp, rk4_step};
use crate::quadrature::gauss_laguerre;

const LAGUERRE_NODES: usize = 32;

struct History {
    h: f64,
    ax: Vec<f64>,
    ay: Vec<f64>,
    az: Vec<f64>,
}

impl History {
    fn at(&self, lambda: f64) -> [f64; 3] {
        [
            cubic_interp(&self.ax, 0.0, self.h, lambda),
            cubic_interp(&self.ay, 0.0, self.h, lambda),
            cubic_interp(&self.az, 0.0, self.h, lambda),
        ]
    }
}

/// Solve the asymptotic form by Picard iteration from `(x, v)` initial
/// data. Requires `cfg.horizon >= 5 tau`; errors if the iteration fails to
/// reach `cfg.tolerance` in sup norm within `cfg.max_picard_iters`.
pub fn push_dirac_asymptotic(
    x0: &FourVector,
    v0: [f64; 3],
    field: &dyn Field,
    params: &ParticleParams,
    cfg: &PusherConfig,
    lambda_end: f64,
) -> Result<Trajectory, PushError> {
    if cfg.horizon < 5.0 * params.tau {
        return Err(PushError::InvalidConfig(format!(
            "dirac-asymptotic horizon {} below 5 tau = {}",
            cfg.horizon,
            5.0 * params.tau
        )));
    }
    if cfg.step.is_nan() || cfg.step <= 0.0 {
        return Err(PushError::InvalidConfig("step must be > 0".into()));
    }
    let h = cfg.step;
    let total = lambda_end + cfg.horizon;
    let n = (total / h).ceil() as usize + 1;
    let qm = params.q_over_m;
    let tau = params.tau;
    let (alpha_nodes, alpha_weights) = gauss_laguerre(LAGUERRE_NODES);

    let mut hist = History {
        h,
        ax: vec![0.0; n],
        ay: vec![0.0; n],
        az: vec![0.0; n],
    };
    let mut xs: Vec<FourVector> = vec![*x0; n];
    let mut vs: Vec<[f64; 3]> = vec![v0; n];

    let mut residual = f64::INFINITY;
    for iter in 0..cfg.max_picard_iters {
        // integrate (x, v) against the current acceleration history
        integrate_against(&hist, x0, v0, &mut xs, &mut vs)?;

        // force kernel K along the trajectory (four components per node)
        let mut kx = vec![0.0; n];
        let mut ky = vec![0.0; n];
        let mut kz = vec![0.0; n];
        for i in 0..n {
            let xdot = lift_velocity(vs[i]);
            let xddot = lift_acceleration(vs[i], [hist.ax[i], hist.ay[i], hist.az[i]]);
            let ft = field.at(&xs[i])?;
            let lorentz = ft.lorentz_accel(qm, &xdot);
            let acc_sq = minkowski_dot(&xddot, &xddot);
            kx[i] = lorentz[1] - tau * acc_sq * xdot[1];
            ky[i] = lorentz[2] - tau * acc_sq * xdot[2];
            kz[i] = lorentz[3] - tau * acc_sq * xdot[3];
        }

        // refresh the history through the future integral
        let mut diff: f64 = 0.0;
        let theta = cfg.picard_damping;
        let mut new = vec![[0.0; 3]; n];
        for i in 0..n {
            let lambda = i as f64 * h;
            let mut acc = [0.0; 3];
            for (qn, qw) in alpha_nodes.iter().zip(&alpha_weights) {
                let l = lambda + qn * tau;
                acc[0] += qw * cubic_interp(&kx, 0.0, h, l);
                acc[1] += qw * cubic_interp(&ky, 0.0, h, l);
                acc[2] += qw * cubic_interp(&kz, 0.0, h, l);
            }
            new[i] = acc;
        }
        for i in 0..n {
            diff = diff
                .max((new[i][0] - hist.ax[i]).abs())
                .max((new[i][1] - hist.ay[i]).abs())
                .max((new[i][2] - hist.az[i]).abs());
            hist.ax[i] = (1.0 - theta) * hist.ax[i] + theta * new[i][0];
            hist.ay[i] = (1.0 - theta) * hist.ay[i] + theta * new[i][1];
            hist.az[i] = (1.0 - theta) * hist.az[i] + theta * new[i][2];
        }
        residual = diff;
        if !residual.is_finite() {
            return Err(PushError::PicardNoConvergence {
                residual,
                iters: iter + 1,
            });
        }
        if residual < cfg.tolerance {
            integrate_against(&hist, x0, v0, &mut xs, &mut vs)?;
            let mut samples = Vec::new();
            for i in 0..n {
                let lambda = i as f64 * h;
                if lambda > lambda_end + 0.5 * h {
                    break;
                }
                samples.push(TrajectorySample {
                    lambda,
                    state: ReducedState::new(xs[i], vs[i], [hist.ax[i], hist.ay[i], hist.az[i]]),
                });
            }
            return Ok(Trajectory {
                samples,
                tau,
                q_over_m: qm,
            });
        }
    }
    Err(PushError::PicardNoConvergence {
        residual,
        iters: cfg.max_picard_iters,
    })
}

fn integrate_against(
    hist: &History,
    x0: &FourVector,
    v0: [f64; 3],
    xs: &mut [FourVector],
    vs: &mut [[f64; 3]],
) -> Result<(), PushError> {
    let n = xs.len();
    let h = hist.h;
    xs[0] = *x0;
    vs[0] = v0;
    let mut y = [x0[0], x0[1], x0[2], x0[3], v0[0], v0[1], v0[2]];
    let mut rhs = |l: f64, s: &[f64; 7]| -> Result<[f64; 7], PushError> {
        let v = [s[4], s[5], s[6]];
        let a = hist.at(l);
        let xdot = lift_velocity(v);
        Ok([xdot[0], xdot[1], xdot[2], xdot[3], a[0], a[1], a[2]])
    };
    for i in 1..n {
        let lambda = (i - 1) as f64 * h;
        y = rk4_step(lambda, &y, h, &mut rhs)?;
        if !y.iter().all(|c| c.is_finite()) {
            return Err(PushError::Unstable {
                last_lambda: lambda,
            });
        }
        xs[i] = FourVector([y[0], y[1], y[2], y[3]]);
        vs[i] = [y[4], y[5], y[6]];
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FieldError, FieldModel, FieldTensor};
    use crate::numerics::linear_fit;
    use crate::pushers::{push_landau_lifshitz, PushMethod};

    const QM: f64 = -1.0;

    #[test]
    fn horizon_shorter_than_five_tau_is_rejected() {
        let params = ParticleParams::new(0.1, QM);
        let mut cfg = PusherConfig::dirac(0.01, params.tau);
        cfg.horizon = 0.4; // below 5 tau = 0.5
        let err = push_dirac_asymptotic(
            &FourVector::ZERO,
            [0.0; 3],
            &FieldModel::Free,
            &params,
            &cfg,
            1.0,
        );
        assert!(matches!(
            err,
            Err(crate::pushers::PushError::InvalidConfig(_))
        ));
    }

    #[test]
    fn exhausted_iterations_report_final_residual() {
        let field = FieldModel::UniformElectric { e: [0.0, 0.0, 0.4] };
        let params = ParticleParams::new(0.05, QM);
        let mut cfg = PusherConfig::dirac(0.01, params.tau);
        cfg.max_picard_iters = 2;
        cfg.tolerance = 1e-14;
        let err = push_dirac_asymptotic(
            &FourVector::ZERO,
            [0.3, 0.0, 0.0],
            &field,
            &params,
            &cfg,
            1.0,
        );
        match err {
            Err(crate::pushers::PushError::PicardNoConvergence { residual, iters }) => {
                assert_eq!(iters, 2);
                assert!(residual > 1e-14);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn free_field_fixed_point_is_zero_acceleration() {
        let params = ParticleParams::new(0.05, QM);
        let cfg = PusherConfig::dirac(0.01, params.tau);
        let t = push_dirac_asymptotic(
            &FourVector::ZERO,
            [0.3, 0.0, -0.1],
            &FieldModel::Free,
            &params,
            &cfg,
            1.0,
        )
        .unwrap();
        for s in &t.samples {
            assert!(s.state.a.iter().all(|&a| a.abs() < 1e-14));
            assert_eq!(s.state.v, [0.3, 0.0, -0.1]);
        }
    }

    #[test]
    fn weak_uniform_field_agrees_with_ll_at_tau_squared() {
        // transverse initial velocity: a parallel start is exactly
        // hyperbolic and both equations then share the Lorentz solution
        let field = FieldModel::UniformElectric { e: [0.0, 0.0, 0.1] };
        let v0 = [0.3, 0.0, 0.0];
        let lambda_end = 1.0;
        let mut taus = Vec::new();
        let mut sups = Vec::new();
        for k in 0..4 {
            let tau = 1e-2 / 2f64.powi(k);
            let params = ParticleParams::new(tau, QM);
            let mut cfg = PusherConfig::dirac(2e-3, tau);
            cfg.tolerance = 1e-13;
            let td =
                push_dirac_asymptotic(&FourVector::ZERO, v0, &field, &params, &cfg, lambda_end)
                    .unwrap();
            let mut ll_cfg = PusherConfig::new(PushMethod::LandauLifshitz, 2e-3);
            ll_cfg.tolerance = 1e-13;
            let tl =
                push_landau_lifshitz(&FourVector::ZERO, v0, &field, &params, &ll_cfg, lambda_end)
                    .unwrap();
            let mut sup: f64 = 0.0;
            for (a, b) in td.samples.iter().zip(&tl.samples) {
                assert!((a.lambda - b.lambda).abs() < 1e-12);
                for i in 0..3 {
                    sup = sup.max((a.state.v[i] - b.state.v[i]).abs());
                }
            }
            taus.push(tau);
            sups.push(sup);
        }
        let lx: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
        let ly: Vec<f64> = sups.iter().map(|s| s.ln()).collect();
        let (slope, _) = linear_fit(&lx, &ly);
        assert!(
            (slope - 2.0).abs() < 0.2,
            "tau^2 agreement, exponent {slope}"
        );
    }

    /// Uniform E field switched on smoothly around `t0` (tanh profile in
    /// coordinate time).
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

    #[test]
    fn switched_field_preaccelerates_at_rate_one_over_tau() {
        let tau = 0.05;
        let t0 = 12.0 * tau;
        let field = SwitchedField {
            e0: 0.2,
            t0,
            width: 0.4 * tau,
        };
        let params = ParticleParams::new(tau, QM);
        let mut cfg = PusherConfig::dirac(tau / 40.0, tau);
        cfg.tolerance = 1e-14;
        let t = push_dirac_asymptotic(&FourVector::ZERO, [0.0; 3], &field, &params, &cfg, 2.0 * t0)
            .unwrap();
        // fit ln |a_z| vs lambda on the causal shadow, several tau before t0
        let mut ls = Vec::new();
        let mut lna = Vec::new();
        for s in &t.samples {
            if s.lambda > t0 - 6.0 * tau && s.lambda < t0 - 2.5 * tau {
                ls.push(s.lambda);
                lna.push(s.state.a[2].abs().ln());
            }
        }
        assert!(ls.len() > 10);
        let (rate, _) = linear_fit(&ls, &lna);
        assert!(
            (rate * tau - 1.0).abs() < 0.05,
            "pre-acceleration rate * tau = {}",
            rate * tau
        );
    }
}
