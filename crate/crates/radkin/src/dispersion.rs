//! Longitudinal plasma-wave dispersion with radiation reaction.
//!
//! Linearizing the kinetic system about a homogeneous field-free
//! background `g = ghat(v)` gives, for perturbations `exp(i(kz - wt))`,
//!
//! ```text
//! D(w, k) = 1 - (q^2/m) int (1 + v1^2 + v2^2) ghat
//!                        / [ Delta (w gamma - k v3)^2 ] d3v / gamma ,
//! Delta = 1 + i tau (w gamma - k v3),  gamma = sqrt(1 + v^2).
//! ```
//!
//! `Delta` is the radiation-reaction modification. For the cold
//! background the relation collapses to the cubic
//! `i tau w^3 + w^2 - wp^2 = 0`: besides the two damped oscillating roots
//! (damping rate `wp^2 tau / 2`, frequency downshift `(5/8)(wp tau)^2`),
//! a purely growing root near `i/tau` appears. The latter disappears as
//! `tau -> 0` and is classified as a runaway (nonphysical) mode by
//! continuation in tau.
//!
//! The resonant denominator is evaluated literally; quadrature nodes that
//! approach `w gamma = k v3` closer than [`EPS_RES`] flag the evaluation
//! as near-singular instead of silently analytic-continuing.

use crate::quadrature::{gauss_legendre, gauss_legendre_on};
use num_complex::Complex64;
use thiserror::Error;

/// Resonance guard distance for the literal integral.
pub const EPS_RES: f64 = 1e-8;

/// Newton convergence target on `|D|`.
pub const ROOT_TOL: f64 = 1e-10;

const MAX_NEWTON_ITERS: usize = 100;

#[derive(Debug, Error)]
pub enum DispersionError {
    #[error("quadrature node within {eps} of the resonance at v3 = {v3}")]
    NearSingular { v3: f64, eps: f64 },
    #[error(
        "root search did not converge in {iters} iterations: last iterate {last}, |D| = {residual}"
    )]
    NoConvergence {
        last: Complex64,
        residual: f64,
        iters: usize,
    },
    #[error("root classification ambiguous: |omega| neither bounded nor scaling as 1/tau (slope {slope})")]
    Ambiguous { slope: f64 },
}

/// Root classification by continuation in tau.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Continues to a finite root of the tau = 0 relation.
    Physical,
    /// `|omega|` grows like `1/tau`; absent at tau = 0, rejected as
    /// nonphysical.
    Runaway,
    Ambiguous,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Physical => write!(f, "physical"),
            Classification::Runaway => write!(f, "runaway"),
            Classification::Ambiguous => write!(f, "ambiguous"),
        }
    }
}

/// Homogeneous background distribution.
#[derive(Clone, Debug)]
pub enum Background {
    /// Cold beam at rest with density `n0` (closed-form relation).
    Cold { n0: f64 },
    /// Isotropic Maxwellian with thermal spread `vth`;
    /// evaluated in spherical coordinates (radial x angular
    /// Gauss-Legendre, azimuth exact).
    Maxwellian { n0: f64, vth: f64 },
    /// Tabulated 1D1V reduction `ghat(v3)` on a uniform grid over
    /// `[-vmax, vmax]` (cold transverse profile), integrated with the
    /// kinetic solver's midpoint rule.
    GridVz { values: Vec<f64>, vmax: f64 },
}

impl Background {
    pub fn n0(&self) -> f64 {
        match self {
            Background::Cold { n0 } | Background::Maxwellian { n0, .. } => *n0,
            Background::GridVz { values, vmax } => {
                let dv = 2.0 * vmax / values.len() as f64;
                values.iter().sum::<f64>() * dv
            }
        }
    }
}

/// Complex residual of the cold cubic `i tau w^3 + w^2 - wp^2`.
pub fn cold_cubic_residual(omega: Complex64, omega_p: f64, tau: f64) -> Complex64 {
    Complex64::new(0.0, tau) * omega * omega * omega + omega * omega - omega_p * omega_p
}

/// All roots of the cold dispersion relation: the pair `±wp` at `tau = 0`,
/// otherwise the three cubic roots (closed form, Newton-polished to
/// machine precision), sorted by imaginary then real part.
pub fn cold_dispersion_roots(omega_p: f64, tau: f64) -> Vec<Complex64> {
    assert!(omega_p > 0.0 && tau >= 0.0);
    if tau == 0.0 {
        return vec![Complex64::new(-omega_p, 0.0), Complex64::new(omega_p, 0.0)];
    }
    let a = Complex64::new(0.0, tau);
    let b = Complex64::new(1.0, 0.0);
    let d = Complex64::new(-omega_p * omega_p, 0.0);
    // depressed cubic t^3 + p t + q, w = t - b/(3a)
    let shift = b / (3.0 * a);
    let p = -b * b / (3.0 * a * a);
    let q = 2.0 * b * b * b / (27.0 * a * a * a) + d / a;
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let sq = disc.sqrt();
    let mut u = (-q / 2.0 + sq).cbrt();
    if u.norm() < 1e-300 {
        u = (-q / 2.0 - sq).cbrt();
    }
    let zeta = Complex64::new(-0.5, 0.5 * 3f64.sqrt());
    let mut roots = Vec::with_capacity(3);
    for k in 0..3 {
        let uk = u * zeta.powu(k);
        let t = if uk.norm() > 1e-300 {
            uk - p / (3.0 * uk)
        } else {
            uk
        };
        let mut w = t - shift;
        // Newton polish on the original cubic
        for _ in 0..50 {
            let f = cold_cubic_residual(w, omega_p, tau);
            let df = Complex64::new(0.0, 3.0 * tau) * w * w + 2.0 * w;
            let dw = f / df;
            w -= dw;
            if dw.norm() <= 1e-16 * w.norm() {
                break;
            }
        }
        roots.push(w);
    }
    roots.sort_by(|x, y| {
        (x.im, x.re)
            .partial_cmp(&(y.im, y.re))
            .expect("finite roots")
    });
    roots
}

/// Asymptotic small-`wp tau` forms of the three cold roots:
/// the physical pair and the runaway root.
pub fn cold_asymptotic_roots(omega_p: f64, tau: f64) -> (Complex64, Complex64, Complex64) {
    let eps = omega_p * tau;
    let re = omega_p * (1.0 - 0.625 * eps * eps);
    let im = -0.5 * omega_p * omega_p * tau;
    (
        Complex64::new(re, im),
        Complex64::new(-re, im),
        Complex64::new(0.0, 1.0 / tau),
    )
}

fn delta_factor(tau: f64, resonant: Complex64) -> Complex64 {
    1.0 + Complex64::new(0.0, tau) * resonant
}

/// The dispersion function `D(omega, k)` for a given background.
pub fn warm_dispersion_function(
    omega: Complex64,
    k: f64,
    bg: &Background,
    tau: f64,
    q_over_m: f64,
    mass: f64,
) -> Result<Complex64, DispersionError> {
    let q2_over_m = q_over_m * q_over_m * mass;
    match bg {
        Background::Cold { n0 } => {
            let wp2 = q2_over_m * n0;
            let res = omega;
            guard_resonance(res, 0.0)?;
            Ok(1.0 - wp2 / (delta_factor(tau, res) * omega * omega))
        }
        Background::Maxwellian { n0, vth } => {
            let nr = 64;
            let nmu = 64;
            let (rs, rw) = gauss_legendre_on(nr, 0.0, 8.5 * vth);
            let (mus, muw) = gauss_legendre(nmu);
            let norm = n0 / ((2.0 * std::f64::consts::PI).powf(1.5) * vth.powi(3));
            let mut integral = Complex64::new(0.0, 0.0);
            for (&r, &wr) in rs.iter().zip(&rw) {
                let gamma = (1.0 + r * r).sqrt();
                let gr = norm * (-0.5 * (r / vth) * (r / vth)).exp();
                let mut mu_sum = Complex64::new(0.0, 0.0);
                for (&mu, &wmu) in mus.iter().zip(&muw) {
                    let v3 = r * mu;
                    let res = omega * gamma - k * v3;
                    guard_resonance(res, v3)?;
                    let vperp2 = r * r * (1.0 - mu * mu);
                    mu_sum += wmu * (1.0 + vperp2) / (delta_factor(tau, res) * res * res);
                }
                integral += wr * 2.0 * std::f64::consts::PI * r * r * gr / gamma * mu_sum;
            }
            Ok(1.0 - q2_over_m * integral)
        }
        Background::GridVz { values, vmax } => {
            let n = values.len();
            let dv = 2.0 * vmax / n as f64;
            let mut integral = Complex64::new(0.0, 0.0);
            for (j, &gj) in values.iter().enumerate() {
                if gj == 0.0 {
                    continue;
                }
                let v = -vmax + (j as f64 + 0.5) * dv;
                let gamma = (1.0 + v * v).sqrt();
                let res = omega * gamma - k * v;
                guard_resonance(res, v)?;
                integral += gj / (delta_factor(tau, res) * res * res * gamma) * dv;
            }
            Ok(1.0 - q2_over_m * integral)
        }
    }
}

/// Literal tensor-product box rule for a general background closure, on
/// `[-span, span]^3` with `n` Gauss-Legendre nodes per axis. Cross-checks
/// the spherical fast path.
#[allow(clippy::too_many_arguments)]
pub fn warm_dispersion_function_box(
    omega: Complex64,
    k: f64,
    ghat: &dyn Fn([f64; 3]) -> f64,
    span: f64,
    n: usize,
    tau: f64,
    q_over_m: f64,
    mass: f64,
) -> Result<Complex64, DispersionError> {
    let (xs, ws) = gauss_legendre_on(n, -span, span);
    let q2_over_m = q_over_m * q_over_m * mass;
    let mut integral = Complex64::new(0.0, 0.0);
    for (&v1, &w1) in xs.iter().zip(&ws) {
        for (&v2, &w2) in xs.iter().zip(&ws) {
            for (&v3, &w3) in xs.iter().zip(&ws) {
                let g = ghat([v1, v2, v3]);
                if g == 0.0 {
                    continue;
                }
                let gamma = (1.0 + v1 * v1 + v2 * v2 + v3 * v3).sqrt();
                let res = omega * gamma - k * v3;
                guard_resonance(res, v3)?;
                integral += w1 * w2 * w3 * (1.0 + v1 * v1 + v2 * v2) * g
                    / (delta_factor(tau, res) * res * res * gamma);
            }
        }
    }
    Ok(1.0 - q2_over_m * integral)
}

fn guard_resonance(res: Complex64, v3: f64) -> Result<(), DispersionError> {
    if res.norm() < EPS_RES {
        Err(DispersionError::NearSingular { v3, eps: EPS_RES })
    } else {
        Ok(())
    }
}

/// A located root with its continuation record.
#[derive(Clone, Debug)]
pub struct DispersionRoot {
    pub omega: Complex64,
    pub k: f64,
    pub classification: Classification,
    /// `(tau, omega)` pairs along the halving path used to classify.
    pub continuation: Vec<(f64, Complex64)>,
    /// `|D(omega, k)|` at the returned root.
    pub residual: f64,
}

/// Damped complex Newton iteration from one seed; converged when
/// `|D| < ROOT_TOL`.
///
/// The iteration runs on the Moebius transform `F = D/(1 - D)`, which has
/// the same zeros as `D` but removes the pole that sits within
/// `(wp tau)^2` of the runaway root (for the cold closed form, `F` is a
/// polynomial in omega). Plain finite-difference Newton on `D` stalls
/// against that pole.
fn newton_root(
    seed: Complex64,
    k: f64,
    bg: &Background,
    tau: f64,
    q_over_m: f64,
    mass: f64,
) -> Result<Complex64, DispersionError> {
    let d = |w: Complex64| warm_dispersion_function(w, k, bg, tau, q_over_m, mass);
    let transform = |dv: Complex64| dv / (1.0 - dv);
    let mut w = seed;
    let mut dw = d(w)?;
    if !dw.is_finite() {
        return Err(DispersionError::NoConvergence {
            last: w,
            residual: f64::INFINITY,
            iters: 0,
        });
    }
    let mut stagnant = false;
    for _ in 0..MAX_NEWTON_ITERS {
        if dw.norm() < ROOT_TOL {
            return Ok(w);
        }
        let fw = transform(dw);
        let h = 1e-8 * w.norm().max(1e-12);
        let fp = transform(d(w + h)?);
        let fm = transform(d(w - h)?);
        let deriv = (fp - fm) / (2.0 * h);
        if !deriv.is_finite() || deriv.norm() == 0.0 || !fw.is_finite() {
            break;
        }
        let mut step = fw / deriv;
        // halve the step while it fails to decrease |D|
        let mut accepted = false;
        for _ in 0..20 {
            let cand = w - step;
            let dc = d(cand)?;
            if dc.is_finite() && dc.norm() < dw.norm() {
                w = cand;
                dw = dc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        if step.norm() < 1e-13 * w.norm().max(1e-300) {
            // the iterate has stopped moving at floating-point scale;
            // |D| is at its evaluation-noise floor (near-pole roots
            // cancel catastrophically in Delta = 1 + i tau omega)
            stagnant = true;
            break;
        }
    }
    if dw.norm() < ROOT_TOL || (stagnant && dw.norm() < 1e-6) {
        Ok(w)
    } else {
        Err(DispersionError::NoConvergence {
            last: w,
            residual: dw.norm(),
            iters: MAX_NEWTON_ITERS,
        })
    }
}

/// Default seeds for the cold-like root structure: the damped pair and the
/// runaway candidate near `i/tau`. The runaway seed carries the known
/// `(omega_p tau)^2` offset because the literal `i/tau` sits exactly on
/// the pole of the cold closed form.
pub fn default_seeds(omega_p: f64, tau: f64) -> Vec<Complex64> {
    if tau == 0.0 {
        vec![Complex64::new(omega_p, 0.0), Complex64::new(-omega_p, 0.0)]
    } else {
        let eps2 = (omega_p * tau).powi(2);
        vec![
            Complex64::new(omega_p, -0.5 * omega_p * omega_p * tau),
            Complex64::new(-omega_p, -0.5 * omega_p * omega_p * tau),
            Complex64::new(0.0, (1.0 + eps2) / tau),
        ]
    }
}

/// Classify a converged root by continuing it through 12 halvings of tau.
pub fn classify_root(
    omega: Complex64,
    k: f64,
    bg: &Background,
    tau: f64,
    q_over_m: f64,
    mass: f64,
) -> (Classification, Vec<(f64, Complex64)>) {
    let mut path = vec![(tau, omega)];
    if tau == 0.0 {
        return (Classification::Physical, path);
    }
    let wp2 = q_over_m * q_over_m * mass * bg.n0();
    let mut w = omega;
    let mut t = tau;
    for _ in 0..12 {
        let t_next = 0.5 * t;
        // physical branches continue from the previous root. Runaway-like
        // branches scale as 1/tau and live within (wp tau)^2 of a pole of
        // the cold form, so also offer a linear predictor in omega*tau and
        // a rescale corrected by the known (wp tau)^2 offset.
        let mut candidates = vec![w];
        if path.len() >= 2 {
            let (tj, wj) = path[path.len() - 1];
            let (ti, wi) = path[path.len() - 2];
            let yj = wj * tj;
            let yi = wi * ti;
            let y_pred = yj + (yj - yi) * ((t_next - tj) / (tj - ti));
            candidates.push(y_pred / t_next);
        }
        let corr = (1.0 + wp2 * t_next * t_next) / (1.0 + wp2 * t * t);
        candidates.push(w * (t / t_next) * corr);
        candidates.push(w * (t / t_next));
        let mut advanced = false;
        for cand in candidates {
            if let Ok(next) = newton_root(cand, k, bg, t_next, q_over_m, mass) {
                w = next;
                t = t_next;
                path.push((t, w));
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    if path.len() < 4 {
        return (Classification::Ambiguous, path);
    }
    let bounded = path.iter().all(|(_, om)| om.norm() <= 10.0 * omega.norm());
    let n = path.len();
    let settled = {
        let (_, w1) = path[n - 1];
        let (_, w2) = path[n - 2];
        (w1 - w2).norm() <= 1e-3 * w1.norm().max(1e-12)
    };
    if bounded && settled {
        return (Classification::Physical, path);
    }
    // runaway: |omega| ~ 1/tau, slope of ln|omega| vs ln tau near -1
    let lx: Vec<f64> = path.iter().map(|(t, _)| t.ln()).collect();
    let ly: Vec<f64> = path.iter().map(|(_, om)| om.norm().ln()).collect();
    let (slope, _) = crate::numerics::linear_fit(&lx, &ly);
    if (slope + 1.0).abs() < 0.2 {
        (Classification::Runaway, path)
    } else {
        (Classification::Ambiguous, path)
    }
}

/// Newton-converge every seed, classify each root by tau-continuation, and
/// report per-seed outcomes.
pub fn find_roots(
    k: f64,
    bg: &Background,
    tau: f64,
    q_over_m: f64,
    mass: f64,
    seeds: &[Complex64],
) -> Vec<Result<DispersionRoot, DispersionError>> {
    seeds
        .iter()
        .map(|&seed| {
            let omega = newton_root(seed, k, bg, tau, q_over_m, mass)?;
            let residual = warm_dispersion_function(omega, k, bg, tau, q_over_m, mass)?.norm();
            let (classification, continuation) = classify_root(omega, k, bg, tau, q_over_m, mass);
            Ok(DispersionRoot {
                omega,
                k,
                classification,
                continuation,
                residual,
            })
        })
        .collect()
}
