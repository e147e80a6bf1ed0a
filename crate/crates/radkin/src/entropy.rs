//! Entropy diagnostics for the radiating electron gas.
//!
//! Without radiation reaction the flow preserves phase-space volume and
//! the entropy `S = -int g ln g` is constant. With radiation reaction the
//! velocity divergence of the acceleration field acts as an entropy
//! source:
//!
//! ```text
//! dS/dt = int g d/dv^mu ( A^mu / sqrt(1+v^2) ) d3v d3x .
//! ```
//!
//! The zeroth-order (Lorentz) acceleration is divergence-free in this
//! weighted sense, so the leading contribution enters at first order in
//! tau and has a closed form built from the current and stress moments:
//! a self-interaction term (entropy up), an external-current term, and a
//! field-coupling term `T_ab S^ab` that can dominate and cool the
//! electrons.
//!
//! Entropy values are quoted with respect to a unit reference density in
//! code units; only rates are physically meaningful, and particle-number
//! conservation makes them independent of that reference.

use crate::fields::{stress_energy, FieldTensor};
use crate::submanifold::AccelField;
use crate::vlasov::{current_moment, stress_moment, DistG};

/// Values below this count as exactly zero in `-g ln g`.
pub const G_FLOOR: f64 = 1e-300;

/// First-order entropy rate and its decomposition.
#[derive(Clone, Copy, Debug, Default)]
pub struct EntropyReport {
    pub s_total: f64,
    /// Quadrature of the exact divergence form with the supplied
    /// acceleration field.
    pub ds_dt_exact: f64,
    /// Closed-form first-order rate (sum of the three terms below).
    pub ds_dt_first_order: f64,
    /// `-(1/m) int J_a J^a`.
    pub self_term: f64,
    /// `-(1/m) int J_a J_ext^a`.
    pub ext_term: f64,
    /// `-(4 q^2/m^3) int T_ab S^ab`.
    pub field_term: f64,
}

/// Total entropy `int (-g ln g) dz dv` (unit reference density; nodes at
/// or below the floor contribute zero).
pub fn entropy_total(g: &DistG) -> f64 {
    let cell = g.grid.dz() * g.grid.dv();
    let mut s = 0.0;
    for &val in &g.values {
        if val > G_FLOOR {
            s -= val * val.ln();
        }
    }
    s * cell
}

/// Exact entropy rate by quadrature of the velocity divergence of
/// `A/sqrt(1+v^2)`, with the same stencils as the kinetic solver.
///
/// The stored field carries the longitudinal component only; for orders
/// beyond zero the transverse components contribute
/// `-2 tau (A_(0).A_(0)) / sqrt(1+v^2)` per unit phase-space volume on
/// the cold-transverse slice, which is included analytically. Residual
/// transverse structure enters at O(tau^2).
pub fn entropy_rate_exact(g: &DistG, accel: &AccelField) -> f64 {
    let grid = &g.grid;
    assert_eq!(
        *grid, accel.grid,
        "distribution and acceleration grids must match"
    );
    let cell = grid.dz() * grid.dv();
    // longitudinal: stencil divergence of A_total / gamma
    let mut a_over_gamma = vec![0.0; grid.cells()];
    for i in 0..grid.nz {
        for j in 0..grid.nv {
            let k = grid.idx(i, j);
            let v = grid.v_center(j);
            a_over_gamma[k] = accel.total(k) / (1.0 + v * v).sqrt();
        }
    }
    let div_l = grid.ddv(&a_over_gamma);
    let mut rate = 0.0;
    for k in 0..grid.cells() {
        rate += g.values[k] * div_l[k];
    }
    // transverse closure term, first order only
    if accel.truncation_order() >= 1 && accel.tau != 0.0 {
        let a0 = &accel.orders[0];
        for i in 0..grid.nz {
            for j in 0..grid.nv {
                let k = grid.idx(i, j);
                let v = grid.v_center(j);
                let g2 = 1.0 + v * v;
                let contraction = a0[k] * a0[k] / g2; // A0.A0 on the slice
                rate -= g.values[k] * 2.0 * accel.tau * contraction / g2.sqrt();
            }
        }
    }
    rate * cell
}

/// Closed-form first-order entropy rate from fields and moments evaluated
/// in the `tau -> 0` limit. `e_centers` is the longitudinal field at the
/// z cells; the external current is the static neutralizing background
/// `J_ext = (-q n0, 0)`.
pub fn entropy_rate_first_order(
    g: &DistG,
    e_centers: &[f64],
    q: f64,
    mass: f64,
    n0: f64,
) -> EntropyReport {
    let grid = &g.grid;
    let dz = grid.dz();
    let (j0, j3) = current_moment(g, q);
    let s = stress_moment(g, mass);
    let mut self_term = 0.0;
    let mut ext_term = 0.0;
    let mut field_term = 0.0;
    for i in 0..grid.nz {
        // J_a J^a = -(J^0)^2 + (J^z)^2
        self_term -= (-j0[i] * j0[i] + j3[i] * j3[i]) * dz;
        // J_a J_ext^a = -J^0 J_ext^0 = q n0 J^0
        ext_term -= q * n0 * j0[i] * dz;
        // T_ab S^ab through the canonical stress-energy helper; the only
        // nonzero particle components here are S^00, S^03, S^33
        let t = stress_energy(&FieldTensor::from_e_b([0.0, 0.0, e_centers[i]], [0.0; 3]));
        let ts = t.t[0][0] * s.s00[i] + 2.0 * t.t[0][3] * s.s03[i] + t.t[3][3] * s.s33[i];
        field_term -= 4.0 * q * q / (mass * mass) * ts * dz;
    }
    self_term /= mass;
    ext_term /= mass;
    field_term /= mass;
    EntropyReport {
        s_total: entropy_total(g),
        ds_dt_exact: 0.0,
        ds_dt_first_order: self_term + ext_term + field_term,
        self_term,
        ext_term,
        field_term,
    }
}

/// Full report: exact rate against the supplied acceleration field plus
/// the first-order closed form.
pub fn entropy_report(
    g: &DistG,
    accel: &AccelField,
    e_centers: &[f64],
    q: f64,
    mass: f64,
    n0: f64,
) -> EntropyReport {
    let mut r = entropy_rate_first_order(g, e_centers, q, mass, n0);
    r.ds_dt_exact = entropy_rate_exact(g, accel);
    r
}
