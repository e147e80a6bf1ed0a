//! The physical acceleration field `A(x, v)` and its tau-series.
//!
//! Runaway-free single-particle dynamics lives on a submanifold of the
//! full (velocity, acceleration) phase space described by an acceleration
//! field `A(x, v)` that is regular as `tau -> 0`. Expanding in powers of
//! tau gives an algebraic recursion: the zeroth order is the Lorentz
//! acceleration, the first order reproduces the Landau-Lifshitz
//! correction, and each further order is built from derivatives of the
//! lower ones.
//!
//! Two representations are provided:
//!
//! * pointwise closed forms ([`accel_order0`], [`accel_order1`],
//!   [`accel_series_at`]) valid for any velocity and any field model —
//!   used by the tau-series pusher and for identity checks;
//! * grids over the 1D1V phase space ([`AccelField`]) storing the `z`
//!   component of each order — used by the kinetic solver, with the same
//!   difference stencils as the solver so coupled residuals cancel
//!   discretely.
//!
//! The time dependence of the field enters through the snapshot's time
//! derivatives (quasi-static closure): `dE/dt` is supplied exactly by the
//! Ampere law, `d2E/dt2` optionally from the zeroth-order moment
//! evolution, and time derivatives beyond the available data are zero.
//! The truncation error of this closure is of the same order as the
//! series truncation itself.

use crate::fields::{Field, FieldError, FieldTensor};
use crate::kinematics::{lift_acceleration, lift_velocity, minkowski_dot, FourVector};

/// Uniform periodic-in-z, truncated-in-v phase-space grid (cell centers).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseGrid {
    /// Number of z cells (periodic domain `[0, length)`).
    pub nz: usize,
    pub length: f64,
    /// Number of v cells on `[-vmax, vmax]`.
    pub nv: usize,
    pub vmax: f64,
}

impl PhaseGrid {
    pub fn new(nz: usize, length: f64, nv: usize, vmax: f64) -> Self {
        assert!(nz >= 8 && nv >= 8, "grid counts must be at least 8");
        assert!(length > 0.0 && vmax > 0.0, "grid extents must be positive");
        PhaseGrid {
            nz,
            length,
            nv,
            vmax,
        }
    }

    pub fn dz(&self) -> f64 {
        self.length / self.nz as f64
    }

    pub fn dv(&self) -> f64 {
        2.0 * self.vmax / self.nv as f64
    }

    pub fn z_center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dz()
    }

    pub fn v_center(&self, j: usize) -> f64 {
        -self.vmax + (j as f64 + 0.5) * self.dv()
    }

    /// v at face `j + 1/2` for `j_face in 0..=nv`.
    pub fn v_face(&self, j_face: usize) -> f64 {
        -self.vmax + j_face as f64 * self.dv()
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.nv + j
    }

    pub fn cells(&self) -> usize {
        self.nz * self.nv
    }

    /// Periodic central difference along z of a grid field.
    pub fn ddz(&self, f: &[f64]) -> Vec<f64> {
        let (nz, nv) = (self.nz, self.nv);
        let mut out = vec![0.0; f.len()];
        let inv = 1.0 / (2.0 * self.dz());
        for i in 0..nz {
            let ip = (i + 1) % nz;
            let im = (i + nz - 1) % nz;
            for j in 0..nv {
                out[self.idx(i, j)] = (f[self.idx(ip, j)] - f[self.idx(im, j)]) * inv;
            }
        }
        out
    }

    /// Central difference along v, one-sided at the domain edges.
    pub fn ddv(&self, f: &[f64]) -> Vec<f64> {
        let (nz, nv) = (self.nz, self.nv);
        let mut out = vec![0.0; f.len()];
        let dv = self.dv();
        for i in 0..nz {
            for j in 0..nv {
                let k = self.idx(i, j);
                out[k] = if j == 0 {
                    (f[self.idx(i, 1)] - f[k]) / dv
                } else if j == nv - 1 {
                    (f[k] - f[self.idx(i, nv - 2)]) / dv
                } else {
                    (f[self.idx(i, j + 1)] - f[self.idx(i, j - 1)]) / (2.0 * dv)
                };
            }
        }
        out
    }

    /// 1D periodic central difference of a z-profile.
    pub fn ddz_profile(&self, f: &[f64]) -> Vec<f64> {
        let nz = self.nz;
        let inv = 1.0 / (2.0 * self.dz());
        (0..nz)
            .map(|i| (f[(i + 1) % nz] - f[(i + nz - 1) % nz]) * inv)
            .collect()
    }
}

/// Electrostatic field snapshot on the z-grid (cell centers) with the time
/// derivatives available to the quasi-static closure.
#[derive(Clone, Debug)]
pub struct FieldSnapshot1d {
    /// `E_z` at cell centers.
    pub e: Vec<f64>,
    /// `dE_z/dt` (from the Ampere law, `-(J + J_ext)`).
    pub dedt: Vec<f64>,
    /// Optional `d2E_z/dt2` estimate for second-order closures.
    pub dedt2: Option<Vec<f64>>,
}

impl FieldSnapshot1d {
    pub fn static_field(e: Vec<f64>) -> Self {
        let n = e.len();
        FieldSnapshot1d {
            e,
            dedt: vec![0.0; n],
            dedt2: None,
        }
    }
}

/// Zeroth-order acceleration grid: `(q/m) E(z) sqrt(1+v^2)` (z component).
pub fn a0_field(grid: &PhaseGrid, snap: &FieldSnapshot1d, q_over_m: f64) -> Vec<f64> {
    assert_eq!(
        snap.e.len(),
        grid.nz,
        "field grid must align with the phase grid"
    );
    let mut out = vec![0.0; grid.cells()];
    for i in 0..grid.nz {
        for j in 0..grid.nv {
            let v = grid.v_center(j);
            out[grid.idx(i, j)] = q_over_m * snap.e[i] * (1.0 + v * v).sqrt();
        }
    }
    out
}

fn a0_dt_field(grid: &PhaseGrid, snap: &FieldSnapshot1d, q_over_m: f64) -> Vec<f64> {
    let mut out = vec![0.0; grid.cells()];
    for i in 0..grid.nz {
        for j in 0..grid.nv {
            let v = grid.v_center(j);
            out[grid.idx(i, j)] = q_over_m * snap.dedt[i] * (1.0 + v * v).sqrt();
        }
    }
    out
}

fn a1_dt_field(grid: &PhaseGrid, snap: &FieldSnapshot1d, q_over_m: f64) -> Vec<f64> {
    let mut out = vec![0.0; grid.cells()];
    let ddedt = grid.ddz_profile(&snap.dedt);
    let zero = vec![0.0; grid.nz];
    let dedt2 = snap.dedt2.as_deref().unwrap_or(&zero);
    for i in 0..grid.nz {
        for j in 0..grid.nv {
            let v = grid.v_center(j);
            let g2 = 1.0 + v * v;
            out[grid.idx(i, j)] = q_over_m * (dedt2[i] * g2 + v * g2.sqrt() * ddedt[i]);
        }
    }
    out
}

/// One step of the tau-series recursion on the grid: builds order `n+1`
/// from orders `0..=n` and their available time derivatives.
///
/// The external-field convention applies: the field series beyond order
/// zero is absorbed into the snapshot, so no explicit field term appears
/// at higher orders.
pub fn tau_recursion_step(
    grid: &PhaseGrid,
    orders: &[Vec<f64>],
    orders_dt: &[Vec<f64>],
) -> Vec<f64> {
    let n = orders.len() - 1;
    let mut out = vec![0.0; grid.cells()];

    // transport term: xdot^0 d/dt + xdot^3 d/dz of the top order
    let dz_top = grid.ddz(&orders[n]);
    for i in 0..grid.nz {
        for j in 0..grid.nv {
            let k = grid.idx(i, j);
            let v = grid.v_center(j);
            let gamma = (1.0 + v * v).sqrt();
            out[k] = gamma * orders_dt[n][k] + v * dz_top[k];
        }
    }

    // velocity transport and the contraction term, order by order
    for jorder in 0..=n {
        let dv_j = grid.ddv(&orders[jorder]);
        let comp = &orders[n - jorder];
        for i in 0..grid.nz {
            for j in 0..grid.nv {
                let k = grid.idx(i, j);
                let v = grid.v_center(j);
                // A_(i).A_(j) with lifted time components reduces to
                // A3_i A3_j / (1+v^2) on the v_perp = 0 slice
                let contraction = comp[k] * orders[jorder][k] / (1.0 + v * v);
                out[k] += comp[k] * dv_j[k] - v * contraction;
            }
        }
    }
    out
}

/// The acceleration field as a tau-series of grids (z components).
///
/// The time component is never stored; it is always the lift
/// `v . A / sqrt(1+v^2)`.
#[derive(Clone, Debug)]
pub struct AccelField {
    pub grid: PhaseGrid,
    pub tau: f64,
    /// `orders[n]` holds the grid of the order-n coefficient.
    pub orders: Vec<Vec<f64>>,
    /// Time derivatives of the coefficients where the closure provides
    /// them (orders 0 and 1); zero beyond.
    pub orders_dt: Vec<Vec<f64>>,
}

impl AccelField {
    /// Reconstruct the series up to `n_order` from a field snapshot.
    pub fn from_snapshot(
        grid: &PhaseGrid,
        snap: &FieldSnapshot1d,
        q_over_m: f64,
        tau: f64,
        n_order: u32,
    ) -> Self {
        let mut orders = vec![a0_field(grid, snap, q_over_m)];
        let mut orders_dt = vec![a0_dt_field(grid, snap, q_over_m)];
        for n in 0..n_order {
            let next = tau_recursion_step(grid, &orders, &orders_dt);
            orders.push(next);
            orders_dt.push(if n == 0 {
                a1_dt_field(grid, snap, q_over_m)
            } else {
                vec![0.0; grid.cells()]
            });
        }
        AccelField {
            grid: *grid,
            tau,
            orders,
            orders_dt,
        }
    }

    pub fn truncation_order(&self) -> u32 {
        (self.orders.len() - 1) as u32
    }

    /// Total `A^z` at a node, `sum_n tau^n A_(n)`.
    pub fn total(&self, k: usize) -> f64 {
        let mut acc = 0.0;
        let mut tn = 1.0;
        for ord in &self.orders {
            acc += tn * ord[k];
            tn *= self.tau;
        }
        acc
    }

    /// Total `A^z` grid.
    pub fn total_grid(&self) -> Vec<f64> {
        (0..self.grid.cells()).map(|k| self.total(k)).collect()
    }

    /// Velocity-space flux speed `A^z / sqrt(1+v^2)` at the v-faces of one
    /// z column (zero-indexed face `j+1/2`, `nv+1` values). Face values
    /// average the adjacent centers of `A^z/gamma`; the outermost faces
    /// take the edge-center value.
    pub fn flux_speed_at_faces(&self, iz: usize) -> Vec<f64> {
        let nv = self.grid.nv;
        let mut centers = vec![0.0; nv];
        for j in 0..nv {
            let v = self.grid.v_center(j);
            centers[j] = self.total(self.grid.idx(iz, j)) / (1.0 + v * v).sqrt();
        }
        let mut faces = vec![0.0; nv + 1];
        faces[0] = centers[0];
        faces[nv] = centers[nv - 1];
        for j in 1..nv {
            faces[j] = 0.5 * (centers[j - 1] + centers[j]);
        }
        faces
    }

    /// Largest flux speed magnitude over the whole grid (for CFL control).
    pub fn max_flux_speed(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.grid.nz {
            for f in self.flux_speed_at_faces(i) {
                m = m.max(f.abs());
            }
        }
        m
    }

    /// Export node coordinates and per-order components as CSV
    /// (`z,v,a0,a1,...`).
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "z,v")?;
        for n in 0..self.orders.len() {
            write!(w, ",a{n}")?;
        }
        writeln!(w)?;
        for i in 0..self.grid.nz {
            for j in 0..self.grid.nv {
                write!(
                    w,
                    "{:.16e},{:.16e}",
                    self.grid.z_center(i),
                    self.grid.v_center(j)
                )?;
                for ord in &self.orders {
                    write!(w, ",{:.16e}", ord[self.grid.idx(i, j)])?;
                }
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

/// Residual of the submanifold evolution equation for a truncated series.
///
/// Evaluates `xdot^a dA/dx^a + A dA/dv - (A.A) v - (A + (q/m) F xdot)/tau`
/// on the grid, with the explicit time derivative supplied in `da_dt` and
/// the same stencils as the recursion, so an order-N truncation leaves a
/// residual of order `tau^N`.
pub fn accel_pde_residual(
    af: &AccelField,
    da_dt: &[f64],
    snap: &FieldSnapshot1d,
    q_over_m: f64,
) -> Vec<f64> {
    let grid = &af.grid;
    let total = af.total_grid();
    let dz = grid.ddz(&total);
    let dv = grid.ddv(&total);
    let mut out = vec![0.0; grid.cells()];
    for i in 0..grid.nz {
        for j in 0..grid.nv {
            let k = grid.idx(i, j);
            let v = grid.v_center(j);
            let g2 = 1.0 + v * v;
            let gamma = g2.sqrt();
            let a = total[k];
            let contraction = a * a / g2;
            let lorentz = q_over_m * snap.e[i] * gamma;
            out[k] =
                gamma * da_dt[k] + v * dz[k] + a * dv[k] - contraction * v - (a - lorentz) / af.tau;
        }
    }
    out
}

/// Pointwise zeroth-order (Lorentz) acceleration, spatial components.
pub fn accel_order0(ft: &FieldTensor, q_over_m: f64, v: [f64; 3]) -> [f64; 3] {
    let a4 = ft.lorentz_accel(q_over_m, &lift_velocity(v));
    [a4[1], a4[2], a4[3]]
}

/// Pointwise first-order coefficient of the tau-series (spatial
/// components): transport of the Lorentz acceleration along the
/// characteristic plus the quadratic contraction term.
pub fn accel_order1(ft: &FieldTensor, q_over_m: f64, v: [f64; 3]) -> [f64; 3] {
    let xdot = lift_velocity(v);
    let a0_spatial = accel_order0(ft, q_over_m, v);
    let a0 = lift_acceleration(v, a0_spatial);
    // xdot^a d_a A0 = -(q/m) d_d F^mu_b xdot^b xdot^d
    let grad = ft.gradient_contract(&xdot) * (-q_over_m);
    // A0^nu dA0/dv^nu = -(q/m) F^mu_a A0^a (the lifted time component
    // absorbs the d(xdot^0)/dv chain term)
    let trans = ft.lorentz_accel(q_over_m, &a0);
    let a0_sq = minkowski_dot(&a0, &a0);
    let mut out = [0.0; 3];
    for mu in 0..3 {
        out[mu] = grad[mu + 1] + trans[mu + 1] - v[mu] * a0_sq;
    }
    out
}

/// Pointwise second-order coefficient. The derivatives of the first-order
/// coefficient are taken by central finite differences (step `1e-4`); the
/// `A_(1) . dA_(0)/dv` piece is analytic.
pub fn accel_order2(
    field: &dyn Field,
    x: &FourVector,
    q_over_m: f64,
    v: [f64; 3],
) -> Result<[f64; 3], FieldError> {
    let h = 1e-4;
    let ft = field.at(x)?;
    let xdot = lift_velocity(v);
    let a0_spatial = accel_order0(&ft, q_over_m, v);
    let a0 = lift_acceleration(v, a0_spatial);
    let a1_spatial = accel_order1(&ft, q_over_m, v);
    let a1 = lift_acceleration(v, a1_spatial);

    let mut out = [0.0; 3];
    // xdot^a d_a A1 by finite differences in spacetime
    for d in 0..4 {
        let mut xp = *x;
        let mut xm = *x;
        xp[d] += h;
        xm[d] -= h;
        let ap = accel_order1(&field.at(&xp)?, q_over_m, v);
        let am = accel_order1(&field.at(&xm)?, q_over_m, v);
        for mu in 0..3 {
            out[mu] += xdot[d] * (ap[mu] - am[mu]) / (2.0 * h);
        }
    }
    // A0^nu dA1/dv^nu by finite differences in v
    for nu in 0..3 {
        let mut vp = v;
        let mut vm = v;
        vp[nu] += h;
        vm[nu] -= h;
        let ap = accel_order1(&ft, q_over_m, vp);
        let am = accel_order1(&ft, q_over_m, vm);
        for mu in 0..3 {
            out[mu] += a0_spatial[nu] * (ap[mu] - am[mu]) / (2.0 * h);
        }
    }
    // A1^nu dA0/dv^nu = -(q/m) F^mu_a A1^a
    let trans = ft.lorentz_accel(q_over_m, &a1);
    let cross = minkowski_dot(&a0, &a1);
    for mu in 0..3 {
        out[mu] += trans[mu + 1] - 2.0 * v[mu] * cross;
    }
    Ok(out)
}

/// Pointwise truncated series `sum_{n<=N} tau^n A_(n)(x, v)`.
pub fn accel_series_at(
    field: &dyn Field,
    x: &FourVector,
    q_over_m: f64,
    v: [f64; 3],
    tau: f64,
    n_order: u32,
) -> Result<[f64; 3], FieldError> {
    let ft = field.at(x)?;
    let mut a = accel_order0(&ft, q_over_m, v);
    if n_order >= 1 && tau != 0.0 {
        let a1 = accel_order1(&ft, q_over_m, v);
        for mu in 0..3 {
            a[mu] += tau * a1[mu];
        }
    }
    if n_order >= 2 && tau != 0.0 {
        let a2 = accel_order2(field, x, q_over_m, v)?;
        for mu in 0..3 {
            a[mu] += tau * tau * a2[mu];
        }
    }
    Ok(a)
}
