//! Electromagnetic field models and the field stress-energy tensor.
//!
//! The field strength is stored with both indices down, `F_ab`, together
//! with its first derivatives `dF[d][a][b] = d_d F_ab`. Mixed tensors
//! `F^a_b` are formed by raising with the metric (a sign flip on row 0).
//!
//! # Sign convention
//!
//! The map to electric and magnetic fields is fixed once, here:
//!
//! ```text
//! F_{0i} = E_i,        F_{ij} = -eps_{ijk} B_k .
//! ```
//!
//! This is the unique choice for which the equation of motion with a
//! leading `-(q/m) F^a_b xdot^b` force term reduces to `dp/dt = q E` for a
//! slow particle (electrons carry `q < 0`). The unit test
//! `slow_particle_limit_fixes_sign` pins it.

use crate::kinematics::{dot3, FourVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("field evaluation point z = {z} outside grid domain [{z0}, {z1}]")]
    OutOfDomain { z: f64, z0: f64, z1: f64 },
}

/// Field strength and its first derivatives at one spacetime point.
#[derive(Clone, Debug, Default)]
pub struct FieldTensor {
    /// `f[a][b] = F_ab`, antisymmetric.
    pub f: [[f64; 4]; 4],
    /// `df[d][a][b] = d_d F_ab`, antisymmetric in `(a, b)`.
    pub df: [[[f64; 4]; 4]; 4],
}

impl FieldTensor {
    /// Build a (uniform) tensor from electric and magnetic field vectors;
    /// all derivatives zero.
    pub fn from_e_b(e: [f64; 3], b: [f64; 3]) -> Self {
        let mut f = [[0.0; 4]; 4];
        for i in 0..3 {
            f[0][i + 1] = e[i];
            f[i + 1][0] = -e[i];
        }
        // F_ij = -eps_ijk B_k
        f[1][2] = -b[2];
        f[2][1] = b[2];
        f[2][3] = -b[0];
        f[3][2] = b[0];
        f[3][1] = -b[1];
        f[1][3] = b[1];
        FieldTensor {
            f,
            df: [[[0.0; 4]; 4]; 4],
        }
    }

    /// Electric field vector `E_i = F_{0i}`.
    pub fn electric(&self) -> [f64; 3] {
        [self.f[0][1], self.f[0][2], self.f[0][3]]
    }

    /// Magnetic field vector `B_k = -1/2 eps_{kij} F_{ij}`.
    pub fn magnetic(&self) -> [f64; 3] {
        [self.f[3][2], self.f[1][3], self.f[2][1]]
    }

    /// Mixed component `F^a_b`.
    pub fn mixed(&self, a: usize, b: usize) -> f64 {
        if a == 0 {
            -self.f[0][b]
        } else {
            self.f[a][b]
        }
    }

    /// `F^a_b u^b` as a four-vector.
    pub fn contract(&self, u: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for a in 0..4 {
            let sign = if a == 0 { -1.0 } else { 1.0 };
            let mut s = 0.0;
            for b in 0..4 {
                s += self.f[a][b] * u[b];
            }
            out[a] = sign * s;
        }
        FourVector(out)
    }

    /// Lorentz four-acceleration `-(q/m) F^a_b xdot^b`.
    pub fn lorentz_accel(&self, q_over_m: f64, xdot: &FourVector) -> FourVector {
        self.contract(xdot) * (-q_over_m)
    }

    /// `d_d F^a_b u^b u^d` (the gradient term of the first-order
    /// radiation-reaction force).
    pub fn gradient_contract(&self, u: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for a in 0..4 {
            let sign = if a == 0 { -1.0 } else { 1.0 };
            let mut s = 0.0;
            for d in 0..4 {
                for b in 0..4 {
                    s += self.df[d][a][b] * u[b] * u[d];
                }
            }
            out[a] = sign * s;
        }
        FourVector(out)
    }

    /// Invariant `F_cd F^cd = 2(B^2 - E^2)`.
    pub fn invariant(&self) -> f64 {
        let mut s = 0.0;
        for c in 0..4 {
            for d in 0..4 {
                let sc = if c == 0 { -1.0 } else { 1.0 };
                let sd = if d == 0 { -1.0 } else { 1.0 };
                s += self.f[c][d] * self.f[c][d] * sc * sd;
            }
        }
        s
    }

    /// Max violation of `F_ab = -F_ba` and `d_d F_ab = -d_d F_ba`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                r = r.max((self.f[a][b] + self.f[b][a]).abs());
                for d in 0..4 {
                    r = r.max((self.df[d][a][b] + self.df[d][b][a]).abs());
                }
            }
        }
        r
    }
}

/// Field stress-energy tensor `T_ab = F_ac F_b^c - 1/4 eta_ab F_cd F^cd`.
#[derive(Clone, Copy, Debug, Default)]
pub struct StressEnergy {
    pub t: [[f64; 4]; 4],
}

impl StressEnergy {
    /// Trace `eta^ab T_ab`; zero for any antisymmetric F.
    pub fn trace(&self) -> f64 {
        -self.t[0][0] + self.t[1][1] + self.t[2][2] + self.t[3][3]
    }

    /// Energy density `T_00 = (E^2 + B^2)/2`.
    pub fn energy_density(&self) -> f64 {
        self.t[0][0]
    }
}

/// Stress-energy of a field tensor.
pub fn stress_energy(ft: &FieldTensor) -> StressEnergy {
    let inv = ft.invariant();
    let eta = [-1.0, 1.0, 1.0, 1.0];
    let mut t = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            // F_ac F_b^c = F_ac eta^{cd} F_bd
            let mut s = 0.0;
            for c in 0..4 {
                s += ft.f[a][c] * eta[c] * ft.f[b][c];
            }
            let eta_ab = if a == b { eta[a] } else { 0.0 };
            t[a][b] = s - 0.25 * eta_ab * inv;
        }
    }
    StressEnergy { t }
}

/// Anything that can be evaluated as a field tensor at a spacetime point.
pub trait Field {
    fn at(&self, x: &FourVector) -> Result<FieldTensor, FieldError>;
}

/// 1D electrostatic field sampled on a uniform z-grid (cell centers).
///
/// `E_z` is linearly interpolated; its z-derivative uses the same
/// second-order central stencil as the kinetic solver, interpolated the
/// same way, so field and kinetic modules see identical gradients.
/// The grid holds a snapshot: time derivatives are zero.
#[derive(Clone, Debug)]
pub struct GridField {
    pub z0: f64,
    pub dz: f64,
    pub ez: Vec<f64>,
    pub periodic: bool,
    dez: Vec<f64>,
}

impl GridField {
    pub fn new(z0: f64, dz: f64, ez: Vec<f64>, periodic: bool) -> Self {
        let n = ez.len();
        assert!(n >= 4, "grid field needs at least 4 cells");
        let mut dez = vec![0.0; n];
        for i in 0..n {
            let (ip, im) = if periodic {
                ((i + 1) % n, (i + n - 1) % n)
            } else {
                ((i + 1).min(n - 1), i.saturating_sub(1))
            };
            let span = if periodic || (i > 0 && i < n - 1) {
                2.0
            } else {
                1.0
            };
            dez[i] = (ez[ip] - ez[im]) / (span * dz);
        }
        GridField {
            z0,
            dz,
            ez,
            periodic,
            dez,
        }
    }

    pub fn length(&self) -> f64 {
        self.dz * self.ez.len() as f64
    }

    fn sample(&self, values: &[f64], z: f64) -> f64 {
        let n = values.len();
        let s = (z - self.z0) / self.dz - 0.5;
        if self.periodic {
            let nf = n as f64;
            let s = s.rem_euclid(nf);
            let i = (s.floor() as usize) % n;
            let t = s - s.floor();
            values[i] * (1.0 - t) + values[(i + 1) % n] * t
        } else {
            let i = (s.floor().max(0.0) as usize).min(n - 2);
            let t = (s - i as f64).clamp(0.0, 1.0);
            values[i] * (1.0 - t) + values[i + 1] * t
        }
    }
}

impl Field for GridField {
    fn at(&self, x: &FourVector) -> Result<FieldTensor, FieldError> {
        let z = x[3];
        if !self.periodic {
            let z1 = self.z0 + self.length();
            if z < self.z0 || z > z1 {
                return Err(FieldError::OutOfDomain { z, z0: self.z0, z1 });
            }
        }
        let e = self.sample(&self.ez, z);
        let de = self.sample(&self.dez, z);
        let mut ft = FieldTensor::from_e_b([0.0, 0.0, e], [0.0; 3]);
        ft.df[3][0][3] = de;
        ft.df[3][3][0] = -de;
        Ok(ft)
    }
}

/// Concrete field models selectable from scenario configuration.
#[derive(Clone, Debug)]
pub enum FieldModel {
    UniformElectric {
        e: [f64; 3],
    },
    UniformMagnetic {
        b: [f64; 3],
    },
    /// Linearly polarized vacuum plane wave, `E = A pol cos(k.x - |k| t)`,
    /// `B = khat x E`. The polarization is projected orthogonal to `k` at
    /// construction.
    PlaneWave {
        amplitude: f64,
        wavevector: [f64; 3],
        polarization: [f64; 3],
    },
    GridElectrostatic(GridField),
    /// No field.
    Free,
}

impl FieldModel {
    /// Normalized plane-wave constructor; panics if `k = 0` or the
    /// polarization is parallel to `k`.
    pub fn plane_wave(amplitude: f64, wavevector: [f64; 3], polarization: [f64; 3]) -> Self {
        let k2 = dot3(wavevector, wavevector);
        assert!(k2 > 0.0, "plane wave needs a nonzero wavevector");
        let kp = dot3(polarization, wavevector) / k2;
        let mut pol = [0.0; 3];
        for i in 0..3 {
            pol[i] = polarization[i] - kp * wavevector[i];
        }
        let p = dot3(pol, pol).sqrt();
        assert!(
            p > 0.0,
            "polarization must have a component orthogonal to k"
        );
        for c in pol.iter_mut() {
            *c /= p;
        }
        FieldModel::PlaneWave {
            amplitude,
            wavevector,
            polarization: pol,
        }
    }

    /// Field tensor and derivatives at `x`.
    pub fn field_at(&self, x: &FourVector) -> Result<FieldTensor, FieldError> {
        match self {
            FieldModel::Free => Ok(FieldTensor::default()),
            FieldModel::UniformElectric { e } => Ok(FieldTensor::from_e_b(*e, [0.0; 3])),
            FieldModel::UniformMagnetic { b } => Ok(FieldTensor::from_e_b([0.0; 3], *b)),
            FieldModel::PlaneWave {
                amplitude,
                wavevector,
                polarization,
            } => {
                let k = *wavevector;
                let omega = dot3(k, k).sqrt();
                let khat = [k[0] / omega, k[1] / omega, k[2] / omega];
                let phase = dot3(k, x.spatial()) - omega * x[0];
                let e1 = *polarization;
                let b1 = [
                    khat[1] * e1[2] - khat[2] * e1[1],
                    khat[2] * e1[0] - khat[0] * e1[2],
                    khat[0] * e1[1] - khat[1] * e1[0],
                ];
                let unit = FieldTensor::from_e_b(e1, b1);
                let (c, s) = (phase.cos(), phase.sin());
                let mut ft = FieldTensor::default();
                let dphase = [-omega, k[0], k[1], k[2]];
                for a in 0..4 {
                    for b in 0..4 {
                        ft.f[a][b] = amplitude * c * unit.f[a][b];
                        for d in 0..4 {
                            ft.df[d][a][b] = -amplitude * s * dphase[d] * unit.f[a][b];
                        }
                    }
                }
                Ok(ft)
            }
            FieldModel::GridElectrostatic(grid) => grid.at(x),
        }
    }
}

impl Field for FieldModel {
    fn at(&self, x: &FourVector) -> Result<FieldTensor, FieldError> {
        self.field_at(x)
    }
}
