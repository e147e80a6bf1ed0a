//! Kinetic theory toolkit for radiating electrons.
//!
//! The classical motion of a radiating point charge is governed by the
//! Lorentz-Dirac equation, a third-order equation whose generic solutions
//! run away exponentially. This crate provides the numerical machinery to
//! work with that system at every level:
//!
//! * [`kinematics`] — Minkowski algebra, the constrained phase space of
//!   (position, velocity, acceleration) triples, and the induced Leray
//!   measures on it.
//! * [`fields`] — electromagnetic field models (uniform, plane wave, and a
//!   1D electrostatic grid) together with their first derivatives and the
//!   field stress-energy tensor.
//! * [`pushers`] — single-particle integrators: the full Lorentz-Dirac
//!   flow, the Landau-Lifshitz reduction, Dirac's asymptotic
//!   integro-differential form (via Picard iteration and Gauss-Laguerre
//!   quadrature), and a pointwise tau-series pusher.
//! * [`submanifold`] — the physical acceleration field A(x, v) as a
//!   tau-series on a phase-space grid, its recursion, and residual checks
//!   against the underlying evolution equation.
//! * [`vlasov`] — a 1D1V electrostatic Vlasov-Ampere solver whose
//!   velocity-space flux is supplied by the acceleration field, with exact
//!   discrete charge conservation.
//! * [`entropy`] — entropy density, exact entropy rate, and the first-order
//!   closed form (self-current, external-current, and field-coupling
//!   terms).
//! * [`dispersion`] — the linearized longitudinal dispersion relation, the
//!   cold cubic, and root classification by continuation in tau.
//! * [`scenario`] / [`harness`] — TOML scenario configs and a reproducible
//!   runner behind the `radkin` binary.
//!
//! Units are Heaviside-Lorentz with `c = 1`; the metric signature is
//! `(-,+,+,+)`. In solver scenarios lengths are measured in `c/omega_p` and
//! times in `1/omega_p`, so the only physics dials are `omega_p*tau` and
//! perturbation amplitudes.
//!
//! Runnable demonstrations of each capability live in `examples/`; the
//! acceptance suite in `tests/acceptance.rs` pins the quantitative targets.

// stencil sweeps index several same-shaped arrays at once; iterator
// rewrites obscure them
#![allow(clippy::needless_range_loop)]

pub mod dispersion;
pub mod entropy;
pub mod fields;
pub mod harness;
pub mod kinematics;
pub mod numerics;
pub mod pushers;
pub mod quadrature;
pub mod scenario;
pub mod submanifold;
pub mod vlasov;

pub use fields::{Field, FieldModel, FieldTensor, StressEnergy};
pub use kinematics::{
    constraint_residuals, lift_acceleration, lift_velocity, minkowski_dot, orthogonal_projection,
    ConstraintResidual, FourVector, LerayWeights, ReducedState,
};
pub use pushers::{ParticleParams, PushMethod, PusherConfig, Trajectory};
pub use submanifold::{AccelField, PhaseGrid};
pub use vlasov::{DistG, PlasmaState, SlopeMode, SolverParams};
