//! Minkowski algebra and the constrained phase space of radiating particles.
//!
//! The phase space of a third-order equation of motion is the bundle of
//! (position, velocity, acceleration) triples. Physical worldlines
//! parametrized by proper time live on the submanifold where the
//! four-velocity is unit timelike and orthogonal to the four-acceleration.
//! This module fixes coordinates on that submanifold: a spacetime point
//! `x`, the spatial velocity `v` and spatial acceleration `a`, with the
//! time components recovered by [`lift_velocity`] and
//! [`lift_acceleration`]. Both constraints then hold identically, so code
//! that evolves `(x, v, a)` can never drift off the mass shell.
//!
//! Metric signature is `(-,+,+,+)`; index raising and lowering is a sign
//! flip on component 0.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Contravariant spacetime vector, components `[t, x, y, z]`, `c = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    /// Spatial part.
    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    /// Minkowski inner product with another vector.
    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    /// Covariant components (index lowered with the metric).
    pub fn lower(&self) -> [f64; 4] {
        [-self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for FourVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self * -1.0
    }
}

/// Minkowski inner product, `-u0 w0 + u.w`.
pub fn minkowski_dot(u: &FourVector, w: &FourVector) -> f64 {
    -u.0[0] * w.0[0] + u.0[1] * w.0[1] + u.0[2] * w.0[2] + u.0[3] * w.0[3]
}

/// Euclidean dot of spatial triples.
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm3_sq(a: [f64; 3]) -> f64 {
    dot3(a, a)
}

/// Lift a reduced velocity to the mass shell: `(sqrt(1+v^2), v)`.
///
/// The result has Minkowski norm -1 exactly by construction.
pub fn lift_velocity(v: [f64; 3]) -> FourVector {
    let g = (1.0 + norm3_sq(v)).sqrt();
    FourVector([g, v[0], v[1], v[2]])
}

/// Lift a reduced acceleration: `(a.v/sqrt(1+v^2), a)`.
///
/// Orthogonal to [`lift_velocity`]`(v)` exactly by construction.
pub fn lift_acceleration(v: [f64; 3], a: [f64; 3]) -> FourVector {
    let g = (1.0 + norm3_sq(v)).sqrt();
    FourVector([dot3(a, v) / g, a[0], a[1], a[2]])
}

/// State of one particle in reduced coordinates `(x, v, a)`.
///
/// The ambient four-velocity and four-acceleration are always derived via
/// the lifts and never stored, so the mass-shell and orthogonality
/// constraints are satisfied identically along any trajectory evolved in
/// these coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ReducedState {
    /// Spacetime point.
    pub x: FourVector,
    /// Reduced (spatial) velocity.
    pub v: [f64; 3],
    /// Reduced (spatial) acceleration.
    pub a: [f64; 3],
}

impl ReducedState {
    pub fn new(x: FourVector, v: [f64; 3], a: [f64; 3]) -> Self {
        ReducedState { x, v, a }
    }

    /// Ambient four-velocity.
    pub fn xdot(&self) -> FourVector {
        lift_velocity(self.v)
    }

    /// Ambient four-acceleration.
    pub fn xddot(&self) -> FourVector {
        lift_acceleration(self.v, self.a)
    }

    /// Proper acceleration magnitude `sqrt(xddot . xddot)`.
    ///
    /// The lifted acceleration is spacelike (or zero), so the radicand is
    /// nonnegative up to roundoff.
    pub fn proper_accel(&self) -> f64 {
        self.xddot().norm_sq().max(0.0).sqrt()
    }
}

/// Residuals of the two phase-space constraints.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ConstraintResidual {
    /// `(xdot.xdot + 1) / 2` — vanishes on the unit mass shell.
    pub phi1: f64,
    /// `xdot.xddot` — vanishes when velocity and acceleration are orthogonal.
    pub phi2: f64,
}

impl ConstraintResidual {
    pub fn max_abs(&self) -> f64 {
        self.phi1.abs().max(self.phi2.abs())
    }
}

/// Evaluate both constraint residuals for an ambient pair.
pub fn constraint_residuals(xdot: &FourVector, xddot: &FourVector) -> ConstraintResidual {
    ConstraintResidual {
        phi1: 0.5 * (minkowski_dot(xdot, xdot) + 1.0),
        phi2: minkowski_dot(xdot, xddot),
    }
}

/// Constraint residuals normalized by the Euclidean scale of their inputs.
///
/// The raw residuals are differences of terms of size `|xdot|^2` and
/// `|xdot||xddot|`, so their floating-point evaluation carries noise of
/// that scale; dividing it out gives a number comparable to an integrator
/// tolerance at any Lorentz factor.
pub fn normalized_constraint_residual(xdot: &FourVector, xddot: &FourVector) -> f64 {
    let r = constraint_residuals(xdot, xddot);
    let e2 = |u: &FourVector| u.0.iter().map(|c| c * c).sum::<f64>();
    let s1 = 1.0 + e2(xdot);
    let s2 = 1.0 + (e2(xdot) * e2(xddot)).sqrt();
    (r.phi1 / s1).abs().max((r.phi2 / s2).abs())
}

/// Project `w` onto the orthogonal complement of a unit timelike `xdot`:
/// `w^a + xdot^a (xdot_b w^b)`.
pub fn orthogonal_projection(xdot: &FourVector, w: &FourVector) -> FourVector {
    *w + *xdot * minkowski_dot(xdot, w)
}

/// Weights of the induced (Leray) measures on the constraint surface.
///
/// `fiber_weight = 1/(1+v^2)` weights the joint velocity-acceleration
/// fiber; `velocity_weight = 1/sqrt(1+v^2)` weights the velocity-only
/// measure. The first is the square of the second.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LerayWeights {
    pub fiber_weight: f64,
    pub velocity_weight: f64,
}

impl LerayWeights {
    pub fn for_velocity(v: [f64; 3]) -> Self {
        let s = 1.0 + norm3_sq(v);
        LerayWeights {
            fiber_weight: 1.0 / s,
            velocity_weight: 1.0 / s.sqrt(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn dot_examples() {
        let u = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(minkowski_dot(&u, &u), -1.0);
        let n = FourVector::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(minkowski_dot(&n, &n), 0.0);
        let b = FourVector::new(2.0, 0.0, 0.0, SQRT3);
        assert_abs_diff_eq!(minkowski_dot(&b, &b), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn lift_velocity_examples() {
        assert_eq!(lift_velocity([0.0; 3]).0, [1.0, 0.0, 0.0, 0.0]);
        let l = lift_velocity([0.0, 0.0, SQRT3]);
        assert_abs_diff_eq!(l[0], 2.0, epsilon = 1e-15);
        assert_eq!(l[3], SQRT3);
        let l = lift_velocity([3.0, 4.0, 0.0]);
        assert_abs_diff_eq!(l[0], 26.0_f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn lift_acceleration_examples() {
        let l = lift_acceleration([0.0; 3], [0.0, 0.0, 1.0]);
        assert_eq!(l.0, [0.0, 0.0, 0.0, 1.0]);
        let l = lift_acceleration([0.0, 0.0, SQRT3], [0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(l[0], SQRT3 / 2.0, epsilon = 1e-15);
        assert_eq!(l[3], 1.0);
        let l = lift_acceleration([0.0, 0.0, SQRT3], [1.0, 0.0, 0.0]);
        assert_eq!(l.0, [0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn constraint_examples() {
        let r = constraint_residuals(
            &FourVector::new(1.0, 0.0, 0.0, 0.0),
            &FourVector::new(0.0, 0.0, 0.0, 1.0),
        );
        assert_eq!((r.phi1, r.phi2), (0.0, 0.0));
        let r = constraint_residuals(
            &FourVector::new(1.0, 0.0, 0.0, 0.0),
            &FourVector::new(1.0, 0.0, 0.0, 0.0),
        );
        assert_eq!((r.phi1, r.phi2), (0.0, -1.0));
        // (xdot.xdot + 1)/2 = (-4 + 1)/2
        let r = constraint_residuals(&FourVector::new(2.0, 0.0, 0.0, 0.0), &FourVector::ZERO);
        assert_eq!((r.phi1, r.phi2), (-1.5, 0.0));
    }

    #[test]
    fn projection_examples() {
        let u = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let p = orthogonal_projection(&u, &FourVector::new(5.0, 0.0, 0.0, 2.0));
        assert_eq!(p.0, [0.0, 0.0, 0.0, 2.0]);
        let p = orthogonal_projection(&u, &FourVector::new(0.0, 1.0, 0.0, 0.0));
        assert_eq!(p.0, [0.0, 1.0, 0.0, 0.0]);
        let b = FourVector::new(2.0, 0.0, 0.0, SQRT3);
        let p = orthogonal_projection(&b, &b);
        for c in p.0 {
            assert_abs_diff_eq!(c, 0.0, epsilon = 1e-14);
        }
    }

    fn small_triple() -> impl Strategy<Value = [f64; 3]> {
        prop::array::uniform3(-10.0..10.0f64)
    }

    proptest! {
        #[test]
        fn lifted_velocity_is_unit_timelike(v in small_triple()) {
            let l = lift_velocity(v);
            prop_assert!((minkowski_dot(&l, &l) + 1.0).abs() < 1e-12);
        }

        #[test]
        fn lifted_pair_is_orthogonal(v in small_triple(), a in small_triple()) {
            let r = constraint_residuals(&lift_velocity(v), &lift_acceleration(v, a));
            prop_assert!(r.phi2.abs() < 1e-12 * (1.0 + norm3_sq(a).sqrt() * norm3_sq(v).sqrt()));
        }

        #[test]
        fn projection_is_idempotent(v in small_triple(), w in prop::array::uniform4(-10.0..10.0f64)) {
            let u = lift_velocity(v);
            let w = FourVector(w);
            let once = orthogonal_projection(&u, &w);
            let twice = orthogonal_projection(&u, &once);
            for i in 0..4 {
                prop_assert!((once[i] - twice[i]).abs() < 1e-9 * (1.0 + once[i].abs()));
            }
        }

        #[test]
        fn leray_weights_identity(v in small_triple()) {
            let w = LerayWeights::for_velocity(v);
            prop_assert!((w.fiber_weight - w.velocity_weight * w.velocity_weight).abs() < 1e-15);
            prop_assert!(w.fiber_weight > 0.0 && w.fiber_weight <= 1.0);
            prop_assert!(w.velocity_weight > 0.0 && w.velocity_weight <= 1.0);
        }
    }
}
