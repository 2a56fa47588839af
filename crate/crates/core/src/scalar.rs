//! Scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating point scalar (`f32` or `f64`) the numeric modules are generic over.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Relative machine epsilon.
    #[inline]
    fn eps() -> Self {
        <Self as Float>::epsilon()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Normalizes an angle to `[0, 2π)`.
pub fn normalize_angle<T: Real>(theta: T) -> T {
    let tau = T::TAU();
    let mut t = theta % tau;
    if t < T::zero() {
        t = t + tau;
    }
    // `t + tau` can round up to exactly tau for tiny negative inputs.
    if t >= tau {
        t = T::zero();
    }
    t
}

/// Circular distance between two angles, in `[0, π]`.
pub fn circular_distance<T: Real>(a: T, b: T) -> T {
    let d = normalize_angle(a - b);
    d.min(T::TAU() - d)
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn normalize_wraps_into_range() {
        assert_eq!(normalize_angle(0.0_f64), 0.0);
        assert!((normalize_angle(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!((normalize_angle(5.0 * PI) - PI).abs() < 1e-14);
        assert_eq!(normalize_angle(-1e-300_f64), 0.0);
        let t = normalize_angle(2.0 * PI);
        assert!((0.0..2.0 * PI).contains(&t));
    }

    #[test]
    fn circular_distance_is_symmetric_and_short() {
        assert!((circular_distance(0.1_f64, 2.0 * PI - 0.1) - 0.2).abs() < 1e-14);
        assert!((circular_distance(0.0_f64, PI) - PI).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::<f64>::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-17);
        }
        assert!((s.value() - (1.0 + 1e-14)).abs() < 1e-28_f64.max(1e-16));
    }
}
