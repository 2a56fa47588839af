use num_complex::Complex;

use crate::error::Result;
use crate::point::DiscPoint;
use crate::scalar::Real;

/// A function on the unit disc that can be sampled pointwise.
pub trait DiscFunction<T: Real>: Sync {
    fn eval_at(&self, z: &DiscPoint<T>) -> Result<Complex<T>>;

    /// Evaluates at a Cartesian point of the closed disc.
    fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.eval_at(&DiscPoint::from_complex(z)?)
    }
}

impl<T: Real, F: DiscFunction<T> + ?Sized> DiscFunction<T> for &F {
    fn eval_at(&self, z: &DiscPoint<T>) -> Result<Complex<T>> {
        (**self).eval_at(z)
    }
}
