//! Blaschke factors and finite or truncated-infinite Blaschke products.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::function::DiscFunction;
use crate::point::DiscPoint;
use crate::scalar::Real;
use crate::unitdisc::ZeroSequence;

/// Default truncation tolerance for products evaluated by tail bound.
pub const DEFAULT_TRUNCATION_TOLERANCE: f64 = 1e-9;

/// The factor `-(ā/|a|)(z-a)/(1-āz)` with zero `a`, and `z` when `a = 0`.
///
/// With `a = (1-δ)e^{iφ}` and `w = 1 - e^{-iφ}z` the factor equals
/// `(w - δ)/(w + δ(1 - w))`, which is how it is evaluated.
pub fn factor_at<T: Real>(zero: &DiscPoint<T>, z: &DiscPoint<T>) -> Result<Complex<T>> {
    let delta = zero.depth();
    if delta == T::one() {
        return Ok(z.to_complex());
    }
    let w = z.gap_from(zero.angle());
    let den = w + (Complex::new(T::one(), T::zero()) - w) * delta;
    if den.norm_sqr() == T::zero() {
        return Err(Error::Pole);
    }
    Ok((w - delta) / den)
}

/// Single Blaschke factor for Cartesian `a` (|a| < 1) and `z` (|z| <= 1).
pub fn eval_factor<T: Real>(a: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    if !(a.norm() < T::one()) {
        return Err(Error::ZeroOutsideDisc {
            index: 0,
            modulus: a.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    let den = Complex::new(T::one(), T::zero()) - a.conj() * z;
    if den.norm_sqr() == T::zero() {
        return Err(Error::Pole);
    }
    factor_at(&DiscPoint::from_complex(a)?, &DiscPoint::from_complex(z)?)
}

/// How many stored factors an evaluation uses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Truncation<T> {
    /// Fewest factors whose tail bound is at most the tolerance.
    Tolerance(T),
    /// Exactly the first `n` stored factors.
    Prefix(usize),
    /// Every stored factor.
    Full,
}

/// Blaschke product over a (possibly truncated infinite) zero sequence.
#[derive(Clone, Debug)]
pub struct BlaschkeProduct<T> {
    zeros: ZeroSequence<T>,
    truncation: Truncation<T>,
}

/// Result of a tail-bound controlled evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedValue<T> {
    pub value: Complex<T>,
    pub factors_used: usize,
    pub tail_bound: T,
}

impl<T: Real> BlaschkeProduct<T> {
    /// Product evaluated to the default tolerance of `1e-9`.
    pub fn new(zeros: ZeroSequence<T>) -> Self {
        Self {
            zeros,
            truncation: Truncation::Tolerance(T::lit(DEFAULT_TRUNCATION_TOLERANCE)),
        }
    }

    pub fn with_truncation(mut self, truncation: Truncation<T>) -> Result<Self> {
        match truncation {
            Truncation::Tolerance(tol) if !(tol > T::zero()) => {
                return Err(invalid("truncation_tolerance", "must be positive"))
            }
            Truncation::Prefix(n) if n > self.zeros.len() => {
                return Err(Error::InsufficientPrefix {
                    requested: n,
                    stored: self.zeros.len(),
                })
            }
            _ => {}
        }
        self.truncation = truncation;
        Ok(self)
    }

    pub fn zeros(&self) -> &ZeroSequence<T> {
        &self.zeros
    }

    pub fn truncation(&self) -> Truncation<T> {
        self.truncation
    }

    /// `∏_{k<=n} b_{a_k}(z)` in stored order; `n = 0` gives 1.
    pub fn eval_partial(&self, n: usize, z: &DiscPoint<T>) -> Result<Complex<T>> {
        let zeros = self.zeros.zeros();
        if n > zeros.len() {
            return Err(Error::InsufficientPrefix {
                requested: n,
                stored: zeros.len(),
            });
        }
        let mut acc = Complex::new(T::one(), T::zero());
        for a in &zeros[..n] {
            acc = acc * factor_at(a, z)?;
        }
        Ok(acc)
    }

    /// `((1+r)/(1-r)) Σ_{k>n}(1-|a_k|)` at `r = |z|`, counting unstored zeros.
    pub fn tail_bound(&self, n: usize, z: &DiscPoint<T>) -> T {
        let s = z.depth();
        let mass = self.zeros.tail_mass(n);
        if mass == T::zero() {
            return T::zero();
        }
        (T::lit(2.0) - s) / s * mass
    }

    /// `B_N(z)` with the fewest factors `N` whose tail bound is at most `tol`.
    pub fn eval_truncated(&self, z: &DiscPoint<T>, tol: T) -> Result<TruncatedValue<T>> {
        if !z.is_interior() {
            return Err(invalid("z", "truncated evaluation needs |z| < 1"));
        }
        if !(tol > T::zero()) {
            return Err(invalid("tol", "must be positive"));
        }
        let len = self.zeros.len();
        let achieved = self.tail_bound(len, z);
        if achieved > tol {
            return Err(Error::PrefixExhausted {
                achieved: achieved.to_f64().unwrap_or(f64::INFINITY),
                tolerance: tol.to_f64().unwrap_or(0.0),
            });
        }
        // tail_bound is nonincreasing in n
        let (mut lo, mut hi) = (0usize, len);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.tail_bound(mid, z) <= tol {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(TruncatedValue {
            value: self.eval_partial(lo, z)?,
            factors_used: lo,
            tail_bound: self.tail_bound(lo, z),
        })
    }
}

impl<T: Real> DiscFunction<T> for BlaschkeProduct<T> {
    fn eval_at(&self, z: &DiscPoint<T>) -> Result<Complex<T>> {
        match self.truncation {
            Truncation::Tolerance(tol) => self.eval_truncated(z, tol).map(|t| t.value),
            Truncation::Prefix(n) => self.eval_partial(n, z),
            Truncation::Full => self.eval_partial(self.zeros.len(), z),
        }
    }
}
