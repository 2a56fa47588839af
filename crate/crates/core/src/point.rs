//! Points of the closed unit disc in boundary-relative polar form.
//!
//! A point is stored as `(depth, angle)` with `depth = 1 - |z|`. Quantities
//! such as `1 - e^{-iφ} z` are then formed without the cancellation that
//! `1 - |z|` suffers when `z` is held in Cartesian form near the circle.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::{normalize_angle, Real};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint<T> {
    depth: T,
    angle: T,
}

impl<T: Real> DiscPoint<T> {
    /// `depth` must lie in `[0, 1]`; `depth == 0` is a point of the circle.
    pub fn new(depth: T, angle: T) -> Result<Self> {
        if !(depth >= T::zero() && depth <= T::one()) {
            return Err(invalid("depth", format!("{depth} not in [0, 1]")));
        }
        if !angle.is_finite() {
            return Err(invalid("angle", "not finite"));
        }
        let angle = if depth == T::one() {
            T::zero()
        } else {
            normalize_angle(angle)
        };
        Ok(Self { depth, angle })
    }

    pub fn origin() -> Self {
        Self {
            depth: T::one(),
            angle: T::zero(),
        }
    }

    pub fn on_circle(angle: T) -> Self {
        Self {
            depth: T::zero(),
            angle: normalize_angle(angle),
        }
    }

    /// Point `r e^{iθ}` with `0 <= r <= 1`.
    pub fn from_polar(r: T, angle: T) -> Result<Self> {
        Self::new(T::one() - r, angle)
    }

    /// Accepts `|z| <= 1` up to a few ulps of rounding.
    pub fn from_complex(z: Complex<T>) -> Result<Self> {
        let r = z.norm();
        if !r.is_finite() {
            return Err(invalid("z", "not finite"));
        }
        let slack = T::lit(8.0) * T::eps();
        if r > T::one() + slack {
            return Err(invalid(
                "z",
                format!("|z| = {r} lies outside the closed disc"),
            ));
        }
        if r == T::zero() {
            return Ok(Self::origin());
        }
        Ok(Self {
            depth: (T::one() - r).max(T::zero()),
            angle: normalize_angle(z.arg()),
        })
    }

    #[inline]
    pub fn depth(&self) -> T {
        self.depth
    }

    #[inline]
    pub fn angle(&self) -> T {
        self.angle
    }

    #[inline]
    pub fn radius(&self) -> T {
        T::one() - self.depth
    }

    pub fn is_interior(&self) -> bool {
        self.depth > T::zero()
    }

    pub fn to_complex(&self) -> Complex<T> {
        Complex::from_polar(self.radius(), self.angle)
    }

    /// `1 - e^{-iφ} z`, accurate when `z` is close to `e^{iφ}`.
    pub fn gap_from(&self, phi: T) -> Complex<T> {
        let two = T::lit(2.0);
        let psi = self.angle - phi;
        let half = psi / two;
        let (s, c) = half.sin_cos();
        // 1 - e^{iψ} = -2i sin(ψ/2) e^{iψ/2}
        let chord = Complex::new(two * s * s, -two * s * c);
        chord + Complex::from_polar(self.depth, psi)
    }

    /// `|e^{it} - z|²` without cancellation.
    pub fn chord_sq(&self, t: T) -> T {
        let s = ((self.angle - t) / T::lit(2.0)).sin();
        self.depth * self.depth + T::lit(4.0) * (T::one() - self.depth) * s * s
    }

    /// `|e^{it} - z|`, without squaring the depth, so it stays exact for
    /// depths far below the square root of the smallest normal number.
    pub fn chord(&self, t: T) -> T {
        let s = ((self.angle - t) / T::lit(2.0)).sin();
        self.depth
            .hypot(T::lit(2.0) * (T::one() - self.depth).sqrt() * s)
    }
}
