//! Poisson kernel, Poisson integrals of boundary data, singular inner
//! functions with atomic measures, and outer functions.
//!
//! Kernels are written through `w = 1 - e^{-it} z`:
//! `(e^{it}+z)/(e^{it}-z) = (2-w)/w` and `p_r(θ-t) = (1-|z|²)/|w|²`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::function::DiscFunction;
use crate::point::DiscPoint;
use crate::scalar::{normalize_angle, Real};
use crate::unitdisc::CircleArc;

/// `(1 - r²)/(1 - 2r cos θ + r²)`.
pub fn poisson_kernel<T: Real>(r: T, theta: T) -> Result<T> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(invalid("r", format!("{r} not in [0, 1)")));
    }
    Ok(kernel_at(&DiscPoint::from_polar(r, theta)?, T::zero()))
}

/// `p_r(θ - t)` for `z = r e^{iθ}`.
pub(crate) fn kernel_at<T: Real>(z: &DiscPoint<T>, t: T) -> T {
    let s = z.depth();
    s * (T::lit(2.0) - s) / z.chord_sq(t)
}

/// `(e^{it}+z)/(e^{it}-z)`.
pub(crate) fn herglotz_kernel<T: Real>(z: &DiscPoint<T>, t: T) -> Complex<T> {
    let w = z.gap_from(t);
    (Complex::new(T::lit(2.0), T::zero()) - w) / w
}

/// Trapezoidal rule on the circle with doubling refinement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quadrature<T> {
    pub min_points: usize,
    /// Refinement stops once two successive results differ by less than this.
    pub tolerance: T,
    pub max_points: usize,
}

impl<T: Real> Default for Quadrature<T> {
    fn default() -> Self {
        Self {
            min_points: 64,
            tolerance: T::lit(1e-10),
            max_points: 1 << 22,
        }
    }
}

impl<T: Real> Quadrature<T> {
    pub fn with_tolerance(tolerance: T) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }

    /// `(1/2π) ∫ f(t) dt` over one period, refined until stable.
    pub fn mean<F>(&self, f: F) -> Result<Complex<T>>
    where
        F: Fn(T) -> Complex<T>,
    {
        if self.min_points < 2 || self.min_points > self.max_points {
            return Err(invalid("quad_points", "need 2 <= min_points <= max_points"));
        }
        if !(self.tolerance > T::zero()) {
            return Err(invalid("quad_tolerance", "must be positive"));
        }
        let tau = T::TAU();
        let mut n = self.min_points;
        let mut sum = (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
            acc + f(tau * T::from_count(j) / T::from_count(n))
        });
        let mut current = sum / T::from_count(n);
        let mut change = T::infinity();
        while 2 * n <= self.max_points {
            // odd nodes of the doubled grid
            let fine = 2 * n;
            let odd = (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                acc + f(tau * T::from_count(2 * j + 1) / T::from_count(fine))
            });
            sum = sum + odd;
            n = fine;
            let next = sum / T::from_count(n);
            change = (next - current).norm();
            current = next;
            if change < self.tolerance {
                return Ok(current);
            }
            if !change.is_finite() {
                break;
            }
        }
        Err(Error::Resolution {
            points: n,
            difference: change.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Registered closed-form boundary functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClosedForm<T> {
    Cos,
    Sin,
    /// `height` on the closed arc, 0 elsewhere.
    IndicatorArc {
        arc: CircleArc<T>,
        height: T,
    },
}

/// Boundary data `f(θ)` on the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryFunction<T> {
    Constant(Complex<T>),
    /// Values on the uniform grid `2πj/n`, linearly interpolated.
    Samples(Vec<Complex<T>>),
    Form(ClosedForm<T>),
}

/// Fewest samples accepted on a boundary grid.
pub const MIN_BOUNDARY_SAMPLES: usize = 16;

impl<T: Real> BoundaryFunction<T> {
    pub fn samples(values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() < MIN_BOUNDARY_SAMPLES {
            return Err(invalid(
                "samples",
                format!(
                    "need at least {MIN_BOUNDARY_SAMPLES} points, got {}",
                    values.len()
                ),
            ));
        }
        Ok(Self::Samples(values))
    }

    /// Samples given as `(angle, value)` pairs; the angles must form the uniform grid.
    pub fn from_angle_samples(samples: &[(T, Complex<T>)]) -> Result<Self> {
        let n = samples.len();
        let tol = T::lit(1e-9);
        for (j, (angle, _)) in samples.iter().enumerate() {
            let want = T::TAU() * T::from_count(j) / T::from_count(n.max(1));
            if (normalize_angle(*angle) - want).abs() > tol {
                return Err(invalid(
                    "samples",
                    format!("angle #{j} is off the uniform grid"),
                ));
            }
        }
        Self::samples(samples.iter().map(|s| s.1).collect())
    }

    pub fn indicator_arc(start: T, end: T, height: T) -> Result<Self> {
        Ok(Self::Form(ClosedForm::IndicatorArc {
            arc: CircleArc::new(start, end)?,
            height,
        }))
    }

    pub fn value_at(&self, t: T) -> Complex<T> {
        match self {
            Self::Constant(c) => *c,
            Self::Form(ClosedForm::Cos) => Complex::new(t.cos(), T::zero()),
            Self::Form(ClosedForm::Sin) => Complex::new(t.sin(), T::zero()),
            Self::Form(ClosedForm::IndicatorArc { arc, height }) => {
                if arc.contains(t) {
                    Complex::new(*height, T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            }
            Self::Samples(values) => {
                let n = values.len();
                let x = normalize_angle(t) / T::TAU() * T::from_count(n);
                let j = x.floor();
                let frac = x - j;
                let i = j.to_usize().unwrap_or(0) % n;
                values[i] * (T::one() - frac) + values[(i + 1) % n] * frac
            }
        }
    }

    /// Largest real part; used for maximum-modulus bounds of outer functions.
    pub fn max_real(&self) -> T {
        match self {
            Self::Constant(c) => c.re,
            Self::Form(ClosedForm::Cos | ClosedForm::Sin) => T::one(),
            Self::Form(ClosedForm::IndicatorArc { height, .. }) => height.max(T::zero()),
            Self::Samples(values) => values.iter().map(|v| v.re).fold(T::neg_infinity(), T::max),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Self::Constant(c) => c.im == T::zero(),
            Self::Form(_) => true,
            Self::Samples(values) => values.iter().all(|v| v.im == T::zero()),
        }
    }

    /// Quadrature floor: 64 points and 4× the sample count.
    fn min_points(&self) -> usize {
        match self {
            Self::Samples(values) => (4 * values.len()).max(64),
            _ => 64,
        }
    }
}

/// `(1/2π) ∫ f(t) p_r(θ - t) dt` at `z = r e^{iθ}`.
pub fn poisson_integral<T: Real>(
    f: &BoundaryFunction<T>,
    z: &DiscPoint<T>,
    quadrature: &Quadrature<T>,
) -> Result<Complex<T>> {
    if !z.is_interior() {
        return Err(invalid("z", "Poisson integral needs |z| < 1"));
    }
    if let BoundaryFunction::Form(ClosedForm::IndicatorArc { arc, height }) = f {
        return Ok(Complex::new(
            indicator_herglotz(arc, *height, z).re,
            T::zero(),
        ));
    }
    let q = Quadrature {
        min_points: quadrature.min_points.max(f.min_points()),
        ..*quadrature
    };
    q.mean(|t| f.value_at(t) * kernel_at(z, t))
}

/// `(1/2π) ∫_arc h (e^{it}+z)/(e^{it}-z) dt` in closed form.
///
/// With `L(t) = Log(1 - z e^{-it})` (principal branch, continuous since
/// `|z| < 1`) the integrand has antiderivative `t - 2i L(t)`.
fn indicator_herglotz<T: Real>(arc: &CircleArc<T>, height: T, z: &DiscPoint<T>) -> Complex<T> {
    let a = arc.start();
    let b = a + arc.length();
    let two = T::lit(2.0);
    let log_b = z.gap_from(b).ln();
    let log_a = z.gap_from(a).ln();
    let i = Complex::new(T::zero(), T::one());
    (Complex::new(arc.length(), T::zero()) - (log_b - log_a) * i * two) * (height / T::TAU())
}

/// Atomic positive measure on the circle.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularAtoms<T> {
    atoms: Vec<(T, T)>,
}

impl<T: Real> SingularAtoms<T> {
    /// `(angle, mass)` pairs with positive masses at distinct angles.
    pub fn new(atoms: Vec<(T, T)>) -> Result<Self> {
        let atoms: Vec<(T, T)> = atoms
            .into_iter()
            .map(|(a, m)| (normalize_angle(a), m))
            .collect();
        for (i, &(a, m)) in atoms.iter().enumerate() {
            if !(m > T::zero() && m.is_finite()) {
                return Err(invalid("atoms", format!("mass #{i} must be positive")));
            }
            if atoms[..i].iter().any(|&(b, _)| b == a) {
                return Err(invalid(
                    "atoms",
                    format!("angle #{i} repeats an earlier atom"),
                ));
            }
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(T, T)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> T {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// `Σ m_j Re[(e^{iθ_j}+z)/(e^{iθ_j}-z)]`, the exponent decay rate.
    pub fn poisson_sum(&self, z: &DiscPoint<T>) -> T {
        self.atoms.iter().map(|&(a, m)| m * kernel_at(z, a)).sum()
    }
}

/// `exp(-Σ m_j (e^{iθ_j}+z)/(e^{iθ_j}-z))`.
pub fn eval_singular_inner<T: Real>(
    atoms: &SingularAtoms<T>,
    z: &DiscPoint<T>,
) -> Result<Complex<T>> {
    if !z.is_interior() {
        return Err(invalid("z", "singular factor needs |z| < 1"));
    }
    let exponent = atoms
        .atoms
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, &(a, m)| {
            acc + herglotz_kernel(z, a) * m
        });
    Ok((-exponent).exp())
}

impl<T: Real> DiscFunction<T> for SingularAtoms<T> {
    fn eval_at(&self, z: &DiscPoint<T>) -> Result<Complex<T>> {
        eval_singular_inner(self, z)
    }
}

/// Real log-modulus density `k` and unimodular constant `λ` of an outer function.
#[derive(Clone, Debug, PartialEq)]
pub struct OuterDensity<T> {
    k: BoundaryFunction<T>,
    lambda: Complex<T>,
}

impl<T: Real> OuterDensity<T> {
    pub fn new(k: BoundaryFunction<T>, lambda: Complex<T>) -> Result<Self> {
        if !k.is_real() {
            return Err(invalid("k", "outer density must be real valued"));
        }
        if (lambda.norm() - T::one()).abs() > T::lit(1e-12) {
            return Err(invalid("lambda", "must have modulus 1"));
        }
        Ok(Self { k, lambda })
    }

    pub fn k(&self) -> &BoundaryFunction<T> {
        &self.k
    }

    pub fn lambda(&self) -> Complex<T> {
        self.lambda
    }
}

/// `λ exp[(1/2π) ∫ (e^{it}+z)/(e^{it}-z) k(t) dt]`.
pub fn eval_outer<T: Real>(
    density: &OuterDensity<T>,
    z: &DiscPoint<T>,
    quadrature: &Quadrature<T>,
) -> Result<Complex<T>> {
    if !z.is_interior() {
        return Err(invalid("z", "outer function needs |z| < 1"));
    }
    let q = Quadrature {
        min_points: quadrature.min_points.max(density.k.min_points()),
        ..*quadrature
    };
    let exponent = match &density.k {
        BoundaryFunction::Form(ClosedForm::IndicatorArc { arc, height }) => {
            indicator_herglotz(arc, *height, z)
        }
        k => q.mean(|t| herglotz_kernel(z, t) * k.value_at(t).re)?,
    };
    Ok(density.lambda * exponent.exp())
}

/// Outer function bundled with the quadrature used to evaluate it.
#[derive(Clone, Debug, PartialEq)]
pub struct OuterFactor<T> {
    pub density: OuterDensity<T>,
    pub quadrature: Quadrature<T>,
}

impl<T: Real> DiscFunction<T> for OuterFactor<T> {
    fn eval_at(&self, z: &DiscPoint<T>) -> Result<Complex<T>> {
        eval_outer(&self.density, z, &self.quadrature)
    }
}

/// Mass of `p_r` and its supremum off `(-δ, δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproxIdentityReport<T> {
    pub r: T,
    pub delta: T,
    pub mass: T,
    pub sup_outside: T,
}

pub fn approx_identity_report<T: Real>(r: T, delta: T) -> Result<ApproxIdentityReport<T>> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(invalid("r", format!("{r} not in [0, 1)")));
    }
    if !(delta > T::zero() && delta < T::PI()) {
        return Err(invalid("delta", "need 0 < delta < pi"));
    }
    let z = DiscPoint::from_polar(r, T::zero())?;
    let q = Quadrature::with_tolerance(T::lit(1e-12));
    let mass = if r == T::zero() {
        T::one()
    } else {
        q.mean(|t| Complex::new(kernel_at(&z, t), T::zero()))?.re
    };
    Ok(ApproxIdentityReport {
        r,
        delta,
        mass,
        // p_r decreases on [0, π]
        sup_outside: kernel_at(&z, delta),
    })
}
