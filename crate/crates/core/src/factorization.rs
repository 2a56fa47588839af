//! Composite bounded analytic functions: products of Blaschke, singular,
//! outer and series factors.

use num_complex::Complex;

use crate::blaschke::BlaschkeProduct;
use crate::constructions::{eval_series, SeriesSpec};
use crate::error::Result;
use crate::function::DiscFunction;
use crate::herglotz::{eval_outer, eval_singular_inner, OuterFactor, SingularAtoms};
use crate::point::DiscPoint;
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub enum Factor<T> {
    Blaschke(BlaschkeProduct<T>),
    Singular(SingularAtoms<T>),
    Outer(OuterFactor<T>),
    Series(SeriesSpec<T>),
}

impl<T: Real> Factor<T> {
    /// Upper bound on `|factor|` over the disc.
    pub fn modulus_bound(&self) -> T {
        match self {
            Self::Blaschke(_) | Self::Singular(_) => T::one(),
            Self::Outer(o) => o.density.k().max_real().exp(),
            Self::Series(s) => s.total_weight(),
        }
    }

    pub fn eval_at(&self, z: &DiscPoint<T>) -> Result<Complex<T>> {
        match self {
            Self::Blaschke(b) => b.eval_at(z),
            Self::Singular(s) => eval_singular_inner(s, z),
            Self::Outer(o) => eval_outer(&o.density, z, &o.quadrature),
            Self::Series(s) => eval_series(s, z, T::zero()).map(|v| v.value),
        }
    }
}

/// `f = B · S · F · Φ₁ ⋯` as an ordered list of factors. The empty product is 1.
#[derive(Clone, Debug, Default)]
pub struct InnerFunctionSpec<T> {
    pub factors: Vec<Factor<T>>,
}

impl<T: Real> InnerFunctionSpec<T> {
    pub fn new(factors: Vec<Factor<T>>) -> Self {
        Self { factors }
    }

    pub fn blaschke(product: BlaschkeProduct<T>) -> Self {
        Self::new(vec![Factor::Blaschke(product)])
    }

    pub fn with(mut self, factor: Factor<T>) -> Self {
        self.factors.push(factor);
        self
    }

    pub fn modulus_bound(&self) -> T {
        self.factors
            .iter()
            .fold(T::one(), |acc, f| acc * f.modulus_bound())
    }

    /// Product of two specs, as in `F = f₁ f₂`.
    pub fn product(mut self, other: Self) -> Self {
        self.factors.extend(other.factors);
        self
    }
}

/// Product of every factor of `spec` at `z`, in stored order.
pub fn eval_inner_outer<T: Real>(
    spec: &InnerFunctionSpec<T>,
    z: &DiscPoint<T>,
) -> Result<Complex<T>> {
    let mut acc = Complex::new(T::one(), T::zero());
    for f in &spec.factors {
        acc = acc * f.eval_at(z)?;
    }
    Ok(acc)
}

impl<T: Real> DiscFunction<T> for InnerFunctionSpec<T> {
    fn eval_at(&self, z: &DiscPoint<T>) -> Result<Complex<T>> {
        eval_inner_outer(self, z)
    }
}
