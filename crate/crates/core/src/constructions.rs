//! Weighted series of bounded analytic functions: `Σ B(z, A_i)/i²` and
//! `Σ B_n/2^n` built from zero sequences accumulating on target sets.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blaschke::{BlaschkeProduct, Truncation};
use crate::error::{invalid, Result};
use crate::factorization::{eval_inner_outer, InnerFunctionSpec};
use crate::function::DiscFunction;
use crate::point::DiscPoint;
use crate::scalar::{CompensatedSum, Real};
use crate::unitdisc::{gen_accumulation_sequence, ClosedSetSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightRule {
    /// `1/i²`, total below `π²/6`.
    InverseSquare,
    /// `2^{-n}`, total below 1.
    InversePower2,
    Custom,
}

impl WeightRule {
    pub fn weight<T: Real>(self, index: usize) -> Option<T> {
        let i = T::from_count(index);
        match self {
            Self::InverseSquare => Some(T::one() / (i * i)),
            Self::InversePower2 => Some(T::lit(0.5).powi(index as i32)),
            Self::Custom => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesTerm<T> {
    pub weight: T,
    pub component: InnerFunctionSpec<T>,
}

/// `Φ(z) = Σ weight_i · component_i(z)` over a finite list of terms.
#[derive(Clone, Debug)]
pub struct SeriesSpec<T> {
    terms: Vec<SeriesTerm<T>>,
    weight_rule: WeightRule,
    // remaining[i] = Σ_{j>=i} weight_j
    remaining: Vec<T>,
}

impl<T: Real> SeriesSpec<T> {
    pub fn new(terms: Vec<SeriesTerm<T>>, weight_rule: WeightRule) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if !(t.weight > T::zero() && t.weight.is_finite()) {
                return Err(invalid(
                    "weight",
                    format!("term {} has non-positive weight", i + 1),
                ));
            }
            if t.component.modulus_bound() > T::one() + T::lit(1e-12) {
                return Err(invalid(
                    "component",
                    format!("term {} is not bounded by 1 in modulus", i + 1),
                ));
            }
        }
        let mut remaining = vec![T::zero(); terms.len() + 1];
        let mut acc = CompensatedSum::new();
        for i in (0..terms.len()).rev() {
            acc.add(terms[i].weight);
            remaining[i] = acc.value();
        }
        let total = remaining[0];
        let slack = T::lit(1e-12);
        let ok = match weight_rule {
            WeightRule::InverseSquare => total < T::PI() * T::PI() / T::lit(6.0) + slack,
            WeightRule::InversePower2 => total < T::one(),
            WeightRule::Custom => total.is_finite(),
        };
        if !ok {
            return Err(invalid(
                "weights",
                format!("total {total} violates the {weight_rule:?} bound"),
            ));
        }
        Ok(Self {
            terms,
            weight_rule,
            remaining,
        })
    }

    /// Terms weighted by `rule` in order, starting at index 1.
    pub fn from_rule(components: Vec<InnerFunctionSpec<T>>, rule: WeightRule) -> Result<Self> {
        let terms = components
            .into_iter()
            .enumerate()
            .map(|(i, component)| {
                let weight = rule
                    .weight(i + 1)
                    .ok_or_else(|| invalid("weight_rule", "custom rule needs explicit weights"))?;
                Ok(SeriesTerm { weight, component })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms, rule)
    }

    pub fn terms(&self) -> &[SeriesTerm<T>] {
        &self.terms
    }

    pub fn weight_rule(&self) -> WeightRule {
        self.weight_rule
    }

    pub fn total_weight(&self) -> T {
        self.remaining[0]
    }

    /// Σ of weights after the first `n` terms.
    pub fn remaining_weight(&self, n: usize) -> T {
        self.remaining[n.min(self.terms.len())]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue<T> {
    pub value: Complex<T>,
    pub terms_used: usize,
    /// Remaining weight mass; bounds `|Φ - Φ_N|` since every component has modulus <= 1.
    pub tail_bound: T,
}

/// Sums the fewest leading terms whose remaining weight is at most `tol`.
pub fn eval_series<T: Real>(
    spec: &SeriesSpec<T>,
    z: &DiscPoint<T>,
    tol: T,
) -> Result<SeriesValue<T>> {
    if !(tol >= T::zero()) {
        return Err(invalid("tol", "must be nonnegative"));
    }
    let used = (0..=spec.terms.len())
        .find(|&n| spec.remaining[n] <= tol)
        .unwrap_or(spec.terms.len());
    let parts = spec.terms[..used]
        .par_iter()
        .map(|t| eval_inner_outer(&t.component, z).map(|v| v * t.weight))
        .collect::<Result<Vec<_>>>()?;
    let value = parts
        .into_iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, v| acc + v);
    Ok(SeriesValue {
        value,
        terms_used: used,
        tail_bound: spec.remaining[used],
    })
}

impl<T: Real> DiscFunction<T> for SeriesSpec<T> {
    fn eval_at(&self, z: &DiscPoint<T>) -> Result<Complex<T>> {
        eval_series(self, z, T::zero()).map(|v| v.value)
    }
}

fn accumulation_components<T: Real>(
    targets: &[(ClosedSetSpec<T>, usize)],
) -> Result<Vec<InnerFunctionSpec<T>>> {
    if targets.is_empty() {
        return Err(invalid("targets", "need at least one target set"));
    }
    targets
        .par_iter()
        .map(|(target, depth)| {
            let zeros = gen_accumulation_sequence(target, *depth)?;
            let product = BlaschkeProduct::new(zeros).with_truncation(Truncation::Full)?;
            Ok(InnerFunctionSpec::blaschke(product))
        })
        .collect()
}

/// `Σ_i B(z, A_i)/i²`, with `A_i` accumulating on target `i`.
pub fn build_lohwater_piranian<T: Real>(
    targets: &[ClosedSetSpec<T>],
    depth: usize,
) -> Result<SeriesSpec<T>> {
    let with_depths: Vec<_> = targets.iter().map(|t| (t.clone(), depth)).collect();
    build_lohwater_piranian_with_depths(&with_depths)
}

/// As [`build_lohwater_piranian`] with a depth per target.
pub fn build_lohwater_piranian_with_depths<T: Real>(
    targets: &[(ClosedSetSpec<T>, usize)],
) -> Result<SeriesSpec<T>> {
    SeriesSpec::from_rule(accumulation_components(targets)?, WeightRule::InverseSquare)
}

/// `Σ_n B_n/2^n`, with the zeros of `B_n` accumulating on `C_n`.
pub fn build_bgh_sum<T: Real>(targets: &[ClosedSetSpec<T>], depth: usize) -> Result<SeriesSpec<T>> {
    let with_depths: Vec<_> = targets.iter().map(|t| (t.clone(), depth)).collect();
    build_bgh_sum_with_depths(&with_depths)
}

pub fn build_bgh_sum_with_depths<T: Real>(
    targets: &[(ClosedSetSpec<T>, usize)],
) -> Result<SeriesSpec<T>> {
    SeriesSpec::from_rule(accumulation_components(targets)?, WeightRule::InversePower2)
}
