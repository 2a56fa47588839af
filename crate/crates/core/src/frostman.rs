//! Partial sums `f_n(θ) = Σ_{k<=n} (1-|a_k|)/|e^{iθ} - a_k|` and their
//! divergence classification over the circle.
//!
//! Divergence cannot be certified from a finite prefix, so every verdict is
//! relative to an explicit [`FrostmanPolicy`] and `Undecided` is a valid answer.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::point::DiscPoint;
use crate::scalar::Real;
use crate::unitdisc::ZeroSequence;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrostmanPolicy<T> {
    /// `f_n` at or above this is divergent.
    pub divergence_threshold: T,
    /// Number of trailing schedule steps the convergence test spans.
    pub growth_window: usize,
    /// Growth over the window below this is convergent.
    pub cauchy_tolerance: T,
}

impl<T: Real> Default for FrostmanPolicy<T> {
    fn default() -> Self {
        Self {
            divergence_threshold: T::lit(1e3),
            growth_window: 4,
            cauchy_tolerance: T::lit(1e-6),
        }
    }
}

impl<T: Real> FrostmanPolicy<T> {
    fn validate(&self) -> Result<()> {
        if !(self.divergence_threshold > T::zero()) {
            return Err(invalid("divergence_threshold", "must be positive"));
        }
        if self.growth_window == 0 {
            return Err(invalid("growth_window", "must be positive"));
        }
        if !(self.cauchy_tolerance > T::zero()) {
            return Err(invalid("cauchy_tolerance", "must be positive"));
        }
        Ok(())
    }

    /// Applies the policy to partial sums taken at an increasing prefix schedule.
    pub fn classify(&self, sums: &[T]) -> FrostmanVerdict {
        let Some(&last) = sums.last() else {
            return FrostmanVerdict::Convergent;
        };
        if last >= self.divergence_threshold {
            return FrostmanVerdict::Divergent;
        }
        let base = if sums.len() > self.growth_window {
            sums[sums.len() - 1 - self.growth_window]
        } else {
            T::zero()
        };
        if last - base < self.cauchy_tolerance {
            FrostmanVerdict::Convergent
        } else {
            FrostmanVerdict::Undecided
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrostmanVerdict {
    Convergent,
    Divergent,
    Undecided,
}

impl FrostmanVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Convergent => "convergent",
            Self::Divergent => "divergent",
            Self::Undecided => "undecided",
        }
    }
}

#[inline]
fn term<T: Real>(zero: &DiscPoint<T>, theta: T) -> T {
    zero.depth() / zero.chord(theta)
}

/// `f_n(θ)` over the first `n` stored zeros.
pub fn frostman_partial<T: Real>(zeros: &ZeroSequence<T>, theta: T, n: usize) -> Result<T> {
    if n > zeros.len() {
        return Err(Error::InsufficientPrefix {
            requested: n,
            stored: zeros.len(),
        });
    }
    Ok(zeros.zeros()[..n].iter().map(|a| term(a, theta)).sum())
}

/// Powers of two below `len`, followed by `len` itself.
pub fn prefix_schedule(len: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |&n| n.checked_mul(2))
        .take_while(|&n| n < len)
        .collect();
    if len > 0 {
        out.push(len);
    }
    out
}

fn sums_at<T: Real>(zeros: &ZeroSequence<T>, theta: T, schedule: &[usize]) -> Vec<T> {
    let mut out = Vec::with_capacity(schedule.len());
    let mut acc = T::zero();
    let mut k = 0;
    for &n in schedule {
        for a in &zeros.zeros()[k..n] {
            acc = acc + term(a, theta);
        }
        k = n;
        out.push(acc);
    }
    out
}

fn check_schedule(schedule: &[usize], len: usize) -> Result<()> {
    for (i, &n) in schedule.iter().enumerate() {
        if n > len {
            return Err(Error::InsufficientPrefix {
                requested: n,
                stored: len,
            });
        }
        if i > 0 && n <= schedule[i - 1] {
            return Err(invalid("prefix_schedule", "must increase strictly"));
        }
    }
    Ok(())
}

/// Classifies `θ` using the default power-of-two schedule over the stored prefix.
pub fn frostman_classify<T: Real>(
    zeros: &ZeroSequence<T>,
    theta: T,
    policy: &FrostmanPolicy<T>,
) -> Result<FrostmanVerdict> {
    policy.validate()?;
    let schedule = prefix_schedule(zeros.len());
    Ok(policy.classify(&sums_at(zeros, theta, &schedule)))
}

#[derive(Clone, Debug, Serialize)]
pub struct FrostmanProfile<T> {
    pub angles: Vec<T>,
    pub schedule: Vec<usize>,
    /// `partial_sums[j][i] = f_{schedule[i]}(angles[j])`.
    pub partial_sums: Vec<Vec<T>>,
    pub classification: Vec<FrostmanVerdict>,
    pub policy: FrostmanPolicy<T>,
    /// Fraction of grid angles classified divergent.
    pub divergent_fraction: T,
}

/// Partial sums and verdicts on the uniform grid of `angle_count` angles.
pub fn frostman_profile<T: Real>(
    zeros: &ZeroSequence<T>,
    angle_count: usize,
    schedule: Option<&[usize]>,
    policy: &FrostmanPolicy<T>,
) -> Result<FrostmanProfile<T>> {
    if angle_count < 8 {
        return Err(invalid("angles", "need at least 8 angles"));
    }
    policy.validate()?;
    let schedule = match schedule {
        Some(s) => {
            check_schedule(s, zeros.len())?;
            s.to_vec()
        }
        None => prefix_schedule(zeros.len()),
    };
    let step = T::TAU() / T::from_count(angle_count);
    let angles: Vec<T> = (0..angle_count).map(|j| T::from_count(j) * step).collect();
    let partial_sums: Vec<Vec<T>> = angles
        .par_iter()
        .map(|&t| sums_at(zeros, t, &schedule))
        .collect();
    let classification: Vec<FrostmanVerdict> =
        partial_sums.iter().map(|s| policy.classify(s)).collect();
    let divergent = classification
        .iter()
        .filter(|&&v| v == FrostmanVerdict::Divergent)
        .count();
    Ok(FrostmanProfile {
        angles,
        schedule,
        partial_sums,
        classification,
        policy: *policy,
        divergent_fraction: T::from_count(divergent) / T::from_count(angle_count),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitdisc::gen_radial_sequence;
    use std::f64::consts::PI;

    #[test]
    fn radial_zeros_sum_to_n_at_their_angle() {
        // Depths reach 2^-1074, the smallest subnormal.
        let zeros = gen_radial_sequence(0.0, 0.5, 1074).unwrap();
        for n in [0, 1, 7, 100, 600, 1074] {
            assert_eq!(frostman_partial(&zeros, 0.0, n).unwrap(), n as f64);
        }
        assert!(frostman_partial(&zeros, 0.0, 1075).is_err());
    }

    #[test]
    fn three_term_sum_opposite_side() {
        let zeros = gen_radial_sequence(0.0, 0.5, 10).unwrap();
        // 1/3 + 1/7 + 1/15
        let want = 19.0 / 35.0;
        assert!((frostman_partial(&zeros, PI, 3).unwrap() - want).abs() < 1e-15);
        assert!(frostman_partial(&zeros, PI, 10).unwrap() < 1.0);
    }

    #[test]
    fn classification_examples() {
        let zeros = gen_radial_sequence(0.0, 0.5, 100).unwrap();
        let policy = FrostmanPolicy {
            divergence_threshold: 100.0,
            ..FrostmanPolicy::default()
        };
        assert_eq!(
            frostman_classify(&zeros, 0.0, &policy).unwrap(),
            FrostmanVerdict::Divergent
        );
        let long = gen_radial_sequence(0.0, 0.5, 1024).unwrap();
        assert_eq!(
            frostman_classify(&long, PI, &FrostmanPolicy::default()).unwrap(),
            FrostmanVerdict::Convergent
        );
    }

    #[test]
    fn empty_profile_is_convergent() {
        let zeros = ZeroSequence::<f64>::empty();
        let p = frostman_profile(&zeros, 16, None, &FrostmanPolicy::default()).unwrap();
        assert!(p
            .classification
            .iter()
            .all(|&v| v == FrostmanVerdict::Convergent));
        assert!(p.partial_sums.iter().all(|s| s.iter().all(|&x| x == 0.0)));
        assert_eq!(p.divergent_fraction, 0.0);
    }

    #[test]
    fn profile_rejects_small_grids_and_bad_schedules() {
        let zeros = gen_radial_sequence(0.0, 0.5, 10).unwrap();
        let pol = FrostmanPolicy::default();
        assert!(frostman_profile(&zeros, 4, None, &pol).is_err());
        assert!(frostman_profile(&zeros, 8, Some(&[2, 2]), &pol).is_err());
        assert!(frostman_profile(&zeros, 8, Some(&[2, 11]), &pol).is_err());
    }

    #[test]
    fn schedule_is_dyadic() {
        assert_eq!(prefix_schedule(0), Vec::<usize>::new());
        assert_eq!(prefix_schedule(1), vec![1]);
        assert_eq!(prefix_schedule(8), vec![1, 2, 4, 8]);
        assert_eq!(prefix_schedule(10), vec![1, 2, 4, 8, 10]);
    }
}
