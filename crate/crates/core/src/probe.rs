//! Boundary scans, radial traces and multi-path limit probes.
//!
//! Samples are always assembled in index order before any statistic is
//! formed, so results do not depend on how rayon schedules the work.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::function::DiscFunction;
use crate::point::DiscPoint;
use crate::scalar::{normalize_angle, Real};
use crate::unitdisc::ZeroSequence;

/// Oscillation below which a path is declared to have a limit.
pub const DEFAULT_VERDICT_TOLERANCE: f64 = 1e-4;

/// Number of trailing samples forming the late window.
pub const LATE_WINDOW: usize = 32;

/// Deepest default radius `1 - 2^{-40}`.
pub const DEFAULT_MAX_EXPONENT: u32 = 40;

/// Uniform samples of a function on the circle of radius `r`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryScan<T> {
    pub r: T,
    pub delta: T,
    pub angles: Vec<T>,
    pub values: Vec<Complex<T>>,
    pub min_modulus: T,
    pub max_modulus: T,
    pub mean_modulus: T,
    /// Fraction of samples with modulus above `1 - delta`.
    pub fraction_above: T,
}

/// Samples `f(r e^{iθ_j})` at `θ_j = 2πj/angle_count`.
pub fn boundary_scan<T: Real, F: DiscFunction<T> + ?Sized>(
    f: &F,
    r: T,
    angle_count: usize,
    delta: T,
) -> Result<BoundaryScan<T>> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(invalid("r", format!("{r} not in [0, 1)")));
    }
    if angle_count == 0 {
        return Err(invalid("angles", "need at least one angle"));
    }
    if !(delta > T::zero()) {
        return Err(invalid("delta", "must be positive"));
    }
    let step = T::TAU() / T::from_count(angle_count);
    let angles: Vec<T> = (0..angle_count).map(|j| T::from_count(j) * step).collect();
    let values = angles
        .par_iter()
        .map(|&t| f.eval_at(&DiscPoint::from_polar(r, t)?))
        .collect::<Result<Vec<_>>>()?;

    let moduli: Vec<T> = values.iter().map(|v| v.norm()).collect();
    let min_modulus = moduli.iter().copied().fold(T::infinity(), T::min);
    let max_modulus = moduli.iter().copied().fold(T::neg_infinity(), T::max);
    let n = T::from_count(angle_count);
    let mean_modulus = moduli.iter().copied().sum::<T>() / n;
    let above = moduli.iter().filter(|&&m| m > T::one() - delta).count();
    Ok(BoundaryScan {
        r,
        delta,
        angles,
        values,
        min_modulus,
        max_modulus,
        mean_modulus,
        fraction_above: T::from_count(above) / n,
    })
}

/// Radii `1 - 2^{-n}` for `n = 1..=max_exponent`.
pub fn dyadic_radii<T: Real>(max_exponent: u32) -> Vec<T> {
    dyadic_depths(max_exponent, 1)
        .into_iter()
        .map(|d| T::one() - d)
        .collect()
}

/// Depths `2^{-k/per_octave}`, `k = 1..=max_exponent*per_octave`.
pub fn dyadic_depths<T: Real>(max_exponent: u32, per_octave: u32) -> Vec<T> {
    let per = per_octave.max(1);
    (1..=max_exponent * per)
        .map(|k| T::lit(2.0).powf(-T::from_count(k as usize) / T::from_count(per as usize)))
        .collect()
}

/// `count` depths decreasing geometrically from `from` to `to`.
pub fn geometric_depths<T: Real>(from: T, to: T, count: usize) -> Result<Vec<T>> {
    if !(from > to && to > T::zero() && from <= T::one()) || count < 2 {
        return Err(invalid(
            "depths",
            "need 1 >= from > to > 0 and at least two samples",
        ));
    }
    let ratio = (to / from).powf(T::one() / T::from_count(count - 1));
    Ok((0..count)
        .map(|k| {
            if k == count - 1 {
                to
            } else {
                from * ratio.powi(k as i32)
            }
        })
        .collect())
}

/// Max pairwise distance over a set of samples.
pub fn diameter<T: Real>(values: &[Complex<T>]) -> T {
    let mut best = T::zero();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            best = best.max((values[i] - values[j]).norm());
        }
    }
    best
}

fn window<T>(values: &[T]) -> &[T] {
    &values[values.len().saturating_sub(LATE_WINDOW)..]
}

fn mean<T: Real>(values: &[Complex<T>]) -> Complex<T> {
    let n = T::from_count(values.len().max(1));
    values
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, v| acc + v)
        / n
}

/// Samples along the ray at `angle`.
#[derive(Clone, Debug, Serialize)]
pub struct RadialTrace<T> {
    pub angle: T,
    pub radii: Vec<T>,
    pub values: Vec<Complex<T>>,
    /// Mean of the late window, present only when the oscillation is below tolerance.
    pub limit_estimate: Option<Complex<T>>,
    /// Max pairwise distance over the last `min(32, len)` samples.
    pub oscillation: T,
}

pub fn radial_trace<T: Real, F: DiscFunction<T> + ?Sized>(
    f: &F,
    angle: T,
    radii: &[T],
    verdict_tolerance: T,
) -> Result<RadialTrace<T>> {
    if radii.is_empty() {
        return Err(invalid("radii", "empty schedule"));
    }
    for (k, &r) in radii.iter().enumerate() {
        if !(r >= T::zero() && r < T::one()) {
            return Err(invalid("radii", format!("radius {r} not in [0, 1)")));
        }
        if k > 0 && !(r > radii[k - 1]) {
            return Err(invalid("radii", "schedule must be strictly increasing"));
        }
    }
    let values = radii
        .par_iter()
        .map(|&r| f.eval_at(&DiscPoint::from_polar(r, angle)?))
        .collect::<Result<Vec<_>>>()?;
    let late = window(&values);
    let oscillation = diameter(late);
    let limit_estimate = (oscillation < verdict_tolerance).then(|| mean(late));
    Ok(RadialTrace {
        angle,
        radii: radii.to_vec(),
        values,
        limit_estimate,
        oscillation,
    })
}

/// A path ending at `e^{iθ}`: at depth `s` it sits at angle `θ + offset(s)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ApproachPath<T> {
    Radial,
    /// `offset(s) = offset·s^exponent`; `exponent < 1` approaches
    /// tangentially, `exponent >= 1` inside a Stolz angle.
    Curve {
        offset: T,
        exponent: T,
    },
    /// Through `(depth, offset)` nodes with strictly decreasing depths, linear
    /// in `ln s` between nodes, constant above the first node, and shrinking
    /// like `s` below the last one so the path still ends at `e^{iθ}`.
    Polyline {
        nodes: Vec<(T, T)>,
    },
}

impl<T: Real> ApproachPath<T> {
    pub fn is_tangential(&self) -> bool {
        match self {
            Self::Radial => false,
            Self::Curve { offset, exponent } => *offset != T::zero() && *exponent < T::one(),
            Self::Polyline { nodes } => nodes.iter().any(|&(d, o)| o.abs() > d),
        }
    }

    /// Path through the zero nearest to `e^{i angle}` at each distinct depth
    /// level of `zeros` that is at most `max_depth`, deepest levels last.
    ///
    /// The cluster set at a point of the accumulation set contains 0, and
    /// this is the path along which that value is approached.
    pub fn through_nearest_zeros(zeros: &ZeroSequence<T>, angle: T, max_depth: T) -> Result<Self> {
        let mut nodes: Vec<(T, T)> = Vec::new();
        for z in zeros.zeros() {
            let d = z.depth();
            if d > max_depth || d == T::zero() {
                continue;
            }
            let mut off = normalize_angle(z.angle() - angle);
            if off > T::PI() {
                off = off - T::TAU();
            }
            match nodes.iter_mut().find(|n| n.0 == d) {
                Some(n) if off.abs() < n.1.abs() => n.1 = off,
                Some(_) => {}
                None => nodes.push((d, off)),
            }
        }
        if nodes.is_empty() {
            return Err(invalid("zeros", "no zero at or below the requested depth"));
        }
        nodes.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite depths"));
        Ok(Self::Polyline { nodes })
    }

    fn offset(&self, depth: T) -> T {
        match self {
            Self::Radial => T::zero(),
            Self::Curve { offset, exponent } => *offset * depth.powf(*exponent),
            Self::Polyline { nodes } => {
                let (first, last) = (nodes[0], nodes[nodes.len() - 1]);
                if depth >= first.0 {
                    return first.1;
                }
                if depth <= last.0 {
                    return last.1 * depth / last.0;
                }
                let k = nodes.partition_point(|n| n.0 > depth);
                let (hi, lo) = (nodes[k - 1], nodes[k]);
                if lo.0 == depth {
                    return lo.1;
                }
                let t = (hi.0.ln() - depth.ln()) / (hi.0.ln() - lo.0.ln());
                hi.1 + (lo.1 - hi.1) * t
            }
        }
    }

    pub fn point(&self, angle: T, depth: T) -> Result<DiscPoint<T>> {
        DiscPoint::new(depth, angle + self.offset(depth))
    }

    pub fn descriptor(&self) -> String {
        match self {
            Self::Radial => "radial".to_string(),
            Self::Curve { offset, exponent } => {
                format!("curve(offset={offset},exponent={exponent})")
            }
            Self::Polyline { nodes } => format!("polyline(nodes={})", nodes.len()),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Self::Polyline { nodes } = self {
            if nodes.is_empty() {
                return Err(invalid("paths", "polyline needs at least one node"));
            }
            for (k, &(d, o)) in nodes.iter().enumerate() {
                if !(d > T::zero() && d <= T::one() && o.is_finite()) {
                    return Err(invalid("paths", "polyline node out of range"));
                }
                if k > 0 && !(d < nodes[k - 1].0) {
                    return Err(invalid("paths", "polyline depths must decrease strictly"));
                }
            }
        }
        Ok(())
    }
}

/// Paths and the shared depth schedule (decreasing toward 0) sampled along each.
#[derive(Clone, Debug)]
pub struct PathFamily<T> {
    pub paths: Vec<ApproachPath<T>>,
    pub depths: Vec<T>,
}

impl<T: Real> PathFamily<T> {
    /// Radial, one Stolz-angle curve and two tangential curves on `depths`.
    pub fn standard(depths: Vec<T>) -> Self {
        let half = T::lit(0.5);
        Self {
            paths: vec![
                ApproachPath::Radial,
                ApproachPath::Curve {
                    offset: T::one(),
                    exponent: T::one(),
                },
                ApproachPath::Curve {
                    offset: T::one(),
                    exponent: half,
                },
                ApproachPath::Curve {
                    offset: -T::one(),
                    exponent: half,
                },
            ],
            depths,
        }
    }

    /// Standard family on depths `2^{-n}`, `n = 1..=96`.
    pub fn default_family() -> Self {
        Self::standard(dyadic_depths(96, 1))
    }

    fn validate(&self) -> Result<()> {
        if !self.paths.contains(&ApproachPath::Radial) {
            return Err(invalid("paths", "family must include the radial path"));
        }
        if self.paths.iter().filter(|p| p.is_tangential()).count() < 2 {
            return Err(invalid("paths", "need at least two tangential paths"));
        }
        for p in &self.paths {
            p.validate()?;
        }
        if self.depths.is_empty() {
            return Err(invalid("depths", "empty schedule"));
        }
        for (k, &d) in self.depths.iter().enumerate() {
            if !(d > T::zero() && d <= T::one()) {
                return Err(invalid("depths", format!("{d} not in (0, 1]")));
            }
            if k > 0 && !(d < self.depths[k - 1]) {
                return Err(invalid("depths", "must decrease strictly"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PathLimit<T> {
    pub path: String,
    /// Mean of the late window.
    pub estimate: Complex<T>,
    pub oscillation: T,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitProbeReport<T> {
    pub angle: T,
    pub path_limits: Vec<PathLimit<T>>,
    /// Max pairwise distance among late-window samples of all paths.
    pub cluster_diameter_estimate: T,
    /// Radial oscillation below `verdict_tolerance`; a verdict at tolerance only.
    pub radial_exists: bool,
    pub verdict_tolerance: T,
}

/// Samples `f` along each path of `family` toward `e^{i angle}`.
pub fn limit_probe<T: Real, F: DiscFunction<T> + ?Sized>(
    f: &F,
    angle: T,
    family: &PathFamily<T>,
    verdict_tolerance: T,
) -> Result<LimitProbeReport<T>> {
    family.validate()?;
    let samples = family
        .paths
        .par_iter()
        .map(|path| {
            family
                .depths
                .iter()
                .map(|&d| f.eval_at(&path.point(angle, d)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pooled = Vec::new();
    let mut path_limits = Vec::with_capacity(family.paths.len());
    let mut radial_exists = false;
    for (path, values) in family.paths.iter().zip(&samples) {
        let late = window(values);
        let oscillation = diameter(late);
        if *path == ApproachPath::Radial {
            radial_exists = oscillation < verdict_tolerance;
        }
        path_limits.push(PathLimit {
            path: path.descriptor(),
            estimate: mean(late),
            oscillation,
        });
        pooled.extend_from_slice(late);
    }
    Ok(LimitProbeReport {
        angle,
        path_limits,
        cluster_diameter_estimate: diameter(&pooled),
        radial_exists,
        verdict_tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::{BlaschkeProduct, Truncation};
    use crate::unitdisc::{gen_accumulation_sequence, gen_radial_sequence, ClosedSetSpec};

    fn single(a: f64) -> BlaschkeProduct<f64> {
        BlaschkeProduct::new(ZeroSequence::from_complex(&[Complex::new(a, 0.0)]).unwrap())
    }

    #[test]
    fn scan_single_angle() {
        let p = single(0.5);
        let s = boundary_scan(&p, 0.3, 1, 0.05).unwrap();
        assert_eq!(s.values.len(), 1);
        let m = s.values[0].norm();
        assert_eq!(s.min_modulus, m);
        assert_eq!(s.max_modulus, m);
        assert_eq!(s.mean_modulus, m);
    }

    #[test]
    fn scan_finite_product_respects_maximum_modulus() {
        let zs = ZeroSequence::from_complex(&[
            Complex::new(0.5, 0.1),
            Complex::new(-0.3, 0.8),
            Complex::new(0.0, -0.95),
        ])
        .unwrap();
        let p = BlaschkeProduct::new(zs);
        let s = boundary_scan(&p, 0.999999, 512, 0.05).unwrap();
        assert!(s.max_modulus <= 1.0 + 1e-12);
    }

    #[test]
    fn scan_rejects_bad_input() {
        let p = single(0.5);
        assert!(boundary_scan(&p, 1.0, 8, 0.05).is_err());
        assert!(boundary_scan(&p, 0.5, 0, 0.05).is_err());
    }

    #[test]
    fn coarse_default_schedule_reaches_back_too_far_for_a_verdict() {
        let p = single(0.5);
        let t = radial_trace(&p, 0.0, &dyadic_radii(40), 1e-4).unwrap();
        assert!(t.limit_estimate.is_none());
        assert!(t.oscillation < 1e-2);
    }

    #[test]
    fn trace_of_single_factor_tends_to_minus_one() {
        let p = single(0.5);
        // Four samples per octave so the late window starts deep enough
        // (r = 1 - 2^-32) for the 1e-4 verdict.
        let radii: Vec<f64> = dyadic_depths::<f64>(40, 4)
            .into_iter()
            .map(|d| 1.0 - d)
            .collect();
        let t = radial_trace(&p, 0.0, &radii, 1e-4).unwrap();
        let lim = t.limit_estimate.expect("limit at tolerance");
        assert!((lim + Complex::new(1.0, 0.0)).norm() < 1e-6);
        assert!(t.oscillation < 1e-6);
    }

    #[test]
    fn trace_through_radial_zeros_keeps_oscillating() {
        let p = BlaschkeProduct::new(gen_radial_sequence(0.0, 0.5, 40).unwrap())
            .with_truncation(Truncation::Full)
            .unwrap();
        let radii: Vec<f64> = dyadic_depths::<f64>(36, 2)
            .into_iter()
            .map(|d| 1.0 - d)
            .collect();
        let t = radial_trace(&p, 0.0, &radii, 1e-4).unwrap();
        // every second sample sits exactly on a zero
        for (r, v) in t.radii.iter().zip(&t.values).skip(1).step_by(2) {
            assert!(v.norm() < 1e-12, "r = {r}, |B| = {}", v.norm());
        }
        // Between consecutive zeros |B| settles near 1.6e-3 rather than 0.
        assert!(t.oscillation > 1e-3);
        assert!(t.limit_estimate.is_none());
    }

    #[test]
    fn trace_rejects_unsorted_radii() {
        let p = single(0.5);
        assert!(radial_trace(&p, 0.0, &[0.5, 0.4], 1e-4).is_err());
        assert!(radial_trace(&p, 0.0, &[0.5, 1.0], 1e-4).is_err());
    }

    #[test]
    fn family_needs_tangential_paths() {
        let mut fam = PathFamily::<f64>::default_family();
        fam.paths.truncate(3);
        assert!(limit_probe(&single(0.5), 0.0, &fam, 1e-4).is_err());
    }

    #[test]
    fn finite_product_paths_agree() {
        let zs =
            ZeroSequence::from_complex(&[Complex::new(0.5, 0.0), Complex::new(0.0, 0.3)]).unwrap();
        let p = BlaschkeProduct::new(zs)
            .with_truncation(Truncation::Full)
            .unwrap();
        let report = limit_probe(&p, 0.7f64, &PathFamily::default_family(), 1e-4).unwrap();
        assert!(report.cluster_diameter_estimate < 1e-6);
        assert!(report.radial_exists);
        for pl in &report.path_limits {
            assert!((pl.estimate.norm() - 1.0).abs() < 0.01);
        }
    }

    #[test]
    fn geometric_schedule_endpoints() {
        let d = geometric_depths(0.5_f64, 1e-6, 10).unwrap();
        assert_eq!(d[0], 0.5);
        assert_eq!(d[9], 1e-6);
        assert!(d.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn polyline_interpolates_in_log_depth() {
        let path = ApproachPath::Polyline {
            nodes: vec![(0.1f64, 0.2), (0.001, -0.4)],
        };
        assert_eq!(path.offset(0.5), 0.2);
        assert_eq!(path.offset(0.1), 0.2);
        assert_eq!(path.offset(0.001), -0.4);
        assert!((path.offset(0.01) - (-0.1)).abs() < 1e-12);
        assert!((path.offset(0.0001) - (-0.04)).abs() < 1e-15);
        assert!(path.is_tangential());
        let bad = PathFamily {
            paths: vec![
                ApproachPath::Radial,
                ApproachPath::Polyline {
                    nodes: vec![(0.1, 0.2), (0.2, 0.1)],
                },
                ApproachPath::Polyline {
                    nodes: vec![(0.1, 0.2)],
                },
            ],
            depths: vec![0.5, 0.1],
        };
        assert!(limit_probe(&single(0.5), 0.0, &bad, 1e-4).is_err());
    }

    #[test]
    fn zero_threading_path_hits_zeros() {
        let zeros = gen_accumulation_sequence(&ClosedSetSpec::<f64>::circle(), 8).unwrap();
        let path = ApproachPath::through_nearest_zeros(&zeros, 1.0, 0.05).unwrap();
        let ApproachPath::Polyline { nodes } = &path else {
            panic!("expected polyline")
        };
        // levels 3..=8 have depth at most 0.05
        assert_eq!(nodes.len(), 6);
        let b = BlaschkeProduct::new(zeros)
            .with_truncation(Truncation::Full)
            .unwrap();
        for &(d, _) in nodes {
            let v = b.eval_at(&path.point(1.0, d).unwrap()).unwrap();
            assert!(v.norm() < 1e-9, "depth {d}: {}", v.norm());
        }
        let radial = gen_radial_sequence(0.0, 0.5, 10).unwrap();
        let along = ApproachPath::through_nearest_zeros(&radial, 0.0, 1.0).unwrap();
        assert!(!along.is_tangential());
        assert!(ApproachPath::through_nearest_zeros(&radial, 0.0, 1e-9).is_err());
    }
}
