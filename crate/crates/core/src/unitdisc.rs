//! Zero sequences in the open unit disc and target closed sets on the circle.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::point::DiscPoint;
use crate::scalar::{circular_distance, normalize_angle, CompensatedSum, Real};

/// Upper bound on the number of zeros a generator may materialize.
pub const MAX_GENERATED_ZEROS: u128 = 1_000_000;

/// Deepest Cantor construction level accepted.
pub const MAX_CANTOR_LEVEL: u32 = 20;

/// Where a zero sequence came from; generated sequences know their infinite extension.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceSource<T> {
    Explicit,
    Radial {
        angle: T,
        rate: T,
    },
    Accumulation {
        target: ClosedSetSpec<T>,
        depth: usize,
    },
}

/// How the convergence verdict on the infinite extension was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvergenceBasis {
    /// The generator guarantees Σ(1-|a_k|) < ∞.
    Guaranteed,
    /// Dyadic block-ratio test on the stored terms; evidence only.
    Heuristic,
}

/// Materialized prefix of a zero sequence `{a_k}` with cached Blaschke mass.
#[derive(Clone, Debug)]
pub struct ZeroSequence<T> {
    zeros: Vec<DiscPoint<T>>,
    // suffix[n] = Σ_{k>n} (1-|a_k|) over the stored zeros
    suffix: Vec<T>,
    blaschke_sum: T,
    convergent: bool,
    unstored_mass: T,
    source: SequenceSource<T>,
}

impl<T: Real> ZeroSequence<T> {
    /// Finite list of zeros. Every zero must lie in the open disc.
    pub fn from_points(zeros: Vec<DiscPoint<T>>) -> Result<Self> {
        for (index, z) in zeros.iter().enumerate() {
            if !z.is_interior() {
                return Err(Error::ZeroOutsideDisc {
                    index,
                    modulus: z.radius().to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self::assemble(zeros, T::zero(), SequenceSource::Explicit))
    }

    pub fn from_complex(zeros: &[Complex<T>]) -> Result<Self> {
        let mut points = Vec::with_capacity(zeros.len());
        for (index, &a) in zeros.iter().enumerate() {
            let modulus = a.norm();
            if !(modulus < T::one()) {
                return Err(Error::ZeroOutsideDisc {
                    index,
                    modulus: modulus.to_f64().unwrap_or(f64::NAN),
                });
            }
            points.push(DiscPoint::from_complex(a)?);
        }
        Self::from_points(points)
    }

    pub fn empty() -> Self {
        Self::assemble(Vec::new(), T::zero(), SequenceSource::Explicit)
    }

    fn assemble(zeros: Vec<DiscPoint<T>>, unstored_mass: T, source: SequenceSource<T>) -> Self {
        let mut suffix = vec![T::zero(); zeros.len() + 1];
        let mut acc = CompensatedSum::new();
        for k in (0..zeros.len()).rev() {
            acc.add(zeros[k].depth());
            suffix[k] = acc.value();
        }
        let mut forward = CompensatedSum::new();
        for z in &zeros {
            forward.add(z.depth());
        }
        Self {
            blaschke_sum: forward.value(),
            zeros,
            suffix,
            convergent: true,
            unstored_mass,
            source,
        }
    }

    pub fn zeros(&self) -> &[DiscPoint<T>] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Σ(1-|a_k|) over the stored zeros.
    pub fn blaschke_sum(&self) -> T {
        self.blaschke_sum
    }

    /// True when the sequence, including its infinite extension, is known to
    /// satisfy the Blaschke condition. Finite explicit lists always do.
    pub fn convergent(&self) -> bool {
        self.convergent
    }

    /// Bound on Σ(1-|a_k|) over zeros beyond the stored prefix.
    pub fn unstored_mass(&self) -> T {
        self.unstored_mass
    }

    /// Σ_{k>n}(1-|a_k|) over stored zeros plus the unstored bound.
    pub fn tail_mass(&self, n: usize) -> T {
        self.suffix[n.min(self.zeros.len())] + self.unstored_mass
    }

    pub fn source(&self) -> &SequenceSource<T> {
        &self.source
    }

    pub fn to_complex(&self) -> Vec<Complex<T>> {
        self.zeros.iter().map(DiscPoint::to_complex).collect()
    }

    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n > self.len() {
            return Err(Error::InsufficientPrefix {
                requested: n,
                stored: self.len(),
            });
        }
        let unstored = self.tail_mass(n);
        let mut out = Self::assemble(self.zeros[..n].to_vec(), unstored, self.source.clone());
        out.convergent = self.convergent;
        Ok(out)
    }
}

/// Blaschke mass of a stored prefix and the convergence verdict for its extension.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct BlaschkeCondition<T> {
    pub sum: T,
    pub convergent: bool,
    pub basis: ConvergenceBasis,
}

/// Σ(1-|a_k|) over the prefix; the verdict is the generator's guarantee when
/// there is one and the dyadic block test otherwise.
pub fn blaschke_condition_sum<T: Real>(zeros: &ZeroSequence<T>) -> BlaschkeCondition<T> {
    match zeros.source {
        SequenceSource::Explicit => BlaschkeCondition {
            sum: zeros.blaschke_sum,
            convergent: heuristic_tail_convergent(&zeros.zeros),
            basis: ConvergenceBasis::Heuristic,
        },
        _ => BlaschkeCondition {
            sum: zeros.blaschke_sum,
            convergent: zeros.convergent,
            basis: ConvergenceBasis::Guaranteed,
        },
    }
}

/// Compares the mass of the last dyadic block `(n/2, n]` with the one before
/// it. A convergent tail shrinks from block to block; a harmonic one does not.
fn heuristic_tail_convergent<T: Real>(zeros: &[DiscPoint<T>]) -> bool {
    let n = zeros.len();
    if n < 16 {
        return true;
    }
    let block = |lo: usize, hi: usize| -> T { zeros[lo..hi].iter().map(|z| z.depth()).sum() };
    let late = block(n / 2, n);
    let early = block(n / 4, n / 2);
    let total = block(0, n);
    if late <= T::lit(1e-12) * total.max(T::min_positive_value()) {
        return true;
    }
    if early == T::zero() {
        return false;
    }
    late / early < T::lit(0.9)
}

/// `a_k = (1 - rate^k) e^{i angle}`, `k = 1..=count`.
pub fn gen_radial_sequence<T: Real>(angle: T, rate: T, count: usize) -> Result<ZeroSequence<T>> {
    if !(rate > T::zero() && rate < T::one()) {
        return Err(invalid("rate", format!("{rate} not in (0, 1)")));
    }
    if count == 0 {
        return Err(invalid("count", "must be at least 1"));
    }
    if count as u128 > MAX_GENERATED_ZEROS {
        return Err(Error::CountOverflow {
            count: count as u128,
            limit: MAX_GENERATED_ZEROS,
        });
    }
    let mut zeros = Vec::with_capacity(count);
    let mut depth = T::one();
    for _ in 0..count {
        depth = depth * rate;
        if depth == T::zero() {
            return Err(invalid("count", "rate^count underflows the scalar type"));
        }
        zeros.push(DiscPoint::new(depth, angle)?);
    }
    let unstored = depth * rate / (T::one() - rate);
    let mut seq = ZeroSequence::assemble(
        zeros,
        unstored,
        SequenceSource::Radial {
            angle: normalize_angle(angle),
            rate,
        },
    );
    seq.convergent = true;
    Ok(seq)
}

/// Number of zeros placed at level `l`: ⌊(3/2)^l⌋, so that at radius
/// `1 - 3^{-l}` the level contributes at most `2^{-l}` Blaschke mass.
pub fn level_population(level: u32) -> u128 {
    if level > 80 {
        return u128::MAX;
    }
    3u128.pow(level) >> level
}

/// Zeros whose accumulation set on the circle is the closure of `target`.
///
/// Level `l = 1..=depth` places `⌊(3/2)^l⌋` zeros (fewer for finite point
/// sets) at radius `1 - 3^{-l}`, spread evenly over the target, so every
/// level adds at most `2^{-l}` to Σ(1-|a_k|).
pub fn gen_accumulation_sequence<T: Real>(
    target: &ClosedSetSpec<T>,
    depth: usize,
) -> Result<ZeroSequence<T>> {
    if depth == 0 {
        return Err(invalid("depth", "must be at least 1"));
    }
    let levels: Vec<u32> = (1..=depth as u32).collect();
    let per_level: Vec<u128> = match target {
        ClosedSetSpec::FinitePoints(points) => levels
            .iter()
            .map(|&l| level_population(l).max(1).min(points.len() as u128))
            .collect(),
        _ => levels.iter().map(|&l| level_population(l).max(1)).collect(),
    };
    let total = per_level
        .iter()
        .fold(0u128, |acc, &n| acc.saturating_add(n));
    if total > MAX_GENERATED_ZEROS {
        return Err(Error::CountOverflow {
            count: total,
            limit: MAX_GENERATED_ZEROS,
        });
    }

    let arcs = target.arcs_list();
    let arc_length: T = arcs.iter().map(|a| a.length).sum();
    let mut zeros = Vec::with_capacity(total as usize);
    let mut rotation = 0usize;
    let third = T::one() / T::lit(3.0);
    for (&level, &count) in levels.iter().zip(&per_level) {
        let d = third.powi(level as i32);
        let count = count as usize;
        match target {
            ClosedSetSpec::FinitePoints(points) => {
                for j in 0..count {
                    let angle = points[(rotation + j) % points.len()];
                    zeros.push(DiscPoint::new(d, angle)?);
                }
                rotation = (rotation + count) % points.len();
            }
            _ => {
                let step = arc_length / T::from_count(count);
                for j in 0..count {
                    let s = (T::from_count(j) + T::lit(0.5)) * step;
                    zeros.push(DiscPoint::new(d, locate_on_arcs(&arcs, s))?);
                }
            }
        }
    }

    let mut unstored = T::lit(0.5).powi(depth as i32);
    if let ClosedSetSpec::FinitePoints(points) = target {
        let point_bound = T::from_count(points.len()) * third.powi(depth as i32) / T::lit(2.0);
        unstored = unstored.min(point_bound);
    }
    let mut seq = ZeroSequence::assemble(
        zeros,
        unstored,
        SequenceSource::Accumulation {
            target: target.clone(),
            depth,
        },
    );
    seq.convergent = true;
    Ok(seq)
}

/// Maps arc-length parameter `s` in `[0, Σ lengths)` to an angle on the arc union.
fn locate_on_arcs<T: Real>(arcs: &[CircleArc<T>], s: T) -> T {
    let mut rest = s;
    for arc in arcs {
        if rest <= arc.length {
            return normalize_angle(arc.start + rest);
        }
        rest = rest - arc.length;
    }
    let last = arcs.last().expect("nonempty arc union");
    normalize_angle(last.start + last.length)
}

/// Closed arc `{start + t : 0 <= t <= length}` of the unit circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleArc<T> {
    start: T,
    length: T,
}

impl<T: Real> CircleArc<T> {
    /// Counter-clockwise arc from `start` to `end`. A raw span of `2π` or more is the full circle.
    pub fn new(start: T, end: T) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) {
            return Err(invalid("arcs", "endpoints must be finite"));
        }
        let tau = T::TAU();
        let length = if end - start >= tau {
            tau
        } else {
            normalize_angle(end - start)
        };
        if length <= T::zero() {
            return Err(invalid("arcs", "degenerate arc (use finite-points)"));
        }
        Ok(Self {
            start: normalize_angle(start),
            length,
        })
    }

    pub fn start(&self) -> T {
        self.start
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn end(&self) -> T {
        normalize_angle(self.start + self.length)
    }

    pub fn is_full_circle(&self) -> bool {
        self.length >= T::TAU()
    }

    pub fn contains(&self, theta: T) -> bool {
        self.is_full_circle() || normalize_angle(theta - self.start) <= self.length
    }

    pub fn distance(&self, theta: T) -> T {
        if self.contains(theta) {
            T::zero()
        } else {
            circular_distance(theta, self.start).min(circular_distance(theta, self.end()))
        }
    }

    fn overlaps(&self, other: &Self) -> bool {
        self.contains(other.start) || other.contains(self.start)
    }
}

/// A closed subset of the circle: finitely many points, a disjoint arc
/// union, or the arc union of a finite-level Cantor construction.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedSetSpec<T> {
    FinitePoints(Vec<T>),
    ArcUnion(Vec<CircleArc<T>>),
    Cantor { level: u32, base: CircleArc<T> },
}

impl<T: Real> ClosedSetSpec<T> {
    pub fn points(points: Vec<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("points", "empty point set"));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(invalid("points", "angles must be finite"));
        }
        Ok(Self::FinitePoints(
            points.into_iter().map(normalize_angle).collect(),
        ))
    }

    pub fn arcs(arcs: &[(T, T)]) -> Result<Self> {
        if arcs.is_empty() {
            return Err(invalid("arcs", "empty arc list"));
        }
        let arcs = arcs
            .iter()
            .map(|&(s, e)| CircleArc::new(s, e))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                if arcs[i].overlaps(&arcs[j]) {
                    return Err(invalid("arcs", format!("arcs {i} and {j} intersect")));
                }
            }
        }
        Ok(Self::ArcUnion(arcs))
    }

    pub fn cantor(level: u32, base: (T, T)) -> Result<Self> {
        if level > MAX_CANTOR_LEVEL {
            return Err(invalid(
                "cantor_level",
                format!("{level} exceeds {MAX_CANTOR_LEVEL}"),
            ));
        }
        let base = CircleArc::new(base.0, base.1)?;
        if base.is_full_circle() {
            return Err(invalid("base_arc", "Cantor base must be a proper arc"));
        }
        Ok(Self::Cantor { level, base })
    }

    /// The full circle as a single arc.
    pub fn circle() -> Self {
        Self::ArcUnion(vec![CircleArc {
            start: T::zero(),
            length: T::TAU(),
        }])
    }

    /// The set as closed arcs; empty for finite point sets.
    pub fn arcs_list(&self) -> Vec<CircleArc<T>> {
        match self {
            Self::FinitePoints(_) => Vec::new(),
            Self::ArcUnion(arcs) => arcs.clone(),
            Self::Cantor { level, base } => {
                let mut pieces = vec![(base.start, base.length)];
                let three = T::lit(3.0);
                for _ in 0..*level {
                    pieces = pieces
                        .into_iter()
                        .flat_map(|(s, l)| {
                            let t = l / three;
                            [(s, t), (s + T::lit(2.0) * t, t)]
                        })
                        .collect();
                }
                pieces
                    .into_iter()
                    .map(|(s, l)| CircleArc {
                        start: normalize_angle(s),
                        length: l,
                    })
                    .collect()
            }
        }
    }

    /// Circular distance from `theta` to the set.
    pub fn distance(&self, theta: T) -> T {
        match self {
            Self::FinitePoints(points) => points
                .iter()
                .map(|&p| circular_distance(theta, p))
                .fold(T::infinity(), T::min),
            _ => self
                .arcs_list()
                .iter()
                .map(|a| a.distance(theta))
                .fold(T::infinity(), T::min),
        }
    }
}
