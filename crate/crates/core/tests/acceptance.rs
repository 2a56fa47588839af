//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Reference values come from oracles written here, independent of the
//! library code paths they check.

use std::collections::VecDeque;
use std::f64::consts::{LN_2, PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use boundarylab::arakeljan::{
    classify_holes, fixtures, is_arakeljan, union_check, CellClass, CellMask, GridPlane, ProbeSet,
    Selector,
};
use boundarylab::{
    build_lohwater_piranian, eval_outer, eval_series, frostman_classify, frostman_partial,
    frostman_profile, gen_accumulation_sequence, gen_radial_sequence, limit_probe,
    poisson_integral, ApproachPath, BlaschkeProduct, BoundaryFunction, ClosedForm, ClosedSetSpec,
    Complex64, DiscFunction, DiscPoint, FrostmanPolicy, FrostmanVerdict, OuterDensity, PathFamily,
    Quadrature, SingularAtoms, Truncation, ZeroSequence,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_disc_point(rng: &mut ChaCha8Rng, max_r: f64) -> Complex64 {
    let r = max_r * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..TAU))
}

/// Textbook Cartesian Blaschke product.
fn naive_blaschke(zeros: &[Complex64], z: Complex64) -> Complex64 {
    zeros.iter().fold(Complex64::new(1.0, 0.0), |acc, &a| {
        let unit = if a.norm() == 0.0 {
            Complex64::new(-1.0, 0.0)
        } else {
            a.conj() / a.norm()
        };
        acc * -unit * (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
    })
}

fn finite_product(zeros: &[Complex64]) -> BlaschkeProduct<f64> {
    BlaschkeProduct::new(ZeroSequence::from_complex(zeros).unwrap())
        .with_truncation(Truncation::Full)
        .unwrap()
}

fn unimodular_on_circle() -> Check {
    let mut rng = rng(1);
    let zeros: Vec<Complex64> = (0..20).map(|_| random_disc_point(&mut rng, 0.98)).collect();
    let b = finite_product(&zeros);
    let mut worst: f64 = 0.0;
    let mut worst_vs_naive: f64 = 0.0;
    for j in 0..4096 {
        let theta = TAU * j as f64 / 4096.0;
        let v = b
            .eval_at(&DiscPoint::on_circle(theta))
            .map_err(|e| e.to_string())?;
        worst = worst.max((v.norm() - 1.0).abs());
        let naive = naive_blaschke(&zeros, Complex64::from_polar(1.0, theta));
        worst_vs_naive = worst_vs_naive.max((v - naive).norm());
    }
    ensure(worst < 1e-9, || format!("max ||B|-1| = {worst:e}"))?;
    ensure(worst_vs_naive < 1e-9, || {
        format!("differs from Cartesian formula by {worst_vs_naive:e}")
    })?;
    Ok(format!("max ||B|-1| = {worst:.2e}"))
}

fn center_value() -> Check {
    let mut rng = rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(1..40);
        let zeros: Vec<Complex64> = (0..n).map(|_| random_disc_point(&mut rng, 0.999)).collect();
        let oracle: f64 = zeros.iter().map(|a| a.norm()).product();
        let v = finite_product(&zeros)
            .eval(Complex64::new(0.0, 0.0))
            .map_err(|e| e.to_string())?;
        worst = worst.max((v - oracle).norm() / oracle);
    }
    ensure(worst < 1e-12, || format!("max relative error {worst:e}"))?;
    Ok(format!("max relative error {worst:.2e}"))
}

fn dyadic_zeros(count: usize) -> ZeroSequence<f64> {
    gen_radial_sequence(0.0, 0.5, count).unwrap()
}

fn truncation_bound() -> Check {
    let b = BlaschkeProduct::new(dyadic_zeros(64));
    let mut rng = rng(3);
    let points: Vec<Complex64> = (0..100).map(|_| random_disc_point(&mut rng, 0.9)).collect();
    let mut worst_ratio: f64 = 0.0;
    for n in [8usize, 16, 32] {
        let mass: f64 = (n + 1..=2 * n).map(|k| 0.5f64.powi(k as i32)).sum();
        let bound = (1.0 + 0.9) / (1.0 - 0.9) * mass;
        for &z in &points {
            let p = DiscPoint::from_complex(z).unwrap();
            let diff = (b.eval_partial(2 * n, &p).unwrap() - b.eval_partial(n, &p).unwrap()).norm();
            ensure(diff <= bound, || {
                format!("n = {n}, z = {z}: {diff:e} > {bound:e}")
            })?;
            worst_ratio = worst_ratio.max(diff / bound);
        }
    }
    Ok(format!("largest |B_2n - B_n| / bound = {worst_ratio:.3}"))
}

/// `∏_{k=1}^{200} (1 - 2^-k)` as an exact rational, rounded to f64.
fn exact_dyadic_product() -> f64 {
    let mut num = BigUint::from(1u32);
    for k in 1..=200u32 {
        num *= (BigUint::from(1u32) << k) - 1u32;
    }
    let den_bits: i64 = (1..=200).sum();
    let bits = num.bits() as i64;
    let shift = bits - 64;
    let top: u64 = (&num >> shift as usize).try_into().unwrap();
    top as f64 * 2f64.powi((shift - den_bits) as i32)
}

fn infinite_product_value() -> Check {
    let oracle = exact_dyadic_product();
    ensure((oracle - 0.2887880951).abs() < 1e-10, || {
        format!("oracle {oracle}")
    })?;
    let b = BlaschkeProduct::new(dyadic_zeros(200));
    let t = b
        .eval_truncated(&DiscPoint::origin(), 1e-6)
        .map_err(|e| e.to_string())?;
    let err = (t.value - oracle).norm();
    ensure(err < 1e-6, || format!("value {} vs {oracle}", t.value))?;
    ensure(err <= t.tail_bound, || {
        format!("error {err:e} above reported bound {:e}", t.tail_bound)
    })?;
    Ok(format!(
        "B(0) = {:.10} with {} factors, error {err:.1e}",
        t.value.re, t.factors_used
    ))
}

fn poisson_mass() -> Check {
    let mut out = Vec::new();
    for r in [0.5, 0.9, 0.99] {
        let n = 1 << 14;
        let oracle: f64 = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                (1.0 - r * r) / (1.0 - 2.0 * r * t.cos() + r * r)
            })
            .sum::<f64>()
            / n as f64;
        let lib = boundarylab::approx_identity_report(r, 0.1)
            .map_err(|e| e.to_string())?
            .mass;
        ensure((lib - 1.0).abs() < 1e-8, || format!("r = {r}: mass {lib}"))?;
        ensure((oracle - 1.0).abs() < 1e-8, || {
            format!("r = {r}: oracle mass {oracle}")
        })?;
        out.push(format!("{:.1e}", (lib - 1.0).abs()));
    }
    Ok(format!("|mass - 1| = {}", out.join(", ")))
}

fn boundary_continuity() -> Check {
    let cos = BoundaryFunction::Form(ClosedForm::Cos);
    let q = Quadrature::default();
    let mut rng = rng(6);
    let mut worst_interior: f64 = 0.0;
    for _ in 0..100 {
        let z = random_disc_point(&mut rng, 0.99);
        let v = poisson_integral(&cos, &DiscPoint::from_complex(z).unwrap(), &q)
            .map_err(|e| e.to_string())?;
        // harmonic extension of cos θ is Re z
        worst_interior = worst_interior.max((v - Complex64::new(z.re, 0.0)).norm());
    }
    ensure(worst_interior < 1e-8, || {
        format!("interior error {worst_interior:e}")
    })?;
    let theta0: f64 = 1.0;
    let zeta = Complex64::from_polar(1.0, theta0);
    let mut worst_path: f64 = 0.0;
    for alpha in [0.0, PI / 4.0, -PI / 4.0, 3.0 * PI / 8.0, -3.0 * PI / 8.0] {
        // straight segment into the disc at angle alpha from the inward normal
        let dir = -Complex64::from_polar(1.0, theta0 + alpha);
        let mut last = f64::INFINITY;
        for t in [1e-1, 1e-2, 1e-3] {
            let z = zeta + dir * t;
            let v = poisson_integral(&cos, &DiscPoint::from_complex(z).unwrap(), &q)
                .map_err(|e| e.to_string())?;
            let err = (v.re - theta0.cos()).abs();
            ensure(err <= last, || {
                format!("alpha = {alpha}: error grew to {err:e} at t = {t}")
            })?;
            last = err;
        }
        ensure(last < 1e-3, || {
            format!("alpha = {alpha}: error {last:e} at distance 1e-3")
        })?;
        worst_path = worst_path.max(last);
    }
    Ok(format!(
        "interior {worst_interior:.1e}, worst path error at 1e-3: {worst_path:.2e}"
    ))
}

fn singular_atom() -> Check {
    let s = SingularAtoms::new(vec![(0.0, 1.0)]).unwrap();
    let g0 = s
        .eval(Complex64::new(0.0, 0.0))
        .map_err(|e| e.to_string())?;
    ensure(
        (g0 - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 1e-12,
        || format!("g(0) = {g0}"),
    )?;
    let oracle =
        |r: f64, theta: f64| (-(1.0 - r * r) / (1.0 - 2.0 * r * theta.cos() + r * r)).exp();
    let radii: Vec<f64> = (0..=400)
        .map(|k| 1.0 - 10f64.powf(-(k as f64) / 100.0))
        .skip(1)
        .collect();
    let mut prev = f64::INFINITY;
    for &r in &radii {
        let m = s
            .eval_at(&DiscPoint::from_polar(r, 0.0).unwrap())
            .unwrap()
            .norm();
        ensure((m - oracle(r, 0.0)).abs() < 1e-12, || {
            format!("r = {r}: {m} vs {}", oracle(r, 0.0))
        })?;
        ensure(m <= prev, || format!("not decreasing at r = {r}"))?;
        prev = m;
    }
    let end = s
        .eval_at(&DiscPoint::new(1e-4, 0.0).unwrap())
        .unwrap()
        .norm();
    ensure(end < 1e-6, || format!("|S| = {end:e} at depth 1e-4"))?;
    let opposite = s
        .eval_at(&DiscPoint::new(1e-4, PI).unwrap())
        .unwrap()
        .norm();
    ensure(opposite > 0.999, || {
        format!("|S| at theta = pi is {opposite}")
    })?;
    ensure((opposite - oracle(1.0 - 1e-4, PI)).abs() < 1e-12, || {
        "opposite value off".into()
    })?;
    Ok(format!(
        "|S| = {end:.1e} at theta = 0, {opposite:.6} at theta = pi"
    ))
}

/// Harmonic measure of `[a, b]` at `r e^{iθ}` by composite Simpson on the arc.
fn harmonic_measure(a: f64, b: f64, r: f64, theta: f64) -> f64 {
    let n = 400_000;
    let h = (b - a) / n as f64;
    let p = |t: f64| (1.0 - r * r) / (1.0 - 2.0 * r * (theta - t).cos() + r * r);
    let mut sum = p(a) + p(b);
    for j in 1..n {
        sum += if j % 2 == 1 { 4.0 } else { 2.0 } * p(a + j as f64 * h);
    }
    sum * h / 3.0 / TAU
}

fn outer_modulus() -> Check {
    let (a, b) = (0.5, 2.5);
    let k = BoundaryFunction::indicator_arc(a, b, LN_2).unwrap();
    let density = OuterDensity::new(k, Complex64::new(1.0, 0.0)).unwrap();
    let q = Quadrature::default();
    let r = 0.999;
    let mut worst: f64 = 0.0;
    for (theta, target) in [
        (1.0, 2.0),
        (1.5, 2.0),
        (2.0, 2.0),
        (3.5, 1.0),
        (4.5, 1.0),
        (5.5, 1.0),
        (0.0, 1.0),
    ] {
        let m = eval_outer(&density, &DiscPoint::from_polar(r, theta).unwrap(), &q)
            .map_err(|e| e.to_string())?
            .norm();
        let oracle = (LN_2 * harmonic_measure(a, b, r, theta)).exp();
        ensure((m - oracle).abs() < 1e-9, || {
            format!("theta = {theta}: {m} vs oracle {oracle}")
        })?;
        ensure((m - target).abs() < 1e-2, || {
            format!("theta = {theta}: |F| = {m}")
        })?;
        worst = worst.max((m - target).abs());
    }
    Ok(format!("max ||F| - target| = {worst:.1e}"))
}

fn frostman_dichotomy() -> Check {
    let zeros = dyadic_zeros(1024);
    let policy = FrostmanPolicy::default();
    let at0 = frostman_classify(&zeros, 0.0, &policy).map_err(|e| e.to_string())?;
    let atpi = frostman_classify(&zeros, PI, &policy).map_err(|e| e.to_string())?;
    ensure(at0 == FrostmanVerdict::Divergent, || {
        format!("theta = 0 classified {at0:?}")
    })?;
    ensure(atpi == FrostmanVerdict::Convergent, || {
        format!("theta = pi classified {atpi:?}")
    })?;
    for n in 0..=1024 {
        let f = frostman_partial(&zeros, 0.0, n).unwrap();
        ensure(f == n as f64, || format!("f_{n}(0) = {f}"))?;
    }
    // at θ = π each term is 2^-k / (2 - 2^-k)
    let oracle: f64 = (1..=1024)
        .map(|k| {
            let d = 0.5f64.powi(k);
            d / (2.0 - d)
        })
        .sum();
    let fpi = frostman_partial(&zeros, PI, 1024).unwrap();
    ensure((fpi - oracle).abs() < 1e-14, || {
        format!("f(pi) = {fpi} vs {oracle}")
    })?;
    let profile = frostman_profile(&zeros, 256, None, &policy).map_err(|e| e.to_string())?;
    for (j, sums) in profile.partial_sums.iter().enumerate() {
        ensure(sums.windows(2).all(|w| w[0] <= w[1]), || {
            format!("not monotone at angle #{j}")
        })?;
    }
    Ok(format!(
        "f(0) = 1024 divergent, f(pi) = {fpi:.6} convergent"
    ))
}

fn cluster_diameter() -> Check {
    let depth_levels = 12;
    let zeros = gen_accumulation_sequence(&ClosedSetSpec::circle(), depth_levels)
        .map_err(|e| e.to_string())?;
    let b = BlaschkeProduct::new(zeros.clone())
        .with_truncation(Truncation::Full)
        .unwrap();
    // depths 3^-l for l = 6..=12, the zero levels, with three samples between levels
    let third = 1.0f64 / 3.0;
    let depths: Vec<f64> = (6..=depth_levels as i32)
        .flat_map(|l| (0..4).map(move |q| third.powi(l) * third.powf(q as f64 / 4.0)))
        .collect();
    let mut worst = f64::INFINITY;
    for j in 0..16 {
        let theta = TAU * (j as f64 + 0.37) / 16.0;
        let mut family = PathFamily::standard(depths.clone());
        family.paths.push(
            ApproachPath::through_nearest_zeros(&zeros, theta, depths[0])
                .map_err(|e| e.to_string())?,
        );
        let report = limit_probe(&b, theta, &family, 1e-4).map_err(|e| e.to_string())?;
        ensure(report.cluster_diameter_estimate >= 0.9, || {
            format!(
                "theta = {theta:.3}: diameter {}",
                report.cluster_diameter_estimate
            )
        })?;
        worst = worst.min(report.cluster_diameter_estimate);
    }
    Ok(format!(
        "{} zeros, smallest diameter over 16 points {worst:.4}",
        zeros.len()
    ))
}

fn series_bounds() -> Check {
    let targets = vec![
        ClosedSetSpec::points(vec![0.3, 2.0]).unwrap(),
        ClosedSetSpec::arcs(&[(1.0, 1.5)]).unwrap(),
        ClosedSetSpec::cantor(2, (3.0, 4.5)).unwrap(),
        ClosedSetSpec::points(vec![5.0]).unwrap(),
        ClosedSetSpec::arcs(&[(5.5, 6.0), (0.5, 0.7)]).unwrap(),
        ClosedSetSpec::circle(),
    ];
    let depth = 6;
    let spec = build_lohwater_piranian(&targets, depth).map_err(|e| e.to_string())?;
    let weights: f64 = (1..=targets.len()).map(|i| 1.0 / (i * i) as f64).sum();
    ensure((spec.total_weight() - weights).abs() < 1e-15, || {
        "weights differ from 1/i^2".into()
    })?;
    ensure(spec.total_weight() < PI * PI / 6.0, || {
        "weights exceed pi^2/6".into()
    })?;
    // independent evaluation of each component from its own zero list
    let components: Vec<Vec<Complex64>> = targets
        .iter()
        .map(|t| gen_accumulation_sequence(t, depth).unwrap().to_complex())
        .collect();
    let mut rng = rng(11);
    let mut worst_tail_ratio: f64 = 0.0;
    for _ in 0..100 {
        let z = random_disc_point(&mut rng, 0.999);
        let p = DiscPoint::from_complex(z).unwrap();
        let full = eval_series(&spec, &p, 0.0).map_err(|e| e.to_string())?;
        let oracle: Complex64 = components
            .iter()
            .enumerate()
            .map(|(i, zs)| naive_blaschke(zs, z) / ((i + 1) * (i + 1)) as f64)
            .sum();
        ensure((full.value - oracle).norm() < 1e-10, || {
            format!("z = {z}: {} vs {oracle}", full.value)
        })?;
        ensure(full.value.norm() <= spec.total_weight(), || {
            format!("|Phi| = {} too large", full.value.norm())
        })?;
        for tol in [0.5, 0.2, 0.05] {
            let part = eval_series(&spec, &p, tol).map_err(|e| e.to_string())?;
            let err = (full.value - part.value).norm();
            ensure(part.tail_bound <= tol, || {
                "tail bound above tolerance".into()
            })?;
            ensure(err <= part.tail_bound, || {
                format!("tail {err} above bound {}", part.tail_bound)
            })?;
            if part.tail_bound > 0.0 {
                worst_tail_ratio = worst_tail_ratio.max(err / part.tail_bound);
            }
        }
    }
    Ok(format!(
        "total weight {:.6}, largest tail/bound {worst_tail_ratio:.3}",
        spec.total_weight()
    ))
}

fn arakeljan_fixtures() -> Check {
    let probes = ProbeSet::auto();
    for scale in [1, 2] {
        let annulus = fixtures::annulus_in_plane(scale);
        let f = annulus.mask(Selector::F);
        let r = is_arakeljan(&annulus, &f, &probes).map_err(|e| e.to_string())?;
        ensure(!r.verdict.passes(), || {
            format!("scale {scale}: annulus passes")
        })?;
        ensure(r.witnesses.len() == 1, || {
            format!("scale {scale}: {} witnesses", r.witnesses.len())
        })?;
        let expected: Vec<usize> = (0..annulus.cells().len())
            .filter(|&c| {
                let (x, y) = annulus.center(c);
                x.hypot(y) <= 0.5
            })
            .collect();
        ensure(r.witnesses[0].cells == expected, || {
            format!("scale {scale}: witness is not the inner disc")
        })?;

        for g in [
            fixtures::nested_circles(scale),
            fixtures::nested_circles(1).refine(scale),
        ] {
            let (e, f) = (g.mask(Selector::E), g.mask(Selector::F));
            let report = union_check(&g, &e, &f, &probes).map_err(|e| e.to_string())?;
            ensure(report.e.verdict.passes(), || {
                format!("scale {scale}: E fails")
            })?;
            ensure(report.f.verdict.passes(), || {
                format!("scale {scale}: F fails")
            })?;
            ensure(!report.independence.independent, || {
                format!("scale {scale}: E, F independent")
            })?;
            ensure(!report.union.verdict.passes(), || {
                format!("scale {scale}: union passes")
            })?;
            let witness = report.independence.witness.as_ref().unwrap();
            let between = witness.cells.iter().all(|&c| {
                let (x, y) = g.center(c);
                let r = x.hypot(y);
                r > 0.25 && r < 0.5
            });
            let expected = (0..g.cells().len())
                .filter(|&c| {
                    g.class(c) == CellClass::GFree && {
                        let (x, y) = g.center(c);
                        let r = x.hypot(y);
                        r > 0.25 && r < 0.5
                    }
                })
                .count();
            ensure(between && witness.cell_count == expected, || {
                format!("scale {scale}: witness is not the annulus")
            })?;
        }
    }
    // G-hole counts agree between base and doubled resolution on every fixture
    for name in fixtures::FIXTURE_NAMES {
        let summary = |g: &GridPlane| -> Vec<(usize, usize)> {
            [Selector::E, Selector::F, Selector::E | Selector::F]
                .iter()
                .map(|&sel| {
                    let holes = classify_holes(g, &g.mask(sel)).unwrap();
                    (holes.iter().filter(|h| h.is_g_hole).count(), holes.len())
                })
                .collect()
        };
        let base = fixtures::by_name(name, 1).unwrap();
        let fine = fixtures::by_name(name, 2).unwrap();
        ensure(summary(&base) == summary(&fine), || {
            format!("{name}: verdicts change under refinement")
        })?;
        ensure(summary(&base) == summary(&base.refine(2)), || {
            format!("{name}: verdicts change under refine(2)")
        })?;
    }
    Ok("annulus witness, E/F pair and refinement stability hold".into())
}

/// Independent flood fill: 4-connected components of `allowed`.
fn components(g: &GridPlane, allowed: &[bool]) -> Vec<Vec<usize>> {
    let (w, h) = (g.width(), g.height());
    let mut seen = vec![false; allowed.len()];
    let mut out = Vec::new();
    for s in 0..allowed.len() {
        if !allowed[s] || seen[s] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(c) = queue.pop_front() {
            comp.push(c);
            let (x, y) = (c % w, c / w);
            let mut nbs = Vec::new();
            if x > 0 {
                nbs.push(c - 1);
            }
            if x + 1 < w {
                nbs.push(c + 1);
            }
            if y > 0 {
                nbs.push(c - w);
            }
            if y + 1 < h {
                nbs.push(c + w);
            }
            for n in nbs {
                if allowed[n] && !seen[n] {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn escapes(g: &GridPlane, cells: &[usize]) -> bool {
    let (w, h) = (g.width(), g.height());
    cells.iter().any(|&c| {
        let (x, y) = (c % w, c / w);
        let edge = x == 0 || y == 0 || x + 1 == w || y + 1 == h;
        let outside = [
            c.checked_sub(1).filter(|_| x > 0),
            (x + 1 < w).then(|| c + 1),
            c.checked_sub(w),
            (y + 1 < h).then(|| c + w),
        ]
        .into_iter()
        .flatten()
        .any(|n| g.class(n) == CellClass::OutsideG);
        edge || outside
    })
}

/// Brute force over every pair of strict holes of E and F.
fn independent_oracle(g: &GridPlane, e: &CellMask, f: &CellMask) -> bool {
    let n = g.cells().len();
    let strict = |m: &CellMask| -> Vec<Vec<usize>> {
        let allowed: Vec<bool> = (0..n).map(|i| g.in_g(i) && !m.get(i)).collect();
        components(g, &allowed)
            .into_iter()
            .filter(|c| escapes(g, c))
            .collect()
    };
    for he in strict(e) {
        for hf in strict(f) {
            let mut allowed = vec![false; n];
            for &c in &he {
                allowed[c] = true;
            }
            let inter: Vec<bool> = (0..n).map(|i| allowed[i] && hf.contains(&i)).collect();
            if components(g, &inter).iter().any(|piece| !escapes(g, piece)) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy)]
enum Domain {
    Plane,
    Disc,
    PuncturedDisc,
}

fn random_shape(rng: &mut ChaCha8Rng) -> impl Fn(f64, f64) -> bool {
    let kind = rng.gen_range(0..4);
    let a: f64 = rng.gen_range(0.0..TAU);
    let span: f64 = rng.gen_range(0.3..4.0);
    let r0: f64 = rng.gen_range(0.15..0.9);
    let r1: f64 = rng.gen_range(0.1..0.35);
    let (cx, cy) = (r0 * a.cos(), r0 * a.sin());
    let thick = 0.06;
    move |x: f64, y: f64| {
        let r = x.hypot(y);
        let t = (y.atan2(x) - a).rem_euclid(TAU);
        match kind {
            // spoke from radius r0 outward
            0 => {
                r >= r0
                    && (y * a.cos() - x * a.sin()).abs() <= thick
                    && x * a.cos() + y * a.sin() > 0.0
            }
            // partial ring
            1 => (r - r0).abs() <= thick && t <= span,
            // blob
            2 => (x - cx).hypot(y - cy) <= r1,
            // segment of given length through the disc
            _ => {
                let (u, v) = (x - cx, y - cy);
                let along = u * span.cos() + v * span.sin();
                let across = -u * span.sin() + v * span.cos();
                along.abs() <= r1 && across.abs() <= thick
            }
        }
    }
}

fn random_pair(rng: &mut ChaCha8Rng) -> GridPlane {
    let domain = [Domain::Plane, Domain::Disc, Domain::PuncturedDisc][rng.gen_range(0..3)];
    let e = random_shape(rng);
    let f = random_shape(rng);
    let res = 16;
    let half = 18;
    let width = 2 * half + 1;
    let cell = 1.0 / res as f64;
    let origin = -(half as f64 + 0.5) * cell;
    GridPlane::rasterize(
        width,
        width,
        cell,
        (origin, origin),
        matches!(domain, Domain::Plane),
        |x, y| {
            let r = x.hypot(y);
            let inside = match domain {
                Domain::Plane => true,
                Domain::Disc => r < 1.0,
                Domain::PuncturedDisc => r < 1.0 && r >= cell / 2.0,
            };
            if !inside {
                CellClass::OutsideG
            } else if e(x, y) {
                CellClass::ESet
            } else if f(x, y) {
                CellClass::FSet
            } else {
                CellClass::GFree
            }
        },
    )
    .unwrap()
}

fn union_property() -> Check {
    let mut rng = rng(13);
    let probes = ProbeSet::auto();
    let (mut qualifying, mut attempts) = (0, 0);
    let mut rejected_dependent = 0;
    while qualifying < 120 && attempts < 20_000 {
        attempts += 1;
        let g = random_pair(&mut rng);
        let (e, f) = (g.mask(Selector::E), g.mask(Selector::F));
        if e.is_empty() || f.is_empty() {
            continue;
        }
        let report = union_check(&g, &e, &f, &probes).map_err(|e| e.to_string())?;
        let oracle = independent_oracle(&g, &e, &f);
        ensure(oracle == report.independence.independent, || {
            format!(
                "attempt {attempts}: independence {} but brute force says {oracle}\n{}",
                report.independence.independent,
                g.to_text()
            )
        })?;
        if !(report.e.verdict.passes() && report.f.verdict.passes()) {
            continue;
        }
        if !report.independence.independent {
            rejected_dependent += 1;
            continue;
        }
        qualifying += 1;
        ensure(
            report.union.verdict.passes() && !report.inconsistent,
            || format!("attempt {attempts}: union fails\n{}", g.to_text()),
        )?;
    }
    ensure(qualifying >= 100, || {
        format!("only {qualifying} qualifying pairs in {attempts} attempts")
    })?;
    Ok(format!("{qualifying} qualifying pairs out of {attempts} (skipped {rejected_dependent} dependent); union passes in all"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    // Allow `cargo test -- <filter>` style invocations to select criteria by name.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria = [
        Criterion {
            id: 1,
            name: "finite product unimodular on the circle",
            limit: Duration::from_secs(1),
            run: unimodular_on_circle,
        },
        Criterion {
            id: 2,
            name: "center value equals product of moduli",
            limit: Duration::from_secs(1),
            run: center_value,
        },
        Criterion {
            id: 3,
            name: "truncation bound holds for dyadic zeros",
            limit: Duration::from_secs(1),
            run: truncation_bound,
        },
        Criterion {
            id: 4,
            name: "infinite dyadic product at the origin",
            limit: Duration::from_secs(1),
            run: infinite_product_value,
        },
        Criterion {
            id: 5,
            name: "Poisson kernel has unit mass",
            limit: Duration::from_secs(1),
            run: poisson_mass,
        },
        Criterion {
            id: 6,
            name: "Poisson integral continuous up to the boundary",
            limit: Duration::from_secs(5),
            run: boundary_continuity,
        },
        Criterion {
            id: 7,
            name: "singular inner function of one atom",
            limit: Duration::from_secs(1),
            run: singular_atom,
        },
        Criterion {
            id: 8,
            name: "outer function boundary modulus",
            limit: Duration::from_secs(5),
            run: outer_modulus,
        },
        Criterion {
            id: 9,
            name: "Frostman sums diverge on the ray, converge opposite",
            limit: Duration::from_secs(1),
            run: frostman_dichotomy,
        },
        Criterion {
            id: 10,
            name: "cluster set diameter at least 0.9",
            limit: Duration::from_secs(30),
            run: cluster_diameter,
        },
        Criterion {
            id: 11,
            name: "weighted Blaschke series bounds",
            limit: Duration::from_secs(5),
            run: series_bounds,
        },
        Criterion {
            id: 12,
            name: "Arakeljan fixtures and refinement stability",
            limit: Duration::from_secs(2),
            run: arakeljan_fixtures,
        },
        Criterion {
            id: 13,
            name: "union of independent Arakeljan sets",
            limit: Duration::from_secs(60),
            run: union_property,
        },
    ];
    let mut failures = 0;
    for c in criteria
        .iter()
        .filter(|c| filter.as_deref().is_none_or(|f| c.name.contains(f)))
    {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow (limit {:?})", c.limit)),
            Err(d) => (false, d),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {:>2}: {} [{:.3}s] {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
