//! Quick built-in checks on bundled fixtures with closed-form answers, used
//! by the command-line `selftest`.

use std::f64::consts::{LN_2, PI, TAU};

use num_complex::Complex;
use serde::Serialize;

use crate::arakeljan::{fixtures, is_arakeljan, union_check, ProbeSet, Selector};
use crate::blaschke::{BlaschkeProduct, Truncation};
use crate::constructions::build_lohwater_piranian;
use crate::error::Result;
use crate::frostman::{frostman_classify, frostman_partial, FrostmanPolicy, FrostmanVerdict};
use crate::function::DiscFunction;
use crate::herglotz::{
    approx_identity_report, eval_outer, poisson_integral, BoundaryFunction, ClosedForm,
    OuterDensity, Quadrature, SingularAtoms,
};
use crate::point::DiscPoint;
use crate::unitdisc::{gen_radial_sequence, ClosedSetSpec, ZeroSequence};

#[derive(Clone, Debug, Serialize)]
pub struct SelftestRow {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<(bool, String)>;
type Check = (&'static str, fn() -> Outcome);

/// Zeros on a golden-angle spiral: deterministic and well spread.
fn spiral_zeros(n: usize) -> Vec<Complex<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            Complex::from_polar(
                0.95 * ((k as f64 + 0.5) / n as f64).sqrt(),
                golden * k as f64,
            )
        })
        .collect()
}

fn unimodular() -> Outcome {
    let b = BlaschkeProduct::new(ZeroSequence::from_complex(&spiral_zeros(20))?)
        .with_truncation(Truncation::Full)?;
    let mut worst: f64 = 0.0;
    for j in 0..4096 {
        let v = b.eval_at(&DiscPoint::on_circle(TAU * j as f64 / 4096.0))?;
        worst = worst.max((v.norm() - 1.0).abs());
    }
    Ok((worst < 1e-9, format!("max ||B|-1| = {worst:.2e}")))
}

fn center_value() -> Outcome {
    let zeros = spiral_zeros(30);
    let expected: f64 = zeros.iter().map(|a| a.norm()).product();
    let b = BlaschkeProduct::new(ZeroSequence::from_complex(&zeros)?)
        .with_truncation(Truncation::Full)?;
    let err = (b.eval(Complex::new(0.0, 0.0))? - expected).norm() / expected;
    Ok((err < 1e-12, format!("relative error {err:.2e}")))
}

fn dyadic_product() -> Outcome {
    let b = BlaschkeProduct::new(gen_radial_sequence(0.0f64, 0.5, 200)?);
    let t = b.eval_truncated(&DiscPoint::origin(), 1e-6)?;
    let err = (t.value.re - 0.2887880951).abs() + t.value.im.abs();
    Ok((err < 1e-6, format!("B(0) = {:.10}", t.value.re)))
}

fn poisson_mass() -> Outcome {
    let mut worst: f64 = 0.0;
    for r in [0.5, 0.9, 0.99] {
        worst = worst.max((approx_identity_report::<f64>(r, 0.1)?.mass - 1.0).abs());
    }
    Ok((worst < 1e-8, format!("max |mass - 1| = {worst:.1e}")))
}

fn harmonic_cos() -> Outcome {
    let cos = BoundaryFunction::Form(ClosedForm::Cos);
    let q = Quadrature::default();
    let mut worst: f64 = 0.0;
    for k in 0..25 {
        let (r, theta) = (0.99 * (k as f64 + 0.5) / 25.0, 2.4 * k as f64);
        let v = poisson_integral(&cos, &DiscPoint::from_polar(r, theta)?, &q)?;
        worst = worst.max((v - Complex::new(r * theta.cos(), 0.0)).norm());
    }
    Ok((worst < 1e-8, format!("max error {worst:.1e}")))
}

fn singular_atom() -> Outcome {
    let s = SingularAtoms::new(vec![(0.0, 1.0)])?;
    let g0 = (s.eval(Complex::new(0.0, 0.0))? - Complex::new((-1.0f64).exp(), 0.0)).norm();
    let near = s.eval_at(&DiscPoint::new(1e-4, 0.0)?)?.norm();
    let far = s.eval_at(&DiscPoint::new(1e-4, PI)?)?.norm();
    Ok((
        g0 < 1e-12 && near < 1e-6 && far > 0.999,
        format!("|S| = {near:.1e} at 0, {far:.6} at pi"),
    ))
}

fn outer_modulus() -> Outcome {
    let density = OuterDensity::new(
        BoundaryFunction::indicator_arc(0.5, 2.5, LN_2)?,
        Complex::new(1.0, 0.0),
    )?;
    let q = Quadrature::default();
    let inside = eval_outer(&density, &DiscPoint::from_polar(0.999, 1.5)?, &q)?.norm();
    let outside = eval_outer(&density, &DiscPoint::from_polar(0.999, 4.5)?, &q)?.norm();
    Ok((
        (inside - 2.0).abs() < 1e-2 && (outside - 1.0).abs() < 1e-2,
        format!("|F| = {inside:.4} inside, {outside:.4} outside"),
    ))
}

fn frostman() -> Outcome {
    let zeros = gen_radial_sequence(0.0, 0.5, 1024)?;
    let policy = FrostmanPolicy::default();
    let at0 = frostman_classify(&zeros, 0.0, &policy)?;
    let atpi = frostman_classify(&zeros, PI, &policy)?;
    let exact = frostman_partial(&zeros, 0.0, 1024)? == 1024.0;
    Ok((
        at0 == FrostmanVerdict::Divergent && atpi == FrostmanVerdict::Convergent && exact,
        format!("theta = 0 {}, theta = pi {}", at0.as_str(), atpi.as_str()),
    ))
}

fn series_weights() -> Outcome {
    let targets = vec![
        ClosedSetSpec::points(vec![0.3])?,
        ClosedSetSpec::arcs(&[(1.0, 2.0)])?,
        ClosedSetSpec::circle(),
    ];
    let spec = build_lohwater_piranian(&targets, 5)?;
    let total = spec.total_weight();
    Ok((total < PI * PI / 6.0, format!("total weight {total:.6}")))
}

fn arakeljan_nested_circles() -> Outcome {
    let g = fixtures::nested_circles(1);
    let r = union_check(
        &g,
        &g.mask(Selector::E),
        &g.mask(Selector::F),
        &ProbeSet::auto(),
    )?;
    let ok = r.e.verdict.passes()
        && r.f.verdict.passes()
        && !r.independence.independent
        && !r.union.verdict.passes();
    Ok((
        ok,
        format!(
            "E {}, F {}, independent {}, union {}",
            r.e.verdict.as_str(),
            r.f.verdict.as_str(),
            r.independence.independent,
            r.union.verdict.as_str()
        ),
    ))
}

fn arakeljan_annulus() -> Outcome {
    let g = fixtures::annulus_in_plane(1);
    let r = is_arakeljan(&g, &g.mask(Selector::F), &ProbeSet::auto())?;
    Ok((
        !r.verdict.passes() && r.witnesses.len() == 1,
        format!("{} witness(es)", r.witnesses.len()),
    ))
}

fn arakeljan_segments() -> Outcome {
    let one = fixtures::disc_with_segment(1);
    let seg = is_arakeljan(&one, &one.mask(Selector::F), &ProbeSet::auto())?;
    let two = fixtures::disc_with_two_segments(1);
    let pair = union_check(
        &two,
        &two.mask(Selector::E),
        &two.mask(Selector::F),
        &ProbeSet::auto(),
    )?;
    let arcs = fixtures::separated_arcs(1);
    let sep = union_check(
        &arcs,
        &arcs.mask(Selector::E),
        &arcs.mask(Selector::F),
        &ProbeSet::auto(),
    )?;
    let ok = seg.verdict.passes()
        && pair.hypothesis_holds
        && pair.union.verdict.passes()
        && sep.hypothesis_holds
        && sep.union.verdict.passes();
    Ok((ok, "segment, two segments and separated arcs pass".into()))
}

/// Runs every check; failures of the check itself are reported as failed rows.
pub fn run_selftest() -> Vec<SelftestRow> {
    let checks: [Check; 12] = [
        ("finite product unimodular", unimodular),
        ("center value", center_value),
        ("dyadic product at origin", dyadic_product),
        ("Poisson mass", poisson_mass),
        ("harmonic extension of cos", harmonic_cos),
        ("singular atom", singular_atom),
        ("outer boundary modulus", outer_modulus),
        ("Frostman dichotomy", frostman),
        ("series weights", series_weights),
        ("two circles in punctured disc", arakeljan_nested_circles),
        ("annulus in the plane", arakeljan_annulus),
        ("segments and arcs", arakeljan_segments),
    ];
    checks
        .iter()
        .map(|&(name, check)| match check() {
            Ok((passed, detail)) => SelftestRow {
                name,
                passed,
                detail,
            },
            Err(e) => SelftestRow {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        })
        .collect()
}
