use std::io::Write;
use std::path::{Path, PathBuf};

use boundarylab::arakeljan::{
    classify_holes, fixtures, hole_independence, is_arakeljan, union_check, CellMask, GridJson,
    GridPlane, ProbeSet, Selector,
};
use boundarylab::io::{fmt17, write_frostman_csv, write_scan_csv, write_trace_csv};
use boundarylab::io::{BoundaryFunctionDoc, ClosedSetDoc, InnerDoc, SeriesDoc, ZerosDoc};
use boundarylab::probe::dyadic_depths;
use boundarylab::selftest::run_selftest;
use boundarylab::{
    approx_identity_report, boundary_scan, build_bgh_sum, build_lohwater_piranian, eval_series,
    frostman_profile, limit_probe, poisson_integral, radial_trace, ApproachPath, BlaschkeProduct,
    BoundaryFunction, Complex64, DiscFunction, DiscPoint, FrostmanPolicy, InnerFunctionSpec,
    PathFamily, Quadrature, SeriesSpec, Truncation, ZeroSequence,
};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::settings::Settings;
use crate::{CliError, Command, FunctionArgs, Source};

pub struct Context {
    pub settings: Settings,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    LohwaterPiranian,
    Bgh,
}

pub enum Function {
    Product(BlaschkeProduct<f64>),
    Inner(InnerFunctionSpec<f64>),
}

impl Function {
    fn as_dyn(&self) -> &dyn DiscFunction<f64> {
        match self {
            Self::Product(p) => p,
            Self::Inner(i) => i,
        }
    }

    fn zeros(&self) -> Option<&ZeroSequence<f64>> {
        match self {
            Self::Product(p) => Some(p.zeros()),
            Self::Inner(_) => None,
        }
    }
}

fn read(field: &str, path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{field}: cannot read {}: {e}", path.display())))
}

fn read_json<D: serde::de::DeserializeOwned>(field: &str, path: &Path) -> Result<D, CliError> {
    serde_json::from_str(&read(field, path)?).map_err(|e| CliError::input(format!("{field}: {e}")))
}

/// Prefixes a library validation error with the input it came from.
fn in_field(field: &str) -> impl Fn(boundarylab::Error) -> CliError + '_ {
    move |e| {
        let e = CliError::from(e);
        CliError {
            code: e.code,
            message: format!("{field}: {}", e.message),
        }
    }
}

fn random_zeros(count: usize, seed: u64) -> Result<ZeroSequence<f64>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeros: Vec<Complex64> = (0..count)
        .map(|_| {
            let r = 0.99 * rng.gen::<f64>().sqrt();
            Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    ZeroSequence::from_complex(&zeros).map_err(in_field("random"))
}

fn product(
    zeros: ZeroSequence<f64>,
    all_factors: bool,
    settings: &Settings,
) -> Result<Function, CliError> {
    let truncation = if all_factors {
        Truncation::Full
    } else {
        Truncation::Tolerance(settings.truncation)
    };
    Ok(Function::Product(
        BlaschkeProduct::new(zeros).with_truncation(truncation)?,
    ))
}

fn load_source(source: &Source, all_factors: bool, ctx: &Context) -> Result<Function, CliError> {
    if let Some(path) = &source.zeros {
        let doc: ZerosDoc = read_json("zeros", path)?;
        product(
            doc.to_sequence().map_err(in_field("zeros"))?,
            all_factors,
            &ctx.settings,
        )
    } else if let Some(path) = &source.inner {
        let doc: InnerDoc = read_json("inner", path)?;
        Ok(Function::Inner(doc.to_spec().map_err(in_field("inner"))?))
    } else if let Some(n) = source.random {
        product(random_zeros(n, ctx.seed)?, all_factors, &ctx.settings)
    } else {
        Err(CliError::input("source: give --zeros, --inner or --random"))
    }
}

fn load_function(args: &FunctionArgs, ctx: &Context) -> Result<Function, CliError> {
    load_source(&args.source, args.all_factors, ctx)
}

fn selector(field: &str, text: &str) -> Result<Selector, CliError> {
    Selector::parse(text).map_err(in_field(field))
}

fn load_grid(
    grid: Option<&PathBuf>,
    fixture: Option<&str>,
    scale: usize,
) -> Result<GridPlane, CliError> {
    match (grid, fixture) {
        (Some(path), _) => {
            if path.extension().is_some_and(|e| e == "json") {
                let doc: GridJson = read_json("grid", path)?;
                GridPlane::from_json(&doc).map_err(in_field("grid"))
            } else {
                GridPlane::from_text(&read("grid", path)?).map_err(in_field("grid"))
            }
        }
        (None, Some(name)) => {
            if scale == 0 {
                return Err(CliError::input("scale: must be positive"));
            }
            fixtures::by_name(name, scale).map_err(in_field("fixture"))
        }
        (None, None) => Err(CliError::input("grid: give --grid or --fixture")),
    }
}

fn positive(field: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::input(format!(
            "{field}: must be positive, got {v}"
        )))
    }
}

pub enum ArakeljanMode {
    Export,
    Holes(CellMask),
    Verdict(CellMask, ProbeSet),
    Independence(CellMask, CellMask),
    Union(CellMask, CellMask, ProbeSet),
}

/// A subcommand with all of its inputs loaded and validated.
pub enum Job {
    Scan {
        f: Function,
        r: f64,
        angles: usize,
        delta: f64,
    },
    Trace {
        f: Function,
        angle: f64,
        radii: Vec<f64>,
        tol: f64,
    },
    Probe {
        f: Function,
        angles: Vec<f64>,
        depths: Vec<f64>,
        through_zeros: bool,
        tol: f64,
    },
    Frostman {
        zeros: ZeroSequence<f64>,
        angles: usize,
        policy: FrostmanPolicy<f64>,
    },
    SeriesSpec(SeriesSpec<f64>),
    Series {
        spec: SeriesSpec<f64>,
        r: f64,
        angles: usize,
    },
    Arakeljan {
        grid: GridPlane,
        mode: ArakeljanMode,
    },
    Kernels {
        radii: Vec<f64>,
        delta: f64,
    },
    Poisson {
        density: BoundaryFunction<f64>,
        r: f64,
        angles: usize,
    },
    Selftest,
}

pub fn prepare(command: Command, ctx: &Context) -> Result<Job, CliError> {
    let mut settings = ctx.settings.clone();
    Ok(match command {
        Command::Scan {
            source,
            r,
            angles,
            delta,
        } => {
            if let Some(d) = delta {
                settings.delta = positive("delta", d)?;
            }
            Job::Scan {
                f: load_function(&source, ctx)?,
                r,
                angles,
                delta: settings.delta,
            }
        }
        Command::Trace {
            source,
            angle,
            max_exponent,
            per_octave,
            verdict_tol,
        } => {
            if let Some(v) = verdict_tol {
                settings.verdict = positive("verdict-tol", v)?;
            }
            let max_exponent = max_exponent.unwrap_or(settings.max_exponent);
            let per_octave = per_octave.unwrap_or(settings.per_octave);
            if max_exponent == 0 || per_octave == 0 {
                return Err(CliError::input("max-exponent/per-octave: must be positive"));
            }
            let radii = dyadic_depths::<f64>(max_exponent, per_octave)
                .into_iter()
                .map(|d| 1.0 - d)
                .collect();
            Job::Trace {
                f: load_function(&source, ctx)?,
                angle,
                radii,
                tol: settings.verdict,
            }
        }
        Command::Probe {
            source,
            angles,
            probe_exponent,
            through_zeros,
            verdict_tol,
        } => {
            if let Some(v) = verdict_tol {
                settings.verdict = positive("verdict-tol", v)?;
            }
            let exponent = probe_exponent.unwrap_or(settings.probe_exponent);
            if exponent == 0 {
                return Err(CliError::input("probe-exponent: must be positive"));
            }
            let f = load_function(&source, ctx)?;
            if through_zeros && f.zeros().is_none() {
                return Err(CliError::input("through-zeros: needs --zeros or --random"));
            }
            Job::Probe {
                f,
                angles,
                depths: dyadic_depths(exponent, 1),
                through_zeros,
                tol: settings.verdict,
            }
        }
        Command::Frostman {
            source,
            angles,
            divergence,
            cauchy,
            growth_window,
        } => {
            if let Some(v) = divergence {
                settings.divergence = positive("divergence", v)?;
            }
            if let Some(v) = cauchy {
                settings.cauchy = positive("cauchy", v)?;
            }
            if let Some(w) = growth_window {
                settings.growth_window = w;
            }
            let f = load_source(&source, false, ctx)?;
            let zeros = f
                .zeros()
                .cloned()
                .ok_or_else(|| CliError::input("source: frostman needs --zeros or --random"))?;
            Job::Frostman {
                zeros,
                angles,
                policy: settings.frostman_policy(),
            }
        }
        Command::Series {
            targets,
            spec,
            construction,
            depth,
            r,
            angles,
            emit_spec,
        } => {
            let spec = match (targets, spec) {
                (Some(path), _) => {
                    let docs: Vec<ClosedSetDoc> = read_json("targets", &path)?;
                    let targets = docs
                        .iter()
                        .map(|d| d.to_spec())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(in_field("targets"))?;
                    match construction {
                        Construction::LohwaterPiranian => build_lohwater_piranian(&targets, depth),
                        Construction::Bgh => build_bgh_sum(&targets, depth),
                    }
                    .map_err(in_field("targets"))?
                }
                (None, Some(path)) => {
                    let doc: SeriesDoc = read_json("spec", &path)?;
                    doc.to_spec().map_err(in_field("spec"))?
                }
                (None, None) => return Err(CliError::input("series: give --targets or --spec")),
            };
            if emit_spec {
                Job::SeriesSpec(spec)
            } else {
                Job::Series { spec, r, angles }
            }
        }
        Command::Arakeljan {
            grid,
            fixture,
            scale,
            subject,
            independence,
            union,
            holes,
            no_auto_probes,
            margin,
            export_grid,
        } => {
            let grid = load_grid(grid.as_ref(), fixture.as_deref(), scale)?;
            let margin = margin.unwrap_or(settings.margin);
            if margin == 0 {
                return Err(CliError::input("margin: must be positive"));
            }
            let probes = if no_auto_probes {
                let k = grid.mask(Selector::K);
                ProbeSet::masks_only(if k.is_empty() { Vec::new() } else { vec![k] })
            } else {
                ProbeSet::for_grid(&grid)
            }
            .with_margin(margin);
            let pair = |names: &[String]| -> Result<(CellMask, CellMask), CliError> {
                Ok((
                    grid.mask(selector("E", &names[0])?),
                    grid.mask(selector("F", &names[1])?),
                ))
            };
            let mode = if export_grid {
                ArakeljanMode::Export
            } else if let Some(names) = independence {
                let (e, f) = pair(&names)?;
                ArakeljanMode::Independence(e, f)
            } else if let Some(names) = union {
                let (e, f) = pair(&names)?;
                ArakeljanMode::Union(e, f, probes)
            } else {
                let mask = grid.mask(selector("subject", &subject)?);
                if holes {
                    ArakeljanMode::Holes(mask)
                } else {
                    ArakeljanMode::Verdict(mask, probes)
                }
            };
            Job::Arakeljan { grid, mode }
        }
        Command::Kernels {
            r,
            delta,
            density,
            angles,
        } => match density {
            Some(path) => {
                let doc: BoundaryFunctionDoc = read_json("density", &path)?;
                let radius = match r.as_slice() {
                    [one] => *one,
                    _ => return Err(CliError::input("r: give exactly one radius with --density")),
                };
                Job::Poisson {
                    density: doc.to_function().map_err(in_field("density"))?,
                    r: radius,
                    angles,
                }
            }
            None => Job::Kernels { radii: r, delta },
        },
        Command::Selftest => Job::Selftest,
    })
}

/// Poisson integral of a boundary density as a function on the disc.
struct PoissonOf {
    density: BoundaryFunction<f64>,
    quadrature: Quadrature<f64>,
}

impl DiscFunction<f64> for PoissonOf {
    fn eval_at(&self, z: &DiscPoint<f64>) -> boundarylab::Result<Complex64> {
        poisson_integral(&self.density, z, &self.quadrature)
    }
}

fn write_json<W: Write + ?Sized, S: Serialize>(out: &mut W, value: &S) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::compute(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn write_failure<W: Write + ?Sized>(out: &mut W, message: &str) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Failure<'a> {
        status: &'static str,
        error: &'a str,
    }
    write_json(
        out,
        &Failure {
            status: "failed",
            error: message,
        },
    )
}

impl Job {
    /// Returns `false` when a check reports failure without erroring.
    pub fn execute<W: Write + ?Sized>(self, ctx: &Context, out: &mut W) -> Result<bool, CliError> {
        let settings = &ctx.settings;
        match self {
            Job::Scan {
                f,
                r,
                angles,
                delta,
            } => {
                let scan = boundary_scan(f.as_dyn(), r, angles, delta)?;
                write_scan_csv(&scan, out)?;
            }
            Job::Trace {
                f,
                angle,
                radii,
                tol,
            } => {
                let trace = radial_trace(f.as_dyn(), angle, &radii, tol)?;
                write_trace_csv(&trace, out)?;
                match trace.limit_estimate {
                    Some(l) => eprintln!(
                        "limit estimate {} {} (oscillation {:e})",
                        fmt17(l.re),
                        fmt17(l.im),
                        trace.oscillation
                    ),
                    None => eprintln!(
                        "no limit verdict (oscillation {:e} >= {tol:e})",
                        trace.oscillation
                    ),
                }
            }
            Job::Probe {
                f,
                angles,
                depths,
                through_zeros,
                tol,
            } => {
                let mut reports = Vec::with_capacity(angles.len());
                for angle in angles {
                    let mut family = PathFamily::standard(depths.clone());
                    if through_zeros {
                        let zeros = f.zeros().expect("checked when preparing");
                        family.paths.push(ApproachPath::through_nearest_zeros(
                            zeros, angle, depths[0],
                        )?);
                    }
                    reports.push(limit_probe(f.as_dyn(), angle, &family, tol)?);
                }
                write_json(out, &reports)?;
            }
            Job::Frostman {
                zeros,
                angles,
                policy,
            } => {
                let profile = frostman_profile(&zeros, angles, None, &policy)?;
                write_frostman_csv(&profile, out)?;
            }
            Job::SeriesSpec(spec) => write_json(out, &SeriesDoc::of(&spec))?,
            Job::Series { spec, r, angles } => {
                if angles == 0 {
                    return Err(CliError::input("angles: must be positive"));
                }
                writeln!(out, "angle,re,im,modulus,terms_used,tail_bound")?;
                for j in 0..angles {
                    let angle = std::f64::consts::TAU * j as f64 / angles as f64;
                    let z = DiscPoint::from_polar(r, angle).map_err(in_field("r"))?;
                    let v = eval_series(&spec, &z, settings.series)?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        fmt17(angle),
                        fmt17(v.value.re),
                        fmt17(v.value.im),
                        fmt17(v.value.norm()),
                        v.terms_used,
                        fmt17(v.tail_bound)
                    )?;
                }
            }
            Job::Arakeljan { grid, mode } => match mode {
                ArakeljanMode::Export => write!(out, "{}", grid.to_text())?,
                ArakeljanMode::Holes(mask) => write_json(out, &classify_holes(&grid, &mask)?)?,
                ArakeljanMode::Verdict(mask, probes) => {
                    write_json(out, &is_arakeljan(&grid, &mask, &probes)?)?
                }
                ArakeljanMode::Independence(e, f) => {
                    write_json(out, &hole_independence(&grid, &e, &f)?)?
                }
                ArakeljanMode::Union(e, f, probes) => {
                    let report = union_check(&grid, &e, &f, &probes)?;
                    write_json(out, &report)?;
                    if report.inconsistent {
                        return Err(CliError::compute(
                            "union fails although both sets pass and are independent",
                        ));
                    }
                }
            },
            Job::Kernels { radii, delta } => {
                let reports = radii
                    .iter()
                    .map(|&r| approx_identity_report(r, delta))
                    .collect::<Result<Vec<_>, _>>()?;
                write_json(out, &reports)?;
            }
            Job::Poisson { density, r, angles } => {
                let f = PoissonOf {
                    density,
                    quadrature: settings.quadrature(),
                };
                let scan = boundary_scan(&f, r, angles, settings.delta)?;
                write_scan_csv(&scan, out)?;
            }
            Job::Selftest => {
                let rows = run_selftest();
                let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
                for row in &rows {
                    writeln!(
                        out,
                        "{}  {:width$}  {}",
                        if row.passed { "PASS" } else { "FAIL" },
                        row.name,
                        row.detail
                    )?;
                }
                let failed = rows.iter().filter(|r| !r.passed).count();
                writeln!(out, "{} passed, {failed} failed", rows.len() - failed)?;
                return Ok(failed == 0);
            }
        }
        Ok(true)
    }
}
