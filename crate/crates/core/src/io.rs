//! JSON documents for inputs and CSV writers for sampled outputs.
//!
//! Documents are plain `f64` mirrors of the model types; conversion to the
//! model validates and converts to the requested scalar type.

use std::io::{self, Write};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::blaschke::{BlaschkeProduct, Truncation};
use crate::constructions::{SeriesSpec, SeriesTerm, WeightRule};
use crate::error::{invalid, Error, Result};
use crate::factorization::{Factor, InnerFunctionSpec};
use crate::frostman::FrostmanProfile;
use crate::herglotz::{
    BoundaryFunction, ClosedForm, OuterDensity, OuterFactor, Quadrature, SingularAtoms,
};
use crate::probe::{BoundaryScan, RadialTrace};
use crate::scalar::Real;
use crate::unitdisc::{
    gen_accumulation_sequence, gen_radial_sequence, ClosedSetSpec, ZeroSequence,
};

fn f<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Shortest text that round-trips is at most 17 significant digits; CSV
/// always uses the full 17 so columns line up and precision is explicit.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl ComplexDoc {
    fn to<T: Real>(self) -> Complex<T> {
        Complex::new(T::lit(self.re), T::lit(self.im))
    }

    fn of<T: Real>(z: Complex<T>) -> Self {
        Self {
            re: f(z.re),
            im: f(z.im),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorDoc {
    Radial { angle: f64, rate: f64, count: usize },
    Accumulation { target: ClosedSetDoc, depth: usize },
}

/// `{"zeros": [{"re": x, "im": y}, ...]}`, or a generator in place of the list.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZerosDoc {
    #[serde(default)]
    pub zeros: Vec<ComplexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorDoc>,
}

impl ZerosDoc {
    pub fn of<T: Real>(zeros: &ZeroSequence<T>) -> Self {
        Self {
            zeros: zeros.to_complex().into_iter().map(ComplexDoc::of).collect(),
            generator: None,
        }
    }

    pub fn to_sequence<T: Real>(&self) -> Result<ZeroSequence<T>> {
        match &self.generator {
            None => {
                let zs: Vec<Complex<T>> = self.zeros.iter().map(|z| z.to()).collect();
                ZeroSequence::from_complex(&zs)
            }
            Some(_) if !self.zeros.is_empty() => {
                Err(invalid("zeros", "give either a zero list or a generator"))
            }
            Some(GeneratorDoc::Radial { angle, rate, count }) => {
                gen_radial_sequence(T::lit(*angle), T::lit(*rate), *count)
            }
            Some(GeneratorDoc::Accumulation { target, depth }) => {
                gen_accumulation_sequence(&target.to_spec()?, *depth)
            }
        }
    }
}

/// `{"kind": "...", "points": [...], "arcs": [[s,e],...], "cantor_level": n, "base_arc": [s,e]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedSetDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arcs: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cantor_level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_arc: Option<[f64; 2]>,
}

impl ClosedSetDoc {
    pub fn of<T: Real>(spec: &ClosedSetSpec<T>) -> Self {
        let empty = Self {
            kind: String::new(),
            points: Vec::new(),
            arcs: Vec::new(),
            cantor_level: None,
            base_arc: None,
        };
        match spec {
            ClosedSetSpec::FinitePoints(p) => Self {
                kind: "finite-points".into(),
                points: p.iter().map(|&x| f(x)).collect(),
                ..empty
            },
            ClosedSetSpec::ArcUnion(arcs) => Self {
                kind: "arc-union".into(),
                arcs: arcs.iter().map(|a| [f(a.start()), f(a.end())]).collect(),
                ..empty
            },
            ClosedSetSpec::Cantor { level, base } => Self {
                kind: "cantor".into(),
                cantor_level: Some(*level),
                base_arc: Some([f(base.start()), f(base.end())]),
                ..empty
            },
        }
    }

    pub fn to_spec<T: Real>(&self) -> Result<ClosedSetSpec<T>> {
        match self.kind.as_str() {
            "finite-points" => {
                ClosedSetSpec::points(self.points.iter().map(|&x| T::lit(x)).collect())
            }
            "arc-union" => {
                let arcs: Vec<(T, T)> = self
                    .arcs
                    .iter()
                    .map(|a| (T::lit(a[0]), T::lit(a[1])))
                    .collect();
                ClosedSetSpec::arcs(&arcs)
            }
            "cantor" => {
                let level = self
                    .cantor_level
                    .ok_or_else(|| invalid("cantor_level", "required for kind cantor"))?;
                let base = self
                    .base_arc
                    .ok_or_else(|| invalid("base_arc", "required for kind cantor"))?;
                ClosedSetSpec::cantor(level, (T::lit(base[0]), T::lit(base[1])))
            }
            other => Err(invalid(
                "kind",
                format!("unknown closed set kind '{other}' (finite-points, arc-union, cantor)"),
            )),
        }
    }
}

/// Boundary function document, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundaryFunctionDoc {
    Samples {
        samples: Vec<[f64; 3]>,
    },
    Constant {
        re: f64,
        #[serde(default)]
        im: f64,
    },
    /// `name` is `cos`, `sin` or `indicator-arc` (with `start`, `end`, `height`).
    Form {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        start: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        height: Option<f64>,
    },
}

impl BoundaryFunctionDoc {
    pub fn of<T: Real>(bf: &BoundaryFunction<T>) -> Self {
        match bf {
            BoundaryFunction::Constant(c) => Self::Constant {
                re: f(c.re),
                im: f(c.im),
            },
            BoundaryFunction::Samples(values) => {
                let n = values.len() as f64;
                Self::Samples {
                    samples: values
                        .iter()
                        .enumerate()
                        .map(|(j, v)| [std::f64::consts::TAU * j as f64 / n, f(v.re), f(v.im)])
                        .collect(),
                }
            }
            BoundaryFunction::Form(form) => {
                let (name, start, end, height) = match form {
                    ClosedForm::Cos => ("cos", None, None, None),
                    ClosedForm::Sin => ("sin", None, None, None),
                    ClosedForm::IndicatorArc { arc, height } => (
                        "indicator-arc",
                        Some(f(arc.start())),
                        Some(f(arc.start() + arc.length())),
                        Some(f(*height)),
                    ),
                };
                Self::Form {
                    name: name.into(),
                    start,
                    end,
                    height,
                }
            }
        }
    }

    pub fn to_function<T: Real>(&self) -> Result<BoundaryFunction<T>> {
        match self {
            Self::Samples { samples } => {
                let pairs: Vec<(T, Complex<T>)> = samples
                    .iter()
                    .map(|s| (T::lit(s[0]), Complex::new(T::lit(s[1]), T::lit(s[2]))))
                    .collect();
                BoundaryFunction::from_angle_samples(&pairs)
            }
            Self::Constant { re, im } => Ok(BoundaryFunction::Constant(Complex::new(
                T::lit(*re),
                T::lit(*im),
            ))),
            Self::Form {
                name,
                start,
                end,
                height,
            } => match name.as_str() {
                "cos" => Ok(BoundaryFunction::Form(ClosedForm::Cos)),
                "sin" => Ok(BoundaryFunction::Form(ClosedForm::Sin)),
                "indicator-arc" => {
                    let need = |v: &Option<f64>, field: &'static str| {
                        v.ok_or_else(|| invalid(field, "required for indicator-arc"))
                    };
                    BoundaryFunction::indicator_arc(
                        T::lit(need(start, "start")?),
                        T::lit(need(end, "end")?),
                        T::lit(need(height, "height")?),
                    )
                }
                other => Err(invalid(
                    "name",
                    format!("unknown form '{other}' (cos, sin, indicator-arc)"),
                )),
            },
        }
    }
}

/// `{"atoms": [[angle, mass], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomsDoc {
    pub atoms: Vec<[f64; 2]>,
}

impl AtomsDoc {
    pub fn of<T: Real>(atoms: &SingularAtoms<T>) -> Self {
        Self {
            atoms: atoms.atoms().iter().map(|&(a, m)| [f(a), f(m)]).collect(),
        }
    }

    pub fn to_atoms<T: Real>(&self) -> Result<SingularAtoms<T>> {
        SingularAtoms::new(
            self.atoms
                .iter()
                .map(|a| (T::lit(a[0]), T::lit(a[1])))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactorDoc {
    Blaschke {
        #[serde(default)]
        zeros: Vec<ComplexDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<GeneratorDoc>,
    },
    Singular {
        atoms: Vec<[f64; 2]>,
    },
    Outer {
        k: BoundaryFunctionDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<ComplexDoc>,
    },
    Series(SeriesDoc),
}

/// `{"factors": [...]}`; the empty product is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerDoc {
    #[serde(default)]
    pub factors: Vec<FactorDoc>,
}

impl InnerDoc {
    pub fn of<T: Real>(spec: &InnerFunctionSpec<T>) -> Self {
        Self {
            factors: spec
                .factors
                .iter()
                .map(|factor| match factor {
                    Factor::Blaschke(b) => FactorDoc::Blaschke {
                        zeros: ZerosDoc::of(b.zeros()).zeros,
                        generator: None,
                    },
                    Factor::Singular(s) => FactorDoc::Singular {
                        atoms: AtomsDoc::of(s).atoms,
                    },
                    Factor::Outer(o) => FactorDoc::Outer {
                        k: BoundaryFunctionDoc::of(o.density.k()),
                        lambda: Some(ComplexDoc::of(o.density.lambda())),
                    },
                    Factor::Series(s) => FactorDoc::Series(SeriesDoc::of(s)),
                })
                .collect(),
        }
    }

    /// Blaschke factors are evaluated over their whole stored prefix.
    pub fn to_spec<T: Real>(&self) -> Result<InnerFunctionSpec<T>> {
        let factors = self
            .factors
            .iter()
            .map(|doc| {
                Ok(match doc {
                    FactorDoc::Blaschke { zeros, generator } => {
                        let zeros = ZerosDoc {
                            zeros: zeros.clone(),
                            generator: generator.clone(),
                        }
                        .to_sequence()?;
                        Factor::Blaschke(
                            BlaschkeProduct::new(zeros).with_truncation(Truncation::Full)?,
                        )
                    }
                    FactorDoc::Singular { atoms } => Factor::Singular(
                        AtomsDoc {
                            atoms: atoms.clone(),
                        }
                        .to_atoms()?,
                    ),
                    FactorDoc::Outer { k, lambda } => {
                        let lambda = lambda.map_or(Complex::new(T::one(), T::zero()), |l| l.to());
                        Factor::Outer(OuterFactor {
                            density: OuterDensity::new(k.to_function()?, lambda)?,
                            quadrature: Quadrature::default(),
                        })
                    }
                    FactorDoc::Series(s) => Factor::Series(s.to_spec()?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InnerFunctionSpec::new(factors))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub weight: f64,
    pub component: InnerDoc,
}

/// `{"weight_rule": "inverse-square", "terms": [{"weight": w, "component": {...}}, ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub weight_rule: WeightRule,
    pub terms: Vec<TermDoc>,
}

impl SeriesDoc {
    pub fn of<T: Real>(spec: &SeriesSpec<T>) -> Self {
        Self {
            weight_rule: spec.weight_rule(),
            terms: spec
                .terms()
                .iter()
                .map(|t| TermDoc {
                    weight: f(t.weight),
                    component: InnerDoc::of(&t.component),
                })
                .collect(),
        }
    }

    pub fn to_spec<T: Real>(&self) -> Result<SeriesSpec<T>> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(SeriesTerm {
                    weight: T::lit(t.weight),
                    component: t.component.to_spec()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SeriesSpec::new(terms, self.weight_rule)
    }
}

pub fn parse_json<D: serde::de::DeserializeOwned>(text: &str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn write_rows<W: Write + ?Sized>(
    out: &mut W,
    header: &str,
    rows: impl Iterator<Item = String>,
) -> io::Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

fn complex_cols<T: Real>(v: &Complex<T>) -> String {
    format!(
        "{},{},{}",
        fmt17(f(v.re)),
        fmt17(f(v.im)),
        fmt17(f(v.norm()))
    )
}

/// `angle,re,im,modulus`.
pub fn write_scan_csv<T: Real, W: Write + ?Sized>(
    scan: &BoundaryScan<T>,
    out: &mut W,
) -> io::Result<()> {
    let rows = scan
        .angles
        .iter()
        .zip(&scan.values)
        .map(|(a, v)| format!("{},{}", fmt17(f(*a)), complex_cols(v)));
    write_rows(out, "angle,re,im,modulus", rows)
}

/// `radius,re,im,modulus`.
pub fn write_trace_csv<T: Real, W: Write + ?Sized>(
    trace: &RadialTrace<T>,
    out: &mut W,
) -> io::Result<()> {
    let rows = trace
        .radii
        .iter()
        .zip(&trace.values)
        .map(|(r, v)| format!("{},{}", fmt17(f(*r)), complex_cols(v)));
    write_rows(out, "radius,re,im,modulus", rows)
}

/// Long format `angle,n,partial_sum,classification`.
pub fn write_frostman_csv<T: Real, W: Write + ?Sized>(
    profile: &FrostmanProfile<T>,
    out: &mut W,
) -> io::Result<()> {
    let rows = profile.angles.iter().enumerate().flat_map(|(j, angle)| {
        profile.schedule.iter().enumerate().map(move |(i, n)| {
            format!(
                "{},{},{},{}",
                fmt17(f(*angle)),
                n,
                fmt17(f(profile.partial_sums[j][i])),
                profile.classification[j].as_str()
            )
        })
    });
    write_rows(out, "angle,n,partial_sum,classification", rows)
}
