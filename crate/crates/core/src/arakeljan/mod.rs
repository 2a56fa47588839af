//! Raster classification of relatively closed sets in a planar domain:
//! G-holes, the Arakeljan conditions, and G-hole independence of pairs.

pub mod fixtures;
mod grid;
mod holes;
mod probes;

use rayon::prelude::*;
use serde::Serialize;

pub use grid::{CellClass, CellMask, GridJson, GridPlane, Selector};
pub use holes::{
    classify_holes, classify_holes_with_distance, label_components, Component, HoleReport, Labeling,
};
pub use probes::{auto_probes, validate_probe, Probe, ProbeSet, DEFAULT_BOUNDARY_MARGIN};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArakeljanVerdict {
    Fails,
    /// No violation found among the probes tried; not a proof.
    PassesProbes,
}

impl ArakeljanVerdict {
    pub fn passes(self) -> bool {
        self == Self::PassesProbes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fails => "fails",
            Self::PassesProbes => "passes-probes",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailedCondition {
    /// The set itself has G-holes.
    HasGHoles,
    /// Some probe K makes a G-hole of `set ∪ K` crowd the boundary.
    HolesEscapeCompacts,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArakeljanReport {
    pub verdict: ArakeljanVerdict,
    pub failed_condition: Option<FailedCondition>,
    pub failing_probe: Option<String>,
    pub probes_tested: usize,
    pub witnesses: Vec<HoleReport>,
}

pub fn is_arakeljan(
    grid: &GridPlane,
    subject: &CellMask,
    probes: &ProbeSet,
) -> Result<ArakeljanReport> {
    let probe_list = probes.materialize(grid)?;
    let holes = classify_holes_with_distance(grid, subject)?;
    let g_holes: Vec<HoleReport> = holes.into_iter().filter(|h| h.is_g_hole).collect();
    if !g_holes.is_empty() {
        return Ok(ArakeljanReport {
            verdict: ArakeljanVerdict::Fails,
            failed_condition: Some(FailedCondition::HasGHoles),
            failing_probe: None,
            probes_tested: 0,
            witnesses: g_holes,
        });
    }
    let distances = holes::boundary_distance_map(grid);
    let margin = probes.boundary_margin;
    let per_probe: Vec<Vec<HoleReport>> = probe_list
        .par_iter()
        .map(|p| {
            let with_probe = subject.union(&p.mask);
            // Subject and probe both lie in G, so labeling cannot fail.
            let labeling = label_components(grid, &with_probe).expect("probe inside G");
            // A hole only counts against the subject when it reaches closer to
            // the boundary than the probe itself does; otherwise the probe
            // alone is what crowds the boundary.
            let probe_distance = p
                .mask
                .cells()
                .iter()
                .map(|&c| distances[c])
                .min()
                .unwrap_or(0);
            holes::classify_labeling(grid, labeling, Some(&distances))
                .into_iter()
                .filter(|h| {
                    h.is_g_hole
                        && h.boundary_distance <= margin
                        && h.boundary_distance < probe_distance
                })
                .collect()
        })
        .collect();
    for (i, witnesses) in per_probe.into_iter().enumerate() {
        if !witnesses.is_empty() {
            return Ok(ArakeljanReport {
                verdict: ArakeljanVerdict::Fails,
                failed_condition: Some(FailedCondition::HolesEscapeCompacts),
                failing_probe: Some(probe_list[i].label.clone()),
                probes_tested: i + 1,
                witnesses,
            });
        }
    }
    Ok(ArakeljanReport {
        verdict: ArakeljanVerdict::PassesProbes,
        failed_condition: None,
        failing_probe: None,
        probes_tested: probe_list.len(),
        witnesses: Vec::new(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub independent: bool,
    /// Component id in the labeling of `G ∖ (E ∪ F)`.
    pub witness_component: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HoleReport>,
}

fn check_disjoint(e: &CellMask, f: &CellMask) -> Result<()> {
    if e.intersects(f) {
        return Err(invalid("subjects", "E and F overlap"));
    }
    Ok(())
}

/// E and F are independent when no intersection of a strict hole of E with a
/// strict hole of F is a G-hole. Each connected piece of such an intersection
/// is a component of `G ∖ (E ∪ F)`, so the pieces are tested directly.
pub fn hole_independence(
    grid: &GridPlane,
    e: &CellMask,
    f: &CellMask,
) -> Result<IndependenceReport> {
    check_disjoint(e, f)?;
    let union = e.union(f);
    let (le, (lf, lu)) = rayon::join(
        || label_components(grid, e),
        || {
            rayon::join(
                || label_components(grid, f),
                || label_components(grid, &union),
            )
        },
    );
    let (le, lf, lu) = (le?, lf?, lu?);
    let strict = |labeling: &Labeling| -> Vec<bool> {
        holes::classify_labeling(grid, labeling.clone(), None)
            .iter()
            .map(|h| h.is_strict_hole)
            .collect()
    };
    let (strict_e, strict_f) = (strict(&le), strict(&lf));
    let pieces = holes::classify_labeling(grid, lu, None);
    for piece in pieces {
        if !piece.is_g_hole {
            continue;
        }
        let cell = piece.cells[0];
        let in_strict_e = le.label(cell).is_some_and(|l| strict_e[l]);
        let in_strict_f = lf.label(cell).is_some_and(|l| strict_f[l]);
        if in_strict_e && in_strict_f {
            return Ok(IndependenceReport {
                independent: false,
                witness_component: Some(piece.component_id),
                witness: Some(piece),
            });
        }
    }
    Ok(IndependenceReport {
        independent: true,
        witness_component: None,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionReport {
    pub e: ArakeljanReport,
    pub f: ArakeljanReport,
    pub independence: IndependenceReport,
    pub union: ArakeljanReport,
    /// Both sets pass and are independent.
    pub hypothesis_holds: bool,
    /// Hypothesis holds but the union fails: an internal inconsistency.
    pub inconsistent: bool,
}

pub fn union_check(
    grid: &GridPlane,
    e: &CellMask,
    f: &CellMask,
    probes: &ProbeSet,
) -> Result<UnionReport> {
    check_disjoint(e, f)?;
    let union = e.union(f);
    let ((re, rf), (ind, ru)) = rayon::join(
        || {
            rayon::join(
                || is_arakeljan(grid, e, probes),
                || is_arakeljan(grid, f, probes),
            )
        },
        || {
            rayon::join(
                || hole_independence(grid, e, f),
                || is_arakeljan(grid, &union, probes),
            )
        },
    );
    let (re, rf, ind, ru) = (re?, rf?, ind?, ru?);
    let hypothesis_holds = re.verdict.passes() && rf.verdict.passes() && ind.independent;
    Ok(UnionReport {
        inconsistent: hypothesis_holds && !ru.verdict.passes(),
        hypothesis_holds,
        e: re,
        f: rf,
        independence: ind,
        union: ru,
    })
}
