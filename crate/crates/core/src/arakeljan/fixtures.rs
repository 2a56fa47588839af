//! Bundled raster fixtures. `scale` multiplies the base resolution; the
//! geometry is fixed in coordinates, so `scale = 2` is an honest 2×
//! re-rasterization rather than a cell duplication.

use std::f64::consts::PI;

use super::grid::{CellClass, GridPlane};
use crate::error::{invalid, Result};

pub const FIXTURE_NAMES: [&str; 5] = [
    "nested-circles",
    "annulus-in-plane",
    "disc-with-segment",
    "disc-with-two-segments",
    "separated-arcs",
];

/// Odd-sized square window centred on 0 reaching `extent` past the origin,
/// with `res` cells per unit length.
fn centred(
    res: usize,
    extent: f64,
    unbounded: bool,
    classify: impl Fn(f64, f64) -> CellClass,
) -> GridPlane {
    let half = (extent * res as f64).ceil() as usize;
    let width = 2 * half + 1;
    let cell = 1.0 / res as f64;
    let origin = -(half as f64 + 0.5) * cell;
    GridPlane::rasterize(width, width, cell, (origin, origin), unbounded, classify)
        .expect("fixture geometry is nonempty")
}

fn ring(r: f64, radius: f64, half_width: f64) -> bool {
    (r - radius).abs() <= half_width
}

/// Punctured unit disc with E the circle of radius 1/2 and F the circle of
/// radius 1/4, each two base cells thick. Base resolution: 32 cells per unit.
pub fn nested_circles(scale: usize) -> GridPlane {
    let res = 32 * scale.max(1);
    let half_cell = 0.5 / res as f64;
    let w = 1.0 / 32.0;
    centred(res, 1.0 + 2.0 / 32.0, false, |x, y| {
        let r = x.hypot(y);
        if r < half_cell || r >= 1.0 {
            CellClass::OutsideG
        } else if ring(r, 0.5, w) {
            CellClass::ESet
        } else if ring(r, 0.25, w) {
            CellClass::FSet
        } else {
            CellClass::GFree
        }
    })
}

/// G = ℂ with F = {1/2 < |z| < 2}. Base resolution: 16 cells per unit.
pub fn annulus_in_plane(scale: usize) -> GridPlane {
    centred(16 * scale.max(1), 3.0, true, |x, y| {
        let r = x.hypot(y);
        if r > 0.5 && r < 2.0 {
            CellClass::FSet
        } else {
            CellClass::GFree
        }
    })
}

fn segment_disc(scale: usize, classify: impl Fn(f64, f64) -> CellClass) -> GridPlane {
    centred(16 * scale.max(1), 1.0 + 2.0 / 16.0, false, |x, y| {
        if x.hypot(y) >= 1.0 {
            CellClass::OutsideG
        } else {
            classify(x, y)
        }
    })
}

/// Unit disc with F the radius along the positive real axis.
pub fn disc_with_segment(scale: usize) -> GridPlane {
    segment_disc(scale, |x, y| {
        if y.abs() <= 1.0 / 16.0 && x >= 0.0 {
            CellClass::FSet
        } else {
            CellClass::GFree
        }
    })
}

/// Unit disc with E and F disjoint radial segments on opposite sides of the
/// origin, each running out to the boundary.
pub fn disc_with_two_segments(scale: usize) -> GridPlane {
    segment_disc(scale, |x, y| {
        if y.abs() <= 1.0 / 16.0 && x >= 0.125 {
            CellClass::ESet
        } else if y.abs() <= 1.0 / 16.0 && x <= -0.125 {
            CellClass::FSet
        } else {
            CellClass::GFree
        }
    })
}

/// G = ℂ with E and F two short, far-apart arcs of the unit circle.
pub fn separated_arcs(scale: usize) -> GridPlane {
    centred(16 * scale.max(1), 2.0, true, |x, y| {
        let r = x.hypot(y);
        let t = y.atan2(x).rem_euclid(2.0 * PI);
        if !ring(r, 1.0, 1.0 / 16.0) {
            CellClass::GFree
        } else if t <= PI / 4.0 {
            CellClass::ESet
        } else if (PI..=1.25 * PI).contains(&t) {
            CellClass::FSet
        } else {
            CellClass::GFree
        }
    })
}

pub fn by_name(name: &str, scale: usize) -> Result<GridPlane> {
    Ok(match name {
        "nested-circles" => nested_circles(scale),
        "annulus-in-plane" => annulus_in_plane(scale),
        "disc-with-segment" => disc_with_segment(scale),
        "disc-with-two-segments" => disc_with_two_segments(scale),
        "separated-arcs" => separated_arcs(scale),
        other => {
            return Err(invalid(
                "fixture",
                format!(
                    "unknown fixture '{other}' (known: {})",
                    FIXTURE_NAMES.join(", ")
                ),
            ))
        }
    })
}
