//! Compact probe sets used to test compact containment of G-holes.

use super::grid::{CellMask, GridPlane, Selector};
use crate::error::{Error, Result};

/// A G-hole of `set ∪ K` within this many cells of ∂G (or of infinity), and
/// closer to it than `K` is, counts as escaping every compact.
pub const DEFAULT_BOUNDARY_MARGIN: usize = 2;

#[derive(Clone, Debug)]
pub struct ProbeSet {
    /// Include the expanding concentric square discs and annuli.
    pub auto: bool,
    pub masks: Vec<CellMask>,
    pub boundary_margin: usize,
}

impl Default for ProbeSet {
    fn default() -> Self {
        Self::auto()
    }
}

impl ProbeSet {
    pub fn auto() -> Self {
        Self {
            auto: true,
            masks: Vec::new(),
            boundary_margin: DEFAULT_BOUNDARY_MARGIN,
        }
    }

    pub fn masks_only(masks: Vec<CellMask>) -> Self {
        Self {
            auto: false,
            masks,
            boundary_margin: DEFAULT_BOUNDARY_MARGIN,
        }
    }

    /// Auto family plus the grid's own probe cells, if there are any.
    pub fn for_grid(grid: &GridPlane) -> Self {
        let mut set = Self::auto();
        let k = grid.mask(Selector::K);
        if !k.is_empty() {
            set.masks.push(k);
        }
        set
    }

    pub fn with_mask(mut self, mask: CellMask) -> Self {
        self.masks.push(mask);
        self
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.boundary_margin = margin;
        self
    }

    /// User masks first (validated, errors on failure), then the valid members
    /// of the auto family.
    pub fn materialize(&self, grid: &GridPlane) -> Result<Vec<Probe>> {
        let mut out = Vec::new();
        for (index, mask) in self.masks.iter().enumerate() {
            validate_probe(grid, mask).map_err(|reason| Error::Probe { index, reason })?;
            out.push(Probe {
                label: format!("user[{index}]"),
                mask: mask.clone(),
            });
        }
        if self.auto {
            out.extend(
                auto_probes(grid)
                    .into_iter()
                    .filter(|p| validate_probe(grid, &p.mask).is_ok()),
            );
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Probe {
    pub label: String,
    pub mask: CellMask,
}

/// A probe must be a nonempty 8-connected set inside G whose raster boundary
/// is a simple digital curve: no 2×2 block may hold exactly a diagonal pair.
pub fn validate_probe(grid: &GridPlane, mask: &CellMask) -> Result<(), String> {
    if mask.width() != grid.width() || mask.height() != grid.height() {
        return Err("mask shape differs from the grid".into());
    }
    let cells = mask.cells();
    let Some(&first) = cells.first() else {
        return Err("probe is empty".into());
    };
    if cells.iter().any(|&c| !grid.in_g(c)) {
        return Err("probe leaves G".into());
    }
    let mut seen = CellMask::new(mask.width(), mask.height());
    let mut stack = vec![first];
    seen.set(first, true);
    let mut reached = 0;
    while let Some(c) = stack.pop() {
        reached += 1;
        for nb in grid.neighbors8(c) {
            if mask.get(nb) && !seen.get(nb) {
                seen.set(nb, true);
                stack.push(nb);
            }
        }
    }
    if reached != cells.len() {
        return Err("probe is disconnected".into());
    }
    for y in 0..mask.height().saturating_sub(1) {
        for x in 0..mask.width().saturating_sub(1) {
            let (a, b) = (mask.at(x, y), mask.at(x + 1, y));
            let (c, d) = (mask.at(x, y + 1), mask.at(x + 1, y + 1));
            if a == d && b == c && a != b {
                return Err(format!("diagonal-only contact at ({x}, {y})"));
            }
        }
    }
    Ok(())
}

/// Filled squares and two-cell-thick square annuli centred on the window,
/// growing until they cover it, clipped to G.
pub fn auto_probes(grid: &GridPlane) -> Vec<Probe> {
    let (w, h) = (grid.width(), grid.height());
    let step = (w.min(h) / 16).max(2);
    let thickness = (step / 2).max(2) as f64;
    let (cx, cy) = ((w as f64 - 1.0) / 2.0, (h as f64 - 1.0) / 2.0);
    let reach = w.max(h) as f64 / 2.0 + step as f64;
    let g = grid.g_mask();
    let cheb = |x: usize, y: usize| (x as f64 - cx).abs().max((y as f64 - cy).abs());
    let mut out = Vec::new();
    let mut k = 1;
    loop {
        let r = (k * step) as f64;
        if r > reach {
            break;
        }
        let filled = CellMask::from_fn(w, h, |x, y| g.at(x, y) && cheb(x, y) <= r);
        let ring = CellMask::from_fn(w, h, |x, y| {
            let d = cheb(x, y);
            g.at(x, y) && d <= r && d > r - thickness
        });
        for (kind, mask) in [("square", filled), ("annulus", ring)] {
            if !mask.is_empty() {
                out.push(Probe {
                    label: format!("{kind}[r={r}]"),
                    mask,
                });
            }
        }
        k += 1;
    }
    out
}
