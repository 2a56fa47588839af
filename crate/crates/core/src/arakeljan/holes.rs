//! Complement components and the G-hole / strict-hole dichotomy.

use serde::Serialize;

use super::grid::{CellClass, CellMask, GridPlane};
use crate::error::Result;

const UNLABELED: u32 = u32::MAX;

/// A maximal 4-connected set of G-cells outside the subject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    pub cells: Vec<usize>,
}

/// Components of `G ∖ subject`, numbered in row-major order of their first cell.
#[derive(Clone, Debug)]
pub struct Labeling {
    labels: Vec<u32>,
    components: Vec<Component>,
}

impl Labeling {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Component containing `cell`, if the cell is in the complement.
    pub fn label(&self, cell: usize) -> Option<usize> {
        let l = self.labels[cell];
        (l != UNLABELED).then_some(l as usize)
    }
}

pub fn label_components(grid: &GridPlane, subject: &CellMask) -> Result<Labeling> {
    grid.check_subject(subject, "subject")?;
    let n = grid.width() * grid.height();
    let mut labels = vec![UNLABELED; n];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if labels[start] != UNLABELED || !grid.in_g(start) || subject.get(start) {
            continue;
        }
        let id = components.len();
        let mut cells = Vec::new();
        labels[start] = id as u32;
        stack.push(start);
        while let Some(c) = stack.pop() {
            cells.push(c);
            for nb in grid.neighbors4(c) {
                if labels[nb] == UNLABELED && grid.in_g(nb) && !subject.get(nb) {
                    labels[nb] = id as u32;
                    stack.push(nb);
                }
            }
        }
        cells.sort_unstable();
        components.push(Component { id, cells });
    }
    Ok(Labeling { labels, components })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleReport {
    pub component_id: usize,
    pub cell_count: usize,
    pub touches_frame: bool,
    pub adjacent_to_boundary_of_g: bool,
    pub is_g_hole: bool,
    pub is_strict_hole: bool,
    /// Chebyshev distance, in cells, from the component to the nearest cell
    /// outside G or beyond the window.
    pub boundary_distance: usize,
    #[serde(skip)]
    pub cells: Vec<usize>,
}

/// Chebyshev distance from each cell to the nearest cell outside G, where the
/// ring of cells just beyond the window counts as distance-1 neighbours.
pub(crate) fn boundary_distance_map(grid: &GridPlane) -> Vec<usize> {
    let (w, h) = (grid.width(), grid.height());
    let mut d: Vec<usize> = (0..w * h)
        .map(|i| {
            if grid.in_g(i) {
                grid.frame_distance(i)
            } else {
                0
            }
        })
        .collect();
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let mut best = d[i];
            if x > 0 {
                best = best.min(d[i - 1] + 1);
            }
            if y > 0 {
                best = best.min(d[i - w] + 1);
                if x > 0 {
                    best = best.min(d[i - w - 1] + 1);
                }
                if x + 1 < w {
                    best = best.min(d[i - w + 1] + 1);
                }
            }
            d[i] = best;
        }
    }
    for y in (0..h).rev() {
        for x in (0..w).rev() {
            let i = y * w + x;
            let mut best = d[i];
            if x + 1 < w {
                best = best.min(d[i + 1] + 1);
            }
            if y + 1 < h {
                best = best.min(d[i + w] + 1);
                if x + 1 < w {
                    best = best.min(d[i + w + 1] + 1);
                }
                if x > 0 {
                    best = best.min(d[i + w - 1] + 1);
                }
            }
            d[i] = best;
        }
    }
    d
}

/// Applies the accumulation criterion to every component of `G ∖ subject`:
/// a component is a G-hole iff it stays off the window edge of an unbounded
/// domain and has no cell 4-adjacent to a cell outside G. On a bounded window
/// the cells beyond the edge lie outside G, so edge contact counts as
/// boundary adjacency.
pub fn classify_holes(grid: &GridPlane, subject: &CellMask) -> Result<Vec<HoleReport>> {
    let labeling = label_components(grid, subject)?;
    Ok(classify_labeling(grid, labeling, None))
}

pub(crate) fn classify_labeling(
    grid: &GridPlane,
    labeling: Labeling,
    distances: Option<&[usize]>,
) -> Vec<HoleReport> {
    let unbounded = grid.frame_is_unbounded();
    labeling
        .components
        .into_iter()
        .map(|comp| {
            let touches_frame = comp.cells.iter().any(|&c| grid.on_frame(c));
            let outside_adjacent = comp.cells.iter().any(|&c| {
                grid.neighbors4(c)
                    .any(|nb| grid.class(nb) == CellClass::OutsideG)
            });
            let adjacent = outside_adjacent || (touches_frame && !unbounded);
            let is_g_hole = !(touches_frame && unbounded) && !adjacent;
            let boundary_distance = match distances {
                Some(d) => comp.cells.iter().map(|&c| d[c]).min().unwrap_or(0),
                None => 0,
            };
            HoleReport {
                component_id: comp.id,
                cell_count: comp.cells.len(),
                touches_frame,
                adjacent_to_boundary_of_g: adjacent,
                is_g_hole,
                is_strict_hole: !is_g_hole,
                boundary_distance,
                cells: comp.cells,
            }
        })
        .collect()
}

/// Like [`classify_holes`] but also fills in `boundary_distance`.
pub fn classify_holes_with_distance(
    grid: &GridPlane,
    subject: &CellMask,
) -> Result<Vec<HoleReport>> {
    let labeling = label_components(grid, subject)?;
    let d = boundary_distance_map(grid);
    Ok(classify_labeling(grid, labeling, Some(&d)))
}
