//! Raster model of a domain `G` and relatively closed subsets.

use bitflags::bitflags;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum CellClass {
    OutsideG = 0,
    GFree = 1,
    FSet = 2,
    ESet = 3,
    KProbe = 4,
}

impl CellClass {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Some(match code {
            0 => Self::OutsideG,
            1 => Self::GFree,
            2 => Self::FSet,
            3 => Self::ESet,
            4 => Self::KProbe,
            _ => return None,
        })
    }

    pub fn symbol(self) -> char {
        match self {
            Self::OutsideG => ' ',
            Self::GFree => '.',
            Self::FSet => '#',
            Self::ESet => 'E',
            Self::KProbe => 'K',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        Some(match c {
            ' ' => Self::OutsideG,
            '.' => Self::GFree,
            '#' => Self::FSet,
            'E' => Self::ESet,
            'K' => Self::KProbe,
            _ => return None,
        })
    }
}

bitflags! {
    /// Cell classes making up a subject set.
    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub struct Selector: u8 {
        const F = 0b001;
        const E = 0b010;
        const K = 0b100;
    }
}

impl Selector {
    /// Parses names such as `F`, `E`, `EF`, `E+F`, `K`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sel = Self::empty();
        for c in text.chars() {
            sel |= match c {
                'F' | 'f' | '#' => Self::F,
                'E' | 'e' => Self::E,
                'K' | 'k' => Self::K,
                '+' | ',' => Self::empty(),
                other => return Err(invalid("subject", format!("unknown set '{other}'"))),
            };
        }
        if sel.is_empty() {
            return Err(invalid("subject", "empty selector"));
        }
        Ok(sel)
    }

    fn matches(self, class: CellClass) -> bool {
        match class {
            CellClass::FSet => self.contains(Self::F),
            CellClass::ESet => self.contains(Self::E),
            CellClass::KProbe => self.contains(Self::K),
            _ => false,
        }
    }
}

/// Boolean raster of the same shape as a grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl CellMask {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::new(width, height);
        for y in 0..height {
            for x in 0..width {
                m.bits[y * width + x] = f(x, y);
            }
        }
        m
    }

    pub fn from_cells(width: usize, height: usize, cells: &[usize]) -> Self {
        let mut m = Self::new(width, height);
        for &c in cells {
            m.bits[c] = true;
        }
        m
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        self.bits[index]
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn set(&mut self, index: usize, value: bool) {
        self.bits[index] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn cells(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| *a || *b)
                .collect(),
        }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| *a && *b)
    }

    fn same_shape(&self, width: usize, height: usize) -> bool {
        self.width == width && self.height == height
    }
}

/// Rectangular raster of classified cells, row-major with row 0 at the top.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPlane {
    width: usize,
    height: usize,
    /// Side length of a cell in coordinate units.
    pub cell_size: f64,
    /// Coordinates of the lower-left corner of the window.
    pub origin: (f64, f64),
    cells: Vec<CellClass>,
    frame_is_unbounded: bool,
}

impl GridPlane {
    pub fn new(
        width: usize,
        height: usize,
        cells: Vec<CellClass>,
        frame_is_unbounded: bool,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(invalid("grid", "width and height must be positive"));
        }
        if cells.len() != width * height {
            return Err(invalid(
                "cells",
                format!("expected {} cells, got {}", width * height, cells.len()),
            ));
        }
        if !cells
            .iter()
            .any(|&c| matches!(c, CellClass::GFree | CellClass::FSet))
        {
            return Err(invalid("cells", "G must contain a free or F cell"));
        }
        Ok(Self {
            width,
            height,
            cell_size: 1.0,
            origin: (0.0, 0.0),
            cells,
            frame_is_unbounded,
        })
    }

    /// Rasterizes `classify(x, y)` at cell centres of the window
    /// `[origin.0, origin.0 + width·cell] × [origin.1, origin.1 + height·cell]`.
    pub fn rasterize(
        width: usize,
        height: usize,
        cell_size: f64,
        origin: (f64, f64),
        frame_is_unbounded: bool,
        classify: impl Fn(f64, f64) -> CellClass,
    ) -> Result<Self> {
        let mut cells = Vec::with_capacity(width * height);
        for row in 0..height {
            let y = origin.1 + (height - row) as f64 * cell_size - 0.5 * cell_size;
            for col in 0..width {
                let x = origin.0 + (col as f64 + 0.5) * cell_size;
                cells.push(classify(x, y));
            }
        }
        let mut g = Self::new(width, height, cells, frame_is_unbounded)?;
        g.cell_size = cell_size;
        g.origin = origin;
        Ok(g)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn frame_is_unbounded(&self) -> bool {
        self.frame_is_unbounded
    }

    pub fn cells(&self) -> &[CellClass] {
        &self.cells
    }

    #[inline]
    pub fn class(&self, index: usize) -> CellClass {
        self.cells[index]
    }

    #[inline]
    pub fn in_g(&self, index: usize) -> bool {
        self.cells[index] != CellClass::OutsideG
    }

    /// Coordinates of a cell centre.
    pub fn center(&self, index: usize) -> (f64, f64) {
        let (col, row) = (index % self.width, index / self.width);
        (
            self.origin.0 + (col as f64 + 0.5) * self.cell_size,
            self.origin.1 + (self.height - row) as f64 * self.cell_size - 0.5 * self.cell_size,
        )
    }

    pub fn mask(&self, selector: Selector) -> CellMask {
        CellMask {
            width: self.width,
            height: self.height,
            bits: self.cells.iter().map(|&c| selector.matches(c)).collect(),
        }
    }

    pub fn g_mask(&self) -> CellMask {
        CellMask {
            width: self.width,
            height: self.height,
            bits: self
                .cells
                .iter()
                .map(|&c| c != CellClass::OutsideG)
                .collect(),
        }
    }

    pub(crate) fn check_subject(&self, mask: &CellMask, field: &'static str) -> Result<()> {
        if !mask.same_shape(self.width, self.height) {
            return Err(invalid(field, "mask shape differs from the grid"));
        }
        if (0..self.cells.len()).any(|i| mask.get(i) && !self.in_g(i)) {
            return Err(invalid(field, "set must lie inside G"));
        }
        Ok(())
    }

    /// 4-neighbours of a cell inside the window.
    pub(crate) fn neighbors4(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let (x, y) = (index % self.width, index / self.width);
        let w = self.width;
        let h = self.height;
        [
            (x > 0).then(|| index - 1),
            (x + 1 < w).then(|| index + 1),
            (y > 0).then(|| index - w),
            (y + 1 < h).then(|| index + w),
        ]
        .into_iter()
        .flatten()
    }

    pub(crate) fn neighbors8(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let (x, y) = ((index % self.width) as isize, (index / self.width) as isize);
        let (w, h) = (self.width as isize, self.height as isize);
        (-1..=1isize)
            .flat_map(move |dy| (-1..=1isize).map(move |dx| (dx, dy)))
            .filter(|&d| d != (0, 0))
            .filter_map(move |(dx, dy)| {
                let (nx, ny) = (x + dx, y + dy);
                (nx >= 0 && ny >= 0 && nx < w && ny < h).then(|| (ny * w + nx) as usize)
            })
    }

    pub(crate) fn on_frame(&self, index: usize) -> bool {
        let (x, y) = (index % self.width, index / self.width);
        x == 0 || y == 0 || x + 1 == self.width || y + 1 == self.height
    }

    /// Chebyshev distance from a cell to the window edge, counting the first
    /// cell beyond the window as distance 1.
    pub(crate) fn frame_distance(&self, index: usize) -> usize {
        let (x, y) = (index % self.width, index / self.width);
        1 + x.min(y).min(self.width - 1 - x).min(self.height - 1 - y)
    }

    /// Each cell replaced by a `factor × factor` block.
    pub fn refine(&self, factor: usize) -> Self {
        let factor = factor.max(1);
        let (w, h) = (self.width * factor, self.height * factor);
        let mut cells = Vec::with_capacity(w * h);
        for y in 0..h {
            for x in 0..w {
                cells.push(self.cells[(y / factor) * self.width + x / factor]);
            }
        }
        Self {
            width: w,
            height: h,
            cell_size: self.cell_size / factor as f64,
            origin: self.origin,
            cells,
            frame_is_unbounded: self.frame_is_unbounded,
        }
    }

    /// `grid <w> <h> <0|1>` header followed by one text row per grid row.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "grid {} {} {}\n",
            self.width,
            self.height,
            u8::from(self.frame_is_unbounded)
        );
        for row in self.cells.chunks(self.width) {
            out.extend(row.iter().map(|c| c.symbol()));
            out.push('\n');
        }
        out
    }

    /// Parses the text format. Short rows are padded with outside cells,
    /// since editors strip trailing spaces.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("missing header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "grid" {
            return Err(Error::Format(format!("bad header '{header}'")));
        }
        let parse = |s: &str, what: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::Format(format!("bad {what} '{s}'")))
        };
        let width = parse(fields[1], "width")?;
        let height = parse(fields[2], "height")?;
        let unbounded = match fields[3] {
            "0" => false,
            "1" => true,
            other => return Err(Error::Format(format!("bad unbounded flag '{other}'"))),
        };
        let mut cells = Vec::with_capacity(width * height);
        for row in 0..height {
            let line = lines.next().unwrap_or("");
            let line = line.strip_suffix('\r').unwrap_or(line);
            let mut n = 0;
            for c in line.chars() {
                let class = CellClass::from_symbol(c).ok_or_else(|| {
                    Error::Format(format!("row {row}: unknown cell symbol '{c}'"))
                })?;
                cells.push(class);
                n += 1;
            }
            if n > width {
                return Err(Error::Format(format!(
                    "row {row} has {n} cells, expected {width}"
                )));
            }
            cells.extend(std::iter::repeat_n(CellClass::OutsideG, width - n));
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Format(format!("more than {height} rows")));
        }
        Self::new(width, height, cells, unbounded)
    }

    pub fn to_json(&self) -> GridJson {
        GridJson {
            width: self.width,
            height: self.height,
            unbounded: self.frame_is_unbounded,
            cells: self.cells.iter().map(|c| c.code()).collect(),
        }
    }

    pub fn from_json(doc: &GridJson) -> Result<Self> {
        let cells = doc
            .cells
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                CellClass::from_code(c)
                    .ok_or_else(|| invalid("cells", format!("cell {i} has code {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.width, doc.height, cells, doc.unbounded)
    }
}

/// JSON form of a grid: class codes 0–4 in row-major order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridJson {
    pub width: usize,
    pub height: usize,
    #[serde(default)]
    pub unbounded: bool,
    pub cells: Vec<u8>,
}
