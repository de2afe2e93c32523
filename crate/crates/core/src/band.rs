//! Exact set algebra on finite unions of half-open rational boxes.
//!
//! Every [`BandSet`] is kept in a canonical normal form: the boxes come from
//! the coarsest product grid on which the indicator is constant, merged
//! greedily axis by axis. Two sets with the same indicator function therefore
//! compare equal with `==`, which is what makes "equal modulo null sets"
//! decidable here.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::grid::{merge_cuts, Grid};
use crate::rational::{format_rational, parse_rational, Rational};

/// Product of half-open intervals `[lo_i, hi_i)`. Never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalBox {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl RationalBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self, Error> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(Error::InvalidInput(String::from(
                "box must have dimension >= 1",
            )));
        }
        if let Some(axis) = (0..lo.len()).find(|&i| lo[i] >= hi[i]) {
            return Err(Error::EmptyBox { axis });
        }
        Ok(RationalBox { lo, hi })
    }

    /// One-dimensional `[lo, hi)`.
    pub fn interval(lo: Rational, hi: Rational) -> Result<Self, Error> {
        Self::new(vec![lo], vec![hi])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rational] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rational] {
        &self.hi
    }

    pub fn volume(&self) -> Rational {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| h - l)
            .fold(Rational::one(), |acc, w| acc * w)
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (l, h))| l <= x && x < h)
    }

    /// Image under `x -> scale * x + shift` (diagonal `scale`), re-expressed
    /// half-open. Negative scales swap the endpoints; the boundary change is a
    /// null set.
    pub fn affine_image(&self, scale: &[Rational], shift: &[Rational]) -> Result<Self, Error> {
        let d = self.dim();
        if scale.len() != d || shift.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: scale.len().min(shift.len()),
            });
        }
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for i in 0..d {
            if scale[i].is_zero() {
                return Err(Error::SingularMatrix);
            }
            let a = &scale[i] * &self.lo[i] + &shift[i];
            let b = &scale[i] * &self.hi[i] + &shift[i];
            if scale[i].is_negative() {
                lo.push(b);
                hi.push(a);
            } else {
                lo.push(a);
                hi.push(b);
            }
        }
        Ok(RationalBox { lo, hi })
    }
}

impl fmt::Display for RationalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(
                f,
                "[{},{})",
                format_rational(&self.lo[i]),
                format_rational(&self.hi[i])
            )?;
        }
        Ok(())
    }
}

/// Outcome of comparing two sets up to null sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BandRelation {
    Equal,
    SubsetProper,
    SupersetProper,
    Disjoint,
    Overlapping,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
    SymDiff,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Intersect => a && b,
            BoolOp::Difference => a && !b,
            BoolOp::SymDiff => a != b,
        }
    }
}

/// Finite union of rational boxes in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BandSet {
    dim: usize,
    boxes: Vec<RationalBox>,
}

impl BandSet {
    pub fn empty(dim: usize) -> Self {
        BandSet {
            dim,
            boxes: Vec::new(),
        }
    }

    /// `[0,1)^d`, the fundamental domain of the torus chart.
    pub fn unit_cube(dim: usize) -> Self {
        let b = RationalBox {
            lo: vec![Rational::zero(); dim],
            hi: vec![Rational::one(); dim],
        };
        BandSet {
            dim,
            boxes: vec![b],
        }
    }

    pub fn from_box(b: RationalBox) -> Self {
        BandSet {
            dim: b.dim(),
            boxes: vec![b],
        }
    }

    /// Canonical normal form of the union of `raw`.
    pub fn normalize(raw: Vec<RationalBox>, dim: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidInput(String::from("dimension must be >= 1")));
        }
        if let Some(b) = raw.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.dim(),
            });
        }
        if raw.is_empty() {
            return Ok(Self::empty(dim));
        }
        let mut cuts = vec![Vec::new(); dim];
        for b in &raw {
            for (axis, c) in cuts.iter_mut().enumerate() {
                c.push(b.lo[axis].clone());
                c.push(b.hi[axis].clone());
            }
        }
        for c in &mut cuts {
            c.sort();
            c.dedup();
        }
        let probe = Grid {
            cuts: cuts.clone(),
            values: Vec::<bool>::new(),
        };
        let shape = probe.shape();
        let total: usize = shape.iter().product();
        let mut values = Vec::with_capacity(total);
        for flat in 0..total {
            let idx = probe.unflatten(flat);
            let corner: Vec<Rational> = idx
                .iter()
                .enumerate()
                .map(|(a, &i)| cuts[a][i].clone())
                .collect();
            values.push(raw.iter().any(|b| b.contains(&corner)));
        }
        Ok(Self::from_grid(Grid { cuts, values }, dim))
    }

    /// Convenience for 1-D sets from `(lo, hi)` pairs; empty pairs are skipped.
    pub fn from_intervals(pairs: &[(Rational, Rational)]) -> Result<Self, Error> {
        let boxes = pairs
            .iter()
            .filter(|(l, h)| l < h)
            .map(|(l, h)| RationalBox::interval(l.clone(), h.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::normalize(boxes, 1)
    }

    pub(crate) fn from_grid(mut grid: Grid<bool>, dim: usize) -> Self {
        grid.trim(|v| !*v);
        grid.minimize();
        if grid.values.is_empty() {
            return Self::empty(dim);
        }
        let boxes = grid
            .merged_boxes()
            .into_iter()
            .map(|ranges| {
                let lo = ranges
                    .iter()
                    .enumerate()
                    .map(|(a, r)| grid.cuts[a][r.0].clone())
                    .collect();
                let hi = ranges
                    .iter()
                    .enumerate()
                    .map(|(a, r)| grid.cuts[a][r.1].clone())
                    .collect();
                RationalBox { lo, hi }
            })
            .collect();
        BandSet { dim, boxes }
    }

    pub(crate) fn to_grid(&self) -> Grid<bool> {
        let mut cuts = vec![Vec::new(); self.dim];
        for b in &self.boxes {
            for (axis, c) in cuts.iter_mut().enumerate() {
                c.push(b.lo[axis].clone());
                c.push(b.hi[axis].clone());
            }
        }
        for c in &mut cuts {
            c.sort();
            c.dedup();
        }
        let probe = Grid {
            cuts: cuts.clone(),
            values: Vec::<bool>::new(),
        };
        let total: usize = if self.boxes.is_empty() {
            0
        } else {
            probe.shape().iter().product()
        };
        let values = (0..total)
            .map(|flat| {
                let idx = probe.unflatten(flat);
                let corner: Vec<Rational> = idx
                    .iter()
                    .enumerate()
                    .map(|(a, &i)| cuts[a][i].clone())
                    .collect();
                self.contains(&corner)
            })
            .collect();
        Grid { cuts, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[RationalBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.boxes.iter().any(|b| b.contains(point))
    }

    pub fn measure(&self) -> Rational {
        self.boxes
            .iter()
            .map(RationalBox::volume)
            .fold(Rational::zero(), |a, v| a + v)
    }

    /// Smallest box containing the set, or `None` when empty.
    pub fn bounding_box(&self) -> Option<RationalBox> {
        let first = self.boxes.first()?;
        let mut lo = first.lo.clone();
        let mut hi = first.hi.clone();
        for b in &self.boxes[1..] {
            for axis in 0..self.dim {
                if b.lo[axis] < lo[axis] {
                    lo[axis] = b.lo[axis].clone();
                }
                if b.hi[axis] > hi[axis] {
                    hi[axis] = b.hi[axis].clone();
                }
            }
        }
        Some(RationalBox { lo, hi })
    }

    fn check_dim(&self, other: &BandSet) -> Result<(), Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn boolean(&self, other: &BandSet, op: BoolOp) -> Result<BandSet, Error> {
        self.check_dim(other)?;
        let ga = self.to_grid();
        let gb = other.to_grid();
        let cuts: Vec<Vec<Rational>> = (0..self.dim)
            .map(|axis| merge_cuts(&ga.cuts[axis], &gb.cuts[axis]))
            .collect();
        let ra = ga.refine(&cuts, false);
        let rb = gb.refine(&cuts, false);
        let values = ra
            .values
            .iter()
            .zip(&rb.values)
            .map(|(&x, &y)| op.apply(x, y))
            .collect();
        Ok(Self::from_grid(Grid { cuts, values }, self.dim))
    }

    pub fn union(&self, other: &BandSet) -> Result<BandSet, Error> {
        self.boolean(other, BoolOp::Union)
    }

    pub fn intersect(&self, other: &BandSet) -> Result<BandSet, Error> {
        self.boolean(other, BoolOp::Intersect)
    }

    pub fn difference(&self, other: &BandSet) -> Result<BandSet, Error> {
        self.boolean(other, BoolOp::Difference)
    }

    pub fn symdiff(&self, other: &BandSet) -> Result<BandSet, Error> {
        self.boolean(other, BoolOp::SymDiff)
    }

    /// Image under `x -> diag(scale) x + shift`.
    pub fn affine_map(&self, scale: &[Rational], shift: &[Rational]) -> Result<BandSet, Error> {
        if scale.len() != self.dim || shift.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: scale.len(),
            });
        }
        if scale.iter().any(Zero::is_zero) {
            return Err(Error::SingularMatrix);
        }
        let boxes = self
            .boxes
            .iter()
            .map(|b| b.affine_image(scale, shift))
            .collect::<Result<Vec<_>, _>>()?;
        Self::normalize(boxes, self.dim)
    }

    /// Decides the relation exactly. Checks run in the order equal, disjoint,
    /// subset, superset, so an empty set against a nonempty one is `Disjoint`.
    pub fn relation(&self, other: &BandSet) -> Result<BandRelation, Error> {
        self.check_dim(other)?;
        if self == other {
            return Ok(BandRelation::Equal);
        }
        if self.intersect(other)?.is_empty() {
            return Ok(BandRelation::Disjoint);
        }
        if self.difference(other)?.is_empty() {
            return Ok(BandRelation::SubsetProper);
        }
        if other.difference(self)?.is_empty() {
            return Ok(BandRelation::SupersetProper);
        }
        Ok(BandRelation::Overlapping)
    }

    /// Re-centres a subset of `[0,1)^d` into `[-1/2,1/2)^d` by shifting the
    /// upper half of each axis down by one. Presentation only.
    pub fn recentered(&self) -> BandSet {
        let half = Rational::new(1.into(), 2.into());
        let mut out = BandSet::empty(self.dim);
        for mask in 0u32..(1u32 << self.dim) {
            let mut lo = Vec::with_capacity(self.dim);
            let mut hi = Vec::with_capacity(self.dim);
            let mut shift = Vec::with_capacity(self.dim);
            for axis in 0..self.dim {
                if mask & (1 << axis) == 0 {
                    lo.push(Rational::zero());
                    hi.push(half.clone());
                    shift.push(Rational::zero());
                } else {
                    lo.push(half.clone());
                    hi.push(Rational::one());
                    shift.push(-Rational::one());
                }
            }
            let region = BandSet::from_box(RationalBox { lo, hi });
            let part = self.intersect(&region).expect("same dimension");
            let moved = part
                .affine_map(&vec![Rational::one(); self.dim], &shift)
                .expect("unit scale");
            out = out.union(&moved).expect("same dimension");
        }
        out
    }
}

impl fmt::Display for BandSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim={}; ", self.dim)?;
        if self.boxes.is_empty() {
            return f.write_str("empty");
        }
        for (i, b) in self.boxes.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

fn parse_box(text: &str) -> Result<RationalBox, Error> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for factor in text.split('x') {
        let t = factor.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(alloc::format!("interval `{t}` must look like [lo,hi)")))?;
        let (l, h) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(alloc::format!("interval `{t}` needs two endpoints")))?;
        for endpoint in [l, h] {
            let e = endpoint.trim().to_ascii_lowercase();
            if e.contains("inf") {
                return Err(Error::UnboundedBand);
            }
        }
        lo.push(parse_rational(l)?);
        hi.push(parse_rational(h)?);
    }
    RationalBox::new(lo, hi)
}

impl FromStr for BandSet {
    type Err = Error;

    /// Parses `dim=1; [-1,-1/2) u [1/2,1)`. The `dim=` prefix is optional for
    /// nonempty sets; boxes in `d > 1` are written `[a,b)x[c,d)`.
    fn from_str(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        let (dim, body) = match text.strip_prefix("dim=") {
            Some(rest) => {
                let (d, body) = rest
                    .split_once(';')
                    .ok_or_else(|| Error::Parse(String::from("expected `;` after dim=")))?;
                let d: usize = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad dimension `{}`", d.trim())))?;
                (Some(d), body.trim())
            }
            None => (None, text),
        };
        if body.is_empty() || body == "empty" {
            let d =
                dim.ok_or_else(|| Error::Parse(String::from("empty band needs an explicit dim=")))?;
            return Self::normalize(Vec::new(), d);
        }
        let boxes = body
            .split(" u ")
            .map(parse_box)
            .collect::<Result<Vec<_>, _>>()?;
        let d = dim.unwrap_or_else(|| boxes[0].dim());
        Self::normalize(boxes, d)
    }
}
