//! Exact step functions on the torus chart `[0,1)^d`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::band::{BandSet, RationalBox};
use crate::error::Error;
use crate::grid::{merge_cuts, Grid};
use crate::rational::{format_rational, Rational};

/// Piecewise-constant function on `[0,1)^d` with rational breakpoints and
/// values. The partition is the coarsest product grid carrying the function,
/// so equal functions have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusStep {
    grid: Grid<Rational>,
}

impl TorusStep {
    pub fn constant(dim: usize, value: Rational) -> Self {
        let cuts = vec![vec![Rational::zero(), Rational::one()]; dim];
        TorusStep {
            grid: Grid {
                cuts,
                values: vec![value],
            },
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(dim, Rational::zero())
    }

    fn canonical(mut grid: Grid<Rational>) -> Self {
        grid.minimize();
        TorusStep { grid }
    }

    /// Weighted indicator of a union of pieces already inside `[0,1)`; one
    /// dimension, pieces may overlap (their weights add).
    pub(crate) fn from_pieces_1d(pieces: &[(Rational, Rational, Rational)]) -> Self {
        let mut cuts = vec![Rational::zero(), Rational::one()];
        for (lo, hi, _) in pieces {
            cuts.push(lo.clone());
            cuts.push(hi.clone());
        }
        cuts.sort();
        cuts.dedup();
        let values = cuts
            .windows(2)
            .map(|w| {
                pieces
                    .iter()
                    .filter(|(lo, hi, _)| lo <= &w[0] && &w[0] < hi)
                    .fold(Rational::zero(), |acc, (_, _, v)| acc + v)
            })
            .collect();
        Self::canonical(Grid {
            cuts: vec![cuts],
            values,
        })
    }

    /// Pointwise product of one-dimensional factors: `f(x) = prod_i f_i(x_i)`.
    pub(crate) fn tensor(factors: &[TorusStep]) -> Self {
        let cuts: Vec<Vec<Rational>> = factors.iter().map(|f| f.grid.cuts[0].clone()).collect();
        let probe = Grid {
            cuts: cuts.clone(),
            values: Vec::<Rational>::new(),
        };
        let total: usize = probe.shape().iter().product();
        let values = (0..total)
            .map(|flat| {
                probe
                    .unflatten(flat)
                    .iter()
                    .zip(factors)
                    .fold(Rational::one(), |acc, (&i, f)| acc * &f.grid.values[i])
            })
            .collect();
        Self::canonical(Grid { cuts, values })
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    fn zip_with(
        &self,
        other: &TorusStep,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self, Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let cuts: Vec<Vec<Rational>> = (0..self.dim())
            .map(|axis| merge_cuts(&self.grid.cuts[axis], &other.grid.cuts[axis]))
            .collect();
        let a = self.grid.refine(&cuts, Rational::zero());
        let b = other.grid.refine(&cuts, Rational::zero());
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| f(x, y))
            .collect();
        Ok(Self::canonical(Grid { cuts, values }))
    }

    pub fn add(&self, other: &TorusStep) -> Result<Self, Error> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let values = self.grid.values.iter().map(|v| v * factor).collect();
        Self::canonical(Grid {
            cuts: self.grid.cuts.clone(),
            values,
        })
    }

    /// Value at a point of `[0,1)^d`; points outside the chart are reduced
    /// modulo 1 first.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let reduced: Vec<Rational> = point.iter().map(crate::rational::frac).collect();
        self.grid
            .value_at(&reduced)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `(piece, value)` pairs covering `[0,1)^d`, in row-major cell order.
    pub fn pieces(&self) -> Vec<(RationalBox, Rational)> {
        (0..self.grid.values.len())
            .map(|flat| {
                let idx = self.grid.unflatten(flat);
                let lo = idx
                    .iter()
                    .enumerate()
                    .map(|(a, &i)| self.grid.cuts[a][i].clone())
                    .collect();
                let hi = idx
                    .iter()
                    .enumerate()
                    .map(|(a, &i)| self.grid.cuts[a][i + 1].clone())
                    .collect();
                (
                    RationalBox::new(lo, hi).expect("cuts strictly increase"),
                    self.grid.values[flat].clone(),
                )
            })
            .collect()
    }

    /// Breakpoints on one axis, including 0 and 1.
    pub fn breakpoints(&self, axis: usize) -> &[Rational] {
        &self.grid.cuts[axis]
    }

    pub fn max_value(&self) -> Rational {
        self.grid
            .values
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Smallest value on a piece where the function is nonzero.
    pub fn min_nonzero(&self) -> Option<Rational> {
        self.grid
            .values
            .iter()
            .filter(|v| !v.is_zero())
            .min()
            .cloned()
    }

    pub fn support(&self) -> BandSet {
        let values = self.grid.values.iter().map(|v| !v.is_zero()).collect();
        BandSet::from_grid(
            Grid {
                cuts: self.grid.cuts.clone(),
                values,
            },
            self.dim(),
        )
    }

    pub fn integral(&self) -> Rational {
        self.pieces()
            .iter()
            .fold(Rational::zero(), |acc, (b, v)| acc + b.volume() * v)
    }

    /// CSV dump: a `dim,pieces` header and its row, then a `lo,hi,value`
    /// header (`lo1,hi1,...,lod,hid,value` for `d > 1`) and one row per piece.
    pub fn to_csv(&self) -> String {
        let pieces = self.pieces();
        let mut out = alloc::format!("dim,pieces\n{},{}\n", self.dim(), pieces.len());
        if self.dim() == 1 {
            out.push_str("lo,hi,value\n");
        } else {
            for a in 1..=self.dim() {
                out.push_str(&alloc::format!("lo{a},hi{a},"));
            }
            out.push_str("value\n");
        }
        for (b, v) in &pieces {
            for a in 0..self.dim() {
                out.push_str(&alloc::format!(
                    "{},{},",
                    format_rational(&b.lo()[a]),
                    format_rational(&b.hi()[a])
                ));
            }
            out.push_str(&format_rational(v));
            out.push('\n');
        }
        out
    }

    /// Distinct values taken on pieces of positive measure.
    pub fn values(&self) -> Vec<Rational> {
        let mut v = self.grid.values.clone();
        v.sort();
        v.dedup();
        v
    }
}
