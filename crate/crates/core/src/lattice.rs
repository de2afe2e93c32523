//! Lattice periodization: the multiplicity function
//! `m_A(xi) = sum_k chi_E(A*^{-1}(xi + k))` as an exact step function on
//! `[0,1)^d`, plus the sampling-matrix test and the frame bounds it implies.
//!
//! Only diagonal lattices are handled exactly. General rational matrices go
//! through [`numeric_multiplicity`], which samples the same sum on a grid.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::band::{BandSet, RationalBox};
use crate::error::Error;
use crate::rational::{ceil_int, floor_int, Rational};
use crate::torus::TorusStep;

/// Sampling lattice `A Z^d + shift` with `A` an invertible rational diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    diag: Vec<Rational>,
    shift: Vec<Rational>,
}

impl Lattice {
    pub fn diagonal(diag: Vec<Rational>) -> Result<Self, Error> {
        if diag.is_empty() {
            return Err(Error::InvalidInput("lattice needs dimension >= 1".into()));
        }
        if diag.iter().any(Zero::is_zero) {
            return Err(Error::SingularMatrix);
        }
        let shift = vec![Rational::zero(); diag.len()];
        Ok(Lattice { diag, shift })
    }

    pub fn scalar(a: Rational) -> Result<Self, Error> {
        Self::diagonal(vec![a])
    }

    pub fn with_shift(mut self, shift: Vec<Rational>) -> Result<Self, Error> {
        if shift.len() != self.diag.len() {
            return Err(Error::DimensionMismatch {
                expected: self.diag.len(),
                found: shift.len(),
            });
        }
        self.shift = shift;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[Rational] {
        &self.diag
    }

    pub fn shift(&self) -> &[Rational] {
        &self.shift
    }

    pub fn det(&self) -> Rational {
        self.diag.iter().fold(Rational::one(), |acc, a| acc * a)
    }

    /// `A*`. A real diagonal matrix is self-adjoint.
    pub fn adjoint(&self) -> Lattice {
        self.clone()
    }

    /// `diag(self) * diag(other)`, shift dropped.
    pub fn compose(&self, other: &Lattice) -> Result<Lattice, Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Lattice::diagonal(
            self.diag
                .iter()
                .zip(&other.diag)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        let n = self.dim();
        let mut entries = vec![Rational::zero(); n * n];
        for (i, a) in self.diag.iter().enumerate() {
            entries[i * n + i] = a.clone();
        }
        RationalMatrix { n, entries }
    }
}

/// Dense square rational matrix, used only by the numeric fallback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    /// Row-major entries.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(
                "matrix must be square and nonempty".into(),
            ));
        }
        Ok(RationalMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> RationalMatrix {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        RationalMatrix { n, entries }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| (0..self.n).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    /// Exact Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<RationalMatrix, Error> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = vec![Rational::zero(); n * n];
        for i in 0..n {
            inv[i * n + i] = Rational::one();
        }
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col].clone();
            for k in 0..n {
                a[col * n + k] = &a[col * n + k] / &p;
                inv[col * n + k] = &inv[col * n + k] / &p;
            }
            for r in 0..n {
                if r != col && !a[r * n + col].is_zero() {
                    let factor = a[r * n + col].clone();
                    for k in 0..n {
                        let da = &factor * &a[col * n + k];
                        let di = &factor * &inv[col * n + k];
                        a[r * n + k] -= da;
                        inv[r * n + k] -= di;
                    }
                }
            }
        }
        Ok(RationalMatrix { n, entries: inv })
    }
}

/// Periodizes a single box (already mapped by `A*`) onto `[0,1)^d`.
fn periodize_box(b: &RationalBox) -> TorusStep {
    let factors: Vec<TorusStep> = (0..b.dim())
        .map(|axis| {
            let lo = &b.lo()[axis];
            let hi = &b.hi()[axis];
            let k_min = floor_int(lo) - BigInt::one();
            let k_max = ceil_int(hi) + BigInt::one();
            let mut pieces = Vec::new();
            let mut k = k_min;
            while k <= k_max {
                let kq = Rational::from_integer(k.clone());
                let p_lo = core::cmp::max(lo - &kq, Rational::zero());
                let p_hi = core::cmp::min(hi - &kq, Rational::one());
                if p_lo < p_hi {
                    pieces.push((p_lo, p_hi, Rational::one()));
                }
                k += 1;
            }
            TorusStep::from_pieces_1d(&pieces)
        })
        .collect();
    TorusStep::tensor(&factors)
}

/// `sum_k sum_boxes w_b chi_{A* b}(xi + k)` for weighted boxes.
pub(crate) fn periodize_weighted(
    boxes: &[(RationalBox, Rational)],
    lattice: &Lattice,
) -> Result<TorusStep, Error> {
    let d = lattice.dim();
    let zero = vec![Rational::zero(); d];
    let adj = lattice.adjoint();
    let mut acc = TorusStep::zero(d);
    for (b, w) in boxes {
        if b.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: b.dim(),
            });
        }
        if w.is_zero() {
            continue;
        }
        let image = b.affine_image(adj.diag(), &zero)?;
        acc = acc.add(&periodize_box(&image).scale(w))?;
    }
    Ok(acc)
}

/// Exact multiplicity function of `E` under the lattice `A Z^d`. The shift
/// of the lattice does not affect the range and is ignored.
pub fn multiplicity(band: &BandSet, lattice: &Lattice) -> Result<TorusStep, Error> {
    if band.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch {
            expected: lattice.dim(),
            found: band.dim(),
        });
    }
    let boxes: Vec<(RationalBox, Rational)> = band
        .boxes()
        .iter()
        .map(|b| (b.clone(), Rational::one()))
        .collect();
    periodize_weighted(&boxes, lattice)
}

/// Exact route for a general matrix when it happens to be diagonal.
pub fn multiplicity_for_matrix(
    band: &BandSet,
    matrix: &RationalMatrix,
) -> Result<TorusStep, Error> {
    if !matrix.is_diagonal() {
        return Err(Error::UnsupportedMatrix);
    }
    let lattice = Lattice::diagonal(
        (0..matrix.dim())
            .map(|i| matrix.get(i, i).clone())
            .collect(),
    )?;
    multiplicity(band, &lattice)
}

/// Multiplicity sampled at the midpoints of a `resolution^d` grid. Always
/// approximate as a function, though each sample is computed exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericGrid {
    pub dim: usize,
    pub resolution: usize,
    /// Row-major, last axis fastest.
    pub values: Vec<u32>,
    pub approximate: bool,
}

impl NumericGrid {
    pub fn midpoint(&self, mut flat: usize) -> Vec<Rational> {
        let mut idx = vec![0usize; self.dim];
        for axis in (0..self.dim).rev() {
            idx[axis] = flat % self.resolution;
            flat /= self.resolution;
        }
        idx.iter()
            .map(|&i| Rational::new(BigInt::from(2 * i + 1), BigInt::from(2 * self.resolution)))
            .collect()
    }
}

pub fn numeric_multiplicity(
    band: &BandSet,
    matrix: &RationalMatrix,
    resolution: usize,
) -> Result<NumericGrid, Error> {
    let d = matrix.dim();
    if band.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: band.dim(),
        });
    }
    if resolution < 2 {
        return Err(Error::InvalidInput("resolution must be at least 2".into()));
    }
    let adj = matrix.transpose();
    let inv = adj.inverse()?;
    let total = resolution
        .checked_pow(d as u32)
        .ok_or_else(|| Error::InvalidInput("grid too large".into()))?;
    let mut grid = NumericGrid {
        dim: d,
        resolution,
        values: vec![0; total],
        approximate: true,
    };
    let Some(bbox) = band.bounding_box() else {
        return Ok(grid);
    };

    // integer range of k such that xi + k can land in A* bbox for xi in [0,1)^d
    let mut k_lo = vec![i64::MAX; d];
    let mut k_hi = vec![i64::MIN; d];
    for corner in 0u32..(1u32 << d) {
        let pt: Vec<Rational> = (0..d)
            .map(|a| {
                if corner & (1 << a) == 0 {
                    bbox.lo()[a].clone()
                } else {
                    bbox.hi()[a].clone()
                }
            })
            .collect();
        let img = adj.apply(&pt);
        for a in 0..d {
            let lo = (floor_int(&img[a]) - BigInt::one())
                .to_i64()
                .ok_or(Error::UnboundedBand)?;
            let hi = (ceil_int(&img[a]) + BigInt::one())
                .to_i64()
                .ok_or(Error::UnboundedBand)?;
            k_lo[a] = k_lo[a].min(lo);
            k_hi[a] = k_hi[a].max(hi);
        }
    }
    let k_count: usize = (0..d).map(|a| (k_hi[a] - k_lo[a] + 1) as usize).product();

    for flat in 0..total {
        let xi = grid.midpoint(flat);
        let mut count = 0u32;
        let mut k = k_lo.clone();
        for _ in 0..k_count {
            let shifted: Vec<Rational> = xi
                .iter()
                .zip(&k)
                .map(|(x, &kk)| x + Rational::from_integer(kk.into()))
                .collect();
            if band.contains(&inv.apply(&shifted)) {
                count += 1;
            }
            for a in (0..d).rev() {
                k[a] += 1;
                if k[a] <= k_hi[a] {
                    break;
                }
                k[a] = k_lo[a];
            }
        }
        grid.values[flat] = count;
    }
    Ok(grid)
}

/// Result of the sampling-matrix test together with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingCheck {
    pub is_sampling: bool,
    pub max: Rational,
    pub certificate: TorusStep,
}

/// `A` is a sampling matrix for `E` iff the multiplicity never exceeds one.
pub fn is_sampling_matrix(band: &BandSet, lattice: &Lattice) -> Result<SamplingCheck, Error> {
    let m = multiplicity(band, lattice)?;
    let max = m.max_value();
    Ok(SamplingCheck {
        is_sampling: max <= Rational::one(),
        max,
        certificate: m,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameBounds {
    pub lower: Rational,
    pub upper: Rational,
}

impl FrameBounds {
    pub fn is_tight(&self) -> bool {
        self.lower == self.upper
    }
}

/// Frame bounds of `{T_{Az} phi_E}` for its closed linear span:
/// `|U phi_E|^2 = m_A / |det A|`, so the bounds are the extreme nonzero
/// values of the multiplicity divided by `|det A|`.
pub fn frame_bounds_exact(band: &BandSet, lattice: &Lattice) -> Result<FrameBounds, Error> {
    let m = multiplicity(band, lattice)?;
    let lower = m.min_nonzero().ok_or(Error::EmptyBand)?;
    let det = lattice.det().abs();
    Ok(FrameBounds {
        lower: lower / &det,
        upper: m.max_value() / det,
    })
}
