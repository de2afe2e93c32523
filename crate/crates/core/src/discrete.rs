//! Finite torus realization of bandlimited sampling, used as a numeric
//! oracle for the exact verdicts.
//!
//! A model lives on a circle of length `P`. Its signal space is spanned by
//! the exponentials `e^{2 pi i n x / P}` with `n / P` in the band, sampled on
//! the `M = P / a` points `a z`. The analysis matrix is
//!
//! ```text
//! theta[z, n] = exp(2 pi i n z / M) / sqrt(P)
//! ```
//!
//! so coefficient vectors are coordinates in the orthonormal Fourier basis of
//! `L^2` of the circle. With this unit choice `theta^H theta` acts on each
//! aliasing class `{n' = n mod M}` as `(class size) / a`, i.e. the squared
//! singular values are exactly the values `m_A / a` of the exact
//! multiplicity at the grid points `n / M mod 1`. The orthonormal case
//! (`[0,1)`, `a = 1`, `P = 1`) gives 1 and double oversampling gives 2.
//!
//! Two models with the same `P` are compared on the common index set
//! `0..L`, `L = lcm(M1, M2)`, with each sample sequence extended periodically
//! and rescaled by `sqrt(M / L)` so that self-Gram matrices are unchanged.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::band::BandSet;
use crate::error::Error;
use crate::lattice::{is_sampling_matrix, Lattice};
use crate::rational::{ceil_int, to_f64, Rational};

/// Unit convention string embedded in model dumps.
pub const NORM_CONVENTION: &str =
    "theta[z,n] = exp(2*pi*i*n*z/M)/sqrt(P); squared singular values = m_A(n/M mod 1)/a";

/// Singular values below this fraction of the largest are treated as zero.
pub const RANK_TOL: f64 = 1e-12;
/// Singular values between `RANK_TOL` and this fraction are an ambiguous
/// rank decision and raise [`Error::RankAmbiguous`].
pub const RANK_GUARD: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct DiscreteModel {
    band: BandSet,
    step: Rational,
    period: Rational,
    samples: usize,
    frequencies: Vec<i64>,
    analysis: DMatrix<Complex64>,
}

fn grid_frequencies(band: &BandSet, period: &Rational) -> Vec<i64> {
    let mut out = Vec::new();
    for b in band.boxes() {
        let lo = ceil_int(&(&b.lo()[0] * period));
        let hi = ceil_int(&(&b.hi()[0] * period));
        let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
            continue;
        };
        out.extend(lo..hi);
    }
    out.sort_unstable();
    out
}

fn unit_phase(numer: i64, denom: usize) -> Complex64 {
    let r = numer.rem_euclid(denom as i64) as f64 / denom as f64;
    let angle = 2.0 * core::f64::consts::PI * r;
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

/// Builds the model for band `E` (one-dimensional), step `a` and period `P`.
pub fn build_model(
    band: &BandSet,
    step: &Rational,
    period: &Rational,
) -> Result<DiscreteModel, Error> {
    if band.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: band.dim(),
        });
    }
    if !step.is_positive() || !period.is_positive() {
        return Err(Error::InvalidInput(
            "step and period must be positive".into(),
        ));
    }
    let ratio = period / step;
    if !ratio.denom().is_one() {
        return Err(Error::Incommensurable {
            period: period.clone(),
            step: step.clone(),
        });
    }
    let samples = ratio
        .to_integer()
        .to_usize()
        .filter(|&m| m <= 1 << 20)
        .ok_or_else(|| Error::InvalidInput("sample count too large".into()))?;
    let frequencies = grid_frequencies(band, period);
    if frequencies.is_empty() {
        return Err(Error::EmptyBandGrid {
            suggested: smallest_working_period(band, step)?,
        });
    }
    let scale = 1.0 / libm::sqrt(to_f64(period));
    let analysis = DMatrix::from_fn(samples, frequencies.len(), |z, j| {
        unit_phase(
            ((frequencies[j].rem_euclid(samples as i64)) as i128 * z as i128 % samples as i128)
                as i64,
            samples,
        ) * scale
    });
    Ok(DiscreteModel {
        band: band.clone(),
        step: step.clone(),
        period: period.clone(),
        samples,
        frequencies,
        analysis,
    })
}

fn smallest_working_period(band: &BandSet, step: &Rational) -> Result<Rational, Error> {
    let min_len = band
        .boxes()
        .iter()
        .map(|b| &b.hi()[0] - &b.lo()[0])
        .min()
        .ok_or_else(|| Error::InvalidInput("band is empty".into()))?;
    // once 1/P' <= min_len every interval holds a grid point
    let bound = ceil_int(&(Rational::one() / (step * &min_len)))
        .to_u64()
        .unwrap_or(u64::MAX);
    for m in 1..=bound.max(1) {
        let candidate = step * Rational::from_integer(m.into());
        if !grid_frequencies(band, &candidate).is_empty() {
            return Ok(candidate);
        }
    }
    Ok(step * Rational::from_integer(bound.into()))
}

impl DiscreteModel {
    pub fn band(&self) -> &BandSet {
        &self.band
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    /// `M = P / a`.
    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Model frequency indices `n` (ascending), one per column.
    pub fn frequencies(&self) -> &[i64] {
        &self.frequencies
    }

    pub fn analysis(&self) -> &DMatrix<Complex64> {
        &self.analysis
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::scalar(self.step.clone()).expect("step is positive")
    }

    /// Samples `theta f` of a coefficient vector.
    pub fn analyze(&self, coeffs: &[Complex64]) -> Result<Vec<Complex64>, Error> {
        if coeffs.len() != self.frequencies.len() {
            return Err(Error::DimensionMismatch {
                expected: self.frequencies.len(),
                found: coeffs.len(),
            });
        }
        let v = &self.analysis * DVector::from_column_slice(coeffs);
        Ok(v.iter().copied().collect())
    }

    /// Analysis matrix on `0..len` (a multiple of `M`), periodically
    /// extended and rescaled by `sqrt(M / len)`.
    pub fn extended_analysis(&self, len: usize) -> DMatrix<Complex64> {
        let scale = libm::sqrt(self.samples as f64 / len as f64);
        DMatrix::from_fn(len, self.frequencies.len(), |z, j| {
            self.analysis[(z % self.samples, j)] * scale
        })
    }

    /// Positions of the model frequencies on the torus, `n / M mod 1`.
    pub fn torus_points(&self) -> Vec<Rational> {
        self.frequencies
            .iter()
            .map(|&n| {
                Rational::new(
                    n.rem_euclid(self.samples as i64).into(),
                    (self.samples as i64).into(),
                )
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericBounds {
    pub lower: f64,
    pub upper: f64,
}

fn rank_of(singular: &DVector<f64>) -> Result<usize, Error> {
    let max = singular.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0);
    }
    let mut rank = 0;
    for &s in singular.iter() {
        let r = s / max;
        if r > RANK_GUARD {
            rank += 1;
        } else if r > RANK_TOL {
            return Err(Error::RankAmbiguous { ratio: r });
        }
    }
    Ok(rank)
}

/// Extreme nonzero squared singular values of the analysis matrix, i.e. the
/// frame bounds of the sampling functions for their closed span.
pub fn frame_bounds_numeric(model: &DiscreteModel) -> Result<NumericBounds, Error> {
    let sv = model.analysis.clone().svd(false, false).singular_values;
    rank_of(&sv)?;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let lower = sv
        .iter()
        .copied()
        .filter(|&s| s > RANK_GUARD * max)
        .fold(f64::INFINITY, f64::min);
    Ok(NumericBounds {
        lower: lower * lower,
        upper: max * max,
    })
}

fn common_length(m1: &DiscreteModel, m2: &DiscreteModel) -> Result<usize, Error> {
    if m1.period != m2.period {
        return Err(Error::PeriodMismatch);
    }
    Ok(m1.samples.lcm(&m2.samples))
}

fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Operator norm of `theta1^H theta2` on the common coefficient space.
pub fn cross_gram(m1: &DiscreteModel, m2: &DiscreteModel) -> Result<f64, Error> {
    let len = common_length(m1, m2)?;
    let g = m1.extended_analysis(len).adjoint() * m2.extended_analysis(len);
    Ok(spectral_norm(&g))
}

/// Frequency pairs `(n, n')` whose samples coincide on the common index set,
/// decided in integer arithmetic: `n L/M1 == n' L/M2 (mod L)`.
pub fn collisions(m1: &DiscreteModel, m2: &DiscreteModel) -> Result<Vec<(i64, i64)>, Error> {
    let len = common_length(m1, m2)? as i128;
    let f1 = len / m1.samples as i128;
    let f2 = len / m2.samples as i128;
    let mut out = Vec::new();
    for &n in &m1.frequencies {
        for &k in &m2.frequencies {
            if (n as i128 * f1 - k as i128 * f2).rem_euclid(len) == 0 {
                out.push((n, k));
            }
        }
    }
    Ok(out)
}

fn range_basis(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>, Error> {
    let svd = m.clone().svd(true, false);
    let rank = rank_of(&svd.singular_values)?;
    let u = svd.u.expect("requested U");
    // nalgebra does not sort singular values; pick the columns explicitly
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > RANK_GUARD * max)
        .collect();
    debug_assert_eq!(cols.len(), rank);
    Ok(u.select_columns(cols.iter()))
}

/// `||P1 P2 - P2 P1||` for the orthogonal projections onto the two ranges in
/// the common coefficient space.
pub fn projections_commutator(m1: &DiscreteModel, m2: &DiscreteModel) -> Result<f64, Error> {
    let len = common_length(m1, m2)?;
    let q1 = range_basis(&m1.extended_analysis(len))?;
    let q2 = range_basis(&m2.extended_analysis(len))?;
    let (r1, r2) = (q1.ncols(), q2.ncols());
    if r1 == 0 || r2 == 0 {
        return Ok(0.0);
    }
    // P1P2 - P2P1 = W J W^H with W = [Q1 Q2], J = [[0, K], [-K^H, 0]], K = Q1^H Q2.
    let k = q1.adjoint() * &q2;
    let mut j = DMatrix::<Complex64>::zeros(r1 + r2, r1 + r2);
    j.view_mut((0, r1), (r1, r2)).copy_from(&k);
    j.view_mut((r1, 0), (r2, r1)).copy_from(&(-k.adjoint()));
    let mut w = DMatrix::<Complex64>::zeros(len, r1 + r2);
    w.view_mut((0, 0), (len, r1)).copy_from(&q1);
    w.view_mut((0, r1), (len, r2)).copy_from(&q2);
    let r = w.qr().r();
    Ok(spectral_norm(&(&r * j * r.adjoint())))
}

fn least_squares(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
) -> Result<DVector<Complex64>, Error> {
    let svd = a.clone().svd(true, true);
    rank_of(&svd.singular_values)?;
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    svd.solve(b, RANK_GUARD * max)
        .map_err(|e| Error::InvalidInput(e.into()))
}

/// Least-squares (canonical dual) reconstruction from samples.
pub fn reconstruct_least_squares(
    model: &DiscreteModel,
    samples: &[Complex64],
) -> Result<Vec<Complex64>, Error> {
    if samples.len() != model.samples {
        return Err(Error::DimensionMismatch {
            expected: model.samples,
            found: samples.len(),
        });
    }
    let x = least_squares(&model.analysis, &DVector::from_column_slice(samples))?;
    Ok(x.iter().copied().collect())
}

/// Closed-form reconstruction `f = a theta^H s`, valid when `a` is a sampling
/// matrix for the band (the frame is then tight with bound `1/a`).
pub fn reconstruct_closed_form(
    model: &DiscreteModel,
    samples: &[Complex64],
) -> Result<Vec<Complex64>, Error> {
    if samples.len() != model.samples {
        return Err(Error::DimensionMismatch {
            expected: model.samples,
            found: samples.len(),
        });
    }
    if !is_sampling_matrix(&model.band, &model.lattice())?.is_sampling {
        return Err(Error::NotTight);
    }
    let a = to_f64(&model.step);
    let x = model.analysis.adjoint() * DVector::from_column_slice(samples) * Complex64::new(a, 0.0);
    Ok(x.iter().copied().collect())
}

#[derive(Clone, Debug)]
pub struct MuxOutcome {
    /// Combined stream on `0..L`.
    pub stream: Vec<Complex64>,
    pub first: Vec<Complex64>,
    pub second: Vec<Complex64>,
    /// `max(|f - f'| / |f|, |g - g'| / |g|)`.
    pub crosstalk: f64,
    pub cross_gram: f64,
}

/// Cross-gram threshold below which recovery is guaranteed.
pub const DISJOINT_TOL: f64 = 1e-10;

fn rel_err(orig: &[Complex64], rec: &DVector<Complex64>) -> f64 {
    let diff: f64 = orig
        .iter()
        .zip(rec.iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>();
    let base: f64 = orig.iter().map(|a| a.norm_sqr()).sum();
    if base == 0.0 {
        libm::sqrt(diff)
    } else {
        libm::sqrt(diff / base)
    }
}

/// Sums both coefficient streams into one channel and recovers each signal
/// by a least-squares solve against its own analysis matrix. Refuses
/// overlapping pairs unless `force` is set.
pub fn multiplex_roundtrip(
    m1: &DiscreteModel,
    f: &[Complex64],
    m2: &DiscreteModel,
    g: &[Complex64],
    force: bool,
) -> Result<MuxOutcome, Error> {
    if f.len() != m1.frequencies.len() {
        return Err(Error::DimensionMismatch {
            expected: m1.frequencies.len(),
            found: f.len(),
        });
    }
    if g.len() != m2.frequencies.len() {
        return Err(Error::DimensionMismatch {
            expected: m2.frequencies.len(),
            found: g.len(),
        });
    }
    let cross = cross_gram(m1, m2)?;
    if cross > DISJOINT_TOL && !force {
        return Err(Error::NotDisjoint { cross_gram: cross });
    }
    let len = common_length(m1, m2)?;
    let t1 = m1.extended_analysis(len);
    let t2 = m2.extended_analysis(len);
    let stream = &t1 * DVector::from_column_slice(f) + &t2 * DVector::from_column_slice(g);
    let f_rec = least_squares(&t1, &stream)?;
    let g_rec = least_squares(&t2, &stream)?;
    let crosstalk = rel_err(f, &f_rec).max(rel_err(g, &g_rec));
    Ok(MuxOutcome {
        stream: stream.iter().copied().collect(),
        first: f_rec.iter().copied().collect(),
        second: g_rec.iter().copied().collect(),
        crosstalk,
        cross_gram: cross,
    })
}

/// Exact check used alongside the float path: is `cross_gram` structurally
/// zero?
pub fn grid_disjoint(m1: &DiscreteModel, m2: &DiscreteModel) -> Result<bool, Error> {
    Ok(collisions(m1, m2)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn band(s: &str) -> BandSet {
        s.parse().unwrap()
    }

    #[test]
    fn orthonormal_case_is_one_by_one() {
        let m = build_model(&band("[0,1)"), &int(1), &int(1)).unwrap();
        assert_eq!(m.samples(), 1);
        assert_eq!(m.frequencies(), &[0]);
        assert!((m.analysis()[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let b = frame_bounds_numeric(&m).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shannon_grid_enumeration() {
        let m = build_model(&band("[-1,-1/2) u [1/2,1)"), &ratio(1, 3), &int(3)).unwrap();
        assert_eq!(m.samples(), 9);
        assert_eq!(m.frequencies(), &[-3, -2, 2]);
        let m = build_model(&band("[-1,-1/2) u [1/2,1)"), &int(1), &int(4)).unwrap();
        assert_eq!(m.samples(), 4);
        assert_eq!(m.frequencies(), &[-4, -3, 2, 3]);
    }

    #[test]
    fn incommensurable_and_empty_grid() {
        assert!(matches!(
            build_model(&band("[0,1)"), &ratio(2, 3), &int(1)),
            Err(Error::Incommensurable { .. })
        ));
        // no n with n/1 in [1/4,1/2); P = 3 puts 1/3 inside
        assert_eq!(
            build_model(&band("[1/4,1/2)"), &int(1), &int(1)).unwrap_err(),
            Error::EmptyBandGrid { suggested: int(3) }
        );
    }

    #[test]
    fn period_mismatch() {
        let a = build_model(&band("[0,1)"), &int(1), &int(1)).unwrap();
        let b = build_model(&band("[0,1)"), &int(1), &int(2)).unwrap();
        assert_eq!(cross_gram(&a, &b), Err(Error::PeriodMismatch));
        assert_eq!(projections_commutator(&a, &b), Err(Error::PeriodMismatch));
    }

    #[test]
    fn closed_form_requires_sampling_lattice() {
        let m = build_model(&band("[-1,-1/2) u [1/2,1)"), &ratio(2, 3), &int(6)).unwrap();
        let s = vec![Complex64::new(1.0, 0.0); m.samples()];
        assert_eq!(reconstruct_closed_form(&m, &s), Err(Error::NotTight));
    }

    #[test]
    fn overlapping_mux_refused_without_force() {
        let m = build_model(&band("[-1,-1/2) u [1/2,1)"), &int(1), &int(4)).unwrap();
        let f = vec![Complex64::new(1.0, 0.0); 4];
        assert!(matches!(
            multiplex_roundtrip(&m, &f, &m, &f, false),
            Err(Error::NotDisjoint { .. })
        ));
    }
}
