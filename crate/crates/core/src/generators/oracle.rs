//! Numeric cross-correlation oracle for strong disjointness.
//!
//! For test vectors `h1`, `h2` and generator lists, computes
//!
//! ```text
//! sum_j sum_z <h1, T_{Xz} psi_j> conj <h2, T_{Yz} phi_j>
//! ```
//!
//! on a periodic model: signals live on a circle of length `T`, so their
//! transforms are sequences on the grid `k / T` and
//! `<h, T_x psi> = (1/T) sum_k h(k/T) conj psi(k/T) e^{2 pi i k x / T}`.
//! The coefficient sequences are then periodic in `z` and the `z` sum runs
//! over one full common period `T lcm(q1, q2)` (steps `p/q`), which makes
//! the sum exact up to rounding. Profiles are sampled at the exact rational
//! grid points, so half-open support boundaries are respected.
//!
//! The same computation with time-domain profiles and modulation steps
//! `A`, `B` covers the `{E_{Al} f_j}` sequences.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{lcm_u64, SpectralProfile};
use crate::error::Error;
use crate::lattice::Lattice;
use crate::rational::Rational;

/// Largest common period the oracle will sum over.
pub const MAX_PERIOD: u64 = 1 << 22;

/// Samples `h(k / period)` for `k = first, first + 1, ...`; zero elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct TestVector {
    period: u64,
    first: i64,
    values: Vec<Complex64>,
}

impl TestVector {
    pub fn new(period: u64, first: i64, values: Vec<Complex64>) -> Result<Self, Error> {
        if period == 0 {
            return Err(Error::InvalidInput("period must be positive".into()));
        }
        Ok(TestVector {
            period,
            first,
            values,
        })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn first(&self) -> i64 {
        self.first
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correlation {
    /// `|sum_j sum_z a conj b| / sqrt(S1 S2)`, in `[0, 1]`.
    pub normalized: f64,
    pub cross: f64,
    /// `S1 = sum_j sum_z |a|^2`.
    pub first_energy: f64,
    pub second_energy: f64,
}

fn scalar_step(l: &Lattice) -> Result<(i128, u64), Error> {
    if l.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: l.dim(),
        });
    }
    let s = &l.diag()[0];
    let p = s.numer().to_i128();
    let q = s.denom().to_u64();
    match (p, q) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::InvalidInput("step too large for the oracle".into())),
    }
}

/// `a_z = <h, T_{sz} p>` for `z` in `0..len`.
fn coefficients(
    p: &SpectralProfile,
    step: (i128, u64),
    h: &TestVector,
    len: u64,
) -> Vec<Complex64> {
    let t = h.period;
    let modulus = i128::from(step.1) * i128::from(t);
    let n = modulus as usize;
    let roots: Vec<Complex64> = (0..n)
        .map(|i| {
            let angle = 2.0 * PI * (i as f64) / (n as f64);
            Complex64::new(libm::cos(angle), libm::sin(angle))
        })
        .collect();
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); len as usize];
    for (i, hv) in h.values.iter().enumerate() {
        let k = h.first + i as i64;
        let pv = p.value_exact(&[Rational::new(k.into(), (t as i64).into())]);
        let w = hv * pv.conj() / t as f64;
        if w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let inc = (i128::from(k) * step.0).rem_euclid(modulus) as usize;
        let mut idx = 0usize;
        for a in out.iter_mut() {
            *a += w * roots[idx];
            idx += inc;
            if idx >= n {
                idx -= n;
            }
        }
    }
    out
}

/// Normalized correlation between the analysis coefficients of `h1` against
/// the first system and of `h2` against the second.
pub fn cross_correlation(
    first: &[SpectralProfile],
    step1: &Lattice,
    second: &[SpectralProfile],
    step2: &Lattice,
    h1: &TestVector,
    h2: &TestVector,
) -> Result<Correlation, Error> {
    if first.len() != second.len() {
        return Err(Error::LengthMismatch {
            first: first.len(),
            second: second.len(),
        });
    }
    if h1.period != h2.period {
        return Err(Error::PeriodMismatch);
    }
    if let Some(p) = first.iter().chain(second).find(|p| p.dim() != 1) {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: p.dim(),
        });
    }
    let domain = first.first().or(second.first()).map(|p| p.domain());
    if first
        .iter()
        .chain(second)
        .any(|p| Some(p.domain()) != domain)
    {
        return Err(Error::InvalidProfile(
            "oracle needs all profiles in one domain".into(),
        ));
    }
    let s1 = scalar_step(step1)?;
    let s2 = scalar_step(step2)?;
    let len = lcm_u64(s1.1, s2.1)
        .checked_mul(h1.period)
        .filter(|&l| l <= MAX_PERIOD)
        .ok_or_else(|| Error::InvalidInput("common period too large".into()))?;
    let mut cross = Complex64::new(0.0, 0.0);
    let (mut e1, mut e2) = (0.0, 0.0);
    for (p, q) in first.iter().zip(second) {
        let a = coefficients(p, s1, h1, len);
        let b = coefficients(q, s2, h2, len);
        cross += a
            .iter()
            .zip(&b)
            .map(|(x, y)| x * y.conj())
            .sum::<Complex64>();
        e1 += a.iter().map(|x| x.norm_sqr()).sum::<f64>();
        e2 += b.iter().map(|x| x.norm_sqr()).sum::<f64>();
    }
    let cross = cross.norm();
    let normalized = if e1 == 0.0 || e2 == 0.0 {
        0.0
    } else {
        cross / libm::sqrt(e1 * e2)
    };
    Ok(Correlation {
        normalized,
        cross,
        first_energy: e1,
        second_energy: e2,
    })
}
