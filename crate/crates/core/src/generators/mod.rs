//! Periodization sums `sum_k |p(X*^{-1}(xi + k))|^2` of generator profiles
//! and the support-based verdicts for affine, quasi-affine and
//! Weyl-Heisenberg pairs.
//!
//! Verdicts depend only on supports. Every admissible profile is nonzero
//! almost everywhere on its support, so the support of the sum is the
//! periodized support, computed exactly. A profile that is compact in one
//! domain has an entire transform, so its periodized support in the other
//! domain is the whole torus.

use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::band::{BandRelation, BandSet};
use crate::error::Error;
use crate::lattice::{multiplicity, periodize_weighted, Lattice};
use crate::rational::{int, to_f64, Rational};
use crate::torus::TorusStep;

pub mod oracle;
pub mod profile;

pub use profile::{
    bell, eval_profile, Domain, PolyPiece, Polynomial, ProfileForm, SpectralProfile,
};

/// Midpoint count used when a periodization has no exact form.
pub const DEFAULT_RESOLUTION: usize = 1024;
/// Default lowest scale in quasi-affine reports.
pub const DEFAULT_R_MIN: i64 = -8;

#[derive(Clone, Debug, PartialEq)]
pub enum PeriodizedValues {
    Exact(TorusStep),
    /// Values at the midpoints `(i + 1/2) / resolution` of `[0,1)`.
    Sampled {
        resolution: usize,
        values: Vec<f64>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Periodization {
    pub support: BandSet,
    pub values: PeriodizedValues,
}

fn check_dim(p: &SpectralProfile, lattice: &Lattice) -> Result<(), Error> {
    if p.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch {
            expected: lattice.dim(),
            found: p.dim(),
        });
    }
    Ok(())
}

/// Support of `sum_k |p_dom(L*^{-1}(xi + k))|^2` where `p_dom` is the profile
/// viewed in `domain`.
pub fn periodized_support(
    p: &SpectralProfile,
    lattice: &Lattice,
    domain: Domain,
) -> Result<BandSet, Error> {
    check_dim(p, lattice)?;
    if p.domain() != domain {
        return Ok(BandSet::unit_cube(lattice.dim()));
    }
    Ok(multiplicity(&p.support(), lattice)?.support())
}

/// The periodization of `|p|^2` in the profile's own domain.
pub fn periodization_sq(p: &SpectralProfile, lattice: &Lattice) -> Result<Periodization, Error> {
    periodization_sq_with(p, lattice, DEFAULT_RESOLUTION)
}

pub fn periodization_sq_with(
    p: &SpectralProfile,
    lattice: &Lattice,
    resolution: usize,
) -> Result<Periodization, Error> {
    let support = periodized_support(p, lattice, p.domain())?;
    if let Some(pieces) = p.constant_pieces_sq() {
        return Ok(Periodization {
            support,
            values: PeriodizedValues::Exact(periodize_weighted(&pieces, lattice)?),
        });
    }
    if resolution == 0 {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    // smooth profiles are one-dimensional
    let x = to_f64(&lattice.diag()[0]);
    let bbox = p
        .support()
        .bounding_box()
        .expect("profiles have nonempty support");
    let (a, b) = (x * to_f64(&bbox.lo()[0]), x * to_f64(&bbox.hi()[0]));
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let values = (0..resolution)
        .map(|i| {
            let xi = (i as f64 + 0.5) / resolution as f64;
            let k0 = libm::floor(lo - xi) as i64 - 1;
            let k1 = libm::ceil(hi - xi) as i64 + 1;
            (k0..=k1)
                .map(|k| p.value(&[(xi + k as f64) / x]).norm_sqr())
                .sum()
        })
        .collect();
    Ok(Periodization {
        support,
        values: PeriodizedValues::Sampled { resolution, values },
    })
}

/// Multiplies the dilation: `dilate(p, c)(x) = p(c x)`.
pub fn dilate_profile(p: &SpectralProfile, factor: &Rational) -> Result<SpectralProfile, Error> {
    if factor.is_zero() {
        return Err(Error::ZeroFactor);
    }
    Ok(p.with_dilation(p.dilation() * factor))
}

/// `[psi_0, ..., psi_{n-1}]` with `psi_k-hat(xi) = psi_0-hat(4^k xi)`.
pub fn fj_family(n: usize) -> Vec<SpectralProfile> {
    let base = SpectralProfile::frazier_jawerth();
    let mut scale = Rational::one();
    (0..n)
        .map(|_| {
            let p = dilate_profile(&base, &scale).expect("nonzero");
            scale *= int(4);
            p
        })
        .collect()
}

/// `sum_j |p(base^j xi)|^2` over all `j` where the term can be nonzero.
pub fn partition_sum(p: &SpectralProfile, base: f64, xi: f64) -> f64 {
    if xi == 0.0 {
        return 0.0;
    }
    (-200..=200)
        .map(|j| p.value(&[libm::pow(base, j as f64) * xi]).norm_sqr())
        .sum()
}

/// `sum_{j >= 0} p(2^j xi) conj p(2^j (xi + q))`.
pub fn dyadic_cross_sum(p: &SpectralProfile, xi: f64, q: i64) -> num_complex::Complex64 {
    (0..200)
        .map(|j| {
            let s = libm::pow(2.0, j as f64);
            p.value(&[s * xi]) * p.value(&[s * (xi + q as f64)]).conj()
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DisjointClaim {
    Orthogonal,
    Equal,
    Contained,
}

impl DisjointClaim {
    pub fn name(self) -> &'static str {
        match self {
            DisjointClaim::Orthogonal => "orthogonal",
            DisjointClaim::Equal => "equal",
            DisjointClaim::Contained => "contained",
        }
    }
}

impl FromStr for DisjointClaim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "orthogonal" => Ok(DisjointClaim::Orthogonal),
            "equal" => Ok(DisjointClaim::Equal),
            "contained" => Ok(DisjointClaim::Contained),
            _ => Err(Error::Parse(alloc::format!("unknown claim `{s}`"))),
        }
    }
}

/// `CertifiedSufficient` is only reachable for orthogonality. For equal and
/// contained claims the conditions are necessary only. `Violated` for an
/// orthogonality claim means the sufficient condition fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictStatus {
    CertifiedSufficient,
    NecessaryConditionsHold,
    Violated,
}

impl VerdictStatus {
    pub fn name(self) -> &'static str {
        match self {
            VerdictStatus::CertifiedSufficient => "CertifiedSufficient",
            VerdictStatus::NecessaryConditionsHold => "NecessaryConditionsHold",
            VerdictStatus::Violated => "Violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPair {
    pub index: usize,
    pub first: BandSet,
    pub second: BandSet,
    pub relation: BandRelation,
    /// Whether this pair meets the claim's per-generator condition.
    pub holds: bool,
}

impl SupportPair {
    fn new(
        index: usize,
        first: BandSet,
        second: BandSet,
        claim: DisjointClaim,
    ) -> Result<Self, Error> {
        let holds = match claim {
            DisjointClaim::Orthogonal => first.intersect(&second)?.is_empty(),
            DisjointClaim::Equal => first == second,
            DisjointClaim::Contained => first.difference(&second)?.is_empty(),
        };
        let relation = first.relation(&second)?;
        Ok(SupportPair {
            index,
            first,
            second,
            relation,
            holds,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WhRoute {
    Auto,
    /// Frequency supports with `X`, `Y`.
    FrequencyOnly,
    /// Time supports with `A`, `B`, under `X* A = Y* B`.
    TimeOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointnessVerdict {
    pub claim: DisjointClaim,
    pub status: VerdictStatus,
    pub frequency: Vec<SupportPair>,
    /// Time-side pairs; empty for affine verdicts.
    pub time: Vec<SupportPair>,
    /// Exact `X* A = Y* B`, for Weyl-Heisenberg verdicts.
    pub side_condition: Option<bool>,
    /// Which route certified orthogonality, if any.
    pub certified_by: Option<WhRoute>,
}

fn status_for(claim: DisjointClaim, ok: bool) -> VerdictStatus {
    match (claim, ok) {
        (_, false) => VerdictStatus::Violated,
        (DisjointClaim::Orthogonal, true) => VerdictStatus::CertifiedSufficient,
        (_, true) => VerdictStatus::NecessaryConditionsHold,
    }
}

fn pairs(
    firsts: &[SpectralProfile],
    l1: &Lattice,
    seconds: &[SpectralProfile],
    l2: &Lattice,
    domain: Domain,
    claim: DisjointClaim,
) -> Result<Vec<SupportPair>, Error> {
    if firsts.len() != seconds.len() {
        return Err(Error::LengthMismatch {
            first: firsts.len(),
            second: seconds.len(),
        });
    }
    if firsts.is_empty() {
        return Err(Error::EmptyList);
    }
    firsts
        .iter()
        .zip(seconds)
        .enumerate()
        .map(|(j, (p, q))| {
            SupportPair::new(
                j,
                periodized_support(p, l1, domain)?,
                periodized_support(q, l2, domain)?,
                claim,
            )
        })
        .collect()
}

/// Affine pair `{D_A^m T_Xz psi_j}` vs `{D_B^m T_Yz phi_j}`, compared through
/// the supports of the translation sums with `X` and `Y`.
pub fn affine_verdict(
    psis: &[SpectralProfile],
    x: &Lattice,
    phis: &[SpectralProfile],
    y: &Lattice,
    claim: DisjointClaim,
) -> Result<DisjointnessVerdict, Error> {
    let frequency = pairs(psis, x, phis, y, Domain::Frequency, claim)?;
    let status = status_for(claim, frequency.iter().all(|p| p.holds));
    Ok(DisjointnessVerdict {
        claim,
        status,
        frequency,
        time: Vec::new(),
        side_condition: None,
        certified_by: (status == VerdictStatus::CertifiedSufficient)
            .then_some(WhRoute::FrequencyOnly),
    })
}

/// Exact check of `X* A = Y* B` for diagonal lattices.
pub fn wh_side_condition(
    a: &Lattice,
    x: &Lattice,
    b: &Lattice,
    y: &Lattice,
) -> Result<bool, Error> {
    let d = a.dim();
    for l in [x, b, y] {
        if l.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: l.dim(),
            });
        }
    }
    Ok((0..d).all(|i| &x.diag()[i] * &a.diag()[i] == &y.diag()[i] * &b.diag()[i]))
}

/// Weyl-Heisenberg pair `{E_Al T_Xz f_j}` vs `{E_Bl T_Yz g_j}`.
#[allow(clippy::too_many_arguments)]
pub fn wh_verdict(
    fs: &[SpectralProfile],
    a: &Lattice,
    x: &Lattice,
    gs: &[SpectralProfile],
    b: &Lattice,
    y: &Lattice,
    claim: DisjointClaim,
    route: WhRoute,
) -> Result<DisjointnessVerdict, Error> {
    if route == WhRoute::TimeOnly {
        let missing = fs.iter().chain(gs).position(|p| p.domain() != Domain::Time);
        if let Some(i) = missing {
            return Err(Error::MissingTimeProfile {
                index: i % fs.len().max(1),
            });
        }
    }
    let frequency = pairs(fs, x, gs, y, Domain::Frequency, claim)?;
    let time = pairs(fs, a, gs, b, Domain::Time, claim)?;
    let side = wh_side_condition(a, x, b, y)?;
    let freq_ok = frequency.iter().all(|p| p.holds);
    let time_ok = time.iter().all(|p| p.holds);
    let (status, certified_by) = match claim {
        DisjointClaim::Orthogonal => {
            let item3 = freq_ok && route != WhRoute::TimeOnly;
            let item4 = side && time_ok && route != WhRoute::FrequencyOnly;
            if item3 {
                (
                    VerdictStatus::CertifiedSufficient,
                    Some(WhRoute::FrequencyOnly),
                )
            } else if item4 {
                (VerdictStatus::CertifiedSufficient, Some(WhRoute::TimeOnly))
            } else {
                (VerdictStatus::Violated, None)
            }
        }
        _ => (status_for(claim, freq_ok && time_ok), None),
    };
    Ok(DisjointnessVerdict {
        claim,
        status,
        frequency,
        time,
        side_condition: Some(side),
        certified_by,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiAffineRow {
    pub r: i64,
    pub pairs: Vec<SupportPair>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiAffineReport {
    pub claim: DisjointClaim,
    pub status: VerdictStatus,
    /// Rows for `r = 0, -1, ..., r_min`.
    pub rows: Vec<QuasiAffineRow>,
    /// The integer-lattice shortcut (`X = Y = I`, `A = B` integral) applied.
    pub corollary: bool,
    /// The verdict rests on the sampled scales only.
    pub truncated: bool,
    /// Scales where the per-generator condition fails.
    pub violations: Vec<i64>,
}

fn is_identity(l: &Lattice) -> bool {
    l.diag().iter().all(One::is_one)
}

fn scaled(l: &Lattice, factor: &Rational) -> Result<Lattice, Error> {
    Lattice::diagonal(l.diag().iter().map(|v| v * factor).collect())
}

fn power(a: &Rational, r: i64) -> Rational {
    let base = if r < 0 { a.recip() } else { a.clone() };
    (0..r.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

/// Quasi-affine comparison: for each `r` in `r_min..=0` the sums
/// `sum_k |psi_j(A*^{-r} X*^{-1}(xi + k))|^2`, i.e. periodization under the
/// lattice `X A^r`.
#[allow(clippy::too_many_arguments)]
pub fn quasi_affine_report(
    psis: &[SpectralProfile],
    a: &Rational,
    x: &Lattice,
    phis: &[SpectralProfile],
    b: &Rational,
    y: &Lattice,
    r_min: i64,
    claim: DisjointClaim,
) -> Result<QuasiAffineReport, Error> {
    if a.abs() <= Rational::one() || b.abs() <= Rational::one() {
        return Err(Error::NotExpansive);
    }
    if r_min > 0 {
        return Err(Error::InvalidInput("r_min must be <= 0".into()));
    }
    let mut rows = Vec::new();
    for r in (r_min..=0).rev() {
        let lx = scaled(x, &power(a, r))?;
        let ly = scaled(y, &power(b, r))?;
        let pairs = pairs(psis, &lx, phis, &ly, Domain::Frequency, claim)?;
        let holds = pairs.iter().all(|p| p.holds);
        rows.push(QuasiAffineRow { r, pairs, holds });
    }
    let violations: Vec<i64> = rows
        .iter()
        .filter(|row| !row.holds)
        .map(|row| row.r)
        .collect();
    let corollary = claim == DisjointClaim::Orthogonal
        && is_identity(x)
        && is_identity(y)
        && a == b
        && a.is_integer()
        && rows[0].holds;
    let (status, truncated) = if corollary {
        (VerdictStatus::CertifiedSufficient, false)
    } else if violations.is_empty() {
        (status_for(claim, true), true)
    } else {
        (VerdictStatus::Violated, false)
    };
    Ok(QuasiAffineReport {
        claim,
        status,
        rows,
        corollary,
        truncated,
        violations,
    })
}

/// True iff the supports of `sum_k chi_W(c^j (xi + k))`, `1 <= j <= j_max`,
/// are pairwise disjoint.
pub fn msf_orthogonality_check(
    w: &BandSet,
    dilation: &Rational,
    j_max: u32,
) -> Result<bool, Error> {
    if dilation <= &Rational::one() {
        return Err(Error::NotExpansive);
    }
    if w.is_empty() {
        return Err(Error::EmptyBand);
    }
    let d = w.dim();
    let mut seen = BandSet::empty(d);
    for j in 1..=j_max {
        let step = power(dilation, -i64::from(j));
        let s = multiplicity(w, &Lattice::diagonal(vec![step; d])?)?.support();
        if !seen.intersect(&s)?.is_empty() {
            return Ok(false);
        }
        seen = seen.union(&s)?;
    }
    Ok(true)
}

/// `lcm` of two positive integers, used by the oracle.
pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
