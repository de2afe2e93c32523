//! Generator profiles: a fixed base shape composed with a dilation,
//! `p(x) = base(dilation * x)`, living either on the frequency side (a
//! `psi-hat`) or on the time side (an `f_j`).

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::band::{BandSet, RationalBox};
use crate::error::Error;
use crate::rational::{ratio, to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Frequency,
    Time,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Frequency => "frequency",
            Domain::Time => "time",
        }
    }
}

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Rejects the zero polynomial, which would break the nonzero-a.e.
    /// requirement on a piece.
    pub fn new(mut coeffs: Vec<Rational>) -> Result<Self, Error> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidProfile(
                "polynomial is identically zero".into(),
            ));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn constant(c: Rational) -> Result<Self, Error> {
        Self::new(alloc::vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPiece {
    pub interval: RationalBox,
    pub poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileForm {
    /// Indicator of a band, any dimension.
    Characteristic(BandSet),
    /// Meyer wavelet transform with the degree-7 bell `nu`.
    MeyerBell,
    /// Real Frazier-Jawerth base profile on `[1/8, 1/2]` in `|xi|`.
    FrazierJawerth,
    /// Disjoint polynomial pieces on intervals (one dimension).
    PiecewisePoly(Vec<PolyPiece>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralProfile {
    domain: Domain,
    form: ProfileForm,
    dilation: Rational,
}

/// `nu(t) = t^4 (35 - 84 t + 70 t^2 - 20 t^3)`, clamped to `[0, 1]`;
/// `nu(t) + nu(1 - t) = 1`.
pub fn bell(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t)
    }
}

fn meyer(xi: f64) -> Complex64 {
    let a = libm::fabs(xi);
    let m = if (1.0 / 3.0..2.0 / 3.0).contains(&a) {
        libm::sin(PI / 2.0 * bell(3.0 * a - 1.0))
    } else if (2.0 / 3.0..4.0 / 3.0).contains(&a) {
        libm::cos(PI / 2.0 * bell(1.5 * a - 1.0))
    } else {
        return Complex64::zero();
    };
    Complex64::from_polar(m, -PI * xi)
}

fn frazier_jawerth(xi: f64) -> f64 {
    let a = libm::fabs(xi);
    if (0.125..0.25).contains(&a) {
        libm::sin(PI / 2.0 * bell(8.0 * a - 1.0))
    } else if (0.25..0.5).contains(&a) {
        libm::cos(PI / 2.0 * bell(4.0 * a - 1.0))
    } else {
        0.0
    }
}

fn symmetric_band(inner: Rational, outer: Rational) -> BandSet {
    BandSet::from_intervals(&[(-outer.clone(), -inner.clone()), (inner, outer)])
        .expect("valid intervals")
}

impl SpectralProfile {
    pub fn characteristic(domain: Domain, band: BandSet) -> Result<Self, Error> {
        if band.is_empty() {
            return Err(Error::EmptyBand);
        }
        Ok(SpectralProfile {
            domain,
            form: ProfileForm::Characteristic(band),
            dilation: Rational::one(),
        })
    }

    pub fn meyer() -> Self {
        SpectralProfile {
            domain: Domain::Frequency,
            form: ProfileForm::MeyerBell,
            dilation: Rational::one(),
        }
    }

    pub fn frazier_jawerth() -> Self {
        SpectralProfile {
            domain: Domain::Frequency,
            form: ProfileForm::FrazierJawerth,
            dilation: Rational::one(),
        }
    }

    /// Pieces must be one-dimensional, pairwise disjoint, and carry nonzero
    /// polynomials.
    pub fn piecewise(domain: Domain, mut pieces: Vec<PolyPiece>) -> Result<Self, Error> {
        if pieces.is_empty() {
            return Err(Error::InvalidProfile("no pieces".into()));
        }
        if let Some(p) = pieces.iter().find(|p| p.interval.dim() != 1) {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: p.interval.dim(),
            });
        }
        pieces.sort_by(|a, b| a.interval.lo()[0].cmp(&b.interval.lo()[0]));
        for w in pieces.windows(2) {
            if w[1].interval.lo()[0] < w[0].interval.hi()[0] {
                return Err(Error::InvalidProfile(String::from("pieces overlap")));
            }
        }
        Ok(SpectralProfile {
            domain,
            form: ProfileForm::PiecewisePoly(pieces),
            dilation: Rational::one(),
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn form(&self) -> &ProfileForm {
        &self.form
    }

    pub fn dilation(&self) -> &Rational {
        &self.dilation
    }

    pub fn dim(&self) -> usize {
        match &self.form {
            ProfileForm::Characteristic(b) => b.dim(),
            _ => 1,
        }
    }

    /// Same profile with dilation replaced; used by [`dilate_profile`](super::dilate_profile).
    pub(crate) fn with_dilation(&self, dilation: Rational) -> Self {
        SpectralProfile {
            dilation,
            ..self.clone()
        }
    }

    /// Support of the undilated base shape.
    pub fn base_support(&self) -> BandSet {
        match &self.form {
            ProfileForm::Characteristic(b) => b.clone(),
            ProfileForm::MeyerBell => symmetric_band(ratio(1, 3), ratio(4, 3)),
            ProfileForm::FrazierJawerth => symmetric_band(ratio(1, 8), ratio(1, 2)),
            ProfileForm::PiecewisePoly(pieces) => {
                BandSet::normalize(pieces.iter().map(|p| p.interval.clone()).collect(), 1)
                    .expect("1-D pieces")
            }
        }
    }

    /// Exact support in the profile's own domain.
    pub fn support(&self) -> BandSet {
        let base = self.base_support();
        if self.dilation.is_one() {
            return base;
        }
        let d = base.dim();
        let inv = self.dilation.recip();
        base.affine_map(&alloc::vec![inv; d], &alloc::vec![Rational::zero(); d])
            .expect("nonzero dilation")
    }

    /// Value at an exact point; support membership is decided exactly, the
    /// smooth bells are then evaluated in floating point.
    pub fn value_exact(&self, x: &[Rational]) -> Complex64 {
        let y: Vec<Rational> = x.iter().map(|v| v * &self.dilation).collect();
        match &self.form {
            ProfileForm::Characteristic(b) => {
                if b.contains(&y) {
                    Complex64::one()
                } else {
                    Complex64::zero()
                }
            }
            ProfileForm::MeyerBell | ProfileForm::FrazierJawerth => {
                if !self.base_support().contains(&y) {
                    return Complex64::zero();
                }
                self.base_value(to_f64(&y[0]))
            }
            ProfileForm::PiecewisePoly(pieces) => pieces
                .iter()
                .find(|p| p.interval.contains(&y))
                .map(|p| Complex64::new(to_f64(&p.poly.eval(&y[0])), 0.0))
                .unwrap_or_else(Complex64::zero),
        }
    }

    /// Value at a floating-point point.
    pub fn value(&self, x: &[f64]) -> Complex64 {
        let s = to_f64(&self.dilation);
        let y: Vec<f64> = x.iter().map(|v| v * s).collect();
        match &self.form {
            ProfileForm::Characteristic(b) => {
                let inside = b.boxes().iter().any(|bx| {
                    y.iter()
                        .enumerate()
                        .all(|(i, &v)| to_f64(&bx.lo()[i]) <= v && v < to_f64(&bx.hi()[i]))
                });
                if inside {
                    Complex64::one()
                } else {
                    Complex64::zero()
                }
            }
            ProfileForm::MeyerBell | ProfileForm::FrazierJawerth => self.base_value(y[0]),
            ProfileForm::PiecewisePoly(pieces) => pieces
                .iter()
                .find(|p| to_f64(&p.interval.lo()[0]) <= y[0] && y[0] < to_f64(&p.interval.hi()[0]))
                .map(|p| Complex64::new(p.poly.eval_f64(y[0]), 0.0))
                .unwrap_or_else(Complex64::zero),
        }
    }

    fn base_value(&self, y: f64) -> Complex64 {
        match &self.form {
            ProfileForm::MeyerBell => meyer(y),
            ProfileForm::FrazierJawerth => Complex64::new(frazier_jawerth(y), 0.0),
            _ => unreachable!("only the smooth bells"),
        }
    }

    /// Piecewise-constant profiles as `(piece, |value|^2)` in the profile's
    /// own coordinates; `None` when the profile is not piecewise constant.
    pub(crate) fn constant_pieces_sq(&self) -> Option<Vec<(RationalBox, Rational)>> {
        let raw: Vec<(RationalBox, Rational)> = match &self.form {
            ProfileForm::Characteristic(b) => b
                .boxes()
                .iter()
                .map(|bx| (bx.clone(), Rational::one()))
                .collect(),
            ProfileForm::PiecewisePoly(pieces) if pieces.iter().all(|p| p.poly.degree() == 0) => {
                pieces
                    .iter()
                    .map(|p| {
                        let c = &p.poly.coeffs()[0];
                        (p.interval.clone(), c * c)
                    })
                    .collect()
            }
            _ => return None,
        };
        let d = self.dim();
        let inv = self.dilation.recip();
        let scale = alloc::vec![inv; d];
        let zero = alloc::vec![Rational::zero(); d];
        Some(
            raw.into_iter()
                .map(|(b, w)| (b.affine_image(&scale, &zero).expect("nonzero dilation"), w))
                .collect(),
        )
    }

    /// True for a negative dilation (the profile is mirrored).
    pub fn is_mirrored(&self) -> bool {
        self.dilation.is_negative()
    }
}

/// Pointwise value of a one-dimensional profile.
pub fn eval_profile(p: &SpectralProfile, x: f64) -> Complex64 {
    p.value(&[x])
}
