//! Range relations between sampling transforms, read off from the supports
//! of the multiplicity functions.
//!
//! For a pair of sampling matrices the support comparison is a complete
//! characterisation ([`classify_single`]). For Bessel generators and for
//! ordered unions of lattices only some directions hold, and the verdicts
//! carry that grading instead of collapsing it to a boolean.

use alloc::vec::Vec;

use crate::band::{BandRelation, BandSet};
use crate::error::{Error, Side};
use crate::lattice::{is_sampling_matrix, multiplicity, Lattice};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RangeKind {
    Equal,
    Orthogonal,
    FirstInsideSecond,
    SecondInsideFirst,
    NontrivialOverlap,
}

impl RangeKind {
    pub fn from_band_relation(rel: BandRelation) -> Self {
        match rel {
            BandRelation::Equal => RangeKind::Equal,
            BandRelation::Disjoint => RangeKind::Orthogonal,
            BandRelation::SubsetProper => RangeKind::FirstInsideSecond,
            BandRelation::SupersetProper => RangeKind::SecondInsideFirst,
            BandRelation::Overlapping => RangeKind::NontrivialOverlap,
        }
    }

    pub fn mirrored(self) -> Self {
        match self {
            RangeKind::FirstInsideSecond => RangeKind::SecondInsideFirst,
            RangeKind::SecondInsideFirst => RangeKind::FirstInsideSecond,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RangeKind::Equal => "equal",
            RangeKind::Orthogonal => "orthogonal",
            RangeKind::FirstInsideSecond => "first-inside-second",
            RangeKind::SecondInsideFirst => "second-inside-first",
            RangeKind::NontrivialOverlap => "nontrivial-overlap",
        }
    }
}

/// Relation of two ranges with the support sets that decide it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeRelation {
    pub kind: RangeKind,
    pub first_support: BandSet,
    pub second_support: BandSet,
    pub intersection: BandSet,
    pub first_minus_second: BandSet,
    pub second_minus_first: BandSet,
}

impl RangeRelation {
    pub fn from_supports(first: BandSet, second: BandSet) -> Result<Self, Error> {
        let kind = RangeKind::from_band_relation(first.relation(&second)?);
        Ok(RangeRelation {
            kind,
            intersection: first.intersect(&second)?,
            first_minus_second: first.difference(&second)?,
            second_minus_first: second.difference(&first)?,
            first_support: first,
            second_support: second,
        })
    }

    /// `lambda(X ∩ Y)`.
    pub fn overlap_measure(&self) -> Rational {
        self.intersection.measure()
    }

    /// `lambda(X Δ Y)`.
    pub fn symdiff_measure(&self) -> Rational {
        self.first_minus_second.measure() + self.second_minus_first.measure()
    }
}

/// How strongly a verdict is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grade {
    /// The support condition is sufficient; the range relation is proven.
    Certified,
    /// Only a necessary condition was checked.
    NecessaryOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRelation {
    pub relation: RangeRelation,
    pub grade: Grade,
}

fn support_of(band: &BandSet, lattice: &Lattice) -> Result<BandSet, Error> {
    Ok(multiplicity(band, lattice)?.support())
}

/// Both lattices must be sampling matrices for their bands; then every kind
/// is an if-and-only-if statement about the supports.
pub fn classify_single(
    first_band: &BandSet,
    first_lattice: &Lattice,
    second_band: &BandSet,
    second_lattice: &Lattice,
) -> Result<RangeRelation, Error> {
    let a = is_sampling_matrix(first_band, first_lattice)?;
    if !a.is_sampling {
        return Err(Error::NotSamplingMatrix {
            side: Side::First,
            max: a.max,
        });
    }
    let b = is_sampling_matrix(second_band, second_lattice)?;
    if !b.is_sampling {
        return Err(Error::NotSamplingMatrix {
            side: Side::Second,
            max: b.max,
        });
    }
    RangeRelation::from_supports(a.certificate.support(), b.certificate.support())
}

/// Bessel-vector version: no sampling hypothesis. Disjoint supports certify
/// orthogonality; every other kind is only a necessary condition.
pub fn classify_bessel(
    first_band: &BandSet,
    first_lattice: &Lattice,
    second_band: &BandSet,
    second_lattice: &Lattice,
) -> Result<GradedRelation, Error> {
    let relation = RangeRelation::from_supports(
        support_of(first_band, first_lattice)?,
        support_of(second_band, second_lattice)?,
    )?;
    let grade = if relation.kind == RangeKind::Orthogonal {
        Grade::Certified
    } else {
        Grade::NecessaryOnly
    };
    Ok(GradedRelation { relation, grade })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    Equal,
    Orthogonal,
    Contained,
    Overlap,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::Equal => "equal",
            Claim::Orthogonal => "orthogonal",
            Claim::Contained => "contained",
            Claim::Overlap => "overlap",
        }
    }
}

impl core::str::FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "equal" => Ok(Claim::Equal),
            "orthogonal" => Ok(Claim::Orthogonal),
            "contained" => Ok(Claim::Contained),
            "overlap" => Ok(Claim::Overlap),
            other => Err(Error::Parse(alloc::format!("unknown claim `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnionStatus {
    /// Every coordinate pair has disjoint supports.
    CertifiedOrthogonal,
    /// The per-coordinate necessary conditions for the claim hold.
    NecessaryConditionsHold,
    /// The checked condition fails in some coordinate. For `Orthogonal` this
    /// means the sufficient condition is not met.
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateVerdict {
    pub index: usize,
    /// `true` when one side was padded with a zero transform here.
    pub padded: bool,
    pub relation: RangeRelation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionVerdict {
    pub claim: Claim,
    pub overall: UnionStatus,
    pub coordinates: Vec<CoordinateVerdict>,
    /// Coordinates whose individual lattice is not a sampling matrix; the
    /// joint sampling property is the caller's assertion.
    pub non_sampling_coordinates: Vec<(Side, usize)>,
}

/// Ordered unions `(A_1..A_n)` vs `(B_1..B_m)`. The shorter list is padded
/// with zero transforms, whose support is empty. Lattice order matters.
pub fn classify_union(
    first_band: &BandSet,
    first_lattices: &[Lattice],
    second_band: &BandSet,
    second_lattices: &[Lattice],
    claim: Claim,
) -> Result<UnionVerdict, Error> {
    if first_lattices.is_empty() || second_lattices.is_empty() {
        return Err(Error::EmptyList);
    }
    let n = first_lattices.len().max(second_lattices.len());
    let mut coordinates = Vec::with_capacity(n);
    let mut non_sampling = Vec::new();
    for i in 0..n {
        let side_support =
            |band: &BandSet, lattices: &[Lattice], side: Side, acc: &mut Vec<(Side, usize)>| {
                match lattices.get(i) {
                    Some(l) => {
                        let m = multiplicity(band, l)?;
                        if m.max_value() > num_traits::One::one() {
                            acc.push((side, i));
                        }
                        Ok::<_, Error>(m.support())
                    }
                    None => Ok(BandSet::empty(band.dim())),
                }
            };
        let x = side_support(first_band, first_lattices, Side::First, &mut non_sampling)?;
        let y = side_support(
            second_band,
            second_lattices,
            Side::Second,
            &mut non_sampling,
        )?;
        let padded = i >= first_lattices.len() || i >= second_lattices.len();
        coordinates.push(CoordinateVerdict {
            index: i,
            padded,
            relation: RangeRelation::from_supports(x, y)?,
        });
    }
    let all = |pred: &dyn Fn(&RangeRelation) -> bool| coordinates.iter().all(|c| pred(&c.relation));
    let overall = match claim {
        Claim::Orthogonal if all(&|r| r.intersection.is_empty()) => {
            UnionStatus::CertifiedOrthogonal
        }
        Claim::Equal if all(&|r| r.first_support == r.second_support) => {
            UnionStatus::NecessaryConditionsHold
        }
        Claim::Contained if all(&|r| r.first_minus_second.is_empty()) => {
            UnionStatus::NecessaryConditionsHold
        }
        Claim::Overlap
            if coordinates
                .iter()
                .any(|c| !c.relation.intersection.is_empty()) =>
        {
            UnionStatus::NecessaryConditionsHold
        }
        _ => UnionStatus::Violated,
    };
    Ok(UnionVerdict {
        claim,
        overall,
        coordinates,
        non_sampling_coordinates: non_sampling,
    })
}
