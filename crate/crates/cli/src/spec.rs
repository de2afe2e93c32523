//! Scenario spec files: TOML tables tagged by `command`.
//!
//! Rationals are written as strings (`"p/q"`) or integers and kept exact.
//! Bands use the textual form `dim=1; [-1,-1/2) u [1/2,1)`. Unknown keys are
//! rejected.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use sdframe_core::generators::Domain;
use sdframe_core::{
    format_rational, parse_rational, BandSet, Lattice, PolyPiece, Polynomial, Rational,
    SpectralProfile, WhRoute,
};

use crate::CliError;

/// Exact rational field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational written \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

/// Band in textual form; emptiness is a validation error reported with the
/// field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Band(pub BandSet);

impl Serialize for Band {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Band {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text.trim().is_empty() {
            return Err(de::Error::custom("band is empty"));
        }
        BandSet::from_str(&text)
            .map(Band)
            .map_err(de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalLattice {
    pub diag: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<Q>>,
}

/// `"3/4"` for a scalar lattice or `{ diag = [...], shift = [...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Scalar(Q),
    Diagonal(DiagonalLattice),
}

impl LatticeSpec {
    pub fn build(&self, field: &str) -> Result<Lattice, CliError> {
        let lattice = match self {
            LatticeSpec::Scalar(a) => Lattice::scalar(a.0.clone()),
            LatticeSpec::Diagonal(d) => {
                let l = Lattice::diagonal(d.diag.iter().map(|q| q.0.clone()).collect());
                match &d.shift {
                    Some(s) => {
                        l.and_then(|l| l.with_shift(s.iter().map(|q| q.0.clone()).collect()))
                    }
                    None => l,
                }
            }
        };
        lattice.map_err(|e| CliError::spec(field, e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimName {
    Equal,
    Orthogonal,
    Contained,
    Overlap,
    Sampling,
}

impl ClaimName {
    pub fn name(self) -> &'static str {
        match self {
            ClaimName::Equal => "equal",
            ClaimName::Orthogonal => "orthogonal",
            ClaimName::Contained => "contained",
            ClaimName::Overlap => "overlap",
            ClaimName::Sampling => "sampling",
        }
    }
}

impl FromStr for ClaimName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "equal" => Ok(ClaimName::Equal),
            "orthogonal" => Ok(ClaimName::Orthogonal),
            "contained" => Ok(ClaimName::Contained),
            "overlap" => Ok(ClaimName::Overlap),
            "sampling" => Ok(ClaimName::Sampling),
            _ => Err(format!(
                "unknown claim `{s}` (expected equal, orthogonal, contained, overlap or sampling)"
            )),
        }
    }
}

impl fmt::Display for ClaimName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The `command` key as seen by the per-command structs. It is dispatched
/// on before the struct is read, so its value never affects equality.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct CommandTag(#[allow(dead_code)] String);

impl PartialEq for CommandTag {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for CommandTag {}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Directory for the JSON report and CSV dumps, relative to the spec file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandLatticeSpec {
    #[serde(default, rename = "command", skip_serializing)]
    pub command: CommandTag,
    pub band: Band,
    pub lattice: LatticeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideSpec {
    pub band: Band,
    pub lattice: LatticeSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifyMode {
    /// Both lattices must be sampling matrices; every verdict is exact.
    Single,
    /// No sampling hypothesis; only orthogonality is certified.
    Bessel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifySpec {
    #[serde(default, rename = "command", skip_serializing)]
    pub command: CommandTag,
    pub first: SideSpec,
    pub second: SideSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ClassifyMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnionSide {
    pub band: Band,
    pub lattices: Vec<LatticeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyUnionSpec {
    #[serde(default, rename = "command", skip_serializing)]
    pub command: CommandTag,
    pub first: UnionSide,
    pub second: UnionSide,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<ClaimName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuxSide {
    pub band: Band,
    pub step: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuxDemoSpec {
    #[serde(default, rename = "command", skip_serializing)]
    pub command: CommandTag,
    pub period: Q,
    pub first: MuxSide,
    pub second: MuxSide,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u32>,
    /// Multiplex even when the exact supports overlap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force: Option<bool>,
    /// Largest crosstalk accepted as a clean round trip.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainName {
    Frequency,
    Time,
}

impl From<DomainName> for Domain {
    fn from(d: DomainName) -> Domain {
        match d {
            DomainName::Frequency => Domain::Frequency,
            DomainName::Time => Domain::Time,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BellSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilation: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacteristicSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainName>,
    pub band: Band,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilation: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub interval: Band,
    /// Polynomial coefficients, constant term first.
    pub coeffs: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiecewiseSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainName>,
    pub pieces: Vec<PieceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilation: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ProfileSpec {
    Meyer(BellSpec),
    Fj(BellSpec),
    Characteristic(CharacteristicSpec),
    Piecewise(PiecewiseSpec),
}

impl ProfileSpec {
    pub fn build(&self, field: &str) -> Result<SpectralProfile, CliError> {
        let err = |e| CliError::spec(field, e);
        let (base, dilation) = match self {
            ProfileSpec::Meyer(b) => (SpectralProfile::meyer(), &b.dilation),
            ProfileSpec::Fj(b) => (SpectralProfile::frazier_jawerth(), &b.dilation),
            ProfileSpec::Characteristic(c) => {
                if c.band.0.is_empty() {
                    return Err(CliError::Spec(format!("{field}.band: band is empty")));
                }
                let domain = c.domain.unwrap_or(DomainName::Frequency).into();
                (
                    SpectralProfile::characteristic(domain, c.band.0.clone()).map_err(err)?,
                    &c.dilation,
                )
            }
            ProfileSpec::Piecewise(p) => {
                let domain = p.domain.unwrap_or(DomainName::Frequency).into();
                let mut pieces = Vec::new();
                for (i, piece) in p.pieces.iter().enumerate() {
                    let at = format!("{field}.pieces[{i}]");
                    let [interval] = piece.interval.0.boxes() else {
                        return Err(CliError::Spec(format!(
                            "{at}.interval: expected a single interval"
                        )));
                    };
                    let poly = Polynomial::new(piece.coeffs.iter().map(|q| q.0.clone()).collect())
                        .map_err(|e| CliError::spec(&format!("{at}.coeffs"), e))?;
                    pieces.push(PolyPiece {
                        interval: interval.clone(),
                        poly,
                    });
                }
                (
                    SpectralProfile::piecewise(domain, pieces).map_err(err)?,
                    &p.dilation,
                )
            }
        };
        match dilation {
            Some(c) => sdframe_core::dilate_profile(&base, &c.0)
                .map_err(|e| CliError::spec(&format!("{field}.dilation"), e)),
            None => Ok(base),
        }
    }

    pub fn uses_fixed_bell(&self) -> bool {
        matches!(self, ProfileSpec::Meyer(_) | ProfileSpec::Fj(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineSide {
    pub profiles: Vec<ProfileSpec>,
    /// Translation lattice `X`.
    pub translation: LatticeSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveletDisjointSpec {
    #[serde(default, rename = "command", skip_serializing)]
    pub command: CommandTag,
    pub first: AffineSide,
    pub second: AffineSide,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<ClaimName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhSide {
    pub profiles: Vec<ProfileSpec>,
    /// Modulation lattice `A`.
    pub modulation: LatticeSpec,
    /// Translation lattice `X`.
    pub translation: LatticeSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteName {
    Auto,
    Frequency,
    Time,
}

impl From<RouteName> for WhRoute {
    fn from(r: RouteName) -> WhRoute {
        match r {
            RouteName::Auto => WhRoute::Auto,
            RouteName::Frequency => WhRoute::FrequencyOnly,
            RouteName::Time => WhRoute::TimeOnly,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhDisjointSpec {
    #[serde(default, rename = "command", skip_serializing)]
    pub command: CommandTag,
    pub first: WhSide,
    pub second: WhSide,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<ClaimName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<RouteName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiAffineSide {
    pub profiles: Vec<ProfileSpec>,
    /// Scalar expansive dilation `A`.
    pub dilation: Q,
    pub translation: LatticeSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiAffineSpec {
    #[serde(default, rename = "command", skip_serializing)]
    pub command: CommandTag,
    pub first: QuasiAffineSide,
    pub second: QuasiAffineSide,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_min: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<ClaimName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MsfCheckSpec {
    #[serde(default, rename = "command", skip_serializing)]
    pub command: CommandTag,
    /// Wavelet set `W`.
    pub band: Band,
    pub dilation: Q,
    pub j_max: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum ScenarioSpec {
    Multiplicity(BandLatticeSpec),
    SamplingCheck(BandLatticeSpec),
    Classify(ClassifySpec),
    ClassifyUnion(ClassifyUnionSpec),
    MuxDemo(MuxDemoSpec),
    WaveletDisjoint(WaveletDisjointSpec),
    WhDisjoint(WhDisjointSpec),
    QuasiAffine(QuasiAffineSpec),
    MsfCheck(MsfCheckSpec),
}

impl ScenarioSpec {
    pub fn command(&self) -> &'static str {
        match self {
            ScenarioSpec::Multiplicity(_) => "multiplicity",
            ScenarioSpec::SamplingCheck(_) => "sampling-check",
            ScenarioSpec::Classify(_) => "classify",
            ScenarioSpec::ClassifyUnion(_) => "classify-union",
            ScenarioSpec::MuxDemo(_) => "mux-demo",
            ScenarioSpec::WaveletDisjoint(_) => "wavelet-disjoint",
            ScenarioSpec::WhDisjoint(_) => "wh-disjoint",
            ScenarioSpec::QuasiAffine(_) => "quasi-affine",
            ScenarioSpec::MsfCheck(_) => "msf-check",
        }
    }

    pub fn output(&self) -> Option<&OutputSpec> {
        match self {
            ScenarioSpec::Multiplicity(s) | ScenarioSpec::SamplingCheck(s) => s.output.as_ref(),
            ScenarioSpec::Classify(s) => s.output.as_ref(),
            ScenarioSpec::ClassifyUnion(s) => s.output.as_ref(),
            ScenarioSpec::MuxDemo(s) => s.output.as_ref(),
            ScenarioSpec::WaveletDisjoint(s) => s.output.as_ref(),
            ScenarioSpec::WhDisjoint(s) => s.output.as_ref(),
            ScenarioSpec::QuasiAffine(s) => s.output.as_ref(),
            ScenarioSpec::MsfCheck(s) => s.output.as_ref(),
        }
    }

    /// Bands named by their field path, for the emptiness check.
    fn bands(&self) -> Vec<(String, &BandSet)> {
        let mut out = Vec::new();
        match self {
            ScenarioSpec::Multiplicity(s) | ScenarioSpec::SamplingCheck(s) => {
                out.push(("band".into(), &s.band.0))
            }
            ScenarioSpec::Classify(s) => {
                out.push(("first.band".into(), &s.first.band.0));
                out.push(("second.band".into(), &s.second.band.0));
            }
            ScenarioSpec::ClassifyUnion(s) => {
                out.push(("first.band".into(), &s.first.band.0));
                out.push(("second.band".into(), &s.second.band.0));
            }
            ScenarioSpec::MuxDemo(s) => {
                out.push(("first.band".into(), &s.first.band.0));
                out.push(("second.band".into(), &s.second.band.0));
            }
            ScenarioSpec::MsfCheck(s) => out.push(("band".into(), &s.band.0)),
            ScenarioSpec::WaveletDisjoint(_)
            | ScenarioSpec::WhDisjoint(_)
            | ScenarioSpec::QuasiAffine(_) => {}
        }
        out
    }

    /// Checks that need more than the grammar: nonempty bands, invertible
    /// lattices, constructible profiles.
    pub fn validate(&self) -> Result<(), CliError> {
        for (field, band) in self.bands() {
            if band.is_empty() {
                return Err(CliError::Spec(format!("{field}: band is empty")));
            }
        }
        let check_profiles = |side: &str, ps: &[ProfileSpec]| -> Result<(), CliError> {
            if ps.is_empty() {
                return Err(CliError::Spec(format!(
                    "{side}.profiles: no generators given"
                )));
            }
            for (i, p) in ps.iter().enumerate() {
                p.build(&format!("{side}.profiles[{i}]"))?;
            }
            Ok(())
        };
        match self {
            ScenarioSpec::Multiplicity(s) | ScenarioSpec::SamplingCheck(s) => {
                s.lattice.build("lattice")?;
            }
            ScenarioSpec::Classify(s) => {
                s.first.lattice.build("first.lattice")?;
                s.second.lattice.build("second.lattice")?;
            }
            ScenarioSpec::ClassifyUnion(s) => {
                for (side, u) in [("first", &s.first), ("second", &s.second)] {
                    if u.lattices.is_empty() {
                        return Err(CliError::Spec(format!("{side}.lattices: list is empty")));
                    }
                    for (i, l) in u.lattices.iter().enumerate() {
                        l.build(&format!("{side}.lattices[{i}]"))?;
                    }
                }
            }
            ScenarioSpec::MuxDemo(s) => {
                for (side, m) in [("first", &s.first), ("second", &s.second)] {
                    Lattice::scalar(m.step.0.clone())
                        .map_err(|e| CliError::spec(&format!("{side}.step"), e))?;
                }
                if s.period.0 <= Rational::from_integer(0.into()) {
                    return Err(CliError::Spec("period: must be positive".into()));
                }
                if let Some(t) = s.tolerance {
                    if !(t.is_finite() && t > 0.0) {
                        return Err(CliError::Spec(
                            "tolerance: must be a positive number".into(),
                        ));
                    }
                }
            }
            ScenarioSpec::WaveletDisjoint(s) => {
                for (side, a) in [("first", &s.first), ("second", &s.second)] {
                    check_profiles(side, &a.profiles)?;
                    a.translation.build(&format!("{side}.translation"))?;
                }
            }
            ScenarioSpec::WhDisjoint(s) => {
                for (side, w) in [("first", &s.first), ("second", &s.second)] {
                    check_profiles(side, &w.profiles)?;
                    w.modulation.build(&format!("{side}.modulation"))?;
                    w.translation.build(&format!("{side}.translation"))?;
                }
            }
            ScenarioSpec::QuasiAffine(s) => {
                for (side, qa) in [("first", &s.first), ("second", &s.second)] {
                    check_profiles(side, &qa.profiles)?;
                    qa.translation.build(&format!("{side}.translation"))?;
                    Lattice::scalar(qa.dilation.0.clone())
                        .map_err(|e| CliError::spec(&format!("{side}.dilation"), e))?;
                }
                if s.r_min.is_some_and(|r| r > 0) {
                    return Err(CliError::Spec("r_min: must be zero or negative".into()));
                }
            }
            ScenarioSpec::MsfCheck(s) => {
                Lattice::scalar(s.dilation.0.clone()).map_err(|e| CliError::spec("dilation", e))?;
            }
        }
        Ok(())
    }
}

fn toml_error(e: toml::de::Error) -> CliError {
    CliError::Spec(e.to_string().trim_end().to_string())
}

/// Parses and validates a spec. Grammar errors carry the TOML line and key;
/// validation errors carry the field path.
pub fn parse_spec(text: &str) -> Result<ScenarioSpec, CliError> {
    let table: toml::Table = toml::from_str(text).map_err(toml_error)?;
    let command = match table.get("command") {
        Some(toml::Value::String(c)) => c.as_str(),
        Some(_) => return Err(CliError::Spec("command: expected a string".into())),
        None => return Err(CliError::Spec("command: missing".into())),
    };
    fn read<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
        toml::from_str(text).map_err(toml_error)
    }
    let spec = match command {
        "multiplicity" => ScenarioSpec::Multiplicity(read(text)?),
        "sampling-check" => ScenarioSpec::SamplingCheck(read(text)?),
        "classify" => ScenarioSpec::Classify(read(text)?),
        "classify-union" => ScenarioSpec::ClassifyUnion(read(text)?),
        "mux-demo" => ScenarioSpec::MuxDemo(read(text)?),
        "wavelet-disjoint" => ScenarioSpec::WaveletDisjoint(read(text)?),
        "wh-disjoint" => ScenarioSpec::WhDisjoint(read(text)?),
        "quasi-affine" => ScenarioSpec::QuasiAffine(read(text)?),
        "msf-check" => ScenarioSpec::MsfCheck(read(text)?),
        other => {
            return Err(CliError::Spec(format!(
                "command: unknown command `{other}`"
            )))
        }
    };
    spec.validate()?;
    Ok(spec)
}

/// Canonical TOML rendering; `parse_spec` of the output yields an equal spec.
pub fn to_toml(spec: &ScenarioSpec) -> String {
    toml::to_string(spec).expect("specs always serialize")
}
