//! Dispatch from a validated spec to the core library, producing a verdict
//! value, a human summary and CSV dumps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sdframe_core::discrete::NORM_CONVENTION;
use sdframe_core::rational::to_f64;
use sdframe_core::*;

use crate::spec::*;
use crate::CliError;

/// Everything a command produced.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub verdict: Value,
    pub summary: Vec<String>,
    /// Claims the command can decide, with whether each is certified.
    pub claims: Vec<(ClaimName, bool)>,
    /// `(suffix, contents)`; written as `<stem>.<suffix>`.
    pub artifacts: Vec<(String, String)>,
}

impl Evaluation {
    pub fn certified(&self, claim: ClaimName) -> Option<bool> {
        self.claims
            .iter()
            .find(|(c, _)| *c == claim)
            .map(|(_, v)| *v)
    }
}

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn band_json(b: &BandSet) -> Value {
    Value::String(b.to_string())
}

fn relation_json(r: &RangeRelation) -> Value {
    json!({
        "kind": r.kind.name(),
        "supports": { "first": band_json(&r.first_support), "second": band_json(&r.second_support) },
        "measures": {
            "first": q(&r.first_support.measure()),
            "second": q(&r.second_support.measure()),
            "intersection": q(&r.intersection.measure()),
            "first_minus_second": q(&r.first_minus_second.measure()),
            "second_minus_first": q(&r.second_minus_first.measure()),
        },
    })
}

fn relation_report(r: &RangeRelation, certified: bool, grade: &str) -> Value {
    let mut v = relation_json(r);
    v["certified"] = json!(certified);
    v["grade"] = json!(grade);
    v["coordinates"] = json!([{ "index": 0, "kind": r.kind.name() }]);
    v
}

fn pair_json(p: &SupportPair, domain: &str) -> Value {
    json!({
        "index": p.index,
        "domain": domain,
        "first": band_json(&p.first),
        "second": band_json(&p.second),
        "relation": format!("{:?}", p.relation),
        "holds": p.holds,
        "measures": {
            "first": q(&p.first.measure()),
            "second": q(&p.second.measure()),
            "intersection": q(&p.first.intersect(&p.second).expect("same dimension").measure()),
        },
    })
}

fn csv_of<R: serde::Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn vector_csv(v: &[Complex64]) -> String {
    csv_of(&["re", "im"], v.iter().map(|c| (c.re, c.im)))
}

fn disjoint_claim(claim: ClaimName, command: &str) -> Result<DisjointClaim, CliError> {
    match claim {
        ClaimName::Orthogonal => Ok(DisjointClaim::Orthogonal),
        ClaimName::Equal => Ok(DisjointClaim::Equal),
        ClaimName::Contained => Ok(DisjointClaim::Contained),
        other => Err(CliError::Spec(format!(
            "claim: `{other}` is not supported by {command}"
        ))),
    }
}

/// Spec claim, filled from `--assert` when absent. A mismatch is a spec
/// error.
fn resolve_claim(
    spec: Option<ClaimName>,
    asserted: Option<ClaimName>,
) -> Result<ClaimName, CliError> {
    match (spec, asserted) {
        (Some(s), Some(a)) if s != a => Err(CliError::Spec(format!(
            "claim: spec claims `{s}` but --assert asks for `{a}`"
        ))),
        (Some(s), _) => Ok(s),
        (None, Some(a)) => Ok(a),
        (None, None) => Ok(ClaimName::Orthogonal),
    }
}

fn profiles(side: &str, ps: &[ProfileSpec]) -> Result<Vec<SpectralProfile>, CliError> {
    ps.iter()
        .enumerate()
        .map(|(i, p)| p.build(&format!("{side}.profiles[{i}]")))
        .collect()
}

fn bell_note(ps: &[&[ProfileSpec]]) -> Option<Value> {
    ps.iter().any(|s| s.iter().any(ProfileSpec::uses_fixed_bell)).then(|| {
        json!("meyer/fj profile values come from a fixed smooth bell; verdicts depend on supports only")
    })
}

fn periodization_csv(p: &SpectralProfile, lattice: &Lattice) -> Result<String, CliError> {
    let per = periodization_sq(p, lattice).map_err(CliError::from_core)?;
    let res = generators::DEFAULT_RESOLUTION;
    let xi = |i: usize| (2 * i + 1) as f64 / (2 * res) as f64;
    let rows: Vec<(f64, f64)> = match &per.values {
        PeriodizedValues::Exact(step) => (0..res)
            .map(|i| {
                let x = Rational::new((2 * i as i64 + 1).into(), (2 * res as i64).into());
                (xi(i), to_f64(&step.eval(&[x])))
            })
            .collect(),
        PeriodizedValues::Sampled { resolution, values } => values
            .iter()
            .enumerate()
            .map(|(i, v)| ((2 * i + 1) as f64 / (2 * resolution) as f64, *v))
            .collect(),
    };
    Ok(csv_of(&["xi", "value"], rows))
}

fn multiplicity_cmd(s: &BandLatticeSpec) -> Result<Evaluation, CliError> {
    let lattice = s.lattice.build("lattice")?;
    let m = multiplicity(&s.band.0, &lattice).map_err(CliError::from_core)?;
    let pieces: Vec<Value> = m
        .pieces()
        .iter()
        .map(|(b, v)| {
            json!({
                "lo": b.lo().iter().map(q).collect::<Vec<_>>(),
                "hi": b.hi().iter().map(q).collect::<Vec<_>>(),
                "value": q(v),
            })
        })
        .collect();
    let sampling = m.max_value() <= Rational::from_integer(1.into());
    let verdict = json!({
        "dim": m.dim(),
        "pieces": pieces,
        "max": q(&m.max_value()),
        "min_nonzero": m.min_nonzero().as_ref().map(q),
        "integral": q(&m.integral()),
        "det_times_measure": q(&(sdframe_core::rational::abs(&lattice.det()) * s.band.0.measure())),
        "support": band_json(&m.support()),
        "support_recentered": band_json(&m.support().recentered()),
    });
    let summary = vec![
        format!(
            "multiplicity of {} under {}",
            s.band.0,
            lattice_text(&lattice)
        ),
        format!(
            "max {}, integral {}, support {}",
            format_rational(&m.max_value()),
            format_rational(&m.integral()),
            m.support()
        ),
    ];
    Ok(Evaluation {
        verdict,
        summary,
        claims: vec![(ClaimName::Sampling, sampling)],
        artifacts: vec![("multiplicity.csv".into(), m.to_csv())],
    })
}

fn lattice_text(l: &Lattice) -> String {
    let d: Vec<String> = l.diag().iter().map(format_rational).collect();
    format!("A = diag({})", d.join(", "))
}

fn sampling_cmd(s: &BandLatticeSpec) -> Result<Evaluation, CliError> {
    let lattice = s.lattice.build("lattice")?;
    let check = is_sampling_matrix(&s.band.0, &lattice).map_err(CliError::from_core)?;
    let bounds = frame_bounds_exact(&s.band.0, &lattice).map_err(CliError::from_core)?;
    let at_max: Vec<RationalBox> = check
        .certificate
        .pieces()
        .into_iter()
        .filter(|(_, v)| *v == check.max)
        .map(|(b, _)| b)
        .collect();
    let max_region =
        BandSet::normalize(at_max, check.certificate.dim()).map_err(CliError::from_core)?;
    let verdict = json!({
        "kind": if check.is_sampling { "sampling" } else { "not-sampling" },
        "is_sampling": check.is_sampling,
        "certified": true,
        "certificate": { "max": q(&check.max), "attained_on": band_json(&max_region) },
        "frame_bounds": { "lower": q(&bounds.lower), "upper": q(&bounds.upper), "tight": bounds.is_tight() },
    });
    let summary = vec![format!(
        "{} for {}: {} (multiplicity max {} on {})",
        lattice_text(&lattice),
        s.band.0,
        check.is_sampling,
        format_rational(&check.max),
        max_region
    )];
    Ok(Evaluation {
        verdict,
        summary,
        claims: vec![(ClaimName::Sampling, check.is_sampling)],
        artifacts: vec![("certificate.csv".into(), check.certificate.to_csv())],
    })
}

fn classify_cmd(s: &ClassifySpec) -> Result<Evaluation, CliError> {
    let a = s.first.lattice.build("first.lattice")?;
    let b = s.second.lattice.build("second.lattice")?;
    let (e, f) = (&s.first.band.0, &s.second.band.0);
    let mode = s.mode.unwrap_or(ClassifyMode::Bessel);
    let (verdict, claims, kind) = match mode {
        ClassifyMode::Single => {
            let r = classify_single(e, &a, f, &b).map_err(|err| match err {
                Error::NotSamplingMatrix { side, max } => CliError::Spec(format!(
                    "{side}.lattice: not a sampling matrix (multiplicity reaches {}); use mode = \"bessel\"",
                    format_rational(&max)
                )),
                other => CliError::from_core(other),
            })?;
            let overlap = r.overlap_measure() > Rational::from_integer(0.into());
            let claims = vec![
                (ClaimName::Equal, r.kind == RangeKind::Equal),
                (ClaimName::Orthogonal, r.kind == RangeKind::Orthogonal),
                (
                    ClaimName::Contained,
                    matches!(r.kind, RangeKind::Equal | RangeKind::FirstInsideSecond),
                ),
                (ClaimName::Overlap, overlap),
            ];
            (relation_report(&r, true, "Certified"), claims, r.kind)
        }
        ClassifyMode::Bessel => {
            let g = classify_bessel(e, &a, f, &b).map_err(CliError::from_core)?;
            let certified = g.grade == Grade::Certified;
            let claims = vec![
                (ClaimName::Equal, false),
                (ClaimName::Orthogonal, certified),
                (ClaimName::Contained, false),
                (ClaimName::Overlap, false),
            ];
            (
                relation_report(&g.relation, certified, &format!("{:?}", g.grade)),
                claims,
                g.relation.kind,
            )
        }
    };
    let summary = vec![format!("{mode:?} classification: {}", kind.name())];
    Ok(Evaluation {
        verdict,
        summary,
        claims,
        artifacts: Vec::new(),
    })
}

fn union_cmd(s: &ClassifyUnionSpec, asserted: Option<ClaimName>) -> Result<Evaluation, CliError> {
    let claim = match resolve_claim(s.claim, asserted)? {
        ClaimName::Equal => (Claim::Equal, ClaimName::Equal),
        ClaimName::Orthogonal => (Claim::Orthogonal, ClaimName::Orthogonal),
        ClaimName::Contained => (Claim::Contained, ClaimName::Contained),
        ClaimName::Overlap => (Claim::Overlap, ClaimName::Overlap),
        ClaimName::Sampling => {
            return Err(CliError::Spec(
                "claim: `sampling` is not supported by classify-union".into(),
            ))
        }
    };
    let build = |side: &str, u: &UnionSide| -> Result<Vec<Lattice>, CliError> {
        u.lattices
            .iter()
            .enumerate()
            .map(|(i, l)| l.build(&format!("{side}.lattices[{i}]")))
            .collect()
    };
    let (la, lb) = (build("first", &s.first)?, build("second", &s.second)?);
    let v = classify_union(&s.first.band.0, &la, &s.second.band.0, &lb, claim.0)
        .map_err(CliError::from_core)?;
    let certified = v.overall == UnionStatus::CertifiedOrthogonal;
    let coordinates: Vec<Value> = v
        .coordinates
        .iter()
        .map(|c| {
            let mut r = relation_json(&c.relation);
            r["index"] = json!(c.index);
            r["padded"] = json!(c.padded);
            r
        })
        .collect();
    let warnings: Vec<Value> = v
        .non_sampling_coordinates
        .iter()
        .map(|(side, i)| json!({ "side": side.to_string(), "index": i }))
        .collect();
    let verdict = json!({
        "kind": format!("{:?}", v.overall),
        "claim": claim.1.name(),
        "certified": certified,
        "coordinates": coordinates,
        "non_sampling_coordinates": warnings,
    });
    let mut summary = vec![format!("claim {}: {:?}", claim.1, v.overall)];
    if !v.non_sampling_coordinates.is_empty() {
        summary.push(
            "warning: some coordinates are not individually sampling; joint sampling is assumed"
                .into(),
        );
    }
    Ok(Evaluation {
        verdict,
        summary,
        claims: vec![(claim.1, certified)],
        artifacts: Vec::new(),
    })
}

fn model_json(m: &DiscreteModel) -> Value {
    json!({
        "P": q(m.period()),
        "a": q(m.step()),
        "M": m.samples(),
        "frequencies": m.frequencies(),
        "norm_convention": NORM_CONVENTION,
    })
}

fn random_vector(r: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
        .collect()
}

/// Default crosstalk tolerance for a clean round trip.
pub const MUX_TOLERANCE: f64 = 1e-9;

fn mux_cmd(s: &MuxDemoSpec) -> Result<Evaluation, CliError> {
    let build = |side: &str, m: &MuxSide| {
        build_model(&m.band.0, &m.step.0, &s.period.0).map_err(|e| CliError::spec(side, e))
    };
    let m1 = build("first", &s.first)?;
    let m2 = build("second", &s.second)?;
    let exact = classify_bessel(
        &s.first.band.0,
        &m1.lattice(),
        &s.second.band.0,
        &m2.lattice(),
    )
    .map_err(CliError::from_core)?;
    let orthogonal = exact.grade == Grade::Certified;
    let tolerance = s.tolerance.unwrap_or(MUX_TOLERANCE);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed.map_or(0, u64::from));
    let f = random_vector(&mut rng, m1.frequencies().len());
    let g = random_vector(&mut rng, m2.frequencies().len());
    let models = json!([model_json(&m1), model_json(&m2)]);
    let exact_json = relation_report(&exact.relation, orthogonal, &format!("{:?}", exact.grade));
    let out = match multiplex_roundtrip(&m1, &f, &m2, &g, s.force.unwrap_or(false)) {
        Ok(out) => out,
        Err(Error::NotDisjoint { cross_gram }) => {
            let verdict = json!({
                "kind": "refused",
                "certified": false,
                "demultiplexed": false,
                "cross_gram": cross_gram,
                "exact": exact_json,
                "models": models,
            });
            let summary = vec![format!("refused: ranges overlap (cross gram {cross_gram:.3e}); set force = true to run anyway")];
            return Ok(Evaluation {
                verdict,
                summary,
                claims: vec![(ClaimName::Orthogonal, false)],
                artifacts: Vec::new(),
            });
        }
        Err(e) => return Err(CliError::from_core(e)),
    };
    let clean = out.crosstalk <= tolerance;
    if orthogonal && !clean {
        return Err(CliError::Numeric(format!(
            "crosstalk {:.3e} exceeds tolerance {tolerance:e} for an exactly orthogonal pair",
            out.crosstalk
        )));
    }
    let verdict = json!({
        "kind": if clean { "demultiplexed" } else { "crosstalk" },
        "certified": orthogonal && clean,
        "demultiplexed": clean,
        "crosstalk": out.crosstalk,
        "cross_gram": out.cross_gram,
        "tolerance": tolerance,
        "exact": exact_json,
        "models": models,
    });
    let summary = vec![
        format!(
            "models M = {} and {} on P = {}",
            m1.samples(),
            m2.samples(),
            format_rational(m1.period())
        ),
        format!(
            "exact relation {}; crosstalk {:.3e} (tolerance {tolerance:e})",
            exact.relation.kind.name(),
            out.crosstalk
        ),
    ];
    let artifacts = vec![
        ("stream.csv".into(), vector_csv(&out.stream)),
        ("first_input.csv".into(), vector_csv(&f)),
        ("first_recovered.csv".into(), vector_csv(&out.first)),
        ("second_input.csv".into(), vector_csv(&g)),
        ("second_recovered.csv".into(), vector_csv(&out.second)),
    ];
    Ok(Evaluation {
        verdict,
        summary,
        claims: vec![(ClaimName::Orthogonal, orthogonal && clean)],
        artifacts,
    })
}

fn disjointness_json(v: &DisjointnessVerdict) -> Value {
    let mut coordinates: Vec<Value> = v
        .frequency
        .iter()
        .map(|p| pair_json(p, "frequency"))
        .collect();
    coordinates.extend(v.time.iter().map(|p| pair_json(p, "time")));
    json!({
        "kind": v.status.name(),
        "claim": v.claim.name(),
        "certified": v.status == VerdictStatus::CertifiedSufficient,
        "certified_by": v.certified_by.map(|r| match r {
            WhRoute::FrequencyOnly => "frequency",
            WhRoute::TimeOnly => "time",
            WhRoute::Auto => "auto",
        }),
        "side_condition": v.side_condition,
        "coordinates": coordinates,
    })
}

fn wavelet_cmd(
    s: &WaveletDisjointSpec,
    asserted: Option<ClaimName>,
) -> Result<Evaluation, CliError> {
    let name = resolve_claim(s.claim, asserted)?;
    let claim = disjoint_claim(name, "wavelet-disjoint")?;
    let psis = profiles("first", &s.first.profiles)?;
    let phis = profiles("second", &s.second.profiles)?;
    let x = s.first.translation.build("first.translation")?;
    let y = s.second.translation.build("second.translation")?;
    let v = affine_verdict(&psis, &x, &phis, &y, claim).map_err(CliError::from_core)?;
    let mut verdict = disjointness_json(&v);
    if let Some(note) = bell_note(&[&s.first.profiles, &s.second.profiles]) {
        verdict["note"] = note;
    }
    let mut artifacts = Vec::new();
    for (side, ps, l) in [("first", &psis, &x), ("second", &phis, &y)] {
        for (i, p) in ps.iter().enumerate() {
            artifacts.push((
                format!("{side}{i}.periodization.csv"),
                periodization_csv(p, l)?,
            ));
        }
    }
    let summary = vec![format!(
        "affine {} claim: {}",
        claim.name(),
        v.status.name()
    )];
    let certified = v.status == VerdictStatus::CertifiedSufficient;
    Ok(Evaluation {
        verdict,
        summary,
        claims: vec![(name, certified)],
        artifacts,
    })
}

fn wh_cmd(s: &WhDisjointSpec, asserted: Option<ClaimName>) -> Result<Evaluation, CliError> {
    let name = resolve_claim(s.claim, asserted)?;
    let claim = disjoint_claim(name, "wh-disjoint")?;
    let fs = profiles("first", &s.first.profiles)?;
    let gs = profiles("second", &s.second.profiles)?;
    let a = s.first.modulation.build("first.modulation")?;
    let x = s.first.translation.build("first.translation")?;
    let b = s.second.modulation.build("second.modulation")?;
    let y = s.second.translation.build("second.translation")?;
    let route = s.route.unwrap_or(RouteName::Auto).into();
    let v = wh_verdict(&fs, &a, &x, &gs, &b, &y, claim, route).map_err(|e| match e {
        Error::MissingTimeProfile { index } => CliError::Spec(format!(
            "profiles[{index}]: route = \"time\" needs time-domain profiles on both sides"
        )),
        other => CliError::from_core(other),
    })?;
    let mut verdict = disjointness_json(&v);
    if let Some(note) = bell_note(&[&s.first.profiles, &s.second.profiles]) {
        verdict["note"] = note;
    }
    let by = match v.certified_by {
        Some(WhRoute::FrequencyOnly) => " via frequency supports",
        Some(WhRoute::TimeOnly) => " via time supports",
        _ => "",
    };
    let summary = vec![format!(
        "Weyl-Heisenberg {} claim: {}{by}",
        claim.name(),
        v.status.name()
    )];
    let certified = v.status == VerdictStatus::CertifiedSufficient;
    Ok(Evaluation {
        verdict,
        summary,
        claims: vec![(name, certified)],
        artifacts: Vec::new(),
    })
}

fn quasi_affine_cmd(
    s: &QuasiAffineSpec,
    asserted: Option<ClaimName>,
) -> Result<Evaluation, CliError> {
    let name = resolve_claim(s.claim, asserted)?;
    let claim = disjoint_claim(name, "quasi-affine")?;
    let psis = profiles("first", &s.first.profiles)?;
    let phis = profiles("second", &s.second.profiles)?;
    let x = s.first.translation.build("first.translation")?;
    let y = s.second.translation.build("second.translation")?;
    let r_min = s.r_min.unwrap_or(generators::DEFAULT_R_MIN);
    let rep = quasi_affine_report(
        &psis,
        &s.first.dilation.0,
        &x,
        &phis,
        &s.second.dilation.0,
        &y,
        r_min,
        claim,
    )
    .map_err(|e| match e {
        Error::NotExpansive => CliError::Spec("dilation: must be expansive (|a| > 1)".into()),
        other => CliError::from_core(other),
    })?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            json!({
                "r": r.r,
                "holds": r.holds,
                "pairs": r.pairs.iter().map(|p| pair_json(p, "frequency")).collect::<Vec<_>>(),
            })
        })
        .collect();
    let certified = rep.status == VerdictStatus::CertifiedSufficient;
    let mut verdict = json!({
        "kind": rep.status.name(),
        "claim": rep.claim.name(),
        "certified": certified,
        "corollary": rep.corollary,
        "truncated": rep.truncated,
        "r_min": r_min,
        "violations": rep.violations,
        "coordinates": rows,
    });
    if let Some(note) = bell_note(&[&s.first.profiles, &s.second.profiles]) {
        verdict["note"] = note;
    }
    let scope = if rep.corollary {
        "all r (integer-lattice corollary)".to_string()
    } else if rep.truncated {
        format!("checked for {r_min} <= r <= 0 only")
    } else {
        format!("violated at r in {:?}", rep.violations)
    };
    let summary = vec![format!(
        "quasi-affine {} claim: {} ({scope})",
        claim.name(),
        rep.status.name()
    )];
    Ok(Evaluation {
        verdict,
        summary,
        claims: vec![(name, certified)],
        artifacts: Vec::new(),
    })
}

fn msf_cmd(s: &MsfCheckSpec) -> Result<Evaluation, CliError> {
    let holds =
        msf_orthogonality_check(&s.band.0, &s.dilation.0, s.j_max).map_err(|e| match e {
            Error::NotExpansive => CliError::Spec("dilation: must be greater than 1".into()),
            other => CliError::from_core(other),
        })?;
    let verdict = json!({
        "kind": if holds { "Orthogonal" } else { "Overlapping" },
        "certified": holds,
        "j_max": s.j_max,
    });
    let summary = vec![format!(
        "periodized dilates of {} by {}^j, 1 <= j <= {}: {}",
        s.band.0,
        format_rational(&s.dilation.0),
        s.j_max,
        if holds {
            "pairwise disjoint"
        } else {
            "overlap"
        }
    )];
    Ok(Evaluation {
        verdict,
        summary,
        claims: vec![(ClaimName::Orthogonal, holds)],
        artifacts: Vec::new(),
    })
}

/// Runs one spec. `asserted` fills in the claim for commands that take one.
pub fn evaluate(spec: &ScenarioSpec, asserted: Option<ClaimName>) -> Result<Evaluation, CliError> {
    match spec {
        ScenarioSpec::Multiplicity(s) => multiplicity_cmd(s),
        ScenarioSpec::SamplingCheck(s) => sampling_cmd(s),
        ScenarioSpec::Classify(s) => classify_cmd(s),
        ScenarioSpec::ClassifyUnion(s) => union_cmd(s, asserted),
        ScenarioSpec::MuxDemo(s) => mux_cmd(s),
        ScenarioSpec::WaveletDisjoint(s) => wavelet_cmd(s, asserted),
        ScenarioSpec::WhDisjoint(s) => wh_cmd(s, asserted),
        ScenarioSpec::QuasiAffine(s) => quasi_affine_cmd(s, asserted),
        ScenarioSpec::MsfCheck(s) => msf_cmd(s),
    }
}
