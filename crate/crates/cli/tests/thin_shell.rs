//! Every CLI verdict equals the verdict of the direct library call.

use std::path::{Path, PathBuf};
use std::process::Command;

use sdframe_core::generators::Domain;
use sdframe_core::*;
use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/scenarios")
        .join(name)
}

fn cli(name: &str) -> Value {
    let o = Command::new(env!("CARGO_BIN_EXE_sdframe"))
        .args(["run", "--json", "--reproducible"])
        .arg(scenario(name))
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice::<Value>(&o.stdout).unwrap()["verdict"].clone()
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

fn lat(p: i64, d: i64) -> Lattice {
    Lattice::scalar(q(p, d)).unwrap()
}

fn band(s: &str) -> BandSet {
    s.parse().unwrap()
}

fn shannon() -> BandSet {
    band("[-1,-1/2) u [1/2,1)")
}

#[test]
fn multiplicity_matches() {
    let v = cli("multiplicity.toml");
    let m = multiplicity(&shannon(), &lat(1, 3)).unwrap();
    assert_eq!(v["support"], m.support().to_string());
    assert_eq!(v["max"], format_rational(&m.max_value()));
    assert_eq!(v["integral"], format_rational(&m.integral()));
    assert_eq!(v["pieces"].as_array().unwrap().len(), m.pieces().len());
}

#[test]
fn sampling_check_matches() {
    let v = cli("sampling-check.toml");
    let c = is_sampling_matrix(&shannon(), &lat(3, 4)).unwrap();
    assert_eq!(v["is_sampling"], c.is_sampling);
    assert_eq!(v["certificate"]["max"], format_rational(&c.max));
    let fb = frame_bounds_exact(&shannon(), &lat(3, 4)).unwrap();
    assert_eq!(v["frame_bounds"]["lower"], format_rational(&fb.lower));
    assert_eq!(v["frame_bounds"]["upper"], format_rational(&fb.upper));
}

#[test]
fn classify_matches() {
    let v = cli("classify.toml");
    let shifted = lat(1, 2).with_shift(vec![q(1, 5)]).unwrap();
    let r = classify_single(&shannon(), &lat(1, 3), &band("[-1/4,1/4)"), &shifted).unwrap();
    assert_eq!(v["kind"], r.kind.name());
    assert_eq!(v["supports"]["first"], r.first_support.to_string());
    assert_eq!(v["supports"]["second"], r.second_support.to_string());
    assert_eq!(v["certified"], true);
}

#[test]
fn classify_union_matches() {
    let v = cli("classify-union.toml");
    let u = classify_union(
        &shannon(),
        &[lat(1, 3), lat(2, 3)],
        &shannon(),
        &[lat(2, 3), lat(1, 3)],
        Claim::Orthogonal,
    )
    .unwrap();
    assert_eq!(v["kind"], format!("{:?}", u.overall));
    let coords = v["coordinates"].as_array().unwrap();
    assert_eq!(coords.len(), u.coordinates.len());
    for (c, lib) in coords.iter().zip(&u.coordinates) {
        assert_eq!(c["kind"], lib.relation.kind.name());
        assert_eq!(
            c["supports"]["first"],
            lib.relation.first_support.to_string()
        );
    }
}

#[test]
fn mux_demo_matches() {
    let v = cli("mux-demo.toml");
    let m1 = build_model(&shannon(), &q(1, 3), &q(12, 1)).unwrap();
    let m2 = build_model(&band("[-1/4,1/4)"), &q(1, 2), &q(12, 1)).unwrap();
    assert_eq!(
        v["models"][0]["frequencies"],
        serde_json::json!(m1.frequencies())
    );
    assert_eq!(
        v["models"][1]["frequencies"],
        serde_json::json!(m2.frequencies())
    );
    assert_eq!(
        v["cross_gram"].as_f64().unwrap(),
        cross_gram(&m1, &m2).unwrap()
    );
    assert!(v["crosstalk"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["kind"], "demultiplexed");
}

#[test]
fn wavelet_disjoint_matches() {
    let v = cli("wavelet-disjoint.toml");
    let m = SpectralProfile::meyer();
    let lib = affine_verdict(
        std::slice::from_ref(&m),
        &lat(1, 3),
        std::slice::from_ref(&m),
        &lat(1, 13),
        DisjointClaim::Orthogonal,
    )
    .unwrap();
    assert_eq!(v["kind"], lib.status.name());
    assert_eq!(
        v["coordinates"][0]["first"],
        lib.frequency[0].first.to_string()
    );
    assert_eq!(
        v["coordinates"][0]["second"],
        lib.frequency[0].second.to_string()
    );
}

#[test]
fn wh_disjoint_matches() {
    let v = cli("wh-disjoint.toml");
    let f = SpectralProfile::characteristic(Domain::Time, band("[0,1/3)")).unwrap();
    let g = SpectralProfile::characteristic(Domain::Time, band("[1/3,2/3)")).unwrap();
    let one = lat(1, 1);
    let lib = wh_verdict(
        &[f],
        &one,
        &one,
        &[g],
        &one,
        &one,
        DisjointClaim::Orthogonal,
        WhRoute::Auto,
    )
    .unwrap();
    assert_eq!(v["kind"], lib.status.name());
    assert_eq!(v["certified_by"], "time");
    assert_eq!(v["side_condition"], lib.side_condition.unwrap());
}

#[test]
fn quasi_affine_matches() {
    let v = cli("quasi-affine.toml");
    let w = SpectralProfile::characteristic(Domain::Frequency, shannon()).unwrap();
    let one = lat(1, 1);
    let lib = quasi_affine_report(
        std::slice::from_ref(&w),
        &q(2, 1),
        &one,
        std::slice::from_ref(&w),
        &q(2, 1),
        &one,
        -4,
        DisjointClaim::Equal,
    )
    .unwrap();
    assert_eq!(v["kind"], lib.status.name());
    assert_eq!(v["truncated"], lib.truncated);
    let rows = v["coordinates"].as_array().unwrap();
    assert_eq!(rows.len(), lib.rows.len());
    for (row, l) in rows.iter().zip(&lib.rows) {
        assert_eq!(row["r"], l.r);
        assert_eq!(row["pairs"][0]["first"], l.pairs[0].first.to_string());
    }
}

#[test]
fn msf_check_matches() {
    let v = cli("msf-check.toml");
    assert_eq!(
        v["certified"],
        msf_orthogonality_check(&shannon(), &q(2, 1), 5).unwrap()
    );
}
