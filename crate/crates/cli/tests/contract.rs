//! Exit codes, validation messages, determinism and file output of the
//! `sdframe` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sdframe"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/scenarios")
        .join(name)
}

fn run(args: &[&str], specs: &[&Path]) -> Output {
    bin()
        .arg("run")
        .args(args)
        .args(specs)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("report is json")
}

#[test]
fn sampling_check_three_quarters_fails_assert() {
    let spec = scenario("sampling-check.toml");
    let o = run(
        &["--json", "--reproducible", "--assert", "sampling"],
        &[&spec],
    );
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["verdict"]["is_sampling"], false);
    assert_eq!(r["verdict"]["certificate"]["max"], "2");
    assert_eq!(
        r["verdict"]["certificate"]["attained_on"],
        "dim=1; [3/8,5/8)"
    );
    assert_eq!(r["assert"]["certified"], false);
    // without --assert the verdict lives in the report only
    assert_eq!(run(&[], &[&spec]).status.code(), Some(0));
}

#[test]
fn classify_union_asserts_orthogonal() {
    let o = run(
        &["--json", "--assert", "orthogonal"],
        &[&scenario("classify-union.toml")],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["verdict"]["kind"], "CertifiedOrthogonal");
}

#[test]
fn necessary_only_claims_do_not_certify() {
    let o = run(&["--assert", "equal"], &[&scenario("quasi-affine.toml")]);
    assert_eq!(o.status.code(), Some(1));
    // a spec claim that disagrees with --assert is a spec error
    let o = run(
        &["--assert", "orthogonal"],
        &[&scenario("quasi-affine.toml")],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("claim"));
}

#[test]
fn unknown_and_unsupported_claims_exit_two() {
    let o = run(&["--assert", "similar"], &[&scenario("classify.toml")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--assert", "sampling"], &[&scenario("classify.toml")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_band_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let explicit = write(
        dir.path(),
        "a.toml",
        "command = \"multiplicity\"\nband = \"dim=1; empty\"\nlattice = \"1\"\n",
    );
    let o = run(&[], &[&explicit]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("band: band is empty"), "{}", stderr(&o));
    let blank = write(
        dir.path(),
        "b.toml",
        "command = \"classify\"\n[first]\nband = \"[0,1)\"\nlattice = \"1\"\n[second]\nband = \"\"\nlattice = \"1\"\n",
    );
    let o = run(&[], &[&blank]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(
        e.contains("line 6") && e.contains("band = \"\"") && e.contains("band is empty"),
        "{e}"
    );
}

#[test]
fn zero_lattice_is_singular() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "z.toml",
        "command = \"sampling-check\"\nband = \"[0,1)\"\nlattice = \"0\"\n",
    );
    let o = run(&[], &[&p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("lattice: singular matrix"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn unknown_keys_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "u.toml",
        "command = \"msf-check\"\nband = \"[0,1)\"\ndilation = \"2\"\nj_max = 3\nextra = 1\n",
    );
    let o = run(&[], &[&p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown field `extra`"));
    let p = write(dir.path(), "c.toml", "command = \"frobnicate\"\n");
    assert_eq!(run(&[], &[&p]).status.code(), Some(2));
}

#[test]
fn non_expansive_dilation_is_a_spec_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "m.toml",
        "command = \"msf-check\"\nband = \"[0,1)\"\ndilation = \"1/2\"\nj_max = 3\n",
    );
    assert_eq!(run(&[], &[&p]).status.code(), Some(2));
}

#[test]
fn refused_mux_is_a_verdict_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = "command = \"mux-demo\"\nperiod = \"12\"\n[first]\nband = \"[-1,-1/2) u [1/2,1)\"\nstep = \"1\"\n\
                [second]\nband = \"[-1,-1/2) u [1/2,1)\"\nstep = \"1\"\n";
    let p = write(dir.path(), "m.toml", text);
    let o = run(&["--json"], &[&p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"]["kind"], "refused");
    let text = text.replace("period = \"12\"\n", "period = \"12\"\nforce = true\n");
    let p = write(dir.path(), "f.toml", &text);
    let o = run(&["--json", "--assert", "orthogonal"], &[&p]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert!(r["verdict"]["crosstalk"].as_f64().unwrap() >= 0.1);
}

#[test]
fn reproducible_reports_are_byte_identical() {
    for name in [
        "mux-demo.toml",
        "wavelet-disjoint.toml",
        "classify-union.toml",
    ] {
        let a = run(&["--json", "--reproducible"], &[&scenario(name)]);
        let b = run(&["--json", "--reproducible"], &[&scenario(name)]);
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("generated_at"));
    }
    let stamped = run(&["--json"], &[&scenario("msf-check.toml")]);
    assert!(json(&stamped)["generated_at"].is_u64());
}

#[test]
fn reports_embed_the_spec() {
    let o = run(&["--json", "--reproducible"], &[&scenario("mux-demo.toml")]);
    let r = json(&o);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["spec"]["command"], "mux-demo");
    assert_eq!(r["spec"]["first"]["step"], "1/3");
    let models = r["verdict"]["models"].as_array().unwrap();
    assert_eq!(models[0]["M"], 36);
    assert_eq!(models[1]["M"], 24);
    assert!(models[0]["norm_convention"].is_string());
}

#[test]
fn out_dir_receives_reports_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let specs: Vec<PathBuf> = [
        "multiplicity.toml",
        "mux-demo.toml",
        "wavelet-disjoint.toml",
        "sampling-check.toml",
    ]
    .iter()
    .map(|n| scenario(n))
    .collect();
    let refs: Vec<&Path> = specs.iter().map(|p| p.as_path()).collect();
    let out = dir.path().to_str().unwrap();
    let o = run(&["--reproducible", "--jobs", "3", "--out-dir", out], &refs);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let read = |n: &str| std::fs::read_to_string(dir.path().join(n)).unwrap();
    assert_eq!(
        read("multiplicity.multiplicity.csv"),
        "dim,pieces\n1,5\nlo,hi,value\n0,1/6,0\n1/6,1/3,1\n1/3,2/3,0\n2/3,5/6,1\n5/6,1,0\n"
    );
    assert!(read("sampling-check.certificate.csv").contains("3/8,5/8,2\n"));
    let stream = read("mux-demo.stream.csv");
    assert!(stream.starts_with("re,im\n"));
    assert_eq!(stream.lines().count(), 1 + 72);
    let grid = read("wavelet-disjoint.first0.periodization.csv");
    assert!(grid.starts_with("xi,value\n"));
    assert_eq!(grid.lines().count(), 1 + 1024);
    let report: serde_json::Value = serde_json::from_str(&read("mux-demo.json")).unwrap();
    assert_eq!(report["command"], "mux-demo");
    // summaries come out in argument order whatever the job count
    let text = String::from_utf8_lossy(&o.stdout);
    let order: Vec<usize> = [
        "multiplicity.toml",
        "mux-demo.toml",
        "wavelet-disjoint.toml",
        "sampling-check.toml",
    ]
    .iter()
    .map(|n| text.find(n).unwrap())
    .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn worst_exit_code_wins_across_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", "command = \"sampling-check\"\n");
    let o = run(
        &["--assert", "sampling", "--jobs", "2"],
        &[&scenario("sampling-check.toml"), &bad],
    );
    assert_eq!(o.status.code(), Some(2));
    let o = run(
        &["--assert", "sampling"],
        &[
            &scenario("sampling-check.toml"),
            &scenario("multiplicity.toml"),
        ],
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fmt_prints_canonical_form() {
    let o = bin()
        .arg("fmt")
        .arg(scenario("classify.toml"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("band = \"dim=1; [-1,-1/2) u [1/2,1)\""));
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "again.toml", &text);
    let again = bin().arg("fmt").arg(&p).output().unwrap();
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}
