//! Certified orthogonality verdicts checked against the numeric
//! cross-correlation of analysis coefficients on random band-limited vectors.

mod common;

use common::*;
use sdframe_core::generators::Domain;
use sdframe_core::*;

/// Circle length of the periodic model.
const T: u64 = 64;

/// Random samples `h(k/t)` for `|k / t| <= reach`.
fn test_vector_on(t: u64, seed: u64, reach: i64) -> TestVector {
    let mut r = rng(seed);
    let first = -reach * t as i64;
    let len = (2 * reach * t as i64 + 1) as usize;
    TestVector::new(t, first, random_complex(&mut r, len)).unwrap()
}

fn test_vector(seed: u64, reach: i64) -> TestVector {
    test_vector_on(T, seed, reach)
}

fn worst_correlation(
    psis: &[SpectralProfile],
    x: &Lattice,
    phis: &[SpectralProfile],
    y: &Lattice,
    reach: i64,
) -> f64 {
    worst_correlation_on(T, psis, x, phis, y, reach)
}

fn worst_correlation_on(
    t: u64,
    psis: &[SpectralProfile],
    x: &Lattice,
    phis: &[SpectralProfile],
    y: &Lattice,
    reach: i64,
) -> f64 {
    (0..4)
        .map(|s| {
            let (h1, h2) = (
                test_vector_on(t, 2 * s, reach),
                test_vector_on(t, 2 * s + 1, reach),
            );
            let c = cross_correlation(psis, x, phis, y, &h1, &h2).unwrap();
            assert!(c.first_energy > 1e-6 && c.second_energy > 1e-6, "{c:?}");
            c.normalized
        })
        .fold(0.0, f64::max)
}

#[test]
fn meyer_oversampling_pair() {
    let m = SpectralProfile::meyer();
    let (x, y) = (lat(1, 3), lat(1, 13));
    let v = affine_verdict(
        std::slice::from_ref(&m),
        &x,
        std::slice::from_ref(&m),
        &y,
        DisjointClaim::Orthogonal,
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::CertifiedSufficient);
    assert!(
        worst_correlation(
            std::slice::from_ref(&m),
            &x,
            std::slice::from_ref(&m),
            &y,
            2
        ) <= 1e-6
    );
    // same rate: ranges coincide, correlation of a vector with itself is 1
    let h = test_vector(3, 2);
    let c = cross_correlation(
        std::slice::from_ref(&m),
        &x,
        std::slice::from_ref(&m),
        &x,
        &h,
        &h,
    )
    .unwrap();
    assert!((c.normalized - 1.0).abs() < 1e-9);
}

#[test]
fn fj_family_pairs() {
    let fam = fj_family(4);
    let one = lat(1, 1);
    for i in 0..4 {
        for j in i + 1..4 {
            let v = affine_verdict(
                &fam[i..=i],
                &one,
                &fam[j..=j],
                &one,
                DisjointClaim::Orthogonal,
            )
            .unwrap();
            assert_eq!(v.status, VerdictStatus::CertifiedSufficient);
            // psi_3 lives on [1/512, 1/128): the circle must resolve it
            assert!(worst_correlation_on(16 * T, &fam[i..=i], &one, &fam[j..=j], &one, 1) <= 1e-6);
        }
    }
}

#[test]
fn wh_item_three_frequency_pair() {
    let one = lat(1, 1);
    let f = SpectralProfile::characteristic(Domain::Frequency, band("[0,1/4)")).unwrap();
    let g = SpectralProfile::characteristic(Domain::Frequency, band("[1/2,3/4)")).unwrap();
    let v = wh_verdict(
        std::slice::from_ref(&f),
        &one,
        &one,
        std::slice::from_ref(&g),
        &one,
        &one,
        DisjointClaim::Orthogonal,
        WhRoute::Auto,
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::CertifiedSufficient);
    assert!(
        worst_correlation(
            std::slice::from_ref(&f),
            &one,
            std::slice::from_ref(&g),
            &one,
            1
        ) <= 1e-6
    );
}

#[test]
fn wh_item_four_time_pair() {
    let one = lat(1, 1);
    let f = SpectralProfile::characteristic(Domain::Time, band("[0,1/3)")).unwrap();
    let g = SpectralProfile::characteristic(Domain::Time, band("[1/3,2/3)")).unwrap();
    let v = wh_verdict(
        std::slice::from_ref(&f),
        &one,
        &one,
        std::slice::from_ref(&g),
        &one,
        &one,
        DisjointClaim::Orthogonal,
        WhRoute::Auto,
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::CertifiedSufficient);
    assert_eq!(v.certified_by, Some(WhRoute::TimeOnly));
    // modulation sequences {E_l f}: same computation with time samples
    assert!(
        worst_correlation(
            std::slice::from_ref(&f),
            &one,
            std::slice::from_ref(&g),
            &one,
            1
        ) <= 1e-6
    );
}

#[test]
fn quasi_affine_corollary_scales() {
    // D~_{A^r} psi has transform psi-hat(A^{-r} xi): a dilation by 2^{-r}
    let psi = SpectralProfile::characteristic(Domain::Frequency, band("[1/4,1/2)")).unwrap();
    let phi = SpectralProfile::characteristic(Domain::Frequency, band("[1/2,1)")).unwrap();
    let one = lat(1, 1);
    let rep = quasi_affine_report(
        std::slice::from_ref(&psi),
        &q(2, 1),
        &one,
        std::slice::from_ref(&phi),
        &q(2, 1),
        &one,
        -4,
        DisjointClaim::Orthogonal,
    )
    .unwrap();
    assert_eq!(rep.status, VerdictStatus::CertifiedSufficient);
    for r in 0..=4i64 {
        let s = q(1 << r, 1);
        let a = dilate_profile(&psi, &s).unwrap();
        let b = dilate_profile(&phi, &s).unwrap();
        assert!(
            worst_correlation(&[a], &one, &[b], &one, 1) <= 1e-6,
            "r=-{r}"
        );
    }
}

#[test]
fn overlapping_pair_correlates() {
    // negative control: overlapping supports give a visible correlation
    let one = lat(1, 1);
    let f = SpectralProfile::characteristic(Domain::Frequency, band("[0,1/2)")).unwrap();
    let g = SpectralProfile::characteristic(Domain::Frequency, band("[1/4,3/4)")).unwrap();
    let v = affine_verdict(
        std::slice::from_ref(&f),
        &one,
        std::slice::from_ref(&g),
        &one,
        DisjointClaim::Orthogonal,
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::Violated);
    let h = test_vector(40, 1);
    let c = cross_correlation(
        std::slice::from_ref(&f),
        &one,
        std::slice::from_ref(&g),
        &one,
        &h,
        &h,
    )
    .unwrap();
    assert!(c.normalized > 0.1, "{c:?}");
}
