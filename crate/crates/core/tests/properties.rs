mod common;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use sdframe_core::generators::{periodized_support, Domain};
use sdframe_core::*;

fn on_grid_midpoints(den: i64, lim: i64) -> impl Iterator<Item = Rational> {
    (-lim * den..lim * den).map(move |i| q(2 * i + 1, 2 * den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_canonical(e in arb_band_1d(5, 4, 3), cut in -12i64..12) {
        // re-split every box at an arbitrary point and shuffle: same set, same form
        let c = q(cut, 4);
        let mut raw = Vec::new();
        for b in e.boxes().iter().rev() {
            let (lo, hi) = (b.lo()[0].clone(), b.hi()[0].clone());
            if lo < c && c < hi {
                raw.push(RationalBox::interval(c.clone(), hi).unwrap());
                raw.push(RationalBox::interval(lo, c.clone()).unwrap());
            } else {
                raw.push(b.clone());
            }
        }
        let again = BandSet::normalize(raw, 1).unwrap();
        prop_assert_eq!(&again, &e);
        prop_assert_eq!(BandSet::normalize(e.boxes().to_vec(), 1).unwrap(), e);
    }

    #[test]
    fn normal_form_canonical_2d(e in arb_band_2d(4, 2, 2), f in arb_band_2d(4, 2, 2)) {
        // equal indicators give equal forms: (e u f) built two ways
        let u1 = e.union(&f).unwrap();
        let mut raw = f.boxes().to_vec();
        raw.extend(e.boxes().iter().cloned());
        let u2 = BandSet::normalize(raw, 2).unwrap();
        prop_assert_eq!(&u1, &u2);
        for x in on_grid_midpoints(2, 3) {
            for y in on_grid_midpoints(2, 3) {
                let p = [x.clone(), y.clone()];
                prop_assert_eq!(u1.contains(&p), e.contains(&p) || f.contains(&p));
            }
        }
    }

    #[test]
    fn inclusion_exclusion(a in arb_band_1d(4, 6, 2), b in arb_band_1d(4, 6, 2)) {
        let lhs = a.union(&b).unwrap().measure() + a.intersect(&b).unwrap().measure();
        prop_assert_eq!(lhs, a.measure() + b.measure());
    }

    #[test]
    fn boolean_ops_pointwise(a in arb_band_1d(4, 3, 2), b in arb_band_1d(4, 3, 2)) {
        let (u, i, d, s) = (a.union(&b).unwrap(), a.intersect(&b).unwrap(), a.difference(&b).unwrap(), a.symdiff(&b).unwrap());
        for x in on_grid_midpoints(6, 3) {
            let p = [x];
            let (ia, ib) = (a.contains(&p), b.contains(&p));
            prop_assert_eq!(u.contains(&p), ia || ib);
            prop_assert_eq!(i.contains(&p), ia && ib);
            prop_assert_eq!(d.contains(&p), ia && !ib);
            prop_assert_eq!(s.contains(&p), ia != ib);
        }
    }

    #[test]
    fn affine_map_scales_measure(e in arb_band_2d(3, 3, 2), s0 in arb_step(), s1 in arb_step(), t in -5i64..5) {
        let img = e.affine_map(&[s0.clone(), s1.clone()], &[q(t, 3), q(-t, 2)]).unwrap();
        prop_assert_eq!(img.measure(), e.measure() * (s0 * s1).abs());
    }

    #[test]
    fn integral_identity(e in arb_band_1d(4, 5, 3), a in arb_step()) {
        let l = Lattice::scalar(a.clone()).unwrap();
        let m = multiplicity(&e, &l).unwrap();
        prop_assert_eq!(m.integral(), a.abs() * e.measure());
    }

    #[test]
    fn integral_identity_2d(e in arb_band_2d(3, 2, 2), a in arb_step(), b in arb_step()) {
        let l = Lattice::diagonal(vec![a.clone(), b.clone()]).unwrap();
        let m = multiplicity(&e, &l).unwrap();
        prop_assert_eq!(m.integral(), (a * b).abs() * e.measure());
    }

    #[test]
    fn multiplicity_matches_enumeration(e in arb_band_1d(3, 4, 2), a in arb_step()) {
        let m = multiplicity(&e, &Lattice::scalar(a.clone()).unwrap()).unwrap();
        for i in 0..97 {
            let xi = q(2 * i + 1, 194);
            if m.breakpoints(0).contains(&xi) {
                continue;
            }
            let expect = brute_multiplicity(&e, std::slice::from_ref(&a), std::slice::from_ref(&xi));
            prop_assert_eq!(m.eval(std::slice::from_ref(&xi)), Rational::from_integer(expect.into()));
        }
    }

    #[test]
    fn shift_invariance(e in arb_band_1d(3, 4, 2), a in arb_step(), s in -7i64..7) {
        let plain = Lattice::scalar(a.clone()).unwrap();
        let shifted = plain.clone().with_shift(vec![q(s, 5)]).unwrap();
        prop_assert_eq!(multiplicity(&e, &plain).unwrap(), multiplicity(&e, &shifted).unwrap());
        let other = shannon();
        let one = lat(1, 3);
        prop_assert_eq!(
            classify_bessel(&e, &plain, &other, &one).unwrap(),
            classify_bessel(&e, &shifted, &other, &one).unwrap()
        );
    }

    #[test]
    fn support_is_image_mod_one(e in arb_band_1d(3, 4, 2), a in arb_step()) {
        // image of E under xi -> a xi, folded into [0,1) box by box
        let l = Lattice::scalar(a.clone()).unwrap();
        let img = e.affine_map(std::slice::from_ref(&a), &[Rational::zero()]).unwrap();
        let mut folded = BandSet::empty(1);
        for b in img.boxes() {
            let lo = b.lo()[0].floor().to_integer();
            let hi = b.hi()[0].ceil().to_integer();
            let mut k = lo;
            while k < hi {
                let shift = Rational::from_integer(k.clone());
                let piece = BandSet::from_box(b.clone()).affine_map(&[q(1, 1)], &[-shift]).unwrap();
                folded = folded.union(&piece.intersect(&BandSet::unit_cube(1)).unwrap()).unwrap();
                k += 1;
            }
        }
        prop_assert_eq!(multiplicity(&e, &l).unwrap().support(), folded);
    }

    #[test]
    fn sampling_implies_tight(e in arb_band_1d(3, 4, 2), a in arb_step()) {
        let l = Lattice::scalar(a.clone()).unwrap();
        if is_sampling_matrix(&e, &l).unwrap().is_sampling {
            let fb = frame_bounds_exact(&e, &l).unwrap();
            let expect = a.abs().recip();
            prop_assert_eq!(fb.lower, expect.clone());
            prop_assert_eq!(fb.upper, expect);
        }
    }

    #[test]
    fn numeric_multiplicity_agrees(e in arb_band_1d(3, 4, 2), a in arb_step()) {
        let l = Lattice::scalar(a.clone()).unwrap();
        let exact = multiplicity(&e, &l).unwrap();
        let grid = numeric_multiplicity(&e, &l.to_matrix(), 97).unwrap();
        for (i, &v) in grid.values.iter().enumerate() {
            let pt = grid.midpoint(i);
            if exact.breakpoints(0).contains(&pt[0]) {
                continue;
            }
            prop_assert_eq!(exact.eval(&pt), Rational::from_integer(v.into()));
        }
    }

    #[test]
    fn classify_symmetry(e in arb_band_1d(2, 4, 1), f in arb_band_1d(2, 4, 1)) {
        // bands lie inside [-1,3), so a = 1/4 folds them without overlap
        let l = lat(1, 4);
        let ab = classify_single(&e, &l, &f, &l).unwrap();
        let ba = classify_single(&f, &l, &e, &l).unwrap();
        prop_assert_eq!(ab.kind.mirrored(), ba.kind);
        prop_assert_eq!(ab.kind == RangeKind::NontrivialOverlap || ab.kind == RangeKind::FirstInsideSecond
            || ab.kind == RangeKind::SecondInsideFirst || ab.kind == RangeKind::Equal,
            ab.overlap_measure() > Rational::zero());
    }

    #[test]
    fn periodization_support_equivalence(e in arb_band_1d(3, 4, 2), a in arb_step()) {
        let l = Lattice::scalar(a).unwrap();
        let p = SpectralProfile::characteristic(Domain::Frequency, e.clone()).unwrap();
        prop_assert_eq!(periodization_sq(&p, &l).unwrap().support, multiplicity(&e, &l).unwrap().support());
    }

    #[test]
    fn dilate_composes(a in arb_step(), b in arb_step(), x in -3.0f64..3.0) {
        for p in [SpectralProfile::meyer(), SpectralProfile::frazier_jawerth()] {
            let two = dilate_profile(&dilate_profile(&p, &a).unwrap(), &b).unwrap();
            let one = dilate_profile(&p, &(a.clone() * b.clone())).unwrap();
            prop_assert_eq!(two.support(), one.support());
            prop_assert!((eval_profile(&two, x) - eval_profile(&one, x)).norm() <= 1e-12);
        }
    }

    #[test]
    fn verdict_monotonicity(e in arb_band_1d(3, 4, 1), f in arb_band_1d(3, 4, 1), cut in -8i64..8, a in arb_step()) {
        let l = Lattice::scalar(a).unwrap();
        let pe = SpectralProfile::characteristic(Domain::Frequency, e.clone()).unwrap();
        let pf = SpectralProfile::characteristic(Domain::Frequency, f).unwrap();
        let before = affine_verdict(&[pe], &l, std::slice::from_ref(&pf), &l, DisjointClaim::Orthogonal).unwrap();
        let smaller = e.intersect(&band(&format!("[{},4)", q(cut, 4)))).unwrap();
        prop_assume!(!smaller.is_empty());
        let ps = SpectralProfile::characteristic(Domain::Frequency, smaller).unwrap();
        let after = affine_verdict(&[ps], &l, std::slice::from_ref(&pf), &l, DisjointClaim::Orthogonal).unwrap();
        if before.status == VerdictStatus::CertifiedSufficient {
            prop_assert_eq!(after.status, VerdictStatus::CertifiedSufficient);
        }
    }
}

#[test]
fn partition_identities_at_random_points() {
    use rand::Rng;
    let mut r = rng(7);
    let meyer = SpectralProfile::meyer();
    let fj = SpectralProfile::frazier_jawerth();
    for _ in 0..1000 {
        let mag: f64 = r.random_range(-8.0..8.0);
        let xi = mag.exp2() * if r.random_bool(0.5) { 1.0 } else { -1.0 };
        assert!(
            (sdframe_core::generators::partition_sum(&meyer, 2.0, xi) - 1.0).abs() < 1e-10,
            "meyer xi={xi}"
        );
        assert!(
            (sdframe_core::generators::partition_sum(&fj, 2.0, xi) - 1.0).abs() < 1e-10,
            "fj xi={xi}"
        );
        for qq in [-3i64, -1, 1, 3, 5] {
            assert!(sdframe_core::generators::dyadic_cross_sum(&fj, xi, qq).norm() < 1e-10);
        }
    }
}

#[test]
fn time_profiles_have_full_frequency_support() {
    let haar = SpectralProfile::characteristic(Domain::Time, band("[0,1)")).unwrap();
    let s = periodized_support(&haar, &lat(1, 5), Domain::Frequency).unwrap();
    assert_eq!(s, BandSet::unit_cube(1));
}
