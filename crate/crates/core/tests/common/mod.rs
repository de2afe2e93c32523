#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdframe_core::{multiplicity, BandSet, Lattice, Rational, RationalBox, TorusStep};

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

pub fn band(s: &str) -> BandSet {
    s.parse().unwrap()
}

pub fn lat(p: i64, d: i64) -> Lattice {
    Lattice::scalar(q(p, d)).unwrap()
}

pub fn shannon() -> BandSet {
    band("[-1,-1/2) u [1/2,1)")
}

fn f64_of(r: &Rational) -> f64 {
    r.to_f64().unwrap()
}

/// `#{k in Z^d : (xi + k) / a in E}` by direct enumeration, using only
/// set membership.
pub fn brute_multiplicity(e: &BandSet, a: &[Rational], xi: &[Rational]) -> i64 {
    let bb = match e.bounding_box() {
        Some(b) => b,
        None => return 0,
    };
    let ranges: Vec<(i64, i64)> = (0..a.len())
        .map(|i| {
            let s = f64_of(&a[i]);
            let x = f64_of(&xi[i]);
            let (u, v) = (s * f64_of(&bb.lo()[i]) - x, s * f64_of(&bb.hi()[i]) - x);
            (u.min(v).floor() as i64 - 2, u.max(v).ceil() as i64 + 2)
        })
        .collect();
    let mut count = 0;
    let mut k: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let y: Vec<Rational> = (0..a.len())
            .map(|i| (&xi[i] + Rational::from_integer(k[i].into())) / &a[i])
            .collect();
        if e.contains(&y) {
            count += 1;
        }
        let mut axis = 0;
        loop {
            if axis == k.len() {
                return count;
            }
            k[axis] += 1;
            if k[axis] <= ranges[axis].1 {
                break;
            }
            k[axis] = ranges[axis].0;
            axis += 1;
        }
    }
}

/// Random 1-D band: up to `n` intervals with endpoints in `[-lim, lim]` on
/// the grid `1/den`.
pub fn arb_band_1d(n: usize, den: i64, lim: i64) -> impl Strategy<Value = BandSet> {
    prop::collection::vec((-lim * den..lim * den, 1..den * 2), 1..=n).prop_map(move |v| {
        let raw = v
            .into_iter()
            .map(|(lo, len)| RationalBox::interval(q(lo, den), q(lo + len, den)).unwrap())
            .collect();
        BandSet::normalize(raw, 1).unwrap()
    })
}

pub fn arb_band_2d(n: usize, den: i64, lim: i64) -> impl Strategy<Value = BandSet> {
    prop::collection::vec(
        (
            (-lim * den..lim * den, 1..den * 2),
            (-lim * den..lim * den, 1..den * 2),
        ),
        1..=n,
    )
    .prop_map(move |v| {
        let raw = v
            .into_iter()
            .map(|((x, w), (y, h))| {
                RationalBox::new(
                    vec![q(x, den), q(y, den)],
                    vec![q(x + w, den), q(y + h, den)],
                )
                .unwrap()
            })
            .collect();
        BandSet::normalize(raw, 2).unwrap()
    })
}

/// Nonzero rational with bounded numerator and denominator.
pub fn arb_step() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=6, any::<bool>()).prop_map(|(p, d, neg)| if neg { q(-p, d) } else { q(p, d) })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// A random commensurable scenario: two bands with quarter-integer
/// endpoints and steps `p/d`, plus a period fine enough that the model grid
/// hits every piece of both multiplicity functions.
pub struct Scenario {
    pub e1: BandSet,
    pub a1: Rational,
    pub e2: BandSet,
    pub a2: Rational,
    pub period: Rational,
}

fn random_band(r: &mut impl Rng) -> BandSet {
    let n = r.random_range(1..=3);
    let raw = (0..n)
        .map(|_| {
            let lo = r.random_range(-6..6);
            let len = r.random_range(1..4);
            RationalBox::interval(q(lo, 4), q(lo + len, 4)).unwrap()
        })
        .collect();
    BandSet::normalize(raw, 1).unwrap()
}

fn denominators(step: &TorusStep) -> Vec<i64> {
    step.breakpoints(0)
        .iter()
        .map(|b| b.denom().to_i64().unwrap())
        .collect()
}

fn lcm(a: i64, b: i64) -> i64 {
    num_integer::lcm(a, b)
}

/// Smallest `P` with `P / a_i` integral and divisible by every breakpoint
/// denominator, or `None` if the models would exceed `max_m` samples.
fn fine_period(
    a1: &Rational,
    m1: &TorusStep,
    a2: &Rational,
    m2: &TorusStep,
    max_m: i64,
) -> Option<Rational> {
    let d = denominators(m1)
        .into_iter()
        .chain(denominators(m2))
        .fold(1, lcm);
    for t in 1..=max_m {
        let p = q(t, 12);
        let ok = [a1, a2].iter().all(|a| {
            let m = &p / *a;
            m.is_integer()
                && m.to_integer()
                    .to_i64()
                    .is_some_and(|m| m % d == 0 && m > 0 && m <= max_m)
        });
        if ok {
            return Some(p);
        }
    }
    None
}

pub fn scenarios(count: usize, seed: u64) -> Vec<Scenario> {
    let steps = [
        q(1, 4),
        q(1, 3),
        q(1, 2),
        q(2, 3),
        q(3, 4),
        q(1, 1),
        q(3, 2),
    ];
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let e1 = random_band(&mut r);
        let e2 = random_band(&mut r);
        let a1 = steps[r.random_range(0..steps.len())].clone();
        let a2 = steps[r.random_range(0..steps.len())].clone();
        let m1 = multiplicity(&e1, &Lattice::scalar(a1.clone()).unwrap()).unwrap();
        let m2 = multiplicity(&e2, &Lattice::scalar(a2.clone()).unwrap()).unwrap();
        if let Some(period) = fine_period(&a1, &m1, &a2, &m2, 240) {
            out.push(Scenario {
                e1,
                a1,
                e2,
                a2,
                period,
            });
        }
    }
    out
}
