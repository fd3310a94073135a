//! Seeded random inputs for the verification suites.
//!
//! All randomness goes through [`rng_from_seed`], a `ChaCha8Rng` seeded with
//! `seed_from_u64`, so reports are reproducible from `(seed, config)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::flags::Flag;
use crate::hyperbolic::ProjPoint;
use crate::multilinear::Field;

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `a/b` with `|a| <= max_num`, `1 <= b <= max_den`.
pub fn random_rational(rng: &mut SampleRng, max_num: i64, max_den: i64) -> BigRational {
    let a = rng.gen_range(-max_num..=max_num);
    let b = rng.gen_range(1..=max_den);
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// A random boundary point; roughly one in ten is `∞`.
pub fn random_point(rng: &mut SampleRng) -> ProjPoint<BigRational> {
    if rng.gen_ratio(1, 10) {
        ProjPoint::infinity()
    } else {
        ProjPoint::finite(random_rational(rng, 40, 12))
    }
}

/// `k` pairwise distinct random boundary points.
pub fn distinct_points(rng: &mut SampleRng, k: usize) -> Vec<ProjPoint<BigRational>> {
    let mut out: Vec<ProjPoint<BigRational>> = Vec::with_capacity(k);
    while out.len() < k {
        let p = random_point(rng);
        if out.iter().all(|q| !q.proj_eq(&p)) {
            out.push(p);
        }
    }
    out
}

/// Three distinct points, reordered to be clockwise on `RP^1`.
pub fn clockwise_triple(rng: &mut SampleRng) -> [ProjPoint<BigRational>; 3] {
    order_clockwise(distinct_points(rng, 3))
}

/// Four distinct points in counterclockwise cyclic order.
pub fn counterclockwise_quadruple(rng: &mut SampleRng) -> [ProjPoint<BigRational>; 4] {
    order_counterclockwise(distinct_points(rng, 4))
}

fn order_clockwise(pts: Vec<ProjPoint<BigRational>>) -> [ProjPoint<BigRational>; 3] {
    let [a, b, c]: [ProjPoint<BigRational>; 3] = pts.try_into().expect("three points");
    if ProjPoint::is_clockwise(&a, &b, &c) {
        [a, b, c]
    } else {
        [a, c, b]
    }
}

fn order_counterclockwise(mut pts: Vec<ProjPoint<BigRational>>) -> [ProjPoint<BigRational>; 4] {
    // Sort by position on the circle starting just after ∞.
    pts.sort_by(|p, q| p.circle_key().partial_cmp(&q.circle_key()).expect("finite keys"));
    pts.try_into().expect("four points")
}

/// Smallest difference between the directions of `[a:b]` as angles mod π.
pub fn min_angular_gap(pts: &[ProjPoint<BigRational>]) -> f64 {
    let pi = std::f64::consts::PI;
    let mut a: Vec<f64> = pts
        .iter()
        .map(|p| {
            let (x, y) = p.normalize_float();
            y.atan2(x).rem_euclid(pi)
        })
        .collect();
    a.sort_by(f64::total_cmp);
    let wrap = a.first().zip(a.last()).map_or(pi, |(f, l)| f + pi - l);
    a.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::min)
}

/// `k` random points whose directions are pairwise at least `gap` apart.
/// Clustered points make Veronese wedge factors tiny, and double precision
/// cannot resolve them, so float-mode checks sample from here.
pub fn separated_points(rng: &mut SampleRng, k: usize, gap: f64) -> Vec<ProjPoint<BigRational>> {
    loop {
        let pts = distinct_points(rng, k);
        if min_angular_gap(&pts) >= gap {
            return pts;
        }
    }
}

pub fn separated_clockwise_triple(rng: &mut SampleRng, gap: f64) -> [ProjPoint<BigRational>; 3] {
    order_clockwise(separated_points(rng, 3, gap))
}

pub fn separated_counterclockwise_quadruple(
    rng: &mut SampleRng,
    gap: f64,
) -> [ProjPoint<BigRational>; 4] {
    order_counterclockwise(separated_points(rng, 4, gap))
}

/// A flag with a random small-integer basis; resampled until independent.
pub fn random_flag(rng: &mut SampleRng, n: usize) -> Flag<BigRational> {
    loop {
        let basis: Vec<Vec<BigRational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| BigRational::from_i64(rng.gen_range(-9..=9)))
                    .collect()
            })
            .collect();
        if let Ok(f) = Flag::new(basis) {
            return f;
        }
    }
}

/// A random integer matrix of determinant 1, built from elementary row
/// additions.
pub fn random_unimodular(rng: &mut SampleRng, n: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-3..=3);
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    m.into_iter()
        .map(|r| r.into_iter().map(BigRational::from_i64).collect())
        .collect()
}
