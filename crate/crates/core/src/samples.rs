//! Deterministic sample sets shared by the verification and stability code.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_PAIR_COUNT: usize = 40;

/// Half-width of the square box `[-r, r] × [-r, r]` that random points are drawn from.
pub const POINT_RADIUS: f64 = 2.0;
/// Half-width of the box for `(x, y)` pairs.
pub const PAIR_RADIUS: f64 = 1.5;

/// Real arguments on the positive ray used to witness growth.
pub const GROWTH_RAY: [f64; 4] = [5.0, 10.0, 15.0, 20.0];

pub type Pair = (Complex64, Complex64);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius))
}

/// Twenty nonzero points: a 5×2 grid in `[-2, 2]²` (containing `x = 1`) and
/// ten pseudorandom points from `seed`.
pub fn standard_points(seed: u64) -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(20);
    for im in [0.0, 1.5] {
        for re in [-2.0, -1.0, 0.5, 1.0, 2.0] {
            pts.push(Complex64::new(re, im));
        }
    }
    let mut rng = rng(seed);
    while pts.len() < 20 {
        let z = draw(&mut rng, POINT_RADIUS);
        if z.norm() > 1e-3 {
            pts.push(z);
        }
    }
    pts
}

/// `count` pseudorandom `(x, y)` pairs in `[-1.5, 1.5]²`.
pub fn standard_pairs(seed: u64, count: usize) -> Vec<Pair> {
    // Independent stream from the point set.
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..count).map(|_| (draw(&mut rng, PAIR_RADIUS), draw(&mut rng, PAIR_RADIUS))).collect()
}

pub fn growth_points() -> Vec<Complex64> {
    GROWTH_RAY.iter().map(|&t| Complex64::new(t, 0.0)).collect()
}

/// Pseudorandom points in `[-radius, radius]²`.
pub fn random_points(seed: u64, count: usize, radius: f64) -> Vec<Complex64> {
    let mut rng = rng(seed);
    (0..count).map(|_| draw(&mut rng, radius)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(standard_points(7), standard_points(7));
        assert_eq!(standard_pairs(7, 40), standard_pairs(7, 40));
        assert_ne!(standard_pairs(7, 40), standard_pairs(8, 40));
    }

    #[test]
    fn points_shape() {
        let pts = standard_points(DEFAULT_SEED);
        assert_eq!(pts.len(), 20);
        assert!(pts.iter().all(|z| z.norm() > 1e-3));
        assert!(pts.iter().all(|z| z.re.abs() <= 2.0 && z.im.abs() <= 2.0));
        assert!(pts.contains(&Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn pairs_in_box() {
        let pairs = standard_pairs(DEFAULT_SEED, DEFAULT_PAIR_COUNT);
        assert_eq!(pairs.len(), 40);
        for (x, y) in pairs {
            for z in [x, y] {
                assert!(z.re.abs() <= PAIR_RADIUS && z.im.abs() <= PAIR_RADIUS);
            }
        }
    }
}
