//! Seeded random formal baskets for property checks and scans.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basket::{int, BasketPoint, FormalBasket};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    /// Largest local index `r`.
    pub max_index: u32,
    pub max_points: usize,
    pub max_p1: u32,
    /// Only keep points while `sum (r - 1/r) < 24`.
    pub bounded: bool,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            max_index: 15,
            max_points: 10,
            max_p1: 12,
            bounded: false,
        }
    }
}

impl SampleSpec {
    pub fn bounded(self) -> Self {
        SampleSpec {
            bounded: true,
            ..self
        }
    }
}

/// A terminal point with `2 <= r <= max_index` and `b` coprime to `r`.
pub fn random_point<R: Rng>(rng: &mut R, max_index: u32) -> BasketPoint {
    let r = rng.gen_range(2..=max_index.max(2));
    loop {
        let b = rng.gen_range(1..r);
        if let Ok(q) = BasketPoint::new(i64::from(b), i64::from(r)) {
            return q;
        }
    }
}

pub fn random_basket<R: Rng>(rng: &mut R, spec: &SampleSpec) -> FormalBasket {
    let n = rng.gen_range(0..=spec.max_points);
    let mut points = Vec::with_capacity(n);
    let mut sum = int(0);
    for _ in 0..n {
        let q = random_point(rng, spec.max_index);
        if spec.bounded {
            let next = &sum + q.index_weight();
            if next >= int(24) {
                continue;
            }
            sum = next;
        }
        points.push(q);
    }
    FormalBasket::new(points, rng.gen_range(0..=spec.max_p1))
}

/// `count` baskets from a fixed seed; the same seed always gives the same list.
pub fn sample_baskets(seed: u64, count: usize, spec: &SampleSpec) -> Vec<FormalBasket> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_basket(&mut rng, spec)).collect()
}
