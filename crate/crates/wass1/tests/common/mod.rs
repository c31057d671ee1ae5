//! Shared helpers for integration tests.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use wass1::BalancedPair;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random pair with masses in `[0, max_mass]` and equal totals, equalized
/// by draining random bins of the heavier side.
pub fn random_balanced_pair(side: u32, max_mass: i64, rng: &mut ChaCha8Rng) -> BalancedPair {
    let n = (side * side) as usize;
    let mut mu: Vec<i64> = (0..n).map(|_| rng.random_range(0..=max_mass)).collect();
    let mut nu: Vec<i64> = (0..n).map(|_| rng.random_range(0..=max_mass)).collect();
    if mu.iter().sum::<i64>() == 0 {
        mu[0] = 1;
    }
    if nu.iter().sum::<i64>() == 0 {
        nu[0] = 1;
    }
    loop {
        let tm: i64 = mu.iter().sum();
        let tn: i64 = nu.iter().sum();
        let (vec, diff) = match tm.cmp(&tn) {
            std::cmp::Ordering::Equal => break,
            std::cmp::Ordering::Greater => (&mut mu, tm - tn),
            std::cmp::Ordering::Less => (&mut nu, tn - tm),
        };
        let idx = rng.random_range(0..n);
        if vec[idx] > 0 {
            let d = vec[idx].min(diff);
            vec[idx] -= d;
        }
    }
    BalancedPair::new(side, mu, nu).expect("equal totals by construction")
}
