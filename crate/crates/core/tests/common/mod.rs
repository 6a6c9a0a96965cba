#![allow(dead_code)]

use mixmean::{holland_condition, SampleVector, WeightSequence};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> WeightSequence {
    let w = (0..n).map(|_| log_uniform(rng, 0.1, 10.0)).collect();
    WeightSequence::new(w).unwrap()
}

pub fn random_samples(rng: &mut ChaCha8Rng, n: usize) -> SampleVector {
    let x = (0..n).map(|_| log_uniform(rng, 1e-3, 1e3)).collect();
    SampleVector::new(x).unwrap()
}

/// Rejection-samples weights satisfying Holland's condition.
pub fn holland_weights(rng: &mut ChaCha8Rng, n: usize) -> WeightSequence {
    loop {
        let w = random_weights(rng, n);
        if holland_condition(&w).unwrap().holds {
            return w;
        }
    }
}

/// Builds weights satisfying Nanjundiah's condition: with `t` below every
/// `w_k/W_k` (2 <= k <= n-1), `w_n = t W_{n-1}/(1 - t)` makes `w_n/W_n = t`.
pub fn nanjundiah_weights(rng: &mut ChaCha8Rng, n: usize) -> WeightSequence {
    let head = random_weights(rng, n - 1);
    let bound = (2..n)
        .map(|k| head.w(k) / head.cum(k))
        .fold(0.999, f64::min);
    let t = bound * rng.random_range(0.05..0.95);
    let w_n = t * head.total() / (1.0 - t);
    head.with_last(w_n).unwrap()
}

/// `W_n * max x`, the natural size of a Rado value.
pub fn rado_scale(w: &WeightSequence, x: &SampleVector) -> f64 {
    w.total() * x.max()
}

/// Maximum of `f` on `[lo, hi]`: dense scan, then golden-section refinement
/// of the best cell.
pub fn maximize_1d(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let f = |t: f64| f(t.clamp(lo, hi));
    let m = 20_000;
    let step = (hi - lo) / m as f64;
    let (mut best_j, mut best) = (0, f(lo));
    for j in 1..=m {
        let v = f(lo + step * j as f64);
        if v > best {
            best = v;
            best_j = j;
        }
    }
    let mut a = (lo + step * (best_j as f64 - 1.0)).max(lo);
    let mut b = (lo + step * (best_j as f64 + 1.0)).min(hi);
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if f(c) >= f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    best.max(f(0.5 * (a + b)))
}
