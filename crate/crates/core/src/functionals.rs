//! Rado- and Popoviciu-type increments of mixed means.
//!
//! For a level `k` the Rado value is
//! `W_k * (M_{k,s}(A_1..A_k) - M_{k,1}(M_{1,s}..M_{k,s}))`, where `A_i` are the
//! running arithmetic means. The mixed-mean inequalities say this value is
//! nondecreasing in `k` (for `s < 1`) under suitable weight conditions; the
//! increments below are the quantities whose sign carries that claim.

use crate::error::{Error, Result};
use crate::means::{running_means, Exponent, SampleVector, WeightSequence};

/// Rado values for every level `k = 1..n` in one pass.
///
/// The outer means at level `k` only see the first `k` running means, so both
/// mixed means are themselves running means of a running-mean sequence.
pub fn rado_profile(w: &WeightSequence, x: &SampleVector, s: Exponent) -> Result<Vec<f64>> {
    x.check_matches(w)?;
    let s = s.value();
    if s == 1.0 {
        return Ok(vec![0.0; w.len()]);
    }
    let arith = running_means(w, x.values(), 1.0);
    let s_means = running_means(w, x.values(), s);
    let outer_s = running_means(w, &arith, s);
    let outer_a = running_means(w, &s_means, 1.0);
    Ok((1..=w.len())
        .map(|k| {
            if k == 1 {
                0.0
            } else {
                w.cum(k) * (outer_s[k - 1] - outer_a[k - 1])
            }
        })
        .collect())
}

fn check_level(k: usize, lo: usize, n: usize) -> Result<()> {
    if k < lo || k > n {
        Err(Error::IndexOutOfRange { k, lo, hi: n })
    } else {
        Ok(())
    }
}

/// `W_k (M_{k,s}(A) - M_{k,1}(M_s))` using the first `k` entries.
pub fn rado_value(w: &WeightSequence, x: &SampleVector, s: Exponent, k: usize) -> Result<f64> {
    x.check_matches(w)?;
    check_level(k, 1, w.len())?;
    Ok(rado_profile(w, x, s)?[k - 1])
}

/// `rado_value(k) - rado_value(k - 1)`, for `2 <= k <= n`.
///
/// Nonnegative means the level-`k` mixed-mean inequality holds for this data
/// (for `s < 1`; the direction flips for `s > 1`).
pub fn rado_increment(w: &WeightSequence, x: &SampleVector, s: Exponent, k: usize) -> Result<f64> {
    x.check_matches(w)?;
    check_level(k, 2, w.len())?;
    let profile = rado_profile(w, x, s)?;
    Ok(profile[k - 1] - profile[k - 2])
}

/// Log-domain analogue: `W_k (ln G_k(A) - ln A_k(G))` for every `k`.
pub fn popoviciu_profile(w: &WeightSequence, x: &SampleVector) -> Result<Vec<f64>> {
    x.check_matches(w)?;
    let arith = running_means(w, x.values(), 1.0);
    let geo = running_means(w, x.values(), 0.0);
    let g_of_a = running_means(w, &arith, 0.0);
    let a_of_g = running_means(w, &geo, 1.0);
    Ok((1..=w.len())
        .map(|k| {
            if k == 1 {
                0.0
            } else {
                w.cum(k) * (g_of_a[k - 1].ln() - a_of_g[k - 1].ln())
            }
        })
        .collect())
}

pub fn popoviciu_increment(w: &WeightSequence, x: &SampleVector, k: usize) -> Result<f64> {
    x.check_matches(w)?;
    check_level(k, 2, w.len())?;
    let profile = popoviciu_profile(w, x)?;
    Ok(profile[k - 1] - profile[k - 2])
}

/// Left side of the ratio form of the level-`n` inequality (`s = 0`):
///
/// `(W_{n-1}/W_n) prod_{i<n} (A_i/A_{i+1})^(W_i w_n/(W_{n-1} W_n))
///  + (w_n/W_n) prod_{i<=n} (x_i/A_i)^(w_i/W_n)`.
///
/// A value at most 1 is equivalent to `rado_increment(w, x, 0, n) >= 0`.
pub fn ratio_form_lhs(w: &WeightSequence, x: &SampleVector) -> Result<f64> {
    let n = w.require_len("ratio_form_lhs", 2)?;
    x.check_matches(w)?;
    let arith = running_means(w, x.values(), 1.0);
    let (big_prev, big_n, w_n) = (w.cum(n - 1), w.total(), w.w(n));

    let ln_first: f64 = (1..n)
        .map(|i| (w.cum(i) * w_n / (big_prev * big_n)) * (arith[i - 1].ln() - arith[i].ln()))
        .sum();
    let ln_second: f64 = (1..=n)
        .map(|i| (w.w(i) / big_n) * (x.values()[i - 1].ln() - arith[i - 1].ln()))
        .sum();
    Ok((big_prev * ln_first.exp() + w_n * ln_second.exp()) / big_n)
}
