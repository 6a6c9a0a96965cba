//! Weighted power means and the running (partial) mean sequences built on them.
//!
//! Weights and samples are strictly positive. The zero-weight and zero-sample
//! limits are not handled here; callers that want them should perturb their
//! inputs and take the limit themselves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|sum(q) - 1|` accepted by [`power_mean`].
pub const NORMALIZATION_TOL: f64 = 1e-12;

fn check_positive(what: &'static str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Empty { what });
    }
    for (index, &value) in values.iter().enumerate() {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositive { what, index, value });
        }
    }
    Ok(())
}

/// A positive weight sequence `w_1..w_n` with cached prefix sums.
///
/// All accessors are 1-based to line up with the usual notation:
/// `w(i)` is `w_i`, `cum(i)` is `W_i = w_1 + ... + w_i` with `cum(0) = 0`,
/// and `cum2(k)` is `S_k = W_1 + ... + W_k` with `cum2(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightSequence {
    w: Vec<f64>,
    cum: Vec<f64>,
    cum2: Vec<f64>,
}

impl WeightSequence {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        check_positive("w", &w)?;
        let mut cum = Vec::with_capacity(w.len() + 1);
        let mut cum2 = Vec::with_capacity(w.len() + 1);
        cum.push(0.0);
        cum2.push(0.0);
        for (i, &wi) in w.iter().enumerate() {
            let total = cum[i] + wi;
            cum.push(total);
            cum2.push(cum2[i] + total);
        }
        Ok(Self { w, cum, cum2 })
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    /// `w_i`, 1-based.
    #[inline]
    pub fn w(&self, i: usize) -> f64 {
        self.w[i - 1]
    }

    /// `W_i`, with `W_0 = 0`.
    #[inline]
    pub fn cum(&self, i: usize) -> f64 {
        self.cum[i]
    }

    /// `S_k = W_1 + ... + W_k`, with `S_0 = 0`.
    #[inline]
    pub fn cum2(&self, k: usize) -> f64 {
        self.cum2[k]
    }

    /// `W_n`.
    pub fn total(&self) -> f64 {
        self.cum[self.len()]
    }

    /// Last weight `w_n`.
    pub fn last(&self) -> f64 {
        self.w[self.len() - 1]
    }

    /// The first `k` weights as a sequence of their own.
    pub fn prefix(&self, k: usize) -> Self {
        assert!(k >= 1 && k <= self.len(), "prefix length {k} out of range");
        Self {
            w: self.w[..k].to_vec(),
            cum: self.cum[..=k].to_vec(),
            cum2: self.cum2[..=k].to_vec(),
        }
    }

    /// Appends a new last weight.
    pub fn with_last(&self, w_last: f64) -> Result<Self> {
        let mut w = self.w.clone();
        w.push(w_last);
        Self::new(w)
    }

    pub(crate) fn require_len(&self, what: &'static str, min: usize) -> Result<usize> {
        let n = self.len();
        if n < min {
            Err(Error::TooShort { what, min, n })
        } else {
            Ok(n)
        }
    }
}

impl TryFrom<Vec<f64>> for WeightSequence {
    type Error = Error;

    fn try_from(w: Vec<f64>) -> Result<Self> {
        Self::new(w)
    }
}

impl From<WeightSequence> for Vec<f64> {
    fn from(w: WeightSequence) -> Self {
        w.w
    }
}

/// Positive data `x_1..x_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SampleVector {
    x: Vec<f64>,
}

impl SampleVector {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        check_positive("x", &x)?;
        Ok(Self { x })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub fn max(&self) -> f64 {
        self.x.iter().copied().fold(f64::MIN, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.x.iter().copied().fold(f64::MAX, f64::min)
    }

    /// Multiplies every entry by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.x.iter().map(|v| v * c).collect())
    }

    pub(crate) fn check_matches(&self, w: &WeightSequence) -> Result<()> {
        if self.len() != w.len() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for SampleVector {
    type Error = Error;

    fn try_from(x: Vec<f64>) -> Result<Self> {
        Self::new(x)
    }
}

impl From<SampleVector> for Vec<f64> {
    fn from(x: SampleVector) -> Self {
        x.x
    }
}

/// Power-mean exponent. `0` selects the geometric mean.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Exponent(f64);

impl Exponent {
    pub const GEOMETRIC: Exponent = Exponent(0.0);
    pub const ARITHMETIC: Exponent = Exponent(1.0);

    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() {
            Ok(Self(r))
        } else {
            Err(Error::NonFiniteExponent(r))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Exponent {
    type Error = Error;

    fn try_from(r: f64) -> Result<Self> {
        Self::new(r)
    }
}

impl From<Exponent> for f64 {
    fn from(r: Exponent) -> Self {
        r.0
    }
}

/// The running means `M_{1,r}, ..., M_{n,r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialMeanSequence {
    pub values: Vec<f64>,
    pub exponent: Exponent,
}

/// `ln` of a product of powers `prod base_i^exp_i`, for non-negative bases and
/// positive exponents. Any zero base makes the product zero, reported as
/// `-inf` without ever taking `ln 0`.
pub fn ln_power_product<I>(terms: I) -> f64
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut acc = 0.0;
    for (base, exp) in terms {
        if base == 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += exp * base.ln();
    }
    acc
}

/// Weighted power mean with weights `w / total`. No validation.
///
/// Sums run over `x / pivot` where the pivot is the extreme value that keeps
/// every term at most one, so large `|r|` cannot overflow.
pub(crate) fn weighted_power_mean(w: &[f64], total: f64, x: &[f64], r: f64) -> f64 {
    let (lo, hi) = x
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let mean = if r == 0.0 {
        let s: f64 = w.iter().zip(x).map(|(wi, xi)| wi * xi.ln()).sum();
        (s / total).exp()
    } else {
        let pivot = if r > 0.0 { hi } else { lo };
        let s: f64 = w
            .iter()
            .zip(x)
            .map(|(wi, xi)| wi * (xi / pivot).powf(r))
            .sum();
        pivot * (s / total).powf(r.recip())
    };
    mean.clamp(lo, hi)
}

/// Generalized weighted power mean `(sum q_i x_i^r)^(1/r)`, geometric at `r = 0`.
pub fn power_mean(q: &[f64], x: &[f64], r: Exponent) -> Result<f64> {
    if q.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: q.len(),
            right: x.len(),
        });
    }
    check_positive("q", q)?;
    check_positive("x", x)?;
    let sum: f64 = q.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { sum });
    }
    Ok(weighted_power_mean(q, 1.0, x, r.value()))
}

/// Running means of `x` in O(n). Input lengths must already match.
pub(crate) fn running_means(w: &WeightSequence, x: &[f64], r: f64) -> Vec<f64> {
    let n = x.len();
    let mut out = Vec::with_capacity(n);
    let (lo, hi) = x
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let pivot = if r > 0.0 { hi } else { lo };
    let mut acc = 0.0;
    let (mut run_lo, mut run_hi) = (f64::MAX, f64::MIN);
    for i in 1..=n {
        let xi = x[i - 1];
        run_lo = run_lo.min(xi);
        run_hi = run_hi.max(xi);
        let mean = if r == 0.0 {
            acc += w.w(i) * xi.ln();
            (acc / w.cum(i)).exp()
        } else {
            acc += w.w(i) * (xi / pivot).powf(r);
            pivot * (acc / w.cum(i)).powf(r.recip())
        };
        out.push(mean.clamp(run_lo, run_hi));
    }
    out
}

/// `M_{i,r}(w_1..w_i / W_i, x_1..x_i)` for `i = 1..n`.
pub fn partial_mean_sequence(
    w: &WeightSequence,
    x: &SampleVector,
    r: Exponent,
) -> Result<PartialMeanSequence> {
    x.check_matches(w)?;
    Ok(PartialMeanSequence {
        values: running_means(w, x.values(), r.value()),
        exponent: r,
    })
}

/// `M_{n,outer}` taken over the running `inner`-means.
pub fn mixed_mean(
    w: &WeightSequence,
    x: &SampleVector,
    outer: Exponent,
    inner: Exponent,
) -> Result<f64> {
    let inner_means = partial_mean_sequence(w, x, inner)?;
    Ok(weighted_power_mean(
        w.weights(),
        w.total(),
        &inner_means.values,
        outer.value(),
    ))
}

/// Relative residuals `|lhs/rhs - 1|` of the two product identities linking
/// `G_n(A_n)`, `G_{n-1}(A_{n-1})` and the ratios `A_i / A_{i+1}`:
///
/// 1. `G_n(A) = G_{n-1}(A)^(W_{n-1}/W_n) * A_n^(w_n/W_n)`
/// 2. `G_{n-1}(A) = A_n * prod_{i<n} (A_i/A_{i+1})^(W_i/W_{n-1})`
///
/// Both sides are formed independently in the log domain.
pub fn identity_residuals(w: &WeightSequence, x: &SampleVector) -> Result<(f64, f64)> {
    let n = w.require_len("identity_residuals", 2)?;
    x.check_matches(w)?;
    let ln_a: Vec<f64> = running_means(w, x.values(), 1.0)
        .into_iter()
        .map(f64::ln)
        .collect();

    let ln_g_of_a = |k: usize| -> f64 {
        let s: f64 = (1..=k).map(|i| w.w(i) * ln_a[i - 1]).sum();
        s / w.cum(k)
    };
    let ln_gn = ln_g_of_a(n);
    let ln_gn1 = ln_g_of_a(n - 1);

    let rhs1 = (w.cum(n - 1) / w.total()) * ln_gn1 + (w.w(n) / w.total()) * ln_a[n - 1];
    let telescoped: f64 = (1..n)
        .map(|i| (w.cum(i) / w.cum(n - 1)) * (ln_a[i - 1] - ln_a[i]))
        .sum();
    let rhs2 = ln_a[n - 1] + telescoped;

    Ok((
        (ln_gn - rhs1).exp_m1().abs(),
        (ln_gn1 - rhs2).exp_m1().abs(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: &[f64]) -> WeightSequence {
        WeightSequence::new(w.to_vec()).unwrap()
    }

    fn xs(x: &[f64]) -> SampleVector {
        SampleVector::new(x.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn prefix_sums_and_conventions() {
        let w = ws(&[3.0, 2.0, 5.0, 1.0]);
        assert_eq!(w.cum(0), 0.0);
        assert_eq!(w.cum(2), 5.0);
        assert_eq!(w.total(), 11.0);
        assert_eq!(w.cum2(0), 0.0);
        assert_eq!(w.cum2(3), 3.0 + 5.0 + 10.0);
        assert_eq!(w.cum2(4), 29.0);
        assert_eq!(w.prefix(2).weights(), &[3.0, 2.0]);
        assert_eq!(w.prefix(2).cum2(2), 8.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            WeightSequence::new(vec![1.0, 0.0]),
            Err(Error::NonPositive { index: 1, .. })
        ));
        assert!(WeightSequence::new(vec![]).is_err());
        assert!(SampleVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(SampleVector::new(vec![-1.0]).is_err());
        assert!(Exponent::new(f64::INFINITY).is_err());
    }

    #[test]
    fn power_mean_examples() {
        let q = [0.5, 0.5];
        let x = [1.0, 4.0];
        assert_eq!(power_mean(&q, &x, Exponent::ARITHMETIC).unwrap(), 2.5);
        assert!(close(
            power_mean(&q, &x, Exponent::GEOMETRIC).unwrap(),
            2.0,
            1e-15
        ));
        let harmonic = power_mean(&q, &x, Exponent::new(-1.0).unwrap()).unwrap();
        assert!(close(harmonic, 1.6, 1e-15));
    }

    #[test]
    fn power_mean_errors() {
        let r = Exponent::ARITHMETIC;
        assert!(matches!(
            power_mean(&[1.0], &[1.0, 2.0], r),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            power_mean(&[0.5, 0.6], &[1.0, 2.0], r),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            power_mean(&[0.5, 0.5], &[0.0, 2.0], r),
            Err(Error::NonPositive { .. })
        ));
    }

    #[test]
    fn partial_means_examples() {
        let w = ws(&[1.0, 1.0, 1.0]);
        let x = xs(&[1.0, 2.0, 3.0]);
        let a = partial_mean_sequence(&w, &x, Exponent::ARITHMETIC).unwrap();
        for (got, want) in a.values.iter().zip([1.0, 1.5, 2.0]) {
            assert!(close(*got, want, 1e-15));
        }
        let g = partial_mean_sequence(&w, &x, Exponent::GEOMETRIC).unwrap();
        for (got, want) in g.values.iter().zip([1.0, 2f64.sqrt(), 6f64.cbrt()]) {
            assert!(close(*got, want, 1e-15));
        }
        let c = partial_mean_sequence(
            &ws(&[2.0, 1.0]),
            &xs(&[5.0, 5.0]),
            Exponent::new(-3.0).unwrap(),
        )
        .unwrap();
        assert_eq!(c.values, vec![5.0, 5.0]);
    }

    #[test]
    fn partial_means_match_direct_power_mean() {
        let w = ws(&[0.3, 2.0, 1.7, 4.0]);
        let x = xs(&[0.2, 9.0, 3.5, 1.1]);
        for r in [-2.0, -0.5, 0.0, 0.7, 3.0] {
            let seq = partial_mean_sequence(&w, &x, Exponent::new(r).unwrap()).unwrap();
            for i in 1..=4 {
                let q: Vec<f64> = w.weights()[..i].iter().map(|v| v / w.cum(i)).collect();
                let direct = power_mean(&q, &x.values()[..i], Exponent::new(r).unwrap()).unwrap();
                assert!(close(seq.values[i - 1], direct, 1e-14), "r={r} i={i}");
            }
        }
    }

    #[test]
    fn mixed_mean_examples() {
        let w = ws(&[1.0, 1.0, 1.0]);
        let x = xs(&[1.0, 2.0, 3.0]);
        let g_of_a = mixed_mean(&w, &x, Exponent::GEOMETRIC, Exponent::ARITHMETIC).unwrap();
        assert!(close(g_of_a, 3f64.cbrt(), 1e-15));
        assert!((g_of_a - 1.44225).abs() < 1e-5);
        let a_of_g = mixed_mean(&w, &x, Exponent::ARITHMETIC, Exponent::GEOMETRIC).unwrap();
        assert!(close(
            a_of_g,
            (1.0 + 2f64.sqrt() + 6f64.cbrt()) / 3.0,
            1e-15
        ));
        assert!((a_of_g - 1.41044).abs() < 1e-5);

        let c = xs(&[7.5; 4]);
        let m = mixed_mean(
            &ws(&[1.0, 3.0, 0.2, 8.0]),
            &c,
            Exponent::new(2.0).unwrap(),
            Exponent::new(-1.0).unwrap(),
        )
        .unwrap();
        assert_eq!(m, 7.5);
    }

    #[test]
    fn identity_residual_examples() {
        let (r1, r2) = identity_residuals(&ws(&[1.0, 1.0, 1.0]), &xs(&[1.0, 2.0, 3.0])).unwrap();
        assert!(r1 < 1e-12 && r2 < 1e-12);
        let (r1, r2) =
            identity_residuals(&ws(&[3.0, 2.0, 5.0, 1.0]), &xs(&[0.1, 7.0, 2.0, 9.0])).unwrap();
        assert!(r1 < 1e-12 && r2 < 1e-12);
        let (r1, r2) = identity_residuals(&ws(&[3.0, 2.0, 5.0]), &xs(&[4.0; 3])).unwrap();
        assert!(r1 < 1e-15 && r2 < 1e-15);
        assert!(matches!(
            identity_residuals(&ws(&[1.0]), &xs(&[1.0])),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn ln_power_product_zero_base() {
        assert_eq!(
            ln_power_product([(2.0, 1.0), (0.0, 0.5)]),
            f64::NEG_INFINITY
        );
        assert!(close(
            ln_power_product([(2.0, 2.0), (3.0, 1.0)]),
            12f64.ln(),
            1e-15
        ));
    }
}
