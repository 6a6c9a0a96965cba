//! Reduced coordinates and the objectives that certify the mixed
//! arithmetic-geometric mean inequality.
//!
//! With running arithmetic means `A_i`, the substitution `y_i = A_i / A_{i+1}`
//! maps positive data onto the open box `prod (0, W_{i+1}/W_i)`. Dividing the
//! level-`n` inequality through by `G_n(A_n)` turns it into `F(y) <= 1` with
//!
//! ```text
//! F(y) = (W_{n-1}/W_n) prod y_i^(W_i w_n/(W_{n-1} W_n))
//!      + (w_n/W_n)     prod u_i^(w_{i+1}/W_n),
//! u_i  = W_{i+1}/w_{i+1} - (W_i/w_{i+1}) y_i       (= x_{i+1} / A_{i+1}).
//! ```
//!
//! Maximizing over `y_{n-1}` in closed form leaves `g` on `n - 2` coordinates.

use serde::{Deserialize, Serialize};

use crate::conditions::{d_zero, ln_spread_product, ln_upper_face_value};
use crate::error::{Error, Result};
use crate::means::{ln_power_product, running_means, SampleVector, WeightSequence};

/// Upper end `W_{i+1}/W_i` of the `i`-th box interval (1-based).
#[inline]
pub fn box_upper(w: &WeightSequence, i: usize) -> f64 {
    w.cum(i + 1) / w.cum(i)
}

/// A point of the reduced box.
///
/// Alongside each `y_i` the point carries its complement
/// `u_i = (W_{i+1} - W_i y_i) / w_{i+1}`, the scaled distance to the upper
/// face. Points built from data get `u_i = x_{i+1}/A_{i+1}` directly, which
/// keeps the reconstruction `x <- y` accurate even when `x_{i+1}` is tiny.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YPoint {
    y: Vec<f64>,
    #[serde(skip)]
    u: Vec<f64>,
}

/// `u_i` for coordinate `i` (1-based) at value `y`; exactly 0 on the upper face.
pub(crate) fn complement(w: &WeightSequence, i: usize, y: f64) -> f64 {
    if y == box_upper(w, i) {
        0.0
    } else {
        (1.0 + w.cum(i) * (1.0 - y) / w.w(i + 1)).max(0.0)
    }
}

impl YPoint {
    /// Validates `0 <= y_i <= W_{i+1}/W_i` for each coordinate.
    pub fn new(w: &WeightSequence, y: Vec<f64>) -> Result<Self> {
        if y.len() >= w.len() {
            return Err(Error::LengthMismatch {
                left: w.len() - 1,
                right: y.len(),
            });
        }
        let mut u = Vec::with_capacity(y.len());
        for (k, &v) in y.iter().enumerate() {
            let upper = box_upper(w, k + 1);
            if !(v.is_finite() && (0.0..=upper).contains(&v)) {
                return Err(Error::OutOfBox {
                    index: k,
                    value: v,
                    upper,
                });
            }
            u.push(complement(w, k + 1, v));
        }
        Ok(Self { y, u })
    }

    fn from_parts(y: Vec<f64>, u: Vec<f64>) -> Self {
        Self { y, u }
    }

    /// The all-ones point, image of constant data.
    pub fn ones(len: usize) -> Self {
        Self {
            y: vec![1.0; len],
            u: vec![1.0; len],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.y
    }

    pub fn complements(&self) -> &[f64] {
        &self.u
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn is_interior(&self) -> bool {
        self.y.iter().chain(&self.u).all(|&v| v > 0.0)
    }

    /// Appends a last coordinate, validating it against the box.
    pub fn push(&mut self, w: &WeightSequence, value: f64) -> Result<()> {
        let i = self.y.len() + 1;
        let upper = box_upper(w, i);
        if !(value.is_finite() && (0.0..=upper).contains(&value)) {
            return Err(Error::OutOfBox {
                index: i - 1,
                value,
                upper,
            });
        }
        self.y.push(value);
        self.u.push(complement(w, i, value));
        Ok(())
    }
}

/// `y_i = A_i / A_{i+1}` for `i = 1..n-1`.
pub fn x_to_y(w: &WeightSequence, x: &SampleVector) -> Result<YPoint> {
    let n = w.require_len("x_to_y", 2)?;
    x.check_matches(w)?;
    let a = running_means(w, x.values(), 1.0);
    let y = (1..n).map(|i| a[i - 1] / a[i]).collect();
    let u = (1..n).map(|i| x.values()[i] / a[i]).collect();
    Ok(YPoint::from_parts(y, u))
}

/// Rebuilds data with `A_n = scale` from a strictly interior point.
pub fn y_to_x(w: &WeightSequence, y: &YPoint, scale: f64) -> Result<SampleVector> {
    let n = w.len();
    if y.len() + 1 != n {
        return Err(Error::LengthMismatch {
            left: n - 1,
            right: y.len(),
        });
    }
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::NonPositive {
            what: "scale",
            index: 0,
            value: scale,
        });
    }
    if let Some(index) = (0..y.len()).find(|&k| y.y[k] <= 0.0 || y.u[k] <= 0.0) {
        return Err(Error::BoundaryPoint { index });
    }
    let mut x = vec![0.0; n];
    let mut a_next = scale;
    for i in (1..n).rev() {
        x[i] = y.u[i - 1] * a_next;
        a_next *= y.y[i - 1];
    }
    x[0] = a_next;
    SampleVector::new(x)
}

fn check_len(y: &YPoint, expected: usize) -> Result<()> {
    if y.len() != expected {
        return Err(Error::LengthMismatch {
            left: expected,
            right: y.len(),
        });
    }
    Ok(())
}

/// `ln c` and `ln c'` for the first `m` coordinates, with the exponents of `F`:
/// `c = prod y_i^(W_i w_n/(W_{n-1} W_n))`, `c' = prod u_i^(w_{i+1}/W_n)`.
fn ln_partial_products(w: &WeightSequence, y: &YPoint, m: usize) -> (f64, f64) {
    let n = w.len();
    let (prev, total, wn) = (w.cum(n - 1), w.total(), w.last());
    let ln_c = ln_power_product((1..=m).map(|i| (y.y[i - 1], w.cum(i) * wn / (prev * total))));
    let ln_c2 = ln_power_product((1..=m).map(|i| (y.u[i - 1], w.w(i + 1) / total)));
    (ln_c, ln_c2)
}

/// The reduced objective `F` on all `n - 1` coordinates. `F(1, ..., 1) = 1`.
pub fn objective_f(w: &WeightSequence, y: &YPoint) -> Result<f64> {
    let n = w.require_len("objective_f", 2)?;
    check_len(y, n - 1)?;
    let (ln_c, ln_c2) = ln_partial_products(w, y, n - 1);
    Ok((w.cum(n - 1) * ln_c.exp() + w.last() * ln_c2.exp()) / w.total())
}

/// `g` on the first `n - 2` coordinates:
/// `(W_{n-1}/W_n) prod y_i^(W_i w_n/W_{n-1}^2) + (w_n/W_n) prod u_i^(w_{i+1}/W_{n-1})`.
pub fn objective_g(w: &WeightSequence, y_head: &YPoint) -> Result<f64> {
    let n = w.require_len("objective_g", 3)?;
    check_len(y_head, n - 2)?;
    let prev = w.cum(n - 1);
    let wn = w.last();
    let ln_p1 =
        ln_power_product((1..=n - 2).map(|i| (y_head.y[i - 1], w.cum(i) * wn / (prev * prev))));
    let ln_p2 = ln_power_product((1..=n - 2).map(|i| (y_head.u[i - 1], w.w(i + 1) / prev)));
    Ok((prev * ln_p1.exp() + wn * ln_p2.exp()) / w.total())
}

/// Closed-form maximization of `F` over its last coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Elimination {
    pub y_star: f64,
    pub max_value: f64,
    /// Set when `c` or `c'` vanishes and the maximizer sits on an endpoint.
    pub degenerate: bool,
}

/// Maximizes `F(y_head, t)` over `t in [0, W_n/W_{n-1}]`.
///
/// With `c, c' > 0` the maximizer is
/// `t* = (W_{n-1}/W_n + (w_n/W_n)(c'/c)^(W_n/W_{n-1}))^(-1)` and the maximum is
/// `g^(W_{n-1}/W_n)`. When either product vanishes the supremum is taken at an
/// endpoint and `degenerate` is set.
pub fn eliminate_last(w: &WeightSequence, y_head: &YPoint) -> Result<Elimination> {
    let n = w.require_len("eliminate_last", 2)?;
    check_len(y_head, n - 2)?;
    let (prev, total, wn) = (w.cum(n - 1), w.total(), w.last());
    let (ln_c, ln_c2) = ln_partial_products(w, y_head, n - 2);
    let exponent = total / prev;
    let share = prev / total;

    let out = match (ln_c.is_finite(), ln_c2.is_finite()) {
        (true, true) => {
            let y_star = total / (prev + wn * (exponent * (ln_c2 - ln_c)).exp());
            // ln g via log-sum-exp of the two scaled terms.
            let t1 = (prev / total).ln() + exponent * ln_c;
            let t2 = (wn / total).ln() + exponent * ln_c2;
            let hi = t1.max(t2);
            let ln_g = hi + ((t1 - hi).exp() + (t2 - hi).exp()).ln();
            Elimination {
                y_star,
                max_value: (share * ln_g).exp(),
                degenerate: false,
            }
        }
        (false, true) => Elimination {
            y_star: 0.0,
            max_value: (share * (wn / total).ln() + ln_c2).exp(),
            degenerate: true,
        },
        (true, false) => Elimination {
            y_star: box_upper(w, n - 1),
            max_value: (share * share.ln() + ln_c).exp(),
            degenerate: true,
        },
        (false, false) => Elimination {
            y_star: 0.0,
            max_value: 0.0,
            degenerate: true,
        },
    };
    Ok(out)
}

/// The interior stationary family `a_i(d) = W_{i+1}/(d w_{i+1} + W_i)` and the
/// scalar function `h` whose level set encodes stationarity of `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub d: f64,
    pub a: Vec<f64>,
    pub g_value: f64,
    pub h: f64,
    pub h_prime: f64,
    /// `h(d) - sum kappa_i ln W_{i+1}`; zero exactly when `a(d)` is stationary.
    pub residual: f64,
}

/// `kappa_i = W_i w_n/W_{n-1}^2 - w_{i+1}/W_{n-1}` for `i = 1..n-2`.
fn kappas(w: &WeightSequence) -> Vec<f64> {
    let n = w.len();
    let prev = w.cum(n - 1);
    (1..=n - 2)
        .map(|i| w.cum(i) * w.last() / (prev * prev) - w.w(i + 1) / prev)
        .collect()
}

fn h_and_residual(w: &WeightSequence, kappa: &[f64], d: f64) -> (f64, f64) {
    let n = w.len();
    let prev = w.cum(n - 1);
    let mut h = 0.0;
    let mut level = 0.0;
    for i in 1..=n - 2 {
        h += kappa[i - 1] * (d * w.w(i + 1) + w.cum(i)).ln();
        level += kappa[i - 1] * w.cum(i + 1).ln();
    }
    h -= w.w(1) / prev * d.ln();
    (h, h - level)
}

pub fn stationary_analysis(w: &WeightSequence, d: f64) -> Result<StationaryPoint> {
    let n = w.require_len("stationary_analysis", 3)?;
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::NonPositive {
            what: "d",
            index: 0,
            value: d,
        });
    }
    let prev = w.cum(n - 1);
    let a: Vec<f64> = (1..=n - 2)
        .map(|i| w.cum(i + 1) / (d * w.w(i + 1) + w.cum(i)))
        .collect();
    // On this family the complement is exactly d * a_i.
    let u = a.iter().map(|v| d * v).collect();
    let point = YPoint::from_parts(a.clone(), u);
    let g_value = objective_g(w, &point)?;

    let kappa = kappas(w);
    let (h, residual) = h_and_residual(w, &kappa, d);
    let h_prime = (1..=n - 2)
        .map(|i| kappa[i - 1] / (d + w.cum(i) / w.w(i + 1)))
        .sum::<f64>()
        - w.w(1) / (prev * d);

    Ok(StationaryPoint {
        d,
        a,
        g_value,
        h,
        h_prime,
        residual,
    })
}

/// All `d` in `(0, d_max]` where the stationarity residual vanishes, found by
/// a log-spaced sign scan plus bisection. Always contains `d = 1`.
/// The scan cannot see roots closer together than its spacing.
pub fn stationary_roots(w: &WeightSequence, d_max: f64) -> Result<Vec<f64>> {
    w.require_len("stationary_roots", 3)?;
    let kappa = kappas(w);
    let residual = |d: f64| h_and_residual(w, &kappa, d).1;
    let d_min = 1e-6_f64;
    let steps = 4000;
    let ratio = (d_max / d_min).ln() / steps as f64;
    let grid: Vec<f64> = (0..=steps)
        .map(|j| d_min * (ratio * j as f64).exp())
        .collect();

    let mut roots = vec![1.0];
    for pair in grid.windows(2) {
        let (mut lo, mut hi) = (pair[0], pair[1]);
        let (mut f_lo, f_hi) = (residual(lo), residual(hi));
        if f_lo == 0.0 {
            roots.push(lo);
            continue;
        }
        if f_lo.signum() == f_hi.signum() || f_hi == 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = residual(mid);
            if f_mid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * b.abs());
    Ok(roots)
}

/// Larger of the suprema of `g` on the upper faces and on the zero faces:
/// `max((W_{n-1}/W_n) prod (W_{i+1}/W_i)^(W_i w_n/W_{n-1}^2),
///      (w_n/W_n) prod (W_{i+1}/w_{i+1})^(w_{i+1}/W_{n-1}))`.
pub fn boundary_bound(w: &WeightSequence) -> Result<f64> {
    w.require_len("boundary_bound", 3)?;
    let upper = ln_upper_face_value(w).exp();
    let zero = (w.last() / w.total()).ln() + ln_spread_product(w);
    Ok(upper.max(zero.exp()))
}

/// Bound on `g` over stationary points with `d >= d_0`:
/// `(W_{n-1}/(d_0 W_n) + w_n/W_n) prod (W_{i+1}/w_{i+1})^(w_{i+1}/W_{n-1})`.
pub fn interior_bound(w: &WeightSequence) -> Result<f64> {
    let n = w.require_len("interior_bound", 3)?;
    let d0 = d_zero(w)?;
    let factor = (w.cum(n - 1) / d0 + w.last()) / w.total();
    Ok(factor * ln_spread_product(w).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::ratio_form_lhs;

    fn ws(w: &[f64]) -> WeightSequence {
        WeightSequence::new(w.to_vec()).unwrap()
    }

    fn xs(x: &[f64]) -> SampleVector {
        SampleVector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn x_to_y_examples() {
        let w = ws(&[1.0, 1.0, 1.0]);
        assert_eq!(x_to_y(&w, &xs(&[3.0; 3])).unwrap().coords(), &[1.0, 1.0]);
        let y = x_to_y(&w, &xs(&[1.0, 2.0, 3.0])).unwrap();
        assert!((y.coords()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((y.coords()[1] - 0.75).abs() < 1e-15);
        assert!(y.is_interior());

        // x_n -> 0 pushes y_{n-1} to the upper face W_n / W_{n-1} = 3/2.
        let y = x_to_y(&w, &xs(&[1.0, 2.0, 1e-12])).unwrap();
        assert!((y.coords()[1] - 1.5).abs() < 1e-11);
    }

    #[test]
    fn y_to_x_examples() {
        let w = ws(&[1.0, 1.0, 1.0]);
        let x = y_to_x(&w, &YPoint::new(&w, vec![1.0, 1.0]).unwrap(), 2.5).unwrap();
        assert_eq!(x.values(), &[2.5, 2.5, 2.5]);

        let y = YPoint::new(&w, vec![2.0 / 3.0, 0.75]).unwrap();
        let x = y_to_x(&w, &y, 2.0).unwrap();
        for (got, want) in x.values().iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }

        let on_face = YPoint::new(&w, vec![2.0, 0.5]).unwrap();
        assert!(matches!(
            y_to_x(&w, &on_face, 1.0),
            Err(Error::BoundaryPoint { index: 0 })
        ));
        let zero = YPoint::new(&w, vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            y_to_x(&w, &zero, 1.0),
            Err(Error::BoundaryPoint { index: 1 })
        ));
    }

    #[test]
    fn box_membership() {
        let w = ws(&[1.0, 1.0, 1.0]);
        assert!(matches!(
            YPoint::new(&w, vec![2.1, 1.0]),
            Err(Error::OutOfBox { index: 0, .. })
        ));
        assert!(YPoint::new(&w, vec![-0.1, 1.0]).is_err());
        assert!(YPoint::new(&w, vec![1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn objective_f_examples() {
        let w = ws(&[1.0, 3.0, 0.5, 2.0]);
        assert_eq!(objective_f(&w, &YPoint::ones(3)).unwrap(), 1.0);
        assert_eq!(
            objective_f(&w, &YPoint::new(&w, vec![1.0; 3]).unwrap()).unwrap(),
            1.0
        );

        // Zero face: only the second term survives.
        let y = YPoint::new(&w, vec![0.0, 1.1, 0.9]).unwrap();
        let second: f64 = (1..=3)
            .map(|i| {
                let u = w.cum(i + 1) / w.w(i + 1) - w.cum(i) / w.w(i + 1) * y.coords()[i - 1];
                u.powf(w.w(i + 1) / w.total())
            })
            .product();
        let f = objective_f(&w, &y).unwrap();
        assert!((f - w.last() / w.total() * second).abs() < 1e-15);

        let w = ws(&[1.0, 1.0, 1.0]);
        let x = xs(&[1.0, 2.0, 3.0]);
        let f = objective_f(&w, &x_to_y(&w, &x).unwrap()).unwrap();
        assert!((f - ratio_form_lhs(&w, &x).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn objective_g_examples() {
        let w = ws(&[1.0, 1.0, 4.05]);
        assert_eq!(objective_g(&w, &YPoint::ones(1)).unwrap(), 1.0);
        let g = objective_g(&w, &YPoint::new(&w, vec![0.5]).unwrap()).unwrap();
        let direct = 2.0 / 6.05 * 0.5f64.powf(4.05 / 4.0) + 4.05 / 6.05 * 1.5f64.sqrt();
        assert!((g - direct).abs() < 1e-15);
        assert!((g - 0.9831).abs() < 1e-3);
        assert!(objective_g(&ws(&[1.0, 2.0]), &YPoint::ones(0)).is_err());
    }

    #[test]
    fn eliminate_last_at_ones() {
        for w in [ws(&[1.0, 1.0, 4.05]), ws(&[2.0, 0.3, 1.0, 7.0])] {
            let n = w.len();
            let e = eliminate_last(&w, &YPoint::ones(n - 2)).unwrap();
            assert!((e.y_star - 1.0).abs() < 1e-15);
            assert!((e.max_value - 1.0).abs() < 1e-15);
            assert!(!e.degenerate);
        }
    }

    #[test]
    fn eliminate_last_matches_grid() {
        // 1-D grid oracle over the last interval at spacing ~1e-6.
        let w = ws(&[1.0, 1.0, 4.05]);
        let head = YPoint::new(&w, vec![0.5]).unwrap();
        let e = eliminate_last(&w, &head).unwrap();
        let upper = box_upper(&w, 2);
        let steps = (upper / 1e-6) as usize;
        let mut best = f64::MIN;
        for j in 0..=steps {
            let mut y = head.clone();
            y.push(&w, upper * j as f64 / steps as f64).unwrap();
            best = best.max(objective_f(&w, &y).unwrap());
        }
        assert!(
            (e.max_value - best).abs() < 1e-8,
            "{} vs {best}",
            e.max_value
        );
        let g = objective_g(&w, &head).unwrap();
        assert!((e.max_value - g.powf(2.0 / 6.05)).abs() < 1e-14);
    }

    #[test]
    fn eliminate_last_degenerate_faces() {
        let w = ws(&[1.0, 2.0, 3.0]);
        let e = eliminate_last(&w, &YPoint::new(&w, vec![0.0]).unwrap()).unwrap();
        assert!(e.degenerate);
        assert_eq!(e.y_star, 0.0);
        let mut y = YPoint::new(&w, vec![0.0]).unwrap();
        y.push(&w, 0.0).unwrap();
        assert!((e.max_value - objective_f(&w, &y).unwrap()).abs() < 1e-15);

        let top = box_upper(&w, 1);
        let e = eliminate_last(&w, &YPoint::new(&w, vec![top]).unwrap()).unwrap();
        assert!(e.degenerate);
        assert_eq!(e.y_star, box_upper(&w, 2));
        let mut y = YPoint::new(&w, vec![top]).unwrap();
        y.push(&w, e.y_star).unwrap();
        assert!((e.max_value - objective_f(&w, &y).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn stationary_examples() {
        let w = ws(&[1.0, 1.0, 4.05]);
        let p = stationary_analysis(&w, 1.0).unwrap();
        assert_eq!(p.a, vec![1.0]);
        assert_eq!(p.g_value, 1.0);
        assert_eq!(p.residual, 0.0);

        let p = stationary_analysis(&w, 2.0).unwrap();
        assert!((p.a[0] - 2.0 / 3.0).abs() < 1e-15);
        let g = objective_g(&w, &YPoint::new(&w, vec![2.0 / 3.0]).unwrap()).unwrap();
        assert!((p.g_value - g).abs() < 1e-15);
        assert!(p.residual != 0.0);

        let p = stationary_analysis(&w, 1e12).unwrap();
        assert!(p.a[0] < 1e-11);
        let face = objective_g(&w, &YPoint::new(&w, vec![0.0]).unwrap()).unwrap();
        assert!((p.g_value - face).abs() < 1e-5);

        assert!(stationary_analysis(&w, 0.0).is_err());
        assert!(stationary_analysis(&w, -1.0).is_err());
    }

    #[test]
    fn h_prime_matches_finite_difference() {
        let w = ws(&[0.5, 2.0, 1.0, 6.0]);
        for d in [0.3, 1.0, 4.0] {
            let step = 1e-6 * d;
            let hp = stationary_analysis(&w, d + step).unwrap().h;
            let hm = stationary_analysis(&w, d - step).unwrap().h;
            let fd = (hp - hm) / (2.0 * step);
            let exact = stationary_analysis(&w, d).unwrap().h_prime;
            assert!((fd - exact).abs() < 1e-7 * (1.0 + exact.abs()));
        }
    }

    #[test]
    fn roots_are_stationary_points_of_g() {
        let w = ws(&[1.0, 1.0, 1.0, 30.0]);
        let roots = stationary_roots(&w, 100.0).unwrap();
        assert!(roots.contains(&1.0));
        for d in roots {
            let p = stationary_analysis(&w, d).unwrap();
            // Central-difference gradient of g at a(d).
            for k in 0..p.a.len() {
                let h = 1e-6;
                let mut plus = p.a.clone();
                let mut minus = p.a.clone();
                plus[k] += h;
                minus[k] -= h;
                let gp = objective_g(&w, &YPoint::new(&w, plus).unwrap()).unwrap();
                let gm = objective_g(&w, &YPoint::new(&w, minus).unwrap()).unwrap();
                assert!(((gp - gm) / (2.0 * h)).abs() < 1e-6, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn boundary_bound_examples() {
        let b = boundary_bound(&ws(&[1.0, 1.0, 4.05])).unwrap();
        assert!((b - 4.05 / 6.05 * 2f64.sqrt()).abs() < 1e-15);
        assert!((b - 0.9467).abs() < 1e-4);
        let b = boundary_bound(&ws(&[1.0, 1.0, 4.5])).unwrap();
        assert!((b - 0.979).abs() < 1e-3);
        let b = boundary_bound(&ws(&[1.0, 1.0, 1.0])).unwrap();
        assert!((b - 2.0 / 3.0 * 2f64.powf(0.25)).abs() < 1e-15);
        assert!(boundary_bound(&ws(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn interior_bound_examples() {
        let b = interior_bound(&ws(&[1.0, 1.0, 4.05])).unwrap();
        assert!((b - 0.9704).abs() < 1e-4);
        let b = interior_bound(&ws(&[1.0, 1.0, 4.1])).unwrap();
        assert!((b - 0.99807).abs() < 1e-5);
        let b = interior_bound(&ws(&[1.0, 1.0, 4.5])).unwrap();
        assert!((b - 1.224).abs() < 1e-3);
        assert!(interior_bound(&ws(&[1.0, 1.0, 3.0])).is_err());
    }
}
