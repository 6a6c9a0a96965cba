//! Admissibility checks on weight sequences.
//!
//! Each check produces a [`ConditionReport`] of signed margins, positive when
//! the corresponding sub-inequality is satisfied with that much room.
//! Product-form conditions are assembled in the log domain and only turned
//! into `1 - product` at the end via `expm1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::{ln_power_product, WeightSequence};

/// A strict inequality counts as satisfied only when its margin exceeds this.
pub const STRICT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub label: String,
    pub value: f64,
    /// Strict sub-inequalities need `value > STRICT_TOL`; the others `value >= 0`.
    #[serde(skip)]
    pub strict: bool,
}

impl Margin {
    fn new(label: &str, value: f64, strict: bool) -> Self {
        Self {
            label: label.to_owned(),
            value,
            strict,
        }
    }

    pub fn satisfied(&self) -> bool {
        if self.strict {
            self.value > STRICT_TOL
        } else {
            self.value >= 0.0
        }
    }

    /// A strict margin sitting on its tie.
    pub fn on_boundary(&self) -> bool {
        self.strict && self.value.abs() <= STRICT_TOL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub name: String,
    pub holds: bool,
    pub margins: Vec<Margin>,
}

impl ConditionReport {
    fn from_margins(name: &str, margins: Vec<Margin>) -> Self {
        Self {
            name: name.to_owned(),
            holds: margins.iter().all(Margin::satisfied),
            margins,
        }
    }

    /// True when the verdict fails only because a strict margin is tied.
    pub fn boundary(&self) -> bool {
        self.margins.iter().any(Margin::on_boundary)
    }

    pub fn margin(&self, label: &str) -> Option<f64> {
        self.margins
            .iter()
            .find(|m| m.label == label)
            .map(|m| m.value)
    }
}

/// `W_n w_k - W_k w_n > 0` for `2 <= k <= n-1`. Vacuous for `n = 2`.
pub fn nanjundiah_condition(w: &WeightSequence) -> Result<ConditionReport> {
    let n = w.require_len("nanjundiah_condition", 2)?;
    let margins = (2..n)
        .map(|k| {
            Margin::new(
                &format!("k={k}"),
                w.total() * w.w(k) - w.cum(k) * w.last(),
                true,
            )
        })
        .collect();
    Ok(ConditionReport::from_margins("nanjundiah", margins))
}

/// `W_{n-1}^2 >= w_n S_{n-2}`, the empty sum being zero.
pub fn holland_condition(w: &WeightSequence) -> Result<ConditionReport> {
    let n = w.require_len("holland_condition", 2)?;
    let prev = w.cum(n - 1);
    let margin = prev * prev - w.last() * w.cum2(n - 2);
    Ok(ConditionReport::from_margins(
        "holland",
        vec![Margin::new("W_{n-1}^2 - w_n*S_{n-2}", margin, false)],
    ))
}

/// `e = w_n S_{n-2} / W_{n-1}^2 - 1`. Positive exactly when Holland's
/// condition fails.
pub fn holland_excess(w: &WeightSequence) -> Result<f64> {
    let n = w.require_len("holland_excess", 3)?;
    let prev = w.cum(n - 1);
    Ok(w.last() * w.cum2(n - 2) / (prev * prev) - 1.0)
}

/// `ln[(W_{n-1}/W_n) prod_{i=1}^{n-2} (W_{i+1}/W_i)^(W_i w_n / W_{n-1}^2)]`,
/// the supremum of the reduced objective on its upper faces.
pub(crate) fn ln_upper_face_value(w: &WeightSequence) -> f64 {
    let n = w.len();
    let prev = w.cum(n - 1);
    let alpha = w.last() / (prev * prev);
    (prev / w.total()).ln()
        + ln_power_product((1..=n - 2).map(|i| (w.cum(i + 1) / w.cum(i), w.cum(i) * alpha)))
}

/// `ln prod_{i=1}^{n-2} (W_{i+1}/w_{i+1})^(w_{i+1}/W_{n-1})`.
pub(crate) fn ln_spread_product(w: &WeightSequence) -> f64 {
    let n = w.len();
    let prev = w.cum(n - 1);
    ln_power_product((1..=n - 2).map(|i| (w.cum(i + 1) / w.w(i + 1), w.w(i + 1) / prev)))
}

pub const EXTENDED_LABELS: [&str; 4] = [
    "a: e > 0",
    "b: w_1/w_n - e",
    "c: 1 - upper-face bound",
    "d: 1 - interior bound",
];

/// The three displayed inequalities extending Holland's condition past
/// `e = 0`, split into four margins:
///
/// * (a) `e > 0` (strict),
/// * (b) `w_1/w_n - e >= 0`,
/// * (c) `1 - (W_{n-1}/W_n) prod (W_{i+1}/W_i)^(W_i w_n/W_{n-1}^2) >= 0`,
/// * (d) `1 - (W_{n-1} w_n e/(W_n w_1) + w_n/W_n) prod (W_{i+1}/w_{i+1})^(w_{i+1}/W_{n-1}) >= 0`.
///
/// Only defined for `n >= 3`; shorter sequences give [`Error::NotApplicable`].
pub fn extended_conditions(w: &WeightSequence) -> Result<ConditionReport> {
    let n = w.len();
    if n < 3 {
        return Err(Error::NotApplicable(format!(
            "the extended conditions need n >= 3, got n = {n}"
        )));
    }
    let e = holland_excess(w)?;
    let (w1, wn, prev, total) = (w.w(1), w.last(), w.cum(n - 1), w.total());

    let c = -ln_upper_face_value(w).exp_m1();
    let factor = prev * wn * e / (total * w1) + wn / total;
    let d = if factor > 0.0 {
        -(factor.ln() + ln_spread_product(w)).exp_m1()
    } else {
        1.0 - factor * ln_spread_product(w).exp()
    };

    let margins = vec![
        Margin::new(EXTENDED_LABELS[0], e, true),
        Margin::new(EXTENDED_LABELS[1], w1 / wn - e, false),
        Margin::new(EXTENDED_LABELS[2], c, false),
        Margin::new(EXTENDED_LABELS[3], d, false),
    ];
    Ok(ConditionReport::from_margins("extended", margins))
}

/// `d_0 = (w_1/w_n) / e`, the threshold below which `h` is decreasing.
/// Requires `e > 0`.
pub fn d_zero(w: &WeightSequence) -> Result<f64> {
    let e = holland_excess(w)?;
    if e <= 0.0 {
        return Err(Error::NotApplicable(format!(
            "d_0 needs w_n S_(n-2) / W_(n-1)^2 - 1 > 0, got {e}"
        )));
    }
    Ok(w.w(1) / w.last() / e)
}

/// The last weight `W_{n-1}^2 / S_{n-2}` at which `e` vanishes, given the
/// first `n-1` weights.
pub fn critical_weight(head: &WeightSequence) -> Result<f64> {
    let m = head.len();
    if m < 2 {
        return Err(Error::TooShort {
            what: "critical_weight",
            min: 3,
            n: m + 1,
        });
    }
    let big = head.cum(m);
    Ok(big * big / head.cum2(m - 1))
}

/// Checks the two strict inequalities that the critical tail weight must
/// satisfy for the extended region to be non-empty next to it:
///
/// * `ln prod W_i^{w_i} - [S_{n-2} ln(S_{n-2}/S_{n-1}) + W_{n-2} ln W_{n-1}] > 0`,
/// * `1 - (W_{n-1}/S_{n-1}) prod (W_{i+1}/w_{i+1})^(w_{i+1}/W_{n-1}) > 0`.
///
/// Both hold for every positive head, so a failure here points at a bug.
pub fn existence_check(head: &WeightSequence) -> Result<ConditionReport> {
    let m = head.len();
    if m < 2 {
        return Err(Error::TooShort {
            what: "existence_check",
            min: 3,
            n: m + 1,
        });
    }
    // head holds w_1..w_{n-1}, so m = n - 1.
    let s_prev = head.cum2(m - 1);
    let s_last = head.cum2(m);
    let ln_lhs = s_prev * (s_prev / s_last).ln() + head.cum(m - 1) * head.cum(m).ln();
    let ln_rhs: f64 = (1..m).map(|i| head.w(i) * head.cum(i).ln()).sum();
    let upper_face = ln_rhs - ln_lhs;

    let ln_spread = ln_power_product(
        (1..m).map(|i| (head.cum(i + 1) / head.w(i + 1), head.w(i + 1) / head.cum(m))),
    );
    let interior = -((head.cum(m) / s_last).ln() + ln_spread).exp_m1();

    Ok(ConditionReport::from_margins(
        "existence",
        vec![
            Margin::new("upper-face inequality (log)", upper_face, true),
            Margin::new("interior inequality", interior, true),
        ],
    ))
}

/// `W_n = W_{n-1} S_{n-1} / S_{n-2}`, where the right side of the induction
/// step inequality peaks.
pub fn induction_step_maximizer(head: &WeightSequence) -> Result<f64> {
    let m = head.len();
    if m < 2 {
        return Err(Error::TooShort {
            what: "induction_step_maximizer",
            min: 3,
            n: m + 1,
        });
    }
    Ok(head.cum(m) * head.cum2(m) / head.cum2(m - 1))
}

/// Log of both sides of the induction step
/// `(S_{n-2}/S_{n-1})^{S_{n-2}} W_{n-1}^{W_{n-1}} >= (S_{n-1}/S_n)^{S_{n-1}} W_n^{W_{n-1}}`
/// with `S_n = S_{n-1} + W_n`, for a free total `W_n > 0`.
pub fn induction_step_sides(head: &WeightSequence, big_n: f64) -> Result<(f64, f64)> {
    let m = head.len();
    if m < 2 {
        return Err(Error::TooShort {
            what: "induction_step_sides",
            min: 3,
            n: m + 1,
        });
    }
    if !(big_n.is_finite() && big_n > 0.0) {
        return Err(Error::NonPositive {
            what: "W_n",
            index: 0,
            value: big_n,
        });
    }
    let (s_prev, s_last, big_prev) = (head.cum2(m - 1), head.cum2(m), head.cum(m));
    let lhs = s_prev * (s_prev / s_last).ln() + big_prev * big_prev.ln();
    let rhs = s_last * (s_last / (s_last + big_n)).ln() + big_prev * big_n.ln();
    Ok((lhs, rhs))
}
