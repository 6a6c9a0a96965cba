//! Numerical oracles: exhaustive lattice maximization of the reduced
//! objective, seeded multistart searches, and weight-region scans.
//!
//! Every search is reproducible from its inputs. Random trials draw from a
//! ChaCha8 stream selected by `(seed, trial index)`, and parallel reductions
//! break ties toward the smallest index, so results do not depend on the
//! number of worker threads.

use std::io::{self, Write};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conditions::{critical_weight, extended_conditions, holland_condition};
use crate::error::{Error, Result};
use crate::functionals::rado_profile;
use crate::means::{Exponent, SampleVector, WeightSequence};
use crate::reduction::{
    boundary_bound, box_upper, complement, eliminate_last, interior_bound, objective_f, YPoint,
};

/// Largest lattice dimension `grid_max_f` accepts.
pub const MAX_GRID_DIM: usize = 4;

/// Lattice points budget used when no resolution is given.
pub const AUTO_GRID_BUDGET: f64 = 4.1e6;

/// Sampling range for data in [`violation_search`].
pub const SAMPLE_RANGE: (f64, f64) = (1e-3, 1e3);

/// Normalized objective above which a search result is treated as a candidate.
pub const CANDIDATE_TOL: f64 = 1e-9;

/// A candidate must re-evaluate past this to count as a violation.
pub const CONFIRM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: usize,
    pub local_steps: usize,
    /// Fraction of each box interval kept clear at both ends when drawing
    /// random starting points in the reduced box.
    pub box_padding: f64,
    pub grid_resolution: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 1000,
            local_steps: 30,
            box_padding: 0.05,
            grid_resolution: 201,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.grid_resolution < 2 {
            return Err(Error::InvalidConfig(
                "grid_resolution must be at least 2".into(),
            ));
        }
        if !(self.box_padding > 0.0 && self.box_padding < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "box_padding must lie in (0, 0.5), got {}",
                self.box_padding
            )));
        }
        Ok(())
    }
}

/// Where a search result lives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "space", content = "values", rename_all = "lowercase")]
pub enum SearchPoint {
    Y(Vec<f64>),
    X(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_value: f64,
    pub best_point: SearchPoint,
    pub trials_run: usize,
    pub seed: Option<u64>,
    /// Set by [`violation_search`] when a candidate survived re-evaluation.
    #[serde(skip)]
    pub confirmed_violation: bool,
}

fn pick_max(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
        a
    } else {
        b
    }
}

/// Points on `[0, upper]` (with `upper > 1`) including `0`, `1` and `upper`
/// exactly: uniform on `[0, 1]` and on `[1, upper]`, with the counts split in
/// proportion to the lengths. Gives `resolution` points when `resolution >= 3`.
pub fn axis_lattice(upper: f64, resolution: usize) -> Vec<f64> {
    let intervals = resolution.max(3) - 1;
    let below = ((intervals as f64 / upper).round() as usize).clamp(1, intervals - 1);
    let above = intervals - below;
    let mut points = Vec::with_capacity(intervals + 1);
    points.extend((0..below).map(|j| j as f64 / below as f64));
    points.push(1.0);
    points.extend((1..above).map(|j| 1.0 + (upper - 1.0) * j as f64 / above as f64));
    points.push(upper);
    points
}

/// Per-axis log contributions to `ln c` and `ln c'` of the reduced objective.
struct AxisTable {
    points: Vec<f64>,
    ln_first: Vec<f64>,
    ln_second: Vec<f64>,
}

fn axis_tables(w: &WeightSequence, dims: usize, resolution: usize) -> Result<Vec<AxisTable>> {
    let n = w.len();
    let (prev, total, wn) = (w.cum(n - 1), w.total(), w.last());
    (1..=dims)
        .map(|i| {
            let points = axis_lattice(box_upper(w, i), resolution);
            let mut ln_first = Vec::with_capacity(points.len());
            let mut ln_second = Vec::with_capacity(points.len());
            for &p in &points {
                let u = complement(w, i, p);
                let alpha = w.cum(i) * wn / (prev * total);
                let beta = w.w(i + 1) / total;
                ln_first.push(if p == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    alpha * p.ln()
                });
                ln_second.push(if u == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    beta * u.ln()
                });
            }
            Ok(AxisTable {
                points,
                ln_first,
                ln_second,
            })
        })
        .collect()
}

/// Maximizes `finish(ln c, ln c')` over the product lattice. Flat indices
/// run with the last axis fastest, so the smallest index is the
/// lexicographically smallest point.
fn lattice_max<F>(tables: &[AxisTable], finish: F) -> (f64, Vec<f64>, usize)
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let sizes: Vec<usize> = tables.iter().map(|t| t.points.len()).collect();
    let total: usize = sizes.iter().product();
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; sizes.len()];
        for (slot, &size) in out.iter_mut().zip(&sizes).rev() {
            *slot = idx % size;
            idx /= size;
        }
        out
    };
    let (best, idx) = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            let mut rem = idx;
            for (table, &size) in tables.iter().zip(&sizes).rev() {
                let j = rem % size;
                rem /= size;
                s1 += table.ln_first[j];
                s2 += table.ln_second[j];
            }
            (finish(s1, s2), idx)
        })
        .reduce(|| (f64::NEG_INFINITY, usize::MAX), pick_max);
    let point = decode(idx)
        .into_iter()
        .zip(tables)
        .map(|(j, t)| t.points[j])
        .collect();
    (best, point, total)
}

/// Default per-axis resolution for a lattice of dimension `dims`.
pub fn auto_resolution(dims: usize) -> usize {
    let per_axis = AUTO_GRID_BUDGET.powf(1.0 / dims.max(1) as f64).floor() as usize;
    per_axis.clamp(3, 2001)
}

/// Maximizes the reduced objective `F` over a lattice of the closed box,
/// faces included. The lattice always contains `(1, ..., 1)`.
pub fn grid_max_f(w: &WeightSequence, resolution: usize) -> Result<SearchResult> {
    let n = w.require_len("grid_max_f", 2)?;
    let dims = n - 1;
    if dims > MAX_GRID_DIM {
        return Err(Error::DimensionGuard {
            dim: dims,
            limit: MAX_GRID_DIM,
        });
    }
    if resolution < 2 {
        return Err(Error::InvalidConfig(
            "grid resolution must be at least 2".into(),
        ));
    }
    let tables = axis_tables(w, dims, resolution)?;
    let (prev, total, wn) = (w.cum(n - 1), w.total(), w.last());
    let (best, point, count) =
        lattice_max(&tables, |l1, l2| (prev * l1.exp() + wn * l2.exp()) / total);
    Ok(SearchResult {
        best_value: best,
        best_point: SearchPoint::Y(point),
        trials_run: count,
        seed: None,
        confirmed_violation: false,
    })
}

/// Same maximization with the last coordinate eliminated in closed form:
/// the lattice covers only the first `n - 2` axes.
pub fn grid_max_envelope(w: &WeightSequence, resolution: usize) -> Result<SearchResult> {
    let n = w.require_len("grid_max_envelope", 3)?;
    let dims = n - 2;
    if dims > MAX_GRID_DIM {
        return Err(Error::DimensionGuard {
            dim: dims,
            limit: MAX_GRID_DIM,
        });
    }
    let tables = axis_tables(w, dims, resolution)?;
    let (best_idx_value, head, count) = lattice_max(&tables, |l1, l2| {
        let (prev, total, wn) = (w.cum(n - 1), w.total(), w.last());
        let ratio = total / prev;
        match (l1.is_finite(), l2.is_finite()) {
            (false, false) => 0.0,
            _ => {
                let t1 = (prev / total).ln() + ratio * l1;
                let t2 = (wn / total).ln() + ratio * l2;
                let hi = t1.max(t2);
                let ln_g = hi + ((t1 - hi).exp() + (t2 - hi).exp()).ln();
                (ln_g / ratio).exp()
            }
        }
    });
    let head_point = YPoint::new(w, head)?;
    let elim = eliminate_last(w, &head_point)?;
    let mut point = head_point.coords().to_vec();
    point.push(elim.y_star);
    Ok(SearchResult {
        best_value: best_idx_value,
        best_point: SearchPoint::Y(point),
        trials_run: count,
        seed: None,
        confirmed_violation: false,
    })
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Multistart coordinate ascent of `F` over the closed box, for dimensions
/// beyond the lattice guard. Trial 0 starts from `(1, ..., 1)`; the others
/// from uniform points of the padded box. Each pass tries `y_j +- step * U_j`
/// per coordinate, then halves the step.
pub fn multistart_max_f(w: &WeightSequence, config: &SearchConfig) -> Result<SearchResult> {
    let n = w.require_len("multistart_max_f", 2)?;
    config.validate()?;
    let dims = n - 1;
    let uppers: Vec<f64> = (1..=dims).map(|i| box_upper(w, i)).collect();
    let eval = |y: &[f64]| -> f64 {
        YPoint::new(w, y.to_vec())
            .and_then(|p| objective_f(w, &p))
            .unwrap_or(f64::NEG_INFINITY)
    };

    let outcomes: Vec<(f64, Vec<f64>)> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(config.seed, t);
            let mut y: Vec<f64> = if t == 0 {
                vec![1.0; dims]
            } else {
                uppers
                    .iter()
                    .map(|&u| {
                        let lo = config.box_padding * u;
                        let hi = (1.0 - config.box_padding) * u;
                        rng.random_range(lo..hi)
                    })
                    .collect()
            };
            let mut value = eval(&y);
            let mut step = 0.25;
            for _ in 0..config.local_steps {
                for j in 0..dims {
                    for dir in [1.0, -1.0] {
                        let mut trial = y.clone();
                        trial[j] = (y[j] + dir * step * uppers[j]).clamp(0.0, uppers[j]);
                        let v = eval(&trial);
                        if v > value {
                            value = v;
                            y = trial;
                        }
                    }
                }
                step *= 0.5;
            }
            (value, y)
        })
        .collect();

    let (best, idx) = outcomes
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (*v, i))
        .fold((f64::NEG_INFINITY, usize::MAX), pick_max);
    Ok(SearchResult {
        best_value: best,
        best_point: SearchPoint::Y(outcomes[idx].1.clone()),
        trials_run: config.trials,
        seed: Some(config.seed),
        confirmed_violation: false,
    })
}

/// Neumaier-compensated sum, taken in the order given.
fn compensated_sum<I: Iterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Direct O(n^2) evaluation of the top-level Rado increment with every sum
/// compensated and taken in reverse order. Shares no code with
/// [`rado_profile`], so it serves as an independent re-check.
fn reference_rado_increment(w: &[f64], x: &[f64], s: f64) -> f64 {
    let mean = |weights: &[f64], data: &[f64], r: f64| -> f64 {
        let total = compensated_sum(weights.iter().rev().copied());
        if r == 0.0 {
            let ln = compensated_sum(weights.iter().zip(data).rev().map(|(a, b)| a * b.ln()));
            (ln / total).exp()
        } else {
            let acc = compensated_sum(weights.iter().zip(data).rev().map(|(a, b)| a * b.powf(r)));
            (acc / total).powf(1.0 / r)
        }
    };
    let level = |k: usize| -> f64 {
        if k == 1 {
            return 0.0;
        }
        let arith: Vec<f64> = (1..=k).map(|i| mean(&w[..i], &x[..i], 1.0)).collect();
        let s_means: Vec<f64> = (1..=k).map(|i| mean(&w[..i], &x[..i], s)).collect();
        let big = compensated_sum(w[..k].iter().rev().copied());
        big * (mean(&w[..k], &arith, s) - mean(&w[..k], &s_means, 1.0))
    };
    let n = w.len();
    level(n) - level(n - 1)
}

/// Orientation of the Rado inequality: `+1` when the increment should be
/// nonnegative (`s < 1`), `-1` when it should be nonpositive (`s > 1`).
pub fn rado_orientation(s: Exponent) -> f64 {
    if s.value() > 1.0 {
        -1.0
    } else {
        1.0
    }
}

/// Searches data space for violations of the level-`n` Rado inequality.
///
/// The maximized quantity is the oriented, scale-free shortfall
/// `-orientation * rado_increment(w, x, s, n) / (W_n max x)`; positive values
/// are violations. Starts are log-uniform on [`SAMPLE_RANGE`]; each pass of
/// the local refinement multiplies or divides one coordinate by
/// `2^(0.5^pass)` and keeps improvements. A best value above
/// [`CANDIDATE_TOL`] is re-evaluated independently and reported as a
/// violation only if it still exceeds [`CONFIRM_TOL`].
pub fn violation_search(
    w: &WeightSequence,
    s: Exponent,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let n = w.require_len("violation_search", 2)?;
    config.validate()?;
    let orientation = rado_orientation(s);
    let (lo, hi) = SAMPLE_RANGE;
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let total = w.total();

    let eval = |x: &[f64]| -> f64 {
        let sample = match SampleVector::new(x.to_vec()) {
            Ok(v) => v,
            Err(_) => return f64::NEG_INFINITY,
        };
        match rado_profile(w, &sample, s) {
            Ok(p) => -orientation * (p[n - 1] - p[n - 2]) / (total * sample.max()),
            Err(_) => f64::NEG_INFINITY,
        }
    };

    let outcomes: Vec<(f64, Vec<f64>)> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(config.seed, t);
            let mut ln_x: Vec<f64> = (0..n).map(|_| rng.random_range(ln_lo..ln_hi)).collect();
            let mut x: Vec<f64> = ln_x.iter().map(|v| v.exp()).collect();
            let mut value = eval(&x);
            let mut step = 2f64.ln();
            for _ in 0..config.local_steps {
                for j in 0..n {
                    for dir in [1.0, -1.0] {
                        let cand_ln = (ln_x[j] + dir * step).clamp(ln_lo, ln_hi);
                        let mut cand = x.clone();
                        cand[j] = cand_ln.exp();
                        let v = eval(&cand);
                        if v > value {
                            value = v;
                            x = cand;
                            ln_x[j] = cand_ln;
                        }
                    }
                }
                step *= 0.5;
            }
            (value, x)
        })
        .collect();

    let (best, idx) = outcomes
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (*v, i))
        .fold((f64::NEG_INFINITY, usize::MAX), pick_max);
    let best_x = outcomes[idx].1.clone();

    let confirmed = best > CANDIDATE_TOL && {
        let max_x = best_x.iter().copied().fold(f64::MIN, f64::max);
        let recheck = -orientation * reference_rado_increment(w.weights(), &best_x, s.value())
            / (total * max_x);
        recheck > CONFIRM_TOL
    };

    Ok(SearchResult {
        best_value: best,
        best_point: SearchPoint::X(best_x),
        trials_run: config.trials,
        seed: Some(config.seed),
        confirmed_violation: confirmed,
    })
}

/// Largest value of `F` found for `w`: the lattice when the box is small
/// enough, otherwise multistart.
pub fn numeric_max_f(
    w: &WeightSequence,
    resolution: Option<usize>,
    config: &SearchConfig,
) -> Result<SearchResult> {
    let dims = w.require_len("numeric_max_f", 2)? - 1;
    if dims <= MAX_GRID_DIM {
        grid_max_f(w, resolution.unwrap_or_else(|| auto_resolution(dims)))
    } else {
        multistart_max_f(w, config)
    }
}

/// One row of a weight scan. Absent entries are not defined for the row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub w_n: f64,
    pub holland_margin: f64,
    pub extended: Option<[f64; 4]>,
    pub boundary_bound: Option<f64>,
    pub interior_bound: Option<f64>,
    pub grid_max: f64,
}

impl ScanRow {
    pub fn holland_holds(&self) -> bool {
        self.holland_margin >= 0.0
    }

    pub fn extended_holds(&self) -> bool {
        self.extended.is_some_and(|m| {
            m[0] > crate::conditions::STRICT_TOL && m[1..].iter().all(|v| *v >= 0.0)
        })
    }
}

pub const SCAN_HEADER: &str =
    "w_n,holland_margin,ext_a,ext_b,ext_c,ext_d,boundary_bound,interior_bound,grid_max";

/// Sweeps the last weight over a geometric grid on `[lo, hi]` and tabulates
/// the conditions and the numerical maximum of `F` for each value. When the
/// critical weight lies inside the range it is added as an extra row.
pub fn weight_scan(
    head: &WeightSequence,
    range: (f64, f64),
    steps: usize,
    resolution: Option<usize>,
    config: &SearchConfig,
) -> Result<Vec<ScanRow>> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi >= lo) {
        return Err(Error::InvalidConfig(format!("invalid range {lo}:{hi}")));
    }
    if steps < 2 {
        return Err(Error::InvalidConfig("steps must be at least 2".into()));
    }
    let mut tails: Vec<f64> = (0..steps)
        .map(|j| {
            if j == steps - 1 {
                hi
            } else {
                lo * (hi / lo).powf(j as f64 / (steps - 1) as f64)
            }
        })
        .collect();
    if head.len() >= 2 {
        let crit = critical_weight(head)?;
        if (lo..=hi).contains(&crit) && !tails.contains(&crit) {
            tails.push(crit);
            tails.sort_by(f64::total_cmp);
        }
    }

    tails
        .into_iter()
        .map(|w_n| {
            let w = head.with_last(w_n)?;
            let holland_margin = holland_condition(&w)?.margins[0].value;
            let (extended, boundary, interior) = if w.len() >= 3 {
                let report = extended_conditions(&w)?;
                let m = [
                    report.margins[0].value,
                    report.margins[1].value,
                    report.margins[2].value,
                    report.margins[3].value,
                ];
                (Some(m), Some(boundary_bound(&w)?), interior_bound(&w).ok())
            } else {
                (None, None, None)
            };
            let grid_max = numeric_max_f(&w, resolution, config)?.best_value;
            Ok(ScanRow {
                w_n,
                holland_margin,
                extended,
                boundary_bound: boundary,
                interior_bound: interior,
                grid_max,
            })
        })
        .collect()
}

fn csv_field(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes rows as CSV under [`SCAN_HEADER`]; absent values are empty fields.
pub fn write_scan_csv<W: Write>(rows: &[ScanRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SCAN_HEADER}")?;
    for row in rows {
        let extended = row.extended.map_or([None; 4], |m| m.map(Some));
        let fields = [
            Some(row.w_n),
            Some(row.holland_margin),
            extended[0],
            extended[1],
            extended[2],
            extended[3],
            row.boundary_bound,
            row.interior_bound,
            Some(row.grid_max),
        ];
        let line: Vec<String> = fields.into_iter().map(csv_field).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
