//! Chooses how the mixed arithmetic-geometric mean inequality is established
//! for a weight sequence: Holland's condition, the extended conditions, or
//! numerical evidence from maximizing the reduced objective.

use serde::{Deserialize, Serialize};

use crate::conditions::{extended_conditions, holland_condition, ConditionReport};
use crate::error::Result;
use crate::means::WeightSequence;
use crate::reduction::{boundary_bound, interior_bound};
use crate::search::{numeric_max_f, SearchConfig, SearchPoint};

/// A numerical maximum of `F` above `1 + REFUTATION_TOL` refutes the inequality.
pub const REFUTATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Holland,
    Extended,
    NumericOnly,
    RefutedNumeric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericMax {
    pub value: f64,
    pub argmax: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub route: Route,
    pub reports: Vec<ConditionReport>,
    pub numeric_max: Option<NumericMax>,
    /// Dimensionless room left: `-e` on the Holland route, the smaller of the
    /// two bound margins on the extended route, `1 - max F` otherwise.
    pub slack: f64,
}

impl Certificate {
    /// Whether the inequality is established (by a theorem or by evidence).
    pub fn holds(&self) -> bool {
        self.route != Route::RefutedNumeric
    }
}

/// Runs the case analysis. `resolution` is the per-axis lattice size for
/// boxes of dimension up to four (automatic when `None`); larger boxes fall
/// back to multistart with `config`.
pub fn certify(
    w: &WeightSequence,
    resolution: Option<usize>,
    config: &SearchConfig,
) -> Result<Certificate> {
    let n = w.require_len("certify", 2)?;
    let holland = holland_condition(w)?;
    let mut reports = vec![holland.clone()];

    if holland.holds {
        let prev = w.cum(n - 1);
        let slack = if n >= 3 {
            1.0 - w.last() * w.cum2(n - 2) / (prev * prev)
        } else {
            1.0
        };
        return Ok(Certificate {
            route: Route::Holland,
            reports,
            numeric_max: None,
            slack,
        });
    }

    // Holland's condition always holds for n = 2, so n >= 3 from here.
    let extended = extended_conditions(w)?;
    reports.push(extended.clone());
    if extended.holds {
        let bound = boundary_bound(w)?.max(interior_bound(w)?);
        return Ok(Certificate {
            route: Route::Extended,
            reports,
            numeric_max: None,
            slack: 1.0 - bound,
        });
    }

    let found = numeric_max_f(w, resolution, config)?;
    let argmax = match found.best_point {
        SearchPoint::Y(y) | SearchPoint::X(y) => y,
    };
    let route = if found.best_value > 1.0 + REFUTATION_TOL {
        Route::RefutedNumeric
    } else {
        Route::NumericOnly
    };
    Ok(Certificate {
        route,
        reports,
        numeric_max: Some(NumericMax {
            value: found.best_value,
            argmax,
        }),
        slack: 1.0 - found.best_value,
    })
}
