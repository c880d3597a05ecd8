use std::sync::Arc;

use crate::computad::Computad;
use crate::error::Result;
use crate::homs::{count_homs, SearchBudget};
use crate::par::{self, Strategy};

use super::generate::generate_computads_with;
use super::up::OracleConfig;

/// The first generated computad receiving exactly one morphism from every
/// generated computad. Terminality is relative to the bounded family only.
pub fn find_terminal(config: &OracleConfig) -> Result<Option<Arc<Computad>>> {
    let family = generate_computads_with(config.bounds, config.strategy);
    find_terminal_among(&family, &family, config.budget, config.strategy)
}

/// The first of `candidates` with exactly one morphism from each of `tests`.
pub fn find_terminal_among(
    candidates: &[Arc<Computad>],
    tests: &[Arc<Computad>],
    budget: SearchBudget,
    strategy: Strategy,
) -> Result<Option<Arc<Computad>>> {
    let verdicts = par::map(strategy, candidates, |t| -> Result<bool> {
        for y in tests {
            if count_homs(y, t, budget)? != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    });
    for (t, verdict) in candidates.iter().zip(verdicts) {
        if verdict? {
            return Ok(Some(t.clone()));
        }
    }
    Ok(None)
}
