use std::cell::Cell;

use crate::error::{Error, Result};

/// Step counter shared by the completion loops (Hilbert search, Buchberger).
///
/// A budget is confined to one thread; it only counts, it never sleeps or
/// measures time, so exhaustion is deterministic for a given input.
#[derive(Debug, Default)]
pub struct Budget {
    limit: Option<u64>,
    used: Cell<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            limit: None,
            used: Cell::new(0),
        }
    }

    pub fn with_limit(limit: u64) -> Self {
        Budget {
            limit: Some(limit),
            used: Cell::new(0),
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn spend(&self, steps: u64) -> Result<()> {
        let used = self.used.get().saturating_add(steps);
        self.used.set(used);
        match self.limit {
            Some(limit) if used > limit => Err(Error::BudgetExceeded(limit)),
            _ => Ok(()),
        }
    }

    pub fn tick(&self) -> Result<()> {
        self.spend(1)
    }
}
