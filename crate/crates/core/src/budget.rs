use serde::Serialize;
use thiserror::Error;

/// Upper bound on the number of search nodes an exponential routine may
/// expand. `Budget::UNLIMITED` never trips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget(Option<u64>);

impl Budget {
    pub const UNLIMITED: Budget = Budget(None);

    pub const fn nodes(limit: u64) -> Budget {
        Budget(Some(limit))
    }

    pub const fn limit(self) -> Option<u64> {
        self.0
    }

    pub(crate) fn meter(self) -> Meter {
        Meter {
            used: 0,
            limit: self.0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::UNLIMITED
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {limit} nodes exhausted")]
pub struct BudgetExceeded {
    pub limit: u64,
}

#[derive(Debug)]
pub(crate) struct Meter {
    used: u64,
    limit: Option<u64>,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.used += 1;
        match self.limit {
            Some(limit) if self.used > limit => Err(BudgetExceeded { limit }),
            _ => Ok(()),
        }
    }
}

/// Three-valued search result: a budget trip is never reported as absence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, SearchOutcome::BudgetExceeded)
    }

    pub fn as_ref(&self) -> SearchOutcome<&T> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(t),
            SearchOutcome::NotFound => SearchOutcome::NotFound,
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
        }
    }

    /// `found`, `none` or `budget`.
    pub fn verdict(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::NotFound => "none",
            SearchOutcome::BudgetExceeded => "budget",
        }
    }
}

impl<T> From<Result<Option<T>, BudgetExceeded>> for SearchOutcome<T> {
    fn from(r: Result<Option<T>, BudgetExceeded>) -> Self {
        match r {
            Ok(Some(t)) => SearchOutcome::Found(t),
            Ok(None) => SearchOutcome::NotFound,
            Err(_) => SearchOutcome::BudgetExceeded,
        }
    }
}
