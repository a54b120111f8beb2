//! Cooperative wall-clock budget shared by the long-running attack loops.

use std::time::{Duration, Instant};

/// Optional deadline polled at loop boundaries. Step-style limits (iteration
/// caps, subset budgets) are the primary, deterministic bound; the deadline is
/// a safety net so no single attack can hang an experiment.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn with_timeout(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
        }
    }

    #[inline]
    pub fn exceeded(&self) -> bool {
        match self.deadline {
            Some(d) => Instant::now() >= d,
            None => false,
        }
    }
}
