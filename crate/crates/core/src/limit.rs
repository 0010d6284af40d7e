//! Work budget for exhaustive checks and searches.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Environment variable overriding [`WorkLimit::DEFAULT`].
pub const WORK_LIMIT_ENV: &str = "YBMESH_WORK_LIMIT";

/// Upper bound on the number of elementary table lookups an operation may spend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkLimit(pub u64);

impl WorkLimit {
    pub const DEFAULT: WorkLimit = WorkLimit(1_000_000_000);

    /// Reads [`WORK_LIMIT_ENV`], falling back to the default when unset or unparsable.
    pub fn from_env() -> WorkLimit {
        std::env::var(WORK_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(WorkLimit)
            .unwrap_or(WorkLimit::DEFAULT)
    }

    pub fn check(self, cost: u64) -> Result<()> {
        if cost > self.0 {
            Err(Error::WorkLimitExceeded { limit: self.0 })
        } else {
            Ok(())
        }
    }

    pub fn meter(self) -> Meter {
        Meter { limit: self.0, used: 0 }
    }
}

impl Default for WorkLimit {
    fn default() -> Self {
        WorkLimit::DEFAULT
    }
}

/// Running counter against a [`WorkLimit`].
#[derive(Debug)]
pub struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    #[inline]
    pub fn spend(&mut self, cost: u64) -> Result<()> {
        self.used = self.used.saturating_add(cost);
        if self.used > self.limit {
            Err(Error::WorkLimitExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// A [`Meter`] that can be shared between threads.
#[derive(Debug)]
pub struct SharedMeter {
    limit: u64,
    used: AtomicU64,
}

impl SharedMeter {
    pub fn new(limit: WorkLimit) -> Self {
        SharedMeter { limit: limit.0, used: AtomicU64::new(0) }
    }

    pub fn spend(&self, cost: u64) -> Result<()> {
        let used = self.used.fetch_add(cost, Ordering::Relaxed).saturating_add(cost);
        if used > self.limit {
            Err(Error::WorkLimitExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}
