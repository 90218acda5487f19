//! Size budget for ambient tensor spaces.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest dimension of a single ambient space that will be materialized.
pub const DEFAULT_MAX_DIM: u64 = 20_000;

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "HOOKSCHUR_MAX_DIM";

/// The effective size limit. Read once per process.
pub fn max_dim() -> u64 {
    static LIMIT: OnceLock<u64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_DIM)
    })
}

pub(crate) fn check_dim(dim: u64) -> Result<()> {
    let limit = max_dim();
    if dim > limit {
        return Err(Error::SizeLimit { dim, limit });
    }
    Ok(())
}
