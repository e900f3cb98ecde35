//! Size caps. Group sums and permanents grow like n!, so every entry point
//! checks n against a cap that defaults to 8 and may be raised through the
//! `SYMMOD_MAX_N` environment variable.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_N: usize = 8;
pub const MAX_N_ENV: &str = "SYMMOD_MAX_N";

pub fn max_n() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

pub fn check_n(n: usize) -> Result<()> {
    let cap = max_n();
    if n > cap {
        return Err(Error::limit("n", n, cap));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    Ok(())
}
