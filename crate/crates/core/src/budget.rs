//! Per-thread cap on the number of states any product construction may
//! allocate.

use std::cell::Cell;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

thread_local! {
    static MAX_STATES: Cell<usize> = const { Cell::new(DEFAULT_MAX_STATES) };
}

/// Current state budget of the calling thread.
pub fn state_budget() -> usize {
    MAX_STATES.with(|c| c.get())
}

/// Runs `f` with the state budget temporarily set to `max_states`.
pub fn with_state_budget<R>(max_states: usize, f: impl FnOnce() -> R) -> R {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            MAX_STATES.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(MAX_STATES.with(|c| c.replace(max_states)));
    f()
}

pub(crate) fn check(count: usize, what: &str) -> Result<()> {
    let max = state_budget();
    if count > max {
        Err(Error::Resource(format!("{what} exceeded the state budget of {max}")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scoped_budget_is_restored() {
        assert_eq!(state_budget(), DEFAULT_MAX_STATES);
        with_state_budget(3, || {
            assert_eq!(state_budget(), 3);
            assert!(check(3, "x").is_ok());
            assert!(matches!(check(4, "x"), Err(Error::Resource(_))));
        });
        assert_eq!(state_budget(), DEFAULT_MAX_STATES);
    }
}
