//! Enumeration and expansion caps.
//!
//! Exhaustive state enumeration is exponential in the event count, cut-set
//! inclusion-exclusion in the cut count, and cut-set expansion can blow up on
//! pathological trees; the caps keep each of them at desk scale. The event
//! cap can be overridden through the `FTCRIT_MAX_EVENTS` environment
//! variable.

/// Default cap on events for the enumerating operations (2^24 ≈ 16.7M
/// states).
pub const DEFAULT_MAX_EVENTS: usize = 24;

/// Default cap on cut count for inclusion-exclusion (2^25 ≈ 33.5M subsets).
pub const DEFAULT_MAX_CUTS: usize = 25;

/// Default bound on intermediate cut counts during expansion.
pub const DEFAULT_MAX_EXPANSION_CUTS: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_EVENTS`].
pub const MAX_EVENTS_ENV: &str = "FTCRIT_MAX_EVENTS";

/// The configured event cap: `FTCRIT_MAX_EVENTS` when set to a valid number,
/// [`DEFAULT_MAX_EVENTS`] otherwise. Hard ceiling of 63 so enumeration masks
/// fit one machine word; counts anywhere near it are unenumerable anyway.
pub fn max_events() -> usize {
    std::env::var(MAX_EVENTS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_EVENTS)
        .min(63)
}
