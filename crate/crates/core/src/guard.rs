use crate::error::{Error, Result};

/// Most operations in the crate have cost growing like d! or worse.
/// `SizeGuards` centralizes the limits that protect against accidental
/// huge runs.  Limits may be raised explicitly; nothing is ever
/// truncated silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeGuards {
    /// Degree cap for the dynamic-programming counters.
    pub max_dp_degree: usize,
    /// Degree cap for exhaustive walk enumeration.
    pub max_brute_degree: usize,
    /// Step cap for exhaustive walk enumeration.
    pub max_brute_steps: usize,
    /// Step cap for sorting-orbit exploration.
    pub max_orbit_steps: usize,
    /// Genus cap for tables and series.
    pub max_genus: usize,
    /// Degree cap for Cayley-graph export.
    pub max_cayley_degree: usize,
}

/// The permutation DP packs state into fixed-width arrays; this is the
/// absolute ceiling past which no override helps.
pub const DP_DEGREE_CEILING: usize = 8;

impl Default for SizeGuards {
    fn default() -> Self {
        SizeGuards {
            max_dp_degree: 6,
            max_brute_degree: 4,
            max_brute_steps: 8,
            max_orbit_steps: 8,
            max_genus: 3,
            max_cayley_degree: 6,
        }
    }
}

impl SizeGuards {
    pub fn check(&self, what: &'static str, value: usize, limit: usize) -> Result<()> {
        if value > limit {
            Err(Error::GuardExceeded { what, value, limit })
        } else {
            Ok(())
        }
    }

    pub fn check_dp_degree(&self, d: usize) -> Result<()> {
        if d > DP_DEGREE_CEILING {
            return Err(Error::GuardExceeded {
                what: "dp degree (hard ceiling)",
                value: d,
                limit: DP_DEGREE_CEILING,
            });
        }
        self.check("dp degree", d, self.max_dp_degree)
    }

    pub fn check_brute_degree(&self, d: usize) -> Result<()> {
        self.check("brute-force degree", d, self.max_brute_degree)
    }

    pub fn check_brute_steps(&self, r: usize) -> Result<()> {
        self.check("brute-force steps", r, self.max_brute_steps)
    }

    pub fn check_orbit_steps(&self, r: usize) -> Result<()> {
        self.check("orbit steps", r, self.max_orbit_steps)
    }

    pub fn check_genus(&self, g: usize) -> Result<()> {
        self.check("genus", g, self.max_genus)
    }

    pub fn check_cayley_degree(&self, d: usize) -> Result<()> {
        self.check("cayley degree", d, self.max_cayley_degree)
    }
}
