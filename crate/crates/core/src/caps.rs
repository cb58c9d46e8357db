//! Size limits for the exponential oracles.
//!
//! Every operation whose cost is exponential in some instance parameter
//! checks one of these caps and refuses with an error when it is exceeded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable read by [`Caps::from_env`].
pub const CAPS_ENV: &str = "OBDD_LAB_CAPS";

pub const DEFAULT_ORACLE_CAP: usize = 24;
pub const DEFAULT_SUBSET_DP_CAP: usize = 22;
pub const DEFAULT_EXACT_ORDER_CAP: usize = 14;
pub const DEFAULT_OBDD_NODES_CAP: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Maximum number of variables of a truth table.
    pub oracle: usize,
    /// Maximum number of vertices (or variables) of a subset DP.
    pub subset_dp: usize,
    /// Maximum number of variables for exact minimum-OBDD search.
    pub exact_order: usize,
    /// Maximum number of nodes created while compiling one OBDD.
    pub obdd_nodes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            oracle: DEFAULT_ORACLE_CAP,
            subset_dp: DEFAULT_SUBSET_DP_CAP,
            exact_order: DEFAULT_EXACT_ORDER_CAP,
            obdd_nodes: DEFAULT_OBDD_NODES_CAP,
        }
    }
}

impl Caps {
    /// Defaults overridden by `OBDD_LAB_CAPS`, e.g. `oracle=20,subset_dp=18`.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Caps> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("cap override `{item}`")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("cap value `{value}`")))?;
            match key.trim() {
                "oracle" => self.oracle = value,
                "subset_dp" => self.subset_dp = value,
                "exact_order" => self.exact_order = value,
                "obdd_nodes" => self.obdd_nodes = value,
                other => return Err(Error::InvalidParameter(format!("unknown cap `{other}`"))),
            }
        }
        self.check()?;
        Ok(self)
    }

    pub fn check(&self) -> Result<()> {
        // Subset DPs index with u64 masks and truth tables with usize indices.
        if self.oracle == 0 || self.subset_dp == 0 || self.exact_order == 0 || self.obdd_nodes == 0 {
            return Err(Error::InvalidParameter("caps must be positive".into()));
        }
        if self.oracle > 40 || self.subset_dp > 40 || self.exact_order > 40 {
            return Err(Error::InvalidParameter("caps above 40 are not addressable".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let caps = Caps::default()
            .with_overrides("oracle=12, exact_order=9, obdd_nodes=1000")
            .unwrap();
        assert_eq!(caps.oracle, 12);
        assert_eq!(caps.obdd_nodes, 1000);
        assert_eq!(caps.subset_dp, DEFAULT_SUBSET_DP_CAP);
        assert_eq!(caps.exact_order, 9);
    }

    #[test]
    fn zero_and_unknown_caps_rejected() {
        assert!(Caps::default().with_overrides("oracle=0").is_err());
        assert!(Caps::default().with_overrides("bogus=3").is_err());
        assert!(Caps::default().with_overrides("oracle").is_err());
    }
}
