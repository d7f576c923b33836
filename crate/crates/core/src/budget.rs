use crate::error::{Error, Result};

/// Environment variable overriding [`Budget::basis_limit`].
pub const BUDGET_ENV: &str = "LCSCOHOM_BUDGET";

/// Resource limits for the dense linear algebra and the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of basis tuples `|A|^k` in a single cochain degree.
    pub basis_limit: u128,
    /// Maximum size `|Γ|^|A|` of a θ-search space.
    pub theta_limit: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            basis_limit: 20_000,
            theta_limit: 1 << 20,
        }
    }
}

impl Budget {
    /// Default budget with the basis limit taken from `LCSCOHOM_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            budget.basis_limit = raw.trim().parse().map_err(|_| {
                Error::Parameter(format!("{BUDGET_ENV} must be a non-negative integer, got `{raw}`"))
            })?;
        }
        Ok(budget)
    }

    pub fn with_basis_limit(mut self, limit: u128) -> Self {
        self.basis_limit = limit;
        self
    }

    /// Total free rank limit for a full-complex degree (three blocks' worth).
    pub fn total_limit(&self) -> u128 {
        self.basis_limit.saturating_mul(3)
    }

    pub(crate) fn check_basis(&self, order: usize, degree: usize) -> Result<()> {
        let needed = pow_u128(order as u128, degree);
        if needed > self.basis_limit {
            return Err(Error::Budget {
                what: format!("|A|^{degree} with |A| = {order}"),
                needed,
                limit: self.basis_limit,
                hint: "",
            });
        }
        Ok(())
    }

    pub(crate) fn check_total(&self, what: String, needed: u128) -> Result<()> {
        if needed > self.total_limit() {
            return Err(Error::Budget {
                what,
                needed,
                limit: self.total_limit(),
                hint: "",
            });
        }
        Ok(())
    }

    pub(crate) fn check_theta(&self, coeff_order: u64, base_order: usize) -> Result<u128> {
        let needed = pow_u128(coeff_order as u128, base_order);
        if needed > self.theta_limit {
            return Err(Error::Budget {
                what: format!("|Γ|^|A| = {coeff_order}^{base_order}"),
                needed,
                limit: self.theta_limit,
                hint: "; compare the classes in H² through the cohomological solver instead",
            });
        }
        Ok(needed)
    }
}

pub(crate) fn pow_u128(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}
