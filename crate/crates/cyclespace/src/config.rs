use crate::error::Error;

/// Environment variable overriding the vertex budget.
pub const MAX_VERTICES_ENV: &str = "CYCLESPACE_MAX_VERTICES";

/// Default cap on m^N for dense spectral work.
pub const DEFAULT_MAX_VERTICES: u128 = 100_000;

/// Vertex-count budget for table construction and dense linear algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_vertices: DEFAULT_MAX_VERTICES }
    }
}

impl Budget {
    /// Default budget, with the environment override applied when set.
    pub fn from_env() -> Result<Self, Error> {
        match std::env::var(MAX_VERTICES_ENV) {
            Ok(s) => {
                let v: u128 = s.trim().parse().map_err(|_| {
                    Error::BadConfig(format!("{MAX_VERTICES_ENV} must be an integer, got {s:?}"))
                })?;
                Ok(Budget { max_vertices: v })
            }
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn check(&self, needed: u128) -> Result<(), Error> {
        if needed > self.max_vertices {
            Err(Error::BudgetExceeded { needed, budget: self.max_vertices })
        } else {
            Ok(())
        }
    }
}

/// Floating-point tolerances for the spectral and limiting pipeline.
/// Exact integer/rational checks never consult these.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Unitarity of the Fourier matrix, max-entry.
    pub unitarity: f64,
    /// Diagonalization of the adjacency matrix by the Fourier basis, max-entry.
    pub diagonalization: f64,
    /// Projection law and Hermiticity of the spectral truncation, max-entry.
    pub projection: f64,
    /// Grouping of nearby eigenvalues into clusters.
    pub cluster_tol: f64,
    /// Relative threshold below which a block restriction counts as zero.
    pub zero_tol: f64,
    /// Residual bound when rounding a Rayleigh quotient to an integer.
    pub rayleigh_residual: f64,
    /// Agreement between the Hermitian eigenvalue route and the singular
    /// value route, and trace bookkeeping.
    pub spectrum_agreement: f64,
    /// Rank/span membership tests on eigenvectors against invariant spaces.
    pub span_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity: 1e-12,
            diagonalization: 1e-10,
            projection: 1e-10,
            cluster_tol: 1e-8,
            zero_tol: 1e-9,
            rayleigh_residual: 1e-6,
            spectrum_agreement: 1e-8,
            span_residual: 1e-8,
        }
    }
}

/// Fixed 12-significant-digit float formatting used by every text output.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_check() {
        let b = Budget::default();
        assert!(b.check(625).is_ok());
        assert!(matches!(b.check(100_001), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn float_format_is_fixed_width_12_digits() {
        assert_eq!(fmt_float(1.0), "1.00000000000e0");
        assert_eq!(fmt_float(0.5), "5.00000000000e-1");
    }
}
