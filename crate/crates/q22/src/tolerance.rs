//! Global tolerance policy.
//!
//! Every approximate predicate in the crate routes through a [`Tolerance`],
//! so the thresholds can be tightened or loosened in one place (or via the
//! `Q22_TOL` environment variable on the CLI side).

/// Thresholds used by the approximate predicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Absolute tolerance for equality tests, applied after normalization.
    pub eq_abs: f64,
    /// Threshold for declaring a discriminant (or incidence determinant) zero.
    pub disc_zero: f64,
    /// Tolerance for circle-parameter matching (containment tests).
    pub containment: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eq_abs: 1e-9,
            disc_zero: 1e-8,
            containment: 1e-8,
        }
    }
}

impl Tolerance {
    /// Tolerance with `eq_abs` overridden, the other fields scaled to keep
    /// their default ratios to `eq_abs`.
    pub fn with_eq_abs(eq_abs: f64) -> Self {
        assert!(eq_abs > 0.0, "tolerances must be strictly positive");
        Tolerance {
            eq_abs,
            disc_zero: eq_abs * 10.0,
            containment: eq_abs * 10.0,
        }
    }

    pub fn validate(&self) -> bool {
        self.eq_abs > 0.0 && self.disc_zero > 0.0 && self.containment > 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_positive() {
        let tol = Tolerance::default();
        assert!(tol.validate());
        assert_eq!(tol.eq_abs, 1e-9);
        assert_eq!(tol.disc_zero, 1e-8);
        assert_eq!(tol.containment, 1e-8);
    }

    #[test]
    fn override_keeps_ratios() {
        let tol = Tolerance::with_eq_abs(1e-12);
        assert!(tol.validate());
        assert_eq!(tol.disc_zero, 1e-11);
    }
}
