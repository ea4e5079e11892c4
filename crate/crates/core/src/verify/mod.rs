//! Numerical checks of the closed-form kernels: finite-difference
//! kinematics, field-equation and equilibrium residuals, surface balance
//! integrals and comparison of the special functions with a stored
//! high-precision table.

pub mod balance;
pub mod checks;
pub mod fd;
pub mod oracle;
pub mod quadrature;
pub mod suite;

use std::fmt;

pub use balance::{balance_integrals, Resultants};
pub use checks::{equilibrium_residuals, EquilibriumResidual};
pub use fd::{
    derivatives, fd_gradient, kinematics_of, kinematics_of_2d, pde_residual, Derivatives, FdScheme,
    PdeResidual, StepRule,
};
pub use quadrature::{QuadratureKind, QuadratureSpec};
pub use suite::{run_all, SuiteOptions};

/// The four kernel families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Force3D,
    Couple3D,
    Force2D,
    Couple2D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Force3D, Family::Couple3D, Family::Force2D, Family::Couple2D];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Force3D => "force3d",
            Family::Couple3D => "couple3d",
            Family::Force2D => "force2d",
            Family::Couple2D => "couple2d",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Family::Force3D | Family::Couple3D => 3,
            Family::Force2D | Family::Couple2D => 2,
        }
    }

    pub fn is_couple(&self) -> bool {
        matches!(self, Family::Couple3D | Family::Couple2D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Worst-case error of a check over a sample, with per-point values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub max_rel: f64,
    pub per_point: Vec<f64>,
}

impl ResidualReport {
    pub fn push(&mut self, abs: f64, rel: f64) {
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
        self.per_point.push(rel);
    }

    pub fn merge(&mut self, other: &ResidualReport) {
        self.max_abs = self.max_abs.max(other.max_abs);
        self.max_rel = self.max_rel.max(other.max_rel);
        self.per_point.extend_from_slice(&other.per_point);
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub max_rel: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, max_rel: f64, threshold: f64) -> Self {
        let passed = max_rel.is_finite() && max_rel <= threshold;
        Self { name: name.into(), max_rel, threshold, passed }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:.3e} {:.1e} {}",
            self.name,
            self.max_rel,
            self.threshold,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}
