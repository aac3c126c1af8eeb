use std::fmt;

use num_traits::{Signed, Zero};

use super::discriminant::discriminant_form;
use crate::error::Result;
use crate::exact_linalg::{determinant, inertia, IntegerMatrix};
use crate::metric_groups::{central_charge_gauss, is_isomorphic, Isometry, MetricGroup};
use crate::Budget;

/// One named check of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name, passed, detail: detail.into() }
    }
}

/// Outcome of [`verify_realization`].
#[derive(Clone, Debug)]
pub struct RealizationReport {
    pub checks: Vec<Check>,
    pub signature: i64,
    /// Central charge of the target, mod 8.
    pub central_charge: u8,
    pub witness: Option<Isometry>,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for RealizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<12} {}  {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail)?;
        }
        write!(f, "verdict      {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Checks that `gram` is an even lattice whose discriminant form is `target`.
pub fn verify_realization(gram: &IntegerMatrix, target: &MetricGroup, budget: &Budget) -> Result<RealizationReport> {
    gram.require_symmetric()?;
    let mut checks = Vec::new();
    let c = central_charge_gauss(target, budget.gauss)?;
    let inert = inertia(gram)?;
    let signature = inert.signature();
    let even = gram.first_odd_diagonal();
    checks.push(Check::new(
        "even",
        even.is_none(),
        even.map_or("all diagonal entries even".into(), |i| format!("odd diagonal at {i}")),
    ));
    let det = determinant(gram)?;
    checks.push(Check::new("determinant", det.abs() == target.order().into(), format!("|det| = {}, |A| = {}", det.abs(), target.order())));
    checks.push(Check::new(
        "signature",
        signature.rem_euclid(8) == i64::from(c),
        format!("inertia ({}, {}, {}), signature {signature}, c = {c} mod 8", inert.positive, inert.negative, inert.zero),
    ));
    let mut witness = None;
    if even.is_none() && !det.is_zero() {
        let disc = discriminant_form(gram)?;
        witness = is_isomorphic(disc.metric_group(), target, budget.group)?;
        checks.push(Check::new(
            "isometry",
            witness.is_some(),
            if witness.is_some() { "discriminant form matches".to_string() } else { format!("{} vs {}", disc.metric_group(), target) },
        ));
    } else {
        checks.push(Check::new("isometry", false, "discriminant form undefined"));
    }
    Ok(RealizationReport { checks, signature, central_charge: c, witness })
}
