//! Checkers for the component-size inequalities.
//!
//! Every comparison is exact: counts are integers and parameters such as
//! `p` and `eps` are rationals, so equality cases never depend on rounding.

mod bounds;
mod checks;
pub mod suite;

pub use bounds::{
    verdict_bounds, BoundVerdict, Threshold, VerdictContext, CONJECTURED, MIN_DEGREE_DENSE,
    MIN_DEGREE_THREE_COLOR, PROVEN, VERTEX_COMPLETE, VERTEX_RANDOM,
};
pub use checks::{
    check_component_density, check_degree_bound, check_density_control, check_pair_inequality,
    check_sparse_component_density, check_sparse_pair_inequality, largest_component, HostSpec,
};

use serde::Serialize;

use crate::ratio::Rational;

/// Result of one inequality check: `holds` iff `lhs >= rhs` (or `lhs > rhs`
/// for strict checks). A vacuous outcome means the check's trigger condition
/// did not fire; it counts as holding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub holds: bool,
    pub vacuous: bool,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub rhs: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub margin: Rational,
    pub context: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// The component that certifies a component-density check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub edges: u64,
    pub vertices: usize,
    pub min_vertex: usize,
}

impl CheckOutcome {
    pub(crate) fn at_least(
        check: &'static str,
        lhs: Rational,
        rhs: Rational,
        context: String,
    ) -> Self {
        Self {
            check,
            holds: lhs >= rhs,
            vacuous: false,
            margin: lhs - rhs,
            lhs,
            rhs,
            context,
            witness: None,
        }
    }

    pub(crate) fn greater(
        check: &'static str,
        lhs: Rational,
        rhs: Rational,
        context: String,
    ) -> Self {
        Self {
            holds: lhs > rhs,
            ..Self::at_least(check, lhs, rhs, context)
        }
    }

    pub(crate) fn vacuous(
        check: &'static str,
        lhs: Rational,
        rhs: Rational,
        context: String,
    ) -> Self {
        Self {
            holds: true,
            vacuous: true,
            ..Self::at_least(check, lhs, rhs, context)
        }
    }

    pub(crate) fn with_witness(mut self, witness: Option<Witness>) -> Self {
        self.witness = witness;
        self
    }
}

/// Tolerance and density parameters of the sparse-random checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EpsilonParams {
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub eps: Rational,
    /// density floor for the pair inequality, `e_M(S, T) >= c n^2`
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub c: Rational,
    /// average-degree floor, `d(H) >= c0 p (n - 1)`
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub c0: Rational,
    #[serde(serialize_with = "crate::ratio::serialize")]
    pub p: Rational,
}

impl EpsilonParams {
    pub fn validate(&self) -> crate::Result<()> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        for (name, v) in [
            ("eps", self.eps),
            ("c", self.c),
            ("c0", self.c0),
            ("p", self.p),
        ] {
            if v <= zero || v > one || (name != "p" && v == one) {
                return Err(crate::Error::Domain(format!("{name} = {v} outside (0, 1)")));
            }
        }
        Ok(())
    }
}
