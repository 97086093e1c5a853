use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::properties::{check_properties, Property, PropertyMode, PropertyVerdict};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::posa::{is_connected, is_expander, is_weak_expander, ExpanderMode, ExpanderReport, ExpanderVerdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ImplicationReport {
    pub weak: bool,
    pub min_degree: usize,
    pub min_degree_required: usize,
    /// P3, P4 and P5 on `H`, P7 on `Γ₀`.
    pub hypotheses: BTreeMap<Property, PropertyVerdict>,
    pub hypotheses_hold: bool,
    /// True when a hypothesis passed only on samples.
    pub hypotheses_sampled: bool,
    pub connected: bool,
    pub expansion: ExpanderReport,
    pub conclusion_holds: bool,
    /// Hypotheses hold but the conclusion fails.
    pub critical: bool,
}

/// Evaluates both sides of the implication "minimum degree of `Γ₀` at least
/// 2 (1 when `weak`), P3, P4, P5 and P7 imply that `Γ₀` is connected and an
/// `(n/4, 2)`-expander (weak `(n/4, r-1)`-expander when `weak`)". P6 is not
/// among the hypotheses. `n/4` is rounded down.
pub fn implication_check(
    h: &Hypergraph,
    gamma0: &Hypergraph,
    epsilon: f64,
    mode: PropertyMode,
    weak: bool,
) -> Result<ImplicationReport> {
    if gamma0.edges().any(|(_, e)| h.find_edge(e).is_none()) {
        return Err(Error::ParameterOutOfRange("gamma0 is not a sub-hypergraph of H".into()));
    }
    let report = check_properties(
        h,
        Some(gamma0),
        epsilon,
        mode,
        &[Property::P3, Property::P4, Property::P5, Property::P7],
    )?;
    let min_degree_required = if weak { 1 } else { 2 };
    let min_degree = gamma0.min_degree();
    let hypotheses_hold = min_degree >= min_degree_required && report.results.values().all(|v| !v.is_fail());
    let hypotheses_sampled = report
        .results
        .values()
        .any(|v| matches!(v, PropertyVerdict::SampledPass { .. }));

    let k = gamma0.n() / 4;
    let expansion = if weak {
        is_weak_expander(gamma0, k, (gamma0.r() - 1) as f64)?
    } else {
        is_expander(gamma0, k, 2.0, ExpanderMode::Exact)?
    };
    let connected = is_connected(gamma0);
    let conclusion_holds = connected && expansion.verdict == ExpanderVerdict::Expander;
    Ok(ImplicationReport {
        weak,
        min_degree,
        min_degree_required,
        hypotheses: report.results,
        hypotheses_hold,
        hypotheses_sampled,
        connected,
        expansion,
        conclusion_holds,
        critical: hypotheses_hold && !conclusion_holds,
    })
}
