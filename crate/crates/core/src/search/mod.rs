//! Exhaustive and branch-and-bound searches over families of ordered graphs:
//! the shadow inequality, its refinements within types, the small-excess
//! lemmas, and the open questions that can be probed at small `n`.

mod calc;
mod engine;
mod lemmas;
mod shadow;
mod types;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::NamedFamily;
use crate::family::GraphFamily;
use crate::graph::OrderedGraph;

pub use calc::{check_obs_calc, ObsCalcQuery};
pub use lemmas::{run_lemma, verify_allcliques, Lemma, LemmaMode, LEMMA_MAX_N};
pub use shadow::{
    default_f, min_shadow, question_5_1, verify_conjecture_generalk, verify_gline, verify_shadow_theorem,
};
pub use types::{difftypes_bound_holds, verify_2mt, verify_difftypes};

pub const SEARCH_SCHEMA: u32 = 1;

/// Largest vertex count for family searches.
pub const FAMILY_SEARCH_MAX_N: usize = 7;

/// Largest vertex count `all_graphs` will materialize.
pub const MATERIALIZE_MAX_N: usize = 7;

/// Default cap on visited partial families.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Limits shared by every search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of visited partial families.
    pub budget: u64,
    /// Worker count; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Counterexamples,
    Computed,
}

/// Outcome of a search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema: u32,
    pub target: String,
    pub params: serde_json::Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<GraphFamily>,
    /// Stored counterexamples; at most [`MAX_STORED`] are kept.
    pub counterexamples: Vec<GraphFamily>,
    /// Number of counterexamples found, including those not stored.
    pub violations: u64,
    pub checked: u64,
    pub pruned: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<String>,
    /// `false` when a budget ran out before the search space was covered.
    pub complete: bool,
    pub suspect_implementation: bool,
    pub elapsed_ms: u64,
}

/// Counterexamples kept verbatim in a report.
pub const MAX_STORED: usize = 100;

impl SearchReport {
    pub(crate) fn new(target: impl Into<String>, params: serde_json::Value) -> Self {
        SearchReport {
            schema: SEARCH_SCHEMA,
            target: target.into(),
            params,
            status: Status::Verified,
            value: None,
            witness: None,
            counterexamples: Vec::new(),
            violations: 0,
            checked: 0,
            pruned: 0,
            seed: None,
            findings: Vec::new(),
            complete: true,
            suspect_implementation: false,
            elapsed_ms: 0,
        }
    }

    /// Records a counterexample, keeping the first [`MAX_STORED`].
    pub(crate) fn violation(&mut self, family: GraphFamily) {
        self.violations += 1;
        self.status = Status::Counterexamples;
        if self.counterexamples.len() < MAX_STORED {
            self.counterexamples.push(family);
        }
    }

    pub(crate) fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

/// Every graph on `[n]`, materialized. Larger `n` should stream through
/// [`crate::graph::all_graphs`] instead.
pub fn all_graphs(n: usize) -> Result<Vec<OrderedGraph>> {
    if n > MATERIALIZE_MAX_N {
        return Err(Error::Feasibility(format!(
            "materializing all graphs is limited to n <= {MATERIALIZE_MAX_N}, asked for {n}"
        )));
    }
    Ok(crate::graph::all_graphs(n).collect())
}

/// A named family on `[n]`; `k` parametrises the families that need it.
pub fn named_family(name: &str, n: usize, k: Option<usize>) -> Result<GraphFamily> {
    NamedFamily::parse(name, k)?.level(n)
}

pub(crate) fn family_search_guard(n: usize) -> Result<()> {
    if n > FAMILY_SEARCH_MAX_N {
        return Err(Error::Feasibility(format!(
            "family searches are limited to n <= {FAMILY_SEARCH_MAX_N}, asked for {n}"
        )));
    }
    if n == 0 {
        return Err(crate::error::invalid("family searches need n >= 1"));
    }
    Ok(())
}
