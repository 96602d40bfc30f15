//! Problem files: a surface, a divisor, singularity types with counts, and
//! evaluation options.

use std::path::Path;

use anyhow::Context;
use equising_core::criteria::{evaluate, CriterionReport, EvalOptions, SingularityCount, StrictnessOverride};
use equising_core::invariants::{invariants_of, Alpha, InvariantRecord, SearchBudget};
use equising_core::lattice::{DivisorClass, SurfaceModel};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub surface: SurfaceModel,
    pub divisor: DivisorClass,
    pub singularities: Vec<SingularityCount>,
    #[serde(default)]
    pub options: ProblemOptions,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    /// Extra `α` values at which the invariants of every singularity are
    /// listed next to the report.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alphas: Vec<Alpha>,
    /// Candidate budget for the searches on explicit germs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Truncation cap of the colength kernel.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    #[serde(default)]
    pub strictness_override: StrictnessOverride,
}

impl ProblemOptions {
    pub fn search_budget(&self) -> SearchBudget {
        let mut budget = SearchBudget::default();
        if let Some(n) = self.budget {
            budget.max_candidates = n;
        }
        if let Some(cap) = self.cap {
            budget.cap = cap;
        }
        budget
    }

    pub fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            budget: self.search_budget(),
            strictness_override: self.strictness_override,
        }
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        serde_json::from_str(text).context("invalid problem file")
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn evaluate(&self) -> Result<CriterionReport, equising_core::Error> {
        evaluate(
            &self.surface,
            &self.divisor,
            &self.singularities,
            &self.options.eval_options(),
        )
    }

    /// Invariants at the extra `α` values, empty when none were requested.
    pub fn extra_invariants(&self) -> Result<Vec<InvariantRecord>, equising_core::Error> {
        if self.options.alphas.is_empty() {
            return Ok(Vec::new());
        }
        let budget = self.options.search_budget();
        self.singularities
            .iter()
            .map(|s| invariants_of(&s.germ, &self.options.alphas, &budget))
            .collect()
    }
}
