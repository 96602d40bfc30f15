//! The numerical T-smoothness criteria: `Σ γ*(Sᵢ)` against a multiple of
//! `(D−K)²`, with the strictness relaxations, plus an arithmetic checker for
//! the conditions produced by a Bogomolov-unstable bundle.
//!
//! A passing verdict means "empty or T-smooth"; a failing comparison never
//! claims anything about the family.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::invariants::{invariants_of, Alpha, GammaValue, GermSpec, InvariantRecord, SearchBudget, TauCi};
use crate::lattice::{canonical_class, criterion_constants, intersect, DivisorClass, Hypothesis, SurfaceModel};
use crate::rational::{self, q, Q};

mod crosscheck;

pub use crosscheck::{cross_check_corollaries, CrossCheck, CrossCheckReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityCount {
    pub germ: GermSpec,
    pub count: u32,
}

impl SingularityCount {
    pub fn new(germ: GermSpec, count: u32) -> Self {
        SingularityCount { germ, count }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    Strict,
    NonStrict,
}

impl fmt::Display for Strictness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strictness::Strict => "strict",
            Strictness::NonStrict => "non_strict",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrictnessOverride {
    #[default]
    None,
    ForceStrict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    TsmoothOrEmpty,
    Inconclusive,
    HypothesesFail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::TsmoothOrEmpty => "TSMOOTH_OR_EMPTY",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::HypothesesFail => "HYPOTHESES_FAIL",
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            Verdict::TsmoothOrEmpty => "T-smooth or empty",
            Verdict::Inconclusive => "inconclusive",
            Verdict::HypothesesFail => "hypotheses fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvalOptions {
    pub budget: SearchBudget,
    pub strictness_override: StrictnessOverride,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub germ: GermSpec,
    pub count: u32,
    pub gamma: GammaValue,
    pub tau_ci: Option<TauCi>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub surface: SurfaceModel,
    pub divisor: DivisorClass,
    pub alpha_used: Alpha,
    #[serde(with = "rational::as_opt_string")]
    pub rhs_factor: Option<Q>,
    #[serde(with = "rational::as_string")]
    pub dk_squared: Q,
    #[serde(with = "rational::as_opt_string")]
    pub lhs: Option<Q>,
    #[serde(with = "rational::as_opt_string")]
    pub rhs: Option<Q>,
    #[serde(with = "rational::as_opt_string")]
    pub margin: Option<Q>,
    pub strictness: Strictness,
    pub strictness_reason: String,
    pub hypotheses: Vec<Hypothesis>,
    pub per_singularity: Vec<Contribution>,
    pub verdict: Verdict,
    pub verdict_text: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A singularity type with its invariants resolved at the model's `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolved {
    pub record: InvariantRecord,
    pub count: u32,
}

impl Resolved {
    fn gamma(&self, alpha: &Alpha) -> &GammaValue {
        self.record
            .gamma_at(alpha)
            .expect("records are resolved at the evaluation alpha")
    }
}

/// The `α` at which the singularity invariants enter the criterion.
pub fn evaluation_alpha(model: &SurfaceModel) -> Alpha {
    match model.as_picard_one() {
        Some(p) => Alpha::new(Q::one() / q(1.max(1 + p.kappa))).expect("α in (0, 1]"),
        None => Alpha::zero(),
    }
}

/// Computes the invariants of every singularity at the model's `α`.
pub fn resolve(
    model: &SurfaceModel,
    sings: &[SingularityCount],
    budget: &SearchBudget,
) -> Result<Vec<Resolved>, Error> {
    if sings.is_empty() {
        return Err(Error::Invalid("at least one singularity type is required".into()));
    }
    let alpha = evaluation_alpha(model);
    sings
        .iter()
        .map(|s| {
            if s.count == 0 {
                return Err(Error::Invalid(format!("multiplicity of {} must be >= 1", s.germ)));
            }
            let record = invariants_of(&s.germ, std::slice::from_ref(&alpha), budget)?;
            Ok(Resolved { record, count: s.count })
        })
        .collect()
}

/// Evaluates the criterion for `D` on `model` with the given singularities.
pub fn evaluate(
    model: &SurfaceModel,
    d: &DivisorClass,
    sings: &[SingularityCount],
    options: &EvalOptions,
) -> Result<CriterionReport, Error> {
    let resolved = resolve(model, sings, &options.budget)?;
    evaluate_resolved(model, d, &resolved, options.strictness_override)
}

/// Like [`evaluate`] with the invariants already computed (as by
/// [`resolve`]); useful when sweeping the divisor.
pub fn evaluate_resolved(
    model: &SurfaceModel,
    d: &DivisorClass,
    resolved: &[Resolved],
    strictness_override: StrictnessOverride,
) -> Result<CriterionReport, Error> {
    let constants = criterion_constants(model, d)?;
    let alpha = constants.alpha.clone();
    let mut hypotheses = constants.hypotheses.clone();
    let mut notes = Vec::new();
    if constants.rhs_factor.is_none() {
        hypotheses.push(Hypothesis::new(
            "gamma constant defined",
            false,
            "the constant γ cannot be formed for this divisor",
        ));
    }

    let mut lhs = Some(Q::zero());
    let mut all_exact = true;
    let mut per_singularity = Vec::with_capacity(resolved.len());
    for r in resolved {
        let germ = &r.record.germ;
        let g = r.gamma(&alpha);
        if r.record.smooth {
            hypotheses.push(Hypothesis::new(
                format!("{germ} is singular"),
                false,
                "the germ is smooth (τ = 0), not a singularity",
            ));
        }
        match g {
            GammaValue::Known { value, provenance } => {
                if !provenance.is_exact() {
                    all_exact = false;
                }
                if let Some(sum) = lhs.as_mut() {
                    *sum += value * q(r.count as i64);
                }
            }
            GammaValue::Unavailable { unavailable } => {
                lhs = None;
                hypotheses.push(Hypothesis::new(
                    format!("gamma of {germ} available"),
                    false,
                    format!("γ_{alpha}({germ}) is unavailable: {unavailable}"),
                ));
            }
        }
        per_singularity.push(Contribution {
            germ: germ.clone(),
            count: r.count,
            gamma: g.clone(),
            tau_ci: r.record.tau_ci,
        });
    }

    let (strictness, strictness_reason) = strictness_mode(model, resolved, strictness_override);
    let rhs = constants.rhs();
    let margin = match (&lhs, &rhs) {
        (Some(l), Some(r)) => Some(r - l),
        _ => None,
    };

    let verdict = if !hypotheses.iter().all(|h| h.ok) {
        Verdict::HypothesesFail
    } else {
        let margin = margin.as_ref().expect("hypotheses ok implies both sides known");
        let pass = match strictness {
            Strictness::Strict => *margin > Q::zero(),
            Strictness::NonStrict => *margin >= Q::zero(),
        };
        if pass && all_exact {
            Verdict::TsmoothOrEmpty
        } else {
            if pass {
                notes.push(
                    "comparison passes, but some γ values are search lower bounds, \
                     so the true left-hand side may be larger"
                        .into(),
                );
            }
            Verdict::Inconclusive
        }
    };

    Ok(CriterionReport {
        surface: model.clone(),
        divisor: d.clone(),
        alpha_used: alpha,
        rhs_factor: constants.rhs_factor,
        dk_squared: constants.dk_squared,
        lhs,
        rhs,
        margin,
        strictness,
        strictness_reason,
        hypotheses,
        per_singularity,
        verdict,
        verdict_text: verdict.text().into(),
        notes,
    })
}

/// Whether `≤` may replace `<`: on Picard-number-one surfaces with `κ > 0`,
/// and in the plane when some singularity has `γ₁ > 4·τ_ci` (known
/// exactly). Strict everywhere else.
pub fn strictness_mode(
    model: &SurfaceModel,
    resolved: &[Resolved],
    strictness_override: StrictnessOverride,
) -> (Strictness, String) {
    if strictness_override == StrictnessOverride::ForceStrict {
        return (Strictness::Strict, "strict comparison forced by option".into());
    }
    let Some(p) = model.as_picard_one() else {
        return (Strictness::Strict, format!("strict comparison on the {model}"));
    };
    if p.kappa > 0 {
        return (Strictness::NonStrict, format!("κ = {} > 0", p.kappa));
    }
    if model.is_plane() {
        let one = Alpha::one();
        for r in resolved {
            let gamma = r.record.gamma_at(&one).and_then(GammaValue::exact_value);
            let tci = r.record.tau_ci.filter(|t| t.exact);
            if let (Some(g), Some(t)) = (gamma, tci) {
                if *g > q(4 * t.value as i64) {
                    return (
                        Strictness::NonStrict,
                        format!("{}: γ₁ = {g} > 4·τ_ci = {}", r.record.germ, 4 * t.value),
                    );
                }
            }
        }
        return (
            Strictness::Strict,
            "no singularity with exactly known γ₁ > 4·τ_ci".into(),
        );
    }
    (Strictness::Strict, format!("κ = {} <= 0", p.kappa))
}

/// Arithmetic data of an unstable-bundle configuration: divisors `D` and
/// `Δ`, the zero-dimensional scheme degree `deg(X₀)` and its local pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaInstance {
    pub model: SurfaceModel,
    pub d: DivisorClass,
    pub delta: DivisorClass,
    pub deg_x0: i64,
    pub eps: Vec<i64>,
    pub local_degs: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaCondition {
    /// `D.Δ >= deg(X₀) + Σ εᵢ`
    A,
    /// `deg(X₀) >= (D−K−Δ).Δ`
    B,
    /// `(D−K−2Δ)² > 0`
    C,
    /// `0 <= (D−K)²/4 − deg(X₀)`
    ReformulationLower,
    /// `(D−K)²/4 − deg(X₀) <= ((D−K)/2 − Δ)²`
    ReformulationUpper,
}

impl LemmaInstance {
    fn validate(&self) -> Result<(), Error> {
        let rank = self.model.rank();
        if self.d.rank() != rank || self.delta.rank() != rank {
            return Err(Error::Invalid("divisors do not match the model rank".into()));
        }
        if self.eps.len() != self.local_degs.len() {
            return Err(Error::Invalid("eps and local_degs differ in length".into()));
        }
        for (e, l) in self.eps.iter().zip(&self.local_degs) {
            if *l < 1 || *e < 1 || e > l {
                return Err(Error::Invalid(format!(
                    "need 1 <= eps <= local degree, got eps = {e}, deg = {l}"
                )));
            }
        }
        if self.deg_x0 != self.local_degs.iter().sum::<i64>() {
            return Err(Error::Invalid("deg_x0 must be the sum of the local degrees".into()));
        }
        Ok(())
    }
}

/// Evaluates each condition exactly.
pub fn check_lemma_arithmetic(inst: &LemmaInstance) -> Result<Vec<(LemmaCondition, bool)>, Error> {
    inst.validate()?;
    let m = &inst.model;
    let dk = inst.d.minus(&canonical_class(m));
    let delta = &inst.delta;
    let deg = inst.deg_x0 as i128;
    let eps_sum: i128 = inst.eps.iter().map(|&e| e as i128).sum();

    let cond_a = intersect(m, &inst.d, delta)? >= deg + eps_sum;
    let cond_b = deg >= intersect(m, &dk.minus(delta), delta)?;
    let dk_2delta = dk.minus(&delta.scaled(2));
    let cond_c = intersect(m, &dk_2delta, &dk_2delta)? > 0;

    // ((D−K)/2 − Δ)² = (D−K−2Δ)²/4
    let quarter = Q::new(1.into(), 4.into());
    let middle = Q::from_integer(intersect(m, &dk, &dk)?.into()) * &quarter - Q::from_integer(deg.into());
    let upper = Q::from_integer(intersect(m, &dk_2delta, &dk_2delta)?.into()) * &quarter;
    Ok(vec![
        (LemmaCondition::A, cond_a),
        (LemmaCondition::B, cond_b),
        (LemmaCondition::C, cond_c),
        (LemmaCondition::ReformulationLower, middle >= Q::zero()),
        (LemmaCondition::ReformulationUpper, middle <= upper),
    ])
}
