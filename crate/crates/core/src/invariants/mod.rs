//! Singularity invariants `τ`, `τ_ci` and `γ_α`, from closed forms for the
//! catalog types and from the local-algebra kernel for explicit germs.

mod alpha;
pub mod catalog;
mod germ;
pub mod search;

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

pub use alpha::Alpha;
pub use germ::{recognize_a_k, CatalogType, Equivalence, Family, GermKind, GermSpec, GermSpecJson};
pub use search::{
    achieved_intersections, gamma_alpha_search, lambda_alpha, tau_ci_search, AchievedIntersections, CiCandidate,
    GammaSearch, SearchBudget, TauCiSearch,
};

use crate::error::{Error, KernelError};
use crate::ideal::{colength, tjurina_ideal};
use crate::rational::{self, q, Q};

/// Number of complete-intersection candidates fed to the `γ` search.
const GAMMA_IDEALS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    SearchLowerBound,
    /// A search value that equals the closed form of the recognised type.
    SearchMatchesClosedForm,
}

impl Provenance {
    pub fn is_exact(self) -> bool {
        !matches!(self, Provenance::SearchLowerBound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaValue {
    Known {
        #[serde(with = "rational::as_string")]
        value: Q,
        provenance: Provenance,
    },
    Unavailable {
        unavailable: String,
    },
}

impl GammaValue {
    pub fn value(&self) -> Option<&Q> {
        match self {
            GammaValue::Known { value, .. } => Some(value),
            GammaValue::Unavailable { .. } => None,
        }
    }

    /// The value when it is a closed form or certified by one.
    pub fn exact_value(&self) -> Option<&Q> {
        match self {
            GammaValue::Known { value, provenance } if provenance.is_exact() => Some(value),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauCi {
    pub value: u64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub germ: GermSpec,
    /// `τ = 0`: the germ is smooth and not a singularity.
    pub smooth: bool,
    #[serde(with = "opt_catalog")]
    pub catalog_match: Option<CatalogType>,
    pub tau: Option<u64>,
    pub tau_ci: Option<TauCi>,
    pub gamma: BTreeMap<Alpha, GammaValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

mod opt_catalog {
    use super::{CatalogType, Family};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<CatalogType>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(c) => s.serialize_str(&c.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<CatalogType>, D::Error> {
        let Some(text) = Option::<String>::deserialize(d)? else {
            return Ok(None);
        };
        let (fam, idx) = text
            .split_once('_')
            .ok_or_else(|| D::Error::custom(format!("bad catalog type `{text}`")))?;
        let family: Family = fam.parse().map_err(D::Error::custom)?;
        let index: u32 = idx.parse().map_err(D::Error::custom)?;
        CatalogType::new(family, index).map(Some).map_err(D::Error::custom)
    }
}

impl InvariantRecord {
    pub fn gamma_at(&self, alpha: &Alpha) -> Option<&GammaValue> {
        self.gamma.get(alpha)
    }

    /// Checks `(1+α)²·τ_ci <= γ_α <= (τ_ci+α)² <= (τ+α)²` wherever the
    /// quantities are known.
    pub fn check_chain(&self) -> Result<(), Error> {
        let Some(tci) = self.tau_ci else {
            return Ok(());
        };
        let tci_q = q(tci.value as i64);
        for (alpha, g) in &self.gamma {
            let Some(gamma) = g.value() else { continue };
            let a = alpha.value();
            let lower = (Q::one() + a).pow(2) * &tci_q;
            let upper = (&tci_q + a).pow(2);
            if !(lower <= *gamma && *gamma <= upper) {
                return Err(Error::ChainViolation(format!(
                    "{}: at α = {alpha}, need {lower} <= {gamma} <= {upper}",
                    self.germ
                )));
            }
            if let Some(tau) = self.tau {
                let top = (q(tau as i64) + a).pow(2);
                if upper > top {
                    return Err(Error::ChainViolation(format!(
                        "{}: (τ_ci+α)² = {upper} exceeds (τ+α)² = {top}",
                        self.germ
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Fills a record from the closed forms.
pub fn catalog_invariants(spec: &GermSpec, alphas: &[Alpha]) -> Result<InvariantRecord, Error> {
    let ty = spec
        .catalog_type()
        .ok_or_else(|| Error::Invalid(format!("{spec} is not a catalog type")))?;
    let record = catalog_record(spec.clone(), ty, spec.equivalence, alphas, Vec::new());
    record.check_chain()?;
    Ok(record)
}

fn catalog_record(
    germ: GermSpec,
    ty: CatalogType,
    equivalence: Equivalence,
    alphas: &[Alpha],
    mut notes: Vec<String>,
) -> InvariantRecord {
    let mut gamma = BTreeMap::new();
    for alpha in alphas {
        let value = match catalog::gamma_closed_form(ty, equivalence, alpha) {
            Some(value) => GammaValue::Known {
                value,
                provenance: Provenance::ClosedForm,
            },
            None => GammaValue::Unavailable {
                unavailable: format!("no closed form for the analytic γ of {ty}"),
            },
        };
        gamma.insert(alpha.clone(), value);
    }
    if ty.family() == Family::M && ty.index() == 2 {
        notes.push("M_2 is the node A_1".into());
    }
    InvariantRecord {
        germ,
        smooth: false,
        catalog_match: Some(ty),
        tau: catalog::tau_closed_form(ty, equivalence),
        tau_ci: catalog::tau_ci_closed_form(ty, equivalence).map(|value| TauCi { value, exact: true }),
        gamma,
        notes,
    }
}

/// Invariants of any germ spec: closed forms for catalog types, kernel
/// computations (`γ` as search lower bounds) for explicit germs.
pub fn invariants_of(spec: &GermSpec, alphas: &[Alpha], budget: &SearchBudget) -> Result<InvariantRecord, Error> {
    let record = match &spec.kind {
        GermKind::Catalog(_) => return catalog_invariants(spec, alphas),
        GermKind::Explicit { text, jet } => match spec.equivalence {
            Equivalence::Topological => {
                let ty = recognize_a_k(jet).ok_or_else(|| Error::TopologicalNonCatalog(text.clone()))?;
                let note = format!("recognised as the {ty} normal form");
                catalog_record(spec.clone(), ty, Equivalence::Topological, alphas, vec![note])
            }
            Equivalence::Analytic => explicit_analytic(spec, jet, alphas, budget)?,
        },
    };
    record.check_chain()?;
    Ok(record)
}

fn explicit_analytic(
    spec: &GermSpec,
    f: &crate::jet::Jet,
    alphas: &[Alpha],
    budget: &SearchBudget,
) -> Result<InvariantRecord, Error> {
    let cfg = budget.colength_config();
    let tjurina = tjurina_ideal(f)?;
    let tau = match colength(&tjurina, cfg) {
        Ok(c) => c.value,
        Err(KernelError::NotFinite { .. }) => return Err(Error::NonReduced),
        Err(e) => return Err(e.into()),
    };
    let matched = recognize_a_k(f);
    let mut notes = Vec::new();
    if tau == 0 {
        notes.push("no singularity: the germ is smooth (τ = 0)".into());
        let gamma = alphas
            .iter()
            .map(|a| {
                (
                    a.clone(),
                    GammaValue::Unavailable {
                        unavailable: "smooth germ".into(),
                    },
                )
            })
            .collect();
        return Ok(InvariantRecord {
            germ: spec.clone(),
            smooth: true,
            catalog_match: None,
            tau: Some(0),
            tau_ci: Some(TauCi { value: 0, exact: true }),
            gamma,
            notes,
        });
    }

    let tci = tau_ci_search(f, budget)?;
    let exact_tci = tci.exact || matched.is_some();
    let mut searches = Vec::new();
    for cand in tci.candidates.iter().take(GAMMA_IDEALS) {
        searches.push(achieved_intersections(f, &cand.ideal, budget)?);
    }
    if searches.is_empty() {
        notes.push("no complete intersection containing the Tjurina ideal was found".into());
    }

    let mut gamma = BTreeMap::new();
    for alpha in alphas {
        let mut best: Option<Q> = None;
        for s in &searches {
            let v = s.gamma(alpha)?;
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
        let entry = match best {
            None => GammaValue::Unavailable {
                unavailable: "search found no complete intersection".into(),
            },
            Some(value) => {
                let closed = matched.and_then(|ty| catalog::gamma_closed_form(ty, Equivalence::Analytic, alpha));
                match closed {
                    Some(c) if c == value => GammaValue::Known {
                        value,
                        provenance: Provenance::SearchMatchesClosedForm,
                    },
                    Some(c) if value > c => {
                        return Err(Error::ChainViolation(format!(
                            "search value {value} exceeds the closed form {c} at α = {alpha}"
                        )))
                    }
                    _ => GammaValue::Known {
                        value,
                        provenance: Provenance::SearchLowerBound,
                    },
                }
            }
        };
        gamma.insert(alpha.clone(), entry);
    }
    if let Some(ty) = matched {
        notes.push(format!("recognised as the {ty} normal form"));
    }
    Ok(InvariantRecord {
        germ: spec.clone(),
        smooth: false,
        catalog_match: matched,
        tau: Some(tau),
        tau_ci: Some(TauCi {
            value: tci.value,
            exact: exact_tci,
        }),
        gamma,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn alphas(list: &[&str]) -> Vec<Alpha> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn catalog_examples() {
        let d4 = GermSpec::catalog(Family::D, 4, Equivalence::Topological).unwrap();
        let r = catalog_invariants(&d4, &alphas(&["0"])).unwrap();
        assert_eq!(r.gamma_at(&Alpha::zero()).unwrap().value(), Some(&q(8)));
        let e6 = GermSpec::catalog(Family::E, 6, Equivalence::Analytic).unwrap();
        let r = catalog_invariants(&e6, &alphas(&["1"])).unwrap();
        assert_eq!(r.gamma_at(&Alpha::one()).unwrap().value(), Some(&q(32)));
        let m3 = GermSpec::catalog(Family::M, 3, Equivalence::Topological).unwrap();
        let r = catalog_invariants(&m3, &alphas(&["1"])).unwrap();
        assert_eq!(r.gamma_at(&Alpha::one()).unwrap().value(), Some(&q(18)));
        assert_eq!(r.tau_ci, Some(TauCi { value: 4, exact: true }));
    }

    #[test]
    fn analytic_m_m_is_unavailable() {
        let m4 = GermSpec::catalog(Family::M, 4, Equivalence::Analytic).unwrap();
        let r = catalog_invariants(&m4, &alphas(&["1"])).unwrap();
        assert!(matches!(
            r.gamma_at(&Alpha::one()),
            Some(GammaValue::Unavailable { .. })
        ));
        assert_eq!(r.tau, None);
    }

    #[test]
    fn explicit_cusp_is_certified() {
        let spec = GermSpec::explicit("y^2 - x^3", Equivalence::Analytic).unwrap();
        let r = invariants_of(&spec, &alphas(&["1"]), &SearchBudget::default()).unwrap();
        assert_eq!(r.tau, Some(2));
        assert_eq!(
            r.gamma_at(&Alpha::one()),
            Some(&GammaValue::Known {
                value: q(9),
                provenance: Provenance::SearchMatchesClosedForm
            })
        );
    }

    #[test]
    fn explicit_catalog_node() {
        let a1 = GermSpec::catalog(Family::A, 1, Equivalence::Topological).unwrap();
        let r = invariants_of(&a1, &alphas(&["0"]), &SearchBudget::default()).unwrap();
        assert_eq!(r.tau, Some(1));
        assert_eq!(r.gamma_at(&Alpha::zero()).unwrap().value(), Some(&q(1)));
    }

    #[test]
    fn explicit_triple_point() {
        let spec = GermSpec::explicit("x*y*(x+y)", Equivalence::Analytic).unwrap();
        let r = invariants_of(&spec, &alphas(&["0", "1"]), &SearchBudget::default()).unwrap();
        assert_eq!(r.tau, Some(4));
        for g in r.gamma.values() {
            assert!(matches!(
                g,
                GammaValue::Known {
                    provenance: Provenance::SearchLowerBound,
                    ..
                }
            ));
        }
        // analytically an ordinary triple point is D_4: (4+2α)²/2
        assert!(r.gamma_at(&Alpha::one()).unwrap().value().unwrap() <= &q(18));
    }

    #[test]
    fn smooth_and_non_reduced() {
        let smooth = GermSpec::explicit("x", Equivalence::Analytic).unwrap();
        let r = invariants_of(&smooth, &alphas(&["1"]), &SearchBudget::default()).unwrap();
        assert!(r.smooth);
        assert_eq!(r.tau, Some(0));
        let nr = GermSpec::explicit("y^2*x^2", Equivalence::Analytic).unwrap();
        let budget = SearchBudget {
            cap: 20,
            ..Default::default()
        };
        assert_eq!(invariants_of(&nr, &alphas(&["1"]), &budget), Err(Error::NonReduced));
    }

    #[test]
    fn topological_needs_catalog() {
        let g = GermSpec::explicit("y^3 - x^4", Equivalence::Topological).unwrap();
        assert!(matches!(
            invariants_of(&g, &alphas(&["1"]), &SearchBudget::default()),
            Err(Error::TopologicalNonCatalog(_))
        ));
        let g = GermSpec::explicit("y^2 - x^4", Equivalence::Topological).unwrap();
        let r = invariants_of(&g, &alphas(&["1/2"]), &SearchBudget::default()).unwrap();
        assert_eq!(r.gamma.values().next().unwrap().value(), Some(&q_frac(49, 4)));
    }

    #[test]
    fn record_json_round_trip() {
        let spec = GermSpec::catalog(Family::M, 4, Equivalence::Topological).unwrap();
        let r = catalog_invariants(&spec, &alphas(&["0", "1/2", "1"])).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: InvariantRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
