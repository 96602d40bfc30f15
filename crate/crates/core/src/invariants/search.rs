//! Lower-bound searches for `γ_α(f; I)` and `τ_ci`.
//!
//! `λ_α` only depends on the value `i = i(f, g) ∈ (d, 2d]`, so the search
//! collects which of those finitely many values are achieved by structured
//! candidates `g ∈ I`: the generators, the monomials of `I` up to degree
//! `2d + 1`, and pairwise combinations `g1 + c·g2` of generators and
//! corner monomials for `c ∈ {±1, ±2, ±1/2}`.

use std::collections::{BTreeMap, HashSet};

use num_traits::One;

use super::alpha::Alpha;
use crate::error::{Error, KernelError};
use crate::ideal::{
    colength, colength_at_most, intersection_multiplicity_at_most, is_complete_intersection, tjurina_ideal,
    ColengthConfig, LocalIdealRep, DEFAULT_CAP,
};
use crate::jet::Jet;
use crate::rational::{q, q_frac, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of candidates tried per search.
    pub max_candidates: usize,
    /// Truncation cap handed to the colength kernel.
    pub cap: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_candidates: 2000,
            cap: DEFAULT_CAP,
        }
    }
}

impl SearchBudget {
    pub fn colength_config(&self) -> ColengthConfig {
        ColengthConfig { cap: self.cap }
    }
}

fn combination_coefficients() -> [Q; 6] {
    [q(1), q(-1), q(2), q(-2), q_frac(1, 2), q_frac(-1, 2)]
}

/// `λ_α(d, i) = (α·i + (1−α)·d)² / (i − d)` for `i > d >= 1`.
///
/// With `ε = i − d` this is `(d + α·ε)² / ε`, the per-point term
/// `d²/ε + 2αd + α²ε` that the T-smoothness bounds sum up.
pub fn lambda_alpha(d: u64, i: u64, alpha: &Alpha) -> Result<Q, Error> {
    if d == 0 {
        return Err(Error::Invalid("lambda needs colength d >= 1".into()));
    }
    if i <= d {
        return Err(Error::LemmaViolation { d, i });
    }
    let a = alpha.value();
    let num = a * q(i as i64) + (Q::one() - a) * q(d as i64);
    Ok(num.pow(2) / q((i - d) as i64))
}

/// Intersection multiplicities `i(f, g) ∈ (d, 2d]` found for `g ∈ I`,
/// with the first witness for each value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AchievedIntersections {
    pub colength: u64,
    pub witnesses: BTreeMap<u64, Jet>,
    pub candidates_tried: usize,
}

impl AchievedIntersections {
    /// `max{(1+α)²·d, λ_α(d, i) | i achieved}`.
    pub fn gamma(&self, alpha: &Alpha) -> Result<Q, Error> {
        let d = self.colength;
        let mut best = (Q::one() + alpha.value()).pow(2) * q(d as i64);
        for &i in self.witnesses.keys() {
            let l = lambda_alpha(d, i, alpha)?;
            if l > best {
                best = l;
            }
        }
        Ok(best)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSearch {
    pub value: Q,
    pub floor: Q,
    pub achieved: AchievedIntersections,
    pub warning: Option<String>,
}

/// Lower bound for `γ_α(f; I)`; `I` must contain the Tjurina ideal of `f`,
/// which is spot-checked.
pub fn gamma_alpha_search(
    f: &Jet,
    ideal: &LocalIdealRep,
    alpha: &Alpha,
    budget: &SearchBudget,
) -> Result<GammaSearch, Error> {
    let achieved = achieved_intersections(f, ideal, budget)?;
    let floor = (Q::one() + alpha.value()).pow(2) * q(achieved.colength as i64);
    let value = achieved.gamma(alpha)?;
    let warning = achieved.witnesses.is_empty().then(|| {
        format!(
            "no g among {} candidates has i(f,g) <= {}; returning the floor (1+α)²·d",
            achieved.candidates_tried,
            2 * achieved.colength
        )
    });
    Ok(GammaSearch {
        value,
        floor,
        achieved,
        warning,
    })
}

/// Runs the candidate search once; `γ` for any `α` follows from the result.
pub fn achieved_intersections(
    f: &Jet,
    ideal: &LocalIdealRep,
    budget: &SearchBudget,
) -> Result<AchievedIntersections, Error> {
    let cfg = budget.colength_config();
    let col = colength(ideal, cfg)?;
    let d = col.value;
    if d == 0 {
        return Err(Error::Invalid(
            "the unit ideal does not contain a Tjurina ideal of a singular germ".into(),
        ));
    }
    let k = col.certificate.expect("finite colength is certified");
    let ideal = ideal.clone().with_certificate(k)?;

    let tjurina = tjurina_ideal(f)?;
    for (idx, h) in tjurina.generators().iter().enumerate() {
        if !ideal.contains(h, cfg)? {
            return Err(Error::NotContainingTjurina(format!(
                "Tjurina generator #{idx} `{h}` is not in the ideal"
            )));
        }
    }

    let limit = 2 * d;
    let needed = u32::try_from(limit + 1).unwrap_or(u32::MAX);
    let work = f.truncation().min(ideal.truncation());
    if work < needed {
        return Err(KernelError::TruncationTooLow {
            needed,
            available: work,
        }
        .into());
    }
    let f = f.truncated(needed)?;
    let candidates = candidate_elements(&ideal, d, k, needed, budget.max_candidates)?;

    let mut witnesses = BTreeMap::new();
    for g in &candidates {
        if let Some(i) = intersection_multiplicity_at_most(&f, g, limit)? {
            if i <= d {
                return Err(Error::LemmaViolation { d, i });
            }
            witnesses.entry(i).or_insert_with(|| g.clone());
        }
    }
    Ok(AchievedIntersections {
        colength: d,
        witnesses,
        candidates_tried: candidates.len(),
    })
}

/// Candidate elements of `I` at truncation `n`, deduplicated, in a fixed
/// order and capped at `max`.
fn candidate_elements(
    ideal: &LocalIdealRep,
    d: u64,
    certificate: u32,
    n: u32,
    max: usize,
) -> Result<Vec<Jet>, KernelError> {
    let membership = ideal.quotient_at(certificate + 1)?;
    let in_ideal = |i: u32, j: u32| i + j >= certificate || membership.contains_monomial((i, j));

    let generators: Vec<Jet> = ideal
        .generators()
        .iter()
        .map(|g| g.truncated(n))
        .collect::<Result<_, _>>()?;

    let top = (2 * d + 1).min(n as u64 - 1) as u32;
    let mut monomials = Vec::new();
    let mut corners = Vec::new();
    for t in 0..=top {
        for j in 0..=t {
            let i = t - j;
            if !in_ideal(i, j) {
                continue;
            }
            monomials.push(Jet::monomial(i, j, n));
            let left = i > 0 && in_ideal(i - 1, j);
            let down = j > 0 && in_ideal(i, j - 1);
            if !left && !down {
                corners.push(Jet::monomial(i, j, n));
            }
        }
    }

    let mut basis = generators.clone();
    basis.extend(corners);
    let mut combos = Vec::new();
    for a in 0..basis.len() {
        for b in (a + 1)..basis.len() {
            for c in combination_coefficients() {
                combos.push(&basis[a] + &basis[b].scale(&c));
            }
        }
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in generators.into_iter().chain(monomials).chain(combos) {
        if out.len() >= max {
            break;
        }
        if !g.is_zero() && seen.insert(g.clone()) {
            out.push(g);
        }
    }
    Ok(out)
}

/// A complete intersection found to contain the Tjurina ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiCandidate {
    pub ideal: LocalIdealRep,
    pub colength: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauCiSearch {
    pub value: u64,
    pub exact: bool,
    /// Candidates sorted by decreasing colength.
    pub candidates: Vec<CiCandidate>,
}

/// Analytic `τ_ci` lower bound: the largest colength of a complete
/// intersection `I ⊇ I^ea(f)` found among pairs of structured elements.
/// Exact when the Tjurina ideal is itself a complete intersection.
pub fn tau_ci_search(f: &Jet, budget: &SearchBudget) -> Result<TauCiSearch, Error> {
    let cfg = budget.colength_config();
    let tjurina = tjurina_ideal(f)?;
    let tau = match colength(&tjurina, cfg) {
        Ok(c) => c.value,
        Err(KernelError::NotFinite { .. }) => return Err(Error::NonReduced),
        Err(e) => return Err(e.into()),
    };
    if tau == 0 {
        return Ok(TauCiSearch {
            value: 0,
            exact: true,
            candidates: Vec::new(),
        });
    }
    if is_complete_intersection(&tjurina, cfg)? {
        return Ok(TauCiSearch {
            value: tau,
            exact: true,
            candidates: vec![CiCandidate {
                ideal: tjurina,
                colength: tau,
            }],
        });
    }

    let n = tjurina.truncation();
    let gens = tjurina.generators().to_vec();
    let mut elements = gens.clone();
    for a in 0..gens.len() {
        for b in (a + 1)..gens.len() {
            for c in combination_coefficients() {
                elements.push(&gens[a] + &gens[b].scale(&c));
            }
        }
    }
    let max_deg = colength(&tjurina, cfg)?.certificate.unwrap_or(1);
    for t in 1..=max_deg {
        for j in 0..=t {
            elements.push(Jet::monomial(t - j, j, n));
        }
    }
    let mut seen = HashSet::new();
    elements.retain(|e| !e.is_zero() && seen.insert(e.clone()));

    let mut found: Vec<CiCandidate> = Vec::new();
    let mut tried = 0usize;
    'outer: for a in 0..elements.len() {
        for b in (a + 1)..elements.len() {
            if tried >= budget.max_candidates {
                break 'outer;
            }
            tried += 1;
            let ideal = LocalIdealRep::new(vec![elements[a].clone(), elements[b].clone()])?;
            let Some(c) = colength_at_most(&ideal, tau - 1)? else {
                continue;
            };
            if c == 0 {
                continue;
            }
            // colength c forces m^c into the ideal
            let ideal = ideal.with_certificate(c as u32)?;
            let mut contains_all = true;
            for h in tjurina.generators() {
                if !ideal.contains(h, cfg)? {
                    contains_all = false;
                    break;
                }
            }
            if contains_all {
                found.push(CiCandidate { ideal, colength: c });
            }
        }
    }
    found.sort_by_key(|c| std::cmp::Reverse(c.colength));
    Ok(TauCiSearch {
        value: found.first().map(|c| c.colength).unwrap_or(0),
        exact: false,
        candidates: found,
    })
}
