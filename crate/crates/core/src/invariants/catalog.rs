//! Closed-form invariants of the catalog types.
//!
//! | type | γ_α |
//! |------|-----|
//! | A_k, k ≥ 1 | (k+α)² |
//! | D_k, 4 ≤ k ≤ 4+√2·(2+α) | (k+2α)²/2 |
//! | D_k, k > 4+√2·(2+α) | (k−2+α)² |
//! | E_k, k = 6,7,8 | (k+2α)²/2 |
//! | M_m (topological) | 2·(m−1+α)² |
//!
//! `M_2` is the node `A_1` and takes the `A_1` values.

use num_traits::One;

use super::alpha::Alpha;
use super::germ::{CatalogType, Equivalence, Family};
use crate::rational::{q, Q};

/// Which branch of the `D_k` formula applies: the first one iff
/// `k <= 4 + √2·(2+α)`, decided exactly as `(k-4)² <= 2·(2+α)²`.
pub fn d_k_first_branch(k: u32, alpha: &Alpha) -> bool {
    if k < 4 {
        return false;
    }
    let lhs = q(k as i64 - 4).pow(2);
    let rhs = q(2) * (q(2) + alpha.value()).pow(2);
    lhs <= rhs
}

/// `γ_α` from the closed forms, `None` where no closed form is known
/// (`γ^ea` of `M_m` for `m >= 3`).
pub fn gamma_closed_form(ty: CatalogType, equivalence: Equivalence, alpha: &Alpha) -> Option<Q> {
    let a = alpha.value();
    let k = q(ty.index() as i64);
    let half = Q::new(1.into(), 2.into());
    match ty.family() {
        Family::A => Some((k + a).pow(2)),
        Family::D => {
            if d_k_first_branch(ty.index(), alpha) {
                Some((k + q(2) * a).pow(2) * half)
            } else {
                Some((k - q(2) + a).pow(2))
            }
        }
        Family::E => Some((k + q(2) * a).pow(2) * half),
        Family::M if ty.index() == 2 => Some((Q::one() + a).pow(2)),
        Family::M => match equivalence {
            Equivalence::Topological => Some(q(2) * (k - Q::one() + a).pow(2)),
            Equivalence::Analytic => None,
        },
    }
}

/// `τ` (analytic) or `τ^es` (topological).
pub fn tau_closed_form(ty: CatalogType, equivalence: Equivalence) -> Option<u64> {
    let k = ty.index() as u64;
    match (ty.family(), equivalence) {
        (Family::A | Family::D | Family::E, _) => Some(k),
        (Family::M, _) if k == 2 => Some(1),
        // codimension of the equisingular stratum: m(m+1)/2 - 2
        (Family::M, Equivalence::Topological) => Some(k * (k + 1) / 2 - 2),
        // every ordinary triple point is analytically D_4
        (Family::M, Equivalence::Analytic) if k == 3 => Some(4),
        (Family::M, Equivalence::Analytic) => None,
    }
}

/// `τ_ci` (or `τ^es_ci`). Simple singularities are quasihomogeneous, so
/// their Tjurina ideal is itself a complete intersection and `τ_ci = τ`.
pub fn tau_ci_closed_form(ty: CatalogType, equivalence: Equivalence) -> Option<u64> {
    let m = ty.index() as u64;
    match (ty.family(), equivalence) {
        (Family::A | Family::D | Family::E, _) => Some(m),
        (Family::M, _) if m == 2 => Some(1),
        (Family::M, Equivalence::Topological) if m % 2 == 1 => Some((m + 1) * (m + 1) / 4),
        (Family::M, Equivalence::Topological) => Some((m * m + 2 * m) / 4),
        (Family::M, Equivalence::Analytic) if m == 3 => Some(4),
        (Family::M, Equivalence::Analytic) => None,
    }
}

/// One row of the closed-form table (topological types).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub ty: CatalogType,
    pub tau: Option<u64>,
    pub tau_ci: Option<u64>,
    pub gamma: Vec<(Alpha, Q)>,
}

/// Closed-form rows for `family` with index in `from..=to`, skipping indices
/// outside the family's range.
pub fn table(family: Family, from: u32, to: u32, alphas: &[Alpha]) -> Vec<TableRow> {
    let eq = Equivalence::Topological;
    (from..=to)
        .filter_map(|k| CatalogType::new(family, k).ok())
        .map(|ty| TableRow {
            ty,
            tau: tau_closed_form(ty, eq),
            tau_ci: tau_ci_closed_form(ty, eq),
            gamma: alphas
                .iter()
                .map(|a| {
                    let g = gamma_closed_form(ty, eq, a).expect("topological closed forms always exist");
                    (a.clone(), g)
                })
                .collect(),
        })
        .collect()
}
