//! Néron–Severi lattices of the supported surface classes, canonical
//! classes, and the constants entering the numerical criteria.
//!
//! Bases: `L` for Picard-number-one surfaces, `(C₁, C₂)` (fibres of the
//! two projections) for products of curves, `(C₀, F)` (normalised section
//! and fibre) for geometrically ruled surfaces.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::invariants::Alpha;
use crate::rational::{self, q, q_frac, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", try_from = "RawSurface")]
pub enum SurfaceModel {
    /// `NS = L·ℤ` with `L² = l_self` and `K = κ·L`.
    PicardOne {
        l_self: i64,
        kappa: i64,
    },
    ProjectivePlane,
    /// Smooth degree-`n` surface in ℙ³ with Picard number one.
    P3Hypersurface {
        n: i64,
    },
    /// K3 surface with `NS = L·ℤ`, `L² = n`.
    K3 {
        n: i64,
    },
    ProductOfCurves {
        g1: i64,
        g2: i64,
    },
    Ruled {
        g: i64,
        e: i64,
    },
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawSurface {
    PicardOne { l_self: i64, kappa: i64 },
    ProjectivePlane,
    P3Hypersurface { n: i64 },
    K3 { n: i64 },
    ProductOfCurves { g1: i64, g2: i64 },
    Ruled { g: i64, e: i64 },
}

impl TryFrom<RawSurface> for SurfaceModel {
    type Error = Error;

    fn try_from(raw: RawSurface) -> Result<Self, Error> {
        match raw {
            RawSurface::PicardOne { l_self, kappa } => SurfaceModel::picard_one(l_self, kappa),
            RawSurface::ProjectivePlane => Ok(SurfaceModel::ProjectivePlane),
            RawSurface::P3Hypersurface { n } => SurfaceModel::p3_hypersurface(n),
            RawSurface::K3 { n } => SurfaceModel::k3(n),
            RawSurface::ProductOfCurves { g1, g2 } => SurfaceModel::product_of_curves(g1, g2),
            RawSurface::Ruled { g, e } => SurfaceModel::ruled(g, e),
        }
    }
}

/// Data of a Picard-number-one surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PicardOne {
    pub l_self: i64,
    pub kappa: i64,
}

impl SurfaceModel {
    pub fn picard_one(l_self: i64, kappa: i64) -> Result<Self, Error> {
        if l_self <= 0 {
            return Err(Error::Invalid(format!(
                "L² must be positive (L is ample), got {l_self}"
            )));
        }
        Ok(SurfaceModel::PicardOne { l_self, kappa })
    }

    pub fn p3_hypersurface(n: i64) -> Result<Self, Error> {
        if n < 4 {
            return Err(Error::Invalid(format!("hypersurface degree must be >= 4, got {n}")));
        }
        Ok(SurfaceModel::P3Hypersurface { n })
    }

    pub fn k3(n: i64) -> Result<Self, Error> {
        if n <= 0 || n % 2 != 0 {
            return Err(Error::Invalid(format!(
                "L² on a K3 surface must be even and positive, got {n}"
            )));
        }
        Ok(SurfaceModel::K3 { n })
    }

    pub fn product_of_curves(g1: i64, g2: i64) -> Result<Self, Error> {
        if g2 < 0 || g1 < g2 {
            return Err(Error::Invalid(format!("need g1 >= g2 >= 0, got g1 = {g1}, g2 = {g2}")));
        }
        Ok(SurfaceModel::ProductOfCurves { g1, g2 })
    }

    pub fn ruled(g: i64, e: i64) -> Result<Self, Error> {
        if g < 0 {
            return Err(Error::Invalid(format!("genus must be >= 0, got {g}")));
        }
        if e < -g {
            return Err(Error::Invalid(format!("need e >= -g, got e = {e}, g = {g}")));
        }
        Ok(SurfaceModel::Ruled { g, e })
    }

    /// The Picard-one data, for the picard-one family and its
    /// specialisations.
    pub fn as_picard_one(&self) -> Option<PicardOne> {
        match *self {
            SurfaceModel::PicardOne { l_self, kappa } => Some(PicardOne { l_self, kappa }),
            SurfaceModel::ProjectivePlane => Some(PicardOne { l_self: 1, kappa: -3 }),
            SurfaceModel::P3Hypersurface { n } => Some(PicardOne {
                l_self: n,
                kappa: n - 4,
            }),
            SurfaceModel::K3 { n } => Some(PicardOne { l_self: n, kappa: 0 }),
            _ => None,
        }
    }

    pub fn is_plane(&self) -> bool {
        self.as_picard_one() == Some(PicardOne { l_self: 1, kappa: -3 })
    }

    pub fn rank(&self) -> usize {
        if self.as_picard_one().is_some() {
            1
        } else {
            2
        }
    }

    /// Gram matrix of the intersection form in the model basis.
    pub fn form(&self) -> Vec<Vec<i64>> {
        match self {
            SurfaceModel::ProductOfCurves { .. } => vec![vec![0, 1], vec![1, 0]],
            SurfaceModel::Ruled { e, .. } => vec![vec![-e, 1], vec![1, 0]],
            _ => vec![vec![self.as_picard_one().map_or(0, |p| p.l_self)]],
        }
    }

    /// Names of the basis classes.
    pub fn basis_names(&self) -> &'static [&'static str] {
        match self {
            SurfaceModel::ProductOfCurves { .. } => &["C1", "C2"],
            SurfaceModel::Ruled { .. } => &["C0", "F"],
            _ => &["L"],
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceModel::PicardOne { l_self, kappa } => write!(f, "picard-one surface (L² = {l_self}, κ = {kappa})"),
            SurfaceModel::ProjectivePlane => write!(f, "projective plane"),
            SurfaceModel::P3Hypersurface { n } => write!(f, "degree-{n} surface in P3"),
            SurfaceModel::K3 { n } => write!(f, "K3 surface (L² = {n})"),
            SurfaceModel::ProductOfCurves { g1, g2 } => write!(f, "product of curves of genera {g1}, {g2}"),
            SurfaceModel::Ruled { g, e } => write!(f, "ruled surface (g = {g}, e = {e})"),
        }
    }
}

/// A divisor class in the model basis. In JSON: `{"d": ..}` for rank one,
/// `{"a": .., "b": ..}` for rank two, or `{"coords": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub coords: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass { coords }
    }

    pub fn multiple(d: i64) -> Self {
        DivisorClass { coords: vec![d] }
    }

    pub fn pair(a: i64, b: i64) -> Self {
        DivisorClass { coords: vec![a, b] }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass { coords: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    fn combine(&self, other: &DivisorClass, sign: i64) -> DivisorClass {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(x, y)| x + sign * y)
            .collect();
        DivisorClass { coords }
    }

    pub fn plus(&self, other: &DivisorClass) -> DivisorClass {
        self.combine(other, 1)
    }

    pub fn minus(&self, other: &DivisorClass) -> DivisorClass {
        self.combine(other, -1)
    }

    pub fn scaled(&self, k: i64) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|x| k * x).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDivisor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<i64>>,
}

impl Serialize for DivisorClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = match self.coords.as_slice() {
            [d] => RawDivisor {
                d: Some(*d),
                a: None,
                b: None,
                coords: None,
            },
            [a, b] => RawDivisor {
                d: None,
                a: Some(*a),
                b: Some(*b),
                coords: None,
            },
            other => RawDivisor {
                d: None,
                a: None,
                b: None,
                coords: Some(other.to_vec()),
            },
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawDivisor::deserialize(de)?;
        let coords = match raw {
            RawDivisor {
                d: Some(d),
                a: None,
                b: None,
                coords: None,
            } => vec![d],
            RawDivisor {
                d: None,
                a: Some(a),
                b: Some(b),
                coords: None,
            } => vec![a, b],
            RawDivisor {
                d: None,
                a: None,
                b: None,
                coords: Some(c),
            } if !c.is_empty() => c,
            _ => {
                return Err(D::Error::custom(
                    "divisor needs exactly one of {\"d\"}, {\"a\", \"b\"} or {\"coords\"}",
                ))
            }
        };
        Ok(DivisorClass { coords })
    }
}

fn check_rank(model: &SurfaceModel, d: &DivisorClass) -> Result<(), Error> {
    if d.rank() != model.rank() {
        return Err(Error::Invalid(format!(
            "divisor {d} has {} coordinates but the Néron–Severi rank of the {model} is {}",
            d.rank(),
            model.rank()
        )));
    }
    Ok(())
}

/// The intersection number `D1.D2`.
pub fn intersect(model: &SurfaceModel, d1: &DivisorClass, d2: &DivisorClass) -> Result<i128, Error> {
    check_rank(model, d1)?;
    check_rank(model, d2)?;
    let form = model.form();
    let mut total = 0i128;
    for (i, row) in form.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            total += entry as i128 * d1.coords[i] as i128 * d2.coords[j] as i128;
        }
    }
    Ok(total)
}

pub fn canonical_class(model: &SurfaceModel) -> DivisorClass {
    match *model {
        SurfaceModel::ProductOfCurves { g1, g2 } => DivisorClass::pair(2 * g2 - 2, 2 * g1 - 2),
        SurfaceModel::Ruled { g, e } => DivisorClass::pair(-2, 2 * g - 2 - e),
        _ => DivisorClass::multiple(model.as_picard_one().map_or(0, |p| p.kappa)),
    }
}

/// `(D − K)²`.
pub fn d_minus_k_squared(model: &SurfaceModel, d: &DivisorClass) -> Result<Q, Error> {
    let dk = d.minus(&canonical_class(model));
    Ok(Q::from_integer(intersect(model, &dk, &dk)?.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub ok: bool,
    pub reason: String,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, ok: bool, reason: impl Into<String>) -> Self {
        Hypothesis {
            name: name.into(),
            ok,
            reason: reason.into(),
        }
    }
}

/// Constants of the criterion for a model and a divisor: the `α` at which
/// the singularity invariants are taken, the factor in front of `(D−K)²`
/// (`α` itself for Picard number one, the table constant `γ` otherwise).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionConstants {
    pub alpha: Alpha,
    #[serde(with = "rational::as_opt_string")]
    pub gamma: Option<Q>,
    #[serde(with = "rational::as_opt_string")]
    pub a_ratio: Option<Q>,
    #[serde(with = "rational::as_string")]
    pub dk_squared: Q,
    /// Factor multiplying `(D−K)²` on the right-hand side; `None` when it
    /// cannot be formed because the hypotheses fail.
    #[serde(with = "rational::as_opt_string")]
    pub rhs_factor: Option<Q>,
    pub hypotheses: Vec<Hypothesis>,
}

impl CriterionConstants {
    pub fn hypotheses_ok(&self) -> bool {
        self.hypotheses.iter().all(|h| h.ok)
    }

    pub fn rhs(&self) -> Option<Q> {
        self.rhs_factor.as_ref().map(|f| f * &self.dk_squared)
    }
}

pub fn criterion_constants(model: &SurfaceModel, d: &DivisorClass) -> Result<CriterionConstants, Error> {
    check_rank(model, d)?;
    let dk_squared = d_minus_k_squared(model, d)?;
    match *model {
        SurfaceModel::ProductOfCurves { g1, g2 } => Ok(product_constants(g1, g2, d, dk_squared)),
        SurfaceModel::Ruled { g, e } => Ok(ruled_constants(g, e, d, dk_squared)),
        _ => {
            let p = model.as_picard_one().expect("rank-one models are picard-one");
            let dd = d.coords[0];
            let bound = (p.kappa + 1).max(-p.kappa);
            let ok = dd >= bound;
            let reason = format!("d = {dd} {} max{{κ+1, −κ}} = {bound}", if ok { ">=" } else { "<" });
            let alpha = Alpha::new(Q::one() / q(1.max(1 + p.kappa)))?;
            Ok(CriterionConstants {
                rhs_factor: Some(alpha.value().clone()),
                alpha,
                gamma: None,
                a_ratio: None,
                dk_squared,
                hypotheses: vec![Hypothesis::new("d >= max{kappa+1, -kappa}", ok, reason)],
            })
        }
    }
}

fn lower_bound_hypothesis(name: &str, var: &str, value: i64, bound: i64) -> Hypothesis {
    let ok = value >= bound;
    let reason = format!("{var} = {value} {} {bound}", if ok { ">=" } else { "<" });
    Hypothesis::new(name, ok, reason)
}

fn product_constants(g1: i64, g2: i64, d: &DivisorClass, dk_squared: Q) -> CriterionConstants {
    let (a, b) = (d.coords[0], d.coords[1]);
    let hypotheses = vec![
        lower_bound_hypothesis("a >= max{2-2g2, 2g2-1}", "a", a, (2 - 2 * g2).max(2 * g2 - 1)),
        lower_bound_hypothesis("b >= max{2-2g1, 2g1-1}", "b", b, (2 - 2 * g1).max(2 * g1 - 1)),
    ];
    let den = b - 2 * g1 + 2;
    let a_ratio = (den != 0).then(|| q_frac(a - 2 * g2 + 2, den));
    let quarter = q_frac(1, 4);
    let gamma = match (&a_ratio, g1 >= 2, g2 >= 2) {
        _ if g1 <= 1 => Some(quarter),
        (Some(ar), true, false) if ar.is_positive() => {
            Some(min_of([q_frac(1, 4 * g1), Q::one() / (q(4 * (g1 - 1)) * ar)]))
        }
        (Some(ar), true, true) if ar.is_positive() => Some(min_of([
            q_frac(1, 4 * g1 + 4 * g2 - 4),
            ar / q(4 * (g2 - 1)),
            Q::one() / (q(4 * (g1 - 1)) * ar),
        ])),
        _ => None,
    };
    CriterionConstants {
        alpha: Alpha::zero(),
        rhs_factor: gamma.clone(),
        gamma,
        a_ratio,
        dk_squared,
        hypotheses,
    }
}

fn ruled_constants(g: i64, e: i64, d: &DivisorClass, dk_squared: Q) -> CriterionConstants {
    let (a, b) = (d.coords[0], d.coords[1]);
    let ae_half = q_frac(a * e, 2);
    let b_bound = q((2 * g - 2).max(2 - 2 * g)) + &ae_half;
    let b_ok = q(b) > b_bound;
    let hypotheses = vec![
        Hypothesis::new("a > 2", a > 2, format!("a = {a} {} 2", if a > 2 { ">" } else { "<=" })),
        Hypothesis::new(
            "b > max{2g-2, 2-2g} + ae/2",
            b_ok,
            format!("b = {b} {} {b_bound}", if b_ok { ">" } else { "<=" }),
        ),
    ];
    let den = q(b + 2 - 2 * g) - &ae_half;
    let a_ratio = (!den.is_zero()).then(|| q(a + 2) / den);
    let gamma = if g <= 1 {
        Some(q_frac(1, 4))
    } else {
        match &a_ratio {
            Some(ar) if ar.is_positive() => Some(min_of([q_frac(1, 4 * g), Q::one() / (q(4 * (g - 1)) * ar)])),
            _ => None,
        }
    };
    CriterionConstants {
        alpha: Alpha::zero(),
        rhs_factor: gamma.clone(),
        gamma,
        a_ratio,
        dk_squared,
        hypotheses,
    }
}

fn min_of<const N: usize>(values: [Q; N]) -> Q {
    values.into_iter().min().expect("nonempty")
}
