use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ideal::DEFAULT_CAP;
use crate::jet::Jet;
use crate::parse::make_jet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
    M,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "M" | "m" => Ok(Family::M),
            other => Err(Error::Invalid(format!(
                "unknown germ type `{other}` (expected A, D, E or M)"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
            Family::M => "M",
        };
        f.write_str(s)
    }
}

/// A catalog singularity type: `A_k` (k>=1), `D_k` (k>=4), `E_6/7/8`, or
/// the ordinary `m`-fold point `M_m` (m>=2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatalogType {
    family: Family,
    index: u32,
}

impl CatalogType {
    pub fn new(family: Family, index: u32) -> Result<Self, Error> {
        let ok = match family {
            Family::A => index >= 1,
            Family::D => index >= 4,
            Family::E => (6..=8).contains(&index),
            Family::M => index >= 2,
        };
        if !ok {
            return Err(Error::Invalid(format!(
                "{family}_{index} is not a catalog type (A: k>=1, D: k>=4, E: k in 6..=8, M: m>=2)"
            )));
        }
        Ok(CatalogType { family, index })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// A normal form polynomial for the simple types and a union of `m`
    /// distinct lines for `M_m`.
    pub fn normal_form(&self) -> String {
        let k = self.index;
        match self.family {
            Family::A => format!("y^2 - x^{}", k + 1),
            Family::D => format!("x^2*y + y^{}", k - 1),
            Family::E => match k {
                6 => "x^3 + y^4".to_string(),
                7 => "x^3 + x*y^3".to_string(),
                _ => "x^3 + y^5".to_string(),
            },
            Family::M => (0..k)
                .map(|t| match t {
                    0 => "x".to_string(),
                    1 => "y".to_string(),
                    _ => format!("(x + {}*y)", t - 1),
                })
                .collect::<Vec<_>>()
                .join("*"),
        }
    }
}

impl fmt::Display for CatalogType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    Topological,
    Analytic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GermKind {
    Catalog(CatalogType),
    /// The polynomial text is kept so reports can echo the input.
    Explicit {
        text: String,
        jet: Jet,
    },
}

/// A singularity type, either from the catalog or as an explicit germ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GermSpecJson", into = "GermSpecJson")]
pub struct GermSpec {
    pub kind: GermKind,
    pub equivalence: Equivalence,
}

impl GermSpec {
    pub fn catalog(family: Family, index: u32, equivalence: Equivalence) -> Result<Self, Error> {
        Ok(GermSpec {
            kind: GermKind::Catalog(CatalogType::new(family, index)?),
            equivalence,
        })
    }

    /// Parses a polynomial germ at the default truncation cap.
    pub fn explicit(text: &str, equivalence: Equivalence) -> Result<Self, Error> {
        Self::explicit_with_truncation(text, equivalence, DEFAULT_CAP)
    }

    pub fn explicit_with_truncation(text: &str, equivalence: Equivalence, truncation: u32) -> Result<Self, Error> {
        let jet = make_jet(text, truncation)?;
        if jet.is_zero() {
            return Err(Error::Invalid("the zero polynomial is not a curve germ".into()));
        }
        if !jet.coeff(0, 0).is_zero() {
            return Err(Error::Invalid(format!(
                "`{text}` has a nonzero constant term; germs must pass through the origin"
            )));
        }
        Ok(GermSpec {
            kind: GermKind::Explicit {
                text: text.to_string(),
                jet,
            },
            equivalence,
        })
    }

    pub fn catalog_type(&self) -> Option<CatalogType> {
        match &self.kind {
            GermKind::Catalog(c) => Some(*c),
            GermKind::Explicit { .. } => None,
        }
    }
}

impl fmt::Display for GermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GermKind::Catalog(c) => write!(f, "{c}"),
            GermKind::Explicit { text, .. } => write!(f, "{{{text}}}"),
        }
    }
}

/// Exact-match recognition of `A_k` normal forms: `c1*y^2 + c2*x^(k+1)`
/// (either variable order) and `c*x*y`.
pub fn recognize_a_k(f: &Jet) -> Option<CatalogType> {
    let exps: Vec<(u32, u32)> = f.terms().map(|(e, _)| *e).collect();
    let k = match exps.as_slice() {
        [(1, 1)] => 1,
        [a, b] => {
            let (mut s, mut t) = (*a, *b);
            if s.1 == 0 && t.0 == 0 {
                std::mem::swap(&mut s, &mut t);
            }
            // s = (0, p), t = (q, 0), one of p, q equal to 2
            match (s, t) {
                ((0, p), (q, 0)) if p == 2 && q >= 2 => q - 1,
                ((0, p), (q, 0)) if q == 2 && p >= 2 => p - 1,
                _ => return None,
            }
        }
        _ => return None,
    };
    // the top term must survive truncation for the match to mean anything
    let needed = f.degree()? + 1;
    if f.truncation() < needed {
        return None;
    }
    CatalogType::new(Family::A, k).ok()
}

/// JSON shape: `{"type":"A","k":3}`, `{"type":"M","m":4}` or
/// `{"poly":"y^2-x^5"}`, each with an optional `"equivalence"`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermSpecJson {
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<Equivalence>,
}

impl TryFrom<GermSpecJson> for GermSpec {
    type Error = Error;

    fn try_from(raw: GermSpecJson) -> Result<Self, Error> {
        match (raw.family.as_deref(), raw.poly) {
            (Some(_), Some(_)) => Err(Error::Invalid("germ has both `type` and `poly`".into())),
            (None, None) => Err(Error::Invalid("germ needs `type` or `poly`".into())),
            (None, Some(poly)) => {
                if raw.k.is_some() || raw.m.is_some() {
                    return Err(Error::Invalid("`k`/`m` are not allowed with `poly`".into()));
                }
                GermSpec::explicit(&poly, raw.equivalence.unwrap_or(Equivalence::Analytic))
            }
            (Some(family), None) => {
                let family: Family = family.parse()?;
                let index = match (family, raw.k, raw.m) {
                    (Family::M, None, Some(m)) => m,
                    (Family::M, _, _) => return Err(Error::Invalid("type M takes exactly the field `m`".into())),
                    (_, Some(k), None) => k,
                    _ => return Err(Error::Invalid(format!("type {family} takes exactly the field `k`"))),
                };
                let index = u32::try_from(index).map_err(|_| Error::Invalid(format!("index {index} out of range")))?;
                GermSpec::catalog(family, index, raw.equivalence.unwrap_or(Equivalence::Topological))
            }
        }
    }
}

impl From<GermSpec> for GermSpecJson {
    fn from(spec: GermSpec) -> Self {
        match spec.kind {
            GermKind::Catalog(c) => {
                let (k, m) = match c.family {
                    Family::M => (None, Some(c.index as i64)),
                    _ => (Some(c.index as i64), None),
                };
                GermSpecJson {
                    family: Some(c.family.to_string()),
                    k,
                    m,
                    poly: None,
                    equivalence: Some(spec.equivalence),
                }
            }
            GermKind::Explicit { text, .. } => GermSpecJson {
                poly: Some(text),
                equivalence: Some(spec.equivalence),
                ..Default::default()
            },
        }
    }
}
