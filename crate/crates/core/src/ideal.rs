//! Colength of m-primary ideals in the local ring at the origin.
//!
//! Everything reduces to linear algebra on `Q[x,y] / m^N`: the span of all
//! monomial multiples of the generators is put in echelon form with respect
//! to the local order (lowest total degree first, then descending powers of
//! `x`). The quotient dimension `c(N) = dim R/(I + m^N)` is nondecreasing in
//! `N`, and whenever `c(N) < N` some graded slice `m^k/(m^(k+1) + I)` with
//! `k < N` vanishes, so `m^k ⊆ I` by Nakayama and `c(N)` is the exact
//! colength. That certificate is what every finite answer below rests on.

use num_traits::{One, Zero};

use crate::error::KernelError;
use crate::jet::{Exponent, Jet};
use crate::rational::Q;

/// Default escalation cap for the truncation degree.
pub const DEFAULT_CAP: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColengthConfig {
    /// Largest truncation degree tried before reporting "not finite".
    pub cap: u32,
}

impl Default for ColengthConfig {
    fn default() -> Self {
        ColengthConfig { cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Colength {
    pub value: u64,
    /// The value was certified (`m^k ⊆ I` for some `k <= value`) and a
    /// recomputation at two more degrees agreed.
    pub stable: bool,
    /// Truncation degree at which the value was certified.
    pub truncation: u32,
    /// Smallest `k` with every degree-`k` monomial in the ideal.
    pub certificate: Option<u32>,
}

/// An ideal of the local ring given by jets of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdealRep {
    generators: Vec<Jet>,
    primary_certificate: Option<u32>,
}

impl LocalIdealRep {
    pub fn new(generators: Vec<Jet>) -> Result<Self, KernelError> {
        let first = generators.first().ok_or(KernelError::EmptyIdeal)?.truncation();
        for (index, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(KernelError::ZeroGenerator { index });
            }
            if g.truncation() != first {
                return Err(KernelError::MixedTruncation {
                    first,
                    other: g.truncation(),
                });
            }
        }
        Ok(LocalIdealRep {
            generators,
            primary_certificate: None,
        })
    }

    /// Builds an ideal from jets of possibly different truncation degrees,
    /// bringing all of them down to the smallest one. Zero jets are dropped.
    pub fn from_jets<I: IntoIterator<Item = Jet>>(jets: I) -> Result<Self, KernelError> {
        let jets: Vec<Jet> = jets.into_iter().collect();
        let n = jets.iter().map(Jet::truncation).min().ok_or(KernelError::EmptyIdeal)?;
        let mut gens = Vec::with_capacity(jets.len());
        for j in jets {
            let j = j.truncated(n)?;
            if !j.is_zero() {
                gens.push(j);
            }
        }
        Self::new(gens)
    }

    pub fn generators(&self) -> &[Jet] {
        &self.generators
    }

    pub fn truncation(&self) -> u32 {
        self.generators[0].truncation()
    }

    pub fn primary_certificate(&self) -> Option<u32> {
        self.primary_certificate
    }

    /// Attaches a certificate `m^k ⊆ I` after checking it.
    pub fn with_certificate(mut self, k: u32) -> Result<Self, KernelError> {
        let n = k + 1;
        let quotient = self.quotient_at(n)?;
        let holds = (0..=k).all(|j| quotient.contains_monomial((k - j, j)));
        if holds {
            self.primary_certificate = Some(k);
            Ok(self)
        } else {
            Err(KernelError::NotFinite {
                truncation: n,
                lower_bound: quotient.dim(),
            })
        }
    }

    /// The ideal `m·I`, at the same truncation.
    pub fn times_maximal(&self) -> Result<LocalIdealRep, KernelError> {
        let gens: Vec<Jet> = self
            .generators
            .iter()
            .flat_map(|g| [g.shift(1, 0), g.shift(0, 1)])
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            return Err(KernelError::TruncationTooLow {
                needed: self.truncation() + 1,
                available: self.truncation(),
            });
        }
        LocalIdealRep::new(gens)
    }

    /// Echelon form of `(I + m^n) / m^n`.
    pub fn quotient_at(&self, n: u32) -> Result<TruncatedQuotient, KernelError> {
        if n > self.truncation() {
            return Err(KernelError::TruncationTooLow {
                needed: n,
                available: self.truncation(),
            });
        }
        let mut span = Span::new(n);
        for g in &self.generators {
            let Some(ord) = g.order() else { continue };
            for t in 0..n.saturating_sub(ord) {
                for b in 0..=t {
                    let row = span.row_of(&g.shift(t - b, b));
                    span.insert(row);
                }
            }
        }
        Ok(TruncatedQuotient { span })
    }

    /// Whether `h` lies in the ideal. Needs a certificate `m^k ⊆ I`, which
    /// is computed if not attached.
    pub fn contains(&self, h: &Jet, cfg: ColengthConfig) -> Result<bool, KernelError> {
        let k = match self.primary_certificate {
            Some(k) => k,
            None => colength(self, cfg)?
                .certificate
                .expect("finite colength carries a certificate"),
        };
        let n = (k + 1).max(1);
        let h = h.truncated(n.min(h.truncation()))?;
        if h.truncation() < n {
            // terms of degree >= h.truncation() are unknown
            return Err(KernelError::TruncationTooLow {
                needed: n,
                available: h.truncation(),
            });
        }
        Ok(self.quotient_at(n)?.contains(&h))
    }
}

/// `R / (I + m^N)` in echelon form.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    span: Span,
}

impl TruncatedQuotient {
    pub fn truncation(&self) -> u32 {
        self.span.n
    }

    pub fn dim(&self) -> u64 {
        (self.span.pivots.len() - self.span.rank) as u64
    }

    /// True when the dimension is certified to be the colength of `I`.
    pub fn is_exact(&self) -> bool {
        self.dim() < self.span.n as u64
    }

    /// Smallest `k < N` such that every degree-`k` monomial is in the span.
    pub fn certificate(&self) -> Option<u32> {
        (0..self.span.n).find(|&t| (0..=t).all(|j| self.contains_monomial((t - j, j))))
    }

    /// Monomials not hit by a pivot; they form a basis of the quotient.
    pub fn standard_monomials(&self) -> Vec<Exponent> {
        self.span
            .pivots
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(idx, _)| exponent_of(idx as u32))
            .collect()
    }

    pub fn contains_monomial(&self, e: Exponent) -> bool {
        if e.0 + e.1 >= self.span.n {
            return true;
        }
        self.span.pivots[index_of(e) as usize].is_some()
    }

    /// Membership of `h` in `I + m^N`.
    pub fn contains(&self, h: &Jet) -> bool {
        let row = self.span.row_of(h);
        self.span.reduce(row).is_empty()
    }
}

fn index_of((i, j): Exponent) -> u32 {
    let t = i + j;
    t * (t + 1) / 2 + j
}

fn exponent_of(idx: u32) -> Exponent {
    let mut t = 0;
    while (t + 1) * (t + 2) / 2 <= idx {
        t += 1;
    }
    let j = idx - t * (t + 1) / 2;
    (t - j, j)
}

type Row = Vec<(u32, Q)>;

/// Row-echelon span keyed by leading (lowest) column; pivot rows are
/// normalised to leading coefficient one.
#[derive(Clone, Debug)]
struct Span {
    n: u32,
    pivots: Vec<Option<Row>>,
    rank: usize,
}

impl Span {
    fn new(n: u32) -> Self {
        let cols = (n * (n + 1) / 2) as usize;
        Span {
            n,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    fn row_of(&self, jet: &Jet) -> Row {
        let mut row: Row = jet
            .terms()
            .filter(|((i, j), _)| i + j < self.n)
            .map(|(e, c)| (index_of(*e), c.clone()))
            .collect();
        row.sort_unstable_by_key(|(c, _)| *c);
        row
    }

    fn reduce(&self, mut row: Row) -> Row {
        while let Some((lead, coeff)) = row.first().cloned() {
            match &self.pivots[lead as usize] {
                Some(pivot) => row = axpy(&row, &coeff, pivot),
                None => break,
            }
        }
        row
    }

    fn insert(&mut self, row: Row) -> bool {
        let mut row = self.reduce(row);
        let Some((lead, coeff)) = row.first().cloned() else {
            return false;
        };
        if !coeff.is_one() {
            let inv = coeff.recip();
            for (_, c) in row.iter_mut() {
                *c *= &inv;
            }
        }
        self.pivots[lead as usize] = Some(row);
        self.rank += 1;
        true
    }
}

/// `row - coeff * pivot`, both sorted by column.
fn axpy(row: &Row, coeff: &Q, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ca = row.get(a).map(|(c, _)| *c).unwrap_or(u32::MAX);
        let cb = pivot.get(b).map(|(c, _)| *c).unwrap_or(u32::MAX);
        if ca < cb {
            out.push(row[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, -(coeff * &pivot[b].1)));
            b += 1;
        } else {
            let v = &row[a].1 - coeff * &pivot[b].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Colength of an ideal, escalating the truncation degree from
/// `2·(max generator degree) + 4` by doubling up to the configured cap.
///
/// Fails with [`KernelError::NotFinite`] when no certificate is found below
/// the cap. A genuinely infinite colength and one above the cap cannot be
/// told apart; the error carries the lower bound reached.
pub fn colength(ideal: &LocalIdealRep, cfg: ColengthConfig) -> Result<Colength, KernelError> {
    let available = ideal.truncation().min(cfg.cap.max(1));
    let max_deg = ideal.generators.iter().filter_map(Jet::degree).max().unwrap_or(0);
    let mut n = (2 * max_deg + 4).clamp(1, available);
    loop {
        let quotient = ideal.quotient_at(n)?;
        if quotient.is_exact() {
            let value = quotient.dim();
            let certificate = quotient.certificate();
            let recheck = n + 2;
            let stable =
                certificate.is_some() && (recheck > ideal.truncation() || ideal.quotient_at(recheck)?.dim() == value);
            return Ok(Colength {
                value,
                stable,
                truncation: n,
                certificate,
            });
        }
        if n >= available {
            return Err(KernelError::NotFinite {
                truncation: n,
                lower_bound: quotient.dim(),
            });
        }
        n = (2 * n).min(available);
    }
}

/// The colength when it is at most `limit`, `None` when it is larger
/// (possibly infinite). A single elimination at truncation `limit + 1`.
pub fn colength_at_most(ideal: &LocalIdealRep, limit: u64) -> Result<Option<u64>, KernelError> {
    let n = u32::try_from(limit + 1).unwrap_or(u32::MAX);
    let quotient = ideal.quotient_at(n)?;
    let dim = quotient.dim();
    Ok((dim <= limit).then_some(dim))
}

fn pair(f: &Jet, g: &Jet) -> Result<LocalIdealRep, KernelError> {
    if f.is_zero() {
        return Err(KernelError::ZeroGenerator { index: 0 });
    }
    if g.is_zero() {
        return Err(KernelError::ZeroGenerator { index: 1 });
    }
    LocalIdealRep::from_jets([f.clone(), g.clone()])
}

/// `i(f, g) = dim R/<f, g>`.
pub fn intersection_multiplicity(f: &Jet, g: &Jet, cfg: ColengthConfig) -> Result<Colength, KernelError> {
    colength(&pair(f, g)?, cfg)
}

/// `i(f, g)` when it is at most `limit`.
pub fn intersection_multiplicity_at_most(f: &Jet, g: &Jet, limit: u64) -> Result<Option<u64>, KernelError> {
    colength_at_most(&pair(f, g)?, limit)
}

/// The Tjurina ideal `<f_x, f_y, f>`, at truncation `N - 1` because the
/// derivatives of an order-`N` jet are only known to that order.
pub fn tjurina_ideal(f: &Jet) -> Result<LocalIdealRep, KernelError> {
    if f.is_zero() {
        return Err(KernelError::ZeroGenerator { index: 0 });
    }
    if !f.coeff(0, 0).is_zero() {
        return Err(KernelError::NotAGerm);
    }
    let n = f.truncation() - 1;
    let gens: Vec<Jet> = [f.partial_x(), f.partial_y(), f.truncated(n)?]
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return Err(KernelError::TruncationTooLow {
            needed: f.degree().unwrap_or(0) + 2,
            available: f.truncation(),
        });
    }
    LocalIdealRep::new(gens)
}

/// Minimal number of generators, `dim I / m·I = colength(m·I) - colength(I)`.
pub fn minimal_generator_count(ideal: &LocalIdealRep, cfg: ColengthConfig) -> Result<u64, KernelError> {
    let base = colength(ideal, cfg)?.value;
    if base == 0 {
        return Ok(1);
    }
    let shifted = colength(&ideal.times_maximal()?, cfg)?.value;
    Ok(shifted - base)
}

/// An m-primary ideal of the two-dimensional regular local ring is a
/// complete intersection exactly when it is 2-generated.
pub fn is_complete_intersection(ideal: &LocalIdealRep, cfg: ColengthConfig) -> Result<bool, KernelError> {
    let c = colength(ideal, cfg)?;
    if c.value == 0 {
        return Ok(false);
    }
    Ok(minimal_generator_count(ideal, cfg)? == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::make_jet;

    fn jet(s: &str) -> Jet {
        make_jet(s, 40).unwrap()
    }

    fn ideal(gens: &[&str]) -> LocalIdealRep {
        LocalIdealRep::new(gens.iter().map(|s| jet(s)).collect()).unwrap()
    }

    fn col(gens: &[&str]) -> Colength {
        colength(&ideal(gens), ColengthConfig::default()).unwrap()
    }

    #[test]
    fn index_round_trip() {
        for idx in 0..200 {
            assert_eq!(index_of(exponent_of(idx)), idx);
        }
        assert_eq!(exponent_of(0), (0, 0));
        assert_eq!(exponent_of(1), (1, 0));
        assert_eq!(exponent_of(2), (0, 1));
    }

    #[test]
    fn maximal_ideal() {
        let c = col(&["x", "y"]);
        assert_eq!(c.value, 1);
        assert!(c.stable);
        assert_eq!(c.certificate, Some(1));
    }

    #[test]
    fn monomial_staircase() {
        let c = col(&["x^2", "y^3"]);
        assert_eq!(c.value, 6);
        assert!(c.stable);
    }

    #[test]
    fn tjurina_ideal_of_cusp_spelled_out() {
        assert_eq!(col(&["x^2", "y", "y^2 - x^3"]).value, 2);
    }

    #[test]
    fn unit_ideal_has_colength_zero() {
        let c = col(&["1 + x", "y"]);
        assert_eq!(c.value, 0);
        assert_eq!(c.certificate, Some(0));
    }

    #[test]
    fn not_m_primary_is_not_finite() {
        let i = ideal(&["x^2", "x*y"]);
        let err = colength(&i, ColengthConfig { cap: 24 }).unwrap_err();
        assert!(matches!(err, KernelError::NotFinite { truncation: 24, .. }));
    }

    #[test]
    fn bounded_colength() {
        let i = ideal(&["x^2", "y^3"]);
        assert_eq!(colength_at_most(&i, 6).unwrap(), Some(6));
        assert_eq!(colength_at_most(&i, 5).unwrap(), None);
        let j = ideal(&["x^2", "x*y"]);
        assert_eq!(colength_at_most(&j, 10).unwrap(), None);
    }

    #[test]
    fn intersection_examples() {
        let cfg = ColengthConfig::default();
        let im = |a: &str, b: &str| intersection_multiplicity(&jet(a), &jet(b), cfg).unwrap().value;
        assert_eq!(im("y^2 - x^3", "y"), 3);
        assert_eq!(im("x", "y"), 1);
        assert_eq!(im("x^2 - y^2", "x^2 + y^2"), 4);
        assert!(matches!(
            intersection_multiplicity(&jet("x*y"), &jet("x*(x+y)"), ColengthConfig { cap: 16 }),
            Err(KernelError::NotFinite { .. })
        ));
    }

    #[test]
    fn tjurina_of_node_and_cusp() {
        let cfg = ColengthConfig::default();
        let node = tjurina_ideal(&make_jet("x*y", 10).unwrap()).unwrap();
        assert_eq!(node.generators().len(), 3);
        assert_eq!(colength(&node, cfg).unwrap().value, 1);
        let cusp = tjurina_ideal(&make_jet("y^2 - x^3", 10).unwrap()).unwrap();
        assert_eq!(cusp.truncation(), 9);
        assert_eq!(cusp.generators()[0], make_jet("-3*x^2", 9).unwrap());
        assert_eq!(cusp.generators()[1], make_jet("2*y", 9).unwrap());
        assert_eq!(colength(&cusp, cfg).unwrap().value, 2);
    }

    #[test]
    fn tjurina_numbers_of_a_k() {
        let cfg = ColengthConfig::default();
        for k in 1..=6u64 {
            let f = make_jet(&format!("y^2 - x^{}", k + 1), 20).unwrap();
            let t = colength(&tjurina_ideal(&f).unwrap(), cfg).unwrap();
            assert_eq!(t.value, k);
            assert!(t.stable);
        }
    }

    #[test]
    fn tjurina_rejects_units() {
        assert_eq!(
            tjurina_ideal(&make_jet("1 + x", 5).unwrap()),
            Err(KernelError::NotAGerm)
        );
    }

    #[test]
    fn smooth_germ_has_tau_zero() {
        let t = colength(
            &tjurina_ideal(&make_jet("x + y^2", 10).unwrap()).unwrap(),
            ColengthConfig::default(),
        )
        .unwrap();
        assert_eq!(t.value, 0);
    }

    #[test]
    fn membership() {
        let cfg = ColengthConfig::default();
        let i = ideal(&["x^2", "y"]);
        assert!(i.contains(&jet("x^3 + 5*y"), cfg).unwrap());
        assert!(!i.contains(&jet("x + y"), cfg).unwrap());
        let i = i.with_certificate(2).unwrap();
        assert_eq!(i.primary_certificate(), Some(2));
        assert!(ideal(&["x^2", "y^3"]).with_certificate(2).is_err());
    }

    #[test]
    fn complete_intersections() {
        let cfg = ColengthConfig::default();
        assert!(is_complete_intersection(&ideal(&["x^2", "y"]), cfg).unwrap());
        // a quasihomogeneous Tjurina ideal is generated by the two partials
        let d4 = tjurina_ideal(&make_jet("x^2*y + y^3", 30).unwrap()).unwrap();
        assert!(is_complete_intersection(&d4, cfg).unwrap());
        // m^2 needs three generators
        let m2 = ideal(&["x^2", "x*y", "y^2"]);
        assert_eq!(minimal_generator_count(&m2, cfg).unwrap(), 3);
        assert!(!is_complete_intersection(&m2, cfg).unwrap());
    }

    #[test]
    fn mixed_truncations_rejected() {
        let err = LocalIdealRep::new(vec![make_jet("x", 4).unwrap(), make_jet("y", 5).unwrap()]);
        assert_eq!(err, Err(KernelError::MixedTruncation { first: 4, other: 5 }));
        assert_eq!(LocalIdealRep::new(vec![]), Err(KernelError::EmptyIdeal));
        assert_eq!(
            LocalIdealRep::new(vec![make_jet("0", 4).unwrap()]),
            Err(KernelError::ZeroGenerator { index: 0 })
        );
    }
}
