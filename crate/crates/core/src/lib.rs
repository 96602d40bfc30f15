//! Exact singularity invariants of plane curve germs and sufficient
//! numerical conditions for T-smoothness of equisingular families of curves
//! on surfaces with Picard number one, products of curves and
//! geometrically ruled surfaces.
//!
//! All arithmetic is exact over the rationals.

pub mod criteria;
pub mod error;
pub mod ideal;
pub mod invariants;
pub mod jet;
pub mod lattice;
pub mod parse;
pub mod rational;

pub use criteria::{
    check_lemma_arithmetic, cross_check_corollaries, evaluate, strictness_mode, CriterionReport, EvalOptions,
    LemmaCondition, LemmaInstance, SingularityCount, Strictness, StrictnessOverride, Verdict,
};
pub use error::{Error, KernelError, Result};
pub use ideal::{
    colength, colength_at_most, intersection_multiplicity, intersection_multiplicity_at_most, tjurina_ideal, Colength,
    ColengthConfig, LocalIdealRep,
};
pub use invariants::{
    catalog_invariants, invariants_of, Alpha, CatalogType, Equivalence, Family, GammaValue, GermSpec, InvariantRecord,
    Provenance, SearchBudget, TauCi,
};
pub use jet::Jet;
pub use lattice::{
    canonical_class, criterion_constants, d_minus_k_squared, intersect, CriterionConstants, DivisorClass, Hypothesis,
    SurfaceModel,
};
pub use parse::{make_jet, ParseError};
pub use rational::Q;
