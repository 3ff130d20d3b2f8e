//! Positivity of line bundles on blow-ups of the plane at points lying on a
//! plane curve of degree `e`.
//!
//! A class is `L = dH - sum mi Ei` on `X`, the blow-up of `P^2` at `r` points
//! of an irreducible curve `C` of degree `e`; `C1 = eH - sum Ei` is its strict
//! transform. Every checker returns a three-valued [`Verdict`] with the
//! inequalities it evaluated, so a caller can re-check the reasoning.
//!
//! ```
//! use picpos::{check_ample, BlowupContext, DivisorClass};
//!
//! let ctx = BlowupContext::new(3, 10).unwrap();
//! let v = check_ample(&DivisorClass::uniform(7, 2, 10), &ctx).unwrap();
//! assert!(v.is_positive());
//! ```

pub mod cremona;
pub mod criteria;
pub mod error;
pub mod lattice;
pub mod oracle;

pub use cremona::{
    apply_cremona, check_excellent_e3, orbit_search_standard, reduce_to_standard_e3, CremonaStep, OrbitSearch,
    OrbitStats, ReductionOutcome, ReductionTrace, TraceStep, DEFAULT_ORBIT_DEPTH,
};
pub use criteria::{
    certify_effective, check_ample, check_ample_uniform, check_globally_generated, check_k_very_ample, check_nef,
    classify_generator, effectivity_certificate, negative_kva_certificate, Certificate, CertificateTerm,
    EffectivityCertificate, GeneratorKind, Inequality, Justification, Property, Relation, Status, Term, Verdict,
};
pub use error::{Error, Result};
pub use lattice::{
    adjoint_class, canonical_class, curve_class, sorted_multiplicities, top_e_sum, BlowupContext, DivisorClass,
    SortedMultiplicities, TriState,
};
pub use oracle::{
    bfs_condition, cross_check_uniform, enumerate_obstructions, reider_obstruction, verify_certificate,
    CertificateCheck, ConsistencyReport, EnumerationBounds, EnumerationReport, ObstructionCandidate,
    ObstructionHypotheses, DEFAULT_ENUMERATION_CAP,
};
