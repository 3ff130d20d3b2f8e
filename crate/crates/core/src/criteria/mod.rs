//! Positivity checkers. Each returns a three-valued [`Verdict`] with the
//! inequalities it evaluated, so a caller can re-check every claim from
//! `(L, ctx, k)` alone.
//!
//! The positive criteria are sufficient conditions only. Negative verdicts
//! come from cheap necessary conditions: pairing with the irreducible curves
//! `C1` and `Ei`, the sign of `L^2`, a line through `e` collinear points, and
//! the restriction-degree bound on a curve of positive genus.

pub mod effective;
pub mod verdict;

use crate::error::{add, mul, Error, Result};
use crate::lattice::{adjoint_class, curve_class, sorted_multiplicities, BlowupContext, DivisorClass};

pub use effective::{
    classify_generator, effectivity_certificate, CertificateTerm, EffectivityCertificate, GeneratorKind,
};
pub use verdict::{Certificate, Inequality, Justification, Property, Relation, Status, Term, Verdict};

/// Expression labels used in verdict transcripts.
pub mod expr {
    pub const CURVE_DOT: &str = "L.C1";
    pub const SELF_INTERSECTION: &str = "L^2";
    pub const DEGREE: &str = "d";
    pub const TOP_E_SUM: &str = "m1+...+me";
    /// Same sum with negative multiplicities replaced by 0.
    pub const TOP_E_SUM_PEELED: &str = "m1+...+me (negative mi as 0)";
    pub const BOTTOM_E_SUM: &str = "sum of e smallest mi";
    pub const MIN_MULT: &str = "min mi";
    pub const M: &str = "m";
    pub const K: &str = "k";
    pub const R: &str = "r";
    pub const E_SQUARED: &str = "e^2";
    pub const D_TIMES_E: &str = "d*e";
    pub const R_TIMES_M: &str = "r*m";
    pub const E_TIMES_M: &str = "e*m";
    pub const ADJOINT_CURVE: &str = "(d+3)e";
    pub const ADJOINT_POINTS: &str = "r(m+1)";
    pub const R_THRESHOLD: &str = "e^2+k+1";
    pub const DEGREE_BOUND: &str = "k+2";
    pub const ADJOINT_DOT_CURVE: &str = "N.C1";
}

use expr::*;

/// Quantities shared by the checkers.
struct Numbers {
    d: i64,
    dot_curve: i64,
    square: i64,
    top_e: i64,
    bottom_e: i64,
    min_mult: i64,
}

impl Numbers {
    fn of(l: &DivisorClass, ctx: &BlowupContext) -> Result<Self> {
        ctx.check(l)?;
        let sorted = sorted_multiplicities(l);
        let e = ctx.e() as usize;
        let bottom_e = sorted
            .values
            .iter()
            .rev()
            .take(e)
            .try_fold(0i64, |acc, &m| add(acc, m, "sum of smallest multiplicities"))?;
        Ok(Numbers {
            d: l.degree(),
            dot_curve: l.dot(&curve_class(ctx))?,
            square: l.self_intersection()?,
            top_e: sorted.top_sum(e)?,
            bottom_e,
            min_mult: *sorted.values.last().expect("r >= 1"),
        })
    }
}

fn zero() -> Term {
    Term::constant(0)
}

/// Records an inequality that a positive criterion needs; a failure is also
/// listed among the failed hypotheses.
fn require(v: &mut Verdict, lhs: Term, rel: Relation, rhs: Term) -> bool {
    let ineq = Inequality::new(lhs, rel, rhs);
    let holds = ineq.holds;
    if !holds {
        v.failed(ineq.to_string());
    }
    v.details.push(ineq);
    holds
}

fn finish(mut v: Verdict, status: Status, why: Justification) -> Verdict {
    if status.is_decided() {
        v.failed_hypotheses.clear();
    }
    v.decide(status, why)
}

/// Whether a line through `e` of the points can exist.
fn collinear_applies(ctx: &BlowupContext) -> bool {
    ctx.has_e_collinear.is_yes() && ctx.e() as usize <= ctx.r()
}

const COLLINEAR_NOTE: &str =
    "the sum condition is also necessary here: e of the points are collinear, and the line through them is an irreducible curve";

/// Ampleness of an arbitrary class.
///
/// Positive when every `mi > 0`, `L.C1 > 0` and `d > m1 + ... + me` (the `e`
/// largest, zero-padded when `r < e`).
pub fn check_ample(l: &DivisorClass, ctx: &BlowupContext) -> Result<Verdict> {
    let n = Numbers::of(l, ctx)?;
    let mut v = Verdict::new(Property::Ample, None);

    let exc_ok = require(&mut v, Term::new(MIN_MULT, n.min_mult), Relation::Gt, zero());
    let curve_ok = require(&mut v, Term::new(CURVE_DOT, n.dot_curve), Relation::Gt, zero());
    let sum_ok = require(&mut v, Term::new(DEGREE, n.d), Relation::Gt, Term::new(TOP_E_SUM, n.top_e));
    let square_ok = v.record(Term::new(SELF_INTERSECTION, n.square), Relation::Gt, zero());

    if collinear_applies(ctx) {
        v.note(COLLINEAR_NOTE);
    }

    if exc_ok && curve_ok && sum_ok {
        debug_assert!(square_ok, "sum criterion forces L^2 > 0");
        return Ok(finish(v, Status::Positive, Justification::SumCriterion));
    }
    if !square_ok {
        return Ok(finish(v, Status::Negative, Justification::SelfIntersection));
    }
    if !curve_ok {
        return Ok(finish(v, Status::Negative, Justification::CurveDegree));
    }
    if !exc_ok {
        return Ok(finish(v, Status::Negative, Justification::ExceptionalDegree));
    }
    if collinear_applies(ctx) {
        let line_ok = v.record(Term::new(DEGREE, n.d), Relation::Gt, Term::new(BOTTOM_E_SUM, n.bottom_e));
        if !line_ok {
            return Ok(finish(v, Status::Negative, Justification::CollinearLine));
        }
    } else if ctx.has_e_collinear == crate::TriState::Unknown {
        v.note("the sum condition would be necessary if e of the points were collinear");
    }
    Ok(finish(v, Status::Unknown, Justification::HypothesesNotMet))
}

/// Nefness. Uniform classes with `r >= e^2` are decided exactly by
/// `L.C1 >= 0` and `m >= 0`.
pub fn check_nef(l: &DivisorClass, ctx: &BlowupContext) -> Result<Verdict> {
    let n = Numbers::of(l, ctx)?;
    let mut v = Verdict::new(Property::Nef, None);

    if let Some(m) = l.uniform_multiplicity() {
        let e_sq = ctx.e_squared()?;
        if ctx.r_i64() >= e_sq {
            v.record(Term::new(R, ctx.r_i64()), Relation::Ge, Term::new(E_SQUARED, e_sq));
            let curve_ok = v.record(Term::new(CURVE_DOT, n.dot_curve), Relation::Ge, zero());
            let m_ok = v.record(Term::new(M, m), Relation::Ge, zero());
            return Ok(match (curve_ok, m_ok) {
                (true, true) => finish(v, Status::Positive, Justification::UniformNefLargeR),
                (false, _) => finish(v, Status::Negative, Justification::CurveDegree),
                (true, false) => finish(v, Status::Negative, Justification::ExceptionalDegree),
            });
        }
    }

    let exc_ok = require(&mut v, Term::new(MIN_MULT, n.min_mult), Relation::Ge, zero());
    let curve_ok = require(&mut v, Term::new(CURVE_DOT, n.dot_curve), Relation::Ge, zero());
    let sum_ok = require(&mut v, Term::new(DEGREE, n.d), Relation::Ge, Term::new(TOP_E_SUM, n.top_e));
    let square_ok = v.record(Term::new(SELF_INTERSECTION, n.square), Relation::Ge, zero());

    if exc_ok && curve_ok && sum_ok {
        return Ok(finish(v, Status::Positive, Justification::NefSumCriterion));
    }
    if !curve_ok {
        return Ok(finish(v, Status::Negative, Justification::CurveDegree));
    }
    if !exc_ok {
        return Ok(finish(v, Status::Negative, Justification::ExceptionalDegree));
    }
    if !square_ok {
        return Ok(finish(v, Status::Negative, Justification::SelfIntersection));
    }
    if collinear_applies(ctx) {
        v.note(COLLINEAR_NOTE);
        let line_ok = v.record(Term::new(DEGREE, n.d), Relation::Ge, Term::new(BOTTOM_E_SUM, n.bottom_e));
        if !line_ok {
            return Ok(finish(v, Status::Negative, Justification::CollinearLine));
        }
    }
    Ok(finish(v, Status::Unknown, Justification::HypothesesNotMet))
}

fn uniform_m(l: &DivisorClass, what: &'static str) -> Result<i64> {
    l.uniform_multiplicity().ok_or(Error::NotUniform(what))
}

/// Ampleness of `dH - m(E1 + ... + Er)` with `m >= 0`.
///
/// With `r >= e^2` this is exact: ample iff `de > rm` (and `m > 0`, since
/// `dH` meets every `Ei` trivially). With `r < e^2`, `d > em` suffices.
pub fn check_ample_uniform(l: &DivisorClass, ctx: &BlowupContext) -> Result<Verdict> {
    let m = uniform_m(l, "check_ample_uniform")?;
    if m < 0 {
        return Err(Error::Precondition(format!("uniform multiplicity m = {m} must be non-negative")));
    }
    let n = Numbers::of(l, ctx)?;
    let mut v = Verdict::new(Property::Ample, None);
    let e_sq = ctx.e_squared()?;
    let r = ctx.r_i64();
    let large_r = v.record(Term::new(R, r), Relation::Ge, Term::new(E_SQUARED, e_sq));

    if !require(&mut v, Term::new(M, m), Relation::Gt, zero()) {
        v.note("dH meets every exceptional curve trivially, so it is never ample on the blow-up");
        return Ok(finish(v, Status::Negative, Justification::ExceptionalDegree));
    }

    if large_r {
        let de = mul(l.degree(), ctx.e(), "d*e")?;
        let rm = mul(r, m, "r*m")?;
        let ok = v.record(Term::new(D_TIMES_E, de), Relation::Gt, Term::new(R_TIMES_M, rm));
        let status = if ok { Status::Positive } else { Status::Negative };
        return Ok(finish(v, status, Justification::UniformLargeR));
    }

    let em = mul(ctx.e(), m, "e*m")?;
    if require(&mut v, Term::new(DEGREE, n.d), Relation::Gt, Term::new(E_TIMES_M, em)) {
        return Ok(finish(v, Status::Positive, Justification::UniformSmallR));
    }
    if !v.record(Term::new(CURVE_DOT, n.dot_curve), Relation::Gt, zero()) {
        return Ok(finish(v, Status::Negative, Justification::CurveDegree));
    }
    if !v.record(Term::new(SELF_INTERSECTION, n.square), Relation::Gt, zero()) {
        return Ok(finish(v, Status::Negative, Justification::SelfIntersection));
    }
    if collinear_applies(ctx) {
        v.note(COLLINEAR_NOTE);
        return Ok(finish(v, Status::Negative, Justification::CollinearLine));
    }
    v.note("d > em would be necessary if e of the points were collinear");
    Ok(finish(v, Status::Unknown, Justification::HypothesesNotMet))
}

/// Effectivity, with a generator certificate when `d >= m1 + ... + me`
/// after removing negative multiplicities.
pub fn certify_effective(l: &DivisorClass, ctx: &BlowupContext) -> Result<Verdict> {
    ctx.check(l)?;
    let mut v = Verdict::new(Property::Effective, None);
    let positive_part = DivisorClass::new(l.degree(), l.mults().iter().map(|&m| m.max(0)).collect());
    let top = crate::lattice::top_e_sum(&positive_part, ctx)?;
    v.record(Term::new(DEGREE, l.degree()), Relation::Ge, Term::new(TOP_E_SUM_PEELED, top));

    match effectivity_certificate(l, ctx)? {
        Some(cert) => {
            v.certificate = Some(Certificate::Effectivity(cert));
            Ok(finish(v, Status::Positive, Justification::StandardEffectivity))
        }
        None => {
            // H is nef, so an effective class has d >= 0.
            if !v.record(Term::new(DEGREE, l.degree()), Relation::Ge, zero()) {
                v.note("H is nef, so every effective class has d >= 0");
                return Ok(finish(v, Status::Negative, Justification::CurveDegree));
            }
            v.failed(format!("d >= m1+...+me fails: {} < {top}", l.degree()));
            Ok(finish(v, Status::Unknown, Justification::HypothesesNotMet))
        }
    }
}

fn adjoint_terms(l: &DivisorClass, ctx: &BlowupContext, m: i64) -> Result<(Term, Term)> {
    let d3 = add(l.degree(), 3, "d+3")?;
    let lhs = mul(d3, ctx.e(), "(d+3)e")?;
    let rhs = mul(ctx.r_i64(), add(m, 1, "m+1")?, "r(m+1)")?;
    Ok((Term::new(ADJOINT_CURVE, lhs), Term::new(ADJOINT_POINTS, rhs)))
}

/// Global generation of a uniform class with `m >= 0`.
pub fn check_globally_generated(l: &DivisorClass, ctx: &BlowupContext) -> Result<Verdict> {
    let m = uniform_m(l, "check_globally_generated")?;
    if m < 0 {
        return Err(Error::Precondition(format!("uniform multiplicity m = {m} must be non-negative")));
    }
    ctx.check(l)?;
    let v = Verdict::new(Property::GloballyGenerated, None);
    adjoint_verdict(v, l, ctx, m, 0)
}

/// k-very ampleness of a uniform class. `k = 0` agrees with
/// [`check_globally_generated`] on every positive answer.
pub fn check_k_very_ample(l: &DivisorClass, ctx: &BlowupContext, k: u32) -> Result<Verdict> {
    let m = uniform_m(l, "check_k_very_ample")?;
    ctx.check(l)?;
    let v = Verdict::new(Property::KVeryAmple, Some(k));
    adjoint_verdict(v, l, ctx, m, k)
}

fn adjoint_verdict(mut v: Verdict, l: &DivisorClass, ctx: &BlowupContext, m: i64, k: u32) -> Result<Verdict> {
    let k64 = i64::from(k);
    if k == 0 && m == 0 && l.degree() >= 0 {
        v.record(Term::new(M, 0), Relation::Eq, zero());
        v.record(Term::new(DEGREE, l.degree()), Relation::Ge, zero());
        return Ok(finish(v, Status::Positive, Justification::PullbackOfPlane));
    }

    let m_ok = require(&mut v, Term::new(M, m), Relation::Ge, Term::new(K, k64));
    let (lhs, rhs) = adjoint_terms(l, ctx, m)?;
    let adj_ok = require(&mut v, lhs, Relation::Gt, rhs);
    let threshold = add(ctx.e_squared()?, add(k64, 1, "e^2+k+1")?, "e^2+k+1")?;
    let r_ok = require(&mut v, Term::new(R, ctx.r_i64()), Relation::Ge, Term::new(R_THRESHOLD, threshold));
    if m_ok && adj_ok && r_ok {
        return Ok(finish(v, Status::Positive, Justification::AdjointCriterion));
    }

    // k-very ample implies globally generated implies nef.
    if m < 0 {
        v.record(Term::new(M, m), Relation::Ge, zero());
        return Ok(finish(v, Status::Negative, Justification::ExceptionalDegree));
    }
    let dot_curve = l.dot(&curve_class(ctx))?;
    if dot_curve < 0 {
        v.record(Term::new(CURVE_DOT, dot_curve), Relation::Ge, zero());
        return Ok(finish(v, Status::Negative, Justification::CurveDegree));
    }

    let n_dot = adjoint_class(l, ctx)?.dot(&curve_class(ctx))?;
    if n_dot < 0 {
        v.note(format!("N = L - K_X is not nef (N.C1 = {n_dot} < 0), so the adjoint criterion cannot apply"));
        v.record(Term::new(ADJOINT_DOT_CURVE, n_dot), Relation::Ge, zero());
    }

    if ctx.positive_genus.is_yes() {
        let bound = negative_kva_certificate(l, ctx, k)?;
        if bound.is_negative() {
            v.details.extend(bound.details);
            v.annotations.extend(bound.annotations);
            return Ok(finish(v, Status::Negative, Justification::RestrictionDegreeBound));
        }
        v.details.extend(bound.details);
        v.annotations.extend(bound.annotations);
    }
    Ok(finish(v, Status::Unknown, Justification::HypothesesNotMet))
}

/// Not k-very ample when `L.C1 <= k + 1`, using that a k-very ample bundle on
/// a curve of positive genus has degree at least `k + 2` and that
/// `deg(L|C) = L.C1`.
pub fn negative_kva_certificate(l: &DivisorClass, ctx: &BlowupContext, k: u32) -> Result<Verdict> {
    if !ctx.positive_genus.is_yes() {
        return Err(Error::Precondition(
            "the restriction-degree bound needs a curve of positive genus (positive_genus = yes)".into(),
        ));
    }
    ctx.check(l)?;
    let mut v = Verdict::new(Property::KVeryAmple, Some(k));
    let dot_curve = l.dot(&curve_class(ctx))?;
    let bound = add(i64::from(k), 2, "k+2")?;
    let low = v.record(Term::new(CURVE_DOT, dot_curve), Relation::Lt, Term::new(DEGREE_BOUND, bound));
    if !low {
        return Ok(finish(v, Status::Unknown, Justification::HypothesesNotMet));
    }
    if k == 0 && dot_curve == 0 {
        v.note("L|C has degree 0 and may be trivial, which is globally generated");
        return Ok(finish(v, Status::Unknown, Justification::HypothesesNotMet));
    }
    v.note(format!("deg(L|C) = L.C1 = {dot_curve}, below the bound {bound} for a {k}-very ample bundle on C"));
    Ok(finish(v, Status::Negative, Justification::RestrictionDegreeBound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::TriState;

    fn ctx(e: i64, r: usize) -> BlowupContext {
        BlowupContext::new(e, r).unwrap()
    }

    fn value(v: &Verdict, expr: &str) -> i64 {
        v.find_detail(expr).unwrap_or_else(|| panic!("no `{expr}` in {:?}", v.details)).lhs.value
    }

    fn quartic_17() -> DivisorClass {
        let mut mults = vec![3; 13];
        mults.extend([1; 4]);
        DivisorClass::new(11, mults)
    }

    fn quartic_18() -> DivisorClass {
        let mut mults = vec![3; 3];
        mults.extend([2; 15]);
        DivisorClass::new(10, mults)
    }

    #[test]
    fn isotropic_quartic_class_is_not_ample() {
        let v = check_ample(&quartic_17(), &ctx(4, 17)).unwrap();
        assert_eq!(v.status, Status::Negative);
        assert_eq!(v.justification, Justification::SelfIntersection);
        assert_eq!(value(&v, SELF_INTERSECTION), 0);
        assert_eq!(value(&v, CURVE_DOT), 1);
        let sum = v.find_detail(DEGREE).unwrap();
        assert_eq!((sum.lhs.value, sum.rhs.value, sum.holds), (11, 12, false));
    }

    #[test]
    fn excellent_cubic_class_is_ample() {
        let v = check_ample(&DivisorClass::uniform(7, 2, 10), &ctx(3, 10)).unwrap();
        assert_eq!(v.status, Status::Positive);
        assert_eq!(value(&v, CURVE_DOT), 1);
    }

    #[test]
    fn quartic_18_is_beyond_the_criterion() {
        let c = ctx(4, 18).with_collinear(TriState::No);
        let v = check_ample(&quartic_18(), &c).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(value(&v, SELF_INTERSECTION), 13);
        assert_eq!(value(&v, CURVE_DOT), 1);
        assert_eq!(v.failed_hypotheses.len(), 1);
    }

    #[test]
    fn collinear_points_turn_the_sum_condition_negative() {
        // Uniform, so any four collinear points carry the full sum.
        let v = check_ample(&DivisorClass::uniform(8, 2, 10), &ctx(4, 10).with_collinear(TriState::Yes)).unwrap();
        assert_eq!(v.status, Status::Negative);
        assert_eq!(v.justification, Justification::CollinearLine);
        // Non-uniform: only the smallest four multiplicities are guaranteed on the line.
        let v = check_ample(&quartic_18(), &ctx(4, 18).with_collinear(TriState::Yes)).unwrap();
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn nef_examples() {
        let c = ctx(3, 10);
        let v = check_nef(&DivisorClass::hyperplane(10), &c).unwrap();
        assert_eq!(v.status, Status::Positive);
        let v = check_nef(&DivisorClass::uniform(7, 2, 10), &c).unwrap();
        assert_eq!((v.status, v.justification), (Status::Positive, Justification::UniformNefLargeR));
        let v = check_nef(&DivisorClass::uniform(6, 2, 10), &c).unwrap();
        assert_eq!(v.status, Status::Negative);
        assert_eq!(value(&v, CURVE_DOT), -2);
        // H is nef for any e.
        let v = check_nef(&DivisorClass::hyperplane(2), &ctx(5, 2)).unwrap();
        assert_eq!(v.status, Status::Positive);
    }

    #[test]
    fn uniform_ampleness() {
        let c = ctx(3, 10);
        for (d, m) in [(7, 2), (24, 7)] {
            let v = check_ample_uniform(&DivisorClass::uniform(d, m, 10), &c).unwrap();
            assert_eq!(v.status, Status::Positive, "{d}H - {m}E");
        }
        let v = check_ample_uniform(&DivisorClass::uniform(32, 5, 31), &ctx(5, 31)).unwrap();
        assert_eq!(v.status, Status::Positive);
        let de = v.find_detail(D_TIMES_E).unwrap();
        assert_eq!((de.lhs.value, de.rhs.value), (160, 155));

        let v = check_ample_uniform(&DivisorClass::uniform(5, 0, 10), &c).unwrap();
        assert_eq!(v.status, Status::Negative);

        assert!(matches!(check_ample_uniform(&quartic_18(), &ctx(4, 18)), Err(Error::NotUniform(_))));
        assert!(check_ample_uniform(&DivisorClass::uniform(5, -1, 10), &c).is_err());
    }

    #[test]
    fn uniform_ampleness_small_r() {
        let c = ctx(3, 5);
        assert!(check_ample_uniform(&DivisorClass::uniform(7, 2, 5), &c).unwrap().is_positive());
        let v = check_ample_uniform(&DivisorClass::uniform(6, 2, 5), &c).unwrap();
        assert!(v.is_unknown());
        let v = check_ample_uniform(&DivisorClass::uniform(6, 2, 5), &c.with_collinear(TriState::Yes)).unwrap();
        assert_eq!(v.justification, Justification::CollinearLine);
    }

    #[test]
    fn effectivity_verdicts() {
        let c = ctx(3, 10);
        let v = certify_effective(&DivisorClass::uniform(7, 2, 10), &c).unwrap();
        assert!(v.is_positive());
        assert!(v.effectivity_certificate().is_some());
        let v = certify_effective(&DivisorClass::uniform(5, 2, 10), &c).unwrap();
        assert!(v.is_unknown());
        let v = certify_effective(&DivisorClass::new(-1, vec![-1; 10]), &c).unwrap();
        assert!(v.is_negative());
    }

    #[test]
    fn global_generation() {
        let c = ctx(3, 10).with_positive_genus(TriState::Yes);
        let v = check_globally_generated(&DivisorClass::uniform(24, 7, 10), &c).unwrap();
        assert!(v.is_positive());
        let adj = v.find_detail(ADJOINT_CURVE).unwrap();
        assert_eq!((adj.lhs.value, adj.rhs.value), (81, 80));

        let v = check_globally_generated(&DivisorClass::uniform(7, 2, 10), &c).unwrap();
        assert_eq!((v.status, v.justification), (Status::Negative, Justification::RestrictionDegreeBound));
        let adj = v.find_detail(ADJOINT_CURVE).unwrap();
        assert_eq!((adj.lhs.value, adj.rhs.value, adj.holds), (30, 30, false));
        let bound = v.find_detail(CURVE_DOT).unwrap();
        assert_eq!((bound.lhs.value, bound.rhs.value), (1, 2));

        let v = check_globally_generated(&DivisorClass::zero(10), &c).unwrap();
        assert_eq!((v.status, v.justification), (Status::Positive, Justification::PullbackOfPlane));

        // Without the genus flag the same class stays undecided.
        let v = check_globally_generated(&DivisorClass::uniform(7, 2, 10), &ctx(3, 10)).unwrap();
        assert!(v.is_unknown());
        assert!(!v.failed_hypotheses.is_empty());

        assert!(check_globally_generated(&quartic_18(), &ctx(4, 18)).is_err());
        assert!(check_globally_generated(&DivisorClass::uniform(3, -1, 10), &c).is_err());
    }

    #[test]
    fn quintic_family() {
        let c = ctx(5, 31).with_positive_genus(TriState::Yes);
        let at = |d| check_k_very_ample(&DivisorClass::uniform(d, 5, 31), &c, 5).unwrap();

        let v = at(35);
        assert!(v.is_positive());
        let adj = v.find_detail(ADJOINT_CURVE).unwrap();
        assert_eq!((adj.lhs.value, adj.rhs.value), (190, 186));

        for d in [33, 34] {
            let v = at(d);
            assert!(v.is_unknown(), "d = {d}");
            assert!(v.annotations.iter().any(|a| a.contains("not nef")), "{:?}", v.annotations);
        }
        assert_eq!(at(33).find_detail(ADJOINT_CURVE).unwrap().lhs.value, 180);

        let v = at(32);
        assert!(v.is_negative());
        let bound = v.find_detail(CURVE_DOT).unwrap();
        assert_eq!((bound.lhs.value, bound.rhs.value, bound.rel), (5, 7, Relation::Lt));
    }

    #[test]
    fn very_ampleness_fails_for_too_few_points() {
        let l = DivisorClass::uniform(24, 7, 10);
        let v = check_k_very_ample(&l, &ctx(3, 10), 1).unwrap();
        assert!(v.is_unknown());
        assert!(v.failed_hypotheses.iter().any(|f| f.contains("e^2+k+1")));
        let v = check_k_very_ample(&l, &ctx(3, 10).with_positive_genus(TriState::Yes), 1).unwrap();
        assert!(v.is_negative());
        let bound = v.find_detail(CURVE_DOT).unwrap();
        assert_eq!((bound.lhs.value, bound.rhs.value), (2, 3));
    }

    #[test]
    fn restriction_bound() {
        let c = ctx(3, 10).with_positive_genus(TriState::Yes);
        assert!(negative_kva_certificate(&DivisorClass::uniform(7, 2, 10), &c, 0).unwrap().is_negative());
        // L.C1 = 3 = k + 2 with k = 1.
        assert!(negative_kva_certificate(&DivisorClass::uniform(11, 3, 10), &c, 1).unwrap().is_unknown());
        // Degree-zero restriction at k = 0 might be trivial.
        assert!(negative_kva_certificate(&DivisorClass::uniform(10, 3, 10), &c, 0).unwrap().is_unknown());
        assert!(negative_kva_certificate(&DivisorClass::uniform(7, 2, 10), &ctx(3, 10), 0).is_err());
    }

    #[test]
    fn mismatched_dimension() {
        let c = ctx(3, 10);
        let l = DivisorClass::uniform(7, 2, 9);
        assert!(matches!(check_ample(&l, &c), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(check_nef(&l, &c), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(certify_effective(&l, &c), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(check_k_very_ample(&l, &c, 1), Err(Error::DimensionMismatch { .. })));
    }
}
