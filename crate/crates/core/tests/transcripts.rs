//! Every transcript entry is recomputed from the class with an evaluator
//! written independently of the checkers, and every verdict is checked
//! against conditions it must imply.

use picpos::criteria::expr;
use picpos::*;
use proptest::prelude::*;

/// Independent evaluation of a transcript label. `None` for labels this
/// evaluator does not know.
fn evaluate(label: &str, l: &DivisorClass, ctx: &BlowupContext, k: i64) -> Option<i64> {
    let d = l.degree();
    let e = ctx.e();
    let r = ctx.r() as i64;
    let ms = l.mults();
    let mut sorted = ms.to_vec();
    sorted.sort_unstable();
    let sum: i64 = ms.iter().sum();
    let sq: i64 = ms.iter().map(|m| m * m).sum();
    let m = ms[0];
    let top = sorted.iter().rev().take(e as usize).sum();
    Some(match label {
        expr::CURVE_DOT => d * e - sum,
        expr::SELF_INTERSECTION => d * d - sq,
        expr::DEGREE => d,
        expr::TOP_E_SUM => top,
        expr::TOP_E_SUM_PEELED => sorted.iter().rev().take(e as usize).map(|&x| x.max(0)).sum(),
        expr::BOTTOM_E_SUM => sorted.iter().take(e as usize).sum(),
        expr::MIN_MULT => sorted[0],
        expr::M => m,
        expr::K => k,
        expr::R => r,
        expr::E_SQUARED => e * e,
        expr::D_TIMES_E => d * e,
        expr::R_TIMES_M => r * m,
        expr::E_TIMES_M => e * m,
        expr::ADJOINT_CURVE => (d + 3) * e,
        expr::ADJOINT_POINTS => r * (m + 1),
        expr::R_THRESHOLD => e * e + k + 1,
        expr::DEGREE_BOUND => k + 2,
        expr::ADJOINT_DOT_CURVE => (d + 3) * e - r * (m + 1),
        _ => return None,
    })
}

fn term_value(t: &Term, l: &DivisorClass, ctx: &BlowupContext, k: i64) -> Option<i64> {
    if t.expr == t.value.to_string() {
        return Some(t.value);
    }
    evaluate(&t.expr, l, ctx, k)
}

fn audit(v: &Verdict, l: &DivisorClass, ctx: &BlowupContext) -> Result<(), TestCaseError> {
    let k = i64::from(v.k.unwrap_or(0));
    for ineq in &v.details {
        prop_assert!(ineq.is_consistent(), "{ineq} in {v}");
        for t in [&ineq.lhs, &ineq.rhs] {
            if let Some(expected) = term_value(t, l, ctx, k) {
                prop_assert_eq!(t.value, expected, "{} in {} for {}", t.expr, v, l);
            }
        }
    }
    if v.status.is_decided() {
        prop_assert!(v.failed_hypotheses.is_empty(), "{v} carries failed hypotheses");
    }
    Ok(())
}

fn tri() -> impl Strategy<Value = TriState> {
    prop_oneof![Just(TriState::Yes), Just(TriState::No), Just(TriState::Unknown)]
}

fn context() -> impl Strategy<Value = BlowupContext> {
    (1i64..=6, 1usize..=20, tri(), tri())
        .prop_map(|(e, r, c, g)| BlowupContext::new(e, r).unwrap().with_collinear(c).with_positive_genus(g))
}

fn general_case() -> impl Strategy<Value = (DivisorClass, BlowupContext)> {
    context().prop_flat_map(|ctx| {
        let r = ctx.r();
        ((-5i64..=60), prop::collection::vec(-2i64..=12, r)).prop_map(move |(d, ms)| (DivisorClass::new(d, ms), ctx))
    })
}

fn uniform_case() -> impl Strategy<Value = (DivisorClass, BlowupContext)> {
    (context(), 0i64..=10, -3i64..=8).prop_map(|(ctx, m, offset)| {
        let r = ctx.r();
        let d = (r as i64 * m / ctx.e() + offset).max(0);
        (DivisorClass::uniform(d, m, r), ctx)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn general_transcripts_recompute((l, ctx) in general_case()) {
        let ample = check_ample(&l, &ctx).unwrap();
        let nef = check_nef(&l, &ctx).unwrap();
        let eff = certify_effective(&l, &ctx).unwrap();
        for v in [&ample, &nef, &eff] {
            audit(v, &l, &ctx)?;
        }
        let dot = l.dot(&curve_class(&ctx)).unwrap();
        let sq = l.self_intersection().unwrap();
        if ample.is_positive() {
            prop_assert!(dot > 0 && sq > 0 && l.mults().iter().all(|&m| m > 0));
            prop_assert!(!nef.is_negative(), "ample but {nef}");
        }
        if nef.is_positive() {
            prop_assert!(dot >= 0 && sq >= 0 && l.mults().iter().all(|&m| m >= 0));
        }
        if nef.is_negative() && !ctx.has_e_collinear.is_yes() {
            prop_assert!(dot < 0 || sq < 0 || l.mults().iter().any(|&m| m < 0), "{nef} for {l}");
        }
        if let Some(cert) = eff.effectivity_certificate() {
            prop_assert!(verify_certificate(cert, &l, &ctx).valid);
        }
    }

    #[test]
    fn uniform_transcripts_recompute((l, ctx) in uniform_case(), k in 0u32..=4) {
        let m = l.mults()[0];
        let dot = l.dot(&curve_class(&ctx)).unwrap();
        let vs = [
            check_ample_uniform(&l, &ctx).unwrap(),
            check_globally_generated(&l, &ctx).unwrap(),
            check_k_very_ample(&l, &ctx, k).unwrap(),
        ];
        for v in &vs {
            audit(v, &l, &ctx)?;
        }
        let [ample, gg, kva] = vs;
        if ample.is_positive() {
            prop_assert!(dot > 0 && m > 0);
        }
        if gg.is_positive() || kva.is_positive() {
            prop_assert!(dot >= 0 && m >= 0);
        }
        if kva.is_positive() && k >= 1 {
            prop_assert!(ample.status != Status::Negative, "{kva} but {ample}");
        }
        if kva.is_negative() && kva.justification == Justification::RestrictionDegreeBound {
            prop_assert!(ctx.positive_genus.is_yes() && dot < i64::from(k) + 2);
        }
    }

    #[test]
    fn negative_kva_certificate_transcripts((l, ctx) in uniform_case(), k in 0u32..=4) {
        let ctx = ctx.with_positive_genus(TriState::Yes);
        let v = negative_kva_certificate(&l, &ctx, k).unwrap();
        audit(&v, &l, &ctx)?;
    }
}

#[test]
fn every_label_is_known_to_the_evaluator() {
    let ctx = BlowupContext::new(3, 10).unwrap();
    let l = DivisorClass::uniform(7, 2, 10);
    for label in [
        expr::CURVE_DOT,
        expr::SELF_INTERSECTION,
        expr::DEGREE,
        expr::TOP_E_SUM,
        expr::TOP_E_SUM_PEELED,
        expr::BOTTOM_E_SUM,
        expr::MIN_MULT,
        expr::M,
        expr::K,
        expr::R,
        expr::E_SQUARED,
        expr::D_TIMES_E,
        expr::R_TIMES_M,
        expr::E_TIMES_M,
        expr::ADJOINT_CURVE,
        expr::ADJOINT_POINTS,
        expr::R_THRESHOLD,
        expr::DEGREE_BOUND,
        expr::ADJOINT_DOT_CURVE,
    ] {
        assert!(evaluate(label, &l, &ctx, 1).is_some(), "{label}");
    }
}
