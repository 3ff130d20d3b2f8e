//! Constructive effectivity for classes with `d >= m1 + ... + me`.
//!
//! The class is written as a non-negative combination of
//! `H, H - E1, 2H - E1 - E2, ..., (e-1)H - E1 - ... - E(e-1)` and
//! `eH - E1 - ... - Ei` for `i >= e` (indices in sorted order), plus bare
//! `Ei` for any negative multiplicity. Each of these is effective when the
//! points lie on a degree-`e` curve.

use serde::Serialize;

use crate::error::{add, mul, sub, Error, Result};
use crate::lattice::{sorted_multiplicities, BlowupContext, DivisorClass};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateTerm {
    pub generator: DivisorClass,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct EffectivityCertificate {
    pub terms: Vec<CertificateTerm>,
}

impl EffectivityCertificate {
    fn push(&mut self, generator: DivisorClass, coefficient: i64) {
        if coefficient != 0 {
            self.terms.push(CertificateTerm { generator, coefficient });
        }
    }

    /// `sum coefficient * generator` on a surface with `r` points.
    pub fn recompose(&self, r: usize) -> Result<DivisorClass> {
        self.terms
            .iter()
            .try_fold(DivisorClass::zero(r), |acc, t| acc.checked_add(&t.generator.checked_scale(t.coefficient)?))
    }
}

/// Which of the allowed generator shapes a class has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// `Ei`, zero-based.
    Exceptional { index: usize },
    /// `jH - (sum of j of the Ei)` with `j < e`; `j = 0` is `H` itself.
    Secant { points: usize },
    /// `eH - (sum of at least e of the Ei)`, i.e. `C1` plus exceptional curves.
    Curve { points: usize },
}

/// Classifies `g` against the allowed generator list for `ctx`; `None` when
/// it is not one of them.
pub fn classify_generator(g: &DivisorClass, ctx: &BlowupContext) -> Option<GeneratorKind> {
    if g.len() != ctx.r() {
        return None;
    }
    let mults = g.mults();
    if g.degree() == 0 {
        let mut nonzero = mults.iter().enumerate().filter(|(_, &m)| m != 0);
        return match (nonzero.next(), nonzero.next()) {
            (Some((index, &-1)), None) => Some(GeneratorKind::Exceptional { index }),
            _ => None,
        };
    }
    if mults.iter().any(|&m| m != 0 && m != 1) {
        return None;
    }
    let points = mults.iter().filter(|&&m| m == 1).count();
    let e = ctx.e() as usize;
    let d = g.degree();
    if points < e && d == points.max(1) as i64 {
        Some(GeneratorKind::Secant { points })
    } else if points >= e && d == ctx.e() {
        Some(GeneratorKind::Curve { points })
    } else {
        None
    }
}

/// Builds the certificate, or `None` when `d < m1 + ... + me` after sorting
/// (the construction is only a sufficient condition).
pub fn effectivity_certificate(l: &DivisorClass, ctx: &BlowupContext) -> Result<Option<EffectivityCertificate>> {
    ctx.check(l)?;
    let r = ctx.r();
    let mut cert = EffectivityCertificate::default();

    // Negative multiplicities: Ei is effective, peel it off.
    let mut stripped = l.mults().to_vec();
    for (i, m) in stripped.iter_mut().enumerate() {
        if *m < 0 {
            let coefficient = m.checked_neg().ok_or(Error::Overflow("certificate"))?;
            cert.push(DivisorClass::exceptional(i, r)?, coefficient);
            *m = 0;
        }
    }
    let stripped = DivisorClass::new(l.degree(), stripped);

    let sorted = sorted_multiplicities(&stripped);
    let e = ctx.e() as usize;
    if l.degree() < sorted.top_sum(e)? {
        return Ok(None);
    }

    // Generator supported on the first `count` sorted points with degree `deg`.
    let generator = |deg: i64, count: usize| {
        let mut mults = vec![0; r];
        for &orig in &sorted.permutation[..count] {
            mults[orig] = 1;
        }
        DivisorClass::new(deg, mults)
    };

    let mut d = l.degree();
    let mut m = sorted.values.clone();
    loop {
        let s = m.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        if s < e {
            // Telescoping sum over the remaining prefix.
            for j in (1..=s).rev() {
                let next = if j < s { m[j] } else { 0 };
                cert.push(generator(j as i64, j), sub(m[j - 1], next, "certificate")?);
            }
            let used = m[..s].iter().try_fold(0i64, |acc, &x| add(acc, x, "certificate"))?;
            cert.push(DivisorClass::hyperplane(r), sub(d, used, "certificate")?);
            break;
        }
        let ms = m[s - 1];
        cert.push(generator(ctx.e(), s), ms);
        d = sub(d, mul(ctx.e(), ms, "certificate")?, "certificate")?;
        for x in &mut m[..s] {
            *x -= ms;
        }
    }
    Ok(Some(cert))
}
