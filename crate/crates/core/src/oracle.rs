//! Brute-force cross-checks.
//!
//! The obstruction predicates are the inequality chains that an effective
//! divisor `D` must satisfy when `K + N` fails to be globally generated
//! (`reider_obstruction`) or k-very ample (`bfs_condition`). The enumerator
//! searches a box of lattice classes `D = fH - sum ni Ei` for such `D`; it
//! cannot tell whether a class is actually effective, so its output is a list
//! of candidates rather than counterexamples.

use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{
    check_ample, check_ample_uniform, check_nef, classify_generator, EffectivityCertificate, Status, Verdict,
};
use crate::error::{add, mul, sub, Error, Result};
use crate::lattice::{curve_class, BlowupContext, DivisorClass};

/// `N.D - k - 1 <= D^2 < N.D / 2 < k + 1`, with the strict halves doubled so
/// everything stays integral.
pub fn bfs_condition(n: &DivisorClass, d: &DivisorClass, k: u32, ctx: &BlowupContext) -> Result<bool> {
    let alpha = ctx.intersect(n, d)?;
    let beta = d.self_intersection()?;
    Ok(bfs_holds(alpha, beta, i64::from(k)))
}

fn bfs_holds(alpha: i64, beta: i64, k: i64) -> bool {
    // alpha, beta come from checked products; k is a u32.
    let k1 = k + 1;
    (alpha as i128) - (k1 as i128) <= beta as i128
        && 2 * (beta as i128) < alpha as i128
        && (alpha as i128) < 2 * (k1 as i128)
}

/// `D.N = 0, D^2 = -1` or `D.N = 1, D^2 = 0`.
pub fn reider_obstruction(n: &DivisorClass, d: &DivisorClass, ctx: &BlowupContext) -> Result<bool> {
    let alpha = ctx.intersect(n, d)?;
    let beta = d.self_intersection()?;
    Ok((alpha == 0 && beta == -1) || (alpha == 1 && beta == 0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionCandidate {
    /// For a uniform `N` this is the representative with `ni` non-increasing.
    pub class: DivisorClass,
    /// `N.D`
    pub alpha: i64,
    /// `D^2`
    pub beta: i64,
    /// `sum ni`
    pub n: i64,
    /// `D.C1 = ef - n`
    pub dot_curve: i64,
    /// Number of classes obtained by permuting the `ni` (1 for non-uniform `N`).
    pub orbit_size: u128,
    pub n_at_least_r: bool,
    pub meets_curve_nonnegatively: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationBounds {
    pub f_max: i64,
    pub n_max: i64,
}

impl EnumerationBounds {
    /// `f <= 2e` and `ni <= r`.
    pub fn default_for(ctx: &BlowupContext) -> Self {
        EnumerationBounds { f_max: 2 * ctx.e(), n_max: ctx.r_i64() }
    }
}

/// Largest search box `enumerate_obstructions` accepts unless told otherwise.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000_000;

/// The hypotheses `k >= 1`, `r >= e^2 + k + 1`, `(d+3)e > r(m+1)` and `m >= k`
/// for the uniform class `L = N + K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ObstructionHypotheses {
    pub d: i64,
    pub m: i64,
    pub k_positive: bool,
    pub enough_points: bool,
    pub adjoint_positive_on_curve: bool,
    pub m_at_least_k: bool,
}

impl ObstructionHypotheses {
    pub fn all_hold(&self) -> bool {
        self.k_positive && self.enough_points && self.adjoint_positive_on_curve && self.m_at_least_k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub bounds: EnumerationBounds,
    pub k: u32,
    pub candidates: Vec<ObstructionCandidate>,
    /// Present when `N` is uniform.
    pub hypotheses: Option<ObstructionHypotheses>,
    /// Size of the unpruned search box.
    pub search_space: u128,
    /// Partial assignments visited by the pruned search.
    pub visited: u64,
}

impl EnumerationReport {
    /// Candidates that could still be effective once the hypotheses hold.
    ///
    /// Under the hypotheses `N` is uniform with `N.C1 > 0` and `r >= e^2`, so
    /// it is ample and every effective `D != 0` has `N.D > 0`. Candidates with
    /// `alpha <= 0` are lattice artefacts.
    pub fn admissible(&self) -> impl Iterator<Item = &ObstructionCandidate> {
        let gate = self.hypotheses.is_some_and(|h| h.all_hold());
        self.candidates.iter().filter(move |c| gate && c.alpha > 0)
    }

    /// Admissible candidates with `n >= r`.
    pub fn point_bound_violations(&self) -> Vec<&ObstructionCandidate> {
        self.admissible().filter(|c| c.n_at_least_r).collect()
    }

    /// Admissible candidates with `D.C1 >= 0`.
    pub fn curve_violations(&self) -> Vec<&ObstructionCandidate> {
        self.admissible().filter(|c| c.meets_curve_nonnegatively).collect()
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at each step.
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn search_space(ctx: &BlowupContext, bounds: EnumerationBounds, uniform: bool) -> u128 {
    let r = ctx.r() as u128;
    let values = (bounds.n_max + 2).max(0) as u128;
    let f_slices = bounds.f_max.max(0) as u128;
    let (zero_slice, per_slice) = if uniform {
        (r + 1, binomial(r + values.saturating_sub(1), r))
    } else {
        let pow = |base: u128| (0..r).try_fold(1u128, |acc, _| acc.checked_mul(base)).unwrap_or(u128::MAX);
        (pow(2), pow(values))
    };
    zero_slice.saturating_add(per_slice.saturating_mul(f_slices))
}

/// `r! / prod(count!)` for the run lengths of a sorted vector.
fn orbit_size(sorted: &[i64]) -> u128 {
    let mut remaining = sorted.len() as u128;
    let mut acc: u128 = 1;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let run = (j - i) as u128;
        acc = acc.saturating_mul(binomial(remaining, run));
        remaining -= run;
        i = j;
    }
    acc
}

/// One `f`-slice of the search. Coordinates are filled left to right; for a
/// uniform `N` the values are non-increasing.
struct Slice<'a> {
    f: i64,
    lo: i64,
    hi: i64,
    n_degree: i64,
    n_mults: &'a [i64],
    uniform: bool,
    k1: i64,
    e: i64,
    r: i64,
    /// Upper bound for `sum (ni^2 - ai ni)`.
    quad_bound: i128,
    /// `sum ai ni` must exceed this.
    linear_floor: i128,
    /// Suffix minima of `ni^2 - ai ni` over `[lo, hi]`.
    quad_suffix_min: Vec<i128>,
    /// Suffix maxima of `ai ni` over `[lo, hi]`.
    linear_suffix_max: Vec<i128>,
    visited: u64,
    out: Vec<ObstructionCandidate>,
}

fn quad(x: i64, a: i64) -> i128 {
    let x = x as i128;
    x * x - (a as i128) * x
}

fn min_quad(lo: i64, hi: i64, a: i64) -> i128 {
    // Vertex of x^2 - a x at a/2; check the nearest integers inside [lo, hi].
    let mut best = quad(lo, a).min(quad(hi, a));
    for c in [a.div_euclid(2), a.div_euclid(2) + 1] {
        if (lo..=hi).contains(&c) {
            best = best.min(quad(c, a));
        }
    }
    best
}

impl<'a> Slice<'a> {
    fn new(f: i64, bounds: EnumerationBounds, n: &'a DivisorClass, k: u32, ctx: &BlowupContext, uniform: bool) -> Self {
        let (lo, hi) = if f == 0 { (-1, 0) } else { (-1, bounds.n_max.max(-1)) };
        let k1 = i64::from(k) + 1;
        let (f128, nd) = (f as i128, n.degree() as i128);
        let r = n.len();
        let mut quad_suffix_min = vec![0i128; r + 1];
        let mut linear_suffix_max = vec![0i128; r + 1];
        for i in (0..r).rev() {
            let a = n.mults()[i];
            quad_suffix_min[i] = quad_suffix_min[i + 1] + min_quad(lo, hi, a);
            let lin = (a as i128 * lo as i128).max(a as i128 * hi as i128);
            linear_suffix_max[i] = linear_suffix_max[i + 1] + lin;
        }
        Slice {
            f,
            lo,
            hi,
            n_degree: n.degree(),
            n_mults: n.mults(),
            uniform,
            k1,
            e: ctx.e(),
            r: ctx.r_i64(),
            // alpha - k - 1 <= beta  <=>  sum(ni^2 - ai ni) <= f^2 - Nd f + k + 1
            quad_bound: f128 * f128 - nd * f128 + k1 as i128,
            // alpha < 2(k+1)  <=>  sum ai ni > Nd f - 2(k+1)
            linear_floor: nd * f128 - 2 * k1 as i128,
            quad_suffix_min,
            linear_suffix_max,
            visited: 0,
            out: Vec::new(),
        }
    }

    fn run(mut self) -> Self {
        let mut current = Vec::with_capacity(self.n_mults.len());
        self.descend(&mut current, 0, 0);
        self
    }

    fn descend(&mut self, current: &mut Vec<i64>, quad_sum: i128, linear_sum: i128) {
        self.visited += 1;
        let i = current.len();
        if quad_sum + self.quad_suffix_min[i] > self.quad_bound {
            return;
        }
        if linear_sum + self.linear_suffix_max[i] <= self.linear_floor {
            return;
        }
        if i == self.n_mults.len() {
            self.leaf(current);
            return;
        }
        let top = if self.uniform { current.last().copied().unwrap_or(self.hi) } else { self.hi };
        let a = self.n_mults[i];
        for x in (self.lo..=top).rev() {
            current.push(x);
            self.descend(current, quad_sum + quad(x, a), linear_sum + a as i128 * x as i128);
            current.pop();
        }
    }

    fn leaf(&mut self, ni: &[i64]) {
        let f = self.f as i128;
        let n: i128 = ni.iter().map(|&x| x as i128).sum();
        let sq: i128 = ni.iter().map(|&x| (x as i128) * (x as i128)).sum();
        let lin: i128 = ni.iter().zip(self.n_mults).map(|(&x, &a)| x as i128 * a as i128).sum();
        let alpha = self.n_degree as i128 * f - lin;
        let beta = f * f - sq;
        let k1 = self.k1 as i128;
        let holds = alpha - k1 <= beta && 2 * beta < alpha && alpha < 2 * k1;
        if !holds {
            return;
        }
        let dot_curve = self.e as i128 * f - n;
        let narrow = |v: i128| i64::try_from(v).expect("bounded by the search box");
        self.out.push(ObstructionCandidate {
            class: DivisorClass::new(self.f, ni.to_vec()),
            alpha: narrow(alpha),
            beta: narrow(beta),
            n: narrow(n),
            dot_curve: narrow(dot_curve),
            orbit_size: if self.uniform { orbit_size(ni) } else { 1 },
            n_at_least_r: n >= self.r as i128,
            meets_curve_nonnegatively: dot_curve >= 0,
        });
    }
}

/// Exhaustive search for `D = fH - sum ni Ei` satisfying [`bfs_condition`]
/// with `0 <= f <= f_max` and `-1 <= ni <= n_max`.
///
/// `f = 0` only allows `ni` in `{-1, 0}` (a sum of distinct `Ei`); for
/// `f >= 1` an entry `-1` stands for an `Ei` component. For a uniform `N`
/// only non-increasing `ni` are visited and each result carries its orbit
/// size. The search prunes with exact bounds derived from the inequality
/// chain itself, so it is exhaustive within the box.
pub fn enumerate_obstructions(
    n: &DivisorClass,
    k: u32,
    ctx: &BlowupContext,
    bounds: EnumerationBounds,
    cap: u128,
) -> Result<EnumerationReport> {
    ctx.check(n)?;
    if bounds.f_max < 0 || bounds.n_max < 0 {
        return Err(Error::Precondition("enumeration bounds must be non-negative".into()));
    }
    let uniform = n.uniform_multiplicity().is_some();
    let space = search_space(ctx, bounds, uniform);
    if space > cap {
        return Err(Error::EnumerationTooLarge { required: space, cap });
    }

    let mut slices: Vec<Slice> =
        (0..=bounds.f_max).into_par_iter().map(|f| Slice::new(f, bounds, n, k, ctx, uniform).run()).collect();
    slices.sort_by_key(|s| s.f);

    let mut candidates = Vec::new();
    let mut visited = 0u64;
    for s in slices {
        visited += s.visited;
        let mut out = s.out;
        out.sort_by(|a, b| a.class.mults().cmp(b.class.mults()));
        candidates.extend(out);
    }

    let hypotheses = match n.uniform_multiplicity() {
        Some(a) => Some(hypotheses_for(n.degree(), a, k, ctx)?),
        None => None,
    };
    Ok(EnumerationReport { bounds, k, candidates, hypotheses, search_space: space, visited })
}

fn hypotheses_for(n_degree: i64, n_mult: i64, k: u32, ctx: &BlowupContext) -> Result<ObstructionHypotheses> {
    let d = sub(n_degree, 3, "d")?;
    let m = sub(n_mult, 1, "m")?;
    let k = i64::from(k);
    let threshold = add(ctx.e_squared()?, k + 1, "e^2+k+1")?;
    Ok(ObstructionHypotheses {
        d,
        m,
        k_positive: k >= 1,
        enough_points: ctx.r_i64() >= threshold,
        adjoint_positive_on_curve: mul(n_degree, ctx.e(), "(d+3)e")? > mul(ctx.r_i64(), n_mult, "r(m+1)")?,
        m_at_least_k: m >= k,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub issues: Vec<String>,
    /// `recomposed - L` when the sum is off.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<DivisorClass>,
}

/// Checks coefficients, generator shapes and the recomposition.
pub fn verify_certificate(cert: &EffectivityCertificate, l: &DivisorClass, ctx: &BlowupContext) -> CertificateCheck {
    let mut issues = Vec::new();
    if let Err(err) = ctx.check(l) {
        issues.push(err.to_string());
        return CertificateCheck { valid: false, issues, difference: None };
    }
    for (i, term) in cert.terms.iter().enumerate() {
        if term.coefficient < 0 {
            issues.push(format!("term {i}: negative coefficient {}", term.coefficient));
        }
        if classify_generator(&term.generator, ctx).is_none() {
            issues.push(format!("term {i}: {} is not an allowed generator", term.generator));
        }
    }
    let difference = match cert.recompose(ctx.r()).and_then(|sum| sum.checked_sub(l)) {
        Ok(diff) if diff.is_zero() => None,
        Ok(diff) => {
            issues.push(format!("certificate sums to L + ({diff})"));
            Some(diff)
        }
        Err(err) => {
            issues.push(format!("recomposition failed: {err}"));
            None
        }
    };
    CertificateCheck { valid: issues.is_empty(), issues, difference }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub ample: Verdict,
    pub ample_uniform: Verdict,
    pub nef: Verdict,
    /// Empty when the verdicts agree with each other and with `de > rm`.
    pub issues: Vec<String>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Runs the general and uniform checkers on a uniform class with `m > 0` and
/// `r >= e^2`, where ampleness is exactly `de > rm` and nefness `de >= rm`.
pub fn cross_check_uniform(l: &DivisorClass, ctx: &BlowupContext) -> Result<ConsistencyReport> {
    ctx.check(l)?;
    let m = l.uniform_multiplicity().ok_or(Error::NotUniform("cross_check_uniform"))?;
    if m <= 0 {
        return Err(Error::Precondition(format!("cross check needs m > 0, got {m}")));
    }
    if ctx.r_i64() < ctx.e_squared()? {
        return Err(Error::Precondition(format!("cross check needs r >= e^2, got r = {}", ctx.r())));
    }
    let ample = check_ample(l, ctx)?;
    let ample_uniform = check_ample_uniform(l, ctx)?;
    let nef = check_nef(l, ctx)?;
    let dot = l.dot(&curve_class(ctx))?;

    let mut issues = Vec::new();
    let expect = |truth: bool| if truth { Status::Positive } else { Status::Negative };
    for (name, v) in [("check_ample", &ample), ("check_ample_uniform", &ample_uniform)] {
        if v.is_positive() && nef.is_negative() {
            issues.push(format!("{name} says ample but check_nef says not nef"));
        }
        if v.status.is_decided() && v.status != expect(dot > 0) {
            issues.push(format!("{name} returned {} but L.C1 = {dot}", v.status));
        }
    }
    if ample.status.is_decided() && ample_uniform.status.is_decided() && ample.status != ample_uniform.status {
        issues.push(format!(
            "check_ample ({}) and check_ample_uniform ({}) disagree",
            ample.status, ample_uniform.status
        ));
    }
    if ample_uniform.status != expect(dot > 0) {
        issues.push(format!("check_ample_uniform is {} for L.C1 = {dot}", ample_uniform.status));
    }
    if nef.status != expect(dot >= 0) {
        issues.push(format!("check_nef is {} for L.C1 = {dot}", nef.status));
    }
    Ok(ConsistencyReport { ample, ample_uniform, nef, issues })
}
