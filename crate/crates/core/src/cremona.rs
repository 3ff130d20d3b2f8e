//! Quadratic transformations of the Picard lattice.
//!
//! The transform at points `i, j, k` sends `H` to `2H - Ei - Ej - Ek` and
//! `Ei` to `H - Ej - Ek` (cyclically), fixing the other `Ea`. It preserves
//! the intersection form and the canonical class, and for cubics (`e = 3`)
//! also the class `C1`. Together with reindexing the points it moves between
//! exceptional configurations.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::criteria::{Certificate, Justification, Property, Relation, Status, Term, Verdict};
use crate::error::{add, mul, sub, Error, Result};
use crate::lattice::{curve_class, sorted_multiplicities, BlowupContext, DivisorClass};

/// Three distinct point indices (zero-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CremonaStep {
    indices: [usize; 3],
}

impl CremonaStep {
    pub fn new(i: usize, j: usize, k: usize, r: usize) -> Result<Self> {
        for index in [i, j, k] {
            if index >= r {
                return Err(Error::IndexOutOfRange { index, r });
            }
        }
        if i == j || j == k || i == k {
            return Err(Error::DegenerateStep([i, j, k]));
        }
        Ok(CremonaStep { indices: [i, j, k] })
    }

    pub fn indices(&self) -> [usize; 3] {
        self.indices
    }
}

impl fmt::Display for CremonaStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.indices;
        write!(f, "({},{},{})", i + 1, j + 1, k + 1)
    }
}

impl Serialize for CremonaStep {
    /// Serialized with one-based point labels, matching `E1 ... Er`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CremonaStep", 1)?;
        st.serialize_field("points", &self.indices.map(|i| i + 1))?;
        st.end()
    }
}

/// Applies the quadratic transform at `step` to `l`.
pub fn apply_cremona(l: &DivisorClass, step: &CremonaStep, ctx: &BlowupContext) -> Result<DivisorClass> {
    ctx.check(l)?;
    let [i, j, k] = step.indices;
    if k.max(i).max(j) >= ctx.r() {
        return Err(Error::IndexOutOfRange { index: k.max(i).max(j), r: ctx.r() });
    }
    let (d, m) = (l.degree(), l.mults());
    let what = "quadratic transform";
    let s = add(add(m[i], m[j], what)?, m[k], what)?;
    let new_d = sub(mul(2, d, what)?, s, what)?;
    let mut mults = m.to_vec();
    // d - mj - mk = d - s + mi, and cyclically.
    let base = sub(d, s, what)?;
    for idx in [i, j, k] {
        mults[idx] = add(base, m[idx], what)?;
    }
    Ok(DivisorClass::new(new_d, mults))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceStep {
    /// Reindex so that entry `i` of the new class is entry `permutation[i]` of the old one.
    Permute {
        permutation: Vec<usize>,
    },
    Quadratic {
        step: CremonaStep,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionOutcome {
    Standard,
    Excellent,
    NotStandardizable,
    DepthExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub initial: DivisorClass,
    pub steps: Vec<TraceStep>,
    #[serde(rename = "final")]
    pub final_class: DivisorClass,
    pub outcome: ReductionOutcome,
}

impl ReductionTrace {
    /// Re-applies the recorded steps to `initial`.
    pub fn replay(&self, ctx: &BlowupContext) -> Result<DivisorClass> {
        self.steps.iter().try_fold(self.initial.clone(), |cur, step| match step {
            TraceStep::Permute { permutation } => cur.permuted(permutation),
            TraceStep::Quadratic { step } => apply_cremona(&cur, step, ctx),
        })
    }

    pub fn quadratic_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, TraceStep::Quadratic { .. })).count()
    }
}

/// Sorts multiplicities descending, recording the permutation when it is not the identity.
fn canonicalize(l: &DivisorClass, steps: &mut Vec<TraceStep>) -> Result<DivisorClass> {
    let sorted = sorted_multiplicities(l);
    if sorted.is_identity() {
        return Ok(l.clone());
    }
    let out = l.permuted(&sorted.permutation)?;
    steps.push(TraceStep::Permute { permutation: sorted.permutation });
    Ok(out)
}

fn is_standard(sorted: &DivisorClass, count: usize) -> Result<bool> {
    let top = sorted.mults().iter().take(count).try_fold(0i64, |acc, &m| add(acc, m, "standardness"))?;
    Ok(sorted.degree() >= top)
}

/// Harbourne-style reduction for points on a cubic: sort, and while
/// `d < m1 + m2 + m3` apply the transform at the three largest points.
/// Every applied step lowers `d`, so the loop terminates.
pub fn reduce_to_standard_e3(l: &DivisorClass, ctx: &BlowupContext) -> Result<ReductionTrace> {
    if ctx.e() != 3 {
        return Err(Error::Precondition(format!("standardization needs e = 3, got e = {}", ctx.e())));
    }
    if ctx.r() < 3 {
        return Err(Error::Precondition(format!("quadratic transforms need r >= 3, got r = {}", ctx.r())));
    }
    ctx.check(l)?;
    let curve = curve_class(ctx);
    let top3 = CremonaStep::new(0, 1, 2, ctx.r())?;
    let mut steps = Vec::new();
    let mut cur = l.clone();
    let outcome = loop {
        cur = canonicalize(&cur, &mut steps)?;
        if cur.degree() < 0 {
            break ReductionOutcome::NotStandardizable;
        }
        if is_standard(&cur, 3)? {
            break if cur.dot(&curve)? > 0 { ReductionOutcome::Excellent } else { ReductionOutcome::Standard };
        }
        let next = apply_cremona(&cur, &top3, ctx)?;
        debug_assert!(next.degree() < cur.degree());
        steps.push(TraceStep::Quadratic { step: top3 });
        cur = next;
    };
    Ok(ReductionTrace { initial: l.clone(), steps, final_class: cur, outcome })
}

/// Ampleness on a cubic with all `mi > 0`: ample exactly when the class is
/// excellent (standard with `L.C1 > 0`) in some exceptional configuration.
pub fn check_excellent_e3(l: &DivisorClass, ctx: &BlowupContext) -> Result<Verdict> {
    if ctx.e() != 3 {
        return Err(Error::Precondition(format!("excellence test needs e = 3, got e = {}", ctx.e())));
    }
    ctx.check(l)?;
    if let Some(m) = l.mults().iter().find(|&&m| m <= 0) {
        return Err(Error::Precondition(format!("excellence test needs every mi > 0, found {m}")));
    }
    let trace = reduce_to_standard_e3(l, ctx)?;
    let dot_curve = l.dot(&curve_class(ctx))?;
    let fin = &trace.final_class;
    let top3 = fin.mults().iter().take(3).try_fold(0i64, |acc, &m| add(acc, m, "standardness"))?;

    let mut v = Verdict::new(Property::Ample, None);
    v.record(Term::new("final d", fin.degree()), Relation::Ge, Term::new("final m1+m2+m3", top3));
    v.record(Term::new(crate::criteria::expr::CURVE_DOT, dot_curve), Relation::Gt, Term::constant(0));
    v.note(format!("{} quadratic transform(s) applied", trace.quadratic_steps()));
    let status = match trace.outcome {
        ReductionOutcome::Excellent => Status::Positive,
        ReductionOutcome::Standard | ReductionOutcome::NotStandardizable => Status::Negative,
        ReductionOutcome::DepthExhausted => unreachable!("the e = 3 reduction always terminates"),
    };
    if trace.outcome == ReductionOutcome::NotStandardizable {
        v.note("reduction reached d < 0: no exceptional configuration makes the class standard");
    }
    let mut v = v.decide(status, Justification::ExcellentReduction);
    v.certificate = Some(Certificate::Reduction(trace));
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitStats {
    pub nodes_explored: usize,
    pub deepest_level: u32,
    pub pruned_by_degree: usize,
    pub pruned_negative: usize,
    /// The queue emptied without the depth cap cutting anything off, so every
    /// class reachable under the degree cap was examined.
    pub frontier_exhausted: bool,
    pub max_depth: u32,
    pub max_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum OrbitSearch {
    Found { trace: ReductionTrace, stats: OrbitStats },
    NotFoundWithinBound { stats: OrbitStats },
}

impl OrbitSearch {
    pub fn stats(&self) -> &OrbitStats {
        match self {
            OrbitSearch::Found { stats, .. } | OrbitSearch::NotFoundWithinBound { stats } => stats,
        }
    }

    pub fn trace(&self) -> Option<&ReductionTrace> {
        match self {
            OrbitSearch::Found { trace, .. } => Some(trace),
            OrbitSearch::NotFoundWithinBound { .. } => None,
        }
    }
}

struct Node {
    class: DivisorClass,
    parent: Option<(usize, CremonaStep)>,
    depth: u32,
}

/// Quadratic transforms of a sorted class at pairwise distinct value triples,
/// re-sorted. Transforms at index triples with equal values give the same
/// sorted class, so one representative per value triple suffices.
fn neighbours(class: &DivisorClass, ctx: &BlowupContext) -> Result<Vec<(CremonaStep, DivisorClass)>> {
    let r = ctx.r();
    let m = class.mults();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            for c in b + 1..r {
                if !seen.insert((m[a], m[b], m[c])) {
                    continue;
                }
                let step = CremonaStep::new(a, b, c, r)?;
                out.push((step, apply_cremona(class, &step, ctx)?));
            }
        }
    }
    Ok(out)
}

/// Depth used when the caller does not pick one. The degree cap defaults to
/// the degree of the input class.
pub const DEFAULT_ORBIT_DEPTH: u32 = 12;

/// Breadth-first search of the orbit of `l` under quadratic transforms and
/// reindexing for a configuration in which `d >= m1 + ... + me`.
///
/// Classes are compared with sorted multiplicities. Nodes with `d < 0` or
/// `d > max_degree` are pruned and the search stops at `max_depth`, so a
/// negative answer only covers the explored region; `frontier_exhausted`
/// says whether that region is everything reachable under the degree cap.
pub fn orbit_search_standard(
    l: &DivisorClass,
    ctx: &BlowupContext,
    max_depth: u32,
    max_degree: i64,
) -> Result<OrbitSearch> {
    ctx.check(l)?;
    let e = ctx.e() as usize;
    let mut prefix = Vec::new();
    let start = canonicalize(l, &mut prefix)?;

    let mut stats = OrbitStats {
        nodes_explored: 0,
        deepest_level: 0,
        pruned_by_degree: 0,
        pruned_negative: 0,
        frontier_exhausted: true,
        max_depth,
        max_degree,
    };
    let mut nodes = vec![Node { class: start.clone(), parent: None, depth: 0 }];
    let mut visited: HashSet<DivisorClass> = HashSet::from([start]);
    let mut queue = VecDeque::from([0usize]);

    while let Some(id) = queue.pop_front() {
        stats.nodes_explored += 1;
        let depth = nodes[id].depth;
        stats.deepest_level = stats.deepest_level.max(depth);
        if is_standard(&nodes[id].class, e)? {
            let trace = build_trace(l, prefix, &nodes, id, ctx)?;
            return Ok(OrbitSearch::Found { trace, stats });
        }
        if ctx.r() < 3 {
            continue;
        }
        for (step, raw) in neighbours(&nodes[id].class, ctx)? {
            if raw.degree() < 0 {
                stats.pruned_negative += 1;
                continue;
            }
            if raw.degree() > max_degree {
                stats.pruned_by_degree += 1;
                continue;
            }
            let sorted = raw.permuted(&sorted_multiplicities(&raw).permutation)?;
            if visited.contains(&sorted) {
                continue;
            }
            if depth >= max_depth {
                // Something new lies beyond the cap.
                stats.frontier_exhausted = false;
                continue;
            }
            visited.insert(sorted.clone());
            nodes.push(Node { class: sorted, parent: Some((id, step)), depth: depth + 1 });
            queue.push_back(nodes.len() - 1);
        }
    }
    Ok(OrbitSearch::NotFoundWithinBound { stats })
}

fn build_trace(
    initial: &DivisorClass,
    mut steps: Vec<TraceStep>,
    nodes: &[Node],
    target: usize,
    ctx: &BlowupContext,
) -> Result<ReductionTrace> {
    let mut path = Vec::new();
    let mut cur = target;
    while let Some((parent, step)) = nodes[cur].parent {
        path.push(step);
        cur = parent;
    }
    let mut class = nodes[cur].class.clone();
    for step in path.into_iter().rev() {
        class = apply_cremona(&class, &step, ctx)?;
        steps.push(TraceStep::Quadratic { step });
        class = canonicalize(&class, &mut steps)?;
    }
    debug_assert_eq!(class, nodes[target].class);
    Ok(ReductionTrace { initial: initial.clone(), steps, final_class: class, outcome: ReductionOutcome::Standard })
}
