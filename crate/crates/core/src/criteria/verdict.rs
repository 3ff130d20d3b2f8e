use std::fmt;

use serde::Serialize;

use crate::cremona::ReductionTrace;
use crate::criteria::effective::EffectivityCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Positive,
    Negative,
    Unknown,
}

impl Status {
    pub fn is_decided(self) -> bool {
        self != Status::Unknown
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Positive => "positive",
            Status::Negative => "negative",
            Status::Unknown => "unknown",
        })
    }
}

impl std::str::FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "positive" | "pos" | "yes" => Ok(Status::Positive),
            "negative" | "neg" | "no" => Ok(Status::Negative),
            "unknown" => Ok(Status::Unknown),
            other => Err(format!("unknown verdict status `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Effective,
    Nef,
    Ample,
    GloballyGenerated,
    KVeryAmple,
}

impl Property {
    pub const ALL: [Property; 5] =
        [Property::Effective, Property::Nef, Property::Ample, Property::GloballyGenerated, Property::KVeryAmple];

    pub fn name(self) -> &'static str {
        match self {
            Property::Effective => "effective",
            Property::Nef => "nef",
            Property::Ample => "ample",
            Property::GloballyGenerated => "globally_generated",
            Property::KVeryAmple => "k_very_ample",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        Property::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .or(match norm.as_str() {
                "gg" | "bpf" => Some(Property::GloballyGenerated),
                "kva" => Some(Property::KVeryAmple),
                _ => None,
            })
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// The result that licenses a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// `L.Ei > 0`, `L.C1 > 0` and `d` beats the `e` largest multiplicities.
    SumCriterion,
    /// Nef version of the sum criterion (non-strict inequalities).
    NefSumCriterion,
    /// Uniform class with `r >= e^2`: ample iff `L.C1 > 0`.
    UniformLargeR,
    /// Uniform class with `r >= e^2`: nef iff `L.C1 >= 0`.
    UniformNefLargeR,
    /// Uniform class with `r < e^2`: ample when `d > em`.
    UniformSmallR,
    /// `e` collinear points make the sum condition necessary.
    CollinearLine,
    /// Ample needs `L^2 > 0`; nef needs `L^2 >= 0`.
    SelfIntersection,
    /// `C1` is an irreducible curve.
    CurveDegree,
    /// Each `Ei` is an irreducible curve.
    ExceptionalDegree,
    /// Non-negative combination of effective generators.
    StandardEffectivity,
    /// `(d+3)e > r(m+1)` and `r >= e^2 + k + 1`.
    AdjointCriterion,
    /// `dH` with `d >= 0` is the pull-back of a globally generated bundle.
    PullbackOfPlane,
    /// A k-very ample bundle on a curve of positive genus has degree at least `k + 2`.
    RestrictionDegreeBound,
    /// Cubic case: ample iff excellent after quadratic transforms.
    ExcellentReduction,
    /// No criterion applies.
    HypothesesNotMet,
}

impl Justification {
    pub fn tag(self) -> &'static str {
        match self {
            Justification::SumCriterion => "sum-criterion",
            Justification::NefSumCriterion => "nef-sum-criterion",
            Justification::UniformLargeR => "uniform-large-r",
            Justification::UniformNefLargeR => "uniform-nef-large-r",
            Justification::UniformSmallR => "uniform-small-r",
            Justification::CollinearLine => "collinear-line",
            Justification::SelfIntersection => "self-intersection",
            Justification::CurveDegree => "curve-degree",
            Justification::ExceptionalDegree => "exceptional-degree",
            Justification::StandardEffectivity => "standard-effectivity",
            Justification::AdjointCriterion => "adjoint-criterion",
            Justification::PullbackOfPlane => "pullback-of-plane",
            Justification::RestrictionDegreeBound => "restriction-degree-bound",
            Justification::ExcellentReduction => "excellent-reduction",
            Justification::HypothesesNotMet => "hypotheses-not-met",
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn eval(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// A named integer quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub expr: String,
    pub value: i64,
}

impl Term {
    pub fn new(expr: impl Into<String>, value: i64) -> Self {
        Term { expr: expr.into(), value }
    }

    pub fn constant(value: i64) -> Self {
        Term { expr: value.to_string(), value }
    }
}

/// One evaluated comparison in a verdict transcript.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: Term,
    pub rel: Relation,
    pub rhs: Term,
    pub holds: bool,
}

impl Inequality {
    pub fn new(lhs: Term, rel: Relation, rhs: Term) -> Self {
        let holds = rel.eval(lhs.value, rhs.value);
        Inequality { lhs, rel, rhs, holds }
    }

    /// Whether `holds` agrees with the stored values.
    pub fn is_consistent(&self) -> bool {
        self.holds == self.rel.eval(self.lhs.value, self.rhs.value)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |t: &Term| {
            if t.expr == t.value.to_string() {
                t.expr.clone()
            } else {
                format!("{} = {}", t.expr, t.value)
            }
        };
        write!(
            f,
            "{} {} {} [{}]",
            side(&self.lhs),
            self.rel.symbol(),
            side(&self.rhs),
            if self.holds { "holds" } else { "fails" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Effectivity(EffectivityCertificate),
    Reduction(ReductionTrace),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub property: Property,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub justification: Justification,
    pub details: Vec<Inequality>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed_hypotheses: Vec<String>,
}

impl Verdict {
    pub(crate) fn new(property: Property, k: Option<u32>) -> Self {
        Verdict {
            status: Status::Unknown,
            property,
            k,
            justification: Justification::HypothesesNotMet,
            details: Vec::new(),
            certificate: None,
            annotations: Vec::new(),
            failed_hypotheses: Vec::new(),
        }
    }

    pub(crate) fn decide(mut self, status: Status, justification: Justification) -> Self {
        self.status = status;
        self.justification = justification;
        self
    }

    /// Records `lhs rel rhs` and returns whether it holds.
    pub(crate) fn record(&mut self, lhs: Term, rel: Relation, rhs: Term) -> bool {
        let ineq = Inequality::new(lhs, rel, rhs);
        let holds = ineq.holds;
        self.details.push(ineq);
        holds
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.annotations.push(text.into());
    }

    pub(crate) fn failed(&mut self, text: impl Into<String>) {
        self.failed_hypotheses.push(text.into());
    }

    pub fn is_positive(&self) -> bool {
        self.status == Status::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.status == Status::Negative
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }

    pub fn effectivity_certificate(&self) -> Option<&EffectivityCertificate> {
        match &self.certificate {
            Some(Certificate::Effectivity(c)) => Some(c),
            _ => None,
        }
    }

    pub fn reduction_trace(&self) -> Option<&ReductionTrace> {
        match &self.certificate {
            Some(Certificate::Reduction(t)) => Some(t),
            _ => None,
        }
    }

    /// Looks up a transcript entry by the expression on its left side.
    pub fn find_detail(&self, lhs_expr: &str) -> Option<&Inequality> {
        self.details.iter().find(|i| i.lhs.expr == lhs_expr)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) if self.property == Property::KVeryAmple => {
                write!(f, "{k}-very ample: {} ({})", self.status, self.justification)
            }
            _ => write!(f, "{}: {} ({})", self.property, self.status, self.justification),
        }
    }
}
