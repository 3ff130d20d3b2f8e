use anyhow::{anyhow, bail, Result};
use picpos::{
    adjoint_class, certify_effective, check_ample, check_ample_uniform, check_excellent_e3, check_globally_generated,
    check_k_very_ample, check_nef, enumerate_obstructions, orbit_search_standard, reduce_to_standard_e3,
    verify_certificate, BlowupContext, CertificateCheck, DivisorClass, EnumerationBounds, EnumerationReport,
    ObstructionCandidate, ObstructionHypotheses, OrbitSearch, Property, ReductionTrace, Status, Verdict,
    DEFAULT_ENUMERATION_CAP,
};
use serde::Serialize;

use crate::request::{CheckInput, CheckRequest};
use crate::SCHEMA_VERSION;

/// Ampleness through the most specific checker that decides it: the uniform
/// criterion, then the general one, then the cubic reduction.
pub fn ample_verdict(l: &DivisorClass, ctx: &BlowupContext) -> picpos::Result<Verdict> {
    let mut v = match l.uniform_multiplicity() {
        Some(m) if m >= 0 => check_ample_uniform(l, ctx)?,
        _ => check_ample(l, ctx)?,
    };
    if v.is_unknown() && l.uniform_multiplicity().is_some_and(|m| m >= 0) {
        v = check_ample(l, ctx)?;
    }
    if v.is_unknown() && ctx.e() == 3 && ctx.r() >= 3 && l.mults().iter().all(|&m| m > 0) {
        v = check_excellent_e3(l, ctx)?;
    }
    Ok(v)
}

pub fn evaluate_property(
    property: Property,
    l: &DivisorClass,
    ctx: &BlowupContext,
    k: Option<u32>,
) -> picpos::Result<Verdict> {
    match property {
        Property::Effective => certify_effective(l, ctx),
        Property::Nef => check_nef(l, ctx),
        Property::Ample => ample_verdict(l, ctx),
        Property::GloballyGenerated => check_globally_generated(l, ctx),
        Property::KVeryAmple => check_k_very_ample(l, ctx, k.unwrap_or(0)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub adjoint: String,
    pub bounds: EnumerationBounds,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<ObstructionHypotheses>,
    pub candidates: usize,
    /// Candidates with `N.D > 0` when the hypotheses hold.
    pub admissible: Vec<ObstructionCandidate>,
    pub point_bound_violations: usize,
    pub curve_violations: usize,
    pub search_space: u128,
    pub visited: u64,
}

impl OracleSummary {
    fn of(adjoint: &DivisorClass, report: &EnumerationReport) -> Self {
        OracleSummary {
            adjoint: adjoint.to_string(),
            bounds: report.bounds,
            k: report.k,
            hypotheses: report.hypotheses,
            candidates: report.candidates.len(),
            admissible: report.admissible().cloned().collect(),
            point_bound_violations: report.point_bound_violations().len(),
            curve_violations: report.curve_violations().len(),
            search_space: report.search_space,
            visited: report.visited,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub request: CheckInput,
    pub class: String,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
}

impl CheckReport {
    pub fn verdict(&self, property: Property) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.property == property)
    }
}

pub fn run_check(request: &CheckRequest) -> Result<CheckReport> {
    let verdicts = request
        .properties
        .iter()
        .map(|&p| evaluate_property(p, &request.bundle, &request.ctx, request.k).map_err(|err| anyhow!("{p}: {err}")))
        .collect::<Result<Vec<_>>>()?;
    let oracle = match request.oracle {
        Some(bounds) => {
            let n = adjoint_class(&request.bundle, &request.ctx)?;
            let report =
                enumerate_obstructions(&n, request.k.unwrap_or(0), &request.ctx, bounds, DEFAULT_ENUMERATION_CAP)?;
            Some(OracleSummary::of(&n, &report))
        }
        None => None,
    };
    Ok(CheckReport {
        schema: SCHEMA_VERSION,
        request: request.to_input(),
        class: request.bundle.to_string(),
        verdicts,
        oracle,
    })
}

/// `property=status`, as given to `--expect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expectation {
    pub property: Property,
    pub status: Status,
}

impl std::str::FromStr for Expectation {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, st) = s.split_once('=').ok_or_else(|| anyhow!("expected property=status, got `{s}`"))?;
        Ok(Expectation {
            property: p.trim().parse().map_err(|e: String| anyhow!(e))?,
            status: st.trim().parse().map_err(|e: String| anyhow!(e))?,
        })
    }
}

/// Mismatch messages; an expectation about a property that was not
/// evaluated is an error.
pub fn compare_expectations(report: &CheckReport, expectations: &[Expectation]) -> Result<Vec<String>> {
    let mut mismatches = Vec::new();
    for exp in expectations {
        let v = report
            .verdict(exp.property)
            .ok_or_else(|| anyhow!("--expect names {} but it was not evaluated", exp.property))?;
        if v.status != exp.status {
            mismatches.push(format!("expected {}={}, got {}", exp.property, exp.status, v.status));
        }
    }
    Ok(mismatches)
}

#[derive(Debug, Clone, Serialize)]
pub struct EffectivityReport {
    pub schema: u32,
    pub request: CheckInput,
    pub class: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_check: Option<CertificateCheck>,
}

pub fn run_certify(request: &CheckRequest) -> Result<EffectivityReport> {
    let verdict = certify_effective(&request.bundle, &request.ctx)?;
    let certificate_check =
        verdict.effectivity_certificate().map(|c| verify_certificate(c, &request.bundle, &request.ctx));
    Ok(EffectivityReport {
        schema: SCHEMA_VERSION,
        request: request.to_input(),
        class: request.bundle.to_string(),
        verdict,
        certificate_check,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StandardizeReport {
    pub schema: u32,
    pub request: CheckInput,
    pub class: String,
    pub final_class: String,
    pub trace: ReductionTrace,
    /// Present when every multiplicity is positive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

pub fn run_standardize(request: &CheckRequest) -> Result<StandardizeReport> {
    if request.ctx.e() != 3 {
        bail!("standardize needs e = 3, got e = {}", request.ctx.e());
    }
    let trace = reduce_to_standard_e3(&request.bundle, &request.ctx)?;
    let verdict = if request.bundle.mults().iter().all(|&m| m > 0) {
        Some(check_excellent_e3(&request.bundle, &request.ctx)?)
    } else {
        None
    };
    Ok(StandardizeReport {
        schema: SCHEMA_VERSION,
        request: request.to_input(),
        class: request.bundle.to_string(),
        final_class: trace.final_class.to_string(),
        trace,
        verdict,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub schema: u32,
    pub request: CheckInput,
    pub class: String,
    pub search: OrbitSearch,
}

pub fn run_orbit_search(request: &CheckRequest, depth: u32, degree_cap: Option<i64>) -> Result<OrbitReport> {
    let cap = degree_cap.unwrap_or(request.bundle.degree());
    let search = orbit_search_standard(&request.bundle, &request.ctx, depth, cap)?;
    Ok(OrbitReport { schema: SCHEMA_VERSION, request: request.to_input(), class: request.bundle.to_string(), search })
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateReport {
    pub schema: u32,
    pub request: CheckInput,
    pub class: String,
    pub adjoint: String,
    pub point_bound_violations: usize,
    pub curve_violations: usize,
    pub report: EnumerationReport,
}

pub fn run_enumerate(request: &CheckRequest, k: u32, bounds: EnumerationBounds, cap: u128) -> Result<EnumerateReport> {
    let n = adjoint_class(&request.bundle, &request.ctx)?;
    let report = enumerate_obstructions(&n, k, &request.ctx, bounds, cap)?;
    Ok(EnumerateReport {
        schema: SCHEMA_VERSION,
        request: request.to_input(),
        class: request.bundle.to_string(),
        adjoint: n.to_string(),
        point_bound_violations: report.point_bound_violations().len(),
        curve_violations: report.curve_violations().len(),
        report,
    })
}
