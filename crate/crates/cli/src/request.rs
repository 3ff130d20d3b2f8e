use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use picpos::{BlowupContext, DivisorClass, EnumerationBounds, Property, TriState};
use serde::{Deserialize, Serialize};

/// A check request as written in a JSON or TOML document. Either `mults` or
/// the uniform shorthand `m` (with `r`) describes the class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckInput {
    pub e: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mults: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub properties: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collinear: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_genus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleInput>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleInput {
    pub f_max: Option<i64>,
    pub n_max: Option<i64>,
}

impl CheckInput {
    /// Fields set in `other` replace those in `self`.
    pub fn overlay(mut self, other: CheckInput) -> CheckInput {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(e, r, d, m, mults, k, collinear, positive_genus, oracle);
        if !other.properties.is_empty() {
            self.properties = other.properties;
        }
        self
    }

    /// Validates and expands the shorthand.
    pub fn resolve(&self) -> Result<CheckRequest> {
        let e = self.e.ok_or_else(|| anyhow!("missing field `e`"))?;
        let d = self.d.ok_or_else(|| anyhow!("missing field `d`"))?;
        let mults = match (&self.mults, self.m) {
            (Some(_), Some(_)) => bail!("give either `mults` or `m`, not both"),
            (Some(ms), None) => {
                if let Some(r) = self.r {
                    if r != ms.len() {
                        bail!("field `r` = {r} but `mults` has {} entries", ms.len());
                    }
                }
                ms.clone()
            }
            (None, Some(m)) => {
                let r = self.r.ok_or_else(|| anyhow!("the uniform shorthand needs field `r`"))?;
                vec![m; r]
            }
            (None, None) => bail!("missing field `mults` (or `m` with `r`)"),
        };
        let tri = |name: &str, v: &Option<String>| -> Result<TriState> {
            v.as_deref().map_or(Ok(TriState::Unknown), |s| s.parse().map_err(|err| anyhow!("field `{name}`: {err}")))
        };
        let ctx = BlowupContext::new(e, mults.len())?
            .with_collinear(tri("collinear", &self.collinear)?)
            .with_positive_genus(tri("positive_genus", &self.positive_genus)?);
        let bundle = DivisorClass::new(d, mults);

        let mut properties = Vec::new();
        for p in &self.properties {
            let p: Property = p.parse().map_err(|err| anyhow!("field `properties`: {err}"))?;
            if !properties.contains(&p) {
                properties.push(p);
            }
        }
        if properties.is_empty() {
            properties = default_properties(&bundle, self.k);
        }
        let wants_k = properties.contains(&Property::KVeryAmple);
        match (wants_k, self.k) {
            (true, None) => bail!("`k_very_ample` needs field `k`"),
            (false, Some(_)) => bail!("field `k` is only meaningful with `k_very_ample`"),
            _ => {}
        }
        let oracle = self.oracle.map(|o| {
            let default = EnumerationBounds::default_for(&ctx);
            EnumerationBounds { f_max: o.f_max.unwrap_or(default.f_max), n_max: o.n_max.unwrap_or(default.n_max) }
        });
        Ok(CheckRequest { ctx, bundle, properties, k: self.k, oracle })
    }
}

/// Every property that applies to the class: global generation for uniform
/// classes with `m >= 0`, k-very ampleness for uniform classes when a `k` is
/// given.
pub fn default_properties(bundle: &DivisorClass, k: Option<u32>) -> Vec<Property> {
    let mut out = vec![Property::Effective, Property::Nef, Property::Ample];
    if let Some(m) = bundle.uniform_multiplicity() {
        if m >= 0 {
            out.push(Property::GloballyGenerated);
        }
        if k.is_some() {
            out.push(Property::KVeryAmple);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRequest {
    pub ctx: BlowupContext,
    pub bundle: DivisorClass,
    pub properties: Vec<Property>,
    pub k: Option<u32>,
    pub oracle: Option<EnumerationBounds>,
}

impl CheckRequest {
    /// The explicit form of the request, as echoed in reports.
    pub fn to_input(&self) -> CheckInput {
        CheckInput {
            e: Some(self.ctx.e()),
            r: Some(self.ctx.r()),
            d: Some(self.bundle.degree()),
            m: None,
            mults: Some(self.bundle.mults().to_vec()),
            properties: self.properties.iter().map(|p| p.name().to_string()).collect(),
            k: self.k,
            collinear: Some(self.ctx.has_e_collinear.to_string()),
            positive_genus: Some(self.ctx.positive_genus.to_string()),
            oracle: self.oracle.map(|b| OracleInput { f_max: Some(b.f_max), n_max: Some(b.n_max) }),
        }
    }
}

/// Parses a request document; the format follows the file extension
/// (`.toml`, otherwise JSON).
pub fn parse_document(text: &str, path: &Path) -> Result<CheckInput> {
    let name = path.display();
    let is_toml = path.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("toml"));
    if is_toml {
        toml::from_str(text).map_err(|err| anyhow!("{name}: {err}"))
    } else {
        serde_json::from_str(text).map_err(|err| anyhow!("{name}: {err}"))
    }
}

pub fn read_document(path: &Path) -> Result<CheckInput> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_document(&text, path)
}
