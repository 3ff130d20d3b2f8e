use std::fmt;
use std::io::Write;
use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use picpos::{BlowupContext, DivisorClass, Property, Status, TriState};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::evaluate_property;
use crate::request::default_properties;
use crate::SCHEMA_VERSION;

/// Environment variable holding the largest allowed grid.
pub const GRID_CAP_ENV: &str = "PICPOS_GRID_CAP";
pub const DEFAULT_GRID_CAP: u64 = 1_000_000;

/// Inclusive integer range `start:end[:step]`; a single number is a
/// one-point range. Empty when `start > end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub start: i64,
    pub end: i64,
    pub step: i64,
}

impl Range {
    pub fn point(v: i64) -> Self {
        Range { start: v, end: v, step: 1 }
    }

    pub fn len(&self) -> u64 {
        if self.start > self.end {
            0
        } else {
            ((self.end as i128 - self.start as i128) / self.step as i128 + 1) as u64
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn nth(&self, i: u64) -> i64 {
        self.start + self.step * i as i64
    }
}

impl FromStr for Range {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |p: &str| p.parse::<i64>().map_err(|_| anyhow!("bad range `{s}`: `{p}` is not an integer"));
        let range = match parts.as_slice() {
            [a] => Range::point(num(a)?),
            [a, b] => Range { start: num(a)?, end: num(b)?, step: 1 },
            [a, b, c] => Range { start: num(a)?, end: num(b)?, step: num(c)? },
            _ => bail!("bad range `{s}`: expected start:end[:step]"),
        };
        if range.step < 1 {
            bail!("bad range `{s}`: step must be positive");
        }
        Ok(range)
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => bail!("unknown format `{other}` (csv or jsonl)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRequest {
    pub d: Range,
    pub m: Range,
    pub r: Range,
    pub e: Range,
    /// Without a `k` range the k-very ample column stays empty.
    pub k: Option<Range>,
    pub collinear: TriState,
    pub positive_genus: TriState,
    pub format: Format,
}

/// The grid is larger than the configured cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridCapExceeded {
    pub required: u128,
    pub cap: u64,
}

impl fmt::Display for GridCapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sweep grid has {} points, above the cap of {} (set {GRID_CAP_ENV})", self.required, self.cap)
    }
}

impl std::error::Error for GridCapExceeded {}

/// Reads the cap from the environment, falling back to the default.
pub fn grid_cap_from_env() -> Result<u64> {
    match std::env::var(GRID_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("{GRID_CAP_ENV} must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_GRID_CAP),
    }
}

/// One evaluated grid point. `None` marks a property that does not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub d: i64,
    pub m: i64,
    pub r: i64,
    pub e: i64,
    pub k: Option<u32>,
    pub statuses: Vec<(Property, Option<Status>)>,
}

impl SweepRow {
    pub fn status(&self, p: Property) -> Option<Status> {
        self.statuses.iter().find(|(q, _)| *q == p).and_then(|(_, s)| *s)
    }
}

pub const CSV_HEADER: &str = "d,m,r,e,k,effective,nef,ample,globally_generated,k_very_ample";

impl SweepRequest {
    fn axes(&self) -> [Range; 5] {
        [self.d, self.m, self.r, self.e, self.k.unwrap_or(Range::point(0))]
    }

    pub fn grid_size(&self) -> u128 {
        self.axes().iter().map(|a| a.len() as u128).product()
    }

    fn validate(&self, cap: u64) -> Result<()> {
        if !self.r.is_empty() && self.r.start < 1 {
            bail!("r range must start at 1 or above");
        }
        if !self.e.is_empty() && self.e.start < 1 {
            bail!("e range must start at 1 or above");
        }
        if let Some(k) = self.k {
            if !k.is_empty() && (k.start < 0 || k.end > i64::from(u32::MAX)) {
                bail!("k range must lie in 0..={}", u32::MAX);
            }
        }
        let required = self.grid_size();
        if required > cap as u128 {
            return Err(GridCapExceeded { required, cap }.into());
        }
        Ok(())
    }

    /// Grid point `index` in lexicographic order of `(d, m, r, e, k)`.
    fn point(&self, mut index: u64) -> [i64; 5] {
        let axes = self.axes();
        let mut out = [0; 5];
        for (slot, axis) in out.iter_mut().zip(axes.iter()).rev() {
            let len = axis.len();
            *slot = axis.nth(index % len);
            index /= len;
        }
        out
    }

    fn evaluate(&self, [d, m, r, e, k]: [i64; 5]) -> Result<SweepRow> {
        let r_usize = usize::try_from(r)?;
        let ctx =
            BlowupContext::new(e, r_usize)?.with_collinear(self.collinear).with_positive_genus(self.positive_genus);
        let l = DivisorClass::uniform(d, m, r_usize);
        let k = self.k.map(|_| k as u32);
        let wanted = default_properties(&l, k);
        let statuses = Property::ALL
            .iter()
            .map(|&p| {
                let status = if wanted.contains(&p) {
                    Some(
                        evaluate_property(p, &l, &ctx, k)
                            .map_err(|err| anyhow!("d={d} m={m} r={r} e={e}: {p}: {err}"))?
                            .status,
                    )
                } else {
                    None
                };
                Ok((p, status))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SweepRow { d, m, r, e, k, statuses })
    }

    /// Evaluates the whole grid. Rows come back in grid order whatever
    /// order the workers finish in.
    pub fn rows(&self, cap: u64) -> Result<Vec<SweepRow>> {
        self.validate(cap)?;
        let n = self.grid_size() as u64;
        (0..n).into_par_iter().map(|i| self.evaluate(self.point(i))).collect()
    }
}

fn cell(s: Option<Status>) -> String {
    s.map_or_else(String::new, |s| s.to_string())
}

#[derive(Serialize)]
struct JsonRow<'a> {
    schema: u32,
    d: i64,
    m: i64,
    r: i64,
    e: i64,
    k: Option<u32>,
    #[serde(flatten)]
    statuses: std::collections::BTreeMap<&'a str, Option<Status>>,
}

pub fn write_rows(rows: &[SweepRow], format: Format, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for row in rows {
                let k = row.k.map_or_else(String::new, |k| k.to_string());
                let cells: Vec<String> = Property::ALL.iter().map(|&p| cell(row.status(p))).collect();
                writeln!(out, "{},{},{},{},{k},{}", row.d, row.m, row.r, row.e, cells.join(","))?;
            }
        }
        Format::Jsonl => {
            for row in rows {
                let json = JsonRow {
                    schema: SCHEMA_VERSION,
                    d: row.d,
                    m: row.m,
                    r: row.r,
                    e: row.e,
                    k: row.k,
                    statuses: row.statuses.iter().map(|(p, s)| (p.name(), *s)).collect(),
                };
                writeln!(out, "{}", serde_json::to_string(&json)?)?;
            }
        }
    }
    Ok(())
}

/// Evaluates and writes the grid; returns the number of rows.
pub fn run_sweep(request: &SweepRequest, cap: u64, out: &mut impl Write) -> Result<usize> {
    let rows = request.rows(cap)?;
    write_rows(&rows, request.format, out)?;
    Ok(rows.len())
}
