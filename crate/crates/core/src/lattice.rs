//! The Picard lattice of the blow-up `X` of the plane at `r` points.
//!
//! A class is written `L = dH - m1 E1 - ... - mr Er`; the stored
//! multiplicities are the `mi` of that expression, so the exceptional curve
//! `Ei` itself has `mults[i] = -1`. The intersection form is diagonal with
//! `H^2 = 1` and `Ei^2 = -1`.
//!
//! Every operation uses checked `i64` arithmetic and reports
//! [`Error::Overflow`] rather than wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{add, mul, sub, Error, Result};

/// Three-valued hypothesis flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    #[default]
    Unknown,
}

impl TriState {
    pub fn is_yes(self) -> bool {
        self == TriState::Yes
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        })
    }
}

impl std::str::FromStr for TriState {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "yes" | "true" | "y" => Ok(TriState::Yes),
            "no" | "false" | "n" => Ok(TriState::No),
            "unknown" | "?" => Ok(TriState::Unknown),
            other => Err(format!("expected yes, no or unknown, got `{other}`")),
        }
    }
}

/// The surface: `r` distinct smooth points on an irreducible reduced plane
/// curve `C` of degree `e`, together with what is known about the points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BlowupContext {
    e: i64,
    r: usize,
    /// Whether some `e` of the points lie on a line.
    pub has_e_collinear: TriState,
    /// Whether `C` has positive geometric genus.
    pub positive_genus: TriState,
}

impl BlowupContext {
    pub fn new(e: i64, r: usize) -> Result<Self> {
        if e < 1 {
            return Err(Error::InvalidContext(format!("curve degree e = {e} must be at least 1")));
        }
        if r < 1 {
            return Err(Error::InvalidContext("need at least one blown-up point".into()));
        }
        if i64::try_from(r).is_err() {
            return Err(Error::InvalidContext(format!("r = {r} does not fit in i64")));
        }
        Ok(BlowupContext { e, r, has_e_collinear: TriState::Unknown, positive_genus: TriState::Unknown })
    }

    pub fn with_collinear(mut self, flag: TriState) -> Self {
        self.has_e_collinear = flag;
        self
    }

    pub fn with_positive_genus(mut self, flag: TriState) -> Self {
        self.positive_genus = flag;
        self
    }

    /// Degree of the curve carrying the points.
    pub fn e(&self) -> i64 {
        self.e
    }

    /// Number of blown-up points.
    pub fn r(&self) -> usize {
        self.r
    }

    pub(crate) fn r_i64(&self) -> i64 {
        self.r as i64
    }

    /// `e^2`, with overflow detection.
    pub fn e_squared(&self) -> Result<i64> {
        mul(self.e, self.e, "e^2")
    }

    /// Fails with [`Error::DimensionMismatch`] unless `class` lives on this surface.
    pub fn check(&self, class: &DivisorClass) -> Result<()> {
        if class.mults.len() != self.r {
            return Err(Error::DimensionMismatch { expected: self.r, found: class.mults.len() });
        }
        Ok(())
    }

    /// The intersection product `A . B`, after checking both classes against `self`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        a.dot(b)
    }
}

/// An element `dH - sum mi Ei` of the Picard lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    d: i64,
    mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(d: i64, mults: Vec<i64>) -> Self {
        DivisorClass { d, mults }
    }

    /// `dH - m(E1 + ... + Er)`.
    pub fn uniform(d: i64, m: i64, r: usize) -> Self {
        DivisorClass { d, mults: vec![m; r] }
    }

    pub fn zero(r: usize) -> Self {
        Self::uniform(0, 0, r)
    }

    /// The pull-back `H` of a line.
    pub fn hyperplane(r: usize) -> Self {
        Self::uniform(1, 0, r)
    }

    /// The exceptional curve `Ei` (zero-based `index`).
    pub fn exceptional(index: usize, r: usize) -> Result<Self> {
        if index >= r {
            return Err(Error::IndexOutOfRange { index, r });
        }
        let mut mults = vec![0; r];
        mults[index] = -1;
        Ok(DivisorClass { d: 0, mults })
    }

    /// Coefficient of `H`.
    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    /// Number of exceptional coordinates.
    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn into_parts(self) -> (i64, Vec<i64>) {
        (self.d, self.mults)
    }

    /// The common multiplicity when all `mi` agree.
    pub fn uniform_multiplicity(&self) -> Option<i64> {
        let (&first, rest) = self.mults.split_first()?;
        rest.iter().all(|&m| m == first).then_some(first)
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0 && self.mults.iter().all(|&m| m == 0)
    }

    fn same_len(&self, other: &DivisorClass) -> Result<()> {
        if self.mults.len() != other.mults.len() {
            return Err(Error::DimensionMismatch { expected: self.mults.len(), found: other.mults.len() });
        }
        Ok(())
    }

    /// `self . other = d d' - sum mi mi'`.
    pub fn dot(&self, other: &DivisorClass) -> Result<i64> {
        self.same_len(other)?;
        let mut acc = mul(self.d, other.d, "intersection product")?;
        for (&a, &b) in self.mults.iter().zip(&other.mults) {
            acc = sub(acc, mul(a, b, "intersection product")?, "intersection product")?;
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> Result<i64> {
        self.dot(self)
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_len(other)?;
        let d = add(self.d, other.d, "class sum")?;
        let mults =
            self.mults.iter().zip(&other.mults).map(|(&a, &b)| add(a, b, "class sum")).collect::<Result<_>>()?;
        Ok(DivisorClass { d, mults })
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_len(other)?;
        let d = sub(self.d, other.d, "class difference")?;
        let mults =
            self.mults.iter().zip(&other.mults).map(|(&a, &b)| sub(a, b, "class difference")).collect::<Result<_>>()?;
        Ok(DivisorClass { d, mults })
    }

    pub fn checked_scale(&self, factor: i64) -> Result<DivisorClass> {
        let d = mul(self.d, factor, "class multiple")?;
        let mults = self.mults.iter().map(|&a| mul(a, factor, "class multiple")).collect::<Result<_>>()?;
        Ok(DivisorClass { d, mults })
    }

    /// Reorders the exceptional coordinates: entry `i` of the result is
    /// `mults[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DivisorClass> {
        if perm.len() != self.mults.len() {
            return Err(Error::DimensionMismatch { expected: self.mults.len(), found: perm.len() });
        }
        let mut seen = vec![false; perm.len()];
        let mut mults = Vec::with_capacity(perm.len());
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Precondition(format!("{perm:?} is not a permutation")));
            }
            mults.push(self.mults[p]);
        }
        Ok(DivisorClass { d: self.d, mults })
    }
}

impl fmt::Display for DivisorClass {
    /// Groups consecutive equal multiplicities, e.g. `11H - 3(E1+...+E13) - (E14+...+E17)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if self.d != 0 {
            write!(f, "{}H", self.d)?;
            wrote = true;
        }
        let mut i = 0;
        while i < self.mults.len() {
            let m = self.mults[i];
            let mut j = i + 1;
            while j < self.mults.len() && self.mults[j] == m {
                j += 1;
            }
            if m != 0 {
                // coefficient of the E-term is -m
                let coef = -(m as i128);
                let sign = if coef < 0 { '-' } else { '+' };
                let abs = coef.unsigned_abs();
                if wrote {
                    write!(f, " {sign} ")?;
                } else if sign == '-' {
                    f.write_str("-")?;
                }
                let factor = if abs == 1 { String::new() } else { abs.to_string() };
                match j - i {
                    1 => write!(f, "{factor}E{}", i + 1)?,
                    2 => write!(f, "{factor}(E{}+E{})", i + 1, i + 2)?,
                    _ => write!(f, "{factor}(E{}+...+E{})", i + 1, j)?,
                }
                wrote = true;
            }
            i = j;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Proper transform `C1 = eH - E1 - ... - Er` of the curve through the points.
pub fn curve_class(ctx: &BlowupContext) -> DivisorClass {
    DivisorClass::uniform(ctx.e, 1, ctx.r)
}

/// Canonical class `K = -3H + E1 + ... + Er`.
pub fn canonical_class(ctx: &BlowupContext) -> DivisorClass {
    DivisorClass::uniform(-3, -1, ctx.r)
}

/// The adjoint class `N = L - K = (d+3)H - sum (mi+1) Ei`.
pub fn adjoint_class(l: &DivisorClass, ctx: &BlowupContext) -> Result<DivisorClass> {
    ctx.check(l)?;
    l.checked_sub(&canonical_class(ctx))
}

/// Multiplicities in non-increasing order with the permutation that produced
/// them: `values[i] == original[permutation[i]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SortedMultiplicities {
    pub values: Vec<i64>,
    pub permutation: Vec<usize>,
}

impl SortedMultiplicities {
    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Sum of the `count` largest values, padding with zeros when fewer exist.
    pub fn top_sum(&self, count: usize) -> Result<i64> {
        self.values.iter().take(count).try_fold(0i64, |acc, &m| add(acc, m, "sum of largest multiplicities"))
    }
}

/// Stable descending sort; ties keep their original order.
pub fn sorted_multiplicities(l: &DivisorClass) -> SortedMultiplicities {
    let mut permutation: Vec<usize> = (0..l.mults.len()).collect();
    permutation.sort_by(|&a, &b| l.mults[b].cmp(&l.mults[a]).then(a.cmp(&b)));
    let values = permutation.iter().map(|&i| l.mults[i]).collect();
    SortedMultiplicities { values, permutation }
}

/// `m1 + ... + me` for the `e` largest multiplicities, zero-padded when `r < e`.
pub fn top_e_sum(l: &DivisorClass, ctx: &BlowupContext) -> Result<i64> {
    sorted_multiplicities(l).top_sum(ctx.e as usize)
}
