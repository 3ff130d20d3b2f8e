//! Fixed inputs shared by the benchmarks.

use picpos::{BlowupContext, DivisorClass};

/// `(e, d, m, r)` for uniform classes of increasing size.
pub const UNIFORM_CASES: &[(i64, i64, i64, usize)] =
    &[(3, 7, 2, 10), (4, 13, 3, 17), (5, 35, 5, 31), (10, 401, 4, 1000)];

pub fn uniform_case(e: i64, d: i64, m: i64, r: usize) -> (DivisorClass, BlowupContext) {
    (DivisorClass::uniform(d, m, r), BlowupContext::new(e, r).expect("valid context"))
}
