//! Request parsing, report assembly and sweeps behind the `picpos` binary.

pub mod check;
pub mod pretty;
pub mod request;
pub mod sweep;

pub use check::{
    ample_verdict, compare_expectations, evaluate_property, run_certify, run_check, run_enumerate, run_orbit_search,
    run_standardize, CheckReport, Expectation,
};
pub use request::{default_properties, parse_document, read_document, CheckInput, CheckRequest, OracleInput};
pub use sweep::{grid_cap_from_env, run_sweep, Format, GridCapExceeded, Range, SweepRequest, SweepRow};

/// Version tag carried by every JSON document the tool writes.
pub const SCHEMA_VERSION: u32 = 1;
