//! Periodic graphs shipped with the crate.

use dil3_core::dilation::PeriodicSpec;

use crate::format::parse_periodic;

/// `(name, source)` of every shipped periodic spec.
pub const PERIODIC: [(&str, &str); 4] = [
    ("period12", include_str!("../data/period12.periodic")),
    ("period20", include_str!("../data/period20.periodic")),
    ("period18", include_str!("../data/period18.periodic")),
    ("variant10", include_str!("../data/variant10.periodic")),
];

pub fn builtin_periodic() -> Vec<(&'static str, PeriodicSpec)> {
    PERIODIC
        .iter()
        .map(|(name, src)| (*name, parse_periodic(src).expect("shipped spec parses")))
        .collect()
}
