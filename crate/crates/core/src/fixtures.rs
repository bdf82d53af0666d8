//! Built-in action files, addressable as `fixture:NAME` on the command line.

use crate::document::{load_str, LoadedAction};
use crate::error::{Error, Result};

const FIXTURES: &[(&str, &str)] = &[
    ("FLIP", include_str!("../fixtures/flip.toml")),
    ("FLIP_E1E3", include_str!("../fixtures/flip_e1e3.toml")),
    ("CAT3", include_str!("../fixtures/cat3.toml")),
    ("CAT5", include_str!("../fixtures/cat5.toml")),
    ("ROT", include_str!("../fixtures/rot.toml")),
    ("ROT_WIDE", include_str!("../fixtures/rot_wide.toml")),
    ("TRIV3", include_str!("../fixtures/triv3.toml")),
    ("TRIV_CYCLE6", include_str!("../fixtures/triv_cycle6.toml")),
    ("SOLV7", include_str!("../fixtures/solv7.toml")),
    ("SOLV7_SHIFT", include_str!("../fixtures/solv7_shift.toml")),
    ("DOUBLECOVER_BASE", include_str!("../fixtures/doublecover_base.toml")),
    ("DOUBLECOVER_COVER", include_str!("../fixtures/doublecover_cover.toml")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

/// Source text of a built-in fixture.
pub fn source(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Document(format!("no fixture named `{name}`")))
}

pub fn load(name: &str) -> Result<LoadedAction> {
    load_str(source(name)?, &format!("fixture:{name}"))
}

/// Every fixture, loaded.
pub fn all() -> Result<Vec<LoadedAction>> {
    names().map(load).collect()
}
