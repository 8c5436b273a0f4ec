//! Fixtures bundled into the binary.

use crate::fixture::{FixtureError, FixtureFile};

pub const CORPUS: &[(&str, &str)] = &[
    ("ex5_1", include_str!("../corpus/ex5_1.toml")),
    ("ex5_2", include_str!("../corpus/ex5_2.toml")),
    ("ex5_6", include_str!("../corpus/ex5_6.toml")),
    ("ex5_7", include_str!("../corpus/ex5_7.toml")),
    ("ex5_8", include_str!("../corpus/ex5_8.toml")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn corpus() -> Result<Vec<FixtureFile>, FixtureError> {
    CORPUS
        .iter()
        .map(|(name, text)| FixtureFile::parse(text).map_err(|e| FixtureError(format!("{name}: {e}"))))
        .collect()
}
