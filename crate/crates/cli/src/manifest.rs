//! The checked-in scenario manifest (`scenarios.toml`).

use std::fmt;

use serde::{Deserialize, Serialize};

const MANIFEST: &str = include_str!("../scenarios.toml");

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the literature for the case at hand.
    Published,
    /// Fixed by an independent oracle run and frozen in the manifest.
    Oracle,
    /// An algebraic identity or internal consistency requirement.
    Identity,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Published => "published",
            Source::Oracle => "oracle",
            Source::Identity => "identity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct CaseSpec {
    pub id: String,
    pub d: u32,
    pub delta: u8,
    #[serde(rename = "type")]
    pub tuple: Vec<i64>,
    pub seeds: Vec<u64>,
    pub section_seed: u64,
    pub range: [i64; 2],
    pub nodes: usize,
    pub source: Source,
    #[serde(default)]
    pub oracle: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct KummerSpec {
    pub seed: u64,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Manifest {
    pub prime: u32,
    pub case: Vec<CaseSpec>,
    pub kummer: KummerSpec,
}

impl Manifest {
    pub fn load() -> Manifest {
        toml::from_str(MANIFEST).expect("scenarios.toml is valid")
    }

    pub fn case(&self, id: &str) -> Option<&CaseSpec> {
        self.case.iter().find(|c| c.id == id)
    }
}
