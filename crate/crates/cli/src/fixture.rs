//! Fixture files: a ring, some derivations on it and the claims to check.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use lnd_core::{Derivation, OrderKind, Polynomial, Ring, RingElement};
use serde::Deserialize;

/// Anything that stops a fixture from being loaded at all. Maps to exit code 2.
#[derive(Debug)]
pub struct FixtureError(pub String);

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FixtureError {}

fn bad(msg: impl Into<String>) -> FixtureError {
    FixtureError(msg.into())
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub id: String,
    #[serde(default)]
    pub title: String,
    /// Facts about the ring recorded for the reader. Never checked.
    #[serde(default)]
    pub annotations: Vec<String>,
    pub ring: RingBlock,
    #[serde(default, rename = "derivation")]
    pub derivations: Vec<DerivationBlock>,
    pub extension: Option<ExtensionBlock>,
    #[serde(default, rename = "claim")]
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingBlock {
    pub variables: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub order: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationBlock {
    pub name: String,
    pub images: BTreeMap<String, String>,
}

/// Adjoin one polynomial variable and extend derivations to it.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionBlock {
    pub variable: String,
    #[serde(rename = "derivation")]
    pub derivations: Vec<ExtendedDerivation>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtendedDerivation {
    pub name: String,
    /// Base derivation to extend; the zero derivation when absent.
    pub from: Option<String>,
    /// Image of the new variable, an expression over the base ring.
    pub image: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Claim {
    LndCertified {
        derivation: String,
        #[serde(default)]
        indices: BTreeMap<String, u32>,
        max_index: Option<u32>,
    },
    /// The nilpotency search gives up at `bound`.
    Inconclusive {
        derivation: String,
        bound: u32,
    },
    Slice {
        derivation: String,
        slice: String,
    },
    KernelGenerators {
        derivation: String,
        slice: String,
        generators: Vec<String>,
    },
    BoundedKernelBasis {
        derivation: String,
        degree: Option<u32>,
        subalgebra: Option<Vec<String>>,
        dimension: Option<usize>,
    },
    IntersectionTrivial {
        derivations: Vec<String>,
        degree: Option<u32>,
    },
    IntersectionEquals {
        derivations: Vec<String>,
        degree: Option<u32>,
        subalgebra: Vec<String>,
    },
    MlStarTrivial {
        derivations: Option<Vec<String>>,
        degree: Option<u32>,
    },
    DistinctKernels {
        derivations: Vec<String>,
        degree: Option<u32>,
    },
    /// These images must violate the relations.
    NotWellDefined {
        images: BTreeMap<String, String>,
    },
    /// `pi_r(element) = expected / D(r)^power` in the localization.
    DixmierImage {
        derivation: String,
        r: String,
        element: String,
        expected: String,
        #[serde(default)]
        power: u32,
    },
}

impl Claim {
    pub fn kind(&self) -> &'static str {
        match self {
            Claim::LndCertified { .. } => "lnd-certified",
            Claim::Inconclusive { .. } => "inconclusive",
            Claim::Slice { .. } => "slice",
            Claim::KernelGenerators { .. } => "kernel-generators",
            Claim::BoundedKernelBasis { .. } => "bounded-kernel-basis",
            Claim::IntersectionTrivial { .. } => "intersection-trivial",
            Claim::IntersectionEquals { .. } => "intersection-equals",
            Claim::MlStarTrivial { .. } => "ml-star-trivial",
            Claim::DistinctKernels { .. } => "distinct-kernels",
            Claim::NotWellDefined { .. } => "not-well-defined",
            Claim::DixmierImage { .. } => "dixmier-image",
        }
    }

    /// Derivation names the claim refers to.
    pub fn derivation_names(&self) -> Vec<&str> {
        match self {
            Claim::LndCertified { derivation, .. }
            | Claim::Inconclusive { derivation, .. }
            | Claim::Slice { derivation, .. }
            | Claim::KernelGenerators { derivation, .. }
            | Claim::BoundedKernelBasis { derivation, .. }
            | Claim::DixmierImage { derivation, .. } => vec![derivation],
            Claim::IntersectionTrivial { derivations, .. }
            | Claim::IntersectionEquals { derivations, .. }
            | Claim::DistinctKernels { derivations, .. } => derivations.iter().map(String::as_str).collect(),
            Claim::MlStarTrivial { derivations, .. } => derivations.iter().flatten().map(String::as_str).collect(),
            Claim::NotWellDefined { .. } => vec![],
        }
    }
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<FixtureFile, FixtureError> {
        toml::from_str(text).map_err(|e| bad(format!("invalid fixture: {e}")))
    }

    pub fn load(path: &Path) -> Result<FixtureFile, FixtureError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        FixtureFile::parse(&text).map_err(|e| bad(format!("{}: {}", path.display(), e.0)))
    }
}

/// A derivation block after construction. Ill-defined blocks are kept so
/// that claims about them can report the residue.
#[derive(Clone)]
pub struct Named {
    pub name: String,
    pub derivation: Result<Derivation, String>,
}

/// Rings and derivations built from a [`FixtureFile`].
#[derive(Clone)]
pub struct Fixture {
    pub file: FixtureFile,
    pub ring: Ring,
    pub extension: Option<Ring>,
    pub derivations: Vec<Named>,
}

impl Fixture {
    /// `order` overrides the order declared in the file.
    pub fn build(file: &FixtureFile, order: Option<OrderKind>) -> Result<Fixture, FixtureError> {
        let kind = match (order, &file.ring.order) {
            (Some(k), _) => k,
            (None, Some(s)) => s.parse().map_err(|e| bad(format!("ring order: {e}")))?,
            (None, None) => OrderKind::Grevlex,
        };
        let rels: Vec<&str> = file.ring.relations.iter().map(String::as_str).collect();
        let ring = Ring::parse(&file.ring.variables, &rels, kind).map_err(|e| bad(format!("ring: {e}")))?;

        let mut derivations: Vec<Named> = Vec::new();
        for block in &file.derivations {
            if derivations.iter().any(|n| n.name == block.name) {
                return Err(bad(format!("derivation {} declared twice", block.name)));
            }
            let images = images_of(&ring, &block.images).map_err(|e| bad(format!("derivation {}: {e}", block.name)))?;
            let derivation = Derivation::new(&ring, &block.name, images).map_err(|e| e.to_string());
            derivations.push(Named { name: block.name.clone(), derivation });
        }

        let mut extension = None;
        if let Some(ext) = &file.extension {
            for e in &ext.derivations {
                if derivations.iter().any(|n| n.name == e.name) {
                    return Err(bad(format!("derivation {} declared twice", e.name)));
                }
                let base = match &e.from {
                    None => Derivation::zero(&ring, "0"),
                    Some(f) => match derivations.iter().find(|n| &n.name == f) {
                        Some(Named { derivation: Ok(d), .. }) => d.clone(),
                        Some(_) => return Err(bad(format!("{}: base derivation {f} is not well defined", e.name))),
                        None => return Err(bad(format!("{}: unknown base derivation {f}", e.name))),
                    },
                };
                let image: Polynomial = ring
                    .parse_element(&e.image)
                    .map_err(|err| bad(format!("{}: image {:?}: {err}", e.name, e.image)))?
                    .repr()
                    .clone();
                let (r, d) = base
                    .extend_with_new_variable(&ext.variable, &image)
                    .map_err(|err| bad(format!("{}: {err}", e.name)))?;
                extension.get_or_insert(r);
                derivations.push(Named { name: e.name.clone(), derivation: Ok(d.with_label(&e.name)) });
            }
        }

        for (i, claim) in file.claims.iter().enumerate() {
            for name in claim.derivation_names() {
                if !derivations.iter().any(|n| n.name == name) {
                    return Err(bad(format!("claim {} ({}): unknown derivation {name}", i + 1, claim.kind())));
                }
            }
        }
        Ok(Fixture { file: file.clone(), ring, extension, derivations })
    }

    pub fn named(&self, name: &str) -> Option<&Named> {
        self.derivations.iter().find(|n| n.name == name)
    }

    /// The derivation called `name`, or why it cannot be used.
    pub fn derivation(&self, name: &str) -> Result<&Derivation, String> {
        match self.named(name) {
            Some(Named { derivation: Ok(d), .. }) => Ok(d),
            Some(Named { derivation: Err(e), .. }) => Err(format!("{name} is not a derivation: {e}")),
            None => Err(format!("unknown derivation {name}")),
        }
    }

    /// Derivations of the base ring, in declaration order.
    pub fn base_derivations(&self) -> Vec<&Derivation> {
        self.derivations.iter().filter_map(|n| n.derivation.as_ref().ok()).filter(|d| d.ring() == &self.ring).collect()
    }
}

/// Images in variable order; every variable needs one.
pub fn images_of(ring: &Ring, images: &BTreeMap<String, String>) -> Result<Vec<RingElement>, String> {
    for name in images.keys() {
        if ring.context().index_of(name).is_none() {
            return Err(format!("image for unknown variable {name}"));
        }
    }
    ring.variables()
        .iter()
        .map(|v| {
            let text = images.get(v).ok_or_else(|| format!("no image for {v}"))?;
            ring.parse_element(text).map_err(|e| format!("image of {v} {text:?}: {e}"))
        })
        .collect()
}
