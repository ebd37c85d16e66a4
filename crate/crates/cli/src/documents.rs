//! JSON input documents: spaces and covers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use protoshape::space::{FiniteSpace, OpenCover, Preorder, SpaceError};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: &str = "1";

/// A bad input file: the kind ends up in the error object on stdout.
#[derive(Debug)]
pub struct InputError {
    pub kind: &'static str,
    pub message: String,
}

impl InputError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Self { kind, message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for InputError {}

/// A finite space given by exactly one of its open sets, its minimal open
/// sets or a generating relation `x ≤ y` (closed reflexively and
/// transitively). Subsets list point ids.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub format_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_open: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preorder: Option<Vec<[String; 2]>>,
}

impl SpaceDocument {
    pub fn parse(bytes: &[u8]) -> Result<Self, InputError> {
        let doc: Self = serde_json::from_slice(bytes).map_err(|e| InputError::new("parse", e.to_string()))?;
        check_version(&doc.format_version)?;
        let given = [doc.opens.is_some(), doc.min_open.is_some(), doc.preorder.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(InputError::new("parse", "exactly one of `opens`, `min_open`, `preorder` is required"));
        }
        Ok(doc)
    }

    /// The space described, or the reason the data is not a topology.
    pub fn build(&self) -> Result<FiniteSpace, SpaceError> {
        let points = self.points.clone();
        if let Some(opens) = &self.opens {
            FiniteSpace::from_open_sets(points, opens)
        } else if let Some(min_open) = &self.min_open {
            if let Some(extra) = min_open.keys().find(|k| !self.points.contains(k)) {
                return Err(SpaceError::UnknownPoint(extra.clone()));
            }
            let sets = self
                .points
                .iter()
                .map(|p| {
                    min_open.get(p).cloned().ok_or_else(|| SpaceError::InvalidMinimalOpen {
                        point: p.clone(),
                        reason: "no minimal open set given".into(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            FiniteSpace::from_min_open(points, &sets)
        } else {
            let pairs: Vec<(&str, &str)> =
                self.preorder.iter().flatten().map(|[x, y]| (x.as_str(), y.as_str())).collect();
            Ok(FiniteSpace::from_preorder(&Preorder::from_pairs(points, &pairs)?))
        }
    }

    /// Minimal-open form of a space, subsets in point order.
    pub fn from_space(space: &FiniteSpace, name: Option<String>) -> Self {
        let min_open = (0..space.len()).map(|x| (space.points()[x].clone(), space.ids(space.min_open(x)))).collect();
        Self {
            format_version: FORMAT_VERSION.into(),
            name,
            points: space.points().to_vec(),
            opens: None,
            min_open: Some(min_open),
            preorder: None,
        }
    }
}

/// Malformed ids and duplicates are input errors; everything else is a
/// failed topology check.
pub fn is_axiom_failure(e: &SpaceError) -> bool {
    matches!(
        e,
        SpaceError::MissingEmptyOrFull
            | SpaceError::NotATopology(_)
            | SpaceError::InvalidMinimalOpen { .. }
            | SpaceError::NotAPreorder(_)
    )
}

pub fn load_space(bytes: &[u8]) -> Result<Arc<FiniteSpace>, InputError> {
    let doc = SpaceDocument::parse(bytes)?;
    doc.build().map(Arc::new).map_err(|e| InputError::new("invalid_space", e.to_string()))
}

/// An open cover of a space, members as lists of point ids.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDocument {
    pub format_version: String,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub members: Vec<Vec<String>>,
}

pub fn load_cover(bytes: &[u8], space: &Arc<FiniteSpace>) -> Result<OpenCover, InputError> {
    let doc: CoverDocument = serde_json::from_slice(bytes).map_err(|e| InputError::new("parse", e.to_string()))?;
    check_version(&doc.format_version)?;
    let invalid = |e: SpaceError| InputError::new("invalid_cover", e.to_string());
    let members = doc.members.iter().map(|m| space.subset(m)).collect::<Result<Vec<_>, _>>().map_err(invalid)?;
    let labels = doc.labels.unwrap_or_else(|| (0..members.len()).map(|i| format!("U{i}")).collect());
    OpenCover::with_labels(space.clone(), labels, members).map_err(invalid)
}

fn check_version(v: &str) -> Result<(), InputError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(InputError::new("parse", format!("unsupported format_version `{v}`, expected `{FORMAT_VERSION}`")))
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
