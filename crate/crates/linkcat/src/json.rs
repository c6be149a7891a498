//! The on-disk JSON formats for linkings and proof nets.
//!
//! A linking file looks like
//!
//! ```json
//! {"left": 2, "right": ["u", "v"],
//!  "links": [{"left": [0], "right": [1]}],
//!  "loops": 0}
//! ```
//!
//! where `left`/`right` are either a vertex count or a list of distinct
//! labels, indices are 0-based, omitted `links`/`loops` default to empty,
//! and an optional `comment` field is carried through untouched. A net file
//! is `{"source": "...", "target": "...", "axioms": [[i, j], ...]}` with
//! formulas in the parser syntax and axiom pairs indexing the leaves of
//! `dual(source) ⅋ target`. Unknown fields are rejected so that typos
//! surface as errors; serialisation is canonical, making outputs stable
//! enough for golden files.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::irel::{IrelError, VertexSet};
use crate::linking::{Link, Linking, LinkingError};
use crate::mll::{MllError, ProofNet};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Labels(#[from] IrelError),
    #[error(transparent)]
    Linking(#[from] LinkingError),
    #[error(transparent)]
    Net(#[from] MllError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// A vertex set is written as either its size or its label list.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VerticesRepr {
    Size(usize),
    Labels(Vec<String>),
}

impl VerticesRepr {
    fn to_vertex_set(&self) -> Result<VertexSet, FormatError> {
        match self {
            VerticesRepr::Size(n) => Ok(VertexSet::new(*n)),
            VerticesRepr::Labels(labels) => Ok(VertexSet::with_labels(labels.clone())?),
        }
    }

    fn of_vertex_set(set: &VertexSet) -> VerticesRepr {
        match set.labels() {
            Some(labels) => VerticesRepr::Labels(labels.to_vec()),
            None => VerticesRepr::Size(set.size()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkRepr {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkingRepr {
    pub left: VerticesRepr,
    pub right: VerticesRepr,
    #[serde(default)]
    pub links: Vec<LinkRepr>,
    #[serde(default)]
    pub loops: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl LinkingRepr {
    pub fn to_linking(&self) -> Result<Linking, FormatError> {
        let left = self.left.to_vertex_set()?;
        let right = self.right.to_vertex_set()?;
        let links = self
            .links
            .iter()
            .map(|l| Link::new(l.left.iter().copied(), l.right.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Linking::new(left, right, links, self.loops)?)
    }

    pub fn of_linking(linking: &Linking) -> LinkingRepr {
        LinkingRepr {
            left: VerticesRepr::of_vertex_set(linking.left()),
            right: VerticesRepr::of_vertex_set(linking.right()),
            links: linking
                .links()
                .iter()
                .map(|l| LinkRepr {
                    left: l.left().iter().copied().collect(),
                    right: l.right().iter().copied().collect(),
                })
                .collect(),
            loops: linking.loops(),
            comment: None,
        }
    }
}

pub fn linking_from_json(text: &str) -> Result<Linking, FormatError> {
    let repr: LinkingRepr = serde_json::from_str(text)?;
    repr.to_linking()
}

pub fn linking_to_json(linking: &Linking) -> String {
    serde_json::to_string_pretty(&LinkingRepr::of_linking(linking)).expect("plain data serialises")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetRepr {
    pub source: String,
    pub target: String,
    pub axioms: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl NetRepr {
    pub fn to_net(&self) -> Result<ProofNet, FormatError> {
        let source = crate::mll::Formula::parse(&self.source).map_err(MllError::from)?;
        let target = crate::mll::Formula::parse(&self.target).map_err(MllError::from)?;
        Ok(ProofNet::new(source, target, &self.axioms)?)
    }

    pub fn of_net(net: &ProofNet) -> NetRepr {
        NetRepr {
            source: net.source().to_string(),
            target: net.target().to_string(),
            axioms: net.axiom_pairs(),
            comment: None,
        }
    }
}

pub fn net_from_json(text: &str) -> Result<ProofNet, FormatError> {
    let repr: NetRepr = serde_json::from_str(text)?;
    repr.to_net()
}

pub fn net_to_json(net: &ProofNet) -> String {
    serde_json::to_string_pretty(&NetRepr::of_net(net)).expect("plain data serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linking_round_trips_through_json() {
        let text = r#"{"left": 2, "right": 3,
                       "links": [{"left": [0, 1], "right": [2]}, {"right": [0]}],
                       "loops": 2}"#;
        let linking = linking_from_json(text).unwrap();
        assert_eq!(linking.link_count(), 2);
        assert_eq!(linking.loops(), 2);
        let back = linking_from_json(&linking_to_json(&linking)).unwrap();
        assert_eq!(back, linking);
    }

    #[test]
    fn labels_form_is_accepted_and_preserved() {
        let text = r#"{"left": ["u", "v"], "right": 1, "links": [{"left": [0], "right": [0]}]}"#;
        let linking = linking_from_json(text).unwrap();
        assert_eq!(linking.left().label(1), Some("v"));
        let json = linking_to_json(&linking);
        assert!(json.contains("\"u\""));
    }

    #[test]
    fn disjointness_violation_names_the_vertex() {
        let text = r#"{"left": 1, "right": 2,
                       "links": [{"left": [0], "right": [1]}, {"right": [1]}]}"#;
        let err = linking_from_json(text).unwrap_err();
        assert!(err.to_string().contains("vertex 1"), "got: {err}");
    }

    #[test]
    fn unknown_fields_are_rejected_with_position() {
        let err = linking_from_json(r#"{"left": 1, "right": 1, "loop": 3}"#).unwrap_err();
        match err {
            FormatError::Json { line, column, .. } => {
                assert_eq!(line, 1);
                assert!(column > 0);
            }
            other => panic!("expected a json error, got {other}"),
        }
    }

    #[test]
    fn net_files_round_trip() {
        let text = r#"{"source": "(a * b)", "target": "(b * a)", "axioms": [[0, 3], [1, 2]]}"#;
        let net = net_from_json(text).unwrap();
        let back = net_from_json(&net_to_json(&net)).unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn comments_are_tolerated() {
        let text = r#"{"left": 0, "right": 0, "loops": 1, "comment": "just loops"}"#;
        assert_eq!(linking_from_json(text).unwrap(), Linking::loops_only(1));
    }
}
