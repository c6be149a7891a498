//! Linkings: spans of injective relations taken up to renaming of links.
//!
//! A linking `X -> Y` is a set of links, each owning a footprint of feet in
//! `X` and `Y`, together with a count of loops (links with no feet at all).
//! Because the span legs are injective, no two links share a vertex; that
//! lets us store the isomorphism class canonically as a sorted list of
//! footprints plus the loop count, making isomorphism a plain equality.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::irel::{InjRel, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkingError {
    #[error("a stored link must have at least one foot; loops are counted, not stored")]
    EmptyLink,
    #[error("{side} foot {index} out of range for a set of {size} vertices")]
    FootOutOfRange {
        side: Side,
        index: usize,
        size: usize,
    },
    #[error("{side} vertex {vertex} belongs to more than one link")]
    OverlappingFoot { side: Side, vertex: usize },
    #[error("span legs must share a domain: {left} vs {right} links")]
    SpanDomMismatch { left: usize, right: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// One link: its feet on the left object and on the right object.
///
/// Ordering is by the smallest tagged foot (all left vertices before all
/// right vertices), which on disjoint links is a total order and fixes the
/// canonical form of a linking.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Link {
    left: BTreeSet<usize>,
    right: BTreeSet<usize>,
}

impl Link {
    pub fn new(
        left: impl IntoIterator<Item = usize>,
        right: impl IntoIterator<Item = usize>,
    ) -> Result<Self, LinkingError> {
        let link = Link {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        };
        if link.left.is_empty() && link.right.is_empty() {
            return Err(LinkingError::EmptyLink);
        }
        Ok(link)
    }

    pub fn left(&self) -> &BTreeSet<usize> {
        &self.left
    }

    pub fn right(&self) -> &BTreeSet<usize> {
        &self.right
    }

    /// Total number of feet.
    pub fn arity(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_binary(&self) -> bool {
        self.arity() == 2
    }

    fn tagged_feet(&self) -> impl Iterator<Item = (u8, usize)> + '_ {
        self.left
            .iter()
            .map(|&i| (0u8, i))
            .chain(self.right.iter().map(|&j| (1u8, j)))
    }
}

impl PartialOrd for Link {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Link {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tagged_feet().cmp(other.tagged_feet())
    }
}

/// A linking `X -> Y` in canonical form.
///
/// Equality is exactly isomorphism of the underlying spans: links are kept
/// sorted, loops are kept as a count, and vertex labels never participate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Linking {
    left: VertexSet,
    right: VertexSet,
    links: Vec<Link>,
    loops: usize,
}

impl Linking {
    /// Validates foot ranges and the disjointness of footprints, then
    /// stores the links sorted.
    pub fn new(
        left: VertexSet,
        right: VertexSet,
        links: Vec<Link>,
        loops: usize,
    ) -> Result<Self, LinkingError> {
        let mut left_owner = vec![false; left.size()];
        let mut right_owner = vec![false; right.size()];
        for link in &links {
            for &i in &link.left {
                if i >= left.size() {
                    return Err(LinkingError::FootOutOfRange {
                        side: Side::Left,
                        index: i,
                        size: left.size(),
                    });
                }
                if left_owner[i] {
                    return Err(LinkingError::OverlappingFoot {
                        side: Side::Left,
                        vertex: i,
                    });
                }
                left_owner[i] = true;
            }
            for &j in &link.right {
                if j >= right.size() {
                    return Err(LinkingError::FootOutOfRange {
                        side: Side::Right,
                        index: j,
                        size: right.size(),
                    });
                }
                if right_owner[j] {
                    return Err(LinkingError::OverlappingFoot {
                        side: Side::Right,
                        vertex: j,
                    });
                }
                right_owner[j] = true;
            }
        }
        let mut links = links;
        links.sort();
        Ok(Linking {
            left,
            right,
            links,
            loops,
        })
    }

    /// The linking presented by a span of injective relations with common
    /// domain `A`: every carrier element with a non-empty footprint becomes
    /// a link, every one with an empty footprint becomes a loop.
    pub fn from_span(f: &InjRel, g: &InjRel) -> Result<Self, LinkingError> {
        if f.dom().size() != g.dom().size() {
            return Err(LinkingError::SpanDomMismatch {
                left: f.dom().size(),
                right: g.dom().size(),
            });
        }
        let mut links = Vec::new();
        let mut loops = 0;
        for a in f.dom().indices() {
            let left_feet = f.image_of(a);
            let right_feet = g.image_of(a);
            if left_feet.is_empty() && right_feet.is_empty() {
                loops += 1;
            } else {
                links.push(Link {
                    left: left_feet,
                    right: right_feet,
                });
            }
        }
        // Injectivity of the legs already gives disjoint footprints.
        Linking::new(f.cod().clone(), g.cod().clone(), links, loops)
    }

    /// The span presenting this linking: carrier `A` of size
    /// `links + loops`, links first, loops as trailing elements with empty
    /// images.
    pub fn to_span(&self) -> (InjRel, InjRel) {
        let carrier = VertexSet::new(self.carrier_size());
        let f_pairs: Vec<(usize, usize)> = self
            .links
            .iter()
            .enumerate()
            .flat_map(|(a, link)| link.left.iter().map(move |&i| (a, i)))
            .collect();
        let g_pairs: Vec<(usize, usize)> = self
            .links
            .iter()
            .enumerate()
            .flat_map(|(a, link)| link.right.iter().map(move |&j| (a, j)))
            .collect();
        let f = InjRel::new(carrier.clone(), self.left.clone(), f_pairs)
            .expect("canonical links have disjoint left feet");
        let g = InjRel::new(carrier, self.right.clone(), g_pairs)
            .expect("canonical links have disjoint right feet");
        (f, g)
    }

    pub fn identity(x: &VertexSet) -> Self {
        let links = x
            .indices()
            .map(|i| Link {
                left: [i].into_iter().collect(),
                right: [i].into_iter().collect(),
            })
            .collect();
        Linking {
            left: x.clone(),
            right: x.clone(),
            links,
            loops: 0,
        }
    }

    pub fn empty(left: VertexSet, right: VertexSet) -> Self {
        Linking {
            left,
            right,
            links: Vec::new(),
            loops: 0,
        }
    }

    /// An endomorphism of the empty object: nothing but a loop count.
    pub fn loops_only(loops: usize) -> Self {
        Linking {
            left: VertexSet::new(0),
            right: VertexSet::new(0),
            links: Vec::new(),
            loops,
        }
    }

    pub fn left(&self) -> &VertexSet {
        &self.left
    }

    pub fn right(&self) -> &VertexSet {
        &self.right
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn is_loopless(&self) -> bool {
        self.loops == 0
    }

    /// Size of the presenting span's carrier: links plus loops.
    pub fn carrier_size(&self) -> usize {
        self.links.len() + self.loops
    }

    /// Spans are isomorphic iff their canonical forms coincide, so this is
    /// equality.
    pub fn is_isomorphic(&self, other: &Linking) -> bool {
        self == other
    }

    /// Delete all loops.
    pub fn flatten(&self) -> Linking {
        Linking {
            loops: 0,
            ..self.clone()
        }
    }

    pub fn add_loops(&self, extra: usize) -> Linking {
        Linking {
            loops: self.loops + extra,
            ..self.clone()
        }
    }
}
