//! Finite vertex sets and injective relations between them.
//!
//! An injective relation `R : A -> Z` relates each vertex of `Z` with at
//! most one vertex of `A`; equivalently it is a partial function `Z -> A`
//! read backwards. A vertex of `A` may relate to any number of vertices of
//! `Z`, which is what lets a single link own several feet. These relations
//! are the legs of the spans that linkings are built from.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrelError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("{side} vertex {index} out of range for a set of {size} vertices")]
    VertexOutOfRange {
        side: &'static str,
        index: usize,
        size: usize,
    },
    #[error("not injective: codomain vertex {cod_index} has more than one preimage")]
    NotInjective { cod_index: usize },
    #[error("cannot compose: first relation ends in {first_cod} vertices, second starts from {second_dom}")]
    InterfaceMismatch { first_cod: usize, second_dom: usize },
    #[error("copair requires a common domain: {left} vs {right} vertices")]
    DomainMismatch { left: usize, right: usize },
}

/// An ordered finite set of vertices, canonically indexed `0..size`.
///
/// Labels are display metadata only: two vertex sets compare equal whenever
/// they have the same size.
#[derive(Clone, Debug)]
pub struct VertexSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl VertexSet {
    pub fn new(size: usize) -> Self {
        VertexSet { size, labels: None }
    }

    /// A vertex set carrying one display label per vertex. Labels must be
    /// pairwise distinct.
    pub fn with_labels(labels: Vec<String>) -> Result<Self, IrelError> {
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(IrelError::DuplicateLabel(label.clone()));
            }
        }
        Ok(VertexSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|l| l.get(index))
            .map(|s| s.as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for VertexSet {}

impl std::hash::Hash for VertexSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.size.hash(state);
    }
}

/// An injective binary relation between two vertex sets.
///
/// Injectivity means no two pairs share a codomain vertex; the constructor
/// rejects anything else, so every value of this type is injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjRel {
    dom: VertexSet,
    cod: VertexSet,
    pairs: BTreeSet<(usize, usize)>,
}

impl InjRel {
    pub fn new(
        dom: VertexSet,
        cod: VertexSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, IrelError> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        let mut cod_seen = vec![false; cod.size()];
        for &(a, z) in &pairs {
            if a >= dom.size() {
                return Err(IrelError::VertexOutOfRange {
                    side: "domain",
                    index: a,
                    size: dom.size(),
                });
            }
            if z >= cod.size() {
                return Err(IrelError::VertexOutOfRange {
                    side: "codomain",
                    index: z,
                    size: cod.size(),
                });
            }
            if cod_seen[z] {
                return Err(IrelError::NotInjective { cod_index: z });
            }
            cod_seen[z] = true;
        }
        Ok(InjRel { dom, cod, pairs })
    }

    /// The diagonal relation on `x`; total and injective.
    pub fn identity(x: &VertexSet) -> Self {
        let pairs = x.indices().map(|i| (i, i)).collect();
        InjRel {
            dom: x.clone(),
            cod: x.clone(),
            pairs,
        }
    }

    pub fn empty(dom: VertexSet, cod: VertexSet) -> Self {
        InjRel {
            dom,
            cod,
            pairs: BTreeSet::new(),
        }
    }

    pub fn dom(&self) -> &VertexSet {
        &self.dom
    }

    pub fn cod(&self) -> &VertexSet {
        &self.cod
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn contains(&self, a: usize, z: usize) -> bool {
        self.pairs.contains(&(a, z))
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The image of a single domain vertex. Out-of-range vertices have an
    /// empty image.
    pub fn image_of(&self, a: usize) -> BTreeSet<usize> {
        self.pairs
            .range((a, 0)..=(a, usize::MAX))
            .map(|&(_, z)| z)
            .collect()
    }

    /// The image of a subset of the domain.
    pub fn image(&self, alpha: &BTreeSet<usize>) -> Result<BTreeSet<usize>, IrelError> {
        let mut out = BTreeSet::new();
        for &a in alpha {
            if a >= self.dom.size() {
                return Err(IrelError::VertexOutOfRange {
                    side: "domain",
                    index: a,
                    size: self.dom.size(),
                });
            }
            out.extend(self.image_of(a));
        }
        Ok(out)
    }

    /// The unique preimage of a codomain vertex, if any.
    pub fn preimage_of(&self, z: usize) -> Option<usize> {
        self.pairs.iter().find(|&&(_, w)| w == z).map(|&(a, _)| a)
    }

    /// Every domain vertex has a non-empty image.
    pub fn is_total(&self) -> bool {
        let covered: HashSet<usize> = self.pairs.iter().map(|&(a, _)| a).collect();
        covered.len() == self.dom.size()
    }

    /// Monic exactly when total. The quantifier definition (left
    /// cancellation against all parallel pairs) is checked against this in
    /// the test suite; here we use the totality characterisation directly.
    pub fn is_monic(&self) -> bool {
        self.is_total()
    }

    /// Relational composite, applying `self` first: `(x, z)` is in
    /// `self.then(s)` iff some interface vertex `y` has `(x, y)` in `self`
    /// and `(y, z)` in `s`. Composites of injective relations are again
    /// injective.
    pub fn then(&self, later: &InjRel) -> Result<InjRel, IrelError> {
        if self.cod.size() != later.dom.size() {
            return Err(IrelError::InterfaceMismatch {
                first_cod: self.cod.size(),
                second_dom: later.dom.size(),
            });
        }
        let mut pairs = BTreeSet::new();
        for &(a, y) in &self.pairs {
            for z in later.image_of(y) {
                pairs.insert((a, z));
            }
        }
        Ok(InjRel {
            dom: self.dom.clone(),
            cod: later.cod.clone(),
            pairs,
        })
    }

    /// The pairing `[r, s] : A -> M + N` into the tagged disjoint union,
    /// with `M` on the left. Tags keep the codomains disjoint, so the
    /// result is injective whenever `r` and `s` are.
    pub fn copair(r: &InjRel, s: &InjRel) -> Result<InjRel, IrelError> {
        if r.dom.size() != s.dom.size() {
            return Err(IrelError::DomainMismatch {
                left: r.dom.size(),
                right: s.dom.size(),
            });
        }
        let offset = r.cod.size();
        let cod = VertexSet::new(offset + s.cod.size());
        let pairs = r
            .pairs
            .iter()
            .copied()
            .chain(s.pairs.iter().map(|&(a, n)| (a, offset + n)))
            .collect();
        Ok(InjRel {
            dom: r.dom.clone(),
            cod,
            pairs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(dom: usize, cod: usize, pairs: &[(usize, usize)]) -> InjRel {
        InjRel::new(
            VertexSet::new(dom),
            VertexSet::new(cod),
            pairs.iter().copied(),
        )
        .unwrap()
    }

    #[test]
    fn identity_of_empty_set_is_empty() {
        let id = InjRel::identity(&VertexSet::new(0));
        assert!(id.is_empty());
        assert!(id.is_total());
    }

    #[test]
    fn identity_is_diagonal() {
        let id = InjRel::identity(&VertexSet::new(2));
        assert_eq!(id.pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn identity_is_unit_for_composition() {
        let r = rel(3, 4, &[(0, 1), (0, 2), (2, 3)]);
        let id_dom = InjRel::identity(r.dom());
        let id_cod = InjRel::identity(r.cod());
        assert_eq!(id_dom.then(&r).unwrap(), r);
        assert_eq!(r.then(&id_cod).unwrap(), r);
    }

    #[test]
    fn composition_follows_shared_interface_vertices() {
        // a relates to y1 and y2; only y1 continues on.
        let r = rel(1, 2, &[(0, 0), (0, 1)]);
        let s = rel(2, 1, &[(0, 0)]);
        assert_eq!(r.then(&s).unwrap(), rel(1, 1, &[(0, 0)]));
    }

    #[test]
    fn composition_through_disjoint_interfaces_is_empty() {
        let r = rel(1, 2, &[(0, 0)]);
        let s = rel(2, 1, &[(1, 0)]);
        assert!(r.then(&s).unwrap().is_empty());
    }

    #[test]
    fn composition_checks_interface() {
        let r = rel(1, 2, &[]);
        let s = rel(3, 1, &[]);
        assert_eq!(
            r.then(&s),
            Err(IrelError::InterfaceMismatch {
                first_cod: 2,
                second_dom: 3
            })
        );
    }

    #[test]
    fn injectivity_is_rejected_by_construction() {
        let err = InjRel::new(VertexSet::new(2), VertexSet::new(1), [(0, 0), (1, 0)]).unwrap_err();
        assert_eq!(err, IrelError::NotInjective { cod_index: 0 });
    }

    #[test]
    fn image_of_empty_subset_is_empty() {
        let r = rel(2, 3, &[(0, 0), (0, 1), (1, 2)]);
        assert!(r.image(&BTreeSet::new()).unwrap().is_empty());
    }

    #[test]
    fn image_reads_off_pairs() {
        let r = rel(2, 3, &[(0, 0), (0, 1), (1, 2)]);
        let alpha: BTreeSet<usize> = [0].into_iter().collect();
        assert_eq!(r.image(&alpha).unwrap(), [0, 1].into_iter().collect());
    }

    #[test]
    fn image_rejects_out_of_range() {
        let r = rel(2, 3, &[]);
        let alpha: BTreeSet<usize> = [5].into_iter().collect();
        assert!(r.image(&alpha).is_err());
    }

    #[test]
    fn totality_and_monicity() {
        assert!(InjRel::identity(&VertexSet::new(3)).is_monic());
        // A domain vertex with empty image: not total, hence not monic.
        let m = rel(1, 1, &[]);
        assert!(!m.is_total());
        assert!(!m.is_monic());
        // Vacuously total on the empty domain.
        assert!(rel(0, 2, &[]).is_monic());
    }

    #[test]
    fn copair_tags_left_then_right() {
        let r = rel(1, 1, &[(0, 0)]);
        let s = rel(1, 1, &[(0, 0)]);
        let c = InjRel::copair(&r, &s).unwrap();
        assert_eq!(c.cod().size(), 2);
        assert_eq!(c.pairs().collect::<Vec<_>>(), vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn copair_of_empty_relations_is_empty() {
        let r = rel(2, 1, &[]);
        let s = rel(2, 3, &[]);
        let c = InjRel::copair(&r, &s).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.cod().size(), 4);
    }

    #[test]
    fn copair_requires_common_domain() {
        let r = rel(1, 1, &[]);
        let s = rel(2, 1, &[]);
        assert!(InjRel::copair(&r, &s).is_err());
    }

    #[test]
    fn labels_must_be_distinct() {
        let err = VertexSet::with_labels(vec!["a".into(), "a".into()]).unwrap_err();
        assert_eq!(err, IrelError::DuplicateLabel("a".into()));
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let plain = VertexSet::new(2);
        let labelled = VertexSet::with_labels(vec!["u".into(), "v".into()]).unwrap();
        assert_eq!(plain, labelled);
    }
}
