//! Pullback composition of linkings.
//!
//! Composing `first : X -> Y` with `second : Y -> Z` pulls the two spans
//! back over the shared interface `Y`. The carrier of the composite is the
//! set of paths: minimal non-empty synchronisations, where a
//! synchronisation is a pair of link subsets (one per operand) with equal
//! footprints on `Y`.
//!
//! Injectivity makes paths cheap to find. Each interface vertex touches at
//! most one link above and at most one below, so gluing links that share an
//! interface vertex and keeping exactly the connected components whose
//! interface feet are covered on both sides yields the minimal non-empty
//! synchronisations. A component with a foot covered on only one side can
//! sit inside no synchronisation at all, so the entire component
//! contributes nothing to the composite. [`brute_force_syncs`] enumerates
//! synchronisations from the definition and is kept as an independent
//! oracle for this extraction.
//!
//! Members of a synchronisation are carrier indices of the operands: for a
//! linking with `n` links, indices `0..n` name the links in canonical order
//! and indices `n..n + loops` name its loops.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::irel::{InjRel, VertexSet};
use crate::linking::{Link, Linking};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("interface mismatch: first linking ends in {first_right} vertices, second starts from {second_left}")]
    InterfaceMismatch {
        first_right: usize,
        second_left: usize,
    },
    #[error("the {which} operand has {loops} loops; loopless composition is only defined on loopless linkings")]
    NotLoopless { which: &'static str, loops: usize },
    #[error("{which} member {index} out of range for a carrier of {size}")]
    MemberOutOfRange {
        which: &'static str,
        index: usize,
        size: usize,
    },
    #[error("combined carrier of {carrier} exceeds the brute-force cap of {max}")]
    TooLargeForBruteForce { carrier: usize, max: usize },
    #[error("cone leg {which} should reach a carrier of {expected} elements, found {found}")]
    ConeShapeMismatch {
        which: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("cone legs must share an apex: {left} vs {right}")]
    ConeApexMismatch { left: usize, right: usize },
    #[error("cone does not commute with the interface legs")]
    ConeDoesNotCommute,
}

/// Carrier subset limit for [`brute_force_syncs`].
pub const BRUTE_FORCE_CAP: usize = 20;

/// A pair of carrier subsets, one per operand, with equal interface
/// footprints. Paths are the minimal non-empty ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sync {
    pub upper: BTreeSet<usize>,
    pub lower: BTreeSet<usize>,
}

impl Sync {
    pub fn new(
        upper: impl IntoIterator<Item = usize>,
        lower: impl IntoIterator<Item = usize>,
    ) -> Self {
        Sync {
            upper: upper.into_iter().collect(),
            lower: lower.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty() && self.lower.is_empty()
    }

    pub fn len(&self) -> usize {
        self.upper.len() + self.lower.len()
    }

    /// Set inclusion on the combined carrier.
    pub fn is_subset(&self, other: &Sync) -> bool {
        self.upper.is_subset(&other.upper) && self.lower.is_subset(&other.lower)
    }

    pub fn is_disjoint(&self, other: &Sync) -> bool {
        self.upper.is_disjoint(&other.upper) && self.lower.is_disjoint(&other.lower)
    }
}

/// A minimal non-empty synchronisation.
pub type Path = Sync;

/// Everything the pullback yields: the composite linking, the paths that
/// are its carrier, the projections back onto the operands' carriers, and
/// the number of loops formed by this composition (paths over actual links
/// whose outer footprint is empty; loops carried in by the operands are not
/// counted here).
///
/// `p` and `q` are indexed by the order of `paths`, which need not match
/// the canonical link order inside `linking`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub linking: Linking,
    pub new_loops: usize,
    pub paths: Vec<Path>,
    pub p: InjRel,
    pub q: InjRel,
}

fn check_interface(first: &Linking, second: &Linking) -> Result<usize, ComposeError> {
    if first.right().size() != second.left().size() {
        return Err(ComposeError::InterfaceMismatch {
            first_right: first.right().size(),
            second_left: second.left().size(),
        });
    }
    Ok(first.right().size())
}

/// Interface footprint of a carrier subset: feet on `Y` of its links; loop
/// slots contribute nothing.
fn interface_feet<'a>(
    linking: &Linking,
    members: &'a BTreeSet<usize>,
    feet_of: impl Fn(&Link) -> &BTreeSet<usize> + 'a,
) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &m in members {
        if let Some(link) = linking.links().get(m) {
            out.extend(feet_of(link).iter().copied());
        }
    }
    out
}

fn check_members(
    which: &'static str,
    members: &BTreeSet<usize>,
    carrier: usize,
) -> Result<(), ComposeError> {
    if let Some(&index) = members.iter().next_back() {
        if index >= carrier {
            return Err(ComposeError::MemberOutOfRange {
                which,
                index,
                size: carrier,
            });
        }
    }
    Ok(())
}

/// Does `s` synchronise `first` with `second`, i.e. do its two halves have
/// the same footprint on the interface?
pub fn is_synchronisation(
    first: &Linking,
    second: &Linking,
    s: &Sync,
) -> Result<bool, ComposeError> {
    check_interface(first, second)?;
    check_members("upper", &s.upper, first.carrier_size())?;
    check_members("lower", &s.lower, second.carrier_size())?;
    let above = interface_feet(first, &s.upper, Link::right);
    let below = interface_feet(second, &s.lower, Link::left);
    Ok(above == below)
}

/// Plain union-find over link indices.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri] = rj;
        }
    }
}

/// All paths of the composition, sorted. Loops of either operand appear as
/// singleton paths.
pub fn paths(first: &Linking, second: &Linking) -> Result<Vec<Path>, ComposeError> {
    let interface = check_interface(first, second)?;
    let na = first.link_count();
    let nb = second.link_count();

    // Which link covers each interface vertex from above / below. At most
    // one per side, by disjointness.
    let mut above: Vec<Option<usize>> = vec![None; interface];
    let mut below: Vec<Option<usize>> = vec![None; interface];
    for (i, link) in first.links().iter().enumerate() {
        for &y in link.right() {
            above[y] = Some(i);
        }
    }
    for (j, link) in second.links().iter().enumerate() {
        for &y in link.left() {
            below[y] = Some(j);
        }
    }

    // Glue links that share an interface vertex; a vertex covered on one
    // side only rules out every synchronisation containing its component.
    let mut uf = UnionFind::new(na + nb);
    let mut dead_roots: BTreeSet<usize> = BTreeSet::new();
    for y in 0..interface {
        match (above[y], below[y]) {
            (Some(i), Some(j)) => uf.union(i, na + j),
            (Some(i), None) => {
                let root = uf.find(i);
                dead_roots.insert(root);
            }
            (None, Some(j)) => {
                let root = uf.find(na + j);
                dead_roots.insert(root);
            }
            (None, None) => {}
        }
    }
    // Dead marks were taken on interim roots; normalise them.
    let dead_roots: BTreeSet<usize> = dead_roots.into_iter().map(|r| uf.find(r)).collect();

    let mut components: std::collections::BTreeMap<usize, Sync> = std::collections::BTreeMap::new();
    for m in 0..na + nb {
        let root = uf.find(m);
        if dead_roots.contains(&root) {
            continue;
        }
        let entry = components.entry(root).or_insert_with(|| Sync::new([], []));
        if m < na {
            entry.upper.insert(m);
        } else {
            entry.lower.insert(m - na);
        }
    }

    let mut out: Vec<Path> = components.into_values().collect();
    for k in 0..first.loops() {
        out.push(Sync::new([na + k], []));
    }
    for k in 0..second.loops() {
        out.push(Sync::new([], [nb + k]));
    }
    out.sort();
    Ok(out)
}

/// Pullback composition, applying `first` and then `second`.
pub fn pullback(first: &Linking, second: &Linking) -> Result<Pullback, ComposeError> {
    let all_paths = paths(first, second)?;
    let na = first.link_count();
    let nb = second.link_count();

    let mut links: Vec<Link> = Vec::new();
    let mut new_loops = 0;
    for path in &all_paths {
        let left_feet: BTreeSet<usize> = path
            .upper
            .iter()
            .filter_map(|&m| first.links().get(m))
            .flat_map(|link| link.left().iter().copied())
            .collect();
        let right_feet: BTreeSet<usize> = path
            .lower
            .iter()
            .filter_map(|&m| second.links().get(m))
            .flat_map(|link| link.right().iter().copied())
            .collect();
        let carries_loop_slot =
            path.upper.iter().any(|&m| m >= na) || path.lower.iter().any(|&m| m >= nb);
        if left_feet.is_empty() && right_feet.is_empty() {
            if !carries_loop_slot {
                new_loops += 1;
            }
        } else {
            links.push(Link::new(left_feet, right_feet).expect("non-empty outer footprint"));
        }
    }

    let loops = first.loops() + second.loops() + new_loops;
    let linking = Linking::new(first.left().clone(), second.right().clone(), links, loops)
        .expect("paths are disjoint, so composite footprints are disjoint");

    let apex = VertexSet::new(all_paths.len());
    let p_pairs: Vec<(usize, usize)> = all_paths
        .iter()
        .enumerate()
        .flat_map(|(idx, path)| path.upper.iter().map(move |&m| (idx, m)))
        .collect();
    let q_pairs: Vec<(usize, usize)> = all_paths
        .iter()
        .enumerate()
        .flat_map(|(idx, path)| path.lower.iter().map(move |&m| (idx, m)))
        .collect();
    let p = InjRel::new(apex.clone(), VertexSet::new(first.carrier_size()), p_pairs)
        .expect("distinct paths are disjoint");
    let q = InjRel::new(apex, VertexSet::new(second.carrier_size()), q_pairs)
        .expect("distinct paths are disjoint");

    Ok(Pullback {
        linking,
        new_loops,
        paths: all_paths,
        p,
        q,
    })
}

impl Linking {
    /// The composite linking, applying `self` first. Loops add up: the
    /// composite carries both operands' loops plus the newly formed ones.
    pub fn then(&self, later: &Linking) -> Result<Pullback, ComposeError> {
        pullback(self, later)
    }

    /// Composition in the loopless world: both operands must be loopless,
    /// and any loops formed during the pullback are discarded.
    pub fn then_flat(&self, later: &Linking) -> Result<Linking, ComposeError> {
        if !self.is_loopless() {
            return Err(ComposeError::NotLoopless {
                which: "first",
                loops: self.loops(),
            });
        }
        if !later.is_loopless() {
            return Err(ComposeError::NotLoopless {
                which: "second",
                loops: later.loops(),
            });
        }
        Ok(pullback(self, later)?.linking.flatten())
    }
}

/// Every synchronisation, by exhaustive enumeration of carrier subsets.
/// This is the definitional oracle for [`paths`]; its minimal non-empty
/// elements must coincide with the extracted paths.
pub fn brute_force_syncs(first: &Linking, second: &Linking) -> Result<Vec<Sync>, ComposeError> {
    check_interface(first, second)?;
    let ca = first.carrier_size();
    let cb = second.carrier_size();
    if ca + cb > BRUTE_FORCE_CAP {
        return Err(ComposeError::TooLargeForBruteForce {
            carrier: ca + cb,
            max: BRUTE_FORCE_CAP,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (ca + cb)) {
        let upper: BTreeSet<usize> = (0..ca).filter(|i| mask & (1 << i) != 0).collect();
        let lower: BTreeSet<usize> = (0..cb).filter(|j| mask & (1 << (ca + j)) != 0).collect();
        let s = Sync { upper, lower };
        let above = interface_feet(first, &s.upper, Link::right);
        let below = interface_feet(second, &s.lower, Link::left);
        if above == below {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// The minimal non-empty elements of a set of synchronisations.
pub fn minimal_nonempty(syncs: &[Sync]) -> Vec<Sync> {
    syncs
        .iter()
        .filter(|s| !s.is_empty())
        .filter(|s| {
            !syncs
                .iter()
                .any(|t| !t.is_empty() && t != *s && t.is_subset(s))
        })
        .cloned()
        .collect()
}

/// The mediating map of the pullback's universal property.
///
/// Given a cone `p' : P' -> A`, `q' : P' -> B` over the two carriers that
/// commutes with the interface legs, returns the unique `u : P' -> P` with
/// `p ∘ u = p'` and `q ∘ u = q'`, where `P` is indexed by the path order of
/// [`pullback`]. Each cone element `d` is sent to every path contained in
/// the synchronisation `p'(d) + q'(d)`.
pub fn mediating(
    first: &Linking,
    second: &Linking,
    p_prime: &InjRel,
    q_prime: &InjRel,
) -> Result<InjRel, ComposeError> {
    check_interface(first, second)?;
    if p_prime.cod().size() != first.carrier_size() {
        return Err(ComposeError::ConeShapeMismatch {
            which: "p'",
            expected: first.carrier_size(),
            found: p_prime.cod().size(),
        });
    }
    if q_prime.cod().size() != second.carrier_size() {
        return Err(ComposeError::ConeShapeMismatch {
            which: "q'",
            expected: second.carrier_size(),
            found: q_prime.cod().size(),
        });
    }
    if p_prime.dom().size() != q_prime.dom().size() {
        return Err(ComposeError::ConeApexMismatch {
            left: p_prime.dom().size(),
            right: q_prime.dom().size(),
        });
    }
    let (_, g) = first.to_span();
    let (h, _) = second.to_span();
    let through_first = p_prime.then(&g).expect("cone leg matches carrier");
    let through_second = q_prime.then(&h).expect("cone leg matches carrier");
    if through_first != through_second {
        return Err(ComposeError::ConeDoesNotCommute);
    }

    let pb = pullback(first, second)?;
    let mut u_pairs = Vec::new();
    for d in p_prime.dom().indices() {
        let sigma = Sync {
            upper: p_prime.image_of(d),
            lower: q_prime.image_of(d),
        };
        for (idx, path) in pb.paths.iter().enumerate() {
            if path.is_subset(&sigma) {
                u_pairs.push((d, idx));
            }
        }
    }
    let u = InjRel::new(
        p_prime.dom().clone(),
        VertexSet::new(pb.paths.len()),
        u_pairs,
    )
    .expect("a path inside two cone images would contradict leg injectivity");
    Ok(u)
}
