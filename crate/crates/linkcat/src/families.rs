//! The subcategory lattice: partition, Brauer and Temperley-Lieb linkings,
//! the loop-count monoid on the empty object, and their loopless variants.
//!
//! Membership is a conjunction of pointwise predicates (loopless, total,
//! binary, planar, empty objects). Enumeration produces the loopless
//! endomorphism monoids on `{0..n}`; [`naive_compose`] is an independent
//! composition oracle for total linkings that works by closing the block
//! structure transitively over all three layers, never touching the
//! pullback machinery.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::irel::VertexSet;
use crate::linking::{Link, Linking};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family tag {0:?}")]
    UnknownTag(String),
    #[error("enumeration is defined for the loopless families only")]
    LoopedEnumeration,
    #[error("n = {n} exceeds the enumeration cap {cap} for this family")]
    CapExceeded { n: usize, cap: usize },
    #[error("the loop-count monoid lives on the empty object; n = {n} is not available")]
    EmptyObjectOnly { n: usize },
    #[error("the {which} operand is not a loopless partition: {reason}")]
    NotAPartition {
        which: &'static str,
        reason: &'static str,
    },
    #[error("interface mismatch: first linking ends in {first_right} vertices, second starts from {second_left}")]
    InterfaceMismatch {
        first_right: usize,
        second_left: usize,
    },
    #[error("multiplication table requires loopless endomorphisms of one object; element {index} does not fit")]
    MixedObjects { index: usize },
    #[error("family is not closed: product of {i} and {j} is missing from the element list")]
    NotClosed { i: usize, j: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Link,
    Part,
    Brau,
    TLieb,
    NatPlus,
}

/// A family together with the looped/loopless choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyTag {
    pub family: Family,
    pub loopless: bool,
}

impl FamilyTag {
    pub const fn new(family: Family, loopless: bool) -> Self {
        FamilyTag { family, loopless }
    }

    /// Tag names as used on the command line: `link`, `part`, `brau`,
    /// `tlieb`, `nat-plus`, each optionally with a `-flat` suffix for the
    /// loopless variant.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let (base, loopless) = match text.strip_suffix("-flat") {
            Some(base) => (base, true),
            None => (text, false),
        };
        let family = match base {
            "link" => Family::Link,
            "part" => Family::Part,
            "brau" => Family::Brau,
            "tlieb" => Family::TLieb,
            "nat-plus" => Family::NatPlus,
            _ => return Err(FamilyError::UnknownTag(text.to_string())),
        };
        Ok(FamilyTag { family, loopless })
    }
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let base = match self.family {
            Family::Link => "link",
            Family::Part => "part",
            Family::Brau => "brau",
            Family::TLieb => "tlieb",
            Family::NatPlus => "nat-plus",
        };
        write!(f, "{}{}", base, if self.loopless { "-flat" } else { "" })
    }
}

/// Every vertex of both objects is in some link.
pub fn is_total_linking(l: &Linking) -> bool {
    let mut left_covered = vec![false; l.left().size()];
    let mut right_covered = vec![false; l.right().size()];
    for link in l.links() {
        for &i in link.left() {
            left_covered[i] = true;
        }
        for &j in link.right() {
            right_covered[j] = true;
        }
    }
    left_covered.into_iter().all(|c| c) && right_covered.into_iter().all(|c| c)
}

/// Every stored link has exactly two feet.
pub fn is_binary(l: &Linking) -> bool {
    l.links().iter().all(Link::is_binary)
}

/// Boundary position of a foot when the rectangle is walked clockwise:
/// left vertices in order, then right vertices reversed.
fn boundary_positions(l: &Linking, link: &Link) -> Vec<usize> {
    let nx = l.left().size();
    let ny = l.right().size();
    let mut pos: Vec<usize> = link
        .left()
        .iter()
        .copied()
        .chain(link.right().iter().map(|&j| nx + (ny - 1 - j)))
        .collect();
    pos.sort_unstable();
    pos
}

/// Two blocks of boundary positions cross iff they alternate around the
/// boundary circle, i.e. the cyclic sequence of ownership has four or more
/// runs.
fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let mut owners: Vec<(usize, bool)> = a
        .iter()
        .map(|&p| (p, false))
        .chain(b.iter().map(|&p| (p, true)))
        .collect();
    owners.sort_unstable();
    let mut runs = 0usize;
    for w in 0..owners.len() {
        if w == 0 || owners[w].1 != owners[w - 1].1 {
            runs += 1;
        }
    }
    if owners.len() > 1 && owners[0].1 == owners[owners.len() - 1].1 && runs > 1 {
        runs -= 1; // first and last run wrap into one cyclic run
    }
    runs >= 4
}

/// No two links interleave in the rectangle-boundary order. For binary
/// links this is the usual well-bracketed condition; for larger blocks it
/// is the non-crossing-partition condition in the same cyclic order.
pub fn is_planar(l: &Linking) -> bool {
    let positions: Vec<Vec<usize>> = l
        .links()
        .iter()
        .map(|link| boundary_positions(l, link))
        .collect();
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            if blocks_cross(&positions[i], &positions[j]) {
                return false;
            }
        }
    }
    true
}

/// The predicates a linking fails for the given tag; empty means member.
pub fn membership_report(l: &Linking, tag: FamilyTag) -> Vec<&'static str> {
    let mut failed = Vec::new();
    if tag.loopless && !l.is_loopless() {
        failed.push("loopless");
    }
    match tag.family {
        Family::Link => {}
        Family::Part => {
            if !is_total_linking(l) {
                failed.push("total");
            }
        }
        Family::Brau => {
            if !is_total_linking(l) {
                failed.push("total");
            }
            if !is_binary(l) {
                failed.push("binary");
            }
        }
        Family::TLieb => {
            if !is_total_linking(l) {
                failed.push("total");
            }
            if !is_binary(l) {
                failed.push("binary");
            }
            if !is_planar(l) {
                failed.push("planar");
            }
        }
        Family::NatPlus => {
            if !l.left().is_empty() || !l.right().is_empty() {
                failed.push("empty-objects");
            }
        }
    }
    failed
}

pub fn member_of(l: &Linking, tag: FamilyTag) -> bool {
    membership_report(l, tag).is_empty()
}

/// Composition of total loopless linkings by transitive closure of the
/// block structure over all three layers, together with the number of
/// closed classes confined to the interface. A deliberately separate code
/// path from the pullback, used to cross-check it.
pub fn naive_compose(first: &Linking, second: &Linking) -> Result<(Linking, usize), FamilyError> {
    for (which, l) in [("first", first), ("second", second)] {
        if !l.is_loopless() {
            return Err(FamilyError::NotAPartition {
                which,
                reason: "it has loops",
            });
        }
        if !is_total_linking(l) {
            return Err(FamilyError::NotAPartition {
                which,
                reason: "some vertex is in no link",
            });
        }
    }
    if first.right().size() != second.left().size() {
        return Err(FamilyError::InterfaceMismatch {
            first_right: first.right().size(),
            second_left: second.left().size(),
        });
    }

    let nx = first.left().size();
    let ny = first.right().size();
    // Layer offsets: X at 0, Y at nx, Z at nx + ny.
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    for link in first.links() {
        blocks.push(
            link.left()
                .iter()
                .copied()
                .chain(link.right().iter().map(|&j| nx + j))
                .collect(),
        );
    }
    for link in second.links() {
        blocks.push(
            link.left()
                .iter()
                .map(|&j| nx + j)
                .chain(link.right().iter().map(|&k| nx + ny + k))
                .collect(),
        );
    }

    // Merge blocks sharing a vertex until none do.
    let mut merged = true;
    while merged {
        merged = false;
        'outer: for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if !blocks[i].is_disjoint(&blocks[j]) {
                    let absorbed = blocks.swap_remove(j);
                    blocks[i].extend(absorbed);
                    merged = true;
                    break 'outer;
                }
            }
        }
    }

    let mut links = Vec::new();
    let mut interface_classes = 0;
    for block in blocks {
        let left: BTreeSet<usize> = block.iter().filter(|&&v| v < nx).copied().collect();
        let right: BTreeSet<usize> = block
            .iter()
            .filter(|&&v| v >= nx + ny)
            .map(|&v| v - nx - ny)
            .collect();
        if left.is_empty() && right.is_empty() {
            interface_classes += 1;
        } else {
            links.push(Link::new(left, right).expect("non-empty restriction"));
        }
    }
    let composite = Linking::new(first.left().clone(), second.right().clone(), links, 0)
        .expect("classes of a partition are disjoint");
    Ok((composite, interface_classes))
}

/// Default enumeration caps, keyed by how fast the homsets grow.
pub fn default_cap(family: Family) -> usize {
    match family {
        Family::Brau => 5,
        Family::TLieb => 7,
        Family::Part => 3,
        Family::Link => 3,
        Family::NatPlus => 0,
    }
}

/// All loopless members of the endomorphism monoid on `{0..n}` for the
/// tagged family, canonical and duplicate-free.
pub fn enumerate(tag: FamilyTag, n: usize) -> Result<Vec<Linking>, FamilyError> {
    enumerate_with_cap(tag, n, default_cap(tag.family))
}

/// As [`enumerate`], with an explicit cap on `n`.
pub fn enumerate_with_cap(
    tag: FamilyTag,
    n: usize,
    cap: usize,
) -> Result<Vec<Linking>, FamilyError> {
    if !tag.loopless {
        return Err(FamilyError::LoopedEnumeration);
    }
    if tag.family == Family::NatPlus {
        // The only object is empty; its loopless homset is a singleton.
        if n != 0 {
            return Err(FamilyError::EmptyObjectOnly { n });
        }
        return Ok(vec![Linking::loops_only(0)]);
    }
    if n > cap {
        return Err(FamilyError::CapExceeded { n, cap });
    }
    let out = match tag.family {
        Family::Brau => perfect_matchings(2 * n)
            .into_iter()
            .map(|blocks| endo_linking(n, &blocks))
            .collect(),
        Family::TLieb => perfect_matchings(2 * n)
            .into_iter()
            .map(|blocks| endo_linking(n, &blocks))
            .filter(is_planar)
            .collect(),
        Family::Part => set_partitions(2 * n, false)
            .into_iter()
            .map(|blocks| endo_linking(n, &blocks))
            .collect(),
        Family::Link => set_partitions(2 * n, true)
            .into_iter()
            .map(|blocks| endo_linking(n, &blocks))
            .collect(),
        Family::NatPlus => unreachable!(),
    };
    Ok(out)
}

/// Points `0..n` are the left vertices, `n..2n` the right ones.
fn endo_linking(n: usize, blocks: &[Vec<usize>]) -> Linking {
    let links = blocks
        .iter()
        .map(|block| {
            Link::new(
                block.iter().filter(|&&p| p < n).copied(),
                block.iter().filter(|&&p| p >= n).map(|&p| p - n),
            )
            .expect("generated blocks are non-empty")
        })
        .collect();
    Linking::new(VertexSet::new(n), VertexSet::new(n), links, 0)
        .expect("generated blocks are disjoint")
}

/// All ways to pair up `points` points; each matching is a list of
/// two-element blocks.
fn perfect_matchings(points: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(free: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let first = free.remove(0);
        for idx in 0..free.len() {
            let partner = free.remove(idx);
            acc.push(vec![first, partner]);
            go(free, acc, out);
            acc.pop();
            free.insert(idx, partner);
        }
        free.insert(0, first);
    }
    if !points.is_multiple_of(2) {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(&mut (0..points).collect(), &mut Vec::new(), &mut out);
    out
}

/// All set partitions of `points` points; with `allow_uncovered` each point
/// may also be left out of every block.
fn set_partitions(points: usize, allow_uncovered: bool) -> Vec<Vec<Vec<usize>>> {
    fn go(
        point: usize,
        points: usize,
        allow_uncovered: bool,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if point == points {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(point);
            go(point + 1, points, allow_uncovered, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![point]);
        go(point + 1, points, allow_uncovered, blocks, out);
        blocks.pop();
        if allow_uncovered {
            go(point + 1, points, allow_uncovered, blocks, out);
        }
    }
    let mut out = Vec::new();
    go(0, points, allow_uncovered, &mut Vec::new(), &mut out);
    out
}

/// Multiplication table of a loopless endomorphism monoid: the entry for
/// `(i, j)` records the index of the flattened composite "element `i`, then
/// element `j`" and the number of loops the composition formed.
pub fn multiplication_table(
    elems: &[Linking],
) -> Result<Vec<(usize, usize, usize, usize)>, FamilyError> {
    let Some(object) = elems.first().map(|l| l.left().size()) else {
        return Ok(Vec::new());
    };
    for (index, l) in elems.iter().enumerate() {
        if l.left().size() != object || l.right().size() != object || !l.is_loopless() {
            return Err(FamilyError::MixedObjects { index });
        }
    }
    let lookup: HashMap<&Linking, usize> = elems.iter().zip(0..).collect();
    let mut table = Vec::with_capacity(elems.len() * elems.len());
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let pb = a.then(b).expect("endomorphisms compose");
            let flat = pb.linking.flatten();
            let k = *lookup.get(&flat).ok_or(FamilyError::NotClosed { i, j })?;
            table.push((i, j, k, pb.new_loops));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(left: &[usize], right: &[usize]) -> Link {
        Link::new(left.iter().copied(), right.iter().copied()).unwrap()
    }

    fn linking(nx: usize, ny: usize, links: &[(&[usize], &[usize])], loops: usize) -> Linking {
        Linking::new(
            VertexSet::new(nx),
            VertexSet::new(ny),
            links.iter().map(|&(l, r)| link(l, r)).collect(),
            loops,
        )
        .unwrap()
    }

    #[test]
    fn identity_is_total_binary_planar() {
        let id = Linking::identity(&VertexSet::new(4));
        assert!(is_total_linking(&id));
        assert!(is_binary(&id));
        assert!(is_planar(&id));
        assert!(member_of(&id, FamilyTag::parse("tlieb-flat").unwrap()));
    }

    #[test]
    fn empty_linking_on_empty_objects_is_total() {
        assert!(is_total_linking(&Linking::loops_only(0)));
    }

    #[test]
    fn uncovered_vertex_fails_totality() {
        let l = linking(1, 2, &[(&[0], &[0])], 0);
        assert!(!is_total_linking(&l));
    }

    #[test]
    fn unary_link_fails_binary_but_loops_do_not() {
        let l = linking(1, 0, &[(&[0], &[])], 0);
        assert!(!is_binary(&l));
        assert!(is_binary(&Linking::loops_only(3)));
    }

    #[test]
    fn transposition_is_the_minimal_crossing() {
        let swap = linking(2, 2, &[(&[0], &[1]), (&[1], &[0])], 0);
        assert!(!is_planar(&swap));
    }

    #[test]
    fn nested_cups_are_planar() {
        let l = linking(0, 4, &[(&[], &[0, 3]), (&[], &[1, 2])], 0);
        assert!(is_planar(&l));
    }

    #[test]
    fn side_by_side_cups_are_planar() {
        let l = linking(0, 4, &[(&[], &[0, 1]), (&[], &[2, 3])], 0);
        assert!(is_planar(&l));
    }

    #[test]
    fn interleaved_cups_cross() {
        let l = linking(0, 4, &[(&[], &[0, 2]), (&[], &[1, 3])], 0);
        assert!(!is_planar(&l));
    }

    #[test]
    fn a_block_inside_anothers_gap_does_not_cross() {
        // {y0, y3} and the singleton {y1}: nesting, not crossing.
        let l = linking(0, 4, &[(&[], &[0, 3]), (&[], &[1])], 0);
        assert!(is_planar(&l));
    }

    #[test]
    fn membership_against_loops() {
        let looped = Linking::identity(&VertexSet::new(1)).add_loops(1);
        assert!(member_of(&looped, FamilyTag::parse("brau").unwrap()));
        let report = membership_report(&looped, FamilyTag::parse("brau-flat").unwrap());
        assert_eq!(report, vec!["loopless"]);
    }

    #[test]
    fn nat_plus_membership() {
        assert!(member_of(
            &Linking::loops_only(7),
            FamilyTag::parse("nat-plus").unwrap()
        ));
        let id1 = Linking::identity(&VertexSet::new(1));
        assert!(!member_of(&id1, FamilyTag::parse("nat-plus").unwrap()));
    }

    #[test]
    fn tag_parsing_round_trips() {
        for text in ["link", "part-flat", "brau", "tlieb-flat", "nat-plus"] {
            assert_eq!(FamilyTag::parse(text).unwrap().to_string(), text);
        }
        assert!(FamilyTag::parse("brauer").is_err());
    }

    #[test]
    fn naive_compose_of_identities_is_identity() {
        let id = Linking::identity(&VertexSet::new(3));
        let (composite, lambda) = naive_compose(&id, &id).unwrap();
        assert_eq!(composite, id);
        assert_eq!(lambda, 0);
    }

    #[test]
    fn naive_compose_of_full_blocks() {
        // One block covering X + Y, one covering Y + Z: a single class that
        // meets both outer layers, no interface class.
        let a = linking(2, 2, &[(&[0, 1], &[0, 1])], 0);
        let b = linking(2, 1, &[(&[0, 1], &[0])], 0);
        let (composite, lambda) = naive_compose(&a, &b).unwrap();
        assert_eq!(composite, linking(2, 1, &[(&[0, 1], &[0])], 0));
        assert_eq!(lambda, 0);
    }

    #[test]
    fn naive_compose_rejects_partial_inputs() {
        let partial = linking(1, 2, &[(&[0], &[0])], 0);
        let total = linking(2, 1, &[(&[0, 1], &[0])], 0);
        assert!(matches!(
            naive_compose(&partial, &total),
            Err(FamilyError::NotAPartition { which: "first", .. })
        ));
    }

    #[test]
    fn brauer_counts_are_odd_double_factorials() {
        let tag = FamilyTag::parse("brau-flat").unwrap();
        assert_eq!(enumerate(tag, 0).unwrap().len(), 1);
        assert_eq!(enumerate(tag, 1).unwrap().len(), 1);
        assert_eq!(enumerate(tag, 2).unwrap().len(), 3);
        assert_eq!(enumerate(tag, 3).unwrap().len(), 15);
    }

    #[test]
    fn temperley_lieb_counts_are_catalan() {
        let tag = FamilyTag::parse("tlieb-flat").unwrap();
        assert_eq!(enumerate(tag, 2).unwrap().len(), 2);
        assert_eq!(enumerate(tag, 3).unwrap().len(), 5);
        assert_eq!(enumerate(tag, 4).unwrap().len(), 14);
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        let tag = FamilyTag::parse("part-flat").unwrap();
        assert_eq!(enumerate(tag, 1).unwrap().len(), 2);
        assert_eq!(enumerate(tag, 2).unwrap().len(), 15);
    }

    #[test]
    fn partial_partition_counts() {
        // Linkings {0..n} -> {0..n} with uncovered vertices allowed.
        let tag = FamilyTag::parse("link-flat").unwrap();
        assert_eq!(enumerate(tag, 1).unwrap().len(), 5);
        assert_eq!(enumerate(tag, 2).unwrap().len(), 52);
    }

    #[test]
    fn enumeration_caps_and_loopless_restriction() {
        assert_eq!(
            enumerate(FamilyTag::parse("part-flat").unwrap(), 9).unwrap_err(),
            FamilyError::CapExceeded { n: 9, cap: 3 }
        );
        assert_eq!(
            enumerate(FamilyTag::parse("brau").unwrap(), 2).unwrap_err(),
            FamilyError::LoopedEnumeration
        );
        assert_eq!(
            enumerate(FamilyTag::parse("nat-plus-flat").unwrap(), 0)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn temperley_lieb_two_elements_multiply_as_expected() {
        let tag = FamilyTag::parse("tlieb-flat").unwrap();
        let elems = enumerate(tag, 2).unwrap();
        assert_eq!(elems.len(), 2);
        let id = Linking::identity(&VertexSet::new(2));
        let id_idx = elems.iter().position(|l| *l == id).unwrap();
        let e_idx = 1 - id_idx;
        let table = multiplication_table(&elems).unwrap();
        for &(i, j, k, lambda) in &table {
            if i == id_idx || j == id_idx {
                // Identity row and column reproduce the other factor.
                assert_eq!(k, if i == id_idx { j } else { i });
                assert_eq!(lambda, 0);
            } else {
                // The cup-cap generator squares to itself with one loop.
                assert_eq!((i, j, k, lambda), (e_idx, e_idx, e_idx, 1));
            }
        }
    }

    #[test]
    fn brauer_two_point_table_is_closed() {
        let elems = enumerate(FamilyTag::parse("brau-flat").unwrap(), 2).unwrap();
        assert_eq!(elems.len(), 3);
        // multiplication_table errors if any product escapes the list.
        let table = multiplication_table(&elems).unwrap();
        assert_eq!(table.len(), 9);
    }
}
