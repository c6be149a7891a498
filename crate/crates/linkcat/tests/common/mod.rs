#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use linkcat::irel::{InjRel, VertexSet};
use linkcat::linking::{Link, Linking};
use linkcat::mll::{dr_correct, Formula, ProofNet};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load_linking(name: &str) -> Linking {
    let text = std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("reading fixture {name}: {e}"));
    linkcat::json::linking_from_json(&text)
        .unwrap_or_else(|e| panic!("parsing fixture {name}: {e}"))
}

pub fn load_net(name: &str) -> ProofNet {
    let text = std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("reading fixture {name}: {e}"));
    linkcat::json::net_from_json(&text).unwrap_or_else(|e| panic!("parsing fixture {name}: {e}"))
}

/// A random linking with disjoint footprints dealt from shuffled vertex
/// pools. Some vertices may stay uncovered.
pub fn random_linking(
    rng: &mut StdRng,
    nx: usize,
    ny: usize,
    max_links: usize,
    max_loops: usize,
) -> Linking {
    let mut left_pool: Vec<usize> = (0..nx).collect();
    let mut right_pool: Vec<usize> = (0..ny).collect();
    left_pool.shuffle(rng);
    right_pool.shuffle(rng);
    let mut links = Vec::new();
    for _ in 0..rng.random_range(0..=max_links) {
        let take_left = rng.random_range(0..=left_pool.len().min(3));
        let take_right = rng.random_range(0..=right_pool.len().min(3));
        let left: Vec<usize> = (0..take_left).map(|_| left_pool.pop().unwrap()).collect();
        let right: Vec<usize> = (0..take_right).map(|_| right_pool.pop().unwrap()).collect();
        if left.is_empty() && right.is_empty() {
            continue;
        }
        links.push(Link::new(left, right).unwrap());
    }
    let loops = rng.random_range(0..=max_loops);
    Linking::new(VertexSet::new(nx), VertexSet::new(ny), links, loops).unwrap()
}

/// A random total loopless linking: every vertex of both sides is dealt
/// into some block.
pub fn random_partition_linking(rng: &mut StdRng, nx: usize, ny: usize) -> Linking {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for p in 0..nx + ny {
        let choice = rng.random_range(0..=blocks.len());
        if choice == blocks.len() {
            blocks.push(vec![p]);
        } else {
            blocks[choice].push(p);
        }
    }
    let links = blocks
        .into_iter()
        .map(|block| {
            Link::new(
                block.iter().filter(|&&p| p < nx).copied(),
                block.iter().filter(|&&p| p >= nx).map(|&p| p - nx),
            )
            .unwrap()
        })
        .collect();
    Linking::new(VertexSet::new(nx), VertexSet::new(ny), links, 0).unwrap()
}

/// A random injective relation: each codomain vertex independently picks at
/// most one preimage.
pub fn random_injrel(rng: &mut StdRng, dom: usize, cod: usize) -> InjRel {
    let mut pairs = Vec::new();
    for z in 0..cod {
        if dom > 0 && rng.random_bool(0.6) {
            pairs.push((rng.random_range(0..dom), z));
        }
    }
    InjRel::new(VertexSet::new(dom), VertexSet::new(cod), pairs).unwrap()
}

pub fn random_subset(rng: &mut StdRng, size: usize) -> std::collections::BTreeSet<usize> {
    (0..size).filter(|_| rng.random_bool(0.5)).collect()
}

/// A random formula with exactly `leaves` leaves over a two-letter
/// alphabet, so complementary pairs are common.
pub fn random_formula(rng: &mut StdRng, leaves: usize) -> Formula {
    assert!(leaves >= 1);
    if leaves == 1 {
        let name = if rng.random_bool(0.5) { "a" } else { "b" };
        return if rng.random_bool(0.5) {
            Formula::atom(name)
        } else {
            Formula::negated_atom(name)
        };
    }
    let split = rng.random_range(1..leaves);
    let left = random_formula(rng, split);
    let right = random_formula(rng, leaves - split);
    if rng.random_bool(0.5) {
        Formula::tensor(left, right)
    } else {
        Formula::par(left, right)
    }
}

/// A random correct net on `formula -> formula`: the identity matching
/// shuffled by partner swaps that keep complementarity and correctness.
pub fn random_correct_net(rng: &mut StdRng, formula: &Formula, attempts: usize) -> ProofNet {
    let structure = Formula::lollipop(formula, formula);
    let leaves: Vec<(String, bool)> = structure
        .leaves()
        .into_iter()
        .map(|(n, p)| (n.to_string(), p))
        .collect();
    let n = formula.leaf_count();
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
    for _ in 0..attempts {
        let i = rng.random_range(0..pairs.len());
        let j = rng.random_range(0..pairs.len());
        if i == j {
            continue;
        }
        let (a1, b1) = pairs[i];
        let (a2, b2) = pairs[j];
        let complementary =
            |x: usize, y: usize| leaves[x].0 == leaves[y].0 && leaves[x].1 != leaves[y].1;
        if !complementary(a1, b2) || !complementary(a2, b1) {
            continue;
        }
        let mut candidate = pairs.clone();
        candidate[i] = (a1, b2);
        candidate[j] = (a2, b1);
        if dr_correct(&structure, &candidate).unwrap() {
            pairs = candidate;
        }
    }
    ProofNet::new(formula.clone(), formula.clone(), &pairs).unwrap()
}

/// (2n - 1)!! by the falling product, independent of any enumeration.
pub fn odd_double_factorial(n: usize) -> usize {
    (1..=n).map(|k| 2 * k - 1).product()
}

/// Catalan numbers by the convolution recurrence.
pub fn catalan_numbers(upto: usize) -> Vec<usize> {
    let mut c = vec![1usize];
    for n in 0..upto {
        let next: usize = (0..=n).map(|i| c[i] * c[n - i]).sum();
        c.push(next);
    }
    c
}

/// Bell numbers by the Bell triangle.
pub fn bell_numbers(upto: usize) -> Vec<usize> {
    let mut bell = vec![1usize];
    let mut row = vec![1usize];
    for _ in 0..upto {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        bell.push(next[0]);
        row = next;
    }
    bell
}
