//! Small graphs up to isomorphism, and seeded random structures for the
//! property suites.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_code, CanonicalCode};
use crate::structure::{RelStructure, Signature};

/// One graph per isomorphism type on `n` vertices, in canonical-code order.
/// Built by adding a vertex with every neighbourhood to each type on
/// `n - 1` vertices.
pub fn graphs_up_to_iso(n: usize) -> Vec<RelStructure> {
    let mut level: Vec<RelStructure> = vec![RelStructure::graph(0, &[]).expect("empty graph")];
    for size in 1..=n {
        let mut next: BTreeMap<CanonicalCode, RelStructure> = BTreeMap::new();
        for g in &level {
            for mask in 0u64..(1 << (size - 1)) {
                let h = RelStructure::graph_from_fn(size, |a, b| {
                    if b == size - 1 {
                        mask >> a & 1 == 1
                    } else {
                        g.adjacent(a, b)
                    }
                });
                next.entry(canonical_code(&h)).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    level
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> RelStructure {
    RelStructure::graph_from_fn(n, |_, _| rng.gen_bool(p))
}

/// Random structure with the given arities; each tuple (repeats allowed)
/// is present with probability `p`.
pub fn random_structure(rng: &mut impl Rng, signature: &Signature, n: usize, p: f64) -> RelStructure {
    let tuples = signature
        .arities()
        .iter()
        .map(|&a| {
            let total = n.pow(a as u32);
            (0..total)
                .filter(|_| rng.gen_bool(p))
                .map(|mut code| {
                    let mut t = vec![0; a];
                    for slot in t.iter_mut().rev() {
                        *slot = code % n;
                        code /= n;
                    }
                    t
                })
                .collect()
        })
        .collect();
    RelStructure::new(signature.clone(), n, tuples).expect("tuples in range")
}

/// Random reflexive linear order on `0..n` as relation 0, followed by random
/// binary relations.
pub fn random_ordered_binary(rng: &mut impl Rng, n: usize, extra: usize, p: f64) -> RelStructure {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut order = Vec::new();
    for i in 0..n {
        for j in i..n {
            order.push(vec![perm[i], perm[j]]);
        }
    }
    let sig = Signature::new(vec![2; extra + 1]).expect("non-empty");
    let rest = random_structure(rng, &Signature::new(vec![2; extra.max(1)]).expect("non-empty"), n, p);
    let mut tuples = vec![order];
    for rel in 0..extra {
        tuples.push(rest.relation(rel).tuples().map(<[usize]>::to_vec).collect());
    }
    RelStructure::new(sig, n, tuples).expect("tuples in range")
}
