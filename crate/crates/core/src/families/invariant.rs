//! Invariant triples `⟨C, R, Φ⟩`: a finite chain `C = 0..len`, a structure
//! `R`, and maps from increasing tuples of `C` into `R`.

use std::collections::HashMap;

use itertools::Itertools;

use super::amc::AmcTemplate;
use crate::error::{Error, Result};
use crate::structure::RelStructure;

/// A map from increasing `arity`-tuples of the chain to vertices of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    arity: usize,
    values: HashMap<Vec<usize>, usize>,
}

impl ChainMap {
    pub fn from_fn(arity: usize, chain_len: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let values = (0..chain_len).combinations(arity).map(|t| {
            let v = f(&t);
            (t, v)
        });
        ChainMap { arity, values: values.collect() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, args: &[usize]) -> Option<usize> {
        self.values.get(args).copied()
    }

    pub fn set(&mut self, args: Vec<usize>, value: usize) {
        self.values.insert(args, value);
    }
}

/// A map index, its arguments, and the image.
type Application = (usize, Vec<usize>, usize);

#[derive(Clone, Debug)]
pub struct InvariantTriple {
    chain_len: usize,
    structure: RelStructure,
    maps: Vec<ChainMap>,
}

/// Dense ranks of the entries of `v`.
fn order_type(v: &[usize]) -> Vec<u8> {
    let sorted: Vec<usize> = v.iter().copied().sorted_unstable().dedup().collect();
    v.iter().map(|x| sorted.binary_search(x).unwrap() as u8).collect()
}

impl InvariantTriple {
    pub fn new(chain_len: usize, structure: RelStructure, maps: Vec<ChainMap>) -> Result<Self> {
        let n = structure.domain_size();
        for (i, m) in maps.iter().enumerate() {
            for args in (0..chain_len).combinations(m.arity) {
                match m.get(&args) {
                    None => {
                        return Err(Error::Range(format!("map {i} undefined on {args:?}")));
                    }
                    Some(v) if v >= n => return Err(Error::VertexOutOfRange { vertex: v, domain_size: n }),
                    Some(_) => {}
                }
            }
        }
        Ok(InvariantTriple { chain_len, structure, maps })
    }

    /// The prefix of length `len` built from `t`, with one constant map per
    /// element of `F` and one unary map `n ↦ (n, k)` per `k` in `K`.
    pub fn for_template(t: &AmcTemplate, len: usize) -> Result<Self> {
        let r = super::amc::amc_build(t, len)?;
        let f = t.f_size();
        let k = t.k_size();
        let mut maps: Vec<ChainMap> = (0..f).map(|j| ChainMap::from_fn(0, len, |_| j)).collect();
        maps.extend((0..k).map(|kk| ChainMap::from_fn(1, len, |a| f + a[0] * k + kk)));
        InvariantTriple::new(len, r, maps)
    }

    pub fn chain_len(&self) -> usize {
        self.chain_len
    }

    pub fn structure(&self) -> &RelStructure {
        &self.structure
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    /// Restriction to the chain elements `x` (sorted, distinct).
    pub fn restrict(&self, x: &[usize]) -> InvariantTriple {
        let maps = self
            .maps
            .iter()
            .map(|m| {
                ChainMap::from_fn(m.arity, x.len(), |args| {
                    let orig: Vec<usize> = args.iter().map(|&i| x[i]).collect();
                    m.get(&orig).expect("total map")
                })
            })
            .collect();
        InvariantTriple { chain_len: x.len(), structure: self.structure.clone(), maps }
    }

    fn applications(&self) -> Vec<Application> {
        self.maps
            .iter()
            .enumerate()
            .flat_map(|(i, m)| {
                (0..self.chain_len).combinations(m.arity).map(move |args| {
                    let v = m.get(&args).expect("total map");
                    (i, args, v)
                })
            })
            .collect()
    }

    /// Relation values on map images, and equalities between map images,
    /// depend only on which maps are used and the order type of their
    /// merged arguments.
    pub fn is_invariant(&self) -> bool {
        let apps = self.applications();
        let mut eq_seen: HashMap<(usize, usize, Vec<u8>), bool> = HashMap::new();
        for (p, q) in apps.iter().cartesian_product(apps.iter()) {
            let args: Vec<usize> = p.1.iter().chain(&q.1).copied().collect();
            let key = (p.0, q.0, order_type(&args));
            let value = p.2 == q.2;
            if *eq_seen.entry(key).or_insert(value) != value {
                return false;
            }
        }
        let r = &self.structure;
        let mut rel_seen: HashMap<(usize, Vec<usize>, Vec<u8>), bool> = HashMap::new();
        for (rel, &arity) in r.signature().arities().iter().enumerate() {
            let choices: Box<dyn Iterator<Item = Vec<&Application>>> = if arity == 0 {
                Box::new(std::iter::once(Vec::new()))
            } else {
                Box::new((0..arity).map(|_| apps.iter()).multi_cartesian_product())
            };
            for choice in choices {
                let which: Vec<usize> = choice.iter().map(|a| a.0).collect();
                let args: Vec<usize> = choice.iter().flat_map(|a| a.1.iter().copied()).collect();
                let image: Vec<usize> = choice.iter().map(|a| a.2).collect();
                let value = r.holds(rel, &image);
                if *rel_seen.entry((rel, which, order_type(&args))).or_insert(value) != value {
                    return false;
                }
            }
        }
        true
    }
}

/// Lexicographically least `target`-subset of the chain on which the
/// triple is invariant.
pub fn extract_invariant_subset(l: &InvariantTriple, target: usize) -> Result<Vec<usize>> {
    if target > l.chain_len {
        return Err(Error::Range(format!("target {target} exceeds chain length {}", l.chain_len)));
    }
    (0..l.chain_len)
        .combinations(target)
        .find(|x| l.restrict(x).is_invariant())
        .ok_or_else(|| Error::NotFound(format!("no invariant {target}-subset of a chain of length {}", l.chain_len)))
}
