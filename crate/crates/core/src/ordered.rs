//! Structures whose relation 0 is a linear order.
//!
//! Relation 0 is always stored reflexively (`x <= y` pairs). Input given as a
//! strict order is normalized at construction and the fact is recorded.

use crate::error::{Error, Result};
use crate::structure::RelStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedStructure {
    inner: RelStructure,
    strict_input: bool,
    /// `position[v]`: rank of `v` in the order.
    position: Vec<usize>,
    /// Inverse of `position`.
    by_position: Vec<usize>,
}

impl OrderedStructure {
    pub fn new(r: RelStructure) -> Result<Self> {
        if r.signature().arities().first() != Some(&2) {
            return Err(Error::NotOrdered("relation 0 must be binary".into()));
        }
        let n = r.domain_size();
        let rel = r.relation(0);
        let diagonal = (0..n).filter(|&v| rel.contains(&[v, v])).count();
        let strict_input = match diagonal {
            0 if n > 0 => true,
            d if d == n => false,
            _ => return Err(Error::NotOrdered("mixes reflexive and irreflexive pairs".into())),
        };
        for a in 0..n {
            for b in (a + 1)..n {
                let ab = rel.contains(&[a, b]);
                let ba = rel.contains(&[b, a]);
                if ab == ba {
                    return Err(Error::NotOrdered(format!("{a} and {b} are not comparable exactly one way")));
                }
            }
        }
        // Totality and antisymmetry hold; ranks by predecessor count are a
        // permutation iff the relation is also transitive.
        let mut position = vec![0; n];
        for (v, pos) in position.iter_mut().enumerate() {
            *pos = (0..n).filter(|&u| u != v && rel.contains(&[u, v])).count();
        }
        let mut by_position = vec![usize::MAX; n];
        for (v, &p) in position.iter().enumerate() {
            if by_position[p] != usize::MAX {
                return Err(Error::NotOrdered("relation is not transitive".into()));
            }
            by_position[p] = v;
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && rel.contains(&[a, b]) != (position[a] < position[b]) {
                    return Err(Error::NotOrdered("relation is not transitive".into()));
                }
            }
        }
        let inner = if strict_input {
            let mut tuples: Vec<Vec<Vec<usize>>> =
                r.relations().iter().map(|x| x.tuples().map(<[usize]>::to_vec).collect()).collect();
            tuples[0].extend((0..n).map(|v| vec![v, v]));
            let out = RelStructure::new(r.signature().clone(), n, tuples)?;
            match r.labels() {
                Some(l) => out.with_labels(l.to_vec())?,
                None => out,
            }
        } else {
            r
        };
        Ok(OrderedStructure { inner, strict_input, position, by_position })
    }

    pub fn structure(&self) -> &RelStructure {
        &self.inner
    }

    pub fn into_structure(self) -> RelStructure {
        self.inner
    }

    /// Whether the input listed relation 0 as a strict order.
    pub fn strict_input(&self) -> bool {
        self.strict_input
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn vertex_at(&self, pos: usize) -> usize {
        self.by_position[pos]
    }

    /// True when `set` is an interval of the order.
    pub fn is_interval(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return true;
        }
        let lo = set.iter().map(|&v| self.position[v]).min().unwrap();
        let hi = set.iter().map(|&v| self.position[v]).max().unwrap();
        hi - lo + 1 == set.len()
    }
}

/// A chain on `0..n` in natural order, stored reflexively.
pub fn chain(n: usize) -> RelStructure {
    let mut tuples = Vec::new();
    for a in 0..n {
        for b in a..n {
            tuples.push(vec![a, b]);
        }
    }
    RelStructure::new(crate::structure::Signature::graph(), n, vec![tuples]).expect("valid chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Signature;

    #[test]
    fn accepts_reflexive_chain() {
        let o = OrderedStructure::new(chain(4)).unwrap();
        assert!(!o.strict_input());
        assert_eq!(o.position(3), 3);
    }

    #[test]
    fn normalizes_strict_order() {
        let sig = Signature::new(vec![2, 2]).unwrap();
        // 2 < 0 < 1, plus one edge in relation 1.
        let r = RelStructure::new(sig, 3, vec![vec![vec![2, 0], vec![2, 1], vec![0, 1]], vec![vec![0, 1]]]).unwrap();
        let o = OrderedStructure::new(r).unwrap();
        assert!(o.strict_input());
        assert!(o.structure().holds(0, &[1, 1]));
        assert_eq!(o.vertex_at(0), 2);
        assert!(o.is_interval(&[2, 0]));
        assert!(!o.is_interval(&[2, 1]));
        assert!(o.structure().holds(1, &[0, 1]));
    }

    #[test]
    fn rejects_non_orders() {
        let c4 = RelStructure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(OrderedStructure::new(c4).is_err());
        let sig = Signature::new(vec![2]).unwrap();
        let cyclic = RelStructure::new(sig, 3, vec![vec![vec![0, 1], vec![1, 2], vec![2, 0]]]).unwrap();
        assert!(OrderedStructure::new(cyclic).is_err());
    }
}
