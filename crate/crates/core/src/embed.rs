//! Induced embeddings by backtracking.
//!
//! A partial injective map is extended one source vertex at a time. When
//! `p` is mapped to `t`, every source tuple through `p` whose coordinates are
//! all mapped must land in the target relation, and every target tuple
//! through `t` inside the current image must come from a source tuple. That
//! keeps the partial map a local isomorphism at every step.

use crate::structure::RelStructure;

const UNMAPPED: usize = usize::MAX;

/// Tuples through each vertex, per relation: `(relation, tuple)` pairs.
struct Incidence<'a> {
    by_vertex: Vec<Vec<(usize, &'a [usize])>>,
}

impl<'a> Incidence<'a> {
    fn new(r: &'a RelStructure) -> Self {
        let mut by_vertex = vec![Vec::new(); r.domain_size()];
        for (ri, rel) in r.relations().iter().enumerate() {
            for t in rel.tuples() {
                let mut seen: Vec<usize> = Vec::with_capacity(t.len());
                for &v in t {
                    if !seen.contains(&v) {
                        seen.push(v);
                        by_vertex[v].push((ri, t));
                    }
                }
            }
        }
        Incidence { by_vertex }
    }
}

struct Search<'a, F> {
    source: &'a RelStructure,
    target: &'a RelStructure,
    src_inc: Incidence<'a>,
    tgt_inc: Incidence<'a>,
    order: Vec<usize>,
    forward: Vec<usize>,
    backward: Vec<usize>,
    visit: F,
    scratch: Vec<usize>,
}

impl<'a, F: FnMut(&[usize]) -> bool> Search<'a, F> {
    fn compatible(&mut self, p: usize, t: usize) -> bool {
        for &(ri, tuple) in &self.src_inc.by_vertex[p] {
            self.scratch.clear();
            let mut complete = true;
            for &v in tuple {
                let img = if v == p { t } else { self.forward[v] };
                if img == UNMAPPED {
                    complete = false;
                    break;
                }
                self.scratch.push(img);
            }
            if complete && !self.target.holds(ri, &self.scratch) {
                return false;
            }
        }
        for &(ri, tuple) in &self.tgt_inc.by_vertex[t] {
            self.scratch.clear();
            let mut complete = true;
            for &w in tuple {
                let pre = if w == t { p } else { self.backward[w] };
                if pre == UNMAPPED {
                    complete = false;
                    break;
                }
                self.scratch.push(pre);
            }
            if complete && !self.source.holds(ri, &self.scratch) {
                return false;
            }
        }
        true
    }

    /// Returns false once the visitor asks to stop.
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return (self.visit)(&self.forward);
        }
        let p = self.order[depth];
        for t in 0..self.target.domain_size() {
            if self.backward[t] != UNMAPPED || !self.compatible(p, t) {
                continue;
            }
            self.forward[p] = t;
            self.backward[t] = p;
            let go_on = self.extend(depth + 1);
            self.forward[p] = UNMAPPED;
            self.backward[t] = UNMAPPED;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Source vertices in an order that keeps each next vertex tied to already
/// placed ones, most constrained first.
fn search_order(r: &RelStructure, inc: &Incidence<'_>) -> Vec<usize> {
    let n = r.domain_size();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = inc.by_vertex[v]
                    .iter()
                    .filter(|(_, t)| t.iter().any(|&u| placed[u]))
                    .count();
                (linked, inc.by_vertex[v].len(), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Calls `visit` with every embedding of `source` into `target` (as a map
/// source vertex -> target vertex) until it returns false.
pub fn for_each_embedding(
    source: &RelStructure,
    target: &RelStructure,
    visit: impl FnMut(&[usize]) -> bool,
) {
    if source.signature() != target.signature() || source.domain_size() > target.domain_size() {
        return;
    }
    for (a, b) in source.relations().iter().zip(target.relations()) {
        if a.arity() == 0 && a.len() != b.len() {
            return;
        }
    }
    let src_inc = Incidence::new(source);
    let tgt_inc = Incidence::new(target);
    let order = search_order(source, &src_inc);
    let mut search = Search {
        source,
        target,
        src_inc,
        tgt_inc,
        order,
        forward: vec![UNMAPPED; source.domain_size()],
        backward: vec![UNMAPPED; target.domain_size()],
        visit,
        scratch: Vec::new(),
    };
    search.extend(0);
}

/// An injective map witnessing that `source` is isomorphic to an induced
/// substructure of `target`, if one exists.
pub fn embeds(source: &RelStructure, target: &RelStructure) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_embedding(source, target, |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn k(n: usize) -> RelStructure {
        RelStructure::graph_from_fn(n, |_, _| true)
    }

    fn c4() -> RelStructure {
        RelStructure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn k2_into_k3() {
        let m = embeds(&k(2), &k(3)).unwrap();
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn k3_not_into_c4() {
        assert!(embeds(&k(3), &c4()).is_none());
    }

    #[test]
    fn embedding_is_induced() {
        // Edgeless pair embeds into C4 only on opposite corners.
        let pair = RelStructure::graph(2, &[]).unwrap();
        let mut count = 0;
        for_each_embedding(&pair, &c4(), |m| {
            assert_eq!((m[0] + 2) % 4, m[1]);
            let (sub, _) = c4().restrict(m).unwrap();
            assert!(is_isomorphic(&sub, &pair));
            count += 1;
            true
        });
        assert_eq!(count, 4);
    }

    #[test]
    fn counts_automorphisms_of_c4() {
        let mut count = 0;
        for_each_embedding(&c4(), &c4(), |_| {
            count += 1;
            true
        });
        assert_eq!(count, 8);
    }
}
