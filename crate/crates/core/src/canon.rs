//! Canonical forms of relational structures.
//!
//! Vertices are colored, the coloring is refined until stable, and then a
//! search tree individualizes vertices of the smallest non-singleton cell
//! until every leaf is a discrete coloring. Each leaf yields a relabeled
//! copy of the structure; the lexicographically least one is the canonical
//! form. Automorphisms discovered along the way (two leaves with the same
//! relabeled structure) prune siblings in the same orbit and let the search
//! jump back to the node where the equivalent branches diverged.
//!
//! Refinement sees every tuple through its relation index, the position of
//! the vertex inside it, the equality pattern of its coordinates and the
//! colors of all coordinates, so repeated coordinates and non-symmetric
//! relations are handled without special cases.

use std::cmp::Ordering;
use std::fmt;

use crate::structure::RelStructure;

/// An isomorphism-class identifier for structures. Two structures get the
/// same code iff they have equal signatures and are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Box<[u32]>);

impl CanonicalCode {
    /// Little-endian byte serialization of the code words.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_le_bytes()).collect()
    }

    pub fn words(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(")?;
        for b in self.to_bytes() {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

pub fn canonical_code(r: &RelStructure) -> CanonicalCode {
    CanonicalCode(Canonizer::new(r).run().0.into_boxed_slice())
}

/// Canonical labeling: `labeling[v]` is the position of vertex `v` in the
/// canonical form.
pub fn canonical_labeling(r: &RelStructure) -> Vec<usize> {
    Canonizer::new(r).run().1
}

/// The canonical representative of the isomorphism class of `r`.
pub fn canonical_form(r: &RelStructure) -> RelStructure {
    let labeling = canonical_labeling(r);
    r.relabel(&labeling, r.domain_size())
}

pub fn is_isomorphic(r: &RelStructure, s: &RelStructure) -> bool {
    if r.signature() != s.signature()
        || r.domain_size() != s.domain_size()
        || r.relations().iter().zip(s.relations()).any(|(a, b)| a.len() != b.len())
    {
        return false;
    }
    canonical_code(r) == canonical_code(s)
}

/// Relation occurrence of a vertex: relation index, tuple start offset in
/// the flat buffer, position within the tuple.
#[derive(Clone, Copy)]
struct Occurrence {
    rel: u32,
    tuple: u32,
    pos: u32,
}

struct Leaf {
    code: Vec<u32>,
    labeling: Vec<usize>,
    path: Vec<usize>,
}

struct Canonizer<'a> {
    r: &'a RelStructure,
    n: usize,
    occurrences: Vec<Vec<Occurrence>>,
    /// Flat copy of every relation's tuples.
    flat: Vec<Vec<usize>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Canonizer<'a> {
    fn new(r: &'a RelStructure) -> Self {
        let n = r.domain_size();
        let mut occurrences = vec![Vec::new(); n];
        let mut flat = Vec::with_capacity(r.relations().len());
        for (ri, rel) in r.relations().iter().enumerate() {
            let arity = rel.arity();
            let mut data = Vec::with_capacity(rel.len() * arity);
            for (ti, t) in rel.tuples().enumerate() {
                for (p, &v) in t.iter().enumerate() {
                    occurrences[v].push(Occurrence {
                        rel: ri as u32,
                        tuple: (ti * arity) as u32,
                        pos: p as u32,
                    });
                }
                data.extend_from_slice(t);
            }
            flat.push(data);
        }
        Canonizer { r, n, occurrences, flat, first: None, best: None, generators: Vec::new() }
    }

    fn run(mut self) -> (Vec<u32>, Vec<usize>) {
        let mut colors = vec![0usize; self.n];
        self.refine(&mut colors);
        let mut path = Vec::new();
        self.search(colors, &mut path);
        match self.best {
            Some(leaf) => (leaf.code, leaf.labeling),
            // Only the empty domain produces no leaf through search.
            None => (self.code_for(&[]), Vec::new()),
        }
    }

    /// Refinement key of `v` under `colors`.
    fn key(&self, v: usize, colors: &[usize]) -> Vec<usize> {
        let mut records: Vec<Vec<usize>> = Vec::with_capacity(self.occurrences[v].len());
        for occ in &self.occurrences[v] {
            let rel = occ.rel as usize;
            let arity = self.r.signature().arity(rel);
            let start = occ.tuple as usize;
            let t = &self.flat[rel][start..start + arity];
            let mut rec = Vec::with_capacity(2 + 2 * arity);
            rec.push(rel);
            rec.push(occ.pos as usize);
            for (i, &u) in t.iter().enumerate() {
                // Index of the first coordinate holding the same vertex.
                rec.push(t[..i].iter().position(|&w| w == u).unwrap_or(i));
            }
            rec.extend(t.iter().map(|&u| colors[u]));
            records.push(rec);
        }
        records.sort_unstable();
        let mut key = Vec::with_capacity(1 + records.iter().map(Vec::len).sum::<usize>());
        key.push(colors[v]);
        for rec in records {
            key.extend(rec);
        }
        key
    }

    /// Refines `colors` to a stable coloring. Colors stay dense and the
    /// relative order of existing cells is preserved.
    fn refine(&self, colors: &mut Vec<usize>) {
        if self.n == 0 {
            return;
        }
        let mut cells = colors.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut keyed: Vec<(Vec<usize>, usize)> =
                (0..self.n).map(|v| (self.key(v, colors), v)).collect();
            keyed.sort_unstable();
            let mut next = vec![0usize; self.n];
            let mut rank = 0;
            for i in 0..keyed.len() {
                if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                    rank += 1;
                }
                next[keyed[i].1] = rank;
            }
            let new_cells = rank + 1;
            *colors = next;
            if new_cells == cells || new_cells == self.n {
                return;
            }
            cells = new_cells;
        }
    }

    fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
        let raw: Vec<usize> =
            colors.iter().enumerate().map(|(w, &c)| 2 * c + usize::from(w != v)).collect();
        let mut sorted = raw.clone();
        sorted.sort_unstable();
        sorted.dedup();
        raw.iter().map(|c| sorted.binary_search(c).unwrap()).collect()
    }

    /// Depth-first search. Returns `Some(depth)` when the caller chain should
    /// unwind to the node at `depth` (path length) and continue there.
    fn search(&mut self, colors: Vec<usize>, path: &mut Vec<usize>) -> Option<usize> {
        let cells = colors.iter().copied().max().map_or(0, |m| m + 1);
        if cells == self.n {
            return self.leaf(&colors, path);
        }
        let mut sizes = vec![0usize; cells];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = (0..cells)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .expect("non-discrete coloring has a non-singleton cell");
        let cell: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                let orbits = self.orbits_fixing(path);
                let rv = find(&orbits, v);
                if explored.iter().any(|&u| find(&orbits, u) == rv) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = Self::individualize(&colors, v);
            self.refine(&mut child);
            path.push(v);
            let jump = self.search(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, colors: &[usize], path: &[usize]) -> Option<usize> {
        let labeling = colors.to_vec();
        let code = self.code_for(&labeling);
        let Some(first) = &self.first else {
            let leaf = Leaf { code: code.clone(), labeling: labeling.clone(), path: path.to_vec() };
            self.first = Some(leaf);
            self.best = Some(Leaf { code, labeling, path: path.to_vec() });
            return None;
        };
        if code == first.code {
            let gamma = automorphism(&first.labeling, &labeling);
            let level = common_prefix(&first.path, path);
            self.generators.push(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match code.cmp(&best.code) {
            Ordering::Less => {
                self.best = Some(Leaf { code, labeling, path: path.to_vec() });
                None
            }
            Ordering::Equal => {
                let gamma = automorphism(&best.labeling, &labeling);
                let level = common_prefix(&best.path, path);
                self.generators.push(gamma);
                Some(level)
            }
            Ordering::Greater => None,
        }
    }

    /// Union-find parents of the orbits of the group generated by the stored
    /// automorphisms that fix every vertex of `path`.
    fn orbits_fixing(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        for g in &self.generators {
            if path.iter().any(|&p| g[p] != p) {
                continue;
            }
            for (v, &w) in g.iter().enumerate() {
                let (a, b) = (find(&parent, v), find(&parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        parent
    }

    /// Serializes the structure relabeled through `labeling` (empty labeling
    /// only for the empty domain).
    fn code_for(&self, labeling: &[usize]) -> Vec<u32> {
        let sig = self.r.signature();
        let mut code = Vec::with_capacity(2 + sig.len() * 2 + self.flat.iter().map(Vec::len).sum::<usize>());
        code.push(sig.len() as u32);
        code.extend(sig.arities().iter().map(|&a| a as u32));
        code.push(self.n as u32);
        for (ri, rel) in self.r.relations().iter().enumerate() {
            code.push(rel.len() as u32);
            let arity = rel.arity();
            if arity == 0 {
                continue;
            }
            let mapped: Vec<u32> = self.flat[ri].iter().map(|&v| labeling[v] as u32).collect();
            let mut tuples: Vec<&[u32]> = mapped.chunks_exact(arity).collect();
            tuples.sort_unstable();
            for t in tuples {
                code.extend_from_slice(t);
            }
        }
        code
    }
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Given two labelings producing the same relabeled structure, the map
/// `v -> other^{-1}(reference(v))` is an automorphism.
fn automorphism(reference: &[usize], other: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; other.len()];
    for (v, &p) in other.iter().enumerate() {
        inverse[p] = v;
    }
    reference.iter().map(|&p| inverse[p]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Signature;

    fn perm_graph(g: &RelStructure, perm: &[usize]) -> RelStructure {
        g.relabel(perm, g.domain_size())
    }

    #[test]
    fn k2_orderings_agree() {
        let a = RelStructure::graph(2, &[(0, 1)]).unwrap();
        let b = RelStructure::graph(2, &[(1, 0)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn edge_and_non_edge_differ() {
        let a = RelStructure::graph(2, &[(0, 1)]).unwrap();
        let b = RelStructure::graph(2, &[]).unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn chains_of_equal_length_are_isomorphic() {
        let sig = Signature::new(vec![2]).unwrap();
        let chain = |order: &[usize]| {
            let mut tuples = Vec::new();
            for i in 0..order.len() {
                for j in i..order.len() {
                    tuples.push(vec![order[i], order[j]]);
                }
            }
            RelStructure::new(sig.clone(), order.len(), vec![tuples]).unwrap()
        };
        assert!(is_isomorphic(&chain(&[0, 1, 2]), &chain(&[2, 0, 1])));
    }

    #[test]
    fn p3_is_not_k3() {
        let p3 = RelStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let k3 = RelStructure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!is_isomorphic(&p3, &k3));
    }

    #[test]
    fn canonical_form_is_isomorphic_to_input() {
        let g = RelStructure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]).unwrap();
        let c = canonical_form(&g);
        assert!(is_isomorphic(&g, &c));
        assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn loops_are_distinguished_from_edges() {
        let sig = Signature::new(vec![2]).unwrap();
        let a = RelStructure::new(sig.clone(), 2, vec![vec![vec![0, 0], vec![1, 1]]]).unwrap();
        let b = RelStructure::new(sig, 2, vec![vec![vec![0, 1], vec![1, 0]]]).unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn repeated_coordinates_keep_positions() {
        let sig = Signature::new(vec![3]).unwrap();
        let a = RelStructure::new(sig.clone(), 2, vec![vec![vec![0, 0, 1]]]).unwrap();
        let b = RelStructure::new(sig.clone(), 2, vec![vec![vec![0, 1, 0]]]).unwrap();
        let c = RelStructure::new(sig, 2, vec![vec![vec![1, 1, 0]]]).unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&b));
        assert_eq!(canonical_code(&a), canonical_code(&c));
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        // Edgeless graph and a disjoint union of edges: large automorphism
        // groups exercise orbit pruning.
        let empty = RelStructure::graph(24, &[]).unwrap();
        let matching: Vec<(usize, usize)> = (0..12).map(|i| (2 * i, 2 * i + 1)).collect();
        let m = RelStructure::graph(24, &matching).unwrap();
        let perm: Vec<usize> = (0..24).map(|v| (v * 7 + 3) % 24).collect();
        assert_eq!(canonical_code(&m), canonical_code(&perm_graph(&m, &perm)));
        assert_ne!(canonical_code(&m), canonical_code(&empty));
    }

    #[test]
    fn empty_domain() {
        let a = RelStructure::graph(0, &[]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&a.clone()));
        assert!(canonical_labeling(&a).is_empty());
    }

    #[test]
    fn nullary_relation_is_part_of_the_code() {
        let sig = Signature::new(vec![0]).unwrap();
        let yes = RelStructure::new(sig.clone(), 1, vec![vec![vec![]]]).unwrap();
        let no = RelStructure::new(sig, 1, vec![vec![]]).unwrap();
        assert_ne!(canonical_code(&yes), canonical_code(&no));
    }
}
