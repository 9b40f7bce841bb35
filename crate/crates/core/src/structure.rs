//! Finite relational structures on the dense domain `0..n`.
//!
//! A structure carries a [`Signature`] (one arity per relation index) and,
//! for every index, a set of tuples over the domain. Tuples may repeat
//! coordinates. Relations are stored as flat, lexicographically sorted and
//! deduplicated coordinate arrays so that restriction and relabeling stay
//! allocation-light.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// The arity of each relation, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if arities.is_empty() {
            return Err(Error::EmptySignature);
        }
        Ok(Signature(arities))
    }

    /// One symmetric binary relation: the signature used for graphs.
    pub fn graph() -> Self {
        Signature(vec![2])
    }

    pub fn arities(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.0[rel]
    }

    pub fn max_arity(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A set of tuples of fixed arity, stored flat in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    /// Number of tuples. Needed separately for arity 0.
    len: usize,
    data: Vec<usize>,
}

impl Relation {
    pub fn empty(arity: usize) -> Self {
        Relation { arity, len: 0, data: Vec::new() }
    }

    /// Builds a relation from tuples, sorting and deduplicating them. Lengths
    /// are assumed to be checked by the caller.
    fn from_tuples_unchecked(arity: usize, mut tuples: Vec<Vec<usize>>) -> Self {
        tuples.sort_unstable();
        tuples.dedup();
        let len = tuples.len();
        let data = tuples.into_iter().flatten().collect();
        Relation { arity, len, data }
    }

    /// Builds from an already flat buffer; sorts and deduplicates.
    fn from_flat(arity: usize, data: Vec<usize>) -> Self {
        if arity == 0 {
            // Any number of empty tuples collapses to at most one.
            return Relation { arity, len: usize::from(!data.is_empty()), data: Vec::new() };
        }
        let mut tuples: Vec<&[usize]> = data.chunks_exact(arity).collect();
        tuples.sort_unstable();
        tuples.dedup();
        let len = tuples.len();
        let data = tuples.concat();
        Relation { arity, len, data }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Tuples in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = &[usize]> + '_ {
        let arity = self.arity;
        let len = self.len;
        (0..len).map(move |t| &self.data[t * arity..(t + 1) * arity])
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        if self.arity == 0 {
            return tuple.is_empty() && self.len == 1;
        }
        if tuple.len() != self.arity {
            return false;
        }
        let (mut lo, mut hi) = (0, self.len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let t = &self.data[mid * self.arity..(mid + 1) * self.arity];
            match t.cmp(tuple) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// A finite relational structure on the domain `0..domain_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelStructure {
    signature: Signature,
    domain_size: usize,
    relations: Vec<Relation>,
    labels: Option<Vec<String>>,
}

impl RelStructure {
    /// Validates and builds a structure. `relations[i]` holds the tuples of
    /// relation `i`; missing trailing entries are empty relations.
    pub fn new(
        signature: Signature,
        domain_size: usize,
        relations: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if relations.len() > signature.len() {
            return Err(Error::RelationCount { expected: signature.len(), found: relations.len() });
        }
        let mut rels = Vec::with_capacity(signature.len());
        let mut supplied = relations.into_iter();
        for (i, &arity) in signature.arities().iter().enumerate() {
            let tuples = supplied.next().unwrap_or_default();
            for t in &tuples {
                if t.len() != arity {
                    return Err(Error::ArityMismatch { relation: i, expected: arity, found: t.len() });
                }
                if let Some(&v) = t.iter().find(|&&v| v >= domain_size) {
                    return Err(Error::VertexOutOfRange { vertex: v, domain_size });
                }
            }
            rels.push(Relation::from_tuples_unchecked(arity, tuples));
        }
        Ok(RelStructure { signature, domain_size, relations: rels, labels: None })
    }

    /// A structure with every relation empty.
    pub fn empty(signature: Signature, domain_size: usize) -> Self {
        let relations = signature.arities().iter().map(|&a| Relation::empty(a)).collect();
        RelStructure { signature, domain_size, relations, labels: None }
    }

    /// A simple graph: one symmetric irreflexive binary relation holding both
    /// orientations of every edge.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut tuples = Vec::with_capacity(edges.len() * 2);
        for &(a, b) in edges {
            if a == b {
                return Err(Error::NotAGraph("loop edge".into()));
            }
            tuples.push(vec![a, b]);
            tuples.push(vec![b, a]);
        }
        RelStructure::new(Signature::graph(), n, vec![tuples])
    }

    /// Graph from an adjacency predicate over unordered pairs.
    pub fn graph_from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut data = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && adjacent(a.min(b), a.max(b)) {
                    data.push(a);
                    data.push(b);
                }
            }
        }
        let rel = Relation { arity: 2, len: data.len() / 2, data };
        RelStructure { signature: Signature::graph(), domain_size: n, relations: vec![rel], labels: None }
    }

    /// Assembles a structure from flat per-relation buffers without range
    /// checks. Buffers are sorted and deduplicated here.
    pub(crate) fn from_flat_unchecked(
        signature: Signature,
        domain_size: usize,
        flat: Vec<Vec<usize>>,
    ) -> Self {
        let relations = signature
            .arities()
            .iter()
            .zip(flat)
            .map(|(&a, data)| Relation::from_flat(a, data))
            .collect();
        RelStructure { signature, domain_size, relations, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.domain_size {
            return Err(Error::Parse(format!(
                "{} labels for a domain of size {}",
                labels.len(),
                self.domain_size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> &Relation {
        &self.relations[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        self.relations[rel].contains(tuple)
    }

    /// Total number of tuples over all relations.
    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(Relation::len).sum()
    }

    /// True for a single symmetric, irreflexive binary relation.
    pub fn is_graph(&self) -> bool {
        if self.signature.arities() != [2] {
            return false;
        }
        let rel = &self.relations[0];
        rel.tuples().all(|t| t[0] != t[1] && rel.contains(&[t[1], t[0]]))
    }

    /// Adjacency test for graphs.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.relations[0].contains(&[a, b])
    }

    /// Relabels vertices through `map` (old vertex -> new vertex) onto a
    /// domain of size `new_size`. `map` must be injective on the vertices
    /// that occur in tuples.
    pub fn relabel(&self, map: &[usize], new_size: usize) -> RelStructure {
        let flat = self
            .relations
            .iter()
            .map(|rel| rel.data.iter().map(|&v| map[v]).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        let mut out = Self::from_flat_unchecked(self.signature.clone(), new_size, flat);
        // Arity-0 relations have no coordinates to carry the tuple through.
        for (i, rel) in self.relations.iter().enumerate() {
            if rel.arity == 0 {
                out.relations[i].len = rel.len;
            }
        }
        out
    }

    /// Restriction to `subset`: the induced structure on `subset`, relabeled
    /// to `0..|subset|` in increasing vertex order. Returns the structure and
    /// the relabeling (new index -> original vertex).
    pub fn restrict(&self, subset: &[usize]) -> Result<(RelStructure, Vec<usize>)> {
        let mut verts: Vec<usize> = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if let Some(&v) = verts.iter().find(|&&v| v >= self.domain_size) {
            return Err(Error::VertexOutOfRange { vertex: v, domain_size: self.domain_size });
        }
        Ok((self.restrict_sorted(&verts), verts))
    }

    /// Restriction to a strictly increasing list of in-range vertices.
    pub(crate) fn restrict_sorted(&self, verts: &[usize]) -> RelStructure {
        const ABSENT: usize = usize::MAX;
        let mut index = vec![ABSENT; self.domain_size];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut relations = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            if rel.arity == 0 {
                relations.push(rel.clone());
                continue;
            }
            let mut data = Vec::new();
            let mut len = 0;
            'tuples: for t in rel.tuples() {
                for &v in t {
                    if index[v] == ABSENT {
                        continue 'tuples;
                    }
                }
                data.extend(t.iter().map(|&v| index[v]));
                len += 1;
            }
            // Order is preserved because relabeling is monotone.
            relations.push(Relation { arity: rel.arity, len, data });
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| verts.iter().map(|&v| l[v].clone()).collect());
        RelStructure { signature: self.signature.clone(), domain_size: verts.len(), relations, labels }
    }

    /// Induced structure on distinct vertices `verts`, where new vertex `i`
    /// is `verts[i]` (no sorting).
    pub fn restrict_in_order(&self, verts: &[usize]) -> RelStructure {
        const ABSENT: usize = usize::MAX;
        let mut index = vec![ABSENT; self.domain_size];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut flat = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            let mut data = Vec::new();
            for t in rel.tuples() {
                if t.iter().all(|&v| index[v] != ABSENT) {
                    data.extend(t.iter().map(|&v| index[v]));
                }
            }
            flat.push(data);
        }
        let mut out = Self::from_flat_unchecked(self.signature.clone(), verts.len(), flat);
        for (i, rel) in self.relations.iter().enumerate() {
            if rel.arity == 0 {
                out.relations[i].len = rel.len;
            }
        }
        out
    }

    /// Edge complement of a graph.
    pub fn complement(&self) -> Result<RelStructure> {
        if !self.is_graph() {
            return Err(Error::NotAGraph("complement needs a symmetric irreflexive binary relation".into()));
        }
        let mut out = RelStructure::graph_from_fn(self.domain_size, |a, b| !self.adjacent(a, b));
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// Vertices as a set of tuples per relation; convenient for tests.
    pub fn tuple_sets(&self) -> Vec<HashSet<Vec<usize>>> {
        self.relations.iter().map(|r| r.tuples().map(<[usize]>::to_vec).collect()).collect()
    }
}

impl fmt::Display for RelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::write_structure(self))
    }
}
