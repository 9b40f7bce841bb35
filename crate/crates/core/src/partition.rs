//! Partitions of a structure's domain.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionKind {
    /// Classes of the full equivalence: monomorphic components.
    Components,
    /// Components split into intervals of an order.
    Interval,
    /// Maximal autonomous cliques / independent sets of a graph.
    Autonomous,
    /// Supplied by the caller.
    User,
}

/// Blocks are kept sorted internally and ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    kind: PartitionKind,
}

impl Partition {
    pub fn new(domain_size: usize, blocks: Vec<Vec<usize>>, kind: PartitionKind) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        const NONE: usize = usize::MAX;
        let mut block_of = vec![NONE; domain_size];
        for (bi, b) in blocks.iter().enumerate() {
            for &v in b {
                if v >= domain_size {
                    return Err(Error::VertexOutOfRange { vertex: v, domain_size });
                }
                if block_of[v] != NONE {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                block_of[v] = bi;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == NONE) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(Partition { blocks, block_of, kind })
    }

    /// Builds from a class label per vertex; equal labels share a block.
    pub fn from_labels(labels: &[usize], kind: PartitionKind) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot: std::collections::HashMap<usize, usize> = Default::default();
        for (v, &l) in labels.iter().enumerate() {
            let idx = *slot.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(v);
        }
        Partition::new(labels.len(), blocks, kind).expect("labels cover the domain")
    }

    pub fn singletons(domain_size: usize) -> Self {
        Partition::new(domain_size, (0..domain_size).map(|v| vec![v]).collect(), PartitionKind::User)
            .expect("singletons form a partition")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    pub fn domain_size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.domain_size() == coarser.domain_size()
            && self.blocks.iter().all(|b| b.iter().all(|&v| coarser.same_block(v, b[0])))
    }

    /// Same blocks, ignoring the kind tag.
    pub fn same_blocks(&self, other: &Partition) -> bool {
        self.blocks == other.blocks
    }

    /// One block per line, comma-separated, blocks by least element.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            let items: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            out.push_str(&items.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, domain_size: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let block = line
                .split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex in '{line}'"))))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        Partition::new(domain_size, blocks, PartitionKind::User)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_block_order() {
        let p = Partition::new(4, vec![vec![3, 1], vec![2, 0]], PartitionKind::User).unwrap();
        assert_eq!(p.to_text(), "0,2\n1,3\n");
        assert_eq!(Partition::parse(&p.to_text(), 4).unwrap().blocks(), p.blocks());
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(3, vec![vec![0, 1]], PartitionKind::User).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![1]], PartitionKind::User).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![]], PartitionKind::User).is_err());
        assert!(Partition::new(2, vec![vec![0, 2]], PartitionKind::User).is_err());
    }

    #[test]
    fn refinement() {
        let fine = Partition::singletons(3);
        let coarse = Partition::new(3, vec![vec![0, 1, 2]], PartitionKind::User).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Partition::from_labels(&[5, 7, 5], PartitionKind::User).refines(&coarse));
    }
}
