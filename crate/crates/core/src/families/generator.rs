//! Infinite families given by their finite prefixes, lexicographic sums, and
//! the search for ten-graph obstructions.

use std::fmt;
use std::path::Path;

use super::amc::{amc_build, AmcTemplate, Coord};
use super::ten::ten_graph;
use crate::embed::embeds;
use crate::error::{Error, Result};
use crate::io::parse_structure;
use crate::profile::count_types;
use crate::structure::{RelStructure, Signature};

/// Size of one part of a lexicographic sum family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartSize {
    /// Grows with the prefix length.
    Growing,
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Part {
    pub size: PartSize,
    pub clique: bool,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let PartSize::Fixed(n) = self.size {
            write!(f, "{n}")?;
        }
        f.write_str(if self.clique { "c" } else { "i" })
    }
}

impl std::str::FromStr for Part {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad part '{s}' (expected c, i, <n>c or <n>i)"));
        let (count, kind) = s.split_at(s.len().checked_sub(1).ok_or_else(bad)?);
        let clique = match kind {
            "c" => true,
            "i" => false,
            _ => return Err(bad()),
        };
        let size = if count.is_empty() {
            PartSize::Growing
        } else {
            PartSize::Fixed(count.parse().map_err(|_| bad())?)
        };
        Ok(Part { size, clique })
    }
}

#[derive(Clone, Debug)]
pub enum FamilyGenerator {
    /// `G_i` for `i` in `1..=10`.
    TenGraph(usize),
    HalfGraph,
    Amc { name: String, template: AmcTemplate },
    /// Lexicographic sum of cliques and independent sets over a finite graph.
    LexSum { name: String, index: RelStructure, parts: Vec<Part> },
    /// Disjoint copies of a finite structure.
    DirectSum { name: String, copy: RelStructure },
}

fn read_structure(path: &str) -> Result<RelStructure> {
    let text = std::fs::read_to_string(Path::new(path))?;
    parse_structure(&text)
}

/// Graph on the vertices `0..owner.len()`, vertex `v` belonging to part
/// `owner[v]` of a lexicographic sum over `index`.
fn lex_sum_by_owner(index: &RelStructure, clique: &[bool], owner: &[usize]) -> RelStructure {
    RelStructure::graph_from_fn(owner.len(), |u, v| {
        let (a, b) = (owner[u], owner[v]);
        if a == b {
            clique[a]
        } else {
            index.adjacent(a, b)
        }
    })
}

/// Replaces vertex `v` of the graph `h` by a clique or independent set of
/// size `parts[v].0`. Vertices are numbered part by part.
pub fn lex_sum(h: &RelStructure, parts: &[(usize, bool)]) -> Result<RelStructure> {
    if !h.is_graph() {
        return Err(Error::NotAGraph("index of a lexicographic sum".into()));
    }
    if parts.len() != h.domain_size() {
        return Err(Error::SizeMismatch(format!(
            "{} parts for an index graph on {} vertices",
            parts.len(),
            h.domain_size()
        )));
    }
    let owner: Vec<usize> = parts.iter().enumerate().flat_map(|(i, &(n, _))| std::iter::repeat_n(i, n)).collect();
    let clique: Vec<bool> = parts.iter().map(|p| p.1).collect();
    Ok(lex_sum_by_owner(h, &clique, &owner))
}

/// Ordered almost-multichain with `K = 0..s`: relation 0 orders `L × K`
/// lexicographically (reflexively), relation 1 relates elements of the same
/// column. Its `n`-element types are the compositions of `n` with parts at
/// most `s`.
pub fn ordered_multichain(s: usize) -> Result<AmcTemplate> {
    let mut t = AmcTemplate::new(Signature::new(vec![2, 2])?, 0, s)?;
    for a in 0..s {
        for b in 0..s {
            t.set(1, vec![Coord::L { rank: 0, k: a }, Coord::L { rank: 0, k: b }], true)?;
            t.set(0, vec![Coord::L { rank: 0, k: a }, Coord::L { rank: 1, k: b }], true)?;
            if a <= b {
                t.set(0, vec![Coord::L { rank: 0, k: a }, Coord::L { rank: 0, k: b }], true)?;
            }
        }
    }
    Ok(t)
}

impl FamilyGenerator {
    /// Parses `G1`..`G10`, `halfgraph`, `amc:<file>`, `lexsum:<file>:<parts>`,
    /// `directsum:<file>` and `multichain:<s>`.
    pub fn parse(desc: &str) -> Result<Self> {
        if let Some(i) = desc.strip_prefix('G').and_then(|s| s.parse::<usize>().ok()) {
            if (1..=10).contains(&i) {
                return Ok(FamilyGenerator::TenGraph(i));
            }
        }
        if desc == "halfgraph" {
            return Ok(FamilyGenerator::HalfGraph);
        }
        if let Some(path) = desc.strip_prefix("amc:") {
            let template = AmcTemplate::parse(&std::fs::read_to_string(path)?)?;
            return Ok(FamilyGenerator::Amc { name: desc.to_string(), template });
        }
        if let Some(s) = desc.strip_prefix("multichain:") {
            let s: usize = s.parse().map_err(|_| Error::Parse(format!("bad multichain width in '{desc}'")))?;
            return Ok(FamilyGenerator::Amc { name: desc.to_string(), template: ordered_multichain(s)? });
        }
        if let Some(rest) = desc.strip_prefix("lexsum:") {
            let (path, parts) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("'{desc}' needs lexsum:<file>:<parts>")))?;
            let parts = parts.split(',').map(str::parse).collect::<Result<Vec<Part>>>()?;
            return FamilyGenerator::lex_sum_family(desc, read_structure(path)?, parts);
        }
        if let Some(path) = desc.strip_prefix("directsum:") {
            return FamilyGenerator::direct_sum_family(desc, read_structure(path)?);
        }
        Err(Error::Parse(format!("unknown family descriptor '{desc}'")))
    }

    pub fn lex_sum_family(name: &str, index: RelStructure, parts: Vec<Part>) -> Result<Self> {
        if !index.is_graph() {
            return Err(Error::NotAGraph("index of a lexicographic sum".into()));
        }
        if parts.len() != index.domain_size() {
            return Err(Error::SizeMismatch(format!(
                "{} parts for an index graph on {} vertices",
                parts.len(),
                index.domain_size()
            )));
        }
        if !parts.iter().any(|p| p.size == PartSize::Growing) {
            return Err(Error::SizeMismatch("a family needs at least one growing part".into()));
        }
        Ok(FamilyGenerator::LexSum { name: name.to_string(), index, parts })
    }

    pub fn direct_sum_family(name: &str, copy: RelStructure) -> Result<Self> {
        if copy.domain_size() == 0 {
            return Err(Error::SizeMismatch("cannot sum copies of the empty structure".into()));
        }
        Ok(FamilyGenerator::DirectSum { name: name.to_string(), copy })
    }

    pub fn descriptor(&self) -> String {
        match self {
            FamilyGenerator::TenGraph(i) => format!("G{i}"),
            FamilyGenerator::HalfGraph => "halfgraph".into(),
            FamilyGenerator::Amc { name, .. }
            | FamilyGenerator::LexSum { name, .. }
            | FamilyGenerator::DirectSum { name, .. } => name.clone(),
        }
    }

    /// `(|F|, |K|)` of the prefix layout: `F` first, then columns of `K`.
    fn layout(&self) -> (usize, usize) {
        match self {
            FamilyGenerator::TenGraph(_) | FamilyGenerator::HalfGraph => (0, 2),
            FamilyGenerator::Amc { template, .. } => (template.f_size(), template.k_size()),
            FamilyGenerator::LexSum { parts, .. } => {
                let fixed = parts
                    .iter()
                    .map(|p| match p.size {
                        PartSize::Fixed(n) => n,
                        PartSize::Growing => 0,
                    })
                    .sum();
                (fixed, parts.iter().filter(|p| p.size == PartSize::Growing).count())
            }
            FamilyGenerator::DirectSum { copy, .. } => (0, copy.domain_size()),
        }
    }

    /// The finite prefix with `len` columns. Prefixes are nested: the first
    /// vertices of a longer prefix induce the shorter one.
    pub fn prefix(&self, len: usize) -> Result<RelStructure> {
        match self {
            FamilyGenerator::TenGraph(i) => ten_graph(*i, len),
            FamilyGenerator::HalfGraph => ten_graph(2, len),
            FamilyGenerator::Amc { template, .. } => amc_build(template, len),
            FamilyGenerator::LexSum { index, parts, .. } => {
                let mut owner = Vec::new();
                for (i, p) in parts.iter().enumerate() {
                    if let PartSize::Fixed(n) = p.size {
                        owner.extend(std::iter::repeat_n(i, n));
                    }
                }
                for _ in 0..len {
                    owner.extend((0..parts.len()).filter(|&i| parts[i].size == PartSize::Growing));
                }
                let clique: Vec<bool> = parts.iter().map(|p| p.clique).collect();
                Ok(lex_sum_by_owner(index, &clique, &owner))
            }
            FamilyGenerator::DirectSum { copy, .. } => {
                let k = copy.domain_size();
                let mut tuples: Vec<Vec<Vec<usize>>> = vec![Vec::new(); copy.signature().len()];
                for c in 0..len {
                    for (rel, out) in tuples.iter_mut().enumerate() {
                        for t in copy.relation(rel).tuples() {
                            out.push(t.iter().map(|&v| c * k + v).collect());
                        }
                    }
                }
                RelStructure::new(copy.signature().clone(), len * k, tuples)
            }
        }
    }

    /// The pattern table of the family, read off a prefix long enough to
    /// show every pattern.
    pub fn template(&self) -> Result<AmcTemplate> {
        if let FamilyGenerator::Amc { template, .. } = self {
            return Ok(template.clone());
        }
        let (f, k) = self.layout();
        let probe = self.prefix(1)?;
        let len = probe.signature().max_arity().max(1);
        AmcTemplate::from_prefix(&self.prefix(len)?, f, k)
    }

    /// Profile values `0..=n_max` of the prefix of length `len`, counting
    /// one representative per orbit of the column maps.
    pub fn prefix_profile(&self, len: usize, n_max: usize) -> Result<Vec<u64>> {
        let r = self.prefix(len)?;
        let t = self.template()?;
        Ok((0..=n_max).map(|n| count_types(&r, t.orbit_representatives(n, len))).collect())
    }

    pub fn is_graph_family(&self) -> Result<bool> {
        Ok(self.prefix(2)?.is_graph())
    }
}

/// Indices `i` such that the prefix of length `t` of `G_i` embeds into the
/// prefix of length `len` of `family`.
pub fn obstruction_search(family: &FamilyGenerator, len: usize, t: usize) -> Result<Vec<usize>> {
    if !family.is_graph_family()? {
        return Err(Error::NotAGraphFamily);
    }
    if t == 0 || t > len {
        return Err(Error::Range(format!("need 1 <= t <= prefix length, got t = {t}, prefix {len}")));
    }
    let host = family.prefix(len)?;
    let mut found = Vec::new();
    for i in 1..=10 {
        if embeds(&ten_graph(i, t)?, &host).is_some() {
            found.push(i);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::equivalence::components;
    use crate::profile::profile_exact;

    fn k2() -> RelStructure {
        RelStructure::graph(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn lex_sum_examples() {
        let c4 = RelStructure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let sum = lex_sum(&k2(), &[(2, false), (2, false)]).unwrap();
        assert!(is_isomorphic(&sum, &c4));
        let single = RelStructure::graph(1, &[]).unwrap();
        assert_eq!(lex_sum(&single, &[(5, true)]).unwrap(), RelStructure::graph_from_fn(5, |_, _| true));
        assert!(matches!(lex_sum(&k2(), &[(1, true)]), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn lex_sum_components_are_unions_of_parts() {
        let p3 = RelStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let parts = [(2, true), (3, false), (1, true)];
        let g = lex_sum(&p3, &parts).unwrap();
        let comps = components(&g);
        assert!(comps.len() <= 3);
        let owner = [0, 0, 1, 1, 1, 2];
        for b in comps.blocks() {
            for &v in b {
                for w in 0..6 {
                    if owner[w] == owner[v] {
                        assert!(comps.same_block(v, w));
                    }
                }
            }
        }
    }

    #[test]
    fn parts_parse() {
        let p: Vec<Part> = "c,3i,i".split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(p[1], Part { size: PartSize::Fixed(3), clique: false });
        assert_eq!(p.iter().map(Part::to_string).collect::<Vec<_>>(), ["c", "3i", "i"]);
        assert!("x".parse::<Part>().is_err());
        assert!("".parse::<Part>().is_err());
    }

    fn families() -> Vec<FamilyGenerator> {
        let mut out: Vec<FamilyGenerator> = (1..=10).map(FamilyGenerator::TenGraph).collect();
        out.push(FamilyGenerator::HalfGraph);
        out.push(FamilyGenerator::Amc { name: "multichain:3".into(), template: ordered_multichain(3).unwrap() });
        let p3 = RelStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let parts = vec!["c".parse().unwrap(), "2i".parse().unwrap(), "i".parse().unwrap()];
        out.push(FamilyGenerator::lex_sum_family("lexsum", p3.clone(), parts).unwrap());
        out.push(FamilyGenerator::direct_sum_family("directsum", p3).unwrap());
        out
    }

    #[test]
    fn prefixes_are_nested() {
        for fam in families() {
            let (f, k) = fam.layout();
            let big = fam.prefix(5).unwrap();
            for len in 1..5 {
                let first: Vec<usize> = (0..f + len * k).collect();
                assert_eq!(big.restrict(&first).unwrap().0, fam.prefix(len).unwrap(), "{}", fam.descriptor());
            }
        }
    }

    #[test]
    fn templates_rebuild_prefixes() {
        for fam in families() {
            let t = fam.template().unwrap();
            for len in 1..6 {
                assert_eq!(amc_build(&t, len).unwrap(), fam.prefix(len).unwrap(), "{}", fam.descriptor());
            }
        }
    }

    #[test]
    fn orbit_profile_matches_brute_force() {
        for fam in families() {
            let r = fam.prefix(4).unwrap();
            let fast = fam.prefix_profile(4, 6.min(r.domain_size())).unwrap();
            let slow: Vec<u64> = (0..fast.len()).map(|n| profile_exact(&r, n).unwrap()).collect();
            assert_eq!(fast, slow, "{}", fam.descriptor());
        }
    }

    #[test]
    fn multichain_counts_compositions() {
        let fam = FamilyGenerator::parse("multichain:2").unwrap();
        assert_eq!(fam.prefix_profile(8, 8).unwrap(), [1, 1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn obstructions() {
        let g2 = FamilyGenerator::TenGraph(2);
        assert!(obstruction_search(&g2, 4, 4).unwrap().contains(&2));
        let p3 = RelStructure::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let parts = vec!["c".parse().unwrap(), "i".parse().unwrap(), "c".parse().unwrap()];
        let lex = FamilyGenerator::lex_sum_family("lexsum", p3, parts).unwrap();
        for t in 3..5 {
            assert!(obstruction_search(&lex, 8, t).unwrap().is_empty(), "t = {t}");
        }
        let multi = FamilyGenerator::parse("multichain:2").unwrap();
        assert!(matches!(obstruction_search(&multi, 4, 2), Err(Error::NotAGraphFamily)));
        assert!(obstruction_search(&g2, 3, 4).is_err());
    }

    #[test]
    fn descriptors() {
        assert!(matches!(FamilyGenerator::parse("G10").unwrap(), FamilyGenerator::TenGraph(10)));
        assert!(FamilyGenerator::parse("G11").is_err());
        assert!(FamilyGenerator::parse("G0").is_err());
        assert!(FamilyGenerator::parse("nothing").is_err());
        assert!(FamilyGenerator::parse("lexsum:/nonexistent").is_err());
        assert!(FamilyGenerator::parse("amc:/nonexistent").is_err());
    }
}
