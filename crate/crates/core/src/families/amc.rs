//! Almost-multichain templates: structures on `F ∪ (L × K)` whose relation
//! values depend only on the pattern of a tuple.
//!
//! Vertex layout of a built prefix of length `ℓ`: the `F` constants are
//! `0..f`, then column `i < ℓ` holds `f + i*k .. f + (i+1)*k`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::structure::{RelStructure, Signature};

/// One coordinate of a tuple pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    /// The `j`-th constant of `F`.
    F(usize),
    /// Column rank among the columns used by the tuple, and the `K` index.
    L { rank: usize, k: usize },
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::F(j) => write!(f, "f{j}"),
            Coord::L { rank, k } => write!(f, "{rank}.{k}"),
        }
    }
}

impl FromStr for Coord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedTemplate(format!("bad coordinate '{s}'"));
        if let Some(j) = s.strip_prefix('f') {
            return j.parse().map(Coord::F).map_err(|_| bad());
        }
        let (rank, k) = s.split_once('.').ok_or_else(bad)?;
        Ok(Coord::L { rank: rank.parse().map_err(|_| bad())?, k: k.parse().map_err(|_| bad())? })
    }
}

pub type Pattern = Vec<Coord>;

fn pattern_text(p: &[Coord]) -> String {
    if p.is_empty() {
        "-".into()
    } else {
        p.iter().map(Coord::to_string).join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmcTemplate {
    signature: Signature,
    f_size: usize,
    k_size: usize,
    /// Patterns whose value is 1, keyed by relation; all others are 0.
    table: BTreeSet<(usize, Pattern)>,
}

impl AmcTemplate {
    pub fn new(signature: Signature, f_size: usize, k_size: usize) -> Result<Self> {
        if k_size == 0 {
            return Err(Error::MalformedTemplate("K must be non-empty".into()));
        }
        Ok(AmcTemplate { signature, f_size, k_size, table: BTreeSet::new() })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn f_size(&self) -> usize {
        self.f_size
    }

    pub fn k_size(&self) -> usize {
        self.k_size
    }

    /// Sets the value of `pattern` in relation `rel`. The pattern must be in
    /// canonical form: ranks used are exactly `0..r`.
    pub fn set(&mut self, rel: usize, pattern: Pattern, value: bool) -> Result<()> {
        self.check_pattern(rel, &pattern)?;
        if value {
            self.table.insert((rel, pattern));
        } else {
            self.table.remove(&(rel, pattern));
        }
        Ok(())
    }

    pub fn value(&self, rel: usize, pattern: &[Coord]) -> bool {
        self.table.contains(&(rel, pattern.to_vec()))
    }

    fn check_pattern(&self, rel: usize, pattern: &[Coord]) -> Result<()> {
        let arity = self
            .signature
            .arities()
            .get(rel)
            .copied()
            .ok_or_else(|| Error::MalformedTemplate(format!("no relation {rel}")))?;
        if pattern.len() != arity {
            return Err(Error::MalformedTemplate(format!(
                "pattern {} has length {}, relation {rel} has arity {arity}",
                pattern_text(pattern),
                pattern.len()
            )));
        }
        let mut ranks = BTreeSet::new();
        for c in pattern {
            match *c {
                Coord::F(j) if j >= self.f_size => {
                    return Err(Error::MalformedTemplate(format!("constant f{j} outside F")))
                }
                Coord::L { k, .. } if k >= self.k_size => {
                    return Err(Error::MalformedTemplate(format!("K index {k} outside K")))
                }
                Coord::L { rank, .. } => {
                    ranks.insert(rank);
                }
                Coord::F(_) => {}
            }
        }
        if ranks.iter().enumerate().any(|(i, &r)| i != r) {
            return Err(Error::MalformedTemplate(format!(
                "ranks of {} are not 0..r",
                pattern_text(pattern)
            )));
        }
        Ok(())
    }

    pub fn vertex_count(&self, len: usize) -> usize {
        self.f_size + len * self.k_size
    }

    /// Pattern of a concrete tuple of a built prefix.
    pub fn pattern_of(&self, tuple: &[usize]) -> Pattern {
        let columns: Vec<usize> = tuple
            .iter()
            .filter(|&&v| v >= self.f_size)
            .map(|&v| (v - self.f_size) / self.k_size)
            .sorted_unstable()
            .dedup()
            .collect();
        tuple
            .iter()
            .map(|&v| {
                if v < self.f_size {
                    Coord::F(v)
                } else {
                    let col = (v - self.f_size) / self.k_size;
                    Coord::L {
                        rank: columns.binary_search(&col).expect("column present"),
                        k: (v - self.f_size) % self.k_size,
                    }
                }
            })
            .collect()
    }

    /// Reads a template off a structure laid out as a prefix. Fails when two
    /// tuples with the same pattern disagree. `r` needs at least as many
    /// columns as the largest arity for every pattern to be seen.
    pub fn from_prefix(r: &RelStructure, f_size: usize, k_size: usize) -> Result<Self> {
        let mut t = AmcTemplate::new(r.signature().clone(), f_size, k_size)?;
        let n = r.domain_size();
        if n < f_size || !(n - f_size).is_multiple_of(k_size) {
            return Err(Error::SizeMismatch(format!("{n} vertices do not fit F = {f_size}, K = {k_size}")));
        }
        let columns = (n - f_size) / k_size;
        if columns < r.signature().max_arity() {
            return Err(Error::SizeMismatch(format!(
                "{columns} columns cannot show every pattern of arity {}",
                r.signature().max_arity()
            )));
        }
        for (rel, &arity) in r.signature().arities().iter().enumerate() {
            let mut seen: std::collections::HashMap<Pattern, bool> = Default::default();
            let tuples: Box<dyn Iterator<Item = Vec<usize>>> = if arity == 0 {
                Box::new(std::iter::once(Vec::new()))
            } else {
                Box::new((0..arity).map(|_| 0..n).multi_cartesian_product())
            };
            for tuple in tuples {
                let p = t.pattern_of(&tuple);
                let v = r.holds(rel, &tuple);
                match seen.get(&p) {
                    Some(&old) if old != v => {
                        return Err(Error::MalformedTemplate(format!(
                            "relation {rel} is not determined by pattern {}",
                            pattern_text(&p)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(p.clone(), v);
                        if v {
                            t.table.insert((rel, p));
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    /// Template text: `signature`, `f-size`, `k-size`, then one
    /// `rel <i> <pattern> 1` line per true pattern.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "signature {}\nf-size {}\nk-size {}\n",
            self.signature.arities().iter().join(" "),
            self.f_size,
            self.k_size
        );
        for (rel, p) in &self.table {
            out.push_str(&format!("rel {rel} {} 1\n", pattern_text(p)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut signature = None;
        let mut f_size = 0;
        let mut k_size = None;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::MalformedTemplate(format!("line {}: {what}", lineno + 1));
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "signature" => {
                    let arities = words[1..]
                        .iter()
                        .map(|w| w.parse::<usize>().map_err(|_| bad("bad arity")))
                        .collect::<Result<Vec<_>>>()?;
                    signature = Some(Signature::new(arities)?);
                }
                "f-size" if words.len() == 2 => f_size = words[1].parse().map_err(|_| bad("bad f-size"))?,
                "k-size" if words.len() == 2 => {
                    k_size = Some(words[1].parse().map_err(|_| bad("bad k-size"))?)
                }
                "rel" if words.len() == 4 => {
                    let rel: usize = words[1].parse().map_err(|_| bad("bad relation index"))?;
                    let pattern = if words[2] == "-" {
                        Vec::new()
                    } else {
                        words[2].split(',').map(str::parse).collect::<Result<Pattern>>()?
                    };
                    let value = match words[3] {
                        "0" => false,
                        "1" => true,
                        _ => return Err(bad("value must be 0 or 1")),
                    };
                    entries.push((lineno + 1, rel, pattern, value));
                }
                _ => return Err(bad("unrecognized line")),
            }
        }
        let signature = signature.ok_or_else(|| Error::MalformedTemplate("missing signature".into()))?;
        let k_size = k_size.ok_or_else(|| Error::MalformedTemplate("missing k-size".into()))?;
        let mut t = AmcTemplate::new(signature, f_size, k_size)?;
        let mut assigned: std::collections::HashMap<(usize, Pattern), bool> = Default::default();
        for (line, rel, pattern, value) in entries {
            if let Some(&old) = assigned.get(&(rel, pattern.clone())) {
                if old != value {
                    return Err(Error::MalformedTemplate(format!("line {line}: conflicting value")));
                }
            }
            t.set(rel, pattern.clone(), value)?;
            assigned.insert((rel, pattern), value);
        }
        Ok(t)
    }

    /// Vertex subsets of size `n` in the prefix of length `len`, one per
    /// orbit of the maps `(h, 1_K)`: an `F` part plus a word of non-empty
    /// `K`-subsets placed in columns `0, 1, ...`.
    pub fn orbit_representatives(&self, n: usize, len: usize) -> Vec<Vec<usize>> {
        let f = self.f_size;
        let k = self.k_size;
        let mut out = Vec::new();
        for fs in 0..=f.min(n) {
            for fixed in (0..f).combinations(fs) {
                let mut word = Vec::new();
                words(k, n - fs, len, &mut word, &mut |w| {
                    let mut set = fixed.clone();
                    for (col, &mask) in w.iter().enumerate() {
                        for kk in 0..k {
                            if mask >> kk & 1 == 1 {
                                set.push(f + col * k + kk);
                            }
                        }
                    }
                    out.push(set);
                });
            }
        }
        out
    }
}

/// Words over non-empty subsets of `0..k` (as bitmasks) of total weight
/// `weight` and length at most `max_len`.
fn words(k: usize, weight: usize, max_len: usize, word: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
    if weight == 0 {
        visit(word);
        return;
    }
    if word.len() == max_len {
        return;
    }
    for mask in 1u64..(1 << k) {
        let w = mask.count_ones() as usize;
        if w <= weight {
            word.push(mask);
            words(k, weight - w, max_len, word, visit);
            word.pop();
        }
    }
}

/// The prefix of length `len` of the structure described by `t`.
pub fn amc_build(t: &AmcTemplate, len: usize) -> Result<RelStructure> {
    let f = t.f_size;
    let k = t.k_size;
    let mut tuples: Vec<Vec<Vec<usize>>> = vec![Vec::new(); t.signature.len()];
    for (rel, pattern) in &t.table {
        let ranks = pattern
            .iter()
            .filter_map(|c| match c {
                Coord::L { rank, .. } => Some(rank + 1),
                Coord::F(_) => None,
            })
            .max()
            .unwrap_or(0);
        for cols in (0..len).combinations(ranks) {
            let tuple = pattern
                .iter()
                .map(|c| match *c {
                    Coord::F(j) => j,
                    Coord::L { rank, k: kk } => f + cols[rank] * k + kk,
                })
                .collect();
            tuples[*rel].push(tuple);
        }
    }
    RelStructure::new(t.signature.clone(), t.vertex_count(len), tuples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::families::ten_graph;

    const HALF_GRAPH: &str = "\
signature 2
k-size 2
# (n,0) ~ (m,1) iff n <= m
rel 0 0.0,0.1 1
rel 0 0.1,0.0 1
rel 0 0.0,1.1 1
rel 0 1.1,0.0 1
";

    #[test]
    fn half_graph_template() {
        let t = AmcTemplate::parse(HALF_GRAPH).unwrap();
        for len in 1..6 {
            assert_eq!(amc_build(&t, len).unwrap(), ten_graph(2, len).unwrap());
        }
        assert_eq!(AmcTemplate::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn all_false_is_edgeless() {
        let t = AmcTemplate::parse("signature 2 3\nf-size 1\nk-size 2\n").unwrap();
        let r = amc_build(&t, 4).unwrap();
        assert_eq!(r.domain_size(), 9);
        assert_eq!(r.tuple_count(), 0);
    }

    #[test]
    fn read_back_from_prefix() {
        for i in 1..=10 {
            let t = AmcTemplate::from_prefix(&ten_graph(i, 2).unwrap(), 0, 2).unwrap();
            assert_eq!(amc_build(&t, 7).unwrap(), ten_graph(i, 7).unwrap());
        }
        let c5 = RelStructure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(AmcTemplate::from_prefix(&c5, 1, 2).is_err());
    }

    #[test]
    fn malformed_templates() {
        assert!(AmcTemplate::parse("k-size 2\n").is_err());
        assert!(AmcTemplate::parse("signature 2\nk-size 2\nrel 0 0.0 1\n").is_err());
        assert!(AmcTemplate::parse("signature 2\nk-size 2\nrel 0 0.0,2.1 1\n").is_err());
        assert!(AmcTemplate::parse("signature 2\nk-size 2\nrel 0 0.0,0.5 1\n").is_err());
        assert!(AmcTemplate::parse("signature 2\nk-size 2\nrel 0 f0,0.0 1\n").is_err());
        assert!(AmcTemplate::parse("signature 2\nk-size 2\nrel 0 0.0,0.1 1\nrel 0 0.0,0.1 0\n").is_err());
        assert!(AmcTemplate::parse("signature 0\nk-size 1\nrel 0 - 1\n").is_ok());
    }

    #[test]
    fn representatives_cover_every_type() {
        let t = AmcTemplate::parse(HALF_GRAPH).unwrap();
        let r = amc_build(&t, 5).unwrap();
        for n in 0..=6 {
            let reps = t.orbit_representatives(n, 5);
            let exact = crate::profile::profile_exact(&r, n).unwrap();
            let via = crate::profile::count_types(&r, reps.clone());
            assert_eq!(via, exact, "n = {n}");
            // Every subset is isomorphic to some representative.
            for s in (0..10).combinations(n) {
                let sub = r.restrict_sorted(&s);
                assert!(reps.iter().any(|rep| is_isomorphic(&sub, &r.restrict_sorted(rep))));
            }
        }
    }
}
