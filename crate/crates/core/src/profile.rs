//! Profiles: counts of isomorphism types of `n`-element induced
//! substructures, exact and shape-accelerated, plus growth classification.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_code, CanonicalCode};
use crate::equivalence::is_monomorphic_decomposition;
use crate::error::{Error, Result};
use crate::families::FamilyGenerator;
use crate::partition::Partition;
use crate::structure::RelStructure;

/// Distinct canonical codes among the restrictions to `subsets`.
pub(crate) fn count_types<I>(r: &RelStructure, subsets: I) -> u64
where
    I: IntoParallelIterator<Item = Vec<usize>>,
{
    let codes: HashSet<CanonicalCode> = subsets
        .into_par_iter()
        .map(|s| canonical_code(&r.restrict_sorted(&s)))
        .collect();
    codes.len() as u64
}

/// Number of isomorphism types among the `n`-element induced substructures.
pub fn profile_exact(r: &RelStructure, n: usize) -> Result<u64> {
    let size = r.domain_size();
    if n > size {
        return Err(Error::Range(format!("n = {n} exceeds domain size {size}")));
    }
    if n == 0 {
        return Ok(1);
    }
    // Split by least element so each worker enumerates its own slice.
    let codes: HashSet<CanonicalCode> = (0..=size - n)
        .into_par_iter()
        .flat_map_iter(|first| {
            ((first + 1)..size).combinations(n - 1).map(move |rest| {
                let mut set = Vec::with_capacity(n);
                set.push(first);
                set.extend(rest);
                canonical_code(&r.restrict_sorted(&set))
            })
        })
        .collect();
    Ok(codes.len() as u64)
}

/// Trace sizes of `a` on the blocks of `p`, in block order.
pub fn shape(a: &[usize], p: &Partition) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for &v in a {
        out[p.block_of(v)] += 1;
    }
    out
}

/// Profile value computed from one representative per shape. `p` must be a
/// monomorphic decomposition of `r`.
pub fn profile_by_shapes(r: &RelStructure, p: &Partition, n: usize) -> Result<u64> {
    if n > r.domain_size() {
        return Err(Error::Range(format!("n = {n} exceeds domain size {}", r.domain_size())));
    }
    if !is_monomorphic_decomposition(r, p)? {
        return Err(Error::NotMonomorphic);
    }
    Ok(profile_by_shapes_unchecked(r, p, n))
}

pub(crate) fn profile_by_shapes_unchecked(r: &RelStructure, p: &Partition, n: usize) -> u64 {
    let sizes: Vec<usize> = p.blocks().iter().map(Vec::len).collect();
    let mut reps = Vec::new();
    let mut current = vec![0; sizes.len()];
    shapes_of_weight(&sizes, n, 0, &mut current, &mut |sh| {
        let mut set: Vec<usize> = p
            .blocks()
            .iter()
            .zip(sh)
            .flat_map(|(b, &c)| b[..c].iter().copied())
            .collect();
        set.sort_unstable();
        reps.push(set);
    });
    count_types(r, reps)
}

fn shapes_of_weight(
    sizes: &[usize],
    remaining: usize,
    i: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if i == sizes.len() {
        if remaining == 0 {
            visit(current);
        }
        return;
    }
    let rest_capacity: usize = sizes[i + 1..].iter().sum();
    let lo = remaining.saturating_sub(rest_capacity);
    for c in lo..=sizes[i].min(remaining) {
        current[i] = c;
        shapes_of_weight(sizes, remaining - c, i + 1, current, visit);
    }
    current[i] = 0;
}

/// `φ(n) <= φ(n + p)`, valid on structures with at least `2n + p` elements.
pub fn monotonicity_check(r: &RelStructure, n: usize, p: usize) -> Result<bool> {
    let need = 2 * n + p;
    if r.domain_size() < need {
        return Err(Error::TooSmall { have: r.domain_size(), need });
    }
    Ok(profile_exact(r, n)? <= profile_exact(r, n + p)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileTable {
    pub source: String,
    pub prefix_used: usize,
    pub stabilized: bool,
    /// `values[n]` for `n` in `0..=n_max`.
    pub values: Vec<u64>,
}

impl ProfileTable {
    pub fn n_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes") + "\n"
    }
}

/// Prefix schedule for [`profile_table`].
#[derive(Clone, Copy, Debug)]
pub struct Stabilization {
    pub start: usize,
    pub step: usize,
    pub cap: usize,
}

impl Stabilization {
    pub fn for_n_max(n_max: usize) -> Self {
        Stabilization { start: n_max + 2, step: 2, cap: 4 * n_max + 8 }
    }
}

/// Profile of a family up to `n_max`, computed on growing prefixes until two
/// consecutive prefixes agree. Hitting the cap is reported through
/// `stabilized = false`, not as an error.
pub fn profile_table(family: &FamilyGenerator, n_max: usize, schedule: Stabilization) -> Result<ProfileTable> {
    let step = schedule.step.max(1);
    let mut len = schedule.start.max(1);
    let mut previous = family.prefix_profile(len, n_max)?;
    let mut used = len;
    let mut stabilized = false;
    while len + step <= schedule.cap {
        len += step;
        let next = family.prefix_profile(len, n_max)?;
        used = len;
        if next == previous {
            stabilized = true;
            break;
        }
        previous = next;
    }
    Ok(ProfileTable { source: family.descriptor(), prefix_used: used, stabilized, values: previous })
}

/// Table of a single finite structure. Values past the domain size are 0.
pub fn structure_table(r: &RelStructure, n_max: usize, source: &str) -> Result<ProfileTable> {
    let values = (0..=n_max)
        .map(|n| if n > r.domain_size() { Ok(0) } else { profile_exact(r, n) })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileTable { source: source.to_string(), prefix_used: r.domain_size(), stabilized: true, values })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum GrowthClass {
    EventuallyPolynomial { degree: usize },
    ExponentialAtLeast { base: f64 },
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthVerdict {
    pub class: GrowthClass,
    /// Values the verdict was read from.
    pub evidence: Vec<u64>,
}

impl fmt::Display for GrowthVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            GrowthClass::EventuallyPolynomial { degree } => write!(f, "eventually-polynomial({degree})"),
            GrowthClass::ExponentialAtLeast { base } => write!(f, "exponential-at-least({base:.4})"),
            GrowthClass::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// Minimal `k` whose `(k+1)`-th differences exist and vanish.
fn difference_degree(seq: &[i128]) -> Option<usize> {
    let mut cur: Vec<i128> = seq.to_vec();
    for k in 0.. {
        let next: Vec<i128> = cur.windows(2).map(|w| w[1] - w[0]).collect();
        if next.is_empty() {
            return None;
        }
        if next.iter().all(|&d| d == 0) {
            return Some(k);
        }
        cur = next;
    }
    unreachable!()
}

/// Heuristic growth verdict from the tail of a stabilized table.
///
/// Polynomial degree is read separately from the even and odd entries of
/// the last `max(8, n_max/2)` values (the larger of the two degrees wins).
/// Otherwise the table is exponential when every ratio over the last
/// `max(4, n_max/2)` values is at least 1.2.
pub fn classify_growth(t: &ProfileTable) -> Result<GrowthVerdict> {
    if !t.stabilized {
        return Err(Error::NotStabilized);
    }
    let n_max = t.n_max();
    if n_max < 8 {
        return Err(Error::Range(format!("classification needs n_max >= 8, got {n_max}")));
    }
    let poly_window = (n_max / 2).max(8).min(n_max + 1);
    let tail = &t.values[t.values.len() - poly_window..];
    let start = t.values.len() - poly_window;
    let parity: Vec<Vec<i128>> = (0..2)
        .map(|par| {
            tail.iter()
                .enumerate()
                .filter(|(i, _)| (start + i) % 2 == par)
                .map(|(_, &v)| v as i128)
                .collect()
        })
        .collect();
    if let (Some(a), Some(b)) = (difference_degree(&parity[0]), difference_degree(&parity[1])) {
        return Ok(GrowthVerdict {
            class: GrowthClass::EventuallyPolynomial { degree: a.max(b) },
            evidence: tail.to_vec(),
        });
    }
    let ratio_window = (n_max / 2).max(4).min(n_max + 1);
    let tail = &t.values[t.values.len() - ratio_window..];
    let ratios: Vec<f64> = tail
        .windows(2)
        .filter(|w| w[0] > 0)
        .map(|w| w[1] as f64 / w[0] as f64)
        .collect();
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let class = if ratios.len() >= 4 && ratios.len() + 1 == tail.len() && min_ratio >= 1.2 {
        GrowthClass::ExponentialAtLeast { base: min_ratio }
    } else {
        GrowthClass::Undetermined
    };
    Ok(GrowthVerdict { class, evidence: tail.to_vec() })
}
