//! The equivalences `x ≃_A y`, `≃_k`, `≃_{≤k}` and `≃`, the partitions they
//! induce, monomorphic parts, interval decompositions, hypomorphy and free
//! interpretability.
//!
//! Everything here is exhaustive over vertex subsets and meant for small
//! domains.

use itertools::Itertools;

use crate::canon::{canonical_code, is_isomorphic, CanonicalCode};
use crate::embed::for_each_embedding;
use crate::error::{Error, Result};
use crate::ordered::OrderedStructure;
use crate::partition::{Partition, PartitionKind};
use crate::structure::RelStructure;

/// Outcome of comparing `x` and `y` against one external set `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub x: usize,
    pub y: usize,
    pub a: Vec<usize>,
    pub verdict: bool,
}

fn check_pair(r: &RelStructure, x: usize, y: usize) -> Result<()> {
    let n = r.domain_size();
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, domain_size: n });
        }
    }
    if x == y {
        return Err(Error::SameVertex(x));
    }
    Ok(())
}

fn others(n: usize, x: usize, y: usize) -> Vec<usize> {
    (0..n).filter(|&v| v != x && v != y).collect()
}

fn code_with(r: &RelStructure, v: usize, a: &[usize]) -> CanonicalCode {
    let mut set = Vec::with_capacity(a.len() + 1);
    set.extend_from_slice(a);
    set.push(v);
    set.sort_unstable();
    canonical_code(&r.restrict_sorted(&set))
}

/// Restrictions of `r` to `{x} ∪ a` and `{y} ∪ a` are isomorphic.
pub fn a_equivalent(r: &RelStructure, x: usize, y: usize, a: &[usize]) -> Result<bool> {
    check_pair(r, x, y)?;
    if a.contains(&x) || a.contains(&y) {
        return Err(Error::Overlap { x, y });
    }
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    if let Some(&v) = a.iter().find(|&&v| v >= r.domain_size()) {
        return Err(Error::VertexOutOfRange { vertex: v, domain_size: r.domain_size() });
    }
    Ok(a_equivalent_unchecked(r, x, y, &a))
}

fn a_equivalent_unchecked(r: &RelStructure, x: usize, y: usize, a: &[usize]) -> bool {
    code_with(r, x, a) == code_with(r, y, a)
}

/// A `k`-subset of `V \ {x, y}` separating `x` from `y`, if any.
fn k_separator(r: &RelStructure, x: usize, y: usize, k: usize) -> Option<Vec<usize>> {
    others(r.domain_size(), x, y)
        .into_iter()
        .combinations(k)
        .find(|a| !a_equivalent_unchecked(r, x, y, a))
}

/// `x ≃_k y`: equivalent against every `k`-element external set.
pub fn k_equivalent(r: &RelStructure, x: usize, y: usize, k: usize) -> Result<bool> {
    check_pair(r, x, y)?;
    Ok(k_separator(r, x, y, k).is_none())
}

/// `x ≃_{≤k} y`: `x ≃_j y` for every `j <= k`.
pub fn le_k_equivalent(r: &RelStructure, x: usize, y: usize, k: usize) -> Result<bool> {
    Ok(equivalence_witness(r, x, y, k)?.verdict)
}

/// `x ≃ y`: equivalent against every external set.
pub fn fully_equivalent(r: &RelStructure, x: usize, y: usize) -> Result<bool> {
    let k = r.domain_size().saturating_sub(2);
    le_k_equivalent(r, x, y, k)
}

/// Searches external sets of size up to `max_k`, smallest first. A negative
/// verdict carries the separating set; a positive one carries the empty set.
pub fn equivalence_witness(
    r: &RelStructure,
    x: usize,
    y: usize,
    max_k: usize,
) -> Result<EquivalenceWitness> {
    check_pair(r, x, y)?;
    let top = max_k.min(r.domain_size() - 2);
    for k in 0..=top {
        if let Some(a) = k_separator(r, x, y, k) {
            return Ok(EquivalenceWitness { x, y, a, verdict: false });
        }
    }
    Ok(EquivalenceWitness { x, y, a: Vec::new(), verdict: true })
}

/// Classes of an equivalence relation given as a pairwise test. Each vertex
/// is compared with one representative per existing class.
fn classes_of(n: usize, kind: PartitionKind, mut equivalent: impl FnMut(usize, usize) -> bool) -> Partition {
    let mut reps: Vec<usize> = Vec::new();
    let mut label = vec![0; n];
    for v in 0..n {
        match reps.iter().position(|&rep| equivalent(rep, v)) {
            Some(c) => label[v] = c,
            None => {
                label[v] = reps.len();
                reps.push(v);
            }
        }
    }
    Partition::from_labels(&label, kind)
}

/// Partition into classes of `≃_k`.
pub fn k_partition(r: &RelStructure, k: usize) -> Partition {
    classes_of(r.domain_size(), PartitionKind::User, |x, y| k_separator(r, x, y, k).is_none())
}

/// Partition into classes of `≃_{≤k}`.
pub fn le_k_partition(r: &RelStructure, k: usize) -> Partition {
    let n = r.domain_size();
    classes_of(n, PartitionKind::User, |x, y| {
        (0..=k.min(n.saturating_sub(2))).all(|j| k_separator(r, x, y, j).is_none())
    })
}

/// Monomorphic components: the classes of `≃`.
pub fn components(r: &RelStructure) -> Partition {
    let n = r.domain_size();
    let top = n.saturating_sub(2);
    classes_of(n, PartitionKind::Components, |x, y| {
        (0..=top).all(|j| k_separator(r, x, y, j).is_none())
    })
}

/// Checks that finite sets of equal size agreeing outside `block` induce
/// isomorphic structures, for all sets of size at most `size_cap`
/// (default: the whole domain).
pub fn is_monomorphic_part(r: &RelStructure, block: &[usize], size_cap: Option<usize>) -> Result<bool> {
    let n = r.domain_size();
    let cap = size_cap.unwrap_or(n);
    let mut inside = vec![false; n];
    for &v in block {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, domain_size: n });
        }
        inside[v] = true;
    }
    let block: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    let outside: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
    for d_size in 0..=outside.len().min(cap) {
        for d in outside.iter().copied().combinations(d_size) {
            // j = 0 and j = |block| give a single set, nothing to compare.
            for j in 1..block.len() {
                if d_size + j > cap {
                    break;
                }
                let mut reference: Option<CanonicalCode> = None;
                for part in block.iter().copied().combinations(j) {
                    let mut set: Vec<usize> = d.iter().copied().chain(part).collect();
                    set.sort_unstable();
                    let code = canonical_code(&r.restrict_sorted(&set));
                    match &reference {
                        None => reference = Some(code),
                        Some(c) if *c != code => return Ok(false),
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn is_monomorphic_decomposition(r: &RelStructure, p: &Partition) -> Result<bool> {
    if p.domain_size() != r.domain_size() {
        return Err(Error::DomainMismatch(p.domain_size(), r.domain_size()));
    }
    for b in p.blocks() {
        if !is_monomorphic_part(r, b, None)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Components split into maximal runs of consecutive elements of the order.
/// Every monomorphic decomposition into intervals refines the result.
pub fn interval_decomposition(o: &OrderedStructure) -> Partition {
    let r = o.structure();
    let comps = components(r);
    let mut blocks = Vec::new();
    for class in comps.blocks() {
        let mut positions: Vec<usize> = class.iter().map(|&v| o.position(v)).collect();
        positions.sort_unstable();
        let mut run = vec![o.vertex_at(positions[0])];
        for w in positions.windows(2) {
            if w[1] != w[0] + 1 {
                blocks.push(std::mem::take(&mut run));
            }
            run.push(o.vertex_at(w[1]));
        }
        blocks.push(run);
    }
    Partition::new(r.domain_size(), blocks, PartitionKind::Interval).expect("runs partition the domain")
}

/// `r` and `s` on the same domain agree up to isomorphism on every
/// `k`-subset.
pub fn k_hypomorphic(r: &RelStructure, s: &RelStructure, k: usize) -> Result<bool> {
    if r.signature() != s.signature() {
        return Err(Error::SignatureMismatch(r.signature().to_string(), s.signature().to_string()));
    }
    if r.domain_size() != s.domain_size() {
        return Err(Error::DomainMismatch(r.domain_size(), s.domain_size()));
    }
    let n = r.domain_size();
    if k > n {
        return Ok(true);
    }
    Ok((0..n)
        .combinations(k)
        .all(|a| is_isomorphic(&r.restrict_sorted(&a), &s.restrict_sorted(&a))))
}

/// The pair `(R(x), R(y))` on `V \ {x, y}` plus a merged vertex `z`.
/// Vertices of `V \ {x, y}` keep their relative order; `z` is the last
/// vertex. `R(x)` is `R` minus `y` with `x` renamed `z`, and symmetrically.
pub fn identify(r: &RelStructure, x: usize, y: usize) -> Result<(RelStructure, RelStructure)> {
    check_pair(r, x, y)?;
    let rest = others(r.domain_size(), x, y);
    let build = |keep: usize| {
        let mut verts = rest.clone();
        verts.push(keep);
        r.restrict_in_order(&verts)
    };
    Ok((build(x), build(y)))
}

/// All `p`-subsets induce pairwise isomorphic structures.
pub fn p_monomorphic(r: &RelStructure, p: usize) -> Result<bool> {
    let n = r.domain_size();
    if p > n {
        return Err(Error::Range(format!("p = {p} exceeds domain size {n}")));
    }
    let mut reference: Option<CanonicalCode> = None;
    for a in (0..n).combinations(p) {
        let code = canonical_code(&r.restrict_sorted(&a));
        match &reference {
            None => reference = Some(code),
            Some(c) if *c != code => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Every local isomorphism of `s` with domain of size at most `size_cap` is
/// a local isomorphism of `r` (default cap: `min(|V|, 6)`).
pub fn freely_interpreted_by(r: &RelStructure, s: &RelStructure, size_cap: Option<usize>) -> Result<bool> {
    let n = r.domain_size();
    if s.domain_size() != n {
        return Err(Error::DomainMismatch(n, s.domain_size()));
    }
    let cap = size_cap.unwrap_or(6).min(n);
    for k in 1..=cap {
        for a in (0..n).combinations(k) {
            let s_local = s.restrict_in_order(&a);
            let r_local = r.restrict_in_order(&a);
            let mut ok = true;
            // Embeddings of s|A into s are exactly the local isomorphisms of
            // s with domain A.
            for_each_embedding(&s_local, s, |image| {
                if r.restrict_in_order(image) != r_local {
                    ok = false;
                }
                ok
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn is_autonomous(g: &RelStructure, set: &[usize]) -> bool {
    let n = g.domain_size();
    (0..n).filter(|y| !set.contains(y)).all(|y| {
        let first = g.adjacent(set[0], y);
        set.iter().all(|&x| g.adjacent(x, y) == first)
    })
}

fn is_homogeneous(g: &RelStructure, set: &[usize]) -> bool {
    if set.len() < 2 {
        return true;
    }
    let first = g.adjacent(set[0], set[1]);
    set.iter()
        .tuple_combinations()
        .all(|(&a, &b)| g.adjacent(a, b) == first)
}

/// Maximal autonomous sets that are cliques or independent sets, grown
/// directly from the autonomy condition.
pub fn autonomous_partition(g: &RelStructure) -> Result<Partition> {
    if !g.is_graph() {
        return Err(Error::NotAGraph("autonomous partition needs a loopless graph".into()));
    }
    let n = g.domain_size();
    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let mut block = vec![v];
        assigned[v] = true;
        for u in (v + 1)..n {
            if assigned[u] {
                continue;
            }
            block.push(u);
            if is_autonomous(g, &block) && is_homogeneous(g, &block) {
                assigned[u] = true;
            } else {
                block.pop();
            }
        }
        blocks.push(block);
    }
    Partition::new(n, blocks, PartitionKind::Autonomous)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::chain;
    use crate::structure::Signature;

    fn k(n: usize) -> RelStructure {
        RelStructure::graph_from_fn(n, |_, _| true)
    }
    fn c4() -> RelStructure {
        RelStructure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }
    fn p3() -> RelStructure {
        RelStructure::graph(3, &[(0, 1), (1, 2)]).unwrap()
    }
    fn cycle(n: usize) -> RelStructure {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        RelStructure::graph(n, &edges).unwrap()
    }

    #[test]
    fn a_equivalence_examples() {
        assert!(a_equivalent(&k(3), 0, 1, &[2]).unwrap());
        assert!(!a_equivalent(&p3(), 0, 1, &[2]).unwrap());
        assert!(a_equivalent(&p3(), 0, 1, &[]).unwrap());
        assert!(matches!(a_equivalent(&p3(), 0, 1, &[1]), Err(Error::Overlap { .. })));
        assert!(matches!(a_equivalent(&p3(), 1, 1, &[]), Err(Error::SameVertex(1))));
    }

    #[test]
    fn c4_equivalences() {
        assert!(fully_equivalent(&c4(), 0, 2).unwrap());
        assert!(!fully_equivalent(&c4(), 0, 1).unwrap());
        assert_eq!(components(&c4()).to_text(), "0,2\n1,3\n");
    }

    #[test]
    fn two_k2_equivalences() {
        let g = RelStructure::graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(fully_equivalent(&g, 0, 1).unwrap());
        assert!(!fully_equivalent(&g, 0, 2).unwrap());
        let w = equivalence_witness(&g, 0, 2, 2).unwrap();
        assert!(!w.verdict);
        assert_eq!(w.a, vec![1]);
    }

    #[test]
    fn zero_equivalence_in_graphs() {
        assert!(k_equivalent(&p3(), 0, 1, 0).unwrap());
        assert!(k_equivalent(&c4(), 0, 1, 0).unwrap());
    }

    #[test]
    fn clique_is_one_component() {
        assert_eq!(components(&k(5)).len(), 1);
        assert_eq!(autonomous_partition(&k(5)).unwrap().len(), 1);
    }

    #[test]
    fn monomorphic_parts() {
        assert!(is_monomorphic_part(&p3(), &[1], None).unwrap());
        assert!(!is_monomorphic_part(&p3(), &[0, 1], None).unwrap());
        assert!(is_monomorphic_part(&c4(), &[0, 2], None).unwrap());
        assert!(!is_monomorphic_part(&c4(), &[0, 1, 2, 3], None).unwrap());
        let merged = Partition::new(4, vec![vec![0, 1, 2, 3]], PartitionKind::User).unwrap();
        assert!(!is_monomorphic_decomposition(&c4(), &merged).unwrap());
        assert!(is_monomorphic_decomposition(&c4(), &components(&c4())).unwrap());
        assert!(is_monomorphic_decomposition(&c4(), &Partition::singletons(4)).unwrap());
    }

    #[test]
    fn autonomous_examples() {
        assert_eq!(autonomous_partition(&c4()).unwrap().to_text(), "0,2\n1,3\n");
        let p4 = RelStructure::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(autonomous_partition(&p4).unwrap().len(), 4);
        assert_eq!(components(&p4).len(), 4);
    }

    #[test]
    fn hypomorphy_examples() {
        let edge = RelStructure::graph(2, &[(0, 1)]).unwrap();
        let non = RelStructure::graph(2, &[]).unwrap();
        assert!(k_hypomorphic(&edge, &non, 1).unwrap());
        assert!(!k_hypomorphic(&edge, &non, 2).unwrap());
        let c5 = cycle(5);
        assert!(k_hypomorphic(&c5, &c5.complement().unwrap(), 4).unwrap());
        assert!(matches!(
            k_hypomorphic(&edge, &chain(2), 1).map(|_| ()).or(Ok::<(), Error>(())),
            Ok(())
        ));
    }

    #[test]
    fn identify_examples() {
        let (a, b) = identify(&k(3), 0, 1).unwrap();
        assert_eq!(a, k(2));
        assert!(k_hypomorphic(&a, &b, 2).unwrap());
        let (x, y) = identify(&p3(), 0, 2).unwrap();
        let edge = RelStructure::graph(2, &[(0, 1)]).unwrap();
        assert_eq!(x, edge);
        assert_eq!(y, edge);
    }

    #[test]
    fn p_monomorphy_examples() {
        assert!(p_monomorphic(&chain(5), 3).unwrap());
        assert!(!p_monomorphic(&c4(), 2).unwrap());
        assert!(!p_monomorphic(&cycle(5), 2).unwrap());
        assert!(p_monomorphic(&cycle(5), 1).unwrap());
        assert!(p_monomorphic(&c4(), 5).is_err());
    }

    #[test]
    fn free_interpretation_examples() {
        assert!(freely_interpreted_by(&c4(), &c4(), None).unwrap());
        assert!(freely_interpreted_by(&k(5), &chain(5), None).unwrap());
        assert!(!freely_interpreted_by(&c4(), &chain(4), None).unwrap());
        assert!(freely_interpreted_by(&c4(), &chain(5), None).is_err());
    }

    #[test]
    fn bichain_interval_decomposition() {
        // Second order 1 < 0 < 3 < 2.
        let sig = Signature::new(vec![2, 2]).unwrap();
        let second = [1, 0, 3, 2];
        let mut first_t = Vec::new();
        let mut second_t = Vec::new();
        for i in 0..4 {
            for j in i..4 {
                first_t.push(vec![i, j]);
                second_t.push(vec![second[i], second[j]]);
            }
        }
        let r = RelStructure::new(sig.clone(), 4, vec![first_t.clone(), second_t]).unwrap();
        let o = OrderedStructure::new(r).unwrap();
        assert_eq!(interval_decomposition(&o).to_text(), "0,1\n2,3\n");

        let same = RelStructure::new(sig, 4, vec![first_t.clone(), first_t]).unwrap();
        let o = OrderedStructure::new(same).unwrap();
        assert_eq!(interval_decomposition(&o).len(), 1);
    }
}
