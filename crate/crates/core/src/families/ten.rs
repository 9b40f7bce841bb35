//! The ten graphs on `ℓ × {0, 1}` avoiding finite monomorphic
//! decompositions, with `A = {(n,0)}` and `B = {(n,1)}`.

use crate::error::{Error, Result};
use crate::structure::RelStructure;

#[derive(Clone, Copy)]
enum Cross {
    Equal,
    AtMost,
    Different,
}

/// Cross rule between `A` and `B` and whether `A`, `B` are cliques.
fn rule(i: usize) -> Option<(Cross, bool, bool)> {
    use Cross::*;
    Some(match i {
        1 => (Equal, false, false),
        2 => (AtMost, false, false),
        3 => (Different, false, false),
        4 => (Equal, true, false),
        5 => (AtMost, true, false),
        6 => (AtMost, false, true),
        7 => (Different, true, false),
        8 => (Equal, true, true),
        9 => (AtMost, true, true),
        10 => (Different, true, true),
        _ => return None,
    })
}

/// Prefix of length `len` of `G_i`. Vertex `(n, b)` is `2n + b`.
pub fn ten_graph(i: usize, len: usize) -> Result<RelStructure> {
    let (cross, a_clique, b_clique) =
        rule(i).ok_or_else(|| Error::Range(format!("ten graphs are indexed 1..=10, got {i}")))?;
    if len == 0 {
        return Err(Error::Range("prefix length must be at least 1".into()));
    }
    Ok(RelStructure::graph_from_fn(2 * len, |u, v| {
        let (n, bu) = (u / 2, u % 2);
        let (m, bv) = (v / 2, v % 2);
        match (bu, bv) {
            (0, 0) => a_clique,
            (1, 1) => b_clique,
            _ => {
                // Orient as (a, 0) against (b, 1).
                let (a, b) = if bu == 0 { (n, m) } else { (m, n) };
                match cross {
                    Cross::Equal => a == b,
                    Cross::AtMost => a <= b,
                    Cross::Different => a != b,
                }
            }
        }
    }))
}
