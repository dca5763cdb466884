//! Deliberately naive reference computations, used only to cross-check the
//! efficient ones.

use std::collections::BTreeSet;

use crate::algebra::TruncatedAlgebra;
use crate::extnat::ExtNat;
use crate::modules::SemisimpleSequence;
use crate::quiver::{ArrowId, Quiver, VertexId};

/// Longest path from `v` by breadth-first reachability: a path of length
/// `n` repeats a vertex, so it exists iff paths are unbounded.
pub fn longest_out(q: &Quiver, v: VertexId) -> ExtNat {
    longest(q, v, |a| (q.arrow(a).source, q.arrow(a).target))
}

/// Longest path ending at `v`.
pub fn longest_in(q: &Quiver, v: VertexId) -> ExtNat {
    longest(q, v, |a| (q.arrow(a).target, q.arrow(a).source))
}

fn longest(q: &Quiver, v: VertexId, ends: impl Fn(ArrowId) -> (VertexId, VertexId)) -> ExtNat {
    let n = q.vertex_count();
    let mut frontier: BTreeSet<VertexId> = BTreeSet::from([v]);
    for k in 0..n {
        let next: BTreeSet<VertexId> = q
            .arrows()
            .iter()
            .map(|a| ends(a.id))
            .filter(|(from, _)| frontier.contains(from))
            .map(|(_, to)| to)
            .collect();
        if next.is_empty() {
            return ExtNat::Fin(k as u64);
        }
        frontier = next;
    }
    ExtNat::Inf
}

/// Every path from `v` of length at most `max_len`, as arrow sequences in
/// application order, found by scanning the whole arrow list at each step.
pub fn paths_from(q: &Quiver, v: VertexId, max_len: usize) -> Vec<Vec<ArrowId>> {
    let mut out = vec![Vec::new()];
    let mut level: Vec<(VertexId, Vec<ArrowId>)> = vec![(v, Vec::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (at, p) in &level {
            for a in q.arrows() {
                if a.source == *at {
                    let mut ext = p.clone();
                    ext.push(a.id);
                    next.push((a.target, ext));
                }
            }
        }
        out.extend(next.iter().map(|(_, p)| p.clone()));
        level = next;
    }
    out
}

/// Whether some set of paths in the projective cover of `s_0`, closed under
/// initial subpaths, has exactly `s(i, l)` members of length `l` ending at
/// `i`. Exhaustive over subsets of each layer, so only for small inputs.
pub fn realizable_exhaustive(alg: &TruncatedAlgebra, s: &SemisimpleSequence) -> bool {
    let q = alg.quiver();
    let mut roots = Vec::new();
    for i in 0..q.vertex_count() {
        for _ in 0..s.get(i, 0) {
            roots.push(VertexId(i));
        }
    }
    // A chosen layer is a list of terminal vertices, one per chosen path;
    // identical slots stay distinct paths because they are separate entries.
    search(alg, s, 1, roots)
}

fn search(alg: &TruncatedAlgebra, s: &SemisimpleSequence, layer: usize, chosen: Vec<VertexId>) -> bool {
    if layer > alg.bound() {
        return true;
    }
    let q = alg.quiver();
    let candidates: Vec<VertexId> = chosen
        .iter()
        .flat_map(|&t| q.arrows().iter().filter(move |a| a.source == t).map(|a| a.target))
        .collect();
    assert!(candidates.len() <= 20, "exhaustive search limited to 20 candidates per layer");
    let wanted: Vec<u64> = (0..q.vertex_count()).map(|i| s.get(i, layer)).collect();
    for mask in 0u32..(1 << candidates.len()) {
        let mut counts = vec![0u64; q.vertex_count()];
        let mut picked = Vec::new();
        for (k, &v) in candidates.iter().enumerate() {
            if mask & (1 << k) != 0 {
                counts[v.index()] += 1;
                picked.push(v);
            }
        }
        if counts == wanted && search(alg, s, layer + 1, picked) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn longest_paths_on_small_quivers() {
        let q = Quiver::new(vec!["1", "2", "3"], vec![("a", 0, 1), ("b", 1, 2), ("x", 2, 2)]).unwrap();
        assert_eq!(longest_out(&q, VertexId(0)), ExtNat::Inf);
        assert_eq!(longest_in(&q, VertexId(0)), ExtNat::Fin(0));
        assert_eq!(longest_in(&q, VertexId(1)), ExtNat::Fin(1));
        assert_eq!(paths_from(&q, VertexId(0), 2).len(), 3);
    }

    #[test]
    fn exhaustive_realizability() {
        let q = Quiver::new(vec!["1", "2"], vec![("a", 0, 1)]).unwrap();
        let alg = TruncatedAlgebra::new("t", q, 1).unwrap();
        let ok = SemisimpleSequence::from_rows(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let bad = SemisimpleSequence::from_rows(vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert!(realizable_exhaustive(&alg, &ok));
        assert!(!realizable_exhaustive(&alg, &bad));
    }
}
