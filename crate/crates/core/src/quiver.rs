//! Quivers, paths, and the longest-path statistics that drive every
//! homological formula in the crate.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;

/// Dense vertex index, `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Dense arrow index, `0..arrow_count`, in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

impl ArrowId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: ArrowId,
    pub label: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite directed multigraph with named vertices and labelled arrows.
///
/// Immutable once built. The longest outgoing and incoming path lengths are
/// computed at construction so that the homological formulas are table
/// lookups.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
    /// `counts[j][i]` = number of arrows `i -> j`.
    counts: Vec<Vec<u64>>,
    longest_out: Vec<ExtNat>,
    longest_in: Vec<ExtNat>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Validates raw quiver data. Arrow endpoints are 0-based vertex indices.
    pub fn new<S, L>(vertex_names: Vec<S>, arrows: Vec<(L, usize, usize)>) -> Result<Self>
    where
        S: Into<String>,
        L: Into<String>,
    {
        let vertex_names: Vec<String> = vertex_names.into_iter().map(Into::into).collect();
        let n = vertex_names.len();
        if n == 0 {
            return Err(Error::EmptyQuiver);
        }
        let mut seen = HashSet::new();
        for name in &vertex_names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }

        let mut labels = HashSet::new();
        let mut built = Vec::with_capacity(arrows.len());
        for (k, (label, source, target)) in arrows.into_iter().enumerate() {
            let label = label.into();
            for endpoint in [source, target] {
                if endpoint >= n {
                    return Err(Error::DanglingEndpoint {
                        label,
                        index: endpoint,
                        count: n,
                    });
                }
            }
            if !labels.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            built.push(Arrow {
                id: ArrowId(k),
                label,
                source: VertexId(source),
                target: VertexId(target),
            });
        }

        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut counts = vec![vec![0u64; n]; n];
        for a in &built {
            outgoing[a.source.0].push(a.id);
            incoming[a.target.0].push(a.id);
            counts[a.target.0][a.source.0] += 1;
        }

        let forward: Vec<Vec<usize>> = outgoing
            .iter()
            .map(|ids| ids.iter().map(|id| built[id.0].target.0).collect())
            .collect();
        let backward: Vec<Vec<usize>> = incoming
            .iter()
            .map(|ids| ids.iter().map(|id| built[id.0].source.0).collect())
            .collect();
        let longest_out = longest_paths(&forward);
        let longest_in = longest_paths(&backward);

        Ok(Quiver {
            vertex_names,
            arrows: built,
            outgoing,
            incoming,
            counts,
            longest_out,
            longest_in,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0]
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.label == label)
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0]
    }

    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v.0]
    }

    /// Number of arrows `from -> to`.
    pub fn arrow_count(&self, from: VertexId, to: VertexId) -> u64 {
        self.counts[to.0][from.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.outgoing[v.0].is_empty()
    }

    /// Supremum of the lengths of paths starting at `v`; infinite exactly
    /// when `v` is cyclebound.
    pub fn c_out(&self, v: VertexId) -> ExtNat {
        self.longest_out[v.0]
    }

    /// Supremum of the lengths of paths ending at `v`; infinite exactly when
    /// `v` is reachable from an oriented cycle.
    pub fn b_in(&self, v: VertexId) -> ExtNat {
        self.longest_in[v.0]
    }

    pub fn is_cyclebound(&self, v: VertexId) -> bool {
        !self.longest_out[v.0].is_finite()
    }

    /// Vertices from which a vertex on an oriented cycle is reachable.
    pub fn cyclebound_set(&self) -> BTreeSet<VertexId> {
        self.vertices().filter(|&v| self.is_cyclebound(v)).collect()
    }

    /// All paths of length at most `max_len` starting at `from`, ordered by
    /// length and then by arrow-id sequence.
    pub fn enumerate_paths(&self, from: VertexId, max_len: usize) -> Vec<Path> {
        let mut all = vec![Path::trivial(from)];
        let mut frontier = vec![Path::trivial(from)];
        for _ in 0..max_len {
            let mut next: Vec<Path> = frontier
                .iter()
                .flat_map(|p| {
                    self.outgoing(p.target())
                        .iter()
                        .map(move |&a| p.then(self, a).expect("outgoing arrow composes"))
                })
                .collect();
            if next.is_empty() {
                break;
            }
            next.sort();
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// Composes a path from arrows given in application order.
    pub fn path_from_arrows(&self, source: VertexId, arrows: &[ArrowId]) -> Result<Path> {
        let mut p = Path::trivial(source);
        for &a in arrows {
            p = p.then(self, a)?;
        }
        Ok(p)
    }

    /// Writes a path right-to-left, `a9*a8*b7`; a trivial path is `e(<vertex>)`.
    pub fn format_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e({})", self.vertex_name(p.source()));
        }
        p.arrows()
            .iter()
            .rev()
            .map(|&a| self.arrow(a).label.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Longest path length from each vertex along `adj`, with `Inf` for every
/// vertex that can reach a nontrivial strongly connected component or a loop.
fn longest_paths(adj: &[Vec<usize>]) -> Vec<ExtNat> {
    let comps = tarjan_scc(adj);
    let n = adj.len();
    let mut comp_of = vec![0usize; n];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    // Tarjan emits components in reverse topological order, so every
    // successor component is finished before its predecessors.
    let mut value = vec![ExtNat::ZERO; comps.len()];
    for (c, members) in comps.iter().enumerate() {
        let cyclic = members.len() > 1 || adj[members[0]].contains(&members[0]);
        if cyclic {
            value[c] = ExtNat::Inf;
            continue;
        }
        let v = members[0];
        value[c] = adj[v]
            .iter()
            .map(|&w| value[comp_of[w]] + 1)
            .max()
            .unwrap_or(ExtNat::ZERO);
    }
    (0..n).map(|v| value[comp_of[v]]).collect()
}

/// Iterative Tarjan; components come out sinks first.
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut next)) = work.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}

/// A path in `KQ`: arrows stored in application order, so `arrows()[0]`
/// leaves the source. Written right-to-left, `p'p` means `p'` after `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `alpha * self`: follows this path by one more arrow.
    pub fn then(&self, q: &Quiver, alpha: ArrowId) -> Result<Path> {
        let arrow = q.arrow(alpha);
        if arrow.source != self.target {
            return Err(Error::NotComposable(format!(
                "arrow `{}` starts at {} but the path ends at {}",
                arrow.label,
                q.vertex_name(arrow.source),
                q.vertex_name(self.target)
            )));
        }
        let mut arrows = self.arrows.clone();
        arrows.push(alpha);
        Ok(Path {
            source: self.source,
            target: arrow.target,
            arrows,
        })
    }

    /// `other * self` (first `self`, then `other`).
    pub fn compose(&self, other: &Path) -> Result<Path> {
        if other.source != self.target {
            return Err(Error::NotComposable(format!(
                "path ending at vertex {} cannot be followed by a path starting at vertex {}",
                self.target.0, other.source.0
            )));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Ok(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// The initial subpath consisting of the first `len` arrows.
    pub fn prefix(&self, q: &Quiver, len: usize) -> Path {
        let arrows = self.arrows[..len].to_vec();
        let target = arrows.last().map_or(self.source, |&a| q.arrow(a).target);
        Path {
            source: self.source,
            target,
            arrows,
        }
    }

    /// True iff `other = p' * self` for some path `p'`.
    pub fn is_initial_subpath_of(&self, other: &Path) -> bool {
        self.source == other.source && other.arrows.starts_with(&self.arrows)
    }
}

pub fn is_initial_subpath(p: &Path, q: &Path) -> bool {
    p.is_initial_subpath_of(q)
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.arrows.cmp(&other.arrows))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e[{}]", self.source.0);
        }
        let parts: Vec<String> = self.arrows.iter().rev().map(|a| format!("#{}", a.0)).collect();
        f.write_str(&parts.join("*"))
    }
}
