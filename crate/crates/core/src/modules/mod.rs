//! Monomially presented modules `P/C`, their skeletons and syzygies, and
//! tree modules.
//!
//! A module is given by a projective cover `P = (+)_r Lambda z_r` (the
//! *slots*) and a set of positive-length paths in `P` generating `C`. For
//! such presentations the relation-free paths form a skeleton, and the
//! first syzygy is the direct sum of the cyclic ideals generated by the
//! critical paths of that skeleton.

mod graph;
mod sequence;

use std::collections::{BTreeMap, BTreeSet};

pub use graph::{EdgeStyle, GraphEdge, GraphNode, LayeredGraph};
pub use sequence::SemisimpleSequence;

use crate::algebra::TruncatedAlgebra;
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::quiver::{Path, VertexId};

/// A path `p z_r` in the projective cover: `path` starts at the vertex of
/// slot `slot`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotPath {
    pub slot: usize,
    pub path: Path,
}

impl SlotPath {
    pub fn new(slot: usize, path: Path) -> Self {
        SlotPath { slot, path }
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_trivial()
    }

    pub fn target(&self) -> VertexId {
        self.path.target()
    }
}

/// A set of paths in a projective cover, closed under initial subpaths,
/// whose length-`l` members give a basis of `J^l M / J^{l+1} M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    slots: Vec<VertexId>,
    paths: BTreeSet<SlotPath>,
}

impl Skeleton {
    pub fn new(slots: Vec<VertexId>, paths: BTreeSet<SlotPath>) -> Self {
        Skeleton { slots, paths }
    }

    pub fn slots(&self) -> &[VertexId] {
        &self.slots
    }

    pub fn paths(&self) -> &BTreeSet<SlotPath> {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn contains(&self, p: &SlotPath) -> bool {
        self.paths.contains(p)
    }

    pub fn is_prefix_closed(&self, alg: &TruncatedAlgebra) -> bool {
        self.paths.iter().all(|sp| {
            (0..sp.len()).all(|k| {
                self.paths
                    .contains(&SlotPath::new(sp.slot, sp.path.prefix(alg.quiver(), k)))
            })
        })
    }

    /// Paths `alpha p` outside the skeleton with `p` inside and length at
    /// most `L`, in canonical order.
    pub fn critical_paths(&self, alg: &TruncatedAlgebra) -> Vec<SlotPath> {
        let quiver = alg.quiver();
        let mut out = BTreeSet::new();
        for sp in &self.paths {
            if sp.len() >= alg.bound() {
                continue;
            }
            for &alpha in quiver.outgoing(sp.target()) {
                let next = SlotPath::new(sp.slot, sp.path.then(quiver, alpha).expect("outgoing arrow"));
                if !self.paths.contains(&next) {
                    out.insert(next);
                }
            }
        }
        out.into_iter().collect()
    }

    /// `s(i, l)` = number of skeleton paths of length `l` ending at `e_i`.
    pub fn layering(&self, alg: &TruncatedAlgebra) -> SemisimpleSequence {
        let mut s = SemisimpleSequence::zeros(alg.bound() + 1, alg.vertex_count());
        for sp in &self.paths {
            s.add_to(sp.target().index(), sp.len(), 1);
        }
        s
    }

    /// Paths of slot `slot` that are maximal in the initial-subpath order.
    pub fn maximal_paths(&self, slot: usize) -> Vec<Path> {
        let own: Vec<&SlotPath> = self.paths.iter().filter(|sp| sp.slot == slot).collect();
        own.iter()
            .filter(|sp| {
                !own.iter()
                    .any(|other| other.len() > sp.len() && sp.path.is_initial_subpath_of(&other.path))
            })
            .map(|sp| sp.path.clone())
            .collect()
    }

    /// Projective dimension of any module with this skeleton.
    pub fn pdim(&self, alg: &TruncatedAlgebra) -> ExtNat {
        pdim_from_critical(alg, &self.critical_paths(alg))
    }
}

fn pdim_from_critical(alg: &TruncatedAlgebra, critical: &[SlotPath]) -> ExtNat {
    critical
        .iter()
        .map(|q| alg.pdim_cyclic_shape(q.target(), q.len()) + 1)
        .max()
        .unwrap_or(ExtNat::ZERO)
}

/// `P / C` with `C` generated by paths of positive length.
///
/// Relations are kept reduced: none is an initial subpath of another in the
/// same slot, so they are exactly the critical paths of the canonical
/// skeleton.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialModule {
    slots: Vec<VertexId>,
    relations: Vec<SlotPath>,
}

impl MonomialModule {
    pub fn new(alg: &TruncatedAlgebra, slots: Vec<VertexId>, relations: Vec<SlotPath>) -> Result<Self> {
        let n = alg.vertex_count();
        if let Some(v) = slots.iter().find(|v| v.index() >= n) {
            return Err(Error::InvalidModule(format!("slot vertex {} out of range", v.index())));
        }
        for r in &relations {
            let Some(&root) = slots.get(r.slot) else {
                return Err(Error::InvalidModule(format!("relation refers to missing slot {}", r.slot + 1)));
            };
            if r.path.source() != root {
                return Err(Error::InvalidModule(format!(
                    "relation {} in slot {} does not start at the slot vertex {}",
                    alg.quiver().format_path(&r.path),
                    r.slot + 1,
                    alg.quiver().vertex_name(root)
                )));
            }
            if r.path.is_trivial() {
                return Err(Error::InvalidModule(format!(
                    "relation of length 0 in slot {} kills the whole summand",
                    r.slot + 1
                )));
            }
            if r.len() > alg.bound() {
                return Err(Error::PathTooLong {
                    length: r.len(),
                    bound: alg.bound(),
                });
            }
        }
        Ok(MonomialModule {
            slots,
            relations: reduce(relations),
        })
    }

    /// `(+)_r Lambda z_r` with no relations.
    pub fn projective(slots: Vec<VertexId>) -> Self {
        MonomialModule {
            slots,
            relations: Vec::new(),
        }
    }

    /// The simple module at `v`.
    pub fn simple(alg: &TruncatedAlgebra, v: VertexId) -> Self {
        let quiver = alg.quiver();
        let relations = quiver
            .outgoing(v)
            .iter()
            .map(|&a| SlotPath::new(0, Path::trivial(v).then(quiver, a).expect("outgoing arrow")))
            .collect();
        MonomialModule {
            slots: vec![v],
            relations: reduce(relations),
        }
    }

    /// `Lambda q`, presented as a tree module rooted at the target of `q`.
    pub fn cyclic(alg: &TruncatedAlgebra, q: &Path) -> Result<Self> {
        let (_, syzygy) = alg.branches_and_syzygy_of_cyclic(q)?;
        let root = q.target();
        MonomialModule::new(
            alg,
            vec![root],
            syzygy.into_iter().map(|p| SlotPath::new(0, p)).collect(),
        )
    }

    pub fn slots(&self) -> &[VertexId] {
        &self.slots
    }

    pub fn relations(&self) -> &[SlotPath] {
        &self.relations
    }

    /// Direct sum; slots of `other` are renumbered after ours.
    pub fn direct_sum(&self, other: &MonomialModule) -> MonomialModule {
        let shift = self.slots.len();
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        let mut relations = self.relations.clone();
        relations.extend(
            other
                .relations
                .iter()
                .map(|r| SlotPath::new(r.slot + shift, r.path.clone())),
        );
        relations.sort();
        MonomialModule { slots, relations }
    }

    /// All slot paths of length at most `L` containing no relation as an
    /// initial subpath.
    pub fn skeleton(&self, alg: &TruncatedAlgebra) -> Skeleton {
        let quiver = alg.quiver();
        let mut paths = BTreeSet::new();
        for (slot, &root) in self.slots.iter().enumerate() {
            let mut frontier = vec![Path::trivial(root)];
            while let Some(p) = frontier.pop() {
                let here = SlotPath::new(slot, p);
                if self.relations.contains(&here) {
                    continue;
                }
                if here.len() < alg.bound() {
                    for &a in quiver.outgoing(here.target()) {
                        frontier.push(here.path.then(quiver, a).expect("outgoing arrow"));
                    }
                }
                paths.insert(here);
            }
        }
        Skeleton::new(self.slots.clone(), paths)
    }

    pub fn dimension(&self, alg: &TruncatedAlgebra) -> usize {
        self.skeleton(alg).len()
    }

    pub fn sigma_critical(&self, alg: &TruncatedAlgebra, sigma: &Skeleton) -> Vec<SlotPath> {
        debug_assert_eq!(sigma.slots(), self.slots.as_slice());
        sigma.critical_paths(alg)
    }

    /// Generators of the cyclic summands of the first syzygy.
    pub fn syzygy(&self, alg: &TruncatedAlgebra) -> Vec<SlotPath> {
        self.skeleton(alg).critical_paths(alg)
    }

    pub fn pdim(&self, alg: &TruncatedAlgebra) -> ExtNat {
        pdim_from_critical(alg, &self.syzygy(alg))
    }

    /// The first `steps` syzygies as multisets of cyclic summands. A summand
    /// `Lambda q` is recorded by the terminal vertex and length of `q`,
    /// which determine it up to isomorphism.
    pub fn syzygy_iterates(&self, alg: &TruncatedAlgebra, steps: usize) -> Result<Vec<BTreeMap<(VertexId, usize), u64>>> {
        let mut current: BTreeMap<(VertexId, usize), u64> = BTreeMap::new();
        for q in self.syzygy(alg) {
            *current.entry((q.target(), q.len())).or_insert(0) += 1;
        }
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            let mut next: BTreeMap<(VertexId, usize), u64> = BTreeMap::new();
            for (&(target, len), &mult) in &current {
                for p in alg.branches_and_syzygy_of_shape(target, len).1 {
                    let slot = next.entry((p.target(), p.len())).or_insert(0);
                    *slot = slot.checked_add(mult).ok_or(Error::Overflow)?;
                }
            }
            out.push(std::mem::replace(&mut current, next));
        }
        Ok(out)
    }

    pub fn radical_layering(&self, alg: &TruncatedAlgebra) -> SemisimpleSequence {
        self.skeleton(alg).layering(alg)
    }

    /// One tree module per slot with the same skeleton.
    pub fn treeify(&self, alg: &TruncatedAlgebra) -> Vec<TreeModule> {
        let sigma = self.skeleton(alg);
        self.slots
            .iter()
            .enumerate()
            .map(|(slot, &root)| TreeModule {
                root,
                branches: sigma.maximal_paths(slot),
            })
            .collect()
    }

    pub fn layered_graph(&self, alg: &TruncatedAlgebra, with_critical: bool) -> LayeredGraph {
        let sigma = self.skeleton(alg);
        LayeredGraph::from_skeleton(alg, &sigma, with_critical)
    }
}

/// Drops duplicate relations and those extending another relation.
fn reduce(mut relations: Vec<SlotPath>) -> Vec<SlotPath> {
    relations.sort();
    relations.dedup();
    let keep: Vec<SlotPath> = relations
        .iter()
        .filter(|r| {
            !relations
                .iter()
                .any(|o| o.slot == r.slot && o.len() < r.len() && o.path.is_initial_subpath_of(&r.path))
        })
        .cloned()
        .collect();
    keep
}

/// `Lambda e / V` with `V` generated by paths; determined by its root and
/// its branches (the maximal surviving paths).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeModule {
    root: VertexId,
    branches: Vec<Path>,
}

impl TreeModule {
    /// Builds a tree module from its branches, which must start at `root`,
    /// be pairwise incomparable, and have length at most `L`.
    pub fn from_branches(alg: &TruncatedAlgebra, root: VertexId, mut branches: Vec<Path>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidModule("a tree module has at least one branch".into()));
        }
        for b in &branches {
            if b.source() != root {
                return Err(Error::InvalidModule("branch does not start at the root".into()));
            }
            if b.len() > alg.bound() {
                return Err(Error::PathTooLong {
                    length: b.len(),
                    bound: alg.bound(),
                });
            }
        }
        branches.sort();
        branches.dedup();
        for (i, a) in branches.iter().enumerate() {
            for b in &branches[i + 1..] {
                if a.is_initial_subpath_of(b) {
                    return Err(Error::InvalidModule("branches must be pairwise incomparable".into()));
                }
            }
        }
        Ok(TreeModule { root, branches })
    }

    pub fn from_module(alg: &TruncatedAlgebra, m: &MonomialModule) -> Result<Self> {
        if m.slots().len() != 1 {
            return Err(Error::InvalidModule(format!(
                "a tree module has exactly one slot, found {}",
                m.slots().len()
            )));
        }
        Ok(m.treeify(alg).remove(0))
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn branches(&self) -> &[Path] {
        &self.branches
    }

    /// Single-slot presentation whose relations are the critical paths of
    /// the prefix closure of the branches.
    pub fn to_module(&self, alg: &TruncatedAlgebra) -> MonomialModule {
        let quiver = alg.quiver();
        let mut paths = BTreeSet::new();
        for b in &self.branches {
            for k in 0..=b.len() {
                paths.insert(SlotPath::new(0, b.prefix(quiver, k)));
            }
        }
        let sigma = Skeleton::new(vec![self.root], paths);
        MonomialModule {
            slots: vec![self.root],
            relations: sigma.critical_paths(alg),
        }
    }

    pub fn dimension(&self, alg: &TruncatedAlgebra) -> usize {
        self.to_module(alg).dimension(alg)
    }
}
