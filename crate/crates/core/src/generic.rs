//! Radical layerings as stratum labels: realizability, the generic
//! projective dimension of a stratum, the spectrum of values on its
//! closure, and the tree modules `T_i` that realize the finitistic
//! dimension.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::TruncatedAlgebra;
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::modules::{MonomialModule, SemisimpleSequence, SlotPath, TreeModule};
use crate::quiver::{Path, VertexId};

/// `J^l P / J^{l+1} P = S_l (+) R_l`, with `P` the projective cover of the
/// top layer `S_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerDecomposition {
    pub s: SemisimpleSequence,
    pub r: SemisimpleSequence,
}

impl LayerDecomposition {
    pub fn is_projective(&self) -> bool {
        self.r.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub generic: ExtNat,
    /// Values strictly above the generic one.
    pub others: BTreeSet<ExtNat>,
    pub full_set: BTreeSet<ExtNat>,
}

fn check_shape(alg: &TruncatedAlgebra, s: &SemisimpleSequence) -> Result<()> {
    s.check_shape(alg.bound() + 1, alg.vertex_count())
}

/// `counts[l][i]` = number of paths of length `l` ending at `e_i` in the
/// projective module with top multiplicities `top`.
pub fn path_counts(alg: &TruncatedAlgebra, top: &[u64]) -> Result<Vec<Vec<u64>>> {
    let quiver = alg.quiver();
    let n = alg.vertex_count();
    let mut counts = vec![top.to_vec()];
    for l in 1..=alg.bound() {
        let prev = &counts[l - 1];
        let mut next = vec![0u64; n];
        for a in quiver.arrows() {
            let add = prev[a.source.index()];
            next[a.target.index()] = next[a.target.index()].checked_add(add).ok_or(Error::Overflow)?;
        }
        counts.push(next);
    }
    Ok(counts)
}

/// Whether some module has radical layering `s`.
///
/// A prefix-closed path set picks its length-`l+1` paths among extensions of
/// its length-`l` paths; distinct parents give distinct extensions and the
/// supply at `e_j` depends only on how many chosen paths end where. So a
/// compatible set exists iff `s(., l+1) <= A s(., l)` for every `l`, where
/// `A(j, i)` counts arrows `i -> j`.
pub fn realizable(alg: &TruncatedAlgebra, s: &SemisimpleSequence) -> Result<bool> {
    check_shape(alg, s)?;
    let quiver = alg.quiver();
    let n = alg.vertex_count();
    for l in 0..alg.bound() {
        let mut supply = vec![0u64; n];
        for a in quiver.arrows() {
            supply[a.target.index()] += s.get(a.source.index(), l);
        }
        if (0..n).any(|j| s.get(j, l + 1) > supply[j]) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn layer_decomposition(alg: &TruncatedAlgebra, s: &SemisimpleSequence) -> Result<LayerDecomposition> {
    check_shape(alg, s)?;
    let counts = path_counts(alg, s.row(0))?;
    let mut r = SemisimpleSequence::zeros(s.layers(), s.vertices());
    for (l, row) in counts.iter().enumerate() {
        for (i, &available) in row.iter().enumerate() {
            let used = s.get(i, l);
            if used > available {
                return Err(Error::NotEmbeddable { vertex: i, layer: l });
            }
            r.set(i, l, available - used);
        }
    }
    Ok(LayerDecomposition { s: s.clone(), r })
}

fn generic_from_r(alg: &TruncatedAlgebra, r: &SemisimpleSequence) -> ExtNat {
    let quiver = alg.quiver();
    let mut best: Option<ExtNat> = None;
    for l in 0..r.layers() {
        for i in 0..r.vertices() {
            if r.get(i, l) != 0 {
                let value = alg.l_deg_unchecked(l, quiver.c_out(VertexId(i)));
                best = Some(best.map_or(value, |b| b.max(value)));
            }
        }
    }
    best.map_or(ExtNat::ZERO, |b| b + 1)
}

/// The constant projective dimension of the modules with radical layering `s`.
pub fn generic_pdim(alg: &TruncatedAlgebra, s: &SemisimpleSequence) -> Result<ExtNat> {
    if !realizable(alg, s)? {
        return Err(Error::NotRealizable);
    }
    let d = layer_decomposition(alg, s)?;
    Ok(generic_from_r(alg, &d.r))
}

/// All values of the projective dimension on the closure of the stratum of `s`.
pub fn spectrum(alg: &TruncatedAlgebra, s: &SemisimpleSequence) -> Result<SpectrumReport> {
    let generic = generic_pdim(alg, s)?;
    let quiver = alg.quiver();
    let mut others = BTreeSet::new();
    for l in 1..s.layers() {
        for j in 0..s.vertices() {
            if s.get(j, l) > 0 {
                let value = alg.l_deg_unchecked(l, quiver.c_out(VertexId(j))) + 1;
                if value > generic {
                    others.insert(value);
                }
            }
        }
    }
    let mut full_set = others.clone();
    full_set.insert(generic);
    Ok(SpectrumReport {
        generic,
        others,
        full_set,
    })
}

/// `lower <= upper` in the layering order: equal total multiplicities, and
/// every partial sum `sum_{l <= r} lower(i, l)` bounded by the same partial
/// sum of `upper`.
pub fn seq_leq(lower: &SemisimpleSequence, upper: &SemisimpleSequence) -> Result<bool> {
    upper.check_shape(lower.layers(), lower.vertices())?;
    for i in 0..lower.vertices() {
        let (mut a, mut b) = (0u64, 0u64);
        for l in 0..lower.layers() {
            a += lower.get(i, l);
            b += upper.get(i, l);
            if a > b {
                return Ok(false);
            }
        }
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest total dimension accepted by the enumeration.
    pub max_dimension: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_dimension: 20 }
    }
}

struct GeqSearch<'a, F> {
    alg: &'a TruncatedAlgebra,
    totals: Vec<u64>,
    /// `floor[l][i]` = partial sum of the lower bound through layer `l`.
    floor: Vec<Vec<u64>>,
    current: SemisimpleSequence,
    placed: Vec<u64>,
    counts: Vec<Vec<u64>>,
    visit: F,
    visited: u64,
}

impl<F: FnMut(&SemisimpleSequence, ExtNat)> GeqSearch<'_, F> {
    fn supply(&self, layer: usize, vertex: usize) -> u64 {
        if layer == 0 {
            return u64::MAX;
        }
        let quiver = self.alg.quiver();
        quiver
            .incoming(VertexId(vertex))
            .iter()
            .map(|&a| self.current.get(quiver.arrow(a).source.index(), layer - 1))
            .sum()
    }

    fn place(&mut self, layer: usize, vertex: usize) -> Result<()> {
        let n = self.totals.len();
        let last = self.alg.bound();
        if vertex == n {
            if layer == 0 {
                self.counts = path_counts(self.alg, self.current.row(0))?;
            }
            if layer == last {
                self.finish();
                return Ok(());
            }
            return self.place(layer + 1, 0);
        }
        let remaining = self.totals[vertex] - self.placed[vertex];
        let need = self.floor[layer][vertex].saturating_sub(self.placed[vertex]);
        let cap = remaining.min(self.supply(layer, vertex));
        let (lo, hi) = if layer == last { (remaining, remaining) } else { (need, cap) };
        if lo > cap {
            return Ok(());
        }
        for x in lo..=hi {
            self.current.set(vertex, layer, x);
            self.placed[vertex] += x;
            self.place(layer, vertex + 1)?;
            self.placed[vertex] -= x;
        }
        self.current.set(vertex, layer, 0);
        Ok(())
    }

    fn finish(&mut self) {
        let quiver = self.alg.quiver();
        let mut best: Option<ExtNat> = None;
        for l in 1..self.current.layers() {
            for i in 0..self.current.vertices() {
                if self.counts[l][i] > self.current.get(i, l) {
                    let value = self.alg.l_deg_unchecked(l, quiver.c_out(VertexId(i)));
                    best = Some(best.map_or(value, |b| b.max(value)));
                }
            }
        }
        let pdim = best.map_or(ExtNat::ZERO, |b| b + 1);
        self.visited += 1;
        (self.visit)(&self.current, pdim);
    }
}

/// Visits every realizable `s' >= s` together with its generic projective
/// dimension, in lexicographic order of the layer rows. Returns the number
/// of sequences visited.
pub fn for_each_geq<F>(
    alg: &TruncatedAlgebra,
    s: &SemisimpleSequence,
    limits: EnumerationLimits,
    visit: F,
) -> Result<u64>
where
    F: FnMut(&SemisimpleSequence, ExtNat),
{
    check_shape(alg, s)?;
    let dimension = s.total_dimension();
    if dimension > limits.max_dimension {
        return Err(Error::CapExceeded {
            dimension,
            cap: limits.max_dimension,
        });
    }
    let n = s.vertices();
    let mut floor = vec![vec![0u64; n]; s.layers()];
    for i in 0..n {
        let mut acc = 0;
        for (l, row) in floor.iter_mut().enumerate() {
            acc += s.get(i, l);
            row[i] = acc;
        }
    }
    let mut search = GeqSearch {
        alg,
        totals: s.column_totals(),
        floor,
        current: SemisimpleSequence::zeros(s.layers(), n),
        placed: vec![0; n],
        counts: Vec::new(),
        visit,
        visited: 0,
    };
    search.place(0, 0)?;
    Ok(search.visited)
}

pub fn enumerate_geq(
    alg: &TruncatedAlgebra,
    s: &SemisimpleSequence,
    limits: EnumerationLimits,
) -> Result<Vec<SemisimpleSequence>> {
    let mut out = Vec::new();
    for_each_geq(alg, s, limits, |seq, _| out.push(seq.clone()))?;
    Ok(out)
}

/// Outcome of comparing the predicted spectrum with the generic projective
/// dimensions of all realizable sequences above `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumCheck {
    pub predicted: SpectrumReport,
    pub enumerated_values: BTreeSet<ExtNat>,
    pub sequences_visited: u64,
    /// Sequences `s' >= s` whose generic value is below that of `s`.
    pub monotonicity_violations: u64,
}

impl SpectrumCheck {
    pub fn agrees(&self) -> bool {
        self.predicted.full_set == self.enumerated_values && self.monotonicity_violations == 0
    }
}

pub fn spectrum_check(
    alg: &TruncatedAlgebra,
    s: &SemisimpleSequence,
    limits: EnumerationLimits,
) -> Result<SpectrumCheck> {
    let predicted = spectrum(alg, s)?;
    let base = predicted.generic;
    let mut values = BTreeSet::new();
    let mut violations = 0;
    let visited = for_each_geq(alg, s, limits, |_, pdim| {
        values.insert(pdim);
        if pdim < base {
            violations += 1;
        }
    })?;
    Ok(SpectrumCheck {
        predicted,
        enumerated_values: values,
        sequences_visited: visited,
        monotonicity_violations: violations,
    })
}

/// The minimal positive-length paths from `e_i` that end at a
/// non-cyclebound vertex; every proper positive-length initial subpath of
/// one of them ends at a cyclebound vertex.
pub fn minimal_acyclic_exits(alg: &TruncatedAlgebra, i: VertexId) -> Vec<Path> {
    let quiver = alg.quiver();
    let mut exits = Vec::new();
    let mut frontier = vec![Path::trivial(i)];
    for _ in 0..alg.bound() {
        let mut next = Vec::new();
        for p in &frontier {
            for &a in quiver.outgoing(p.target()) {
                let q = p.then(quiver, a).expect("outgoing arrow");
                if quiver.is_cyclebound(q.target()) {
                    next.push(q);
                } else {
                    exits.push(q);
                }
            }
        }
        frontier = next;
    }
    exits.sort();
    exits
}

/// `T_i = Lambda e_i / eps J e_i`, where `eps` sums the non-cyclebound
/// idempotents.
pub fn tree_t(alg: &TruncatedAlgebra, i: VertexId) -> TreeModule {
    let relations = minimal_acyclic_exits(alg, i)
        .into_iter()
        .map(|p| SlotPath::new(0, p))
        .collect();
    let m = MonomialModule::new(alg, vec![i], relations).expect("exits are valid relations");
    TreeModule::from_module(alg, &m).expect("single slot")
}
