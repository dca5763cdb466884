//! An exact-arithmetic resolution engine, independent of the combinatorial
//! formulas.
//!
//! Modules are finite-dimensional representations with rational matrices.
//! Syzygies are kernels of minimal projective covers, computed by Gaussian
//! elimination. Each kernel is rewritten in a basis of elements `u * g`
//! with `u` a path and `g` one of its generators; this is only a change of
//! basis, with every arrow action recomputed by solving a linear system. It
//! makes the summands of a resolution split into connected components with
//! small integral matrices, which are then deduplicated by a canonical key
//! so that long resolutions stay tractable.

mod linalg;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

pub use linalg::{rational, Echelon, Matrix, Rational};

use crate::algebra::TruncatedAlgebra;
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::modules::{MonomialModule, SemisimpleSequence, Skeleton, SlotPath};
use crate::quiver::{ArrowId, Path, VertexId};

/// A representation: a vector space `K^{dims[i]}` at each vertex and a
/// `dims[target] x dims[source]` matrix for each arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixModule {
    dims: Vec<usize>,
    actions: Vec<Matrix>,
}

/// A vector supported on a single vertex.
pub type Element = (VertexId, Vec<Rational>);

impl MatrixModule {
    /// Validates shapes and that every path of length `L + 1` acts as zero.
    pub fn new(alg: &TruncatedAlgebra, dims: Vec<usize>, actions: Vec<Matrix>) -> Result<Self> {
        let quiver = alg.quiver();
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "{} vertex dimensions given for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if actions.len() != quiver.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "{} arrow matrices given for {} arrows",
                actions.len(),
                quiver.arrows().len()
            )));
        }
        for (arrow, m) in quiver.arrows().iter().zip(&actions) {
            let (rows, cols) = (dims[arrow.target.index()], dims[arrow.source.index()]);
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch {
                    rows,
                    cols,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        let module = MatrixModule { dims, actions };
        let filtration = module.radical_filtration(alg);
        if filtration[alg.bound() + 1].iter().any(|e| e.rank() > 0) {
            return Err(Error::InvalidModule(format!(
                "some path of length {} acts nontrivially",
                alg.bound() + 1
            )));
        }
        Ok(module)
    }

    /// Builds a module from a global basis and sparse arrow actions
    /// `(arrow, from, to, coefficient)` meaning `arrow * b_from` has
    /// coefficient `coefficient` on `b_to`. Returns the module and, for each
    /// global basis element, its position in its vertex block.
    pub fn from_sparse(
        alg: &TruncatedAlgebra,
        basis: &[VertexId],
        entries: &[(ArrowId, usize, usize, Rational)],
    ) -> Result<(Self, Vec<usize>)> {
        let quiver = alg.quiver();
        let n = quiver.vertex_count();
        let mut dims = vec![0; n];
        let mut local = Vec::with_capacity(basis.len());
        for v in basis {
            if v.index() >= n {
                return Err(Error::InvalidModule(format!("vertex {} out of range", v.index())));
            }
            local.push(dims[v.index()]);
            dims[v.index()] += 1;
        }
        let mut actions: Vec<Matrix> = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target.index()], dims[a.source.index()]))
            .collect();
        for (alpha, from, to, coeff) in entries {
            let arrow = quiver.arrow(*alpha);
            let (Some(&vf), Some(&vt)) = (basis.get(*from), basis.get(*to)) else {
                return Err(Error::InvalidModule("basis index out of range".into()));
            };
            if vf != arrow.source || vt != arrow.target {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` cannot send basis element {from} to {to}",
                    arrow.label
                )));
            }
            actions[alpha.index()].set(local[*to], local[*from], coeff.clone());
        }
        Ok((MatrixModule::new(alg, dims, actions)?, local))
    }

    pub fn zero(alg: &TruncatedAlgebra) -> Self {
        let quiver = alg.quiver();
        MatrixModule {
            dims: vec![0; quiver.vertex_count()],
            actions: quiver.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    /// The representation with basis the skeleton of `m`.
    pub fn from_monomial(alg: &TruncatedAlgebra, m: &MonomialModule) -> Self {
        let sigma = m.skeleton(alg);
        Self::from_path_basis(alg, sigma.paths().iter().cloned().collect())
    }

    /// The left ideal `Lambda q`, with basis the nonzero products `p q`.
    pub fn left_ideal(alg: &TruncatedAlgebra, q: &Path) -> Result<Self> {
        if q.len() > alg.bound() {
            return Err(Error::PathTooLong {
                length: q.len(),
                bound: alg.bound(),
            });
        }
        let basis = alg
            .quiver()
            .enumerate_paths(q.target(), alg.bound() - q.len())
            .into_iter()
            .map(|p| SlotPath::new(0, p))
            .collect();
        Ok(Self::from_path_basis(alg, basis))
    }

    /// `Lambda e_v`.
    pub fn projective(alg: &TruncatedAlgebra, v: VertexId) -> Self {
        Self::left_ideal(alg, &Path::trivial(v)).expect("trivial path fits")
    }

    /// Basis indexed by slot paths; an arrow sends a path to its extension
    /// when that extension is also in the basis, and to zero otherwise.
    fn from_path_basis(alg: &TruncatedAlgebra, paths: Vec<SlotPath>) -> Self {
        let quiver = alg.quiver();
        let mut dims = vec![0; quiver.vertex_count()];
        let mut index = HashMap::new();
        for sp in &paths {
            let v = sp.target().index();
            index.insert(sp.clone(), dims[v]);
            dims[v] += 1;
        }
        let mut actions: Vec<Matrix> = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target.index()], dims[a.source.index()]))
            .collect();
        for sp in &paths {
            for &alpha in quiver.outgoing(sp.target()) {
                let next = SlotPath::new(sp.slot, sp.path.then(quiver, alpha).expect("outgoing arrow"));
                if let Some(&to) = index.get(&next) {
                    actions[alpha.index()].set(to, index[sp], Rational::one());
                }
            }
        }
        MatrixModule { dims, actions }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    pub fn action(&self, alpha: ArrowId) -> &Matrix {
        &self.actions[alpha.index()]
    }

    pub fn direct_sum(&self, other: &MatrixModule) -> MatrixModule {
        assert_eq!(self.dims.len(), other.dims.len());
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m.set(r, c, a.get(r, c).clone());
                    }
                }
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
                    }
                }
                m
            })
            .collect();
        MatrixModule { dims, actions }
    }

    /// The isomorphic module `T M` for invertible `transforms[i]` acting on
    /// the space at vertex `i`.
    pub fn change_basis(&self, alg: &TruncatedAlgebra, transforms: &[Matrix]) -> Result<MatrixModule> {
        let inverses = transforms
            .iter()
            .map(|t| t.inverse().ok_or_else(|| Error::InvalidModule("singular change of basis".into())))
            .collect::<Result<Vec<_>>>()?;
        let actions = alg
            .quiver()
            .arrows()
            .iter()
            .zip(&self.actions)
            .map(|(a, m)| transforms[a.target.index()].mul(m).mul(&inverses[a.source.index()]))
            .collect();
        Ok(MatrixModule {
            dims: self.dims.clone(),
            actions,
        })
    }

    fn apply(&self, alg: &TruncatedAlgebra, alpha: ArrowId, v: &[Rational]) -> Element {
        (alg.quiver().arrow(alpha).target, self.actions[alpha.index()].mul_vec(v))
    }

    /// `J^l M` at each vertex, for `l = 0..=L+1`.
    pub fn radical_filtration(&self, alg: &TruncatedAlgebra) -> Vec<Vec<Echelon>> {
        let quiver = alg.quiver();
        let mut levels: Vec<Vec<Echelon>> = Vec::with_capacity(alg.bound() + 2);
        let full = self
            .dims
            .iter()
            .map(|&d| {
                let mut e = Echelon::new(d);
                for k in 0..d {
                    e.insert(&unit(d, k));
                }
                e
            })
            .collect();
        levels.push(full);
        for l in 0..=alg.bound() {
            let mut next: Vec<Echelon> = self.dims.iter().map(|&d| Echelon::new(d)).collect();
            for a in quiver.arrows() {
                for b in levels[l][a.source.index()].basis() {
                    let (t, w) = self.apply(alg, a.id, b);
                    next[t.index()].insert(&w);
                }
            }
            levels.push(next);
        }
        levels
    }

    /// `dim (J^l M / J^{l+1} M) e_i`.
    pub fn radical_layering(&self, alg: &TruncatedAlgebra) -> SemisimpleSequence {
        let filtration = self.radical_filtration(alg);
        let mut s = SemisimpleSequence::zeros(alg.bound() + 1, alg.vertex_count());
        for l in 0..=alg.bound() {
            for i in 0..alg.vertex_count() {
                s.set(i, l, (filtration[l][i].rank() - filtration[l + 1][i].rank()) as u64);
            }
        }
        s
    }

    /// Standard basis vectors lifting a basis of `M / JM`, vertex by vertex.
    pub fn top_generators(&self, alg: &TruncatedAlgebra) -> Vec<Element> {
        let filtration = self.radical_filtration(alg);
        let mut gens = Vec::new();
        for (i, &d) in self.dims.iter().enumerate() {
            let mut span = filtration[1][i].clone();
            for k in 0..d {
                let e = unit(d, k);
                if span.insert(&e) {
                    gens.push((VertexId(i), e));
                }
            }
        }
        gens
    }

    /// Splits along the connected components of the graph whose edges are
    /// the nonzero matrix entries. Zero components are dropped.
    pub fn components(&self, alg: &TruncatedAlgebra) -> Vec<MatrixModule> {
        let quiver = alg.quiver();
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total = self.dimension();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in quiver.arrows() {
            let m = &self.actions[a.id.index()];
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m.get(r, c).is_zero() {
                        let x = find(&mut parent, offsets[a.target.index()] + r);
                        let y = find(&mut parent, offsets[a.source.index()] + c);
                        parent[x] = y;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, &d) in self.dims.iter().enumerate() {
            for k in 0..d {
                let root = find(&mut parent, offsets[i] + k);
                groups.entry(root).or_default().push((i, k));
            }
        }
        groups.into_values().map(|members| self.restrict(alg, &members)).collect()
    }

    /// The submodule spanned by a set of basis vectors closed under the
    /// action.
    fn restrict(&self, alg: &TruncatedAlgebra, members: &[(usize, usize)]) -> MatrixModule {
        let mut keep: Vec<Vec<usize>> = vec![Vec::new(); self.dims.len()];
        for &(i, k) in members {
            keep[i].push(k);
        }
        let dims = keep.iter().map(Vec::len).collect();
        let actions = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                let (rows, cols) = (&keep[a.target.index()], &keep[a.source.index()]);
                let m = &self.actions[a.id.index()];
                let mut out = Matrix::zeros(rows.len(), cols.len());
                for (r, &rr) in rows.iter().enumerate() {
                    for (c, &cc) in cols.iter().enumerate() {
                        out.set(r, c, m.get(rr, cc).clone());
                    }
                }
                out
            })
            .collect();
        MatrixModule { dims, actions }
    }

    /// A string equal for two modules whenever their bases differ by a
    /// permutation that color refinement cannot distinguish from an
    /// automorphism; in particular equal for isomorphic modules with
    /// tree-shaped 0/1 matrices.
    pub fn canonical_key(&self, alg: &TruncatedAlgebra) -> String {
        let quiver = alg.quiver();
        let nodes: Vec<(usize, usize)> = self
            .dims
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| (0..d).map(move |k| (i, k)))
            .collect();
        let position: HashMap<(usize, usize), usize> = nodes.iter().enumerate().map(|(g, &n)| (n, g)).collect();
        let mut edges: Vec<(usize, usize, usize, String)> = Vec::new();
        for a in quiver.arrows() {
            let m = &self.actions[a.id.index()];
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let x = m.get(r, c);
                    if !x.is_zero() {
                        let from = position[&(a.source.index(), c)];
                        let to = position[&(a.target.index(), r)];
                        edges.push((a.id.index(), from, to, x.to_string()));
                    }
                }
            }
        }

        let mut colors: Vec<usize> = nodes.iter().map(|&(i, _)| i).collect();
        let mut count = colors.iter().collect::<BTreeSet<_>>().len();
        loop {
            type Signature = (usize, Vec<(usize, bool, String, usize)>);
            let mut sigs: Vec<Signature> = colors.iter().map(|&c| (c, Vec::new())).collect();
            for (arrow, from, to, value) in &edges {
                sigs[*from].1.push((*arrow, true, value.clone(), colors[*to]));
                sigs[*to].1.push((*arrow, false, value.clone(), colors[*from]));
            }
            for s in sigs.iter_mut() {
                s.1.sort();
            }
            let distinct: BTreeMap<&Signature, usize> = sigs
                .iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .enumerate()
                .map(|(k, s)| (s, k))
                .collect();
            let refined: Vec<usize> = sigs.iter().map(|s| distinct[s]).collect();
            let new_count = distinct.len();
            colors = refined;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by_key(|&g| (colors[g], g));
        let mut rank = vec![0; nodes.len()];
        for (pos, &g) in order.iter().enumerate() {
            rank[g] = pos;
        }
        let vertices: Vec<String> = order.iter().map(|&g| nodes[g].0.to_string()).collect();
        let mut renamed: Vec<(usize, usize, usize, &str)> = edges
            .iter()
            .map(|(a, from, to, v)| (*a, rank[*from], rank[*to], v.as_str()))
            .collect();
        renamed.sort();
        let entries: Vec<String> = renamed
            .iter()
            .map(|(a, from, to, v)| format!("{a}:{from}>{to}={v}"))
            .collect();
        format!("[{}]{{{}}}", vertices.join(","), entries.join(";"))
    }
}

fn unit(d: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[k] = Rational::one();
    v
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// The paths of a projective cover `(+)_r Lambda e_{v_r}`, grouped by
/// terminal vertex.
struct CoverBasis {
    by_vertex: Vec<Vec<SlotPath>>,
    index: HashMap<SlotPath, usize>,
}

impl CoverBasis {
    fn new(alg: &TruncatedAlgebra, slots: &[VertexId]) -> Self {
        let quiver = alg.quiver();
        let mut by_vertex = vec![Vec::new(); quiver.vertex_count()];
        for (r, &v) in slots.iter().enumerate() {
            for p in quiver.enumerate_paths(v, alg.bound()) {
                by_vertex[p.target().index()].push(SlotPath::new(r, p));
            }
        }
        let mut index = HashMap::new();
        for list in by_vertex.iter_mut() {
            // Length first: left multiplication by an arrow then preserves
            // the order and kills only whole length classes.
            list.sort_by(|a, b| (a.len(), a.slot, &a.path).cmp(&(b.len(), b.slot, &b.path)));
            for (k, sp) in list.iter().enumerate() {
                index.insert(sp.clone(), k);
            }
        }
        CoverBasis { by_vertex, index }
    }

    /// `alpha * v` for `v` in the block of vertex `from`.
    fn act(&self, alg: &TruncatedAlgebra, alpha: ArrowId, from: VertexId, v: &[Rational]) -> Element {
        let quiver = alg.quiver();
        let to = quiver.arrow(alpha).target;
        let mut out = vec![Rational::zero(); self.by_vertex[to.index()].len()];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let sp = &self.by_vertex[from.index()][k];
            if sp.len() == alg.bound() {
                continue;
            }
            let next = SlotPath::new(sp.slot, sp.path.then(quiver, alpha).expect("arrow leaves the block vertex"));
            out[self.index[&next]] += x;
        }
        (to, out)
    }

    fn act_path(&self, alg: &TruncatedAlgebra, u: &Path, (mut at, mut v): Element) -> Element {
        for &alpha in u.arrows() {
            (at, v) = self.act(alg, alpha, at, &v);
        }
        (at, v)
    }
}

/// First syzygy of a module, as the kernel of a minimal projective cover.
#[derive(Debug, Clone)]
pub struct Syzygy {
    /// Vertices of the indecomposable summands of the cover.
    pub cover: Vec<VertexId>,
    /// Whether the kernel lies in the radical of the cover, certifying that
    /// the cover is minimal.
    pub minimal: bool,
    /// Smallest paths occurring in the kernel generators, one per
    /// generator.
    pub generators: Vec<SlotPath>,
    /// Whether the path multiples of the generators span the kernel, so
    /// that no other basis vectors were needed.
    pub generated: bool,
    pub module: MatrixModule,
}

pub fn syzygy(alg: &TruncatedAlgebra, m: &MatrixModule) -> Syzygy {
    let gens = m.top_generators(alg);
    syzygy_with_cover(alg, m, &gens)
}

/// Syzygy for the cover sending the `r`-th summand's generator to
/// `gens[r]`.
pub fn syzygy_with_cover(alg: &TruncatedAlgebra, m: &MatrixModule, gens: &[Element]) -> Syzygy {
    let quiver = alg.quiver();
    let n = quiver.vertex_count();
    let slots: Vec<VertexId> = gens.iter().map(|(v, _)| *v).collect();
    let cover = CoverBasis::new(alg, &slots);

    let mut minimal = true;
    let mut kernel: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(n);
    for j in 0..n {
        let paths = &cover.by_vertex[j];
        let mut phi = Matrix::zeros(m.dims[j], paths.len());
        for (t, sp) in paths.iter().enumerate() {
            let mut at = gens[sp.slot].0;
            let mut v = gens[sp.slot].1.clone();
            for &alpha in sp.path.arrows() {
                (at, v) = m.apply(alg, alpha, &v);
            }
            debug_assert_eq!(at.index(), j);
            for (r, x) in v.into_iter().enumerate() {
                phi.set(r, t, x);
            }
        }
        let (_, basis) = phi.nullspace();
        for v in &basis {
            if paths.iter().zip(v).any(|(sp, x)| sp.is_empty() && !x.is_zero()) {
                minimal = false;
            }
        }
        kernel.push(basis);
    }

    // Leading term of a kernel vector: its first path in the length-first
    // order. Echelon rows of each block have distinct leading terms.
    let mut leading: BTreeMap<SlotPath, Element> = BTreeMap::new();
    for (j, basis) in kernel.iter().enumerate() {
        if basis.is_empty() {
            continue;
        }
        let width = cover.by_vertex[j].len();
        let mut rows = Matrix::from_rows(basis.clone(), width);
        let pivots = rows.rref();
        for (r, &p) in pivots.iter().enumerate() {
            let v: Vec<Rational> = (0..width).map(|c| rows.get(r, c).clone()).collect();
            leading.insert(cover.by_vertex[j][p].clone(), (VertexId(j), v));
        }
    }
    let generators: Vec<SlotPath> = leading
        .keys()
        .filter(|sp| {
            (0..sp.len()).all(|k| !leading.contains_key(&SlotPath::new(sp.slot, sp.path.prefix(quiver, k))))
        })
        .cloned()
        .collect();

    let mut new_basis: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); n];
    let mut spans: Vec<Echelon> = (0..n).map(|j| Echelon::new(cover.by_vertex[j].len())).collect();
    for g in &generators {
        let start = leading[g].clone();
        for u in quiver.enumerate_paths(g.target(), alg.bound()) {
            let (at, w) = cover.act_path(alg, &u, start.clone());
            if !is_zero_vec(&w) && spans[at.index()].insert(&w) {
                new_basis[at.index()].push(w);
            }
        }
    }
    let mut generated = true;
    for (j, basis) in kernel.iter().enumerate() {
        for v in basis {
            if spans[j].insert(v) {
                generated = false;
                new_basis[j].push(v.clone());
            }
        }
    }

    let dims: Vec<usize> = new_basis.iter().map(Vec::len).collect();
    let actions = quiver
        .arrows()
        .iter()
        .map(|a| {
            let (s, t) = (a.source.index(), a.target.index());
            let images: Vec<Vec<Rational>> =
                new_basis[s].iter().map(|b| cover.act(alg, a.id, a.source, b).1).collect();
            if images.is_empty() || new_basis[t].is_empty() {
                return Matrix::zeros(dims[t], dims[s]);
            }
            Matrix::solve_in_span(&new_basis[t], &images, cover.by_vertex[t].len())
                .expect("kernel is a submodule of the cover")
        })
        .collect();

    Syzygy {
        cover: slots,
        minimal,
        generators,
        generated,
        module: MatrixModule { dims, actions },
    }
}

/// Outcome of a truncated resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum OraclePdim {
    Exact(u64),
    /// Every syzygy up to the search depth is nonzero, so the projective
    /// dimension is at least this value.
    AtLeast(u64),
}

impl OraclePdim {
    /// Exact values must match; a lower bound matches only infinity.
    pub fn matches(&self, formula: ExtNat) -> bool {
        match (*self, formula) {
            (OraclePdim::Exact(a), ExtNat::Fin(b)) => a == b,
            (OraclePdim::AtLeast(_), ExtNat::Inf) => true,
            _ => false,
        }
    }
}

impl std::fmt::Display for OraclePdim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OraclePdim::Exact(k) => write!(f, "{k}"),
            OraclePdim::AtLeast(k) => write!(f, ">= {k}"),
        }
    }
}

/// The distinct indecomposable-by-support summands of one syzygy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionStep {
    /// `k` for the `k`-th syzygy.
    pub degree: usize,
    pub distinct_components: usize,
    /// Total dimension of one copy of each distinct component.
    pub distinct_dimension: usize,
    /// Whether every cover used to produce this syzygy was certified
    /// minimal.
    pub minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionTrace {
    pub steps: Vec<ResolutionStep>,
    pub result: OraclePdim,
}

/// Search depth beyond every finite projective dimension the closed forms
/// can produce.
pub fn default_depth(alg: &TruncatedAlgebra) -> usize {
    2 * alg.vertex_count() * (alg.bound() + 1)
}

/// Resolves `m` until a syzygy vanishes. Any pdim `k <= depth` is certified
/// exactly, which takes `k + 1` syzygies; otherwise the result is
/// `AtLeast(depth)`.
pub fn pdim_upto(alg: &TruncatedAlgebra, m: &MatrixModule, depth: usize) -> ResolutionTrace {
    let mut frontier: BTreeMap<String, MatrixModule> = m
        .components(alg)
        .into_iter()
        .map(|c| (c.canonical_key(alg), c))
        .collect();
    let mut steps = vec![ResolutionStep {
        degree: 0,
        distinct_components: frontier.len(),
        distinct_dimension: frontier.values().map(MatrixModule::dimension).sum(),
        minimal: true,
    }];
    if frontier.is_empty() {
        return ResolutionTrace {
            steps,
            result: OraclePdim::Exact(0),
        };
    }
    let mut memo: HashMap<String, (bool, Vec<String>)> = HashMap::new();
    let mut known: HashMap<String, MatrixModule> = HashMap::new();
    for k in 0..=depth {
        let mut next: BTreeMap<String, MatrixModule> = BTreeMap::new();
        let mut minimal = true;
        for (key, comp) in &frontier {
            if !memo.contains_key(key) {
                let syz = syzygy(alg, comp);
                let mut children = Vec::new();
                for c in syz.module.components(alg) {
                    let ck = c.canonical_key(alg);
                    known.entry(ck.clone()).or_insert(c);
                    children.push(ck);
                }
                memo.insert(key.clone(), (syz.minimal, children));
            }
            let (ok, children) = &memo[key];
            minimal &= ok;
            for ck in children {
                next.entry(ck.clone()).or_insert_with(|| known[ck].clone());
            }
        }
        steps.push(ResolutionStep {
            degree: k + 1,
            distinct_components: next.len(),
            distinct_dimension: next.values().map(MatrixModule::dimension).sum(),
            minimal,
        });
        if next.is_empty() {
            return ResolutionTrace {
                steps,
                result: OraclePdim::Exact(k as u64),
            };
        }
        frontier = next;
    }
    ResolutionTrace {
        steps,
        result: OraclePdim::AtLeast(depth as u64),
    }
}

pub fn pdim(alg: &TruncatedAlgebra, m: &MatrixModule) -> ResolutionTrace {
    pdim_upto(alg, m, default_depth(alg))
}

/// A skeleton of `m` for its default top generators, choosing candidates
/// in canonical order.
pub fn skeleton_extract(alg: &TruncatedAlgebra, m: &MatrixModule) -> Skeleton {
    let gens = m.top_generators(alg);
    skeleton_extract_with(alg, m, &gens, None::<&mut rand::rngs::ThreadRng>).expect("default generators lift the top")
}

/// Builds a skeleton layer by layer: a candidate `alpha p` extending a
/// chosen path `p` of length `l` is kept when its value is independent, in
/// `J^{l+1} M`, of `J^{l+2} M` and the candidates already kept. Candidates
/// are scanned in canonical order, or in a random order if `rng` is given.
pub fn skeleton_extract_with<R: Rng>(
    alg: &TruncatedAlgebra,
    m: &MatrixModule,
    gens: &[Element],
    rng: Option<&mut R>,
) -> Result<Skeleton> {
    let quiver = alg.quiver();
    let n = quiver.vertex_count();
    let filtration = m.radical_filtration(alg);
    let mut tops: Vec<Echelon> = (0..n).map(|i| filtration[1][i].clone()).collect();
    for (v, g) in gens {
        if v.index() >= n || g.len() != m.dims[v.index()] || !tops[v.index()].insert(g) {
            return Err(Error::InvalidModule("generators do not lift a basis of the top".into()));
        }
    }
    if (0..n).any(|i| tops[i].rank() != m.dims[i]) {
        return Err(Error::InvalidModule("generators do not lift a basis of the top".into()));
    }

    let slots: Vec<VertexId> = gens.iter().map(|(v, _)| *v).collect();
    let mut level: Vec<(SlotPath, Element)> = gens
        .iter()
        .enumerate()
        .map(|(r, (v, g))| (SlotPath::new(r, Path::trivial(*v)), (*v, g.clone())))
        .collect();
    let mut chosen: BTreeSet<SlotPath> = level.iter().map(|(sp, _)| sp.clone()).collect();
    let mut rng = rng;
    for l in 0..alg.bound() {
        let mut candidates: Vec<(SlotPath, Element)> = Vec::new();
        for (sp, (_, v)) in &level {
            for &alpha in quiver.outgoing(sp.target()) {
                let next = SlotPath::new(sp.slot, sp.path.then(quiver, alpha).expect("outgoing arrow"));
                candidates.push((next, m.apply(alg, alpha, v)));
            }
        }
        candidates.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(r) = rng.as_deref_mut() {
            candidates.shuffle(r);
        }
        let mut spans: Vec<Echelon> = (0..n).map(|i| filtration[l + 2][i].clone()).collect();
        level = candidates
            .into_iter()
            .filter(|(_, (at, w))| spans[at.index()].insert(w))
            .collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        chosen.extend(level.iter().map(|(sp, _)| sp.clone()));
    }
    Ok(Skeleton::new(slots, chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn algebra(names: Vec<&str>, arrows: Vec<(&str, usize, usize)>, bound: usize) -> TruncatedAlgebra {
        TruncatedAlgebra::new("t", Quiver::new(names, arrows).unwrap(), bound).unwrap()
    }

    #[test]
    fn a2_simple_has_pdim_one() {
        let alg = algebra(vec!["1", "2"], vec![("a", 0, 1)], 1);
        let s1 = MatrixModule::from_monomial(&alg, &MonomialModule::simple(&alg, VertexId(0)));
        let trace = pdim(&alg, &s1);
        assert_eq!(trace.result, OraclePdim::Exact(1));
        assert!(trace.steps.iter().all(|s| s.minimal));
        let p = MatrixModule::projective(&alg, VertexId(0));
        assert_eq!(pdim(&alg, &p).result, OraclePdim::Exact(0));
        assert_eq!(pdim(&alg, &MatrixModule::zero(&alg)).result, OraclePdim::Exact(0));
    }

    #[test]
    fn loop_simple_never_resolves() {
        let alg = algebra(vec!["1"], vec![("x", 0, 0)], 2);
        let s = MatrixModule::from_monomial(&alg, &MonomialModule::simple(&alg, VertexId(0)));
        let trace = pdim_upto(&alg, &s, 10);
        assert_eq!(trace.result, OraclePdim::AtLeast(10));
        assert!(trace.steps.iter().all(|s| s.distinct_components <= 2));
    }

    #[test]
    fn syzygy_of_simple_is_radical() {
        let alg = algebra(vec!["1", "2", "3"], vec![("a", 0, 1), ("b", 0, 2)], 1);
        let s = MatrixModule::from_monomial(&alg, &MonomialModule::simple(&alg, VertexId(0)));
        let syz = syzygy(&alg, &s);
        assert!(syz.minimal);
        assert_eq!(syz.cover, vec![VertexId(0)]);
        assert_eq!(syz.module.dims(), &[0, 1, 1]);
        assert_eq!(syz.generators.len(), 2);
        assert_eq!(syz.module.components(&alg).len(), 2);
    }

    #[test]
    fn keys_ignore_basis_order() {
        let alg = algebra(vec!["1", "2", "3"], vec![("a", 0, 1), ("b", 0, 2)], 1);
        let (m1, _) = MatrixModule::from_sparse(
            &alg,
            &[VertexId(0), VertexId(1), VertexId(2)],
            &[(ArrowId(0), 0, 1, rational(1)), (ArrowId(1), 0, 2, rational(1))],
        )
        .unwrap();
        let p = MatrixModule::projective(&alg, VertexId(0));
        assert_eq!(m1.canonical_key(&alg), p.canonical_key(&alg));
        assert_ne!(m1.canonical_key(&alg), MatrixModule::projective(&alg, VertexId(1)).canonical_key(&alg));
    }

    #[test]
    fn rejects_untruncated_action() {
        let alg = algebra(vec!["1", "2", "3"], vec![("a", 0, 1), ("b", 1, 2)], 1);
        let err = MatrixModule::from_sparse(
            &alg,
            &[VertexId(0), VertexId(1), VertexId(2)],
            &[(ArrowId(0), 0, 1, rational(1)), (ArrowId(1), 1, 2, rational(1))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidModule(_)));
    }

    #[test]
    fn extracted_skeleton_of_monomial_module_is_canonical() {
        let alg = algebra(vec!["1", "2", "3"], vec![("a", 0, 1), ("b", 1, 2), ("c", 0, 2)], 2);
        let m = MonomialModule::projective(vec![VertexId(0)]);
        let mm = MatrixModule::from_monomial(&alg, &m);
        assert_eq!(skeleton_extract(&alg, &mm), m.skeleton(&alg));
        assert_eq!(mm.radical_layering(&alg), m.radical_layering(&alg));
    }
}
