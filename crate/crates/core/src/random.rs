//! Seeded generators of quivers, algebras and modules for property tests
//! and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::TruncatedAlgebra;
use crate::modules::{MonomialModule, SlotPath};
use crate::oracle::{rational, Matrix, MatrixModule};
use crate::quiver::{Quiver, VertexId};

/// A quiver on `1..=max_vertices` vertices named `1, 2, ...` with arrows
/// `a0, a1, ...`. Half of the draws are acyclic (arrows only go to larger
/// indices) so that finite dimensions are well represented.
pub fn random_quiver<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let acyclic = rng.gen_bool(0.5);
    let count = rng.gen_range(0..=max_arrows);
    let mut arrows = Vec::with_capacity(count);
    for k in 0..count {
        let (s, t) = if acyclic {
            if n < 2 {
                break;
            }
            let s = rng.gen_range(0..n - 1);
            (s, rng.gen_range(s + 1..n))
        } else {
            (rng.gen_range(0..n), rng.gen_range(0..n))
        };
        arrows.push((format!("a{k}"), s, t));
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    Quiver::new(names, arrows).expect("generated endpoints are in range")
}

/// A truncated algebra with at most `max_vertices` vertices, at most
/// `max_arrows` arrows and `1 <= L <= max_bound`.
pub fn random_algebra<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize, max_bound: usize) -> TruncatedAlgebra {
    let quiver = random_quiver(rng, max_vertices, max_arrows);
    let bound = rng.gen_range(1..=max_bound.max(1));
    TruncatedAlgebra::new("random", quiver, bound).expect("positive bound")
}

/// A monomial module with at most `max_slots` slots and dimension at most
/// `max_dim`. Relations are drawn among the paths of each slot; if no draw
/// fits the dimension cap, the module falls back to a sum of simples.
pub fn random_monomial_module<R: Rng>(
    rng: &mut R,
    alg: &TruncatedAlgebra,
    max_slots: usize,
    max_dim: usize,
) -> MonomialModule {
    let quiver = alg.quiver();
    for _ in 0..50 {
        let k = rng.gen_range(1..=max_slots.max(1));
        let slots: Vec<VertexId> = (0..k).map(|_| VertexId(rng.gen_range(0..quiver.vertex_count()))).collect();
        let mut relations = Vec::new();
        for (slot, &v) in slots.iter().enumerate() {
            let candidates: Vec<_> = quiver
                .enumerate_paths(v, alg.bound())
                .into_iter()
                .filter(|p| !p.is_trivial())
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let wanted = rng.gen_range(0..=candidates.len().min(4));
            for p in candidates.choose_multiple(rng, wanted) {
                relations.push(SlotPath::new(slot, p.clone()));
            }
        }
        let m = MonomialModule::new(alg, slots, relations).expect("relations drawn from slot paths");
        if m.dimension(alg) <= max_dim {
            return m;
        }
    }
    let v = VertexId(rng.gen_range(0..quiver.vertex_count()));
    MonomialModule::simple(alg, v)
}

/// A module with random integer matrices, built graded (arrows raise a
/// chosen degree by one, so paths longer than `L` act as zero) and then
/// conjugated by random invertible matrices at each vertex. Typically not
/// monomial.
pub fn random_graded_module<R: Rng>(rng: &mut R, alg: &TruncatedAlgebra, max_dim: usize) -> MatrixModule {
    let quiver = alg.quiver();
    let n = quiver.vertex_count();
    let total = rng.gen_range(1..=max_dim.max(1));
    let elements: Vec<(VertexId, usize)> = (0..total)
        .map(|_| (VertexId(rng.gen_range(0..n)), rng.gen_range(0..=alg.bound())))
        .collect();
    let basis: Vec<VertexId> = elements.iter().map(|&(v, _)| v).collect();
    let mut entries = Vec::new();
    for a in quiver.arrows() {
        for (from, &(vf, lf)) in elements.iter().enumerate() {
            for (to, &(vt, lt)) in elements.iter().enumerate() {
                if vf == a.source && vt == a.target && lt == lf + 1 && rng.gen_bool(0.6) {
                    let mut x = rng.gen_range(-2i64..=2);
                    if x == 0 {
                        x = 1;
                    }
                    entries.push((a.id, from, to, rational(x)));
                }
            }
        }
    }
    let (m, _) = MatrixModule::from_sparse(alg, &basis, &entries).expect("graded actions are truncated");
    let transforms: Vec<Matrix> = m.dims().iter().map(|&d| random_invertible(rng, d)).collect();
    m.change_basis(alg, &transforms).expect("transforms are invertible")
}

/// An invertible integer matrix: a permutation times a unit upper
/// triangular matrix with small entries.
pub fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    let mut upper = Matrix::identity(d);
    for r in 0..d {
        for c in r + 1..d {
            upper.set(r, c, rational(rng.gen_range(-1i64..=1)));
        }
    }
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut p = Matrix::zeros(d, d);
    for (r, &c) in perm.iter().enumerate() {
        p.set(r, c, rational(1));
    }
    p.mul(&upper)
}
