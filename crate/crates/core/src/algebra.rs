//! The truncated path algebra and its closed-form homological functions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::quiver::{Path, Quiver, VertexId};

/// `KQ/I` with `I` generated by all paths of length `L + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedAlgebra {
    name: String,
    quiver: Quiver,
    bound: usize,
}

/// `l_deg(c) = floor(c / (L+1)) + floor((c + l) / (L+1))`, on plain integers.
///
/// Floor division, so a negative `c` is allowed; the dichotomy bracket uses
/// `c = m - 1` with `m = 0`.
pub fn l_degree(bound: usize, l: usize, c: i64) -> i64 {
    let modulus = bound as i64 + 1;
    c.div_euclid(modulus) + (c + l as i64).div_euclid(modulus)
}

/// The finitistic dimension together with the quantities that certify it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FindimReport {
    /// Largest finite projective dimension of a cyclic ideal generated by a
    /// positive-length path, or `-1` if there is none.
    pub s: i64,
    pub findim: u64,
    /// A `(vertex, length)` pair attaining `s`: any path of that length
    /// ending at that vertex generates a cyclic ideal of dimension `s`.
    pub witness: Option<(VertexId, usize)>,
    /// Longest path starting at a non-cyclebound vertex; `None` when every
    /// vertex is cyclebound.
    pub longest_acyclic_path: Option<u64>,
    /// Maximum projective dimension of a non-cyclebound simple module.
    pub max_simple_pdim: Option<u64>,
    /// `[B, B + 1]` with `B = 1 + 1-deg(m - 1)`.
    pub bracket: Option<(u64, u64)>,
}

impl TruncatedAlgebra {
    pub fn new(name: impl Into<String>, quiver: Quiver, bound: usize) -> Result<Self> {
        if bound < 1 {
            return Err(Error::InvalidLoewyBound(bound));
        }
        Ok(TruncatedAlgebra {
            name: name.into(),
            quiver,
            bound,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// `L`: nonzero paths have length at most `L`, the Loewy length is `L + 1`.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// The `l`-degree of `c`; infinity stays infinity.
    pub fn l_deg(&self, l: usize, c: ExtNat) -> Result<ExtNat> {
        if l > self.bound {
            return Err(Error::LayerOutOfRange {
                layer: l,
                bound: self.bound,
            });
        }
        Ok(self.l_deg_unchecked(l, c))
    }

    pub(crate) fn l_deg_unchecked(&self, l: usize, c: ExtNat) -> ExtNat {
        match c {
            ExtNat::Inf => ExtNat::Inf,
            ExtNat::Fin(c) => ExtNat::Fin(l_degree(self.bound, l, c as i64) as u64),
        }
    }

    fn check_path(&self, q: &Path) -> Result<()> {
        if q.len() > self.bound {
            return Err(Error::PathTooLong {
                length: q.len(),
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// Projective dimension of a cyclic ideal generated by a path of length
    /// `len` ending at `target`.
    pub fn pdim_cyclic_shape(&self, target: VertexId, len: usize) -> ExtNat {
        if len == 0 {
            return ExtNat::ZERO;
        }
        self.l_deg_unchecked(len, self.quiver.c_out(target))
    }

    /// Projective dimension of the left ideal generated by `q`.
    pub fn pdim_cyclic(&self, q: &Path) -> Result<ExtNat> {
        self.check_path(q)?;
        Ok(self.pdim_cyclic_shape(q.target(), q.len()))
    }

    /// The maximal paths of length at most `max_len` from `v` in the
    /// initial-subpath order: paths of exactly that length, or shorter ones
    /// ending in a sink.
    pub fn maximal_paths(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let quiver = &self.quiver;
        quiver
            .enumerate_paths(v, max_len)
            .into_iter()
            .filter(|p| p.len() == max_len || quiver.is_sink(p.target()))
            .collect()
    }

    /// Presents `Lambda q` as the tree module `Lambda e / V` with `e` the
    /// target of `q`. Returns the branches and the generators `beta b_i` of
    /// `V`, all paths starting at `e`.
    pub fn branches_and_syzygy_of_cyclic(&self, q: &Path) -> Result<(Vec<Path>, Vec<Path>)> {
        self.check_path(q)?;
        Ok(self.branches_and_syzygy_of_shape(q.target(), q.len()))
    }

    /// As [`Self::branches_and_syzygy_of_cyclic`], for any path of length
    /// `len` ending at `target`.
    pub fn branches_and_syzygy_of_shape(&self, target: VertexId, len: usize) -> (Vec<Path>, Vec<Path>) {
        let room = self.bound - len;
        let branches = self.maximal_paths(target, room);
        let mut syzygy = Vec::new();
        for b in &branches {
            if b.len() + 1 > self.bound {
                continue;
            }
            for &beta in self.quiver.outgoing(b.target()) {
                syzygy.push(b.then(&self.quiver, beta).expect("outgoing arrow"));
            }
        }
        syzygy.sort();
        (branches, syzygy)
    }

    /// Projective dimension of the simple module at `v`.
    pub fn pdim_simple(&self, v: VertexId) -> ExtNat {
        let q = &self.quiver;
        if q.is_sink(v) {
            return ExtNat::ZERO;
        }
        if q.is_cyclebound(v) {
            return ExtNat::Inf;
        }
        let worst = q
            .outgoing(v)
            .iter()
            .map(|&a| self.pdim_cyclic_shape(q.arrow(a).target, 1))
            .max()
            .expect("non-sink has an arrow");
        worst + 1
    }

    /// Finitistic dimension via the scan over `(vertex, longest incoming
    /// length)`: a path of length `l` ending at `e` exists iff
    /// `l <= min(L, b_in(e))`, and `l_deg` is nondecreasing in `l`.
    pub fn findim(&self) -> FindimReport {
        let q = &self.quiver;
        let mut best: Option<(u64, VertexId, usize)> = None;
        for e in q.vertices() {
            if q.is_cyclebound(e) {
                continue;
            }
            let longest_in = match q.b_in(e) {
                ExtNat::Inf => self.bound,
                ExtNat::Fin(b) => (b as usize).min(self.bound),
            };
            if longest_in == 0 {
                continue;
            }
            let c = q.c_out(e);
            let value = self
                .l_deg_unchecked(longest_in, c)
                .finite()
                .expect("non-cyclebound vertex has finite c");
            // Smallest length reaching the value, for a tidy witness.
            let length = (1..=longest_in)
                .find(|&l| self.l_deg_unchecked(l, c) == ExtNat::Fin(value))
                .expect("longest_in attains the value");
            if best.is_none_or(|(v, _, _)| value > v) {
                best = Some((value, e, length));
            }
        }
        let (s, findim, witness) = match best {
            Some((v, e, l)) => (v as i64, v + 1, Some((e, l))),
            None => (-1, 0, None),
        };

        let m = q.vertices().filter_map(|v| q.c_out(v).finite()).max();
        let max_simple_pdim = q
            .vertices()
            .filter(|&v| !q.is_cyclebound(v))
            .filter_map(|v| self.pdim_simple(v).finite())
            .max();
        let bracket = m.map(|m| {
            let lower = 1 + l_degree(self.bound, 1, m as i64 - 1);
            (lower as u64, lower as u64 + 1)
        });

        FindimReport {
            s,
            findim,
            witness,
            longest_acyclic_path: m,
            max_simple_pdim,
            bracket,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn algebra(names: Vec<&str>, arrows: Vec<(&str, usize, usize)>, bound: usize) -> TruncatedAlgebra {
        TruncatedAlgebra::new("t", Quiver::new(names, arrows).unwrap(), bound).unwrap()
    }

    #[test]
    fn rejects_zero_bound() {
        let q = Quiver::new(vec!["1"], Vec::<(String, usize, usize)>::new()).unwrap();
        assert_eq!(TruncatedAlgebra::new("t", q, 0).unwrap_err(), Error::InvalidLoewyBound(0));
    }

    #[test]
    fn l_deg_values() {
        let a = algebra(vec!["1"], vec![], 3);
        assert_eq!(a.l_deg(3, ExtNat::Fin(5)).unwrap(), ExtNat::Fin(3));
        assert_eq!(a.l_deg(1, ExtNat::Fin(7)).unwrap(), ExtNat::Fin(3));
        for l in 0..=3 {
            assert_eq!(a.l_deg(l, ExtNat::Fin(0)).unwrap(), ExtNat::Fin(0));
            assert_eq!(a.l_deg(l, ExtNat::Inf).unwrap(), ExtNat::Inf);
        }
        assert!(matches!(a.l_deg(4, ExtNat::Fin(1)), Err(Error::LayerOutOfRange { .. })));
        assert_eq!(l_degree(3, 1, -1), -1);
    }

    #[test]
    fn a2_findim_is_one() {
        let a = algebra(vec!["1", "2"], vec![("a", 0, 1)], 1);
        let r = a.findim();
        assert_eq!(r.s, 0);
        assert_eq!(r.findim, 1);
        assert_eq!(a.pdim_simple(VertexId(0)), ExtNat::Fin(1));
        assert_eq!(a.pdim_simple(VertexId(1)), ExtNat::Fin(0));
    }

    #[test]
    fn single_loop_findim_is_zero() {
        for bound in 1..4 {
            let a = algebra(vec!["1"], vec![("x", 0, 0)], bound);
            let r = a.findim();
            assert_eq!(r.s, -1);
            assert_eq!(r.findim, 0);
            assert_eq!(r.witness, None);
            assert_eq!(r.longest_acyclic_path, None);
            assert_eq!(a.pdim_simple(VertexId(0)), ExtNat::Inf);
        }
    }

    #[test]
    fn trivial_and_overlong_paths() {
        let a = algebra(vec!["1", "2", "3"], vec![("a", 0, 1), ("b", 1, 2)], 1);
        assert_eq!(a.pdim_cyclic(&Path::trivial(VertexId(0))).unwrap(), ExtNat::ZERO);
        let q = a.quiver().enumerate_paths(VertexId(0), 2).pop().unwrap();
        assert_eq!(q.len(), 2);
        assert!(matches!(a.pdim_cyclic(&q), Err(Error::PathTooLong { .. })));
    }

    #[test]
    fn projective_has_no_syzygy() {
        let a = algebra(vec!["1", "2"], vec![("a", 0, 1)], 2);
        let (branches, syz) = a.branches_and_syzygy_of_cyclic(&Path::trivial(VertexId(0))).unwrap();
        assert_eq!(branches.len(), 1);
        assert!(syz.is_empty());
    }
}
