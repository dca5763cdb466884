//! Homological invariants of truncated path algebras `KQ/I`, where `I` is
//! generated by all paths of length `L + 1`.
//!
//! Everything here is computed combinatorially from the quiver: longest-path
//! statistics, projective dimensions of cyclic left ideals and of
//! monomially presented modules, syzygies via skeletons, finitistic
//! dimensions, and generic projective dimensions of radical-layering strata.
//! The [`oracle`] module is an independent exact-arithmetic resolution
//! engine used to cross-check the combinatorial layer.

pub mod algebra;
pub mod brute;
pub mod error;
pub mod extnat;
pub mod generic;
pub mod io;
pub mod modules;
pub mod oracle;
pub mod quiver;
pub mod random;

pub use algebra::{FindimReport, TruncatedAlgebra};
pub use error::{Error, Result};
pub use extnat::ExtNat;
pub use generic::{LayerDecomposition, SpectrumReport};
pub use modules::{MonomialModule, SemisimpleSequence, Skeleton, SlotPath, TreeModule};
pub use quiver::{Arrow, ArrowId, Path, Quiver, VertexId};
