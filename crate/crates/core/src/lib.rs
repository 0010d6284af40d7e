//! Involutive set-theoretic solutions of the Yang–Baxter equation of
//! multipermutation level 2.
//!
//! Solutions are handled as involutive biracks `(X, ∘, •)` on `{0, …, n-1}`,
//! with `r(x, y) = (x∘y, x•y)`. Distributive ones are sums of trivial affine
//! meshes; the remaining level-2 ones are isotopes of distributive ones.
//!
//! ```
//! use ybmesh::{FiniteAbelianGroup, TrivialAffineMesh};
//!
//! let z3 = FiniteAbelianGroup::cyclic(3);
//! let mesh = TrivialAffineMesh::new(vec![z3], vec![vec![vec![1]]]).unwrap();
//! let b = mesh.sum().unwrap();
//! assert_eq!(b.circ().row(0), &[1, 2, 0]);
//! assert_eq!(b.mp_level(), Some(1));
//! ```

pub mod abelian;
pub mod birack;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod io;
pub mod isotope;
pub mod limit;
pub mod lq;
pub mod mesh;
pub mod perm;

pub use abelian::{abelian_groups_of_order, FiniteAbelianGroup, GroupElement};
pub use birack::{BirackPropertyTag, BraidReport, InvolutiveBirack, RetractionResult};
pub use canon::{canonical_form, CanonicalForm};
pub use enumerate::{Budget, CatalogEntry, CountReport, Kind, Provenance};
pub use error::{Axiom, Error, Result};
pub use group::PermutationGroup;
pub use isotope::{IsoCondition, IsotopeWitness};
pub use limit::WorkLimit;
pub use lq::{LeftQuasigroup, PropertyTag};
pub use mesh::TrivialAffineMesh;
pub use perm::Permutation;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/left-quasigroups.md")]
    mod left_quasigroups {}
    #[doc = include_str!("../../../book/src/solutions.md")]
    mod solutions {}
    #[doc = include_str!("../../../book/src/meshes.md")]
    mod meshes {}
    #[doc = include_str!("../../../book/src/isotopes.md")]
    mod isotopes {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
