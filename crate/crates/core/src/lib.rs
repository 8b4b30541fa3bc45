pub mod abelian_group;
pub mod arith;
pub mod counting;
pub mod cyclotomic;
pub mod decompose;
pub mod error;
pub mod galois_ring;
pub mod group_ring;
pub mod ideals;
pub mod linalg;
pub mod verification;

pub use abelian_group::{AbelianGroup, GroupElement};
pub use decompose::{Decomposer, Duality};
pub use error::{Error, Result};
pub use galois_ring::{Embedding, GaloisRing, GrElement};
pub use group_ring::{GroupRing, GroupRingElement, SplitElement, SplitGroupRing};
