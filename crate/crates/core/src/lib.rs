//! Minimal factorizations of long cycles, Stanley trees, and an explicit
//! bijection between them, with exhaustive enumerators and an exact character
//! oracle for the counting identities behind it.

pub mod character;
pub mod factorization;
pub mod forward;
pub mod inverse;
pub mod perm;
pub mod plane_tree;
pub mod stanley;
pub mod verify;

pub use factorization::{FactorizationType, MinimalFactorization};
pub use forward::{run_a, RunOptions};
pub use inverse::{run_a_inverse, InverseError};
pub use perm::{Cycle, Permutation};
pub use plane_tree::PlaneTree;
pub use stanley::{StanleyTree, StanleyType};
