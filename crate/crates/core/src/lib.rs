//! Exact computations on the symmetric groups: permutations, partitions and
//! hook lengths, Robinson–Schensted, Murnaghan–Nakayama characters, the
//! outer automorphisms of `S_6`, twisted-involution counts and fiber searches.
//!
//! Every count is exact. Group scans are split into rank chunks and reduced
//! by integer addition, so results do not depend on the rayon pool size.

pub mod automorphisms;
pub mod characters;
pub mod cli;
pub mod fibers;
pub mod partitions;
pub mod perm;
pub mod report;
pub mod rsk;
pub mod twisted;

pub use automorphisms::{Automorphism, VerifyMode};
pub use partitions::Partition;
pub use perm::Permutation;
pub use rsk::StandardTableau;
