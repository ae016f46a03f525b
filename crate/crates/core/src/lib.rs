//! Γ-free 0-1 matrices and the bijections connecting them to Callan sequences,
//! increasing forests, non-ambiguous forests and permutation pairs with no
//! common rise, together with exact counting and exhaustive enumeration.
//!
//! Matrices use bottom-up row indices and right-to-left column indices
//! throughout; see [`BinaryMatrix`].

pub mod callan;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod forest;
pub mod gamma;
pub mod matrix;
pub mod par;
pub mod perm;
pub mod phi;
pub mod pi;
pub mod psi;
pub mod verify;

pub use callan::{CallanPair, CallanSequence};
pub use error::{Error, Result};
pub use forest::{LabeledForest, Node};
pub use gamma::{find_gamma_witness, is_gamma_free, GammaWitness};
pub use matrix::{BinaryMatrix, Pos};
pub use par::Exec;
pub use perm::{PermPair, Point, PointSequence};
pub use phi::{phi, phi_inverse};
pub use pi::{pi, pi_inverse};
pub use psi::{matrix_to_pair, pair_to_matrix, psi, psi_inverse, PointForest};
