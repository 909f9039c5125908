//! Exact integer and permutation primitives.

mod matrix;
mod perm;
mod snf;
mod word;

pub use matrix::IntMatrix;
pub use perm::{orbits, PermError, Permutation};
pub use snf::{cokernel_group, smith_diagonal, smith_normal_form, FinAbGroup, SmithForm};
pub use word::FreeWord;
