//! Contact 3-manifolds presented as branched covers of `(S³, ξ_std)` over
//! transverse braids, with the surrounding invariants: integral homology of
//! covers, `d₃` and `Γ` of Legendrian surgery diagrams, and obstructions to
//! contact embeddings and braidings.
//!
//! ```
//! use braidcover::{format, homology};
//!
//! let lb = format::parse_labeled_braid(
//!     "strands 4\nfold 3\nword 1 2 3 1 2 3 1 2 3 1 2 3\nlabels (1 2) (1 2) (2 3) (2 3)\n",
//! )
//! .unwrap();
//! assert_eq!(homology::branched_h1(&lb).unwrap().to_string(), "Z/3");
//! ```

pub mod algebra;
pub mod braid;
pub mod cover;
pub mod format;
pub mod homology;
pub mod obstruction;
pub mod par;
pub mod surgery;

pub use algebra::{FinAbGroup, FreeWord, IntMatrix, Permutation};
pub use braid::{BraidError, BraidWord, Stabilization};
pub use cover::{CoverError, CoverReport, CoverSurface, LabeledBraid, Site};
pub use homology::{branched_h1, branched_h1_batch, GroupPresentation};
pub use obstruction::{Move, MoveTrace, Status, Verdict};
pub use surgery::{ContFrac, H1Class, SurgeryDiagram, SurgeryError};
