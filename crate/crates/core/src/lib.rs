//! Exact combinatorics of the permutahedron `Π_n`: Bruhat order, matroids and their
//! quotients, lattice path matroids and their flags, Bruhat interval polytopes, and the
//! hyperplane splits and split-refinement subdivisions of `Π_n`.

pub mod error;
pub mod lpm;
pub mod matroid;
pub mod perm;
pub mod polytope;
pub mod rational;
pub mod splits;
pub mod subdivision;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use lpm::{flag_of_interval, is_lpm, lpfm_interval, quotient_chain, LatticePathMatroid, LpfmFlag};
pub use matroid::{is_quotient, QuotientCriterion, SetMatroid};
pub use perm::{bruhat_interval, bruhat_leq, dual_interval, BruhatInterval, Permutation};
pub use polytope::{enumerate_vertices, flag_polytope_vertices, is_bip, LinearConstraint, RationalPoint};
pub use splits::{check_split, dual_hyperplane, exhaustive_scan, parse_hyperplane, predicted_cells, theorem_hyperplanes, SplitHyperplane, SplitReport, SplitVerdict};
pub use subdivision::{build_poset, export_poset, refines, subdivision_from_hyperplanes, Subdivision, SubdivisionPoset};
pub use subset::ElementSet;
