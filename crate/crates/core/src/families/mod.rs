//! Generators for infinite structures and the `w_h` toolkit.

pub mod amc;
pub mod generator;
pub mod invariant;
pub mod series;
pub mod ten;

pub use amc::{amc_build, AmcTemplate, Coord};
pub use generator::{lex_sum, obstruction_search, ordered_multichain, FamilyGenerator, Part, PartSize};
pub use invariant::{extract_invariant_subset, ChainMap, InvariantTriple};
pub use series::{growth_root, higman_leq, printed_profile_series, series_expand, w_sequence, Alphabet, RationalSeries};
pub use ten::ten_graph;
