//! Universal partial words over finite alphabets.
//!
//! A partial word mixes letters with wildcard cells (rendered `*` or the
//! unicode diamond). It is universal for length `n` when every length-`n`
//! word over the alphabet occurs exactly once as a factor, counting a window
//! with `d` wildcards as all of its `alpha^d` completions at once.
//!
//! The crate provides:
//! - verification: [`coverage`], [`universality`], [`is_universal`]
//! - graph machinery: [`DeBruijnGraph`], Eulerian paths, walk-to-word
//! - closed-form constructions of universal words: [`construct`]
//! - existence/nonexistence verdicts with theorem tags: [`feasibility`]
//! - exhaustive template search with an independent oracle: [`search`]

pub mod alphabet;
pub mod constructions;
pub mod coverage;
pub mod debruijn;
pub mod error;
pub mod feasibility;
pub mod search;
pub mod tables;
pub mod template;
pub mod word;

pub use alphabet::{Alphabet, Symbol};
pub use constructions::{
    construct, construct_nm1_diamonds, construct_pos1, construct_posk, construct_two_diamonds,
    trivial, ConstructionRequest, Family,
};
pub use coverage::{
    coverage, coverage_with_limit, decode_word, encode_word, is_universal, render_factor,
    universality, universality_with_limit, window_expansion, window_expansion_with_limit,
    CoverageMap, Duplicate, UniversalityReport, WindowExpansion,
};
pub use debruijn::{word_from_walk, DeBruijnGraph, Direction, EdgeWalk};
pub use error::{Error, PathIssue, Result};
pub use feasibility::{
    cyclic_parameter_verdict, cyclic_template_verdict, cyclic_witness_n4, prefix_run_verdict,
    propagate_constraints, single_diamond_verdict, two_diamond_shape_verdict, Contradiction,
    CyclicVerdict, Existence, Propagation, Refinement, Relation, TheoremId, Verdict,
};
pub use search::{
    brute_force_oracle, exhaustive_search, exhaustive_search_parallel, pattern_length_check,
    single_diamond_template, sweep_single_diamond, SearchMode, SearchResult, SearchSpec,
    StopReason, DEFAULT_NODE_BUDGET,
};
pub use tables::{entries, single_diamond_rows, table1_witness, table2_witness_for_shape, EntryStatus, TableEntry};
pub use template::{Cell, DiamondTemplate};
pub use word::{canonical_cyclic, canonicalize, truncated_complement, PartialWord};
