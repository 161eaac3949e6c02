//! Morphic sequences `τ(f^∞(a))` and the equivalent ways of describing them:
//! tree functions, mix-DFAOs and abstract numeration systems, finite sets of
//! subtree subsequences, rational infinite terms, and infinitary rewriting.
//! Turtle figures over exact cyclotomic coordinates are included as well.

pub mod alphabet;
pub mod error;
pub mod kernel;
pub mod known;
pub mod mixdfao;
pub mod rewrite;
pub mod sequence;
pub mod spec;
pub mod staircase;
pub mod treefn;
pub mod turtle;

#[cfg(test)]
mod testutil;

pub use alphabet::{Alphabet, Symbol, Word};
pub use error::{Budget, Error, Result};
pub use kernel::{
    collapse_to_dfao, kernel_classes, rationality_report, staircase_kernel, subsequence,
    subtree_signature, KernelClass, KernelReport, LabeledTreeView,
};
pub use mixdfao::{
    ans_dfao_sequence, canonical_ans, minimize, sigma_m, Ans, AnsRanker, Dfao, MixDfao, PhiTable,
};
pub use rewrite::{converge_prefix, RewriteStats, RewriteSystem, RewriteTerm, Rule};
pub use sequence::{prefix_equal, PrefixComparison, SequenceView};
pub use spec::{validate_spec, MorphicSpec, RawSpec};
pub use staircase::{staircase_tree, Gaps};
pub use treefn::{k_uniform_parent_rank, ExplicitTree, TreeFunction, TreeSnapshot};
pub use turtle::{closure_check, emit_svg, trace, ClosureReport, CycPoint, Segment, TurtleConfig};
