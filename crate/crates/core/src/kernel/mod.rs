//! Subsequences along subtrees. For a node `n`, `S_P(n)` is `n` together
//! with all its descendants, and `σ^{S_P(n)}` reads `σ` along that set in
//! increasing order. A sequence is morphic iff finitely many such
//! subsequences occur over some rational tree function.
//!
//! Descendants of `n` at a fixed distance form one contiguous block of
//! indices, and blocks at larger distance come later, so `S_P(n)` is a
//! concatenation of blocks.

mod collapse;
mod signature;

use std::collections::{HashMap, HashSet};

pub use collapse::collapse_to_dfao;
pub use signature::{rationality_report, subtree_signature, RationalityReport, SignatureTable, Verdict};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Budget, Result};
use crate::mixdfao::{minimize, MixDfao};
use crate::sequence::SequenceView;
use crate::spec::MorphicSpec;
use crate::staircase::{staircase_tree, Gaps};
use crate::treefn::{TreeFunction, TreeSnapshot};

/// A finite tree prefix, optionally labeled breadth-first by a sequence.
#[derive(Debug, Clone)]
pub struct LabeledTreeView {
    tree: TreeSnapshot,
    labels: Option<Vec<Symbol>>,
    sigma: Alphabet,
}

impl LabeledTreeView {
    /// First `nodes` nodes of the tree of `spec`, labeled by `τ(f^∞(a))`.
    pub fn from_spec(spec: &MorphicSpec, nodes: usize, budget: Budget) -> Result<Self> {
        let tree = TreeFunction::from_spec_with_budget(spec, budget).snapshot(nodes)?;
        let labels = SequenceView::with_budget(spec.clone(), budget).prefix(tree.len())?;
        Ok(LabeledTreeView {
            tree,
            labels: Some(labels),
            sigma: spec.sigma().clone(),
        })
    }

    /// `labels` is cut to the tree length; a shorter label list cuts the tree.
    pub fn with_labels(tree: TreeSnapshot, mut labels: Vec<Symbol>, sigma: Alphabet) -> Self {
        let len = tree.len().min(labels.len());
        labels.truncate(len);
        let tree = if len < tree.len() {
            truncate(&tree, len)
        } else {
            tree
        };
        LabeledTreeView {
            tree,
            labels: Some(labels),
            sigma,
        }
    }

    /// The bare shape `t_P`.
    pub fn unlabeled(tree: TreeSnapshot) -> Self {
        LabeledTreeView {
            tree,
            labels: None,
            sigma: Alphabet::digits(1),
        }
    }

    pub fn staircase(gaps: &Gaps, limit: usize) -> Result<Self> {
        let (tree, labels) = staircase_tree(gaps, limit)?;
        Ok(Self::with_labels(
            TreeSnapshot::from_explicit(&tree),
            labels,
            crate::staircase::Staircase::alphabet(),
        ))
    }

    pub fn tree(&self) -> &TreeSnapshot {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, n: usize) -> Option<Symbol> {
        self.labels.as_ref().map(|l| l[n])
    }

    pub fn labels(&self) -> Option<&[Symbol]> {
        self.labels.as_deref()
    }

    pub fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    /// First `len` members of `S_P(n)`, or `None` if the view ends first.
    pub fn members(&self, n: usize, len: usize) -> Option<Vec<usize>> {
        level_members(&self.tree, n, len)
    }

    /// First `len` symbols of `σ^{S_P(n)}` within the view.
    pub fn witness(&self, n: usize, len: usize) -> Option<Word> {
        let labels = self.labels.as_ref()?;
        Some(self.members(n, len)?.into_iter().map(|k| labels[k]).collect())
    }
}

fn truncate(tree: &TreeSnapshot, len: usize) -> TreeSnapshot {
    let parents = &tree.parents()[1..len];
    TreeSnapshot::from_explicit(
        &crate::treefn::ExplicitTree::new(parents.to_vec()).expect("prefix of a valid tree"),
    )
}

pub(crate) fn level_members(tree: &TreeSnapshot, n: usize, len: usize) -> Option<Vec<usize>> {
    if n >= tree.len() {
        return None;
    }
    let mut out = Vec::with_capacity(len);
    let (mut lo, mut hi, mut complete) = (n, n + 1, true);
    while out.len() < len {
        let take = (hi - lo).min(len - out.len());
        out.extend(lo..lo + take);
        if out.len() == len {
            break;
        }
        if !complete {
            return None;
        }
        if lo == hi {
            // finite subtree, shorter than asked
            return Some(out);
        }
        lo = tree.first_child(lo)?;
        match tree.first_child(hi) {
            Some(end) => hi = end,
            None => (hi, complete) = (tree.len(), false),
        }
    }
    Some(out)
}

/// First `len` symbols of `σ^{S_P(n)}`, enumerating the subtree of `n`.
pub fn subsequence(spec: &MorphicSpec, n: usize, len: usize, budget: Budget) -> Result<Word> {
    let mut tree = TreeFunction::from_spec_with_budget(spec, budget);
    let members = tree.subtree_members(n, len)?;
    let mut view = SequenceView::with_budget(spec.clone(), budget);
    members.into_iter().map(|k| view.element_at(k)).collect()
}

/// The automaton of `spec` with a separate root state whose row lists the
/// root's children `δ(q0, 1) ⋯ δ(q0, ar(q0)-1)`. Reading `σ` breadth-first
/// below any state reproduces the subsequence of every node in that state.
pub fn rooted_automaton(spec: &MorphicSpec) -> MixDfao {
    let gamma = spec.gamma();
    let root_name = gamma.fresh_name("root");
    let mut names = gamma.names().to_vec();
    names.push(root_name);
    let mut rows: Vec<Vec<usize>> = gamma
        .symbols()
        .map(|b| spec.image(b).iter().map(|s| s.index()).collect())
        .collect();
    rows.push(spec.start_tail().iter().map(|s| s.index()).collect());
    let mut output = spec.coding().to_vec();
    output.push(spec.code(spec.start()));
    MixDfao::new(names, rows, gamma.len(), spec.sigma().clone(), output)
        .expect("rows of a validated spec are valid")
}

/// Breadth-first outputs below `q`: the subsequence of any node in state `q`.
pub fn state_subsequence(m: &MixDfao, q: usize, len: usize) -> Word {
    let mut out = Vec::with_capacity(len);
    let mut level = vec![q];
    while out.len() < len {
        out.extend(level.iter().take(len - out.len()).map(|&s| m.output(s)));
        level = level.iter().flat_map(|&s| m.row(s).iter().copied()).collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelClass {
    pub representative: usize,
    /// Name of the state reached by `φ_M(representative)`.
    pub state: String,
    pub witness_prefix: Word,
    pub member_count_hint: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub classes: Vec<KernelClass>,
    /// Number of pairwise distinct witness prefixes.
    pub lower: usize,
    /// Number of states of the minimized rooted automaton.
    pub upper: usize,
    pub exact: bool,
}

impl KernelReport {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

const HINT_RANGE: usize = 1024;

/// Kernel classes of `τ(f^∞(a))`, bounded between distinct witness prefixes
/// and minimized automaton states.
pub fn kernel_classes(spec: &MorphicSpec, witness_len: usize, budget: Budget) -> Result<KernelReport> {
    let witness_len = witness_len.max(1);
    let rooted = rooted_automaton(spec);
    let state_of: HashMap<&str, usize> = rooted
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let root = rooted.initial();
    let mut view = SequenceView::pure_with_budget(spec.clone(), budget);

    let constant = rooted.outputs().iter().all(|&s| s == rooted.output(root));
    let min = minimize(&rooted);
    let class_count = if constant { 1 } else { min.dfao.state_count() };
    let class_of_state = |q: usize| if constant { 0 } else { min.class_of[q] };

    let mut reps: Vec<Option<usize>> = vec![None; class_count];
    let mut states = vec![root; class_count];
    let mut hints = vec![0usize; class_count];
    let mut found = 0;
    let mut n = 0;
    while found < class_count || n < HINT_RANGE {
        let q = if n == 0 {
            root
        } else {
            let b = view.pure_at(n)?;
            state_of[spec.gamma().name(b)]
        };
        let c = class_of_state(q);
        if reps[c].is_none() {
            reps[c] = Some(n);
            states[c] = q;
            found += 1;
        }
        hints[c] += 1;
        n += 1;
    }

    let classes: Vec<KernelClass> = (0..class_count)
        .map(|c| KernelClass {
            representative: reps[c].expect("every class is reachable"),
            state: rooted.name(states[c]).to_string(),
            witness_prefix: state_subsequence(&rooted, states[c], witness_len),
            member_count_hint: hints[c],
        })
        .collect();
    let mut classes = classes;
    classes.sort_by_key(|c| c.representative);
    let lower = classes
        .iter()
        .map(|c| &c.witness_prefix)
        .collect::<HashSet<_>>()
        .len();
    Ok(KernelReport {
        lower,
        upper: class_count,
        exact: lower == class_count,
        classes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseKernel {
    /// Distinct witness prefixes over nodes whose witness fits in the view.
    pub prefix_classes: usize,
    /// Nodes that contributed a full witness.
    pub witnessed_nodes: usize,
    /// Distinct depth-`d` signatures among nodes at tree depth at most `d`,
    /// for `d = 1, 2, ...` as long as the view covers them.
    pub signature_counts: Vec<usize>,
    pub strictly_growing: bool,
}

/// Kernel and signature evidence for the staircase tree.
pub fn staircase_kernel(
    gaps: &Gaps,
    limit: usize,
    witness_len: usize,
    max_depth: usize,
) -> Result<StaircaseKernel> {
    let view = LabeledTreeView::staircase(gaps, limit)?;
    let mut witnesses = HashSet::new();
    let mut witnessed_nodes = 0;
    for n in 0..view.len() {
        if let Some(w) = view.witness(n, witness_len) {
            if w.len() == witness_len {
                witnessed_nodes += 1;
                witnesses.insert(w);
            }
        }
    }
    let table = SignatureTable::build(&view, max_depth);
    let signature_counts: Vec<usize> = (1..=max_depth)
        .map_while(|d| table.region_count(view.tree(), d))
        .collect();
    let strictly_growing =
        signature_counts.len() == max_depth && signature_counts.windows(2).all(|w| w[0] < w[1]);
    Ok(StaircaseKernel {
        prefix_classes: witnesses.len(),
        witnessed_nodes,
        signature_counts,
        strictly_growing,
    })
}


#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::mixdfao::PhiTable;
    use crate::testutil::{arb_spec, prefix};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn state_determines_subsequence(spec in arb_spec()) {
            let m = MixDfao::from_spec(&spec);
            let mut table = PhiTable::new(m.clone()).unwrap();
            let word = prefix(&spec, 150);
            let len = 24;
            for (k, &letter) in word.iter().enumerate().skip(1) {
                let sub = state_subsequence(&m, table.state(k).unwrap(), len);
                prop_assert_eq!(sub[0], letter);
                // sparse subtrees can outgrow the scan budget
                if let Ok(scanned) = subsequence(&spec, k, len, Budget(200_000)) {
                    prop_assert_eq!(&scanned, &sub);
                }
            }
        }

        #[test]
        fn kernel_bounded_by_minimized_automaton(spec in arb_spec()) {
            let r = kernel_classes(&spec, 16, Budget::DEFAULT).unwrap();
            prop_assert!(r.lower <= r.upper);
            prop_assert!(r.count() <= minimize(&rooted_automaton(&spec)).dfao.state_count());
        }

        #[test]
        fn signatures_refine(spec in arb_spec()) {
            let view = LabeledTreeView::from_spec(&spec, 3000, Budget::DEFAULT).unwrap();
            let table = SignatureTable::build(&view, 5);
            for d in 0..5 {
                prop_assert!(table.count(d) <= table.count(d + 1));
            }
            let pool: Vec<usize> = table.pool().take(300).collect();
            for &a in &pool {
                for &b in &pool {
                    for d in 0..5 {
                        if table.id(a, d + 1) == table.id(b, d + 1) {
                            prop_assert_eq!(table.id(a, d), table.id(b, d));
                        }
                    }
                }
            }
        }
    }
}
