use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use super::LabeledTreeView;
use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::treefn::TreeSnapshot;

/// Node symbol of the truncated term: arity, and the label when present.
type NodeSymbol = (usize, Option<Symbol>);

/// Hash-consed depth-truncated subtrees. Two nodes get the same id at
/// depth `d` iff their depth-`d` truncations are isomorphic, since each id
/// stands for one structural key `(symbol, child ids)`.
#[derive(Debug, Clone)]
pub struct SignatureTable {
    ids: Vec<Vec<Option<u32>>>,
    keys: Vec<(NodeSymbol, Vec<u32>)>,
}

impl SignatureTable {
    /// Ids for depths `0..=max_depth`; `None` marks subtrees leaving the view.
    pub fn build(view: &LabeledTreeView, max_depth: usize) -> Self {
        let tree = view.tree();
        let n = tree.len();
        let mut lookup: HashMap<(NodeSymbol, Vec<u32>), u32> = HashMap::new();
        let mut keys = Vec::new();
        let mut intern = |key: (NodeSymbol, Vec<u32>)| -> u32 {
            if let Some(&id) = lookup.get(&key) {
                return id;
            }
            let id = keys.len() as u32;
            keys.push(key.clone());
            lookup.insert(key, id);
            id
        };
        let symbols: Vec<Option<NodeSymbol>> = (0..n)
            .map(|k| tree.children(k).map(|c| (c.len(), view.label(k))))
            .collect();
        let mut ids: Vec<Vec<Option<u32>>> = Vec::with_capacity(max_depth + 1);
        ids.push(symbols.iter().map(|s| s.map(|s| intern((s, Vec::new())))).collect());
        for d in 1..=max_depth {
            let prev = &ids[d - 1];
            let layer = (0..n)
                .map(|k| {
                    let sym = symbols[k]?;
                    let children = tree.children(k)?;
                    let child_ids: Option<Vec<u32>> = children
                        .map(|c| prev.get(c).copied().flatten())
                        .collect();
                    Some(intern((sym, child_ids?)))
                })
                .collect();
            ids.push(layer);
        }
        SignatureTable { ids, keys }
    }

    pub fn max_depth(&self) -> usize {
        self.ids.len() - 1
    }

    pub fn id(&self, n: usize, depth: usize) -> Option<u32> {
        self.ids.get(depth)?.get(n).copied().flatten()
    }

    /// Nodes whose deepest signature is defined.
    pub fn pool(&self) -> impl Iterator<Item = usize> + '_ {
        let last = &self.ids[self.ids.len() - 1];
        (0..last.len()).filter(move |&k| last[k].is_some())
    }

    /// Distinct depth-`d` signatures over the pool.
    pub fn count(&self, depth: usize) -> usize {
        self.pool()
            .filter_map(|k| self.id(k, depth))
            .collect::<HashSet<_>>()
            .len()
    }

    /// Distinct depth-`d` signatures among nodes at tree depth at most `d`,
    /// or `None` if one of them has a subtree leaving the view.
    pub fn region_count(&self, tree: &TreeSnapshot, depth: usize) -> Option<usize> {
        let mut ids = HashSet::new();
        for k in (0..tree.len()).take_while(|&k| tree.depth(k) <= depth) {
            ids.insert(self.id(k, depth)?);
        }
        if tree.is_empty() || tree.depth(tree.len() - 1) <= depth {
            // the region itself may continue past the view
            return None;
        }
        Some(ids.len())
    }

    /// Expands an id back into the canonical text form.
    pub fn decode(&self, id: u32, view: &LabeledTreeView) -> String {
        let mut out = String::new();
        self.decode_into(id, view, &mut out);
        out
    }

    fn decode_into(&self, id: u32, view: &LabeledTreeView, out: &mut String) {
        let ((arity, label), children) = &self.keys[id as usize];
        push_symbol(out, *arity, *label, view);
        if !children.is_empty() {
            out.push('(');
            for (i, &c) in children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.decode_into(c, view, out);
            }
            out.push(')');
        }
    }
}

fn push_symbol(out: &mut String, arity: usize, label: Option<Symbol>, view: &LabeledTreeView) {
    let _ = write!(out, "{arity}");
    if let Some(l) = label {
        let _ = write!(out, ":{}", view.sigma().name(l));
    }
}

/// Canonical preorder text of the depth-truncated subtree at `n`:
/// `arity[:label]` followed by the children in parentheses.
pub fn subtree_signature(view: &LabeledTreeView, n: usize, depth: usize) -> Result<String> {
    let mut out = String::new();
    encode(view, n, depth, &mut out)?;
    Ok(out)
}

fn encode(view: &LabeledTreeView, n: usize, depth: usize, out: &mut String) -> Result<()> {
    let children = view
        .tree()
        .children(n)
        .ok_or(Error::BudgetExceeded {
            needed: n + 2,
            budget: view.len(),
        })?;
    push_symbol(out, children.len(), view.label(n), view);
    if depth > 0 && !children.is_empty() {
        out.push('(');
        for (i, c) in children.enumerate() {
            if i > 0 {
                out.push(',');
            }
            encode(view, c, depth - 1, out)?;
        }
        out.push(')');
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    RationalWithinBudget,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::RationalWithinBudget => "RATIONAL-WITHIN-BUDGET",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalityReport {
    /// `counts[d - 1]` = distinct depth-`d` signatures among nodes at tree
    /// depth at most `d`. Stops early when the view is too small.
    pub counts: Vec<usize>,
    pub verdict: Verdict,
}

impl RationalityReport {
    pub fn depths_covered(&self) -> usize {
        self.counts.len()
    }
}

/// Per-depth signature counts and a rationality verdict for the view. The
/// verdict is rational when the last three counts agree and the children of
/// the nodes above the last level introduce no new class.
pub fn rationality_report(view: &LabeledTreeView, max_depth: usize) -> Result<RationalityReport> {
    if max_depth == 0 {
        return Err(Error::InvalidArgument("max depth must be at least 1".into()));
    }
    let table = SignatureTable::build(view, max_depth);
    let counts: Vec<usize> = (1..=max_depth)
        .map_while(|d| table.region_count(view.tree(), d))
        .collect();
    if counts.is_empty() {
        return Err(Error::BudgetExceeded {
            needed: view.len() + 1,
            budget: view.len(),
        });
    }
    let covered = counts.len();
    let stable = covered == max_depth
        && covered >= 3
        && counts[covered - 3..].windows(2).all(|w| w[0] == w[1]);
    let verdict = if stable && closed(&table, view.tree(), max_depth - 1) {
        Verdict::RationalWithinBudget
    } else {
        Verdict::Inconclusive
    };
    Ok(RationalityReport { counts, verdict })
}

/// Children of the nodes at depth at most `d` carry depth-`d` classes
/// already present at depth at most `d`.
fn closed(table: &SignatureTable, tree: &TreeSnapshot, d: usize) -> bool {
    let region: Vec<usize> = (0..tree.len()).take_while(|&k| tree.depth(k) <= d).collect();
    let known: HashSet<u32> = region.iter().filter_map(|&k| table.id(k, d)).collect();
    region.iter().all(|&k| {
        tree.children(k)
            .is_some_and(|mut c| c.all(|x| table.id(x, d).is_some_and(|id| known.contains(&id))))
    })
}
