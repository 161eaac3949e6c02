use std::collections::HashMap;

use super::{LabeledTreeView, SignatureTable};
use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::mixdfao::{MixDfao, PhiTable};

const VERIFY_RANGE: usize = 1000;

/// Folds the labeled tree into a finite mix-DFAO. Non-root nodes are
/// equivalent when their depth-`depth` labeled subtrees and their first
/// `witness_len` subsequence symbols agree; the root keeps its own state.
pub fn collapse_to_dfao(view: &LabeledTreeView, depth: usize, witness_len: usize) -> Result<MixDfao> {
    let labels = view
        .labels()
        .ok_or_else(|| Error::InvalidArgument("collapse needs a labeled tree".into()))?;
    let table = SignatureTable::build(view, depth + 1);
    let tree = view.tree();

    let mut pool: Vec<(usize, Word)> = Vec::new();
    for n in 1..view.len() {
        if table.id(n, depth + 1).is_none() {
            continue;
        }
        match view.witness(n, witness_len) {
            Some(w) if w.len() == witness_len => pool.push((n, w)),
            _ => {}
        }
    }
    if pool.is_empty() {
        return Err(Error::NotStabilized("no node fits the probe within the view".into()));
    }

    let mut shallow: HashMap<(u32, &Word), usize> = HashMap::new();
    let mut deep: HashMap<(u32, &Word), usize> = HashMap::new();
    let mut class_of: HashMap<usize, usize> = HashMap::new();
    let mut reps = Vec::new();
    for (n, w) in &pool {
        let next = shallow.len();
        let c = *shallow
            .entry((table.id(*n, depth).expect("deeper id implies shallower"), w))
            .or_insert(next);
        let next = deep.len();
        deep.entry((table.id(*n, depth + 1).expect("pool member"), w))
            .or_insert(next);
        if c == reps.len() {
            reps.push(*n);
        }
        class_of.insert(*n, c);
    }
    if shallow.len() != deep.len() {
        return Err(Error::NotStabilized(format!(
            "{} classes at depth {depth}, {} at depth {}",
            shallow.len(),
            deep.len(),
            depth + 1
        )));
    }

    let class_row = |n: usize| -> Result<Vec<usize>> {
        let children = tree
            .children(n)
            .ok_or_else(|| Error::NotStabilized(format!("children of node {n} lie beyond the view")))?;
        children
            .map(|c| {
                class_of.get(&c).map(|&k| k + 1).ok_or_else(|| {
                    Error::NotStabilized(format!("node {c} lies outside the probed range"))
                })
            })
            .collect()
    };

    // state 0 is q0; class c becomes state c + 1
    let mut root_row = vec![0];
    root_row.extend(class_row(0)?);
    let mut rows = vec![root_row];
    let mut names = vec!["q0".to_string()];
    let mut output: Vec<Symbol> = vec![labels[0]];
    for &r in &reps {
        let row = class_row(r)?;
        if row.is_empty() {
            return Err(Error::NotStabilized(format!("representative {r} is a leaf")));
        }
        rows.push(row);
        names.push(format!("n{r}"));
        output.push(labels[r]);
    }
    let dfao = MixDfao::new(names, rows, 0, view.sigma().clone(), output)?;

    let check = view.len().min(VERIFY_RANGE);
    let produced = PhiTable::new(dfao.clone())?.sigma_prefix(check)?;
    if let Some(i) = (0..check).find(|&i| produced[i] != labels[i]) {
        return Err(Error::NotStabilized(format!(
            "collapsed automaton differs from the labels at index {i}"
        )));
    }
    Ok(dfao)
}
