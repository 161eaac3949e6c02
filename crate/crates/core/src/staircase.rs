//! The staircase tree: a spine of nodes labeled 1, where every spine node
//! also carries a copy of a fixed tree `T` whose nodes are labeled 0 and
//! whose layer `i` holds exactly `n_i` nodes.
//!
//! Inside `T`, layer `i` hands one child to each of its `n_i` nodes and the
//! `n_{i+1} - n_i` extra children go to the first node of the layer.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::treefn::ExplicitTree;

/// Non-decreasing positive layer sizes `n_1 ≤ n_2 ≤ ⋯` of `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Gaps {
    /// `n_i = start + step·(i-1)`.
    Linear { start: usize, step: usize },
    /// `n_i = i^exponent`.
    Power { exponent: u32 },
    /// Listed values, the last one repeated forever.
    Listed(Vec<usize>),
}

impl Gaps {
    pub fn validate(&self) -> Result<()> {
        match self {
            Gaps::Linear { start, .. } if *start == 0 => {
                Err(Error::InvalidGaps("n_1 must be at least 1".into()))
            }
            Gaps::Listed(v) if v.is_empty() => Err(Error::InvalidGaps("no gaps listed".into())),
            Gaps::Listed(v) => {
                if v[0] == 0 {
                    return Err(Error::InvalidGaps("n_1 must be at least 1".into()));
                }
                if let Some(w) = v.windows(2).find(|w| w[1] < w[0]) {
                    return Err(Error::InvalidGaps(format!(
                        "gaps decrease from {} to {}",
                        w[0], w[1]
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `n_i` for `i ≥ 1`; `n_0 = 1` is the root of `T`.
    pub fn layer(&self, i: usize) -> usize {
        if i == 0 {
            return 1;
        }
        match self {
            Gaps::Linear { start, step } => start + step * (i - 1),
            Gaps::Power { exponent } => i.pow(*exponent),
            Gaps::Listed(v) => v[(i - 1).min(v.len() - 1)],
        }
    }

    pub fn is_strictly_increasing(&self) -> bool {
        match self {
            Gaps::Linear { step, .. } => *step > 0,
            Gaps::Power { exponent } => *exponent > 0,
            Gaps::Listed(_) => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Spine,
    /// Node `index` of layer `depth` of a `T` copy.
    Copy { depth: usize, index: usize },
}

/// Breadth-first node stream of the staircase tree: yields `(P(n), label(n))`
/// for `n = 1, 2, ...`. Node 0 is the root spine node, labeled 1.
#[derive(Debug, Clone)]
pub struct Staircase {
    gaps: Gaps,
    kinds: Vec<Kind>,
    pending: std::collections::VecDeque<(usize, Kind)>,
    cursor: usize,
}

impl Staircase {
    pub fn new(gaps: Gaps) -> Result<Self> {
        gaps.validate()?;
        Ok(Staircase {
            gaps,
            kinds: vec![Kind::Spine],
            pending: Default::default(),
            cursor: 0,
        })
    }

    fn children(&self, kind: Kind) -> Vec<Kind> {
        match kind {
            Kind::Spine => vec![Kind::Spine, Kind::Copy { depth: 0, index: 0 }],
            Kind::Copy { depth, index } => {
                let surplus = self.gaps.layer(depth + 1) - self.gaps.layer(depth);
                let child = |index| Kind::Copy {
                    depth: depth + 1,
                    index,
                };
                if index == 0 {
                    (0..=surplus).map(child).collect()
                } else {
                    vec![child(surplus + index)]
                }
            }
        }
    }

    pub fn label_of(kind_is_spine: bool) -> Symbol {
        if kind_is_spine {
            Symbol(1)
        } else {
            Symbol(0)
        }
    }

    /// Labels live in the alphabet `{0, 1}`.
    pub fn alphabet() -> Alphabet {
        Alphabet::digits(2)
    }
}

impl Iterator for Staircase {
    type Item = (usize, Symbol);

    fn next(&mut self) -> Option<Self::Item> {
        while self.pending.is_empty() {
            let kind = self.kinds[self.cursor];
            for child in self.children(kind) {
                self.pending.push_back((self.cursor, child));
            }
            self.cursor += 1;
        }
        let (parent, kind) = self.pending.pop_front()?;
        self.kinds.push(kind);
        Some((parent, Staircase::label_of(kind == Kind::Spine)))
    }
}

/// The first `limit` nodes of the staircase tree and their labels.
pub fn staircase_tree(gaps: &Gaps, limit: usize) -> Result<(ExplicitTree, Vec<Symbol>)> {
    if limit == 0 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    let stream = Staircase::new(gaps.clone())?;
    let mut parents = Vec::with_capacity(limit - 1);
    let mut labels = Vec::with_capacity(limit);
    labels.push(Symbol(1));
    for (p, label) in stream.take(limit - 1) {
        parents.push(p);
        labels.push(label);
    }
    Ok((ExplicitTree::new(parents)?, labels))
}

/// Lengths of the zero runs between consecutive ones of a 0/1 label word.
pub fn zero_runs(labels: &[Symbol]) -> Vec<usize> {
    let ones: Vec<usize> = labels
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Symbol(1))
        .map(|(i, _)| i)
        .collect();
    ones.windows(2).map(|w| w[1] - w[0] - 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Zero runs predicted directly: 0, then 1 + n_1 + ... + n_k.
    fn predicted_runs(gaps: &Gaps, count: usize) -> Vec<usize> {
        let mut runs = vec![0];
        let mut acc = 1;
        for k in 1..count {
            runs.push(acc);
            acc += gaps.layer(k);
        }
        runs
    }

    #[test]
    fn all_ones_gaps() {
        let gaps = Gaps::Linear { start: 1, step: 0 };
        let (_, labels) = staircase_tree(&gaps, 15).unwrap();
        let runs = zero_runs(&labels);
        assert_eq!(&runs[..4], &[0, 1, 2, 3]);
    }

    #[test]
    fn linear_gaps_match_the_run_formula() {
        let gaps = Gaps::Linear { start: 1, step: 1 };
        let (_, labels) = staircase_tree(&gaps, 50).unwrap();
        let runs = zero_runs(&labels);
        assert_eq!(&runs[..5], &[0, 1, 2, 4, 7]);
        assert_eq!(runs, predicted_runs(&gaps, runs.len()));
    }

    #[test]
    fn quadratic_gaps_match_the_run_formula() {
        let gaps = Gaps::Power { exponent: 2 };
        let (_, labels) = staircase_tree(&gaps, 3000).unwrap();
        let runs = zero_runs(&labels);
        assert!(runs.len() >= 6);
        assert_eq!(runs, predicted_runs(&gaps, runs.len()));
    }

    #[test]
    fn layer_sizes_of_the_copy() {
        // count T nodes by depth below the first spine node's copy
        let gaps = Gaps::Linear { start: 2, step: 3 };
        let stream = Staircase::new(gaps.clone()).unwrap();
        let mut depth_in_copy = vec![None; 1];
        let mut counts = [0usize; 8];
        for (p, label) in stream.take(20_000) {
            let d = if label == Symbol(0) {
                match depth_in_copy[p] {
                    Some(d) => Some(d + 1),
                    None if p == 0 => Some(0),
                    None => None,
                }
            } else {
                None
            };
            depth_in_copy.push(d);
            if let Some(d) = d {
                if d < counts.len() {
                    counts[d] += 1;
                }
            }
        }
        assert_eq!(counts[0], 1);
        for (i, &c) in counts.iter().enumerate().take(5).skip(1) {
            assert_eq!(c, gaps.layer(i), "layer {i}");
        }
    }

    #[test]
    fn single_node_and_invalid_gaps() {
        let (tree, labels) = staircase_tree(&Gaps::Linear { start: 1, step: 1 }, 1).unwrap();
        assert_eq!(tree.node_count(), 1);
        assert_eq!(labels, vec![Symbol(1)]);
        assert!(matches!(
            staircase_tree(&Gaps::Listed(vec![2, 1]), 10),
            Err(Error::InvalidGaps(_))
        ));
        assert!(matches!(
            staircase_tree(&Gaps::Listed(vec![0, 1]), 10),
            Err(Error::InvalidGaps(_))
        ));
        assert!(matches!(
            staircase_tree(&Gaps::Linear { start: 0, step: 1 }, 10),
            Err(Error::InvalidGaps(_))
        ));
    }
}
