//! Tree functions: the parent map `P : N⁺ → N` and child rank `R`.
//!
//! For a spec, node `n > 0` is produced by the letter at `P(n)` and sits at
//! position `R(n)` of that letter's image. The root's children are the
//! letters of `u` in `f(a) = a·u`, so their ranks start at 1.

use std::fmt;
use std::ops::Range;

use crate::alphabet::Symbol;
use crate::error::{Budget, Error, Result};
use crate::sequence::SequenceView;
use crate::spec::MorphicSpec;

/// Finite parent array `parents[k] = P(k+1)`, optionally extendable.
pub struct ExplicitTree {
    parents: Vec<usize>,
    generator: Option<Box<dyn FnMut() -> usize + Send>>,
}

impl fmt::Debug for ExplicitTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExplicitTree")
            .field("parents", &self.parents)
            .field("generator", &self.generator.is_some())
            .finish()
    }
}

impl ExplicitTree {
    /// Validates `P(1) = 0`, `P(n) < n` and weak monotone surjectivity
    /// (`P(n+1) - P(n) ∈ {0, 1}`) on the given range.
    pub fn new(parents: Vec<usize>) -> Result<Self> {
        if let Some(&first) = parents.first() {
            if first != 0 {
                return Err(Error::InvalidArgument(format!("P(1) = {first}, expected 0")));
            }
        }
        for k in 1..parents.len() {
            let (prev, cur) = (parents[k - 1], parents[k]);
            if cur != prev && cur != prev + 1 {
                return Err(Error::InvalidArgument(format!(
                    "P({}) = {cur} after P({}) = {prev}: not weakly monotone and surjective",
                    k + 1,
                    k
                )));
            }
            if cur > k {
                return Err(Error::InvalidArgument(format!("P({}) = {cur} is not below {}", k + 1, k + 1)));
            }
        }
        Ok(ExplicitTree {
            parents,
            generator: None,
        })
    }

    /// A tree whose parents come from `next`, called once per node `1, 2, ...`.
    pub fn from_generator(next: impl FnMut() -> usize + Send + 'static) -> Self {
        ExplicitTree {
            parents: Vec::new(),
            generator: Some(Box::new(next)),
        }
    }

    pub fn with_generator(mut self, next: impl FnMut() -> usize + Send + 'static) -> Self {
        self.generator = Some(Box::new(next));
        self
    }

    /// Number of nodes whose parent is known, including the root.
    pub fn node_count(&self) -> usize {
        self.parents.len() + 1
    }

    pub fn parents(&self) -> &[usize] {
        &self.parents
    }

    /// P(n) for `n ≥ 1`, extending through the generator when possible.
    fn parent_of(&mut self, n: usize) -> Result<usize> {
        while self.parents.len() < n {
            let gen = self
                .generator
                .as_mut()
                .ok_or(Error::ExplicitRangeExhausted(n))?;
            let k = self.parents.len() + 1;
            let p = gen();
            let ok = match self.parents.last() {
                None => p == 0,
                Some(&prev) => (p == prev || p == prev + 1) && p < k,
            };
            if !ok {
                return Err(Error::InvalidArgument(format!(
                    "generator produced P({k}) = {p}, violating tree-function shape"
                )));
            }
            self.parents.push(p);
        }
        Ok(self.parents[n - 1])
    }
}

enum Backing {
    Spec(Box<SequenceView>),
    Explicit(ExplicitTree),
}

/// Memoized `(P, R)` over a spec or an explicit tree.
pub struct TreeFunction {
    backing: Backing,
    // index n holds P(n) / R(n); index 0 is the root placeholder
    parents: Vec<usize>,
    ranks: Vec<usize>,
    // first_child[p] = smallest n with P(n) = p, for every p reached so far
    first_child: Vec<usize>,
    budget: Budget,
}

impl fmt::Debug for TreeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TreeFunction")
            .field("known", &self.parents.len())
            .finish()
    }
}

impl TreeFunction {
    pub fn from_spec(spec: &MorphicSpec) -> Self {
        Self::from_spec_with_budget(spec, Budget::default())
    }

    pub fn from_spec_with_budget(spec: &MorphicSpec, budget: Budget) -> Self {
        let view = SequenceView::pure_with_budget(spec.clone(), budget);
        TreeFunction {
            backing: Backing::Spec(Box::new(view)),
            parents: vec![0],
            ranks: vec![0],
            first_child: Vec::new(),
            budget,
        }
    }

    pub fn from_explicit(tree: ExplicitTree) -> Self {
        TreeFunction {
            backing: Backing::Explicit(tree),
            parents: vec![0],
            ranks: vec![0],
            first_child: Vec::new(),
            budget: Budget::default(),
        }
    }

    pub fn is_spec_backed(&self) -> bool {
        matches!(self.backing, Backing::Spec(_))
    }

    /// The pure letter at node `n`, for spec-backed trees.
    pub fn letter(&mut self, n: usize) -> Option<Result<Symbol>> {
        match &mut self.backing {
            Backing::Spec(view) => Some(view.pure_at(n)),
            Backing::Explicit(_) => None,
        }
    }

    /// Largest node index whose `(P, R)` is memoized.
    pub fn known_max(&self) -> usize {
        self.parents.len() - 1
    }

    fn push(&mut self, p: usize, r: usize) {
        let n = self.parents.len();
        if self.first_child.len() == p {
            self.first_child.push(n);
        }
        self.parents.push(p);
        self.ranks.push(r);
    }

    /// Memoizes `(P(k), R(k))` for every `k ≤ n`.
    pub fn ensure(&mut self, n: usize) -> Result<()> {
        if n <= self.known_max() {
            return Ok(());
        }
        self.budget.check(n)?;
        while self.known_max() < n {
            let next = self.parents.len();
            match &mut self.backing {
                Backing::Spec(view) => {
                    if next == 1 {
                        self.push(0, 1);
                        continue;
                    }
                    let (p, r) = (self.parents[next - 1], self.ranks[next - 1]);
                    let b = view.pure_at(p)?;
                    let width = view.spec().image(b).len();
                    if r + 1 < width {
                        self.push(p, r + 1);
                    } else {
                        self.push(p + 1, 0);
                    }
                }
                Backing::Explicit(tree) => {
                    let p = tree.parent_of(next)?;
                    let r = if next > 1 && self.parents[next - 1] == p {
                        self.ranks[next - 1] + 1
                    } else {
                        0
                    };
                    self.push(p, r);
                }
            }
        }
        Ok(())
    }

    pub fn parent_rank(&mut self, n: usize) -> Result<(usize, usize)> {
        if n == 0 {
            return Err(Error::InvalidArgument("the root has no parent".into()));
        }
        self.ensure(n)?;
        Ok((self.parents[n], self.ranks[n]))
    }

    pub fn parent(&mut self, n: usize) -> Result<usize> {
        self.parent_rank(n).map(|(p, _)| p)
    }

    /// Number of `P` steps from `n` to the root; `depth(0) = 0`.
    pub fn depth(&mut self, n: usize) -> Result<usize> {
        self.ensure(n)?;
        let mut k = 0;
        let mut m = n;
        while m != 0 {
            m = self.parents[m];
            k += 1;
        }
        Ok(k)
    }

    /// Children of `n`, a contiguous range since `P` is weakly monotone.
    pub fn children(&mut self, n: usize) -> Result<Range<usize>> {
        while self.first_child.len() <= n + 1 {
            let next = self.known_max() + 1;
            self.ensure(next)?;
        }
        Ok(self.first_child[n]..self.first_child[n + 1])
    }

    pub fn arity(&mut self, n: usize) -> Result<usize> {
        self.children(n).map(|r| r.len())
    }

    /// First `m` members of `S_P(n)` in increasing order. A node `k > n`
    /// belongs to the subtree iff `P(k)` does, so one forward scan suffices.
    pub fn subtree_members(&mut self, n: usize, m: usize) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(m);
        if m == 0 {
            return Ok(out);
        }
        out.push(n);
        if n == 0 {
            out.extend(1..m);
            return Ok(out);
        }
        // member[k - n] for k ≥ n
        let mut member = vec![true];
        let mut k = n;
        while out.len() < m {
            k += 1;
            self.ensure(k)?;
            let p = self.parents[k];
            let inside = p >= n && member[p - n];
            member.push(inside);
            if inside {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Materializes the first `len` nodes into an immutable snapshot.
    /// For explicit trees without a generator the snapshot stops at the
    /// materialized range.
    pub fn snapshot(&mut self, len: usize) -> Result<TreeSnapshot> {
        let len = len.max(1);
        match self.ensure(len - 1) {
            Ok(()) => {}
            Err(Error::ExplicitRangeExhausted(_)) => {}
            Err(e) => return Err(e),
        }
        let len = len.min(self.parents.len());
        let parents = self.parents[..len].to_vec();
        let ranks = self.ranks[..len].to_vec();
        Ok(TreeSnapshot::from_parts(parents, ranks))
    }
}

/// Immutable finite prefix of a tree function, shareable across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSnapshot {
    parents: Vec<usize>,
    ranks: Vec<usize>,
    first_child: Vec<usize>,
    depths: Vec<usize>,
}

impl TreeSnapshot {
    fn from_parts(parents: Vec<usize>, ranks: Vec<usize>) -> Self {
        let mut first_child = Vec::new();
        let mut depths = vec![0; parents.len()];
        for n in 1..parents.len() {
            let p = parents[n];
            if first_child.len() == p {
                first_child.push(n);
            }
            depths[n] = depths[p] + 1;
        }
        TreeSnapshot {
            parents,
            ranks,
            first_child,
            depths,
        }
    }

    /// Snapshot of an explicit parent array (`parents[k] = P(k+1)`).
    pub fn from_explicit(tree: &ExplicitTree) -> Self {
        let mut parents = vec![0];
        parents.extend_from_slice(tree.parents());
        let mut ranks = vec![0; parents.len()];
        for n in 2..parents.len() {
            if parents[n] == parents[n - 1] {
                ranks[n] = ranks[n - 1] + 1;
            }
        }
        Self::from_parts(parents, ranks)
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn parent(&self, n: usize) -> usize {
        self.parents[n]
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn depth(&self, n: usize) -> usize {
        self.depths[n]
    }

    /// Children of `n` if they are all known within the snapshot.
    pub fn children(&self, n: usize) -> Option<Range<usize>> {
        let end = *self.first_child.get(n + 1)?;
        Some(self.first_child[n]..end)
    }

    pub fn parents(&self) -> &[usize] {
        &self.parents
    }

    /// Smallest child of `n`, if some child of `n` or a later node is known.
    pub fn first_child(&self, n: usize) -> Option<usize> {
        self.first_child.get(n).copied()
    }

    /// Members of `S_P(n)` inside the snapshot, increasing, at most `m`.
    pub fn subtree_members(&self, n: usize, m: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(m.min(self.len()));
        if m == 0 || n >= self.len() {
            return out;
        }
        out.push(n);
        let mut member = vec![true];
        for k in n + 1..self.len() {
            if out.len() >= m {
                break;
            }
            let p = self.parents[k];
            let inside = p >= n && member[p - n];
            member.push(inside);
            if inside {
                out.push(k);
            }
        }
        out
    }
}

/// `(n div k, n mod k)`.
pub fn k_uniform_parent_rank(k: usize, n: usize) -> Result<(usize, usize)> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("radix {k} is below 2")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("the root has no parent".into()));
    }
    Ok((n / k, n % k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    #[test]
    fn fib_parent_rank() {
        let mut tf = TreeFunction::from_spec(&known::fib());
        assert_eq!(tf.parent_rank(12).unwrap(), (7, 1));
        assert_eq!(tf.parent_rank(1).unwrap(), (0, 1));
        assert_eq!(tf.parent_rank(4).unwrap(), (2, 1));
        assert!(tf.parent_rank(0).is_err());
    }

    #[test]
    fn fib_figure_edges() {
        // parent edges of the first five levels of the fib tree
        let expected = [0, 1, 2, 2, 3, 3, 4, 5, 5, 6, 7, 7];
        let mut tf = TreeFunction::from_spec(&known::fib());
        for (i, &p) in expected.iter().enumerate() {
            assert_eq!(tf.parent(i + 1).unwrap(), p, "P({})", i + 1);
        }
    }

    #[test]
    fn depths() {
        let mut tf = TreeFunction::from_spec(&known::fib());
        assert_eq!(tf.depth(0).unwrap(), 0);
        assert_eq!(tf.depth(1).unwrap(), 1);
        assert_eq!(tf.depth(12).unwrap(), 5);
    }

    #[test]
    fn subtree_members_of_fib() {
        let mut tf = TreeFunction::from_spec(&known::fib());
        assert_eq!(tf.subtree_members(0, 5).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(tf.subtree_members(2, 4).unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(tf.subtree_members(1, 3).unwrap(), vec![1, 2, 3]);
        assert!(tf.subtree_members(3, 0).unwrap().is_empty());
    }

    #[test]
    fn uniform_radix() {
        assert_eq!(k_uniform_parent_rank(2, 5).unwrap(), (2, 1));
        assert_eq!(k_uniform_parent_rank(2, 12).unwrap(), (6, 0));
        assert!(k_uniform_parent_rank(1, 5).is_err());
    }

    #[test]
    fn period_doubling_is_binary() {
        let mut tf = TreeFunction::from_spec(&known::period_doubling());
        for n in 1..10_000 {
            assert_eq!(tf.parent_rank(n).unwrap(), k_uniform_parent_rank(2, n).unwrap());
        }
    }

    #[test]
    fn children_ranges() {
        let mut tf = TreeFunction::from_spec(&known::fib());
        assert_eq!(tf.children(0).unwrap(), 1..2);
        assert_eq!(tf.children(1).unwrap(), 2..3);
        assert_eq!(tf.children(2).unwrap(), 3..5);
        assert_eq!(tf.arity(7).unwrap(), 2);
    }

    #[test]
    fn explicit_tree_validation_and_ranks() {
        assert!(ExplicitTree::new(vec![1]).is_err());
        assert!(ExplicitTree::new(vec![0, 2]).is_err());
        let tree = ExplicitTree::new(vec![0, 0, 1, 1, 2]).unwrap();
        let mut tf = TreeFunction::from_explicit(tree);
        assert_eq!(tf.parent_rank(1).unwrap(), (0, 0));
        assert_eq!(tf.parent_rank(2).unwrap(), (0, 1));
        assert_eq!(tf.parent_rank(4).unwrap(), (1, 1));
        assert_eq!(tf.parent_rank(6), Err(Error::ExplicitRangeExhausted(6)));
    }

    #[test]
    fn explicit_generator_extends() {
        let mut n = 0usize;
        let tree = ExplicitTree::from_generator(move || {
            n += 1;
            n / 2
        });
        let mut tf = TreeFunction::from_explicit(tree);
        assert_eq!(tf.parent(9).unwrap(), 4);
        assert_eq!(tf.subtree_members(1, 4).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(tf.subtree_members(2, 4).unwrap(), vec![2, 4, 5, 8]);
    }

    #[test]
    fn snapshot_matches_memo() {
        let mut tf = TreeFunction::from_spec(&known::fib());
        let snap = tf.snapshot(200).unwrap();
        assert_eq!(snap.len(), 200);
        for n in 1..200 {
            assert_eq!(snap.parent(n), tf.parent(n).unwrap());
            assert_eq!(snap.depth(n), tf.depth(n).unwrap());
        }
        assert_eq!(snap.subtree_members(2, 4), vec![2, 3, 4, 5]);
        assert_eq!(snap.children(2), Some(3..5));
        assert_eq!(snap.children(199), None);
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::testutil::{arb_spec, pure_prefix};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn parent_and_rank_laws(spec in arb_spec()) {
            let n = 3000;
            let word = pure_prefix(&spec, n + 1);
            let mut tf = TreeFunction::from_spec(&spec);
            let u = spec.start_tail().len();
            let mut prev = 0;
            for k in 1..=n {
                let (p, r) = tf.parent_rank(k).unwrap();
                prop_assert!(p < k);
                // steps of 0 or 1 from P(1) = 0 make P monotone and onto
                prop_assert!(p == prev || p == prev + 1, "P jumps at {}", k);
                prev = p;
                let image = spec.image(word[p]);
                prop_assert!(r < image.len());
                prop_assert_eq!(word[k], image[r]);
                if k > u {
                    let back = (1..=k).take_while(|&j| tf.parent(k - j).ok() == Some(p)).count();
                    prop_assert_eq!(r, back);
                }
            }
        }
    }
}
