use super::MixDfao;
use crate::alphabet::Symbol;
use crate::error::{Budget, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    parent: usize,
    digit: usize,
    state: usize,
}

/// The enumeration `φ_M`, grown on demand. Entry `n` stores the index of
/// the entry holding `φ_M(n)` minus its last digit, that digit, and the
/// state `δ(q0, φ_M(n))`.
#[derive(Debug, Clone)]
pub struct PhiTable {
    dfao: MixDfao,
    entries: Vec<Entry>,
    // first_child[p] = index of the first entry whose parent is p
    first_child: Vec<usize>,
    budget: Budget,
}

impl PhiTable {
    pub fn new(dfao: MixDfao) -> Result<Self> {
        Self::with_budget(dfao, Budget::default())
    }

    /// Needs `ar(q0) ≥ 2`, otherwise `φ_M(1) = 1` is undefined.
    pub fn with_budget(dfao: MixDfao, budget: Budget) -> Result<Self> {
        let q0 = dfao.initial();
        if dfao.arity(q0) < 2 {
            return Err(Error::NotProlongable(format!(
                "initial state {} has arity 1",
                dfao.name(q0)
            )));
        }
        let root = Entry {
            parent: 0,
            digit: 0,
            state: q0,
        };
        let first = Entry {
            parent: 0,
            digit: 1,
            state: dfao.row(q0)[1],
        };
        Ok(PhiTable {
            dfao,
            entries: vec![root, first],
            first_child: vec![1],
            budget,
        })
    }

    pub fn dfao(&self) -> &MixDfao {
        &self.dfao
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Extends the table to at least `n` entries.
    pub fn ensure(&mut self, n: usize) -> Result<()> {
        if n <= self.entries.len() {
            return Ok(());
        }
        self.budget.check(n)?;
        while self.entries.len() < n {
            let last = *self.entries.last().expect("table is never empty");
            let parent_state = self.entries[last.parent].state;
            let next = if last.digit + 1 < self.dfao.arity(parent_state) {
                Entry {
                    parent: last.parent,
                    digit: last.digit + 1,
                    state: self.dfao.row(parent_state)[last.digit + 1],
                }
            } else {
                // carry: the next word extends the next entry by digit 0
                let parent = last.parent + 1;
                Entry {
                    parent,
                    digit: 0,
                    state: self.dfao.row(self.entries[parent].state)[0],
                }
            };
            if next.parent == self.first_child.len() {
                self.first_child.push(self.entries.len());
            }
            self.entries.push(next);
        }
        Ok(())
    }

    /// `(P, last digit)` of `φ_M(n)`, `n ≥ 1`.
    pub fn parent_digit(&mut self, n: usize) -> Result<(usize, usize)> {
        if n == 0 {
            return Err(Error::InvalidArgument("φ_M(0) is the empty word".into()));
        }
        self.ensure(n + 1)?;
        let e = self.entries[n];
        Ok((e.parent, e.digit))
    }

    /// `δ(q0, φ_M(n))`.
    pub fn state(&mut self, n: usize) -> Result<usize> {
        self.ensure(n + 1)?;
        Ok(self.entries[n].state)
    }

    /// `φ_M(n)`, most significant digit first.
    pub fn phi(&mut self, n: usize) -> Result<Vec<usize>> {
        self.ensure(n + 1)?;
        let mut word = Vec::new();
        let mut k = n;
        while k != 0 {
            let e = self.entries[k];
            word.push(e.digit);
            k = e.parent;
        }
        word.reverse();
        Ok(word)
    }

    /// The unique `n` with `φ_M(n) = word`.
    pub fn phi_inverse(&mut self, word: &[usize]) -> Result<usize> {
        let mut k = 0;
        for (pos, &d) in word.iter().enumerate() {
            let state = self.entries[k].state;
            if d >= self.dfao.arity(state) || (pos == 0 && d == 0) {
                return Err(Error::NotInLanguage);
            }
            // children of k appear once the entries before them are expanded
            while self.first_child.len() <= k {
                let want = self.entries.len() + 1;
                self.ensure(want)?;
            }
            let offset = if k == 0 { d - 1 } else { d };
            let child = self.first_child[k] + offset;
            self.ensure(child + 1)?;
            debug_assert_eq!(self.entries[child].parent, k);
            k = child;
        }
        Ok(k)
    }

    /// `σ_M(i) = λ(δ(q0, φ_M(i)))`.
    pub fn sigma(&mut self, i: usize) -> Result<Symbol> {
        let q = self.state(i)?;
        Ok(self.dfao.output(q))
    }

    pub fn sigma_prefix(&mut self, n: usize) -> Result<Vec<Symbol>> {
        self.ensure(n)?;
        Ok(self.entries[..n]
            .iter()
            .map(|e| self.dfao.output(e.state))
            .collect())
    }
}

/// `σ_M(i)` computed from a fresh table.
pub fn sigma_m(dfao: &MixDfao, i: usize) -> Result<Symbol> {
    PhiTable::new(dfao.clone())?.sigma(i)
}
