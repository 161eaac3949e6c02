//! Lazy generation of `f^∞(a)` and its coded image.
//!
//! The pure prefix lives in one growing buffer. Reading the buffer with a
//! cursor and appending `f` of each consumed letter reproduces
//! `a u f(u) f²(u) ⋯`: after consuming `buf[0..k]` the buffer equals
//! `f(buf[0..k])` minus the leading `a` being counted once.

use crate::alphabet::{Symbol, Word};
use crate::error::{Budget, Error, Result};
use crate::spec::MorphicSpec;

#[derive(Debug, Clone)]
pub struct SequenceView {
    spec: MorphicSpec,
    buf: Vec<Symbol>,
    cursor: usize,
    coded: bool,
    budget: Budget,
}

impl SequenceView {
    /// View of the coded sequence `τ(f^∞(a))`.
    pub fn new(spec: MorphicSpec) -> Self {
        Self::with_budget(spec, Budget::default())
    }

    pub fn with_budget(spec: MorphicSpec, budget: Budget) -> Self {
        let mut buf = Vec::with_capacity(64);
        buf.extend_from_slice(spec.image(spec.start()));
        SequenceView {
            spec,
            buf,
            cursor: 1,
            coded: true,
            budget,
        }
    }

    /// View of the pure fixed point `f^∞(a)`, before coding.
    pub fn pure(spec: MorphicSpec) -> Self {
        let mut v = Self::new(spec);
        v.coded = false;
        v
    }

    pub fn pure_with_budget(spec: MorphicSpec, budget: Budget) -> Self {
        let mut v = Self::with_budget(spec, budget);
        v.coded = false;
        v
    }

    pub fn spec(&self) -> &MorphicSpec {
        &self.spec
    }

    pub fn is_coded(&self) -> bool {
        self.coded
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Number of pure symbols currently cached.
    pub fn cached_len(&self) -> usize {
        self.buf.len()
    }

    /// Grows the cache until it holds at least `n` pure symbols.
    pub fn ensure(&mut self, n: usize) -> Result<()> {
        if n <= self.buf.len() {
            return Ok(());
        }
        self.budget.check(n)?;
        while self.buf.len() < n {
            let b = self.buf[self.cursor];
            self.cursor += 1;
            let image = self.spec.image(b);
            self.buf.extend_from_slice(image);
        }
        Ok(())
    }

    /// The cached pure prefix `f^∞(a)[0..n]`.
    pub fn pure_prefix(&mut self, n: usize) -> Result<&[Symbol]> {
        self.ensure(n)?;
        Ok(&self.buf[..n])
    }

    pub fn pure_at(&mut self, i: usize) -> Result<Symbol> {
        self.ensure(i + 1)?;
        Ok(self.buf[i])
    }

    /// First `n` symbols of the viewed sequence.
    pub fn prefix(&mut self, n: usize) -> Result<Word> {
        self.ensure(n)?;
        let pure = &self.buf[..n];
        Ok(if self.coded {
            self.spec.code_word(pure)
        } else {
            pure.to_vec()
        })
    }

    pub fn element_at(&mut self, i: usize) -> Result<Symbol> {
        let b = self.pure_at(i)?;
        Ok(if self.coded { self.spec.code(b) } else { b })
    }

    /// Alphabet of the symbols this view returns.
    pub fn alphabet(&self) -> &crate::alphabet::Alphabet {
        if self.coded {
            self.spec.sigma()
        } else {
            self.spec.gamma()
        }
    }

    /// `σ(offset) σ(offset+step) ⋯`, `n` symbols.
    pub fn arithmetic_subsequence(
        &mut self,
        offset: usize,
        step: usize,
        n: usize,
    ) -> Result<Word> {
        if step == 0 {
            return Err(Error::InvalidArgument("step must be at least 1".into()));
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let last = (n - 1)
            .checked_mul(step)
            .and_then(|x| x.checked_add(offset))
            .ok_or(Error::BudgetExceeded {
                needed: usize::MAX,
                budget: self.budget.0,
            })?;
        self.ensure(last + 1)?;
        (0..n).map(|i| self.element_at(offset + i * step)).collect()
    }

    /// Read-only copy of the cached pure prefix, for sharing across threads.
    pub fn snapshot(&self) -> Vec<Symbol> {
        self.buf.clone()
    }
}

/// Result of comparing two coded prefixes by output-symbol name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixComparison {
    pub compared: usize,
    pub first_mismatch: Option<usize>,
}

impl PrefixComparison {
    pub fn equal(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares two named words position by position.
pub fn compare_named(a: &[&str], b: &[&str]) -> PrefixComparison {
    let n = a.len().min(b.len());
    PrefixComparison {
        compared: n,
        first_mismatch: (0..n).find(|&i| a[i] != b[i]),
    }
}

/// Coded prefixes of `a` and `b` of length `n`, compared by output-symbol name.
pub fn prefix_equal(
    a: &MorphicSpec,
    b: &MorphicSpec,
    n: usize,
    budget: Budget,
) -> Result<PrefixComparison> {
    let wa = SequenceView::with_budget(a.clone(), budget).prefix(n)?;
    let wb = SequenceView::with_budget(b.clone(), budget).prefix(n)?;
    let na: Vec<&str> = wa.iter().map(|&s| a.sigma().name(s)).collect();
    let nb: Vec<&str> = wb.iter().map(|&s| b.sigma().name(s)).collect();
    Ok(compare_named(&na, &nb))
}
