//! The rewrite system `R_σ` over unary symbols plus the end marker `E`:
//!
//! ```text
//! S(b(x))  -> τ(b)(S(b̄(x)))   EXPAND-S
//! b̄(c(x))  -> c(b̄(x))         COMMUTE-BAR
//! b̄(E)     -> f(b)(E)         UNFOLD-BAR
//! ```
//!
//! Starting from `τ(a) S u E` with `f(a) = a u`, the block of output
//! symbols in front of `S` only grows and converges to `σ`.
//!
//! A reachable term can hold an S-redex and a bar-redex at once, e.g.
//! `0 1 0 0 S 1 0̄ E` for fib. The two never overlap; the strategy here
//! contracts the bar-redex first, which keeps at most one bar in the term.

use std::fmt;

use crate::alphabet::{Symbol, Word};
use crate::error::{Budget, Error, Result};
use crate::spec::MorphicSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RewriteSymbol {
    Out(Symbol),
    Gamma(Symbol),
    Bar(Symbol),
    S,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    ExpandS,
    CommuteBar,
    UnfoldBar,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::ExpandS => "EXPAND-S",
            Rule::CommuteBar => "COMMUTE-BAR",
            Rule::UnfoldBar => "UNFOLD-BAR",
        })
    }
}

/// A term `w(E)` stored as its symbol list, with cached marker positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTerm {
    symbols: Vec<RewriteSymbol>,
    s_pos: usize,
    bar_pos: Option<usize>,
}

impl RewriteTerm {
    pub fn symbols(&self) -> &[RewriteSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The output block in front of `S`.
    pub fn stable_prefix(&self) -> Word {
        self.symbols[..self.s_pos]
            .iter()
            .map(|s| match s {
                RewriteSymbol::Out(o) => *o,
                other => unreachable!("{other:?} before S"),
            })
            .collect()
    }

    pub fn stable_len(&self) -> usize {
        self.s_pos
    }

    /// Full scan of the reachable shape: outputs, `S`, a Γ-word with at most
    /// one bar, then `E` as the last symbol only.
    pub fn check_shape(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidArgument(format!("malformed term: {why}")));
        let Some((&RewriteSymbol::E, body)) = self.symbols.split_last() else {
            return bad("last symbol is not E");
        };
        let Some(s) = body.iter().position(|&x| x == RewriteSymbol::S) else {
            return bad("no S");
        };
        if s != self.s_pos {
            return bad("cached S position is stale");
        }
        if !body[..s].iter().all(|x| matches!(x, RewriteSymbol::Out(_))) {
            return bad("non-output symbol before S");
        }
        let mut bars = None;
        for (i, x) in body.iter().enumerate().skip(s + 1) {
            match x {
                RewriteSymbol::Gamma(_) => {}
                RewriteSymbol::Bar(_) if bars.is_none() => bars = Some(i),
                RewriteSymbol::Bar(_) => return bad("two bars"),
                _ => return bad("S, E or output symbol after S"),
            }
        }
        if bars != self.bar_pos {
            return bad("cached bar position is stale");
        }
        Ok(())
    }

    /// Positions of the S-redex and the bar-redex, when present.
    pub fn redexes(&self) -> (Option<usize>, Option<usize>) {
        let s = matches!(self.symbols.get(self.s_pos + 1), Some(RewriteSymbol::Gamma(_)))
            .then_some(self.s_pos);
        let bar = self.bar_pos.filter(|&p| {
            matches!(
                self.symbols.get(p + 1),
                Some(RewriteSymbol::Gamma(_) | RewriteSymbol::E)
            )
        });
        (s, bar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub position: usize,
}

/// Counters over a reduction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub steps: usize,
    pub expand: usize,
    pub commute: usize,
    pub unfold: usize,
    /// Terms met with both an S-redex and a bar-redex.
    pub two_redex_terms: usize,
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    spec: MorphicSpec,
    budget: Budget,
}

impl RewriteSystem {
    pub fn new(spec: MorphicSpec) -> Self {
        Self::with_budget(spec, Budget::default())
    }

    /// `budget` caps the term length.
    pub fn with_budget(spec: MorphicSpec, budget: Budget) -> Self {
        RewriteSystem { spec, budget }
    }

    pub fn spec(&self) -> &MorphicSpec {
        &self.spec
    }

    /// `τ(a) S u E`.
    pub fn start_term(&self) -> RewriteTerm {
        let a = self.spec.start();
        let mut symbols = vec![RewriteSymbol::Out(self.spec.code(a)), RewriteSymbol::S];
        symbols.extend(self.spec.start_tail().iter().map(|&b| RewriteSymbol::Gamma(b)));
        symbols.push(RewriteSymbol::E);
        RewriteTerm {
            symbols,
            s_pos: 1,
            bar_pos: None,
        }
    }

    /// Contracts one redex in place, the bar-redex when there is one.
    pub fn step(&self, t: &mut RewriteTerm) -> Result<Step> {
        self.step_counted(t, &mut RewriteStats::default())
    }

    fn step_counted(&self, t: &mut RewriteTerm, stats: &mut RewriteStats) -> Result<Step> {
        let (s_redex, bar_redex) = t.redexes();
        if let (Some(s), Some(b)) = (s_redex, bar_redex) {
            // left-hand sides occupy [s, s+1] and [b, b+1]
            assert!(s + 1 < b, "overlapping redexes at {s} and {b}");
            stats.two_redex_terms += 1;
        }
        let step = if let Some(p) = bar_redex {
            let RewriteSymbol::Bar(b) = t.symbols[p] else {
                unreachable!("cached bar position holds a bar")
            };
            if t.symbols[p + 1] == RewriteSymbol::E {
                let image = self.spec.image(b);
                self.budget.check(t.symbols.len() + image.len() - 1)?;
                t.symbols.pop();
                t.symbols.pop();
                t.symbols.extend(image.iter().map(|&c| RewriteSymbol::Gamma(c)));
                t.symbols.push(RewriteSymbol::E);
                t.bar_pos = None;
                stats.unfold += 1;
                Step {
                    rule: Rule::UnfoldBar,
                    position: p,
                }
            } else {
                t.symbols.swap(p, p + 1);
                t.bar_pos = Some(p + 1);
                stats.commute += 1;
                Step {
                    rule: Rule::CommuteBar,
                    position: p,
                }
            }
        } else if let Some(p) = s_redex {
            assert!(t.bar_pos.is_none(), "EXPAND-S with a bar present");
            let RewriteSymbol::Gamma(b) = t.symbols[p + 1] else {
                unreachable!("S-redex has a Γ symbol after S")
            };
            self.budget.check(t.symbols.len() + 1)?;
            t.symbols[p] = RewriteSymbol::Out(self.spec.code(b));
            t.symbols[p + 1] = RewriteSymbol::S;
            t.symbols.insert(p + 2, RewriteSymbol::Bar(b));
            t.s_pos = p + 1;
            t.bar_pos = Some(p + 2);
            stats.expand += 1;
            Step {
                rule: Rule::ExpandS,
                position: p,
            }
        } else {
            return Err(Error::NormalForm);
        };
        stats.steps += 1;
        debug_assert_eq!(t.symbols.last(), Some(&RewriteSymbol::E));
        Ok(step)
    }

    /// `steps` steps from `t`; returns the counters.
    pub fn run(&self, t: &mut RewriteTerm, steps: usize) -> Result<RewriteStats> {
        let mut stats = RewriteStats::default();
        for _ in 0..steps {
            self.step_counted(t, &mut stats)?;
        }
        Ok(stats)
    }

    /// Reduces from the start term until the stable prefix has `n` symbols.
    pub fn converge_prefix(&self, n: usize) -> Result<(Word, RewriteStats)> {
        let mut t = self.start_term();
        let mut stats = RewriteStats::default();
        while t.stable_len() < n {
            self.step_counted(&mut t, &mut stats)?;
        }
        let mut w = t.stable_prefix();
        w.truncate(n);
        Ok((w, stats))
    }

    /// Renders a term with bars as `b~` and the marker as `S`.
    pub fn render(&self, t: &RewriteTerm) -> String {
        let sigma = self.spec.sigma();
        let gamma = self.spec.gamma();
        let compact = sigma.names().iter().chain(gamma.names()).all(|n| n.chars().count() == 1);
        let parts: Vec<String> = t
            .symbols
            .iter()
            .map(|s| match s {
                RewriteSymbol::Out(o) => sigma.name(*o).to_string(),
                RewriteSymbol::Gamma(b) => gamma.name(*b).to_string(),
                RewriteSymbol::Bar(b) => format!("{}~", gamma.name(*b)),
                RewriteSymbol::S => "S".into(),
                RewriteSymbol::E => "E".into(),
            })
            .collect();
        parts.join(if compact { "" } else { " " })
    }
}

/// First `n` symbols of `σ` reached by rewriting.
pub fn converge_prefix(spec: &MorphicSpec, n: usize, budget: Budget) -> Result<(Word, RewriteStats)> {
    RewriteSystem::with_budget(spec.clone(), budget).converge_prefix(n)
}
