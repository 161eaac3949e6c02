//! Mix-DFAOs: automata with output whose states each have their own arity,
//! so `δ(q, i)` is defined exactly for `0 ≤ i < ar(q)`. Reading the
//! breadth-first numeral `φ_M(n)` most significant digit first and emitting
//! `λ` of the reached state yields the sequence `σ_M`.

mod ans;
mod minimize;
mod phi;

use std::collections::VecDeque;
use std::fmt::Write as _;

pub use ans::{ans_dfao_sequence, canonical_ans, Ans, AnsRanker, Dfao};
pub use minimize::{minimize, Minimized};
pub use phi::{sigma_m, PhiTable};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::spec::MorphicSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixDfao {
    names: Vec<String>,
    // delta[q] has length ar(q)
    delta: Vec<Vec<usize>>,
    initial: usize,
    sigma: Alphabet,
    output: Vec<Symbol>,
}

impl MixDfao {
    /// Checks arities and targets, then trims states unreachable from `initial`.
    pub fn new(
        names: Vec<String>,
        delta: Vec<Vec<usize>>,
        initial: usize,
        sigma: Alphabet,
        output: Vec<Symbol>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if names.len() != n || output.len() != n {
            return Err(Error::InvalidAutomaton(format!(
                "{n} states but {} names and {} outputs",
                names.len(),
                output.len()
            )));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton(format!("initial state {initial} out of range")));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidAutomaton(format!("state {} has arity 0", names[q])));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidAutomaton(format!(
                    "transition from {} to missing state {t}",
                    names[q]
                )));
            }
        }
        if let Some(s) = output.iter().find(|s| !sigma.contains(**s)) {
            return Err(Error::InvalidAutomaton(format!("output {s} outside the output alphabet")));
        }
        Ok(MixDfao {
            names,
            delta,
            initial,
            sigma,
            output,
        }
        .trim())
    }

    fn trim(self) -> Self {
        let n = self.delta.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        if order.len() == n {
            return self;
        }
        // keep original relative order of the surviving states
        order.sort_unstable();
        let mut renumber = vec![usize::MAX; n];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        MixDfao {
            names: order.iter().map(|&q| self.names[q].clone()).collect(),
            delta: order
                .iter()
                .map(|&q| self.delta[q].iter().map(|&t| renumber[t]).collect())
                .collect(),
            initial: renumber[self.initial],
            sigma: self.sigma,
            output: order.iter().map(|&q| self.output[q]).collect(),
        }
    }

    /// `Q = Γ`, `ar(q) = |f(q)|`, `δ(q, i) = f(q)(i)`, `q0 = a`, `λ = τ`.
    pub fn from_spec(spec: &MorphicSpec) -> Self {
        let gamma = spec.gamma();
        MixDfao::new(
            gamma.names().to_vec(),
            gamma
                .symbols()
                .map(|b| spec.image(b).iter().map(|s| s.index()).collect())
                .collect(),
            spec.start().index(),
            spec.sigma().clone(),
            spec.coding().to_vec(),
        )
        .expect("a validated spec yields a valid automaton")
    }

    /// `f(q) = δ(q,0) ⋯ δ(q, ar(q)-1)`; needs `δ(q0, 0) = q0` and `ar(q0) ≥ 2`.
    pub fn to_spec(&self) -> Result<MorphicSpec> {
        let row = &self.delta[self.initial];
        if row[0] != self.initial {
            return Err(Error::NotProlongable(format!(
                "δ({}, 0) = {} is not the initial state",
                self.names[self.initial], self.names[row[0]]
            )));
        }
        if row.len() < 2 {
            return Err(Error::NotProlongable(format!(
                "initial state {} has arity 1",
                self.names[self.initial]
            )));
        }
        let gamma = Alphabet::new(self.names.iter().cloned())?;
        MorphicSpec::new(
            gamma,
            Symbol::from(self.initial),
            self.delta
                .iter()
                .map(|r| r.iter().map(|&t| Symbol::from(t)).collect())
                .collect(),
            self.sigma.clone(),
            self.output.clone(),
        )
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn arity(&self, q: usize) -> usize {
        self.delta[q].len()
    }

    pub fn max_arity(&self) -> usize {
        self.delta.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `δ(q, i)`, `None` when `i ≥ ar(q)`.
    pub fn step(&self, q: usize, digit: usize) -> Option<usize> {
        self.delta[q].get(digit).copied()
    }

    pub fn row(&self, q: usize) -> &[usize] {
        &self.delta[q]
    }

    /// `δ(q, w)`, `None` when some transition is undefined.
    pub fn run(&self, q: usize, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(q, |s, &d| self.step(s, d))
    }

    pub fn output(&self, q: usize) -> Symbol {
        self.output[q]
    }

    pub fn outputs(&self) -> &[Symbol] {
        &self.output
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    /// Graphviz rendering: state label `name/output/arity`, edge label digit.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph mixdfao {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.state_count() {
            let _ = writeln!(
                out,
                "  q{q} [shape=circle, label=\"{}/{}/{}\"];",
                escape(&self.names[q]),
                escape(self.sigma.name(self.output[q])),
                self.arity(q)
            );
        }
        let _ = writeln!(out, "  start -> q{};", self.initial);
        for (q, row) in self.delta.iter().enumerate() {
            for (i, &t) in row.iter().enumerate() {
                let _ = writeln!(out, "  q{q} -> q{t} [label=\"{i}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;
    use crate::spec::RawSpec;

    #[test]
    fn fib_automaton() {
        let m = MixDfao::from_spec(&known::fib());
        assert_eq!(m.state_count(), 2);
        assert_eq!((m.arity(0), m.arity(1)), (2, 1));
        assert_eq!(m.row(0), &[0, 1]);
        assert_eq!(m.row(1), &[0]);
        assert_eq!(m.output(0), Symbol(0));
        assert_eq!(m.output(1), Symbol(1));
    }

    #[test]
    fn spir_automaton_arities() {
        let spec = known::spir();
        let m = MixDfao::from_spec(&spec);
        let ar = |name: &str| m.arity(m.names().iter().position(|n| n == name).unwrap());
        assert_eq!((ar("2"), ar("1"), ar("0")), (2, 2, 1));
    }

    #[test]
    fn one_letter_automaton() {
        let spec = RawSpec::compact("a", "a", &[("a", "aa")]).validate().unwrap();
        let m = MixDfao::from_spec(&spec);
        assert_eq!(m.state_count(), 1);
        assert_eq!(m.row(0), &[0, 0]);
    }

    #[test]
    fn to_spec_round_trip() {
        for (_, spec) in known::all() {
            let m = MixDfao::from_spec(&spec);
            let back = m.to_spec().unwrap();
            // from_spec trims letters never reached from the start letter
            assert_eq!(back.gamma().len(), m.state_count());
            assert_eq!(MixDfao::from_spec(&back), m);
        }
        let fib = MixDfao::from_spec(&known::fib()).to_spec().unwrap();
        assert_eq!(fib.render_rules(), "0 -> 01, 1 -> 0");
    }

    #[test]
    fn to_spec_rejects_non_prolongable() {
        let m = MixDfao::new(
            vec!["p".into(), "q".into()],
            vec![vec![1, 0], vec![0]],
            0,
            Alphabet::digits(2),
            vec![Symbol(0), Symbol(1)],
        )
        .unwrap();
        assert!(matches!(m.to_spec(), Err(Error::NotProlongable(_))));
        let m = MixDfao::new(
            vec!["p".into()],
            vec![vec![0]],
            0,
            Alphabet::digits(1),
            vec![Symbol(0)],
        )
        .unwrap();
        assert!(matches!(m.to_spec(), Err(Error::NotProlongable(_))));
    }

    #[test]
    fn trims_unreachable_states() {
        let m = MixDfao::new(
            vec!["a".into(), "dead".into(), "b".into()],
            vec![vec![0, 2], vec![1], vec![0]],
            0,
            Alphabet::digits(2),
            vec![Symbol(0), Symbol(0), Symbol(1)],
        )
        .unwrap();
        assert_eq!(m.names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(m.row(0), &[0, 1]);
    }

    #[test]
    fn rejects_bad_shapes() {
        let e = MixDfao::new(
            vec!["a".into()],
            vec![vec![]],
            0,
            Alphabet::digits(1),
            vec![Symbol(0)],
        );
        assert!(matches!(e, Err(Error::InvalidAutomaton(_))));
        let e = MixDfao::new(
            vec!["a".into()],
            vec![vec![3]],
            0,
            Alphabet::digits(1),
            vec![Symbol(0)],
        );
        assert!(matches!(e, Err(Error::InvalidAutomaton(_))));
    }

    #[test]
    fn dot_output() {
        let dot = MixDfao::from_spec(&known::fib()).to_dot();
        assert!(dot.contains("q0 [shape=circle, label=\"0/0/2\"]"));
        assert!(dot.contains("q1 [shape=circle, label=\"1/1/1\"]"));
        assert!(dot.contains("q0 -> q1 [label=\"1\"]"));
        assert!(dot.contains("q1 -> q0 [label=\"0\"]"));
        assert!(dot.contains("start -> q0"));
    }
}
