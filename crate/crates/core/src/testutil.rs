//! Shared proptest strategies.

use proptest::prelude::*;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::mixdfao::MixDfao;
use crate::sequence::SequenceView;
use crate::spec::MorphicSpec;

/// A random prolongable spec: `f(0)` starts with `0` and has length at least 2.
pub fn arb_spec() -> impl Strategy<Value = MorphicSpec> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(g, s)| {
        let head = prop::collection::vec(0..g, 1..=3);
        let rest = prop::collection::vec(prop::collection::vec(0..g, 1..=3), g - 1);
        let coding = prop::collection::vec(0..s, g);
        (head, rest, coding).prop_map(move |(head, rest, coding)| {
            let mut rules = vec![std::iter::once(0).chain(head).map(Symbol::from).collect::<Word>()];
            rules.extend(rest.into_iter().map(|r| r.into_iter().map(Symbol::from).collect()));
            MorphicSpec::new(
                Alphabet::digits(g),
                Symbol(0),
                rules,
                Alphabet::digits(s),
                coding.into_iter().map(Symbol::from).collect(),
            )
            .expect("generated spec is valid")
        })
    })
}

/// A random binary-output mix-DFAO with `ar(q0) >= 2`.
pub fn arb_mixdfao() -> impl Strategy<Value = MixDfao> {
    (1usize..=6).prop_flat_map(|n| {
        let rows = prop::collection::vec(prop::collection::vec(0..n, 1..=3), n);
        let out = prop::collection::vec(0u32..2, n);
        (rows, out).prop_map(move |(mut rows, out)| {
            if rows[0].len() < 2 {
                rows[0].push(0);
            }
            MixDfao::new(
                (0..n).map(|q| format!("s{q}")).collect(),
                rows,
                0,
                Alphabet::digits(2),
                out.into_iter().map(Symbol).collect(),
            )
            .expect("generated automaton is valid")
        })
    })
}

pub fn prefix(spec: &MorphicSpec, n: usize) -> Word {
    SequenceView::new(spec.clone()).prefix(n).unwrap()
}

pub fn pure_prefix(spec: &MorphicSpec, n: usize) -> Word {
    SequenceView::pure(spec.clone()).prefix(n).unwrap()
}
