use std::collections::HashMap;

use super::MixDfao;

/// A quotient automaton and the class of every original state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimized {
    pub dfao: MixDfao,
    pub class_of: Vec<usize>,
}

/// Moore refinement starting from the partition by `(λ, ar)`. Classes are
/// numbered by their lowest original state and named after it.
pub fn minimize(m: &MixDfao) -> Minimized {
    let n = m.state_count();
    let mut class_of = number_by_key((0..n).map(|q| (m.output(q), m.arity(q))));
    let mut classes = class_of.iter().max().map_or(0, |c| c + 1);
    loop {
        let next = number_by_key((0..n).map(|q| {
            let row: Vec<usize> = m.row(q).iter().map(|&t| class_of[t]).collect();
            (class_of[q], row)
        }));
        let count = next.iter().max().map_or(0, |c| c + 1);
        class_of = next;
        if count == classes {
            break;
        }
        classes = count;
    }

    let mut rep = vec![usize::MAX; classes];
    for q in (0..n).rev() {
        rep[class_of[q]] = q;
    }
    let dfao = MixDfao::new(
        rep.iter().map(|&q| m.name(q).to_string()).collect(),
        rep.iter()
            .map(|&q| m.row(q).iter().map(|&t| class_of[t]).collect())
            .collect(),
        class_of[m.initial()],
        m.sigma().clone(),
        rep.iter().map(|&q| m.output(q)).collect(),
    )
    .expect("a quotient of a trim automaton is valid and trim");
    Minimized { dfao, class_of }
}

/// Dense ids in order of first appearance.
fn number_by_key<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.map(|k| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    })
    .collect()
}
