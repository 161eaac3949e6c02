use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::MixDfao;
use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

fn check_rows(rows: &[Vec<usize>], width: usize) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidAutomaton("no states".into()));
    }
    for (q, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::InvalidAutomaton(format!(
                "state {q} has {} transitions, expected {width}",
                row.len()
            )));
        }
        if let Some(&t) = row.iter().find(|&&t| t >= rows.len()) {
            return Err(Error::InvalidAutomaton(format!(
                "transition from state {q} to missing state {t}"
            )));
        }
    }
    Ok(())
}

/// Complete deterministic automaton with output over an ordered input alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    input: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    sigma: Alphabet,
    output: Vec<Symbol>,
}

impl Dfao {
    pub fn new(
        input: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        sigma: Alphabet,
        output: Vec<Symbol>,
    ) -> Result<Self> {
        check_rows(&delta, input.len())?;
        if initial >= delta.len() || output.len() != delta.len() {
            return Err(Error::InvalidAutomaton(
                "initial state or outputs do not match the state count".into(),
            ));
        }
        if output.iter().any(|s| !sigma.contains(*s)) {
            return Err(Error::InvalidAutomaton("output outside the output alphabet".into()));
        }
        Ok(Dfao {
            input,
            delta,
            initial,
            sigma,
            output,
        })
    }

    /// Completes a mix-DFAO over digits `0..max ar` with a sink state.
    /// The sink is never reached along words of `L_M`.
    pub fn from_mixdfao(m: &MixDfao) -> Self {
        let width = m.max_arity();
        let sink = m.state_count();
        let mut delta: Vec<Vec<usize>> = (0..sink)
            .map(|q| (0..width).map(|d| m.step(q, d).unwrap_or(sink)).collect())
            .collect();
        delta.push(vec![sink; width]);
        let mut output = m.outputs().to_vec();
        output.push(m.output(m.initial()));
        Dfao {
            input: Alphabet::digits(width),
            delta,
            initial: m.initial(),
            sigma: m.sigma().clone(),
            output,
        }
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    pub fn run(&self, word: &[Symbol]) -> usize {
        word.iter()
            .fold(self.initial, |q, s| self.delta[q][s.index()])
    }

    /// `λ(δ(q0, w))`.
    pub fn eval(&self, word: &[Symbol]) -> Symbol {
        self.output[self.run(word)]
    }
}

/// An abstract numeration system: a regular language over an ordered
/// alphabet, enumerated genealogically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ans {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
    infinite: bool,
}

impl Ans {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        check_rows(&delta, alphabet.len())?;
        if initial >= delta.len() || accepting.len() != delta.len() {
            return Err(Error::InvalidAutomaton(
                "initial state or accepting set do not match the state count".into(),
            ));
        }
        let infinite = has_useful_cycle(&delta, initial, &accepting);
        Ok(Ans {
            alphabet,
            delta,
            initial,
            accepting,
            infinite,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let q = word
            .iter()
            .fold(self.initial, |q, s| self.delta[q][s.index()]);
        self.accepting[q]
    }

    pub fn ranker(&self) -> AnsRanker {
        AnsRanker::new(self.clone())
    }

    /// `rep_S(n)` from a fresh ranker.
    pub fn rep(&self, n: usize) -> Result<Word> {
        self.ranker().rep(n)
    }

    /// `rep_S⁻¹(w)` from a fresh ranker.
    pub fn val(&self, word: &[Symbol]) -> Result<usize> {
        self.ranker().val(word)
    }
}

/// Whether some cycle lies on a path from the initial state to acceptance.
fn has_useful_cycle(delta: &[Vec<usize>], initial: usize, accepting: &[bool]) -> bool {
    let n = delta.len();
    let mut reach = vec![false; n];
    let mut stack = vec![initial];
    reach[initial] = true;
    while let Some(q) = stack.pop() {
        for &t in &delta[q] {
            if !reach[t] {
                reach[t] = true;
                stack.push(t);
            }
        }
    }
    let mut coreach = accepting.to_vec();
    loop {
        let mut changed = false;
        for q in 0..n {
            if !coreach[q] && delta[q].iter().any(|&t| coreach[t]) {
                coreach[q] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let useful: Vec<bool> = (0..n).map(|q| reach[q] && coreach[q]).collect();
    // Kahn's algorithm on the useful subgraph: leftover nodes sit on a cycle
    let mut indeg = vec![0usize; n];
    for q in (0..n).filter(|&q| useful[q]) {
        for &t in delta[q].iter().filter(|&&t| useful[t]) {
            indeg[t] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&q| useful[q] && indeg[q] == 0).collect();
    let mut removed = 0;
    while let Some(q) = queue.pop() {
        removed += 1;
        for &t in delta[q].iter().filter(|&&t| useful[t]) {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push(t);
            }
        }
    }
    removed < useful.iter().filter(|&&u| u).count()
}

/// Genealogical ranking with cached counts: `counts[l][q]` is the number of
/// words of length `l` leading from `q` to acceptance.
#[derive(Debug, Clone)]
pub struct AnsRanker {
    ans: Ans,
    counts: Vec<Vec<BigUint>>,
}

impl AnsRanker {
    pub fn new(ans: Ans) -> Self {
        let base = ans
            .accepting
            .iter()
            .map(|&a| if a { BigUint::from(1u8) } else { BigUint::zero() })
            .collect();
        AnsRanker {
            ans,
            counts: vec![base],
        }
    }

    pub fn ans(&self) -> &Ans {
        &self.ans
    }

    fn grow_to(&mut self, len: usize) {
        while self.counts.len() <= len {
            let prev = self.counts.last().expect("length 0 is always present");
            let next = self
                .ans
                .delta
                .iter()
                .map(|row| row.iter().map(|&t| &prev[t]).sum())
                .collect();
            self.counts.push(next);
        }
    }

    /// Number of accepted words of length `len`.
    pub fn count(&mut self, len: usize) -> BigUint {
        self.grow_to(len);
        self.counts[len][self.ans.initial].clone()
    }

    pub fn rep(&mut self, n: usize) -> Result<Word> {
        self.rep_big(BigUint::from(n))
    }

    pub fn rep_big(&mut self, mut n: BigUint) -> Result<Word> {
        let states = self.ans.delta.len();
        let mut len = 0;
        let mut total = BigUint::zero();
        loop {
            let c = self.count(len);
            if n < c {
                break;
            }
            n -= &c;
            total += c;
            // no word is longer than the state count in a finite language
            if !self.ans.infinite && len > states {
                return Err(Error::LanguageFinite(total.to_string()));
            }
            len += 1;
        }
        let mut word = Vec::with_capacity(len);
        let mut q = self.ans.initial;
        for remaining in (0..len).rev() {
            let mut chosen = None;
            for (c, &t) in self.ans.delta[q].iter().enumerate() {
                let k = &self.counts[remaining][t];
                if n < *k {
                    chosen = Some((c, t));
                    break;
                }
                n -= k;
            }
            let (c, t) = chosen.expect("counts cover the remaining rank");
            word.push(Symbol::from(c));
            q = t;
        }
        Ok(word)
    }

    pub fn val(&mut self, word: &[Symbol]) -> Result<usize> {
        self.val_big(word)?
            .to_usize()
            .ok_or_else(|| Error::InvalidArgument("rank does not fit in a machine word".into()))
    }

    pub fn val_big(&mut self, word: &[Symbol]) -> Result<BigUint> {
        if word.iter().any(|s| !self.ans.alphabet.contains(*s)) || !self.ans.accepts(word) {
            return Err(Error::NotInLanguage);
        }
        self.grow_to(word.len());
        let mut rank: BigUint = (0..word.len())
            .map(|l| &self.counts[l][self.ans.initial])
            .sum();
        let mut q = self.ans.initial;
        for (i, s) in word.iter().enumerate() {
            let remaining = word.len() - i - 1;
            for &t in &self.ans.delta[q][..s.index()] {
                rank += &self.counts[remaining][t];
            }
            q = self.ans.delta[q][s.index()];
        }
        Ok(rank)
    }
}

/// `λ(δ(q0, rep_S(i)))`.
pub fn ans_dfao_sequence(dfao: &Dfao, ranker: &mut AnsRanker, i: usize) -> Result<Symbol> {
    if dfao.input.names() != ranker.ans.alphabet.names() {
        return Err(Error::InvalidArgument(
            "automaton and numeration system use different alphabets".into(),
        ));
    }
    let word = ranker.rep(i)?;
    Ok(dfao.eval(&word))
}

/// The numeration system `L_M` of a mix-DFAO over digits `0..max ar`:
/// words without a leading 0 along which every transition is defined.
pub fn canonical_ans(m: &MixDfao) -> Ans {
    let width = m.max_arity();
    let n = m.state_count();
    let (start, dead) = (n, n + 1);
    let mut delta: Vec<Vec<usize>> = (0..n)
        .map(|q| (0..width).map(|d| m.step(q, d).unwrap_or(dead)).collect())
        .collect();
    let q0 = m.initial();
    delta.push(
        (0..width)
            .map(|d| if d == 0 { dead } else { m.step(q0, d).unwrap_or(dead) })
            .collect(),
    );
    delta.push(vec![dead; width]);
    let mut accepting = vec![true; n + 2];
    accepting[dead] = false;
    Ans::new(Alphabet::digits(width), delta, start, accepting)
        .expect("rows are complete by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;
    use crate::sequence::SequenceView;

    fn ab_star() -> Ans {
        // a*b*: state 0 reading a's, state 1 reading b's, state 2 dead
        Ans::new(
            Alphabet::new(["a", "b"]).unwrap(),
            vec![vec![0, 1], vec![2, 1], vec![2, 2]],
            0,
            vec![true, true, false],
        )
        .unwrap()
    }

    fn binary_numerals() -> Ans {
        Ans::new(
            Alphabet::digits(2),
            vec![vec![2, 1], vec![1, 1], vec![2, 2]],
            0,
            vec![true, true, false],
        )
        .unwrap()
    }

    /// Every word over `alphabet` up to `max_len`, accepted ones only, in
    /// length-then-lex order.
    fn brute_force(ans: &Ans, max_len: usize) -> Vec<Word> {
        let k = ans.alphabet().len();
        let mut out = Vec::new();
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..=max_len {
            out.extend(layer.iter().filter(|w| ans.accepts(w)).cloned());
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..k).map(move |c| {
                        let mut v = w.clone();
                        v.push(Symbol::from(c));
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn a_star_b_star() {
        let ans = ab_star();
        let mut r = ans.ranker();
        let words: Vec<String> = (0..6)
            .map(|n| ans.alphabet().render(&r.rep(n).unwrap()))
            .collect();
        assert_eq!(words, ["", "a", "b", "aa", "ab", "bb"]);
        let ab = ans.alphabet().parse_word("ab").unwrap();
        assert_eq!(r.val(&ab).unwrap(), 4);
        assert_eq!(r.val(&[]).unwrap(), 0);
        let ba = ans.alphabet().parse_word("ba").unwrap();
        assert_eq!(r.val(&ba), Err(Error::NotInLanguage));
        let expect = brute_force(&ans, 8);
        for (n, w) in expect.iter().enumerate() {
            assert_eq!(&r.rep(n).unwrap(), w);
        }
    }

    #[test]
    fn all_binary_words() {
        let ans = Ans::new(Alphabet::digits(2), vec![vec![0, 0]], 0, vec![true]).unwrap();
        assert_eq!(ans.alphabet().render(&ans.rep(4).unwrap()), "01");
        let expect = brute_force(&ans, 7);
        let mut r = ans.ranker();
        for (n, w) in expect.iter().enumerate() {
            assert_eq!(&r.rep(n).unwrap(), w);
            assert_eq!(r.val(w).unwrap(), n);
        }
    }

    #[test]
    fn binary_numerals_are_binary() {
        let ans = binary_numerals();
        let mut r = ans.ranker();
        assert!(r.rep(0).unwrap().is_empty());
        for n in 1..1024usize {
            assert_eq!(ans.alphabet().render(&r.rep(n).unwrap()), format!("{n:b}"));
        }
    }

    #[test]
    fn finite_language() {
        let ans = Ans::new(
            Alphabet::digits(2),
            vec![vec![1, 1], vec![2, 2], vec![2, 2]],
            0,
            vec![false, true, false],
        )
        .unwrap();
        assert!(!ans.is_infinite());
        let mut r = ans.ranker();
        assert_eq!(r.rep(1).unwrap(), vec![Symbol(1)]);
        assert!(matches!(r.rep(2), Err(Error::LanguageFinite(_))));
        assert!(ab_star().is_infinite());
    }

    #[test]
    fn period_doubling_pipeline() {
        let pd = known::period_doubling();
        let dfao = Dfao::from_mixdfao(&MixDfao::from_spec(&pd));
        let mut r = binary_numerals().ranker();
        let expect = SequenceView::new(pd).prefix(64).unwrap();
        for (i, &s) in expect.iter().enumerate() {
            assert_eq!(ans_dfao_sequence(&dfao, &mut r, i).unwrap(), s);
        }
    }

    #[test]
    fn constant_output() {
        let dfao = Dfao::new(
            Alphabet::digits(2),
            vec![vec![0, 1], vec![1, 0]],
            0,
            Alphabet::digits(1),
            vec![Symbol(0), Symbol(0)],
        )
        .unwrap();
        let mut r = binary_numerals().ranker();
        for i in 0..50 {
            assert_eq!(ans_dfao_sequence(&dfao, &mut r, i).unwrap(), Symbol(0));
        }
    }

    #[test]
    fn fib_through_its_canonical_system() {
        let fib = known::fib();
        let m = MixDfao::from_spec(&fib);
        let dfao = Dfao::from_mixdfao(&m);
        let mut r = canonical_ans(&m).ranker();
        let expect = SequenceView::new(fib).prefix(256).unwrap();
        for (i, &s) in expect.iter().enumerate() {
            assert_eq!(ans_dfao_sequence(&dfao, &mut r, i).unwrap(), s);
        }
    }

    #[test]
    fn mismatched_alphabets() {
        let dfao = Dfao::from_mixdfao(&MixDfao::from_spec(&known::spir()));
        let mut r = ab_star().ranker();
        assert!(matches!(
            ans_dfao_sequence(&dfao, &mut r, 0),
            Err(Error::InvalidArgument(_))
        ));
    }
}
