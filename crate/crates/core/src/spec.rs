//! Morphic sequence specifications: an alphabet Γ, a non-erasing morphism
//! `f` prolongable on a start letter `a`, and a coding `τ : Γ → Σ`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Budget, Error, Result};

/// Unvalidated spec data, mirroring the JSON spec file format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    pub alphabet: Vec<String>,
    pub start: String,
    pub rules: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coding: Option<BTreeMap<String, String>>,
}

fn chars(s: &str) -> Vec<String> {
    s.chars().map(|c| c.to_string()).collect()
}

impl RawSpec {
    /// Shorthand for single-character alphabets: `compact("01", "0", &[("0", "01"), ("1", "0")])`.
    pub fn compact(alphabet: &str, start: &str, rules: &[(&str, &str)]) -> Self {
        RawSpec {
            alphabet: chars(alphabet),
            start: start.to_string(),
            rules: rules
                .iter()
                .map(|(lhs, rhs)| (lhs.to_string(), chars(rhs)))
                .collect(),
            output_alphabet: None,
            coding: None,
        }
    }

    pub fn with_coding(mut self, output_alphabet: &str, coding: &[(&str, &str)]) -> Self {
        self.output_alphabet = Some(chars(output_alphabet));
        self.coding = Some(
            coding
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        );
        self
    }

    pub fn validate(&self) -> Result<MorphicSpec> {
        validate_spec(self)
    }
}

/// A validated morphic sequence specification. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphicSpec {
    gamma: Alphabet,
    start: Symbol,
    rules: Vec<Word>,
    sigma: Alphabet,
    coding: Vec<Symbol>,
}

pub fn validate_spec(raw: &RawSpec) -> Result<MorphicSpec> {
    let gamma = Alphabet::new(raw.alphabet.iter().cloned())?;
    let start = gamma.lookup(&raw.start, || "start".into())?;

    for lhs in raw.rules.keys() {
        gamma.lookup(lhs, || format!("rules (key `{lhs}`)"))?;
    }
    let mut rules = Vec::with_capacity(gamma.len());
    for b in gamma.symbols() {
        let name = gamma.name(b);
        let image = raw
            .rules
            .get(name)
            .ok_or_else(|| Error::MissingRule(name.to_string()))?;
        let word = image
            .iter()
            .enumerate()
            .map(|(i, s)| gamma.lookup(s, || format!("rules.{name}[{i}]")))
            .collect::<Result<Word>>()?;
        rules.push(word);
    }

    let (sigma, coding) = match (&raw.output_alphabet, &raw.coding) {
        (None, None) => (gamma.clone(), gamma.symbols().collect()),
        (out, Some(map)) => {
            let sigma = match out {
                Some(names) => Alphabet::new(names.iter().cloned())?,
                None => {
                    // Σ in order of first appearance along Γ.
                    let mut names: Vec<String> = Vec::new();
                    for b in gamma.symbols() {
                        if let Some(v) = map.get(gamma.name(b)) {
                            if !names.contains(v) {
                                names.push(v.clone());
                            }
                        }
                    }
                    Alphabet::new(names)?
                }
            };
            for k in map.keys() {
                gamma.lookup(k, || format!("coding (key `{k}`)"))?;
            }
            let mut coding = Vec::with_capacity(gamma.len());
            for b in gamma.symbols() {
                let name = gamma.name(b);
                let target = map
                    .get(name)
                    .ok_or_else(|| Error::MissingCoding(name.to_string()))?;
                coding.push(sigma.lookup(target, || format!("coding.{name}"))?);
            }
            (sigma, coding)
        }
        (Some(names), None) => {
            // An output alphabet without a coding only makes sense as Γ itself.
            let sigma = Alphabet::new(names.iter().cloned())?;
            let coding = gamma
                .symbols()
                .map(|b| sigma.lookup(gamma.name(b), || format!("coding (identity on `{}`)", gamma.name(b))))
                .collect::<Result<Vec<_>>>()?;
            (sigma, coding)
        }
    };

    MorphicSpec::new(gamma, start, rules, sigma, coding)
}

impl MorphicSpec {
    /// Builds a spec from already-indexed parts, checking every invariant.
    pub fn new(
        gamma: Alphabet,
        start: Symbol,
        rules: Vec<Word>,
        sigma: Alphabet,
        coding: Vec<Symbol>,
    ) -> Result<Self> {
        if rules.len() != gamma.len() {
            return Err(Error::MissingRule(format!(
                "{} rules for {} letters",
                rules.len(),
                gamma.len()
            )));
        }
        if !gamma.contains(start) {
            return Err(Error::UnknownSymbol {
                name: start.to_string(),
                context: "start".into(),
            });
        }
        for (b, image) in rules.iter().enumerate() {
            let name = gamma.name(Symbol::from(b));
            if image.is_empty() {
                return Err(Error::EmptyImage(name.to_string()));
            }
            if let Some(bad) = image.iter().find(|s| !gamma.contains(**s)) {
                return Err(Error::UnknownSymbol {
                    name: bad.to_string(),
                    context: format!("rules.{name}"),
                });
            }
        }
        if coding.len() != gamma.len() {
            return Err(Error::MissingCoding(format!(
                "{} codings for {} letters",
                coding.len(),
                gamma.len()
            )));
        }
        if let Some(bad) = coding.iter().find(|s| !sigma.contains(**s)) {
            return Err(Error::UnknownSymbol {
                name: bad.to_string(),
                context: "coding".into(),
            });
        }
        let image = &rules[start.index()];
        if image[0] != start {
            return Err(Error::NotProlongable(format!(
                "f({}) does not begin with {}",
                gamma.name(start),
                gamma.name(start)
            )));
        }
        if image.len() < 2 {
            return Err(Error::NotProlongable(format!(
                "f({}) has length 1",
                gamma.name(start)
            )));
        }
        Ok(MorphicSpec {
            gamma,
            start,
            rules,
            sigma,
            coding,
        })
    }

    pub fn gamma(&self) -> &Alphabet {
        &self.gamma
    }

    pub fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    pub fn start(&self) -> Symbol {
        self.start
    }

    pub fn image(&self, b: Symbol) -> &[Symbol] {
        &self.rules[b.index()]
    }

    pub fn rules(&self) -> &[Word] {
        &self.rules
    }

    pub fn code(&self, b: Symbol) -> Symbol {
        self.coding[b.index()]
    }

    pub fn coding(&self) -> &[Symbol] {
        &self.coding
    }

    /// `u` in `f(a) = a·u`.
    pub fn start_tail(&self) -> &[Symbol] {
        &self.image(self.start)[1..]
    }

    pub fn is_identity_coding(&self) -> bool {
        self.sigma == self.gamma && self.coding.iter().enumerate().all(|(i, s)| s.index() == i)
    }

    /// `Some(k)` when every image has length `k`.
    pub fn uniform_length(&self) -> Option<usize> {
        let k = self.rules[0].len();
        self.rules.iter().all(|r| r.len() == k).then_some(k)
    }

    pub fn apply(&self, word: &[Symbol], budget: Budget) -> Result<Word> {
        let len: usize = word.iter().map(|&b| self.image(b).len()).sum();
        budget.check(len)?;
        let mut out = Vec::with_capacity(len);
        for &b in word {
            out.extend_from_slice(self.image(b));
        }
        Ok(out)
    }

    pub fn code_word(&self, word: &[Symbol]) -> Word {
        word.iter().map(|&b| self.code(b)).collect()
    }

    /// `f^n(a)`.
    pub fn iterate(&self, n: usize, budget: Budget) -> Result<Word> {
        let mut word = vec![self.start];
        for _ in 0..n {
            word = self.apply(&word, budget)?;
        }
        Ok(word)
    }

    /// Same start and coding with rules `b ↦ f^n(b)`; generates the same sequence.
    pub fn power_representation(&self, n: usize, budget: Budget) -> Result<MorphicSpec> {
        if n == 0 {
            return Err(Error::NotProlongable("exponent must be at least 1".into()));
        }
        let mut rules = Vec::with_capacity(self.rules.len());
        for b in self.gamma.symbols() {
            let mut word = vec![b];
            for _ in 0..n {
                word = self.apply(&word, budget)?;
            }
            rules.push(word);
        }
        MorphicSpec::new(
            self.gamma.clone(),
            self.start,
            rules,
            self.sigma.clone(),
            self.coding.clone(),
        )
    }

    /// A spec for `tail(σ)`: with `f(a) = a·b·y`, add a fresh letter `c`
    /// with `f(c) = c·y·f(b)`, `τ(c) = τ(b)`, and start in `c`.
    pub fn tail_representation(&self) -> Result<MorphicSpec> {
        let u = self.start_tail();
        let (b, y) = (u[0], &u[1..]);
        let fresh = self.gamma.fresh_name("c");
        let gamma = self.gamma.extended(&fresh)?;
        let c = Symbol::from(self.gamma.len());
        let mut image = vec![c];
        image.extend_from_slice(y);
        image.extend_from_slice(self.image(b));
        let mut rules = self.rules.clone();
        rules.push(image);
        let mut coding = self.coding.clone();
        coding.push(self.code(b));
        MorphicSpec::new(gamma, c, rules, self.sigma.clone(), coding)
    }

    /// Same spec with coding replaced by the identity on Γ.
    pub fn pure(&self) -> MorphicSpec {
        MorphicSpec {
            gamma: self.gamma.clone(),
            start: self.start,
            rules: self.rules.clone(),
            sigma: self.gamma.clone(),
            coding: self.gamma.symbols().collect(),
        }
    }

    pub fn to_raw(&self) -> RawSpec {
        let name = |b: Symbol| self.gamma.name(b).to_string();
        let rules = self
            .gamma
            .symbols()
            .map(|b| (name(b), self.image(b).iter().map(|&s| name(s)).collect()))
            .collect();
        let (output_alphabet, coding) = if self.is_identity_coding() {
            (None, None)
        } else {
            (
                Some(self.sigma.names().to_vec()),
                Some(
                    self.gamma
                        .symbols()
                        .map(|b| (name(b), self.sigma.name(self.code(b)).to_string()))
                        .collect(),
                ),
            )
        };
        RawSpec {
            alphabet: self.gamma.names().to_vec(),
            start: name(self.start),
            rules,
            output_alphabet,
            coding,
        }
    }

    pub fn render_rules(&self) -> String {
        self.gamma
            .symbols()
            .map(|b| format!("{} -> {}", self.gamma.name(b), self.gamma.render(self.image(b))))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    #[test]
    fn fib_and_spir_validate() {
        let fib = known::fib();
        assert_eq!(fib.gamma().len(), 2);
        assert!(fib.is_identity_coding());
        let spir = known::spir();
        assert_eq!(spir.gamma().render(spir.image(spir.start())), "21");
        assert_eq!(spir.sigma().len(), 2);
    }

    #[test]
    fn not_prolongable() {
        let err = RawSpec::compact("01", "0", &[("0", "10"), ("1", "0")])
            .validate()
            .unwrap_err();
        assert!(matches!(err, Error::NotProlongable(_)));
        let err = RawSpec::compact("01", "0", &[("0", "0"), ("1", "01")])
            .validate()
            .unwrap_err();
        assert!(matches!(err, Error::NotProlongable(_)));
    }

    #[test]
    fn erasing_and_unknown_symbols() {
        let err = RawSpec::compact("01", "0", &[("0", "01"), ("1", "")])
            .validate()
            .unwrap_err();
        assert_eq!(err, Error::EmptyImage("1".into()));
        let err = RawSpec::compact("01", "0", &[("0", "01"), ("1", "2")])
            .validate()
            .unwrap_err();
        assert!(matches!(err, Error::UnknownSymbol { ref name, ref context } if name == "2" && context == "rules.1[0]"));
        let err = RawSpec::compact("01", "0", &[("0", "01")]).validate().unwrap_err();
        assert_eq!(err, Error::MissingRule("1".into()));
    }

    #[test]
    fn coding_errors() {
        let err = RawSpec::compact("01", "0", &[("0", "01"), ("1", "0")])
            .with_coding("ab", &[("0", "a")])
            .validate()
            .unwrap_err();
        assert_eq!(err, Error::MissingCoding("1".into()));
        let err = RawSpec::compact("01", "0", &[("0", "01"), ("1", "0")])
            .with_coding("ab", &[("0", "a"), ("1", "z")])
            .validate()
            .unwrap_err();
        assert!(matches!(err, Error::UnknownSymbol { .. }));
    }

    #[test]
    fn iterate_fib() {
        let fib = known::fib();
        let b = Budget::default();
        assert_eq!(fib.gamma().render(&fib.iterate(0, b).unwrap()), "0");
        assert_eq!(fib.gamma().render(&fib.iterate(3, b).unwrap()), "01001");
        assert_eq!(fib.gamma().render(&fib.iterate(4, b).unwrap()), "01001010");
        assert!(matches!(
            fib.iterate(40, Budget(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn power_representation_of_fib() {
        let fib = known::fib();
        let sq = fib.power_representation(2, Budget::default()).unwrap();
        let g = sq.gamma();
        assert_eq!(g.render(sq.image(Symbol(0))), "010");
        assert_eq!(g.render(sq.image(Symbol(1))), "01");
        assert_eq!(fib.power_representation(1, Budget::default()).unwrap(), fib);
    }

    #[test]
    fn tail_representation_of_fib_and_spir() {
        let t = known::fib().tail_representation().unwrap();
        let c = t.start();
        assert_eq!(t.gamma().name(c), "c");
        assert_eq!(t.gamma().render(t.image(c)), "c0");
        assert_eq!(t.sigma().name(t.code(c)), "1");

        let t = known::spir().tail_representation().unwrap();
        let c = t.start();
        assert_eq!(t.gamma().render(t.image(c)), "c01");
        assert_eq!(t.sigma().name(t.code(c)), "1");
    }

    #[test]
    fn raw_round_trip() {
        for spec in known::all() {
            let back = validate_spec(&spec.1.to_raw()).unwrap();
            assert_eq!(back, spec.1);
        }
    }

    #[test]
    fn coding_without_output_alphabet_uses_first_appearance() {
        let mut raw = RawSpec::compact("012", "2", &[("2", "21"), ("1", "01"), ("0", "0")]);
        raw.coding = Some(
            [("0", "x"), ("1", "y"), ("2", "y")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        );
        let spec = raw.validate().unwrap();
        assert_eq!(spec.sigma().names(), &["x".to_string(), "y".to_string()]);
    }
}
