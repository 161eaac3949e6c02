use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter in its owning [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Symbol {
    fn from(i: usize) -> Self {
        Symbol(i as u32)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub type Word = Vec<Symbol>;

/// An ordered finite alphabet. Letter order is the order of `names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyName);
            }
            if lookup.insert(name.clone(), Symbol::from(i)).is_some() {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Alphabet { names, lookup })
    }

    /// Alphabet `0, 1, ..., n-1`.
    pub fn digits(n: usize) -> Self {
        Alphabet::new((0..n).map(|i| i.to_string())).expect("non-empty digit alphabet")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(Symbol::from)
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<Symbol> {
        self.lookup.get(name).copied()
    }

    pub fn lookup(&self, name: &str, context: impl FnOnce() -> String) -> Result<Symbol> {
        self.get(name).ok_or_else(|| Error::UnknownSymbol {
            name: name.to_string(),
            context: context(),
        })
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.names.len()
    }

    /// Returns a copy with one extra letter appended.
    pub fn extended(&self, name: &str) -> Result<Self> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        Alphabet::new(names)
    }

    /// A name of the form `base`, `base'`, `base''`, ... not yet in the alphabet.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        while self.lookup.contains_key(&candidate) {
            candidate.push('\'');
        }
        candidate
    }

    /// Renders a word: names are concatenated when every name is a single
    /// character, otherwise separated by spaces.
    pub fn render(&self, word: &[Symbol]) -> String {
        let compact = self.names.iter().all(|n| n.chars().count() == 1);
        let sep = if compact { "" } else { " " };
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a word written with single-character names, or space-separated names.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.contains(char::is_whitespace) {
            text.split_whitespace()
                .map(|tok| self.lookup(tok, || format!("word `{text}`")))
                .collect()
        } else {
            text.chars()
                .map(|c| self.lookup(&c.to_string(), || format!("word `{text}`")))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty_names() {
        assert_eq!(
            Alphabet::new(["a", "b", "a"]),
            Err(Error::DuplicateSymbol("a".into()))
        );
        assert_eq!(Alphabet::new(["a", ""]), Err(Error::EmptyName));
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn render_and_parse() {
        let ab = Alphabet::digits(3);
        let w = ab.parse_word("2101").unwrap();
        assert_eq!(ab.render(&w), "2101");
        let long = Alphabet::new(["x1", "y"]).unwrap();
        let w = long.parse_word("x1 y x1").unwrap();
        assert_eq!(long.render(&w), "x1 y x1");
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let ab = Alphabet::new(["c", "c'"]).unwrap();
        assert_eq!(ab.fresh_name("c"), "c''");
        assert_eq!(ab.fresh_name("d"), "d");
    }
}
