use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,

    #[error("symbol names must be non-empty")]
    EmptyName,

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),

    #[error("unknown symbol `{name}` in {context}")]
    UnknownSymbol { name: String, context: String },

    #[error("no rule given for symbol `{0}`")]
    MissingRule(String),

    #[error("coding does not map symbol `{0}`")]
    MissingCoding(String),

    #[error("image of `{0}` is empty (erasing morphisms are not supported)")]
    EmptyImage(String),

    #[error("morphism is not prolongable: {0}")]
    NotProlongable(String),

    #[error("budget exceeded: {needed} cells needed, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("explicit tree exhausted at node {0}")]
    ExplicitRangeExhausted(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid gaps: {0}")]
    InvalidGaps(String),

    #[error("word is not in the language")]
    NotInLanguage,

    #[error("language has only {0} words")]
    LanguageFinite(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("class structure not stabilized: {0}")]
    NotStabilized(String),

    #[error("term is in normal form")]
    NormalForm,

    #[error("angle `{0}` is not an integer number of degrees")]
    AngleNotInteger(String),

    #[error("invalid turtle configuration: {0}")]
    InvalidTurtle(String),
}

/// Cell budget for every operation whose output grows without bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(pub usize);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    pub fn check(self, needed: usize) -> Result<()> {
        if needed > self.0 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
