//! Grammar data model and syntactic Chomsky classification.
//!
//! A [`Grammar`] is one component of a [`ProhibitionGrammar`]; the pair
//! generates the words of the positive component that the negative component
//! does not generate.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Name reserved for the empty word in files and CLI output.
pub const EPSILON: &str = "eps";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(String),
    Nonterminal(String),
}

impl Symbol {
    pub fn t(name: impl Into<String>) -> Self {
        Symbol::Terminal(name.into())
    }

    pub fn nt(name: impl Into<String>) -> Self {
        Symbol::Nonterminal(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Symbol::Terminal(n) | Symbol::Nonterminal(n) => n,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }

    pub fn is_nonterminal(&self) -> bool {
        matches!(self, Symbol::Nonterminal(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rewriting rule `lhs -> rhs`. An empty `rhs` is an ε-production.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: Vec<Symbol>,
    pub rhs: Vec<Symbol>,
}

impl Production {
    pub fn new(lhs: Vec<Symbol>, rhs: Vec<Symbol>) -> Self {
        Production { lhs, rhs }
    }

    /// The lhs when it is exactly one nonterminal.
    pub fn single_lhs(&self) -> Option<&str> {
        match self.lhs.as_slice() {
            [Symbol::Nonterminal(a)] => Some(a),
            _ => None,
        }
    }

    /// `A -> a B`, `A -> a` or `A -> eps`.
    pub fn is_right_linear(&self) -> bool {
        self.single_lhs().is_some()
            && matches!(
                self.rhs.as_slice(),
                [] | [Symbol::Terminal(_)] | [Symbol::Terminal(_), Symbol::Nonterminal(_)]
            )
    }

    pub fn is_epsilon(&self) -> bool {
        self.rhs.is_empty()
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_form(f, &self.lhs)?;
        f.write_str(" -> ")?;
        write_form(f, &self.rhs)
    }
}

fn write_form(f: &mut fmt::Formatter<'_>, form: &[Symbol]) -> fmt::Result {
    if form.is_empty() {
        return f.write_str(EPSILON);
    }
    for (i, s) in form.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        f.write_str(s.name())?;
    }
    Ok(())
}

/// Most restrictive syntactic level a grammar satisfies.
///
/// Only the levels are ordered; [`ChomskyClass::level`] gives the conventional
/// type number. Syntactically, Type1 does not contain Type2 or Type3 grammars
/// that use ε-productions, so the enum deliberately has no `Ord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChomskyClass {
    Type0,
    Type1,
    Type2,
    Type3,
}

impl ChomskyClass {
    pub const ALL: [ChomskyClass; 4] = [
        ChomskyClass::Type0,
        ChomskyClass::Type1,
        ChomskyClass::Type2,
        ChomskyClass::Type3,
    ];

    pub fn level(self) -> u8 {
        match self {
            ChomskyClass::Type0 => 0,
            ChomskyClass::Type1 => 1,
            ChomskyClass::Type2 => 2,
            ChomskyClass::Type3 => 3,
        }
    }

    pub fn from_level(level: u8) -> Option<Self> {
        Self::ALL.get(level as usize).copied()
    }

    /// Type1, Type2 and Type3 languages have decidable membership.
    pub fn is_decidable(self) -> bool {
        self != ChomskyClass::Type0
    }

    /// Type2 or Type3: CYK and the Bar-Hillel product apply.
    pub fn is_context_free(self) -> bool {
        matches!(self, ChomskyClass::Type2 | ChomskyClass::Type3)
    }
}

impl fmt::Display for ChomskyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type{}", self.level())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("invalid grammar: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("positive and negative grammars declare different alphabets")]
    AlphabetMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    pub alphabet: BTreeSet<String>,
    pub nonterminals: BTreeSet<String>,
    pub start: String,
    pub productions: Vec<Production>,
}

impl Grammar {
    /// Builds a grammar and rejects it if any invariant fails.
    pub fn new(
        alphabet: BTreeSet<String>,
        nonterminals: BTreeSet<String>,
        start: impl Into<String>,
        productions: Vec<Production>,
    ) -> Result<Self, GrammarError> {
        let g = Grammar {
            alphabet,
            nonterminals,
            start: start.into(),
            productions,
        };
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(GrammarError::Invalid(violations))
        }
    }

    /// Builds a grammar whose nonterminal set is the start symbol plus every
    /// nonterminal mentioned in a production.
    pub fn with_inferred_nonterminals(
        alphabet: BTreeSet<String>,
        start: impl Into<String>,
        productions: Vec<Production>,
    ) -> Result<Self, GrammarError> {
        let start = start.into();
        let mut nonterminals = BTreeSet::from([start.clone()]);
        for p in &productions {
            for s in p.lhs.iter().chain(&p.rhs) {
                if let Symbol::Nonterminal(n) = s {
                    nonterminals.insert(n.clone());
                }
            }
        }
        Self::new(alphabet, nonterminals, start, productions)
    }

    /// A grammar with start symbol `S` and no productions: the empty language.
    pub fn empty(alphabet: BTreeSet<String>) -> Self {
        Grammar {
            alphabet,
            nonterminals: BTreeSet::from(["S".to_string()]),
            start: "S".to_string(),
            productions: Vec::new(),
        }
    }

    /// One entry per violated invariant; empty iff the grammar is well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for t in &self.alphabet {
            if let Some(problem) = terminal_name_problem(t) {
                out.push(format!("terminal {t:?} {problem}"));
            }
            if self.nonterminals.contains(t) {
                out.push(format!("symbol {t} is both a terminal and a nonterminal"));
            }
        }
        for n in &self.nonterminals {
            if let Some(problem) = nonterminal_name_problem(n) {
                out.push(format!("nonterminal {n:?} {problem}"));
            }
        }
        if !self.nonterminals.contains(&self.start) {
            out.push(format!(
                "start symbol {} is not a declared nonterminal",
                self.start
            ));
        }
        for (i, p) in self.productions.iter().enumerate() {
            if p.lhs.is_empty() {
                out.push(format!("empty left-hand side in production {i}"));
            } else if !p.lhs.iter().any(Symbol::is_nonterminal) {
                out.push(format!(
                    "no nonterminal on the left-hand side of production {i}"
                ));
            }
            let mut reported = BTreeSet::new();
            for s in p.lhs.iter().chain(&p.rhs) {
                let declared = match s {
                    Symbol::Terminal(n) => self.alphabet.contains(n),
                    Symbol::Nonterminal(n) => self.nonterminals.contains(n),
                };
                if !declared && reported.insert(s.name()) {
                    out.push(format!("undeclared symbol {} in production {i}", s.name()));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// True iff the start symbol occurs on some right-hand side.
    pub fn start_on_rhs(&self) -> bool {
        let start = Symbol::nt(self.start.clone());
        self.productions.iter().any(|p| p.rhs.contains(&start))
    }

    /// Noncontracting, allowing `S -> eps` when `S` is on no right-hand side.
    pub fn is_noncontracting(&self) -> bool {
        let start_on_rhs = self.start_on_rhs();
        self.productions.iter().all(|p| {
            p.lhs.len() <= p.rhs.len()
                || (p.rhs.is_empty()
                    && p.single_lhs() == Some(self.start.as_str())
                    && !start_on_rhs)
        })
    }

    pub fn classify(&self) -> ChomskyClass {
        if self.productions.iter().all(Production::is_right_linear) {
            ChomskyClass::Type3
        } else if self.productions.iter().all(|p| p.single_lhs().is_some()) {
            ChomskyClass::Type2
        } else if self.is_noncontracting() {
            ChomskyClass::Type1
        } else {
            ChomskyClass::Type0
        }
    }

    /// True iff the grammar has `start -> eps`.
    pub fn has_start_epsilon(&self) -> bool {
        self.productions
            .iter()
            .any(|p| p.is_epsilon() && p.single_lhs() == Some(self.start.as_str()))
    }
}

/// Positive and negative components over one shared alphabet.
///
/// The nonterminal namespaces of the two components are independent: a
/// nonterminal `S` in the positive grammar has nothing to do with an `S` in
/// the negative one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProhibitionGrammar {
    positive: Grammar,
    negative: Grammar,
}

impl ProhibitionGrammar {
    pub fn new(positive: Grammar, negative: Grammar) -> Result<Self, GrammarError> {
        let mut violations = Vec::new();
        for (side, g) in [("positive", &positive), ("negative", &negative)] {
            violations.extend(g.validate().into_iter().map(|v| format!("{side}: {v}")));
        }
        if !violations.is_empty() {
            return Err(GrammarError::Invalid(violations));
        }
        if positive.alphabet != negative.alphabet {
            return Err(GrammarError::AlphabetMismatch);
        }
        Ok(ProhibitionGrammar { positive, negative })
    }

    /// A prohibition grammar with nothing prohibited.
    pub fn unrestricted(positive: Grammar) -> Result<Self, GrammarError> {
        let negative = Grammar::empty(positive.alphabet.clone());
        Self::new(positive, negative)
    }

    pub fn positive(&self) -> &Grammar {
        &self.positive
    }

    pub fn negative(&self) -> &Grammar {
        &self.negative
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.positive.alphabet
    }
}

/// A sequence of terminal tokens.
///
/// Words order by length first and then lexicographically by token, which
/// is the enumeration order used for language slices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<String>);

impl Word {
    pub fn new(tokens: Vec<String>) -> Self {
        Word(tokens)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// One token per character: `Word::from_chars("aab")` is `a a b`.
    pub fn from_chars(s: &str) -> Self {
        Word(s.chars().map(String::from).collect())
    }

    /// Whitespace-separated tokens; `eps` or blank input is the empty word.
    pub fn parse(s: &str) -> Self {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens == [EPSILON] {
            return Word::empty();
        }
        Word(tokens.into_iter().map(String::from).collect())
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First token not in `alphabet`, if any.
    pub fn foreign_token<'a>(&'a self, alphabet: &BTreeSet<String>) -> Option<&'a str> {
        self.0
            .iter()
            .find(|t| !alphabet.contains(*t))
            .map(String::as_str)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut tokens = self.0.clone();
        tokens.extend(other.0.iter().cloned());
        Word(tokens)
    }
}

impl From<Vec<String>> for Word {
    fn from(tokens: Vec<String>) -> Self {
        Word(tokens)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str(EPSILON)
        } else {
            f.write_str(&self.0.join(" "))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

fn terminal_name_problem(name: &str) -> Option<&'static str> {
    if name.is_empty() {
        Some("is empty")
    } else if name.chars().any(|c| c.is_whitespace() || c == '"') {
        Some("contains whitespace or a quote")
    } else if name == EPSILON {
        Some("is reserved for the empty word")
    } else {
        None
    }
}

fn nonterminal_name_problem(name: &str) -> Option<&'static str> {
    match name.chars().next() {
        None => Some("is empty"),
        Some(c) if !c.is_ascii_uppercase() => Some("does not begin with an uppercase letter"),
        _ if name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '"' | '#' | '|')) =>
        {
            Some("contains whitespace or a reserved character")
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn prod(lhs: &[&str], rhs: &[&str]) -> Production {
        let conv = |xs: &[&str]| {
            xs.iter()
                .map(|x| {
                    if x.starts_with(|c: char| c.is_ascii_uppercase()) {
                        Symbol::nt(*x)
                    } else {
                        Symbol::t(*x)
                    }
                })
                .collect()
        };
        Production::new(conv(lhs), conv(rhs))
    }

    fn grammar(alpha: &[&str], prods: Vec<Production>) -> Grammar {
        Grammar::with_inferred_nonterminals(set(alpha), "S", prods).unwrap()
    }

    #[test]
    fn classify_right_linear() {
        let g = grammar(
            &["a"],
            vec![prod(&["S"], &["a", "S"]), prod(&["S"], &["a"])],
        );
        assert_eq!(g.classify(), ChomskyClass::Type3);
    }

    #[test]
    fn classify_anbn_is_context_free_not_noncontracting() {
        let g = grammar(
            &["a", "b"],
            vec![prod(&["S"], &["a", "S", "b"]), prod(&["S"], &[])],
        );
        assert_eq!(g.classify(), ChomskyClass::Type2);
        // S occurs on a rhs, so the S -> eps exception does not apply.
        assert!(!g.is_noncontracting());
    }

    #[test]
    fn classify_swap_rule_is_type1() {
        let g = grammar(
            &["a", "b"],
            vec![
                prod(&["A", "B"], &["B", "A"]),
                prod(&["S"], &["A", "B"]),
                prod(&["A"], &["a"]),
                prod(&["B"], &["b"]),
            ],
        );
        assert_eq!(g.classify(), ChomskyClass::Type1);
    }

    #[test]
    fn classify_contracting_is_type0() {
        let g = grammar(
            &["a"],
            vec![
                prod(&["S"], &["a", "S", "X"]),
                prod(&["S"], &[]),
                prod(&["a", "X"], &["a"]),
            ],
        );
        assert_eq!(g.classify(), ChomskyClass::Type0);
    }

    #[test]
    fn left_linear_is_only_context_free() {
        let g = grammar(
            &["a"],
            vec![prod(&["S"], &["S", "a"]), prod(&["S"], &["a"])],
        );
        assert_eq!(g.classify(), ChomskyClass::Type2);
    }

    #[test]
    fn start_epsilon_exception() {
        let g = grammar(
            &["a", "b"],
            vec![
                prod(&["S"], &[]),
                prod(&["S"], &["A", "B"]),
                prod(&["A", "B"], &["B", "A"]),
                prod(&["A"], &["a"]),
                prod(&["B"], &["b"]),
            ],
        );
        assert_eq!(g.classify(), ChomskyClass::Type1);
        let mut h = g.clone();
        h.productions.push(prod(&["A"], &["S", "a"]));
        assert_eq!(h.classify(), ChomskyClass::Type0);
    }

    #[test]
    fn validate_reports_undeclared_terminal() {
        let g = Grammar {
            alphabet: set(&["a"]),
            nonterminals: set(&["S"]),
            start: "S".into(),
            productions: vec![prod(&["S"], &["c"])],
        };
        assert_eq!(g.validate(), vec!["undeclared symbol c in production 0"]);
    }

    #[test]
    fn validate_reports_lhs_without_nonterminal() {
        let g = Grammar {
            alphabet: set(&["a"]),
            nonterminals: set(&["S"]),
            start: "S".into(),
            productions: vec![prod(&["S"], &["a"]), prod(&["a"], &["a", "a"])],
        };
        let v = g.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("production 1"), "{v:?}");
    }

    #[test]
    fn validate_accepts_valid_and_flags_start() {
        let g = grammar(&["a"], vec![prod(&["S"], &["a"])]);
        assert!(g.validate().is_empty());
        let mut bad = g.clone();
        bad.start = "T".into();
        assert_eq!(bad.validate().len(), 1);
    }

    #[test]
    fn prohibition_requires_shared_alphabet() {
        let p = grammar(&["a"], vec![prod(&["S"], &["a"])]);
        let n = Grammar::empty(set(&["a", "b"]));
        assert_eq!(
            ProhibitionGrammar::new(p, n).unwrap_err(),
            GrammarError::AlphabetMismatch
        );
    }

    #[test]
    fn word_order_is_length_first() {
        let mut ws = vec![Word::from_chars("b"), Word::from_chars("aa"), Word::empty()];
        ws.sort();
        assert_eq!(
            ws,
            vec![Word::empty(), Word::from_chars("b"), Word::from_chars("aa")]
        );
        assert_eq!(Word::parse("eps"), Word::empty());
        assert_eq!(Word::parse(" wear  ed ").to_string(), "wear ed");
    }
}
