//! Brute-force ground truth over finite slices `L ∩ Σ^{<=n}`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::automata::{self, Equivalence};
use crate::cfg;
use crate::derivation::{Budget, Verdict};
use crate::grammar::{ChomskyClass, Grammar, ProhibitionGrammar, Symbol, Word};
use crate::prohibition::{self, pair_class, ComponentDecider, PairClass, ProhibitionDecider};
use crate::Error;

/// Step ceiling for budget doubling in [`resolve`].
pub const MAX_RESOLVE_STEPS: usize = 100_000;

/// All words of length `<= n`, shortest first, then lexicographic.
pub fn enumerate_words(alphabet: &BTreeSet<String>, n: usize) -> Result<Vec<Word>, Error> {
    if alphabet.is_empty() && n > 0 {
        return Err(Error::EmptyAlphabet);
    }
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<String>::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for prefix in &layer {
            for t in alphabet {
                let mut w = prefix.clone();
                w.push(t.clone());
                next.push(w);
            }
        }
        out.extend(next.iter().cloned().map(Word::new));
        layer = next;
    }
    Ok(out)
}

/// A finite language slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSlice {
    pub alphabet: BTreeSet<String>,
    pub max_len: usize,
    pub words: BTreeSet<Word>,
}

impl LanguageSlice {
    /// Keeps only the words of `words` that fit the alphabet and bound.
    pub fn new(
        alphabet: BTreeSet<String>,
        max_len: usize,
        words: impl IntoIterator<Item = Word>,
    ) -> Self {
        let words = words
            .into_iter()
            .filter(|w| w.len() <= max_len && w.foreign_token(&alphabet).is_none())
            .collect();
        LanguageSlice {
            alphabet,
            max_len,
            words,
        }
    }

    pub fn full(alphabet: &BTreeSet<String>, max_len: usize) -> Result<Self, Error> {
        Ok(Self::new(
            alphabet.clone(),
            max_len,
            enumerate_words(alphabet, max_len)?,
        ))
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn complement(&self) -> Result<Self, Error> {
        let all = Self::full(&self.alphabet, self.max_len)?;
        Ok(all.difference(self))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.with_words(self.words.union(&other.words).cloned().collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.with_words(self.words.intersection(&other.words).cloned().collect())
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.with_words(self.words.difference(&other.words).cloned().collect())
    }

    /// Least word in exactly one of the two slices.
    pub fn first_disagreement(&self, other: &Self) -> Option<Word> {
        self.words.symmetric_difference(&other.words).min().cloned()
    }

    fn with_words(&self, words: BTreeSet<Word>) -> Self {
        LanguageSlice {
            alphabet: self.alphabet.clone(),
            max_len: self.max_len,
            words,
        }
    }
}

impl fmt::Display for LanguageSlice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

/// The slice of words on which `member` answers `In`. Words are checked in
/// parallel; the first `Unknown` in enumeration order is an error.
pub fn slice<F>(alphabet: &BTreeSet<String>, n: usize, member: F) -> Result<LanguageSlice, Error>
where
    F: Fn(&Word) -> Result<Verdict, Error> + Sync,
{
    let words = enumerate_words(alphabet, n)?;
    let verdicts: Vec<Result<Verdict, Error>> = words.par_iter().map(&member).collect();
    let mut members = Vec::new();
    for (w, v) in words.into_iter().zip(verdicts) {
        match v? {
            Verdict::In => members.push(w),
            Verdict::NotIn => {}
            Verdict::Unknown => return Err(Error::Indefinite(w)),
        }
    }
    Ok(LanguageSlice::new(alphabet.clone(), n, members))
}

/// Runs `decide` at the default budget for `w`, doubling both caps while
/// the verdict is `Unknown` and the step cap stays within
/// [`MAX_RESOLVE_STEPS`].
pub fn resolve<F>(w: &Word, decide: F) -> Result<Verdict, Error>
where
    F: Fn(&Budget) -> Result<Verdict, Error>,
{
    let mut budget = Budget::for_word(w);
    loop {
        let v = decide(&budget)?;
        let next = budget.doubled();
        if v.is_definitive() || next.max_steps() > MAX_RESOLVE_STEPS {
            return Ok(v);
        }
        budget = next;
    }
}

/// Slice of a single grammar through its class's decider.
pub fn grammar_slice(g: &Grammar, n: usize) -> Result<LanguageSlice, Error> {
    let d = ComponentDecider::compile(g)?;
    slice(&g.alphabet, n, |w| {
        resolve(w, |b| Ok(d.decide(w, b)?.verdict))
    })
}

/// Slice of `L(positive) \ L(negative)` through [`prohibition::member`].
pub fn member_slice(pg: &ProhibitionGrammar, n: usize) -> Result<LanguageSlice, Error> {
    let d = ProhibitionDecider::new(pg)?;
    slice(pg.alphabet(), n, |w| {
        resolve(w, |b| Ok(d.member(w, b)?.verdict))
    })
}

/// Every terminal word of length `<= max_word_len` derivable through
/// sentential forms of length `<= max_form_len`, by exhaustive rewriting.
///
/// Exact for noncontracting grammars when `max_form_len >= max_word_len`.
pub fn derivable_words(g: &Grammar, max_word_len: usize, max_form_len: usize) -> BTreeSet<Word> {
    let start = vec![Symbol::nt(g.start.clone())];
    let mut seen: HashSet<Vec<Symbol>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut words = BTreeSet::new();
    while let Some(form) = queue.pop_front() {
        if form.iter().all(Symbol::is_terminal) {
            if form.len() <= max_word_len {
                words.insert(Word::new(
                    form.iter().map(|s| s.name().to_string()).collect(),
                ));
            }
            continue;
        }
        for p in &g.productions {
            let k = p.lhs.len();
            if form.len() < k || form.len() - k + p.rhs.len() > max_form_len {
                continue;
            }
            for i in 0..=form.len() - k {
                if form[i..i + k] != p.lhs[..] {
                    continue;
                }
                let mut next = form[..i].to_vec();
                next.extend_from_slice(&p.rhs);
                next.extend_from_slice(&form[i + k..]);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    words
}

fn require_decidable(claim: &str, g: &Grammar) -> Result<(), Error> {
    let class = g.classify();
    if class.is_decidable() {
        Ok(())
    } else {
        Err(Error::SignatureMismatch {
            claim: claim.to_string(),
            expected: "a decidable first component".to_string(),
            found: class.to_string(),
        })
    }
}

/// Checks the two set identities behind the enumerability arguments on the
/// slice of depth `n`:
///
/// * `L_D \ L_E = U \ ((U \ L_D) ∪ L_E)` with `U = Σ^{<=n}`, where the left
///   side is computed by the prohibition decider on `(gD, gE)`;
/// * the decider on `(gE, gD)` gives exactly the words in `L_E` and not in
///   `L_D`.
///
/// `gD` must be Type1 to Type3; `gE` may be any class as long as its slice is
/// definitive.
pub fn check_lemma_identities(g_d: &Grammar, g_e: &Grammar, n: usize) -> Result<bool, Error> {
    require_decidable("complement identities", g_d)?;
    let d = grammar_slice(g_d, n)?;
    let e = grammar_slice(g_e, n)?;
    let universe = LanguageSlice::full(&g_d.alphabet, n)?;
    let first = member_slice(&ProhibitionGrammar::new(g_d.clone(), g_e.clone())?, n)?;
    let expected_first = universe.difference(&universe.difference(&d).union(&e));
    let second = member_slice(&ProhibitionGrammar::new(g_e.clone(), g_d.clone())?, n)?;
    let pointwise = LanguageSlice::new(
        universe.alphabet.clone(),
        n,
        universe
            .words
            .iter()
            .filter(|w| e.contains(w) && !d.contains(w))
            .cloned(),
    );
    Ok(first == expected_first && second == pointwise)
}

/// Constructive claims that can be checked on slices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// Empty negative component changes nothing.
    T1,
    /// Regular minus regular is regular, by construction.
    T2,
    /// Context-sensitive pairs are decided totally.
    T8,
    /// Context-free minus regular is context-free, by construction.
    T9,
    /// Regular minus context-free is the complement of a union.
    P1,
}

impl Claim {
    pub const ALL: [Claim; 5] = [Claim::T1, Claim::T2, Claim::T8, Claim::T9, Claim::P1];

    pub fn default_depth(self) -> usize {
        match self {
            Claim::T9 | Claim::P1 => 10,
            _ => 8,
        }
    }

    fn signature(self) -> &'static str {
        match self {
            Claim::T1 => "an empty negative component",
            Claim::T2 => "pair (3,3)",
            Claim::T8 => "pair (1,1)",
            Claim::T9 => "pair (2,3)",
            Claim::P1 => "pair (3,2)",
        }
    }

    fn accepts(self, pg: &ProhibitionGrammar) -> Result<bool, Error> {
        use ChomskyClass::*;
        let pc = pair_class(pg);
        Ok(match self {
            Claim::T1 => pc.negative.is_context_free() && cfg::cfg_is_empty(pg.negative())?,
            Claim::T2 => pc == PairClass::new(Type3, Type3),
            Claim::T8 => pc == PairClass::new(Type1, Type1),
            Claim::T9 => pc == PairClass::new(Type2, Type3),
            Claim::P1 => pc == PairClass::new(Type3, Type2),
        })
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::T1 => "T1",
            Claim::T2 => "T2",
            Claim::T8 => "T8",
            Claim::T9 => "T9",
            Claim::P1 => "P1",
        })
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Claim::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnsupportedClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceOutcome {
    Consistent,
    Violated { witness: Word },
}

impl InstanceOutcome {
    fn from_witness(witness: Option<Word>) -> Self {
        match witness {
            None => InstanceOutcome::Consistent,
            Some(witness) => InstanceOutcome::Violated { witness },
        }
    }
}

impl fmt::Display for InstanceOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceOutcome::Consistent => f.write_str("consistent"),
            InstanceOutcome::Violated { witness } => write!(f, "violated (witness: {witness})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub claim: Claim,
    pub max_len: usize,
    pub outcomes: Vec<InstanceOutcome>,
}

impl RelationReport {
    pub fn is_consistent(&self) -> bool {
        self.outcomes
            .iter()
            .all(|o| *o == InstanceOutcome::Consistent)
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim: {}", self.claim)?;
        writeln!(f, "depth: {}", self.max_len)?;
        writeln!(f, "instances: {}", self.outcomes.len())?;
        for (i, o) in self.outcomes.iter().enumerate() {
            writeln!(f, "instance {}: {o}", i + 1)?;
        }
        let overall = if self.is_consistent() {
            "consistent"
        } else {
            "violated"
        };
        writeln!(f, "outcome: {overall}")
    }
}

/// Checks `claim` on every instance at depth `n`.
pub fn verify_relation(
    claim: Claim,
    instances: &[ProhibitionGrammar],
    n: usize,
) -> Result<RelationReport, Error> {
    for pg in instances {
        if !claim.accepts(pg)? {
            return Err(Error::SignatureMismatch {
                claim: claim.to_string(),
                expected: claim.signature().to_string(),
                found: pair_class(pg).to_string(),
            });
        }
    }
    let outcomes = instances
        .iter()
        .map(|pg| check_instance(claim, pg, n))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(RelationReport {
        claim,
        max_len: n,
        outcomes,
    })
}

fn check_instance(
    claim: Claim,
    pg: &ProhibitionGrammar,
    n: usize,
) -> Result<InstanceOutcome, Error> {
    let alphabet = pg.alphabet();
    let witness = match claim {
        Claim::T1 => {
            let pair = ProhibitionDecider::new(pg)?;
            let words = enumerate_words(alphabet, n)?;
            let mut witness = None;
            for w in words {
                let budget = Budget::for_word(&w);
                let report = pair.member(&w, &budget)?;
                if report.verdict != report.positive.verdict {
                    witness = Some(w);
                    break;
                }
            }
            witness
        }
        Claim::T2 => {
            let built = prohibition::construct_difference(pg)?;
            if built.classify() != ChomskyClass::Type3 {
                return Err(Error::UnsupportedPair(pair_class(pg)));
            }
            let built_dfa = automata::compile_regular(&built)?;
            let built_slice = slice(alphabet, n, |w| {
                Ok(Verdict::from_bool(automata::dfa_member(&built_dfa, w)?))
            })?;
            let reference = member_slice(pg, n)?;
            built_slice.first_disagreement(&reference).or({
                let direct = automata::difference(
                    &automata::compile_regular(pg.positive())?,
                    &automata::compile_regular(pg.negative())?,
                )?;
                match automata::equivalent(&built_dfa, &direct)? {
                    Equivalence::Equal => None,
                    Equivalence::Differ(w) => Some(w),
                }
            })
        }
        Claim::T9 => {
            let built = prohibition::construct_difference(pg)?;
            if !built.classify().is_context_free() {
                return Err(Error::UnsupportedPair(pair_class(pg)));
            }
            let cnf = cfg::to_cnf(&built)?;
            let built_slice = slice(alphabet, n, |w| {
                Ok(Verdict::from_bool(cfg::cyk_member(&cnf, w)?))
            })?;
            built_slice.first_disagreement(&member_slice(pg, n)?)
        }
        Claim::T8 => {
            let pair = ProhibitionDecider::new(pg)?;
            let decided = slice(alphabet, n, |w| {
                Ok(pair.member(w, &Budget::for_word(w))?.verdict)
            });
            let decided = match decided {
                Ok(s) => s,
                Err(Error::Indefinite(w)) => return Ok(InstanceOutcome::Violated { witness: w }),
                Err(e) => return Err(e),
            };
            let p = LanguageSlice::new(alphabet.clone(), n, derivable_words(pg.positive(), n, n));
            let q = LanguageSlice::new(alphabet.clone(), n, derivable_words(pg.negative(), n, n));
            decided.first_disagreement(&p.difference(&q))
        }
        Claim::P1 => {
            let co_regular = automata::complement(&automata::compile_regular(pg.positive())?);
            let cnf = cfg::to_cnf(pg.negative())?;
            let union = slice(alphabet, n, |w| {
                Ok(Verdict::from_bool(
                    automata::dfa_member(&co_regular, w)? || cfg::cyk_member(&cnf, w)?,
                ))
            })?;
            union
                .complement()?
                .first_disagreement(&member_slice(pg, n)?)
        }
    };
    Ok(InstanceOutcome::from_witness(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::grammar_from_text;

    fn alphabet(s: &str) -> BTreeSet<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn enumeration_order_and_count() {
        let words = enumerate_words(&alphabet("a"), 2).unwrap();
        assert_eq!(
            words,
            vec![Word::empty(), Word::from_chars("a"), Word::from_chars("aa")]
        );
        let words = enumerate_words(&alphabet("a b"), 1).unwrap();
        assert_eq!(
            words,
            vec![Word::empty(), Word::from_chars("a"), Word::from_chars("b")]
        );
        assert_eq!(enumerate_words(&alphabet("a b"), 3).unwrap().len(), 15);
        assert!(matches!(
            enumerate_words(&BTreeSet::new(), 1),
            Err(Error::EmptyAlphabet)
        ));
        assert_eq!(
            enumerate_words(&BTreeSet::new(), 0).unwrap(),
            vec![Word::empty()]
        );
    }

    #[test]
    fn slices_of_small_languages() {
        let a_star = grammar_from_text("a b", "S", "S -> a S | eps");
        let s = grammar_slice(&a_star, 2).unwrap();
        let expect: BTreeSet<Word> = ["", "a", "aa"].into_iter().map(Word::from_chars).collect();
        assert_eq!(s.words, expect);
        let anbn = grammar_from_text("a b", "S", "S -> a S b | eps");
        let s = grammar_slice(&anbn, 4).unwrap();
        let expect: BTreeSet<Word> = ["", "ab", "aabb"]
            .into_iter()
            .map(Word::from_chars)
            .collect();
        assert_eq!(s.words, expect);
    }

    #[test]
    fn unknown_is_an_error_naming_the_word() {
        let err = slice(&alphabet("a b"), 2, |w| {
            Ok(if w.len() == 1 {
                Verdict::Unknown
            } else {
                Verdict::NotIn
            })
        })
        .unwrap_err();
        assert!(matches!(err, Error::Indefinite(w) if w == Word::from_chars("a")));
    }

    #[test]
    fn derivable_words_of_anbn() {
        let anbn = grammar_from_text("a b", "S", "S -> a S b | a b");
        let words = derivable_words(&anbn, 6, 6);
        let expect: BTreeSet<Word> = ["ab", "aabb", "aaabbb"]
            .into_iter()
            .map(Word::from_chars)
            .collect();
        assert_eq!(words, expect);
    }

    #[test]
    fn complement_identities() {
        let a_star = grammar_from_text("a", "S", "S -> a S | eps");
        let even = grammar_from_text("a", "S", "S -> a A | eps\nA -> a S");
        assert!(check_lemma_identities(&a_star, &even, 6).unwrap());
        let nothing = Grammar::empty(alphabet("a"));
        assert!(check_lemma_identities(&a_star, &nothing, 6).unwrap());
        let erasing = grammar_from_text("a", "S", "S -> a S X | eps\na X -> a");
        assert!(matches!(
            check_lemma_identities(&erasing, &a_star, 2),
            Err(Error::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn claims_parse_and_report() {
        assert_eq!("t9".parse::<Claim>().unwrap(), Claim::T9);
        assert!(matches!(
            "T7".parse::<Claim>(),
            Err(Error::UnsupportedClaim(_))
        ));
        let a_star = grammar_from_text("a", "S", "S -> a S | eps");
        let even = grammar_from_text("a", "S", "S -> a A | eps\nA -> a S");
        let pg = ProhibitionGrammar::new(a_star, even).unwrap();
        let report = verify_relation(Claim::T2, std::slice::from_ref(&pg), 8).unwrap();
        assert!(report.is_consistent());
        assert_eq!(
            report.to_string(),
            "claim: T2\ndepth: 8\ninstances: 1\ninstance 1: consistent\noutcome: consistent\n"
        );
        assert!(matches!(
            verify_relation(Claim::T9, &[pg], 8),
            Err(Error::SignatureMismatch { .. })
        ));
    }
}
