//! Named grammars with known languages, and the bundled demo files.

use std::collections::BTreeSet;

use crate::grammar::{Grammar, Production, ProhibitionGrammar, Symbol, EPSILON};
use crate::oracle::Claim;
use crate::text::parse_grammar_file;

pub const IRREGULAR_VERBS: &str = include_str!("../../../demos/irregular_verbs.pg");
pub const ANBNCN_WITNESS: &str = include_str!("../../../demos/anbncn_witness.pg");
pub const ANBN_MINUS_AB: &str = include_str!("../../../demos/anbn_minus_ab.pg");
pub const REG_PAIR: &str = include_str!("../../../demos/reg_pair.pg");

/// A corpus grammar and a reference membership predicate for its language.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub grammar: Grammar,
    pub reference: fn(&str) -> bool,
}

fn count(w: &str, c: char) -> usize {
    w.chars().filter(|x| *x == c).count()
}

fn is_anbn(w: &str) -> bool {
    let n = count(w, 'a');
    w.len() == 2 * n && w.chars().take(n).all(|c| c == 'a') && w.chars().skip(n).all(|c| c == 'b')
}

fn is_dyck(w: &str) -> bool {
    let mut depth = 0i64;
    for c in w.chars() {
        depth += if c == 'a' { 1 } else { -1 };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

fn is_anbncn(w: &str) -> bool {
    let n = count(w, 'a');
    n > 0 && w == "a".repeat(n) + &"b".repeat(n) + &"c".repeat(n)
}

/// Parses a single grammar from `%alphabet`/`%start`/production lines.
pub fn grammar_from_text(alphabet: &str, start: &str, body: &str) -> Grammar {
    let text = format!("%alphabet {alphabet}\n%positive\n%start {start}\n{body}\n");
    parse_grammar_file(&text)
        .unwrap_or_else(|e| panic!("corpus grammar does not parse: {e}"))
        .positive()
        .clone()
}

fn entry(
    name: &'static str,
    alphabet: &str,
    body: &str,
    reference: fn(&str) -> bool,
) -> CorpusEntry {
    CorpusEntry {
        name,
        grammar: grammar_from_text(alphabet, "S", body),
        reference,
    }
}

/// Corpus over `{a, b}`, ordered Type3, Type2, Type1, Type0.
pub fn binary_corpus() -> Vec<CorpusEntry> {
    vec![
        entry("a_star", "a b", "S -> a S | eps", |w| {
            w.chars().all(|c| c == 'a')
        }),
        entry("a_plus", "a b", "S -> a S | a", |w| {
            !w.is_empty() && w.chars().all(|c| c == 'a')
        }),
        entry("even_a", "a b", "S -> a A | eps\nA -> a S", |w| {
            w.len() % 2 == 0 && w.chars().all(|c| c == 'a')
        }),
        entry("ab_only", "a b", "S -> a A\nA -> b", |w| w == "ab"),
        entry(
            "odd_length",
            "a b",
            "S -> a E | b E\nE -> a S | b S | eps",
            |w| w.len() % 2 == 1,
        ),
        entry("ends_with_b", "a b", "S -> a S | b S | b", |w| {
            w.ends_with('b')
        }),
        entry("anbn", "a b", "S -> a S b | eps", is_anbn),
        entry("dyck", "a b", "S -> a S b S | eps", is_dyck),
        entry(
            "palindromes",
            "a b",
            "S -> a S a | b S b | a | b | eps",
            |w| w.chars().eq(w.chars().rev()),
        ),
        entry("equal_ab", "a b", "S -> a S b S | b S a S | eps", |w| {
            count(w, 'a') == count(w, 'b')
        }),
        entry(
            "equal_ab_perm",
            "a b",
            "S -> A B | A B S\nA B -> B A\nB A -> A B\nA -> a\nB -> b",
            |w| !w.is_empty() && count(w, 'a') == count(w, 'b'),
        ),
        entry("a_star_erasing", "a b", "S -> a S X | eps\na X -> a", |w| {
            w.chars().all(|c| c == 'a')
        }),
    ]
}

/// `{a^n b^n c^n : n >= 1}` by a noncontracting grammar.
pub fn anbncn() -> CorpusEntry {
    entry(
        "anbncn",
        "a b c",
        "S -> a S B C | a B C\nC B -> C Z\nC Z -> W Z\nW Z -> W C\nW C -> B C\n\
         a B -> a b\nb B -> b b\nb C -> b c\nc C -> c c",
        is_anbncn,
    )
}

/// Every corpus grammar.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut all = binary_corpus();
    all.push(anbncn());
    all
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// Same language, but classified Type0: adds an unreachable `Z Z -> eps`
/// with a fresh nonterminal `Z`.
pub fn wrap_type0(g: &Grammar) -> Grammar {
    let fresh = fresh_nonterminal(g, "Z");
    let mut nonterminals = g.nonterminals.clone();
    nonterminals.insert(fresh.clone());
    let mut productions = g.productions.clone();
    productions.push(Production::new(
        vec![Symbol::nt(fresh.clone()), Symbol::nt(fresh)],
        vec![],
    ));
    Grammar::new(
        g.alphabet.clone(),
        nonterminals,
        g.start.clone(),
        productions,
    )
    .expect("wrapping keeps the grammar valid")
}

fn fresh_nonterminal(g: &Grammar, base: &str) -> String {
    let mut fresh = base.to_string();
    while g.nonterminals.contains(&fresh) {
        fresh.push_str(base);
    }
    fresh
}

/// Same language, but classified Type1 when `g` is noncontracting: adds an
/// unreachable `Y Y -> Y t` with a fresh `Y` and some terminal `t`.
pub fn wrap_type1(g: &Grammar) -> Grammar {
    let fresh = fresh_nonterminal(g, "Y");
    let t = g.alphabet.iter().next().expect("nonempty alphabet").clone();
    let mut nonterminals = g.nonterminals.clone();
    nonterminals.insert(fresh.clone());
    let mut productions = g.productions.clone();
    productions.push(Production::new(
        vec![Symbol::nt(fresh.clone()), Symbol::nt(fresh.clone())],
        vec![Symbol::nt(fresh), Symbol::t(t)],
    ));
    Grammar::new(
        g.alphabet.clone(),
        nonterminals,
        g.start.clone(),
        productions,
    )
    .expect("wrapping keeps the grammar valid")
}

fn named(name: &str) -> Grammar {
    by_name(name)
        .unwrap_or_else(|| panic!("no corpus grammar {name}"))
        .grammar
}

fn pair(positive: Grammar, negative: Grammar) -> ProhibitionGrammar {
    ProhibitionGrammar::new(positive, negative).expect("corpus pairs share an alphabet")
}

fn demo(text: &str) -> ProhibitionGrammar {
    parse_grammar_file(text).expect("bundled demo parses")
}

/// Corpus instances matching the class signature of `claim`.
pub fn claim_instances(claim: Claim) -> Vec<ProhibitionGrammar> {
    match claim {
        Claim::T1 => corpus()
            .into_iter()
            .map(|e| {
                let empty = Grammar::empty(e.grammar.alphabet.clone());
                pair(e.grammar, empty)
            })
            .collect(),
        Claim::T2 => vec![
            pair(named("a_star"), named("even_a")),
            pair(named("odd_length"), named("ends_with_b")),
            pair(named("ends_with_b"), named("a_plus")),
            pair(named("a_plus"), named("ab_only")),
            demo(REG_PAIR),
        ],
        Claim::T8 => {
            let abc = grammar_from_text("a b c", "S", "S -> a B C\nB -> b\nC -> c");
            vec![
                pair(named("equal_ab_perm"), wrap_type1(&named("ab_only"))),
                pair(wrap_type1(&named("a_plus")), named("equal_ab_perm")),
                pair(
                    wrap_type1(&named("ends_with_b")),
                    wrap_type1(&named("a_plus")),
                ),
                pair(named("anbncn"), wrap_type1(&abc)),
            ]
        }
        Claim::T9 => vec![
            pair(named("anbn"), named("ab_only")),
            pair(named("dyck"), named("ends_with_b")),
            pair(named("palindromes"), named("odd_length")),
            pair(named("equal_ab"), named("a_star")),
            demo(ANBN_MINUS_AB),
        ],
        Claim::P1 => vec![
            pair(named("a_star"), named("anbn")),
            pair(named("ends_with_b"), named("dyck")),
            pair(named("odd_length"), named("palindromes")),
            pair(named("a_plus"), named("equal_ab")),
            demo(ANBNCN_WITNESS),
        ],
    }
}

/// Pairs `(gD, gE)` with `gD` decidable and `gE` Type0 but with definitive
/// slices, for the complement identities.
pub fn identity_pairs() -> Vec<(Grammar, Grammar)> {
    let w = |name: &str| wrap_type0(&named(name));
    vec![
        (named("a_star"), w("anbn")),
        (named("ends_with_b"), w("palindromes")),
        (named("odd_length"), w("dyck")),
        (named("even_a"), w("a_star")),
        (named("anbn"), w("ab_only")),
        (named("dyck"), w("anbn")),
        (named("palindromes"), w("equal_ab")),
        (named("equal_ab"), w("odd_length")),
        (named("equal_ab_perm"), w("a_plus")),
        (named("a_plus"), named("a_star_erasing")),
    ]
}

/// Grammar of `alphabet*`.
pub fn universal_grammar(alphabet: &BTreeSet<String>) -> Grammar {
    let body: Vec<String> = alphabet.iter().map(|t| format!("{t} S")).collect();
    let body = format!("S -> {} | {EPSILON}", body.join(" | "));
    let names: Vec<&str> = alphabet.iter().map(String::as_str).collect();
    grammar_from_text(&names.join(" "), "S", &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::ChomskyClass::*;

    #[test]
    fn classes() {
        let class = |n: &str| by_name(n).unwrap().grammar.classify();
        assert_eq!(class("a_star"), Type3);
        assert_eq!(class("odd_length"), Type3);
        assert_eq!(class("anbn"), Type2);
        assert_eq!(class("palindromes"), Type2);
        assert_eq!(class("equal_ab_perm"), Type1);
        assert_eq!(class("anbncn"), Type1);
        assert_eq!(class("a_star_erasing"), Type0);
        assert_eq!(wrap_type0(&named("anbn")).classify(), Type0);
        assert_eq!(wrap_type1(&named("ab_only")).classify(), Type1);
    }

    #[test]
    fn instances_match_signatures() {
        for claim in Claim::ALL {
            let instances = claim_instances(claim);
            assert!(!instances.is_empty());
            crate::oracle::verify_relation(claim, &instances, 0).unwrap();
        }
    }

    #[test]
    fn demos_parse() {
        for text in [IRREGULAR_VERBS, ANBNCN_WITNESS, ANBN_MINUS_AB, REG_PAIR] {
            parse_grammar_file(text).unwrap();
        }
    }

    #[test]
    fn reference_predicates() {
        assert!(is_anbn("") && is_anbn("aabb") && !is_anbn("abab"));
        assert!(is_dyck("aabbab") && !is_dyck("ba"));
        assert!(is_anbncn("abc") && !is_anbncn("") && !is_anbncn("aabbc"));
    }
}
