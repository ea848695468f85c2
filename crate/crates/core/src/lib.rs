//! Grammars with prohibition.
//!
//! A [`ProhibitionGrammar`] pairs a positive grammar with a negative one over
//! the same alphabet and generates `L(positive) \ L(negative)`. Components are
//! classified into the Chomsky hierarchy and each is decided by the strongest
//! procedure its class allows; Type0 components get a step and form-length
//! budget and may answer [`Verdict::Unknown`].
//!
//! ```
//! use prohibit_core::{member, parse_grammar_file, Budget, Verdict, Word};
//!
//! let pg = parse_grammar_file(
//!     "%alphabet a b\n\
//!      %positive\n%start S\nS -> a S b | eps\n\
//!      %negative\n%start T\nT -> a U\nU -> b\n",
//! )
//! .unwrap();
//! let w = Word::from_chars("aabb");
//! assert_eq!(member(&pg, &w, &Budget::for_word(&w)).unwrap().verdict, Verdict::In);
//! ```

pub mod automata;
pub mod cfg;
pub mod corpus;
pub mod derivation;
pub mod grammar;
pub mod oracle;
pub mod prohibition;
pub mod random;
pub mod relations;
pub mod text;

pub use automata::{
    compile_regular, complement, determinize, dfa_member, dfa_to_regular_grammar, difference,
    equivalent, intersect, minimize, regular_to_nfa, AutomataError, Dfa, Equivalence, Nfa,
};
pub use cfg::{
    cfg_intersect_dfa, cfg_is_empty, construct_cf_minus_regular, cyk_member, to_cnf, CfgError,
    CnfGrammar,
};
pub use derivation::{
    cs_member, cs_search, t0_member, Budget, Derivation, DerivationError, SearchOutcome,
    SearchStats, Verdict,
};
pub use grammar::{
    ChomskyClass, Grammar, GrammarError, Production, ProhibitionGrammar, Symbol, Word, EPSILON,
};
pub use oracle::{
    check_lemma_identities, enumerate_words, slice, verify_relation, Claim, InstanceOutcome,
    LanguageSlice, RelationReport,
};
pub use prohibition::{
    combine, construct_difference, decidability_status, member, pair_class, ComponentDecider,
    ComponentOutcome, DecidabilityStatus, MemberReport, PairClass, ProhibitionDecider,
};
pub use relations::{relation_matrix, LanguageClass, Relation, RelationMatrix};
pub use text::{parse_grammar_file, to_file_text, ParseError, ParseErrorKind};

/// Errors surfaced by the high-level operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Cfg(#[from] CfgError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error("symbol {0} is not in the alphabet")]
    NotInAlphabet(String),
    #[error("membership of {0} is unknown within the budget")]
    Indefinite(Word),
    #[error("cannot enumerate words over an empty alphabet")]
    EmptyAlphabet,
    #[error("unsupported claim {0}")]
    UnsupportedClaim(String),
    #[error("claim {claim} expects {expected}, got {found}")]
    SignatureMismatch {
        claim: String,
        expected: String,
        found: String,
    },
    #[error("no relation is printed for ({0}, {1})")]
    UnknownPair(String, String),
    #[error("no construction for pair {0}")]
    UnsupportedPair(PairClass),
}
