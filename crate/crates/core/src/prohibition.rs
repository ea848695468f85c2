//! Membership in `L(positive) \ L(negative)`.
//!
//! Each component goes to the strongest decider its class allows: a DFA for
//! Type3, CYK for Type2, the exact noncontracting search for Type1 and the
//! budgeted search for Type0. The two component verdicts are then combined
//! by [`combine`].

use std::fmt;

use crate::automata::{self, Dfa};
use crate::cfg::{self, CnfGrammar};
use crate::derivation::{self, Budget, Derivation, SearchStats, Verdict};
use crate::grammar::{ChomskyClass, Grammar, ProhibitionGrammar, Word};
use crate::Error;

/// Classes of the positive and negative components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairClass {
    pub positive: ChomskyClass,
    pub negative: ChomskyClass,
}

impl PairClass {
    pub fn new(positive: ChomskyClass, negative: ChomskyClass) -> Self {
        PairClass { positive, negative }
    }

    /// All sixteen pairs in row-major order `00, 01, ..., 33`.
    pub fn all() -> impl Iterator<Item = PairClass> {
        ChomskyClass::ALL.into_iter().flat_map(|p| {
            ChomskyClass::ALL
                .into_iter()
                .map(move |n| PairClass::new(p, n))
        })
    }

    /// Two-digit code, e.g. `"23"`.
    pub fn code(&self) -> String {
        format!("{}{}", self.positive.level(), self.negative.level())
    }

    pub fn from_code(code: &str) -> Option<Self> {
        let digits: Vec<u8> = code
            .chars()
            .map(|c| c.to_digit(10).and_then(|d| u8::try_from(d).ok()))
            .collect::<Option<_>>()?;
        match digits.as_slice() {
            [i, j] => Some(PairClass::new(
                ChomskyClass::from_level(*i)?,
                ChomskyClass::from_level(*j)?,
            )),
            _ => None,
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.positive.level(), self.negative.level())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecidabilityStatus {
    Decidable,
    SemiDecidable,
    CoSemiDecidable,
    NeitherInGeneral,
}

impl fmt::Display for DecidabilityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecidabilityStatus::Decidable => "decidable",
            DecidabilityStatus::SemiDecidable => "semi-decidable",
            DecidabilityStatus::CoSemiDecidable => "co-semi-decidable",
            DecidabilityStatus::NeitherInGeneral => "neither-in-general",
        })
    }
}

pub fn pair_class(pg: &ProhibitionGrammar) -> PairClass {
    PairClass::new(pg.positive().classify(), pg.negative().classify())
}

/// Membership status of the language class `L(G_ij)`: an enumerable minus
/// a decidable language is enumerable, a decidable minus an enumerable one
/// is co-enumerable.
pub fn decidability_status(pc: PairClass) -> DecidabilityStatus {
    match (pc.positive.is_decidable(), pc.negative.is_decidable()) {
        (true, true) => DecidabilityStatus::Decidable,
        (false, true) => DecidabilityStatus::SemiDecidable,
        (true, false) => DecidabilityStatus::CoSemiDecidable,
        (false, false) => DecidabilityStatus::NeitherInGeneral,
    }
}

/// Combines the positive verdict `p` with the negative verdict `q`.
///
/// A definite `q = In` excludes the word even when `p` is unknown.
pub fn combine(p: Verdict, q: Verdict) -> Verdict {
    match (p, q) {
        (Verdict::NotIn, _) | (_, Verdict::In) => Verdict::NotIn,
        (Verdict::In, Verdict::NotIn) => Verdict::In,
        _ => Verdict::Unknown,
    }
}

/// A compiled membership test for one grammar.
#[derive(Debug, Clone)]
pub enum ComponentDecider {
    Regular(Dfa),
    ContextFree(CnfGrammar),
    ContextSensitive(Grammar),
    Unrestricted(Grammar),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentOutcome {
    pub class: ChomskyClass,
    pub verdict: Verdict,
    /// Derivation of the word, from the search-based deciders.
    pub evidence: Option<Derivation>,
    /// Present for search-based deciders.
    pub search: Option<SearchStats>,
}

impl ComponentDecider {
    pub fn compile(g: &Grammar) -> Result<Self, Error> {
        Ok(match g.classify() {
            ChomskyClass::Type3 => ComponentDecider::Regular(automata::compile_regular(g)?),
            ChomskyClass::Type2 => ComponentDecider::ContextFree(cfg::to_cnf(g)?),
            ChomskyClass::Type1 => ComponentDecider::ContextSensitive(g.clone()),
            ChomskyClass::Type0 => ComponentDecider::Unrestricted(g.clone()),
        })
    }

    pub fn class(&self) -> ChomskyClass {
        match self {
            ComponentDecider::Regular(_) => ChomskyClass::Type3,
            ComponentDecider::ContextFree(_) => ChomskyClass::Type2,
            ComponentDecider::ContextSensitive(_) => ChomskyClass::Type1,
            ComponentDecider::Unrestricted(_) => ChomskyClass::Type0,
        }
    }

    /// The budget only matters for Type0 components.
    pub fn decide(&self, w: &Word, budget: &Budget) -> Result<ComponentOutcome, Error> {
        let class = self.class();
        let plain = |member: bool| ComponentOutcome {
            class,
            verdict: Verdict::from_bool(member),
            evidence: None,
            search: None,
        };
        Ok(match self {
            ComponentDecider::Regular(d) => plain(automata::dfa_member(d, w)?),
            ComponentDecider::ContextFree(c) => plain(cfg::cyk_member(c, w)?),
            ComponentDecider::ContextSensitive(g) => {
                let out = derivation::cs_search(g, w)?;
                ComponentOutcome {
                    class,
                    verdict: out.verdict,
                    evidence: out.evidence,
                    search: Some(out.stats),
                }
            }
            ComponentDecider::Unrestricted(g) => {
                let out = derivation::t0_member(g, w, budget)?;
                ComponentOutcome {
                    class,
                    verdict: out.verdict,
                    evidence: out.evidence,
                    search: Some(out.stats),
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberReport {
    pub verdict: Verdict,
    pub positive: ComponentOutcome,
    pub negative: ComponentOutcome,
}

/// Both components compiled once, for repeated membership queries.
#[derive(Debug, Clone)]
pub struct ProhibitionDecider {
    alphabet: std::collections::BTreeSet<String>,
    positive: ComponentDecider,
    negative: ComponentDecider,
}

impl ProhibitionDecider {
    pub fn new(pg: &ProhibitionGrammar) -> Result<Self, Error> {
        Ok(ProhibitionDecider {
            alphabet: pg.alphabet().clone(),
            positive: ComponentDecider::compile(pg.positive())?,
            negative: ComponentDecider::compile(pg.negative())?,
        })
    }

    pub fn pair_class(&self) -> PairClass {
        PairClass::new(self.positive.class(), self.negative.class())
    }

    pub fn alphabet(&self) -> &std::collections::BTreeSet<String> {
        &self.alphabet
    }

    pub fn positive(&self) -> &ComponentDecider {
        &self.positive
    }

    pub fn negative(&self) -> &ComponentDecider {
        &self.negative
    }

    pub fn member(&self, w: &Word, budget: &Budget) -> Result<MemberReport, Error> {
        if let Some(t) = w.foreign_token(&self.alphabet) {
            return Err(Error::NotInAlphabet(t.to_string()));
        }
        let (positive, negative) = rayon::join(
            || self.positive.decide(w, budget),
            || self.negative.decide(w, budget),
        );
        let (positive, negative) = (positive?, negative?);
        Ok(MemberReport {
            verdict: combine(positive.verdict, negative.verdict),
            positive,
            negative,
        })
    }
}

/// One-shot membership; compiles both components first.
pub fn member(pg: &ProhibitionGrammar, w: &Word, budget: &Budget) -> Result<MemberReport, Error> {
    ProhibitionDecider::new(pg)?.member(w, budget)
}

/// A single grammar for `L(positive) \ L(negative)`.
///
/// `(3,3)` pairs go through the product DFA and come back as a right-linear
/// grammar; `(2,3)` pairs go through the triple construction and stay
/// context-free. Other pairs have no construction.
pub fn construct_difference(pg: &ProhibitionGrammar) -> Result<Grammar, Error> {
    let pc = pair_class(pg);
    match (pc.positive, pc.negative) {
        (ChomskyClass::Type3, ChomskyClass::Type3) => {
            let d = automata::difference(
                &automata::compile_regular(pg.positive())?,
                &automata::compile_regular(pg.negative())?,
            )?;
            Ok(automata::dfa_to_regular_grammar(&automata::minimize(&d)))
        }
        (ChomskyClass::Type2, ChomskyClass::Type3) => Ok(cfg::construct_cf_minus_regular(
            pg.positive(),
            pg.negative(),
        )?),
        _ => Err(Error::UnsupportedPair(pc)),
    }
}
