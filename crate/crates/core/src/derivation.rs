//! Membership by searching sentential forms.
//!
//! Context-sensitive (noncontracting) grammars get an exact decision: every
//! form on the way to `w` is at most `|w|` long, so the search space is
//! finite. Unrestricted grammars get a budgeted semi-decision that answers
//! `In`, `NotIn` (only when the reachable forms were exhausted without
//! hitting a cap) or `Unknown`.
//!
//! Forms are expanded in order of (longest form on the path, path length,
//! form). That order does not depend on the caps, so the forms expanded
//! under a smaller budget are a prefix of those expanded under a larger one
//! and definitive verdicts never change when the budget grows.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::grammar::{ChomskyClass, Grammar, Production, Symbol, Word, EPSILON};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("grammar is {0}, not context-sensitive")]
    NotContextSensitive(ChomskyClass),
    #[error("symbol {0} is not in the alphabet")]
    SymbolNotInAlphabet(String),
    #[error("budget caps must be positive")]
    InvalidBudget,
}

/// Caps for the unrestricted search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    max_steps: usize,
    max_form_length: usize,
}

impl Budget {
    pub const DEFAULT_STEPS: usize = 10_000;

    pub fn new(max_steps: usize, max_form_length: usize) -> Result<Self, DerivationError> {
        if max_steps == 0 || max_form_length == 0 {
            return Err(DerivationError::InvalidBudget);
        }
        Ok(Budget {
            max_steps,
            max_form_length,
        })
    }

    /// 10000 expansions, forms up to `2|w| + 4` symbols.
    pub fn for_word(w: &Word) -> Self {
        Budget {
            max_steps: Self::DEFAULT_STEPS,
            max_form_length: 2 * w.len() + 4,
        }
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn max_form_length(&self) -> usize {
        self.max_form_length
    }

    /// Both caps doubled.
    pub fn doubled(&self) -> Self {
        Budget {
            max_steps: self.max_steps.saturating_mul(2),
            max_form_length: self.max_form_length.saturating_mul(2),
        }
    }

    /// Componentwise `<=`.
    pub fn within(&self, other: &Budget) -> bool {
        self.max_steps <= other.max_steps && self.max_form_length <= other.max_form_length
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    In,
    NotIn,
    Unknown,
}

impl Verdict {
    pub fn is_definitive(self) -> bool {
        self != Verdict::Unknown
    }

    pub fn from_bool(member: bool) -> Self {
        if member {
            Verdict::In
        } else {
            Verdict::NotIn
        }
    }

    /// CLI exit code: 0, 1, 2.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::In => 0,
            Verdict::NotIn => 1,
            Verdict::Unknown => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::In => "in",
            Verdict::NotIn => "not-in",
            Verdict::Unknown => "unknown",
        })
    }
}

/// A derivation from the start symbol, one sentential form per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    forms: Vec<Vec<Symbol>>,
}

impl Derivation {
    pub fn forms(&self) -> &[Vec<Symbol>] {
        &self.forms
    }

    pub fn steps(&self) -> usize {
        self.forms.len().saturating_sub(1)
    }

    /// The final form read as a word, if it is all terminals.
    pub fn yield_word(&self) -> Option<Word> {
        let last = self.forms.last()?;
        last.iter()
            .map(|s| match s {
                Symbol::Terminal(t) => Some(t.clone()),
                Symbol::Nonterminal(_) => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Word::new)
    }

    /// Checks that the trace starts at `g`'s start symbol and that each form
    /// follows from the previous one by a single production application.
    pub fn replays_in(&self, g: &Grammar) -> bool {
        match self.forms.first() {
            Some(first) if *first == [Symbol::nt(g.start.clone())] => {}
            _ => return false,
        }
        self.forms.windows(2).all(|pair| {
            g.productions
                .iter()
                .any(|p| one_step(p, &pair[0], &pair[1]))
        })
    }
}

fn one_step(p: &Production, from: &[Symbol], to: &[Symbol]) -> bool {
    if from.len() + p.rhs.len() != to.len() + p.lhs.len() || from.len() < p.lhs.len() {
        return false;
    }
    (0..=from.len() - p.lhs.len()).any(|i| {
        from[i..i + p.lhs.len()] == p.lhs[..]
            && to[..i] == from[..i]
            && to[i..i + p.rhs.len()] == p.rhs[..]
            && to[i + p.rhs.len()..] == from[i + p.lhs.len()..]
    })
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for form in &self.forms {
            if form.is_empty() {
                writeln!(f, "{EPSILON}")?;
            } else {
                let names: Vec<&str> = form.iter().map(Symbol::name).collect();
                writeln!(f, "{}", names.join(" "))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Forms expanded.
    pub expansions: usize,
    /// Every reachable form that could still derive the target was expanded.
    pub saturated: bool,
    /// Some form was discarded for exceeding the length cap.
    pub capped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    /// Present exactly when the verdict is `In`.
    pub evidence: Option<Derivation>,
    pub stats: SearchStats,
}

type Form = Vec<u32>;

/// (bottleneck length, depth, form, parent node).
type Pending = (usize, usize, Form, Option<usize>);

/// Grammar compiled to integer symbols for the search.
struct Engine<'g> {
    grammar: &'g Grammar,
    symbols: Vec<Symbol>,
    rules: Vec<(Form, Form)>,
    /// Terminals that occur in no left-hand side; once produced they stay.
    fixed: Vec<bool>,
    /// Terminals that occur in no right-hand side; they are never created.
    unproducible: Vec<bool>,
    terminal: Vec<bool>,
}

impl<'g> Engine<'g> {
    fn new(g: &'g Grammar) -> Self {
        let mut symbols: Vec<Symbol> = g.alphabet.iter().map(|t| Symbol::t(t.clone())).collect();
        symbols.extend(g.nonterminals.iter().map(|n| Symbol::nt(n.clone())));
        let index: HashMap<&Symbol, u32> = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        let encode = |xs: &[Symbol]| xs.iter().map(|s| index[s]).collect::<Form>();
        let rules: Vec<(Form, Form)> = g
            .productions
            .iter()
            .map(|p| (encode(&p.lhs), encode(&p.rhs)))
            .collect();
        let terminal: Vec<bool> = symbols.iter().map(Symbol::is_terminal).collect();
        let mut fixed = terminal.clone();
        for (lhs, _) in &rules {
            for &s in lhs {
                fixed[s as usize] = false;
            }
        }
        let mut unproducible = terminal.clone();
        for (_, rhs) in &rules {
            for &s in rhs {
                unproducible[s as usize] = false;
            }
        }
        Engine {
            grammar: g,
            symbols,
            rules,
            fixed,
            unproducible,
            terminal,
        }
    }

    fn encode_word(&self, w: &Word) -> Result<Form, DerivationError> {
        let alphabet = &self.grammar.alphabet;
        w.tokens()
            .iter()
            .map(|t| {
                alphabet
                    .iter()
                    .position(|a| a == t)
                    .map(|i| i as u32)
                    .ok_or_else(|| DerivationError::SymbolNotInAlphabet(t.clone()))
            })
            .collect()
    }

    fn start_form(&self) -> Form {
        let i = self
            .symbols
            .iter()
            .position(|s| *s == Symbol::nt(self.grammar.start.clone()))
            .expect("start is declared");
        vec![i as u32]
    }

    /// A form is dead when it provably cannot derive `target`: it is all
    /// terminals but different, it lacks copies of a terminal that nothing
    /// produces, or its fixed terminals contradict `target`.
    fn dead(&self, form: &[u32], target: &[u32]) -> bool {
        if form.iter().all(|&s| self.terminal[s as usize]) {
            return form != target;
        }
        let short = target.iter().any(|&t| {
            self.unproducible[t as usize]
                && form.iter().filter(|&&s| s == t).count()
                    < target.iter().filter(|&&s| s == t).count()
        });
        if short {
            return true;
        }
        let fixed: Vec<u32> = form
            .iter()
            .copied()
            .filter(|&s| self.fixed[s as usize])
            .collect();
        if fixed.len() > target.len() {
            return true;
        }
        let prefix = form.iter().take_while(|&&s| self.fixed[s as usize]).count();
        if form[..prefix] != target[..prefix] {
            return true;
        }
        let suffix = form
            .iter()
            .rev()
            .take_while(|&&s| self.fixed[s as usize])
            .count();
        if form[form.len() - suffix..] != target[target.len() - suffix..] {
            return true;
        }
        // Fixed terminals keep their relative order.
        let mut rest = target.iter();
        !fixed.iter().all(|f| rest.any(|t| t == f))
    }

    fn successors(&self, form: &[u32]) -> Vec<Form> {
        let mut out = Vec::new();
        for (lhs, rhs) in &self.rules {
            if lhs.len() > form.len() {
                continue;
            }
            for i in 0..=form.len() - lhs.len() {
                if form[i..i + lhs.len()] == lhs[..] {
                    let mut next = Vec::with_capacity(form.len() - lhs.len() + rhs.len());
                    next.extend_from_slice(&form[..i]);
                    next.extend_from_slice(rhs);
                    next.extend_from_slice(&form[i + lhs.len()..]);
                    out.push(next);
                }
            }
        }
        out
    }

    fn decode(&self, form: &[u32]) -> Vec<Symbol> {
        form.iter()
            .map(|&s| self.symbols[s as usize].clone())
            .collect()
    }

    fn search(&self, target: &[u32], max_len: usize, max_steps: Option<usize>) -> RawSearch {
        struct Node {
            form: Form,
            parent: Option<usize>,
        }
        let start = self.start_form();
        let mut nodes: Vec<Node> = Vec::new();
        let mut settled: HashMap<Form, usize> = HashMap::new();
        let mut best: HashMap<Form, (usize, usize)> = HashMap::new();
        let mut heap: BinaryHeap<Reverse<Pending>> = BinaryHeap::new();
        let mut stats = SearchStats::default();

        if start.len() > max_len {
            stats.capped = true;
            return RawSearch { trace: None, stats };
        }
        best.insert(start.clone(), (start.len(), 0));
        heap.push(Reverse((start.len(), 0, start, None)));

        while let Some(Reverse((bottleneck, depth, form, parent))) = heap.pop() {
            if settled.contains_key(&form) || best.get(&form) != Some(&(bottleneck, depth)) {
                continue;
            }
            if max_steps.is_some_and(|cap| stats.expansions >= cap) {
                return RawSearch { trace: None, stats };
            }
            stats.expansions += 1;
            let id = nodes.len();
            settled.insert(form.clone(), id);
            nodes.push(Node {
                form: form.clone(),
                parent,
            });

            for next in self.successors(&form) {
                if next.len() > max_len {
                    stats.capped = true;
                    continue;
                }
                if next == target {
                    let mut chain = vec![next];
                    let mut cur = Some(id);
                    while let Some(i) = cur {
                        chain.push(nodes[i].form.clone());
                        cur = nodes[i].parent;
                    }
                    chain.reverse();
                    return RawSearch {
                        trace: Some(chain),
                        stats,
                    };
                }
                if self.dead(&next, target) || settled.contains_key(&next) {
                    continue;
                }
                let label = (bottleneck.max(next.len()), depth + 1);
                if best.get(&next).is_some_and(|&old| old <= label) {
                    continue;
                }
                best.insert(next.clone(), label);
                heap.push(Reverse((label.0, label.1, next, Some(id))));
            }
        }
        stats.saturated = true;
        RawSearch { trace: None, stats }
    }

    fn outcome(&self, raw: RawSearch, verdict_without_trace: Verdict) -> SearchOutcome {
        match raw.trace {
            Some(chain) => SearchOutcome {
                verdict: Verdict::In,
                evidence: Some(Derivation {
                    forms: chain.iter().map(|f| self.decode(f)).collect(),
                }),
                stats: raw.stats,
            },
            None => SearchOutcome {
                verdict: verdict_without_trace,
                evidence: None,
                stats: raw.stats,
            },
        }
    }
}

struct RawSearch {
    trace: Option<Vec<Form>>,
    stats: SearchStats,
}

/// Budgeted membership for any grammar.
///
/// `NotIn` is returned only when the search ran out of forms without ever
/// discarding one for length and without exhausting the step cap.
pub fn t0_member(g: &Grammar, w: &Word, budget: &Budget) -> Result<SearchOutcome, DerivationError> {
    let engine = Engine::new(g);
    let target = engine.encode_word(w)?;
    let raw = engine.search(&target, budget.max_form_length, Some(budget.max_steps));
    let fallback = if raw.stats.saturated && !raw.stats.capped {
        Verdict::NotIn
    } else {
        Verdict::Unknown
    };
    Ok(engine.outcome(raw, fallback))
}

/// Exact membership for a noncontracting grammar, with the derivation when
/// `w` is a member.
pub fn cs_search(g: &Grammar, w: &Word) -> Result<SearchOutcome, DerivationError> {
    let class = g.classify();
    if class != ChomskyClass::Type1 && !(class.is_context_free() && g.is_noncontracting()) {
        return Err(DerivationError::NotContextSensitive(class));
    }
    let engine = Engine::new(g);
    let target = engine.encode_word(w)?;
    if target.is_empty() {
        let member = g.has_start_epsilon();
        let evidence = member.then(|| Derivation {
            forms: vec![vec![Symbol::nt(g.start.clone())], vec![]],
        });
        return Ok(SearchOutcome {
            verdict: Verdict::from_bool(member),
            evidence,
            stats: SearchStats {
                saturated: true,
                ..SearchStats::default()
            },
        });
    }
    // Noncontracting: a form longer than |w| never shrinks back, so the
    // length cap loses nothing and exhaustion is a proof of non-membership.
    let raw = engine.search(&target, target.len(), None);
    Ok(engine.outcome(raw, Verdict::NotIn))
}

pub fn cs_member(g: &Grammar, w: &Word) -> Result<bool, DerivationError> {
    Ok(cs_search(g, w)?.verdict == Verdict::In)
}
