//! Finite automata for right-linear grammars and the Boolean constructions
//! that turn a regular/regular prohibition pair back into a regular grammar.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::grammar::{ChomskyClass, Grammar, Production, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("grammar is {0}, not right-linear")]
    NotRightLinear(ChomskyClass),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("symbol {0} is not in the alphabet")]
    SymbolNotInAlphabet(String),
    #[error("malformed automaton: {0}")]
    Malformed(String),
}

/// Nondeterministic automaton; `None` labels an ε-move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<String>,
    num_states: usize,
    transitions: Vec<(usize, Option<usize>, usize)>,
    start: usize,
    accepting: BTreeSet<usize>,
}

impl Nfa {
    /// Transition labels are indices into the sorted `alphabet`.
    pub fn new(
        alphabet: BTreeSet<String>,
        num_states: usize,
        transitions: Vec<(usize, Option<usize>, usize)>,
        start: usize,
        accepting: BTreeSet<usize>,
    ) -> Result<Self, AutomataError> {
        let alphabet: Vec<String> = alphabet.into_iter().collect();
        if start >= num_states {
            return Err(AutomataError::Malformed(format!(
                "start state {start} out of range"
            )));
        }
        if let Some(&s) = accepting.iter().find(|&&s| s >= num_states) {
            return Err(AutomataError::Malformed(format!(
                "accepting state {s} out of range"
            )));
        }
        for &(p, a, q) in &transitions {
            if p >= num_states || q >= num_states || a.is_some_and(|a| a >= alphabet.len()) {
                return Err(AutomataError::Malformed(format!(
                    "transition ({p}, {a:?}, {q}) out of range"
                )));
            }
        }
        Ok(Nfa {
            alphabet,
            num_states,
            transitions,
            start,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn accepts(&self, w: &Word) -> Result<bool, AutomataError> {
        let syms = symbol_indices(&self.alphabet, w)?;
        let mut current = self.closure([self.start].into_iter().collect());
        for a in syms {
            let next = self
                .transitions
                .iter()
                .filter(|&&(p, l, _)| l == Some(a) && current.contains(&p))
                .map(|&(_, _, q)| q)
                .collect();
            current = self.closure(next);
        }
        Ok(current.iter().any(|s| self.accepting.contains(s)))
    }

    fn closure(&self, mut set: BTreeSet<usize>) -> BTreeSet<usize> {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &(from, label, to) in &self.transitions {
                if from == p && label.is_none() && set.insert(to) {
                    stack.push(to);
                }
            }
        }
        set
    }
}

/// Complete deterministic automaton. Every state has exactly one successor
/// per alphabet symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    delta: Vec<Vec<usize>>,
    start: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: BTreeSet<String>,
        delta: Vec<Vec<usize>>,
        start: usize,
        accepting: Vec<bool>,
    ) -> Result<Self, AutomataError> {
        let alphabet: Vec<String> = alphabet.into_iter().collect();
        let n = delta.len();
        if n == 0 || start >= n || accepting.len() != n {
            return Err(AutomataError::Malformed("state table inconsistent".into()));
        }
        for (p, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() || row.iter().any(|&q| q >= n) {
                return Err(AutomataError::Malformed(format!("state {p} is not total")));
            }
        }
        Ok(Dfa {
            alphabet,
            delta,
            start,
            accepting,
        })
    }

    /// One rejecting sink state.
    pub fn empty(alphabet: BTreeSet<String>) -> Self {
        let k = alphabet.len();
        Dfa {
            alphabet: alphabet.into_iter().collect(),
            delta: vec![vec![0; k]],
            start: 0,
            accepting: vec![false],
        }
    }

    /// Accepts every word over the alphabet.
    pub fn universal(alphabet: BTreeSet<String>) -> Self {
        complement(&Dfa::empty(alphabet))
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_set(&self) -> BTreeSet<String> {
        self.alphabet.iter().cloned().collect()
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.delta[state][symbol]
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet
            .binary_search_by(|a| a.as_str().cmp(name))
            .ok()
    }

    /// The same automaton viewed as an NFA without ε-moves.
    pub fn to_nfa(&self) -> Nfa {
        let transitions = self
            .delta
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().enumerate().map(move |(a, &q)| (p, Some(a), q)))
            .collect();
        Nfa {
            alphabet: self.alphabet.clone(),
            num_states: self.num_states(),
            transitions,
            start: self.start,
            accepting: (0..self.num_states())
                .filter(|&s| self.accepting[s])
                .collect(),
        }
    }

    /// Text listing: start state, then the accepting states, then one
    /// `state symbol state` line per transition.
    pub fn to_listing(&self) -> String {
        let mut out = format!("{}\n", self.start);
        let acc: Vec<String> = (0..self.num_states())
            .filter(|&s| self.accepting[s])
            .map(|s| s.to_string())
            .collect();
        out.push_str(&acc.join(" "));
        out.push('\n');
        for (p, row) in self.delta.iter().enumerate() {
            for (a, &q) in row.iter().enumerate() {
                let _ = writeln!(out, "{p} {} {q}", self.alphabet[a]);
            }
        }
        out
    }

    /// Reads [`Dfa::to_listing`] output. The alphabet is the set of symbols
    /// that label transitions.
    pub fn from_listing(text: &str) -> Result<Self, AutomataError> {
        let bad = |m: &str| AutomataError::Malformed(m.to_string());
        let mut lines = text.lines();
        let start: usize = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| bad("missing start state"))?;
        let accepting: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing accepting line"))?
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| bad("bad accepting state")))
            .collect::<Result<_, _>>()?;
        let mut edges = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [p, a, q] = parts.as_slice() else {
                return Err(bad("transition lines need three fields"));
            };
            let p: usize = p.parse().map_err(|_| bad("bad state"))?;
            let q: usize = q.parse().map_err(|_| bad("bad state"))?;
            edges.push((p, a.to_string(), q));
        }
        let alphabet: BTreeSet<String> = edges.iter().map(|(_, a, _)| a.clone()).collect();
        let symbols: Vec<&String> = alphabet.iter().collect();
        let n = edges
            .iter()
            .flat_map(|&(p, _, q)| [p, q])
            .chain(accepting.iter().copied())
            .chain([start])
            .max()
            .unwrap_or(0)
            + 1;
        let mut delta = vec![vec![usize::MAX; alphabet.len()]; n];
        for (p, a, q) in edges {
            let i = symbols.binary_search(&&a).expect("symbol collected above");
            delta[p][i] = q;
        }
        if delta.iter().flatten().any(|&q| q == usize::MAX) {
            return Err(bad("listing does not describe a total automaton"));
        }
        let mut acc = vec![false; n];
        for s in accepting {
            acc[s] = true;
        }
        Dfa::new(alphabet, delta, start, acc)
    }
}

fn symbol_indices(alphabet: &[String], w: &Word) -> Result<Vec<usize>, AutomataError> {
    w.tokens()
        .iter()
        .map(|t| {
            alphabet
                .binary_search(t)
                .map_err(|_| AutomataError::SymbolNotInAlphabet(t.clone()))
        })
        .collect()
}

/// Nonterminals become states plus one extra final state. `A -> a B` is an
/// `a`-edge to `B`, `A -> a` an `a`-edge to the final state, and `A -> eps`
/// makes `A` accepting.
pub fn regular_to_nfa(g: &Grammar) -> Result<Nfa, AutomataError> {
    let class = g.classify();
    if class != ChomskyClass::Type3 {
        return Err(AutomataError::NotRightLinear(class));
    }
    let alphabet: Vec<String> = g.alphabet.iter().cloned().collect();
    let states: Vec<&String> = g.nonterminals.iter().collect();
    let state_of = |n: &str| {
        states
            .iter()
            .position(|s| s.as_str() == n)
            .expect("declared")
    };
    let final_state = states.len();
    let sym = |t: &str| {
        alphabet
            .binary_search_by(|a| a.as_str().cmp(t))
            .expect("declared")
    };

    let mut transitions = Vec::new();
    let mut accepting = BTreeSet::from([final_state]);
    for p in &g.productions {
        let from = state_of(p.single_lhs().expect("right-linear"));
        match p.rhs.as_slice() {
            [] => {
                accepting.insert(from);
            }
            [Symbol::Terminal(a)] => transitions.push((from, Some(sym(a)), final_state)),
            [Symbol::Terminal(a), Symbol::Nonterminal(b)] => {
                transitions.push((from, Some(sym(a)), state_of(b)))
            }
            _ => unreachable!("checked by classify"),
        }
    }
    Ok(Nfa {
        alphabet,
        num_states: states.len() + 1,
        transitions,
        start: state_of(&g.start),
        accepting,
    })
}

/// Subset construction. The empty subset becomes an explicit sink when it is
/// reachable, so the result is total.
pub fn determinize(n: &Nfa) -> Dfa {
    let k = n.alphabet.len();
    let mut eps: Vec<Vec<usize>> = vec![Vec::new(); n.num_states];
    let mut moves: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); k]; n.num_states];
    for &(p, a, q) in &n.transitions {
        match a {
            None => eps[p].push(q),
            Some(a) => moves[p][a].push(q),
        }
    }
    let closure = |seed: BTreeSet<usize>| -> Vec<usize> {
        let mut set = seed;
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &q in &eps[p] {
                if set.insert(q) {
                    stack.push(q);
                }
            }
        }
        set.into_iter().collect()
    };

    let start = closure(BTreeSet::from([n.start]));
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(k);
        #[allow(clippy::needless_range_loop)]
        for a in 0..k {
            let seed: BTreeSet<usize> = subsets[i]
                .iter()
                .flat_map(|&p| moves[p][a].iter().copied())
                .collect();
            let target = closure(seed);
            let id = *index.entry(target.clone()).or_insert_with(|| {
                subsets.push(target);
                subsets.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = subsets
        .iter()
        .map(|s| s.iter().any(|q| n.accepting.contains(q)))
        .collect();
    Dfa {
        alphabet: n.alphabet.clone(),
        delta,
        start: 0,
        accepting,
    }
}

/// Right-linear grammar → minimal DFA.
pub fn compile_regular(g: &Grammar) -> Result<Dfa, AutomataError> {
    Ok(minimize(&determinize(&regular_to_nfa(g)?)))
}

pub fn complement(d: &Dfa) -> Dfa {
    Dfa {
        accepting: d.accepting.iter().map(|a| !a).collect(),
        ..d.clone()
    }
}

fn product(a: &Dfa, b: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa, AutomataError> {
    if a.alphabet != b.alphabet {
        return Err(AutomataError::AlphabetMismatch);
    }
    let k = a.alphabet.len();
    let mut index = HashMap::from([((a.start, b.start), 0)]);
    let mut pairs = vec![(a.start, b.start)];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let row = (0..k)
            .map(|s| {
                let next = (a.delta[p][s], b.delta[q][s]);
                *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                })
            })
            .collect();
        delta.push(row);
        i += 1;
    }
    let accepting = pairs
        .iter()
        .map(|&(p, q)| accept(a.accepting[p], b.accepting[q]))
        .collect();
    Ok(Dfa {
        alphabet: a.alphabet.clone(),
        delta,
        start: 0,
        accepting,
    })
}

/// Reachable part of the product automaton.
pub fn intersect(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomataError> {
    product(a, b, |x, y| x && y)
}

/// `intersect(a, complement(b))`.
pub fn difference(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomataError> {
    intersect(a, &complement(b))
}

fn reachable(d: &Dfa) -> Vec<bool> {
    let mut seen = vec![false; d.num_states()];
    let mut queue = VecDeque::from([d.start]);
    seen[d.start] = true;
    while let Some(p) = queue.pop_front() {
        for &q in &d.delta[p] {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Drops unreachable states and merges equivalent ones by partition
/// refinement. States of the result are numbered in breadth-first order from
/// the start state, so language-equal inputs yield identical outputs.
pub fn minimize(d: &Dfa) -> Dfa {
    let live = reachable(d);
    let states: Vec<usize> = (0..d.num_states()).filter(|&s| live[s]).collect();
    let mut class = vec![usize::MAX; d.num_states()];
    for &s in &states {
        class[s] = usize::from(d.accepting[s]);
    }
    let mut count = states
        .iter()
        .map(|&s| class[s])
        .collect::<BTreeSet<_>>()
        .len();
    loop {
        let mut signatures: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = vec![usize::MAX; d.num_states()];
        for &s in &states {
            let sig = (class[s], d.delta[s].iter().map(|&q| class[q]).collect());
            let fresh = signatures.len();
            next[s] = *signatures.entry(sig).or_insert(fresh);
        }
        let refined = signatures.len();
        class = next;
        if refined == count {
            break;
        }
        count = refined;
    }

    // Renumber blocks in BFS order.
    let mut order = HashMap::from([(class[d.start], 0)]);
    let mut reps = vec![d.start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < reps.len() {
        let row = d.delta[reps[i]]
            .iter()
            .map(|&q| {
                *order.entry(class[q]).or_insert_with(|| {
                    reps.push(q);
                    reps.len() - 1
                })
            })
            .collect();
        delta.push(row);
        i += 1;
    }
    Dfa {
        alphabet: d.alphabet.clone(),
        accepting: reps.iter().map(|&r| d.accepting[r]).collect(),
        delta,
        start: 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// A shortest word accepted by exactly one of the automata.
    Differ(Word),
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

type StatePair = (usize, usize);

/// Breadth-first search of the pair graph for a state pair that disagrees on
/// acceptance. The first such pair found yields a shortest counterexample.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<Equivalence, AutomataError> {
    if a.alphabet != b.alphabet {
        return Err(AutomataError::AlphabetMismatch);
    }
    // Pair state -> (predecessor pair, symbol).
    let mut parent: HashMap<StatePair, Option<(StatePair, usize)>> =
        HashMap::from([((a.start, b.start), None)]);
    let mut queue = VecDeque::from([(a.start, b.start)]);
    while let Some((p, q)) = queue.pop_front() {
        if a.accepting[p] != b.accepting[q] {
            let mut tokens = Vec::new();
            let mut cur = (p, q);
            while let Some(Some((prev, sym))) = parent.get(&cur) {
                tokens.push(a.alphabet[*sym].clone());
                cur = *prev;
            }
            tokens.reverse();
            return Ok(Equivalence::Differ(Word::new(tokens)));
        }
        for s in 0..a.alphabet.len() {
            let next = (a.delta[p][s], b.delta[q][s]);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some(((p, q), s)));
                queue.push_back(next);
            }
        }
    }
    Ok(Equivalence::Equal)
}

pub fn dfa_member(d: &Dfa, w: &Word) -> Result<bool, AutomataError> {
    let state = symbol_indices(&d.alphabet, w)?
        .into_iter()
        .fold(d.start, |p, a| d.delta[p][a]);
    Ok(d.accepting[state])
}

/// A right-linear grammar for `L(d)`.
///
/// The start state is `S`, other states are `Q1`, `Q2`, ... in the order they
/// are reached. An edge `p -a-> q` contributes `P -> a` when `q` accepts and
/// `P -> a Q` when a nonempty word leads from `q` to acceptance; an accepting
/// start state contributes `S -> eps`. Dead and unreachable states produce
/// nothing.
pub fn dfa_to_regular_grammar(d: &Dfa) -> Grammar {
    let n = d.num_states();
    let mut productive = d.accepting.clone();
    loop {
        let mut changed = false;
        for p in 0..n {
            if !productive[p] && d.delta[p].iter().any(|&q| productive[q]) {
                productive[p] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let continues = |q: usize| d.delta[q].iter().any(|&r| productive[r]);

    let mut names: HashMap<usize, String> = HashMap::from([(d.start, "S".to_string())]);
    let mut queue = VecDeque::from([d.start]);
    let mut productions = Vec::new();
    if d.accepting[d.start] {
        productions.push(Production::new(vec![Symbol::nt("S")], vec![]));
    }
    while let Some(p) = queue.pop_front() {
        let lhs = vec![Symbol::nt(names[&p].clone())];
        for (a, &q) in d.delta[p].iter().enumerate() {
            let t = Symbol::t(d.alphabet[a].clone());
            if d.accepting[q] {
                productions.push(Production::new(lhs.clone(), vec![t.clone()]));
            }
            if continues(q) {
                let fresh = names.len();
                let name = names.entry(q).or_insert_with(|| {
                    queue.push_back(q);
                    format!("Q{fresh}")
                });
                productions.push(Production::new(
                    lhs.clone(),
                    vec![t, Symbol::nt(name.clone())],
                ));
            }
        }
    }
    Grammar::with_inferred_nonterminals(d.alphabet_set(), "S", productions)
        .expect("generated names are well formed")
}
