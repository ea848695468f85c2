//! Context-free machinery: Chomsky normal form, CYK membership, emptiness,
//! and the product of a context-free grammar with a finite automaton.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::automata::{self, AutomataError, Dfa};
use crate::grammar::{ChomskyClass, Grammar, Production, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfgError {
    #[error("grammar is {0}, not context-free")]
    NotContextFree(ChomskyClass),
    #[error("grammar is {0}, not right-linear")]
    NotRegular(ChomskyClass),
    #[error("grammar and automaton are over different alphabets")]
    AlphabetMismatch,
    #[error("symbol {0} is not in the alphabet")]
    SymbolNotInAlphabet(String),
    #[error("malformed CNF grammar: {0}")]
    Malformed(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

/// A grammar whose rules are all `A -> B C` or `A -> a`, plus a flag for the
/// empty word. The start symbol never occurs on a right-hand side.
#[derive(Debug, Clone)]
pub struct CnfGrammar {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    start: usize,
    binary: Vec<(usize, usize, usize)>,
    unary: Vec<(usize, usize)>,
    accepts_epsilon: bool,
    by_pair: HashMap<(usize, usize), Vec<usize>>,
    by_terminal: Vec<Vec<usize>>,
}

impl CnfGrammar {
    /// `binary` holds `(A, B, C)` for `A -> B C`; `unary` holds `(A, a)` for
    /// `A -> a` with `a` an index into the sorted terminal set.
    pub fn new(
        nonterminals: Vec<String>,
        terminals: BTreeSet<String>,
        start: usize,
        binary: Vec<(usize, usize, usize)>,
        unary: Vec<(usize, usize)>,
        accepts_epsilon: bool,
    ) -> Result<Self, CfgError> {
        let n = nonterminals.len();
        let terminals: Vec<String> = terminals.into_iter().collect();
        if start >= n {
            return Err(CfgError::Malformed("start out of range".into()));
        }
        for &(a, b, c) in &binary {
            if a >= n || b >= n || c >= n {
                return Err(CfgError::Malformed(format!(
                    "rule ({a}, {b}, {c}) out of range"
                )));
            }
            if b == start || c == start {
                return Err(CfgError::Malformed(
                    "start symbol on a right-hand side".into(),
                ));
            }
        }
        if let Some(&(a, t)) = unary.iter().find(|&&(a, t)| a >= n || t >= terminals.len()) {
            return Err(CfgError::Malformed(format!("rule ({a}, {t}) out of range")));
        }
        let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &(a, b, c) in &binary {
            by_pair.entry((b, c)).or_default().push(a);
        }
        let mut by_terminal = vec![Vec::new(); terminals.len()];
        for &(a, t) in &unary {
            by_terminal[t].push(a);
        }
        Ok(CnfGrammar {
            nonterminals,
            terminals,
            start,
            binary,
            unary,
            accepts_epsilon,
            by_pair,
            by_terminal,
        })
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn binary_rules(&self) -> &[(usize, usize, usize)] {
        &self.binary
    }

    pub fn terminal_rules(&self) -> &[(usize, usize)] {
        &self.unary
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.accepts_epsilon
    }

    /// The same rules as an ordinary [`Grammar`].
    pub fn to_grammar(&self) -> Grammar {
        let nt = |i: usize| Symbol::nt(self.nonterminals[i].clone());
        let mut productions = Vec::new();
        if self.accepts_epsilon {
            productions.push(Production::new(vec![nt(self.start)], vec![]));
        }
        for &(a, b, c) in &self.binary {
            productions.push(Production::new(vec![nt(a)], vec![nt(b), nt(c)]));
        }
        for &(a, t) in &self.unary {
            productions.push(Production::new(
                vec![nt(a)],
                vec![Symbol::t(self.terminals[t].clone())],
            ));
        }
        Grammar::new(
            self.terminals.iter().cloned().collect(),
            self.nonterminals.iter().cloned().collect(),
            self.nonterminals[self.start].clone(),
            productions,
        )
        .expect("CNF names are valid")
    }

    fn terminal_indices(&self, w: &Word) -> Result<Vec<usize>, CfgError> {
        w.tokens()
            .iter()
            .map(|t| {
                self.terminals
                    .binary_search(t)
                    .map_err(|_| CfgError::SymbolNotInAlphabet(t.clone()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Sym {
    T(usize),
    N(usize),
}

struct Names {
    taken: HashSet<String>,
}

impl Names {
    fn fresh(&mut self, stem: &str) -> String {
        (0..)
            .map(|i| format!("{stem}{i}"))
            .find(|n| !self.taken.contains(n))
            .inspect(|n| {
                self.taken.insert(n.clone());
            })
            .expect("infinite supply")
    }
}

/// Converts a context-free grammar to CNF: fresh start, terminal lifting,
/// binarization, ε-elimination, unit elimination, then removal of useless
/// symbols.
pub fn to_cnf(g: &Grammar) -> Result<CnfGrammar, CfgError> {
    let class = g.classify();
    if !class.is_context_free() {
        return Err(CfgError::NotContextFree(class));
    }
    let terminals: Vec<String> = g.alphabet.iter().cloned().collect();
    let mut names: Vec<String> = g.nonterminals.iter().cloned().collect();
    let mut namer = Names {
        taken: names.iter().cloned().collect(),
    };
    let nt_index = |n: &str, names: &[String]| names.iter().position(|x| x == n).expect("declared");
    let t_index = |t: &str| {
        terminals
            .binary_search_by(|x| x.as_str().cmp(t))
            .expect("declared")
    };

    let mut rules: Vec<(usize, Vec<Sym>)> = g
        .productions
        .iter()
        .map(|p| {
            let lhs = nt_index(p.single_lhs().expect("context-free"), &names);
            let rhs = p
                .rhs
                .iter()
                .map(|s| match s {
                    Symbol::Terminal(t) => Sym::T(t_index(t)),
                    Symbol::Nonterminal(n) => Sym::N(nt_index(n, &names)),
                })
                .collect();
            (lhs, rhs)
        })
        .collect();

    let start = names.len();
    names.push(namer.fresh("S"));
    rules.push((start, vec![Sym::N(nt_index(&g.start, &names))]));

    // Terminals inside long right-hand sides get their own nonterminal.
    let mut lifted: HashMap<usize, usize> = HashMap::new();
    let mut extra = Vec::new();
    for (_, rhs) in rules.iter_mut().filter(|(_, rhs)| rhs.len() >= 2) {
        for s in rhs.iter_mut() {
            if let Sym::T(t) = *s {
                let id = *lifted.entry(t).or_insert_with(|| {
                    names.push(namer.fresh(&format!("T{}_", terminal_stem(&terminals[t]))));
                    extra.push((names.len() - 1, vec![Sym::T(t)]));
                    names.len() - 1
                });
                *s = Sym::N(id);
            }
        }
    }
    rules.extend(extra);

    let mut binarized = Vec::new();
    for (lhs, rhs) in rules {
        if rhs.len() <= 2 {
            binarized.push((lhs, rhs));
            continue;
        }
        let mut head = lhs;
        for s in rhs.iter().take(rhs.len() - 2) {
            let tail = names.len();
            names.push(namer.fresh("B"));
            binarized.push((head, vec![*s, Sym::N(tail)]));
            head = tail;
        }
        binarized.push((head, rhs[rhs.len() - 2..].to_vec()));
    }

    let n = names.len();
    let mut nullable = vec![false; n];
    loop {
        let mut changed = false;
        for (lhs, rhs) in &binarized {
            if !nullable[*lhs] && rhs.iter().all(|s| matches!(s, Sym::N(b) if nullable[*b])) {
                nullable[*lhs] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let accepts_epsilon = nullable[start];

    let mut no_eps: BTreeSet<(usize, Vec<Sym>)> = BTreeSet::new();
    for (lhs, rhs) in &binarized {
        match rhs.as_slice() {
            [] => {}
            [x] => {
                no_eps.insert((*lhs, vec![*x]));
            }
            [x, y] => {
                no_eps.insert((*lhs, vec![*x, *y]));
                if let Sym::N(b) = x {
                    if nullable[*b] {
                        no_eps.insert((*lhs, vec![*y]));
                    }
                }
                if let Sym::N(c) = y {
                    if nullable[*c] {
                        no_eps.insert((*lhs, vec![*x]));
                    }
                }
            }
            _ => unreachable!("binarized"),
        }
    }

    // Unit closure: unit[a] holds every B with A =>* B through unit rules.
    let mut unit: Vec<BTreeSet<usize>> = (0..n).map(|a| BTreeSet::from([a])).collect();
    loop {
        let mut changed = false;
        for (lhs, rhs) in &no_eps {
            if let [Sym::N(b)] = rhs.as_slice() {
                let reach: Vec<usize> = unit[*b].iter().copied().collect();
                for set in unit.iter_mut().filter(|set| set.contains(lhs)) {
                    for &r in &reach {
                        changed |= set.insert(r);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut binary: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut unary: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (a, reach) in unit.iter().enumerate() {
        for (_, rhs) in no_eps.iter().filter(|(l, _)| reach.contains(l)) {
            match rhs.as_slice() {
                [Sym::T(t)] => {
                    unary.insert((a, *t));
                }
                [Sym::N(b), Sym::N(c)] => {
                    binary.insert((a, *b, *c));
                }
                [Sym::N(_)] => {}
                _ => unreachable!("terminals lifted out of binary rules"),
            }
        }
    }

    // Useless symbols: first non-generating, then unreachable.
    let mut generating = vec![false; n];
    for &(a, _) in &unary {
        generating[a] = true;
    }
    loop {
        let mut changed = false;
        for &(a, b, c) in &binary {
            if !generating[a] && generating[b] && generating[c] {
                generating[a] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    binary.retain(|&(a, b, c)| generating[a] && generating[b] && generating[c]);
    let mut reach = vec![false; n];
    reach[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for &(_, b, c) in binary.iter().filter(|r| r.0 == a) {
            for x in [b, c] {
                if !reach[x] {
                    reach[x] = true;
                    queue.push_back(x);
                }
            }
        }
    }

    let kept: Vec<usize> = (0..n).filter(|&a| reach[a]).collect();
    let remap: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    CnfGrammar::new(
        kept.iter().map(|&a| names[a].clone()).collect(),
        g.alphabet.clone(),
        remap[&start],
        binary
            .into_iter()
            .filter(|(a, _, _)| reach[*a])
            .map(|(a, b, c)| (remap[&a], remap[&b], remap[&c]))
            .collect(),
        unary
            .into_iter()
            .filter(|(a, _)| reach[*a])
            .map(|(a, t)| (remap[&a], t))
            .collect(),
        accepts_epsilon,
    )
}

fn terminal_stem(t: &str) -> String {
    let stem: String = t.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
    if stem.is_empty() {
        "x".into()
    } else {
        stem
    }
}

/// CYK recognition. The empty word is decided by the ε flag.
pub fn cyk_member(c: &CnfGrammar, w: &Word) -> Result<bool, CfgError> {
    let word = c.terminal_indices(w)?;
    let len = word.len();
    if len == 0 {
        return Ok(c.accepts_epsilon);
    }
    let n = c.nonterminals.len();
    // table[start][span - 1]: nonterminals deriving word[start .. start + span].
    let mut members: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); len]; len];
    let mut marks: Vec<Vec<Vec<bool>>> = vec![vec![Vec::new(); len]; len];
    for (i, &t) in word.iter().enumerate() {
        marks[i][0] = vec![false; n];
        for &a in &c.by_terminal[t] {
            if !marks[i][0][a] {
                marks[i][0][a] = true;
                members[i][0].push(a);
            }
        }
    }
    for span in 2..=len {
        for i in 0..=len - span {
            let mut cell_marks = vec![false; n];
            let mut cell = Vec::new();
            for left in 1..span {
                let right = span - left;
                for &b in &members[i][left - 1] {
                    for &cc in &members[i + left][right - 1] {
                        if let Some(heads) = c.by_pair.get(&(b, cc)) {
                            for &a in heads {
                                if !cell_marks[a] {
                                    cell_marks[a] = true;
                                    cell.push(a);
                                }
                            }
                        }
                    }
                }
            }
            members[i][span - 1] = cell;
            marks[i][span - 1] = cell_marks;
        }
    }
    Ok(marks[0][len - 1][c.start])
}

/// True iff the start symbol derives no terminal word.
pub fn cfg_is_empty(g: &Grammar) -> Result<bool, CfgError> {
    let class = g.classify();
    if !class.is_context_free() {
        return Err(CfgError::NotContextFree(class));
    }
    let mut generating: HashSet<&str> = HashSet::new();
    loop {
        let mut changed = false;
        for p in &g.productions {
            let lhs = p.single_lhs().expect("context-free");
            if !generating.contains(lhs)
                && p.rhs.iter().all(|s| match s {
                    Symbol::Terminal(_) => true,
                    Symbol::Nonterminal(n) => generating.contains(n.as_str()),
                })
            {
                generating.insert(lhs);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(!generating.contains(g.start.as_str()))
}

/// Bar-Hillel product: a context-free grammar for `L(c) ∩ L(d)`.
///
/// Nonterminals are triples `(p, A, q)` meaning "`A` derives a word that
/// drives `d` from `p` to `q`", named `P{p}_{A}_{q}`. Only triples that are
/// both generating and reachable from the start `S` are emitted.
pub fn cfg_intersect_dfa(c: &CnfGrammar, d: &Dfa) -> Result<Grammar, CfgError> {
    if c.terminals.as_slice() != d.alphabet() {
        return Err(CfgError::AlphabetMismatch);
    }
    type Triple = (usize, usize, usize);
    let states = d.num_states();

    let mut generating: HashSet<Triple> = HashSet::new();
    let mut outgoing: HashMap<(usize, usize), Vec<usize>> = HashMap::new(); // (p, A) -> q
    let mut incoming: HashMap<(usize, usize), Vec<usize>> = HashMap::new(); // (A, q) -> p
    let mut queue: VecDeque<Triple> = VecDeque::new();
    let add = |t: Triple, generating: &mut HashSet<Triple>, queue: &mut VecDeque<Triple>| {
        if generating.insert(t) {
            queue.push_back(t);
        }
    };
    for &(a, sym) in &c.unary {
        for p in 0..states {
            add((p, a, d.next(p, sym)), &mut generating, &mut queue);
        }
    }
    let mut as_left: HashMap<usize, Vec<(usize, usize)>> = HashMap::new(); // B -> (A, C)
    let mut as_right: HashMap<usize, Vec<(usize, usize)>> = HashMap::new(); // C -> (A, B)
    for &(a, b, cc) in &c.binary {
        as_left.entry(b).or_default().push((a, cc));
        as_right.entry(cc).or_default().push((a, b));
    }
    while let Some((p, b, q)) = queue.pop_front() {
        outgoing.entry((p, b)).or_default().push(q);
        incoming.entry((b, q)).or_default().push(p);
        let mut found = Vec::new();
        for &(a, cc) in as_left.get(&b).into_iter().flatten() {
            for &r in outgoing.get(&(q, cc)).into_iter().flatten() {
                found.push((p, a, r));
            }
        }
        for &(a, bb) in as_right.get(&b).into_iter().flatten() {
            for &o in incoming.get(&(bb, p)).into_iter().flatten() {
                found.push((o, a, q));
            }
        }
        for t in found {
            add(t, &mut generating, &mut queue);
        }
    }

    let accepting: Vec<usize> = (0..states).filter(|&s| d.is_accepting(s)).collect();
    let roots: Vec<Triple> = accepting
        .iter()
        .map(|&f| (d.start(), c.start, f))
        .filter(|t| generating.contains(t))
        .collect();

    let name = |(p, a, q): Triple| format!("P{p}_{a}_{q}");
    let nt = |t: Triple| Symbol::nt(name(t));
    let mut productions = Vec::new();
    if c.accepts_epsilon && d.is_accepting(d.start()) {
        productions.push(Production::new(vec![Symbol::nt("S")], vec![]));
    }
    for &t in &roots {
        productions.push(Production::new(vec![Symbol::nt("S")], vec![nt(t)]));
    }
    let mut unary_by_head: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, sym) in &c.unary {
        unary_by_head.entry(a).or_default().push(sym);
    }
    let mut binary_by_head: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for &(a, b, cc) in &c.binary {
        binary_by_head.entry(a).or_default().push((b, cc));
    }
    let mut seen: HashSet<Triple> = roots.iter().copied().collect();
    let mut queue: VecDeque<Triple> = roots.into_iter().collect();
    while let Some((p, a, r)) = queue.pop_front() {
        let lhs = vec![nt((p, a, r))];
        for &sym in unary_by_head.get(&a).into_iter().flatten() {
            if d.next(p, sym) == r {
                productions.push(Production::new(
                    lhs.clone(),
                    vec![Symbol::t(c.terminals[sym].clone())],
                ));
            }
        }
        for &(b, cc) in binary_by_head.get(&a).into_iter().flatten() {
            for &q in outgoing.get(&(p, b)).into_iter().flatten() {
                let right = (q, cc, r);
                if generating.contains(&right) {
                    let left = (p, b, q);
                    for t in [left, right] {
                        if seen.insert(t) {
                            queue.push_back(t);
                        }
                    }
                    productions.push(Production::new(lhs.clone(), vec![nt(left), nt(right)]));
                }
            }
        }
    }
    Ok(
        Grammar::with_inferred_nonterminals(d.alphabet_set(), "S", productions)
            .expect("product names are well formed"),
    )
}

/// A context-free grammar for `L(g2) \ L(g3)`, built as the product of
/// `g2` with the complement of the automaton compiled from `g3`.
pub fn construct_cf_minus_regular(g2: &Grammar, g3: &Grammar) -> Result<Grammar, CfgError> {
    let class2 = g2.classify();
    if !class2.is_context_free() {
        return Err(CfgError::NotContextFree(class2));
    }
    let class3 = g3.classify();
    if class3 != ChomskyClass::Type3 {
        return Err(CfgError::NotRegular(class3));
    }
    if g2.alphabet != g3.alphabet {
        return Err(CfgError::AlphabetMismatch);
    }
    let allowed = automata::complement(&automata::compile_regular(g3)?);
    cfg_intersect_dfa(&to_cnf(g2)?, &allowed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile_regular, dfa_member};
    use crate::text::parse_grammar_file;

    fn g(body: &str) -> Grammar {
        parse_grammar_file(&format!("%alphabet a b\n%positive\n%start S\n{body}"))
            .unwrap()
            .positive()
            .clone()
    }

    fn anbn() -> Grammar {
        g("S -> a S b | eps\n")
    }

    fn all_words(n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..n {
            layer = layer
                .iter()
                .flat_map(|w| ["a", "b"].map(|t| w.concat(&Word::from_chars(t))))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    fn is_anbn(w: &Word) -> bool {
        let k = w.len() / 2;
        w.len().is_multiple_of(2)
            && w.tokens()[..k].iter().all(|t| t == "a")
            && w.tokens()[k..].iter().all(|t| t == "b")
    }

    #[test]
    fn cnf_of_anbn() {
        let c = to_cnf(&anbn()).unwrap();
        assert!(c.accepts_epsilon());
        for w in all_words(10) {
            assert_eq!(cyk_member(&c, &w).unwrap(), is_anbn(&w), "{w}");
        }
        let start = c.start();
        assert!(c
            .binary_rules()
            .iter()
            .all(|&(_, b, cc)| b != start && cc != start));
    }

    #[test]
    fn cnf_single_terminal() {
        let c = to_cnf(&g("S -> a\n")).unwrap();
        assert!(!c.accepts_epsilon());
        assert_eq!(c.terminal_rules().len(), 1);
        assert!(c.binary_rules().is_empty());
    }

    #[test]
    fn cnf_drops_unreachable() {
        let c = to_cnf(&g("S -> a\nU -> b U | b\n")).unwrap();
        assert!(!c.nonterminals().iter().any(|n| n == "U"));
    }

    #[test]
    fn cnf_handles_units_and_long_rules() {
        let c = to_cnf(&g("S -> A | a b a b\nA -> B\nB -> b | S S\n")).unwrap();
        // L = strings built from b and abab blocks, nonempty.
        assert!(cyk_member(&c, &Word::from_chars("b")).unwrap());
        assert!(cyk_member(&c, &Word::from_chars("abab")).unwrap());
        assert!(cyk_member(&c, &Word::from_chars("bababb")).unwrap());
        assert!(!cyk_member(&c, &Word::from_chars("ab")).unwrap());
        assert!(!cyk_member(&c, &Word::empty()).unwrap());
    }

    #[test]
    fn cyk_examples() {
        let c = to_cnf(&anbn()).unwrap();
        assert!(cyk_member(&c, &Word::from_chars("aabb")).unwrap());
        assert!(!cyk_member(&c, &Word::from_chars("ba")).unwrap());
        assert!(cyk_member(&c, &Word::empty()).unwrap());
        assert_eq!(
            cyk_member(&c, &Word::from_chars("c")),
            Err(CfgError::SymbolNotInAlphabet("c".into()))
        );
    }

    #[test]
    fn rejects_non_context_free() {
        let cs = parse_grammar_file(
            "%alphabet a b\n%positive\n%start S\nS -> A B\nA B -> B A\nA -> a\nB -> b\n",
        )
        .unwrap();
        assert_eq!(
            to_cnf(cs.positive()).unwrap_err(),
            CfgError::NotContextFree(ChomskyClass::Type1)
        );
        assert!(cfg_is_empty(cs.positive()).is_err());
    }

    #[test]
    fn intersection_with_even_length() {
        let c = to_cnf(&anbn()).unwrap();
        let even = compile_regular(&g("S -> a T | b T | eps\nT -> a S | b S\n")).unwrap();
        let prod = cfg_intersect_dfa(&c, &even).unwrap();
        assert!(prod.classify().is_context_free());
        let pc = to_cnf(&prod).unwrap();
        for w in all_words(10) {
            let expect = cyk_member(&c, &w).unwrap() && dfa_member(&even, &w).unwrap();
            assert_eq!(cyk_member(&pc, &w).unwrap(), expect, "{w}");
        }
    }

    #[test]
    fn intersection_identities() {
        let c = to_cnf(&anbn()).unwrap();
        let alphabet = anbn().alphabet;
        let none = cfg_intersect_dfa(&c, &Dfa::empty(alphabet.clone())).unwrap();
        assert!(cfg_is_empty(&none).unwrap());
        let all = to_cnf(&cfg_intersect_dfa(&c, &Dfa::universal(alphabet)).unwrap()).unwrap();
        for w in all_words(8) {
            assert_eq!(cyk_member(&all, &w).unwrap(), is_anbn(&w), "{w}");
        }
    }

    #[test]
    fn anbn_minus_ab() {
        let ab = g("S -> a T\nT -> b\n");
        let diff = construct_cf_minus_regular(&anbn(), &ab).unwrap();
        assert!(diff.classify().is_context_free());
        let dc = to_cnf(&diff).unwrap();
        for w in all_words(10) {
            assert_eq!(
                cyk_member(&dc, &w).unwrap(),
                is_anbn(&w) && w.len() != 2,
                "{w}"
            );
        }
    }

    #[test]
    fn minus_empty_and_minus_everything() {
        let empty = g("S -> a S\n");
        let everything = g("S -> a S | b S | eps\n");
        let same = to_cnf(&construct_cf_minus_regular(&anbn(), &empty).unwrap()).unwrap();
        for w in all_words(8) {
            assert_eq!(cyk_member(&same, &w).unwrap(), is_anbn(&w));
        }
        let none = construct_cf_minus_regular(&anbn(), &everything).unwrap();
        assert!(cfg_is_empty(&none).unwrap());
    }

    #[test]
    fn emptiness() {
        assert!(cfg_is_empty(&g("S -> a S\n")).unwrap());
        assert!(!cfg_is_empty(&g("S -> a\n")).unwrap());
        let r = g("S -> a S | b\n");
        assert!(cfg_is_empty(&construct_cf_minus_regular(&r, &r).unwrap()).unwrap());
    }

    #[test]
    fn alphabet_mismatch() {
        let c = to_cnf(&anbn()).unwrap();
        let d = Dfa::empty(BTreeSet::from(["a".to_string()]));
        assert_eq!(
            cfg_intersect_dfa(&c, &d).unwrap_err(),
            CfgError::AlphabetMismatch
        );
    }
}
