//! Seeded random grammars over `{a, b}` for property checks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grammar::{ChomskyClass, Grammar, Production, Symbol};

const NONTERMINALS: [&str; 4] = ["S", "A", "B", "C"];
const TERMINALS: [&str; 2] = ["a", "b"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn binary_alphabet() -> BTreeSet<String> {
    TERMINALS.iter().map(|t| t.to_string()).collect()
}

fn pick_nt(rng: &mut impl Rng, k: usize) -> Symbol {
    Symbol::nt(NONTERMINALS[rng.gen_range(0..k)])
}

fn pick_t(rng: &mut impl Rng) -> Symbol {
    Symbol::t(*TERMINALS.choose(rng).expect("nonempty"))
}

fn build(productions: Vec<Production>) -> Grammar {
    Grammar::with_inferred_nonterminals(binary_alphabet(), "S", productions)
        .expect("generated grammar is valid")
}

/// Right-linear grammar with at most 4 nonterminals and 8 productions.
pub fn random_regular(rng: &mut impl Rng) -> Grammar {
    let k = rng.gen_range(1..=NONTERMINALS.len());
    let count = rng.gen_range(1..=8);
    let mut productions = Vec::with_capacity(count);
    for i in 0..count {
        let lhs = if i == 0 {
            Symbol::nt("S")
        } else {
            pick_nt(rng, k)
        };
        let rhs = match rng.gen_range(0..10) {
            0 => vec![],
            1..=3 => vec![pick_t(rng)],
            _ => vec![pick_t(rng), pick_nt(rng, k)],
        };
        productions.push(Production::new(vec![lhs], rhs));
    }
    build(productions)
}

/// Context-free grammar that is not right-linear, with at most 4
/// nonterminals and 8 productions.
pub fn random_context_free(rng: &mut impl Rng) -> Grammar {
    let k = rng.gen_range(1..=NONTERMINALS.len());
    let count = rng.gen_range(2..=7);
    let mut productions = vec![Production::new(vec![Symbol::nt("S")], vec![pick_t(rng)])];
    for _ in 1..count {
        let lhs = pick_nt(rng, k);
        let len = rng.gen_range(0..=3);
        let rhs = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    pick_t(rng)
                } else {
                    pick_nt(rng, k)
                }
            })
            .collect();
        productions.push(Production::new(vec![lhs], rhs));
    }
    let mut g = build(productions.clone());
    if g.classify() != ChomskyClass::Type2 {
        productions.push(Production::new(
            vec![Symbol::nt("S")],
            vec![pick_t(rng), Symbol::nt("S"), pick_t(rng)],
        ));
        g = build(productions);
    }
    g
}

/// Grammar whose productions all have the shape `A -> B C` or `A -> a`.
pub fn random_cnf_shaped(rng: &mut impl Rng) -> Grammar {
    let k = rng.gen_range(1..=NONTERMINALS.len());
    let mut productions = Vec::new();
    for nt in &NONTERMINALS[..k] {
        productions.push(Production::new(vec![Symbol::nt(*nt)], vec![pick_t(rng)]));
    }
    for _ in 0..rng.gen_range(1..=6) {
        productions.push(Production::new(
            vec![pick_nt(rng, k)],
            vec![pick_nt(rng, k), pick_nt(rng, k)],
        ));
    }
    build(productions)
}
