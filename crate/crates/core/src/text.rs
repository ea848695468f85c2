//! The line-oriented grammar file format.
//!
//! ```text
//! # comments run to end of line
//! %alphabet a b "wear" "ed"
//! %positive
//! %start S
//! S -> a S | eps
//! %negative
//! %start T
//! T -> a a
//! ```
//!
//! Nonterminals begin with an uppercase letter. Terminals are bare lowercase
//! words or double-quoted tokens. `eps` is the empty right-hand side and must
//! stand alone in its alternative.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::grammar::{Grammar, GrammarError, Production, ProhibitionGrammar, Symbol, EPSILON};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undeclared symbol {0}")]
    UndeclaredSymbol(String),
    #[error("missing %positive section")]
    MissingPositive,
    #[error("missing %alphabet line")]
    MissingAlphabet,
    #[error("duplicate {0}")]
    DuplicateSection(String),
    #[error("section {0} has no %start line")]
    MissingStart(String),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

#[derive(Debug)]
struct Token {
    text: String,
    quoted: bool,
    column: usize,
}

impl Token {
    fn is(&self, bare: &str) -> bool {
        !self.quoted && self.text == bare
    }
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().enumerate().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            chars.next();
            let mut text = String::new();
            let mut closed = false;
            for (_, c) in chars.by_ref() {
                if c == '"' {
                    closed = true;
                    break;
                }
                text.push(c);
            }
            if !closed {
                return Err(syntax(line_no, i + 1, "unterminated quoted terminal"));
            }
            if text.is_empty() || text.chars().any(char::is_whitespace) {
                return Err(syntax(
                    line_no,
                    i + 1,
                    "quoted terminal must be nonempty and free of whitespace",
                ));
            }
            tokens.push(Token {
                text,
                quoted: true,
                column: i + 1,
            });
        } else {
            let mut text = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || c == '#' || c == '"' {
                    break;
                }
                text.push(c);
                chars.next();
            }
            tokens.push(Token {
                text,
                quoted: false,
                column: i + 1,
            });
        }
    }
    Ok(tokens)
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

/// True if `name` can be written without quotes as a terminal.
pub fn is_bare_terminal(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() => {}
        _ => return false,
    }
    name != EPSILON
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '"' | '#' | '|'))
}

fn is_nonterminal_token(tok: &Token) -> bool {
    !tok.quoted && tok.text.starts_with(|c: char| c.is_ascii_uppercase())
}

struct Section {
    name: &'static str,
    header_line: usize,
    start: Option<String>,
    productions: Vec<Production>,
}

/// Parses a prohibition grammar file. A missing `%negative` section means
/// nothing is prohibited.
pub fn parse_grammar_file(text: &str) -> Result<ProhibitionGrammar, ParseError> {
    let mut alphabet: Option<BTreeSet<String>> = None;
    let mut positive: Option<Section> = None;
    let mut negative: Option<Section> = None;
    let mut current: Option<&'static str> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let tokens = tokenize(raw, line_no)?;
        let Some(first) = tokens.first() else {
            continue;
        };

        if first.is("%alphabet") {
            if alphabet.is_some() {
                return Err(ParseError {
                    line: line_no,
                    column: first.column,
                    kind: ParseErrorKind::DuplicateSection("%alphabet".into()),
                });
            }
            if current.is_some() {
                return Err(syntax(
                    line_no,
                    first.column,
                    "%alphabet must precede all sections",
                ));
            }
            let mut set = BTreeSet::new();
            for tok in &tokens[1..] {
                if !(tok.quoted || is_bare_terminal(&tok.text)) || tok.text == EPSILON {
                    return Err(syntax(
                        line_no,
                        tok.column,
                        format!("{} is not a terminal", tok.text),
                    ));
                }
                set.insert(tok.text.clone());
            }
            alphabet = Some(set);
        } else if first.is("%positive") || first.is("%negative") {
            let name = if first.is("%positive") {
                "%positive"
            } else {
                "%negative"
            };
            if tokens.len() > 1 {
                return Err(syntax(
                    line_no,
                    tokens[1].column,
                    format!("unexpected text after {name}"),
                ));
            }
            if alphabet.is_none() {
                return Err(ParseError {
                    line: line_no,
                    column: first.column,
                    kind: ParseErrorKind::MissingAlphabet,
                });
            }
            let slot = if name == "%positive" {
                &mut positive
            } else {
                &mut negative
            };
            if slot.is_some() {
                return Err(ParseError {
                    line: line_no,
                    column: first.column,
                    kind: ParseErrorKind::DuplicateSection(name.into()),
                });
            }
            *slot = Some(Section {
                name,
                header_line: line_no,
                start: None,
                productions: Vec::new(),
            });
            current = Some(name);
        } else if first.is("%start") {
            let section = current_section(current, &mut positive, &mut negative)
                .ok_or_else(|| syntax(line_no, first.column, "%start outside a section"))?;
            if section.start.is_some() {
                return Err(syntax(line_no, first.column, "duplicate %start in section"));
            }
            if !section.productions.is_empty() {
                return Err(syntax(
                    line_no,
                    first.column,
                    "%start must precede productions",
                ));
            }
            match tokens.as_slice() {
                [_, nt] if is_nonterminal_token(nt) => section.start = Some(nt.text.clone()),
                _ => {
                    return Err(syntax(
                        line_no,
                        first.column,
                        "%start takes exactly one nonterminal",
                    ))
                }
            }
        } else if !first.quoted && first.text.starts_with('%') {
            return Err(syntax(
                line_no,
                first.column,
                format!("unknown directive {}", first.text),
            ));
        } else {
            let alphabet = alphabet.as_ref().expect("sections require an alphabet");
            let section = current_section(current, &mut positive, &mut negative)
                .ok_or_else(|| syntax(line_no, first.column, "production outside a section"))?;
            if section.start.is_none() {
                return Err(syntax(line_no, first.column, "production before %start"));
            }
            let prods = parse_production_line(&tokens, line_no, alphabet)?;
            section.productions.extend(prods);
        }
    }

    let alphabet = alphabet.ok_or(ParseError {
        line: last_line + 1,
        column: 1,
        kind: ParseErrorKind::MissingAlphabet,
    })?;
    let positive = positive.ok_or(ParseError {
        line: last_line + 1,
        column: 1,
        kind: ParseErrorKind::MissingPositive,
    })?;
    let pos = finish_section(positive, &alphabet)?;
    let neg = match negative {
        Some(s) => finish_section(s, &alphabet)?,
        None => Grammar::empty(alphabet),
    };
    ProhibitionGrammar::new(pos, neg).map_err(|e| ParseError {
        line: last_line + 1,
        column: 1,
        kind: e.into(),
    })
}

fn current_section<'a>(
    current: Option<&'static str>,
    positive: &'a mut Option<Section>,
    negative: &'a mut Option<Section>,
) -> Option<&'a mut Section> {
    match current? {
        "%positive" => positive.as_mut(),
        _ => negative.as_mut(),
    }
}

fn finish_section(section: Section, alphabet: &BTreeSet<String>) -> Result<Grammar, ParseError> {
    let start = section.start.ok_or(ParseError {
        line: section.header_line,
        column: 1,
        kind: ParseErrorKind::MissingStart(section.name.into()),
    })?;
    Grammar::with_inferred_nonterminals(alphabet.clone(), start, section.productions).map_err(|e| {
        ParseError {
            line: section.header_line,
            column: 1,
            kind: e.into(),
        }
    })
}

fn parse_production_line(
    tokens: &[Token],
    line_no: usize,
    alphabet: &BTreeSet<String>,
) -> Result<Vec<Production>, ParseError> {
    let arrows: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is("->"))
        .map(|(i, _)| i)
        .collect();
    let arrow = match arrows.as_slice() {
        [a] => *a,
        [] => return Err(syntax(line_no, tokens[0].column, "expected `->`")),
        [_, second, ..] => {
            return Err(syntax(
                line_no,
                tokens[*second].column,
                "more than one `->`",
            ))
        }
    };
    if arrow == 0 {
        return Err(syntax(line_no, tokens[0].column, "empty left-hand side"));
    }
    let lhs = tokens[..arrow]
        .iter()
        .map(|t| symbol(t, line_no, alphabet))
        .collect::<Result<Vec<_>, _>>()?;
    if !lhs.iter().any(Symbol::is_nonterminal) {
        return Err(syntax(
            line_no,
            tokens[0].column,
            "left-hand side needs a nonterminal",
        ));
    }

    let mut out = Vec::new();
    for alt in tokens[arrow + 1..].split(|t| t.is("|")) {
        let rhs = match alt {
            [only] if only.is(EPSILON) => Vec::new(),
            _ => {
                if let Some(e) = alt.iter().find(|t| t.is(EPSILON)) {
                    return Err(syntax(line_no, e.column, "`eps` must stand alone"));
                }
                alt.iter()
                    .map(|t| symbol(t, line_no, alphabet))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        out.push(Production::new(lhs.clone(), rhs));
    }
    Ok(out)
}

fn symbol(tok: &Token, line_no: usize, alphabet: &BTreeSet<String>) -> Result<Symbol, ParseError> {
    if is_nonterminal_token(tok) {
        return Ok(Symbol::nt(tok.text.clone()));
    }
    if !(tok.quoted || is_bare_terminal(&tok.text)) {
        return Err(syntax(
            line_no,
            tok.column,
            format!("unexpected token {}", tok.text),
        ));
    }
    if !alphabet.contains(&tok.text) {
        return Err(ParseError {
            line: line_no,
            column: tok.column,
            kind: ParseErrorKind::UndeclaredSymbol(tok.text.clone()),
        });
    }
    Ok(Symbol::t(tok.text.clone()))
}

fn write_terminal(out: &mut String, name: &str) {
    if is_bare_terminal(name) {
        out.push_str(name);
    } else {
        let _ = write!(out, "\"{name}\"");
    }
}

fn write_symbols(out: &mut String, syms: &[Symbol]) {
    if syms.is_empty() {
        out.push_str(EPSILON);
        return;
    }
    for (i, s) in syms.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match s {
            Symbol::Terminal(t) => write_terminal(out, t),
            Symbol::Nonterminal(n) => out.push_str(n),
        }
    }
}

fn write_section(out: &mut String, header: &str, g: &Grammar) {
    let _ = writeln!(out, "{header}");
    let _ = writeln!(out, "%start {}", g.start);
    for p in &g.productions {
        write_symbols(out, &p.lhs);
        out.push_str(" -> ");
        write_symbols(out, &p.rhs);
        out.push('\n');
    }
}

/// Renders a prohibition grammar in the file format.
pub fn to_file_text(pg: &ProhibitionGrammar) -> String {
    let mut out = String::from("%alphabet");
    for t in pg.alphabet() {
        out.push(' ');
        write_terminal(&mut out, t);
    }
    out.push('\n');
    write_section(&mut out, "%positive", pg.positive());
    write_section(&mut out, "%negative", pg.negative());
    out
}

impl fmt::Display for ProhibitionGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_file_text(self))
    }
}
