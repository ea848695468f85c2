//! Published relations between the language classes `L(G_ij)` and the
//! conventional classes `L(G_k)`, stored as data.
//!
//! The first table relates pair classes (rows `00`..`33`, columns `01`..`33`);
//! the second relates conventional classes (rows `0`..`3`) to pair classes
//! (columns `00`..`33`). Entries are kept verbatim, including the `⊆`/`⊇`
//! cells whose strictness is open.

use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use crate::grammar::ChomskyClass;
use crate::prohibition::PairClass;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    ProperSubset,
    SubsetOrEqual,
    Equal,
    ProperSuperset,
    SupersetOrEqual,
    NotEqual,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::ProperSubset => "⊂",
            Relation::SubsetOrEqual => "⊆",
            Relation::Equal => "=",
            Relation::ProperSuperset => "⊃",
            Relation::SupersetOrEqual => "⊇",
            Relation::NotEqual => "≠",
        }
    }

    /// The relation read right to left.
    pub fn converse(self) -> Self {
        match self {
            Relation::ProperSubset => Relation::ProperSuperset,
            Relation::SubsetOrEqual => Relation::SupersetOrEqual,
            Relation::ProperSuperset => Relation::ProperSubset,
            Relation::SupersetOrEqual => Relation::SubsetOrEqual,
            r => r,
        }
    }

    fn from_code(code: &str) -> Relation {
        match code {
            "<" => Relation::ProperSubset,
            "<=" => Relation::SubsetOrEqual,
            "=" => Relation::Equal,
            ">" => Relation::ProperSuperset,
            ">=" => Relation::SupersetOrEqual,
            "!=" => Relation::NotEqual,
            other => panic!("bad relation code {other}"),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A language class: either a conventional class or a pair class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LanguageClass {
    Conventional(ChomskyClass),
    Prohibition(PairClass),
}

impl LanguageClass {
    /// `"0"`..`"3"` for conventional classes, `"00"`..`"33"` for pairs.
    pub fn parse(code: &str) -> Option<Self> {
        match code.len() {
            1 => code
                .parse::<u8>()
                .ok()
                .and_then(ChomskyClass::from_level)
                .map(LanguageClass::Conventional),
            2 => PairClass::from_code(code).map(LanguageClass::Prohibition),
            _ => None,
        }
    }

    pub fn code(&self) -> String {
        match self {
            LanguageClass::Conventional(c) => c.level().to_string(),
            LanguageClass::Prohibition(pc) => pc.code(),
        }
    }
}

// Row-major transcription; columns 01..33.
const PAIR_TABLE: [(&str, &str); 16] = [
    ("00", "> > > > > > > > > > > > > > >"),
    ("01", "= = = != > > > != > > > != > > >"),
    ("02", "= = = != > > > != > > > != > > >"),
    ("03", "= = = != > > > != > > > != > > >"),
    ("10", "!= != != = > > > = > > > = > > >"),
    ("11", "< < < < = = = < = >= > < = > >"),
    ("12", "< < < < = = = < = >= > < = > >"),
    ("13", "< < < < = = = < = >= > < = > >"),
    ("20", "!= != != = > > > = > > > = > > >"),
    ("21", "< < < < = = = < = >= > < = > >"),
    ("22", "< < < < <= <= <= < <= = > < > > >"),
    ("23", "< < < < < < < < < < = < < != >"),
    ("30", "!= != != = > > > = > > > = > > >"),
    ("31", "< < < < = = = < = > > < = > >"),
    ("32", "< < < < < < < < < < != < < = >"),
    ("33", "< < < < < < < < < < < < < < ="),
];

// Columns 00..33.
const CONVENTIONAL_TABLE: [(&str, &str); 4] = [
    ("0", "< = = = != > > > != > > > != > > >"),
    ("1", "< < < < < = = = < = >= > < = > >"),
    ("2", "< < < < < < < < < < < = < < != >"),
    ("3", "< < < < < < < < < < < < < < < ="),
];

#[derive(Debug, Clone)]
pub struct RelationMatrix {
    pair_columns: Vec<PairClass>,
    pair_rows: Vec<(PairClass, Vec<Relation>)>,
    conventional_columns: Vec<PairClass>,
    conventional_rows: Vec<(ChomskyClass, Vec<Relation>)>,
}

impl RelationMatrix {
    fn build() -> Self {
        let all: Vec<PairClass> = PairClass::all().collect();
        let parse_row = |codes: &str| {
            codes
                .split_whitespace()
                .map(Relation::from_code)
                .collect::<Vec<_>>()
        };
        let pair_rows = PAIR_TABLE
            .iter()
            .map(|(row, codes)| {
                (
                    PairClass::from_code(row).expect("valid code"),
                    parse_row(codes),
                )
            })
            .collect();
        let conventional_rows = CONVENTIONAL_TABLE
            .iter()
            .map(|(row, codes)| {
                let level: u8 = row.parse().expect("digit");
                (
                    ChomskyClass::from_level(level).expect("level"),
                    parse_row(codes),
                )
            })
            .collect();
        RelationMatrix {
            pair_columns: all[1..].to_vec(),
            pair_rows,
            conventional_columns: all,
            conventional_rows,
        }
    }

    /// The cell exactly as printed, if the tables print `(row, column)`.
    pub fn printed(&self, row: LanguageClass, column: LanguageClass) -> Option<Relation> {
        let LanguageClass::Prohibition(col) = column else {
            return None;
        };
        match row {
            LanguageClass::Prohibition(r) => {
                let j = self.pair_columns.iter().position(|c| *c == col)?;
                let (_, cells) = self.pair_rows.iter().find(|(pc, _)| *pc == r)?;
                Some(cells[j])
            }
            LanguageClass::Conventional(r) => {
                let j = self.conventional_columns.iter().position(|c| *c == col)?;
                let (_, cells) = self.conventional_rows.iter().find(|(c, _)| *c == r)?;
                Some(cells[j])
            }
        }
    }

    /// Relation of `left` to `right`. Pairs that are only printed the other
    /// way round are answered with the converse of the printed cell.
    pub fn lookup(&self, left: LanguageClass, right: LanguageClass) -> Result<Relation, Error> {
        self.printed(left, right)
            .or_else(|| self.printed(right, left).map(Relation::converse))
            .ok_or_else(|| Error::UnknownPair(left.code(), right.code()))
    }

    /// Both tables as tab-separated text.
    pub fn render(&self) -> String {
        let mut out = String::from("table 1\ntype");
        for c in &self.pair_columns {
            let _ = write!(out, "\t{}", c.code());
        }
        out.push('\n');
        for (row, cells) in &self.pair_rows {
            out.push_str(&row.code());
            for cell in cells {
                let _ = write!(out, "\t{cell}");
            }
            out.push('\n');
        }
        out.push_str("table 2\ntype");
        for c in &self.conventional_columns {
            let _ = write!(out, "\t{}", c.code());
        }
        out.push('\n');
        for (row, cells) in &self.conventional_rows {
            out.push_str(&row.level().to_string());
            for cell in cells {
                let _ = write!(out, "\t{cell}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn relation_matrix() -> &'static RelationMatrix {
    static MATRIX: OnceLock<RelationMatrix> = OnceLock::new();
    MATRIX.get_or_init(RelationMatrix::build)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lc(code: &str) -> LanguageClass {
        LanguageClass::parse(code).unwrap()
    }

    #[test]
    fn rows_have_full_width() {
        let m = relation_matrix();
        assert!(m.pair_rows.iter().all(|(_, cells)| cells.len() == 15));
        assert!(m
            .conventional_rows
            .iter()
            .all(|(_, cells)| cells.len() == 16));
    }

    #[test]
    fn sample_cells() {
        let m = relation_matrix();
        assert_eq!(m.lookup(lc("33"), lc("3")).unwrap(), Relation::Equal);
        assert_eq!(
            m.lookup(lc("00"), lc("01")).unwrap(),
            Relation::ProperSuperset
        );
        assert_eq!(m.lookup(lc("23"), lc("32")).unwrap(), Relation::NotEqual);
        assert_eq!(
            m.lookup(lc("11"), lc("22")).unwrap(),
            Relation::SupersetOrEqual
        );
        assert_eq!(m.lookup(lc("2"), lc("23")).unwrap(), Relation::Equal);
        // Only the reverse is printed.
        assert_eq!(
            m.lookup(lc("01"), lc("00")).unwrap(),
            Relation::ProperSubset
        );
        assert_eq!(
            m.lookup(lc("00"), lc("0")).unwrap(),
            Relation::ProperSuperset
        );
    }

    #[test]
    fn unprinted_pairs_are_errors() {
        let m = relation_matrix();
        assert!(matches!(
            m.lookup(lc("00"), lc("00")),
            Err(Error::UnknownPair(..))
        ));
        assert!(matches!(
            m.lookup(lc("1"), lc("2")),
            Err(Error::UnknownPair(..))
        ));
        assert!(LanguageClass::parse("4").is_none());
    }
}
