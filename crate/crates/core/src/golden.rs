//! Reference data: the published cyclic orders (raw and simplified) under the
//! published labels, the headline numbers, and the correspondence between our
//! ids and those labels.
//!
//! White labels are `1`…`23`; black labels are `1`…`22` with primed partners
//! (`1'`), 40 in all.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orders::{CyclicWord, WordTables};

const TABLE_1: &[(&str, &str)] = &[
    ("1", "17,1',17,4',4'"),
    ("2", "12',3',3',12',3',3'"),
    ("3", "12',13,2,6',6'"),
    ("4", "2,13,12',18,18"),
    ("5", "5,4,5',4'"),
    ("6", "5',5,5',5"),
    ("7", "15',8',8',15',19,13,3'"),
    ("8", "22',11,2,17,10',9"),
    ("9", "6',5,6,9',7,9"),
    ("10", "10',7,10,18',5',18"),
    ("11", "21,1',1',21,1,1"),
    ("12", "17',1,17',4,4"),
    ("13", "14',14',22,11',10',9,15'"),
    ("14", "11',22,9',10,17',2'"),
    ("15", "22,11',21,11,22',20"),
    ("16", "20,19,19,20,19',19'"),
    ("17", "6,6,12,13',2'"),
    ("18", "2',13',12,18',18'"),
    ("19", "16,8,7,8',16,8,7,8'"),
    ("20", "14,14,22',11,10,9',15"),
    ("21", "16,14',14',16,16,16,14,14"),
    ("22", "8,8,15,19',13',3,15"),
    ("23", "12,3,3,12,3,3"),
];

const TABLE_2: &[(&str, &str)] = &[
    ("1", "11,11,12"),
    ("1'", "11,11,1"),
    ("2", "8,4,3"),
    ("2'", "14,18,17"),
    ("3", "22,23,23"),
    ("3'", "2,2,7"),
    ("4", "12,12,5"),
    ("4'", "1,1,5"),
    ("5", "9,6,5"),
    ("5'", "10,5,6"),
    ("6", "17,17,9"),
    ("6'", "3,3,9"),
    ("7", "19,9,10"),
    ("8", "19,22,22"),
    ("8'", "19,7,7"),
    ("9", "13,8,9"),
    ("9'", "20,14,9"),
    ("10", "20,10,14"),
    ("10'", "13,10,8"),
    ("11", "20,15,8"),
    ("11'", "13,15,14"),
    ("12", "23,18,17"),
    ("12'", "2,4,3"),
    ("13", "7,3,4"),
    ("13'", "22,17,18"),
    ("14", "21,20,20"),
    ("14'", "21,13,13"),
    ("15", "20,22,22"),
    ("15'", "13,7,7"),
    ("16", "19,21,21"),
    ("17", "8,1,1"),
    ("17'", "14,12,12"),
    ("18", "10,4,4"),
    ("18'", "10,18,18"),
    ("19", "7,16,16"),
    ("19'", "22,16,16"),
    ("20", "15,16,16"),
    ("21", "15,11,11"),
    ("22", "13,14,15"),
    ("22'", "20,8,15"),
];

const TABLE_3: &[(&str, &str)] = &[
    ("1", "17,1',17,4'"),
    ("2", "3',12'"),
    ("3", "12',13,2,6'"),
    ("4", "2,13,12',18"),
    ("5", "5,4,5',4'"),
    ("6", "5',5"),
    ("7", "15',8',15',19,13,3'"),
    ("8", "22',11,2,17,10',9"),
    ("9", "6',5,6,9',7,9"),
    ("10", "10',7,10,18',5',18"),
    ("11", "21,1',21,1"),
    ("12", "17',1,17',4"),
    ("13", "14',22,11',10',9,15'"),
    ("14", "11',22,9',10,17',2'"),
    ("15", "22,11',21,11,22',20"),
    ("16", "20,19,20,19'"),
    ("17", "6,12,13',2'"),
    ("18", "2',13',12,18'"),
    ("19", "16,8,7,8'"),
    ("20", "14,22',11,10,9',15"),
    ("21", "16,14',16,14"),
    ("22", "8,15,19',13',3,15"),
    ("23", "3,12"),
];

const TABLE_4: &[(&str, &str)] = &[
    ("1", "11,12"),
    ("1'", "11,1"),
    ("2", "8,4,3"),
    ("2'", "14,18,17"),
    ("3", "22,23"),
    ("3'", "2,7"),
    ("4", "12,5"),
    ("4'", "1,5"),
    ("5", "9,6,5"),
    ("5'", "10,5,6"),
    ("6", "17,9"),
    ("6'", "3,9"),
    ("7", "19,9,10"),
    ("8", "19,22"),
    ("8'", "19,7"),
    ("9", "13,8,9"),
    ("9'", "20,14,9"),
    ("10", "20,10,14"),
    ("10'", "13,10,8"),
    ("11", "20,15,8"),
    ("11'", "13,15,14"),
    ("12", "23,18,17"),
    ("12'", "2,4,3"),
    ("13", "7,3,4"),
    ("13'", "22,17,18"),
    ("14", "21,20"),
    ("14'", "21,13"),
    ("15", "20,22,22"),
    ("15'", "13,7,7"),
    ("16", "19,21,21"),
    ("17", "8,1,1"),
    ("17'", "14,12,12"),
    ("18", "10,4"),
    ("18'", "10,18"),
    ("19", "7,16"),
    ("19'", "22,16"),
    ("20", "15,16,16"),
    ("21", "15,11,11"),
    ("22", "13,14,15"),
    ("22'", "20,8,15"),
];

fn rows(table: &[(&str, &str)]) -> Vec<(String, CyclicWord)> {
    table
        .iter()
        .map(|(label, word)| {
            (
                label.to_string(),
                CyclicWord::parse(word).expect("fixture words are well formed"),
            )
        })
        .collect()
}

/// The published raw cyclic orders (white rows from the first table, black
/// rows from the second).
pub fn raw_tables() -> WordTables {
    WordTables {
        white: rows(TABLE_1),
        black: rows(TABLE_2),
        reduced: false,
    }
}

/// The published simplified cyclic orders.
pub fn reduced_tables() -> WordTables {
    WordTables {
        white: rows(TABLE_3),
        black: rows(TABLE_4),
        reduced: true,
    }
}

/// Table `which` (1 to 4) as rows.
pub fn table(which: u8) -> Option<Vec<(String, CyclicWord)>> {
    match which {
        1 => Some(rows(TABLE_1)),
        2 => Some(rows(TABLE_2)),
        3 => Some(rows(TABLE_3)),
        4 => Some(rows(TABLE_4)),
        _ => None,
    }
}

/// Headline numbers to check a run against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub m33: usize,
    pub m446: usize,
    pub forks: usize,
    pub faces: Vec<usize>,
    pub genus: Vec<i64>,
}

impl Default for Expectations {
    fn default() -> Self {
        Expectations {
            m33: 23,
            m446: 40,
            forks: 14,
            faces: vec![7, 9],
            genus: vec![17, 18],
        }
    }
}

/// Our ids to published labels, per side.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub white: BTreeMap<String, String>,
    pub black: BTreeMap<String, String>,
}

impl Correspondence {
    /// Parses `our_id,label` lines. Ids starting with `W` are white and
    /// `B` black; blank lines and `#` comments are skipped.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut out = Correspondence::default();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let [ours, label] = fields[..] else {
                return Err(Error::Parse(format!(
                    "line {line_no}: expected `our_id,label`, got {line:?}"
                )));
            };
            if label.is_empty() {
                return Err(Error::Parse(format!("line {line_no}: empty published label")));
            }
            let side = match ours.chars().next() {
                Some('W') => &mut out.white,
                Some('B') => &mut out.black,
                _ => {
                    return Err(Error::Parse(format!(
                        "line {line_no}: id {ours:?} is neither white (W..) nor black (B..)"
                    )))
                }
            };
            if side.insert(ours.to_string(), label.to_string()).is_some() {
                return Err(Error::Parse(format!("line {line_no}: {ours} listed twice")));
            }
        }
        out.check_bijective()?;
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (ours, label) in self.white.iter().chain(&self.black) {
            s.push_str(&format!("{ours},{label}\n"));
        }
        s
    }

    pub fn check_bijective(&self) -> Result<()> {
        for (side, map) in [("white", &self.white), ("black", &self.black)] {
            let mut seen = BTreeMap::new();
            for (ours, label) in map {
                if let Some(prev) = seen.insert(label, ours) {
                    return Err(Error::Parse(format!(
                        "{side} label {label} is assigned to both {prev} and {ours}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Correspondence {
        let flip = |m: &BTreeMap<String, String>| m.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        Correspondence {
            white: flip(&self.white),
            black: flip(&self.black),
        }
    }

    /// Renames tables labelled by our ids into published labels.
    pub fn apply(&self, tables: &WordTables) -> WordTables {
        tables.relabel(&|l| self.white.get(l).cloned(), &|l| self.black.get(l).cloned())
    }
}

/// Everything a comparison run needs, in one file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenBundle {
    pub raw: WordTables,
    pub reduced: WordTables,
    #[serde(default)]
    pub correspondence: Option<Correspondence>,
    #[serde(default)]
    pub expectations: Expectations,
}

impl GoldenBundle {
    /// The built-in transcription of the published tables.
    pub fn published() -> Self {
        GoldenBundle {
            raw: raw_tables(),
            reduced: reduced_tables(),
            correspondence: None,
            expectations: Expectations::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bundle: GoldenBundle =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("golden bundle: {e}")))?;
        if let Some(c) = &bundle.correspondence {
            c.check_bijective()?;
        }
        Ok(bundle)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcription_spot_checks() {
        let raw = raw_tables();
        assert_eq!(raw.white.len(), 23);
        assert_eq!(raw.black.len(), 40);
        assert_eq!(
            raw.white_word("19").unwrap().to_string(),
            "16,8,7,8',16,8,7,8'"
        );
        assert_eq!(raw.white_word("5").unwrap().to_string(), "5,4,5',4'");
        assert_eq!(raw.black_word("3").unwrap().to_string(), "22,23,23");
        assert_eq!(raw.black_word("4'").unwrap().to_string(), "1,1,5");
        let red = reduced_tables();
        assert_eq!(red.white_word("1").unwrap().to_string(), "17,1',17,4'");
        assert_eq!(red.white_word("16").unwrap().to_string(), "20,19,20,19'");
        assert_eq!(red.black_word("17").unwrap().to_string(), "8,1,1");
    }

    #[test]
    fn labels_are_distinct_per_side() {
        for t in [raw_tables(), reduced_tables()] {
            let mut w: Vec<_> = t.white.iter().map(|r| &r.0).collect();
            let mut b: Vec<_> = t.black.iter().map(|r| &r.0).collect();
            w.sort();
            w.dedup();
            b.sort();
            b.dedup();
            assert_eq!((w.len(), b.len()), (23, 40));
        }
    }

    #[test]
    fn table_lengths() {
        let sum = |rows: &[(String, CyclicWord)]| rows.iter().map(|r| r.1.len()).sum::<usize>();
        assert_eq!(sum(&table(1).unwrap()), 136);
        assert_eq!(sum(&table(2).unwrap()), 120);
        assert_eq!(sum(&table(3).unwrap()), 104);
        assert_eq!(sum(&table(4).unwrap()), 104);
        let t4 = table(4).unwrap();
        assert_eq!(t4.iter().filter(|r| r.1.len() == 2).count(), 16);
        assert_eq!(t4.iter().filter(|r| r.1.len() == 3).count(), 24);
        assert!(table(5).is_none());
    }

    #[test]
    fn correspondence_parsing() {
        let c = Correspondence::parse_csv("# ours,published\nW01,1\nB01,4'\n\n").unwrap();
        assert_eq!(c.white["W01"], "1");
        assert_eq!(c.black["B01"], "4'");
        assert_eq!(Correspondence::parse_csv(&c.to_csv()).unwrap(), c);
        let err = Correspondence::parse_csv("W01,1\nW02\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = Correspondence::parse_csv("W01,1\nW02,1\n").unwrap_err();
        assert!(err.to_string().contains("both"), "{err}");
        assert!(Correspondence::parse_csv("X1,1").is_err());
    }

    #[test]
    fn bundle_round_trip() {
        let b = GoldenBundle::published();
        assert_eq!(GoldenBundle::from_json(&b.to_json()).unwrap(), b);
    }
}
