//! Cyclic words of class labels and the two reduction rules applied to them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::de::Deserializer;
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cyclic sequence of labels. Equality ignores rotation but not reflection.
#[derive(Clone, Default)]
pub struct CyclicWord {
    letters: Vec<String>,
}

impl CyclicWord {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Self {
        CyclicWord {
            letters: letters.into_iter().map(Into::into).collect(),
        }
    }

    /// Parses `"17,1',17,4'"`. Whitespace around letters is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(CyclicWord::default());
        }
        let letters: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
        if letters.iter().any(String::is_empty) {
            return Err(Error::Parse(format!("empty letter in word {text:?}")));
        }
        Ok(CyclicWord { letters })
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rotated(&self, k: usize) -> CyclicWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        CyclicWord { letters }
    }

    /// The lexicographically least rotation.
    pub fn least_rotation(&self) -> CyclicWord {
        (0..self.len().max(1))
            .map(|k| self.rotated(k))
            .min_by(|a, b| a.letters.cmp(&b.letters))
            .unwrap_or_default()
    }

    /// Letters sorted, i.e. the word as a multiset.
    pub fn multiset(&self) -> Vec<String> {
        let mut m = self.letters.clone();
        m.sort();
        m
    }

    /// Rotation-invariant pattern of repeats: letters are renamed by first
    /// occurrence and the least rotation of the result is kept, so
    /// `"22,23,23"` and `"1,1,5"` share the shape `[0, 0, 1]`.
    pub fn shape(&self) -> Vec<usize> {
        (0..self.len())
            .map(|k| {
                let r = self.rotated(k);
                let mut seen: Vec<&str> = Vec::new();
                r.letters
                    .iter()
                    .map(|l| match seen.iter().position(|s| s == l) {
                        Some(i) => i,
                        None => {
                            seen.push(l);
                            seen.len() - 1
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_default()
    }

    pub fn count(&self, letter: &str) -> usize {
        self.letters.iter().filter(|l| *l == letter).count()
    }

    /// Whether two cyclically consecutive letters both equal `letter`.
    pub fn has_adjacent_pair(&self, letter: &str) -> bool {
        let n = self.len();
        n >= 2
            && (0..n).any(|i| self.letters[i] == letter && self.letters[(i + 1) % n] == letter)
    }

    /// Renames letters; unknown letters are kept as they are.
    pub fn map_letters(&self, f: impl Fn(&str) -> Option<String>) -> CyclicWord {
        CyclicWord {
            letters: self
                .letters
                .iter()
                .map(|l| f(l).unwrap_or_else(|| l.clone()))
                .collect(),
        }
    }

    /// Maximal runs of equal letters, read cyclically, as `(letter, length)`.
    /// The first run starts right after a letter change.
    fn cyclic_runs(&self) -> Vec<(String, usize)> {
        let n = self.len();
        if n == 0 {
            return Vec::new();
        }
        let start = match (0..n).find(|&i| self.letters[i] != self.letters[(i + n - 1) % n]) {
            Some(s) => s,
            None => return vec![(self.letters[0].clone(), n)],
        };
        let mut runs: Vec<(String, usize)> = Vec::new();
        for k in 0..n {
            let l = &self.letters[(start + k) % n];
            match runs.last_mut() {
                Some((last, len)) if last == l => *len += 1,
                _ => runs.push((l.clone(), 1)),
            }
        }
        runs
    }

    fn primitive_period(&self) -> CyclicWord {
        let n = self.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (0..n).all(|i| self.letters[i] == self.letters[(i + p) % n]) {
                return CyclicWord {
                    letters: self.letters[..p].to_vec(),
                };
            }
        }
        self.clone()
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && (0..self.len().max(1)).any(|k| self.rotated(k).letters == other.letters)
    }
}

impl Eq for CyclicWord {}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters.join(","))
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclicWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(CyclicWord {
            letters: Vec::deserialize(d)?,
        })
    }
}

/// Which steps [`reduce_white_word`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WhiteReduction {
    pub collapse_runs: bool,
    pub primitive_period: bool,
}

impl Default for WhiteReduction {
    fn default() -> Self {
        WhiteReduction {
            collapse_runs: true,
            primitive_period: true,
        }
    }
}

/// Which runs [`reduce_black_word`] collapses. Every rule only ever shortens
/// a run of equal letters to a single letter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BlackReduction {
    /// Collapse the run of `u` when the black word holds `u` more often than
    /// the reduced white word of `u` holds this black label.
    #[default]
    MatchReducedWhite,
    /// Collapse `u,u` only if `u`'s raw word also has this label twice in a row.
    MutualAdjacency,
    /// Collapse every run.
    AllRuns,
    /// Leave black words untouched.
    None,
}

pub fn reduce_white_word(w: &CyclicWord) -> CyclicWord {
    reduce_white_word_with(w, WhiteReduction::default())
}

pub fn reduce_white_word_with(w: &CyclicWord, rule: WhiteReduction) -> CyclicWord {
    let mut out = w.clone();
    if rule.collapse_runs {
        out = CyclicWord::new(out.cyclic_runs().into_iter().map(|(l, _)| l));
    }
    if rule.primitive_period {
        out = out.primitive_period();
    }
    out
}

/// Collapses runs of the black word `b` (labelled `label`) according to the
/// raw white words in `white_raw`.
pub fn reduce_black_word(
    b: &CyclicWord,
    label: &str,
    white_raw: &impl Fn(&str) -> Option<CyclicWord>,
) -> CyclicWord {
    reduce_black_word_with(b, label, white_raw, BlackReduction::default())
}

pub fn reduce_black_word_with(
    b: &CyclicWord,
    label: &str,
    white_raw: &impl Fn(&str) -> Option<CyclicWord>,
    rule: BlackReduction,
) -> CyclicWord {
    let mut letters = Vec::with_capacity(b.len());
    for (letter, len) in b.cyclic_runs() {
        let collapse = len >= 2
            && match rule {
                BlackReduction::MatchReducedWhite => white_raw(&letter)
                    .map(|w| reduce_white_word(&w).count(label) < b.count(&letter))
                    .unwrap_or(false),
                BlackReduction::MutualAdjacency => white_raw(&letter)
                    .map(|w| w.has_adjacent_pair(label))
                    .unwrap_or(false),
                BlackReduction::AllRuns => true,
                BlackReduction::None => false,
            };
        let keep = if collapse { 1 } else { len };
        letters.extend(std::iter::repeat_n(letter, keep));
    }
    CyclicWord { letters }
}

/// Sort key for labels like `7`, `12'` or `W03`: prefix, number, suffix.
pub fn label_order(a: &str, b: &str) -> Ordering {
    fn key(s: &str) -> (&str, u64, &str) {
        let start = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let end = s[start..]
            .find(|c: char| !c.is_ascii_digit())
            .map(|i| start + i)
            .unwrap_or(s.len());
        (&s[..start], s[start..end].parse().unwrap_or(0), &s[end..])
    }
    key(a).cmp(&key(b)).then_with(|| a.cmp(b))
}

/// White rows (words over black labels) and black rows (words over white
/// labels), each in row order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordTables {
    pub white: Vec<(String, CyclicWord)>,
    pub black: Vec<(String, CyclicWord)>,
    /// Whether the reduction rules have already been applied.
    pub reduced: bool,
}

impl WordTables {
    pub fn white_word(&self, label: &str) -> Option<&CyclicWord> {
        self.white.iter().find(|(l, _)| l == label).map(|(_, w)| w)
    }

    pub fn black_word(&self, label: &str) -> Option<&CyclicWord> {
        self.black.iter().find(|(l, _)| l == label).map(|(_, w)| w)
    }

    /// Applies the white and black reductions; black runs are judged against
    /// these (raw) white words.
    pub fn reduce(&self) -> WordTables {
        self.reduce_with(WhiteReduction::default(), BlackReduction::default())
    }

    pub fn reduce_with(&self, white_rule: WhiteReduction, black_rule: BlackReduction) -> WordTables {
        let lookup = |l: &str| self.white_word(l).cloned();
        WordTables {
            white: self
                .white
                .iter()
                .map(|(l, w)| (l.clone(), reduce_white_word_with(w, white_rule)))
                .collect(),
            black: self
                .black
                .iter()
                .map(|(l, w)| (l.clone(), reduce_black_word_with(w, l, &lookup, black_rule)))
                .collect(),
            reduced: true,
        }
    }

    /// Words as the census wants them: reduced once, unless already reduced.
    pub fn for_census(&self) -> WordTables {
        if self.reduced {
            self.clone()
        } else {
            self.reduce()
        }
    }

    /// Renames row labels and letters through the two maps (white labels,
    /// black labels); labels missing from a map are kept.
    pub fn relabel(
        &self,
        white: &impl Fn(&str) -> Option<String>,
        black: &impl Fn(&str) -> Option<String>,
    ) -> WordTables {
        let mut out = WordTables {
            white: self
                .white
                .iter()
                .map(|(l, w)| (white(l).unwrap_or_else(|| l.clone()), w.map_letters(black)))
                .collect(),
            black: self
                .black
                .iter()
                .map(|(l, w)| (black(l).unwrap_or_else(|| l.clone()), w.map_letters(white)))
                .collect(),
            reduced: self.reduced,
        };
        out.white.sort_by(|a, b| label_order(&a.0, &b.0));
        out.black.sort_by(|a, b| label_order(&a.0, &b.0));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn from_json(text: &str) -> Result<WordTables> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("tables JSON: {e}")))
    }
}

struct Rows<'a>(&'a [(String, CyclicWord)]);

impl Serialize for Rows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (label, word) in self.0 {
            map.serialize_entry(label, word)?;
        }
        map.end()
    }
}

impl Serialize for WordTables {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WordTables", 3)?;
        st.serialize_field("reduced", &self.reduced)?;
        st.serialize_field("white", &Rows(&self.white))?;
        st.serialize_field("black", &Rows(&self.black))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct TablesFile {
    #[serde(default)]
    reduced: bool,
    #[serde(default)]
    white: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    black: BTreeMap<String, Vec<String>>,
}

impl<'de> Deserialize<'de> for WordTables {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = TablesFile::deserialize(d)?;
        let rows = |m: BTreeMap<String, Vec<String>>| {
            let mut v: Vec<(String, CyclicWord)> =
                m.into_iter().map(|(l, w)| (l, CyclicWord::new(w))).collect();
            v.sort_by(|a, b| label_order(&a.0, &b.0));
            v
        };
        Ok(WordTables {
            white: rows(file.white),
            black: rows(file.black),
            reduced: file.reduced,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CyclicWord {
        CyclicWord::parse(s).unwrap()
    }

    #[test]
    fn equality_is_up_to_rotation_only() {
        assert_eq!(w("a,b,c"), w("c,a,b"));
        assert_ne!(w("a,b,c"), w("a,c,b"));
        assert_ne!(w("a,b"), w("a,b,a"));
        assert_eq!(CyclicWord::default(), w(""));
    }

    #[test]
    fn shapes() {
        assert_eq!(w("22,23,23").shape(), w("1,1,5").shape());
        assert_eq!(w("22,23,23").shape(), vec![0, 0, 1]);
        assert_eq!(w("13,14,15").shape(), vec![0, 1, 2]);
        assert_eq!(w("b,a,a").shape(), w("a,b,a").shape());
    }

    #[test]
    fn white_reduction_examples() {
        assert_eq!(reduce_white_word(&w("17,1',17,4',4'")), w("17,1',17,4'"));
        assert_eq!(reduce_white_word(&w("12',3',3',12',3',3'")), w("3',12'"));
        assert_eq!(reduce_white_word(&w("5',5,5',5")), w("5',5"));
        assert_eq!(reduce_white_word(&w("4',17,1',17,4'")), w("17,1',17,4'"));
        assert_eq!(reduce_white_word(&w("x,x,x")), w("x"));
    }

    #[test]
    fn white_reduction_steps_can_be_switched_off() {
        let only_runs = WhiteReduction {
            collapse_runs: true,
            primitive_period: false,
        };
        assert_eq!(
            reduce_white_word_with(&w("12',3',3',12',3',3'"), only_runs),
            w("12',3',12',3'")
        );
    }

    #[test]
    fn black_reduction_examples() {
        let white = |l: &str| match l {
            "1" => Some(w("17,1',17,4',4'")),
            "2" => Some(w("12',3',3',12',3',3'")),
            _ => None,
        };
        assert_eq!(reduce_black_word(&w("1,1,5"), "4'", &white), w("1,5"));
        assert_eq!(reduce_black_word(&w("8,1,1"), "17", &white), w("8,1,1"));
        assert_eq!(reduce_black_word(&w("2,2,7"), "3'", &white), w("2,7"));
        assert_eq!(
            reduce_black_word_with(&w("8,1,1"), "17", &white, BlackReduction::AllRuns),
            w("8,1")
        );
    }

    #[test]
    fn rules_disagree_on_a_run_of_three() {
        let white = |l: &str| (l == "21").then(|| w("16,14',14',16,16,16,14,14"));
        let b = w("19,21,21");
        assert_eq!(reduce_black_word(&b, "16", &white), b);
        assert_eq!(
            reduce_black_word_with(&b, "16", &white, BlackReduction::MutualAdjacency),
            w("19,21")
        );
    }

    #[test]
    fn label_ordering() {
        let mut v = vec!["10", "2'", "1'", "2", "1", "W10", "W02"];
        v.sort_by(|a, b| label_order(a, b));
        assert_eq!(v, ["1", "1'", "2", "2'", "10", "W02", "W10"]);
    }

    #[test]
    fn tables_json_round_trip() {
        let t = WordTables {
            white: vec![("1".into(), w("17,1',17,4'")), ("2".into(), w("3',12'"))],
            black: vec![("4'".into(), w("1,5"))],
            reduced: true,
        };
        let back = WordTables::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let bare = WordTables::from_json(r#"{"white": {"1": ["a"]}, "black": {}}"#).unwrap();
        assert!(!bare.reduced);
    }
}
