//! Chord diagrams: a circle with one chord per crossing node, plus a count of
//! solitary nodes. Words list chord labels in circular order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed chord word {0:?}: every label must appear exactly twice")]
    MalformedWord(String),
    #[error("cannot parse diagram text {0:?}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    word: Vec<u8>,
    solitary: usize,
}

impl ChordDiagram {
    /// Validate a word (labels arbitrary small integers, each exactly twice).
    pub fn new(word: Vec<u8>, solitary: usize) -> Result<Self, DiagramError> {
        let mut counts = std::collections::BTreeMap::new();
        for &c in &word {
            *counts.entry(c).or_insert(0usize) += 1;
        }
        if counts.values().any(|&n| n != 2) {
            return Err(DiagramError::MalformedWord(render_word(&word)));
        }
        Ok(Self { word, solitary })
    }

    pub fn from_word(word: &str, solitary: usize) -> Result<Self, DiagramError> {
        let labels: Option<Vec<u8>> = word.chars().map(|c| c.to_digit(36).map(|d| d as u8)).collect();
        let labels = labels.ok_or_else(|| DiagramError::MalformedWord(word.to_string()))?;
        Self::new(labels, solitary)
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn chord_count(&self) -> usize {
        self.word.len() / 2
    }

    pub fn solitary_count(&self) -> usize {
        self.solitary
    }

    pub fn word_string(&self) -> String {
        render_word(&self.word)
    }

    /// Endpoint positions of each chord, chords in first-occurrence order.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let mut seen: Vec<(u8, usize)> = Vec::new();
        let mut out = Vec::new();
        for (pos, &c) in self.word.iter().enumerate() {
            match seen.iter().position(|(l, _)| *l == c) {
                Some(i) => out.push((seen[i].1, pos, i)),
                None => seen.push((c, pos)),
            }
        }
        out.sort_by_key(|&(_, _, i)| i);
        out.into_iter().map(|(a, b, _)| (a, b)).collect()
    }

    pub fn class_id(&self) -> ClassId {
        let c = canonicalize(self);
        ClassId { chord_count: c.chord_count(), canonical_word: c.word_string(), solitary: c.solitary }
    }
}

fn render_word(word: &[u8]) -> String {
    word.iter().map(|&d| std::char::from_digit(d as u32, 36).unwrap_or('?')).collect()
}

/// Relabel so labels appear as 1, 2, 3, ... in order of first occurrence.
fn first_occurrence_labels(word: &[u8]) -> Vec<u8> {
    let mut map: Vec<(u8, u8)> = Vec::new();
    word.iter()
        .map(|&c| match map.iter().find(|(from, _)| *from == c) {
            Some(&(_, to)) => to,
            None => {
                let to = map.len() as u8 + 1;
                map.push((c, to));
                to
            }
        })
        .collect()
}

/// Lexicographically least word over rotations, reflection and relabelings.
pub fn canonicalize(d: &ChordDiagram) -> ChordDiagram {
    let n = d.word.len();
    let mut best = first_occurrence_labels(&d.word);
    let reversed: Vec<u8> = d.word.iter().rev().copied().collect();
    for base in [&d.word, &reversed] {
        for r in 0..n {
            let rotated: Vec<u8> = base[r..].iter().chain(&base[..r]).copied().collect();
            let cand = first_occurrence_labels(&rotated);
            if cand < best {
                best = cand;
            }
        }
    }
    ChordDiagram { word: best, solitary: d.solitary }
}

/// Number of chord pairs whose endpoints interleave around the circle.
pub fn crossing_count(d: &ChordDiagram) -> usize {
    let chords = d.chords();
    let mut n = 0;
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            let (a, b) = chords[i];
            let (c, e) = chords[j];
            let inside = |x: usize| a < x && x < b;
            if inside(c) != inside(e) {
                n += 1;
            }
        }
    }
    n
}

pub fn diagrams_equal(a: &ChordDiagram, b: &ChordDiagram) -> bool {
    a.solitary == b.solitary && canonicalize(a) == canonicalize(b)
}

/// Rigid isotopy class label: chord count, canonical word and solitary count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    pub chord_count: usize,
    pub canonical_word: String,
    pub solitary: usize,
}

impl ClassId {
    pub fn diagram(&self) -> ChordDiagram {
        ChordDiagram::from_word(&self.canonical_word, self.solitary).expect("class words are valid")
    }

    pub fn crossings(&self) -> usize {
        crossing_count(&self.diagram())
    }

    /// The `word|sN` encoding.
    pub fn diagram_text(&self) -> String {
        format!("{}|s{}", self.canonical_word, self.solitary)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}|s{}", self.chord_count, self.canonical_word, self.solitary)
    }
}

impl FromStr for ClassId {
    type Err = DiagramError;

    /// Accepts `k-word|sN` or the bare diagram encoding `word|sN`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let body = match text.trim().split_once('-') {
            Some((k, rest)) => {
                let k: usize = k.parse().map_err(|_| DiagramError::Parse(text.to_string()))?;
                let d: ChordDiagram = rest.parse()?;
                if d.chord_count() != k {
                    return Err(DiagramError::Parse(text.to_string()));
                }
                d
            }
            None => text.parse()?,
        };
        Ok(body.class_id())
    }
}

impl FromStr for ChordDiagram {
    type Err = DiagramError;

    /// `word|sN`, case-insensitive.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let lower = text.trim().to_ascii_lowercase();
        let (word, sol) = lower.split_once('|').ok_or_else(|| DiagramError::Parse(text.to_string()))?;
        let sol = sol.strip_prefix('s').ok_or_else(|| DiagramError::Parse(text.to_string()))?;
        let sol: usize = sol.parse().map_err(|_| DiagramError::Parse(text.to_string()))?;
        ChordDiagram::from_word(word, sol)
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|s{}", self.word_string(), self.solitary)
    }
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ClassId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// All perfect matchings of `2k` circle points, as words in first-occurrence labels.
pub fn all_matchings(k: usize) -> Vec<Vec<u8>> {
    fn go(word: &mut Vec<u8>, next: u8, out: &mut Vec<Vec<u8>>) {
        let Some(first) = word.iter().position(|&c| c == 0) else {
            out.push(word.clone());
            return;
        };
        word[first] = next;
        for j in first + 1..word.len() {
            if word[j] == 0 {
                word[j] = next;
                go(word, next + 1, out);
                word[j] = 0;
            }
        }
        word[first] = 0;
    }
    let mut out = Vec::new();
    go(&mut vec![0; 2 * k], 1, &mut out);
    out
}

/// Every class with `k` chords and `total_nodes − k` solitary markers, `k = total..0`.
pub fn enumerate_all(total_nodes: usize) -> Vec<ClassId> {
    let mut out = Vec::new();
    for k in (0..=total_nodes).rev() {
        let classes: BTreeSet<ClassId> = all_matchings(k)
            .into_iter()
            .map(|w| ChordDiagram { word: w, solitary: total_nodes - k }.class_id())
            .collect();
        out.extend(classes);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(w: &str, s: usize) -> ChordDiagram {
        ChordDiagram::from_word(w, s).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize(&d("231231", 0)).word_string(), "123123");
        assert_eq!(canonicalize(&d("1122", 1)).word_string(), "1122");
        assert_eq!(canonicalize(&d("332211", 0)).word_string(), "112233");
        assert_eq!(canonicalize(&d("", 3)).word_string(), "");
    }

    #[test]
    fn malformed_words_are_rejected() {
        assert!(matches!(ChordDiagram::from_word("1123", 0), Err(DiagramError::MalformedWord(_))));
        assert!(matches!(ChordDiagram::from_word("111", 0), Err(DiagramError::MalformedWord(_))));
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(crossing_count(&d("112233", 0)), 0);
        assert_eq!(crossing_count(&d("123123", 0)), 3);
        assert_eq!(crossing_count(&d("1212", 1)), 1);
    }

    #[test]
    fn equality_examples() {
        assert!(diagrams_equal(&d("1212", 1), &d("2121", 1)));
        assert!(!diagrams_equal(&d("1122", 1), &d("1212", 1)));
        assert!(diagrams_equal(&d("", 3), &d("", 3)));
        assert!(!diagrams_equal(&d("11", 2), &d("11", 1)));
    }

    #[test]
    fn text_encoding() {
        let x: ChordDiagram = "121323|S0".parse().unwrap();
        assert_eq!(x.to_string(), "121323|s0");
        let c: ClassId = "2-2121|s1".parse().unwrap();
        assert_eq!(c.to_string(), "2-1212|s1");
        let e: ClassId = "0-|s3".parse().unwrap();
        assert_eq!(e.to_string(), "0-|s3");
        assert!("3-1212|s1".parse::<ClassId>().is_err());
        assert!("12|x1".parse::<ChordDiagram>().is_err());
    }

    #[test]
    fn fifteen_matchings_on_six_points() {
        assert_eq!(all_matchings(3).len(), 15);
        assert_eq!(all_matchings(2).len(), 3);
        assert_eq!(all_matchings(0).len(), 1);
    }

    #[test]
    fn zero_nodes_is_one_empty_class() {
        let all = enumerate_all(0);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].to_string(), "0-|s0");
    }
}
