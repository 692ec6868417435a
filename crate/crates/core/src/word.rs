//! Words over small digit alphabets, plus border and period primitives.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter is stored as its digit value, so the ternary alphabet is `{0, 1, 2}`.
pub type Letter = u8;

/// An alphabet `{0, 1, ..., size - 1}` of at most ten digit letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet { size: 2 };
    pub const TERNARY: Alphabet = Alphabet { size: 3 };

    pub fn new(size: u8) -> Result<Self> {
        if (1..=10).contains(&size) {
            Ok(Alphabet { size })
        } else {
            Err(Error::Range(format!(
                "alphabet size must be within 1..=10, got {size}"
            )))
        }
    }

    pub fn size(self) -> u8 {
        self.size
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter < self.size
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        0..self.size
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::TERNARY
    }
}

/// A finite word. Serialises as a plain digit string such as `"012021"`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    /// Wraps raw letters without checking them against an alphabet.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Parses a digit string, rejecting characters outside `alphabet`.
    /// The reported index is 1-based.
    pub fn parse(s: &str, alphabet: Alphabet) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, ch)| match ch.to_digit(10) {
                Some(d) if alphabet.contains(d as u8) => Ok(d as u8),
                _ => Err(Error::InvalidLetter {
                    index: i + 1,
                    ch,
                    alphabet: alphabet.size(),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// The letter `w[i]`, 1-based.
    pub fn letter(&self, i: usize) -> Option<Letter> {
        i.checked_sub(1).and_then(|k| self.0.get(k).copied())
    }

    /// The factor `w[i..j]`, 1-based and inclusive; empty when `i = j + 1`.
    pub fn factor(&self, i: usize, j: usize) -> Result<Word> {
        if i == 0 || i > j + 1 || j > self.len() {
            return Err(Error::InvalidFactor {
                i,
                j,
                len: self.len(),
            });
        }
        Ok(Word(self.0[i - 1..j].to_vec()))
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn is_ternary(&self) -> bool {
        self.0.iter().all(|&a| Alphabet::TERNARY.contains(a))
    }

    /// Fails with [`Error::Alphabet`] on the first non-ternary letter.
    pub fn check_ternary(&self) -> Result<()> {
        match self.0.iter().position(|&a| !Alphabet::TERNARY.contains(a)) {
            Some(k) => Err(Error::Alphabet {
                index: k + 1,
                letter: self.0[k],
            }),
            None => Ok(()),
        }
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// 1-based start of the first occurrence of `needle` beginning at or after
    /// `from` (also 1-based). Naive sliding comparison.
    pub fn find_from(&self, needle: &Word, from: usize) -> Option<usize> {
        let from = from.max(1);
        if needle.len() > self.len() {
            return None;
        }
        (from - 1..=self.len() - needle.len())
            .find(|&k| self.0[k..k + needle.len()] == needle.0[..])
            .map(|k| k + 1)
    }

    pub fn find(&self, needle: &Word) -> Option<usize> {
        self.find_from(needle, 1)
    }

    pub fn contains_factor(&self, needle: &Word) -> bool {
        self.find(needle).is_some()
    }

    /// 1-based start indices of every occurrence of `needle`, overlapping ones included.
    pub fn occurrences(&self, needle: &Word) -> Vec<usize> {
        if needle.is_empty() || needle.len() > self.len() {
            return Vec::new();
        }
        self.0
            .windows(needle.len())
            .enumerate()
            .filter(|(_, window)| *window == needle.letters())
            .map(|(k, _)| k + 1)
            .collect()
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses over the default ternary alphabet.
    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s, Alphabet::TERNARY)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s, Alphabet::new(10).expect("decimal alphabet"))
            .map_err(serde::de::Error::custom)
    }
}

/// Failure function: entry `i` (0-based) is the length of the longest proper
/// border of the prefix of length `i + 1`.
pub fn border_array(w: &Word) -> Vec<usize> {
    let s = w.letters();
    let mut border = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = border[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        border[i] = k;
    }
    border
}

/// The minimal period `per(w)`, i.e. `|w|` minus the longest proper border.
pub fn global_period(w: &Word) -> Result<usize> {
    match border_array(w).last() {
        Some(&b) => Ok(w.len() - b),
        None => Err(Error::EmptyWord),
    }
}

pub fn is_unbordered(w: &Word) -> Result<bool> {
    Ok(global_period(w)? == w.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Longest proper border by comparing every prefix/suffix pair.
    fn brute_border(s: &[u8]) -> usize {
        (0..s.len())
            .rev()
            .find(|&b| s[..b] == s[s.len() - b..])
            .unwrap_or(0)
    }

    #[test]
    fn border_array_examples() {
        assert_eq!(border_array(&w("010")), vec![0, 0, 1]);
        assert_eq!(border_array(&w("012")), vec![0, 0, 0]);
        // longest border "01" (brute force)
        let sample = w("0120210121021201");
        assert_eq!(brute_border(sample.letters()), 2);
        assert_eq!(*border_array(&sample).last().unwrap(), 2);
        // the actual length-16 prefix of m has border "0120"
        let m16 = w("0120210121020120");
        assert_eq!(brute_border(m16.letters()), 4);
        assert_eq!(*border_array(&m16).last().unwrap(), 4);
        assert!(border_array(&Word::new()).is_empty());
    }

    #[test]
    fn global_period_examples() {
        assert_eq!(global_period(&w("0120201202021021021")).unwrap(), 19);
        assert_eq!(global_period(&w("00")).unwrap(), 1);
        assert_eq!(global_period(&w("0120")).unwrap(), 3);
        assert_eq!(global_period(&Word::new()), Err(Error::EmptyWord));
    }

    #[test]
    fn unbordered_examples() {
        assert!(is_unbordered(&w("01020120210201021")).unwrap());
        assert!(!is_unbordered(&w("010")).unwrap());
        assert!(is_unbordered(&w("012021012102012021020121")).unwrap());
        assert!(is_unbordered(&Word::new()).is_err());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(w("012").reverse(), w("210"));
        assert_eq!(Word::new().reverse(), Word::new());
    }

    #[test]
    fn parse_rejects_foreign_letters() {
        assert_eq!(
            "0130".parse::<Word>(),
            Err(Error::InvalidLetter {
                index: 3,
                ch: '3',
                alphabet: 3
            })
        );
        assert_eq!(
            Word::parse("01x", Alphabet::BINARY),
            Err(Error::InvalidLetter {
                index: 3,
                ch: 'x',
                alphabet: 2
            })
        );
        assert!(Word::parse("0101", Alphabet::BINARY).is_ok());
        assert_eq!(w("").to_string(), "");
        assert_eq!(w("2101").to_string(), "2101");
    }

    #[test]
    fn factor_bounds() {
        let x = w("01202");
        assert_eq!(x.factor(2, 4).unwrap(), w("120"));
        assert_eq!(x.factor(3, 2).unwrap(), Word::new());
        assert_eq!(x.factor(6, 5).unwrap(), Word::new());
        assert!(x.factor(0, 1).is_err());
        assert!(x.factor(4, 2).is_err());
        assert!(x.factor(2, 6).is_err());
        assert_eq!(x.letter(1), Some(0));
        assert_eq!(x.letter(0), None);
        assert_eq!(x.letter(6), None);
    }

    #[test]
    fn search_helpers() {
        let x = w("0120210");
        assert_eq!(x.find(&w("21")), Some(5));
        assert_eq!(x.find_from(&w("0"), 2), Some(4));
        assert_eq!(x.find(&w("11")), None);
        assert_eq!(w("01010").occurrences(&w("010")), vec![1, 3]);
    }

    #[test]
    fn exhaustive_period_properties() {
        // Every ternary word up to length 9 against brute-force periods.
        for n in 1..=9u32 {
            for code in 0..3usize.pow(n) {
                let mut c = code;
                let letters: Vec<u8> = (0..n)
                    .map(|_| {
                        let a = (c % 3) as u8;
                        c /= 3;
                        a
                    })
                    .collect();
                let word = Word::from_letters(letters.clone());
                let per = global_period(&word).unwrap();
                assert!(1 <= per && per <= word.len());
                assert!((0..word.len() - per).all(|i| letters[i] == letters[i + per]));
                assert!((1..per).all(|q| (0..word.len() - q).any(|i| letters[i] != letters[i + q])));
                assert_eq!(per, word.len() - brute_border(&letters));
                assert_eq!(word.reverse().reverse(), word);
            }
        }
    }
}
