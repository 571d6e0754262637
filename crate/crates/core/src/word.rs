//! Finite words over the non-negative integers.
//!
//! A [`Word`] is an immutable-by-convention sequence of [`Letter`]s. Slicing
//! follows Python conventions (negative indices count from the end, missing
//! bounds default to the whole word) but out-of-range bounds are rejected
//! instead of clamped.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

/// A single letter of the alphabet ℕ.
pub type Letter = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("slice bounds {start}..{end} out of range for word of length {len}")]
    SliceOutOfRange {
        start: isize,
        end: isize,
        len: usize,
    },
    #[error("operation requires a nonempty word")]
    Empty,
    #[error("cannot parse word from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundedClass {
    EvenGrounded,
    OddGrounded,
    NotGrounded,
}

/// Outcome of comparing two words letter by letter.
///
/// `Less`/`Greater` mean a differing index exists; the prefix cases cover
/// pairs the lexicographic partial order cannot compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexOrdering {
    Less,
    Greater,
    Equal,
    LeftIsPrefix,
    RightIsPrefix,
}

impl LexOrdering {
    /// The ordering obtained by swapping the two operands.
    pub fn reverse(self) -> Self {
        match self {
            LexOrdering::Less => LexOrdering::Greater,
            LexOrdering::Greater => LexOrdering::Less,
            LexOrdering::Equal => LexOrdering::Equal,
            LexOrdering::LeftIsPrefix => LexOrdering::RightIsPrefix,
            LexOrdering::RightIsPrefix => LexOrdering::LeftIsPrefix,
        }
    }
}

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_slice(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Parses the compact digit form, one letter per decimal digit.
    ///
    /// Panics on non-digit characters; meant for literals in code and tests.
    pub fn digits(s: &str) -> Self {
        Word(
            s.chars()
                .map(|c| c.to_digit(10).expect("digit word literal"))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from_slice(&mut self, letters: &[Letter]) {
        self.0.extend_from_slice(letters);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    /// Python-style slice `w[i:j]`.
    pub fn slice(&self, start: Option<isize>, end: Option<isize>) -> Result<Word, WordError> {
        let len = self.len();
        let resolve = |idx: isize| -> Option<usize> {
            let r = if idx < 0 { len as isize + idx } else { idx };
            (0..=len as isize).contains(&r).then_some(r as usize)
        };
        let s = start.map_or(Some(0), resolve);
        let e = end.map_or(Some(len), resolve);
        match (s, e) {
            (Some(s), Some(e)) if s <= e => Ok(Word::from_slice(&self.0[s..e])),
            _ => Err(WordError::SliceOutOfRange {
                start: start.unwrap_or(0),
                end: end.unwrap_or(len as isize),
                len,
            }),
        }
    }

    /// The first `n` letters, `w[:n]`. Panics if `n > |w|`.
    pub fn prefix(&self, n: usize) -> Word {
        Word::from_slice(&self.0[..n])
    }

    /// The last `n` letters, `w[-n:]`. Panics if `n > |w|`.
    pub fn suffix(&self, n: usize) -> Word {
        Word::from_slice(&self.0[self.len() - n..])
    }

    /// `w` with its final `n` letters removed, `w[:-n]`. Panics if `n > |w|`.
    pub fn drop_last(&self, n: usize) -> Word {
        self.prefix(self.len() - n)
    }

    /// `w⁺`: the last letter increased by one.
    pub fn successor(&self) -> Result<Word, WordError> {
        let mut v = self.0.clone();
        let last = v.last_mut().ok_or(WordError::Empty)?;
        *last += 1;
        Ok(Word(v))
    }

    pub fn grounded_class(&self) -> GroundedClass {
        let fits = |zero_parity: usize| {
            self.0
                .iter()
                .enumerate()
                .all(|(i, &l)| (i % 2 == zero_parity) == (l == 0))
        };
        if fits(0) {
            GroundedClass::EvenGrounded
        } else if fits(1) {
            GroundedClass::OddGrounded
        } else {
            GroundedClass::NotGrounded
        }
    }

    pub fn is_even_grounded(&self) -> bool {
        self.grounded_class() == GroundedClass::EvenGrounded
    }

    pub fn is_grounded(&self) -> bool {
        self.grounded_class() != GroundedClass::NotGrounded
    }

    pub fn lex_compare(&self, other: &Word) -> LexOrdering {
        lex_compare(&self.0, &other.0)
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }

    pub fn has_prefix(&self, p: &[Letter]) -> bool {
        self.0.starts_with(p)
    }

    pub fn has_suffix(&self, s: &[Letter]) -> bool {
        self.0.ends_with(s)
    }

    /// Comma-separated canonical form, e.g. `2,0,2,1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.len() * 2);
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&l.to_string());
        }
        out
    }

    /// Digit-string form, available only when every letter is at most 9.
    pub fn to_digits(&self) -> Option<String> {
        self.0.iter().map(|&l| char::from_digit(l, 10)).collect()
    }
}

/// Lexicographic comparison on raw letter slices.
pub fn lex_compare(u: &[Letter], v: &[Letter]) -> LexOrdering {
    match u.iter().zip(v).find(|(a, b)| a != b) {
        Some((a, b)) if a < b => LexOrdering::Less,
        Some(_) => LexOrdering::Greater,
        None => match u.len().cmp(&v.len()) {
            Ordering::Less => LexOrdering::LeftIsPrefix,
            Ordering::Greater => LexOrdering::RightIsPrefix,
            Ordering::Equal => LexOrdering::Equal,
        },
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Extend<Letter> for Word {
    fn extend<I: IntoIterator<Item = Letter>>(&mut self, iter: I) {
        self.0.extend(iter);
    }
}

impl IntoIterator for Word {
    type Item = Letter;
    type IntoIter = std::vec::IntoIter<Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_digits() {
            Some(d) => f.write_str(&d),
            None => f.write_str(&self.to_csv()),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("Word(ε)")
        } else {
            write!(f, "Word({self})")
        }
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts the csv form when a comma is present, otherwise the digit form.
    /// The empty string (or `ε`) is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || t == "ε" {
            return Ok(Word::empty());
        }
        let err = |reason: String| WordError::Parse {
            input: s.to_string(),
            reason,
        };
        if t.contains(',') {
            t.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<Letter>()
                        .map_err(|e| err(format!("bad letter {part:?}: {e}")))
                })
                .collect()
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| err(format!("unexpected character {c:?}")))
                })
                .collect()
        }
    }
}

/// Concatenates several letter slices into one word.
pub fn cat(parts: &[&[Letter]]) -> Word {
    let mut v = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
    for p in parts {
        v.extend_from_slice(p);
    }
    Word(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::digits(s)
    }

    #[test]
    fn slicing() {
        assert_eq!(w("0102010").slice(Some(1), Some(4)).unwrap(), w("102"));
        // P_0(2) = R_3[:-2]
        assert_eq!(w("01020103").slice(Some(0), Some(-2)).unwrap(), w("010201"));
        assert_eq!(w("0102").slice(Some(0), Some(0)).unwrap(), Word::empty());
        assert_eq!(w("0102").slice(None, None).unwrap(), w("0102"));
        assert_eq!(w("0102").slice(Some(-3), None).unwrap(), w("102"));
    }

    #[test]
    fn slice_out_of_range_is_rejected() {
        assert!(w("0102").slice(Some(0), Some(5)).is_err());
        assert!(w("0102").slice(Some(-5), None).is_err());
        assert!(w("0102").slice(Some(3), Some(1)).is_err());
    }

    #[test]
    fn successor_examples() {
        assert_eq!(w("0102").successor().unwrap(), w("0103"));
        assert_eq!(w("0").successor().unwrap(), w("1"));
        let c = w("0102030102");
        assert_eq!(c.successor().unwrap().successor().unwrap(), w("0102030104"));
        assert_eq!(Word::empty().successor(), Err(WordError::Empty));
    }

    #[test]
    fn grounded_examples() {
        assert_eq!(w("010").grounded_class(), GroundedClass::EvenGrounded);
        assert_eq!(w("0102").grounded_class(), GroundedClass::EvenGrounded);
        assert_eq!(w("301").grounded_class(), GroundedClass::OddGrounded);
        assert_eq!(w("3010").grounded_class(), GroundedClass::OddGrounded);
        assert_eq!(w("0120").grounded_class(), GroundedClass::NotGrounded);
        assert_eq!(w("0100").grounded_class(), GroundedClass::NotGrounded);
        assert_eq!(Word::empty().grounded_class(), GroundedClass::EvenGrounded);
    }

    #[test]
    fn lex_examples() {
        assert_eq!(w("0102").lex_compare(&w("0103")), LexOrdering::Less);
        assert_eq!(w("01").lex_compare(&w("0102")), LexOrdering::LeftIsPrefix);
        assert_eq!(w("23").lex_compare(&w("24")), LexOrdering::Less);
        assert_eq!(w("24").lex_compare(&w("24")), LexOrdering::Equal);
    }

    #[test]
    fn max_letter_examples() {
        assert_eq!(w("0102030102").max_letter(), Some(3));
        assert_eq!(Word::empty().max_letter(), None);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,0,2,1,0,1".parse::<Word>().unwrap(), w("202101"));
        assert_eq!("202101".parse::<Word>().unwrap(), w("202101"));
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
        assert!("20a".parse::<Word>().is_err());
        assert!("1,,2".parse::<Word>().is_err());
        let big = Word::new(vec![1, 10, 2]);
        assert_eq!(big.to_string(), "1,10,2");
        assert_eq!(big.to_digits(), None);
        assert_eq!(w("0102").to_string(), "0102");
    }

    fn grounded_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(1u32..6, 0..20).prop_flat_map(|nonzero| {
            any::<bool>().prop_map(move |even| {
                let mut v = Vec::new();
                for &n in &nonzero {
                    if even {
                        v.extend([0, n]);
                    } else {
                        v.extend([n, 0]);
                    }
                }
                Word::new(v)
            })
        })
    }

    proptest! {
        #[test]
        fn slice_round_trip(v in prop::collection::vec(0u32..5, 0..30), k in 0usize..31) {
            let word = Word::new(v);
            let k = k.min(word.len()) as isize;
            let left = word.slice(Some(0), Some(k)).unwrap();
            let right = word.slice(Some(k), None).unwrap();
            prop_assert_eq!(left.concat(&right), word);
        }

        #[test]
        fn successor_is_lex_greater(v in prop::collection::vec(0u32..5, 1..30)) {
            let word = Word::new(v);
            prop_assert_eq!(word.lex_compare(&word.successor().unwrap()), LexOrdering::Less);
        }

        #[test]
        fn grounded_words_alternate(g in grounded_word()) {
            prop_assert!(g.is_grounded());
            for pair in g.windows(2) {
                prop_assert!((pair[0] == 0) != (pair[1] == 0));
            }
        }

        #[test]
        fn lex_compare_antisymmetric(
            u in prop::collection::vec(0u32..3, 0..8),
            v in prop::collection::vec(0u32..3, 0..8),
        ) {
            let (u, v) = (Word::new(u), Word::new(v));
            prop_assert_eq!(u.lex_compare(&v), v.lex_compare(&u).reverse());
        }
    }
}
