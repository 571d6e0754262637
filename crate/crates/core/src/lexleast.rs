//! Greedy computation of `L(p)`, the lexicographically least infinite word
//! starting with `p` whose squares all lie inside `p`.
//!
//! Each step appends the least letter that does not complete a square ending
//! at the new position. Squares entirely inside the prefix are tolerated.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::square::{has_square_suffix, z_function};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("irreducibility is only defined for a nonempty suffix")]
    EmptySuffix,
}

/// How candidate letters are tested for a square suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuffixStrategy {
    /// Compare every even-length suffix directly.
    Naive,
    /// One reversed Z array per candidate letter.
    ReversedZ,
    /// Maintained table of common-suffix lengths; all forbidden letters of a
    /// step come out of one pass.
    Incremental,
}

impl SuffixStrategy {
    pub const ALL: [SuffixStrategy; 3] = [
        SuffixStrategy::Naive,
        SuffixStrategy::ReversedZ,
        SuffixStrategy::Incremental,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuffixStrategy::Naive => "naive",
            SuffixStrategy::ReversedZ => "reversed-z",
            SuffixStrategy::Incremental => "incremental",
        }
    }
}

impl fmt::Display for SuffixStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuffixStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuffixStrategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| {
                format!("unknown strategy {s:?} (expected naive, reversed-z or incremental)")
            })
    }
}

/// A prefix `base` (squares allowed) and the letters greedily appended so
/// far. Squares may not end at any index `>= boundary()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionState {
    pub base: Word,
    pub extension: Word,
}

impl ExtensionState {
    pub fn new(base: Word) -> Self {
        ExtensionState {
            base,
            extension: Word::empty(),
        }
    }

    pub fn boundary(&self) -> usize {
        self.base.len()
    }

    pub fn current(&self) -> Word {
        self.base.concat(&self.extension)
    }
}

/// The next letter of `L(base)` after `base·extension`.
pub fn next_letter(state: &ExtensionState) -> Letter {
    let mut w = state.current().into_letters();
    least_free_letter(&mut w, SuffixStrategy::ReversedZ)
}

/// Least letter `c` such that `w·c` has no square suffix. `w` is restored
/// before returning.
fn least_free_letter(w: &mut Vec<Letter>, strategy: SuffixStrategy) -> Letter {
    let mut c = 0;
    loop {
        w.push(c);
        let bad = match strategy {
            SuffixStrategy::Naive => naive_square_suffix(w),
            _ => has_square_suffix(w),
        };
        w.pop();
        if !bad {
            return c;
        }
        c += 1;
    }
}

fn naive_square_suffix(w: &[Letter]) -> bool {
    let n = w.len();
    (1..=n / 2).any(|l| w[n - 2 * l..n - l] == w[n - l..])
}

/// Incremental generator of `L(p)`.
///
/// For a word `w` of length `n`, `runs[e]` (`0 ≤ e < n`) is the length of
/// the longest common suffix of `w` and `w[..e]`. A letter `c` completes a
/// square of half-length `l = n - e` exactly when `c = w[e]` and
/// `runs[e] >= l - 1`.
#[derive(Debug, Clone)]
pub struct LexGenerator {
    word: Vec<Letter>,
    boundary: usize,
    strategy: SuffixStrategy,
    runs: Vec<u32>,
    scratch: Vec<u32>,
    forbidden: Vec<Letter>,
}

impl LexGenerator {
    pub fn new(prefix: &[Letter]) -> Self {
        Self::with_strategy(prefix, SuffixStrategy::Incremental)
    }

    pub fn with_strategy(prefix: &[Letter], strategy: SuffixStrategy) -> Self {
        let word = prefix.to_vec();
        let runs = if strategy == SuffixStrategy::Incremental {
            Self::seed_runs(&word)
        } else {
            Vec::new()
        };
        LexGenerator {
            boundary: word.len(),
            word,
            strategy,
            runs,
            scratch: Vec::new(),
            forbidden: Vec::new(),
        }
    }

    fn seed_runs(word: &[Letter]) -> Vec<u32> {
        let n = word.len();
        let rev: Vec<Letter> = word.iter().rev().copied().collect();
        let z = z_function(&rev);
        (0..n)
            .map(|e| if e == 0 { 0 } else { z[n - e] as u32 })
            .collect()
    }

    pub fn boundary(&self) -> usize {
        self.boundary
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn into_word(self) -> Word {
        Word::new(self.word)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Computes, appends and returns the next letter.
    pub fn step(&mut self) -> Letter {
        let c = match self.strategy {
            SuffixStrategy::Incremental => self.incremental_choice(),
            other => least_free_letter(&mut self.word, other),
        };
        if self.strategy == SuffixStrategy::Incremental {
            self.scratch.clear();
            self.scratch.push(0);
            self.scratch.extend(
                self.runs
                    .iter()
                    .zip(&self.word)
                    .map(|(&r, &x)| (r + 1) * u32::from(x == c)),
            );
            std::mem::swap(&mut self.runs, &mut self.scratch);
        }
        self.word.push(c);
        c
    }

    fn incremental_choice(&mut self) -> Letter {
        let n = self.word.len();
        self.forbidden.clear();
        let lo = n - n.div_ceil(2);
        for (e, (&run, &letter)) in (lo..).zip(self.runs[lo..].iter().zip(&self.word[lo..])) {
            if run as usize + e + 1 >= n {
                self.forbidden.push(letter);
            }
        }
        self.forbidden.sort_unstable();
        let mut c = 0;
        for &f in &self.forbidden {
            if f == c {
                c += 1;
            } else if f > c {
                break;
            }
        }
        c
    }

    /// Extends until the word has at least `n` letters.
    pub fn extend_to(&mut self, n: usize) {
        while self.word.len() < n {
            self.step();
        }
    }
}

/// Streams the letters of `L(p)`, starting with `p` itself.
#[derive(Debug, Clone)]
pub struct LexStream {
    generator: LexGenerator,
    pos: usize,
}

impl LexStream {
    pub fn new(prefix: &[Letter]) -> Self {
        LexStream {
            generator: LexGenerator::new(prefix),
            pos: 0,
        }
    }
}

impl Iterator for LexStream {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        if self.pos >= self.generator.len() {
            self.generator.step();
        }
        self.pos += 1;
        Some(self.generator.word()[self.pos - 1])
    }
}

/// `L(p)[:n]`. When `n < |p|` this is just `p[:n]`.
pub fn compute_l_prefix(p: &[Letter], n: usize) -> Word {
    compute_l_prefix_with(p, n, SuffixStrategy::Incremental)
}

pub fn compute_l_prefix_with(p: &[Letter], n: usize, strategy: SuffixStrategy) -> Word {
    if n <= p.len() {
        return Word::from_slice(&p[..n]);
    }
    let mut g = LexGenerator::with_strategy(p, strategy);
    g.extend_to(n);
    g.into_word()
}

/// Whether `p` generates `p·s`, i.e. `L(p)` begins with `p·s`.
pub fn generates(p: &[Letter], s: &[Letter]) -> bool {
    let mut g = LexGenerator::new(p);
    s.iter().all(|&expected| g.step() == expected)
}

/// Whether `u` is irreducible in `w·u`: every word lexicographically below
/// `u` introduces a square when appended to `w`.
///
/// The minimal such words are `u[:i]·ℓ` with `ℓ < u[i]`. Once a prefix of `u`
/// itself introduces a square, every later candidate inherits it.
pub fn is_irreducible(w: &[Letter], u: &[Letter]) -> Result<bool, LexError> {
    if u.is_empty() {
        return Err(LexError::EmptySuffix);
    }
    let mut buf = w.to_vec();
    let mut square_seen = false;
    for &target in u {
        if !square_seen {
            for l in 0..target {
                buf.push(l);
                let introduces = has_square_suffix(&buf);
                buf.pop();
                if !introduces {
                    return Ok(false);
                }
            }
        }
        buf.push(target);
        square_seen = square_seen || has_square_suffix(&buf);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::{naive_square_scan, square_endpoints};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::digits(s)
    }

    #[test]
    fn next_letter_examples() {
        let st = ExtensionState {
            base: Word::empty(),
            extension: w("010"),
        };
        assert_eq!(next_letter(&st), 2);
        assert_eq!(next_letter(&ExtensionState::new(w("1"))), 0);
        let st = ExtensionState {
            base: Word::empty(),
            extension: w("0102010"),
        };
        assert_eq!(next_letter(&st), 3);
    }

    #[test]
    fn printed_prefixes() {
        assert_eq!(compute_l_prefix(&[], 16), w("0102010301020104"));
        assert_eq!(
            compute_l_prefix(&w("1"), 32),
            w("10120102012021012010201203010201")
        );
        assert_eq!(
            compute_l_prefix(&w("33"), 32),
            w("33010201030102012021012010201202")
        );
    }

    #[test]
    fn strategies_agree() {
        for p in ["", "1", "2", "33", "0101", "11011", "012323045"] {
            let p = w(p);
            let expect = compute_l_prefix_with(&p, 300, SuffixStrategy::Naive);
            for st in SuffixStrategy::ALL {
                assert_eq!(compute_l_prefix_with(&p, 300, st), expect, "{st} on {p}");
            }
        }
    }

    #[test]
    fn generates_examples() {
        // C from 010203
        assert!(generates(&w("010203"), &w("0102")));
        // ψ1(1) generates ψ1(1)·202101
        assert!(generates(&w("2010201"), &w("202101")));
        assert!(!generates(&w("2010201"), &w("202102")));
        assert!(generates(&w("0102"), &[]));
    }

    #[test]
    fn irreducible_examples() {
        let base = w("0102010");
        assert_eq!(is_irreducible(&base, &w("23")), Ok(true));
        assert_eq!(is_irreducible(&base, &w("301")), Ok(true));
        assert_eq!(is_irreducible(&base, &w("302")), Ok(false));
        assert_eq!(is_irreducible(&base, &[]), Err(LexError::EmptySuffix));
    }

    #[test]
    fn non_commuting_witness() {
        assert_eq!(compute_l_prefix(&w("0101"), 8), w("01012010"));
        let l00 = compute_l_prefix(&w("00"), 4);
        let image: Word = l00.iter().flat_map(|&k| [0, k + 1]).collect();
        assert_eq!(image, w("01010201"));
    }

    #[test]
    fn stream_matches_prefix() {
        let s: Word = LexStream::new(&w("2")).take(64).collect();
        assert_eq!(s, compute_l_prefix(&w("2"), 64));
    }

    fn small_word() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(0u32..4, 0..7)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn squares_stay_in_prefix(p in small_word()) {
            let out = compute_l_prefix(&p, p.len() + 60);
            let ends = square_endpoints(&out).endpoints;
            prop_assert!(ends.iter().all(|&e| e < p.len()));
        }

        #[test]
        fn greedy_choice_is_minimal(p in small_word()) {
            let out = compute_l_prefix(&p, p.len() + 40);
            for i in p.len()..out.len() {
                for l in 0..out[i] {
                    let mut alt = out[..i].to_vec();
                    alt.push(l);
                    let report = naive_square_scan(&alt).unwrap();
                    prop_assert!(report.endpoints.contains(&i));
                }
                prop_assert!(out[i] <= 1 + out[..i].iter().copied().max().unwrap_or(0) || i == 0);
            }
        }

        #[test]
        fn idempotent(p in small_word(), a in 0usize..40, b in 0usize..40) {
            let n = p.len() + a.min(b);
            let m = p.len() + a.max(b);
            let first = compute_l_prefix(&p, n);
            prop_assert_eq!(compute_l_prefix(&first, m), compute_l_prefix(&p, m));
        }

        #[test]
        fn generates_is_prefix_agreement(p in small_word(), k in 0usize..20) {
            let full = compute_l_prefix(&p, p.len() + k);
            let s = &full[p.len()..];
            prop_assert!(generates(&p, s));
            if let Some(last) = s.last() {
                let mut t = s.to_vec();
                *t.last_mut().unwrap() = last + 1;
                prop_assert!(!generates(&p, &t));
            }
        }

        #[test]
        fn generated_extension_is_irreducible(p in small_word(), k in 1usize..15) {
            let full = compute_l_prefix(&p, p.len() + k);
            prop_assert_eq!(is_irreducible(&p, &full[p.len()..]), Ok(true));
        }
    }
}
