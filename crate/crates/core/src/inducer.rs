//! Extension tests for words containing squares (`w = psq`) and the
//! construction of a prefix `x_m` that generates `x_m·w`.

use thiserror::Error;

use crate::lexicon::{ruler_prefix, LexiconError};
use crate::lexleast::{compute_l_prefix, generates};
use crate::morphism::restriction_morphism;
use crate::square::{has_square, is_square_free};
use crate::word::{cat, lex_compare, Letter, LexOrdering, Word};

/// Largest restriction count `m` accepted by [`induce_prefix`]; `|x_m|`
/// doubles with each step.
pub const INDUCE_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InducerError {
    #[error("input word is empty")]
    Empty,
    #[error("input {0} contains a square")]
    NotSquareFree(Word),
    #[error("input {0} is square-free, so it has no psq decomposition")]
    SquareFree(Word),
    #[error("{word} has {m} square-free restrictions; the cap is {cap}")]
    Cap { word: Word, m: usize, cap: usize },
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

fn require_square_free(w: &[Letter]) -> Result<(), InducerError> {
    if w.is_empty() {
        Err(InducerError::Empty)
    } else if has_square(w) {
        Err(InducerError::NotSquareFree(Word::from_slice(w)))
    } else {
        Ok(())
    }
}

/// The square-free restrictions `w[:j]·k` (`k < w[j]`) in lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionSequence {
    pub entries: Vec<Word>,
}

impl RestrictionSequence {
    pub fn m(&self) -> usize {
        self.entries.len()
    }
}

pub fn restrictions(w: &[Letter]) -> Result<RestrictionSequence, InducerError> {
    require_square_free(w)?;
    let mut entries: Vec<Word> = (0..w.len())
        .flat_map(|j| (0..w[j]).map(move |k| Word::from_slice(&w[..j]).concat(&[k])))
        .filter(|r| is_square_free(r))
        .collect();
    entries.sort_by(|a, b| match lex_compare(a, b) {
        LexOrdering::Less | LexOrdering::LeftIsPrefix => std::cmp::Ordering::Less,
        LexOrdering::Equal => std::cmp::Ordering::Equal,
        _ => std::cmp::Ordering::Greater,
    });
    Ok(RestrictionSequence { entries })
}

/// The letters `v_i`, the words `V_i = v_i⋯v_0` and the words `x_i` for
/// `0 ≤ i ≤ m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducerScaffold {
    pub restrictions: RestrictionSequence,
    pub v: Vec<Letter>,
    pub big_v: Vec<Word>,
    pub x: Vec<Word>,
}

impl InducerScaffold {
    pub fn new(w: &[Letter]) -> Result<Self, InducerError> {
        let restrictions = restrictions(w)?;
        let m = restrictions.m();
        if m > INDUCE_CAP {
            return Err(InducerError::Cap {
                word: Word::from_slice(w),
                m,
                cap: INDUCE_CAP,
            });
        }
        let top = w.iter().copied().max().unwrap_or(0);
        let v: Vec<Letter> = (0..=m as Letter).map(|i| top + i + 1).collect();
        let big_v = (0..=m)
            .map(|i| v[..=i].iter().rev().copied().collect())
            .collect();
        let mut x = vec![Word::letter(v[0])];
        for i in 1..=m {
            let prev = &x[i - 1];
            let next = cat(&[&[v[i]], prev, &restrictions.entries[i - 1], prev]);
            x.push(next);
        }
        Ok(InducerScaffold {
            restrictions,
            v,
            big_v,
            x,
        })
    }

    pub fn m(&self) -> usize {
        self.restrictions.m()
    }

    pub fn x_m(&self) -> &Word {
        &self.x[self.m()]
    }
}

/// `x_i` built as `V_i·φ_w(R_i[:-1])` rather than by the recursion.
pub fn closed_form_x(w: &[Letter], i: usize) -> Result<Word, InducerError> {
    let scaffold = InducerScaffold::new(w)?;
    if i > scaffold.m() {
        return Err(InducerError::Integrity(format!(
            "x_{i} requested but m = {}",
            scaffold.m()
        )));
    }
    let phi = restriction_morphism(w).map_err(|e| InducerError::Integrity(e.to_string()))?;
    let r = ruler_prefix(i as u32)?;
    let image = phi
        .apply(&r[..r.len() - 1])
        .map_err(|e| InducerError::Integrity(e.to_string()))?;
    Ok(scaffold.big_v[i].concat(&image))
}

/// Returns `x_m(w)` after confirming that it generates `x_m·w`.
pub fn induce_prefix(w: &[Letter]) -> Result<Word, InducerError> {
    let scaffold = InducerScaffold::new(w)?;
    let x = scaffold.x_m();
    if !generates(x, w) {
        return Err(InducerError::Integrity(format!(
            "x_m = {x} does not generate x_m·{}",
            Word::from_slice(w)
        )));
    }
    Ok(x.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsqDecomposition {
    pub p: Word,
    pub s: Word,
    pub q: Word,
}

impl PsqDecomposition {
    pub fn recombine(&self) -> Word {
        cat(&[&self.p, &self.s, &self.q])
    }
}

fn square_prefix_half(u: &[Letter]) -> Option<usize> {
    (1..=u.len() / 2).rev().find(|&h| u[..h] == u[h..2 * h])
}

pub fn decompose_psq(w: &[Letter]) -> Result<PsqDecomposition, InducerError> {
    if w.is_empty() {
        return Err(InducerError::Empty);
    }
    if !has_square(w) {
        return Err(InducerError::SquareFree(Word::from_slice(w)));
    }
    let n = w.len();
    // largest t with w[n-t..] square-free; t = 1 always qualifies, t = n never
    let (mut lo, mut hi) = (1, n);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if is_square_free(&w[n - mid..]) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let split = n - lo;
    let u = &w[split - 1..];
    let h = square_prefix_half(u).ok_or_else(|| {
        InducerError::Integrity(format!("{} has no square prefix", Word::from_slice(u)))
    })?;
    Ok(PsqDecomposition {
        p: Word::from_slice(&w[..split]),
        s: Word::from_slice(&u[1..2 * h]),
        q: Word::from_slice(&u[2 * h..]),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SufficientReport {
    pub decomposition: PsqDecomposition,
    /// `2|ps|`, the comparison length.
    pub depth: usize,
    /// `L(w)[:depth]`.
    pub extended: Word,
    /// `(p·L(sq))[:depth]`.
    pub split: Word,
    /// Letters computed beyond `w` itself.
    pub extra_letters: usize,
    pub verdict: bool,
}

/// Compares `L(psq)` with `p·L(sq)` over the first `2|ps|` letters.
pub fn sufficient_check(w: &[Letter]) -> Result<SufficientReport, InducerError> {
    let d = decompose_psq(w)?;
    let depth = 2 * (d.p.len() + d.s.len());
    let extended = compute_l_prefix(w, depth);
    let sq = d.s.concat(&d.q);
    let split =
        d.p.concat(&compute_l_prefix(&sq, depth.saturating_sub(d.p.len())))
            .prefix(depth);
    Ok(SufficientReport {
        verdict: extended == split,
        extra_letters: depth.saturating_sub(w.len()),
        decomposition: d,
        depth,
        extended,
        split,
    })
}

/// `L(n1·n2)[:depth] == (n1·L(n2))[:depth]`.
pub fn letter_pair_test(n1: Letter, n2: Letter, depth: usize) -> bool {
    let lhs = compute_l_prefix(&[n1, n2], depth);
    let rhs = Word::letter(n1)
        .concat(&compute_l_prefix(&[n2], depth.saturating_sub(1)))
        .prefix(depth);
    lhs == rhs
}

/// Every square-free word over `0..=max_letter` of length at most `max_len`,
/// shortest first.
pub fn square_free_words(max_len: usize, max_letter: Letter) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..=max_letter).map(move |k| w.concat(&[k])))
            .filter(|w| !crate::square::has_square_suffix(w))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
