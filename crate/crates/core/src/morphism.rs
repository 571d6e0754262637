//! Morphisms over the infinite alphabet ℕ.
//!
//! A [`Morphism`] is a rule `letter → word` plus a memo table. Rules receive
//! the morphism itself so recursively defined images (`α(n)` from
//! `α(n-1)`) reuse memoized work.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::inducer::{self, InducerError};
use crate::lexicon::{self, LexiconError};
use crate::lexleast::{compute_l_prefix, LexStream};
use crate::square::{find_square, occurrences, SquareOccurrence};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("letter {letter} is outside the domain of {name}")]
    Domain { name: String, letter: Letter },
    #[error("{name} maps letter {letter} to the empty word")]
    Erasing { name: String, letter: Letter },
    #[error(
        "source ended after {consumed} letters with only {produced} of {wanted} image letters"
    )]
    SourceExhausted {
        consumed: usize,
        produced: usize,
        wanted: usize,
    },
    #[error("sample word {0} contains a square")]
    SampleNotSquareFree(Word),
    #[error("cannot invert the ruler morphism on {word}: {reason}")]
    Shape { word: Word, reason: &'static str },
    #[error("unknown builtin morphism {0:?} (expected rho, psi1, psi2, alpha or gamma)")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Inducer(#[from] Box<InducerError>),
}

pub type Rule = dyn Fn(&Morphism, Letter) -> Result<Word, MorphismError> + Send + Sync;

pub struct Morphism {
    name: String,
    rule: Box<Rule>,
    memo: RwLock<HashMap<Letter, Arc<Word>>>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Morphism")
            .field("name", &self.name)
            .finish()
    }
}

impl Morphism {
    pub fn from_rule(
        name: impl Into<String>,
        rule: impl Fn(&Morphism, Letter) -> Result<Word, MorphismError> + Send + Sync + 'static,
    ) -> Self {
        Morphism {
            name: name.into(),
            rule: Box::new(rule),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain_error(&self, letter: Letter) -> MorphismError {
        MorphismError::Domain {
            name: self.name.clone(),
            letter,
        }
    }

    /// The image of one letter, computed once and memoized.
    pub fn image(&self, k: Letter) -> Result<Arc<Word>, MorphismError> {
        if let Some(w) = self.memo.read().unwrap().get(&k) {
            return Ok(Arc::clone(w));
        }
        let w = (self.rule)(self, k)?;
        if w.is_empty() {
            return Err(MorphismError::Erasing {
                name: self.name.clone(),
                letter: k,
            });
        }
        let mut memo = self.memo.write().unwrap();
        Ok(Arc::clone(memo.entry(k).or_insert_with(|| Arc::new(w))))
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word, MorphismError> {
        let mut out = Word::empty();
        for &k in w {
            out.extend_from_slice(&self.image(k)?);
        }
        Ok(out)
    }

    /// The first `n` letters of the image of an infinite source word,
    /// consuming only as many source letters as needed.
    pub fn apply_stream(
        &self,
        source: impl IntoIterator<Item = Letter>,
        n: usize,
    ) -> Result<Word, MorphismError> {
        let mut out = Vec::with_capacity(n);
        let mut consumed = 0;
        let mut source = source.into_iter();
        while out.len() < n {
            let k = source.next().ok_or(MorphismError::SourceExhausted {
                consumed,
                produced: out.len(),
                wanted: n,
            })?;
            consumed += 1;
            out.extend_from_slice(&self.image(k)?);
        }
        out.truncate(n);
        Ok(Word::new(out))
    }

    /// Locates every occurrence of `factor` in the image of `w` relative to
    /// the chunk boundaries.
    pub fn chunk_align(
        &self,
        w: &[Letter],
        factor: &[Letter],
    ) -> Result<Vec<ChunkAlignment>, MorphismError> {
        let mut starts = Vec::with_capacity(w.len() + 1);
        let mut image = Vec::new();
        for &k in w {
            starts.push(image.len());
            image.extend_from_slice(&self.image(k)?);
        }
        starts.push(image.len());
        let chunk_of = |pos: usize| starts.partition_point(|&s| s <= pos) - 1;
        Ok(occurrences(factor, &image)
            .into_iter()
            .map(|pos| {
                let first = chunk_of(pos);
                let end = pos + factor.len();
                let last = chunk_of(end - 1);
                let at_start = pos == starts[first];
                let at_end = end == starts[first + 1];
                let classification = if first != last {
                    ChunkPosition::Straddling
                } else {
                    match (at_start, at_end) {
                        (true, true) => ChunkPosition::WholeChunk,
                        (true, false) => ChunkPosition::ChunkPrefix,
                        (false, true) => ChunkPosition::ChunkSuffix,
                        (false, false) => ChunkPosition::Interior,
                    }
                };
                ChunkAlignment {
                    factor_start: pos,
                    chunk_index: first,
                    chunk_letter: w[first],
                    chunk_start: starts[first],
                    offset: pos - starts[first],
                    classification,
                }
            })
            .collect())
    }

    /// Checks that every (square-free) sample word has a square-free image.
    pub fn square_free_over_sample(&self, words: &[Word]) -> Result<SampleVerdict, MorphismError> {
        for w in words {
            if find_square(w).is_some() {
                return Err(MorphismError::SampleNotSquareFree(w.clone()));
            }
        }
        for w in words {
            let image = self.apply(w)?;
            if let Some(sq) = find_square(&image) {
                return Ok(SampleVerdict::fails(w.clone(), WitnessDetail::Square(sq)));
            }
        }
        Ok(SampleVerdict::holds())
    }

    /// Checks `L(φ(w))` against `φ(L(w))` over `|φ(w)| + depth` letters for
    /// every sample word.
    pub fn l_commuting_sample(
        &self,
        words: &[Word],
        depth: usize,
    ) -> Result<SampleVerdict, MorphismError> {
        for w in words {
            let image = self.apply(w)?;
            let d = image.len() + depth;
            let lhs = self.apply_stream(LexStream::new(w), d)?;
            let rhs = compute_l_prefix(&image, d);
            if let Some(index) = lhs.iter().zip(rhs.iter()).position(|(a, b)| a != b) {
                return Ok(SampleVerdict::fails(
                    w.clone(),
                    WitnessDetail::Mismatch {
                        index,
                        morphic: lhs[index],
                        greedy: rhs[index],
                    },
                ));
            }
        }
        Ok(SampleVerdict::holds())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChunkPosition {
    ChunkPrefix,
    ChunkSuffix,
    WholeChunk,
    Interior,
    Straddling,
}

/// Where one occurrence of a factor sits among the chunks of `φ(w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChunkAlignment {
    pub factor_start: usize,
    /// Position in `w` of the chunk containing `factor_start`.
    pub chunk_index: usize,
    pub chunk_letter: Letter,
    pub chunk_start: usize,
    pub offset: usize,
    pub classification: ChunkPosition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessDetail {
    Square(SquareOccurrence),
    Mismatch {
        index: usize,
        morphic: Letter,
        greedy: Letter,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleWitness {
    pub word: Word,
    pub detail: WitnessDetail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleVerdict {
    pub holds: bool,
    pub witness: Option<SampleWitness>,
}

impl SampleVerdict {
    fn holds() -> Self {
        SampleVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fails(word: Word, detail: WitnessDetail) -> Self {
        SampleVerdict {
            holds: false,
            witness: Some(SampleWitness { word, detail }),
        }
    }
}

/// Lazily yields the ruler sequence `0102010301020104…`; the letter at
/// index `i` is the 2-adic valuation of `i + 1`.
pub fn ruler_stream() -> impl Iterator<Item = Letter> + Clone {
    (1u64..).map(|i| i.trailing_zeros())
}

/// `ρ⁻¹(w)` for an even-length, even-grounded word.
pub fn ruler_inverse(w: &[Letter]) -> Result<Word, MorphismError> {
    let shape = |reason| MorphismError::Shape {
        word: Word::from_slice(w),
        reason,
    };
    if !w.len().is_multiple_of(2) {
        return Err(shape("odd length"));
    }
    if !Word::from_slice(w).is_even_grounded() {
        return Err(shape("not even-grounded"));
    }
    Ok(w.chunks(2).map(|pair| pair[1] - 1).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    Rho,
    Psi1,
    Psi2,
    Alpha,
    Gamma,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Rho,
        Builtin::Psi1,
        Builtin::Psi2,
        Builtin::Alpha,
        Builtin::Gamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Rho => "rho",
            Builtin::Psi1 => "psi1",
            Builtin::Psi2 => "psi2",
            Builtin::Alpha => "alpha",
            Builtin::Gamma => "gamma",
        }
    }
}

impl FromStr for Builtin {
    type Err = MorphismError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| MorphismError::UnknownBuiltin(s.to_string()))
    }
}

/// The shared, memoized instance of a named morphism.
pub fn builtin(b: Builtin) -> &'static Morphism {
    static TABLE: OnceLock<[Morphism; 5]> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        [
            Morphism::from_rule("rho", |_, k| Ok(Word::new(vec![0, k + 1]))),
            Morphism::from_rule("psi1", lexicon::psi1_rule),
            Morphism::from_rule("psi2", lexicon::psi2_rule),
            Morphism::from_rule("alpha", lexicon::alpha_rule),
            Morphism::from_rule("gamma", lexicon::gamma_rule),
        ]
    });
    &table[b as usize]
}

pub fn rho() -> &'static Morphism {
    builtin(Builtin::Rho)
}

pub fn psi1() -> &'static Morphism {
    builtin(Builtin::Psi1)
}

pub fn psi2() -> &'static Morphism {
    builtin(Builtin::Psi2)
}

pub fn alpha() -> &'static Morphism {
    builtin(Builtin::Alpha)
}

pub fn gamma() -> &'static Morphism {
    builtin(Builtin::Gamma)
}

/// `φ_w`: maps `k < m(w)` to `r_k(w)·V_k(w)`.
pub fn restriction_morphism(w: &[Letter]) -> Result<Morphism, MorphismError> {
    let seq = inducer::restrictions(w).map_err(|e| MorphismError::Inducer(Box::new(e)))?;
    let top = Word::from_slice(w).max_letter().unwrap_or(0);
    Ok(Morphism::from_rule(
        format!("phi_{}", Word::from_slice(w)),
        move |m, k| {
            let r = seq
                .entries
                .get(k as usize)
                .ok_or_else(|| m.domain_error(k))?;
            let mut image = r.clone();
            image.extend((0..=k).rev().map(|i| top + i + 1));
            Ok(image)
        },
    ))
}
