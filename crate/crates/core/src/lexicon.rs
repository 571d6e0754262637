//! Named words: ruler prefixes, the `P`/`T` family, the constants used by
//! `α` and `γ`, the `b`/`c` words, and the derived constant `A`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lexleast::compute_l_prefix;
use crate::morphism::{psi1, psi2, rho, ruler_stream, Morphism, MorphismError};
use crate::word::{cat, Letter, Word};

/// Largest `n` for which `R_n` is built.
pub const RULER_CAP: u32 = 24;
/// Largest index for the `ψ`, `α`, `γ`, `T`, `b` and `c` constructions.
pub const CONSTRUCTION_CAP: u32 = 16;
pub const A_LEN: usize = 13747;
pub const Y1_LEN: usize = 5177;

const PSI2_ZERO: &str = concat!(
    "2021020102101201020120210120102013010201030102012021012010201",
    "2021013010201030102012021012010201202301020103010201202101201",
    "0201203010201030102030103020102030102010301020301030201202101",
    "2010201202101202",
);

const C3: &str = concat!(
    "0102012021012010201202102010210120102012021012010201301020103",
    "0102012021012010201202101301020103010201202101201020120230102",
    "0103010201202101201020120301020103010203010302010203010201030",
    "1020301030201202101201020120210120230102010301020120210120102",
    "01202101301020103",
);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("{what}({n}) exceeds the construction cap {cap}")]
    Cap {
        what: &'static str,
        n: u32,
        cap: u32,
    },
    #[error("{what}({n}) is undefined")]
    Domain { what: &'static str, n: u32 },
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("cache {path}: {reason}")]
    Cache { path: PathBuf, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    C,
    B0,
    B1,
    E,
    F,
    G,
    A,
    Psi2Zero,
    C3,
    B2,
}

impl Constant {
    pub const ALL: [Constant; 10] = [
        Constant::C,
        Constant::B0,
        Constant::B1,
        Constant::E,
        Constant::F,
        Constant::G,
        Constant::A,
        Constant::Psi2Zero,
        Constant::C3,
        Constant::B2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constant::C => "C",
            Constant::B0 => "B0",
            Constant::B1 => "B1",
            Constant::E => "E",
            Constant::F => "F",
            Constant::G => "G",
            Constant::A => "A",
            Constant::Psi2Zero => "psi2_zero",
            Constant::C3 => "c3",
            Constant::B2 => "b2",
        }
    }
}

impl FromStr for Constant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Constant::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown constant {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcKind {
    B,
    C,
}

/// Construction limits; the free functions use [`Caps::default`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub ruler: u32,
    pub construction: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ruler: RULER_CAP,
            construction: CONSTRUCTION_CAP,
        }
    }
}

fn plus(w: &[Letter]) -> Word {
    Word::from_slice(w)
        .successor()
        .expect("successor of a nonempty constant")
}

fn cap(what: &'static str, n: u32, limit: u32) -> Result<(), LexiconError> {
    if n > limit {
        Err(LexiconError::Cap {
            what,
            n,
            cap: limit,
        })
    } else {
        Ok(())
    }
}

impl Caps {
    pub fn ruler_prefix(&self, n: u32) -> Result<Word, LexiconError> {
        cap("R", n, self.ruler)?;
        Ok(ruler_stream().take(1 << n).collect())
    }

    pub fn p_word(&self, level: u8, n: u32) -> Result<Word, LexiconError> {
        match level {
            0 => {
                let r = self.ruler_prefix(n + 1)?;
                Ok(r.drop_last(2))
            }
            1 | 2 => {
                let what = if level == 1 { "P_1" } else { "P_2" };
                if n < 3 {
                    return Err(LexiconError::Domain { what, n });
                }
                cap(what, n, self.construction)?;
                let (m, base) = if level == 1 {
                    (psi1(), self.p_word(0, n - 1)?)
                } else {
                    (psi2(), self.p_word(0, n - 2)?)
                };
                m.apply(&base).map_err(unwrap_lexicon)
            }
            _ => Err(LexiconError::Domain {
                what: "P",
                n: level as u32,
            }),
        }
    }

    pub fn t_word(&self, n: u32) -> Result<Word, LexiconError> {
        if n < 3 {
            return Err(LexiconError::Domain { what: "T", n });
        }
        cap("T", n, self.construction)?;
        let p0 = self.p_word(0, n)?;
        let p1 = self.p_word(1, n)?;
        let p2 = self.p_word(2, n)?;
        Ok(cat(&[&p0, &p1, &p2]))
    }

    pub fn bc_word(&self, kind: BcKind, n: u32) -> Result<Word, LexiconError> {
        let (what, base) = match kind {
            BcKind::B => ("b", 2),
            BcKind::C => ("c", 3),
        };
        if n < base {
            return Err(LexiconError::Domain { what, n });
        }
        cap(what, n, self.construction)?;
        let mut b = Word::digits("0102012021012");
        for k in 3..=n {
            b = cat(&[&b, &plus(&b), &self.ruler_prefix(k)?]);
        }
        if kind == BcKind::B {
            return Ok(b);
        }
        let mut c = Word::digits(C3);
        for k in 4..=n {
            let b_k = self.bc_word(BcKind::B, k)?;
            c = cat(&[&c, &plus(&c), &self.ruler_prefix(k)?, &b_k]);
        }
        Ok(c)
    }
}

fn unwrap_lexicon(e: MorphismError) -> LexiconError {
    match e {
        MorphismError::Lexicon(inner) => inner,
        other => LexiconError::Integrity(other.to_string()),
    }
}

pub fn ruler_prefix(n: u32) -> Result<Word, LexiconError> {
    Caps::default().ruler_prefix(n)
}

pub fn p_word(level: u8, n: u32) -> Result<Word, LexiconError> {
    Caps::default().p_word(level, n)
}

pub fn t_word(n: u32) -> Result<Word, LexiconError> {
    Caps::default().t_word(n)
}

pub fn bc_word(kind: BcKind, n: u32) -> Result<Word, LexiconError> {
    Caps::default().bc_word(kind, n)
}

struct Fixed {
    c: Word,
    b0: Word,
    b1: Word,
    e: Word,
    f: Word,
}

fn fixed() -> &'static Fixed {
    static FIXED: OnceLock<Fixed> = OnceLock::new();
    FIXED.get_or_init(|| {
        let d = Word::digits;
        let c = d("0102030102");
        let p1 = psi1().apply(&d("1010")).expect("ψ1(1010)");
        let p2a = psi2().apply(&d("1010")).expect("ψ2(1010)");
        let p2b = psi2().apply(&d("10")).expect("ψ2(10)");
        let b0 = cat(&[
            &d("0301"),
            &p1.drop_last(3),
            &p2a.drop_last(6),
            &p2b.drop_last(12),
            &d("301020"),
        ]);
        let b1 = rho().apply(&b0[7..b0.len() - 5]).expect("ρ is total");
        let e = cat(&[&d("0102"), &b0, &d("1"), &b0.drop_last(9)]);
        let f = cat(&[
            &b0.suffix(9),
            &d("3010302"),
            &c,
            &d("0103"),
            &plus(&c),
            &d("02"),
        ]);
        Fixed { c, b0, b1, e, f }
    })
}

static A_WORD: OnceLock<Word> = OnceLock::new();

pub fn constant(name: Constant) -> Result<Word, LexiconError> {
    let f = fixed();
    Ok(match name {
        Constant::C => f.c.clone(),
        Constant::B0 => f.b0.clone(),
        Constant::B1 => f.b1.clone(),
        Constant::E => f.e.clone(),
        Constant::F => f.f.clone(),
        Constant::G => Word::digits("010203012"),
        Constant::A => a_word()?.clone(),
        Constant::Psi2Zero => Word::digits(PSI2_ZERO),
        Constant::C3 => Word::digits(C3),
        Constant::B2 => Word::digits("0102012021012"),
    })
}

/// The shared copy of `A`, derived on first use unless one was installed.
pub fn a_word() -> Result<&'static Word, LexiconError> {
    if let Some(a) = A_WORD.get() {
        return Ok(a);
    }
    let a = derive_a()?;
    Ok(A_WORD.get_or_init(|| a))
}

/// Installs a previously derived `A` (e.g. from the cache) after checking its
/// shape. Returns the word actually in use.
pub fn install_a(a: Word) -> Result<&'static Word, LexiconError> {
    check_a_shape(&a)?;
    Ok(A_WORD.get_or_init(|| a))
}

fn check_a_shape(a: &[Letter]) -> Result<(), LexiconError> {
    if a.len() != A_LEN {
        return Err(LexiconError::Integrity(format!(
            "A has length {}, expected {A_LEN}",
            a.len()
        )));
    }
    if !a.starts_with(&plus(&Word::digits(PSI2_ZERO))) {
        return Err(LexiconError::Integrity(
            "A does not begin with ψ2(0)⁺".to_string(),
        ));
    }
    Ok(())
}

pub fn derive_a() -> Result<Word, LexiconError> {
    derive_a_with(|n, len| compute_l_prefix(&[n], len))
}

/// Derives `A` from `L(3)` and cross-checks it against `L(4)` and `L(5)`;
/// `l_prefix(n, len)` must return `L(n)[:len]`.
pub fn derive_a_with(l_prefix: impl Fn(Letter, usize) -> Word) -> Result<Word, LexiconError> {
    let window = |n: u32| -> Result<Word, LexiconError> {
        let start = 1 + t_word(n)?.len();
        Ok(l_prefix(n, start + A_LEN).suffix(A_LEN))
    };
    let a = window(3)?;
    check_a_shape(&a)?;
    for n in [4, 5] {
        if window(n)? != a {
            return Err(LexiconError::Integrity(format!(
                "the window after {n}·T({n}) in L({n}) differs from A"
            )));
        }
    }
    Ok(a)
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Writes `A` as a header line `# length=… sha256=…` followed by one csv line.
pub fn save_a_cache(path: &Path, a: &Word) -> Result<(), LexiconError> {
    let body = a.to_csv();
    let text = format!("# length={} sha256={}\n{body}\n", a.len(), digest(&body));
    let io_err = |e: io::Error| LexiconError::Cache {
        path: path.to_path_buf(),
        reason: e.to_string(),
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    fs::write(path, text).map_err(io_err)
}

/// Reads a cached `A`; `Ok(None)` if the file is absent, stale or corrupt.
pub fn load_a_cache(path: &Path) -> Result<Option<Word>, LexiconError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => {
            return Err(LexiconError::Cache {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })
        }
    };
    let mut lines = text.lines();
    let (Some(header), Some(body)) = (lines.next(), lines.next()) else {
        return Ok(None);
    };
    let expected = format!("# length={A_LEN} sha256={}", digest(body));
    if header != expected {
        return Ok(None);
    }
    let Ok(a) = body.parse::<Word>() else {
        return Ok(None);
    };
    Ok(check_a_shape(&a).is_ok().then_some(a))
}

/// Uses the cache at `path` when valid, otherwise derives `A` and rewrites it.
pub fn load_or_derive_a(path: &Path) -> Result<Word, LexiconError> {
    if let Some(a) = load_a_cache(path)? {
        return Ok(a);
    }
    let a = derive_a()?;
    save_a_cache(path, &a)?;
    Ok(a)
}

/// `Y_1 = L(1)[:5177]`; `Y_n = n·T(n)·A` for `n ≥ 3`.
pub fn y_word(n: u32) -> Result<Word, LexiconError> {
    match n {
        0 | 2 => Err(LexiconError::Domain { what: "Y", n }),
        1 => Ok(compute_l_prefix(&[1], Y1_LEN)),
        _ => Ok(cat(&[&[n], &t_word(n)?, a_word()?])),
    }
}

fn rule_cap(n: Letter) -> Result<(), MorphismError> {
    cap("image", n, CONSTRUCTION_CAP).map_err(MorphismError::from)
}

pub(crate) fn psi1_rule(_: &Morphism, n: Letter) -> Result<Word, MorphismError> {
    if n == 0 {
        return Ok(Word::digits("202101"));
    }
    rule_cap(n)?;
    Ok(cat(&[&[n + 1], &p_word(0, n + 1)?]))
}

pub(crate) fn psi2_rule(_: &Morphism, n: Letter) -> Result<Word, MorphismError> {
    if n == 0 {
        return Ok(Word::digits(PSI2_ZERO));
    }
    rule_cap(n)?;
    Ok(cat(&[&[n + 2], &p_word(0, n + 2)?, &p_word(1, n + 2)?]))
}

pub(crate) fn alpha_rule(m: &Morphism, n: Letter) -> Result<Word, MorphismError> {
    rule_cap(n)?;
    let f = fixed();
    match n {
        0 => Ok(cat(&[&f.e, &f.f, &f.e])),
        1 => {
            let r4 = ruler_prefix(4)?;
            Ok(cat(&[&f.b1, &r4, &f.c, &f.b1, &r4]))
        }
        _ => {
            let prev = plus(&m.image(n - 1)?);
            let r = ruler_prefix(n + 3)?;
            Ok(cat(&[&prev, &r, &f.c, &prev, &r]))
        }
    }
}

pub(crate) fn gamma_rule(_: &Morphism, n: Letter) -> Result<Word, MorphismError> {
    rule_cap(n)?;
    if n == 0 {
        let c3 = Word::digits(C3);
        return Ok(c3.concat(&plus(&c3)));
    }
    let mut out = Word::empty();
    for k in 4..=n + 2 {
        out.extend_from_slice(&ruler_prefix(k)?);
        out.extend_from_slice(&plus(&bc_word(BcKind::B, k)?));
    }
    out.extend_from_slice(&ruler_prefix(n + 3)?);
    out.extend_from_slice(&bc_word(BcKind::B, n + 3)?);
    Ok(out)
}
