//! A registry of named computational checks, runnable one at a time or in
//! bulk, with text and line-oriented reports.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::inducer::{
    closed_form_x, induce_prefix, letter_pair_test, square_free_words, InducerScaffold,
};
use crate::lexicon::{
    self, bc_word, constant, p_word, ruler_prefix, t_word, BcKind, Constant, A_LEN, Y1_LEN,
};
use crate::lexleast::{generates, LexGenerator};
use crate::morphism::{alpha, gamma, psi1, psi2, rho, ruler_inverse, ruler_stream, Morphism};
use crate::square::{find_square, occurrences};
use crate::word::{cat, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: &'static str,
    pub status: Status,
    pub elapsed: Duration,
    /// Description of the disagreement when `status` is `Fail`.
    pub witness: Option<String>,
    pub claim: &'static str,
    pub conjecture: bool,
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("no check registered under {0:?}")]
    UnknownCheck(String),
}

/// Failure description carried out of a check body.
#[derive(Debug)]
pub struct Failure(String);

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Outcome = Result<(), Failure>;

fn fail<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(msg.into()))
}

pub struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    pub conjecture: bool,
    pub needs_a: bool,
    pub default_depth: Option<usize>,
    run: fn(&Context, usize) -> Outcome,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check").field("id", &self.id).finish()
    }
}

/// Where the harness obtains `A`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ASource {
    #[default]
    Derive,
    Cache(PathBuf),
}

/// Greedy generators shared between checks, one per prefix.
#[derive(Default)]
pub struct LexCache {
    gens: Mutex<HashMap<Word, Arc<Mutex<LexGenerator>>>>,
}

impl LexCache {
    /// `L(p)[:n]`, extending the shared generator for `p` as needed.
    pub fn prefix(&self, p: &[Letter], n: usize) -> Word {
        let gen = {
            let mut gens = self.gens.lock().unwrap();
            Arc::clone(
                gens.entry(Word::from_slice(p))
                    .or_insert_with(|| Arc::new(Mutex::new(LexGenerator::new(p)))),
            )
        };
        let mut gen = gen.lock().unwrap();
        gen.extend_to(n);
        Word::from_slice(&gen.word()[..n])
    }
}

#[derive(Default)]
pub struct Context {
    pub lex: LexCache,
    a_source: ASource,
    a: OnceLock<Result<Word, String>>,
}

impl Context {
    pub fn new(a_source: ASource) -> Self {
        Context {
            a_source,
            ..Context::default()
        }
    }

    pub fn l(&self, p: &[Letter], n: usize) -> Word {
        self.lex.prefix(p, n)
    }

    pub fn a(&self) -> Result<&Word, Failure> {
        let a = self.a.get_or_init(|| {
            let a = match &self.a_source {
                ASource::Derive => lexicon::derive_a_with(|n, len| self.l(&[n], len)),
                ASource::Cache(path) => match lexicon::load_a_cache(path) {
                    Ok(Some(a)) => Ok(a),
                    Ok(None) => lexicon::derive_a_with(|n, len| self.l(&[n], len))
                        .and_then(|a| lexicon::save_a_cache(path, &a).map(|_| a)),
                    Err(e) => Err(e),
                },
            };
            a.and_then(|a| lexicon::install_a(a).cloned())
                .map_err(|e| e.to_string())
        });
        a.as_ref().map_err(|e| Failure(e.clone()))
    }
}

fn square_free(what: &str, w: &[Letter]) -> Outcome {
    match find_square(w) {
        None => Ok(()),
        Some(sq) => fail(format!(
            "{what} (length {}) has a square of period {} at {}",
            w.len(),
            sq.period,
            sq.start
        )),
    }
}

fn agree(what: &str, got: &[Letter], want: &[Letter]) -> Outcome {
    if got == want {
        return Ok(());
    }
    let i = got
        .iter()
        .zip(want)
        .position(|(a, b)| a != b)
        .unwrap_or(got.len().min(want.len()));
    let window = |w: &[Letter]| Word::from_slice(&w[i.min(w.len())..(i + 12).min(w.len())]);
    fail(format!(
        "{what}: lengths {} vs {}, first difference at {i}: {} vs {}",
        got.len(),
        want.len(),
        window(got),
        window(want)
    ))
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        fail(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn d(s: &str) -> Word {
    Word::digits(s)
}

fn plus(w: &[Letter]) -> Word {
    Word::from_slice(w).successor().expect("nonempty")
}

fn image(m: &Morphism, w: &str) -> Result<Word, Failure> {
    Ok(m.apply(&d(w))?)
}

fn gen_check(what: &str, p: &[Letter], s: &[Letter]) -> Outcome {
    if generates(p, s) {
        Ok(())
    } else {
        let got = crate::compute_l_prefix(p, p.len() + s.len());
        agree(what, &got[p.len()..], s)
    }
}

/// `α(L(ε))[:n]`.
pub fn alpha_of_ruler(n: usize) -> Result<Word, Failure> {
    Ok(alpha().apply_stream(ruler_stream(), n)?)
}

/// `ρ(α(L(ε)))[:n]`.
pub fn rho_alpha_of_ruler(n: usize) -> Result<Word, Failure> {
    let inner = alpha_of_ruler(n.div_ceil(2))?;
    Ok(rho().apply_stream(inner, n)?)
}

fn y_n(ctx: &Context, n: Letter) -> Result<Word, Failure> {
    Ok(cat(&[&[n], &t_word(n)?, ctx.a()?]))
}

fn sf_alpha(w: &str) -> Outcome {
    square_free(&format!("α({w})"), &image(alpha(), w)?)
}

fn occurrences_are(what: &str, pattern: &[Letter], text: &[Letter], want: &[usize]) -> Outcome {
    expect_eq(what, occurrences(pattern, text), want.to_vec())
}

/// `lim α(n)[:n]`; `α(k)[:-1]` is a prefix of `α(k+1)`.
fn alpha_limit(n: usize) -> Result<Word, Failure> {
    for k in 1..=lexicon::CONSTRUCTION_CAP {
        let a = alpha().image(k)?;
        if a.len() > n {
            return Ok(a.prefix(n));
        }
    }
    fail(format!("no α(k) within the cap is longer than {n}"))
}

fn pow2(n: u32) -> usize {
    1usize << n
}

fn glossary(_: &Context, _: usize) -> Outcome {
    let cap = lexicon::CONSTRUCTION_CAP;
    for n in 0..=lexicon::RULER_CAP {
        expect_eq("|R_n|", ruler_prefix(n)?.len(), pow2(n))?;
    }
    for n in 0..lexicon::RULER_CAP {
        expect_eq("|P_0(n)|", p_word(0, n)?.len(), pow2(n + 1) - 2)?;
    }
    for n in 3..=cap {
        let k = n as usize;
        expect_eq(
            "|P_1(n)|",
            p_word(1, n)?.len(),
            (4 * k + 1) * pow2(n - 1) - 5,
        )?;
        expect_eq(
            "|P_2(n)|",
            p_word(2, n)?.len(),
            (4 * k * k + 14 * k + 149) * pow2(n - 2) - 193,
        )?;
        expect_eq(
            "|T(n)|",
            t_word(n)?.len(),
            (4 * k * k + 22 * k + 159) * pow2(n - 2) - 200,
        )?;
    }
    for n in 1..=cap {
        expect_eq("|ψ1(n)|", psi1().image(n)?.len(), pow2(n + 2) - 1)?;
    }
    // ψ2(n) is built from P_1(n+2)
    for n in 1..=cap - 2 {
        let k = n as usize;
        expect_eq(
            "|ψ2(n)|",
            psi2().image(n)?.len(),
            (4 * k + 13) * pow2(n + 1) - 6,
        )?;
    }
    for n in 2..=cap {
        let k = n as usize;
        expect_eq(
            "|b_n|",
            bc_word(BcKind::B, n)?.len(),
            pow2(n - 2) * (4 * k + 5),
        )?;
    }
    for n in 3..=cap {
        let k = n as usize;
        expect_eq(
            "|c_n|",
            bc_word(BcKind::C, n)?.len(),
            pow2(n - 3) * (4 * k * k + 22 * k + 159),
        )?;
    }
    for (c, len) in [
        (Constant::C, 10),
        (Constant::B0, 798),
        (Constant::B1, 1572),
        (Constant::E, 1592),
        (Constant::F, 42),
        (Constant::G, 9),
        (Constant::Psi2Zero, 199),
        (Constant::C3, 261),
        (Constant::B2, 13),
        (Constant::A, A_LEN),
    ] {
        expect_eq(c.name(), constant(c)?.len(), len)?;
    }
    expect_eq("|α(0)|", alpha().image(0)?.len(), 3226)?;
    expect_eq("|α(1)|", alpha().image(1)?.len(), 3186)?;
    expect_eq("|α(3)|", alpha().image(3)?.len(), 13030)
}

fn lnn(ctx: &Context, depth: usize) -> Outcome {
    for n in 3..=5 {
        pair(ctx, n, n, depth)?;
    }
    Ok(())
}

fn ln1n2(ctx: &Context, depth: usize) -> Outcome {
    for n1 in 3..=5 {
        for n2 in 3..=5 {
            pair(ctx, n1, n2, depth)?;
        }
    }
    Ok(())
}

fn pair(ctx: &Context, n1: Letter, n2: Letter, depth: usize) -> Outcome {
    let lhs = ctx.l(&[n1, n2], depth);
    let rhs = Word::letter(n1).concat(&ctx.l(&[n2], depth - 1));
    agree(&format!("L({n1}{n2}) vs {n1}·L({n2})"), &lhs, &rhs)
}

fn ln_tail(ctx: &Context, tail: Letter, depth: usize) -> Outcome {
    for n in [3, 4] {
        let lhs = ctx.l(&[n, tail], depth);
        let rhs = Word::letter(n).concat(&ctx.l(&[tail], depth - 1));
        agree(&format!("L({n}{tail}) vs {n}·L({tail})"), &lhs, &rhs)?;
    }
    Ok(())
}

fn ln_structure(ctx: &Context, n: Letter, depth: usize) -> Outcome {
    let y = y_n(ctx, n)?;
    let got = ctx.l(&[n], y.len() + depth);
    agree(&format!("L({n})[:|Y_{n}|]"), &got[..y.len()], &y)?;
    agree(
        &format!("L({n}) after Y_{n}"),
        &got[y.len()..],
        &rho_alpha_of_ruler(depth)?,
    )
}

macro_rules! check {
    ($id:expr, $claim:expr, |$ctx:pat_param, $depth:pat_param| $body:expr) => {
        check!(@ $id, $claim, false, false, None, |$ctx, $depth| $body)
    };
    (@ $id:expr, $claim:expr, $conj:expr, $a:expr, $dd:expr, |$ctx:pat_param, $depth:pat_param| $body:expr) => {
        Check {
            id: $id,
            claim: $claim,
            conjecture: $conj,
            needs_a: $a,
            default_depth: $dd,
            run: |$ctx, $depth| $body,
        }
    };
}

static REGISTRY: &[Check] = &[
    // square-freeness
    check!("sf/psi1-010", "ψ1(010) is square-free", |_, _| {
        square_free("ψ1(010)", &image(psi1(), "010")?)
    }),
    check!("sf/psi1-3R2R1-psi20", "ψ1(3·R_2·R_1)·ψ2(0) is square-free", |_, _| {
        let w = cat(&[&image(psi1(), "3010201")?, &psi2().image(0)?]);
        square_free("ψ1(3R_2R_1)ψ2(0)", &w)
    }),
    check!("sf/psi2-10", "ψ2(10) is square-free", |_, _| {
        square_free("ψ2(10)", &image(psi2(), "10")?)
    }),
    check!("sf/psi2-010", "ψ2(010) is square-free", |_, _| {
        square_free("ψ2(010)", &image(psi2(), "010")?)
    }),
    check!("sf/alpha-0", "α(0) is square-free", |_, _| sf_alpha("0")),
    check!("sf/alpha-1", "α(1) is square-free", |_, _| sf_alpha("1")),
    check!("sf/alpha-01", "α(01) is square-free", |_, _| sf_alpha("01")),
    check!("sf/alpha-02", "α(02) is square-free", |_, _| sf_alpha("02")),
    check!("sf/alpha-03", "α(03) is square-free", |_, _| sf_alpha("03")),
    check!("sf/alpha-010", "α(010) is square-free", |_, _| sf_alpha("010")),
    check!("sf/alpha-020", "α(020) is square-free", |_, _| sf_alpha("020")),
    check!("sf/alpha-10", "α(10) is square-free", |_, _| sf_alpha("10")),
    check!("sf/C-alpha1plus", "C·α(1)⁺ is square-free", |_, _| {
        let w = cat(&[&constant(Constant::C)?, &plus(&alpha().image(1)?)]);
        square_free("Cα(1)⁺", &w)
    }),
    check!("sf/Y1-alphaR2", "Y_1·α(R_2) is square-free", |ctx, _| {
        let w = cat(&[&ctx.l(&[1], Y1_LEN), &alpha().apply(&ruler_prefix(2)?)?]);
        square_free("Y_1α(R_2)", &w)
    }),
    check!(@ "sf/A", "A is square-free", false, true, None, |ctx, _| {
        square_free("A", ctx.a()?)
    }),
    check!(@ "sf/A-rho-alpha-R2", "A·ρ(α(R_2)) is square-free", false, true, None, |ctx, _| {
        let tail = rho().apply(&alpha().apply(&ruler_prefix(2)?)?)?;
        square_free("Aρ(α(R_2))", &cat(&[ctx.a()?, &tail]))
    }),
    check!(@ "sf/nTnA-345", "n·T(n)·A is square-free for n = 3, 4, 5", false, true, None, |ctx, _| {
        for n in 3..=5 {
            square_free(&format!("{n}T({n})A"), &y_n(ctx, n)?)?;
        }
        Ok(())
    }),
    check!(@ "sf/T6-A", "T(6)·A is square-free", false, true, None, |ctx, _| {
        square_free("T(6)A", &cat(&[&t_word(6)?, ctx.a()?]))
    }),
    // generation
    check!("gen/R2R12", "R_2R_1·2 generates R_2R_1·ψ1(0)", |_, _| {
        gen_check("R_2R_1 2", &d("0102012"), &d("02101"))
    }),
    check!("gen/psi1-1-0", "ψ1(1) generates ψ1(10)", |_, _| {
        gen_check("ψ1(1)", &psi1().image(1)?, &psi1().image(0)?)
    }),
    check!("gen/psi1-1-01", "ψ1(1) generates ψ1(101)", |_, _| {
        gen_check("ψ1(1)", &psi1().image(1)?, &image(psi1(), "01")?)
    }),
    check!("gen/psi2-1-0", "ψ2(1) generates ψ2(10)", |_, _| {
        gen_check("ψ2(1)", &psi2().image(1)?, &psi2().image(0)?)
    }),
    check!("gen/psi2-1-01", "ψ2(1) generates ψ2(101)", |_, _| {
        gen_check("ψ2(1)", &psi2().image(1)?, &image(psi2(), "01")?)
    }),
    check!("gen/P03P13", "P_0(3)P_1(3) generates P_0(3)P_1(3)·20210", |_, _| {
        let p = cat(&[&p_word(0, 3)?, &p_word(1, 3)?]);
        gen_check("P_0(3)P_1(3)", &p, &d("20210"))
    }),
    check!("gen/P03P13-psi20", "P_0(3)P_1(3)·202102 generates P_0(3)P_1(3)·ψ2(0)", |_, _| {
        let p = cat(&[&p_word(0, 3)?, &p_word(1, 3)?, &d("202102")]);
        gen_check("P_0(3)P_1(3)202102", &p, &psi2().image(0)?[6..])
    }),
    check!("gen/G-alpha0", "G is the shortest prefix of α(0) that generates α(0)", |_, _| {
        let a0 = alpha().image(0)?;
        let g = constant(Constant::G)?;
        expect_eq("G is a prefix of α(0)", a0.has_prefix(&g), true)?;
        gen_check("G", &g, &a0[g.len()..])?;
        match (0..g.len()).find(|&k| generates(&a0[..k], &a0[k..])) {
            Some(k) => fail(format!("the shorter prefix α(0)[:{k}] already generates α(0)")),
            None => Ok(()),
        }
    }),
    check!("gen/010203-C", "010203 generates C", |_, _| {
        gen_check("010203", &d("010203"), &d("0102"))
    }),
    check!("gen/alpha0-alpha01", "α(0) generates α(01)", |_, _| {
        gen_check("α(0)", &alpha().image(0)?, &alpha().image(1)?)
    }),
    check!("gen/alpha01-alpha010", "α(01) generates α(010)", |_, _| {
        gen_check("α(01)", &image(alpha(), "01")?, &alpha().image(0)?)
    }),
    check!("gen/C-alpha1plus", "C·α(1)⁺ is a prefix of L(C)", |ctx, _| {
        let want = cat(&[&constant(Constant::C)?, &plus(&alpha().image(1)?)]);
        agree("L(C)", &ctx.l(&constant(Constant::C)?, want.len()), &want)
    }),
    check!(@ "gen/T3-A-rhoG", "T(3)·ψ2(0)⁺ generates T(3)·A·ρ(G)", false, true, None, |ctx, _| {
        let p = cat(&[&t_word(3)?, &plus(&psi2().image(0)?)]);
        let s = cat(&[&ctx.a()?[199..], &rho().apply(&constant(Constant::G)?)?]);
        gen_check("T(3)ψ2(0)⁺", &p, &s)
    }),
    check!(@ "gen/L1-Y1G", "L(1) = L(Y_1·G)", false, false, Some(1000), |ctx, depth| {
        let g = constant(Constant::G)?;
        let got = ctx.l(&[1], Y1_LEN + g.len().max(depth));
        agree("L(1) after Y_1", &got[Y1_LEN..Y1_LEN + g.len()], &g)?;
        agree("L(1) after Y_1", &got[Y1_LEN..], &alpha_of_ruler(got.len() - Y1_LEN)?)
    }),
    // occurrences
    check!("occ/E-in-alpha0", "E occurs in α(0) only as a prefix and a suffix", |_, _| {
        let a0 = alpha().image(0)?;
        let e = constant(Constant::E)?;
        occurrences_are("E in α(0)", &e, &a0, &[0, a0.len() - e.len()])
    }),
    check!("occ/E-border", "E is the longest proper border of α(0)", |_, _| {
        let a0 = alpha().image(0)?;
        let border = (1..a0.len()).rev().find(|&l| a0[..l] == a0[a0.len() - l..]);
        expect_eq("border length", border, Some(constant(Constant::E)?.len()))
    }),
    check!("occ/202102-psi20", "202102 occurs in ψ2(0) only as a prefix", |_, _| {
        occurrences_are("202102 in ψ2(0)", &d("202102"), &psi2().image(0)?, &[0])
    }),
    check!("occ/202101202-psi20", "202101202 occurs in ψ2(0) only as a suffix", |_, _| {
        occurrences_are("202101202 in ψ2(0)", &d("202101202"), &psi2().image(0)?, &[190])
    }),
    check!(@ "occ/p-once-in-A", "A[:254] occurs exactly once in A", false, true, None, |ctx, _| {
        let a = ctx.a()?;
        occurrences_are("A[:254] in A", &a[..254], a, &[0])
    }),
    check!(@ "occ/s-once-in-A", "A[-88:] occurs exactly once in A", false, true, None, |ctx, _| {
        let a = ctx.a()?;
        occurrences_are("A[-88:] in A", &a[a.len() - 88..], a, &[a.len() - 88])
    }),
    check!(@ "occ/s-properties", "s = A[-88:] is even-grounded, has max 4 seven times, and avoids ψ2(0), ψ2(1), ψ2(2)", false, true, None, |ctx, _| {
        let a = ctx.a()?;
        let s = Word::from_slice(&a[a.len() - 88..]);
        expect_eq("s even-grounded", s.is_even_grounded(), true)?;
        expect_eq("max(s)", s.max_letter(), Some(4))?;
        expect_eq("occurrences of 4 in s", s.iter().filter(|&&l| l == 4).count(), 7)?;
        for k in 0..=2 {
            occurrences_are(&format!("s in ψ2({k})"), &s, &psi2().image(k)?, &[])?;
        }
        expect_eq("ρ⁻¹(s)[:2]", ruler_inverse(&s)?.prefix(2), d("13"))
    }),
    check!(@ "occ/rhoinv-s-not-in-alpha0", "ρ⁻¹(A[-88:]) does not occur in α(0)", false, true, None, |ctx, _| {
        let a = ctx.a()?;
        let s = ruler_inverse(&a[a.len() - 88..])?;
        occurrences_are("ρ⁻¹(s) in α(0)", &s, &alpha().image(0)?, &[])
    }),
    // lengths and letter structure
    check!("len/alpha3-4-shared", "α(3) and α(4) share exactly their first 13029 letters", |_, _| {
        let (a3, a4) = (alpha().image(3)?, alpha().image(4)?);
        let lcp = a3.iter().zip(a4.iter()).take_while(|(x, y)| x == y).count();
        expect_eq("common prefix of α(3) and α(4)", lcp, 13029)
    }),
    check!(@ "len/all-glossary", "every length formula holds up to the construction caps", false, true, None, |ctx, depth| glossary(ctx, depth)),
    check!("len/alpha-letters", "α(n) ends in n+3, has no larger letter, and has four (n+3)s for n ≥ 2", |_, _| {
        for n in 1..=6u32 {
            let a = alpha().image(n)?;
            expect_eq(&format!("α({n})[-1]"), a.last().copied(), Some(n + 3))?;
            expect_eq(&format!("max α({n})"), a.max_letter(), Some(n + 3))?;
            if n >= 2 {
                let count = a.iter().filter(|&&l| l == n + 3).count();
                expect_eq(&format!("count of {} in α({n})", n + 3), count, 4)?;
            }
        }
        Ok(())
    }),
    check!("len/alpha1-suffix", "0203·R_3⁺·R_4 is a suffix of α(1)", |_, _| {
        let tail = cat(&[&d("0203"), &plus(&ruler_prefix(3)?), &ruler_prefix(4)?]);
        expect_eq("suffix", alpha().image(1)?.has_suffix(&tail), true)
    }),
    check!("len/alpha-center", "the middle ten letters of α(n) are C for n ≥ 1", |_, _| {
        let c = constant(Constant::C)?;
        for n in 1..=6 {
            let a = alpha().image(n)?;
            let mid = (a.len() - c.len()) / 2;
            agree(&format!("centre of α({n})"), &a[mid..mid + c.len()], &c)?;
        }
        Ok(())
    }),
    check!("len/alpha0-grounded-ends", "the longest grounded prefix of α(0) is 01020301 and its longest grounded suffix is 2", |_, _| {
        let a0 = alpha().image(0)?;
        let pre = (0..=a0.len()).rev().find(|&k| a0.prefix(k).is_grounded()).unwrap_or(0);
        let suf = (0..=a0.len()).rev().find(|&k| a0.suffix(k).is_grounded()).unwrap_or(0);
        expect_eq("grounded prefix", a0.prefix(pre), d("01020301"))?;
        expect_eq("grounded suffix", a0.suffix(suf), d("2"))
    }),
    check!("len/B1-prefixes", "α(n) begins with B_1 for n ≥ 1, and B_1 begins with F⁺⁺", |_, _| {
        let b1 = constant(Constant::B1)?;
        let f2 = plus(&plus(&constant(Constant::F)?));
        expect_eq("B_1 has prefix F⁺⁺", b1.has_prefix(&f2), true)?;
        for n in 1..=5 {
            expect_eq(&format!("α({n}) has prefix B_1"), alpha().image(n)?.has_prefix(&b1), true)?;
        }
        Ok(())
    }),
    check!(@ "len/max-letters", "letter maxima used by the structure arguments", false, true, None, |ctx, _| {
        let a = ctx.a()?;
        expect_eq("max(A)", a.max_letter(), Some(5))?;
        expect_eq("max(T(6)A)", cat(&[&t_word(6)?, a]).max_letter(), Some(6))?;
        let rho_a0 = rho().apply(&alpha().image(0)?)?;
        expect_eq("max(Aρ(α(0)))", cat(&[a, &rho_a0]).max_letter(), Some(5))?;
        let y1_a0 = cat(&[&ctx.l(&[1], Y1_LEN), &alpha().image(0)?]);
        expect_eq("max(Y_1α(0))", y1_a0.max_letter(), Some(4))?;
        for n in 0..=6 {
            let m = rho().apply(&alpha().image(n)?)?.max_letter();
            expect_eq(&format!("max ρ(α({n}))"), m, Some(n + 4))?;
        }
        Ok(())
    }),
    // structure theorems
    check!(@ "thm/L1-structure", "L(1) = Y_1·α(L(ε)) to depth", false, false, Some(20_000), |ctx, depth| {
        let got = ctx.l(&[1], Y1_LEN + depth);
        agree("L(1) after Y_1", &got[Y1_LEN..], &alpha_of_ruler(depth)?)
    }),
    check!(@ "thm/Ln-structure-3", "L(3) = Y_3·ρ(α(L(ε))) to depth", false, true, Some(20_000), |ctx, depth| ln_structure(ctx, 3, depth)),
    check!(@ "thm/Ln-structure-4", "L(4) = Y_4·ρ(α(L(ε))) to depth", false, true, Some(20_000), |ctx, depth| ln_structure(ctx, 4, depth)),
    check!(@ "thm/Ln-structure-5", "L(5) = Y_5·ρ(α(L(ε))) to depth", false, true, Some(20_000), |ctx, depth| ln_structure(ctx, 5, depth)),
    check!("thm/nT-prefix", "L(n) begins with n·T(n) for n = 3..6 and with n·P_0(n)·P_1(n) for n = 3..8", |ctx, _| {
        for n in 3..=8 {
            let want = cat(&[&[n], &p_word(0, n)?, &p_word(1, n)?]);
            agree(&format!("L({n})"), &ctx.l(&[n], want.len()), &want)?;
        }
        for n in 3..=6 {
            let want = cat(&[&[n], &t_word(n)?]);
            agree(&format!("L({n})"), &ctx.l(&[n], want.len()), &want)?;
        }
        Ok(())
    }),
    check!(@ "thm/L0n-rho", "L(ρ(x)) = ρ(L(x)) for every square-free x with |x| ≤ 4 over {0,1,2,3}", false, false, Some(512), |_, depth| {
        let sample = square_free_words(4, 3);
        let v = rho().l_commuting_sample(&sample, 2 * depth)?;
        match v.witness {
            None => Ok(()),
            Some(w) => fail(format!("ρ fails on {}: {:?}", w.word, w.detail)),
        }
    }),
    check!(@ "thm/alpha-lcommuting", "L(α(x)) = α(L(x)) for even-grounded square-free x with |x| ≤ 4 over {0,1,2,3}", false, false, Some(2000), |_, depth| {
        let sample: Vec<Word> = square_free_words(4, 3)
            .into_iter()
            .filter(|x| x.is_even_grounded())
            .collect();
        let v = alpha().l_commuting_sample(&sample, depth)?;
        match v.witness {
            None => Ok(()),
            Some(w) => fail(format!("α fails on {}: {:?}", w.word, w.detail)),
        }
    }),
    check!(@ "thm/LC", "L(C) = C·lim α(n) to depth", false, false, Some(20_000), |ctx, depth| {
        let c = constant(Constant::C)?;
        let got = ctx.l(&c, c.len() + depth);
        agree("L(C) after C", &got[c.len()..], &alpha_limit(depth)?)
    }),
    check!(@ "thm/L012", "L(012) = 01201·lim ρ⁻¹(α(n)) to depth", false, false, Some(20_000), |ctx, depth| {
        let got = ctx.l(&d("012"), 5 + depth);
        agree("L(012)[:5]", &got[..5], &d("01201"))?;
        agree("L(012) after 01201", &got[5..], &ruler_inverse(&alpha_limit(2 * depth)?)?)
    }),
    check!(@ "thm/Lnn", "L(nn) = n·L(n) for n = 3, 4, 5 to depth", false, false, Some(2000), |ctx, depth| lnn(ctx, depth)),
    check!(@ "thm/Ln1n2", "L(n1·n2) = n1·L(n2) for n1, n2 ∈ {3,4,5} to depth", false, false, Some(2000), |ctx, depth| ln1n2(ctx, depth)),
    // conjectures
    check!(@ "conj/L2-gamma", "L(2) = 2·γ(L(ε)) (consistent to depth)", true, false, Some(30_000), |ctx, depth| {
        let got = ctx.l(&[2], 1 + depth);
        let want = Word::letter(2).concat(&gamma().apply_stream(ruler_stream(), depth)?);
        agree("L(2)", &got, &want)
    }),
    check!(@ "conj/Ln1", "L(n1) = n·L(1) for n = 3, 4 (consistent to depth)", true, false, Some(10_000), |ctx, depth| ln_tail(ctx, 1, depth)),
    check!(@ "conj/Ln2", "L(n2) = n·L(2) for n = 3, 4 (consistent to depth)", true, false, Some(10_000), |ctx, depth| ln_tail(ctx, 2, depth)),
    // inducer
    check!("ind/x3-2021", "x_3(2021) = 654303143032015430314303 generates x_3·2021", |_, _| {
        expect_eq("x_3", induce_prefix(&d("2021"))?, d("654303143032015430314303"))
    }),
    check!("ind/exhaustive-small", "x_m(w) generates x_m·w and equals V_m·φ_w(R_m[:-1]) for square-free w, |w| ≤ 5, letters ≤ 3", |_, _| {
        let words = square_free_words(5, 3);
        words.par_iter().try_for_each(|w| -> Outcome {
            let x = induce_prefix(w)?;
            let scaffold = InducerScaffold::new(w)?;
            agree(&format!("closed form for {w}"), &closed_form_x(w, scaffold.m())?, &x)
        })
    }),
    check!("ind/letter-pairs", "letter_pair_test holds for (n, n), n ≤ 5, and for {3,4,5}² at depth 2000", |_, _| {
        let pairs = (0..=5).map(|n| (n, n)).chain((3..=5).flat_map(|a| (3..=5).map(move |b| (a, b))));
        for (a, b) in pairs {
            if !letter_pair_test(a, b, 2000) {
                return fail(format!("L({a}{b}) ≠ {a}·L({b}) within 2000 letters"));
            }
        }
        Ok(())
    }),
];

pub fn registry() -> &'static [Check] {
    REGISTRY
}

pub fn find_check(id: &str) -> Result<&'static Check, HarnessError> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| HarnessError::UnknownCheck(id.to_string()))
}

fn execute(
    ctx: &Context,
    check: &'static Check,
    depth_overrides: &HashMap<String, usize>,
) -> CheckResult {
    let depth = depth_overrides
        .get(check.id)
        .copied()
        .or(check.default_depth);
    let start = Instant::now();
    let (status, witness) = if depth == Some(0) {
        (Status::Skipped, None)
    } else {
        match (check.run)(ctx, depth.unwrap_or(0)) {
            Ok(()) => (Status::Pass, None),
            Err(Failure(msg)) => (Status::Fail, Some(msg)),
        }
    };
    CheckResult {
        id: check.id,
        status,
        elapsed: start.elapsed(),
        witness,
        claim: check.claim,
        conjecture: check.conjecture,
        depth: check.default_depth.and(depth),
    }
}

pub fn run_check(ctx: &Context, id: &str) -> Result<CheckResult, HarnessError> {
    Ok(execute(ctx, find_check(id)?, &HashMap::new()))
}

pub fn run_check_with_depth(
    ctx: &Context,
    id: &str,
    depth: usize,
) -> Result<CheckResult, HarnessError> {
    let overrides = HashMap::from([(id.to_string(), depth)]);
    Ok(execute(ctx, find_check(id)?, &overrides))
}

/// Runs every check whose id starts with `filter`, in parallel, in
/// registry order. `A` is obtained first if any selected check needs it.
pub fn run_all(
    ctx: &Context,
    filter: Option<&str>,
    depth_overrides: &HashMap<String, usize>,
) -> Vec<CheckResult> {
    let selected: Vec<&'static Check> = REGISTRY
        .iter()
        .filter(|c| filter.is_none_or(|f| c.id.starts_with(f)))
        .collect();
    if selected.iter().any(|c| c.needs_a) {
        // a failure here resurfaces in each dependent check
        let _ = ctx.a();
    }
    selected
        .par_iter()
        .map(|c| execute(ctx, c, depth_overrides))
        .collect()
}

/// Runs the named checks, in the order given.
pub fn run_ids(
    ctx: &Context,
    ids: &[&str],
    depth_overrides: &HashMap<String, usize>,
) -> Result<Vec<CheckResult>, HarnessError> {
    let checks = ids
        .iter()
        .map(|id| find_check(id))
        .collect::<Result<Vec<_>, _>>()?;
    if checks.iter().any(|c| c.needs_a) {
        let _ = ctx.a();
    }
    Ok(checks
        .par_iter()
        .map(|c| execute(ctx, c, depth_overrides))
        .collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub blocking_failures: usize,
}

impl Summary {
    pub fn of(results: &[CheckResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Skipped => s.skipped += 1,
                Status::Fail => {
                    s.fail += 1;
                    if !r.conjecture {
                        s.blocking_failures += 1;
                    }
                }
            }
        }
        s
    }

    /// Process exit status: nonzero iff a non-conjecture check failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.blocking_failures > 0)
    }
}

pub fn render_text(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in results {
        let mut note = r.claim.to_string();
        if r.conjecture {
            note.push_str(" [conjecture evidence]");
        }
        if let Some(d) = r.depth {
            let _ = write!(note, " [depth {d}]");
        }
        let _ = writeln!(
            out,
            "{}  {:width$}  {:>8.1} ms  {note}",
            r.status,
            r.id,
            r.elapsed.as_secs_f64() * 1e3,
        );
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "      {w}");
        }
    }
    let s = Summary::of(results);
    let _ = writeln!(
        out,
        "{} passed, {} failed ({} blocking), {} skipped",
        s.pass, s.fail, s.blocking_failures, s.skipped
    );
    out
}

pub fn render_lines(results: &[CheckResult]) -> String {
    results
        .iter()
        .map(|r| format!("{} {} {}\n", r.id, r.status, r.elapsed.as_millis()))
        .collect()
}
