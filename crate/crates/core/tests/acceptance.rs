//! Acceptance criteria 1 to 10, one line each. Run with
//! `cargo test -p lexleast-core --test acceptance`.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};

use lexleast::harness::{self, alpha_of_ruler, rho_alpha_of_ruler, Context, Status};
use lexleast::inducer::{
    closed_form_x, induce_prefix, letter_pair_test, square_free_words, sufficient_check,
    InducerScaffold,
};
use lexleast::lexicon::{self, bc_word, constant, p_word, ruler_prefix, t_word, BcKind, Constant};
use lexleast::morphism::{gamma, psi1, psi2, ruler_stream};
use lexleast::square::{has_square, naive_square_scan, square_endpoints};
use lexleast::{compute_l_prefix, generates, Letter, Word};

type Verdict = Result<String, String>;

struct Criterion {
    number: u8,
    title: &'static str,
    blocking: bool,
    run: fn(&Context) -> Verdict,
}

fn d(s: &str) -> Word {
    Word::digits(s)
}

fn same(what: &str, got: &[Letter], want: &[Letter]) -> Result<(), String> {
    if got == want {
        return Ok(());
    }
    let i = got
        .iter()
        .zip(want)
        .position(|(a, b)| a != b)
        .unwrap_or(got.len().min(want.len()));
    Err(format!(
        "{what}: lengths {} and {}, first difference at index {i}",
        got.len(),
        want.len()
    ))
}

fn equal<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn prefixes(_: &Context) -> Verdict {
    let cases = [
        ("1", "10120102012021012010201203010201"),
        ("2", "20102012021012010201202102010210"),
        ("33", "33010201030102012021012010201202"),
        ("12", "12010201202101201020120212010201"),
        ("13", "13010201030102012021012010201202"),
        ("21", "21012010201202101201020121012010"),
        ("23", "23010201030102012021012010201202"),
    ];
    for (p, want) in cases {
        same(&format!("L({p})"), &compute_l_prefix(&d(p), 32), &d(want))?;
    }
    let alpha = alpha_of_ruler(32).map_err(|e| e.to_string())?;
    same("α(L(ε))", &alpha, &d("01020301201020120210120102012023"))?;
    Ok("8 prefixes of 32 letters".into())
}

fn theorem_one(ctx: &Context) -> Verdict {
    let depth = 20_000;
    let y1 = ctx.l(&[1], lexicon::Y1_LEN);
    let tail = alpha_of_ruler(depth).map_err(|e| e.to_string())?;
    let got = ctx.l(&[1], y1.len() + depth);
    same("L(1)", &got, &y1.concat(&tail))?;
    Ok(format!("|Y_1| = {}, depth {depth}", y1.len()))
}

fn theorem_two(ctx: &Context) -> Verdict {
    let depth = 20_000;
    let a = ctx.a().map_err(|e| e.to_string())?;
    let tail = rho_alpha_of_ruler(depth).map_err(|e| e.to_string())?;
    let mut lens = Vec::new();
    for n in 3..=5 {
        let y: Word = [n]
            .into_iter()
            .chain(t_word(n).map_err(|e| e.to_string())?.iter().copied())
            .chain(a.iter().copied())
            .collect();
        match n {
            3 => equal("|Y_3|", y.len(), 14070)?,
            4 => equal("|Y_4|", y.len(), 14792)?,
            _ => {}
        }
        same(
            &format!("L({n})"),
            &ctx.l(&[n], y.len() + depth),
            &y.concat(&tail),
        )?;
        lens.push(y.len().to_string());
    }
    Ok(format!("|Y_3..5| = {}, depth {depth}", lens.join(", ")))
}

fn structure(_: &Context) -> Verdict {
    for n in 3..=6 {
        let t = t_word(n).map_err(|e| e.to_string())?;
        let want = Word::letter(n).concat(&t);
        same(
            &format!("L({n})[:1+|T({n})|]"),
            &compute_l_prefix(&[n], want.len()),
            &want,
        )?;
    }
    for n in 3..=8 {
        let p0 = p_word(0, n).map_err(|e| e.to_string())?;
        let p1 = p_word(1, n).map_err(|e| e.to_string())?;
        let want = Word::letter(n).concat(&p0).concat(&p1);
        same(
            &format!("L({n})[:1+|P_0P_1|]"),
            &compute_l_prefix(&[n], want.len()),
            &want,
        )?;
    }
    Ok("nT(n) for n = 3..6, nP_0(n)P_1(n) for n = 3..8".into())
}

fn glossary(_: &Context) -> Verdict {
    let e = |x: lexicon::LexiconError| x.to_string();
    let m = |x: lexleast::morphism::MorphismError| x.to_string();
    let p2 = |n: u32| 1i64 << n;
    let cap = lexicon::CONSTRUCTION_CAP;
    let mut count = 0;
    for n in 0..=lexicon::RULER_CAP {
        equal("|R_n|", ruler_prefix(n).map_err(e)?.len() as i64, p2(n))?;
        count += 1;
    }
    for n in 0..lexicon::RULER_CAP {
        equal(
            "|P_0(n)|",
            p_word(0, n).map_err(e)?.len() as i64,
            p2(n + 1) - 2,
        )?;
        count += 1;
    }
    for n in 3..=cap {
        let k = n as i64;
        equal(
            "|P_1(n)|",
            p_word(1, n).map_err(e)?.len() as i64,
            (4 * k + 1) * p2(n - 1) - 5,
        )?;
        equal(
            "|P_2(n)|",
            p_word(2, n).map_err(e)?.len() as i64,
            (4 * k * k + 14 * k + 149) * p2(n - 2) - 193,
        )?;
        equal(
            "|T(n)|",
            t_word(n).map_err(e)?.len() as i64,
            (4 * k * k + 22 * k + 159) * p2(n - 2) - 200,
        )?;
        equal(
            "|c_n|",
            bc_word(BcKind::C, n).map_err(e)?.len() as i64,
            p2(n - 3) * (4 * k * k + 22 * k + 159),
        )?;
        count += 4;
    }
    for n in 1..=cap {
        equal(
            "|ψ1(n)|",
            psi1().image(n).map_err(m)?.len() as i64,
            p2(n + 2) - 1,
        )?;
        count += 1;
    }
    for n in 1..=cap - 2 {
        let k = n as i64;
        equal(
            "|ψ2(n)|",
            psi2().image(n).map_err(m)?.len() as i64,
            (4 * k + 13) * p2(n + 1) - 6,
        )?;
        count += 1;
    }
    for n in 2..=cap {
        let k = n as i64;
        equal(
            "|b_n|",
            bc_word(BcKind::B, n).map_err(e)?.len() as i64,
            p2(n - 2) * (4 * k + 5),
        )?;
        count += 1;
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
        (Constant::A, 13747),
    ] {
        equal(c.name(), constant(c).map_err(e)?.len(), len)?;
        count += 1;
    }
    Ok(format!("{count} length identities"))
}

fn conjectures(ctx: &Context) -> Verdict {
    let depth = 30_000;
    let g = gamma()
        .apply_stream(ruler_stream(), depth)
        .map_err(|e| e.to_string())?;
    same("L(2)", &ctx.l(&[2], 1 + depth), &Word::letter(2).concat(&g))?;
    for (p, base) in [([3, 1], 1), ([3, 2], 2)] {
        let want = Word::letter(3).concat(&ctx.l(&[base], 9_999));
        same(&format!("L(3{base})"), &compute_l_prefix(&p, 10_000), &want)?;
    }
    Ok("consistent to depth 30000 (L(2)), 10000 (L(31), L(32))".into())
}

fn binary_words(max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(|len| {
        (0u32..1 << len).map(move |bits| (0..len).map(|i| ((bits >> i) & 1) as Letter).collect())
    })
}

fn oracle(_: &Context) -> Verdict {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let random = (0..10_000).map(|_| {
        let len = rng.gen_range(0..=64);
        (0..len).map(|_| rng.gen_range(0..=3)).collect::<Word>()
    });
    let corpus: Vec<Word> = binary_words(12).chain(random).collect();
    for w in &corpus {
        let want = naive_square_scan(w).map_err(|e| e.to_string())?;
        let got = square_endpoints(w);
        if got.endpoints != want.endpoints {
            return Err(format!(
                "square_endpoints({w}) = {:?}, oracle {:?}",
                got.endpoints, want.endpoints
            ));
        }
        if has_square(w) != want.has_square() {
            return Err(format!("has_square({w}) disagrees with the oracle"));
        }
    }
    Ok(format!("{} words", corpus.len()))
}

fn sufficient(_: &Context) -> Verdict {
    let e = |x: lexleast::inducer::InducerError| x.to_string();
    let r = sufficient_check(&d("012323045")).map_err(e)?;
    equal("012323045 verdict", r.verdict, true)?;
    same("012323045 continuation", &r.extended[9..], &d("010"))?;
    same("012323045 split continuation", &r.split[9..], &d("010"))?;
    let r = sufficient_check(&d("1121123210")).map_err(e)?;
    equal("1121123210 depth", r.depth, 10)?;
    equal("1121123210 extra letters", r.extra_letters, 0)?;
    let r = sufficient_check(&d("11011")).map_err(e)?;
    equal("11011 verdict", r.verdict, false)?;
    same("L(11011)[:10]", &r.extended, &d("1101120102"))?;
    same("1101·L(1)[:10]", &r.split, &d("1101101201"))?;
    let pairs = (0..=5)
        .map(|n| (n, n))
        .chain((3..=5).flat_map(|a| (3..=5).map(move |b| (a, b))));
    for (a, b) in pairs {
        if !letter_pair_test(a, b, 2000) {
            return Err(format!(
                "L({a}{b}) differs from {a}·L({b}) within 2000 letters"
            ));
        }
    }
    Ok("3 worked examples, 15 letter pairs at depth 2000".into())
}

fn inducer(_: &Context) -> Verdict {
    let e = |x: lexleast::inducer::InducerError| x.to_string();
    let w = d("2021");
    let x = induce_prefix(&w).map_err(e)?;
    same("x_m(2021)", &x, &d("654303143032015430314303"))?;
    equal("generates", generates(&x, &w), true)?;
    let words = square_free_words(5, 3);
    let mut closed = 0;
    for w in &words {
        let x = induce_prefix(w).map_err(e)?;
        let scaffold = InducerScaffold::new(w).map_err(e)?;
        same(&format!("x_m({w})"), &x, scaffold.x_m())?;
        for i in 0..=scaffold.m() {
            same(
                &format!("x_{i}({w})"),
                &closed_form_x(w, i).map_err(e)?,
                &scaffold.x[i],
            )?;
            closed += 1;
        }
    }
    Ok(format!(
        "{} words, {closed} closed-form comparisons",
        words.len()
    ))
}

fn harness_filters(ctx: &Context) -> Verdict {
    let mut total = 0;
    for filter in ["sf/", "gen/", "occ/"] {
        let results = harness::run_all(ctx, Some(filter), &HashMap::new());
        if let Some(bad) = results.iter().find(|r| r.status != Status::Pass) {
            return Err(format!(
                "{} {}: {}",
                bad.id,
                bad.status,
                bad.witness.as_deref().unwrap_or("")
            ));
        }
        total += results.len();
    }
    let shared = harness::run_check(ctx, "len/alpha3-4-shared").map_err(|e| e.to_string())?;
    equal("len/alpha3-4-shared", shared.status, Status::Pass)?;
    let a = ctx.a().map_err(|e| e.to_string())?;
    let head = constant(Constant::Psi2Zero)
        .map_err(|e| e.to_string())?
        .successor()
        .map_err(|e| e.to_string())?;
    equal("A begins with ψ2(0)⁺", a.starts_with(&head), true)?;
    let start = 1 + t_word(4).map_err(|e| e.to_string())?.len();
    same("A against L(4)", &ctx.l(&[4], start + a.len())[start..], a)?;
    Ok(format!(
        "{total} checks, shared α(3)/α(4) prefix, A cross-check"
    ))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "sequence prefixes",
        blocking: true,
        run: prefixes,
    },
    Criterion {
        number: 2,
        title: "L(1) = Y_1·α(L(ε)) at depth",
        blocking: true,
        run: theorem_one,
    },
    Criterion {
        number: 3,
        title: "L(n) = Y_n·ρ(α(L(ε))) at depth, n = 3..5",
        blocking: true,
        run: theorem_two,
    },
    Criterion {
        number: 4,
        title: "structure prefixes",
        blocking: true,
        run: structure,
    },
    Criterion {
        number: 5,
        title: "glossary lengths",
        blocking: true,
        run: glossary,
    },
    Criterion {
        number: 6,
        title: "conjecture evidence",
        blocking: false,
        run: conjectures,
    },
    Criterion {
        number: 7,
        title: "oracle equivalence",
        blocking: true,
        run: oracle,
    },
    Criterion {
        number: 8,
        title: "sufficient check and letter pairs",
        blocking: true,
        run: sufficient,
    },
    Criterion {
        number: 9,
        title: "prefix inducer",
        blocking: true,
        run: inducer,
    },
    Criterion {
        number: 10,
        title: "harness sf/, gen/, occ/",
        blocking: true,
        run: harness_filters,
    },
];

fn main() -> ExitCode {
    let ctx = Context::default();
    let mut failed = false;
    for c in CRITERIA {
        let start = Instant::now();
        let verdict = (c.run)(&ctx);
        let ms = start.elapsed().as_millis();
        let (status, detail) = match &verdict {
            Ok(s) => ("PASS", s.as_str()),
            Err(s) => ("FAIL", s.as_str()),
        };
        let note = if c.blocking { "" } else { " [non-blocking]" };
        println!(
            "criterion {:>2} {status} {}{note}: {detail} ({ms} ms)",
            c.number, c.title
        );
        failed |= verdict.is_err() && c.blocking;
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
