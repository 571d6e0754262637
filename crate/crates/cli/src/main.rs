use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lexleast::harness::{self, ASource, Context, Summary};
use lexleast::inducer::{self, InducerError};
use lexleast::lexleast::{compute_l_prefix_with, SuffixStrategy};
use lexleast::morphism::{builtin, Builtin};
use lexleast::{compute_l_prefix, Letter, Word};

/// Longest prefix `compute` will generate unless raised with `--max-length`.
const DEFAULT_MAX_LENGTH: usize = 1_000_000;

#[derive(Parser)]
#[command(
    name = "lexleast",
    version,
    about = "Lexicographically least square-free extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of L(p)
    Compute(ComputeArgs),
    /// Print the image of a letter or word under a builtin morphism
    Morphism(MorphismArgs),
    /// Run registered checks
    Verify(VerifyArgs),
    /// Build x_m(w), a prefix that generates x_m·w
    Induce(WordArg),
    /// Split a word as psq and run the 2|ps| extension check
    Decompose(WordArg),
    /// Time the suffix strategies on prefixes of L(1)
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Auto,
    Digits,
    Csv,
    Bfile,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
    /// First index written in bfile format
    #[arg(long, default_value_t = 0)]
    offset: usize,
    /// Emit a `#` comment line before bfile output
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
struct ComputeArgs {
    /// Starting word, as digits ("012") or csv ("0,1,12"); may be empty
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    prefix: String,
    #[arg(long)]
    length: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_LENGTH)]
    max_length: usize,
    #[arg(long, value_enum, default_value = "incremental")]
    strategy: StrategyArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MorphismArgs {
    /// rho, psi1, psi2, alpha or gamma
    name: String,
    #[arg(long, conflicts_with = "word", required_unless_present = "word")]
    letter: Option<Letter>,
    #[arg(long)]
    word: Option<String>,
    /// Print at most this many letters
    #[arg(long)]
    limit: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Lines,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run checks whose id starts with this prefix
    #[arg(long)]
    filter: Option<String>,
    /// Run exactly this check (repeatable)
    #[arg(long, conflicts_with = "filter")]
    only: Vec<String>,
    /// Depth for every depth-bearing check (N) or one check (ID=N); 0 skips
    #[arg(long)]
    depth: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    #[arg(long, default_value = ".lexleast/A.cache")]
    a_cache: PathBuf,
    /// Derive A without reading or writing the cache
    #[arg(long)]
    no_cache: bool,
    /// List registered checks and exit
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct WordArg {
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Naive,
    ReversedZ,
    Incremental,
}

impl From<StrategyArg> for SuffixStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Naive => SuffixStrategy::Naive,
            StrategyArg::ReversedZ => SuffixStrategy::ReversedZ,
            StrategyArg::Incremental => SuffixStrategy::Incremental,
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    length: usize,
    /// Strategies to time (repeatable); all by default
    #[arg(long, value_enum)]
    strategy: Vec<StrategyArg>,
}

fn parse_word(s: &str) -> Result<Word> {
    s.parse::<Word>()
        .with_context(|| format!("invalid word {s:?}"))
}

fn render(w: &[Letter], out: &OutputArgs, what: &str) -> Result<String> {
    let word = Word::from_slice(w);
    Ok(match out.format {
        Format::Auto => format!("{word}\n"),
        Format::Csv => format!("{}\n", word.to_csv()),
        Format::Digits => match word.to_digits() {
            Some(d) => format!("{d}\n"),
            None => bail!("digits format needs every letter ≤ 9; use --format csv"),
        },
        Format::Bfile => {
            if out.offset > w.len() {
                bail!(
                    "offset {} is past the end ({} letters)",
                    out.offset,
                    w.len()
                );
            }
            let mut s = String::new();
            if out.header {
                writeln!(s, "# {what}")?;
            }
            for (i, l) in w.iter().enumerate().skip(out.offset) {
                writeln!(s, "{i} {l}")?;
            }
            s
        }
    })
}

fn cmd_compute(args: &ComputeArgs) -> Result<String> {
    let prefix = parse_word(&args.prefix)?;
    if args.length < prefix.len() {
        bail!(
            "length {} is shorter than the prefix ({} letters)",
            args.length,
            prefix.len()
        );
    }
    if args.length > args.max_length {
        bail!(
            "length {} exceeds --max-length {}",
            args.length,
            args.max_length
        );
    }
    let w = compute_l_prefix_with(&prefix, args.length, args.strategy.into());
    render(
        &w,
        &args.output,
        &format!("L({prefix}), first {} terms", args.length),
    )
}

fn cmd_morphism(args: &MorphismArgs) -> Result<String> {
    let m = builtin(args.name.parse::<Builtin>()?);
    let source = match (&args.letter, &args.word) {
        (Some(k), _) => Word::letter(*k),
        (None, Some(w)) => parse_word(w)?,
        (None, None) => bail!("give --letter or --word"),
    };
    let mut image = m.apply(&source)?;
    if let Some(limit) = args.limit {
        image = image.prefix(limit.min(image.len()));
    }
    render(&image, &args.output, &format!("{}({source})", m.name()))
}

fn depth_overrides(specs: &[String]) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for spec in specs {
        match spec.split_once('=') {
            Some((id, n)) => {
                harness::find_check(id)?;
                map.insert(
                    id.to_string(),
                    n.parse().context("depth must be an integer")?,
                );
            }
            None => {
                let n: usize = spec.parse().context("depth must be an integer or ID=N")?;
                for c in harness::registry()
                    .iter()
                    .filter(|c| c.default_depth.is_some())
                {
                    map.entry(c.id.to_string()).or_insert(n);
                }
            }
        }
    }
    Ok(map)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, ExitCode)> {
    if args.list {
        let mut s = String::new();
        for c in harness::registry() {
            let tag = if c.conjecture { " [conjecture]" } else { "" };
            writeln!(s, "{}  {}{tag}", c.id, c.claim)?;
        }
        return Ok((s, ExitCode::SUCCESS));
    }
    let overrides = depth_overrides(&args.depth)?;
    let source = if args.no_cache {
        ASource::Derive
    } else {
        ASource::Cache(args.a_cache.clone())
    };
    let ctx = Context::new(source);
    let results = if args.only.is_empty() {
        harness::run_all(&ctx, args.filter.as_deref(), &overrides)
    } else {
        let ids: Vec<&str> = args.only.iter().map(String::as_str).collect();
        harness::run_ids(&ctx, &ids, &overrides)?
    };
    if results.is_empty() {
        bail!("no checks match");
    }
    let report = match args.format {
        ReportFormat::Text => harness::render_text(&results),
        ReportFormat::Lines => harness::render_lines(&results),
    };
    let code = Summary::of(&results).exit_code();
    Ok((report, ExitCode::from(code as u8)))
}

fn cmd_induce(args: &WordArg) -> Result<String> {
    let w = parse_word(&args.word)?;
    let x = match inducer::induce_prefix(&w) {
        Ok(x) => x,
        Err(InducerError::NotSquareFree(_)) => bail!("input contains a square: {w}"),
        Err(e) => return Err(e.into()),
    };
    let m = inducer::restrictions(&w)?.m();
    Ok(format!(
        "{x}\nverified: x_m generates x_m·{w} (m = {m}, |x_m| = {})\n",
        x.len()
    ))
}

fn cmd_decompose(args: &WordArg) -> Result<String> {
    let w = parse_word(&args.word)?;
    let r = inducer::sufficient_check(&w)?;
    let d = &r.decomposition;
    let mut s = String::new();
    writeln!(s, "p = {}", d.p)?;
    writeln!(s, "s = {}", d.s)?;
    writeln!(s, "q = {}", d.q)?;
    writeln!(
        s,
        "2|ps| = {} ({} letters beyond w)",
        r.depth, r.extra_letters
    )?;
    writeln!(s, "L(w)        = {}", r.extended)?;
    writeln!(s, "p·L(sq)     = {}", r.split)?;
    let verdict = if r.verdict {
        "L(w) = p·L(sq)"
    } else {
        "L(w) ≠ p·L(sq)"
    };
    writeln!(s, "verdict: {verdict}")?;
    Ok(s)
}

fn cmd_bench(args: &BenchArgs) -> Result<String> {
    let strategies: Vec<SuffixStrategy> = if args.strategy.is_empty() {
        SuffixStrategy::ALL.to_vec()
    } else {
        args.strategy.iter().map(|&s| s.into()).collect()
    };
    let mut s = String::new();
    writeln!(s, "{:<12} {:>8} {:>12}", "strategy", "length", "ms")?;
    if args.length == 0 {
        return Ok(s);
    }
    let reference = compute_l_prefix(&[1], args.length);
    for strategy in strategies {
        let start = Instant::now();
        let w = compute_l_prefix_with(&[1], args.length, strategy);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        if w != reference {
            bail!("{strategy} disagrees with the reference generator");
        }
        writeln!(s, "{:<12} {:>8} {:>12.2}", strategy.name(), args.length, ms)?;
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<(String, ExitCode)> {
    let ok = |s: String| (s, ExitCode::SUCCESS);
    Ok(match cli.command {
        Command::Compute(a) => ok(cmd_compute(&a)?),
        Command::Morphism(a) => ok(cmd_morphism(&a)?),
        Command::Verify(a) => cmd_verify(&a)?,
        Command::Induce(a) => ok(cmd_induce(&a)?),
        Command::Decompose(a) => ok(cmd_decompose(&a)?),
        Command::Bench(a) => ok(cmd_bench(&a)?),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
