//! Command-line workbench around the `pcfa` library: run and decide words
//! on systems from files or the built-in gallery, sweep communication
//! counts against reference growth functions, crosscheck systems against
//! their oracles, and drive the one-way cellular automaton toolkit.
//!
//! Exit codes: 0 for accept/valid/agreement, 1 for a clean negative
//! (reject, invalid encoding, disagreement, bound exceeded), 2 for usage
//! and input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pcfa::bounds::{check_comm_bound, BoundKind};
use pcfa::engine::{run, CommEvent, Configuration, Verdict, DEFAULT_STEP_CEILING};
use pcfa::format::{parse_system, print_system};
use pcfa::gallery::crosscheck::{crosscheck, DEFAULT_WORD_BUDGET};
use pcfa::gallery::LanguageId;
use pcfa::oca::{default_horizon, demo, parse_oca, print_oca, Oca};
use pcfa::system::{validate_system, ValidatedSystem};
use pcfa::valc::{encode_valc, validated_input, ValcString};
use pcfa::word::Word;

#[derive(Parser)]
#[command(
    name = "pcfa",
    version,
    about = "Workbench for parallel communicating finite automata",
    after_help = "Words with single-character symbols can be written as one \
                  token ('$abaa&'); multi-character symbols are separated by \
                  spaces ('$1 [#,a'] ... &')."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Where a system comes from: a definition file or the built-in gallery.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SystemSource {
    /// Definition file in the line-oriented system format
    #[arg(short, long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Built-in gallery system (see 'gallery list')
    #[arg(short, long, value_name = "LANG")]
    lang: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a word and report the verdict, steps and communications
    Run {
        #[command(flatten)]
        source: SystemSource,
        /// Input word
        word: String,
        /// Print every configuration and communication
        #[arg(long)]
        trace: bool,
        /// Step budget (default: the sound decision cutoff)
        #[arg(long, value_name = "N")]
        max_steps: Option<u64>,
    },
    /// Decide membership using the sound product cutoff
    Decide {
        #[command(flatten)]
        source: SystemSource,
        word: String,
    },
    /// Generate members of a gallery language and chart communications
    /// against a reference growth function, as CSV
    Sweep {
        /// Gallery language (see 'gallery list')
        lang: String,
        /// Smallest size parameter
        #[arg(long, default_value_t = 1)]
        from: usize,
        /// Largest size parameter
        #[arg(long, default_value_t = 10)]
        to: usize,
        /// Reference function: log2, sqrt, linear, polylog(r), constant(c)
        #[arg(long, default_value = "log2")]
        bound: String,
        /// Allowance multiplier on the reference function
        #[arg(long, default_value_t = 2.0)]
        scale: f64,
    },
    /// Compare a gallery system against its oracle on every short word
    Crosscheck {
        lang: String,
        /// Longest word length to enumerate
        #[arg(long, value_name = "N")]
        max_len: usize,
        /// Ceiling on the number of words
        #[arg(long, default_value_t = DEFAULT_WORD_BUDGET)]
        budget: u64,
    },
    /// Inspect and export the built-in gallery
    Gallery {
        #[command(subcommand)]
        cmd: GalleryCmd,
    },
    /// One-way cellular automata: run, encode runs, validate encodings
    Oca {
        #[command(subcommand)]
        cmd: OcaCmd,
    },
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// List the built-in languages and their systems
    List,
    /// Write a system definition (or a demo automaton) to stdout or a file
    Emit {
        /// Gallery language, or 'oca-demo' / 'oca-clock' for automata
        what: String,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OcaCmd {
    /// Run an automaton on an input word and report acceptance
    Run {
        /// Automaton definition file
        file: PathBuf,
        /// Input word
        input: String,
        /// Time horizon (default: 4 n^2)
        #[arg(long, value_name = "T")]
        max_t: Option<u64>,
        /// Print the configuration rows up to acceptance or the horizon
        #[arg(long)]
        trace: bool,
    },
    /// Encode the accepting run on an input as an overlapping pair string
    Encode {
        file: PathBuf,
        input: String,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Validate a pair-string encoding and recover the input it encodes
    Check {
        file: PathBuf,
        /// File holding the encoding text
        encoding: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(negative) => {
            if negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Runs one subcommand; `Ok(true)` is the clean-negative outcome.
fn dispatch(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Run {
            source,
            word,
            trace,
            max_steps,
        } => cmd_run(&source, &word, trace, max_steps),
        Cmd::Decide { source, word } => cmd_decide(&source, &word),
        Cmd::Sweep {
            lang,
            from,
            to,
            bound,
            scale,
        } => cmd_sweep(&lang, from, to, &bound, scale),
        Cmd::Crosscheck {
            lang,
            max_len,
            budget,
        } => cmd_crosscheck(&lang, max_len, budget),
        Cmd::Gallery { cmd } => match cmd {
            GalleryCmd::List => cmd_gallery_list(),
            GalleryCmd::Emit { what, output } => cmd_gallery_emit(&what, output.as_deref()),
        },
        Cmd::Oca { cmd } => match cmd {
            OcaCmd::Run {
                file,
                input,
                max_t,
                trace,
            } => cmd_oca_run(&file, &input, max_t, trace),
            OcaCmd::Encode {
                file,
                input,
                output,
            } => cmd_oca_encode(&file, &input, output.as_deref()),
            OcaCmd::Check { file, encoding } => cmd_oca_check(&file, &encoding),
        },
    }
}

fn gallery_lang(token: &str) -> Result<LanguageId> {
    LanguageId::builtin(token).ok_or_else(|| {
        anyhow!(
            "unknown gallery language '{token}' (expected one of: {})",
            LanguageId::builtin_tokens().join(", ")
        )
    })
}

fn load_system(source: &SystemSource) -> Result<ValidatedSystem> {
    if let Some(path) = &source.file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let def = parse_system(&text).with_context(|| format!("parsing {}", path.display()))?;
        return validate_system(def).with_context(|| format!("validating {}", path.display()));
    }
    let token = source.lang.as_deref().expect("clap enforces the group");
    Ok(gallery_lang(token)?
        .system()
        .expect("every built-in language has a system"))
}

fn load_oca(path: &Path) -> Result<Oca> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let def = parse_oca(&text).with_context(|| format!("parsing {}", path.display()))?;
    Oca::new(def).with_context(|| format!("validating {}", path.display()))
}

fn write_out(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render_config(sys: &ValidatedSystem, cfg: &Configuration) -> String {
    let mut line = String::new();
    for i in 0..sys.degree() {
        if i > 0 {
            line.push(' ');
        }
        let _ = write!(
            line,
            "c{}:{}@{}",
            i + 1,
            sys.state_name(cfg.states[i]),
            cfg.positions[i]
        );
    }
    line
}

fn render_events(sys: &ValidatedSystem, events: &[&CommEvent]) -> String {
    let mut line = String::new();
    for (n, e) in events.iter().enumerate() {
        if n > 0 {
            line.push(' ');
        }
        let _ = write!(
            line,
            "c{}<-c{}:{}{}",
            e.requester + 1,
            e.sender + 1,
            sys.state_name(e.delivered),
            if e.sender_reset { " reset" } else { "" }
        );
    }
    line
}

fn cmd_run(source: &SystemSource, word: &str, trace: bool, max_steps: Option<u64>) -> Result<bool> {
    let sys = load_system(source)?;
    let word = Word::parse(word);
    let budget = match max_steps {
        Some(n) => n,
        None => u64::try_from(
            sys.decision_cutoff(word.len())
                .ok_or_else(|| anyhow!("state product overflows; pass --max-steps"))?,
        )
        .map_err(|_| anyhow!("decision cutoff exceeds u64; pass --max-steps"))?,
    };
    let res = run(&sys, &word, budget, trace)?;
    if let Some(steps) = res.trace.as_ref() {
        for cfg in steps {
            let t = cfg.clock;
            if t == 0 {
                println!("t=0 | {}", render_config(&sys, cfg));
                continue;
            }
            // Events stamped with clock t-1 produced the configuration at t.
            let events: Vec<&CommEvent> = res
                .comm_events
                .iter()
                .filter(|e| e.clock + 1 == t)
                .collect();
            if events.is_empty() {
                println!("t={t} MOVE | {}", render_config(&sys, cfg));
            } else {
                println!(
                    "t={t} COMMUNICATE | {} | {}",
                    render_config(&sys, cfg),
                    render_events(&sys, &events)
                );
            }
        }
    }
    let halt = match res.halt_reason {
        Some(r) => format!(" (halt: {r})"),
        None => " (step budget exhausted)".to_string(),
    };
    println!(
        "{} in {} steps with {} communications{}",
        res.verdict, res.steps, res.comm_count, halt
    );
    Ok(res.verdict != Verdict::Accept)
}

fn cmd_decide(source: &SystemSource, word: &str) -> Result<bool> {
    let sys = load_system(source)?;
    let word = Word::parse(word);
    let cutoff = sys
        .decision_cutoff(word.len())
        .filter(|&c| c <= DEFAULT_STEP_CEILING as u128)
        .ok_or_else(|| anyhow!("decision cutoff exceeds the step ceiling"))?;
    let res = pcfa::engine::decide(&sys, &word)?;
    println!(
        "{} within cutoff {} ({} steps, {} communications)",
        res.verdict, cutoff, res.steps, res.comm_count
    );
    Ok(res.verdict != Verdict::Accept)
}

fn cmd_sweep(lang: &str, from: usize, to: usize, bound: &str, scale: f64) -> Result<bool> {
    let lang = gallery_lang(lang)?;
    let sys = lang.system().expect("built-in language");
    let bound = BoundKind::from_str(bound).map_err(|e| anyhow!(e))?;
    if to < from {
        bail!("--to must be at least --from");
    }
    let params: Vec<usize> = (from..=to).collect();
    let mut words = Vec::with_capacity(params.len());
    for &m in &params {
        words.push(
            lang.generate(m, None)
                .with_context(|| format!("generating the m = {m} member"))?,
        );
    }
    let report = check_comm_bound(&sys, &words, bound, scale)?;
    println!("m,len,verdict,steps,comms,bound,ratio");
    for (m, row) in params.iter().zip(&report.rows) {
        println!(
            "{m},{},{},{},{},{:.6},{:.6}",
            row.len, row.verdict, row.steps, row.comm_count, row.allowed, row.ratio
        );
    }
    Ok(!report.all_within)
}

fn lang_alphabet(lang: &LanguageId) -> Vec<String> {
    let syms: &[&str] = match lang {
        LanguageId::Expo | LanguageId::Poly => &["$", "a", "b", "&"],
        LanguageId::Wbw => &["0", "1", "b"],
        _ => &["$", "0", "1", "a", "b", "&"],
    };
    syms.iter().map(|s| s.to_string()).collect()
}

fn cmd_crosscheck(lang: &str, max_len: usize, budget: u64) -> Result<bool> {
    let lang = gallery_lang(lang)?;
    let sys = lang.system().expect("built-in language");
    let alphabet = lang_alphabet(&lang);
    let oracle = |w: &Word| lang.contains(w);
    let report = crosscheck(&sys, &oracle, &alphabet, max_len, budget)?;
    println!(
        "{} words up to length {}: system accepts {}, oracle accepts {}, {} disagreements",
        report.total_words,
        report.max_len,
        report.system_accepts,
        report.oracle_accepts,
        report.disagreements.len()
    );
    for d in report.disagreements.iter().take(5) {
        println!(
            "  {} -> system {}, oracle {}",
            d.word,
            d.system_verdict,
            if d.oracle_accepts { "member" } else { "non-member" }
        );
    }
    Ok(!report.agreed())
}

fn cmd_gallery_list() -> Result<bool> {
    println!("lang        k  alphabet          members, communications");
    for token in LanguageId::builtin_tokens() {
        let lang = gallery_lang(token)?;
        let sys = lang.system().expect("built-in language");
        let blurb = match lang {
            LanguageId::Expo => "$ a b aa b aaaa ... &; m+1 on length ~2^m",
            LanguageId::Poly => "$ a b aaa b ... &; m+1 on length ~m^2",
            LanguageId::Wbw => "w b w; m+1 on length 2m+1",
            LanguageId::ExpoWbw => "prefix replay, doubling gaps; 2m+1",
            LanguageId::PolyWbw => "prefix replay, odd gaps; 2m+1",
            _ => unreachable!(),
        };
        println!(
            "{token:<11} {}  {:<17} {blurb}",
            sys.degree(),
            lang_alphabet(&lang).join(" ")
        );
    }
    Ok(false)
}

fn cmd_gallery_emit(what: &str, output: Option<&Path>) -> Result<bool> {
    let text = match what {
        "oca-demo" => print_oca(&demo::encoding_demo()),
        "oca-clock" => print_oca(&demo::linear_clock()),
        token => {
            let sys = gallery_lang(token)?
                .system()
                .expect("built-in language");
            print_system(sys.def())
        }
    };
    write_out(&text, output)?;
    Ok(false)
}

fn cmd_oca_run(file: &Path, input: &str, max_t: Option<u64>, trace: bool) -> Result<bool> {
    let oca = load_oca(file)?;
    let word = Word::parse(input);
    let horizon = max_t.unwrap_or_else(|| default_horizon(word.len()));
    let accepted = oca.accepted_at(&word, horizon)?;
    if trace {
        let upto = accepted.unwrap_or(horizon);
        for cfg in oca.trace(&word, upto)? {
            println!("t={:<3} {}", cfg.time, oca.render_row(&cfg));
        }
    }
    match accepted {
        Some(t) => {
            println!("accepted at t={t}");
            Ok(false)
        }
        None => {
            println!("not accepted within t<={horizon}");
            Ok(true)
        }
    }
}

fn cmd_oca_encode(file: &Path, input: &str, output: Option<&Path>) -> Result<bool> {
    let oca = load_oca(file)?;
    let word = Word::parse(input);
    let encoding = encode_valc(&oca, &word)?;
    write_out(&format!("{encoding}\n"), output)?;
    Ok(false)
}

fn cmd_oca_check(file: &Path, encoding: &Path) -> Result<bool> {
    let oca = load_oca(file)?;
    let text = std::fs::read_to_string(encoding)
        .with_context(|| format!("reading {}", encoding.display()))?;
    let parsed = ValcString::parse(text.trim())
        .with_context(|| format!("parsing {}", encoding.display()))?;
    match validated_input(&oca, &parsed) {
        Some(input) => {
            println!("valid encoding of input '{input}' ({} pair tokens)", parsed.len());
            Ok(false)
        }
        None => {
            println!("not a valid run encoding");
            Ok(true)
        }
    }
}
