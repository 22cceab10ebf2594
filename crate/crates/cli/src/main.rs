use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use miflab::grigorchuk::{self, GrigWord};
use miflab::identity_lab::{self, FiniteGroup, GroupWithConstants};
use miflab::limit_group::{InstanceConfig, LimitGroup};
use miflab::mif_search::{self, SearchBounds, SearchOutcome};
use miflab::mixed_words::MixedWord;
use miflab::presentations::{CSequence, Window};
use miflab::Error;

#[derive(Parser)]
#[command(name = "miflab", version, about = "Exact computations in G(p,c), finite-group identity checks and witness search")]
struct Cli {
    /// Print JSON (or JSON lines) instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, global = true, default_value_t = 2)]
    p: u64,
    /// Class sequence: `1,2,3` (last value repeats), `id`, or `1,2,id`.
    #[arg(long, global = true, default_value = "1,2,3")]
    c: String,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_cosets: usize,
    #[arg(long, global = true, default_value_t = 10)]
    max_width: u64,
    /// Window groups up to this order also get a coset table.
    #[arg(long, global = true, default_value_t = 65536)]
    table_limit: u64,
    #[arg(long, global = true, env = "MIFLAB_CACHE")]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct BoundsArgs {
    #[arg(long, default_value_t = 3)]
    max_support_radius: i64,
    #[arg(long, default_value_t = 3)]
    max_beta: i64,
    #[arg(long, default_value_t = 8)]
    max_word_length: usize,
    #[arg(long, default_value_t = 100_000)]
    max_candidates: u64,
}

impl From<BoundsArgs> for SearchBounds {
    fn from(b: BoundsArgs) -> Self {
        SearchBounds {
            max_support_radius: b.max_support_radius,
            max_beta: b.max_beta,
            max_word_length: b.max_word_length,
            max_candidates: b.max_candidates,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Order of the window group B(window).
    Order {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Mixed-identity verdicts on finite groups.
    Check(CheckArgs),
    /// Grigorchuk group computations.
    Grig {
        #[command(subcommand)]
        command: GrigCommand,
    },
    /// First witness refuting `w = 1` in G(p,c).
    Search {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Enumerate words, search each, and write certificates as JSON lines.
    Drive {
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Certificate file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Re-check a certificate file.
    Verify { file: PathBuf },
}

#[derive(Args)]
struct CheckArgs {
    /// Canned identity: direct-product, wreath or factorial.
    #[arg(long = "id")]
    identity: Option<String>,
    /// Mixed word in x (and x2, x3, ...) with constants.
    #[arg(long)]
    word: Option<String>,
    /// Group for --word and --id factorial, e.g. S3, C2xC2, C3wrC2.
    #[arg(long)]
    group: Option<String>,
    #[arg(long = "A")]
    a: Option<String>,
    #[arg(long = "B")]
    b: Option<String>,
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    top: Option<String>,
    /// Generators of N for --id factorial as cycles, or `center`.
    #[arg(long)]
    normal: Option<String>,
    /// Named constants `name=(12)` or `name=#index`.
    #[arg(long = "const")]
    constants: Vec<String>,
}

#[derive(Subcommand)]
enum GrigCommand {
    /// Image of a binary string.
    Act {
        #[arg(long)]
        word: String,
        #[arg(long)]
        string: String,
    },
    /// Decide whether a word is the identity.
    Trivial {
        #[arg(long)]
        word: String,
    },
    /// Check [[[[x,b],d],d],ada] = 1 over all reduced words up to a length.
    VerifyIdentity {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            e if e.is_capacity() => (2, "capacity"),
            Error::Verification(_) => (3, "verification"),
            Error::Parse { .. }
            | Error::UnknownSymbol(_)
            | Error::InvalidSequence(_)
            | Error::InvalidWindow(_)
            | Error::NotPrime(_)
            | Error::Format(_) => (4, "parse"),
            _ => (1, "error"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn parse_failure(message: impl Into<String>) -> Failure {
    Failure { code: 4, kind: "parse", message: message.into() }
}

type Outcome = Result<Output, Failure>;

/// What a command prints, and whether it counts as a verification failure.
struct Output {
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Outcome {
        Ok(Output { json, text: text.into(), failed: false })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            let printed = match (cli.json, out.json) {
                (true, Value::Null) => String::new(),
                (true, v) => v.to_string(),
                (false, _) => out.text,
            };
            if !printed.is_empty() {
                let _ = writeln!(io::stdout().lock(), "{printed}");
            }
            ExitCode::from(if out.failed { 3 } else { 0 })
        }
        Err(f) => {
            if cli.json {
                eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            } else {
                eprintln!("error ({}): {}", f.kind, f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn limit_group(args: &InstanceArgs) -> Result<LimitGroup, Failure> {
    let c: CSequence = args.c.parse()?;
    let config = InstanceConfig {
        p: args.p,
        c,
        max_cosets: args.max_cosets,
        table_limit: args.table_limit,
        max_width: args.max_width,
        cache_dir: args.cache_dir.clone(),
        ..InstanceConfig::default()
    };
    Ok(LimitGroup::new(config)?)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Order { window } => cmd_order(&cli.instance, window),
        Command::Check(args) => cmd_check(args),
        Command::Grig { command } => cmd_grig(command),
        Command::Search { word, bounds } => cmd_search(&cli.instance, word, (*bounds).into()),
        Command::Drive { count, out, bounds } => {
            cmd_drive(&cli.instance, *count, out.as_deref(), (*bounds).into(), cli.json)
        }
        Command::Verify { file } => cmd_verify(&cli.instance, file),
    }
}

fn cmd_order(instance: &InstanceArgs, window: &str) -> Outcome {
    let window: Window = window.parse()?;
    let group = limit_group(instance)?;
    let wg = group.window_group(window.width())?;
    let order = wg.order().ok_or(Error::CapacityExceeded { limit: usize::MAX })?;
    Output::ok(
        json!({ "p": group.p(), "c": group.c().to_string(), "window": window.to_string(), "order": order.to_string() }),
        order.to_string(),
    )
}

fn finite_group(spec: Option<&str>, flag: &str) -> Result<FiniteGroup, Failure> {
    let spec = spec.ok_or_else(|| parse_failure(format!("missing --{flag}")))?;
    Ok(FiniteGroup::from_spec(spec)?)
}

fn cmd_check(args: &CheckArgs) -> Outcome {
    match (args.identity.as_deref(), args.word.as_deref()) {
        (Some(_), Some(_)) => Err(parse_failure("give either --id or --word")),
        (None, None) => Err(parse_failure("give --id or --word")),
        (Some("direct-product"), None) => {
            let a = finite_group(args.a.as_deref(), "A")?;
            let b = finite_group(args.b.as_deref(), "B")?;
            canned_output(identity_lab::check_direct_product(&a, &b)?)
        }
        (Some("wreath"), None) => {
            let base = finite_group(args.base.as_deref(), "base")?;
            let top = finite_group(args.top.as_deref(), "top")?;
            if !top.name().starts_with('C') {
                return Err(parse_failure("--top must be a cyclic group"));
            }
            canned_output(identity_lab::check_wreath(top.order(), &base)?)
        }
        (Some("factorial"), None) => {
            let group = finite_group(args.group.as_deref(), "group")?;
            let spec = args.normal.as_deref().ok_or_else(|| parse_failure("missing --normal"))?;
            let normal = if spec == "center" {
                group.center()
            } else {
                let ambient = GroupWithConstants::new(group.clone());
                let gens = spec
                    .split(';')
                    .map(|s| constant_value(&ambient, s.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                identity_lab::subgroup_closure(&group, &gens)
            };
            let reports = identity_lab::check_factorial(&group, &normal)?;
            let holds = reports.iter().all(|r| r.holds);
            let text = format!(
                "[x^(n!), g] = 1 on {} with |N| = {}: {} ({} choices of g)",
                group.name(),
                normal.len(),
                holds,
                reports.len()
            );
            Output::ok(json!({ "group": group.name(), "subgroup_order": normal.len(), "verdict": holds, "reports": reports }), text)
        }
        (Some(other), None) => Err(parse_failure(format!("unknown identity `{other}`"))),
        (None, Some(word)) => {
            let group = finite_group(args.group.as_deref(), "group")?;
            let mut ambient = GroupWithConstants::new(group);
            for c in &args.constants {
                let (name, value) = c.split_once('=').ok_or_else(|| parse_failure(format!("bad --const `{c}`")))?;
                let v = constant_value(&ambient, value)?;
                ambient = ambient.with(name.trim(), v)?;
            }
            let w: MixedWord<usize> = ambient.parse_word(word)?;
            let v = identity_lab::is_mixed_identity(&w, &ambient)?;
            let mut text = format!("{} on {}: {}", v.word, v.group, v.verdict);
            if let Some(ce) = &v.counterexample {
                let parts: Vec<String> = ce.iter().map(|(k, e)| format!("{k} = {e}")).collect();
                text.push_str(&format!(" (witness {})", parts.join(", ")));
            }
            Output::ok(serde_json::to_value(&v).map_err(Error::from)?, text)
        }
    }
}

fn constant_value(ambient: &GroupWithConstants, text: &str) -> Result<usize, Failure> {
    if let Some(index) = text.strip_prefix('#') {
        let i: usize = index.parse().map_err(|_| parse_failure(format!("bad element index `{text}`")))?;
        if i >= ambient.group.order() {
            return Err(parse_failure(format!("element index {i} out of range")));
        }
        return Ok(i);
    }
    let w = ambient.parse_word(text)?;
    if !w.variables().is_empty() {
        return Err(parse_failure(format!("constant `{text}` contains a variable")));
    }
    Ok(w.evaluate_with(ambient, |_| None)?)
}

fn canned_output(r: identity_lab::CannedReport) -> Outcome {
    let text = format!(
        "{} on {} (order {}): {} over {} choices of constants",
        r.identity, r.group, r.group_order, r.verdict, r.constant_choices
    );
    Output::ok(serde_json::to_value(&r).map_err(Error::from)?, text)
}

fn grig_word(text: &str) -> Result<GrigWord, Failure> {
    Ok(text.parse()?)
}

fn cmd_grig(command: &GrigCommand) -> Outcome {
    match command {
        GrigCommand::Act { word, string } => {
            let w = grig_word(word)?;
            let image = grigorchuk::act_str(&w, string)?;
            Output::ok(json!({ "word": w.to_string(), "input": string, "image": image }), image)
        }
        GrigCommand::Trivial { word } => {
            let w = grig_word(word)?;
            let trivial = grigorchuk::is_trivial_grig(&w);
            let reduced = grigorchuk::reduce_grig(&w).to_string();
            Output::ok(json!({ "word": w.to_string(), "reduced": reduced, "trivial": trivial }), trivial.to_string())
        }
        GrigCommand::VerifyIdentity { max_len } => {
            let r = grigorchuk::verify_grig_identity(*max_len);
            let text = format!(
                "{}: {} words up to length {}, {} violations",
                r.identity,
                r.words_checked,
                r.max_len,
                r.violations.len()
            );
            let failed = !r.violations.is_empty();
            Ok(Output { json: serde_json::to_value(&r).map_err(Error::from)?, text, failed })
        }
    }
}

fn cmd_search(instance: &InstanceArgs, word: &str, bounds: SearchBounds) -> Outcome {
    let group = limit_group(instance)?;
    let w = MixedWord::parse(&group, word)?;
    let text_word = w.to_text(&group);
    match mif_search::find_witness(&group, &w, &bounds)? {
        SearchOutcome::Witness { witness, value, checked, skipped } => Output::ok(
            json!({
                "word": text_word,
                "status": "WitnessFound",
                "witness": witness.to_string(),
                "evaluation_normal_form": value.to_string(),
                "candidates_checked": checked,
                "candidates_skipped": skipped,
            }),
            format!("witness {witness}: w = {value}"),
        ),
        SearchOutcome::Exhausted { checked, skipped } => Output::ok(
            json!({
                "word": text_word,
                "status": "SearchExhausted",
                "candidates_checked": checked,
                "candidates_skipped": skipped,
            }),
            format!("no witness among {checked} candidates ({skipped} skipped); inconclusive"),
        ),
    }
}

fn cmd_drive(
    instance: &InstanceArgs,
    count: usize,
    out: Option<&std::path::Path>,
    bounds: SearchBounds,
    json_mode: bool,
) -> Outcome {
    let group = limit_group(instance)?;
    let report = mif_search::drive(&group, count, &bounds)?;
    let summary = json!({
        "certificates": report.certificates.len(),
        "witnesses": report.certificates.iter().filter(|c| c.status == mif_search::Status::WitnessFound).count(),
        "exhausted": report.certificates.iter().filter(|c| c.status == mif_search::Status::SearchExhausted).count(),
        "persistence_violations": report.persistence_violations,
        "incomplete": report.incomplete,
    });
    match out {
        Some(path) => {
            let mut f = File::create(path).map_err(Error::from)?;
            mif_search::write_certificates(&mut f, &report.certificates)?;
        }
        None => {
            let mut stdout = io::stdout().lock();
            mif_search::write_certificates(&mut stdout, &report.certificates)?;
        }
    }
    let text = format!(
        "{} certificates, {} persistence violations{}",
        report.certificates.len(),
        report.persistence_violations,
        report.incomplete.as_deref().map(|r| format!(", incomplete: {r}")).unwrap_or_default()
    );
    if report.incomplete.is_some() {
        return Err(Failure { code: 2, kind: "capacity", message: summary.to_string() });
    }
    let failed = report.persistence_violations > 0;
    if out.is_some() {
        return Ok(Output { json: summary, text, failed });
    }
    // Certificates went to stdout; keep it pure JSON lines.
    if json_mode {
        eprintln!("{summary}");
    } else {
        eprintln!("{text}");
    }
    Ok(Output { json: Value::Null, text: String::new(), failed })
}

fn cmd_verify(instance: &InstanceArgs, file: &std::path::Path) -> Outcome {
    let reader = BufReader::new(File::open(file).map_err(Error::from)?);
    let certs = mif_search::read_certificates(reader)?;
    let config = InstanceConfig {
        max_cosets: instance.max_cosets,
        table_limit: instance.table_limit,
        max_width: instance.max_width,
        cache_dir: instance.cache_dir.clone(),
        ..InstanceConfig::default()
    };
    let report = mif_search::verify_certificates(&certs, &config)?;
    let text = format!(
        "{} certificates checked, {} witnesses, {} inconclusive, {} failures",
        report.checked,
        report.witnesses,
        report.inconclusive,
        report.failures.len()
    );
    let failed = !report.ok();
    let text = if failed { format!("{text}\n{}", report.failures.join("\n")) } else { text };
    Ok(Output { json: serde_json::to_value(&report).map_err(Error::from)?, text, failed })
}
