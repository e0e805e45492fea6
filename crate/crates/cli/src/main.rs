//! Command line front end: verify words, build constructions, run the
//! feasibility case analysis, search wildcard templates, and re-check the
//! bundled reference tables.
//!
//! Exit codes: 0 success (universal / search complete / witness found),
//! 1 valid negative outcome (not universal, nonexistent, budget cut,
//! failing table entry), 2 usage or input error, 3 internal self-check
//! failure (a bug, not bad input).

use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use upwords_core::{
    brute_force_oracle, construct, cyclic_parameter_verdict, cyclic_template_verdict, entries,
    exhaustive_search, exhaustive_search_parallel, is_universal, prefix_run_verdict,
    render_factor, single_diamond_template, single_diamond_verdict, two_diamond_shape_verdict,
    universality, Alphabet, ConstructionRequest, DiamondTemplate, Error, Existence, Family,
    PartialWord, Result, SearchMode, SearchSpec, StopReason, TableEntry, Verdict,
};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUG: u8 = 3;

#[derive(Parser)]
#[command(
    name = "upwords",
    version,
    about = "Universal partial words: verify, construct, decide, search"
)]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Render wildcards as a unicode diamond instead of '*'.
    #[arg(long, global = true)]
    unicode: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a word covers every length-n factor exactly once.
    Verify(VerifyArgs),
    /// Build a word from one of the closed-form families.
    Construct(ConstructArgs),
    /// Existence verdict from the closed-form case analysis.
    Feasible(FeasibleArgs),
    /// Exhaustively search for words matching a wildcard layout.
    Search(SearchArgs),
    /// Re-verify the bundled reference tables.
    Tables(TablesArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// The word, letters plus '*' or the unicode diamond.
    word: String,
    /// Factor length.
    #[arg(long)]
    n: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    /// Treat the word as cyclic.
    #[arg(long)]
    cyclic: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// Family: pos1, posk, two_diamonds, nm1_diamonds, trivial.
    #[arg(long)]
    family: String,
    /// Factor length.
    #[arg(long)]
    n: usize,
    /// Wildcard position, required by posk.
    #[arg(long)]
    k: Option<usize>,
    /// Alphabet size (only trivial accepts more than 2).
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
}

#[derive(Args)]
struct FeasibleArgs {
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    /// Factor length.
    #[arg(long)]
    n: usize,
    /// Single wildcard scenario; give the position with --k.
    #[arg(long)]
    single_diamond: bool,
    /// Wildcard position for --single-diamond.
    #[arg(long)]
    k: Option<usize>,
    /// Two-wildcard scenario; give the segment lengths with --shape.
    #[arg(long)]
    two_diamonds: bool,
    /// Segment lengths x,y,z for the shape x ◊ y ◊ z.
    #[arg(long)]
    shape: Option<String>,
    /// Cyclic scenario: parameter screen, or template screen with --template.
    #[arg(long)]
    cyclic: bool,
    /// Prefix-run scenario: template starting with exactly this many wildcards.
    #[arg(long)]
    prefix_run: Option<usize>,
    /// Template text for --cyclic or --prefix-run ('?' free, '*' wildcard).
    #[arg(long)]
    template: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    /// Factor length.
    #[arg(long)]
    n: usize,
    /// Search cyclic words.
    #[arg(long)]
    cyclic: bool,
    /// Template text ('?' free cell, '*' wildcard, letters fixed).
    #[arg(long)]
    template: Option<String>,
    /// Single wildcard at this position (length derived when omitted).
    #[arg(long)]
    diamond_at: Option<usize>,
    /// Comma-separated wildcard positions.
    #[arg(long)]
    diamonds: Option<String>,
    /// Total word length for --diamond-at / --diamonds.
    #[arg(long)]
    length: Option<usize>,
    /// Stop at the first witness.
    #[arg(long)]
    first: bool,
    /// Emit one representative per symmetry class instead of every witness.
    #[arg(long)]
    symmetry_reduction: bool,
    /// Node budget (default one billion).
    #[arg(long)]
    node_budget: Option<u64>,
    /// Time budget in milliseconds.
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Split the search over the first free cell's letters.
    #[arg(long)]
    threads: bool,
    /// Run the naive oracle instead of the pruned engine.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// Which table to check: 1, 2, 3 or all.
    #[arg(default_value = "all")]
    which: String,
}

struct Out {
    json: bool,
    glyph: char,
}

impl Out {
    fn word(&self, w: &PartialWord) -> String {
        w.render_with_diamond(self.glyph)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out {
        json: cli.json,
        glyph: if cli.unicode { '◊' } else { '*' },
    };
    let run = match cli.command {
        Command::Verify(a) => cmd_verify(&out, a),
        Command::Construct(a) => cmd_construct(&out, a),
        Command::Feasible(a) => cmd_feasible(&out, a),
        Command::Search(a) => cmd_search(&out, a),
        Command::Tables(a) => cmd_tables(&out, a),
    };
    match run {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::SelfCheck(_) => EXIT_BUG,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn cmd_verify(out: &Out, a: VerifyArgs) -> Result<u8> {
    let alphabet = Alphabet::new(a.alphabet)?;
    let word = PartialWord::parse(&a.word, alphabet)?;
    let report = universality(&word, a.n, a.cyclic)?;
    if out.json {
        let mut violations: Vec<serde_json::Value> = report
            .missing
            .iter()
            .map(|&c| json!({"kind": "missing", "factor": render_factor(c, a.n, alphabet)}))
            .collect();
        violations.extend(report.duplicated.iter().map(|d| {
            json!({
                "kind": "duplicate",
                "factor": render_factor(d.factor, a.n, alphabet),
                "windows": d.windows,
            })
        }));
        println!(
            "{}",
            json!({
                "word": out.word(&word),
                "alphabet": a.alphabet,
                "n": a.n,
                "cyclic": a.cyclic,
                "universal": report.universal,
                "violations": violations,
            })
        );
    } else if report.universal {
        println!("universal for n = {}", a.n);
    } else {
        println!("not universal for n = {}", a.n);
        for f in report.render_missing() {
            println!("missing {f}");
        }
        for d in &report.duplicated {
            println!(
                "duplicate {} in windows {:?}",
                render_factor(d.factor, a.n, alphabet),
                d.windows
            );
        }
    }
    Ok(if report.universal { 0 } else { EXIT_NEGATIVE })
}

fn cmd_construct(out: &Out, a: ConstructArgs) -> Result<u8> {
    let alphabet = Alphabet::new(a.alphabet)?;
    let family = Family::from_str(&a.family)?;
    let req = ConstructionRequest {
        family,
        n: a.n,
        k: a.k,
        alphabet,
    };
    let word = construct(&req)?;
    if !is_universal(&word, a.n, false)? {
        return Err(Error::SelfCheck(format!(
            "constructed word {} is not universal for n = {}",
            out.word(&word),
            a.n
        )));
    }
    if out.json {
        println!(
            "{}",
            json!({
                "word": out.word(&word),
                "alphabet": a.alphabet,
                "n": a.n,
                "cyclic": false,
                "universal": true,
                "family": family.name(),
            })
        );
    } else {
        println!("{}", out.word(&word));
        println!(
            "self-check: universal for n = {} (length {}, wildcards at {:?})",
            a.n,
            word.len(),
            word.diamond_positions()
        );
    }
    Ok(0)
}

fn parse_usize_list(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadParams(format!("{what} must be comma-separated numbers, got `{text}`")))
        })
        .collect()
}

fn cmd_feasible(out: &Out, a: FeasibleArgs) -> Result<u8> {
    let alphabet = Alphabet::new(a.alphabet)?;
    let scenarios =
        [a.single_diamond, a.two_diamonds, a.cyclic, a.prefix_run.is_some()];
    if scenarios.iter().filter(|&&s| s).count() != 1 {
        return Err(Error::BadParams(
            "pick exactly one of --single-diamond, --two-diamonds, --cyclic, --prefix-run"
                .to_string(),
        ));
    }
    let mut feasible_d: Option<Vec<usize>> = None;
    let verdict = if a.single_diamond {
        let k = a
            .k
            .ok_or_else(|| Error::BadParams("--single-diamond requires --k".to_string()))?;
        single_diamond_verdict(alphabet, a.n, k)?
    } else if a.two_diamonds {
        if !alphabet.is_binary() {
            return Err(Error::BadParams(
                "the two-wildcard case analysis is defined for the binary alphabet".to_string(),
            ));
        }
        let shape = a
            .shape
            .as_deref()
            .ok_or_else(|| Error::BadParams("--two-diamonds requires --shape x,y,z".to_string()))?;
        let parts = parse_usize_list(shape, "--shape")?;
        let [x, y, z]: [usize; 3] = parts
            .try_into()
            .map_err(|_| Error::BadParams("--shape needs exactly three lengths x,y,z".to_string()))?;
        two_diamond_shape_verdict(a.n, x, y, z)?
    } else if a.cyclic {
        match &a.template {
            Some(text) => {
                let template = DiamondTemplate::parse(text, alphabet, a.n, true)?;
                cyclic_template_verdict(&template)?
            }
            None => {
                let cv = cyclic_parameter_verdict(alphabet, a.n)?;
                feasible_d = Some(cv.feasible_d);
                cv.verdict
            }
        }
    } else {
        let d = a.prefix_run.expect("scenario selection checked above");
        let text = a
            .template
            .as_deref()
            .ok_or_else(|| Error::BadParams("--prefix-run requires --template".to_string()))?;
        let template = DiamondTemplate::parse(text, alphabet, a.n, false)?;
        prefix_run_verdict(alphabet, a.n, d, &template)?
    };

    let (kind, theorem, detail, witnesses, family) = match &verdict {
        Verdict::Exists(Existence::Construction(f)) => {
            ("exists", None, None, Vec::new(), Some(f.name()))
        }
        Verdict::Exists(Existence::Witness(w)) => ("exists", None, None, vec![out.word(w)], None),
        Verdict::NonexistentBy { theorem, detail } => {
            ("nonexistent", Some(theorem.as_str()), Some(detail.clone()), Vec::new(), None)
        }
        Verdict::Unknown { note, witness } => (
            "unknown",
            None,
            Some(note.clone()),
            witness.iter().map(|w| out.word(w)).collect(),
            None,
        ),
    };
    if out.json {
        let mut value = json!({
            "alphabet": a.alphabet,
            "n": a.n,
            "cyclic": a.cyclic,
            "verdict": kind,
            "witnesses": witnesses,
        });
        let object = value.as_object_mut().expect("object literal");
        if let Some(t) = theorem {
            object.insert("theorem".into(), json!(t));
        }
        if let Some(d) = &detail {
            object.insert("detail".into(), json!(d));
        }
        if let Some(f) = family {
            object.insert("family".into(), json!(f));
        }
        if let Some(d) = &feasible_d {
            object.insert("feasible_d".into(), json!(d));
        }
        println!("{value}");
    } else {
        match (kind, theorem, family) {
            ("nonexistent", Some(t), _) => {
                println!("nonexistent by {t}: {}", detail.as_deref().unwrap_or(""))
            }
            ("exists", _, Some(f)) => println!("exists: construction {f}"),
            ("exists", _, None) => println!("exists: witness {}", witnesses.join(" ")),
            _ => {
                println!("unknown: {}", detail.as_deref().unwrap_or(""));
                if !witnesses.is_empty() {
                    println!("known witness: {}", witnesses.join(" "));
                }
            }
        }
        if let Some(d) = &feasible_d {
            if d.is_empty() {
                println!("feasible d: (none)");
            } else {
                let list: Vec<String> = d.iter().map(usize::to_string).collect();
                println!("feasible d: {}", list.join(", "));
            }
        }
    }
    Ok(if kind == "nonexistent" { EXIT_NEGATIVE } else { 0 })
}

fn search_template(a: &SearchArgs, alphabet: Alphabet) -> Result<DiamondTemplate> {
    let picks = [
        a.template.is_some(),
        a.diamond_at.is_some(),
        a.diamonds.is_some(),
    ];
    if picks.iter().filter(|&&p| p).count() != 1 {
        return Err(Error::BadParams(
            "pick exactly one of --template, --diamond-at, --diamonds".to_string(),
        ));
    }
    if let Some(text) = &a.template {
        return DiamondTemplate::parse(text, alphabet, a.n, a.cyclic);
    }
    let positions = match (a.diamond_at, &a.diamonds) {
        (Some(k), _) => vec![k],
        (None, Some(list)) => parse_usize_list(list, "--diamonds")?,
        (None, None) => unreachable!("pick count checked above"),
    };
    match a.length {
        Some(len) => {
            DiamondTemplate::from_diamond_positions(alphabet, a.n, a.cyclic, len, &positions)
        }
        None if !a.cyclic && positions.len() == 1 => {
            single_diamond_template(alphabet, a.n, positions[0])
        }
        None => Err(Error::BadParams(
            "--length is required except for a single linear wildcard".to_string(),
        )),
    }
}

fn stop_name(stop: StopReason) -> &'static str {
    match stop {
        StopReason::Completed => "completed",
        StopReason::FirstFound => "first-found",
        StopReason::NodeBudget => "node-budget",
        StopReason::TimeBudget => "time-budget",
    }
}

fn cmd_search(out: &Out, a: SearchArgs) -> Result<u8> {
    let alphabet = Alphabet::new(a.alphabet)?;
    if a.oracle && a.threads {
        return Err(Error::BadParams(
            "the oracle is single-threaded by design; drop --threads".to_string(),
        ));
    }
    let template = search_template(&a, alphabet)?;
    let mode = if a.first {
        SearchMode::First
    } else {
        SearchMode::All
    };
    let mut spec = SearchSpec::new(template)
        .with_mode(mode)
        .with_symmetry_reduction(a.symmetry_reduction);
    if let Some(nodes) = a.node_budget {
        spec = spec.with_node_budget(Some(nodes));
    }
    if let Some(ms) = a.time_budget_ms {
        spec = spec.with_time_budget(Some(Duration::from_millis(ms)));
    }
    let result = if a.oracle {
        brute_force_oracle(&spec)?
    } else if a.threads {
        exhaustive_search_parallel(&spec)?
    } else {
        exhaustive_search(&spec)?
    };
    let rendered: Vec<String> = result.witnesses.iter().map(|w| out.word(w)).collect();
    if out.json {
        for w in &rendered {
            println!("{}", json!({"word": w}));
        }
        println!(
            "{}",
            json!({
                "alphabet": a.alphabet,
                "n": a.n,
                "cyclic": a.cyclic,
                "witnesses": rendered,
                "exhausted": result.exhausted,
                "nodes": result.nodes_explored,
                "stop": stop_name(result.stop),
            })
        );
    } else {
        for w in &rendered {
            println!("{w}");
        }
        println!(
            "witnesses: {}  exhausted: {}  nodes: {}  stop: {}",
            rendered.len(),
            result.exhausted,
            result.nodes_explored,
            stop_name(result.stop)
        );
    }
    Ok(match result.stop {
        StopReason::Completed | StopReason::FirstFound => 0,
        StopReason::NodeBudget | StopReason::TimeBudget => EXIT_NEGATIVE,
    })
}

/// A witness row must verify as-is; a dash row is re-searched and must come
/// back empty and exhausted.
fn check_entry(entry: &TableEntry) -> Result<bool> {
    match entry.witness() {
        Some(word) => Ok(word.diamond_positions() == entry.positions
            && is_universal(word, entry.n, false)?),
        None => {
            let template = single_diamond_template(Alphabet::BINARY, entry.n, entry.positions[0])?;
            let spec = SearchSpec::new(template).with_symmetry_reduction(true);
            let result = exhaustive_search(&spec)?;
            Ok(result.exhausted && result.witnesses.is_empty())
        }
    }
}

fn cmd_tables(out: &Out, a: TablesArgs) -> Result<u8> {
    let filter: Option<u8> = match a.which.as_str() {
        "all" => None,
        "1" => Some(1),
        "2" => Some(2),
        "3" => Some(3),
        other => {
            return Err(Error::BadParams(format!(
                "table must be 1, 2, 3 or all, got `{other}`"
            )))
        }
    };
    let mut checked = 0usize;
    let mut failures = 0usize;
    for entry in entries() {
        if filter.is_some_and(|t| t != entry.table) {
            continue;
        }
        checked += 1;
        let ok = check_entry(entry)?;
        if !ok {
            failures += 1;
        }
        let kind = if entry.is_dash() { "dash" } else { "witness" };
        if out.json {
            println!(
                "{}",
                json!({
                    "table": entry.table,
                    "n": entry.n,
                    "positions": entry.positions,
                    "kind": kind,
                    "word": entry.witness().map(|w| out.word(w)),
                    "theorems": entry.theorems,
                    "ok": ok,
                })
            );
        } else {
            let positions: Vec<String> = entry.positions.iter().map(usize::to_string).collect();
            let label = match entry.witness() {
                Some(w) => out.word(w),
                None => "(dash: confirmed empty)".to_string(),
            };
            let status = if ok { "ok" } else { "FAIL" };
            println!(
                "{status} table {} n={} positions={} {label}",
                entry.table,
                entry.n,
                positions.join(",")
            );
        }
    }
    if out.json {
        println!(
            "{}",
            json!({"checked": checked, "failures": failures, "ok": failures == 0})
        );
    } else {
        println!("checked {checked} entries, {failures} failures");
    }
    Ok(if failures == 0 { 0 } else { EXIT_NEGATIVE })
}
