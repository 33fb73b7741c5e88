//! `crossord`: classify crossed-product orders over valuation rings.
//!
//! Documents come in as JSON (see the schema in the core crate), verdicts
//! go out as text or JSON reports. The transform subcommands (`twist`,
//! `restrict`, `coarsen`) apply one directive and print the rewritten
//! document, so pipelines can be inspected one step at a time. `selftest`
//! runs the corpus embedded in the library.
//!
//! Exit codes: 0 clean, 2 for anything wrong with the input, 3 when an
//! internal cross-check contradicts itself (a bug, not a user error).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crossord_core::schema::{self, Document, Report, ResidueReport, ValueGroupDoc};
use crossord_core::{classify, selftest, Error, InputError, InternalError};

#[derive(Parser)]
#[command(
    name = "crossord",
    version,
    about = "Classify crossed-product orders over valuation rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized steps of prime splitting.
    #[arg(long, global = true, default_value_t = selftest::DEFAULT_SEED)]
    seed: u64,
    /// Starting p-adic precision for splitting witnesses.
    #[arg(long, global = true, default_value_t = selftest::DEFAULT_PRECISION)]
    precision: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document, build the order and run every structural check.
    Validate { file: PathBuf },
    /// Decide the classification predicates for a document.
    Classify {
        /// Document to classify (or use --batch).
        file: Option<PathBuf>,
        /// Classify every .json document in a directory, in name order.
        #[arg(long, value_name = "DIR", conflicts_with = "file")]
        batch: Option<PathBuf>,
        /// Classify batch entries in parallel; output order is unchanged.
        #[arg(long, requires = "batch")]
        parallel: bool,
    },
    /// Fold a concrete document's twist directive into its cocycle.
    Twist { file: PathBuf },
    /// Apply a document's restrict directive; prints an abstract document.
    Restrict { file: PathBuf },
    /// Apply a document's coarsen directive; prints an abstract document.
    Coarsen { file: PathBuf },
    /// Run the embedded fixture corpus and its cross-checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_byte(&e))
        }
    }
}

fn exit_byte(e: &Error) -> u8 {
    u8::try_from(e.exit_code()).unwrap_or(3)
}

fn run(cli: &Cli) -> crossord_core::Result<ExitCode> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Classify {
            file,
            batch,
            parallel,
        } => match (file, batch) {
            (Some(file), None) => classify_single(cli, file),
            (None, Some(dir)) => classify_batch(cli, dir, *parallel),
            _ => Err(InputError::Document(
                "classify needs a FILE argument or --batch <DIR>".into(),
            )
            .into()),
        },
        Command::Twist { file } => twist(cli, file),
        Command::Restrict { file } => restrict(cli, file),
        Command::Coarsen { file } => coarsen(cli, file),
        Command::Selftest => run_selftest(cli),
    }
}

fn load(path: &Path) -> crossord_core::Result<Document> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::from(InputError::Document(format!("{}: {e}", path.display()))))?;
    schema::parse_document(&text)
}

/// Write to stdout, treating a closed pipe (`crossord ... | head`) as a
/// polite request to stop rather than a panic.
fn emit(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

/// Pretty-print a value whose object keys are already sorted.
fn print_json(value: &serde_json::Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("json value prints")
    ));
}

fn print_document(doc: &Document) -> crossord_core::Result<()> {
    print_json(&schema::to_sorted_json(doc)?);
    Ok(())
}

fn validate(cli: &Cli, file: &Path) -> crossord_core::Result<ExitCode> {
    let doc = load(file)?;
    let built = schema::build(&doc, cli.seed, cli.precision)?;
    let gamma = ValueGroupDoc::from_group(built.profile.gamma());
    match cli.format {
        Format::Text => {
            emit(&format!(
                "ok: document parses and every structural constraint holds\n\
                 mode:           {}\n\
                 group order:    {}\n\
                 maximal ideals: {}\n\
                 value group:    {}\n",
                doc.mode(),
                built.profile.group().order(),
                built.profile.ideal_count(),
                describe_gamma(&gamma)
            ));
        }
        Format::Json => {
            let value = serde_json::json!({
                "ok": true,
                "mode": doc.mode(),
                "group_order": built.profile.group().order(),
                "ideals": built.profile.ideal_count(),
                "value_group": schema::to_sorted_json(&gamma)?,
            });
            print_json(&schema::to_sorted_json(&value)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn describe_gamma(gamma: &ValueGroupDoc) -> String {
    match gamma {
        ValueGroupDoc::Lex { rank } => format!("discrete, lexicographic rank {rank}"),
        ValueGroupDoc::DenseQ => "dense rational".into(),
    }
}

fn classify_document(doc: &Document, seed: u64, precision: u32) -> crossord_core::Result<Report> {
    let built = schema::build(doc, seed, precision)?;
    let c = classify::classify(&built.profile)?;
    let residue = match &built.concrete {
        Some(parts) => {
            let check = selftest::cross_check(parts, &built.profile, &c)?;
            Some(ResidueReport {
                radical_dim: check.radical_dim,
                quotient_dim: check.quotient_dim,
                center_dim: check.center_dim,
                local_quotient_dims: check.local_quotient_dims,
            })
        }
        None => None,
    };
    Ok(Report::new(
        &c,
        doc.mode(),
        built.profile.group().order(),
        built.profile.ideal_count(),
        residue,
    ))
}

fn classify_single(cli: &Cli, file: &Path) -> crossord_core::Result<ExitCode> {
    let doc = load(file)?;
    let report = classify_document(&doc, cli.seed, cli.precision)?;
    match cli.format {
        Format::Text => emit(&render_report(&report)),
        Format::Json => print_json(&schema::to_sorted_json(&report)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn classify_batch(cli: &Cli, dir: &Path, parallel: bool) -> crossord_core::Result<ExitCode> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::from(InputError::Document(format!("{}: {e}", dir.display()))))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(
            InputError::Document(format!("{}: no .json documents found", dir.display())).into(),
        );
    }

    let classify_one = |path: &PathBuf| -> crossord_core::Result<Report> {
        let doc = load(path)?;
        classify_document(&doc, cli.seed, cli.precision)
    };
    // Entries are independent; order of the output follows the sorted
    // input paths whether or not the work is spread over threads.
    let results: Vec<crossord_core::Result<Report>> = if parallel {
        paths.par_iter().map(classify_one).collect()
    } else {
        paths.iter().map(classify_one).collect()
    };

    let mut worst = 0u8;
    match cli.format {
        Format::Text => {
            for (path, result) in paths.iter().zip(&results) {
                emit(&format!("== {}\n", path.display()));
                match result {
                    Ok(report) => emit(&render_report(report)),
                    Err(e) => {
                        emit(&format!("error: {e}\n"));
                        worst = worst.max(exit_byte(e));
                    }
                }
            }
        }
        Format::Json => {
            let mut map = BTreeMap::new();
            for (path, result) in paths.iter().zip(&results) {
                let name = path.file_name().map_or_else(
                    || path.display().to_string(),
                    |n| n.to_string_lossy().into(),
                );
                let value = match result {
                    Ok(report) => schema::to_sorted_json(report)?,
                    Err(e) => {
                        worst = worst.max(exit_byte(e));
                        serde_json::json!({ "error": e.to_string(), "exit": exit_byte(e) })
                    }
                };
                map.insert(name, value);
            }
            print_json(&schema::to_sorted_json(&map)?);
        }
    }
    Ok(ExitCode::from(worst))
}

fn render_report(report: &Report) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    out.push_str(&format!(
        "document:       {} ({} branch)\n",
        report.mode, report.branch
    ));
    out.push_str(&format!("group order:    {}\n", report.group_order));
    out.push_str(&format!("maximal ideals: {}\n", report.ideals));
    out.push_str("verdicts:\n");
    out.push_str(&format!(
        "  semihereditary  {}\n",
        yn(report.verdicts.semihereditary)
    ));
    out.push_str(&format!(
        "  extremal        {}\n",
        yn(report.verdicts.extremal)
    ));
    out.push_str(&format!(
        "  primary         {}\n",
        yn(report.verdicts.primary)
    ));
    out.push_str(&format!(
        "  valuation ring  {}\n",
        yn(report.verdicts.valuation_ring)
    ));
    out.push_str(&format!(
        "  maximal         {}\n",
        yn(report.verdicts.maximal)
    ));
    out.push_str(&format!(
        "  bezout          {}\n",
        yn(report.verdicts.bezout)
    ));
    out.push_str(&format!(
        "  azumaya         {}\n",
        yn(report.verdicts.azumaya)
    ));
    out.push_str(&format!("unit diagonal:  {:?}\n", report.unit_diagonal));
    for (m, (stab, local)) in report
        .decomposition_groups
        .iter()
        .zip(&report.local_unit_diagonals)
        .enumerate()
    {
        out.push_str(&format!(
            "ideal {m}: stabilizer {stab:?}, local unit diagonal {local:?}\n"
        ));
    }
    let forced: Vec<String> = report
        .radical_positive_at
        .iter()
        .enumerate()
        .filter(|(_, row)| row.iter().any(|&b| b))
        .map(|(s, row)| {
            let ideals: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(m, _)| m)
                .collect();
            format!("x_{s} at ideals {ideals:?}")
        })
        .collect();
    if forced.is_empty() {
        out.push_str("radical-forced coefficients: none\n");
    } else {
        out.push_str(&format!(
            "radical-forced coefficients: {}\n",
            forced.join("; ")
        ));
    }
    if let Some(w) = &report.witnesses.semihereditary {
        out.push_str(&format!("witness (semihereditary): {w}\n"));
    }
    if let Some(w) = &report.witnesses.primary {
        out.push_str(&format!("witness (primary): {w}\n"));
    }
    if let Some(residue) = &report.residue {
        out.push_str(&format!(
            "residue algebra: quotient {}, radical {}, center {}, local quotients {:?}\n",
            residue.quotient_dim,
            residue.radical_dim,
            residue.center_dim,
            residue.local_quotient_dims
        ));
    }
    out
}

fn twist(cli: &Cli, file: &Path) -> crossord_core::Result<ExitCode> {
    let doc = load(file)?;
    let Document::Concrete(concrete) = &doc else {
        return Err(InputError::Document(
            "twist applies to concrete documents; abstract documents carry no field elements"
                .into(),
        )
        .into());
    };
    let folded = schema::apply_twist(concrete, cli.seed, cli.precision)?;
    print_document(&Document::Concrete(folded))?;
    Ok(ExitCode::SUCCESS)
}

fn restrict(cli: &Cli, file: &Path) -> crossord_core::Result<ExitCode> {
    let doc = load(file)?;
    let (restrict, coarsen, comment) = match &doc {
        Document::Concrete(d) => (&d.restrict, &d.coarsen, &d.comment),
        Document::Abstract(d) => (&d.restrict, &d.coarsen, &d.comment),
    };
    if restrict.is_none() {
        return Err(InputError::Document("document has no restrict directive".into()).into());
    }
    // Build with the later coarsening stripped off, so only the restrict
    // step (after any twist) is applied here; the directive is carried
    // forward on the printed document.
    let mut trimmed = doc.clone();
    match &mut trimmed {
        Document::Concrete(d) => d.coarsen = None,
        Document::Abstract(d) => d.coarsen = None,
    }
    let built = schema::build(&trimmed, cli.seed, cli.precision)?;
    let mut out = schema::abstract_document(&built.profile);
    out.coarsen = coarsen.clone();
    out.comment = comment.clone();
    print_document(&Document::Abstract(out))?;
    Ok(ExitCode::SUCCESS)
}

fn coarsen(cli: &Cli, file: &Path) -> crossord_core::Result<ExitCode> {
    let doc = load(file)?;
    let (coarsen, comment) = match &doc {
        Document::Concrete(d) => (&d.coarsen, &d.comment),
        Document::Abstract(d) => (&d.coarsen, &d.comment),
    };
    if coarsen.is_none() {
        return Err(InputError::Document("document has no coarsen directive".into()).into());
    }
    // Any restrict directive is applied first, matching the build order.
    let built = schema::build(&doc, cli.seed, cli.precision)?;
    let mut out = schema::abstract_document(&built.profile);
    out.comment = comment.clone();
    print_document(&Document::Abstract(out))?;
    Ok(ExitCode::SUCCESS)
}

fn run_selftest(cli: &Cli) -> crossord_core::Result<ExitCode> {
    let outcomes = selftest::run_all(cli.seed, cli.precision);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    match cli.format {
        Format::Text => {
            let mut lines = String::new();
            for outcome in &outcomes {
                let tag = if outcome.passed { "PASS" } else { "FAIL" };
                lines.push_str(&format!("{tag} {:<28} {}\n", outcome.name, outcome.details));
            }
            lines.push_str(&format!(
                "{} passed, {failed} failed\n",
                outcomes.len() - failed
            ));
            emit(&lines);
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "name": o.name,
                        "passed": o.passed,
                        "details": o.details,
                    })
                })
                .collect();
            print_json(&schema::to_sorted_json(&rows)?);
        }
    }
    if failed > 0 {
        return Err(
            InternalError::Invariant(format!("{failed} selftest fixture(s) failed")).into(),
        );
    }
    Ok(ExitCode::SUCCESS)
}
