use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dioph_core::curve::{generate_sextuples, Branch, CandidateRecord};
use dioph_core::param::TripleParams;
use dioph_core::rational::parse_list;
use dioph_core::record::{
    classify_record, family_record, triple_record, ClassifyRecord, FamilyMode, FamilyRecord,
    TripleRecord, VerifyRecord,
};
use dioph_core::search::{self, census_structures, GridSpec, Pipeline, ResultRecord, SearchJob};
use dioph_core::tuple::{verify_tuple, PairCheck, StructureProfile};
use dioph_core::{Error, Rational, Tag};

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "dioph",
    version,
    about = "Exact search and verification of rational Diophantine tuples"
)]
struct Cli {
    /// Output style: aligned text, or one JSON record per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Quintuple,
    Sextuple,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Family,
    Curve,
    Triple,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every pairwise product plus one is a rational square.
    Verify {
        /// Comma-separated rationals, e.g. 1,3,8,120
        #[arg(allow_hyphen_values = true)]
        elements: String,
    },
    /// Regular sub-quadruples and sub-quintuples of each line of a file.
    Classify { file: PathBuf },
    /// Lasić triple of (t1, t2, t3) and its regular extension pair.
    Triple {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Member of the quintuple or sextuple family.
    Family {
        #[arg(long, value_enum, default_value_t = Mode::Sextuple)]
        mode: Mode,
        #[arg(long, allow_hyphen_values = true)]
        u: Rational,
        #[arg(long, allow_hyphen_values = true)]
        t1: Option<Rational>,
    },
    /// Sextuples from m·P1 + n·P2 with |m|, |n| ≤ bound.
    Curve {
        #[arg(long, allow_hyphen_values = true)]
        u: Rational,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
    },
    /// Sweep a parameter grid.
    Search {
        #[arg(long, value_enum, default_value_t = SearchMode::Family)]
        mode: SearchMode,
        /// Grid of parameters with |numerator| and denominator at most this.
        #[arg(long, required_unless_present = "job")]
        height_bound: Option<u64>,
        /// Combination bound for curve sweeps.
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Append records here, skipping points already present.
        #[arg(long)]
        out: Option<PathBuf>,
        /// key = value job file; replaces the grid flags.
        #[arg(long, conflicts_with = "height_bound")]
        job: Option<PathBuf>,
        #[arg(long, default_value = "search")]
        job_id: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = io::stdout().lock();
    let mut out = BufWriter::new(out);
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::InvalidJob(_) | Error::EmptyGrid => EXIT_USAGE,
                e if e.is_degenerate_parameter() => EXIT_DEGENERATE,
                _ => EXIT_FALSE,
            }
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(code)
}

type Out<'a> = BufWriter<io::StdoutLock<'a>>;

fn run(cli: Cli, out: &mut Out) -> Result<u8, Error> {
    let f = cli.format;
    match cli.command {
        Command::Verify { elements } => cmd_verify(f, &elements, out),
        Command::Classify { file } => cmd_classify(f, &file, out),
        Command::Triple { params } => cmd_triple(f, &params, out),
        Command::Family { mode, u, t1 } => {
            let mode = match mode {
                Mode::Quintuple => FamilyMode::Quintuple,
                Mode::Sextuple => FamilyMode::Sextuple,
            };
            cmd_family(f, mode, &u, t1.as_ref(), out)
        }
        Command::Curve { u, bound } => cmd_curve(f, &u, bound, out),
        Command::Search {
            mode,
            height_bound,
            bound,
            out: path,
            job,
            job_id,
        } => {
            let job = match job {
                Some(path) => SearchJob::load(&path)?,
                None => {
                    let pipeline = match mode {
                        SearchMode::Family => Pipeline::Family,
                        SearchMode::Curve => Pipeline::Curve,
                        SearchMode::Triple => Pipeline::Triple,
                    };
                    let grid = GridSpec::height(height_bound.expect("required by clap"));
                    SearchJob {
                        combo_bound: bound,
                        ..SearchJob::new(job_id, pipeline, grid)
                    }
                }
            };
            cmd_search(f, &job, path, out)
        }
    }
}

fn usage(msg: String) -> Result<u8, Error> {
    eprintln!("error: {msg}");
    Ok(EXIT_USAGE)
}

fn emit<T: Serialize>(out: &mut Out, record: &T) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(record).expect("records serialize")
    )
}

/// `n/d (≈x)`.
fn show(r: &Rational) -> String {
    if r.is_integer() {
        return r.to_string();
    }
    let x = r.approx();
    let a = x.abs();
    if (1e-3..1e9).contains(&a) {
        format!("{r} (≈{x:.6})")
    } else {
        format!("{r} (≈{x:.6e})")
    }
}

fn show_pairs(out: &mut Out, pairs: &[PairCheck]) -> io::Result<()> {
    for p in pairs {
        match &p.witness {
            Some(w) => writeln!(out, "  a{}·a{} + 1 = ({w})²", p.i + 1, p.j + 1)?,
            None => writeln!(
                out,
                "  a{}·a{} + 1 = {}  NOT A SQUARE",
                p.i + 1,
                p.j + 1,
                p.product_plus_one
            )?,
        }
    }
    Ok(())
}

fn show_elements(out: &mut Out, elements: &[Rational]) -> io::Result<()> {
    for (i, e) in elements.iter().enumerate() {
        writeln!(out, "  a{} = {}", i + 1, show(e))?;
    }
    Ok(())
}

fn one_based<const K: usize>(idx: &[usize; K]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn show_profile(out: &mut Out, p: &StructureProfile) -> io::Result<()> {
    let quads: Vec<String> = p.regular_quadruples.iter().map(one_based).collect();
    let quints: Vec<String> = p
        .regular_quintuples
        .iter()
        .map(|h| one_based(&h.indices))
        .collect();
    writeln!(
        out,
        "  regular quadruples: {}",
        if quads.is_empty() {
            "none".into()
        } else {
            quads.join(" ")
        }
    )?;
    writeln!(
        out,
        "  regular quintuples: {}",
        if quints.is_empty() {
            "none".into()
        } else {
            quints.join(" ")
        }
    )
}

fn cmd_verify(f: Format, text: &str, out: &mut Out) -> Result<u8, Error> {
    let elements = match parse_list(text) {
        Ok(v) => v,
        Err(e) => return usage(format!("cannot parse {text:?}: {e}")),
    };
    let record = VerifyRecord::from(verify_tuple(&elements)?);
    match f {
        Format::Records => emit(out, &record)?,
        Format::Human => {
            show_elements(out, &record.elements)?;
            for issue in &record.issues {
                writeln!(out, "  issue: {}", Error::from(issue))?;
            }
            show_pairs(out, &record.pairs)?;
            let n = record.elements.len();
            if record.diophantine {
                writeln!(out, "rational Diophantine {n}-tuple")?;
            } else {
                writeln!(out, "not a rational Diophantine {n}-tuple")?;
            }
        }
    }
    Ok(if record.diophantine { 0 } else { EXIT_FALSE })
}

fn cmd_classify(f: Format, path: &PathBuf, out: &mut Out) -> Result<u8, Error> {
    let text = fs::read_to_string(path)?;
    let mut records: Vec<ClassifyRecord> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_list(line) {
            Ok(v) => records.push(classify_record(i + 1, v)),
            Err(e) => return usage(format!("{}:{}: {e}", path.display(), i + 1)),
        }
    }
    for r in &records {
        match f {
            Format::Records => emit(out, r)?,
            Format::Human => {
                let list: Vec<String> = r.elements.iter().map(|e| e.to_string()).collect();
                writeln!(out, "line {}: {}", r.line, list.join(", "))?;
                writeln!(out, "  diophantine: {}", r.profile.is_diophantine)?;
                show_profile(out, &r.profile)?;
            }
        }
    }
    Ok(0)
}

fn cmd_triple(f: Format, text: &str, out: &mut Out) -> Result<u8, Error> {
    let [t1, t2, t3]: [Rational; 3] = match parse_list(text).map(<[Rational; 3]>::try_from) {
        Ok(Ok(p)) => p,
        Ok(Err(v)) => return usage(format!("--params needs three values, got {}", v.len())),
        Err(e) => return usage(format!("cannot parse {text:?}: {e}")),
    };
    let record: TripleRecord = triple_record(&TripleParams::new(t1, t2, t3));
    match f {
        Format::Records => emit(out, &record)?,
        Format::Human => {
            if let Some(t) = &record.triple {
                writeln!(out, "triple:")?;
                show_elements(out, t)?;
            }
            if let Some(pair) = &record.regular_pair {
                writeln!(out, "regular extensions:")?;
                writeln!(out, "  a4 = {}", show(&pair[0]))?;
                writeln!(out, "  a5 = {}", show(&pair[1]))?;
            }
            if let Some(q) = record.quintuple {
                writeln!(out, "a4·a5 + 1 square: {q}")?;
            }
            if let Some(pairs) = &record.pairs {
                show_pairs(out, pairs)?;
            }
            writeln!(out, "{}{}", record.tag, reason_suffix(&record.reason))?;
        }
    }
    Ok(exit_for(record.tag))
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn reason_suffix(reason: &Option<String>) -> String {
    reason
        .as_ref()
        .map(|r| format!(": {r}"))
        .unwrap_or_default()
}

fn exit_for(tag: Tag) -> u8 {
    match tag {
        Tag::Valid => 0,
        Tag::Degenerate => EXIT_DEGENERATE,
        Tag::NotSextuple => EXIT_FALSE,
    }
}

fn cmd_family(
    f: Format,
    mode: FamilyMode,
    u: &Rational,
    t1: Option<&Rational>,
    out: &mut Out,
) -> Result<u8, Error> {
    let record: FamilyRecord = family_record(mode, u, t1);
    match f {
        Format::Records => emit(out, &record)?,
        Format::Human => {
            write!(out, "u = {u}")?;
            if let Some(t1) = &record.t1 {
                write!(out, ", t1 = {t1}")?;
            }
            writeln!(out)?;
            if let Some(e) = &record.elements {
                show_elements(out, e)?;
            }
            if let Some(pairs) = &record.pairs {
                show_pairs(out, pairs)?;
            }
            if let Some(p) = &record.profile {
                show_profile(out, p)?;
            }
            writeln!(out, "{}{}", record.tag, reason_suffix(&record.reason))?;
        }
    }
    Ok(exit_for(record.tag))
}

fn cmd_curve(f: Format, u: &Rational, bound: u32, out: &mut Out) -> Result<u8, Error> {
    let records: Vec<CandidateRecord> = generate_sextuples(u, bound)?;
    let count = |t: Tag| records.iter().filter(|r| r.tag == t).count();
    for r in &records {
        match f {
            Format::Records => emit(out, r)?,
            Format::Human => {
                writeln!(out, "(m, n) = ({}, {}): {}", r.m, r.n, r.tag)?;
                for c in &r.candidates {
                    let branch = match c.branch {
                        Branch::Plus => "+",
                        Branch::Minus => "-",
                    };
                    let t1 = c.t1.as_ref().map_or("none".to_string(), |t| t.to_string());
                    writeln!(
                        out,
                        "  P2{branch}: point {}, t1 = {t1}, {}{}",
                        c.point,
                        c.tag,
                        reason_suffix(&c.reason)
                    )?;
                    if let Some(e) = &c.elements {
                        let list: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "    {{{}}}", list.join(", "))?;
                    }
                }
            }
        }
    }
    let (valid, degenerate, bad) = (
        count(Tag::Valid),
        count(Tag::Degenerate),
        count(Tag::NotSextuple),
    );
    let summary = format!("VALID {valid}, DEGENERATE {degenerate}, NOT_SEXTUPLE {bad}");
    match f {
        Format::Human => writeln!(out, "{summary}")?,
        Format::Records => eprintln!("{summary}"),
    }
    Ok(if bad > 0 { EXIT_FALSE } else { 0 })
}

fn show_result(out: &mut Out, r: &ResultRecord) -> io::Result<()> {
    let params = serde_json::to_value(&r.params).expect("params serialize");
    let fields: Vec<String> = params
        .as_object()
        .into_iter()
        .flatten()
        .filter(|(k, _)| k.as_str() != "pipeline")
        .map(|(k, v)| format!("{k}={}", v.as_str().map_or(v.to_string(), str::to_string)))
        .collect();
    write!(out, "#{} {} {}", r.grid_index, fields.join(" "), r.tag)?;
    if let Some(p) = &r.profile {
        let (q, p) = p.signature();
        write!(
            out,
            " ({}, {})",
            plural(q, "regular quadruple"),
            plural(p, "regular quintuple")
        )?;
    }
    if let Some(h) = &r.height {
        write!(out, " height {h}")?;
    }
    writeln!(out, "{}", reason_suffix(&r.reason))
}

fn cmd_search(
    f: Format,
    job: &SearchJob,
    path: Option<PathBuf>,
    out: &mut Out,
) -> Result<u8, Error> {
    let records = match &path {
        Some(path) => {
            let summary = search::run_job_to_file(job, path)?;
            eprintln!(
                "{} grid points: {} already present, {} written to {}",
                summary.total,
                summary.skipped,
                summary.written,
                path.display()
            );
            search::load_records(path)?
                .into_iter()
                .filter(|r| r.job_id == job.job_id)
                .collect()
        }
        None => search::run_job(job)?,
    };
    if path.is_none() || f == Format::Human {
        for r in &records {
            match f {
                Format::Records => emit(out, r)?,
                Format::Human => show_result(out, r)?,
            }
        }
    }
    let census = census_structures(
        records
            .iter()
            .filter(|r| r.within_height(job.height_bound.as_ref())),
    );
    if f == Format::Human {
        let count = |t: Tag| records.iter().filter(|r| r.tag == t).count();
        writeln!(
            out,
            "VALID {}, DEGENERATE {}, NOT_SEXTUPLE {}",
            count(Tag::Valid),
            count(Tag::Degenerate),
            count(Tag::NotSextuple)
        )?;
        for ((q, p), n) in &census {
            writeln!(
                out,
                "  {} with {} and {}",
                plural(*n, "tuple"),
                plural(*q, "regular quadruple"),
                plural(*p, "regular quintuple")
            )?;
        }
    }
    let bad = records
        .iter()
        .any(|r| r.tag == Tag::NotSextuple || !r.reverify());
    Ok(if bad { EXIT_FALSE } else { 0 })
}
