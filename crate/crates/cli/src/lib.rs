//! Command implementations for the `ribbonmap` binary. Each command renders
//! its standard output into a string and says whether its expectations held,
//! so the exit-code policy can be tested without spawning processes.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ribbonmap::catalog::{build_m33, build_m446, Catalog};
use ribbonmap::census::{ribbon_census, run_census, CensusReport, IncidenceGraph};
use ribbonmap::compare::{check_expectations, compare, ExpectationCheck};
use ribbonmap::export::incidence_dot;
use ribbonmap::golden::{self, Correspondence, Expectations, GoldenBundle};
use ribbonmap::orders::{compute_tables, CyclicWord, TieBreak, WordTables};

#[derive(Debug, Parser)]
#[command(name = "ribbonmap", version, about = "Plane-map catalogs, cyclic orders and the face census")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a catalog, print its size and optionally write it as JSON.
    Catalog {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit nonzero when the class count differs from the expected one.
        #[arg(long)]
        strict: bool,
        /// Override the expected class count.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Print one of the four word tables computed from the catalogs.
    Tables {
        /// 1: raw white words, 2: raw black words, 3 and 4: reduced.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// CSV of `our_id,label` lines; rows are then keyed by those labels.
        #[arg(long)]
        paper_map: Option<PathBuf>,
        #[command(flatten)]
        euler: EulerArgs,
    },
    /// Trace faces over every fork resolution.
    Census {
        #[arg(long, value_enum, default_value_t = Mode::Paper)]
        mode: Mode,
        /// `computed`, `fixture`, or `file <tables.json>`.
        #[arg(long, num_args = 1..=2, value_names = ["KIND", "PATH"], default_values_t = ["computed".to_string()])]
        source: Vec<String>,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit nonzero unless forks, face counts and genus meet the expectations.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        euler: EulerArgs,
    },
    /// Match computed tables against a reference bundle and list the differences.
    Compare {
        /// Bundle JSON; defaults to the built-in transcription.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the discovered correspondence as CSV.
        #[arg(long)]
        write_map: Option<PathBuf>,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[command(flatten)]
        euler: EulerArgs,
    },
    /// Write DOT, map JSON or the reference bundle.
    Export {
        #[command(subcommand)]
        what: Export,
    },
}

#[derive(Debug, Subcommand)]
pub enum Export {
    /// The incidence graph of the reduced tables.
    Dot {
        #[arg(long, num_args = 1..=2, value_names = ["KIND", "PATH"], default_values_t = ["computed".to_string()])]
        source: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One class representative, e.g. `W01` or `B17`.
    Map {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The built-in reference bundle, usable with `compare --golden`.
    Golden {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct EulerArgs {
    /// Break Eulerian-circuit ties at random with this seed.
    #[arg(long)]
    pub euler_seed: Option<u64>,
}

impl EulerArgs {
    fn tie_break(&self) -> TieBreak {
        self.euler_seed.map_or(TieBreak::LeastDart, TieBreak::Random)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    M33,
    M446,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// One choice per ordered (incoming, at) pair.
    Paper,
    /// Consistent dart matchings per parallel pair.
    Ribbon,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// What a command printed and whether its expectations held.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
    pub strict: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.strict && !self.ok {
            1
        } else {
            0
        }
    }
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn catalogs() -> Result<(Catalog, Catalog)> {
    let m33 = build_m33();
    let m446 = build_m446(&m33)?;
    Ok((m33, m446))
}

fn computed_tables(tie: TieBreak) -> Result<(Catalog, Catalog, WordTables)> {
    let (m33, m446) = catalogs()?;
    let t = compute_tables(&m33, &m446, tie)?;
    Ok((m33, m446, t))
}

fn load_tables(source: &[String], tie: TieBreak) -> Result<WordTables> {
    match source.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["computed"] => Ok(computed_tables(tie)?.2),
        ["fixture"] => Ok(golden::reduced_tables()),
        ["file", path] => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            Ok(WordTables::from_json(&text)?)
        }
        _ => bail!("--source takes `computed`, `fixture` or `file <tables.json>`"),
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Catalog {
            kind,
            out,
            strict,
            expect,
        } => cmd_catalog(kind, out.as_deref(), strict, expect),
        Command::Tables {
            which,
            format,
            paper_map,
            euler,
        } => cmd_tables(which, format, paper_map.as_deref(), euler.tie_break()),
        Command::Census {
            mode,
            source,
            jobs,
            out,
            strict,
            euler,
        } => cmd_census(mode, &source, jobs, out.as_deref(), strict, euler.tie_break()),
        Command::Compare {
            golden,
            strict,
            out,
            write_map,
            jobs,
            euler,
        } => cmd_compare(golden.as_deref(), strict, out.as_deref(), write_map.as_deref(), jobs, euler.tie_break()),
        Command::Export { what } => cmd_export(what),
    }
}

pub fn cmd_catalog(kind: Kind, out: Option<&Path>, strict: bool, expect: Option<usize>) -> Result<Outcome> {
    let (m33, m446) = catalogs()?;
    let (catalog, default) = match kind {
        Kind::M33 => (m33, Expectations::default().m33),
        Kind::M446 => (m446, Expectations::default().m446),
    };
    if let Some(path) = out {
        write_out(path, &serde_json::to_string_pretty(&catalog.to_record())?)?;
    }
    Ok(catalog_outcome(&catalog, expect.unwrap_or(default), strict))
}

/// The summary line plus the count check.
pub fn catalog_outcome(catalog: &Catalog, expected: usize, strict: bool) -> Outcome {
    let mut stdout = format!("{}: {} classes\n", catalog.kind().name(), catalog.len());
    let ok = catalog.len() == expected;
    if !ok {
        stdout.push_str(&format!("expected {expected} classes\n"));
    }
    Outcome { stdout, ok, strict }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn cmd_tables(which: u8, format: Format, paper_map: Option<&Path>, tie: TieBreak) -> Result<Outcome> {
    let (_, _, raw) = computed_tables(tie)?;
    let mut tables = if which <= 2 { raw } else { raw.reduce() };
    if let Some(path) = paper_map {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let c = Correspondence::parse_csv(&text).with_context(|| format!("in {}", path.display()))?;
        tables = c.apply(&tables);
    }
    let rows = if which % 2 == 1 { &tables.white } else { &tables.black };
    let stdout = render_rows(rows, &tables, format);
    Ok(Outcome {
        stdout,
        ok: true,
        strict: false,
    })
}

/// JSON carries both sides of the table pair, since a census needs both.
fn render_rows(rows: &[(String, CyclicWord)], tables: &WordTables, format: Format) -> String {
    match format {
        Format::Md => {
            let mut s = String::from("| N | order |\n|---|---|\n");
            for (label, word) in rows {
                s.push_str(&format!("| {label} | {word} |\n"));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("label,order\n");
            for (label, word) in rows {
                s.push_str(&format!("{},{}\n", csv_field(label), csv_field(&word.to_string())));
            }
            s
        }
        Format::Json => tables.to_json() + "\n",
    }
}

pub fn cmd_census(
    mode: Mode,
    source: &[String],
    jobs: usize,
    out: Option<&Path>,
    strict: bool,
    tie: TieBreak,
) -> Result<Outcome> {
    let tables = load_tables(source, tie)?.for_census();
    let g = IncidenceGraph::assemble(&tables)?;
    let start = Instant::now();
    let mut s = String::new();
    let ok = match mode {
        Mode::Paper => {
            let report = run_census(&g, jobs)?;
            eprintln!("census: {} traces in {:.2?}", report.traces, start.elapsed());
            s.push_str(&format!(
                "vertices: {} ({} white, {} black)\n",
                report.vertices, report.white_vertices, report.black_vertices
            ));
            s.push_str(&format!(
                "forks: {} ({} white, {} black)\n",
                report.fork_count, report.white_forks, report.black_forks
            ));
            for f in &report.forks {
                let side = if f.side == ribbonmap::Color::White { "white" } else { "black" };
                s.push_str(&format!("  {side} {} from {}: {} | {}\n", f.at, f.from, f.options[0], f.options[1]));
            }
            s.push_str(&format!("traces: {}\nface histogram:\n", report.traces));
            for (faces, n) in &report.face_histogram {
                s.push_str(&format!("  {faces}: {n}\n"));
            }
            s.push_str(&format!(
                "bijective resolutions: {}\nparity violations: {}\n",
                report.bijective_vectors, report.parity_violations
            ));
            s.push_str("genus (faces, convention, E, genus):\n");
            for row in &report.genus_table {
                let e = &row.estimate;
                let flag = if e.integral && e.non_negative { "" } else { "  (not a valid genus)" };
                s.push_str(&format!(
                    "  {} {} {} {}{flag}\n",
                    row.faces,
                    row.convention.name(),
                    e.edges,
                    e.genus
                ));
            }
            s.push_str(&format!("mismatched pairs: {}\n", report.mismatches.len()));
            for m in &report.mismatches {
                s.push_str(&format!("  white {} / black {}: {} vs {}\n", m.white, m.black, m.in_white, m.in_black));
            }
            let checks = census_expectations(&report);
            for e in &checks {
                let mark = if e.ok { "ok" } else { "MISMATCH" };
                s.push_str(&format!("expect {}: {} got {} [{mark}]\n", e.name, e.expected, e.actual));
            }
            if let Some(path) = out {
                write_out(path, &(report.to_json() + "\n"))?;
            }
            checks.iter().all(|e| e.ok)
        }
        Mode::Ribbon => {
            let report = ribbon_census(&g)?;
            eprintln!("ribbon census: {} matchings in {:.2?}", report.matchings, start.elapsed());
            s.push_str(&format!("darts: {}\nparallel pairs: {}\n", report.darts, report.multi_pairs.len()));
            for p in &report.multi_pairs {
                s.push_str(&format!("  white {} / black {} x{}\n", p.white, p.black, p.count));
            }
            s.push_str(&format!("obstructions: {}\n", report.obstructions.len()));
            for m in &report.obstructions {
                s.push_str(&format!("  white {} / black {}: {} vs {}\n", m.white, m.black, m.in_white, m.in_black));
            }
            s.push_str(&format!("matchings: {}\nface histogram:\n", report.matchings));
            for (faces, n) in &report.face_histogram {
                s.push_str(&format!("  {faces}: {n}\n"));
            }
            for e in &report.genus {
                s.push_str(&format!("genus at {} faces: {}\n", e.faces, e.genus));
            }
            if let Some(path) = out {
                write_out(path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            }
            report.obstructions.is_empty()
        }
    };
    Ok(Outcome { stdout: s, ok, strict })
}

pub fn cmd_compare(
    golden: Option<&Path>,
    strict: bool,
    out: Option<&Path>,
    write_map: Option<&Path>,
    jobs: usize,
    tie: TieBreak,
) -> Result<Outcome> {
    let bundle = match golden {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            GoldenBundle::from_json(&text)?
        }
        None => GoldenBundle::published(),
    };
    let (m33, m446, ours) = computed_tables(tie)?;
    let report = compare(&ours, &bundle, (m33.len(), m446.len()), jobs)?;
    let mut s = String::new();
    match &report.matching.correspondence {
        Some(c) => {
            s.push_str(&format!(
                "correspondence: found ({} white, {} black, {} search nodes)\n",
                c.white.len(),
                c.black.len(),
                report.matching.search_nodes
            ));
            if let Some(path) = write_map {
                write_out(path, &c.to_csv())?;
            }
        }
        None => {
            s.push_str("correspondence: none\nrefinement trace:\n");
            for step in &report.matching.refinement {
                s.push_str(&format!("  round {}: {} classes\n", step.round, step.classes));
                for i in &step.imbalances {
                    s.push_str(&format!("    ours {:?} vs theirs {:?}\n", i.ours, i.theirs));
                }
            }
        }
    }
    for (name, diff) in [("raw", &report.raw), ("reduced", &report.reduced)] {
        let Some(d) = diff else { continue };
        s.push_str(&format!(
            "{name}: white rows exact {}/{}, multiset {}/{}; black rows exact {}/{}\n",
            d.white_exact,
            d.white.len(),
            d.white_multiset,
            d.white.len(),
            d.black_exact,
            d.black.len()
        ));
        for row in d.white.iter().chain(&d.black).filter(|r| !r.exact) {
            let theirs = row.theirs_word.as_ref().map_or("-".to_string(), |w| w.to_string());
            let kind = if row.multiset { "order" } else { "letters" };
            s.push_str(&format!("  {} -> {}: {} vs {} ({kind})\n", row.ours, row.theirs, row.ours_word, theirs));
        }
    }
    for (name, c) in [("ours", &report.census_ours), ("reference", &report.census_reference)] {
        s.push_str(&format!(
            "census {name}: forks {} ({}+{}), faces {:?}\n",
            c.fork_count,
            c.white_forks,
            c.black_forks,
            c.face_histogram.keys().collect::<Vec<_>>()
        ));
    }
    for e in &report.expectations {
        let mark = if e.ok { "ok" } else { "MISMATCH" };
        s.push_str(&format!("expect {}: {} got {} [{mark}]\n", e.name, e.expected, e.actual));
    }
    if let Some(path) = out {
        write_out(path, &(report.to_json() + "\n"))?;
    }
    Ok(Outcome {
        stdout: s,
        ok: report.is_clean(),
        strict,
    })
}

pub fn cmd_export(what: Export) -> Result<Outcome> {
    let (text, out) = match what {
        Export::Dot { source, out } => {
            let tables = load_tables(&source, TieBreak::LeastDart)?.for_census();
            (incidence_dot(&IncidenceGraph::assemble(&tables)?), out)
        }
        Export::Map { id, out } => {
            let (m33, m446) = catalogs()?;
            let class = m33
                .get(&id)
                .or_else(|| m446.get(&id))
                .with_context(|| format!("no class {id}"))?;
            (serde_json::to_string_pretty(&class.record())? + "\n", out)
        }
        Export::Golden { out } => (GoldenBundle::published().to_json() + "\n", out),
    };
    let stdout = match out {
        Some(path) => {
            write_out(&path, &text)?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome {
        stdout,
        ok: true,
        strict: false,
    })
}

/// The fork, face and genus checks behind `census --strict`.
pub fn census_expectations(report: &CensusReport) -> Vec<ExpectationCheck> {
    let e = Expectations::default();
    check_expectations(&e, e.m33, e.m446, report).into_iter().skip(2).collect()
}
