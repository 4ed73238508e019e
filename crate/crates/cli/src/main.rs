mod args;
mod render;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use chowkit_core::groebner::Budget;
use chowkit_core::pipeline::{DonaldsonQuery, FixtureSet, Mode, StageId, StageReport, Workbench, EMBEDDED};
use chowkit_core::Error;
use clap::Parser;
use rayon::prelude::*;

use args::{Cli, Command, Format, ModeArg};

/// 0 pass, 1 mismatch or bad fixture, 2 usage, 3 internal or resource.
#[derive(Debug)]
enum Failure {
    Mismatch,
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch => 1,
            Failure::Core(Error::Fixture(_) | Error::PrerequisiteFailed(_)) => 1,
            Failure::Usage(_) | Failure::Core(Error::UnknownRing(_)) => 2,
            Failure::Core(_) | Failure::Io(_) => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

fn now_ms() -> u64 {
    static START: OnceLock<Instant> = OnceLock::new();
    START.get_or_init(Instant::now).elapsed().as_millis() as u64
}

fn load_fixtures(dir: Option<&Path>) -> Result<FixtureSet, Failure> {
    let Some(dir) = dir else {
        return Ok(FixtureSet::embedded()?);
    };
    if !dir.is_dir() {
        return Err(Failure::Usage(format!("fixture directory {} does not exist", dir.display())));
    }
    let mut files = Vec::new();
    for (name, text) in EMBEDDED {
        let path = dir.join(name);
        let text = if path.exists() {
            std::fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
        } else {
            text.to_string()
        };
        files.push((name, text));
    }
    Ok(FixtureSet::from_texts(files.iter().map(|(n, t)| (*n, t.as_str())))?)
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes());
}

fn verify(wb: &mut Workbench, names: &[String], format: Format) -> Outcome {
    let requested: Vec<StageId> = if names.is_empty() {
        StageId::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|n| StageId::parse(n).ok_or_else(|| Failure::Usage(format!("unknown stage `{n}`"))))
            .collect::<Result<_, _>>()?
    };
    let mut blocked = false;
    for &s in &requested {
        match wb.run(s) {
            Ok(_) => {}
            Err(Error::PrerequisiteFailed(p)) => {
                eprintln!("stage {s} skipped: prerequisite {p} failed");
                blocked = true;
            }
            Err(e) => return Err(e.into()),
        }
    }
    let shown: Vec<StageReport> =
        wb.reports().filter(|r| requested.contains(&r.stage) || !r.passed()).cloned().collect();
    emit(&render::reports(&shown, format));
    if blocked || shown.iter().any(|r| !r.passed()) {
        return Err(Failure::Mismatch);
    }
    Ok(())
}

fn require_m(wb: &mut Workbench, format: Format) -> Outcome {
    match wb.run(StageId::M) {
        Ok(r) if r.passed() => Ok(()),
        Ok(_) | Err(Error::PrerequisiteFailed(_)) => {
            let failed: Vec<StageReport> = wb.reports().filter(|r| !r.passed()).cloned().collect();
            emit(&render::reports(&failed, format));
            Err(Failure::Mismatch)
        }
        Err(e) => Err(e.into()),
    }
}

fn donaldson(wb: &mut Workbench, kmax: i64, mmax: i64, check: bool, format: Format) -> Outcome {
    require_m(wb, format)?;
    let m_data = wb.m().expect("stage M ran");
    let cells: Vec<(i64, i64)> = (1..=mmax).flat_map(|m| (1..=kmax).map(move |k| (k, m))).collect();
    let values: Vec<Option<String>> = cells
        .par_iter()
        .map(|&(k, m)| {
            if DonaldsonQuery::bogomolov(k, m) {
                DonaldsonQuery::compute(m_data, k, m).map(|q| Some(q.chi.to_string()))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_, Error>>()?;
    let grid = render::Grid {
        columns: (1..=kmax).collect(),
        rows: values.chunks(kmax as usize).zip(1..).map(|(row, m)| (m, row.to_vec())).collect(),
    };
    let mismatches = if check { Some(compare_with_table(wb.fixtures(), &grid)?) } else { None };
    emit(&render::grid(&grid, format, mismatches.as_deref()));
    match mismatches {
        Some(mm) if !mm.is_empty() => Err(Failure::Mismatch),
        _ => Ok(()),
    }
}

/// Cells present in both the reference table and `grid` that disagree,
/// including blank-versus-value disagreements.
fn compare_with_table(fx: &FixtureSet, grid: &render::Grid) -> Result<Vec<String>, Failure> {
    let columns = fx.ints("table1.columns")?;
    let table = fx.table("table1")?;
    let mut out = Vec::new();
    for (m, row) in &grid.rows {
        let Some(reference) = table.get(m) else { continue };
        for ((k, computed), cell) in grid.columns.iter().zip(row) .filter_map(|(k, v)| {
            columns.iter().position(|c| c == k).map(|i| ((k, v), &reference[i]))
        }) {
            let expected = cell.value.map(|v| v.to_string());
            if &expected != computed {
                let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "blank".into());
                out.push(format!("k={k}, m={m}: table {}, computed {}", show(&expected), show(computed)));
            }
        }
    }
    Ok(out)
}

#[derive(serde::Serialize)]
struct EulerJson {
    k: i64,
    m: i64,
    class: String,
    chi: String,
}

fn euler(wb: &mut Workbench, k: i64, m: i64, format: Format) -> Outcome {
    require_m(wb, format)?;
    let q = DonaldsonQuery::compute(wb.m().expect("stage M ran"), k, m)?;
    let text = match format {
        Format::Json => {
            let doc = EulerJson { k, m, class: q.class.render(), chi: q.chi.to_string() };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => format!("k,m,class,chi\n{k},{m},{},{}\n", q.class.render(), q.chi),
        Format::Markdown => format!("| k | m | class | chi |\n|---|---|---|---|\n| {k} | {m} | `{}` | {} |\n", q.class.render(), q.chi),
        Format::Text => format!("chi(M, {}) = {}\n", q.class.render(), q.chi),
    };
    emit(&text);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    let fixtures = load_fixtures(cli.fixtures.as_deref())?;
    let mode = match cli.mode {
        ModeArg::Verification => Mode::Verification,
        ModeArg::Discovery => Mode::Discovery,
    };
    let budget = cli.budget.map_or_else(Budget::unlimited, Budget::steps);
    let mut wb = Workbench::new(fixtures, mode, budget);
    if cli.timings {
        wb = wb.with_clock(now_ms);
    }
    match &cli.command {
        Command::Verify { stages } => verify(&mut wb, stages, cli.format),
        Command::Stage { name } => verify(&mut wb, std::slice::from_ref(name), cli.format),
        Command::Donaldson { kmax, mmax, check } => donaldson(&mut wb, *kmax, *mmax, *check, cli.format),
        Command::Euler { k, m } => euler(&mut wb, *k, *m, cli.format),
        Command::Export { ring } => {
            let r = wb.ring(ring)?;
            emit(&render::ring(&r));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Mismatch => {}
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Usage(msg) | Failure::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
