//! Report, grid and ring rendering. Everything here is deterministic except
//! `elapsed_ms`, which is only filled in with `--timings`.

use std::fmt::Write as _;

use chowkit_core::chow::ChowRing;
use chowkit_core::pipeline::StageReport;
use serde::Serialize;

use crate::args::Format;

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    expected: &'a str,
    computed: &'a str,
    pass: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    stage: String,
    checks: Vec<CheckJson<'a>>,
    notes: &'a [String],
    elapsed_ms: Option<u64>,
}

fn report_json(r: &StageReport) -> ReportJson<'_> {
    ReportJson {
        stage: r.stage.to_string(),
        checks: r
            .checks
            .iter()
            .map(|c| CheckJson { name: &c.name, expected: &c.expected, computed: &c.computed, pass: c.pass })
            .collect(),
        notes: &r.notes,
        elapsed_ms: r.elapsed_ms,
    }
}

fn csv_string(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn reports(reports: &[StageReport], format: Format) -> String {
    match format {
        Format::Json => {
            let docs: Vec<ReportJson<'_>> = reports.iter().map(report_json).collect();
            serde_json::to_string_pretty(&docs).expect("serializable") + "\n"
        }
        Format::Csv => {
            let header = ["stage", "name", "expected", "computed", "pass"].map(String::from).to_vec();
            let rows = reports.iter().flat_map(|r| {
                r.checks.iter().map(move |c| {
                    vec![r.stage.to_string(), c.name.clone(), c.expected.clone(), c.computed.clone(), c.pass.to_string()]
                })
            });
            csv_string(std::iter::once(header).chain(rows))
        }
        Format::Markdown => {
            let mut s = String::new();
            for r in reports {
                let verdict = if r.passed() { "pass" } else { "FAIL" };
                let _ = writeln!(s, "## {} ({verdict})\n", r.stage);
                s.push_str("| check | expected | computed | pass |\n|---|---|---|---|\n");
                for c in &r.checks {
                    let _ = writeln!(
                        s,
                        "| {} | `{}` | `{}` | {} |",
                        md_escape(&c.name),
                        md_escape(&c.expected),
                        md_escape(&c.computed),
                        if c.pass { "yes" } else { "**no**" }
                    );
                }
                for n in &r.notes {
                    let _ = writeln!(s, "\n> {}", md_escape(n));
                }
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let failed = r.failures().count();
                let _ = write!(s, "stage {}: {verdict} ({} checks, {failed} failed)", r.stage, r.checks.len());
                if let Some(ms) = r.elapsed_ms {
                    let _ = write!(s, " in {ms} ms");
                }
                s.push('\n');
                for c in &r.checks {
                    if c.pass {
                        let _ = writeln!(s, "  ok    {} = {}", c.name, c.computed);
                    } else {
                        let _ = writeln!(s, "  FAIL  {}: expected {}, computed {}", c.name, c.expected, c.computed);
                    }
                }
                for n in &r.notes {
                    let _ = writeln!(s, "  note  {n}");
                }
            }
            s
        }
    }
}

/// Grid of `χ` values; `None` marks cells below the Bogomolov bound.
pub struct Grid {
    pub columns: Vec<i64>,
    pub rows: Vec<(i64, Vec<Option<String>>)>,
}

#[derive(Serialize)]
struct GridRowJson<'a> {
    m: i64,
    values: &'a [Option<String>],
}

#[derive(Serialize)]
struct GridJson<'a> {
    k: &'a [i64],
    rows: Vec<GridRowJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mismatches: Option<&'a [String]>,
}

pub fn grid(g: &Grid, format: Format, mismatches: Option<&[String]>) -> String {
    let header: Vec<String> = std::iter::once("m\\k".to_string()).chain(g.columns.iter().map(i64::to_string)).collect();
    let body = || g.rows.iter().map(|(m, vals)| {
        std::iter::once(m.to_string()).chain(vals.iter().map(|v| v.clone().unwrap_or_default())).collect::<Vec<_>>()
    });
    let mut s = match format {
        Format::Json => {
            let doc = GridJson {
                k: &g.columns,
                rows: g.rows.iter().map(|(m, values)| GridRowJson { m: *m, values }).collect(),
                mismatches,
            };
            return serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        }
        Format::Csv => csv_string(std::iter::once(header).chain(body())),
        Format::Markdown => {
            let mut s = format!("| {} |\n", header.join(" | "));
            s += &format!("|{}\n", "---:|".repeat(header.len()));
            for row in body() {
                s += &format!("| {} |\n", row.join(" | "));
            }
            s
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = std::iter::once(header).chain(body()).collect();
            let widths: Vec<usize> =
                (0..rows[0].len()).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
            let mut s = String::new();
            for r in rows {
                let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                s += cells.join("  ").trim_end();
                s.push('\n');
            }
            s
        }
    };
    if let Some(mm) = mismatches {
        if format == Format::Text || format == Format::Markdown {
            if mm.is_empty() {
                s += "check: every cell agrees with the reference table\n";
            } else {
                for line in mm {
                    s += &format!("mismatch: {line}\n");
                }
            }
        }
    }
    s
}

#[derive(Serialize)]
struct VarJson<'a> {
    name: &'a str,
    weight: u32,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RingJson<'a> {
    name: &'a str,
    vars: Vec<VarJson<'a>>,
    relations: Vec<String>,
    top_degree: u32,
    point_class: Option<String>,
    series: &'a [u64],
}

/// The ring exchange document.
pub fn ring(r: &ChowRing) -> String {
    let doc = RingJson {
        name: r.name(),
        vars: r.spec().vars().iter().map(|v| VarJson { name: &v.name, weight: v.weight }).collect(),
        relations: r.relations().iter().map(|p| p.render()).collect(),
        top_degree: r.top_degree(),
        point_class: r.point_poly().map(|p| p.render()),
        series: &r.series().0,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use chowkit_core::pipeline::StageId;

    fn sample() -> Grid {
        Grid {
            columns: vec![1, 2],
            rows: vec![(1, vec![Some("0".into()), None]), (2, vec![Some("0".into()), Some("-2163".into())])],
        }
    }

    #[test]
    fn grid_formats() {
        let g = sample();
        assert_eq!(grid(&g, Format::Csv, None), "m\\k,1,2\n1,0,\n2,0,-2163\n");
        assert_eq!(grid(&g, Format::Text, None), "m\\k  1      2\n  1  0\n  2  0  -2163\n");
        assert!(grid(&g, Format::Markdown, None).starts_with("| m\\k | 1 | 2 |\n|---:|---:|---:|\n"));
        let json: serde_json::Value = serde_json::from_str(&grid(&g, Format::Json, None)).unwrap();
        assert_eq!(json["rows"][0]["values"], serde_json::json!(["0", null]));
        assert!(json.get("mismatches").is_none());
    }

    #[test]
    fn csv_report_quotes_commas() {
        let mut r = StageReport::new(StageId::N);
        r.check("pairings", "57,27,18", "57,27,18", true);
        assert_eq!(
            reports(&[r], Format::Csv),
            "stage,name,expected,computed,pass\nN,pairings,\"57,27,18\",\"57,27,18\",true\n"
        );
    }

    #[test]
    fn text_report_shows_failures() {
        let mut r = StageReport::new(StageId::Q);
        r.check_eq("rank", &12, &11);
        r.note("something");
        let s = reports(&[r], Format::Text);
        assert_eq!(s, "stage Q: FAIL (1 checks, 1 failed)\n  FAIL  rank: expected 12, computed 11\n  note  something\n");
    }
}
